//! One solve of the 2D subdiffusion problem against its manufactured solution.

use l2stab::l2coeff::FracOrder;
use l2stab::mesh::TimeMesh;
use l2stab::solver::{exact_solution, h1_seminorm, solve, Grid2D, SolverConfig};

fn main() -> l2stab::Result<()> {
    let alpha = FracOrder::new(0.5)?;
    let grid = Grid2D::new(32)?;
    for k in [20, 40, 80] {
        let cfg = SolverConfig::new(alpha, 0.1, TimeMesh::graded(k, 2.8, 1.0)?, grid);
        let res = solve(&cfg)?;
        let err = h1_seminorm(&res.final_field.sub(&exact_solution(grid, alpha, 1.0))?);
        let iters: usize = res.cg_iters.iter().sum();
        println!("K={k:3} H1 error {err:.4e}  total CG iterations {iters}");
    }
    Ok(())
}
