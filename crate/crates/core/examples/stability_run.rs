//! Long run under square-wave forcing on an admissible and a wild mesh.

use l2stab::experiments::{run_stability, StabilitySpec};
use l2stab::l2coeff::FracOrder;
use l2stab::mesh::TimeMesh;

fn main() -> l2stab::Result<()> {
    let alpha = FracOrder::new(0.6)?;
    let mut wild = vec![0.05];
    for i in 0..120 {
        let last: f64 = *wild.last().unwrap();
        wild.push(last * if i % 2 == 0 { 6.0 } else { 1.0 / 6.5 });
    }
    let meshes = [
        ("graded r=2", TimeMesh::graded(200, 2.0, 10.0)?),
        ("wild", TimeMesh::from_steps(wild)?),
    ];
    for (name, mesh) in meshes {
        let mut spec = StabilitySpec::new(mesh, alpha);
        spec.grid_n = 16;
        let s = run_stability(&spec)?;
        println!(
            "{name:>10}: admissible={} sup H1={:.4} bound={:.1} bounded={} no_blowup={}",
            s.mesh_admissible, s.sup_h1, s.bound, s.bounded, s.no_blowup
        );
    }
    Ok(())
}
