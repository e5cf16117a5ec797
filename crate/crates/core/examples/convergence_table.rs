//! Temporal convergence study on graded and r-variable meshes; writes an SVG
//! per order into the system temp directory.

use l2stab::experiments::{convergence_svg, run_convergence, ConvergenceSpec};

fn main() -> l2stab::Result<()> {
    let spec = ConvergenceSpec { grid_n: 16, ..ConvergenceSpec::default() };
    let table = run_convergence(&spec)?;
    print!("{}", table.to_csv());
    for alpha in &spec.alphas {
        let path = std::env::temp_dir().join(format!("convergence_alpha_{alpha}.svg"));
        std::fs::write(&path, convergence_svg(&table, *alpha))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
