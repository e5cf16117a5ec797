//! Prints the step-ratio thresholds and where common graded meshes sit.

use l2stab::mesh::{constraint_constants, TimeMesh};

fn main() -> l2stab::Result<()> {
    let c = constraint_constants();
    print!("{c}");
    println!();
    for r in [1.5, 2.0, 2.8, 3.0] {
        let mesh = TimeMesh::graded(10, r, 1.0)?;
        println!("graded r={r}: rho_2={:.6} rho_3={:.6}", mesh.rho(2), mesh.rho(3));
    }
    Ok(())
}
