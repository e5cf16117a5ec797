//! Runs the three ratio-constraint checks on a few meshes.

use l2stab::mesh::{check_corollary_box, check_rho_condition, check_thm1, TimeMesh};

fn main() -> l2stab::Result<()> {
    let meshes = [
        ("uniform", TimeMesh::uniform(20, 1.0)?),
        ("graded r=2.8", TimeMesh::graded(20, 2.8, 1.0)?),
        ("graded r=3.3", TimeMesh::graded(20, 3.3, 1.0)?),
        ("rvariable", TimeMesh::rvariable(20, 1.0)?),
    ];
    for (name, mesh) in &meshes {
        let verdicts = [check_rho_condition(mesh)?, check_thm1(mesh)?, check_corollary_box(mesh)?];
        let line: Vec<String> = verdicts
            .iter()
            .map(|r| format!("{}={}", r.criterion.name(), if r.pass { "pass" } else { "FAIL" }))
            .collect();
        println!("{name:>14}: {}", line.join(" "));
    }
    print!("{}", check_thm1(&meshes[2].1)?);
    Ok(())
}
