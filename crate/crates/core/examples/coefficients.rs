//! L2 weights on a graded mesh, cross-checked against the quadrature oracle.

use l2stab::l2coeff::{lemma_properties_check, CoeffMethod, FracOrder, L2Operator};
use l2stab::mesh::TimeMesh;

fn main() -> l2stab::Result<()> {
    let mesh = TimeMesh::graded(12, 2.8, 1.0)?;
    let alpha = FracOrder::new(0.6)?;
    let closed = L2Operator::new(&mesh, alpha);
    let oracle = L2Operator::with_method(&mesh, alpha, CoeffMethod::Quadrature);

    let k = 6;
    print!("{}", closed.row_csv(k)?);
    let (rc, ro) = (closed.row(k)?, oracle.row(k)?);
    let worst = (1..=k)
        .map(|j| ((rc.a(j) - ro.a(j)).abs() + (rc.c(j) - ro.c(j)).abs()) / rc.c(j).abs())
        .fold(0.0, f64::max);
    println!("closed vs quadrature, worst relative gap in row {k}: {worst:.2e}");

    // the t^2 test function: Caputo derivative is 2 t^{2-a} / Gamma(3-a)
    let history: Vec<f64> = mesh.nodes()[..=k].iter().map(|t| t * t).collect();
    let approx = closed.apply_nodal(&history)?;
    let exact = 2.0 * mesh.t(k).powf(2.0 - alpha.value()) / l2stab::numkit::gamma(3.0 - alpha.value())?;
    println!("L_{k} t^2 = {approx:.15}, exact {exact:.15}");

    print!("{}", lemma_properties_check(&mesh, alpha, mesh.n())?);
    Ok(())
}
