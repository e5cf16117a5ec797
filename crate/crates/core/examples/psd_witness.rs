//! The seven-step graded mesh whose bilinear form loses positivity between
//! r = 3.2016 and r = 3.20185 at an order close to one.

use l2stab::experiments::run_psd_sweep;
use l2stab::l2coeff::FracOrder;
use l2stab::mesh::TimeMesh;
use l2stab::quadform::{g_vector, lower_bound_gap, psd_min_eig, QuadFormMatrix};

fn main() -> l2stab::Result<()> {
    let alpha = FracOrder::new(0.99999)?;
    for r in [3.2016, 3.20185] {
        let mesh = TimeMesh::graded(7, r, 1.0)?;
        let m = QuadFormMatrix::assemble(&mesh, alpha, 7)?;
        println!("r={r}: {}", psd_min_eig(&m));
    }

    let mesh = TimeMesh::graded(40, 2.0, 1.0)?;
    let alpha = FracOrder::new(0.5)?;
    let m = QuadFormMatrix::assemble(&mesh, alpha, 40)?;
    let (gap, norm) = lower_bound_gap(&m, &g_vector(&mesh, alpha, 40)?)?;
    println!("graded r=2, n=40: diagonal bound gap {gap:.3e} (norm {norm:.3e})");

    let r_values: Vec<f64> = (0..=10).map(|i| 32014.0 + 0.5 * i as f64).map(|r| r / 1e4).collect();
    print!("{}", run_psd_sweep(&r_values, &[0.99999], 7)?.to_csv());
    Ok(())
}
