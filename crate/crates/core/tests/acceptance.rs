//! End-to-end acceptance checks. Prints one line per criterion and exits
//! non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{close, random_mesh, random_thm1_mesh, rng, ALPHAS};
use l2stab::experiments::{
    observed_rates, run_convergence, run_stability, ConvergenceSpec, MeshFamily, StabilitySpec,
};
use l2stab::l2coeff::{
    coeff_row_closed, coeff_row_quadrature, lemma_properties_check, CoeffRow, FracOrder, L2Operator,
};
use l2stab::mesh::{constraint_constants, TimeMesh};
use l2stab::numkit::gamma;
use l2stab::quadform::{g_vector, lower_bound_gap, psd_min_eig, QuadFormMatrix, GAP_REL_TOL, PSD_REL_TOL};
use l2stab::solver::RhsMode;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn constants_reproduction() -> Check {
    let text = constraint_constants().to_string();
    let value = |name: &str| -> Result<f64, String> {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{name}=")))
            .ok_or_else(|| format!("`{name}` missing from output"))?
            .parse::<f64>()
            .map_err(|e| e.to_string())
    };
    let c = constraint_constants();
    ensure((c.rho_r - 3.561552812808830).abs() <= 1e-12, || format!("rho_R={}", c.rho_r))?;
    ensure((c.rho_l - 0.457332766746115).abs() <= 1e-9, || format!("rho_L={}", c.rho_l))?;
    let printed = [
        ("rho_R", 3.561552812808830, 1e-12f64),
        ("rho_L", 0.457332766746115, 1e-9),
        ("rho_star", 0.356341, 1e-5),
        ("rho_upper_star", 4.155358, 1e-5),
        ("xi1", 0.459770, 1e-5),
        ("xi2", 3.532016, 1e-5),
        ("eta1", 0.475329, 1e-5),
        ("r_limit_thm1", 3.1253645, 1e-5),
        ("r_limit_thm3", 3.2016538, 1e-5),
    ];
    for (name, want, tol) in printed {
        let got = value(name)?;
        ensure((got - want).abs() <= tol, || format!("{name}={got}, expected {want}"))?;
    }
    Ok("all nine constants within tolerance".into())
}

fn row_sums_ok(row: &CoeffRow) -> bool {
    (1..=row.k).all(|j| {
        let s = row.a(j) + row.b(j) + row.c(j);
        let m = row.a(j).abs().max(row.b(j).abs()).max(row.c(j).abs());
        s.abs() <= 1e-12 * m
    })
}

fn coefficient_correctness() -> Check {
    let mut rng = rng(2);
    let mut p910_meshes = 0;
    let mut rows_checked = 0usize;
    for m in 0..200 {
        let n = rng.gen_range(4..=40);
        let mesh = random_mesh(&mut rng, n, 0.4, 3.6);
        let history: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for al in ALPHAS {
            let alpha = FracOrder::new(al).unwrap();
            let op = L2Operator::new(&mesh, alpha);
            for k in 2..=n {
                let closed = coeff_row_closed(&mesh, alpha, k).map_err(|e| e.to_string())?;
                let quad = coeff_row_quadrature(&mesh, alpha, k).map_err(|e| e.to_string())?;
                ensure(row_sums_ok(&closed) && row_sums_ok(&quad), || {
                    format!("row sum defect: mesh {m}, alpha {al}, k {k}")
                })?;
                for j in 1..=k {
                    for (x, y, w) in [
                        (closed.a(j), quad.a(j), "a"),
                        (closed.b(j), quad.b(j), "b"),
                        (closed.c(j), quad.c(j), "c"),
                    ] {
                        ensure(close(x, y, 1e-9, 1e-11), || {
                            format!("{w}: mesh {m}, alpha {al}, k {k}, j {j}: closed {x:e} vs quadrature {y:e}")
                        })?;
                    }
                }
                rows_checked += 1;
            }
            for k in 1..=n {
                let w = op.nodal_weights(k).unwrap();
                let scale: f64 = w.iter().zip(&history).map(|(w, u)| (w * u).abs()).sum();
                let x = op.apply_nodal(&history[..=k]).unwrap();
                let y = op.apply_increment(&history[..=k]).unwrap();
                ensure((x - y).abs() <= 1e-12 * scale, || {
                    format!("nodal/increment: mesh {m}, alpha {al}, k {k}: {x:e} vs {y:e}")
                })?;
            }
            let rep = lemma_properties_check(&mesh, alpha, n).map_err(|e| e.to_string())?;
            for p in &rep.properties[..8] {
                ensure(p.holds(), || format!("{} fails on mesh {m}, alpha {al}: {:?}", p.name, p.violations.first()))?;
            }
            if rep.rho_condition {
                p910_meshes += 1;
                for p in &rep.properties[8..] {
                    ensure(p.holds(), || format!("{} fails on mesh {m}, alpha {al}", p.name))?;
                }
            }
        }
    }
    Ok(format!("{rows_checked} rows; P9-P10 asserted on {p910_meshes} mesh/alpha pairs"))
}

fn operator_exactness() -> Check {
    let mut rng = rng(3);
    for m in 0..50 {
        let n = rng.gen_range(3..=40);
        let mesh = random_mesh(&mut rng, n, 0.4, 3.6);
        for al in ALPHAS {
            let alpha = FracOrder::new(al).unwrap();
            let op = L2Operator::new(&mesh, alpha);
            let one = vec![1.0; n + 1];
            let lin: Vec<f64> = mesh.nodes().to_vec();
            let quad: Vec<f64> = mesh.nodes().iter().map(|t| t * t).collect();
            let g2 = gamma(2.0 - al).unwrap();
            let g3 = gamma(3.0 - al).unwrap();
            for k in 1..=n {
                let t = mesh.t(k);
                let w = op.nodal_weights(k).unwrap();
                let scale: f64 = w.iter().map(|v| v.abs()).sum();
                let c0 = op.apply_nodal(&one[..=k]).unwrap();
                ensure(c0.abs() <= 1e-10 * scale, || format!("constant: mesh {m}, alpha {al}, k {k}: {c0:e}"))?;
                let c1 = op.apply_nodal(&lin[..=k]).unwrap();
                let e1 = t.powf(1.0 - al) / g2;
                ensure(close(c1, e1, 1e-10, 0.0), || format!("t: mesh {m}, alpha {al}, k {k}: {c1:e} vs {e1:e}"))?;
                // the first level interpolates linearly, so t^2 is exact from k = 2
                if k >= 2 {
                    let c2 = op.apply_nodal(&quad[..=k]).unwrap();
                    let e2 = 2.0 * t.powf(2.0 - al) / g3;
                    ensure(close(c2, e2, 1e-10, 0.0), || {
                        format!("t^2: mesh {m}, alpha {al}, k {k}: {c2:e} vs {e2:e}")
                    })?;
                }
            }
        }
    }
    Ok("50 meshes x 9 orders, histories 1, t, t^2".into())
}

fn psd_certification() -> Check {
    let mut rng = rng(4);
    let mut worst = f64::INFINITY;
    let meshes = 60;
    for m in 0..meshes {
        let n = rng.gen_range(3..=40);
        let mesh = random_thm1_mesh(&mut rng, n);
        for al in ALPHAS {
            let alpha = FracOrder::new(al).unwrap();
            let mat = QuadFormMatrix::assemble(&mesh, alpha, n).map_err(|e| e.to_string())?;
            let v = psd_min_eig(&mat);
            ensure(v.psd, || format!("not PSD: mesh {m} (n={n}), alpha {al}: min eig {:e}, norm {:e}", v.min_eig, v.norm))?;
            let g = g_vector(&mesh, alpha, n).map_err(|e| e.to_string())?;
            let (gap, norm) = lower_bound_gap(&mat, &g).map_err(|e| e.to_string())?;
            ensure(gap >= -GAP_REL_TOL * norm, || {
                format!("lower bound fails: mesh {m} (n={n}), alpha {al}: gap {gap:e}, norm {norm:e}")
            })?;
            worst = worst.min(v.min_eig / v.norm);
        }
    }
    let witness = |r: f64| {
        let mesh = TimeMesh::graded(7, r, 1.0).unwrap();
        psd_min_eig(&QuadFormMatrix::assemble(&mesh, FracOrder::new(0.99999).unwrap(), 7).unwrap())
    };
    let bad = witness(3.20185);
    let good = witness(3.2016);
    ensure(bad.min_eig < 0.0, || format!("r=3.20185 min eig {:e} not negative", bad.min_eig))?;
    ensure(good.min_eig >= -PSD_REL_TOL * good.norm, || format!("r=3.2016 min eig {:e}", good.min_eig))?;
    Ok(format!(
        "{meshes} admissible meshes x 9 orders (worst min eig/norm {worst:.3e}); witness r=3.20185 min eig {:.4e}, r=3.2016 min eig {:.4e}",
        bad.min_eig, good.min_eig
    ))
}

fn paper_scale_spec(alphas: Vec<f64>, ks: Vec<usize>, families: Vec<MeshFamily>) -> ConvergenceSpec {
    ConvergenceSpec {
        alphas,
        ks,
        families,
        grid_n: 32,
        rhs_mode: RhsMode::SemidiscreteManufactured,
        eps: 0.1,
        horizon: 1.0,
    }
}

fn convergence_rates() -> Check {
    let spec = paper_scale_spec(vec![0.3, 0.5, 0.7], vec![20, 30, 40, 60], vec![MeshFamily::Graded(2.8)]);
    let table = run_convergence(&spec).map_err(|e| e.to_string())?;
    let mut summary = vec![];
    for al in [0.3, 0.5, 0.7] {
        let rates: Vec<f64> = table.series("graded:2.8", al).iter().filter_map(|r| r.rate).collect();
        ensure(rates.len() == 3, || format!("alpha {al}: expected 3 rates"))?;
        for r in &rates {
            ensure((r - (3.0 - al)).abs() <= 0.15, || format!("alpha {al}: rate {r:.4} outside {}±0.15", 3.0 - al))?;
        }
        summary.push(format!("alpha {al}: {}", rates.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(" ")));
    }
    Ok(summary.join("; "))
}

fn mesh_comparison() -> Check {
    let spec = paper_scale_spec(vec![0.3], vec![30, 60], vec![MeshFamily::Graded(2.8), MeshFamily::RVariable]);
    let table = run_convergence(&spec).map_err(|e| e.to_string())?;
    let g = table.series("graded:2.8", 0.3);
    let rv = table.series("rvariable", 0.3);
    let mut out = vec![];
    for (a, b) in g.iter().zip(&rv) {
        ensure(b.h1_error < a.h1_error, || {
            format!("K={}: rvariable {:.4e} >= graded {:.4e}", a.k, b.h1_error, a.h1_error)
        })?;
        out.push(format!("K={}: {:.3e} < {:.3e}", a.k, b.h1_error, a.h1_error));
    }
    Ok(out.join("; "))
}

fn h1_stability() -> Check {
    let meshes = [
        ("uniform", TimeMesh::uniform(200, 10.0).unwrap()),
        ("graded r=2", TimeMesh::graded(200, 2.0, 10.0).unwrap()),
    ];
    let mut out = vec![];
    for (name, mesh) in &meshes {
        for al in [0.3, 0.7] {
            let spec = StabilitySpec::new(mesh.clone(), FracOrder::new(al).unwrap());
            let s = run_stability(&spec).map_err(|e| e.to_string())?;
            ensure(s.bounded, || format!("{name}, alpha {al}: sup {:e} exceeds bound {:e}", s.sup_h1, s.bound))?;
            ensure(s.no_blowup, || {
                format!("{name}, alpha {al}: second half peak {:e} vs first {:e}", s.second_half_max, s.first_half_max)
            })?;
            out.push(format!("{name} a={al}: sup {:.3}", s.sup_h1));
        }
    }
    Ok(out.join("; "))
}

fn table_rate_postprocessing() -> Check {
    let ks = [50, 60, 70, 80, 90, 100];
    let errors = [7.3684e-4, 4.6472e-4, 3.1476e-4, 2.2463e-4, 1.6683e-4, 1.2788e-4];
    let printed = [2.5281, 2.5275, 2.5264, 2.5254, 2.5235];
    let rates = observed_rates(&ks, &errors);
    ensure(rates[0].is_none(), || "first rate should be empty".into())?;
    for (r, p) in rates[1..].iter().zip(printed) {
        let r = r.unwrap();
        ensure((r - p).abs() <= 1e-3, || format!("rate {r:.4} vs printed {p}"))?;
    }
    Ok(rates[1..].iter().map(|r| format!("{:.4}", r.unwrap())).collect::<Vec<_>>().join(" "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 constants reproduction", constants_reproduction),
        ("2 coefficient correctness", coefficient_correctness),
        ("3 operator exactness", operator_exactness),
        ("4 psd certification", psd_certification),
        ("5 convergence rates", convergence_rates),
        ("6 mesh comparison", mesh_comparison),
        ("7 h1 stability", h1_stability),
        ("8 rate post-processing", table_rate_postprocessing),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {name}: PASS ({secs:.2}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({secs:.2}s) {why}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
