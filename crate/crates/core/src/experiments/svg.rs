use std::fmt::Write as _;

use super::ConvergenceTable;

const W: f64 = 480.0;
const H: f64 = 360.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Log-log plot of `h1_error` against `K` for every family at one `α`.
pub fn convergence_svg(table: &ConvergenceTable, alpha: f64) -> String {
    let rows: Vec<_> = table.rows.iter().filter(|r| r.alpha == alpha && r.h1_error > 0.0).collect();
    let mut families: Vec<&str> = rows.iter().map(|r| r.family.as_str()).collect();
    families.dedup();

    let lx: Vec<f64> = rows.iter().map(|r| (r.k as f64).log10()).collect();
    let ly: Vec<f64> = rows.iter().map(|r| r.h1_error.log10()).collect();
    let range = |v: &[f64]| {
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, lo + 0.5)
        }
    };
    let (x0, x1) = range(&lx);
    let (y0, y1) = range(&ly);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{m} {t} L{m} {b} L{r} {b}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">K</text>"#, W / 2.0, H - 20.0);
    let _ = writeln!(
        s,
        r#"<text x="20" y="{}" transform="rotate(-90 20 {})" text-anchor="middle">H1 error</text>"#,
        H / 2.0,
        H / 2.0
    );
    let _ = writeln!(s, r#"<text x="{}" y="30" text-anchor="middle">alpha = {alpha}</text>"#, W / 2.0);
    for (tick, v) in [(x0, 10f64.powf(x0)), (x1, 10f64.powf(x1))] {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{v:.0}</text>"#, px(tick), H - MARGIN + 16.0);
    }
    for (tick, v) in [(y0, 10f64.powf(y0)), (y1, 10f64.powf(y1))] {
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{v:.1e}</text>"#, MARGIN - 4.0, py(tick) + 4.0);
    }
    for (fi, fam) in families.iter().enumerate() {
        let color = COLORS[fi % COLORS.len()];
        let pts: Vec<String> = rows
            .iter()
            .zip(lx.iter().zip(&ly))
            .filter(|(r, _)| r.family == *fam)
            .map(|(_, (x, y))| format!("{:.1},{:.1}", px(*x), py(*y)))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}" stroke="{color}" fill="none" stroke-width="2"/>"#, pts.join(" "));
        for p in &pts {
            let (x, y) = p.split_once(',').expect("point has two coordinates");
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="3" fill="{color}"/>"#);
        }
        let ly = MARGIN + 16.0 * fi as f64;
        let _ = writeln!(s, r#"<text x="{}" y="{ly}" fill="{color}">{fam}</text>"#, W - MARGIN - 90.0);
    }
    s.push_str("</svg>\n");
    s
}
