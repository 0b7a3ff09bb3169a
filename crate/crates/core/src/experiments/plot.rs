//! Minimal SVG rendering of success-probability curves.

use std::fmt::Write;

use super::SweepRow;

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// One polyline per `(d, θ)` series, `t` on a log axis, Wilson bars per point.
pub fn success_curves_svg(rows: &[SweepRow]) -> String {
    let mut series: Vec<((usize, f64), Vec<&SweepRow>)> = Vec::new();
    for r in rows {
        match series.iter_mut().find(|(k, _)| *k == (r.d, r.theta)) {
            Some((_, v)) => v.push(r),
            None => series.push(((r.d, r.theta), vec![r])),
        }
    }
    let t_min = rows.iter().map(|r| r.t).min().unwrap_or(1).max(1) as f64;
    let t_max = rows.iter().map(|r| r.t).max().unwrap_or(1).max(1) as f64;
    let (lx0, lx1) = if t_max > t_min {
        (t_min.ln(), t_max.ln())
    } else {
        (t_min.ln() - 1.0, t_min.ln() + 1.0)
    };
    let x = |t: u64| MARGIN + (W - 2.0 * MARGIN) * (((t.max(1)) as f64).ln() - lx0) / (lx1 - lx0);
    let y = |p: f64| H - MARGIN - (H - 2.0 * MARGIN) * p;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{b}" stroke="black"/>"#,
        b = H - MARGIN,
        r = W - MARGIN
    );
    for p in [0.0, 0.5, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{p}</text>"#,
            MARGIN - 6.0,
            y(p) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">t (log scale, {t_min}..{t_max})</text>"#,
        W / 2.0,
        H - 15.0
    );
    for (i, ((d, theta), pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|r| format!("{:.2},{:.2}", x(r.t), y(r.p_hat)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        );
        for r in pts {
            let _ = writeln!(
                s,
                r#"<line x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="{color}"/>"#,
                y(r.wilson_low),
                y(r.wilson_high),
                cx = x(r.t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" fill="{color}">d={d} theta={theta}</text>"#,
            W - MARGIN - 110.0,
            MARGIN + 14.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_one_polyline_per_series() {
        let row = |d, theta, t, p| SweepRow {
            body: "cube".into(),
            d,
            theta,
            t,
            trials: 30,
            successes: 0,
            p_hat: p,
            wilson_low: 0.0,
            wilson_high: 1.0,
            seed: 0,
        };
        let rows = vec![row(2, 0.5, 10, 0.1), row(2, 0.5, 100, 0.9), row(3, 0.5, 10, 0.0)];
        let svg = success_curves_svg(&rows);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
