//! Minimal line chart of discount-rate term structures.
//!
//! Output depends only on the input values, so it is byte-stable.

use std::fmt::Write;

use randisc_core::{Mode, TermStructure};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 120.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 3] = ["#1b9e77", "#d95f02", "#7570b3"];

fn label(mode: Mode) -> &'static str {
    match mode {
        Mode::Expected => "e: expected",
        Mode::ExAnte => "a: ex ante",
        Mode::ExPost => "p: ex post",
    }
}

/// One polyline of `eta(t)` per term structure, with axes, ticks and a legend.
pub fn render_rates(curves: &[TermStructure]) -> String {
    let horizon = curves.iter().map(|c| c.rates.len()).max().unwrap_or(1).max(2) - 1;
    let peak = curves
        .iter()
        .flat_map(|c| c.rates.iter().map(|r| r.to_f64()))
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let y_max = if peak > 0.0 { (peak * 100.0).ceil() / 100.0 } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |t: f64| LEFT + plot_w * t / horizon as f64;
    let sy = |v: f64| TOP + plot_h * (1.0 - v / y_max);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, "<title>Discount rate term structures</title>");
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let (x0, x1, y0, y1) = (sx(0.0), sx(horizon as f64), sy(0.0), sy(y_max));
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let t = horizon as f64 * k as f64 / 4.0;
        let x = sx(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 5.0,
            y0 + 18.0,
            t.round()
        );
        let v = y_max * k as f64 / 4.0;
        let y = sy(v);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t (periods)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">discount rate</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    for (i, curve) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = curve
            .rates
            .iter()
            .enumerate()
            .map(|(t, r)| format!("{:.2},{:.2}", sx(t as f64), sy(r.to_f64())))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline data-mode="{}" points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            curve.mode.tag(),
            points.join(" ")
        );
        let ly = TOP + 16.0 * (i as f64 + 1.0);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x1 + 10.0,
            x1 + 30.0,
            x1 + 35.0,
            ly + 4.0,
            label(curve.mode)
        );
    }
    s.push_str("</svg>\n");
    s
}
