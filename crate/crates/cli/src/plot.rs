//! CSV and SVG renderings of a graph over one period.

use std::fmt::Write;

use qn_core::Rational;

/// One row per graph point: `x y xdec ydec`, exact values first.
pub fn csv(points: &[(Rational, Rational)]) -> String {
    let mut s = String::new();
    for (x, y) in points {
        writeln!(s, "{x} {y} {} {}", x.to_decimal(6), y.to_decimal(6)).unwrap();
    }
    s
}

/// A polyline with a dot on each breakpoint, scaled into a 400x400 box.
pub fn svg(points: &[(Rational, Rational)]) -> String {
    let xs: Vec<f64> = points.iter().map(|p| p.0.to_f64()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.to_f64()).collect();
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let px = |x: f64| 20.0 + 360.0 * (x - x0) / (x1 - x0);
    let py = |y: f64| 380.0 - 360.0 * (y - y0) / (y1 - y0);
    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n",
    );
    let path: Vec<String> = xs.iter().zip(&ys).map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
    writeln!(
        s,
        "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"{}\"/>",
        path.join(" ")
    )
    .unwrap();
    for (x, y) in xs.iter().zip(&ys) {
        writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"red\"/>", px(*x), py(*y)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo { (lo, hi) } else { (lo - 0.5, lo + 0.5) }
}
