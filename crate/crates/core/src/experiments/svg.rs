//! Static figures with a fixed 1000x1000 view box and two-decimal coordinates.

use std::fmt::Write as _;

use num_complex::Complex64;

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(title: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n\
         <rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n\
         <text x=\"500\" y=\"35\" font-family=\"sans-serif\" font-size=\"24\" text-anchor=\"middle\">{}</text>\n",
        escape(title)
    )
}

/// Eigenvalue scatter with the reference circle `|z| = radius`. The plotted
/// window is `[-1.5 radius, 1.5 radius]^2`; points outside it are dropped.
pub fn scatter(points: &[Complex64], radius: f64, title: &str) -> String {
    let half = 1.5 * radius;
    let scale = (SIZE / 2.0 - MARGIN) / half;
    let cx = |x: f64| SIZE / 2.0 + x * scale;
    let cy = |y: f64| SIZE / 2.0 - y * scale;
    let mut s = header(title);
    let _ = writeln!(
        s,
        "<line x1=\"{:.2}\" y1=\"500.00\" x2=\"{:.2}\" y2=\"500.00\" stroke=\"#999\" stroke-width=\"1\"/>",
        MARGIN,
        SIZE - MARGIN
    );
    let _ = writeln!(
        s,
        "<line x1=\"500.00\" y1=\"{:.2}\" x2=\"500.00\" y2=\"{:.2}\" stroke=\"#999\" stroke-width=\"1\"/>",
        MARGIN,
        SIZE - MARGIN
    );
    let _ = writeln!(s, "<g fill=\"#1f4e9c\" fill-opacity=\"0.6\">");
    for z in points.iter().filter(|z| z.re.abs() <= half && z.im.abs() <= half) {
        let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.00\"/>", cx(z.re), cy(z.im));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        "<circle cx=\"500.00\" cy=\"500.00\" r=\"{:.2}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        radius * scale
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"18\">radius {:.4}</text>",
        cx(radius * std::f64::consts::FRAC_1_SQRT_2) + 8.0,
        cy(radius * std::f64::consts::FRAC_1_SQRT_2) - 8.0,
        radius
    );
    s.push_str("</svg>\n");
    s
}

/// Normalized histogram of `values` on `[lo, hi)` with an overlaid density curve.
pub fn histogram(counts: &[usize], lo: f64, hi: f64, density: impl Fn(f64) -> f64, title: &str) -> String {
    let total: usize = counts.iter().sum();
    let width = (hi - lo) / counts.len() as f64;
    let heights: Vec<f64> = counts.iter().map(|&c| c as f64 / (total.max(1) as f64 * width)).collect();
    let curve: Vec<(f64, f64)> =
        (0..=400).map(|k| lo + (hi - lo) * k as f64 / 400.0).map(|x| (x, density(x))).collect();
    let top =
        heights.iter().chain(curve.iter().map(|(_, y)| y)).fold(0.0_f64, |m, &y| m.max(y)).max(f64::MIN_POSITIVE) * 1.1;
    let px = |x: f64| MARGIN + (x - lo) / (hi - lo) * (SIZE - 2.0 * MARGIN);
    let py = |y: f64| SIZE - MARGIN - y / top * (SIZE - 2.0 * MARGIN);
    let mut s = header(title);
    let _ = writeln!(s, "<g fill=\"#9cb4d8\" stroke=\"#1f4e9c\" stroke-width=\"1\">");
    for (i, &h) in heights.iter().enumerate() {
        let x0 = px(lo + i as f64 * width);
        let x1 = px(lo + (i + 1) as f64 * width);
        let _ = writeln!(
            s,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\"/>",
            x0,
            py(h),
            x1 - x0,
            py(0.0) - py(h)
        );
    }
    let _ = writeln!(s, "</g>");
    let path: Vec<String> = curve.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
    let _ = writeln!(s, "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"{}\"/>", path.join(" "));
    let _ = writeln!(
        s,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1\"/>",
        px(lo),
        py(0.0),
        px(hi),
        py(0.0)
    );
    for k in 0..=4 {
        let x = lo + (hi - lo) * k as f64 / 4.0;
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{x:.3}</text>",
            px(x),
            py(0.0) + 24.0
        );
    }
    s.push_str("</svg>\n");
    s
}
