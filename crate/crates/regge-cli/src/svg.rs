//! Static SVG scatter of poles in the complex order plane.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 48.0;

/// Located poles as filled dots, predicted poles as a dashed polyline with
/// open circles.
pub fn pole_scatter(re: [f64; 2], im: [f64; 2], located: &[(f64, f64)], predicted: &[(f64, f64)]) -> String {
    let sx = |x: f64| PAD + (x - re[0]) / (re[1] - re[0]) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - im[0]) / (im[1] - im[0]) * (H - 2.0 * PAD);
    let inside = |&(x, y): &(f64, f64)| x >= re[0] && x <= re[1] && y >= im[0] && y <= im[1];
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let x = re[0] + t * (re[1] - re[0]);
        let y = im[0] + t * (im[1] - im[0]);
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, sx(x), H - PAD + 16.0, tick(x));
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, PAD - 6.0, sy(y) + 4.0, tick(y));
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">Re nu</text>"#, W / 2.0, H - 10.0);
    let _ = writeln!(s, r#"<text x="14" y="{:.1}" text-anchor="middle" transform="rotate(-90 14 {:.1})">Im nu</text>"#, H / 2.0, H / 2.0);
    let pred: Vec<&(f64, f64)> = predicted.iter().filter(|p| inside(p)).collect();
    if pred.len() > 1 {
        let pts: Vec<String> = pred.iter().map(|&&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#, pts.join(" "));
    }
    for &&(x, y) in &pred {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="none" stroke="gray"/>"#, sx(x), sy(y));
    }
    for p in located.iter().filter(|p| inside(p)) {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="firebrick"/>"#, sx(p.0), sy(p.1));
    }
    s.push_str("</svg>\n");
    s
}

fn tick(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    format!("{r}")
}
