use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::bounds::{BoundReport, ConstantUsed};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 56.0;

// f64 keys for grouping by parameter value
fn key(x: f64) -> u64 {
    x.to_bits()
}

/// Largest `D^k N^k`, `k = 1/(γ-1/2)`, over the `main1cor` reports at this
/// `γ`; the envelope is then `|Im E| = A (Re E)^{-k/2}`.
pub fn envelope_amplitude(reports: &[BoundReport], gamma: f64) -> Option<f64> {
    let k = 1.0 / (gamma - 0.5);
    reports
        .iter()
        .filter(|r| r.name == "main1cor" && r.params.gamma == Some(gamma))
        .filter_map(|r| {
            let e = r.eig?;
            let c = match r.constant_used {
                ConstantUsed::Fixed(c) => c,
                ConstantUsed::Empirical => 0.5f64.powf(k),
            };
            Some(c * r.rhs_core * e.re.powf(0.5 * k))
        })
        .filter(|a| a.is_finite())
        .reduce(f64::max)
}

/// `A x^{-(1/2)/(γ-1/2)}`.
pub fn envelope(amplitude: f64, gamma: f64, x: f64) -> f64 {
    amplitude * x.powf(-0.5 / (gamma - 0.5))
}

/// Radii `(C max N)^{1/γ}` of the disk split, one per `γ`, taken from
/// reports whose right side is `∫|V|^q` itself.
pub fn split_radii(reports: &[BoundReport]) -> Vec<(f64, f64)> {
    let mut best: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for r in reports.iter().filter(|r| matches!(r.name.as_str(), "main1" | "main2_inside" | "main3_inside")) {
        let (Some(g), Some(c)) = (r.params.gamma, r.params.split) else { continue };
        let rad = (c * r.rhs_core).powf(1.0 / g);
        if rad.is_finite() && rad > 0.0 {
            let e = best.entry(key(g)).or_insert((g, rad));
            e.1 = e.1.max(rad);
        }
    }
    best.into_values().collect()
}

/// Distinct eigenvalues referenced by the reports, as `(instance, E)`.
pub fn report_eigenvalues(reports: &[BoundReport]) -> Vec<(Option<usize>, Complex64)> {
    let set: BTreeSet<(Option<usize>, u64, u64)> =
        reports.iter().filter_map(|r| r.eig.map(|e| (r.instance, key(e.re), key(e.im)))).collect();
    set.into_iter().map(|(k, re, im)| (k, Complex64::new(f64::from_bits(re), f64::from_bits(im)))).collect()
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn frame(eigs: &[(Option<usize>, Complex64)]) -> Frame {
    if eigs.is_empty() {
        return Frame { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 };
    }
    let (mut x0, mut x1, mut ym) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for (_, e) in eigs {
        x0 = x0.min(e.re);
        x1 = x1.max(e.re);
        ym = ym.max(e.im.abs());
    }
    x0 = x0.min(0.0);
    x1 = x1.max(0.0);
    let pad = 0.08 * (x1 - x0).max(1e-3);
    let ym = (1.15 * ym).max(1e-3);
    Frame { x0: x0 - pad, x1: x1 + pad, y0: -ym, y1: ym }
}

/// Scatter of the eigenvalues in `reports` with the `main1cor` envelope and
/// the disk-split circles. Output depends only on the reports.
pub fn spectrum_svg(reports: &[BoundReport]) -> String {
    let eigs = report_eigenvalues(reports);
    let f = frame(&eigs);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let (l, t, w, h) = (MARGIN, MARGIN, WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let _ = writeln!(s, r#"<defs><clipPath id="plot"><rect x="{l}" y="{t}" width="{w}" height="{h}"/></clipPath></defs>"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<rect x="{l}" y="{t}" width="{w}" height="{h}" fill="none" stroke="black"/>"#);

    // axes through the origin
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="{l}" y1="{y:.2}" x2="{r}" y2="{y:.2}" stroke="#888"/>"##,
        y = f.py(0.0),
        r = l + w
    );
    if f.x0 <= 0.0 && f.x1 >= 0.0 {
        let _ = writeln!(
            s,
            r##"<line class="axis" x1="{x:.2}" y1="{t}" x2="{x:.2}" y2="{b}" stroke="#888"/>"##,
            x = f.px(0.0),
            b = t + h
        );
    }
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: String| {
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{y:.2}" font-size="11" text-anchor="{anchor}">{text}</text>"#);
    };
    label(&mut s, l, t + h + 16.0, "start", format!("{:.3e}", f.x0));
    label(&mut s, l + w, t + h + 16.0, "end", format!("{:.3e}", f.x1));
    label(&mut s, l - 4.0, t + h, "end", format!("{:.3e}", f.y0));
    label(&mut s, l - 4.0, t + 10.0, "end", format!("{:.3e}", f.y1));
    label(&mut s, l + w / 2.0, HEIGHT - 12.0, "middle", "Re E".to_string());
    label(&mut s, 14.0, t + h / 2.0, "middle", "Im E".to_string());

    let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
    for (g, rad) in split_radii(reports) {
        let (cx, cy) = (f.px(0.0), f.py(0.0));
        let (rx, ry) = (rad / (f.x1 - f.x0) * w, rad / (f.y1 - f.y0) * h);
        let _ = writeln!(
            s,
            r##"<ellipse class="split" data-gamma="{g}" cx="{cx:.2}" cy="{cy:.2}" rx="{rx:.2}" ry="{ry:.2}" fill="none" stroke="#2a7" stroke-dasharray="4 3"/>"##
        );
    }
    let gammas: BTreeSet<u64> =
        reports.iter().filter(|r| r.name == "main1cor").filter_map(|r| r.params.gamma.map(key)).collect();
    for g in gammas.into_iter().map(f64::from_bits) {
        let Some(a) = envelope_amplitude(reports, g) else { continue };
        if f.x1 <= 0.0 {
            continue;
        }
        let cap = 10.0 * (f.y1 - f.y0);
        for sign in [1.0, -1.0] {
            let pts: Vec<String> = (1..=200)
                .map(|i| {
                    let x = f.x1 * i as f64 / 200.0;
                    let y = (sign * envelope(a, g, x)).clamp(-cap, cap);
                    format!("{:.2},{:.2}", f.px(x), f.py(y))
                })
                .collect();
            let _ = writeln!(
                s,
                r##"<polyline class="envelope" data-gamma="{g}" fill="none" stroke="#c33" points="{}"/>"##,
                pts.join(" ")
            );
        }
    }
    for (k, e) in &eigs {
        let inst = k.map(|k| k.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            r##"<circle class="eig" data-instance="{inst}" data-re="{}" data-im="{}" cx="{:.2}" cy="{:.2}" r="2.5" fill="#236"/>"##,
            e.re,
            e.im,
            f.px(e.re),
            f.py(e.im)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::check_main1cor;
    use crate::schrodinger::{Grid1D, Potential, SpectralParams};
    use crate::c64;

    #[test]
    fn empty_reports_give_axes_only() {
        let s = spectrum_svg(&[]);
        assert!(s.starts_with("<?xml"));
        assert!(s.contains("class=\"axis\""));
        assert!(!s.contains("class=\"eig\""));
        assert!(!s.contains("envelope"));
        assert_eq!(s, spectrum_svg(&[]));
    }

    #[test]
    fn single_eigenvalue_under_envelope() {
        let g = Grid1D::new(-5.0, 5.0, 100).unwrap();
        let v = Potential::constant_on(&g, 0.0, 1.0, c64(1.0, 1.0)).unwrap();
        let p = SpectralParams::with_gamma(1.0);
        let e = c64(0.5, 0.05);
        let r = check_main1cor(e, &v, &p).unwrap().unwrap();
        let a = envelope_amplitude(std::slice::from_ref(&r), 1.0).unwrap();
        // the envelope at Re E equals the constant times the right side
        let c = match r.constant_used {
            ConstantUsed::Fixed(c) => c,
            _ => unreachable!(),
        };
        assert!((envelope(a, 1.0, e.re) - c * r.rhs_core).abs() < 1e-12 * c * r.rhs_core);
        assert!(e.im.abs() <= envelope(a, 1.0, e.re));
        let s = spectrum_svg(&[r]);
        assert_eq!(s.matches("class=\"eig\"").count(), 1);
        assert_eq!(s.matches("class=\"envelope\"").count(), 2);
    }

    #[test]
    fn envelope_spot_checks() {
        let g = Grid1D::new(-5.0, 5.0, 100).unwrap();
        let v = Potential::constant_on(&g, -1.0, 1.0, c64(0.7, -0.4)).unwrap();
        for gamma in [0.75, 1.0, 2.0] {
            let p = SpectralParams::with_gamma(gamma);
            let reps: Vec<_> = [0.3, 1.0, 4.0]
                .iter()
                .map(|&x| check_main1cor(c64(x, 0.1), &v, &p).unwrap().unwrap())
                .collect();
            let a = envelope_amplitude(&reps, gamma).unwrap();
            for r in &reps {
                let x = r.eig.unwrap().re;
                // one potential, so a single amplitude serves every point
                let want = 0.5f64.powf(1.0 / (gamma - 0.5)) * r.rhs_core;
                assert!((envelope(a, gamma, x) - want).abs() <= 1e-12 * want);
            }
        }
    }

    #[test]
    fn every_plotted_point_is_a_report_eigenvalue() {
        let g = Grid1D::new(-5.0, 5.0, 100).unwrap();
        let v = Potential::constant_on(&g, 0.0, 1.0, c64(1.0, 1.0)).unwrap();
        let p = SpectralParams::with_gamma(1.0);
        let reps: Vec<_> =
            [c64(0.5, 0.1), c64(-1.0, 0.2), c64(0.5, 0.1)].iter().map(|&e| crate::bounds::check_main1(e, &v, &p).unwrap()).collect();
        let s = spectrum_svg(&reps);
        assert_eq!(s.matches("class=\"eig\"").count(), 2);
        assert_eq!(split_radii(&reps).len(), 1);
    }
}
