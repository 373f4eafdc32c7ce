use std::fmt::Write;
use tricurve::curve::{ParamCurve, ProjPoint};
use tricurve::poly::QPoly;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn parse(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| format!("bad window {s:?}: {e}"))?;
        let [xmin, xmax, ymin, ymax] = v[..] else {
            return Err(format!("window needs xmin,xmax,ymin,ymax, got {s:?}"));
        };
        if !(xmin < xmax && ymin < ymax) || v.iter().any(|x| !x.is_finite()) {
            return Err(format!("empty window {s:?}"));
        }
        Ok(Window { xmin, xmax, ymin, ymax })
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }
}

const SIZE: f64 = 600.0;
const COLORS: [&str; 6] = ["#1f4e79", "#a23b2a", "#2d7a3a", "#7a5a1f", "#5a2d7a", "#1f7a7a"];

fn eval(p: &QPoly, t: f64) -> (f64, f64) {
    p.coeffs().iter().rev().fold((0.0, 0.0), |(re, im), c| {
        let (a, b) = c.to_c64();
        (re * t + a, im * t + b)
    })
}

/// Affine point (x/z, y/z) when the image of t is real and off the line at infinity.
fn real_point(c: &ParamCurve, t: f64) -> Option<(f64, f64)> {
    let v = c.coords().map(|p| eval(p, t));
    let scale = v.iter().map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    // rotate so the largest coordinate is real, then demand the rest be real too
    let (pr, pi) = v.iter().copied().max_by(|a, b| a.0.hypot(a.1).total_cmp(&b.0.hypot(b.1)))?;
    let norm = pr.hypot(pi);
    let rot = |(a, b): (f64, f64)| ((a * pr + b * pi) / norm, (b * pr - a * pi) / norm);
    let w = v.map(rot);
    if w.iter().any(|(_, b)| b.abs() > 1e-9 * scale) || w[2].0.abs() < 1e-12 * scale {
        return None;
    }
    Some((w[0].0 / w[2].0, w[1].0 / w[2].0))
}

/// Polylines of the real locus for t in [t0, t1], split where the curve leaves the window.
pub fn polylines(c: &ParamCurve, w: &Window, t0: f64, t1: f64, samples: usize) -> Vec<Vec<(f64, f64)>> {
    let mut out: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut cur = Vec::new();
    for i in 0..samples {
        let t = t0 + (t1 - t0) * i as f64 / (samples.max(2) - 1) as f64;
        match real_point(c, t).filter(|&(x, y)| w.contains(x, y)) {
            Some(p) => cur.push(p),
            None => {
                if cur.len() > 1 {
                    out.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

fn px(w: &Window, x: f64, y: f64) -> (f64, f64) {
    ((x - w.xmin) / (w.xmax - w.xmin) * SIZE, (w.ymax - y) / (w.ymax - w.ymin) * SIZE)
}

pub struct Plot {
    pub svg: String,
    pub segments: usize,
    pub marks: usize,
}

pub fn render(curves: &[ParamCurve], marks: &[ProjPoint], w: &Window, t_range: (f64, f64), samples: usize) -> Plot {
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(svg, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff" stroke="#888888"/>"##);
    let mut segments = 0;
    for (i, c) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        for line in polylines(c, w, t_range.0, t_range.1, samples) {
            let pts: Vec<String> = line
                .iter()
                .map(|&(x, y)| {
                    let (a, b) = px(w, x, y);
                    format!("{a:.3},{b:.3}")
                })
                .collect();
            let _ =
                writeln!(svg, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#, pts.join(" "), c.label);
            segments += 1;
        }
    }
    let mut shown = 0;
    for p in marks {
        let [x, y, z] = p.coords().clone().map(|c| c.to_c64());
        if z.0 == 0.0 && z.1 == 0.0 || x.1 != 0.0 || y.1 != 0.0 || z.1 != 0.0 {
            continue;
        }
        let (ax, ay) = (x.0 / z.0, y.0 / z.0);
        if !w.contains(ax, ay) {
            continue;
        }
        let (a, b) = px(w, ax, ay);
        let label = p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":");
        let _ = writeln!(svg, r##"<circle class="mark" cx="{a:.3}" cy="{b:.3}" r="4" fill="#000000"><title>({label})</title></circle>"##);
        shown += 1;
    }
    svg.push_str("</svg>\n");
    Plot { svg, segments, marks: shown }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing() {
        assert!(Window::parse("-3,3,-3,3").is_ok());
        assert!(Window::parse("1,0,0,1").is_err());
        assert!(Window::parse("0,1,0").is_err());
    }

    #[test]
    fn a_line_is_one_segment() {
        let c = ParamCurve::from_ints(&[0, 1], &[1, 1], &[1], "line").unwrap();
        let w = Window::parse("-2,2,-2,2").unwrap();
        let lines = polylines(&c, &w, -1.0, 1.0, 11);
        assert_eq!(lines.len(), 1);
        assert!(lines[0].iter().all(|(x, y)| (y - x - 1.0).abs() < 1e-12));
    }
}
