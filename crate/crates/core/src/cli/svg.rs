use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::SampledCurve;
use crate::chern::Scalar;
use crate::walls::{fmt_f64, SampleBranch};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Theta,
    Gamma,
    Largest,
    Wall,
}

impl Role {
    fn color(self) -> &'static str {
        match self {
            Role::Theta => "blue",
            Role::Gamma => "gray",
            Role::Largest => "red",
            Role::Wall => "black",
        }
    }

    fn label(self) -> &'static str {
        match self {
            Role::Theta => "Theta",
            Role::Gamma => "Gamma",
            Role::Largest => "largest tilt wall",
            Role::Wall => "tilt wall",
        }
    }
}

struct Frame {
    lo: f64,
    hi: f64,
    alpha_max: f64,
}

impl Frame {
    fn x(&self, beta: f64) -> f64 {
        MARGIN + (beta - self.lo) / (self.hi - self.lo) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, alpha: f64) -> f64 {
        HEIGHT - MARGIN - alpha / self.alpha_max * (HEIGHT - 2.0 * MARGIN)
    }
}

fn alpha_max(curves: &[SampledCurve], marker: Option<(f64, f64)>) -> f64 {
    let walls = curves
        .iter()
        .filter(|c| matches!(c.role, Role::Largest | Role::Wall))
        .flat_map(|c| c.samples.iter().map(|s| s.alpha))
        .chain(marker.map(|m| m.1))
        .fold(0.0_f64, f64::max);
    let m = if walls > 0.0 {
        walls * 1.5
    } else {
        curves
            .iter()
            .flat_map(|c| c.samples.iter().map(|s| s.alpha))
            .fold(0.0_f64, f64::max)
    };
    if m > 0.0 {
        m
    } else {
        1.0
    }
}

/// Path data for one curve: a subpath per run of consecutive samples on the
/// same branch, and a vertical segment for every `Vertical` sample.
fn path_data(c: &SampledCurve, f: &Frame, step: f64) -> String {
    let mut d = String::new();
    let mut last: Option<(SampleBranch, f64)> = None;
    let mut branches: Vec<SampleBranch> = c.samples.iter().map(|s| s.branch).collect();
    branches.sort();
    branches.dedup();
    for branch in branches {
        if matches!(branch, SampleBranch::Vertical | SampleBranch::Boundary) {
            continue;
        }
        for s in c.samples.iter().filter(|s| {
            s.branch == branch
                || (branch == SampleBranch::Single && s.branch == SampleBranch::Boundary)
        }) {
            let cont = matches!(last, Some((b, beta)) if b == branch && s.beta - beta < 1.5 * step);
            let cmd = if cont { 'L' } else { 'M' };
            let _ = write!(
                d,
                "{cmd}{},{} ",
                fmt_f64(f.x(s.beta)),
                fmt_f64(f.y(s.alpha))
            );
            last = Some((branch, s.beta));
        }
        last = None;
    }
    for s in c
        .samples
        .iter()
        .filter(|s| s.branch == SampleBranch::Vertical)
    {
        let x = fmt_f64(f.x(s.beta));
        let _ = write!(
            d,
            "M{x},{} L{x},{} ",
            fmt_f64(f.y(0.0)),
            fmt_f64(f.y(f.alpha_max))
        );
    }
    d.trim_end().to_string()
}

/// Renders curves on an 800x600 canvas. Emits exactly one `<path>` per curve
/// and one `<circle>` marker at `marker = (beta, alpha)` when given.
pub fn render(
    curves: &[SampledCurve],
    range: &(Scalar, Scalar),
    marker: Option<(f64, f64)>,
) -> String {
    let f = Frame {
        lo: range.0.to_f64().unwrap_or(-1.0),
        hi: range.1.to_f64().unwrap_or(1.0),
        alpha_max: alpha_max(curves, marker),
    };
    let n = curves
        .iter()
        .map(|c| c.samples.len())
        .max()
        .unwrap_or(2)
        .max(2);
    let step = (f.hi - f.lo) / 1.0_f64.max(n as f64 - 1.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#
    );
    let (x0, x1) = (fmt_f64(f.x(f.lo)), fmt_f64(f.x(f.hi)));
    let (y0, y1) = (fmt_f64(f.y(0.0)), fmt_f64(f.y(f.alpha_max)));
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{x1}" y="{}" font-size="14" text-anchor="end">beta</text>"#,
        fmt_f64(f.y(0.0) + 30.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{x0}" y="{}" font-size="14">alpha</text>"#,
        fmt_f64(f.y(f.alpha_max) - 10.0)
    );
    for (v, anchor) in [(f.lo, "start"), (f.hi, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="{anchor}">{}</text>"#,
            fmt_f64(f.x(v)),
            fmt_f64(f.y(0.0) + 15.0),
            fmt_f64(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{x0}" y="{y1}" width="{}" height="{}"/></clipPath></defs>"#,
        fmt_f64(WIDTH - 2.0 * MARGIN),
        fmt_f64(HEIGHT - 2.0 * MARGIN)
    );
    let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
    for c in curves {
        let d = path_data(c, &f, step);
        let width = if c.role == Role::Largest { 2 } else { 1 };
        let _ = writeln!(
            s,
            r#"<path id="{}" d="{d}" fill="none" stroke="{}" stroke-width="{width}"/>"#,
            c.id,
            c.role.color()
        );
    }
    let _ = writeln!(s, "</g>");
    if let Some((b, a)) = marker {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="4" fill="red"/>"#,
            fmt_f64(f.x(b)),
            fmt_f64(f.y(a))
        );
    }
    let mut roles: Vec<Role> = Vec::new();
    for c in curves {
        if !roles.contains(&c.role) {
            roles.push(c.role);
        }
    }
    for (i, r) in roles.iter().enumerate() {
        let y = 20.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="600" y1="{}" x2="630" y2="{}" stroke="{}" stroke-width="2"/>"#,
            fmt_f64(y),
            fmt_f64(y),
            r.color()
        );
        let _ = writeln!(
            s,
            r#"<text x="636" y="{}" font-size="12">{}</text>"#,
            fmt_f64(y + 4.0),
            r.label()
        );
    }
    s.push_str("</svg>\n");
    s
}
