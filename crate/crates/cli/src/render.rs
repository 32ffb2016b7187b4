//! Deterministic SVG renderings: fixed viewports, fixed element order,
//! fixed numeric formatting, so identical inputs give byte-identical files.

use crate::CliError;
use fieldexpr::ScalarField;
use lch_front::{FrontDiagram, FrontEvent, ResolvedDiagram};
use morse_engine::{flow, LevelSurface, MorseRun, Tolerances, V3};
use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const PAD: f64 = 40.0;

struct Frame {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = PAD + (x - self.min_x) / (self.max_x - self.min_x) * (WIDTH - 2.0 * PAD);
        let sy = PAD + (self.max_y - y) / (self.max_y - self.min_y) * (HEIGHT - 2.0 * PAD);
        (sx, sy)
    }
}

fn polyline(out: &mut String, frame: &Frame, points: &[(f64, f64)], style: &str) {
    let mut d = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        let (sx, sy) = frame.map(x, y);
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{sx:.2} {sy:.2} ");
    }
    let _ = writeln!(out, r#"<path d="{}" fill="none" {style}/>"#, d.trim_end());
}

fn index_color(index: usize) -> &'static str {
    match index {
        0 => "#1a6fb5",
        1 => "#b58a1a",
        _ => "#b51a3c",
    }
}

/// Flow-line portrait of a Morse run: descent trajectories out of every
/// saddle (both unstable branches) and a fan of descent rays out of every
/// maximum, orthographically projected onto the xz-plane.
pub fn morse_svg(
    surface: &LevelSurface,
    f: &ScalarField,
    run: &MorseRun,
    tols: &Tolerances,
) -> Result<String, CliError> {
    let lo = V3::from(surface.box_min());
    let hi = V3::from(surface.box_max());
    let frame = Frame {
        min_x: lo.x,
        max_x: hi.x,
        min_y: lo.z,
        max_y: hi.z,
    };
    let cps = &run.critical_points;

    let mut starts: Vec<(usize, V3)> = Vec::new();
    for c in cps {
        match c.index {
            1 => {
                for sign in [1.0f64, -1.0] {
                    starts.push((1, c.position + c.negative_frame[0] * (tols.shoot_eps * sign)));
                }
            }
            2 => {
                for k in 0..16 {
                    let theta = std::f64::consts::PI * k as f64 / 8.0;
                    let dir =
                        c.negative_frame[0] * theta.cos() + c.negative_frame[1] * theta.sin();
                    starts.push((2, c.position + dir * tols.shoot_eps));
                }
            }
            _ => {}
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );
    for (index, x0) in &starts {
        let traj = flow(surface, f, [x0.x, x0.y, x0.z], cps, 1e4, tols)?;
        let points: Vec<(f64, f64)> = traj.samples.iter().map(|(_, x)| (x.x, x.z)).collect();
        polyline(
            &mut out,
            &frame,
            &points,
            &format!(
                r#"stroke="{}" stroke-width="1.2" opacity="0.8""#,
                index_color(*index)
            ),
        );
    }
    for c in cps {
        let (sx, sy) = frame.map(c.position.x, c.position.z);
        let _ = writeln!(
            out,
            r##"<circle cx="{sx:.2}" cy="{sy:.2}" r="5" fill="{}" stroke="#000000"/>"##,
            index_color(c.index)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="14">{} ({})</text>"#,
            sx + 8.0,
            sy - 8.0,
            c.label,
            c.index
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Normalized event heights: `L`/`R` without a height act on the top of
/// the strand stack.
fn event_height(front: &FrontDiagram, i: usize) -> (char, usize) {
    let before = front.strand_count(i);
    match front.events()[i] {
        FrontEvent::LeftCusp(k) => ('L', k.min(before + 1)),
        FrontEvent::RightCusp(k) => ('R', k.min(before.saturating_sub(1))),
        FrontEvent::Crossing(k) => ('X', k),
    }
}

/// Two stacked panels: the front diagram (cusps drawn as corner points)
/// and the resolved Lagrangian projection with labelled double points.
pub fn front_svg(front: &FrontDiagram, diagram: &ResolvedDiagram) -> String {
    let n = front.events().len();
    let max_strands = (0..=n).map(|g| front.strand_count(g)).max().unwrap_or(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );

    // Upper panel: the front.  x advances one unit per event; strands sit
    // at integer heights within each gap.
    // The strand band 0..max+1 fills the top half when the frame's y-range
    // is twice the band, extended downward.
    let upper = Frame {
        min_x: -0.5,
        max_x: n as f64 + 0.5,
        min_y: -(max_strands + 1.0),
        max_y: max_strands + 1.0,
    };
    let seg = |out: &mut String, a: (f64, f64), b: (f64, f64)| {
        polyline(out, &upper, &[a, b], r##"stroke="#222222" stroke-width="1.5""##);
    };
    for i in 0..n {
        let before = front.strand_count(i);
        let (kind, k) = event_height(front, i);
        let x0 = i as f64;
        let x1 = i as f64 + 1.0;
        let xm = i as f64 + 0.5;
        match kind {
            'X' => {
                for h in 1..=before {
                    let y0 = h as f64;
                    let y1 = if h == k {
                        (k + 1) as f64
                    } else if h == k + 1 {
                        k as f64
                    } else {
                        y0
                    };
                    seg(&mut out, (x0, y0), (x1, y1));
                }
            }
            'L' => {
                for h in 1..=before {
                    let y1 = if h >= k { (h + 2) as f64 } else { h as f64 };
                    seg(&mut out, (x0, h as f64), (x1, y1));
                }
                let cusp = (xm, k as f64 + 0.5);
                seg(&mut out, cusp, (x1, k as f64));
                seg(&mut out, cusp, (x1, (k + 1) as f64));
            }
            'R' => {
                for h in 1..=before {
                    if h == k || h == k + 1 {
                        continue;
                    }
                    let y1 = if h > k + 1 { (h - 2) as f64 } else { h as f64 };
                    seg(&mut out, (x0, h as f64), (x1, y1));
                }
                let cusp = (xm, k as f64 + 0.5);
                seg(&mut out, (x0, k as f64), cusp);
                seg(&mut out, (x0, (k + 1) as f64), cusp);
            }
            _ => unreachable!(),
        }
    }

    // Lower panel: the resolved projection from its stored edge polylines.
    let (mut min_x, mut max_x, mut min_y, mut max_y) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for e in &diagram.edges {
        for &(x, y) in &e.path {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    // The data band fills the bottom half when the y-range is twice the
    // band, extended upward.
    let lower = Frame {
        min_x: min_x - 0.5,
        max_x: max_x + 0.5,
        min_y: min_y - 0.5,
        max_y: max_y + (max_y - min_y) + 1.0,
    };
    for e in &diagram.edges {
        polyline(
            &mut out,
            &lower,
            &e.path,
            r##"stroke="#1a6fb5" stroke-width="1.2""##,
        );
    }
    for c in &diagram.crossings {
        let (sx, sy) = lower.map(c.pos.0, c.pos.1);
        let _ = writeln!(
            out,
            r##"<circle cx="{sx:.2}" cy="{sy:.2}" r="3.5" fill="#b51a3c"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="12">{} ({})</text>"#,
            sx + 6.0,
            sy - 6.0,
            c.label,
            c.grade
        );
    }
    out.push_str("</svg>\n");
    out
}
