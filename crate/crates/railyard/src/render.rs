//! SVG and PGM emission for coverings, tilings and rasters.

use std::fmt::Write as _;

use crate::aztec::{covering_to_dominoes, ryg_to_lozenge, DominoClass};
use crate::graph::{Covering, EdgeKind, Vertex};

const SCALE: f64 = 24.0;

fn svg_header(min_x: f64, min_y: f64, width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.1} {:.1} {:.1} {:.1}\">\n",
        min_x, min_y, width, height
    )
}

/// Draw the rail yard graph embedding with the covering's dimers bold.
pub fn covering_svg(c: &Covering) -> String {
    let spec = c.spec();
    let h = c.half_height();
    let to_px = |v: Vertex| -> (f64, f64) { (v.x as f64 * SCALE, -(v.y2 as f64) / 2.0 * SCALE) };
    let min_x = (2 * spec.l() - 2) as f64 * SCALE;
    let max_x = (2 * spec.r() + 2) as f64 * SCALE;
    let min_y = -(h as f64 + 0.5) * SCALE;
    let mut out = svg_header(min_x, min_y, max_x - min_x, 2.0 * (h as f64 + 0.5) * SCALE);
    // light graph edges
    let top = 2 * h - 1;
    for i in spec.column_indices() {
        let mut y2 = -top;
        while y2 <= top {
            let even = Vertex::new(2 * i, y2);
            for e in crate::kasteleyn::edges_at_even(spec, even) {
                if e.odd.y2.abs() > top {
                    continue;
                }
                let (x1, y1) = to_px(e.even);
                let (x2, y2p) = to_px(e.odd);
                let _ = writeln!(
                    out,
                    "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#ccc\" stroke-width=\"1\"/>",
                    x1, y1, x2, y2p
                );
            }
            y2 += 2;
        }
    }
    for e in c.edges() {
        let (x1, y1) = to_px(e.even);
        let (x2, y2) = to_px(e.odd);
        let color = match e.kind() {
            EdgeKind::Horizontal => "#1f77b4",
            EdgeKind::Diagonal => "#d62728",
        };
        let _ = writeln!(
            out,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{}\" stroke-width=\"4\" stroke-linecap=\"round\"/>",
            x1, y1, x2, y2, color
        );
    }
    // vertices
    for i in spec.column_indices() {
        let mut y2 = -top;
        while y2 <= top {
            for x in [2 * i - 1, 2 * i, 2 * i + 1] {
                let (px, py) = to_px(Vertex::new(x, y2));
                let fill = if x % 2 == 0 { "#000" } else { "#fff" };
                let _ = writeln!(
                    out,
                    "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" fill=\"{}\" stroke=\"#000\"/>",
                    px, py, fill
                );
            }
            y2 += 2;
        }
    }
    out.push_str("</svg>\n");
    out
}

fn class_color(class: DominoClass) -> &'static str {
    match class {
        DominoClass::North => "#4c72b0",
        DominoClass::South => "#dd8452",
        DominoClass::West => "#55a868",
        DominoClass::East => "#c44e52",
    }
}

/// Domino tiling view of an Aztec covering, colored by travel class
/// (N blue, S orange, W green, E red).
pub fn domino_svg(c: &Covering, n: usize) -> String {
    let dominoes = covering_to_dominoes(c, n);
    let s = SCALE;
    let lim = (n as f64 + 1.5) * s;
    let mut out = svg_header(-lim, -lim, 2.0 * lim, 2.0 * lim);
    out.push_str(&format!(
        "<!-- legend: N {} S {} W {} E {} -->\n",
        class_color(DominoClass::North),
        class_color(DominoClass::South),
        class_color(DominoClass::West),
        class_color(DominoClass::East)
    ));
    for d in &dominoes {
        let cx = d.center2.0 as f64 / 2.0;
        let cy = d.center2.1 as f64 / 2.0;
        let (w, h) = if d.vertical { (1.0, 2.0) } else { (2.0, 1.0) };
        let _ = writeln!(
            out,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\" stroke=\"#222\" stroke-width=\"0.8\"/>",
            (cx - w / 2.0) * s,
            (-cy - h / 2.0) * s,
            w * s,
            h * s,
            class_color(d.class)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Lozenge view of a constant-L covering: each dimer becomes a rhombus of
/// the honeycomb's dual.
pub fn lozenge_svg(c: &Covering) -> String {
    let spec = c.spec();
    let s = SCALE * 2.0;
    let mut shapes = String::new();
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for e in c.edges() {
        let (ax, ay) = match ryg_to_lozenge(spec, e.even) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let (bx, by) = ryg_to_lozenge(spec, e.odd).expect("odd endpoint maps");
        // rhombus: the two dual triangle apexes on either side of the edge
        let (mx, my) = ((ax + bx) / 2.0, (ay + by) / 2.0);
        let (dx, dy) = (bx - ax, by - ay);
        let t = 1.0 / 3f64.sqrt();
        let p1 = (mx + t * dy, my - t * dx);
        let p2 = (mx - t * dy, my + t * dx);
        let color = match e.kind() {
            EdgeKind::Horizontal if e.right_end_even() => "#4c72b0",
            EdgeKind::Horizontal => "#dd8452",
            EdgeKind::Diagonal => "#55a868",
        };
        for (px, py) in [(ax, ay), (bx, by), p1, p2] {
            min_x = min_x.min(px * s);
            max_x = max_x.max(px * s);
            min_y = min_y.min(-py * s);
            max_y = max_y.max(-py * s);
        }
        let _ = writeln!(
            shapes,
            "<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"{}\" stroke=\"#222\" stroke-width=\"0.6\"/>",
            ax * s,
            -ay * s,
            p1.0 * s,
            -p1.1 * s,
            bx * s,
            -by * s,
            p2.0 * s,
            -p2.1 * s,
            color
        );
    }
    let mut out = svg_header(
        min_x - 5.0,
        min_y - 5.0,
        max_x - min_x + 10.0,
        max_y - min_y + 10.0,
    );
    out.push_str(&shapes);
    out.push_str("</svg>\n");
    out
}

/// Plain (P2) PGM raster from grayscale rows in 0..=255.
pub fn pgm(rows: &[Vec<u8>]) -> String {
    let height = rows.len();
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut out = format!("P2\n{} {}\n255\n", width, height);
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aztec::{aztec_spec, AztecParams, Weighting};
    use crate::graph::uniform_weights;

    #[test]
    fn svg_outputs_are_wellformed() {
        let spec = aztec_spec(&AztecParams {
            n: 2,
            weighting: Weighting::Uniform,
        })
        .unwrap();
        let c = Covering::fundamental(&spec, 4);
        for svg in [covering_svg(&c), domino_svg(&c, 2)] {
            assert!(svg.starts_with("<svg"));
            assert!(svg.trim_end().ends_with("</svg>"));
        }
        let spec = crate::graph::RygSpec::build_from_strings(0, 2, "LLL", "++-", uniform_weights(3))
            .unwrap();
        let c = Covering::fundamental(&spec, 3);
        let svg = lozenge_svg(&c);
        assert!(svg.contains("polygon"));
    }

    #[test]
    fn pgm_shape() {
        let img = pgm(&[vec![0, 128], vec![255, 64]]);
        assert!(img.starts_with("P2\n2 2\n255\n"));
    }
}
