//! Wiring-diagram rendering: wires as polylines on an integer grid, with an
//! optional pseudo-vertical traced as a dotted path. Plain SVG strings so
//! output is bit-stable.

use crate::chirotope::{wiring_gamma, PointId, WiringDiagram};

pub struct RenderSpec {
    pub diagram: WiringDiagram,
    /// Trace the pseudo-vertical through the crossing of these two wires.
    pub highlight: Option<(PointId, PointId)>,
    pub width: u32,
    pub height: u32,
}

struct Grid {
    margin: f64,
    dx: f64,
    dy: f64,
}

impl Grid {
    fn x(&self, boundary: usize) -> f64 {
        self.margin + boundary as f64 * self.dx
    }

    fn y(&self, track: usize) -> f64 {
        self.margin + track as f64 * self.dy
    }

    /// Midline of the gap above a 0-based track.
    fn gap_y(&self, gap: usize) -> f64 {
        if gap == 0 {
            self.margin - 0.5 * self.dy
        } else {
            self.y(gap - 1) + 0.5 * self.dy
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{:.1}", v)
}

pub fn render_svg(spec: &RenderSpec) -> String {
    let w = &spec.diagram;
    let n = w.wires();
    let steps = w.swaps().len();
    let grid = Grid {
        margin: 24.0,
        dx: (spec.width as f64 - 48.0) / (steps as f64 + 1.0),
        dy: if n > 1 {
            (spec.height as f64 - 48.0) / (n as f64 - 1.0)
        } else {
            0.0
        },
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
         viewBox=\"0 0 {} {}\">\n",
        spec.width, spec.height, spec.width, spec.height
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Track of each wire at every step boundary.
    let perms = w.permutations();
    for wire in 0..n as u32 {
        let mut pts = Vec::with_capacity(steps + 2);
        for (b, perm) in perms.iter().enumerate() {
            let track = perm.iter().position(|&x| x == wire).unwrap();
            if b == 0 {
                pts.push((grid.x(0) - 12.0, grid.y(track)));
            }
            pts.push((grid.x(b) + 0.5 * grid.dx, grid.y(track)));
            if b == steps {
                pts.push((grid.x(b) + 0.5 * grid.dx + 12.0, grid.y(track)));
            }
        }
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt(x), fmt(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"#334\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            path.join(" ")
        ));
        let start_y = grid.y(wire as usize);
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#334\">{}</text>\n",
            fmt(grid.x(0) - 22.0),
            fmt(start_y + 3.0),
            wire
        ));
    }

    if let Some((a, b)) = spec.highlight {
        let gamma = wiring_gamma(w, a, b);
        let step = w.crossing_step(a, b);
        let slot = w.swaps()[step - 1] - 1;
        let cx = grid.x(step - 1) + 0.5 * grid.dx;
        let cy = 0.5 * (grid.y(slot) + grid.y(slot + 1));
        // North: walk boundaries leftward, then straight up; south mirrors.
        let mut pts = Vec::new();
        for &(boundary, gap) in gamma.north_path.iter().rev() {
            pts.push((grid.x(boundary) + 0.5 * grid.dx, grid.gap_y(gap)));
        }
        pts.reverse();
        let top = (grid.x(0) - 12.0, grid.margin - grid.dy);
        let mut path = vec![top];
        path.extend(pts.iter().rev().copied());
        path.push((cx, cy));
        for &(boundary, gap) in &gamma.south_path {
            path.push((grid.x(boundary) + 0.5 * grid.dx, grid.gap_y(gap + 1)));
        }
        path.push((
            grid.x(steps) + 0.5 * grid.dx + 12.0,
            grid.y(n - 1) + grid.dy.max(12.0),
        ));
        let path_s: Vec<String> = path
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt(x), fmt(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"#c22\" stroke-width=\"1.2\" \
             stroke-dasharray=\"4 3\" points=\"{}\"/>\n",
            path_s.join(" ")
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
