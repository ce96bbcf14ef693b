//! Deterministic SVG rendering of environments, roadmaps, and query paths.
//!
//! Output is plain SVG 1.1 text assembled with fixed float formatting and
//! sorted iteration, so identical inputs produce byte-identical documents.
//! 3D scenes render as an axis-aligned slice projection.

use crate::cspace::{Configuration, Environment};
use crate::error::{Error, Result};
use crate::spanner::SparseGraph;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub edge_width: f64,
    pub path_width: f64,
    pub vertex_radius: f64,
    pub obstacle_fill: String,
    pub shell_stroke: String,
    pub edge_stroke: String,
    pub vertex_fill: String,
    pub path_stroke: String,
    /// Axis index and value selecting the rendered slice of a 3D scene.
    pub slice: Option<(usize, f64)>,
    /// Half-thickness of the slice band vertices must fall into.
    pub slice_tolerance: f64,
    /// Lay two panels side by side (see [`render_pair`]).
    pub side_by_side: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            edge_width: 0.12,
            path_width: 0.5,
            vertex_radius: 0.35,
            obstacle_fill: "#4a4a4a".into(),
            shell_stroke: "#b0b0b0".into(),
            edge_stroke: "#4f81bd".into(),
            vertex_fill: "#1f3864".into(),
            path_stroke: "#d03030".into(),
            slice: None,
            slice_tolerance: 1.0,
            side_by_side: false,
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

struct Projector {
    ax: usize,
    ay: usize,
    y_lo: f64,
    y_hi: f64,
}

impl Projector {
    fn x(&self, q: &Configuration) -> f64 {
        q[self.ax]
    }
    /// SVG y grows downward; flip within the bounds.
    fn y(&self, q: &Configuration) -> f64 {
        self.y_lo + self.y_hi - q[self.ay]
    }
    fn box_rect(&self, min: &[f64], max: &[f64]) -> (f64, f64, f64, f64) {
        let x = min[self.ax];
        let w = max[self.ax] - min[self.ax];
        let y = self.y_lo + self.y_hi - max[self.ay];
        let h = max[self.ay] - min[self.ay];
        (x, y, w, h)
    }
}

fn projection(env: &Environment, options: &RenderOptions) -> Result<(Projector, Option<(usize, f64)>)> {
    match env.dimension() {
        2 => Ok((
            Projector { ax: 0, ay: 1, y_lo: env.bounds()[1].0, y_hi: env.bounds()[1].1 },
            None,
        )),
        3 => {
            let (axis, value) = options.slice.ok_or_else(|| {
                Error::Input("3D rendering needs a slice axis and value".into())
            })?;
            if axis >= 3 {
                return Err(Error::Input(format!("slice axis {axis} out of range for 3D")));
            }
            let (lo, hi) = env.bounds()[axis];
            if value < lo || value > hi {
                return Err(Error::Input(format!("slice value {value} outside bounds [{lo},{hi}]")));
            }
            let mut axes = [0usize, 1, 2];
            axes[axis] = usize::MAX;
            let kept: Vec<usize> = axes.iter().copied().filter(|&a| a != usize::MAX).collect();
            Ok((
                Projector {
                    ax: kept[0],
                    ay: kept[1],
                    y_lo: env.bounds()[kept[1]].0,
                    y_hi: env.bounds()[kept[1]].1,
                },
                Some((axis, value)),
            ))
        }
        d => Err(Error::Input(format!("rendering supports 2D and 3D scenes, not {d}D"))),
    }
}

fn panel_body(
    env: &Environment,
    g: Option<&SparseGraph>,
    path: Option<&[Configuration]>,
    options: &RenderOptions,
    caption: Option<&str>,
) -> Result<String> {
    let (proj, slice) = projection(env, options)?;
    let in_slice = |q: &Configuration| match slice {
        None => true,
        Some((axis, value)) => (q[axis] - value).abs() <= options.slice_tolerance,
    };
    let box_in_slice = |min: &[f64], max: &[f64]| match slice {
        None => true,
        Some((axis, value)) => min[axis] <= value && value <= max[axis],
    };
    let mut s = String::new();
    // bounds frame
    let (bx, by) = (env.bounds()[proj.ax], env.bounds()[proj.ay]);
    s.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"{}\"/>\n",
        fmt(bx.0),
        fmt(by.0),
        fmt(bx.1 - bx.0),
        fmt(by.1 - by.0),
        fmt(options.edge_width)
    ));
    // clearance shells then solid obstacles
    for b in env.inflated_obstacles() {
        if !box_in_slice(&b.min, &b.max) {
            continue;
        }
        let (x, y, w, h) = proj.box_rect(&b.min, &b.max);
        s.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
            fmt(x), fmt(y), fmt(w), fmt(h), options.shell_stroke, fmt(options.edge_width)
        ));
    }
    for b in env.obstacles() {
        if !box_in_slice(&b.min, &b.max) {
            continue;
        }
        let (x, y, w, h) = proj.box_rect(&b.min, &b.max);
        s.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
            fmt(x), fmt(y), fmt(w), fmt(h), options.obstacle_fill
        ));
    }
    let mut vertex_count = 0usize;
    let mut edge_count = 0usize;
    if let Some(g) = g {
        for (a, b, _) in g.edges() {
            let (qa, qb) = (g.vertex(a), g.vertex(b));
            edge_count += 1;
            if !(in_slice(qa) && in_slice(qb)) {
                continue;
            }
            s.push_str(&format!(
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                fmt(proj.x(qa)),
                fmt(proj.y(qa)),
                fmt(proj.x(qb)),
                fmt(proj.y(qb)),
                options.edge_stroke,
                fmt(options.edge_width)
            ));
        }
        for (_, q) in g.vertices() {
            vertex_count += 1;
            if !in_slice(q) {
                continue;
            }
            s.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
                fmt(proj.x(q)),
                fmt(proj.y(q)),
                fmt(options.vertex_radius),
                options.vertex_fill
            ));
        }
    }
    if let Some(path) = path {
        if path.len() > 1 {
            let points: Vec<String> = path
                .iter()
                .map(|q| format!("{},{}", fmt(proj.x(q)), fmt(proj.y(q))))
                .collect();
            s.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                points.join(" "),
                options.path_stroke,
                fmt(options.path_width)
            ));
        }
    }
    let legend = match caption {
        Some(c) => format!("{c} — vertices: {vertex_count}, edges: {edge_count}"),
        None => format!("vertices: {vertex_count}, edges: {edge_count}"),
    };
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"2\" font-family=\"monospace\" fill=\"#000000\">{}</text>\n",
        fmt(bx.0 + 0.5),
        fmt(by.0 + 2.5),
        legend
    ));
    Ok(s)
}

/// Renders an environment, an optional roadmap, and an optional path into a
/// standalone SVG document whose viewBox equals the environment bounds.
pub fn render(
    env: &Environment,
    g: Option<&SparseGraph>,
    path: Option<&[Configuration]>,
    options: &RenderOptions,
) -> Result<String> {
    let (proj, _) = projection(env, options)?;
    let (bx, by) = (env.bounds()[proj.ax], env.bounds()[proj.ay]);
    let (w, h) = (bx.1 - bx.0, by.1 - by.0);
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"640\" height=\"640\">\n",
        fmt(bx.0),
        fmt(by.0),
        fmt(w),
        fmt(h)
    ));
    s.push_str(&panel_body(env, g, path, options, None)?);
    s.push_str("</svg>\n");
    Ok(s)
}

/// Two captioned panels side by side over the same environment, for
/// before/after comparisons of roadmaps.
pub fn render_pair(
    env: &Environment,
    left: (&SparseGraph, &str),
    right: (&SparseGraph, &str),
    options: &RenderOptions,
) -> Result<String> {
    let (proj, _) = projection(env, options)?;
    let (bx, by) = (env.bounds()[proj.ax], env.bounds()[proj.ay]);
    let (w, h) = (bx.1 - bx.0, by.1 - by.0);
    let gap = w * 0.05;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"1280\" height=\"640\">\n",
        fmt(bx.0),
        fmt(by.0),
        fmt(w * 2.0 + gap),
        fmt(h)
    ));
    s.push_str("<g>\n");
    s.push_str(&panel_body(env, Some(left.0), None, options, Some(left.1))?);
    s.push_str("</g>\n");
    s.push_str(&format!("<g transform=\"translate({},0)\">\n", fmt(w + gap)));
    s.push_str(&panel_body(env, Some(right.0), None, options, Some(right.1))?);
    s.push_str("</g>\n");
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cspace::{AxisBox, Metric};
    use crate::spanner::{GraphMeta, SparseGraph};

    fn meta(d: usize) -> GraphMeta {
        GraphMeta { dimension: d, metric: Metric::L1, delta: 5.0, dense_delta: 0.5, stretch: 3.0 }
    }

    #[test]
    fn empty_scene_is_a_frame() {
        let env = Environment::empty(2, 0.0, 50.0);
        let svg = render(&env, None, None, &RenderOptions::default()).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("viewBox=\"0.000 0.000 50.000 50.000\""));
        assert!(svg.contains("vertices: 0, edges: 0"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn single_vertex_counts() {
        let env = Environment::empty(2, 0.0, 50.0);
        let mut g = SparseGraph::new(meta(2));
        g.add_vertex(Configuration::from(&[10.0, 10.0][..]));
        let svg = render(&env, Some(&g), None, &RenderOptions::default()).unwrap();
        assert!(svg.contains("vertices: 1, edges: 0"));
        assert!(svg.contains("<circle"));
    }

    #[test]
    fn byte_determinism() {
        let env = Environment::new(
            2,
            vec![(0.0, 50.0), (0.0, 50.0)],
            vec![AxisBox::new(vec![10.0, 10.0], vec![20.0, 20.0])],
            1.0,
        )
        .unwrap();
        let mut g = SparseGraph::new(meta(2));
        let a = g.add_vertex(Configuration::from(&[5.0, 5.0][..]));
        let b = g.add_vertex(Configuration::from(&[5.0, 25.0][..]));
        g.add_edge(a, b);
        let path = vec![Configuration::from(&[1.0, 1.0][..]), Configuration::from(&[5.0, 5.0][..])];
        let opts = RenderOptions::default();
        let first = render(&env, Some(&g), Some(&path), &opts).unwrap();
        let second = render(&env, Some(&g), Some(&path), &opts).unwrap();
        assert_eq!(first, second);
        assert!(first.contains("<polyline"));
        assert!(first.contains("<line"));
    }

    #[test]
    fn three_d_needs_slice() {
        let env = Environment::empty(3, 0.0, 50.0);
        let err = render(&env, None, None, &RenderOptions::default());
        assert!(err.is_err());
        let mut opts = RenderOptions::default();
        opts.slice = Some((2, 25.0));
        assert!(render(&env, None, None, &opts).is_ok());
        opts.slice = Some((2, 99.0));
        assert!(render(&env, None, None, &opts).is_err());
        opts.slice = Some((7, 1.0));
        assert!(render(&env, None, None, &opts).is_err());
    }

    #[test]
    fn slice_filters_vertices() {
        let env = Environment::empty(3, 0.0, 50.0);
        let mut g = SparseGraph::new(meta(3));
        g.add_vertex(Configuration::from(&[10.0, 10.0, 25.0][..]));
        g.add_vertex(Configuration::from(&[10.0, 20.0, 40.0][..]));
        let mut opts = RenderOptions::default();
        opts.slice = Some((2, 25.0));
        let svg = render(&env, Some(&g), None, &opts).unwrap();
        // counts report the whole graph; only the in-slice vertex is drawn
        assert!(svg.contains("vertices: 2, edges: 0"));
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn pair_renders_two_panels() {
        let env = Environment::empty(2, 0.0, 50.0);
        let g1 = SparseGraph::new(meta(2));
        let g2 = SparseGraph::new(meta(2));
        let svg = render_pair(&env, (&g1, "baseline"), (&g2, "bolt"), &RenderOptions::default())
            .unwrap();
        assert!(svg.contains("baseline — vertices: 0, edges: 0"));
        assert!(svg.contains("bolt — vertices: 0, edges: 0"));
        assert!(svg.contains("translate(52.500,0)"));
    }
}
