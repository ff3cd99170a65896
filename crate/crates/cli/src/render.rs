//! Static SVG output. All coordinates are printed with fixed precision so
//! identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use msq_core::stats::{Histogram, NormalOverlay, ProjectionSet};
use msq_core::ParityMatrix;

pub const HEATMAP_GRID: usize = 64;
const PLOT: f64 = 480.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 16] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2df8a",
    "#fb9a99", "#cab2d6", "#ff7f00", "#6a3d9a", "#b15928", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderKind {
    Pattern,
    Tiling,
    Scatter,
    Heatmap,
    Histogram,
}

impl std::str::FromStr for RenderKind {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, RenderError> {
        Ok(match s {
            "pattern" => RenderKind::Pattern,
            "tiling" => RenderKind::Tiling,
            "scatter" => RenderKind::Scatter,
            "heatmap" => RenderKind::Heatmap,
            "histogram" => RenderKind::Histogram,
            other => return Err(RenderError::Spec(format!("unknown render kind {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub kind: RenderKind,
    /// Side of one pattern cell in pixels.
    pub cell: u32,
    pub one_color: String,
    pub zero_color: String,
    /// Tiling repeats as (rows, columns).
    pub repeat: (usize, usize),
}

impl RenderSpec {
    pub fn new(kind: RenderKind) -> Self {
        RenderSpec {
            kind,
            cell: 10,
            one_color: "#222831".into(),
            zero_color: "#eeeeee".into(),
            repeat: if kind == RenderKind::Tiling { (4, 4) } else { (1, 1) },
        }
    }

    fn validate(&self) -> Result<(), RenderError> {
        if self.repeat.0 == 0 || self.repeat.1 == 0 {
            return Err(RenderError::Spec("repeat counts must be at least 1".into()));
        }
        if self.one_color == self.zero_color {
            return Err(RenderError::Spec("the two colors must differ".into()));
        }
        if self.cell == 0 {
            return Err(RenderError::Spec("cell size must be positive".into()));
        }
        Ok(())
    }
}

pub enum RenderData<'a> {
    Pattern(&'a ParityMatrix),
    Projection(&'a ProjectionSet),
    Histogram(&'a Histogram, Option<&'a NormalOverlay>),
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("render spec: {0}")]
    Spec(String),
    #[error("{kind:?} rendering needs {expected} data")]
    Mismatch { kind: RenderKind, expected: &'static str },
}

pub fn render_svg(spec: &RenderSpec, data: &RenderData) -> Result<String, RenderError> {
    spec.validate()?;
    match (spec.kind, data) {
        (RenderKind::Pattern, RenderData::Pattern(pm)) => Ok(tiling(spec, pm, (1, 1))),
        (RenderKind::Tiling, RenderData::Pattern(pm)) => Ok(tiling(spec, pm, spec.repeat)),
        (RenderKind::Scatter, RenderData::Projection(set)) => Ok(scatter(set)),
        (RenderKind::Heatmap, RenderData::Projection(set)) => Ok(heatmap(set)),
        (RenderKind::Histogram, RenderData::Histogram(h, overlay)) => Ok(histogram(h, *overlay)),
        (kind @ (RenderKind::Pattern | RenderKind::Tiling), _) => {
            Err(RenderError::Mismatch { kind, expected: "pattern" })
        }
        (kind @ (RenderKind::Scatter | RenderKind::Heatmap), _) => {
            Err(RenderError::Mismatch { kind, expected: "projection" })
        }
        (kind, _) => Err(RenderError::Mismatch { kind, expected: "histogram" }),
    }
}

fn open(out: &mut String, width: f64, height: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
}

fn tiling(spec: &RenderSpec, pm: &ParityMatrix, (reps_r, reps_c): (usize, usize)) -> String {
    let n = pm.order();
    let cell = spec.cell as usize;
    let mut out = String::new();
    open(&mut out, (n * reps_c * cell) as f64, (n * reps_r * cell) as f64);
    for tr in 0..reps_r {
        for tc in 0..reps_c {
            for r in 0..n {
                for c in 0..n {
                    let fill = if pm.get(r, c) { &spec.one_color } else { &spec.zero_color };
                    let x = (tc * n + c) * cell;
                    let y = (tr * n + r) * cell;
                    writeln!(out, r#"<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{fill}"/>"#).unwrap();
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

struct Frame {
    lo: [f64; 2],
    span: [f64; 2],
}

impl Frame {
    fn of(points: &[[f64; 2]]) -> Frame {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        if points.is_empty() {
            lo = [0.0; 2];
            hi = [1.0; 2];
        }
        let span = [0, 1].map(|a| if hi[a] > lo[a] { hi[a] - lo[a] } else { 1.0 });
        let lo = [0, 1].map(|a| if hi[a] > lo[a] { lo[a] } else { lo[a] - 0.5 });
        Frame { lo, span }
    }

    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.lo[0]) / self.span[0] * PLOT
    }

    fn y(&self, v: f64) -> f64 {
        MARGIN + PLOT - (v - self.lo[1]) / self.span[1] * PLOT
    }
}

fn axes(out: &mut String, x_label: &str, y_label: &str) {
    let end = MARGIN + PLOT;
    writeln!(out, r#"<line x1="{MARGIN}" y1="{end}" x2="{end}" y2="{end}" stroke="black"/>"#).unwrap();
    writeln!(out, r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{end}" stroke="black"/>"#).unwrap();
    let mid = MARGIN + PLOT / 2.0;
    writeln!(out, r#"<text x="{mid}" y="{}" text-anchor="middle" font-size="12">{x_label}</text>"#, end + 28.0)
        .unwrap();
    writeln!(
        out,
        r#"<text x="14" y="{mid}" text-anchor="middle" font-size="12" transform="rotate(-90 14 {mid})">{y_label}</text>"#
    )
    .unwrap();
}

fn label_colors(set: &ProjectionSet) -> BTreeMap<&str, &'static str> {
    let labels: std::collections::BTreeSet<&str> = set.points.iter().map(|p| p.label.as_str()).collect();
    labels.into_iter().enumerate().map(|(i, l)| (l, PALETTE[i % PALETTE.len()])).collect()
}

fn scatter(set: &ProjectionSet) -> String {
    let pts = set.coordinates();
    let frame = Frame::of(&pts);
    let colors = label_colors(set);
    let size = PLOT + 2.0 * MARGIN;
    let mut out = String::new();
    open(&mut out, size, size);
    axes(&mut out, "axis 1", "axis 2");
    for p in &set.points {
        writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="{}" fill-opacity="0.6"/>"#,
            frame.x(p.axis1),
            frame.y(p.axis2),
            colors[p.label.as_str()]
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Point counts on a `HEATMAP_GRID`² grid over the bounding box, row 0 at
/// the top.
pub fn heatmap_counts(set: &ProjectionSet) -> Vec<Vec<u64>> {
    let pts = set.coordinates();
    let frame = Frame::of(&pts);
    let g = HEATMAP_GRID;
    let mut grid = vec![vec![0u64; g]; g];
    for p in &pts {
        let fx = (p[0] - frame.lo[0]) / frame.span[0];
        let fy = (p[1] - frame.lo[1]) / frame.span[1];
        let col = ((fx * g as f64) as usize).min(g - 1);
        let row = g - 1 - ((fy * g as f64) as usize).min(g - 1);
        grid[row][col] += 1;
    }
    grid
}

fn heatmap(set: &ProjectionSet) -> String {
    let grid = heatmap_counts(set);
    let peak = grid.iter().flatten().copied().max().unwrap_or(0).max(1);
    let size = PLOT + 2.0 * MARGIN;
    let cell = PLOT / HEATMAP_GRID as f64;
    let mut out = String::new();
    open(&mut out, size, size);
    axes(&mut out, "axis 1", "axis 2");
    for (r, row) in grid.iter().enumerate() {
        for (c, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            // linear ramp from pale yellow to dark red
            let t = count as f64 / peak as f64;
            let rgb = [255.0 - 115.0 * t, 245.0 - 225.0 * t, 200.0 - 170.0 * t].map(|v| v.round() as u8);
            writeln!(
                out,
                r##"<rect x="{:.3}" y="{:.3}" width="{cell:.3}" height="{cell:.3}" fill="#{:02x}{:02x}{:02x}" data-count="{count}"/>"##,
                MARGIN + c as f64 * cell,
                MARGIN + r as f64 * cell,
                rgb[0],
                rgb[1],
                rgb[2]
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

fn histogram(h: &Histogram, overlay: Option<&NormalOverlay>) -> String {
    let size = PLOT + 2.0 * MARGIN;
    let lo = h.edges[0];
    let hi = *h.edges.last().unwrap();
    let (lo, hi) = match overlay {
        Some(o) => (lo.min(o.xs[0]), hi.max(*o.xs.last().unwrap())),
        None => (lo, hi),
    };
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |v: f64| MARGIN + (v - lo) / span * PLOT;
    let width = h.edges[1] - h.edges[0];
    let total = h.total() as f64;
    let curve: Vec<(f64, f64)> = overlay
        .map(|o| o.xs.iter().zip(&o.density).map(|(&a, &d)| (a, d * total * width)).collect())
        .unwrap_or_default();
    let peak = h.counts.iter().map(|&c| c as f64).chain(curve.iter().map(|p| p.1)).fold(1.0, f64::max);
    let y = |v: f64| MARGIN + PLOT - v / peak * PLOT;
    let mut out = String::new();
    open(&mut out, size, size);
    axes(&mut out, "value", "count");
    for (i, &count) in h.counts.iter().enumerate() {
        let (a, b) = (h.edges[i], h.edges[i + 1]);
        let w = if b > a { x(b) - x(a) } else { PLOT / 50.0 };
        writeln!(
            out,
            r##"<rect x="{:.3}" y="{:.3}" width="{w:.3}" height="{:.3}" fill="#4c72b0" stroke="white" data-count="{count}"/>"##,
            x(a),
            y(count as f64),
            MARGIN + PLOT - y(count as f64)
        )
        .unwrap();
    }
    if !curve.is_empty() {
        let pts: Vec<String> = curve.iter().map(|&(a, v)| format!("{:.3},{:.3}", x(a), y(v))).collect();
        writeln!(out, r##"<polyline points="{}" fill="none" stroke="#c44e52" stroke-width="2"/>"##, pts.join(" "))
            .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lo_shu() -> ParityMatrix {
        msq_core::parse_pattern("010111010", 3).unwrap()
    }

    #[test]
    fn pattern_has_one_rect_per_cell() {
        let svg = render_svg(&RenderSpec::new(RenderKind::Pattern), &RenderData::Pattern(&lo_shu())).unwrap();
        assert_eq!(svg.matches("<rect").count(), 9);
        assert!(svg.contains(r#"viewBox="0 0 30 30""#));
    }

    #[test]
    fn tiling_repeats() {
        let svg = render_svg(&RenderSpec::new(RenderKind::Tiling), &RenderData::Pattern(&lo_shu())).unwrap();
        assert_eq!(svg.matches("<rect").count(), 144);
        assert!(svg.contains(r#"viewBox="0 0 120 120""#));
    }

    #[test]
    fn bad_specs() {
        let mut spec = RenderSpec::new(RenderKind::Tiling);
        spec.repeat = (0, 2);
        assert!(matches!(render_svg(&spec, &RenderData::Pattern(&lo_shu())), Err(RenderError::Spec(_))));
        let mut spec = RenderSpec::new(RenderKind::Pattern);
        spec.zero_color = spec.one_color.clone();
        assert!(render_svg(&spec, &RenderData::Pattern(&lo_shu())).is_err());
        let spec = RenderSpec::new(RenderKind::Scatter);
        assert!(matches!(render_svg(&spec, &RenderData::Pattern(&lo_shu())), Err(RenderError::Mismatch { .. })));
    }
}
