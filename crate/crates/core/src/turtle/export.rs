//! Polyline and point-set serialization: CSV and SVG 1.1.

use super::OrientedBox;
use crate::fmt::g17;
use crate::geom::{bounds, Point};
use std::fmt::Write as _;
use std::io::{self, Write};

/// Writes one `x,y` line per point with 17 significant digits.
pub fn write_csv<W: Write>(points: &[Point], out: &mut W) -> io::Result<()> {
    let mut line = String::with_capacity(48);
    for p in points {
        line.clear();
        line.push_str(&g17(p.x));
        line.push(',');
        line.push_str(&g17(p.y));
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Parses the CSV written by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<Point>, String> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(k, l)| {
            let (x, y) = l
                .split_once(',')
                .ok_or_else(|| format!("line {}: expected x,y", k + 1))?;
            let x = x
                .trim()
                .parse()
                .map_err(|e| format!("line {}: {e}", k + 1))?;
            let y = y
                .trim()
                .parse()
                .map_err(|e| format!("line {}: {e}", k + 1))?;
            Ok(Point::new(x, y))
        })
        .collect()
}

pub const CURVE_COLOR: &str = "#1f3a93";
pub const BOX_COLOR: &str = "#c0392b";
pub const BACKGROUND: &str = "#ffffff";

#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    /// Stroke width in drawing units; defaults to 0.5% of the viewBox width.
    pub stroke_width: Option<f64>,
    /// Rectangles drawn over the curve, such as its bounding box.
    pub overlays: Vec<OrientedBox>,
}

/// Renders `points` as a single SVG path.  Drawing coordinates are y-up, so
/// y is negated on output; the viewBox has a 2% margin on every side.
pub fn svg(points: &[Point], opts: &SvgOptions) -> String {
    let mut all: Vec<Point> = points.to_vec();
    for b in &opts.overlays {
        all.extend(b.corners());
    }
    let (lo, hi) = bounds(&all).unwrap_or((Point::ORIGIN, Point::ORIGIN));
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let margin = 0.02 * extent;
    let vx = lo.x - margin;
    let vy = -hi.y - margin;
    let vw = (hi.x - lo.x) + 2.0 * margin;
    let vh = (hi.y - lo.y) + 2.0 * margin;
    let stroke = opts.stroke_width.unwrap_or(0.005 * vw);
    let digits = coordinate_decimals(extent);
    let num = |v: f64| trim(format!("{:.*}", digits, v));

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{BACKGROUND}\"/>",
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    s.push_str("<path d=\"");
    for (k, p) in points.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        s.push(if k == 0 { 'M' } else { 'L' });
        let _ = write!(s, "{} {}", num(p.x), num(-p.y));
    }
    let _ = writeln!(
        s,
        "\" fill=\"none\" stroke=\"{CURVE_COLOR}\" stroke-width=\"{}\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>",
        num(stroke)
    );
    for b in &opts.overlays {
        let pts: Vec<String> = b
            .corners()
            .iter()
            .map(|c| format!("{},{}", num(c.x), num(-c.y)))
            .collect();
        let _ = writeln!(
            s,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"{BOX_COLOR}\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>",
            pts.join(" "),
            num(stroke),
            num(4.0 * stroke),
            num(2.0 * stroke)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Decimal places giving about ten significant digits relative to `extent`.
fn coordinate_decimals(extent: f64) -> usize {
    (9 - extent.log10().floor() as i64).clamp(0, 17) as usize
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return if s == "-0" { "0".into() } else { s };
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let pts = vec![
            Point::new(0.0, 1.0),
            Point::new(0.1, -2.5e-20),
            Point::new(1e6, 1.0 / 3.0),
        ];
        let mut buf = Vec::new();
        write_csv(&pts, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("0,1"));
        assert_eq!(parse_csv(&text).unwrap(), pts);
    }

    #[test]
    fn svg_has_one_path_and_margin() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
        ];
        let s = svg(&pts, &SvgOptions::default());
        assert_eq!(s.matches("<path").count(), 1);
        assert!(s.contains("viewBox=\"-0.02 -1.02 1.04 1.04\""));
        assert!(s.contains("M0 0 L0 -1 L1 -1"));
        assert!(s.contains("stroke-width=\"0.0052\""));
    }

    #[test]
    fn svg_overlay_and_degenerate_extent() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(0.0, 2.0)];
        let b = OrientedBox::chord_aligned(&pts);
        let s = svg(
            &pts,
            &SvgOptions {
                stroke_width: Some(0.1),
                overlays: vec![b],
            },
        );
        assert!(s.contains("<polygon"));
        assert!(s.contains("stroke-width=\"0.1\""));
        let single = svg(&[Point::ORIGIN], &SvgOptions::default());
        assert!(single.contains("viewBox"));
    }
}
