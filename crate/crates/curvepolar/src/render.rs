//! Deterministic SVG 1.1 rendering of curve cell covers, polar overlays,
//! and witness markers.
//!
//! A [`Scene`] maps a rational window to a fixed pixel viewport (y axis
//! flipped so the picture matches the usual orientation) and renders its
//! layers in insertion order: identical scenes serialize to byte-identical
//! SVG documents.

use crate::poly::Interval;
use crate::topology::ComponentMap;
use crate::uni::rat_to_f64;
use std::fmt::Write as _;

/// How a point layer is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkerKind {
    /// Filled circle: nonsingular witness points.
    Circle,
    /// Diagonal cross: singular points.
    Cross,
}

#[derive(Debug, Clone)]
enum Layer {
    /// Axis-aligned boxes in curve coordinates, one per carrying cell.
    Cells { boxes: Vec<[f64; 4]>, fill: String },
    Markers {
        kind: MarkerKind,
        color: String,
        points: Vec<(f64, f64)>,
    },
}

/// A render job: window, viewport width in pixels, and layers bottom-up.
#[derive(Debug, Clone)]
pub struct Scene {
    window: (f64, f64, f64, f64),
    width: u32,
    height: u32,
    layers: Vec<Layer>,
}

impl Scene {
    /// Viewport of `width` pixels; height follows the window's aspect ratio.
    pub fn new(window: &(Interval, Interval), width: u32) -> Scene {
        let x0 = rat_to_f64(&window.0.lo);
        let x1 = rat_to_f64(&window.0.hi);
        let y0 = rat_to_f64(&window.1.lo);
        let y1 = rat_to_f64(&window.1.hi);
        let height = ((y1 - y0) / (x1 - x0) * width as f64).round().max(1.0) as u32;
        Scene {
            window: (x0, x1, y0, y1),
            width,
            height,
            layers: vec![],
        }
    }

    /// Add the carrying cells of a component map as filled rectangles.
    pub fn add_cells(&mut self, map: &ComponentMap, fill: &str) -> &mut Self {
        let mut boxes = vec![];
        for (&(i, j), _) in map.carrying_cells() {
            let (bx, by) = map.cell_box(i, j);
            boxes.push([
                rat_to_f64(&bx.lo),
                rat_to_f64(&bx.hi),
                rat_to_f64(&by.lo),
                rat_to_f64(&by.hi),
            ]);
        }
        self.layers.push(Layer::Cells {
            boxes,
            fill: fill.to_string(),
        });
        self
    }

    /// Add point markers in curve coordinates.
    pub fn add_markers(
        &mut self,
        points: impl IntoIterator<Item = (f64, f64)>,
        kind: MarkerKind,
        color: &str,
    ) -> &mut Self {
        self.layers.push(Layer::Markers {
            kind,
            color: color.to_string(),
            points: points.into_iter().collect(),
        });
        self
    }

    fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let (x0, x1, y0, y1) = self.window;
        let px = (x - x0) / (x1 - x0) * self.width as f64;
        let py = (y1 - y) / (y1 - y0) * self.height as f64;
        (px, py)
    }

    /// Serialize the scene as a standalone SVG 1.1 document.
    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        let (w, h) = (self.width, self.height);
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
        );
        let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>");
        for layer in &self.layers {
            match layer {
                Layer::Cells { boxes, fill } => {
                    let _ = writeln!(s, "<g fill=\"{fill}\" stroke=\"none\">");
                    for b in boxes {
                        let (px0, py1) = self.to_px(b[0], b[2]);
                        let (px1, py0) = self.to_px(b[1], b[3]);
                        let _ = writeln!(
                            s,
                            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\"/>",
                            px0,
                            py0,
                            px1 - px0,
                            py1 - py0
                        );
                    }
                    s.push_str("</g>\n");
                }
                Layer::Markers {
                    kind,
                    color,
                    points,
                } => match kind {
                    MarkerKind::Circle => {
                        let _ = writeln!(s, "<g fill=\"{color}\" stroke=\"none\">");
                        for &(x, y) in points {
                            let (px, py) = self.to_px(x, y);
                            let _ = writeln!(
                                s,
                                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\"/>"
                            );
                        }
                        s.push_str("</g>\n");
                    }
                    MarkerKind::Cross => {
                        let _ = writeln!(
                            s,
                            "<g stroke=\"{color}\" stroke-width=\"2\" fill=\"none\">"
                        );
                        for &(x, y) in points {
                            let (px, py) = self.to_px(x, y);
                            let _ = writeln!(
                                s,
                                "<path d=\"M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}\"/>",
                                px - 4.0,
                                py - 4.0,
                                px + 4.0,
                                py + 4.0,
                                px - 4.0,
                                py + 4.0,
                                px + 4.0,
                                py - 4.0
                            );
                        }
                        s.push_str("</g>\n");
                    }
                },
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Default layer colors, bottom-up: curve, polar overlay, witnesses,
/// singular points.
pub const CURVE_FILL: &str = "#9ecae1";
pub const POLAR_FILL: &str = "#fcae91";
pub const WITNESS_COLOR: &str = "#2ca02c";
pub const SINGULAR_COLOR: &str = "#d62728";
