use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use crate::graycat::{encode_layers, normal_nf, wire_order, GrayError, Layered};
use crate::ogp::Sign;
use crate::products::{Label, LabelledComplex};

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("string diagrams are drawn for dimension at most 2, got {0}")]
    Dimension(i64),
    #[error("no layered form: {0}")]
    Layers(#[from] GrayError),
}

const STEP_X: f64 = 60.0;
const STEP_Y: f64 = 70.0;
const MARGIN: f64 = 20.0;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn degenerate(l: &Label) -> bool {
    matches!(l, Label::Basepoint | Label::Unit(_))
}

/// Layered string diagram of a labelled complex of dimension at most 2.
///
/// 2-cells are stacked top to bottom in their normal order. Every wire
/// segment is a `line` with `data-id` and `data-label`; basepoint wires are
/// dashed and degenerate 2-cells get no node.
pub fn export_svg_2diagram(l: &LabelledComplex) -> Result<String, SvgError> {
    let p = &l.shape;
    let d = p.dimension();
    if d > 2 {
        return Err(SvgError::Dimension(d));
    }
    let layered = if d == 2 {
        encode_layers(p, &normal_nf(p, &p.full())?)?
    } else {
        Layered {
            input: wire_order(p, &p.full()).unwrap_or_default(),
            layers: Vec::new(),
        }
    };
    let mut rows = vec![layered.input.clone()];
    for layer in &layered.layers {
        rows.push(layer.wires(p, Sign::Plus).ok_or(GrayError::NotOneOrder)?);
    }
    let widest = rows.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let width = STEP_X * (widest as f64 + 1.0) + 2.0 * MARGIN;
    let height = STEP_Y * (layered.layers.len() as f64 + 1.0) + 2.0 * MARGIN;
    let slot = |row: &[usize], k: usize| {
        MARGIN + (width - 2.0 * MARGIN) * (k as f64 + 1.0) / (row.len() as f64 + 1.0)
    };
    let line_y = |i: usize| MARGIN + STEP_Y * i as f64;

    // Position of each wire on each horizontal line.
    let n_lines = layered.layers.len() + 2;
    let mut points: Vec<HashMap<usize, (f64, f64)>> = vec![HashMap::new(); n_lines];
    let mut nodes = Vec::new();
    for (k, &w) in rows[0].iter().enumerate() {
        points[0].insert(w, (slot(&rows[0], k), line_y(0)));
    }
    for (i, layer) in layered.layers.iter().enumerate() {
        let y = line_y(i + 1);
        let below = &rows[i + 1];
        let ins = layer.wires(p, Sign::Minus).ok_or(GrayError::NotOneOrder)?;
        let touched: Vec<usize> = ins[layer.pre.len()..ins.len() - layer.post.len()].to_vec();
        let outs: Vec<usize> = below[layer.pre.len()..below.len() - layer.post.len()].to_vec();
        let xs: Vec<f64> = touched
            .iter()
            .map(|w| points[i][w].0)
            .chain((0..outs.len()).map(|k| slot(below, layer.pre.len() + k)))
            .collect();
        let cx = if xs.is_empty() {
            slot(&rows[i], layer.pre.len())
        } else {
            xs.iter().sum::<f64>() / xs.len() as f64
        };
        for (k, &w) in below.iter().enumerate() {
            let pt = if outs.contains(&w) {
                (cx, y)
            } else {
                (slot(below, k), y)
            };
            points[i + 1].insert(w, pt);
        }
        for &w in &touched {
            points[i + 1].insert(w, (cx, y));
        }
        nodes.push((layer.cell, cx, y));
    }
    let last = rows.last().unwrap();
    for (k, &w) in last.iter().enumerate() {
        points[n_lines - 1].insert(w, (slot(last, k), line_y(n_lines - 1)));
    }

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"  <title>{}</title>"#, esc(p.name())).unwrap();
    for (i, row) in rows.iter().enumerate() {
        for &w in row {
            let (x1, y1) = points[i][&w];
            let (x2, y2) = points[i + 1][&w];
            let label = l.label(w);
            let dash = if label.is_basepoint() {
                r#" stroke-dasharray="4 3""#
            } else {
                ""
            };
            writeln!(
                out,
                r#"  <line class="wire" data-id="{}" data-label="{}" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="black"{dash}/>"#,
                esc(p.id(w)),
                esc(&label.to_string())
            )
            .unwrap();
        }
    }
    for (cell, x, y) in nodes {
        let label = l.label(cell);
        write!(
            out,
            r#"  <g class="cell" data-id="{}" data-label="{}">"#,
            esc(p.id(cell)),
            esc(&label.to_string())
        )
        .unwrap();
        if !degenerate(label) {
            write!(
                out,
                r#"<circle cx="{x:.1}" cy="{y:.1}" r="12" fill="white" stroke="black"/><text x="{x:.1}" y="{:.1}" font-size="10" text-anchor="middle">{}</text>"#,
                y + 3.5,
                esc(&label.to_string())
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
