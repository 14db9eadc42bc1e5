//! DOT and SVG renderings. Edges are colored black, red, and blue for
//! the three parts when a decomposition is supplied, grey otherwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use triforest::decompose::Decomposition;
use triforest::{PlaneMap, Result};

fn part_of(dec: &Decomposition) -> BTreeMap<(usize, usize), usize> {
    let mut part = BTreeMap::new();
    for (i, edges) in [&dec.t0, &dec.t1, &dec.t2].into_iter().enumerate() {
        for &(u, v) in edges {
            part.insert((u.min(v), u.max(v)), i);
        }
    }
    part
}

pub fn dot(map: &PlaneMap, dec: Option<&Decomposition>) -> String {
    let part = dec.map(part_of);
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    for (u, v) in map.edges() {
        match part.as_ref().and_then(|p| p.get(&(u, v))) {
            Some(0) => writeln!(out, "  {u} -- {v} [color=black, penwidth=2];"),
            Some(1) => writeln!(out, "  {u} -- {v} [color=red];"),
            Some(_) => writeln!(out, "  {u} -- {v} [color=blue];"),
            None => writeln!(out, "  {u} -- {v};"),
        }
        .expect("writing to a string");
    }
    out.push_str("}\n");
    out
}

pub fn svg(map: &PlaneMap, dec: Option<&Decomposition>) -> Result<String> {
    let drawing = map.fpp_draw((map.outer[0], map.outer[1]))?;
    let part = dec.map(part_of);
    let scale = 48i64;
    let margin = 30i64;
    let max_x = drawing.coords.iter().map(|c| c.0).max().unwrap_or(0);
    let max_y = drawing.coords.iter().map(|c| c.1).max().unwrap_or(0);
    let width = max_x * scale + 2 * margin;
    let height = max_y * scale + 2 * margin;
    let px = |v: usize| drawing.coords[v].0 * scale + margin;
    let py = |v: usize| (max_y - drawing.coords[v].1) * scale + margin;

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" \
         width=\"{width}\" height=\"{height}\">"
    )
    .expect("writing to a string");
    writeln!(out, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>")
        .expect("writing to a string");
    for (u, v) in map.edges() {
        let (color, w) = match part.as_ref().and_then(|p| p.get(&(u, v))) {
            Some(0) => ("#000000", 4),
            Some(1) => ("#cc2222", 2),
            Some(_) => ("#2222cc", 2),
            None => ("#888888", 2),
        };
        writeln!(
            out,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{w}\"/>",
            px(u),
            py(u),
            px(v),
            py(v)
        )
        .expect("writing to a string");
    }
    for v in 0..map.n {
        writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"12\" fill=\"white\" stroke=\"#333333\" stroke-width=\"2\"/>",
            px(v),
            py(v)
        )
        .expect("writing to a string");
        writeln!(
            out,
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\" dominant-baseline=\"central\">{v}</text>",
            px(v),
            py(v)
        )
        .expect("writing to a string");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
