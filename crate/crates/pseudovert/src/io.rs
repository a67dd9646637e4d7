//! ASCII file formats: point files ("n", then "x y [c]" per line with
//! c ∈ {r,b}), wiring files ("n", then the swap sequence), and color files
//! (n whitespace-separated r/b tokens).

use thiserror::Error;

use crate::chirotope::{ChirotopeError, PointId, RealizedPointSet, WiringDiagram};
use crate::hamsandwich::BiChromatic;

#[derive(Error, Debug)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] ChirotopeError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// Parses a point file; colors are optional per line but must be all-or-none.
pub fn parse_point_file(text: &str) -> Result<(RealizedPointSet, Option<Vec<Color>>), ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| syntax(1, "empty file, expected a count"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| syntax(1, format!("expected a count, got {first:?}")))?;
    let mut points = Vec::with_capacity(n);
    let mut colors: Vec<Color> = Vec::new();
    for _ in 0..n {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| syntax(points.len() + 2, "missing point line"))?;
        let lineno = idx + 1;
        let mut parts = line.split_whitespace();
        let x: i64 = parts
            .next()
            .ok_or_else(|| syntax(lineno, "missing x"))?
            .parse()
            .map_err(|_| syntax(lineno, "x is not an integer"))?;
        let y: i64 = parts
            .next()
            .ok_or_else(|| syntax(lineno, "missing y"))?
            .parse()
            .map_err(|_| syntax(lineno, "y is not an integer"))?;
        match parts.next() {
            None => {}
            Some("r") => colors.push(Color::Red),
            Some("b") => colors.push(Color::Blue),
            Some(other) => return Err(syntax(lineno, format!("unknown color {other:?}"))),
        }
        if let Some(extra) = parts.next() {
            return Err(syntax(lineno, format!("trailing token {extra:?}")));
        }
        points.push((x, y));
    }
    if !colors.is_empty() && colors.len() != n {
        return Err(syntax(1, "either all points or none carry a color"));
    }
    let ps = RealizedPointSet::new(points)?;
    Ok((ps, if colors.is_empty() { None } else { Some(colors) }))
}

pub fn format_point_file(ps: &RealizedPointSet, colors: Option<&[Color]>) -> String {
    let mut out = format!("{}\n", ps.len());
    for (i, &(x, y)) in ps.points().iter().enumerate() {
        match colors {
            None => out.push_str(&format!("{x} {y}\n")),
            Some(cs) => {
                let c = if cs[i] == Color::Red { "r" } else { "b" };
                out.push_str(&format!("{x} {y} {c}\n"));
            }
        }
    }
    out
}

pub fn parse_wiring_file(text: &str) -> Result<WiringDiagram, ParseError> {
    let mut lines = text.lines();
    let first = lines
        .next()
        .ok_or_else(|| syntax(1, "empty file, expected a count"))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| syntax(1, format!("expected a count, got {first:?}")))?;
    let second = lines
        .next()
        .ok_or_else(|| syntax(2, "missing swap sequence"))?;
    let swaps: Result<Vec<usize>, _> = second.split_whitespace().map(str::parse).collect();
    let swaps = swaps.map_err(|_| syntax(2, "swaps must be integers"))?;
    Ok(WiringDiagram::new(n, swaps)?)
}

pub fn format_wiring_file(w: &WiringDiagram) -> String {
    let swaps: Vec<String> = w.swaps().iter().map(|s| s.to_string()).collect();
    format!("{}\n{}\n", w.wires(), swaps.join(" "))
}

/// Parses `n` r/b tokens.
pub fn parse_colors_file(text: &str, n: usize) -> Result<Vec<Color>, ParseError> {
    let mut colors = Vec::with_capacity(n);
    for tok in text.split_whitespace() {
        match tok {
            "r" => colors.push(Color::Red),
            "b" => colors.push(Color::Blue),
            other => return Err(syntax(1, format!("unknown color token {other:?}"))),
        }
    }
    if colors.len() != n {
        return Err(syntax(
            1,
            format!("expected {n} colors, got {}", colors.len()),
        ));
    }
    Ok(colors)
}

pub fn bichromatic_from_colors(colors: &[Color]) -> BiChromatic {
    let red = colors
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == Color::Red)
        .map(|(i, _)| PointId(i as u32))
        .collect();
    let blue = colors
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == Color::Blue)
        .map(|(i, _)| PointId(i as u32))
        .collect();
    BiChromatic::new(red, blue)
}
