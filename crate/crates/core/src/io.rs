//! Text formats for systems, measures and direction lists, plus CSV and SVG
//! emitters.
//!
//! System files hold one coefficient per line, `k_1 … k_d  p/q`, with `#`
//! comments. Optional header lines: `dim d`, `directed`, `periodic N`
//! (periodic lines are `base_1 … base_d  k_1 … k_d  p/q`, bases taken
//! mod `N`; add `directed` for directed periodic coefficients). Undirected
//! entries are symmetrized on parse.
//!
//! Measure files hold `p_1 … p_d  lambda` per line, or `p_1 … p_d  s=p/q`
//! for an exact per-direction aggregate.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ground_state::{PeriodicCoefficients, PeriodicKind};
use crate::ising::{DirectedIsingSystem, IsingSystem};
use crate::lattice::{primitive_direction, LatticeVector};
use crate::num::{format_rational, parse_rational, Rational};
use crate::zonoid::measure::{AtomWeight, MeasureAtom};
use crate::zonoid::{ConvexPolygon, GeneratingMeasure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemFile {
    Undirected(IsingSystem),
    Directed(DirectedIsingSystem),
    Periodic(PeriodicCoefficients),
}

impl SystemFile {
    pub fn dim(&self) -> usize {
        match self {
            SystemFile::Undirected(s) => s.dim(),
            SystemFile::Directed(s) => s.dim(),
            SystemFile::Periodic(p) => crate::ground_state::transition::PairInteractions::dim(p),
        }
    }

    pub fn undirected(self) -> Result<IsingSystem> {
        match self {
            SystemFile::Undirected(s) => Ok(s),
            _ => Err(Error::InvalidArgument(
                "expected an undirected, non-periodic system".into(),
            )),
        }
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (n + 1, body.split_whitespace().collect()))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_ints(line: usize, tokens: &[&str]) -> Result<Vec<i64>> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| parse_err(line, format!("not an integer: {t:?}")))
        })
        .collect()
}

fn parse_value(line: usize, token: &str) -> Result<Rational> {
    parse_rational(token).map_err(|e| parse_err(line, e.to_string()))
}

fn check_dim(line: usize, dim: &mut Option<usize>, got: usize) -> Result<()> {
    match *dim {
        Some(d) if d != got => Err(parse_err(
            line,
            format!("expected {d} coordinates, got {got}"),
        )),
        _ => {
            *dim = Some(got);
            Ok(())
        }
    }
}

pub fn parse_system(text: &str) -> Result<SystemFile> {
    let mut dim: Option<usize> = None;
    let mut directed = false;
    let mut period: Option<i64> = None;
    let mut seen_data = false;
    let mut raw: BTreeMap<LatticeVector, Rational> = BTreeMap::new();
    let mut periodic: BTreeMap<(LatticeVector, LatticeVector), Rational> = BTreeMap::new();
    for (line, tokens) in data_lines(text) {
        match tokens[0] {
            "dim" | "directed" | "periodic" if seen_data => {
                return Err(parse_err(line, "header after coefficient lines"));
            }
            "dim" => {
                let [_, d] = tokens[..] else {
                    return Err(parse_err(line, "expected `dim d`"));
                };
                let d: usize = d
                    .parse()
                    .ok()
                    .filter(|d| *d > 0)
                    .ok_or_else(|| parse_err(line, "bad dimension"))?;
                check_dim(line, &mut dim, d)?;
            }
            "directed" if tokens.len() == 1 => directed = true,
            "periodic" => {
                let n = match tokens[1..] {
                    [n] => n,
                    [n, "directed"] => {
                        directed = true;
                        n
                    }
                    _ => return Err(parse_err(line, "expected `periodic N`")),
                };
                let n: i64 = n
                    .parse()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| parse_err(line, "bad period"))?;
                period = Some(n);
            }
            _ => {
                seen_data = true;
                let (ints, value) = tokens.split_at(tokens.len() - 1);
                let value = parse_value(line, value[0])?;
                let ints = parse_ints(line, ints)?;
                if period.is_some() {
                    if ints.len() % 2 != 0 || ints.is_empty() {
                        return Err(parse_err(line, "expected `base.. k.. value`"));
                    }
                    let d = ints.len() / 2;
                    check_dim(line, &mut dim, d)?;
                    let key = (
                        LatticeVector::new(ints[..d].to_vec()),
                        LatticeVector::new(ints[d..].to_vec()),
                    );
                    if periodic.insert(key, value).is_some() {
                        return Err(parse_err(line, "duplicate entry"));
                    }
                } else {
                    if ints.is_empty() {
                        return Err(parse_err(line, "expected `k.. value`"));
                    }
                    check_dim(line, &mut dim, ints.len())?;
                    if raw.insert(LatticeVector::new(ints), value).is_some() {
                        return Err(parse_err(line, "duplicate offset"));
                    }
                }
            }
        }
    }
    let dim = dim.ok_or_else(|| parse_err(0, "empty system needs a `dim d` header"))?;
    if let Some(n) = period {
        let kind = if directed {
            PeriodicKind::Directed
        } else {
            PeriodicKind::Undirected
        };
        let entries = periodic.into_iter().map(|((b, k), a)| (b, k, a));
        return Ok(SystemFile::Periodic(PeriodicCoefficients::new(
            dim, n, kind, entries,
        )?));
    }
    if directed {
        return Ok(SystemFile::Directed(DirectedIsingSystem::new(dim, raw)?));
    }
    Ok(SystemFile::Undirected(IsingSystem::symmetrize(dim, &raw)?))
}

fn join(v: &LatticeVector) -> String {
    v.components()
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_system(file: &SystemFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", file.dim());
    match file {
        SystemFile::Undirected(s) => {
            for (k, a) in s.coefficients() {
                let _ = writeln!(out, "{}  {}", join(k), format_rational(a));
            }
        }
        SystemFile::Directed(s) => {
            out.push_str("directed\n");
            for (k, a) in s.coefficients() {
                let _ = writeln!(out, "{}  {}", join(k), format_rational(a));
            }
        }
        SystemFile::Periodic(p) => {
            let suffix = if p.kind() == PeriodicKind::Directed {
                " directed"
            } else {
                ""
            };
            let _ = writeln!(out, "periodic {}{suffix}", p.period());
            for ((b, k), a) in p.entries() {
                let _ = writeln!(out, "{}  {}  {}", join(b), join(k), format_rational(a));
            }
        }
    }
    out
}

pub fn parse_measure(text: &str) -> Result<GeneratingMeasure> {
    let mut dim: Option<usize> = None;
    let mut atoms = Vec::new();
    for (line, tokens) in data_lines(text) {
        if tokens[0] == "dim" {
            let d: usize = tokens
                .get(1)
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| parse_err(line, "bad dimension"))?;
            check_dim(line, &mut dim, d)?;
            continue;
        }
        let (ints, value) = tokens.split_at(tokens.len() - 1);
        if ints.is_empty() {
            return Err(parse_err(line, "expected `p.. lambda`"));
        }
        let p = LatticeVector::new(parse_ints(line, ints)?);
        check_dim(line, &mut dim, p.dim())?;
        let (direction, multiple) =
            primitive_direction(&p).map_err(|e| parse_err(line, e.to_string()))?;
        if multiple != 1 {
            return Err(parse_err(line, format!("{p} is not primitive")));
        }
        let weight = match value[0].strip_prefix("s=") {
            Some(s) => AtomWeight::Aggregate(parse_value(line, s)?),
            None => AtomWeight::Lambda(
                value[0]
                    .parse::<f64>()
                    .map_err(|_| parse_err(line, format!("not a number: {:?}", value[0])))?,
            ),
        };
        atoms.push(MeasureAtom { direction, weight });
    }
    let dim = dim.ok_or_else(|| parse_err(0, "empty measure needs a `dim d` header"))?;
    GeneratingMeasure::new(dim, atoms)
}

pub fn write_measure(measure: &GeneratingMeasure) -> String {
    let mut out = format!("dim {}\n", measure.dim());
    for atom in measure.atoms() {
        let w = match &atom.weight {
            AtomWeight::Aggregate(s) => format!("s={}", format_rational(s)),
            AtomWeight::Lambda(l) => format!("{l:?}"),
        };
        let _ = writeln!(out, "{}  {w}", join(atom.direction.primitive()));
    }
    out
}

/// Unit directions, one per line; integer vectors are normalized.
pub fn parse_directions(text: &str, dim: usize) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::new();
    for (line, tokens) in data_lines(text) {
        if tokens.len() != dim {
            return Err(parse_err(
                line,
                format!("expected {dim} coordinates, got {}", tokens.len()),
            ));
        }
        let v: Vec<f64> = tokens
            .iter()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| parse_err(line, format!("not a number: {t:?}")))
            })
            .collect::<Result<_>>()?;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(parse_err(line, "not a direction: zero vector"));
        }
        out.push(v.iter().map(|x| x / norm).collect());
    }
    Ok(out)
}

/// `n` equally spaced unit directions in the plane.
pub fn direction_grid(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / n as f64;
            vec![t.cos(), t.sin()]
        })
        .collect()
}

pub fn polygon_csv(polygon: &ConvexPolygon<f64>) -> String {
    let mut out = String::from("x,y\n");
    for v in polygon.vertices() {
        let _ = writeln!(out, "{},{}", v[0], v[1]);
    }
    out
}

/// SVG drawing in a 1000×1000 viewBox fitted to a bounding box, with the
/// `y` axis pointing up.
pub struct SvgCanvas {
    lo: [f64; 2],
    scale: f64,
    body: String,
}

impl SvgCanvas {
    const SIZE: f64 = 1000.0;
    const MARGIN: f64 = 20.0;

    pub fn new(lo: [f64; 2], hi: [f64; 2]) -> Self {
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        SvgCanvas {
            lo,
            scale: (Self::SIZE - 2.0 * Self::MARGIN) / span,
            body: String::new(),
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let x = Self::MARGIN + (p[0] - self.lo[0]) * self.scale;
        let y = Self::SIZE - Self::MARGIN - (p[1] - self.lo[1]) * self.scale;
        (x, y)
    }

    pub fn polygon(&mut self, points: &[[f64; 2]], style: &str) {
        let pts: Vec<String> = points
            .iter()
            .map(|p| {
                let (x, y) = self.map(*p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(self.body, "<polygon points=\"{}\" {style}/>", pts.join(" "));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n\
             <rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

pub fn polygon_svg(polygon: &ConvexPolygon<f64>) -> String {
    let (lo, hi) = bounding_box(polygon.vertices());
    let mut canvas = SvgCanvas::new(lo, hi);
    canvas.polygon(
        polygon.vertices(),
        "fill=\"#9ecae1\" stroke=\"#08519c\" stroke-width=\"2\"",
    );
    canvas.finish()
}

pub(crate) fn bounding_box(points: &[[f64; 2]]) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    if !lo[0].is_finite() {
        return ([0.0; 2], [1.0; 2]);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::presets;

    #[test]
    fn symmetrizes_one_sided_entries() {
        let s = parse_system("# one bond\n1 0  1/2\n")
            .unwrap()
            .undirected()
            .unwrap();
        assert_eq!(s.coefficient(&LatticeVector::from([1, 0])), rat(1, 4));
        assert_eq!(s.coefficient(&LatticeVector::from([-1, 0])), rat(1, 4));
    }

    #[test]
    fn systems_round_trip() {
        let files = [
            SystemFile::Undirected(presets::diagonal_2d()),
            SystemFile::Undirected(IsingSystem::empty(3)),
            SystemFile::Directed(DirectedIsingSystem::from_undirected(&presets::range_two(2))),
            SystemFile::Periodic(PeriodicCoefficients::from_homogeneous(
                &presets::nearest_neighbour(2),
            )),
        ];
        for f in files {
            assert_eq!(parse_system(&write_system(&f)).unwrap(), f);
        }
    }

    #[test]
    fn periodic_bases_are_reduced() {
        let text = "periodic 2\n3 0  1 0  1\n1 0  1 0  1\n";
        let SystemFile::Periodic(p) = parse_system(text).unwrap() else {
            panic!()
        };
        assert_eq!(
            p.coefficient(&LatticeVector::from([1, 0]), &LatticeVector::from([1, 0])),
            rat(2, 1)
        );
    }

    #[test]
    fn malformed_input_reports_the_line() {
        for (text, line) in [
            ("1 0 1\n1 0 2\n", 2),
            ("1 0 1\n1 0 0 1\n", 2),
            ("x 1\n", 1),
            ("1 0 1\ndirected\n", 2),
        ] {
            match parse_system(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_system("1 0 -1\n"),
            Err(Error::NotFerromagnetic { .. })
        ));
        assert!(parse_system("").is_err());
    }

    #[test]
    fn measures_round_trip() {
        let exact = presets::alfamult(2, &[rat(1, 1), rat(1, 3)])
            .unwrap()
            .generating_measure();
        assert_eq!(parse_measure(&write_measure(&exact)).unwrap(), exact);
        let approx = parse_measure("1 2  0.1\n-1 0  2.5\n").unwrap();
        assert_eq!(parse_measure(&write_measure(&approx)).unwrap(), approx);
        assert!(parse_measure("2 0  1\n").is_err());
    }

    #[test]
    fn integer_directions_are_normalized() {
        let d = parse_directions("3 4\n0 1\n", 2).unwrap();
        assert_eq!(d[0], vec![0.6, 0.8]);
        assert!(parse_directions("0 0\n", 2).is_err());
    }

    #[test]
    fn svg_is_well_formed() {
        let p = ConvexPolygon::from_ccw(vec![[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]]);
        let svg = polygon_svg(&p);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
        assert!(svg.contains("20.000,980.000"));
    }
}
