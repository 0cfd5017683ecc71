//! JSON and CSV file formats. Coordinates are exact rationals written as
//! `"num/den"` strings, or `"num"` when the denominator is one.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use psembed_core::book::{BookEmbedding, Page};
use psembed_core::chains::ChainPartition;
use psembed_core::geomcheck::{VerifyReport, Violation};
use psembed_core::route::{DrawingMeta, DrawnEdge};
use psembed_core::stats::{ExhaustiveRuns, ExperimentReport};
use psembed_core::{Drawing, PlanarGraph, PointSet, RationalPoint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("{0}")]
    Invalid(String),
}

pub fn parse_rational(s: &str) -> Result<BigRational, FormatError> {
    let bad = || FormatError::Rational(s.to_owned());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A coordinate as read from JSON: a rational string or a plain integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Text(String),
    Int(i64),
}

impl Coord {
    fn value(&self) -> Result<BigRational, FormatError> {
        match self {
            Coord::Text(s) => parse_rational(s),
            Coord::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
        }
    }
}

fn point_out(p: &RationalPoint) -> [Coord; 2] {
    [Coord::Text(format_rational(&p.x)), Coord::Text(format_rational(&p.y))]
}

fn point_in(c: &[Coord; 2]) -> Result<RationalPoint, FormatError> {
    Ok(RationalPoint::new(c[0].value()?, c[1].value()?))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn from_graph(g: &PlanarGraph) -> Self {
        GraphFile { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
    }

    /// Builds the graph without the planar edge-count check, so that a
    /// dense non-planar input is reported as non-planar rather than malformed.
    pub fn to_graph(&self) -> Result<PlanarGraph, FormatError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        PlanarGraph::new_simple(self.n, &edges).map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsFile {
    pub points: Vec<[Coord; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub convex: bool,
}

impl PointsFile {
    pub fn from_points(ps: &PointSet) -> Self {
        PointsFile { points: ps.points().iter().map(point_out).collect(), convex: ps.is_convex() }
    }

    pub fn to_points(&self) -> Result<PointSet, FormatError> {
        let pts = self.points.iter().map(point_in).collect::<Result<Vec<_>, _>>()?;
        PointSet::new(pts, self.convex).map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

/// Vertex to point-index map.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingFile {
    pub mapping: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermsFile {
    pub perms: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub parts: Vec<Vec<usize>>,
    pub flags: Vec<String>,
}

impl PartitionFile {
    pub fn from_partition(p: &ChainPartition) -> Self {
        PartitionFile { parts: p.parts.clone(), flags: p.flags().iter().map(|f| f.as_str().to_owned()).collect() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BookArcFile {
    pub edge: [usize; 2],
    pub page: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BookFile {
    pub spine: Vec<usize>,
    pub arcs: Vec<BookArcFile>,
}

impl BookFile {
    pub fn from_book(be: &BookEmbedding) -> Self {
        let rat = |q: &psembed_core::book::SpineCoord| {
            if *q.denom() == 1 {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        };
        BookFile {
            spine: be.spine.clone(),
            arcs: be
                .arcs
                .iter()
                .map(|a| BookArcFile {
                    edge: [a.edge.0, a.edge.1],
                    page: match a.page {
                        Page::Top => "top".into(),
                        Page::Bottom => "bottom".into(),
                    },
                    from: rat(&a.from),
                    to: rat(&a.to),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub uv: [usize; 2],
    pub poly: Vec<[Coord; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetaFile {
    pub r: usize,
    pub bends_per_edge: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingFile {
    pub vertices: Vec<[Coord; 2]>,
    pub edges: Vec<EdgeFile>,
    pub meta: MetaFile,
}

impl DrawingFile {
    pub fn from_drawing(d: &Drawing) -> Self {
        DrawingFile {
            vertices: d.vertex_points.iter().map(point_out).collect(),
            edges: d
                .edges
                .iter()
                .map(|e| EdgeFile { uv: [e.u, e.v], poly: e.poly.iter().map(point_out).collect() })
                .collect(),
            meta: MetaFile { r: d.meta.r, bends_per_edge: d.meta.bends_per_edge.clone(), seed: d.meta.seed },
        }
    }

    pub fn to_drawing(&self) -> Result<Drawing, FormatError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let poly = e.poly.iter().map(point_in).collect::<Result<Vec<_>, _>>()?;
            edges.push(DrawnEdge { u: e.uv[0], v: e.uv[1], poly });
        }
        Ok(Drawing {
            vertex_points: self.vertices.iter().map(point_in).collect::<Result<Vec<_>, _>>()?,
            edges,
            meta: DrawingMeta {
                r: self.meta.r,
                bends_per_edge: self.meta.bends_per_edge.clone(),
                seed: self.meta.seed,
                provenance: String::new(),
            },
            layout: None,
        })
    }
}

pub fn report_json(rep: &VerifyReport) -> Value {
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| match v {
            Violation::Crossing { a, b } => json!({"kind": "crossing", "a": [a.0, a.1], "b": [b.0, b.1]}),
            Violation::VertexOnEdge { vertex, seg } => {
                json!({"kind": "vertex_on_edge", "vertex": vertex, "seg": [seg.0, seg.1]})
            }
        })
        .collect();
    json!({
        "planar": rep.planar,
        "violations": violations,
        "mapping_ok": rep.mapping_ok,
        "bends": rep.bends,
        "beta": rep.beta,
    })
}

pub fn experiment_json(rep: &ExperimentReport) -> Value {
    let trials: Vec<Value> = rep
        .trials
        .iter()
        .map(|t| {
            let mut m = Map::new();
            m.insert("n".into(), json!(t.n));
            m.insert("trial".into(), json!(t.trial));
            m.insert("seed".into(), json!(t.seed));
            for &(k, v) in &t.metrics {
                m.insert(k.into(), json!(v));
            }
            Value::Object(m)
        })
        .collect();
    let aggregates: Vec<Value> = rep
        .aggregates
        .iter()
        .map(|a| json!({"n": a.n, "metric": a.metric, "mean": a.mean, "stddev": a.stddev, "min": a.min, "max": a.max}))
        .collect();
    let fit = rep.fit.as_ref().map(|f| {
        json!({"metric": f.metric, "exponent": f.exponent, "intercept": f.intercept, "residual": f.residual})
    });
    json!({
        "experiment": rep.experiment,
        "parameters": {"n": rep.n_values, "k": rep.k, "trials": rep.trials_per_n, "seed": rep.seed},
        "aggregates": aggregates,
        "fit": fit,
        "trials": trials,
    })
}

/// One row per trial; metric columns follow the first trial.
pub fn experiment_csv(rep: &ExperimentReport) -> String {
    let mut out = String::from("n,trial,seed");
    let names: Vec<&str> = rep.trials.first().map(|t| t.metrics.iter().map(|m| m.0).collect()).unwrap_or_default();
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for t in &rep.trials {
        write!(out, "{},{},{}", t.n, t.trial, t.seed).unwrap();
        for name in &names {
            match t.get(name) {
                Some(v) => write!(out, ",{v}").unwrap(),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

pub fn exhaustive_json(e: &ExhaustiveRuns) -> Value {
    let q = |r: &num_rational::Ratio<u64>| format!("{}/{}", r.numer(), r.denom());
    json!({
        "experiment": "runs_exhaustive",
        "n": e.n,
        "permutations": e.permutations,
        "extremum_probability": e.extremum_probability.iter().map(q).collect::<Vec<_>>(),
        "mean_extrema": q(&e.mean_extrema),
        "mean_r": q(&e.mean_r),
    })
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, FormatError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), FormatError> {
    let io = |source| FormatError::Io { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3", "123456789012345678901234567891/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        for s in ["", "1/0", "a", "1.5", "1/2/3"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn integer_shorthand() {
        let f: PointsFile = serde_json::from_str(r#"{"points": [["1/2", "3"], [4, -5]]}"#).unwrap();
        let ps = f.to_points().unwrap();
        assert_eq!(ps.points()[1], RationalPoint::from_ints(4, -5));
    }
}
