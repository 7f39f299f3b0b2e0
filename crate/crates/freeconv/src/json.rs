//! JSON encodings of the domain types.
//!
//! Rationals serialize as reduced `"p/q"` strings with positive denominator;
//! integers omit the `/q` part. Bare JSON integers are accepted on input.
//! Key order and vertex order are fixed by the structs and construction
//! order, so output is deterministic.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::convolve::{ConvResult, Method};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredRootedGraph, Edge, ProductKind};
use crate::jacobi::JacobiParams;
use crate::rational::{format_rational, parse_rational, Rat};
use crate::series::Dist;
use crate::verify::VerifyReport;
use crate::walks::WalkTable;

/// A rational in its `"p/q"` text form (integers bare).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rq(pub Rat);

impl Serialize for Rq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rq;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Rq, E> {
                parse_rational(s).map(Rq).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> std::result::Result<Rq, E> {
                Ok(Rq(Rat::from_integer(BigInt::from(n))))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> std::result::Result<Rq, E> {
                Ok(Rq(Rat::from_integer(BigInt::from(n))))
            }
        }
        d.deserialize_any(V)
    }
}

fn rqs(v: &[Rat]) -> Vec<Rq> {
    v.iter().cloned().map(Rq).collect()
}

fn unrqs(v: Vec<Rq>) -> Vec<Rat> {
    v.into_iter().map(|r| r.0).collect()
}

fn ints_to_json(v: &[BigInt]) -> Vec<Rq> {
    v.iter().map(|n| Rq(Rat::from_integer(n.clone()))).collect()
}

/// `{"order": N, "moments": ["1/2", ...]}`
#[derive(Serialize, Deserialize)]
pub struct DistJson {
    pub order: usize,
    pub moments: Vec<Rq>,
}

impl From<&Dist> for DistJson {
    fn from(d: &Dist) -> Self {
        DistJson {
            order: d.order(),
            moments: rqs(d.moments()),
        }
    }
}

impl DistJson {
    pub fn into_dist(self) -> Result<Dist> {
        if self.order != self.moments.len() {
            return Err(Error::Schema {
                reason: format!(
                    "field 'order' is {} but 'moments' lists {} entries",
                    self.order,
                    self.moments.len()
                ),
            });
        }
        Dist::new(unrqs(self.moments))
    }
}

/// `{"order": N, "moments": [...], "first_return": [...], "method": "..."}`
#[derive(Serialize, Deserialize)]
pub struct ConvResultJson {
    pub order: usize,
    pub moments: Vec<Rq>,
    pub first_return: Vec<Rq>,
    pub method: String,
}

impl From<&ConvResult> for ConvResultJson {
    fn from(r: &ConvResult) -> Self {
        ConvResultJson {
            order: r.dist.order(),
            moments: rqs(r.dist.moments()),
            first_return: rqs(&r.first_return),
            method: r.method.as_str().to_string(),
        }
    }
}

/// `{"order": N, "eta": [...]}` — a first-return series on its own.
#[derive(Serialize, Deserialize)]
pub struct EtaJson {
    pub order: usize,
    pub eta: Vec<Rq>,
}

impl EtaJson {
    pub fn new(order: usize, eta: &[Rat]) -> Self {
        EtaJson {
            order,
            eta: rqs(eta),
        }
    }

    pub fn coefficients(self) -> Result<Vec<Rat>> {
        if self.order != self.eta.len() {
            return Err(Error::Schema {
                reason: format!(
                    "field 'order' is {} but 'eta' lists {} entries",
                    self.order,
                    self.eta.len()
                ),
            });
        }
        Ok(unrqs(self.eta))
    }
}

/// `{"alpha": [...], "omega": [...]}`
#[derive(Serialize, Deserialize)]
pub struct JacobiJson {
    pub alpha: Vec<Rq>,
    pub omega: Vec<Rq>,
}

impl From<&JacobiParams> for JacobiJson {
    fn from(j: &JacobiParams) -> Self {
        JacobiJson {
            alpha: rqs(j.alpha()),
            omega: rqs(j.omega()),
        }
    }
}

impl JacobiJson {
    pub fn into_params(self) -> JacobiParams {
        JacobiParams::new(unrqs(self.alpha), unrqs(self.omega))
    }
}

/// One edge of the graph schema; loops have `u == v`.
#[derive(Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: String,
    pub v: String,
    pub color: u8,
    pub mult: u64,
}

/// `{"vertices": [...], "root": "...", "edges": [...]}`
#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub root: String,
    pub edges: Vec<EdgeJson>,
}

impl From<&ColoredRootedGraph> for GraphJson {
    fn from(g: &ColoredRootedGraph) -> Self {
        GraphJson {
            vertices: g.vertex_names().to_vec(),
            root: g.root_name().to_string(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    u: g.vertex_name(e.u).to_string(),
                    v: g.vertex_name(e.v).to_string(),
                    color: e.color.as_u8(),
                    mult: e.mult,
                })
                .collect(),
        }
    }
}

impl GraphJson {
    pub fn into_graph(self) -> Result<ColoredRootedGraph> {
        let index = |name: &str| -> Result<usize> {
            self.vertices
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownVertex {
                    name: name.to_string(),
                })
        };
        let root = index(&self.root)?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    u: index(&e.u)?,
                    v: index(&e.v)?,
                    color: Color::from_u8(e.color)?,
                    mult: e.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ColoredRootedGraph::new(self.vertices, root, edges)
    }
}

/// `{"max_n": n, "spectral": [...], "first_return": [...], "dwalks": [...]}`
/// with an optional agreement verdict when both walk routes ran.
#[derive(Serialize, Deserialize)]
pub struct WalkTableJson {
    pub max_n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<Vec<Rq>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_return: Option<Vec<Rq>>,
    pub dwalks: Vec<Rq>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dwalks_bruteforce: Option<Vec<Rq>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<String>,
}

impl WalkTableJson {
    pub fn matrix_only(t: &WalkTable) -> Self {
        WalkTableJson {
            max_n: t.max_n,
            spectral: Some(ints_to_json(&t.spectral)),
            first_return: Some(ints_to_json(&t.first_return)),
            dwalks: ints_to_json(&t.dwalks),
            dwalks_bruteforce: None,
            agreement: None,
        }
    }

    pub fn brute_only(max_n: usize, dwalks: &[BigInt]) -> Self {
        WalkTableJson {
            max_n,
            spectral: None,
            first_return: None,
            dwalks: ints_to_json(dwalks),
            dwalks_bruteforce: None,
            agreement: None,
        }
    }

    pub fn both(t: &WalkTable, brute: &[BigInt]) -> Self {
        let agree = t.dwalks.as_slice() == brute;
        WalkTableJson {
            max_n: t.max_n,
            spectral: Some(ints_to_json(&t.spectral)),
            first_return: Some(ints_to_json(&t.first_return)),
            dwalks: ints_to_json(&t.dwalks),
            dwalks_bruteforce: Some(ints_to_json(brute)),
            agreement: Some(if agree { "pass" } else { "fail" }.to_string()),
        }
    }
}

/// Verification report: per-order columns from all four paths plus status.
#[derive(Serialize, Deserialize)]
pub struct VerifyReportJson {
    pub kind: String,
    pub max_n: usize,
    pub transform: Vec<Rq>,
    pub combinatorial: Vec<Rq>,
    pub matrix: Vec<Rq>,
    pub brute_force: Vec<Rq>,
    pub status: Vec<String>,
    pub all_pass: bool,
}

impl From<&VerifyReport> for VerifyReportJson {
    fn from(r: &VerifyReport) -> Self {
        VerifyReportJson {
            kind: r.kind.as_str().to_string(),
            max_n: r.max_n,
            transform: rqs(&r.transform),
            combinatorial: rqs(&r.combinatorial),
            matrix: ints_to_json(&r.matrix),
            brute_force: ints_to_json(&r.brute_force),
            status: r
                .status
                .iter()
                .map(|&s| if s { "pass" } else { "fail" }.to_string())
                .collect(),
            all_pass: r.all_pass(),
        }
    }
}

/// Serializes any of the JSON shapes with stable formatting.
pub fn to_string_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization of plain data cannot fail")
}

/// Parses a product kind token as used in JSON and on the command line.
pub fn parse_kind(s: &str) -> Result<ProductKind> {
    s.parse()
}

/// Parses a convolution method token.
pub fn parse_method(s: &str) -> Result<Method> {
    s.parse()
}
