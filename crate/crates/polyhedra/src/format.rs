//! Wire formats: the JSON complex format, the one-line text format for CLI
//! pipes, and oracle description files.
//!
//! Complex JSON: `{"vertices":[ints ascending],"facets":[[ints],...]}` with
//! facets sorted by (size, colex). Text: `V: 0 1 2 | F: 0,1 1,2`. Oracle
//! files carry a `kind` header, kind-specific parameters, and optionally a
//! list of explicit truncations.

use serde::{Deserialize, Serialize};

use crate::complex::FiniteOrderedComplex;
use crate::error::{Error, Result};
use crate::oracle::{ComplexOracle, VertexStream};

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<u32>,
    facets: Vec<Vec<u32>>,
}

impl Serialize for FiniteOrderedComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            vertices: self.vertices().to_vec(),
            facets: self.facets().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteOrderedComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(deserializer)?;
        FiniteOrderedComplex::from_parts(raw.vertices, raw.facets)
            .map_err(serde::de::Error::custom)
    }
}

pub fn complex_to_json(c: &FiniteOrderedComplex) -> String {
    serde_json::to_string(c).expect("complex serialization is infallible")
}

pub fn complex_from_json(text: &str) -> Result<FiniteOrderedComplex> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

/// Parses the one-line text format `V: 0 1 2 | F: 0,1 1,2`. Unlike the
/// JSON format, the face list is treated as a generator list: it need not
/// be maximal or ordered, and facets are renormalized on input.
pub fn complex_from_line(line: &str) -> Result<FiniteOrderedComplex> {
    let line = line.trim();
    let rest = line
        .strip_prefix("V:")
        .ok_or_else(|| Error::Format("expected a leading `V:`".into()))?;
    let (vert_part, facet_part) = rest
        .split_once('|')
        .ok_or_else(|| Error::Format("expected `|` between vertices and facets".into()))?;
    let facet_part = facet_part
        .trim()
        .strip_prefix("F:")
        .ok_or_else(|| Error::Format("expected `F:` after `|`".into()))?;
    let vertices: Vec<u32> = vert_part
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|e| Error::Format(e.to_string())))
        .collect::<Result<_>>()?;
    let facets: Vec<Vec<u32>> = facet_part
        .split_whitespace()
        .map(|tok| {
            tok.split(',')
                .map(|t| t.parse::<u32>().map_err(|e| Error::Format(e.to_string())))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    if !vertices.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Format("vertices must be strictly increasing".into()));
    }
    FiniteOrderedComplex::close_downward(&facets, &vertices)
        .map_err(|e| Error::Format(e.to_string()))
}

/// Tries JSON first, then the one-line text format.
pub fn complex_from_str(text: &str) -> Result<FiniteOrderedComplex> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        complex_from_json(trimmed)
    } else {
        complex_from_line(trimmed)
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bias: Option<f64>,
}

/// The on-disk oracle description.
#[derive(Debug, Serialize, Deserialize)]
pub struct OracleFile {
    pub kind: String,
    #[serde(default)]
    pub params: OracleParams,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub truncations: Vec<FiniteOrderedComplex>,
}

impl OracleFile {
    pub fn into_oracle(self) -> Result<ComplexOracle> {
        let stream = VertexStream {
            start: self.params.start.unwrap_or(0),
            step: self.params.step.unwrap_or(1),
        };
        if stream.step == 0 {
            return Err(Error::invalid("stream step must be positive"));
        }
        match self.kind.as_str() {
            "full-simplex" => Ok(ComplexOracle::FullSimplex { stream }),
            "k-bounded-full" => {
                let k = self
                    .params
                    .k
                    .ok_or_else(|| Error::invalid("k-bounded-full requires params.k"))?;
                if k == 0 {
                    return Err(Error::invalid("face bound k must be at least 1"));
                }
                Ok(ComplexOracle::KBoundedFull { k, stream })
            }
            "pure-set" => Ok(ComplexOracle::PureSet { stream }),
            "seeded-random-stream" => {
                let k = self
                    .params
                    .k
                    .ok_or_else(|| Error::invalid("seeded-random-stream requires params.k"))?;
                let seed = self.params.seed.unwrap_or(0);
                let bias = self.params.bias.unwrap_or(0.5);
                ComplexOracle::seeded_random(k, seed, bias)
            }
            "explicit-truncation-file" => ComplexOracle::explicit(self.truncations),
            other => Err(Error::Format(format!("unknown oracle kind `{other}`"))),
        }
    }

    pub fn from_oracle(oracle: &ComplexOracle) -> Self {
        match oracle {
            ComplexOracle::FullSimplex { stream } => OracleFile {
                kind: "full-simplex".into(),
                params: OracleParams {
                    start: Some(stream.start),
                    step: Some(stream.step),
                    ..Default::default()
                },
                truncations: Vec::new(),
            },
            ComplexOracle::KBoundedFull { k, stream } => OracleFile {
                kind: "k-bounded-full".into(),
                params: OracleParams {
                    start: Some(stream.start),
                    step: Some(stream.step),
                    k: Some(*k),
                    ..Default::default()
                },
                truncations: Vec::new(),
            },
            ComplexOracle::PureSet { stream } => OracleFile {
                kind: "pure-set".into(),
                params: OracleParams {
                    start: Some(stream.start),
                    step: Some(stream.step),
                    ..Default::default()
                },
                truncations: Vec::new(),
            },
            ComplexOracle::SeededRandom { k, seed, bias } => OracleFile {
                kind: "seeded-random-stream".into(),
                params: OracleParams {
                    k: Some(*k),
                    seed: Some(*seed),
                    bias: Some(*bias),
                    ..Default::default()
                },
                truncations: Vec::new(),
            },
            ComplexOracle::Explicit { truncations } => OracleFile {
                kind: "explicit-truncation-file".into(),
                params: OracleParams::default(),
                truncations: truncations.clone(),
            },
        }
    }
}

/// Parses a CLI oracle argument: either a builtin shorthand
/// (`full-simplex`, `pure-set`, `pure-set:start:step`, `k-bounded:K`,
/// `random:K:SEED:BIAS`) or a JSON oracle file body.
pub fn oracle_from_spec(spec: &str) -> Result<ComplexOracle> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        let file: OracleFile =
            serde_json::from_str(spec).map_err(|e| Error::Format(e.to_string()))?;
        return file.into_oracle();
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let parse_u32 = |s: &str| s.parse::<u32>().map_err(|e| Error::Format(e.to_string()));
    match parts.as_slice() {
        ["full-simplex"] => Ok(ComplexOracle::full_simplex()),
        ["full-simplex", start, step] => Ok(ComplexOracle::FullSimplex {
            stream: VertexStream {
                start: parse_u32(start)?,
                step: parse_u32(step)?,
            },
        }),
        ["pure-set"] => Ok(ComplexOracle::pure_set_naturals()),
        ["pure-set", start, step] => Ok(ComplexOracle::PureSet {
            stream: VertexStream {
                start: parse_u32(start)?,
                step: parse_u32(step)?,
            },
        }),
        ["k-bounded", k] => {
            ComplexOracle::k_bounded(k.parse().map_err(|_| Error::Format("bad k".into()))?)
        }
        ["random", k, seed, bias] => ComplexOracle::seeded_random(
            k.parse().map_err(|_| Error::Format("bad k".into()))?,
            seed.parse().map_err(|_| Error::Format("bad seed".into()))?,
            bias.parse().map_err(|_| Error::Format("bad bias".into()))?,
        ),
        _ => Err(Error::Format(format!(
            "unrecognized oracle spec `{spec}` (expected full-simplex, pure-set[:start:step], k-bounded:K, random:K:SEED:BIAS, or a JSON body)"
        ))),
    }
}
