//! Stable JSON shapes for every value that crosses the process boundary.
//! Readers ignore unknown fields, so outputs can grow extra data (a
//! generated cycle, a recomputed count) without breaking older files.

use serde::{Deserialize, Serialize};
use triforest::assignment::Assignment;
use triforest::decompose::{Decomposition, PartShape};
use triforest::oracle::{Status, Verdict};
use triforest::tightness::RuledOut;
use triforest::whitney::{Color, Coloring};
use triforest::PlaneMap;

#[derive(Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub n: usize,
    pub rot: Vec<Vec<usize>>,
    pub outer: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub four_connected: Option<bool>,
}

impl MapJson {
    pub fn from_map(m: &PlaneMap) -> Self {
        MapJson {
            n: m.n,
            rot: m.rot.clone(),
            outer: m.outer.clone(),
            cycle: None,
            four_connected: None,
        }
    }

    pub fn to_map(&self) -> PlaneMap {
        PlaneMap {
            n: self.n,
            rot: self.rot.clone(),
            outer: self.outer.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeJson {
    SpanningTree {
        max_degree: usize,
    },
    TreeAvoiding {
        missing: Vec<usize>,
    },
    Forest {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Tree {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Connected {
        max_degree: usize,
    },
    BoundedDegree {
        max_degree: usize,
    },
}

impl From<&PartShape> for ShapeJson {
    fn from(s: &PartShape) -> Self {
        match s {
            PartShape::SpanningTree { max_degree } => ShapeJson::SpanningTree {
                max_degree: *max_degree,
            },
            PartShape::TreeAvoiding { missing } => ShapeJson::TreeAvoiding {
                missing: missing.clone(),
            },
            PartShape::Forest { max_degree } => ShapeJson::Forest {
                max_degree: *max_degree,
            },
            PartShape::Tree { max_degree } => ShapeJson::Tree {
                max_degree: *max_degree,
            },
            PartShape::Connected { max_degree } => ShapeJson::Connected {
                max_degree: *max_degree,
            },
            PartShape::BoundedDegree { max_degree } => ShapeJson::BoundedDegree {
                max_degree: *max_degree,
            },
        }
    }
}

impl From<&ShapeJson> for PartShape {
    fn from(s: &ShapeJson) -> Self {
        match s {
            ShapeJson::SpanningTree { max_degree } => PartShape::SpanningTree {
                max_degree: *max_degree,
            },
            ShapeJson::TreeAvoiding { missing } => PartShape::TreeAvoiding {
                missing: missing.clone(),
            },
            ShapeJson::Forest { max_degree } => PartShape::Forest {
                max_degree: *max_degree,
            },
            ShapeJson::Tree { max_degree } => PartShape::Tree {
                max_degree: *max_degree,
            },
            ShapeJson::Connected { max_degree } => PartShape::Connected {
                max_degree: *max_degree,
            },
            ShapeJson::BoundedDegree { max_degree } => PartShape::BoundedDegree {
                max_degree: *max_degree,
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClaimsJson {
    #[serde(rename = "T0")]
    pub t0: ShapeJson,
    #[serde(rename = "T1")]
    pub t1: ShapeJson,
    #[serde(rename = "T2")]
    pub t2: ShapeJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    #[serde(rename = "T0")]
    pub t0: Vec<(usize, usize)>,
    #[serde(rename = "T1")]
    pub t1: Vec<(usize, usize)>,
    #[serde(rename = "T2")]
    pub t2: Vec<(usize, usize)>,
    pub claims: ClaimsJson,
}

impl DecompositionJson {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        DecompositionJson {
            t0: d.t0.clone(),
            t1: d.t1.clone(),
            t2: d.t2.clone(),
            claims: ClaimsJson {
                t0: (&d.shapes[0]).into(),
                t1: (&d.shapes[1]).into(),
                t2: (&d.shapes[2]).into(),
            },
        }
    }

    pub fn to_decomposition(&self) -> Decomposition {
        Decomposition {
            t0: self.t0.clone(),
            t1: self.t1.clone(),
            t2: self.t2.clone(),
            shapes: [
                (&self.claims.t0).into(),
                (&self.claims.t1).into(),
                (&self.claims.t2).into(),
            ],
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ArcJson {
    pub u: usize,
    pub v: usize,
    pub head: usize,
    pub color: String,
}

pub fn coloring_json(c: &Coloring) -> Vec<ArcJson> {
    let mut out: Vec<ArcJson> = c
        .arcs
        .iter()
        .map(|a| ArcJson {
            u: a.tail.min(a.head),
            v: a.tail.max(a.head),
            head: a.head,
            color: match a.color {
                Color::Black => "black".into(),
                Color::Red => "red".into(),
                Color::Blue => "blue".into(),
            },
        })
        .collect();
    out.sort_by_key(|a| (a.u, a.v));
    out
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PhiEntryJson {
    pub triangle: [usize; 3],
    pub vertex: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub k: usize,
    pub phi: Vec<PhiEntryJson>,
}

impl AssignmentJson {
    pub fn from_assignment(a: &Assignment) -> Self {
        AssignmentJson {
            k: a.k,
            phi: a
                .phi
                .iter()
                .map(|(t, v)| PhiEntryJson {
                    triangle: *t,
                    vertex: *v,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "G")]
    pub g: MapJson,
    #[serde(rename = "Gprime_vertices")]
    pub gprime_vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerdictJson {
    pub status: String,
    pub nodes_explored: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<DecompositionJson>,
}

impl VerdictJson {
    pub fn from_verdict(v: &Verdict) -> Self {
        let (status, witness) = match &v.status {
            Status::Sat(dec) => ("sat", Some(DecompositionJson::from_decomposition(dec))),
            Status::Unsat => ("unsat", None),
            Status::Unknown => ("unknown", None),
        };
        VerdictJson {
            status: status.into(),
            nodes_explored: v.nodes_explored,
            witness,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub clean: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ValidationJson {
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RuledOutJson {
    pub d: usize,
    pub connected: bool,
    pub special_only: bool,
}

impl From<&RuledOut> for RuledOutJson {
    fn from(r: &RuledOut) -> Self {
        RuledOutJson {
            d: r.d,
            connected: r.connected,
            special_only: r.special_only,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PairCheckJson {
    pub k: usize,
    pub n: usize,
    pub special_forced: bool,
    pub ruled_out: Vec<RuledOutJson>,
}

/// A vertex sequence, either bare (`[0, 4, 1]`) or wrapped in an object
/// with a `cycle` field, so generator output files work directly.
pub fn parse_cycle(raw: &str) -> Result<Vec<usize>, String> {
    if let Ok(v) = serde_json::from_str::<Vec<usize>>(raw) {
        return Ok(v);
    }
    #[derive(Deserialize)]
    struct Holder {
        cycle: Vec<usize>,
    }
    serde_json::from_str::<Holder>(raw)
        .map(|h| h.cycle)
        .map_err(|_| "expected a vertex array or an object with a cycle field".into())
}

/// A sub-triangulation reference, either a bare vertex list or a whole
/// pair object; the pair's map, when present, is returned for checking
/// against the input.
pub fn parse_vertex_set(raw: &str) -> Result<(Vec<usize>, Option<MapJson>), String> {
    if let Ok(v) = serde_json::from_str::<Vec<usize>>(raw) {
        return Ok((v, None));
    }
    serde_json::from_str::<PairJson>(raw)
        .map(|p| (p.gprime_vertices, Some(p.g)))
        .map_err(|_| "expected a vertex array or a pair object with Gprime_vertices".into())
}
