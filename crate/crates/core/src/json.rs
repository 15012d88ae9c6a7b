//! Serde types for every file format and CLI payload: graphs with weights,
//! lengths and relations, divisors, morphisms, decision records, cell
//! posets, triangulations, and embedded curves. All maps are ordered so
//! serialized output is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_label, Decorated};
use crate::divisor::RankDecision;
use crate::graph::{ConstrainedType, Graph, GraphError, Model};
use crate::harmonic::{EdgeImage, HyperellipticDecision, ModelMorphism};
use crate::moduli::CellPoset;
use crate::newton::{CensusEntry, EmbeddedCurve, LatticeTriangulation};
use crate::rational::{format_rat, parse_rat};

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct VertexJson {
    pub id: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub weight: u32,
}

fn is_zero(w: &u32) -> bool {
    *w == 0
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
    /// "p/q" or "n"; defaults to "1" when absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<String>,
}

/// The graph interchange format shared by every command:
/// `{"vertices":[{"id":"v1","weight":0}],
///   "edges":[{"id":"e1","ends":["v1","v2"],"length":"3/2"}],
///   "relation":[["e1","e2"],["e3"]]}`
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<Vec<String>>>,
}

impl GraphJson {
    pub fn to_model(&self) -> Result<Model, GraphError> {
        let graph = self.build_graph()?;
        let mut lengths = Vec::new();
        for e in &self.edges {
            let s = e.length.as_deref().unwrap_or("1");
            let l = parse_rat(s)
                .ok_or_else(|| GraphError::NonPositiveLength(e.id.clone(), s.to_string()))?;
            lengths.push(l);
        }
        let weights = self.vertices.iter().map(|v| v.weight).collect();
        Model::weighted(graph, lengths, weights)
    }

    pub fn to_constrained_type(&self) -> Result<ConstrainedType, GraphError> {
        let graph = self.build_graph()?;
        let weights: Vec<u32> = self.vertices.iter().map(|v| v.weight).collect();
        match &self.relation {
            None => ConstrainedType::with_trivial_relation(graph, weights),
            Some(rel) => {
                let mut classes = Vec::new();
                for class in rel {
                    let mut c = Vec::new();
                    for id in class {
                        let e = graph
                            .edge_index(id)
                            .ok_or_else(|| GraphError::BadRelation(id.clone()))?;
                        c.push(e);
                    }
                    classes.push(c);
                }
                ConstrainedType::new(graph, weights, classes)
            }
        }
    }

    fn build_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(
            self.vertices.iter().map(|v| v.id.clone()).collect(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone()))
                .collect(),
        )
    }

    pub fn from_model(m: &Model) -> GraphJson {
        let g = m.graph();
        GraphJson {
            vertices: (0..g.n_vertices())
                .map(|v| VertexJson {
                    id: g.vertex_id(v).to_string(),
                    weight: m.weight(v),
                })
                .collect(),
            edges: (0..g.n_edges())
                .map(|e| EdgeJson {
                    id: g.edge_id(e).to_string(),
                    ends: {
                        let (a, b) = g.ends(e);
                        [g.vertex_id(a).to_string(), g.vertex_id(b).to_string()]
                    },
                    length: Some(format_rat(m.length(e))),
                })
                .collect(),
            relation: None,
        }
    }

    pub fn from_constrained_type(t: &ConstrainedType) -> GraphJson {
        let g = t.graph();
        GraphJson {
            vertices: (0..g.n_vertices())
                .map(|v| VertexJson {
                    id: g.vertex_id(v).to_string(),
                    weight: t.weights()[v],
                })
                .collect(),
            edges: (0..g.n_edges())
                .map(|e| EdgeJson {
                    id: g.edge_id(e).to_string(),
                    ends: {
                        let (a, b) = g.ends(e);
                        [g.vertex_id(a).to_string(), g.vertex_id(b).to_string()]
                    },
                    length: None,
                })
                .collect(),
            relation: Some(
                t.classes()
                    .iter()
                    .map(|c| c.iter().map(|&e| g.edge_id(e).to_string()).collect())
                    .collect(),
            ),
        }
    }
}

/// `{"chips":{"v1":2,"v3":-1}}`
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct DivisorJson {
    pub chips: BTreeMap<String, i64>,
}

/// `{"values":{"v1":0,"v2":1}}`
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct FunctionJson {
    pub values: BTreeMap<String, i64>,
}

/// `{"vertex_map":{"v1":"w1"},"edge_map":{"e1":"f1","e2":"w1"}}`;
/// an edge mapped to a vertex id encodes a collapsed edge.
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct MorphismJson {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
}

impl MorphismJson {
    pub fn from_morphism(phi: &ModelMorphism) -> MorphismJson {
        let dg = phi.domain().graph();
        let cg = phi.codomain().graph();
        MorphismJson {
            vertex_map: (0..dg.n_vertices())
                .map(|v| {
                    (
                        dg.vertex_id(v).to_string(),
                        cg.vertex_id(phi.vertex_image(v)).to_string(),
                    )
                })
                .collect(),
            edge_map: (0..dg.n_edges())
                .map(|e| {
                    let img = match phi.edge_image(e) {
                        EdgeImage::Edge(f) => cg.edge_id(f).to_string(),
                        EdgeImage::Vertex(w) => cg.vertex_id(w).to_string(),
                    };
                    (dg.edge_id(e).to_string(), img)
                })
                .collect(),
        }
    }
}

/// Payload of `check`.
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct CheckResultJson {
    pub hyperelliptic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution: Option<MorphismJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<GraphJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismJson>,
    pub loopless_model: GraphJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_witness: Option<BTreeMap<String, i64>>,
    pub notes: Vec<String>,
}

impl CheckResultJson {
    pub fn new(d: &HyperellipticDecision, oracle: Option<&RankDecision>) -> CheckResultJson {
        let involution = d.involution.as_ref().map(|inv| {
            let g = d.loopless_model.graph();
            MorphismJson {
                vertex_map: (0..g.n_vertices())
                    .map(|v| {
                        (
                            g.vertex_id(v).to_string(),
                            g.vertex_id(inv.vmap[v]).to_string(),
                        )
                    })
                    .collect(),
                edge_map: (0..g.n_edges())
                    .map(|e| {
                        (
                            g.edge_id(e).to_string(),
                            g.edge_id(inv.emap[e]).to_string(),
                        )
                    })
                    .collect(),
            }
        });
        CheckResultJson {
            hyperelliptic: d.hyperelliptic,
            involution,
            quotient: d.quotient.as_ref().map(GraphJson::from_model),
            morphism: d.morphism.as_ref().map(MorphismJson::from_morphism),
            loopless_model: GraphJson::from_model(&d.loopless_model),
            oracle_agrees: oracle.map(|o| o.hyperelliptic == d.hyperelliptic),
            rank_witness: oracle.and_then(|o| o.witness.clone()),
            notes: d.notes.clone(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct RankResultJson {
    pub degree: i64,
    pub rank: i64,
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct CellJson {
    pub dimension: usize,
    pub graph: GraphJson,
    pub label: String,
}

/// Payload of `moduli`.
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct PosetJson {
    pub genus: usize,
    pub two_edge_connected: bool,
    pub n_cells: usize,
    pub f_vector: Vec<usize>,
    pub cells: Vec<CellJson>,
    pub covers: Vec<[usize; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &CellPoset) -> PosetJson {
        PosetJson {
            genus: p.genus,
            two_edge_connected: p.two_edge_connected,
            n_cells: p.cells.len(),
            f_vector: p.f_vector(),
            cells: p
                .cells
                .iter()
                .map(|c| CellJson {
                    dimension: c.dimension,
                    graph: GraphJson::from_constrained_type(&c.ctype),
                    label: c.label.clone(),
                })
                .collect(),
            covers: p.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// Payload of `ladders`.
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct LaddersJson {
    pub genus: usize,
    pub count: usize,
    pub trees: Vec<GraphJson>,
    pub ladders: Vec<GraphJson>,
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct TriangulationJson {
    pub polygon: Vec<[i64; 2]>,
    pub triangles: Vec<[[i64; 2]; 3]>,
    pub uses_left_steep: bool,
    pub uses_right_steep: bool,
}

impl TriangulationJson {
    pub fn from_entry(e: &CensusEntry) -> TriangulationJson {
        TriangulationJson {
            polygon: e.triangulation.polygon.iter().map(|p| [p.0, p.1]).collect(),
            triangles: e
                .triangulation
                .triangles
                .iter()
                .map(|t| [[t[0].0, t[0].1], [t[1].0, t[1].1], [t[2].0, t[2].1]])
                .collect(),
            uses_left_steep: e.uses_left_steep,
            uses_right_steep: e.uses_right_steep,
        }
    }

    pub fn to_triangulation(&self) -> LatticeTriangulation {
        let polygon: Vec<(i64, i64)> = self.polygon.iter().map(|p| (p[0], p[1])).collect();
        let triangles: Vec<[(i64, i64); 3]> = self
            .triangles
            .iter()
            .map(|t| [(t[0][0], t[0][1]), (t[1][0], t[1][1]), (t[2][0], t[2][1])])
            .collect();
        LatticeTriangulation::from_parts(polygon, triangles)
    }
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct CurveVertexJson {
    pub triangle: usize,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct CurveEdgeJson {
    pub t1: usize,
    pub t2: usize,
    pub direction: [i64; 2],
    pub lattice_length: String,
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct CurveRayJson {
    pub t: usize,
    pub direction: [i64; 2],
}

/// Exact-coordinate embedded curve.
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct CurveJson {
    pub vertices: Vec<CurveVertexJson>,
    pub bounded_edges: Vec<CurveEdgeJson>,
    pub rays: Vec<CurveRayJson>,
}

impl CurveJson {
    pub fn from_curve(c: &EmbeddedCurve) -> CurveJson {
        CurveJson {
            vertices: c
                .vertices
                .iter()
                .enumerate()
                .map(|(i, (x, y))| CurveVertexJson {
                    triangle: i,
                    x: format_rat(x),
                    y: format_rat(y),
                })
                .collect(),
            bounded_edges: c
                .bounded_edges
                .iter()
                .map(|e| CurveEdgeJson {
                    t1: e.t1,
                    t2: e.t2,
                    direction: [e.direction.0, e.direction.1],
                    lattice_length: format_rat(&e.lattice_length),
                })
                .collect(),
            rays: c
                .rays
                .iter()
                .map(|r| CurveRayJson {
                    t: r.t,
                    direction: [r.direction.0, r.direction.1],
                })
                .collect(),
        }
    }
}

/// Payload of `newton --count-only`.
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct NewtonCountJson {
    pub genus: usize,
    pub neither: usize,
    pub one: usize,
    pub both: usize,
    pub total: usize,
}

#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct CertificateJson {
    pub index: usize,
    pub regular: bool,
    pub is_standard_ladder: bool,
    pub opposite_sides_equal: bool,
    pub bridgeless: bool,
}

/// Payload of `newton --certify`.
#[derive(Debug, Serialize, Deserialize, Clone)]
pub struct NewtonCertifyJson {
    pub genus: usize,
    pub members: usize,
    pub checked: usize,
    pub all_standard_ladders: bool,
    pub all_opposite_sides_equal: bool,
    pub all_bridgeless: bool,
    pub lift_failures: usize,
    pub seed: u64,
    pub certificates: Vec<CertificateJson>,
}

/// Canonical label of the constrained type encoded by a graph document.
pub fn type_label(j: &GraphJson) -> Result<String, GraphError> {
    Ok(canonical_label(&Decorated::from_type(&j.to_constrained_type()?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_roundtrip() {
        let text = r#"{
            "vertices": [{"id":"u"},{"id":"v","weight":1}],
            "edges": [
                {"id":"e1","ends":["u","v"],"length":"3/2"},
                {"id":"e2","ends":["u","v"]},
                {"id":"e3","ends":["u","u"],"length":"2"}
            ]
        }"#;
        let j: GraphJson = serde_json::from_str(text).unwrap();
        let m = j.to_model().unwrap();
        assert_eq!(m.graph().n_edges(), 3);
        assert_eq!(format_rat(m.length(1)), "1"); // default length
        assert_eq!(m.weight(1), 1);
        let back = GraphJson::from_model(&m);
        let m2 = back.to_model().unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn relation_parsing() {
        let text = r#"{
            "vertices": [{"id":"u"},{"id":"v"}],
            "edges": [
                {"id":"e1","ends":["u","v"]},
                {"id":"e2","ends":["u","v"]},
                {"id":"e3","ends":["u","v"]}
            ],
            "relation": [["e1","e2"],["e3"]]
        }"#;
        let j: GraphJson = serde_json::from_str(text).unwrap();
        let t = j.to_constrained_type().unwrap();
        assert_eq!(t.dimension(), 2);
        let back = GraphJson::from_constrained_type(&t);
        assert_eq!(back.relation.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn malformed_is_rejected() {
        let text = r#"{
            "vertices": [{"id":"u"}],
            "edges": [{"id":"e1","ends":["u","w"]}]
        }"#;
        let j: GraphJson = serde_json::from_str(text).unwrap();
        assert!(j.to_model().is_err());
    }
}
