//! Python bindings. Metric graphs come in as graph JSON documents; complex
//! results go back as JSON strings so the Python side can `json.loads` them.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hyperell::canon::{canonical_label, Decorated};
use hyperell::divisor::{is_hyperelliptic_by_rank, rank};
use hyperell::harmonic::is_hyperelliptic;
use hyperell::json::{
    CheckResultJson, DivisorJson, GraphJson, LaddersJson, NewtonCertifyJson, NewtonCountJson,
    PosetJson,
};
use hyperell::moduli::{enumerate_h, enumerate_h2, ladder, trees_max_deg3};
use hyperell::newton::{
    bridgeless_core_triangulations, certify_standard_ladder, core_of_curve, dual_curve,
    regular_lift, sample_indices,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A metric graph model with weights and exact rational lengths.
#[pyclass]
struct Model {
    inner: hyperell::Model,
}

#[pymethods]
impl Model {
    /// Parse the graph JSON interchange format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Model> {
        let doc: GraphJson = serde_json::from_str(text).map_err(err)?;
        Ok(Model {
            inner: doc.to_model().map_err(err)?,
        })
    }

    fn genus(&self) -> usize {
        self.inner.genus()
    }

    fn n_vertices(&self) -> usize {
        self.inner.graph().n_vertices()
    }

    fn n_edges(&self) -> usize {
        self.inner.graph().n_edges()
    }

    fn canonical_label(&self) -> String {
        canonical_label(&Decorated::from_model(&self.inner))
    }

    /// Hyperellipticity via the involution search; returns the decision
    /// record as a JSON string.
    fn is_hyperelliptic(&self) -> PyResult<String> {
        let d = is_hyperelliptic(&self.inner).map_err(err)?;
        serde_json::to_string(&CheckResultJson::new(&d, None)).map_err(err)
    }

    /// Hyperellipticity via the divisor-rank oracle.
    fn is_hyperelliptic_by_rank(&self) -> PyResult<bool> {
        Ok(is_hyperelliptic_by_rank(&self.inner).map_err(err)?.hyperelliptic)
    }

    /// Baker-Norine rank of a vertex-supported divisor, given as
    /// `{"chips": {...}}` JSON.
    fn rank(&self, divisor_json: &str) -> PyResult<i64> {
        let d: DivisorJson = serde_json::from_str(divisor_json).map_err(err)?;
        rank(&self.inner, &d.chips).map_err(err)
    }
}

/// Hyperelliptic moduli cells of the given genus; JSON payload with cells,
/// covers, and the f-vector.
#[pyfunction]
#[pyo3(signature = (genus, two_edge_connected = true))]
fn moduli(genus: usize, two_edge_connected: bool) -> PyResult<String> {
    let poset = if two_edge_connected {
        enumerate_h2(genus).map_err(err)?
    } else {
        enumerate_h(genus).map_err(err)?
    };
    serde_json::to_string(&PosetJson::from_poset(&poset)).map_err(err)
}

/// Trees of maximum degree 3 on genus-1 vertices with their ladders.
#[pyfunction]
fn ladders(genus: usize) -> PyResult<String> {
    if genus < 3 {
        return Err(PyValueError::new_err("genus must be at least 3"));
    }
    let trees = trees_max_deg3(genus - 1);
    let mut tree_docs = Vec::new();
    let mut ladder_docs = Vec::new();
    for t in &trees {
        let l = ladder(t).map_err(err)?;
        let to_doc = |g: &hyperell::Graph| GraphJson {
            vertices: g
                .vertex_ids()
                .iter()
                .map(|id| hyperell::json::VertexJson {
                    id: id.clone(),
                    weight: 0,
                })
                .collect(),
            edges: (0..g.n_edges())
                .map(|e| {
                    let (a, b) = g.ends(e);
                    hyperell::json::EdgeJson {
                        id: g.edge_id(e).to_string(),
                        ends: [g.vertex_id(a).to_string(), g.vertex_id(b).to_string()],
                        length: None,
                    }
                })
                .collect(),
            relation: None,
        };
        tree_docs.push(to_doc(t));
        ladder_docs.push(to_doc(&l));
    }
    serde_json::to_string(&LaddersJson {
        genus,
        count: trees.len(),
        trees: tree_docs,
        ladders: ladder_docs,
    })
    .map_err(err)
}

/// Case-split counts of the bridgeless-core triangulation census.
#[pyfunction]
fn newton_counts(genus: usize) -> PyResult<String> {
    let census = bridgeless_core_triangulations(genus).map_err(err)?;
    let neither = census
        .iter()
        .filter(|e| !e.uses_left_steep && !e.uses_right_steep)
        .count();
    let one = census
        .iter()
        .filter(|e| e.uses_left_steep != e.uses_right_steep)
        .count();
    let both = census
        .iter()
        .filter(|e| e.uses_left_steep && e.uses_right_steep)
        .count();
    serde_json::to_string(&NewtonCountJson {
        genus,
        neither,
        one,
        both,
        total: census.len(),
    })
    .map_err(err)
}

/// Run the lift/dual/core pipeline on census members (all of them for genus
/// 3, a seeded sample otherwise) and certify standard ladders.
#[pyfunction]
#[pyo3(signature = (genus, sample = 100, seed = 17))]
fn newton_certify(genus: usize, sample: usize, seed: u64) -> PyResult<String> {
    let census = bridgeless_core_triangulations(genus).map_err(err)?;
    let indices = if genus == 3 {
        (0..census.len()).collect::<Vec<_>>()
    } else {
        sample_indices(census.len(), sample, seed)
    };
    let mut lift_failures = 0usize;
    let mut certificates = Vec::new();
    for &i in &indices {
        let t = &census[i].triangulation;
        match regular_lift(t) {
            Err(_) => {
                lift_failures += 1;
                certificates.push(hyperell::json::CertificateJson {
                    index: i,
                    regular: false,
                    is_standard_ladder: false,
                    opposite_sides_equal: false,
                    bridgeless: false,
                });
            }
            Ok(h) => {
                let curve = dual_curve(t, &h).map_err(err)?;
                let core = core_of_curve(&curve).map_err(err)?;
                let cert = certify_standard_ladder(&core, genus);
                certificates.push(hyperell::json::CertificateJson {
                    index: i,
                    regular: true,
                    is_standard_ladder: cert.is_standard_ladder,
                    opposite_sides_equal: cert.opposite_sides_equal,
                    bridgeless: cert.bridgeless,
                });
            }
        }
    }
    let all = |f: fn(&hyperell::json::CertificateJson) -> bool| certificates.iter().all(f);
    serde_json::to_string(&NewtonCertifyJson {
        genus,
        members: census.len(),
        checked: certificates.len(),
        all_standard_ladders: all(|c| c.is_standard_ladder),
        all_opposite_sides_equal: all(|c| c.opposite_sides_equal),
        all_bridgeless: all(|c| c.bridgeless),
        lift_failures,
        seed,
        certificates,
    })
    .map_err(err)
}

#[pymodule]
fn hyperell_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(moduli, m)?)?;
    m.add_function(wrap_pyfunction!(ladders, m)?)?;
    m.add_function(wrap_pyfunction!(newton_counts, m)?)?;
    m.add_function(wrap_pyfunction!(newton_certify, m)?)?;
    Ok(())
}
