//! Divisor theory on unit subdivisions: div(f), q-reduced forms via Dhar's
//! burning algorithm, Baker-Norine rank, and pullbacks along harmonic
//! morphisms. This is the brute-force oracle that cross-checks the
//! involution-based hyperellipticity decision.
//!
//! Metric rank is computed as the combinatorial rank of a unit subdivision;
//! the identification is guarded at runtime by re-running every decision at
//! refinement 2.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::integer::lcm;
use num::{One, ToPrimitive};
use thiserror::Error;

use crate::graph::{GraphError, Model};
use crate::harmonic::{EdgeImage, HarmonicError, ModelMorphism};
use crate::rational::Rat;

#[derive(Debug, Error)]
pub enum DivisorError {
    #[error("divisor mentions unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("divisor must be supported on model vertices")]
    NotVertexSupported,
    #[error("rank differs between refinements 1 and 2 ({0} vs {1}); metric identification failed")]
    RankUnstable(i64, i64),
    #[error("morphism is not harmonic")]
    NotHarmonicMorphism,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// A unit subdivision of a model: every edge of rational length p/q is split
/// into p/q * scale unit edges, where scale clears all denominators and
/// multiplies in the requested refinement.
#[derive(Debug, Clone)]
pub struct Subdivision {
    base: Model,
    scale: BigInt,
    vertex_ids: Vec<String>,
    edges: Vec<(usize, usize)>,
    base_vertex: Vec<usize>,
    edge_paths: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

impl Subdivision {
    pub fn n_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn base(&self) -> &Model {
        &self.base
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Subdivision vertex corresponding to a base vertex.
    pub fn locate_vertex(&self, base_vertex: usize) -> usize {
        self.base_vertex[base_vertex]
    }

    /// Subdivision vertex at rational offset along a base edge (measured
    /// from the first endpoint); `None` if the point is not a subdivision
    /// vertex.
    pub fn locate_point(&self, base_edge: usize, offset: &Rat) -> Option<usize> {
        let k = offset * Rat::from_integer(self.scale.clone());
        if !k.is_integer() {
            return None;
        }
        let k = k.to_integer().to_usize()?;
        self.edge_paths[base_edge].get(k).copied()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }
}

/// Split every edge of `m` into unit pieces; `refinement` multiplies the
/// common scale. Base vertices keep their ids; interior vertices are named
/// `edge:k`.
pub fn subdivide(m: &Model, refinement: u64) -> Subdivision {
    assert!(refinement >= 1);
    let mut scale = BigInt::one();
    for l in m.lengths() {
        scale = lcm(scale, l.denom().clone());
    }
    scale *= BigInt::from(refinement);
    let g = m.graph();
    let mut vertex_ids: Vec<String> = g.vertex_ids().to_vec();
    let base_vertex: Vec<usize> = (0..g.n_vertices()).collect();
    let mut edges = Vec::new();
    let mut edge_paths = Vec::new();
    for e in 0..g.n_edges() {
        let count = (m.length(e) * Rat::from_integer(scale.clone()))
            .to_integer()
            .to_usize()
            .expect("edge subdivides into a positive integer number of units");
        let (a, b) = g.ends(e);
        let mut path = vec![a];
        for k in 1..count {
            path.push(vertex_ids.len());
            vertex_ids.push(format!("{}:{}", g.edge_id(e), k));
        }
        path.push(b);
        for w in path.windows(2) {
            edges.push((w[0], w[1]));
        }
        edge_paths.push(path);
    }
    let mut adj = vec![Vec::new(); vertex_ids.len()];
    for &(a, b) in &edges {
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    Subdivision {
        base: m.clone(),
        scale,
        vertex_ids,
        edges,
        base_vertex,
        edge_paths,
        adj,
    }
}

/// An integer chip configuration on the vertices of a subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub chips: Vec<i64>,
}

impl Divisor {
    pub fn zero(sub: &Subdivision) -> Divisor {
        Divisor {
            chips: vec![0; sub.n_vertices()],
        }
    }

    pub fn degree(&self) -> i64 {
        self.chips.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.chips.iter().all(|&c| c >= 0)
    }

    pub fn from_map(sub: &Subdivision, map: &BTreeMap<String, i64>) -> Result<Divisor, DivisorError> {
        let mut chips = vec![0i64; sub.n_vertices()];
        for (id, &c) in map {
            let v = sub
                .vertex_index(id)
                .ok_or_else(|| DivisorError::UnknownVertex(id.clone()))?;
            chips[v] += c;
        }
        Ok(Divisor { chips })
    }
}

/// An integer-valued function on the subdivision vertices; its slope along
/// each unit edge is the difference of endpoint values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub values: Vec<i64>,
}

/// div(f): at each vertex, the sum of outgoing slopes of `f`.
pub fn div(sub: &Subdivision, f: &RationalFunction) -> Divisor {
    assert_eq!(f.values.len(), sub.n_vertices());
    let mut chips = vec![0i64; sub.n_vertices()];
    for &(a, b) in &sub.edges {
        if a == b {
            continue;
        }
        chips[a] += f.values[b] - f.values[a];
        chips[b] += f.values[a] - f.values[b];
    }
    Divisor { chips }
}

/// The q-reduced representative of the class of `d`.
///
/// Phase 1 moves all debt off the non-q vertices by firing distance balls
/// around q (always at the farthest in-debt layer, which strictly shrinks a
/// lexicographic potential). Phase 2 is Dhar's burning algorithm: while the
/// fire does not consume everything, the unburnt set fires legally.
pub fn reduce(sub: &Subdivision, d: &Divisor, q: usize) -> Divisor {
    let n = sub.n_vertices();
    assert_eq!(d.chips.len(), n);
    let mut chips = d.chips.clone();

    // BFS distances from q
    let mut dist = vec![usize::MAX; n];
    dist[q] = 0;
    let mut queue = std::collections::VecDeque::from([q]);
    while let Some(v) = queue.pop_front() {
        for &u in &sub.adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }

    let fire_set = |chips: &mut Vec<i64>, in_set: &dyn Fn(usize) -> bool| {
        for &(a, b) in &sub.edges {
            if a == b {
                continue;
            }
            match (in_set(a), in_set(b)) {
                (true, false) => {
                    chips[a] -= 1;
                    chips[b] += 1;
                }
                (false, true) => {
                    chips[b] -= 1;
                    chips[a] += 1;
                }
                _ => {}
            }
        }
    };

    // phase 1: clear debt outside q
    loop {
        let farthest = (0..n)
            .filter(|&v| v != q && chips[v] < 0)
            .max_by_key(|&v| dist[v]);
        let Some(v) = farthest else { break };
        let j = dist[v];
        fire_set(&mut chips, &|w| dist[w] < j);
    }

    // phase 2: Dhar burning until the whole graph burns
    loop {
        let mut burnt = vec![false; n];
        burnt[q] = true;
        loop {
            let mut changed = false;
            for v in 0..n {
                if burnt[v] {
                    continue;
                }
                let fire_edges = sub.adj[v].iter().filter(|&&u| burnt[u]).count() as i64;
                if fire_edges > chips[v] {
                    burnt[v] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if burnt.iter().all(|&b| b) {
            return Divisor { chips };
        }
        fire_set(&mut chips, &|w| !burnt[w]);
    }
}

/// Baker-Norine rank of a divisor on the unit subdivision: the largest k
/// such that subtracting any effective divisor of degree k leaves a class
/// with an effective representative; -1 if there is none.
fn rank_on(sub: &Subdivision, d: &Divisor) -> i64 {
    let deg = d.degree();
    if deg < 0 {
        return -1;
    }
    let n = sub.n_vertices();
    let q = 0usize;
    for k in 0..=deg {
        // effective E of degree k in colex order of chip vectors
        let mut support = vec![0usize; k as usize];
        loop {
            let mut chips = d.chips.clone();
            for &v in &support {
                chips[v] -= 1;
            }
            let reduced = reduce(sub, &Divisor { chips }, q);
            if reduced.chips[q] < 0 {
                return k - 1;
            }
            // next nondecreasing support vector
            let mut i = support.len();
            loop {
                if i == 0 {
                    support.clear();
                    break;
                }
                i -= 1;
                if support[i] + 1 < n {
                    let v = support[i] + 1;
                    for s in support.iter_mut().skip(i) {
                        *s = v;
                    }
                    break;
                }
            }
            if support.is_empty() {
                break;
            }
        }
        if k as usize == 0 && n == 0 {
            break;
        }
    }
    deg
}

/// Rank of a vertex-supported divisor on the metric graph presented by `m`,
/// with the refinement-2 stability guard.
pub fn rank(m: &Model, d: &BTreeMap<String, i64>) -> Result<i64, DivisorError> {
    for id in d.keys() {
        if m.graph().vertex_index(id).is_none() {
            return Err(DivisorError::NotVertexSupported);
        }
    }
    let sub1 = subdivide(m, 1);
    let r1 = rank_on(&sub1, &Divisor::from_map(&sub1, d)?);
    let sub2 = subdivide(m, 2);
    let r2 = rank_on(&sub2, &Divisor::from_map(&sub2, d)?);
    if r1 != r2 {
        return Err(DivisorError::RankUnstable(r1, r2));
    }
    Ok(r1)
}

/// Hyperellipticity decided by brute-force rank search.
#[derive(Debug, Clone)]
pub struct RankDecision {
    pub hyperelliptic: bool,
    /// A degree-2 divisor of rank 1 on the canonical loopless model, when
    /// one exists, as chips on model vertex ids.
    pub witness: Option<BTreeMap<String, i64>>,
}

/// True iff some effective degree-2 divisor supported on the vertices of
/// the canonical loopless model has rank 1. Weighted input is expanded by
/// weight loops first. On a model of genus >= 1 a degree-2 divisor has rank
/// at most 1, so only the rank >= 1 check runs; genus 0 is never
/// hyperelliptic. Decisions are re-verified at refinement 2.
pub fn is_hyperelliptic_by_rank(m: &Model) -> Result<RankDecision, DivisorError> {
    let expanded = m.add_weight_loops()?;
    let cl = expanded.canonical_loopless_model();
    if cl.genus() == 0 {
        return Ok(RankDecision {
            hyperelliptic: false,
            witness: None,
        });
    }
    let decide = |refinement: u64| -> Option<(usize, usize)> {
        let sub = subdivide(&cl, refinement);
        let nb = cl.graph().n_vertices();
        for x in 0..nb {
            for y in x..nb {
                let mut d = Divisor::zero(&sub);
                d.chips[sub.locate_vertex(x)] += 1;
                d.chips[sub.locate_vertex(y)] += 1;
                if has_positive_rank(&sub, &d) {
                    return Some((x, y));
                }
            }
        }
        None
    };
    let w1 = decide(1);
    let w2 = decide(2);
    if w1.is_some() != w2.is_some() {
        return Err(DivisorError::RankUnstable(
            w1.is_some() as i64,
            w2.is_some() as i64,
        ));
    }
    Ok(RankDecision {
        hyperelliptic: w1.is_some(),
        witness: w1.map(|(x, y)| {
            let mut map = BTreeMap::new();
            *map.entry(cl.graph().vertex_id(x).to_string()).or_insert(0) += 1;
            *map.entry(cl.graph().vertex_id(y).to_string()).or_insert(0) += 1;
            map
        }),
    })
}

/// rank(d) >= 1: subtracting any single subdivision point leaves an
/// effective class.
fn has_positive_rank(sub: &Subdivision, d: &Divisor) -> bool {
    let q = 0usize;
    for z in 0..sub.n_vertices() {
        let mut chips = d.chips.clone();
        chips[z] -= 1;
        let reduced = reduce(sub, &Divisor { chips }, q);
        if reduced.chips[q] < 0 {
            return false;
        }
    }
    true
}

/// A harmonic morphism together with compatible subdivisions of both sides:
/// each horizontal edge of the domain is split into as many pieces as its
/// image edge, so pieces map bijectively onto codomain unit edges. A piece
/// of a horizontal edge carries the slope of that edge; div on the domain
/// weights each piece by its slope.
#[derive(Debug)]
pub struct Pullback {
    cod: Subdivision,
    dom_vertex_ids: Vec<String>,
    /// (end, end, slope weight) per domain piece
    dom_pieces: Vec<(usize, usize, u64)>,
    dom_to_cod: Vec<usize>,
    multiplicity: Vec<u64>,
}

impl Pullback {
    pub fn new(phi: &ModelMorphism, cod: &Subdivision) -> Result<Pullback, DivisorError> {
        if !phi.is_harmonic() {
            return Err(DivisorError::NotHarmonicMorphism);
        }
        let dg = phi.domain().graph();
        let mut dom_vertex_ids: Vec<String> = dg.vertex_ids().to_vec();
        let mut dom_to_cod: Vec<usize> = (0..dg.n_vertices())
            .map(|v| cod.locate_vertex(phi.vertex_image(v)))
            .collect();
        let mut multiplicity: Vec<u64> = (0..dg.n_vertices())
            .map(|v| phi.horizontal_multiplicity(v).expect("harmonic"))
            .collect();
        let mut dom_pieces = Vec::new();
        for e in 0..dg.n_edges() {
            let (x, y) = dg.ends(e);
            match phi.edge_image(e) {
                EdgeImage::Vertex(_) => {
                    dom_pieces.push((x, y, 1));
                }
                EdgeImage::Edge(f) => {
                    let mu = phi.slope(e).unwrap();
                    let cod_path = &cod.edge_paths[f];
                    let (fa, _) = phi.codomain().graph().ends(f);
                    let forward = phi.vertex_image(x) == fa;
                    let oriented: Vec<usize> = if forward {
                        cod_path.clone()
                    } else {
                        cod_path.iter().rev().copied().collect()
                    };
                    // domain path x -> y over the oriented codomain path
                    let mut prev = x;
                    for k in 1..oriented.len() {
                        let cur = if k == oriented.len() - 1 {
                            y
                        } else {
                            let id = format!("{}:{}", dg.edge_id(e), k);
                            dom_vertex_ids.push(id);
                            dom_to_cod.push(oriented[k]);
                            multiplicity.push(mu);
                            dom_vertex_ids.len() - 1
                        };
                        dom_pieces.push((prev, cur, mu));
                        prev = cur;
                    }
                }
            }
        }
        Ok(Pullback {
            cod: cod.clone(),
            dom_vertex_ids,
            dom_pieces,
            dom_to_cod,
            multiplicity,
        })
    }

    pub fn n_domain_vertices(&self) -> usize {
        self.dom_vertex_ids.len()
    }

    pub fn domain_vertex_id(&self, v: usize) -> &str {
        &self.dom_vertex_ids[v]
    }

    /// Horizontal multiplicity of the induced metric map at each domain
    /// subdivision vertex: m_phi at model vertices, the edge slope inside
    /// horizontal edges, 0 inside vertical edges.
    pub fn multiplicity(&self, v: usize) -> u64 {
        self.multiplicity[v]
    }

    /// phi^* g = g o phi, evaluated at domain subdivision vertices.
    pub fn pullback_function(&self, g: &RationalFunction) -> RationalFunction {
        assert_eq!(g.values.len(), self.cod.n_vertices());
        RationalFunction {
            values: self.dom_to_cod.iter().map(|&c| g.values[c]).collect(),
        }
    }

    /// (phi^* D)(x) = m(x) * D(phi(x)).
    pub fn pullback_divisor(&self, d: &Divisor) -> Divisor {
        assert_eq!(d.chips.len(), self.cod.n_vertices());
        Divisor {
            chips: (0..self.dom_vertex_ids.len())
                .map(|v| self.multiplicity[v] as i64 * d.chips[self.dom_to_cod[v]])
                .collect(),
        }
    }

    /// div on the subdivided domain, weighting each piece by its slope.
    pub fn div_domain(&self, f: &RationalFunction) -> Divisor {
        assert_eq!(f.values.len(), self.dom_vertex_ids.len());
        let mut chips = vec![0i64; self.dom_vertex_ids.len()];
        for &(a, b, w) in &self.dom_pieces {
            if a == b {
                continue;
            }
            chips[a] += (f.values[b] - f.values[a]) * w as i64;
            chips[b] += (f.values[a] - f.values[b]) * w as i64;
        }
        Divisor { chips }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rational::{rat, ratio};

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Graph {
        Graph::new(
            vs.iter().map(|s| s.to_string()).collect(),
            es.iter()
                .map(|(e, a, b)| (e.to_string(), a.to_string(), b.to_string()))
                .collect(),
        )
        .unwrap()
    }

    fn unit_k4() -> Model {
        Model::unit(
            graph(
                &["v1", "v2", "v3", "v4"],
                &[
                    ("a", "v1", "v2"),
                    ("b", "v1", "v3"),
                    ("c", "v1", "v4"),
                    ("d", "v2", "v3"),
                    ("e", "v2", "v4"),
                    ("f", "v3", "v4"),
                ],
            ),
            vec![0; 4],
        )
        .unwrap()
    }

    #[test]
    fn subdivide_examples() {
        // single edge of length 3/2 at refinement 2: scale 4, 6 unit edges
        let seg = Model::new(
            graph(&["a", "b"], &[("e", "a", "b")]),
            vec![ratio(3, 2)],
        )
        .unwrap();
        let sub = subdivide(&seg, 2);
        assert_eq!(sub.n_edges(), 6);
        assert_eq!(sub.n_vertices(), 7);

        let sub = subdivide(&unit_k4(), 1);
        assert_eq!(sub.n_edges(), 6);
        assert_eq!(sub.n_vertices(), 4);

        let theta = Model::new(
            graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]),
            vec![rat(1), rat(1), rat(2)],
        )
        .unwrap();
        let sub = subdivide(&theta, 1);
        assert_eq!(sub.n_edges(), 4);
        assert_eq!(sub.n_vertices(), 3);
        assert_eq!(sub.locate_point(2, &rat(1)), Some(2));
        assert_eq!(sub.locate_point(2, &ratio(1, 2)), None);
    }

    #[test]
    fn div_examples() {
        let path = Model::new(
            graph(&["u", "v", "w"], &[("e1", "u", "v"), ("e2", "v", "w")]),
            vec![rat(1), rat(1)],
        )
        .unwrap();
        let sub = subdivide(&path, 1);
        let constant = RationalFunction { values: vec![5; 3] };
        assert_eq!(div(&sub, &constant), Divisor::zero(&sub));
        let f = RationalFunction {
            values: vec![0, 1, 2],
        };
        assert_eq!(div(&sub, &f).chips, vec![1, 0, -1]);

        // a bare 4-cycle is an excluded circle as a metric graph, but div
        // is purely combinatorial, so build it without the exclusion
        let cycle4 = Model::from_parts_unchecked(
            graph(
                &["a", "b", "c", "d"],
                &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "d"), ("e4", "d", "a")],
            ),
            vec![rat(1); 4],
            vec![0; 4],
        );
        let sub = subdivide(&cycle4, 1);
        let f = RationalFunction {
            values: vec![0, 1, 0, 1],
        };
        assert_eq!(div(&sub, &f).chips, vec![2, -2, 2, -2]);
    }

    #[test]
    fn reduce_two_cycle() {
        // two vertices joined by two unit edges; 2v is u-equivalent to 2u,
        // and the u-reduced form of its class is 2u (checked against the
        // exhaustive oracle in the integration tests)
        let c2 = Model::from_parts_unchecked(
            graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v")]),
            vec![rat(1), rat(1)],
            vec![0, 0],
        );
        let sub = subdivide(&c2, 1);
        let d = Divisor { chips: vec![0, 2] };
        let r = reduce(&sub, &d, 0);
        assert_eq!(r.chips, vec![2, 0]);
        // fixpoint on reduced input
        assert_eq!(reduce(&sub, &r, 0), r);
        // zero divisor is already reduced
        let z = Divisor::zero(&sub);
        assert_eq!(reduce(&sub, &z, 0), z);
    }

    #[test]
    fn reduce_handles_debt() {
        let sub = subdivide(&unit_k4(), 1);
        let d = Divisor {
            chips: vec![0, -3, 1, 0],
        };
        let r = reduce(&sub, &d, 0);
        assert_eq!(r.degree(), -2);
        assert!(r.chips[1] >= 0 && r.chips[2] >= 0 && r.chips[3] >= 0);
        assert!(r.chips[0] < 0);
    }

    #[test]
    fn rank_examples() {
        let k4 = unit_k4();
        // zero divisor has rank 0
        assert_eq!(rank(&k4, &BTreeMap::new()).unwrap(), 0);
        // negative degree: -1
        let d = BTreeMap::from([("v1".to_string(), -1i64)]);
        assert_eq!(rank(&k4, &d).unwrap(), -1);
        // canonical divisor of K4: one chip each, rank 2
        let d: BTreeMap<String, i64> = (1..=4).map(|i| (format!("v{}", i), 1)).collect();
        assert_eq!(rank(&k4, &d).unwrap(), 2);
        // Riemann-Roch sanity: rank(K) - rank(0) = deg K - g + 1 = 2
    }

    #[test]
    fn hyperelliptic_by_rank_examples() {
        let b4 = Model::unit(
            graph(
                &["u", "v"],
                &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v"), ("e4", "u", "v")],
            ),
            vec![0, 0],
        )
        .unwrap();
        assert!(is_hyperelliptic_by_rank(&b4).unwrap().hyperelliptic);

        assert!(!is_hyperelliptic_by_rank(&unit_k4()).unwrap().hyperelliptic);

        for lens in [[rat(1), rat(1), rat(1)], [rat(1), ratio(3, 2), rat(3)]] {
            let theta = Model::new(
                graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]),
                lens.to_vec(),
            )
            .unwrap();
            let d = is_hyperelliptic_by_rank(&theta).unwrap();
            assert!(d.hyperelliptic);
            assert!(d.witness.is_some());
        }
    }

    #[test]
    fn pullback_identity_on_ladder_quotient() {
        use crate::harmonic::{is_hyperelliptic, Automorphism};
        let _ = Automorphism::identity(0, 0);
        let ladder = Model::unit(
            graph(
                &["v1", "v2", "w1", "w2"],
                &[
                    ("rail_v", "v1", "v2"),
                    ("rail_w", "w1", "w2"),
                    ("r1a", "v1", "w1"),
                    ("r1b", "v1", "w1"),
                    ("r2a", "v2", "w2"),
                    ("r2b", "v2", "w2"),
                ],
            ),
            vec![0; 4],
        )
        .unwrap();
        let dec = is_hyperelliptic(&ladder).unwrap();
        let phi = dec.morphism.unwrap();
        let cod_sub = subdivide(phi.codomain(), 1);
        let pb = Pullback::new(&phi, &cod_sub).unwrap();

        // vertex divisor pulls back to the fiber with multiplicities
        let mut d = Divisor::zero(&cod_sub);
        d.chips[0] = 1;
        let up = pb.pullback_divisor(&d);
        assert_eq!(up.degree(), 2 * d.degree());

        // phi^* div g = div phi^* g for a few functions
        for (i, step) in [(0usize, 1i64), (1, 3), (0, -2)] {
            let mut g = RationalFunction {
                values: vec![0; cod_sub.n_vertices()],
            };
            for (v, val) in g.values.iter_mut().enumerate() {
                *val = if v == i { step } else { 0 };
            }
            let lhs = pb.pullback_divisor(&div(&cod_sub, &g));
            let rhs = pb.div_domain(&pb.pullback_function(&g));
            assert_eq!(lhs, rhs);
        }

        // constant and identity-like cases
        let g = RationalFunction {
            values: vec![7; cod_sub.n_vertices()],
        };
        let up = pb.pullback_function(&g);
        assert!(up.values.iter().all(|&v| v == 7));
    }
}
