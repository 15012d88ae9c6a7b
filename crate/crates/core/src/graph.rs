//! Multigraphs with loops, metric models, and constrained types.
//!
//! A `Graph` is a connected multigraph (loops and parallel edges allowed)
//! with opaque string ids. A `Model` adds positive rational edge lengths and
//! nonnegative vertex weights; it presents a compact metric graph. A
//! `ConstrainedType` is a weighted graph together with a partition of its
//! edges into classes constrained to share a common length.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use thiserror::Error;

use crate::rational::{format_rat, rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` references unknown vertex `{1}`")]
    UnknownVertex(String, String),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge `{0}` has non-positive length {1}")]
    NonPositiveLength(String, String),
    #[error("weight-0 vertex `{0}` has valence {1} < 3")]
    Unstable(String, usize),
    #[error("metric graph is a circle; circles are excluded")]
    Circle,
    #[error("relation does not partition the edge set (problem near `{0}`)")]
    BadRelation(String),
    #[error("classes to contract are not a union of relation classes")]
    NotAClassUnion,
    #[error("missing length for edge `{0}`")]
    MissingLength(String),
    #[error("missing weight entry for vertex `{0}`")]
    MissingWeight(String),
}

/// Connected multigraph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_ids: Vec<String>,
    edge_ids: Vec<String>,
    ends: Vec<(usize, usize)>,
}

impl Graph {
    /// Build from vertex ids and `(edge id, end, end)` triples.
    /// Rejects duplicate ids, dangling endpoints, and disconnected input.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vindex = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.clone()));
            }
        }
        let mut edge_ids = Vec::with_capacity(edges.len());
        let mut ends = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (id, a, b) in edges {
            if !seen.insert(id.clone()) || vindex.contains_key(&id) && false {
                return Err(GraphError::DuplicateId(id));
            }
            let ai = *vindex
                .get(&a)
                .ok_or_else(|| GraphError::UnknownVertex(id.clone(), a.clone()))?;
            let bi = *vindex
                .get(&b)
                .ok_or_else(|| GraphError::UnknownVertex(id.clone(), b.clone()))?;
            edge_ids.push(id);
            ends.push((ai, bi));
        }
        let g = Graph {
            vertex_ids: vertices,
            edge_ids,
            ends,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edge_ids[e]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.edge_ids
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_ids.iter().position(|e| e == id)
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.ends[e].0 == self.ends[e].1
    }

    /// Valence with the loop-doubling convention: a loop at `v` counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.ends
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Indices of edges incident to `v` (a loop appears once).
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.n_edges())
            .filter(|&e| self.ends[e].0 == v || self.ends[e].1 == v)
            .collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.ends {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Edges whose removal disconnects the graph. Loops and parallel edges
    /// are never bridges.
    pub fn bridges(&self) -> BTreeSet<usize> {
        let n = self.n_vertices();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if a == b {
                continue;
            }
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut bridges = BTreeSet::new();
        let mut timer = 0usize;
        // iterative DFS carrying the entry edge index
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        while let Some(&mut (v, pe, ref mut it)) = stack.last_mut().as_deref_mut() {
            if *it < adj[v].len() {
                let (u, e) = adj[v][*it];
                *it += 1;
                if e == pe {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, e, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut().as_deref_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        bridges.insert(pe);
                    }
                }
            }
        }
        bridges
    }

    /// True iff the graph has an edge and no bridges.
    pub fn is_2_edge_connected(&self) -> bool {
        self.n_edges() >= 1 && self.bridges().is_empty()
    }

    /// Articulation vertices: removal disconnects the graph.
    pub fn cut_vertices(&self) -> BTreeSet<usize> {
        let n = self.n_vertices();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if a == b {
                continue;
            }
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut cut = BTreeSet::new();
        let mut timer = 0usize;
        let mut root_children = 0usize;
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        while let Some(&mut (v, pe, ref mut it)) = stack.last_mut().as_deref_mut() {
            if *it < adj[v].len() {
                let (u, e) = adj[v][*it];
                *it += 1;
                if e == pe {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((u, e, 0));
                } else {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut().as_deref_mut() {
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        cut.insert(p);
                    }
                }
            }
        }
        if root_children > 1 {
            cut.insert(0);
        }
        cut
    }
}

/// A model of a metric graph: multigraph plus exact positive edge lengths
/// and optional vertex weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    graph: Graph,
    lengths: Vec<Rat>,
    weights: Vec<u32>,
}

impl Model {
    /// Unweighted model. Rejects non-positive lengths and circle-shaped
    /// metric graphs (every vertex of valence 2 and weight 0).
    pub fn new(graph: Graph, lengths: Vec<Rat>) -> Result<Self, GraphError> {
        let weights = vec![0; graph.n_vertices()];
        Self::weighted(graph, lengths, weights)
    }

    /// Weighted model. In addition to the checks in [`Model::new`], enforces
    /// stability when any weight is set: every weight-0 vertex must have
    /// valence at least 3 (loops counting twice).
    pub fn weighted(
        graph: Graph,
        lengths: Vec<Rat>,
        weights: Vec<u32>,
    ) -> Result<Self, GraphError> {
        assert_eq!(lengths.len(), graph.n_edges());
        assert_eq!(weights.len(), graph.n_vertices());
        for (e, l) in lengths.iter().enumerate() {
            if *l <= Rat::zero() {
                return Err(GraphError::NonPositiveLength(
                    graph.edge_id(e).to_string(),
                    format_rat(l),
                ));
            }
        }
        if weights.iter().any(|&w| w > 0) {
            for v in 0..graph.n_vertices() {
                if weights[v] == 0 && graph.valence(v) < 3 {
                    return Err(GraphError::Unstable(
                        graph.vertex_id(v).to_string(),
                        graph.valence(v),
                    ));
                }
            }
        }
        // circle exclusion: every point has valence 2 and nothing marks one
        if graph.n_edges() >= 1
            && weights.iter().all(|&w| w == 0)
            && (0..graph.n_vertices()).all(|v| graph.valence(v) == 2)
        {
            return Err(GraphError::Circle);
        }
        Ok(Model {
            graph,
            lengths,
            weights,
        })
    }

    /// Construction path for derived objects (quotients) where the circle
    /// exclusion does not apply. Lengths must still be positive.
    pub(crate) fn from_parts_unchecked(graph: Graph, lengths: Vec<Rat>, weights: Vec<u32>) -> Self {
        debug_assert!(lengths.iter().all(|l| *l > Rat::zero()));
        Model {
            graph,
            lengths,
            weights,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn length(&self, e: usize) -> &Rat {
        &self.lengths[e]
    }

    pub fn lengths(&self) -> &[Rat] {
        &self.lengths
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn has_weights(&self) -> bool {
        self.weights.iter().any(|&w| w > 0)
    }

    /// |E| - |V| + 1 + sum of weights.
    pub fn genus(&self) -> usize {
        genus_of(&self.graph, &self.weights)
    }

    /// Unit-length model on the same weighted graph.
    pub fn unit(graph: Graph, weights: Vec<u32>) -> Result<Self, GraphError> {
        let lengths = vec![rat(1); graph.n_edges()];
        Self::weighted(graph, lengths, weights)
    }

    /// Replace each vertex weight w by w added loops of length 1 at that
    /// vertex; the result carries weight 0 everywhere.
    pub fn add_weight_loops(&self) -> Result<Model, GraphError> {
        if !self.has_weights() {
            return Ok(self.clone());
        }
        let mut vertices = self.graph.vertex_ids.clone();
        let mut edges: Vec<(String, String, String)> = Vec::new();
        for e in 0..self.graph.n_edges() {
            let (a, b) = self.graph.ends(e);
            edges.push((
                self.graph.edge_id(e).to_string(),
                vertices[a].clone(),
                vertices[b].clone(),
            ));
        }
        let mut lengths = self.lengths.clone();
        let used: BTreeSet<String> = self.graph.edge_ids.iter().cloned().collect();
        for v in 0..vertices.len() {
            for k in 0..self.weights[v] {
                let id = fresh_id(&used, &edges, &format!("{}_w{}", vertices[v], k + 1));
                edges.push((id, vertices[v].clone(), vertices[v].clone()));
                lengths.push(rat(1));
            }
        }
        let weights = vec![0; vertices.len()];
        let graph = Graph::new(std::mem::take(&mut vertices), edges)?;
        // adding loops can turn a weighted point into a bare circle
        if graph.n_edges() >= 1 && (0..graph.n_vertices()).all(|v| graph.valence(v) == 2) {
            return Err(GraphError::Circle);
        }
        Ok(Model::from_parts_unchecked(graph, lengths, weights))
    }

    /// The canonical loopless model of the underlying metric graph:
    /// weight-0 valence-2 chains are suppressed, then a midpoint vertex is
    /// placed inside every loop. Weighted vertices are kept.
    pub fn canonical_loopless_model(&self) -> Model {
        #[derive(Clone)]
        struct E {
            id: String,
            a: usize,
            b: usize,
            len: Rat,
        }
        let mut verts: Vec<(String, u32)> = self
            .graph
            .vertex_ids
            .iter()
            .cloned()
            .zip(self.weights.iter().cloned())
            .collect();
        let mut edges: Vec<E> = (0..self.graph.n_edges())
            .map(|e| {
                let (a, b) = self.graph.ends(e);
                E {
                    id: self.graph.edge_id(e).to_string(),
                    a,
                    b,
                    len: self.lengths[e].clone(),
                }
            })
            .collect();

        // suppress weight-0 valence-2 vertices, except loop midpoints
        // (two parallel incident edges of equal length)
        'outer: loop {
            for v in 0..verts.len() {
                if verts[v].1 != 0 {
                    continue;
                }
                let slots: Vec<usize> = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.a == v || e.b == v)
                    .map(|(i, _)| i)
                    .collect();
                if slots.len() != 2 {
                    continue;
                }
                let (i, j) = (slots[0], slots[1]);
                if edges[i].a == edges[i].b || edges[j].a == edges[j].b {
                    continue; // a loop at v: valence 2 means v has only that loop
                }
                let oi = if edges[i].a == v { edges[i].b } else { edges[i].a };
                let oj = if edges[j].a == v { edges[j].b } else { edges[j].a };
                if oi == oj && edges[i].len == edges[j].len {
                    continue; // already a midpoint
                }
                let id = if edges[i].id <= edges[j].id {
                    edges[i].id.clone()
                } else {
                    edges[j].id.clone()
                };
                let merged = E {
                    id,
                    a: oi,
                    b: oj,
                    len: edges[i].len.clone() + edges[j].len.clone(),
                };
                let (hi, lo) = (i.max(j), i.min(j));
                edges.remove(hi);
                edges.remove(lo);
                edges.push(merged);
                verts.remove(v);
                for e in edges.iter_mut() {
                    if e.a > v {
                        e.a -= 1;
                    }
                    if e.b > v {
                        e.b -= 1;
                    }
                }
                continue 'outer;
            }
            break;
        }

        // midpoint inside every loop
        let mut final_edges: Vec<E> = Vec::new();
        let loops: Vec<E> = edges.iter().filter(|e| e.a == e.b).cloned().collect();
        final_edges.extend(edges.into_iter().filter(|e| e.a != e.b));
        for l in loops {
            let mid = verts.len();
            let vids: BTreeSet<String> = verts.iter().map(|(id, _)| id.clone()).collect();
            let mut mid_id = format!("{}m", l.id);
            while vids.contains(&mid_id) {
                mid_id.push('\'');
            }
            verts.push((mid_id, 0));
            let half = l.len.clone() / rat(2);
            let eids: BTreeSet<String> = final_edges.iter().map(|e| e.id.clone()).collect();
            let mut ida = format!("{}a", l.id);
            while eids.contains(&ida) {
                ida.push('\'');
            }
            let mut idb = format!("{}b", l.id);
            while eids.contains(&idb) || idb == ida {
                idb.push('\'');
            }
            final_edges.push(E {
                id: ida,
                a: l.a,
                b: mid,
                len: half.clone(),
            });
            final_edges.push(E {
                id: idb,
                a: l.a,
                b: mid,
                len: half,
            });
        }

        let vertex_ids: Vec<String> = verts.iter().map(|(id, _)| id.clone()).collect();
        let weights: Vec<u32> = verts.iter().map(|(_, w)| *w).collect();
        let graph = Graph {
            vertex_ids,
            edge_ids: final_edges.iter().map(|e| e.id.clone()).collect(),
            ends: final_edges.iter().map(|e| (e.a, e.b)).collect(),
        };
        let lengths = final_edges.into_iter().map(|e| e.len).collect();
        Model::from_parts_unchecked(graph, lengths, weights)
    }

    /// Contract every bridge; merged vertices take the id of the smallest
    /// participant and the sum of weights.
    pub fn contract_bridges(&self) -> Model {
        self.contract_bridges_with_maps().0
    }

    /// Bridge contraction together with the vertex projection and the
    /// bijection from surviving old edges to new edges.
    pub(crate) fn contract_bridges_with_maps(
        &self,
    ) -> (Model, Vec<usize>, BTreeMap<usize, usize>) {
        let bridges = self.graph.bridges();
        if bridges.is_empty() {
            let ident_edges = (0..self.graph.n_edges()).map(|e| (e, e)).collect();
            return (
                self.clone(),
                (0..self.graph.n_vertices()).collect(),
                ident_edges,
            );
        }
        let mut uf = UnionFind::new(self.graph.n_vertices());
        let (graph, lengths, weights, edge_map) = contract_edges(
            &self.graph,
            &self.lengths,
            &self.weights,
            &bridges,
            &mut uf,
        );
        // recover the vertex projection from the union-find used above
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.graph.n_vertices() {
            members.entry(uf.find(v)).or_default().push(v);
        }
        let mut vmap = vec![0usize; self.graph.n_vertices()];
        for (new_idx, (_, mem)) in members.iter().enumerate() {
            for &v in mem {
                vmap[v] = new_idx;
            }
        }
        (
            Model::from_parts_unchecked(graph, lengths, weights),
            vmap,
            edge_map,
        )
    }
}

/// A combinatorial type with an edge-length constraint relation: weighted
/// stable graph plus a partition of the edges; edges in a common class are
/// required to have equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedType {
    graph: Graph,
    weights: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl ConstrainedType {
    pub fn new(
        graph: Graph,
        weights: Vec<u32>,
        mut classes: Vec<Vec<usize>>,
    ) -> Result<Self, GraphError> {
        assert_eq!(weights.len(), graph.n_vertices());
        for v in 0..graph.n_vertices() {
            if weights[v] == 0 && graph.valence(v) < 3 {
                return Err(GraphError::Unstable(
                    graph.vertex_id(v).to_string(),
                    graph.valence(v),
                ));
            }
        }
        let mut seen = vec![false; graph.n_edges()];
        for class in classes.iter_mut() {
            class.sort_unstable();
            for &e in class.iter() {
                if e >= graph.n_edges() || seen[e] {
                    return Err(GraphError::BadRelation(
                        graph
                            .edge_ids()
                            .get(e)
                            .cloned()
                            .unwrap_or_else(|| e.to_string()),
                    ));
                }
                seen[e] = true;
            }
        }
        if let Some(e) = seen.iter().position(|&s| !s) {
            return Err(GraphError::BadRelation(graph.edge_id(e).to_string()));
        }
        classes.sort();
        Ok(ConstrainedType {
            graph,
            weights,
            classes,
        })
    }

    /// All-singleton relation.
    pub fn with_trivial_relation(graph: Graph, weights: Vec<u32>) -> Result<Self, GraphError> {
        let classes = (0..graph.n_edges()).map(|e| vec![e]).collect();
        Self::new(graph, weights, classes)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Number of relation classes; this is the dimension of the moduli cell
    /// indexed by the type.
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }

    pub fn genus(&self) -> usize {
        genus_of(&self.graph, &self.weights)
    }

    /// Unit-length model on the same weighted graph.
    pub fn unit_model(&self) -> Result<Model, GraphError> {
        Model::unit(self.graph.clone(), self.weights.clone())
    }

    /// Contract the union of the given relation classes. Loop contraction
    /// adds 1 to the weight at its vertex; non-loop contraction merges the
    /// endpoints and sums their weights. Genus is preserved.
    pub fn contract(&self, class_indices: &BTreeSet<usize>) -> Result<ConstrainedType, GraphError> {
        for &c in class_indices {
            if c >= self.classes.len() {
                return Err(GraphError::NotAClassUnion);
            }
        }
        let mut contracted: BTreeSet<usize> = BTreeSet::new();
        for &c in class_indices {
            contracted.extend(self.classes[c].iter().copied());
        }
        let mut uf = UnionFind::new(self.graph.n_vertices());
        let (graph, _, weights, edge_map) = contract_edges(
            &self.graph,
            &vec![rat(1); self.graph.n_edges()],
            &self.weights,
            &contracted,
            &mut uf,
        );
        let mut classes = Vec::new();
        for (c, class) in self.classes.iter().enumerate() {
            if class_indices.contains(&c) {
                continue;
            }
            classes.push(class.iter().map(|&e| edge_map[&e]).collect());
        }
        let out = ConstrainedType::new(graph, weights, classes)?;
        debug_assert_eq!(out.genus(), self.genus());
        Ok(out)
    }
}

/// First Betti number plus total weight: |E| - |V| + 1 + sum w. The graph
/// is connected, so the value is never negative.
pub fn genus_of(graph: &Graph, weights: &[u32]) -> usize {
    let g = graph.n_edges() as i64 - graph.n_vertices() as i64
        + 1
        + weights.iter().map(|&w| w as i64).sum::<i64>();
    debug_assert!(g >= 0);
    g as usize
}

/// Shared contraction worker. Returns the contracted graph, surviving edge
/// lengths, merged weights, and the old-edge -> new-edge index map.
fn contract_edges(
    graph: &Graph,
    lengths: &[Rat],
    weights: &[u32],
    contracted: &BTreeSet<usize>,
    uf: &mut UnionFind,
) -> (Graph, Vec<Rat>, Vec<u32>, BTreeMap<usize, usize>) {
    let mut extra_weight = vec![0u32; graph.n_vertices()];
    for &e in contracted {
        let (a, b) = graph.ends(e);
        if uf.find(a) == uf.find(b) {
            extra_weight[uf.find(a)] += 1; // loop by now: delete, weight +1
        } else {
            uf.union(a, b);
        }
    }
    // re-root the extra weights after all unions
    let mut root_weight: BTreeMap<usize, u32> = BTreeMap::new();
    for v in 0..graph.n_vertices() {
        *root_weight.entry(uf.find(v)).or_insert(0) += weights[v] + extra_weight[v];
    }
    // surviving vertices: one per root, keeping the smallest member's id
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..graph.n_vertices() {
        members.entry(uf.find(v)).or_default().push(v);
    }
    let mut new_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertex_ids = Vec::new();
    let mut new_weights = Vec::new();
    for (root, mem) in &members {
        let keep = *mem
            .iter()
            .min_by_key(|&&v| graph.vertex_id(v).to_string())
            .unwrap();
        new_index.insert(*root, vertex_ids.len());
        vertex_ids.push(graph.vertex_id(keep).to_string());
        new_weights.push(root_weight[root]);
    }
    let mut edge_ids = Vec::new();
    let mut ends = Vec::new();
    let mut new_lengths = Vec::new();
    let mut edge_map = BTreeMap::new();
    for e in 0..graph.n_edges() {
        if contracted.contains(&e) {
            continue;
        }
        let (a, b) = graph.ends(e);
        edge_map.insert(e, edge_ids.len());
        edge_ids.push(graph.edge_id(e).to_string());
        ends.push((new_index[&uf.find(a)], new_index[&uf.find(b)]));
        new_lengths.push(lengths[e].clone());
    }
    (
        Graph {
            vertex_ids,
            edge_ids,
            ends,
        },
        new_lengths,
        new_weights,
        edge_map,
    )
}

fn fresh_id(
    used: &BTreeSet<String>,
    pending: &[(String, String, String)],
    base: &str,
) -> String {
    let mut id = base.to_string();
    while used.contains(&id) || pending.iter().any(|(e, _, _)| e == &id) {
        id.push('\'');
    }
    id
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root for deterministic merges
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
