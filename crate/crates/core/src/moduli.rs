//! Moduli cells of hyperelliptic tropical curves.
//!
//! Cells are constrained types (G, w, r); the dimension of a cell is the
//! number of relation classes. The 2-edge-connected locus in genus g is
//! pure of dimension 2g-1 with maximal cells the ladders L(T) over trees T
//! on g-1 vertices of maximum degree 3; the full hyperelliptic locus adds
//! bridges with singleton classes.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::canon::{canonical_label, Decorated};
use crate::graph::{ConstrainedType, Graph, GraphError, Model};
use crate::harmonic::{tree_quotient_involutions, HarmonicError};

#[derive(Debug, Error)]
pub enum ModuliError {
    #[error("genus {0} is outside the supported range {1}..={2}")]
    Range(usize, usize, usize),
    #[error("ladders are built over nontrivial trees of maximum degree 3")]
    NotALadderTree,
    #[error("cell poset is not closed under contraction (missing `{0}`)")]
    ClosureViolation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// A moduli cell: a constrained type with its canonical label.
#[derive(Debug, Clone)]
pub struct Cell {
    pub ctype: ConstrainedType,
    pub label: String,
    pub dimension: usize,
}

impl Cell {
    fn new(ctype: ConstrainedType) -> Cell {
        let label = canonical_label(&Decorated::from_type(&ctype));
        let dimension = ctype.dimension();
        Cell {
            ctype,
            label,
            dimension,
        }
    }
}

/// Cells grouped with their codimension-1 contraction relations.
#[derive(Debug, Clone)]
pub struct CellPoset {
    pub genus: usize,
    pub two_edge_connected: bool,
    /// sorted by (dimension, label)
    pub cells: Vec<Cell>,
    /// (lower, upper): lower is the contraction of upper by one class
    pub covers: Vec<(usize, usize)>,
}

impl CellPoset {
    /// Cell counts indexed by dimension 0..=max.
    pub fn f_vector(&self) -> Vec<usize> {
        let max = self.cells.iter().map(|c| c.dimension).max().unwrap_or(0);
        let mut f = vec![0usize; max + 1];
        for c in &self.cells {
            f[c.dimension] += 1;
        }
        f
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph cells {\n  rankdir=BT;\n");
        let mut by_dim: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            by_dim.entry(c.dimension).or_default().push(i);
            let t = &c.ctype;
            s.push_str(&format!(
                "  c{} [label=\"dim {}\\nV={} E={} w={:?}\"];\n",
                i,
                c.dimension,
                t.graph().n_vertices(),
                t.graph().n_edges(),
                t.weights(),
            ));
        }
        for (dim, ids) in &by_dim {
            let names: Vec<String> = ids.iter().map(|i| format!("c{}", i)).collect();
            s.push_str(&format!(
                "  {{ rank=same; /* dim {} */ {} }}\n",
                dim,
                names.join("; ")
            ));
        }
        for &(lo, hi) in &self.covers {
            s.push_str(&format!("  c{} -> c{};\n", lo, hi));
        }
        s.push_str("}\n");
        s
    }
}

/// All connected stable weighted multigraphs of the given genus, up to
/// isomorphism, as constrained types with the trivial relation.
pub fn enumerate_stable_types(genus: usize) -> Result<Vec<ConstrainedType>, ModuliError> {
    if !(2..=5).contains(&genus) {
        return Err(ModuliError::Range(genus, 2, 5));
    }
    let mut seen: BTreeMap<String, ConstrainedType> = BTreeMap::new();
    for total_weight in 0..=genus {
        let vmax = (2 * genus - 2 + total_weight).max(1);
        for v in 1..=vmax {
            let e = genus as i64 - 1 + v as i64 - total_weight as i64;
            if e < 0 {
                continue;
            }
            let e = e as usize;
            for weights in weight_vectors(v, total_weight) {
                enumerate_multigraphs(v, e, &weights, &mut |edges| {
                    if !connected(v, edges) {
                        return;
                    }
                    let graph = build_graph(v, edges);
                    if let Ok(t) = ConstrainedType::with_trivial_relation(graph, weights.clone())
                    {
                        let label = canonical_label(&Decorated::from_type(&t));
                        seen.entry(label).or_insert(t);
                    }
                });
            }
        }
    }
    Ok(seen.into_values().collect())
}

fn weight_vectors(v: usize, total: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; v];
    fn rec(i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left as u32;
            out.push(cur.clone());
            return;
        }
        for w in 0..=left {
            cur[i] = w as u32;
            rec(i + 1, left - w, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// Enumerate multigraphs on `v` vertices with exactly `e` edges such that
/// every weight-0 vertex ends with valence >= 3 (loops count twice).
/// Emits edge lists (loops as (i,i)).
fn enumerate_multigraphs(v: usize, e: usize, weights: &[u32], emit: &mut impl FnMut(&[(usize, usize)])) {
    // cells in row-major upper-triangular order, diagonal first
    let mut cells = Vec::new();
    for i in 0..v {
        cells.push((i, i));
        for j in (i + 1)..v {
            cells.push((i, j));
        }
    }
    let min_val: Vec<usize> = weights.iter().map(|&w| if w > 0 { 0 } else { 3 }).collect();
    let total_min: usize = min_val.iter().sum();
    if total_min > 2 * e {
        return;
    }
    // every vertex must leave room for the minimum valences of the others
    let max_val: Vec<usize> = (0..v).map(|i| 2 * e - (total_min - min_val[i])).collect();
    let mut valence = vec![0usize; v];
    let mut edges: Vec<(usize, usize)> = Vec::new();

    struct Ctx<'a> {
        cells: Vec<(usize, usize)>,
        v: usize,
        e: usize,
        min_val: &'a [usize],
        max_val: Vec<usize>,
    }

    fn rec(
        ctx: &Ctx,
        ci: usize,
        valence: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        emit: &mut impl FnMut(&[(usize, usize)]),
    ) {
        if ci == ctx.cells.len() {
            if edges.len() == ctx.e && (0..ctx.v).all(|i| valence[i] >= ctx.min_val[i]) {
                emit(edges);
            }
            return;
        }
        // deficit prune: remaining edge budget must cover unmet minima
        let budget = ctx.e - edges.len();
        let deficit: usize = (0..ctx.v)
            .map(|i| ctx.min_val[i].saturating_sub(valence[i]))
            .sum();
        if deficit > 2 * budget {
            return;
        }
        let (i, j) = ctx.cells[ci];
        let row_ends = j == ctx.v - 1 || (i == ctx.v - 1 && i == j);
        let per = if i == j { 2 } else { 1 };
        let cap_i = (ctx.max_val[i] - valence[i]) / per;
        let cap_j = if i == j {
            usize::MAX
        } else {
            ctx.max_val[j] - valence[j]
        };
        let max_mult = budget.min(cap_i).min(cap_j);
        for mult in 0..=max_mult {
            if mult > 0 {
                for _ in 0..mult {
                    edges.push((i, j));
                }
                valence[i] += per * mult;
                if i != j {
                    valence[j] += mult;
                }
            }
            let i_ok = !row_ends || valence[i] >= ctx.min_val[i];
            if i_ok {
                rec(ctx, ci + 1, valence, edges, emit);
            }
            if mult > 0 {
                for _ in 0..mult {
                    edges.pop();
                }
                valence[i] -= per * mult;
                if i != j {
                    valence[j] -= mult;
                }
            }
        }
    }

    let ctx = Ctx {
        cells,
        v,
        e,
        min_val: &min_val,
        max_val,
    };
    rec(&ctx, 0, &mut valence, &mut edges, emit);
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    if v == 0 {
        return false;
    }
    let mut uf = crate::graph::UnionFind::new(v);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let root = uf.find(0);
    (1..v).all(|i| uf.find(i) == root)
}

fn build_graph(v: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(
        (0..v).map(|i| format!("v{}", i)).collect(),
        edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| (format!("e{}", k), format!("v{}", a), format!("v{}", b)))
            .collect(),
    )
    .expect("enumerated graph is connected and well formed")
}

/// The constraint relation induced on E(G) by the hyperelliptic structure
/// of the bridgeless stable type (G, w), or `None` if the type is not
/// hyperelliptic. Two non-loop edges are equivalent iff the witness
/// involution of the loopless expansion exchanges them; loops are
/// singletons. A bare two-vertex banana (no weights) has no morphism and
/// gets the all-singleton relation.
pub fn hyperelliptic_relation(
    graph: &Graph,
    weights: &[u32],
) -> Result<Option<Vec<Vec<usize>>>, ModuliError> {
    debug_assert!(graph.bridges().is_empty());
    let m = Model::unit(graph.clone(), weights.to_vec())?;
    let expanded = m.add_weight_loops()?;
    let cl = expanded.canonical_loopless_model();
    if cl.graph().n_vertices() <= 2 {
        // two-vertex loopless expansion: the banana; trivial relation
        return Ok(Some((0..graph.n_edges()).map(|e| vec![e]).collect()));
    }
    let witnesses = tree_quotient_involutions(&cl);
    let Some((inv, _, _)) = witnesses.first() else {
        return Ok(None);
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut placed = vec![false; graph.n_edges()];
    for e in 0..graph.n_edges() {
        if placed[e] {
            continue;
        }
        if graph.is_loop(e) {
            placed[e] = true;
            classes.push(vec![e]);
            continue;
        }
        let cl_e = cl
            .graph()
            .edge_index(graph.edge_id(e))
            .expect("non-loop edges survive into the loopless expansion");
        let img = inv.emap[cl_e];
        if img == cl_e {
            placed[e] = true;
            classes.push(vec![e]);
        } else {
            let partner_id = cl.graph().edge_id(img);
            let partner = graph
                .edge_index(partner_id)
                .expect("witness pairs model edges with model edges");
            placed[e] = true;
            placed[partner] = true;
            classes.push(vec![e.min(partner), e.max(partner)]);
        }
    }
    Ok(Some(classes))
}

/// The 2-edge-connected hyperelliptic cells of the given genus: stable
/// bridgeless types whose loopless expansion carries a degree-2 harmonic
/// morphism to a tree (or is a banana), with the induced relation.
pub fn enumerate_h2(genus: usize) -> Result<CellPoset, ModuliError> {
    if !(3..=5).contains(&genus) {
        return Err(ModuliError::Range(genus, 3, 5));
    }
    let mut cells = Vec::new();
    for t in enumerate_stable_types(genus)? {
        if !t.graph().bridges().is_empty() {
            continue;
        }
        if let Some(classes) = hyperelliptic_relation(t.graph(), t.weights())? {
            let ctype = ConstrainedType::new(t.graph().clone(), t.weights().to_vec(), classes)?;
            cells.push(Cell::new(ctype));
        }
    }
    finish_poset(genus, true, cells)
}

/// The hyperelliptic cells of the given genus: stable types whose
/// bridge-contraction is 2-edge-connected hyperelliptic; bridges form
/// singleton classes.
pub fn enumerate_h(genus: usize) -> Result<CellPoset, ModuliError> {
    if !(3..=4).contains(&genus) {
        return Err(ModuliError::Range(genus, 3, 4));
    }
    let mut cells = Vec::new();
    for t in enumerate_stable_types(genus)? {
        let bridges = t.graph().bridges();
        let contracted = t.contract(&bridges.iter().copied().collect::<BTreeSet<_>>())?;
        debug_assert!(contracted.graph().bridges().is_empty());
        let Some(sub_classes) =
            hyperelliptic_relation(contracted.graph(), contracted.weights())?
        else {
            continue;
        };
        // lift: bridges are singletons; other classes pull back by edge id
        let mut classes: Vec<Vec<usize>> = bridges.iter().map(|&b| vec![b]).collect();
        for class in sub_classes {
            classes.push(
                class
                    .iter()
                    .map(|&ce| {
                        t.graph()
                            .edge_index(contracted.graph().edge_id(ce))
                            .expect("contraction preserves non-bridge edge ids")
                    })
                    .collect(),
            );
        }
        let ctype = ConstrainedType::new(t.graph().clone(), t.weights().to_vec(), classes)?;
        cells.push(Cell::new(ctype));
    }
    finish_poset(genus, false, cells)
}

fn finish_poset(
    genus: usize,
    two_edge_connected: bool,
    mut cells: Vec<Cell>,
) -> Result<CellPoset, ModuliError> {
    cells.sort_by(|a, b| (a.dimension, &a.label).cmp(&(b.dimension, &b.label)));
    cells.dedup_by(|a, b| a.label == b.label);
    let index: BTreeMap<&String, usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.label, i))
        .collect();
    let mut covers = BTreeSet::new();
    for (upper, cell) in cells.iter().enumerate() {
        for c in 0..cell.ctype.dimension() {
            let contracted = cell.ctype.contract(&BTreeSet::from([c]))?;
            let label = canonical_label(&Decorated::from_type(&contracted));
            match index.get(&label) {
                Some(&lower) => {
                    covers.insert((lower, upper));
                }
                None => return Err(ModuliError::ClosureViolation(label)),
            }
        }
    }
    Ok(CellPoset {
        genus,
        two_edge_connected,
        cells,
        covers: covers.into_iter().collect(),
    })
}

/// The ladder L(T) of a nontrivial tree with maximum degree 3: two copies
/// of T, two rungs at each leaf pair and one rung at each degree-2 pair.
/// Every vertex of the result is trivalent.
pub fn ladder(tree: &Graph) -> Result<Graph, ModuliError> {
    let n = tree.n_vertices();
    if n < 2 || tree.n_edges() + 1 != n {
        return Err(ModuliError::NotALadderTree);
    }
    if (0..n).any(|v| tree.valence(v) > 3) {
        return Err(ModuliError::NotALadderTree);
    }
    let mut vertices = Vec::new();
    for v in 0..n {
        vertices.push(tree.vertex_id(v).to_string());
    }
    for v in 0..n {
        vertices.push(format!("{}*", tree.vertex_id(v)));
    }
    let mut edges = Vec::new();
    for e in 0..tree.n_edges() {
        let (a, b) = tree.ends(e);
        edges.push((
            tree.edge_id(e).to_string(),
            tree.vertex_id(a).to_string(),
            tree.vertex_id(b).to_string(),
        ));
        edges.push((
            format!("{}*", tree.edge_id(e)),
            format!("{}*", tree.vertex_id(a)),
            format!("{}*", tree.vertex_id(b)),
        ));
    }
    for v in 0..n {
        let id = tree.vertex_id(v);
        match tree.valence(v) {
            1 => {
                edges.push((format!("{}_r1", id), id.to_string(), format!("{}*", id)));
                edges.push((format!("{}_r2", id), id.to_string(), format!("{}*", id)));
            }
            2 => {
                edges.push((format!("{}_r", id), id.to_string(), format!("{}*", id)));
            }
            _ => {}
        }
    }
    Ok(Graph::new(vertices, edges)?)
}

/// All trees on `n` unlabeled vertices with maximum degree 3, up to
/// isomorphism, by centroid-rooted generation.
pub fn trees_max_deg3(n: usize) -> Vec<Graph> {
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
    struct RTree {
        size: usize,
        children: Vec<RTree>, // sorted
    }

    fn leaf() -> RTree {
        RTree {
            size: 1,
            children: Vec::new(),
        }
    }

    /// rooted trees with `n` nodes where the root has at most `cap`
    /// children and every other node at most 2 (so free degree <= 3)
    fn rooted(n: usize, cap: usize, memo: &mut BTreeMap<(usize, usize), Vec<RTree>>) -> Vec<RTree> {
        if n == 1 {
            return vec![leaf()];
        }
        if let Some(v) = memo.get(&(n, cap)) {
            return v.clone();
        }
        let mut out = Vec::new();
        // choose a nondecreasing multiset of child trees summing to n-1
        fn extend(
            remaining: usize,
            slots: usize,
            min_child: &Option<RTree>,
            acc: &mut Vec<RTree>,
            out: &mut Vec<RTree>,
            memo: &mut BTreeMap<(usize, usize), Vec<RTree>>,
            total: usize,
        ) {
            if remaining == 0 {
                out.push(RTree {
                    size: total,
                    children: acc.clone(),
                });
                return;
            }
            if slots == 0 {
                return;
            }
            for s in 1..=remaining {
                for child in rooted(s, 2, memo) {
                    if let Some(m) = min_child {
                        if (child.size, &child) < (m.size, m) {
                            continue;
                        }
                    }
                    acc.push(child.clone());
                    extend(remaining - s, slots - 1, &Some(child), acc, out, memo, total);
                    acc.pop();
                }
            }
        }
        let mut acc = Vec::new();
        extend(n - 1, cap, &None, &mut acc, &mut out, memo, n);
        out.sort();
        out.dedup();
        memo.insert((n, cap), out.clone());
        out
    }

    fn to_graph_free(r: &RTree) -> Graph {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        fn walk(
            t: &RTree,
            parent: Option<usize>,
            vertices: &mut Vec<String>,
            edges: &mut Vec<(String, String, String)>,
        ) -> usize {
            let id = vertices.len();
            vertices.push(format!("t{}", id));
            if let Some(p) = parent {
                edges.push((
                    format!("e{}", edges.len()),
                    format!("t{}", p),
                    format!("t{}", id),
                ));
            }
            for c in &t.children {
                walk(c, Some(id), vertices, edges);
            }
            id
        }
        walk(r, None, &mut vertices, &mut edges);
        Graph::new(vertices, edges).expect("trees are connected")
    }

    fn pair_graph(a: &RTree, b: &RTree) -> Graph {
        // two halves joined by a central edge
        let root = RTree {
            size: a.size + b.size,
            children: vec![b.clone()],
        };
        // rebuild: a's children under the root of a, plus the edge to b
        let combined = RTree {
            size: a.size + b.size,
            children: {
                let mut c = a.children.clone();
                c.push(root.children[0].clone());
                c.sort();
                c
            },
        };
        to_graph_free(&combined)
    }

    let mut memo = BTreeMap::new();
    let mut out: BTreeMap<String, Graph> = BTreeMap::new();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let g = Graph::new(vec!["t0".to_string()], vec![]).unwrap();
        return vec![g];
    }
    if n % 2 == 1 {
        let bound = (n - 1) / 2;
        for t in rooted(n, 3, &mut memo) {
            if t.children.iter().all(|c| c.size <= bound) {
                let g = to_graph_free(&t);
                out.entry(tree_label(&g)).or_insert(g);
            }
        }
    } else {
        let bound = n / 2 - 1;
        for t in rooted(n, 3, &mut memo) {
            if t.children.iter().all(|c| c.size <= bound) {
                let g = to_graph_free(&t);
                out.entry(tree_label(&g)).or_insert(g);
            }
        }
        // bicentral: an edge joining two halves of exactly n/2 nodes, each
        // half root keeping degree <= 3 (2 children + the central edge)
        let halves = rooted(n / 2, 2, &mut memo);
        for (i, a) in halves.iter().enumerate() {
            for b in halves.iter().skip(i) {
                let g = pair_graph(a, b);
                out.entry(tree_label(&g)).or_insert(g);
            }
        }
    }
    out.into_values().collect()
}

fn tree_label(g: &Graph) -> String {
    canonical_label(&Decorated::from_graph(g))
}

/// Maximal cells of the 2-edge-connected hyperelliptic locus: one ladder
/// cell per tree on genus-1 vertices with maximum degree 3. The relation
/// pairs the two rails over each tree edge; rungs are singletons.
pub fn maximal_cells(genus: usize) -> Result<Vec<Cell>, ModuliError> {
    if genus < 3 {
        return Err(ModuliError::Range(genus, 3, usize::MAX));
    }
    let mut out = Vec::new();
    for tree in trees_max_deg3(genus - 1) {
        let lad = ladder(&tree)?;
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut placed = vec![false; lad.n_edges()];
        for e in 0..tree.n_edges() {
            let id = tree.edge_id(e);
            let a = lad.edge_index(id).unwrap();
            let b = lad.edge_index(&format!("{}*", id)).unwrap();
            classes.push(vec![a.min(b), a.max(b)]);
            placed[a] = true;
            placed[b] = true;
        }
        for e in 0..lad.n_edges() {
            if !placed[e] {
                classes.push(vec![e]);
            }
        }
        let weights = vec![0; lad.n_vertices()];
        let ctype = ConstrainedType::new(lad, weights, classes)?;
        debug_assert_eq!(ctype.dimension(), 2 * genus - 1);
        out.push(Cell::new(ctype));
    }
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}
