//! Canonical labels and isomorphism enumeration for decorated multigraphs.
//!
//! The search is a Morgan-style color refinement followed by exhaustive
//! individualization over the stabilized cells, taking the minimum
//! certificate over all leaves. Intended for desk-scale graphs (at most a
//! few dozen vertices).

use std::collections::BTreeMap;

use crate::graph::{ConstrainedType, Model};
use crate::rational::Rat;

/// A multigraph with invariant vertex/edge colors and an optional edge
/// partition whose classes may be permuted by isomorphisms but must map to
/// classes.
#[derive(Debug, Clone)]
pub struct Decorated {
    pub n: usize,
    pub vertex_colors: Vec<u64>,
    pub edges: Vec<(usize, usize)>,
    pub edge_colors: Vec<u64>,
    pub partition: Option<Vec<usize>>,
}

impl Decorated {
    pub fn from_model(m: &Model) -> Decorated {
        let mut lengths: Vec<&Rat> = m.lengths().iter().collect();
        lengths.sort();
        lengths.dedup();
        let edge_colors = m
            .lengths()
            .iter()
            .map(|l| lengths.iter().position(|x| *x == l).unwrap() as u64)
            .collect();
        Decorated {
            n: m.graph().n_vertices(),
            vertex_colors: m.weights().iter().map(|&w| w as u64).collect(),
            edges: (0..m.graph().n_edges()).map(|e| m.graph().ends(e)).collect(),
            edge_colors,
            partition: None,
        }
    }

    /// Two models with a shared length-color table, so the pair can be fed
    /// to [`vertex_isomorphisms`].
    pub fn from_models_joint(a: &Model, b: &Model) -> (Decorated, Decorated) {
        let mut lengths: Vec<&Rat> = a.lengths().iter().chain(b.lengths().iter()).collect();
        lengths.sort();
        lengths.dedup();
        let color = |m: &Model| -> Vec<u64> {
            m.lengths()
                .iter()
                .map(|l| lengths.iter().position(|x| *x == l).unwrap() as u64)
                .collect()
        };
        let make = |m: &Model, colors: Vec<u64>| Decorated {
            n: m.graph().n_vertices(),
            vertex_colors: m.weights().iter().map(|&w| w as u64).collect(),
            edges: (0..m.graph().n_edges()).map(|e| m.graph().ends(e)).collect(),
            edge_colors: colors,
            partition: None,
        };
        (make(a, color(a)), make(b, color(b)))
    }

    /// Bare combinatorial graph (no lengths, no weights).
    pub fn from_graph(g: &crate::graph::Graph) -> Decorated {
        Decorated {
            n: g.n_vertices(),
            vertex_colors: vec![0; g.n_vertices()],
            edges: (0..g.n_edges()).map(|e| g.ends(e)).collect(),
            edge_colors: vec![0; g.n_edges()],
            partition: None,
        }
    }

    pub fn from_type(t: &ConstrainedType) -> Decorated {
        let mut class_of = vec![0usize; t.graph().n_edges()];
        for (c, class) in t.classes().iter().enumerate() {
            for &e in class {
                class_of[e] = c;
            }
        }
        let edge_colors = class_of
            .iter()
            .map(|&c| t.classes()[c].len() as u64)
            .collect();
        Decorated {
            n: t.graph().n_vertices(),
            vertex_colors: t.weights().iter().map(|&w| w as u64).collect(),
            edges: (0..t.graph().n_edges()).map(|e| t.graph().ends(e)).collect(),
            edge_colors,
            partition: Some(class_of),
        }
    }

    fn slots(&self) -> Vec<Vec<(usize, u64)>> {
        // v -> (other end, edge color); loops listed separately
        let mut out = vec![Vec::new(); self.n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                continue;
            }
            out[a].push((b, self.edge_colors[e]));
            out[b].push((a, self.edge_colors[e]));
        }
        out
    }

    fn loops_at(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new(); self.n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                out[a].push(self.edge_colors[e]);
            }
        }
        for l in out.iter_mut() {
            l.sort_unstable();
        }
        out
    }
}

/// Jointly refine vertex colors of several graphs so color ids are
/// comparable across them. Standard 1-dimensional refinement with edge
/// colors and loop multisets.
fn refine_joint(graphs: &[&Decorated], mut colors: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let slots: Vec<_> = graphs.iter().map(|g| g.slots()).collect();
    let loops: Vec<_> = graphs.iter().map(|g| g.loops_at()).collect();
    loop {
        let mut sigs: Vec<(Vec<u64>, usize, usize)> = Vec::new();
        for (gi, g) in graphs.iter().enumerate() {
            for v in 0..g.n {
                let mut nb: Vec<(u64, u64)> = slots[gi][v]
                    .iter()
                    .map(|&(u, ec)| (colors[gi][u], ec))
                    .collect();
                nb.sort_unstable();
                let mut sig = vec![colors[gi][v]];
                for (c, ec) in nb {
                    sig.push(c);
                    sig.push(ec);
                }
                sig.push(u64::MAX); // separator
                sig.extend(loops[gi][v].iter());
                sigs.push((sig, gi, v));
            }
        }
        let mut sorted: Vec<Vec<u64>> = sigs.iter().map(|(s, _, _)| s.clone()).collect();
        sorted.sort();
        sorted.dedup();
        let old_count = count_colors(&colors);
        for (sig, gi, v) in &sigs {
            colors[*gi][*v] = sorted.binary_search(sig).unwrap() as u64;
        }
        if count_colors(&colors) == old_count {
            return colors;
        }
    }
}

fn count_colors(colors: &[Vec<u64>]) -> usize {
    let mut all: Vec<u64> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Canonical label: equal for two decorated graphs iff they are isomorphic
/// preserving vertex colors and edge colors, with partition classes mapped
/// setwise onto partition classes.
pub fn canonical_label(g: &Decorated) -> String {
    let init = g.vertex_colors.clone();
    let mut best: Option<Vec<u64>> = None;
    search(g, init, &mut best);
    let cert = best.expect("graph has at least one vertex");
    let strings: Vec<String> = cert.iter().map(|x| x.to_string()).collect();
    strings.join(",")
}

fn search(g: &Decorated, colors: Vec<u64>, best: &mut Option<Vec<u64>>) {
    let colors = refine_joint(&[g], vec![colors]).pop().unwrap();
    let mut by_color: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for v in 0..g.n {
        by_color.entry(colors[v]).or_default().push(v);
    }
    if let Some((_, cell)) = by_color.iter().find(|(_, vs)| vs.len() > 1) {
        let cell = cell.clone();
        for v in cell {
            let mut c2: Vec<u64> = colors.iter().map(|&c| c * 2 + 1).collect();
            c2[v] -= 1;
            search(g, c2, best);
        }
        return;
    }
    // discrete coloring: position vertices by color rank
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| colors[v]);
    let mut pos = vec![0usize; g.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let cert = certificate(g, &pos);
    if best.is_none() || cert < *best.as_ref().unwrap() {
        *best = Some(cert);
    }
}

fn certificate(g: &Decorated, pos: &[usize]) -> Vec<u64> {
    let mut cert = vec![g.n as u64, g.edges.len() as u64];
    let mut vcol = vec![0u64; g.n];
    for v in 0..g.n {
        vcol[pos[v]] = g.vertex_colors[v];
    }
    cert.extend(vcol);
    // edge slots sorted by (endpoints, color)
    let mut slots: Vec<(u64, u64, u64, usize)> = g
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            let (x, y) = (pos[a].min(pos[b]) as u64, pos[a].max(pos[b]) as u64);
            (x, y, g.edge_colors[e], e)
        })
        .collect();
    slots.sort();
    for &(x, y, c, _) in &slots {
        cert.extend([x, y, c]);
    }
    if let Some(class_of) = &g.partition {
        // slots identical in (endpoints, color) may be ordered freely; pick
        // the ordering whose first-appearance class relabeling is least
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < slots.len() {
            let mut j = i;
            while j < slots.len()
                && (slots[j].0, slots[j].1, slots[j].2) == (slots[i].0, slots[i].1, slots[i].2)
            {
                j += 1;
            }
            groups.push(slots[i..j].iter().map(|&(_, _, _, e)| class_of[e]).collect());
            i = j;
        }
        cert.extend(min_class_sequence(&groups));
    }
    cert
}

/// Lexicographically least first-appearance relabeling of the class
/// sequence, over all orderings inside each tie group.
fn min_class_sequence(groups: &[Vec<usize>]) -> Vec<u64> {
    fn rec(
        groups: &[Vec<usize>],
        gi: usize,
        remaining: &mut Vec<usize>,
        relabel: &mut BTreeMap<usize, u64>,
        seq: &mut Vec<u64>,
        best: &mut Option<Vec<u64>>,
    ) {
        if let Some(b) = best.as_ref() {
            let k = seq.len().min(b.len());
            if seq.as_slice()[..k] > b[..k] {
                return;
            }
        }
        if remaining.is_empty() {
            if gi + 1 == groups.len() {
                if best.is_none() || seq < best.as_mut().unwrap() {
                    *best = Some(seq.clone());
                }
            } else {
                let mut next: Vec<usize> = groups[gi + 1].clone();
                next.sort_unstable();
                rec(groups, gi + 1, &mut next, relabel, seq, best);
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for k in 0..remaining.len() {
            let class = remaining[k];
            if tried.contains(&class) {
                continue;
            }
            tried.push(class);
            remaining.swap_remove(k);
            let fresh = !relabel.contains_key(&class);
            let next_id = relabel.len() as u64;
            let id = *relabel.entry(class).or_insert(next_id);
            seq.push(id);
            rec(groups, gi, remaining, relabel, seq, best);
            seq.pop();
            if fresh {
                relabel.remove(&class);
            }
            remaining.push(class);
            let last = remaining.len() - 1;
            remaining.swap(k, last);
        }
    }

    if groups.is_empty() {
        return Vec::new();
    }
    let mut best = None;
    let mut first: Vec<usize> = groups[0].clone();
    first.sort_unstable();
    rec(
        groups,
        0,
        &mut first,
        &mut BTreeMap::new(),
        &mut Vec::new(),
        &mut best,
    );
    best.unwrap_or_default()
}

/// All vertex bijections `a -> b` preserving vertex colors and, for every
/// mapped pair, the multiset of edge colors between them (and of loops).
pub fn vertex_isomorphisms(a: &Decorated, b: &Decorated) -> Vec<Vec<usize>> {
    if a.n != b.n || a.edges.len() != b.edges.len() {
        return Vec::new();
    }
    let refined = refine_joint(&[a, b], vec![a.vertex_colors.clone(), b.vertex_colors.clone()]);
    let (ca, cb) = (refined[0].clone(), refined[1].clone());
    let mut ma = ca.clone();
    let mut mb = cb.clone();
    ma.sort_unstable();
    mb.sort_unstable();
    if ma != mb {
        return Vec::new();
    }
    let loops_a = a.loops_at();
    let loops_b = b.loops_at();

    // rarest refined color first for early pruning
    let mut freq: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in ca.iter() {
        *freq.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| (freq[&ca[v]], ca[v], v));

    struct Ctx<'x> {
        a: &'x Decorated,
        b: &'x Decorated,
        ca: Vec<u64>,
        cb: Vec<u64>,
        order: Vec<usize>,
        loops_a: Vec<Vec<u64>>,
        loops_b: Vec<Vec<u64>>,
        out: Vec<Vec<usize>>,
    }

    fn pair_key(g: &Decorated, u: usize, v: usize) -> Vec<u64> {
        let mut k: Vec<u64> = g
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| (x, y) == (u, v) || (x, y) == (v, u))
            .map(|(e, _)| g.edge_colors[e])
            .collect();
        k.sort_unstable();
        k
    }

    fn rec(ctx: &mut Ctx, depth: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) {
        if depth == ctx.order.len() {
            ctx.out.push(map.clone());
            return;
        }
        let va = ctx.order[depth];
        for vb in 0..ctx.b.n {
            if used[vb] || ctx.ca[va] != ctx.cb[vb] || ctx.loops_a[va] != ctx.loops_b[vb] {
                continue;
            }
            let ok = ctx.order[..depth]
                .iter()
                .all(|&ua| pair_key(ctx.a, va, ua) == pair_key(ctx.b, vb, map[ua]));
            if !ok {
                continue;
            }
            map[va] = vb;
            used[vb] = true;
            rec(ctx, depth + 1, map, used);
            used[vb] = false;
            map[va] = usize::MAX;
        }
    }

    let mut ctx = Ctx {
        a,
        b,
        ca,
        cb,
        order,
        loops_a,
        loops_b,
        out: Vec::new(),
    };
    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    rec(&mut ctx, 0, &mut map, &mut used);
    ctx.out.sort();
    ctx.out
}

pub fn are_isomorphic(a: &Decorated, b: &Decorated) -> bool {
    !vertex_isomorphisms(a, b).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ConstrainedType, Graph, Model};
    use crate::rational::rat;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Graph {
        Graph::new(
            vs.iter().map(|s| s.to_string()).collect(),
            es.iter()
                .map(|(e, a, b)| (e.to_string(), a.to_string(), b.to_string()))
                .collect(),
        )
        .unwrap()
    }

    fn k4_type() -> ConstrainedType {
        let g = graph(
            &["v1", "v2", "v3", "v4"],
            &[
                ("a", "v1", "v2"),
                ("b", "v1", "v3"),
                ("c", "v1", "v4"),
                ("d", "v2", "v3"),
                ("e", "v2", "v4"),
                ("f", "v3", "v4"),
            ],
        );
        ConstrainedType::with_trivial_relation(g, vec![0; 4]).unwrap()
    }

    #[test]
    fn relabeling_invariance() {
        let base = k4_type();
        let label = canonical_label(&Decorated::from_type(&base));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut names: Vec<String> = (1..=4).map(|i| format!("w{}", i)).collect();
            names.shuffle(&mut rng);
            let g = graph(
                &[&names[0], &names[1], &names[2], &names[3]],
                &[
                    ("a", &names[0], &names[1]),
                    ("b", &names[0], &names[2]),
                    ("c", &names[0], &names[3]),
                    ("d", &names[1], &names[2]),
                    ("e", &names[1], &names[3]),
                    ("f", &names[2], &names[3]),
                ],
            );
            let t = ConstrainedType::with_trivial_relation(g, vec![0; 4]).unwrap();
            assert_eq!(canonical_label(&Decorated::from_type(&t)), label);
        }
    }

    #[test]
    fn relation_distinguishes() {
        let g = graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]);
        let paired =
            ConstrainedType::new(g.clone(), vec![0, 0], vec![vec![0, 1], vec![2]]).unwrap();
        let singles = ConstrainedType::with_trivial_relation(g, vec![0, 0]).unwrap();
        assert_ne!(
            canonical_label(&Decorated::from_type(&paired)),
            canonical_label(&Decorated::from_type(&singles))
        );
        // pairing {e1,e2} or {e1,e3} gives the same type
        let g2 = graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]);
        let paired2 = ConstrainedType::new(g2, vec![0, 0], vec![vec![0, 2], vec![1]]).unwrap();
        assert_eq!(
            canonical_label(&Decorated::from_type(&paired)),
            canonical_label(&Decorated::from_type(&paired2))
        );
    }

    #[test]
    fn theta_vs_loops() {
        let theta = graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]);
        let wedge = graph(
            &["u", "v"],
            &[("e1", "u", "u"), ("e2", "v", "v"), ("e3", "u", "v")],
        );
        let t1 = ConstrainedType::with_trivial_relation(theta, vec![0, 0]).unwrap();
        // the wedge is unstable at weight 0, give it weights
        let t2 = ConstrainedType::with_trivial_relation(wedge, vec![1, 1]).unwrap();
        assert_ne!(
            canonical_label(&Decorated::from_type(&t1)),
            canonical_label(&Decorated::from_type(&t2))
        );
    }

    #[test]
    fn weights_distinguish() {
        let g1 = graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]);
        let g2 = g1.clone();
        let t1 = ConstrainedType::with_trivial_relation(g1, vec![1, 0]).unwrap();
        let t2 = ConstrainedType::with_trivial_relation(g2, vec![0, 1]).unwrap();
        assert_eq!(
            canonical_label(&Decorated::from_type(&t1)),
            canonical_label(&Decorated::from_type(&t2))
        );
        let t3 = ConstrainedType::with_trivial_relation(
            graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]),
            vec![1, 1],
        )
        .unwrap();
        assert_ne!(
            canonical_label(&Decorated::from_type(&t1)),
            canonical_label(&Decorated::from_type(&t3))
        );
    }

    #[test]
    fn model_isomorphisms_count() {
        let b3 = Model::new(
            graph(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]),
            vec![rat(1), rat(1), rat(1)],
        )
        .unwrap();
        let d = Decorated::from_model(&b3);
        assert_eq!(vertex_isomorphisms(&d, &d).len(), 2);
        let k4 = Model::unit(
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
        .unwrap();
        let dk = Decorated::from_model(&k4);
        assert_eq!(vertex_isomorphisms(&dk, &dk).len(), 24);
    }
}
