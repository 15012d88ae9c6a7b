//! Unimodular triangulations of the Newton triangle with vertices (0,0),
//! (2g+2,0), (0,2), their dual plane tropical curves, cores, and
//! standard-ladder certificates.
//!
//! The census of triangulations whose dual curve has a bridgeless core is
//! generated structurally: the interior lattice points force a fan from the
//! apex and a maximally triangulated height-1 trapezoid at the bottom, with
//! four cases according to which of the two steep apex edges appear. An
//! independent frontier enumeration of all unimodular triangulations plus a
//! bridge filter cross-checks the structural generator at desk scale.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Model};
use crate::rational::Rat;

pub type Pt = (i64, i64);

#[derive(Debug, Error)]
pub enum NewtonError {
    #[error("genus {0} is outside the supported range {1}..={2}")]
    Range(usize, usize, usize),
    #[error("invalid trapezoid parameters: require a < b and c < d")]
    BadTrapezoid,
    #[error("triangulation is not regular; no strictly convex lift exists")]
    NotRegular,
    #[error("heights do not induce the triangulation")]
    WrongLift,
    #[error("the bounded part is contractible; the core is undefined")]
    GenusZero,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A triangulation of a convex lattice polygon into unit-area triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTriangulation {
    pub polygon: Vec<Pt>,
    pub triangles: Vec<[Pt; 3]>,
}

impl LatticeTriangulation {
    fn new(polygon: Vec<Pt>, mut triangles: Vec<[Pt; 3]>) -> LatticeTriangulation {
        for t in triangles.iter_mut() {
            t.sort();
        }
        triangles.sort();
        LatticeTriangulation { polygon, triangles }
    }

    /// Public constructor normalizing triangle order.
    pub fn from_parts(polygon: Vec<Pt>, triangles: Vec<[Pt; 3]>) -> LatticeTriangulation {
        LatticeTriangulation::new(polygon, triangles)
    }

    /// Deterministic text encoding, useful as a set key.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self
            .triangles
            .iter()
            .map(|t| {
                t.iter()
                    .map(|p| format!("{},{}", p.0, p.1))
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .collect();
        parts.join("|")
    }
}

/// The Newton triangle (0,0), (2g+2,0), (0,2).
pub fn newton_triangle(genus: usize) -> Vec<Pt> {
    vec![(0, 0), (2 * genus as i64 + 2, 0), (0, 2)]
}

fn det(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn is_unimodular(t: &[Pt; 3]) -> bool {
    det(t[0], t[1], t[2]).abs() == 1
}

/// Twice the polygon area (shoelace; vertices in order).
fn polygon_area2(poly: &[Pt]) -> i64 {
    let n = poly.len();
    let mut s = 0i64;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        s += a.0 * b.1 - a.1 * b.0;
    }
    s.abs()
}

/// All lattice points inside or on the convex polygon (vertices CCW).
pub fn lattice_points(poly: &[Pt]) -> Vec<Pt> {
    let xs: Vec<i64> = poly.iter().map(|p| p.0).collect();
    let ys: Vec<i64> = poly.iter().map(|p| p.1).collect();
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = (x, y);
            let inside = (0..poly.len()).all(|i| {
                let a = poly[i];
                let b = poly[(i + 1) % poly.len()];
                det(a, b, p) >= 0
            });
            if inside {
                out.push(p);
            }
        }
    }
    out
}

/// Exact tiling check: unit-area triangles inside the polygon, pairwise
/// interior-disjoint, with the right total area.
pub fn is_unimodular_tiling(t: &LatticeTriangulation) -> bool {
    if !t.triangles.iter().all(is_unimodular) {
        return false;
    }
    if t.triangles.len() as i64 != polygon_area2(&t.polygon) {
        return false;
    }
    let points = lattice_points(&t.polygon);
    let point_set: BTreeSet<Pt> = points.iter().copied().collect();
    for tri in &t.triangles {
        if tri.iter().any(|p| !point_set.contains(p)) {
            return false;
        }
    }
    for (i, a) in t.triangles.iter().enumerate() {
        for b in t.triangles.iter().skip(i + 1) {
            if triangles_overlap(a, b) {
                return false;
            }
        }
    }
    true
}

/// Separating-axis test for closed triangles: true iff interiors intersect.
fn triangles_overlap(a: &[Pt; 3], b: &[Pt; 3]) -> bool {
    let axes = |t: &[Pt; 3]| -> Vec<(Pt, Pt)> {
        vec![(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
    };
    for (p, q) in axes(a).into_iter().chain(axes(b)) {
        let n = (-(q.1 - p.1), q.0 - p.0);
        let proj = |t: &[Pt; 3]| -> (i64, i64) {
            let vals: Vec<i64> = t.iter().map(|v| n.0 * v.0 + n.1 * v.1).collect();
            (*vals.iter().min().unwrap(), *vals.iter().max().unwrap())
        };
        let (amin, amax) = proj(a);
        let (bmin, bmax) = proj(b);
        if amax <= bmin || bmax <= amin {
            return false;
        }
    }
    true
}

/// All unimodular triangulations of the height-1 trapezoid with corners
/// (a,0), (b,0), (c,1), (d,1). Each is a staircase of nonhorizontal edges
/// from {(a,0),(c,1)} to {(b,0),(d,1)}, advancing the bottom or the top by
/// one step at a time; there are C(b-a+d-c, b-a) of them.
pub fn trapezoid_triangulations(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
) -> Result<Vec<LatticeTriangulation>, NewtonError> {
    if a >= b || c >= d {
        return Err(NewtonError::BadTrapezoid);
    }
    let polygon = vec![(a, 0), (b, 0), (d, 1), (c, 1)];
    let bottom_steps = (b - a) as usize;
    let top_steps = (d - c) as usize;
    let total = bottom_steps + top_steps;
    let mut out = Vec::new();
    // choose which of the `total` steps advance the bottom
    let mut choice = vec![false; total];
    fn rec(
        choice: &mut Vec<bool>,
        i: usize,
        bottom_left: usize,
        top_left: usize,
        a: i64,
        c: i64,
        polygon: &[Pt],
        out: &mut Vec<LatticeTriangulation>,
    ) {
        if bottom_left == 0 && top_left == 0 {
            let mut triangles = Vec::new();
            let (mut x, mut y) = (a, c);
            for &adv_bottom in choice.iter() {
                if adv_bottom {
                    triangles.push([(x, 0), (x + 1, 0), (y, 1)]);
                    x += 1;
                } else {
                    triangles.push([(x, 0), (y, 1), (y + 1, 1)]);
                    y += 1;
                }
            }
            out.push(LatticeTriangulation::new(polygon.to_vec(), triangles));
            return;
        }
        if bottom_left > 0 {
            choice[i] = true;
            rec(choice, i + 1, bottom_left - 1, top_left, a, c, polygon, out);
        }
        if top_left > 0 {
            choice[i] = false;
            rec(choice, i + 1, bottom_left, top_left - 1, a, c, polygon, out);
        }
    }
    rec(
        &mut choice,
        0,
        bottom_steps,
        top_steps,
        a,
        c,
        &polygon,
        &mut out,
    );
    Ok(out)
}

/// One entry of the bridgeless-core census.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    /// whether the steep left edge {(0,2),(1,0)} is used
    pub uses_left_steep: bool,
    /// whether the steep right edge {(0,2),(2g+1,0)} is used
    pub uses_right_steep: bool,
    pub triangulation: LatticeTriangulation,
}

/// All unimodular triangulations of the Newton triangle whose dual curve
/// has a bridgeless core, generated structurally: the apex fan over the
/// interior lattice points is forced, the bottom is a maximally
/// triangulated height-1 trapezoid, and four cases arise from the two
/// steep apex edges (each forcing its corner configuration).
pub fn bridgeless_core_triangulations(genus: usize) -> Result<Vec<CensusEntry>, NewtonError> {
    if !(3..=6).contains(&genus) {
        return Err(NewtonError::Range(genus, 3, 6));
    }
    let g = genus as i64;
    let polygon = newton_triangle(genus);
    let mut out = Vec::new();
    for uses_left in [false, true] {
        for uses_right in [false, true] {
            let mut fixed: Vec<[Pt; 3]> = Vec::new();
            // middle fan over interior points
            for i in 1..g {
                fixed.push([(0, 2), (i, 1), (i + 1, 1)]);
            }
            let (a, c) = if uses_left {
                fixed.push([(0, 2), (0, 1), (1, 0)]);
                fixed.push([(0, 1), (0, 0), (1, 0)]);
                fixed.push([(0, 2), (1, 0), (1, 1)]);
                (1, 1)
            } else {
                fixed.push([(0, 2), (0, 1), (1, 1)]);
                (0, 0)
            };
            let (b, d) = if uses_right {
                fixed.push([(0, 2), (g, 1), (2 * g + 1, 0)]);
                fixed.push([(0, 2), (2 * g + 1, 0), (g + 1, 1)]);
                fixed.push([(g + 1, 1), (2 * g + 1, 0), (2 * g + 2, 0)]);
                (2 * g + 1, g)
            } else {
                fixed.push([(0, 2), (g, 1), (g + 1, 1)]);
                (2 * g + 2, g + 1)
            };
            for trap in trapezoid_triangulations(a, b, c, d)? {
                let mut triangles = fixed.clone();
                triangles.extend(trap.triangles.iter().copied());
                let t = LatticeTriangulation::new(polygon.clone(), triangles);
                out.push(CensusEntry {
                    uses_left_steep: uses_left,
                    uses_right_steep: uses_right,
                    triangulation: t,
                });
            }
        }
    }
    Ok(out)
}

/// Brute-force enumeration of all unimodular triangulations of a convex
/// lattice polygon (vertices CCW), by an advancing frontier: repeatedly
/// take the smallest open boundary edge and attach every compatible
/// unit-area triangle on its interior side.
pub fn all_unimodular_triangulations(polygon: &[Pt]) -> Vec<LatticeTriangulation> {
    let points = lattice_points(polygon);
    // boundary as unit steps between consecutive lattice points, CCW
    let mut boundary: BTreeMap<(Pt, Pt), i64> = BTreeMap::new();
    let n = polygon.len();
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        let d = (b.0 - a.0, b.1 - a.1);
        let g = gcd(d.0.abs(), d.1.abs());
        let step = (d.0 / g, d.1 / g);
        let mut cur = a;
        while cur != b {
            let next = (cur.0 + step.0, cur.1 + step.1);
            *boundary.entry((cur, next)).or_insert(0) += 1;
            cur = next;
        }
    }
    let mut out = Vec::new();
    let mut triangles = Vec::new();
    frontier_search(&points, &mut boundary, &mut triangles, &mut out, polygon);
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn frontier_search(
    points: &[Pt],
    boundary: &mut BTreeMap<(Pt, Pt), i64>,
    triangles: &mut Vec<[Pt; 3]>,
    out: &mut Vec<LatticeTriangulation>,
    polygon: &[Pt],
) {
    let Some((&(a, b), _)) = boundary.iter().next() else {
        out.push(LatticeTriangulation::new(polygon.to_vec(), triangles.clone()));
        return;
    };
    for &p in points {
        if det(a, b, p) != 1 {
            continue; // p must lie strictly left, with unit area
        }
        // the two new sides must not cross the current frontier
        if crosses_frontier(boundary, a, p) || crosses_frontier(boundary, p, b) {
            continue;
        }
        remove_edge(boundary, (a, b));
        let e1 = add_edge(boundary, (a, p));
        let e2 = add_edge(boundary, (p, b));
        triangles.push([a, b, p]);
        frontier_search(points, boundary, triangles, out, polygon);
        triangles.pop();
        undo_edge(boundary, (a, p), e1);
        undo_edge(boundary, (p, b), e2);
        *boundary.entry((a, b)).or_insert(0) += 1;
    }
}

/// Adding a directed edge cancels its reverse when present. Returns what
/// happened so the change can be undone.
fn add_edge(boundary: &mut BTreeMap<(Pt, Pt), i64>, e: (Pt, Pt)) -> bool {
    let rev = (e.1, e.0);
    if boundary.get(&rev).copied().unwrap_or(0) > 0 {
        remove_edge(boundary, rev);
        true
    } else {
        *boundary.entry(e).or_insert(0) += 1;
        false
    }
}

fn undo_edge(boundary: &mut BTreeMap<(Pt, Pt), i64>, e: (Pt, Pt), cancelled_reverse: bool) {
    if cancelled_reverse {
        *boundary.entry((e.1, e.0)).or_insert(0) += 1;
    } else {
        remove_edge(boundary, e);
    }
}

fn remove_edge(boundary: &mut BTreeMap<(Pt, Pt), i64>, e: (Pt, Pt)) {
    let c = boundary.get_mut(&e).expect("edge present");
    *c -= 1;
    if *c == 0 {
        boundary.remove(&e);
    }
}

/// Does segment (a,b) properly cross any frontier segment?
fn crosses_frontier(boundary: &BTreeMap<(Pt, Pt), i64>, a: Pt, b: Pt) -> bool {
    for (&(p, q), _) in boundary.iter() {
        if properly_cross(a, b, p, q) {
            return true;
        }
    }
    false
}

/// Segments properly cross: intersect in a single interior point of both.
fn properly_cross(a: Pt, b: Pt, p: Pt, q: Pt) -> bool {
    if a == p || a == q || b == p || b == q {
        return false;
    }
    let d1 = det(a, b, p).signum();
    let d2 = det(a, b, q).signum();
    let d3 = det(p, q, a).signum();
    let d4 = det(p, q, b).signum();
    d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0
}

/// Triangle adjacency (dual graph of the bounded part) as an edge list.
fn dual_adjacency(t: &LatticeTriangulation) -> Vec<(usize, usize, (Pt, Pt))> {
    let mut by_edge: BTreeMap<(Pt, Pt), Vec<usize>> = BTreeMap::new();
    for (i, tri) in t.triangles.iter().enumerate() {
        for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
            let key = if a <= b { (a, b) } else { (b, a) };
            by_edge.entry(key).or_default().push(i);
        }
    }
    let mut out = Vec::new();
    for (edge, tris) in by_edge {
        if tris.len() == 2 {
            out.push((tris[0], tris[1], edge));
        }
    }
    out
}

/// Iteratively prune valence-1 nodes from the bounded dual graph; the core
/// is bridgeless iff what remains has no bridge.
pub fn core_is_bridgeless(t: &LatticeTriangulation) -> bool {
    let n = t.triangles.len();
    let adj = dual_adjacency(t);
    let mut alive_edge = vec![true; adj.len()];
    let mut alive = vec![true; n];
    loop {
        let mut degree = vec![0usize; n];
        for (k, &(a, b, _)) in adj.iter().enumerate() {
            if alive_edge[k] && alive[a] && alive[b] {
                degree[a] += 1;
                degree[b] += 1;
            }
        }
        let mut pruned = false;
        for v in 0..n {
            if alive[v] && degree[v] <= 1 {
                alive[v] = false;
                pruned = true;
            }
        }
        for (k, &(a, b, _)) in adj.iter().enumerate() {
            if alive_edge[k] && (!alive[a] || !alive[b]) {
                alive_edge[k] = false;
            }
        }
        if !pruned {
            break;
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if nodes.is_empty() {
        return false;
    }
    let reindex: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(String, String, String)> = adj
        .iter()
        .enumerate()
        .filter(|(k, &(a, b, _))| alive_edge[*k] && alive[a] && alive[b])
        .map(|(k, &(a, b, _))| {
            (
                format!("d{}", k),
                format!("t{}", reindex[&a]),
                format!("t{}", reindex[&b]),
            )
        })
        .collect();
    let vertices: Vec<String> = (0..nodes.len()).map(|i| format!("t{}", i)).collect();
    match Graph::new(vertices, edges) {
        Ok(g) => g.bridges().is_empty() && g.n_edges() > 0,
        Err(_) => false, // pruning disconnected the remainder
    }
}

/// A strictly convex lift inducing the triangulation as its lower hull,
/// found by exact linear feasibility over the fold inequalities. Errors
/// with [`NewtonError::NotRegular`] when no lift exists.
pub fn regular_lift(t: &LatticeTriangulation) -> Result<BTreeMap<Pt, Rat>, NewtonError> {
    let points = lattice_points(&t.polygon);
    let pindex: BTreeMap<Pt, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let np = points.len();
    // fold constraint per interior edge: the opposite vertex of one side
    // must lift strictly above the affine span of the other side
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (t1, t2, edge) in dual_adjacency(t) {
        let (p, q) = edge;
        let r = *t.triangles[t1].iter().find(|&&v| v != p && v != q).unwrap();
        let s = *t.triangles[t2].iter().find(|&&v| v != p && v != q).unwrap();
        // affine coordinates of s with respect to triangle (p, q, r):
        // s = alpha p + beta q + gamma r, alpha + beta + gamma = 1;
        // integral because the triangle is unimodular
        let d = det(p, q, r);
        let gamma_num = det(p, q, s);
        let alpha_num = det(s, q, r);
        let beta_num = det(p, s, r);
        debug_assert_eq!(alpha_num + beta_num + gamma_num, d);
        let mut row = vec![Rat::zero(); np];
        row[pindex[&s]] += Rat::one();
        let dr = Rat::from_integer(d.into());
        row[pindex[&p]] -= Rat::from_integer(alpha_num.into()) / dr.clone();
        row[pindex[&q]] -= Rat::from_integer(beta_num.into()) / dr.clone();
        row[pindex[&r]] -= Rat::from_integer(gamma_num.into()) / dr;
        rows.push(row);
    }
    let heights = if rows.is_empty() {
        vec![Rat::zero(); np]
    } else {
        match feasible_point(&rows) {
            Some(h) => h,
            None => return Err(NewtonError::NotRegular),
        }
    };
    let map: BTreeMap<Pt, Rat> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, heights[i].clone()))
        .collect();
    if !lift_induces(t, &map) {
        return Err(NewtonError::WrongLift);
    }
    Ok(map)
}

/// Does the lift induce exactly this triangulation as its lower hull?
/// Definitional check: every lattice point not in a triangle lies strictly
/// above that triangle's lifted plane.
pub fn lift_induces(t: &LatticeTriangulation, heights: &BTreeMap<Pt, Rat>) -> bool {
    let points = lattice_points(&t.polygon);
    for tri in &t.triangles {
        let [p, q, r] = *tri;
        let d = det(p, q, r);
        let dr = Rat::from_integer(d.into());
        for &s in &points {
            if s == p || s == q || s == r {
                continue;
            }
            let alpha = Rat::from_integer(det(s, q, r).into()) / dr.clone();
            let beta = Rat::from_integer(det(p, s, r).into()) / dr.clone();
            let gamma = Rat::from_integer(det(p, q, s).into()) / dr.clone();
            let plane = alpha * heights[&p].clone()
                + beta * heights[&q].clone()
                + gamma * heights[&r].clone();
            if heights[&s] <= plane {
                return false;
            }
        }
    }
    true
}

/// Find x with `rows * x >= 1` componentwise (the system is homogeneous in
/// x, so >= 1 is equivalent to > 0), or None. Exact phase-1 simplex with
/// Bland's rule; x is free and split into positive and negative parts.
fn feasible_point(rows: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let m = rows.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let np = rows[0].len();
    // columns: u (np), w (np), slack (m), artificial (m)
    let ncols = 2 * np + 2 * m;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut r = vec![Rat::zero(); ncols + 1];
        for (j, c) in row.iter().enumerate() {
            r[j] = c.clone();
            r[np + j] = -c.clone();
        }
        r[2 * np + i] = -Rat::one(); // surplus
        r[2 * np + m + i] = Rat::one(); // artificial
        r[ncols] = Rat::one(); // rhs
        tab.push(r);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * np + m + i).collect();
    // objective: minimize sum of artificials; reduced costs row
    let mut cost = vec![Rat::zero(); ncols + 1];
    for i in 0..m {
        for j in 0..=ncols {
            let v = tab[i][j].clone();
            cost[j] -= v;
        }
    }
    for j in 2 * np + m..ncols {
        cost[j] += Rat::one();
    }
    loop {
        // Bland: first column with negative reduced cost
        let Some(enter) = (0..ncols).find(|&j| cost[j] < Rat::zero()) else {
            break;
        };
        // ratio test, Bland tie-break by smallest basis variable
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if tab[i][enter] > Rat::zero() {
                let ratio = tab[i][ncols].clone() / tab[i][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            return None; // unbounded phase-1 cannot happen; defensive
        };
        // pivot
        let piv = tab[li][enter].clone();
        for j in 0..=ncols {
            tab[li][j] = tab[li][j].clone() / piv.clone();
        }
        for i in 0..m {
            if i != li && !tab[i][enter].is_zero() {
                let f = tab[i][enter].clone();
                for j in 0..=ncols {
                    let v = tab[li][j].clone() * f.clone();
                    tab[i][j] -= v;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..=ncols {
                let v = tab[li][j].clone() * f.clone();
                cost[j] -= v;
            }
        }
        basis[li] = enter;
    }
    // feasible iff no artificial remains positive
    let obj: Rat = (0..m)
        .filter(|&i| basis[i] >= 2 * np + m)
        .map(|i| tab[i][ncols].clone())
        .fold(Rat::zero(), |a, b| a + b);
    if !obj.is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); 2 * np];
    for i in 0..m {
        if basis[i] < 2 * np {
            x[basis[i]] = tab[i][ncols].clone();
        }
    }
    Some((0..np).map(|j| x[j].clone() - x[np + j].clone()).collect())
}

/// The plane tropical curve dual to a lifted unimodular triangulation:
/// one vertex per triangle, a bounded edge per interior edge, a ray per
/// boundary edge; exact rational coordinates throughout.
#[derive(Debug, Clone)]
pub struct EmbeddedCurve {
    pub triangles: Vec<[Pt; 3]>,
    pub vertices: Vec<(Rat, Rat)>,
    pub bounded_edges: Vec<BoundedEdge>,
    pub rays: Vec<Ray>,
}

#[derive(Debug, Clone)]
pub struct BoundedEdge {
    pub t1: usize,
    pub t2: usize,
    /// primitive direction from the vertex of t1 toward the vertex of t2
    pub direction: Pt,
    /// the integer multiple k with displacement = k * direction, as an
    /// exact rational of the lift
    pub lattice_length: Rat,
}

#[derive(Debug, Clone)]
pub struct Ray {
    pub t: usize,
    pub direction: Pt,
}

pub fn dual_curve(
    t: &LatticeTriangulation,
    heights: &BTreeMap<Pt, Rat>,
) -> Result<EmbeddedCurve, NewtonError> {
    if !lift_induces(t, heights) {
        return Err(NewtonError::WrongLift);
    }
    // vertex of a triangle: the point where its three lifted forms agree
    let mut vertices = Vec::new();
    for tri in &t.triangles {
        let [p, q, r] = *tri;
        // (p - q) . x = h_q - h_p ; (p - r) . x = h_r - h_p
        let a11 = Rat::from_integer((p.0 - q.0).into());
        let a12 = Rat::from_integer((p.1 - q.1).into());
        let a21 = Rat::from_integer((p.0 - r.0).into());
        let a22 = Rat::from_integer((p.1 - r.1).into());
        let b1 = heights[&q].clone() - heights[&p].clone();
        let b2 = heights[&r].clone() - heights[&p].clone();
        let dd = a11.clone() * a22.clone() - a12.clone() * a21.clone();
        let x = (b1.clone() * a22 - b2.clone() * a12) / dd.clone();
        let y = (a11 * b2 - a21 * b1) / dd;
        vertices.push((x, y));
    }
    let mut bounded_edges = Vec::new();
    for (t1, t2, (p, q)) in dual_adjacency(t) {
        let dir = (-(q.1 - p.1), q.0 - p.0); // primitive: triangulation edges are primitive
        let dx = vertices[t2].0.clone() - vertices[t1].0.clone();
        let dy = vertices[t2].1.clone() - vertices[t1].1.clone();
        // displacement = k * dir
        let k = if dir.0 != 0 {
            dx.clone() / Rat::from_integer(dir.0.into())
        } else {
            dy.clone() / Rat::from_integer(dir.1.into())
        };
        debug_assert_eq!(dx, k.clone() * Rat::from_integer(dir.0.into()));
        debug_assert_eq!(dy, k.clone() * Rat::from_integer(dir.1.into()));
        let (direction, lattice_length) = if k.is_negative() {
            ((-dir.0, -dir.1), -k)
        } else {
            (dir, k)
        };
        bounded_edges.push(BoundedEdge {
            t1,
            t2,
            direction,
            lattice_length,
        });
    }
    // rays from boundary edges
    let mut by_edge: BTreeMap<(Pt, Pt), Vec<usize>> = BTreeMap::new();
    for (i, tri) in t.triangles.iter().enumerate() {
        for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
            let key = if a <= b { (a, b) } else { (b, a) };
            by_edge.entry(key).or_default().push(i);
        }
    }
    let mut rays = Vec::new();
    for ((p, q), tris) in by_edge {
        if tris.len() != 1 {
            continue;
        }
        let ti = tris[0];
        let r = *t.triangles[ti].iter().find(|&&v| v != p && v != q).unwrap();
        let mut dir = (-(q.1 - p.1), q.0 - p.0);
        // the third form must grow along the ray
        if (r.0 - p.0) * dir.0 + (r.1 - p.1) * dir.1 < 0 {
            dir = (-dir.0, -dir.1);
        }
        rays.push(Ray { t: ti, direction: dir });
    }
    Ok(EmbeddedCurve {
        triangles: t.triangles.clone(),
        vertices,
        bounded_edges,
        rays,
    })
}

/// The core of a tropical curve: rays removed, then leaf segments pruned to
/// a fixpoint. Keeps the plane coordinates of the surviving vertices.
#[derive(Debug, Clone)]
pub struct Core {
    pub model: Model,
    pub coords: Option<BTreeMap<String, (Rat, Rat)>>,
}

pub fn core_of_curve(curve: &EmbeddedCurve) -> Result<Core, NewtonError> {
    let n = curve.vertices.len();
    let mut alive = vec![true; n];
    let mut alive_edge = vec![true; curve.bounded_edges.len()];
    loop {
        let mut degree = vec![0usize; n];
        for (k, e) in curve.bounded_edges.iter().enumerate() {
            if alive_edge[k] && alive[e.t1] && alive[e.t2] {
                degree[e.t1] += 1;
                degree[e.t2] += 1;
            }
        }
        let mut pruned = false;
        for v in 0..n {
            if alive[v] && degree[v] <= 1 {
                alive[v] = false;
                pruned = true;
            }
        }
        for (k, e) in curve.bounded_edges.iter().enumerate() {
            if alive_edge[k] && (!alive[e.t1] || !alive[e.t2]) {
                alive_edge[k] = false;
            }
        }
        if !pruned {
            break;
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if nodes.is_empty() {
        return Err(NewtonError::GenusZero);
    }
    let name = |v: usize| format!("t{}", v);
    let vertices: Vec<String> = nodes.iter().map(|&v| name(v)).collect();
    let mut edges = Vec::new();
    let mut lengths = Vec::new();
    for (k, e) in curve.bounded_edges.iter().enumerate() {
        if alive_edge[k] {
            edges.push((format!("d{}", k), name(e.t1), name(e.t2)));
            lengths.push(e.lattice_length.clone());
        }
    }
    let weights = vec![0; vertices.len()];
    let graph = Graph::new(vertices, edges)?;
    let model = Model::from_parts_unchecked(graph, lengths, weights);
    if model.genus() == 0 {
        return Err(NewtonError::GenusZero);
    }
    let coords = nodes
        .iter()
        .map(|&v| (name(v), curve.vertices[v].clone()))
        .collect();
    Ok(Core {
        model,
        coords: Some(coords),
    })
}

/// Core of an abstract metric graph: leaf edges pruned to a fixpoint.
pub fn core_of_model(m: &Model) -> Result<Core, NewtonError> {
    if m.genus() == 0 {
        return Err(NewtonError::GenusZero);
    }
    let g = m.graph();
    let n = g.n_vertices();
    let mut alive = vec![true; n];
    let mut alive_edge = vec![true; g.n_edges()];
    loop {
        let mut valence = vec![0usize; n];
        for e in 0..g.n_edges() {
            if !alive_edge[e] {
                continue;
            }
            let (a, b) = g.ends(e);
            if alive[a] && alive[b] {
                if a == b {
                    valence[a] += 2;
                } else {
                    valence[a] += 1;
                    valence[b] += 1;
                }
            }
        }
        let mut pruned = false;
        for v in 0..n {
            if alive[v] && valence[v] == 1 {
                alive[v] = false;
                pruned = true;
            }
        }
        for e in 0..g.n_edges() {
            let (a, b) = g.ends(e);
            if alive_edge[e] && (!alive[a] || !alive[b]) {
                alive_edge[e] = false;
            }
        }
        if !pruned {
            break;
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if nodes.is_empty() {
        return Err(NewtonError::GenusZero);
    }
    let vertices: Vec<String> = nodes.iter().map(|&v| g.vertex_id(v).to_string()).collect();
    let mut edges = Vec::new();
    let mut lengths = Vec::new();
    for e in 0..g.n_edges() {
        if alive_edge[e] {
            let (a, b) = g.ends(e);
            edges.push((
                g.edge_id(e).to_string(),
                g.vertex_id(a).to_string(),
                g.vertex_id(b).to_string(),
            ));
            lengths.push(m.length(e).clone());
        }
    }
    let weights = vec![0; vertices.len()];
    let graph = Graph::new(vertices, edges)?;
    let model = Model::from_parts_unchecked(graph, lengths, weights);
    Ok(Core {
        model,
        coords: None,
    })
}

/// Certificate that a core is the standard ladder of the given genus with
/// opposite rails of exactly equal lattice length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderCertificate {
    pub is_standard_ladder: bool,
    pub opposite_sides_equal: bool,
    pub bridgeless: bool,
}

/// Check combinatorial isomorphism of the (valence-2-suppressed) core with
/// the ladder over the path on genus-1 vertices, equality of opposite rail
/// lengths, and (when plane coordinates are available) verticality of the
/// rungs. All checks are exact; failure yields a negative certificate.
pub fn certify_standard_ladder(core: &Core, genus: usize) -> LadderCertificate {
    let bridgeless = core.model.graph().bridges().is_empty();
    let suppressed = core.model.canonical_loopless_model();
    let negative = LadderCertificate {
        is_standard_ladder: false,
        opposite_sides_equal: false,
        bridgeless,
    };
    if genus < 3 {
        return negative;
    }
    // the path on genus-1 vertices and its ladder
    let n = genus - 1;
    let path = Graph::new(
        (0..n).map(|i| format!("p{}", i)).collect(),
        (0..n - 1)
            .map(|i| (format!("q{}", i), format!("p{}", i), format!("p{}", i + 1)))
            .collect(),
    )
    .expect("path");
    let Ok(ladder) = crate::moduli::ladder(&path) else {
        return negative;
    };
    let dl = crate::canon::Decorated::from_graph(&ladder);
    let dc = crate::canon::Decorated::from_graph(suppressed.graph());
    let vmaps = crate::canon::vertex_isomorphisms(&dl, &dc);
    if vmaps.is_empty() {
        return negative;
    }
    // try each isomorphism: rails must match in length pairwise; with
    // coordinates the rungs must be vertical
    let find_edge = |u: usize, v: usize| -> Option<usize> {
        (0..suppressed.graph().n_edges()).find(|&e| {
            let (a, b) = suppressed.graph().ends(e);
            (a, b) == (u, v) || (a, b) == (v, u)
        })
    };
    let sg = suppressed.graph();
    for vmap in &vmaps {
        let mut ok = true;
        for i in 0..n.saturating_sub(1) {
            let a = ladder.vertex_index(&format!("p{}", i)).unwrap();
            let b = ladder.vertex_index(&format!("p{}", i + 1)).unwrap();
            let a2 = ladder.vertex_index(&format!("p{}*", i)).unwrap();
            let b2 = ladder.vertex_index(&format!("p{}*", i + 1)).unwrap();
            let (Some(e1), Some(e2)) = (
                find_edge(vmap[a], vmap[b]),
                find_edge(vmap[a2], vmap[b2]),
            ) else {
                ok = false;
                break;
            };
            if suppressed.length(e1) != suppressed.length(e2) {
                ok = false;
                break;
            }
        }
        if ok {
            if let Some(coords) = &core.coords {
                for i in 0..n {
                    let a = ladder.vertex_index(&format!("p{}", i)).unwrap();
                    let a2 = ladder.vertex_index(&format!("p{}*", i)).unwrap();
                    let ca = &coords[sg.vertex_id(vmap[a])];
                    let cb = &coords[sg.vertex_id(vmap[a2])];
                    if ca.0 != cb.0 {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if ok {
            return LadderCertificate {
                is_standard_ladder: true,
                opposite_sides_equal: true,
                bridgeless,
            };
        }
    }
    LadderCertificate {
        is_standard_ladder: true,
        opposite_sides_equal: false,
        bridgeless,
    }
}

/// SVG rendering of an embedded curve with its core drawn thick.
pub fn curve_to_svg(curve: &EmbeddedCurve) -> String {
    use crate::rational::decimal_string;
    let core = core_of_curve(curve).ok();
    let core_edges: BTreeSet<(usize, usize)> = match &core {
        Some(c) => {
            let g = c.model.graph();
            (0..g.n_edges())
                .map(|e| {
                    let (a, b) = g.ends(e);
                    let pa: usize = g.vertex_id(a)[1..].parse().unwrap();
                    let pb: usize = g.vertex_id(b)[1..].parse().unwrap();
                    (pa.min(pb), pa.max(pb))
                })
                .collect()
        }
        None => BTreeSet::new(),
    };
    let ray_len = Rat::from_integer(2.into());
    let mut min_x = Rat::zero();
    let mut max_x = Rat::zero();
    let mut min_y = Rat::zero();
    let mut max_y = Rat::zero();
    let mut first = true;
    let mut consider = |x: &Rat, y: &Rat| {
        if first {
            min_x = x.clone();
            max_x = x.clone();
            min_y = y.clone();
            max_y = y.clone();
            first = false;
        } else {
            if *x < min_x {
                min_x = x.clone();
            }
            if *x > max_x {
                max_x = x.clone();
            }
            if *y < min_y {
                min_y = y.clone();
            }
            if *y > max_y {
                max_y = y.clone();
            }
        }
    };
    for (x, y) in &curve.vertices {
        consider(x, y);
    }
    for ray in &curve.rays {
        let (x, y) = &curve.vertices[ray.t];
        let ex = x.clone() + ray_len.clone() * Rat::from_integer(ray.direction.0.into());
        let ey = y.clone() + ray_len.clone() * Rat::from_integer(ray.direction.1.into());
        consider(&ex, &ey);
    }
    let pad = Rat::one();
    let w = max_x.clone() - min_x.clone() + pad.clone() + pad.clone();
    let h = max_y.clone() - min_y.clone() + pad.clone() + pad.clone();
    let sx = |x: &Rat| decimal_string(&((x.clone() - min_x.clone() + pad.clone()) * Rat::from_integer(40.into())), 2);
    // svg y axis points down
    let sy = |y: &Rat| decimal_string(&((max_y.clone() - y.clone() + pad.clone()) * Rat::from_integer(40.into())), 2);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n",
        decimal_string(&(w * Rat::from_integer(40.into())), 2),
        decimal_string(&(h * Rat::from_integer(40.into())), 2),
    );
    for ray in &curve.rays {
        let (x, y) = &curve.vertices[ray.t];
        let ex = x.clone() + ray_len.clone() * Rat::from_integer(ray.direction.0.into());
        let ey = y.clone() + ray_len.clone() * Rat::from_integer(ray.direction.1.into());
        s.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\" stroke-width=\"1\"/>\n",
            sx(x), sy(y), sx(&ex), sy(&ey)
        ));
    }
    for e in &curve.bounded_edges {
        let (x1, y1) = &curve.vertices[e.t1];
        let (x2, y2) = &curve.vertices[e.t2];
        let is_core = core_edges.contains(&(e.t1.min(e.t2), e.t1.max(e.t2)));
        let (color, width) = if is_core { ("#000", 3) } else { ("#555", 1) };
        s.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
            sx(x1), sy(y1), sx(x2), sy(y2), color, width
        ));
    }
    for (x, y) in &curve.vertices {
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"#000\"/>\n",
            sx(x), sy(y)
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Breadth-limited sample of census indices for large genera, seeded and
/// deterministic.
pub fn sample_indices(total: usize, want: usize, seed: u64) -> Vec<usize> {
    if want >= total {
        return (0..total).collect();
    }
    // splitmix64 stream over indices
    let mut picked = BTreeSet::new();
    let mut state = seed;
    while picked.len() < want {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        picked.insert((z % total as u64) as usize);
    }
    picked.into_iter().collect()
}

/// Queue-based connectivity of the pruned dual, used in tests.
#[allow(dead_code)]
fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut q = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = q.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    q.push_back(u);
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_counts() {
        assert_eq!(trapezoid_triangulations(0, 1, 0, 1).unwrap().len(), 2);
        assert_eq!(trapezoid_triangulations(0, 2, 0, 1).unwrap().len(), 3);
        for t in trapezoid_triangulations(0, 2, 0, 1).unwrap() {
            assert!(is_unimodular_tiling(&t));
            // nonhorizontal edge count = (b-a) + (d-c) + 1
            let nonhoriz: BTreeSet<(Pt, Pt)> = t
                .triangles
                .iter()
                .flat_map(|tri| {
                    [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])]
                })
                .filter(|(a, b)| a.1 != b.1)
                .collect();
            assert_eq!(nonhoriz.len(), 4);
        }
    }

    #[test]
    fn census_counts_genus_3() {
        let census = bridgeless_core_triangulations(3).unwrap();
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
        assert_eq!((neither, one, both), (495, 240, 28));
        assert_eq!(census.len(), 763);
    }

    #[test]
    fn census_members_are_valid_and_bridgeless() {
        let census = bridgeless_core_triangulations(3).unwrap();
        for entry in census.iter().step_by(37) {
            assert!(is_unimodular_tiling(&entry.triangulation));
            assert!(core_is_bridgeless(&entry.triangulation));
        }
    }

    #[test]
    fn brute_force_trapezoid_matches_binomial() {
        for (a, b, c, d) in [(0i64, 2i64, 0i64, 2i64), (0, 3, 0, 1), (0, 1, 0, 3), (0, 2, 0, 3)] {
            let fast = trapezoid_triangulations(a, b, c, d).unwrap();
            let slow = all_unimodular_triangulations(&[(a, 0), (b, 0), (d, 1), (c, 1)]);
            let fast_keys: BTreeSet<String> = fast.iter().map(|t| t.key()).collect();
            let slow_keys: BTreeSet<String> = slow.iter().map(|t| t.key()).collect();
            assert_eq!(fast_keys, slow_keys);
        }
    }

    #[test]
    fn regular_lift_single_triangle_and_trapezoid() {
        let single = LatticeTriangulation::new(
            vec![(0, 0), (1, 0), (0, 1)],
            vec![[(0, 0), (1, 0), (0, 1)]],
        );
        let h = regular_lift(&single).unwrap();
        assert!(lift_induces(&single, &h));

        for t in trapezoid_triangulations(0, 2, 0, 1).unwrap() {
            let h = regular_lift(&t).unwrap();
            assert!(lift_induces(&t, &h));
        }
    }

    #[test]
    fn dual_curve_geometry() {
        // one unimodular triangle with zero heights: vertex at the origin,
        // three rays
        let single = LatticeTriangulation::new(
            vec![(0, 0), (1, 0), (0, 1)],
            vec![[(0, 0), (1, 0), (0, 1)]],
        );
        let mut h = BTreeMap::new();
        for p in lattice_points(&single.polygon) {
            h.insert(p, Rat::zero());
        }
        let curve = dual_curve(&single, &h).unwrap();
        assert_eq!(curve.vertices.len(), 1);
        assert_eq!(curve.vertices[0], (Rat::zero(), Rat::zero()));
        assert_eq!(curve.rays.len(), 3);
        assert_eq!(curve.bounded_edges.len(), 0);
        // min-plus convention: the tropical line has rays east, north, and
        // southwest
        let dirs: BTreeSet<Pt> = curve.rays.iter().map(|r| r.direction).collect();
        assert_eq!(dirs, BTreeSet::from([(1, 0), (0, 1), (-1, -1)]));
    }

    #[test]
    fn lattice_length_is_primitive_multiple() {
        // displacement (3,6) along primitive (1,2) has lattice length 3
        let disp = (Rat::from_integer(3.into()), Rat::from_integer(6.into()));
        let dir = (1i64, 2i64);
        let k = disp.0.clone() / Rat::from_integer(dir.0.into());
        assert_eq!(k, Rat::from_integer(3.into()));
        assert_eq!(disp.1, k * Rat::from_integer(dir.1.into()));
    }

    #[test]
    fn pipeline_one_member() {
        let census = bridgeless_core_triangulations(3).unwrap();
        let entry = &census[0];
        let h = regular_lift(&entry.triangulation).unwrap();
        let curve = dual_curve(&entry.triangulation, &h).unwrap();
        let core = core_of_curve(&curve).unwrap();
        assert_eq!(core.model.genus(), 3);
        let cert = certify_standard_ladder(&core, 3);
        assert!(cert.is_standard_ladder);
        assert!(cert.opposite_sides_equal);
        assert!(cert.bridgeless);
    }

    #[test]
    fn core_of_model_prunes_leaves() {
        use crate::rational::rat;
        // theta with a pendant path: core is the theta
        let g = Graph::new(
            vec!["u", "v", "x", "y"].into_iter().map(String::from).collect(),
            vec![
                ("e1".to_string(), "u".to_string(), "v".to_string()),
                ("e2".to_string(), "u".to_string(), "v".to_string()),
                ("e3".to_string(), "u".to_string(), "v".to_string()),
                ("p1".to_string(), "v".to_string(), "x".to_string()),
                ("p2".to_string(), "x".to_string(), "y".to_string()),
            ],
        )
        .unwrap();
        let m = Model::new(g, vec![rat(1); 5]).unwrap();
        let core = core_of_model(&m).unwrap();
        assert_eq!(core.model.graph().n_vertices(), 2);
        assert_eq!(core.model.graph().n_edges(), 3);
        // idempotent
        let again = core_of_model(&core.model).unwrap();
        assert_eq!(again.model.graph().n_edges(), 3);
        // a tree has no core
        let tree = Model::new(
            Graph::new(
                vec!["a".to_string(), "b".to_string()],
                vec![("e".to_string(), "a".to_string(), "b".to_string())],
            )
            .unwrap(),
            vec![rat(1)],
        )
        .unwrap();
        assert!(matches!(core_of_model(&tree), Err(NewtonError::GenusZero)));
    }

    #[test]
    fn k4_core_is_not_a_ladder() {
        use crate::rational::rat;
        let g = Graph::new(
            vec!["v1", "v2", "v3", "v4"].into_iter().map(String::from).collect(),
            vec![
                ("a", "v1", "v2"),
                ("b", "v1", "v3"),
                ("c", "v1", "v4"),
                ("d", "v2", "v3"),
                ("e", "v2", "v4"),
                ("f", "v3", "v4"),
            ]
            .into_iter()
            .map(|(e, a, b)| (e.to_string(), a.to_string(), b.to_string()))
            .collect(),
        )
        .unwrap();
        let m = Model::new(g, vec![rat(1); 6]).unwrap();
        let core = core_of_model(&m).unwrap();
        let cert = certify_standard_ladder(&core, 3);
        assert!(!cert.is_standard_ladder);
        assert!(cert.bridgeless);
    }
}
