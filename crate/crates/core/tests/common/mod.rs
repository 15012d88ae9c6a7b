//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles here deliberately avoid the library's reduction path: linear
//! equivalence is decided by solving the reduced Laplacian system exactly
//! over the rationals and checking integrality, and rank is computed from
//! the definition with that equivalence test.

use std::collections::BTreeMap;

use hyperell::graph::{Graph, Model};
use hyperell::rational::{rat, Rat};
use num::Zero;

pub fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Graph {
    Graph::new(
        vs.iter().map(|s| s.to_string()).collect(),
        es.iter()
            .map(|(e, a, b)| (e.to_string(), a.to_string(), b.to_string()))
            .collect(),
    )
    .unwrap()
}

pub fn unit(vs: &[&str], es: &[(&str, &str, &str)]) -> Model {
    Model::unit(graph(vs, es), vec![0; vs.len()]).unwrap()
}

pub fn k4() -> Model {
    unit(
        &["v1", "v2", "v3", "v4"],
        &[
            ("a", "v1", "v2"),
            ("b", "v1", "v3"),
            ("c", "v1", "v4"),
            ("d", "v2", "v3"),
            ("e", "v2", "v4"),
            ("f", "v3", "v4"),
        ],
    )
}

pub fn banana(n: usize) -> Model {
    let es: Vec<(String, String, String)> = (0..n)
        .map(|i| (format!("e{}", i + 1), "u".to_string(), "v".to_string()))
        .collect();
    Model::unit(
        Graph::new(vec!["u".to_string(), "v".to_string()], es).unwrap(),
        vec![0, 0],
    )
    .unwrap()
}

pub fn ladder_p2() -> Model {
    unit(
        &["v1", "v2", "w1", "w2"],
        &[
            ("rail_v", "v1", "v2"),
            ("rail_w", "w1", "w2"),
            ("r1a", "v1", "w1"),
            ("r1b", "v1", "w1"),
            ("r2a", "v2", "w2"),
            ("r2b", "v2", "w2"),
        ],
    )
}

pub fn dumbbell() -> Model {
    Model::new(
        graph(
            &["u", "v"],
            &[("lu", "u", "u"), ("lv", "v", "v"), ("b", "u", "v")],
        ),
        vec![rat(2), rat(2), rat(1)],
    )
    .unwrap()
}

/// Exact Gaussian elimination: solve a square system over the rationals.
pub fn solve_rational(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for j in col..n {
            a[col][j] = a[col][j].clone() / p.clone();
        }
        b[col] = b[col].clone() / p;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let v = a[col][j].clone() * f.clone();
                    a[r][j] -= v;
                }
                let v = b[col].clone() * f;
                b[r] -= v;
            }
        }
    }
    Some(b)
}

/// A combinatorial graph for oracle purposes: vertex count plus non-loop
/// edges with multiplicity.
pub struct Comb {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Comb {
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let mut l = vec![vec![0i64; self.n]; self.n];
        for &(a, b) in &self.edges {
            if a == b {
                continue;
            }
            l[a][a] += 1;
            l[b][b] += 1;
            l[a][b] -= 1;
            l[b][a] -= 1;
        }
        l
    }

    /// Linear equivalence via the reduced Laplacian: d ~ 0 iff the unique
    /// rational firing vector with x_q = 0 is integral.
    pub fn is_principal(&self, d: &[i64]) -> bool {
        assert_eq!(d.iter().sum::<i64>(), 0);
        if self.n == 1 {
            return true;
        }
        let l = self.laplacian();
        let q = self.n - 1;
        let a: Vec<Vec<Rat>> = (0..q)
            .map(|r| (0..q).map(|c| rat(l[r][c])).collect())
            .collect();
        let b: Vec<Rat> = (0..q).map(|r| rat(d[r])).collect();
        match solve_rational(a, b) {
            Some(x) => x.iter().all(|v| v.is_integer()),
            None => false,
        }
    }

    pub fn equivalent(&self, d: &[i64], e: &[i64]) -> bool {
        let diff: Vec<i64> = d.iter().zip(e).map(|(a, b)| a - b).collect();
        self.is_principal(&diff)
    }

    /// All effective divisors of the given degree.
    pub fn effective(&self, degree: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.n];
        fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
        }
        if degree < 0 {
            return out;
        }
        rec(0, degree, &mut cur, &mut out);
        out
    }

    /// Definition-level Baker-Norine rank using the Laplacian equivalence
    /// test only.
    pub fn rank(&self, d: &[i64]) -> i64 {
        let deg: i64 = d.iter().sum();
        if deg < 0 {
            return -1;
        }
        let has_effective = |target: &[i64]| -> bool {
            let t: i64 = target.iter().sum();
            self.effective(t)
                .iter()
                .any(|e| self.equivalent(target, e))
        };
        let mut rank = -1i64;
        for k in 0..=deg {
            let ok = self.effective(k).iter().all(|e| {
                let diff: Vec<i64> = d.iter().zip(e).map(|(a, b)| a - b).collect();
                has_effective(&diff)
            });
            if ok {
                rank = k;
            } else {
                break;
            }
        }
        rank
    }
}

/// The combinatorial graph of a unit subdivision of a model.
pub fn comb_of(m: &Model, refinement: u64) -> (Comb, BTreeMap<String, usize>) {
    let sub = hyperell::divisor::subdivide(m, refinement);
    let edges = sub.edges().to_vec();
    let index = (0..sub.n_vertices())
        .map(|v| (sub.vertex_id(v).to_string(), v))
        .collect();
    (
        Comb {
            n: sub.n_vertices(),
            edges,
        },
        index,
    )
}
