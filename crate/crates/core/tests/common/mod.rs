//! Brute-force oracles shared by the integration suites. Nothing here calls
//! into the library except to build a `PlumbingGraph` from raw data.

#![allow(dead_code)]

use num_rational::Ratio;
use plumbcalc::graph::{PlumbingGraph, Vertex};

/// A simple graph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] += 1;
            a[v][u] += 1;
        }
        a
    }

    pub fn plumbing(&self, eulers: &[i64]) -> PlumbingGraph {
        let vertices = eulers.iter().enumerate().map(|(i, &e)| Vertex::rational(i as u32, e)).collect();
        PlumbingGraph::new(vertices, self.edges.iter().map(|&(u, v)| (u as u32, v as u32))).unwrap()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn mask_under(mask: u32, pairs: &[(usize, usize)], perm: &[usize]) -> u32 {
    let mut out = 0;
    for (bit, &(i, j)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            let idx = pairs.iter().position(|&e| e == (a, b)).unwrap();
            out |= 1 << idx;
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Connected simple graphs with exactly `n` vertices, one per isomorphism
/// class, with their automorphism groups.
pub fn connected_graphs(n: usize) -> Vec<(SmallGraph, Vec<Vec<usize>>)> {
    let ps = pairs(n);
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u32..(1 << ps.len()) {
        let images: Vec<u32> = perms.iter().map(|p| mask_under(mask, &ps, p)).collect();
        if images.iter().any(|&m| m < mask) {
            continue;
        }
        let edges: Vec<(usize, usize)> =
            ps.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, &e)| e).collect();
        if !connected(n, &edges) {
            continue;
        }
        let autos = perms.iter().zip(&images).filter(|(_, &m)| m == mask).map(|(p, _)| p.clone()).collect();
        out.push((SmallGraph { n, edges }, autos));
    }
    out
}

/// Euler assignments in `lo..=hi`, one per orbit of the automorphism group.
pub fn weightings(n: usize, autos: &[Vec<usize>], lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let span = (hi - lo + 1) as usize;
    let mut out = Vec::new();
    for code in 0..span.pow(n as u32) {
        let mut w = vec![0; n];
        let mut c = code;
        for x in w.iter_mut() {
            *x = lo + (c % span) as i64;
            c /= span;
        }
        let minimal = autos.iter().all(|p| {
            let mut image = vec![0; n];
            for i in 0..n {
                image[p[i]] = w[i];
            }
            w <= image
        });
        if minimal {
            out.push(w);
        }
    }
    out
}

/// All (graph, weighting) pairs with `1..=max_n` vertices, eulers in `lo..=hi`.
pub fn small_family(max_n: usize, lo: i64, hi: i64) -> Vec<(SmallGraph, Vec<i64>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (g, autos) in connected_graphs(n) {
            for w in weightings(n, &autos, lo, hi) {
                out.push((g.clone(), w));
            }
        }
    }
    out
}

pub fn matrix(adj: &[Vec<i64>], eulers: &[i64]) -> Vec<Vec<i64>> {
    let mut m = adj.to_vec();
    for (i, &e) in eulers.iter().enumerate() {
        m[i][i] = e;
    }
    m
}

fn dot_row(m: &[Vec<i64>], i: usize, z: &[i64]) -> i64 {
    m[i].iter().zip(z).map(|(a, b)| a * b).sum()
}

/// `x . M x < 0` for every nonzero `x` in `[-r, r]^n`.
pub fn quadratic_form_negative(m: &[Vec<i64>], r: i64) -> bool {
    let n = m.len();
    let span = (2 * r + 1) as usize;
    let total = span.pow(n as u32);
    let mut x = vec![0i64; n];
    // Codes above the midpoint are negatives of codes below it.
    for code in total / 2 + 1..total {
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = (c % span) as i64 - r;
            c /= span;
        }
        let q: i64 = (0..n).map(|i| x[i] * dot_row(m, i, &x)).sum();
        if q >= 0 {
            return false;
        }
    }
    true
}

/// Coefficientwise minimum of all `z` in `[1, bound]^n` with `z . E_i <= 0`
/// for every `i`; `None` if the box holds no such divisor.
pub fn minimal_divisor(m: &[Vec<i64>], bound: i64) -> Option<Vec<i64>> {
    let n = m.len();
    let mut best: Option<Vec<i64>> = None;
    let mut z = vec![1i64; n];
    loop {
        if (0..n).all(|i| dot_row(m, i, &z) <= 0) {
            best = Some(match best {
                None => z.clone(),
                Some(b) => b.iter().zip(&z).map(|(a, c)| *a.min(c)).collect(),
            });
        }
        let mut i = 0;
        while i < n && z[i] == bound {
            z[i] = 1;
            i += 1;
        }
        if i == n {
            return best;
        }
        z[i] += 1;
    }
}

/// Laufer's walk, always raising the largest offending index.
pub fn laufer_largest_index(m: &[Vec<i64>]) -> Vec<i64> {
    let n = m.len();
    let mut z = vec![1i64; n];
    while let Some(j) = (0..n).rev().find(|&j| dot_row(m, j, &z) > 0) {
        z[j] += 1;
    }
    z
}

/// `b_1 - 1/(b_2 - 1/(... - 1/b_k))` as an exact fraction.
pub fn eval_fraction(terms: &[i64]) -> Ratio<i128> {
    let mut acc = Ratio::from_integer(i128::from(*terms.last().unwrap()));
    for &b in terms[..terms.len() - 1].iter().rev() {
        acc = Ratio::from_integer(i128::from(b)) - acc.recip();
    }
    acc
}

pub type Mat2 = [[i128; 2]; 2];

pub fn mat_mul(a: Mat2, b: Mat2) -> Mat2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

pub fn monodromy_product(terms: &[i64]) -> Mat2 {
    terms
        .iter()
        .fold([[1, 0], [0, 1]], |acc, &b| mat_mul(acc, [[i128::from(b), -1], [1, 0]]))
}

/// Every word of length `k` over `2..=bmax`, in lexicographic order.
pub fn all_words(k: usize, bmax: i64) -> Vec<Vec<i64>> {
    let base = (bmax - 1) as usize;
    (0..base.pow(k as u32))
        .map(|code| {
            let mut w = vec![0i64; k];
            let mut c = code;
            for x in w.iter_mut().rev() {
                *x = 2 + (c % base) as i64;
                c /= base;
            }
            w
        })
        .collect()
}

/// Least image of `w` under rotations and reflections.
pub fn dihedral_min(w: &[i64]) -> Vec<i64> {
    let n = w.len();
    let mut best = w.to_vec();
    for r in 0..n {
        let rot: Vec<i64> = (0..n).map(|i| w[(i + r) % n]).collect();
        let refl: Vec<i64> = rot.iter().rev().copied().collect();
        best = best.min(rot).min(refl);
    }
    best
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Coprime pairs `1 <= q < p` for `2 <= p <= pmax`.
pub fn coprime_pairs(pmax: i64) -> Vec<(i64, i64)> {
    (2..=pmax).flat_map(|p| (1..p).filter(move |&q| gcd(p, q) == 1).map(move |q| (p, q))).collect()
}

/// A nonzero integer `x` with `x . M x >= 0`, or `None` when `M` is
/// negative definite. Runs rational LDL^T on `-M`; at the first pivot
/// `d_k <= 0` the vector solving the leading block against column `k`
/// has `x . (-M) x = d_k`. The returned vector is checked in integers.
pub fn nonnegative_witness(m: &[Vec<i64>]) -> Option<Vec<i128>> {
    type Q = Ratio<i128>;
    let n = m.len();
    let a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(-i128::from(x))).collect()).collect();
    for k in 0..n {
        // Solve A[..k][..k] y = -A[..k][k] by elimination on a copy.
        let mut aug: Vec<Vec<Q>> = (0..k)
            .map(|i| {
                let mut row = a[i][..k].to_vec();
                row.push(-a[i][k]);
                row
            })
            .collect();
        for c in 0..k {
            let pivot = aug[c][c];
            for r in 0..k {
                if r != c && aug[r][c] != Q::from_integer(0) {
                    let f = aug[r][c] / pivot;
                    for j in c..=k {
                        let t = aug[c][j];
                        aug[r][j] -= f * t;
                    }
                }
            }
        }
        let mut x: Vec<Q> = (0..k).map(|i| aug[i][k] / aug[i][i]).collect();
        x.push(Q::from_integer(1));
        let schur: Q = (0..=k).map(|i| (0..=k).map(|j| x[i] * a[i][j] * x[j]).sum::<Q>()).sum();
        if schur <= Q::from_integer(0) {
            let lcm = x.iter().fold(1i128, |l, q| {
                let d = *q.denom();
                l / gcd128(l, d) * d
            });
            let mut xi: Vec<i128> = x.iter().map(|q| *q.numer() * (lcm / *q.denom())).collect();
            xi.resize(n, 0);
            let value: i128 = (0..n)
                .map(|i| (0..n).map(|j| xi[i] * i128::from(m[i][j]) * xi[j]).sum::<i128>())
                .sum();
            assert!(value >= 0 && xi.iter().any(|&v| v != 0));
            return Some(xi);
        }
    }
    None
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd128(b, a % b)
    }
}
