#![allow(dead_code)]

use toposom::{Graph, SymMatrix};

pub fn graph_a() -> Graph {
    Graph::new(4, [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn graph_b() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Every simple graph on `n` labeled nodes, one per edge subset.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| Graph::new(n, pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e)).unwrap())
        .collect()
}

#[derive(Debug, PartialEq)]
pub struct DimensionTooLarge(pub usize);

/// Eigenvalues (descending) from the characteristic polynomial.
///
/// `det(λI - A)` is expanded by the Leibniz formula over all permutations;
/// for integer matrices every coefficient is an exactly representable
/// integer. Roots are then isolated recursively: the roots of `p'` split the
/// real line into intervals each holding one root of `p`, found by
/// bisection (or at an interval end when it is a multiple root).
pub fn char_poly_roots_oracle(m: &SymMatrix) -> Result<Vec<f64>, DimensionTooLarge> {
    let n = m.dim();
    if n > 6 {
        return Err(DimensionTooLarge(n));
    }
    let poly = char_poly(m);
    let mut roots = real_roots(&poly);
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(roots)
}

/// Coefficients, lowest degree first.
pub fn char_poly(m: &SymMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut total = vec![0.0; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, 1.0, &mut |p, sign| {
        let mut term = vec![sign];
        for (i, &j) in p.iter().enumerate() {
            // factor (λ δ_ij - a_ij)
            let factor = [-m.get(i, j), if i == j { 1.0 } else { 0.0 }];
            term = poly_mul(&term, &factor);
        }
        for (t, c) in total.iter_mut().zip(term) {
            *t += c;
        }
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, sign: f64, visit: &mut dyn FnMut(&[usize], f64)) {
    if k == p.len() {
        visit(p, sign);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, if i == k { sign } else { -sign }, visit);
        p.swap(k, i);
    }
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

/// All roots of a real-rooted polynomial, with multiplicity.
fn real_roots(p: &[f64]) -> Vec<f64> {
    let deg = p.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    if deg == 1 {
        return vec![-p[0] / lead];
    }
    let bound = 1.0 + p[..deg].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut critical = real_roots(&derivative(p));
    critical.sort_by(|a, b| a.total_cmp(b));
    let mut ends = vec![-bound];
    ends.extend(critical);
    ends.push(bound);

    ends.windows(2).map(|w| root_in(p, w[0], w[1])).collect()
}

/// Values below this are indistinguishable from zero under rounding.
fn noise_floor(p: &[f64], x: f64) -> f64 {
    1e-12 * p.iter().enumerate().map(|(k, c)| c.abs() * x.abs().powi(k as i32)).sum::<f64>()
}

fn root_in(p: &[f64], lo: f64, hi: f64) -> f64 {
    let (flo, fhi) = (eval(p, lo), eval(p, hi));
    if flo.abs() <= noise_floor(p, lo) || fhi.abs() <= noise_floor(p, hi) || flo.signum() == fhi.signum() {
        return if flo.abs() <= fhi.abs() { lo } else { hi };
    }
    let (mut a, mut b, mut fa) = (lo, hi, flo);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
