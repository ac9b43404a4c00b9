//! Oracles shared by the integration tests: every value is computed by
//! direct enumeration over all vertex assignments, without orbits.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;
use qsym::diagram::{enumerate_diagrams, Diagram, EnumerationBudget};
use qsym::symmetry::OrbitIndex;
use qsym::vector::CoefficientVector;
use qsym::{Graph, Provenance};
use rand::Rng;

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, Provenance::Ingested { source: "random".into() }, |_, _| rng.gen_bool(p))
}

/// Direct sum over every assignment of internals, checking every constraint.
pub fn naive_value(g: &Graph, d: &Diagram, x: &[usize]) -> u128 {
    let class_of = d.class_of();
    if (0..d.k).any(|i| x[i] != x[d.partition[class_of[i]][0]]) {
        return 0;
    }
    let n = g.n();
    let mut total = 0;
    let mut assign = vec![0usize; d.n_int];
    loop {
        let img = |v: usize| if v < d.k { x[v] } else { assign[v - d.k] };
        if d.all_edges().iter().all(|&(a, b)| g.adjacent(img(a), img(b))) {
            total += 1;
        }
        let mut i = 0;
        loop {
            if i == d.n_int {
                return total;
            }
            assign[i] += 1;
            if assign[i] < n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// Expands an orbit-compressed 4-box vector to all `n^4` tuples.
pub fn expand(v: &CoefficientVector, index: &OrbitIndex) -> Vec<BigRational> {
    let n = index.n();
    (0..n * n * n * n)
        .map(|t| {
            let x = [t / (n * n * n), t / (n * n) % n, t / n % n, t % n];
            v.values[index.lookup(&x)].clone()
        })
        .collect()
}

/// `(a * b)^x = Σ_{y,z} a^{x0,x1,y,z} b^{z,y,x2,x3}` at a single tuple, on expanded tensors.
pub fn naive_product_at(a: &[BigRational], b: &[BigRational], n: usize, x: &[usize]) -> BigRational {
    let at = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    let mut acc = BigRational::zero();
    for y in 0..n {
        for z in 0..n {
            acc += &a[at(x[0], x[1], y, z)] * &b[at(z, y, x[2], x[3])];
        }
    }
    acc
}

pub fn sample_diagrams() -> Vec<Diagram> {
    let mut out = enumerate_diagrams(4, EnumerationBudget { max_internal: 2, max_edges: 6 });
    out.retain(|d| d.n_int > 0 || d.edge_count() >= 2);
    // a spread of shapes, deterministic
    out.into_iter().step_by(7).take(25).collect()
}
