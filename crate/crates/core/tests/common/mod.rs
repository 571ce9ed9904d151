#![allow(dead_code)]

use std::collections::BTreeMap;

use f45::algebra::{Monomial, MonomialOrder, Polynomial, RingContext};
use f45::engine::RunObserver;
use f45::field::PrimeModulus;
use f45::matrix::{Elimination, MacaulayMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u64 = 32003;

pub fn ring(p: u64, vars: &[&str]) -> RingContext {
    RingContext::new(
        PrimeModulus::new(p).unwrap(),
        vars.iter().map(|v| v.to_string()).collect(),
        MonomialOrder::DegRevLex,
    )
    .unwrap()
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn example() -> (RingContext, Vec<Polynomial>) {
    let doc = f45::io::parse_system(&fixture("example.sys")).unwrap();
    (doc.ring, doc.polynomials)
}

fn monomials_of_degree(n: usize, d: u16) -> Vec<Monomial> {
    fn go(n: usize, d: u16, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// A random homogeneous system: 3-4 variables, 2-4 generators of degree
/// 2-3, each with 2-5 terms, over F_32003.
pub fn random_system(seed: u64) -> (RingContext, Vec<Polynomial>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["a", "b", "c", "d"];
    let n = rng.gen_range(3..=4);
    let r = ring(P, &names[..n]);
    let count = rng.gen_range(2..=4);
    let mut gens = Vec::new();
    while gens.len() < count {
        let d = rng.gen_range(2..=3);
        let pool = monomials_of_degree(n, d);
        let k = rng.gen_range(2..=5).min(pool.len());
        let terms: Vec<_> = pool
            .choose_multiple(&mut rng, k)
            .map(|m| (r.scalar(rng.gen_range(1..P)), m.clone()))
            .collect();
        let f = Polynomial::from_terms(terms, &r);
        if !f.is_zero() {
            gens.push(f);
        }
    }
    (r, gens)
}

/// Sorted multiset of pivot columns after unrestricted row echelon form
/// with arbitrary row swaps.
pub fn dense_pivots(matrix: &MacaulayMatrix, p: PrimeModulus) -> Vec<usize> {
    let pm = p.value() as u64;
    let mut dense: Vec<Vec<u64>> = matrix
        .coeffs()
        .iter()
        .map(|row| {
            let mut d = vec![0u64; matrix.ncols()];
            for (c, v) in row {
                d[*c] = v.value() as u64;
            }
            d
        })
        .collect();
    let inv = |a: u64| {
        // Fermat: a^(p-2)
        let (mut base, mut e, mut acc) = (a % pm, pm - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % pm;
            }
            base = base * base % pm;
            e >>= 1;
        }
        acc
    };
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..matrix.ncols() {
        let Some(r) = (top..dense.len()).find(|&r| dense[r][col] != 0) else {
            continue;
        };
        dense.swap(top, r);
        let s = inv(dense[top][col]);
        for v in dense[top].iter_mut() {
            *v = *v * s % pm;
        }
        for r in 0..dense.len() {
            if r != top && dense[r][col] != 0 {
                let f = dense[r][col];
                let pivot = dense[top].clone();
                for (v, s) in dense[r].iter_mut().zip(&pivot) {
                    *v = (*v + pm * pm - f * s) % pm;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

pub fn restricted_pivots(elim: &Elimination) -> Vec<usize> {
    let mut cols: Vec<usize> = (0..elim.rows.len())
        .filter_map(|r| elim.leading_column(r))
        .collect();
    cols.sort_unstable();
    cols
}

/// Compares each reduced matrix against the unrestricted echelon form.
pub struct ShadowOracle {
    pub modulus: PrimeModulus,
    pub matrices: usize,
    pub mismatches: Vec<(u32, Vec<usize>, Vec<usize>)>,
    pub row_operations: usize,
    pub signature_violations: usize,
    pub shapes: BTreeMap<u32, (usize, usize)>,
}

impl ShadowOracle {
    pub fn new(modulus: PrimeModulus) -> Self {
        ShadowOracle {
            modulus,
            matrices: 0,
            mismatches: Vec::new(),
            row_operations: 0,
            signature_violations: 0,
            shapes: BTreeMap::new(),
        }
    }
}

impl RunObserver for ShadowOracle {
    fn matrix_reduced(&mut self, degree: u32, matrix: &MacaulayMatrix, elimination: &Elimination) {
        self.matrices += 1;
        self.row_operations += elimination.row_operations;
        self.signature_violations += elimination.signature_violations;
        self.shapes.insert(degree, (matrix.nrows(), matrix.ncols()));
        let restricted = restricted_pivots(elimination);
        let full = dense_pivots(matrix, self.modulus);
        if restricted != full {
            self.mismatches.push((degree, restricted, full));
        }
    }
}
