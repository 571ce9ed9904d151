//! Reference Buchberger implementation used to check the engine.
//!
//! Shares only field and polynomial arithmetic with the engine: pair
//! handling and reduction are separate code.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::algebra::{Monomial, Polynomial, RingContext, Term};

/// A list of monic nonzero polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OracleBasis {
    polynomials: Vec<Polynomial>,
}

impl OracleBasis {
    /// Drops zeros and makes the rest monic.
    pub fn new(polys: &[Polynomial], ctx: &RingContext) -> Self {
        OracleBasis {
            polynomials: polys
                .iter()
                .filter(|f| !f.is_zero())
                .map(|f| f.monic(ctx).expect("nonzero"))
                .collect(),
        }
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polynomials
    }

    pub fn into_vec(self) -> Vec<Polynomial> {
        self.polynomials
    }

    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polynomials
            .iter()
            .map(|f| f.leading_monomial().expect("nonzero").clone())
            .collect()
    }
}

/// Quotients and remainder of a multivariate division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Divides `f` by `divisors`, always using the first divisor (in list order)
/// whose leading monomial divides the current largest term.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], ctx: &RingContext) -> Division {
    let (remainder, quotients) = reduce_full(f, divisors, ctx, true);
    Division {
        quotients: quotients.expect("requested"),
        remainder,
    }
}

/// Fully reduced remainder of `f` modulo `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ctx: &RingContext) -> Polynomial {
    reduce_full(f, basis, ctx, false).0
}

fn reduce_full(
    f: &Polynomial,
    divisors: &[Polynomial],
    ctx: &RingContext,
    track: bool,
) -> (Polynomial, Option<Vec<Polynomial>>) {
    let p = ctx.modulus();
    let divisors: Vec<&Polynomial> = divisors.iter().collect();
    let mut quotients = track.then(|| vec![Polynomial::zero(); divisors.len()]);
    let mut rest = f.clone();
    let mut remainder: Vec<Term> = Vec::new();
    while let Some(lead) = rest.terms().first().cloned() {
        let hit = divisors.iter().enumerate().find_map(|(i, g)| {
            let (lc, lm) = g.leading().ok()?;
            lead.monomial.checked_div(lm).map(|u| (i, u, lc))
        });
        match hit {
            Some((i, u, lc)) => {
                let c = p.div(lead.coeff, lc).expect("leading coefficient nonzero");
                rest = rest.add_scaled(p.neg(c), &u, divisors[i], ctx);
                if let Some(q) = quotients.as_mut() {
                    q[i] = q[i].add(&Polynomial::monomial(c, u), ctx);
                }
            }
            None => {
                rest = Polynomial::from_sorted_terms(rest.terms()[1..].to_vec(), ctx);
                remainder.push(lead);
            }
        }
    }
    (Polynomial::from_sorted_terms(remainder, ctx), quotients)
}

/// `(t / LT f) f - (t / LT g) g` with `t = lcm(LM f, LM g)`.
pub fn spoly(f: &Polynomial, g: &Polynomial, ctx: &RingContext) -> Polynomial {
    let p = ctx.modulus();
    let (cf, mf) = f.leading().expect("S-polynomial of a zero polynomial");
    let (cg, mg) = g.leading().expect("S-polynomial of a zero polynomial");
    let t = mf.lcm(mg);
    let uf = t.checked_div(mf).expect("lcm");
    let ug = t.checked_div(mg).expect("lcm");
    let a = f.mul_term(p.inv(cf).expect("nonzero"), &uf, ctx);
    a.add_scaled(p.neg(p.inv(cg).expect("nonzero")), &ug, g, ctx)
}

#[derive(PartialEq, Eq)]
struct Pending {
    degree: u32,
    seq: usize,
    i: usize,
    j: usize,
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (degree, insertion order)
        (other.degree, other.seq).cmp(&(self.degree, self.seq))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn coprime(a: &Monomial, b: &Monomial) -> bool {
    a.exponents()
        .iter()
        .zip(b.exponents())
        .all(|(x, y)| *x == 0 || *y == 0)
}

/// Classical Buchberger with the normal selection strategy and the
/// coprime leading monomial criterion.
pub fn buchberger(inputs: &[Polynomial], ctx: &RingContext) -> OracleBasis {
    let mut basis = OracleBasis::new(inputs, ctx).polynomials;
    let mut queue = BinaryHeap::new();
    let mut seq = 0;
    let mut push_pairs = |basis: &[Polynomial], j: usize, queue: &mut BinaryHeap<Pending>| {
        for i in 0..j {
            let d = basis[i]
                .leading_monomial()
                .expect("nonzero")
                .lcm(basis[j].leading_monomial().expect("nonzero"))
                .degree();
            queue.push(Pending {
                degree: d,
                seq,
                i,
                j,
            });
            seq += 1;
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, j, &mut queue);
    }
    while let Some(Pending { i, j, .. }) = queue.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        if coprime(
            fi.leading_monomial().expect("nonzero"),
            fj.leading_monomial().expect("nonzero"),
        ) {
            continue;
        }
        let h = normal_form(&spoly(fi, fj, ctx), &basis, ctx);
        if !h.is_zero() {
            basis.push(h.monic(ctx).expect("nonzero"));
            push_pairs(&basis, basis.len() - 1, &mut queue);
        }
    }
    OracleBasis { polynomials: basis }
}

/// True iff every S-polynomial of `basis` reduces to zero against it.
pub fn is_groebner(basis: &[Polynomial], ctx: &RingContext) -> bool {
    let basis: Vec<Polynomial> = basis.iter().filter(|f| !f.is_zero()).cloned().collect();
    for j in 0..basis.len() {
        for i in 0..j {
            if !normal_form(&spoly(&basis[i], &basis[j], ctx), &basis, ctx).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Minimalizes, tail-reduces and normalizes `basis`; sorted by ascending
/// leading monomial. For a Gröbner basis this is the reduced basis.
pub fn interreduce(basis: &[Polynomial], ctx: &RingContext) -> OracleBasis {
    let mut polys = OracleBasis::new(basis, ctx).polynomials;
    polys.sort_by(|a, b| {
        ctx.compare(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    for f in polys {
        let lm = f.leading_monomial().expect("nonzero");
        if !kept
            .iter()
            .any(|g| g.leading_monomial().expect("nonzero").divides(lm))
        {
            kept.push(f);
        }
    }
    for i in 0..kept.len() {
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let f = &kept[i];
        let head = Polynomial::from_sorted_terms(f.terms()[..1].to_vec(), ctx);
        let tail = f.sub(&head, ctx);
        kept[i] = head.add(&normal_form(&tail, &others, ctx), ctx);
    }
    OracleBasis { polynomials: kept }
}

/// Moves `f` into `target`, which has one more variable than `f`'s ring,
/// padding every term with the new variable up to the top degree.
pub fn homogenize(f: &Polynomial, target: &RingContext) -> Polynomial {
    let top = f.degree();
    f.map_monomials(target, |m| m.extend((top - m.degree()) as u16))
}

/// Sets the last variable of `f` to one, landing in `target`.
pub fn dehomogenize(f: &Polynomial, target: &RingContext) -> Polynomial {
    f.map_monomials(target, Monomial::truncate_last)
}
