use std::cmp::Ordering;
use std::collections::HashMap;

use super::{AlgebraError, Monomial, RingContext};
use crate::field::Scalar;

/// One nonzero term `coeff * monomial`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub monomial: Monomial,
}

/// Sparse polynomial. Terms are kept strictly decreasing in the ring order
/// with no zero coefficients; the empty list is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Scalar, ctx: &RingContext) -> Self {
        Polynomial::monomial(c, ctx.one())
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: vec![Term {
                coeff: c,
                monomial: m,
            }],
        }
    }

    /// Normalizes arbitrary `(coefficient, monomial)` pairs: like terms are
    /// combined, zeros dropped, and the result sorted.
    pub fn from_terms<I>(terms: I, ctx: &RingContext) -> Self
    where
        I: IntoIterator<Item = (Scalar, Monomial)>,
    {
        let p = ctx.modulus();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (c, m) in terms {
            let slot = acc.entry(m).or_insert(Scalar::ZERO);
            *slot = p.add(*slot, c);
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        terms.sort_by(|a, b| ctx.compare(&b.monomial, &a.monomial));
        Polynomial { terms }
    }

    /// Wraps terms that are already canonical. Checked in debug builds.
    pub fn from_sorted_terms(terms: Vec<Term>, ctx: &RingContext) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ctx.compare(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        Polynomial { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Result<(Scalar, &Monomial), AlgebraError> {
        self.terms
            .first()
            .map(|t| (t.coeff, &t.monomial))
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<Scalar> {
        self.terms.first().map(|t| t.coeff)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.monomial)
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coefficient(&self, m: &Monomial, ctx: &RingContext) -> Scalar {
        self.terms
            .binary_search_by(|t| ctx.compare(m, &t.monomial))
            .map(|i| self.terms[i].coeff)
            .unwrap_or(Scalar::ZERO)
    }

    /// Largest total degree among the terms; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.monomial.degree())
            .max()
            .unwrap_or(0)
    }

    /// True iff every term has the same total degree. The zero polynomial
    /// counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.monomial.degree();
                self.terms.iter().all(|t| t.monomial.degree() == d)
            }
        }
    }

    /// `c * t * self`. Multiplying by a monomial keeps the term order.
    pub fn mul_term(&self, c: Scalar, t: &Monomial, ctx: &RingContext) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let p = ctx.modulus();
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|term| Term {
                    coeff: p.mul(c, term.coeff),
                    monomial: term.monomial.mul(t),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: Scalar, ctx: &RingContext) -> Polynomial {
        self.mul_term(c, &ctx.one(), ctx)
    }

    /// `self + c * t * g` by a single ordered merge.
    pub fn add_scaled(
        &self,
        c: Scalar,
        t: &Monomial,
        g: &Polynomial,
        ctx: &RingContext,
    ) -> Polynomial {
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let p = ctx.modulus();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut lhs = self.terms.iter().peekable();
        let mut rhs = g.terms.iter().map(|term| Term {
            coeff: p.mul(c, term.coeff),
            monomial: term.monomial.mul(t),
        });
        let mut next_rhs = rhs.next();
        loop {
            match (lhs.peek(), next_rhs.take()) {
                (None, None) => break,
                (Some(_), None) => {
                    out.extend(lhs.by_ref().cloned());
                    break;
                }
                (None, Some(r)) => {
                    out.push(r);
                    out.extend(rhs.by_ref());
                    break;
                }
                (Some(l), Some(r)) => match ctx.compare(&l.monomial, &r.monomial) {
                    Ordering::Greater => {
                        out.push((*l).clone());
                        lhs.next();
                        next_rhs = Some(r);
                    }
                    Ordering::Less => {
                        out.push(r);
                        next_rhs = rhs.next();
                    }
                    Ordering::Equal => {
                        let s = p.add(l.coeff, r.coeff);
                        if !s.is_zero() {
                            out.push(Term {
                                coeff: s,
                                monomial: r.monomial,
                            });
                        }
                        lhs.next();
                        next_rhs = rhs.next();
                    }
                },
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, g: &Polynomial, ctx: &RingContext) -> Polynomial {
        self.add_scaled(Scalar::ONE, &ctx.one(), g, ctx)
    }

    pub fn sub(&self, g: &Polynomial, ctx: &RingContext) -> Polynomial {
        let minus_one = ctx.modulus().neg(Scalar::ONE);
        self.add_scaled(minus_one, &ctx.one(), g, ctx)
    }

    /// Full product. Only the certification and oracle paths need this.
    pub fn mul(&self, g: &Polynomial, ctx: &RingContext) -> Polynomial {
        let mut acc = Polynomial::zero();
        for term in &self.terms {
            acc = acc.add_scaled(term.coeff, &term.monomial, g, ctx);
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, ctx: &RingContext) -> Result<Polynomial, AlgebraError> {
        let (lc, _) = self.leading()?;
        if lc == Scalar::ONE {
            return Ok(self.clone());
        }
        let inv = ctx
            .modulus()
            .inv(lc)
            .expect("leading coefficient is nonzero");
        Ok(self.scale(inv, ctx))
    }

    /// Applies `f` to every monomial; used to move between rings.
    pub fn map_monomials<F>(&self, ctx: &RingContext, f: F) -> Polynomial
    where
        F: Fn(&Monomial) -> Monomial,
    {
        Polynomial::from_terms(self.terms.iter().map(|t| (t.coeff, f(&t.monomial))), ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialOrder;
    use crate::field::PrimeModulus;
    use proptest::prelude::*;

    fn ring() -> RingContext {
        RingContext::new(
            PrimeModulus::new(32003).unwrap(),
            ["x", "y", "z", "t"].map(String::from).to_vec(),
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    // Builds a polynomial from signed coefficients and exponent vectors.
    fn poly(r: &RingContext, terms: &[(i64, [u16; 4])]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|(c, e)| (r.modulus().scalar_signed(*c), Monomial::new(e.to_vec()))),
            r,
        )
    }

    #[test]
    fn leading_term() {
        let r = ring();
        let f = poly(&r, &[(-1, [0, 0, 2, 1]), (1, [2, 1, 0, 0])]);
        let (lc, lm) = f.leading().unwrap();
        assert_eq!(lc, Scalar::ONE);
        assert_eq!(lm, &r.monomial(&[("x", 2), ("y", 1)]));

        let g = poly(&r, &[(1, [1, 3, 0, 1]), (-1, [0, 0, 4, 1])]);
        assert_eq!(
            g.leading_monomial(),
            Some(&r.monomial(&[("x", 1), ("y", 3), ("t", 1)]))
        );

        assert_eq!(
            Polynomial::zero().leading(),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn add_scaled_builds_row() {
        let r = ring();
        // z^3 t * (y z^3 - x^2 t^2) = y z^6 t - x^2 z^3 t^3
        let g = poly(&r, &[(1, [0, 1, 3, 0]), (-1, [2, 0, 0, 2])]);
        let t = r.monomial(&[("z", 3), ("t", 1)]);
        let row = Polynomial::zero().add_scaled(Scalar::ONE, &t, &g, &r);
        assert_eq!(row, poly(&r, &[(1, [0, 1, 6, 1]), (-1, [2, 0, 3, 3])]));
    }

    #[test]
    fn add_scaled_eliminates() {
        let r = ring();
        let f = poly(&r, &[(1, [2, 1, 3, 0]), (-1, [4, 0, 0, 2])]);
        let g = poly(&r, &[(1, [2, 1, 3, 0]), (-1, [0, 0, 5, 1])]);
        let minus = r.modulus().neg(Scalar::ONE);
        let h = f.add_scaled(minus, &r.one(), &g, &r);
        assert_eq!(h, poly(&r, &[(1, [0, 0, 5, 1]), (-1, [4, 0, 0, 2])]));
        assert!(f.add_scaled(minus, &r.one(), &f, &r).is_zero());
    }

    #[test]
    fn monic_rescales() {
        let r = ring();
        let f = poly(&r, &[(2, [1, 0, 0, 0]), (4, [0, 1, 0, 0])]);
        assert_eq!(
            f.monic(&r).unwrap(),
            poly(&r, &[(1, [1, 0, 0, 0]), (2, [0, 1, 0, 0])])
        );
        let g = poly(&r, &[(1, [1, 0, 0, 0]), (5, [0, 1, 0, 0])]);
        assert_eq!(g.monic(&r).unwrap(), g);
        let five = Polynomial::constant(r.scalar(5), &r);
        assert_eq!(
            five.monic(&r).unwrap(),
            Polynomial::constant(Scalar::ONE, &r)
        );
        assert_eq!(
            Polynomial::zero().monic(&r),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn homogeneity() {
        let r = ring();
        assert!(poly(&r, &[(1, [2, 1, 0, 0]), (-1, [0, 0, 2, 1])]).is_homogeneous());
        assert!(!poly(&r, &[(1, [2, 1, 0, 0]), (-1, [0, 0, 1, 1])]).is_homogeneous());
        assert!(Polynomial::zero().is_homogeneous());
    }

    fn arb_poly(
        max_deg: u16,
        homogeneous: Option<u16>,
    ) -> impl Strategy<Value = Vec<(u32, [u16; 4])>> {
        let exps = match homogeneous {
            Some(d) => (0..=d, 0..=d, 0..=d)
                .prop_filter("degree", move |(a, b, c)| a + b + c <= d)
                .prop_map(move |(a, b, c)| [a, b, c, d - a - b - c])
                .boxed(),
            None => prop::array::uniform4(0..=max_deg).boxed(),
        };
        prop::collection::vec((0u32..32003, exps), 0..8)
    }

    fn build(r: &RingContext, raw: &[(u32, [u16; 4])]) -> Polynomial {
        Polynomial::from_terms(
            raw.iter()
                .map(|(c, e)| (r.scalar(*c as u64), Monomial::new(e.to_vec()))),
            r,
        )
    }

    proptest! {
        #[test]
        fn add_scaled_matches_dictionary_merge(
            f in arb_poly(4, None), g in arb_poly(4, None),
            c in 0u32..32003, t in prop::array::uniform4(0u16..3),
        ) {
            let r = ring();
            let (fp, gp) = (build(&r, &f), build(&r, &g));
            let t = Monomial::new(t.to_vec());
            let got = fp.add_scaled(r.scalar(c as u64), &t, &gp, &r);

            let p = 32003u64;
            let mut dict: HashMap<Vec<u16>, u64> = HashMap::new();
            for term in fp.terms() {
                *dict.entry(term.monomial.exponents().to_vec()).or_default() += term.coeff.value() as u64;
            }
            for term in gp.terms() {
                let m = term.monomial.mul(&t);
                *dict.entry(m.exponents().to_vec()).or_default() += c as u64 * term.coeff.value() as u64 % p;
            }
            dict.retain(|_, v| *v % p != 0);
            prop_assert_eq!(got.len(), dict.len());
            for term in got.terms() {
                prop_assert!(!term.coeff.is_zero());
                prop_assert_eq!(dict[term.monomial.exponents()] % p, term.coeff.value() as u64);
            }
            for w in got.terms().windows(2) {
                prop_assert_eq!(r.compare(&w[0].monomial, &w[1].monomial), Ordering::Greater);
            }
        }

        #[test]
        fn product_homogeneity(f in arb_poly(0, Some(2)), g in arb_poly(4, None)) {
            let r = ring();
            let (fp, gp) = (build(&r, &f), build(&r, &g));
            prop_assume!(!fp.is_zero() && !gp.is_zero());
            let prod = fp.mul(&gp, &r);
            prop_assert_eq!(prod.is_homogeneous(), fp.is_homogeneous() && gp.is_homogeneous());
        }
    }
}
