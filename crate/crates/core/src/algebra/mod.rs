//! Monomials, monomial orders and sparse polynomials over a prime field.

mod monomial;
mod polynomial;

use std::cmp::Ordering;
use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{PrimeModulus, Scalar};

pub use monomial::{degrevlex, Monomial};
pub use polynomial::{Polynomial, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("monomials have {left} and {right} variables")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("ring needs at least one variable")]
    NoVariables,
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("monomial does not divide")]
    NotDivisible,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("unknown monomial order `{0}`")]
    UnknownOrder(String),
}

/// Monomial orders the ring can be equipped with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
}

impl MonomialOrder {
    #[inline]
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, AlgebraError> {
        match name {
            "degrevlex" => Ok(MonomialOrder::DegRevLex),
            other => Err(AlgebraError::UnknownOrder(other.to_string())),
        }
    }
}

/// `F_p[x_0, ..., x_{n-1}]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    modulus: PrimeModulus,
    var_names: Vec<String>,
    order: MonomialOrder,
}

impl RingContext {
    pub fn new(
        modulus: PrimeModulus,
        var_names: Vec<String>,
        order: MonomialOrder,
    ) -> Result<Self, AlgebraError> {
        if var_names.is_empty() {
            return Err(AlgebraError::NoVariables);
        }
        for (i, name) in var_names.iter().enumerate() {
            if var_names[..i].contains(name) {
                return Err(AlgebraError::DuplicateVariable(name.clone()));
            }
        }
        Ok(RingContext {
            modulus,
            var_names,
            order,
        })
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn variable(&self, index: usize) -> Monomial {
        Monomial::variable(self.nvars(), index)
    }

    /// Builds a monomial from `(variable name, exponent)` factors.
    /// Panics on an unknown name; intended for fixtures.
    pub fn monomial(&self, factors: &[(&str, u16)]) -> Monomial {
        let mut e = vec![0u16; self.nvars()];
        for (name, k) in factors {
            let i = self
                .variable_index(name)
                .unwrap_or_else(|| panic!("unknown variable {name}"));
            e[i] += k;
        }
        Monomial::new(e)
    }

    /// Ring-order comparison. Variable counts must agree.
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        self.order.compare(a, b)
    }

    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, AlgebraError> {
        if a.nvars() != b.nvars() || a.nvars() != self.nvars() {
            return Err(AlgebraError::VariableCountMismatch {
                left: a.nvars(),
                right: b.nvars(),
            });
        }
        Ok(self.order.compare(a, b))
    }

    /// `b / a`, failing when `a` does not divide `b`.
    pub fn divide(&self, b: &Monomial, a: &Monomial) -> Result<Monomial, AlgebraError> {
        b.checked_div(a).ok_or(AlgebraError::NotDivisible)
    }

    /// Same field and order with one fresh variable appended last.
    pub fn with_extra_variable(&self, name: &str) -> Result<RingContext, AlgebraError> {
        let mut names = self.var_names.clone();
        names.push(name.to_string());
        RingContext::new(self.modulus, names, self.order)
    }

    /// Renders a monomial as `x^2*y`; the unit monomial renders as `1`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        for (name, &e) in self.var_names.iter().zip(m.exponents()) {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(name);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    /// Shorthand for `modulus().scalar(v)`.
    pub fn scalar(&self, v: u64) -> Scalar {
        self.modulus.scalar(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> RingContext {
        RingContext::new(
            PrimeModulus::new(32003).unwrap(),
            ["x", "y", "z", "t"].map(String::from).to_vec(),
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    #[test]
    fn degrevlex_examples() {
        let r = ring();
        let m = |f: &[(&str, u16)]| r.monomial(f);
        assert_eq!(
            r.compare(&m(&[("x", 2), ("y", 1)]), &m(&[("x", 1), ("z", 2)])),
            Ordering::Greater
        );
        assert_eq!(
            r.compare(
                &m(&[("x", 2), ("y", 1), ("z", 3)]),
                &m(&[("x", 2), ("y", 1), ("z", 2)])
            ),
            Ordering::Greater
        );
        assert_eq!(
            r.compare(&m(&[("y", 1), ("z", 1)]), &m(&[("x", 1), ("y", 1)])),
            Ordering::Less
        );
        assert_eq!(
            r.compare(
                &m(&[("x", 1), ("y", 3), ("t", 1)]),
                &m(&[("z", 4), ("t", 1)])
            ),
            Ordering::Greater
        );
    }

    #[test]
    fn mismatched_variable_counts() {
        let r = ring();
        let err = r
            .try_compare(&Monomial::one(4), &Monomial::one(3))
            .unwrap_err();
        assert_eq!(
            err,
            AlgebraError::VariableCountMismatch { left: 4, right: 3 }
        );
    }

    #[test]
    fn division_and_lcm() {
        let r = ring();
        let m = |f: &[(&str, u16)]| r.monomial(f);
        let xz2 = m(&[("x", 1), ("z", 2)]);
        let xyz3 = m(&[("x", 1), ("y", 1), ("z", 3)]);
        assert!(xz2.divides(&xyz3));
        assert_eq!(r.divide(&xyz3, &xz2).unwrap(), m(&[("y", 1), ("z", 1)]));
        let x2y = m(&[("x", 2), ("y", 1)]);
        assert!(!x2y.divides(&xz2));
        assert_eq!(r.divide(&xz2, &x2y), Err(AlgebraError::NotDivisible));
        assert_eq!(r.divide(&x2y, &x2y).unwrap(), r.one());

        assert_eq!(x2y.lcm(&xz2), m(&[("x", 2), ("y", 1), ("z", 2)]));
        let yz3 = m(&[("y", 1), ("z", 3)]);
        assert_eq!(yz3.lcm(&x2y), m(&[("x", 2), ("y", 1), ("z", 3)]));
        assert_eq!(yz3.lcm(&yz3), yz3);
    }

    #[test]
    fn context_validation() {
        let p = PrimeModulus::new(7).unwrap();
        assert_eq!(
            RingContext::new(p, vec![], MonomialOrder::DegRevLex),
            Err(AlgebraError::NoVariables)
        );
        assert_eq!(
            RingContext::new(p, vec!["x".into(), "x".into()], MonomialOrder::DegRevLex),
            Err(AlgebraError::DuplicateVariable("x".into()))
        );
        assert!(MonomialOrder::from_name("lex").is_err());
    }

    #[test]
    fn monomial_rendering() {
        let r = ring();
        assert_eq!(r.format_monomial(&r.one()), "1");
        assert_eq!(
            r.format_monomial(&r.monomial(&[("x", 2), ("y", 1), ("t", 3)])),
            "x^2*y*t^3"
        );
    }

    fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..5, n).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn order_is_total_and_compatible(a in monomial(4), b in monomial(4), c in monomial(4)) {
            let r = ring();
            let ab = r.compare(&a, &b);
            prop_assert_eq!(ab, r.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_ne!(r.compare(&r.one(), &a), Ordering::Greater);
            prop_assert_eq!(r.compare(&a.mul(&c), &b.mul(&c)), ab);
            // transitivity on the triple
            if ab != Ordering::Greater && r.compare(&b, &c) != Ordering::Greater {
                prop_assert_ne!(r.compare(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn divisibility_matches_quotient(a in monomial(4), b in monomial(4)) {
            match b.checked_div(&a) {
                Some(q) => {
                    prop_assert!(a.divides(&b));
                    prop_assert_eq!(a.mul(&q), b.clone());
                }
                None => prop_assert!(!a.divides(&b)),
            }
            prop_assert_eq!(a.mul(&b).checked_div(&a), Some(b.clone()));
        }

        #[test]
        fn lcm_is_least_common_multiple(a in monomial(4), b in monomial(4), c in monomial(4)) {
            let l = a.lcm(&b);
            prop_assert!(a.divides(&l) && b.divides(&l));
            let max: Vec<u16> = a.exponents().iter().zip(b.exponents()).map(|(x, y)| *x.max(y)).collect();
            prop_assert_eq!(l.exponents(), &max[..]);
            if a.divides(&c) && b.divides(&c) {
                prop_assert!(l.divides(&c));
            }
        }
    }
}
