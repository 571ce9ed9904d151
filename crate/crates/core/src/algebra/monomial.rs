use std::cmp::Ordering;

/// A power product `x_0^a_0 ... x_{n-1}^a_{n-1}` with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Box<[u16]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        let degree = exponents.iter().map(|&e| e as u32).sum();
        Monomial {
            exponents: exponents.into_boxed_slice(),
            degree,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    /// The variable `x_index` in a ring of `nvars` variables.
    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial::new(e)
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exponents
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// True iff `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .all(|(a, b)| a <= b)
    }

    /// `self / divisor`, or `None` when `divisor` does not divide `self`.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(divisor.exponents.iter())
                .map(|(a, b)| a - b)
                .collect(),
            degree: self.degree - divisor.degree,
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Same exponents with one extra trailing variable raised to `extra`.
    pub fn extend(&self, extra: u16) -> Monomial {
        let mut e = self.exponents.to_vec();
        e.push(extra);
        Monomial::new(e)
    }

    /// Drops the last variable.
    pub fn truncate_last(&self) -> Monomial {
        let n = self.exponents.len();
        Monomial::new(self.exponents[..n.saturating_sub(1)].to_vec())
    }
}

/// Degree reverse lexicographic comparison.
///
/// Higher total degree wins; on a tie `a > b` iff the last nonzero entry of
/// `a - b` is negative.
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.exponents.iter().zip(b.exponents.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // a has the larger trailing exponent: a - b positive there, so a < b
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}
