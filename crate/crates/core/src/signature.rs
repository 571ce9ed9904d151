//! Signatures, the labelled-polynomial store and the rewrite rule tables.
//!
//! Entries of the store are referred to by their position; the store is
//! append-only so positions stay valid for the whole run.

use std::cmp::Ordering;

use crate::algebra::{Monomial, Polynomial, RingContext};

/// A module monomial `t * e_index`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub index: usize,
    pub monomial: Monomial,
}

impl Signature {
    pub fn new(index: usize, monomial: Monomial) -> Self {
        Signature { index, monomial }
    }

    /// `1 * e_index`.
    pub fn unit(index: usize, ctx: &RingContext) -> Self {
        Signature::new(index, ctx.one())
    }

    /// `t * self`.
    pub fn mul(&self, t: &Monomial) -> Signature {
        Signature {
            index: self.index,
            monomial: self.monomial.mul(t),
        }
    }

    /// Position over term: the generator index decides first, then the
    /// monomial order.
    pub fn compare(&self, other: &Signature, ctx: &RingContext) -> Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| ctx.compare(&self.monomial, &other.monomial))
    }

    /// Renders as `x^2*z*e2`.
    pub fn display(&self, ctx: &RingContext) -> String {
        format!("{}*e{}", ctx.format_monomial(&self.monomial), self.index)
    }
}

/// A signature paired with a polynomial (possibly zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledEntry {
    pub signature: Signature,
    pub polynomial: Polynomial,
}

/// The append-only list of labelled polynomials.
#[derive(Debug, Clone, Default)]
pub struct Store {
    entries: Vec<LabelledEntry>,
}

impl Store {
    pub fn new() -> Self {
        Store::default()
    }

    /// Appends and returns the new position.
    pub fn push(&mut self, signature: Signature, polynomial: Polynomial) -> usize {
        self.entries.push(LabelledEntry {
            signature,
            polynomial,
        });
        self.entries.len() - 1
    }

    #[inline]
    pub fn get(&self, k: usize) -> &LabelledEntry {
        &self.entries[k]
    }

    #[inline]
    pub fn signature(&self, k: usize) -> &Signature {
        &self.entries[k].signature
    }

    #[inline]
    pub fn poly(&self, k: usize) -> &Polynomial {
        &self.entries[k].polynomial
    }

    #[inline]
    pub fn index(&self, k: usize) -> usize {
        self.entries[k].signature.index
    }

    /// Leading monomial of entry `k`; panics on a zero entry.
    #[inline]
    pub fn leading_monomial(&self, k: usize) -> &Monomial {
        self.entries[k]
            .polynomial
            .leading_monomial()
            .expect("entry polynomial is nonzero")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LabelledEntry] {
        &self.entries
    }
}

/// One rewrite rule: entry `entry` has signature `monomial * e_i` for the
/// table `i` it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub monomial: Monomial,
    pub entry: usize,
}

/// Per-index rule lists, each sorted ascending by the rule monomial.
#[derive(Debug, Clone)]
pub struct RuleTable {
    tables: Vec<Vec<Rule>>,
}

impl RuleTable {
    pub fn new(generators: usize) -> Self {
        RuleTable {
            tables: vec![Vec::new(); generators],
        }
    }

    pub fn rules(&self, index: usize) -> &[Rule] {
        &self.tables[index]
    }

    pub fn len(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.iter().all(Vec::is_empty)
    }

    /// Inserts `(sig.monomial, k)` into the table of `sig.index`, after any
    /// rule with an equal or smaller monomial.
    pub fn add_rule(&mut self, sig: &Signature, k: usize, store: &Store, ctx: &RingContext) {
        assert_eq!(
            store.signature(k),
            sig,
            "rule signature must be the signature of its entry"
        );
        let table = &mut self.tables[sig.index];
        let pos =
            table.partition_point(|r| ctx.compare(&r.monomial, &sig.monomial) != Ordering::Greater);
        table.insert(
            pos,
            Rule {
                monomial: sig.monomial.clone(),
                entry: k,
            },
        );
        debug_assert!(table
            .windows(2)
            .all(|w| ctx.compare(&w[0].monomial, &w[1].monomial) != Ordering::Greater));
    }

    /// Whether `u * sig(k)` is rewritable: the rule with the largest monomial
    /// dividing `u * t` names the canonical entry, and the product is
    /// rewritable iff that entry is not `k`.
    pub fn rewritable(&self, u: &Monomial, k: usize, store: &Store) -> bool {
        let sig = store.signature(k);
        let target = u.mul(&sig.monomial);
        self.tables[sig.index]
            .iter()
            .rev()
            .find(|rule| rule.monomial.divides(&target))
            .is_some_and(|rule| rule.entry != k)
    }
}

/// True iff some entry of `basis` has a leading monomial dividing `t`.
pub fn top_reducible<I>(t: &Monomial, basis: I, store: &Store) -> bool
where
    I: IntoIterator<Item = usize>,
{
    basis
        .into_iter()
        .any(|g| store.leading_monomial(g).divides(t))
}

/// The F5 criterion: `t * e_index` is not a minimal signature when `t` is
/// divisible by the leading monomial of a basis element of smaller index.
pub fn f5_criterion(t: &Monomial, index: usize, basis: &[usize], store: &Store) -> bool {
    top_reducible(
        t,
        basis.iter().copied().filter(|&g| store.index(g) < index),
        store,
    )
}
