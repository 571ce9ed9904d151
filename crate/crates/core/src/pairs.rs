//! Critical pairs filtered by the F5 criteria, the degree-sliced pair
//! queue, and selection of the S-polynomial components that enter a matrix.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::algebra::{Monomial, RingContext};
use crate::signature::{f5_criterion, RuleTable, Signature, Store};

/// `(lcm, u_k, k, u_l, l)` where `u_k * sig(k) > u_l * sig(l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub lcm: Monomial,
    pub u_k: Monomial,
    pub k: usize,
    pub u_l: Monomial,
    pub l: usize,
    pub degree: u32,
}

impl CriticalPair {
    /// The naturally inferred signature `u_k * sig(k)`.
    pub fn signature(&self, store: &Store) -> Signature {
        store.signature(self.k).mul(&self.u_k)
    }
}

/// Result of [`update_f5`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairOutcome {
    Created(CriticalPair),
    /// A component's signature is not minimal.
    RejectedF5,
    /// A component is rewritable, or both components share one signature.
    RejectedRewritable,
}

impl PairOutcome {
    pub fn pair(self) -> Option<CriticalPair> {
        match self {
            PairOutcome::Created(p) => Some(p),
            _ => None,
        }
    }
}

/// Builds the critical pair of entries `k` and `l` if it passes the F5
/// criterion and the rewrite criterion.
pub fn update_f5(
    k: usize,
    l: usize,
    basis: &[usize],
    store: &Store,
    rules: &RuleTable,
    ctx: &RingContext,
) -> PairOutcome {
    assert_ne!(k, l, "a pair needs two distinct entries");
    let tk = store.leading_monomial(k);
    let tl = store.leading_monomial(l);
    let lcm = tk.lcm(tl);
    let u_k = lcm.checked_div(tk).expect("lcm is a multiple");
    let u_l = lcm.checked_div(tl).expect("lcm is a multiple");
    let (sig_k, sig_l) = (store.signature(k), store.signature(l));

    if f5_criterion(&u_k.mul(&sig_k.monomial), sig_k.index, basis, store)
        || f5_criterion(&u_l.mul(&sig_l.monomial), sig_l.index, basis, store)
    {
        return PairOutcome::RejectedF5;
    }
    if rules.rewritable(&u_k, k, store) || rules.rewritable(&u_l, l, store) {
        return PairOutcome::RejectedRewritable;
    }

    let degree = lcm.degree();
    match sig_k.mul(&u_k).compare(&sig_l.mul(&u_l), ctx) {
        Ordering::Greater => PairOutcome::Created(CriticalPair {
            lcm,
            u_k,
            k,
            u_l,
            l,
            degree,
        }),
        Ordering::Less => PairOutcome::Created(CriticalPair {
            lcm,
            u_k: u_l,
            k: l,
            u_l: u_k,
            l: k,
            degree,
        }),
        // Both components carry the rule of a common signature, so one of
        // them is always rewritable before we get here.
        Ordering::Equal => PairOutcome::RejectedRewritable,
    }
}

/// Pending pairs grouped by degree.
#[derive(Debug, Clone, Default)]
pub struct PairQueue {
    slices: BTreeMap<u32, Vec<CriticalPair>>,
}

impl PairQueue {
    pub fn new() -> Self {
        PairQueue::default()
    }

    pub fn push(&mut self, pair: CriticalPair) {
        self.slices.entry(pair.degree).or_default().push(pair);
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.slices.keys().next().copied()
    }

    /// Removes every pair of the smallest degree. `None` means the queue is
    /// exhausted.
    pub fn pop_min(&mut self) -> Option<(u32, Vec<CriticalPair>)> {
        self.slices.pop_first()
    }

    pub fn len(&self) -> usize {
        self.slices.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }
}

/// The components selected from one degree slice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Selection {
    /// `(u, k)` rows in strictly increasing signature order.
    pub rows: Vec<(Monomial, usize)>,
    /// Pairs dropped because a component became rewritable.
    pub rejected_rewritable: usize,
    /// Pairs dropped because an earlier pair produced the same signature.
    pub duplicates: usize,
}

/// Keeps the larger-signature component of every pair that is still not
/// rewritable. The smaller component is found again as a reductor during
/// symbolic preprocessing.
pub fn s_polynomials_f5(
    mut pairs: Vec<CriticalPair>,
    store: &Store,
    rules: &RuleTable,
    ctx: &RingContext,
) -> Selection {
    // stable: pairs with equal signature stay in creation order
    pairs.sort_by_cached_key(|p| SortKey(p.signature(store), ctx));
    let mut selection = Selection::default();
    let mut kept: Vec<(Signature, Monomial, usize)> = Vec::new();
    for pair in pairs {
        if rules.rewritable(&pair.u_k, pair.k, store) || rules.rewritable(&pair.u_l, pair.l, store)
        {
            selection.rejected_rewritable += 1;
            continue;
        }
        let sig = pair.signature(store);
        if kept.iter().any(|(s, _, _)| *s == sig) {
            selection.duplicates += 1;
            continue;
        }
        kept.push((sig, pair.u_k, pair.k));
    }
    kept.sort_by(|a, b| a.0.compare(&b.0, ctx));
    selection.rows = kept.into_iter().map(|(_, u, k)| (u, k)).collect();
    selection
}

/// Orders signatures under a borrowed ring context.
struct SortKey<'a>(Signature, &'a RingContext);

impl PartialEq for SortKey<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for SortKey<'_> {}

impl PartialOrd for SortKey<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SortKey<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.compare(&other.0, self.1)
    }
}
