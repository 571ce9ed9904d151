//! The F4/5 main loop.
//!
//! Pairs are processed degree by degree. Each degree's selected components
//! are reduced together in one matrix; rows whose leading monomial changes
//! become new labelled entries. An optional certify mode mirrors every row
//! operation on explicit module representations so admissibility of each
//! stored entry can be checked exactly afterwards.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Monomial, Polynomial, RingContext};
use crate::field::Scalar;
use crate::matrix::{reduction_f5, Elimination, MacaulayMatrix, MatrixError, Reduction, RowOp};
use crate::pairs::{s_polynomials_f5, update_f5, CriticalPair, PairOutcome, PairQueue};
use crate::signature::{RuleTable, Signature, Store};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("no input polynomials")]
    EmptyInput,
    #[error("input polynomial {0} is zero")]
    ZeroInput(usize),
    #[error("input polynomial {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("degree cap {cap} is below the input degree {max}")]
    DegreeCapTooSmall { cap: u32, max: u32 },
    #[error("entry {0} has no module representation")]
    MissingRepresentation(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunConfig {
    /// Stop before processing any slice above this degree.
    pub max_degree: Option<u32>,
    /// Track module representations and verify admissibility.
    pub certify: bool,
    pub emit_trace: bool,
}

/// Shape of the matrix reduced at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    /// Nonzero entries added to the basis.
    pub new_entries: usize,
    pub zero_rows: usize,
}

/// Criterion counters. `pairs_created` counts every pair examined by the
/// update step, so it equals the kept pairs plus both update rejection
/// counters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub pairs_created: usize,
    pub pairs_rejected_f5: usize,
    pub pairs_rejected_rewritable_update: usize,
    pub pairs_rejected_rewritable_spoly: usize,
    pub reductors_rejected: usize,
    pub zero_reductions: usize,
    pub degrees: Vec<DegreeRecord>,
    #[serde(skip)]
    pub pairs_kept: usize,
    #[serde(skip)]
    pub duplicate_signatures: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Completed,
    /// Stopped before a slice of this degree.
    DegreeCap(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectionStage {
    Update,
    SPolynomial,
}

/// One line of the optional run trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    PairCreated(CriticalPair),
    PairRejectedF5 {
        k: usize,
        l: usize,
    },
    PairRejectedRw {
        stage: RejectionStage,
        k: usize,
        l: usize,
    },
    SpolKept {
        signature: Signature,
        u: Monomial,
        k: usize,
    },
    ReductorAdded {
        monomial: Monomial,
        u: Monomial,
        k: usize,
    },
    NewEntry {
        entry: usize,
        signature: Signature,
        lm: Monomial,
    },
    ZeroRow {
        entry: usize,
        signature: Signature,
    },
}

impl TraceEvent {
    pub fn render(&self, ctx: &RingContext) -> String {
        let m = |x: &Monomial| ctx.format_monomial(x);
        match self {
            TraceEvent::PairCreated(p) => format!(
                "PAIR_CREATED degree={} lcm={} u_k={} k={} u_l={} l={}",
                p.degree,
                m(&p.lcm),
                m(&p.u_k),
                p.k,
                m(&p.u_l),
                p.l
            ),
            TraceEvent::PairRejectedF5 { k, l } => format!("PAIR_REJECTED_F5 k={k} l={l}"),
            TraceEvent::PairRejectedRw { stage, k, l } => {
                let stage = match stage {
                    RejectionStage::Update => "update",
                    RejectionStage::SPolynomial => "spoly",
                };
                format!("PAIR_REJECTED_RW stage={stage} k={k} l={l}")
            }
            TraceEvent::SpolKept { signature, u, k } => {
                format!("SPOL_KEPT sig={} u={} k={k}", signature.display(ctx), m(u))
            }
            TraceEvent::ReductorAdded { monomial, u, k } => {
                format!("REDUCTOR_ADDED monomial={} u={} k={k}", m(monomial), m(u))
            }
            TraceEvent::NewEntry {
                entry,
                signature,
                lm,
            } => {
                format!(
                    "NEW_ENTRY entry={entry} sig={} lm={}",
                    signature.display(ctx),
                    m(lm)
                )
            }
            TraceEvent::ZeroRow { entry, signature } => {
                format!("ZERO_ROW entry={entry} sig={}", signature.display(ctx))
            }
        }
    }
}

/// Entries created while reducing one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStep {
    pub degree: u32,
    /// Every entry appended, zero ones included.
    pub created: Vec<usize>,
    /// The nonzero ones, which joined the basis.
    pub new_basis: Vec<usize>,
}

/// Row-operation instrumentation accumulated over a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SafetyReport {
    pub row_operations: usize,
    pub signature_violations: usize,
}

/// Per entry, `(h_0, ..., h_{m-1})` with `poly(entry) = sum h_j f_j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuleRepresentation {
    vectors: Vec<Vec<Polynomial>>,
}

impl ModuleRepresentation {
    pub fn new() -> Self {
        ModuleRepresentation::default()
    }

    pub fn push(&mut self, vector: Vec<Polynomial>) {
        self.vectors.push(vector);
    }

    pub fn get(&self, entry: usize) -> Option<&[Polynomial]> {
        self.vectors.get(entry).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// What went wrong with one stored entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// `sum h_j f_j` differs from the entry's polynomial.
    RepresentationMismatch,
    /// `h_j` is nonzero for some `j` above the signature index.
    NonzeroAboveIndex(usize),
    /// `LM(h_index)` is not the signature monomial.
    SignatureMismatch { leading: Option<Monomial> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub entry: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    /// `poly(g)` for every basis entry in creation order, exact duplicates
    /// removed.
    pub basis: Vec<Polynomial>,
    /// Store positions of the basis entries.
    pub basis_entries: Vec<usize>,
    /// The inputs in the order they were assigned generator indices.
    pub generators: Vec<Polynomial>,
    pub store: Store,
    pub rules: RuleTable,
    pub stats: Stats,
    pub steps: Vec<DegreeStep>,
    pub safety: SafetyReport,
    pub terminated_by: Termination,
    pub trace: Vec<TraceEvent>,
    /// Present in certify mode.
    pub representations: Option<ModuleRepresentation>,
    /// Present in certify mode.
    pub violations: Option<Vec<Violation>>,
}

/// Receives every matrix of a run together with its reduced form.
pub trait RunObserver {
    fn matrix_reduced(&mut self, degree: u32, matrix: &MacaulayMatrix, elimination: &Elimination);
}

impl RunObserver for () {
    fn matrix_reduced(&mut self, _: u32, _: &MacaulayMatrix, _: &Elimination) {}
}

/// Computes a Gröbner basis of homogeneous `inputs`.
pub fn f45(
    inputs: &[Polynomial],
    ctx: &RingContext,
    cfg: RunConfig,
) -> Result<RunResult, EngineError> {
    f45_observed(inputs, ctx, cfg, &mut ())
}

/// [`f45`] with a hook that sees every matrix.
pub fn f45_observed(
    inputs: &[Polynomial],
    ctx: &RingContext,
    cfg: RunConfig,
    observer: &mut dyn RunObserver,
) -> Result<RunResult, EngineError> {
    if inputs.is_empty() {
        return Err(EngineError::EmptyInput);
    }
    for (i, f) in inputs.iter().enumerate() {
        if f.is_zero() {
            return Err(EngineError::ZeroInput(i));
        }
        if !f.is_homogeneous() {
            return Err(EngineError::NotHomogeneous(i));
        }
    }
    let max_input = inputs.iter().map(Polynomial::degree).max().unwrap_or(0);
    if let Some(cap) = cfg.max_degree {
        if cap < max_input {
            return Err(EngineError::DegreeCapTooSmall {
                cap,
                max: max_input,
            });
        }
    }

    let mut generators = inputs.to_vec();
    generators.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| {
            ctx.compare(
                a.leading_monomial().expect("nonzero"),
                b.leading_monomial().expect("nonzero"),
            )
        })
    });

    let mut run = Run::new(ctx, cfg, generators.len());
    for (i, f) in generators.iter().enumerate() {
        let lc_inv = ctx
            .modulus()
            .inv(f.leading_coeff().expect("nonzero"))
            .expect("leading coefficient is nonzero");
        let sig = Signature::unit(i, ctx);
        let k = run.store.push(sig.clone(), f.scale(lc_inv, ctx));
        run.rules.add_rule(&sig, k, &run.store, ctx);
        if let Some(reps) = run.reps.as_mut() {
            let mut h = vec![Polynomial::zero(); generators.len()];
            h[i] = Polynomial::constant(lc_inv, ctx);
            reps.push(h);
        }
        run.add_to_basis(k);
    }

    let mut terminated_by = Termination::Completed;
    while let Some(degree) = run.queue.min_degree() {
        if cfg.max_degree.is_some_and(|cap| degree > cap) {
            terminated_by = Termination::DegreeCap(degree);
            break;
        }
        let (degree, slice) = run.queue.pop_min().expect("queue is not empty");
        run.process_degree(degree, slice, observer)?;
    }

    let violations = match &run.reps {
        Some(reps) => Some(certify_verify(&run.store, reps, &generators, ctx)?),
        None => None,
    };

    let mut basis: Vec<Polynomial> = Vec::with_capacity(run.basis.len());
    for &g in &run.basis {
        let f = run.store.poly(g);
        if !basis.contains(f) {
            basis.push(f.clone());
        }
    }

    Ok(RunResult {
        basis,
        basis_entries: run.basis,
        generators,
        store: run.store,
        rules: run.rules,
        stats: run.stats,
        steps: run.steps,
        safety: run.safety,
        terminated_by,
        trace: run.trace,
        representations: run.reps,
        violations,
    })
}

/// Mutable state of one run.
struct Run<'a> {
    ctx: &'a RingContext,
    cfg: RunConfig,
    store: Store,
    rules: RuleTable,
    basis: Vec<usize>,
    queue: PairQueue,
    stats: Stats,
    steps: Vec<DegreeStep>,
    safety: SafetyReport,
    trace: Vec<TraceEvent>,
    reps: Option<ModuleRepresentation>,
}

impl<'a> Run<'a> {
    fn new(ctx: &'a RingContext, cfg: RunConfig, generators: usize) -> Self {
        Run {
            ctx,
            cfg,
            store: Store::new(),
            rules: RuleTable::new(generators),
            basis: Vec::new(),
            queue: PairQueue::new(),
            stats: Stats::default(),
            steps: Vec::new(),
            safety: SafetyReport::default(),
            trace: Vec::new(),
            reps: cfg.certify.then(ModuleRepresentation::new),
        }
    }

    fn emit(&mut self, event: impl FnOnce() -> TraceEvent) {
        if self.cfg.emit_trace {
            self.trace.push(event());
        }
    }

    /// Forms pairs of `k` with the current basis, then adds `k` to it.
    fn add_to_basis(&mut self, k: usize) {
        for j in 0..self.basis.len() {
            let l = self.basis[j];
            self.stats.pairs_created += 1;
            match update_f5(k, l, &self.basis, &self.store, &self.rules, self.ctx) {
                PairOutcome::Created(pair) => {
                    self.stats.pairs_kept += 1;
                    self.emit(|| TraceEvent::PairCreated(pair.clone()));
                    self.queue.push(pair);
                }
                PairOutcome::RejectedF5 => {
                    self.stats.pairs_rejected_f5 += 1;
                    self.emit(|| TraceEvent::PairRejectedF5 { k, l });
                }
                PairOutcome::RejectedRewritable => {
                    self.stats.pairs_rejected_rewritable_update += 1;
                    self.emit(|| TraceEvent::PairRejectedRw {
                        stage: RejectionStage::Update,
                        k,
                        l,
                    });
                }
            }
        }
        self.basis.push(k);
    }

    fn process_degree(
        &mut self,
        degree: u32,
        slice: Vec<CriticalPair>,
        observer: &mut dyn RunObserver,
    ) -> Result<(), EngineError> {
        if self.cfg.emit_trace {
            for pair in &slice {
                if self.rules.rewritable(&pair.u_k, pair.k, &self.store)
                    || self.rules.rewritable(&pair.u_l, pair.l, &self.store)
                {
                    self.trace.push(TraceEvent::PairRejectedRw {
                        stage: RejectionStage::SPolynomial,
                        k: pair.k,
                        l: pair.l,
                    });
                }
            }
        }
        let selection = s_polynomials_f5(slice, &self.store, &self.rules, self.ctx);
        self.stats.pairs_rejected_rewritable_spoly += selection.rejected_rewritable;
        self.stats.duplicate_signatures += selection.duplicates;
        if selection.rows.is_empty() {
            return Ok(());
        }
        for (u, k) in &selection.rows {
            let signature = self.store.signature(*k).mul(u);
            self.emit(|| TraceEvent::SpolKept {
                signature,
                u: u.clone(),
                k: *k,
            });
        }

        let first_new = self.store.len();
        let reduction = reduction_f5(
            &selection.rows,
            &self.basis,
            &mut self.store,
            &mut self.rules,
            self.ctx,
            self.reps.is_some(),
        )?;
        observer.matrix_reduced(degree, &reduction.matrix, &reduction.elimination);
        debug_assert!(reduction.created.iter().all(|c| c.entry >= first_new));

        self.stats.reductors_rejected += reduction.reductors_rejected;
        self.safety.row_operations += reduction.elimination.row_operations;
        self.safety.signature_violations += reduction.elimination.signature_violations;
        let zero_rows = reduction.zero_rows();
        self.stats.zero_reductions += zero_rows;
        self.stats.degrees.push(DegreeRecord {
            degree,
            rows: reduction.matrix.nrows(),
            cols: reduction.matrix.ncols(),
            new_entries: reduction.new_basis.len(),
            zero_rows,
        });

        if self.cfg.emit_trace {
            for (monomial, spec) in &reduction.reductors {
                self.trace.push(TraceEvent::ReductorAdded {
                    monomial: monomial.clone(),
                    u: spec.multiplier.clone(),
                    k: spec.entry,
                });
            }
            for created in &reduction.created {
                let entry = self.store.get(created.entry);
                self.trace.push(match entry.polynomial.leading_monomial() {
                    Some(lm) => TraceEvent::NewEntry {
                        entry: created.entry,
                        signature: entry.signature.clone(),
                        lm: lm.clone(),
                    },
                    None => TraceEvent::ZeroRow {
                        entry: created.entry,
                        signature: entry.signature.clone(),
                    },
                });
            }
        }

        if self.reps.is_some() {
            self.mirror_representations(&reduction);
        }

        self.steps.push(DegreeStep {
            degree,
            created: reduction.created.iter().map(|c| c.entry).collect(),
            new_basis: reduction.new_basis.clone(),
        });
        for &k in &reduction.new_basis {
            self.add_to_basis(k);
        }
        Ok(())
    }

    /// Replays the matrix's row operations on module representations and
    /// records one vector per created entry.
    fn mirror_representations(&mut self, reduction: &Reduction) {
        let ctx = self.ctx;
        let p = ctx.modulus();
        let reps = self.reps.as_mut().expect("certify mode");
        let mut rows: Vec<Vec<Polynomial>> = reduction
            .matrix
            .rows()
            .iter()
            .map(|spec| {
                reps.get(spec.entry)
                    .expect("every entry has a representation")
                    .iter()
                    .map(|h| h.mul_term(Scalar::ONE, &spec.multiplier, ctx))
                    .collect()
            })
            .collect();
        let ops = reduction.elimination.ops.as_deref().unwrap_or(&[]);
        for op in ops {
            match *op {
                RowOp::Scale { row, factor } => {
                    for h in rows[row].iter_mut() {
                        *h = h.scale(factor, ctx);
                    }
                }
                RowOp::Eliminate {
                    target,
                    source,
                    factor,
                } => {
                    let minus = p.neg(factor);
                    let src = rows[source].clone();
                    for (h, s) in rows[target].iter_mut().zip(&src) {
                        *h = h.add_scaled(minus, &ctx.one(), s, ctx);
                    }
                }
            }
        }
        for created in &reduction.created {
            debug_assert_eq!(created.entry, reps.len());
            reps.push(rows[created.row].clone());
        }
        debug_assert_eq!(reps.len(), self.store.len());
    }
}

/// Checks every stored entry against its module representation: the
/// combination must reproduce the polynomial, components above the
/// signature index must vanish, and the leading monomial of the component
/// at the index must be the signature monomial.
pub fn certify_verify(
    store: &Store,
    reps: &ModuleRepresentation,
    generators: &[Polynomial],
    ctx: &RingContext,
) -> Result<Vec<Violation>, EngineError> {
    let mut violations = Vec::new();
    for (entry, labelled) in store.entries().iter().enumerate() {
        let h = reps
            .get(entry)
            .ok_or(EngineError::MissingRepresentation(entry))?;
        let mut combined = Polynomial::zero();
        for (hj, fj) in h.iter().zip(generators) {
            combined = combined.add(&hj.mul(fj, ctx), ctx);
        }
        if combined != labelled.polynomial {
            violations.push(Violation {
                entry,
                kind: ViolationKind::RepresentationMismatch,
            });
        }
        let index = labelled.signature.index;
        if let Some(j) = (index + 1..h.len()).find(|&j| !h[j].is_zero()) {
            violations.push(Violation {
                entry,
                kind: ViolationKind::NonzeroAboveIndex(j),
            });
        }
        let leading = h.get(index).and_then(|hi| hi.leading_monomial());
        if leading.map(|lm| ctx.compare(lm, &labelled.signature.monomial)) != Some(Ordering::Equal)
        {
            violations.push(Violation {
                entry,
                kind: ViolationKind::SignatureMismatch {
                    leading: leading.cloned(),
                },
            });
        }
    }
    Ok(violations)
}
