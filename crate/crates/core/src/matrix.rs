//! Macaulay-style matrices: symbolic preprocessing, reductor selection,
//! signature-respecting elimination and the extraction of new entries.
//!
//! Rows are sorted by strictly increasing signature and columns by strictly
//! decreasing monomial. A row is only ever modified by rows above it, so
//! every row operation adds a multiple of a row with smaller signature.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::algebra::{Monomial, Polynomial, RingContext, Term};
use crate::field::{PrimeModulus, Scalar};
use crate::signature::{f5_criterion, RuleTable, Signature, Store};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {0} does not have a strictly larger signature than row {prev}", prev = .0 - 1)]
    RowOrder(usize),
    #[error("columns are not strictly decreasing at position {0}")]
    ColumnOrder(usize),
    #[error("monomial of row {0} is missing from the column set")]
    MissingColumn(usize),
}

/// The product `multiplier * poly(entry)` with its signature cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpec {
    pub multiplier: Monomial,
    pub entry: usize,
    pub signature: Signature,
}

impl RowSpec {
    pub fn new(multiplier: Monomial, entry: usize, store: &Store) -> Self {
        let signature = store.signature(entry).mul(&multiplier);
        RowSpec {
            multiplier,
            entry,
            signature,
        }
    }
}

/// Outcome of a reductor search.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductorSearch {
    pub reductor: Option<(Monomial, usize)>,
    /// Candidates that divided `m` but failed the F5 or rewrite criterion.
    pub rejected: usize,
}

/// Finds the first basis element whose multiple can reduce `m`.
///
/// A candidate `(u, g)` is skipped when it already is a row, when
/// `u * sig(g)` fails the F5 criterion, or when it is rewritable.
pub fn find_reductor(
    m: &Monomial,
    basis: &[usize],
    rows: &[RowSpec],
    store: &Store,
    rules: &RuleTable,
) -> ReductorSearch {
    search_reductor(
        m,
        basis,
        |u, g| rows.iter().any(|r| r.entry == g && r.multiplier == *u),
        store,
        rules,
    )
}

fn search_reductor<F>(
    m: &Monomial,
    basis: &[usize],
    in_rows: F,
    store: &Store,
    rules: &RuleTable,
) -> ReductorSearch
where
    F: Fn(&Monomial, usize) -> bool,
{
    let mut rejected = 0;
    for &g in basis {
        let Some(u) = m.checked_div(store.leading_monomial(g)) else {
            continue;
        };
        if in_rows(&u, g) {
            continue;
        }
        let sig = store.signature(g);
        if f5_criterion(&u.mul(&sig.monomial), sig.index, basis, store)
            || rules.rewritable(&u, g, store)
        {
            rejected += 1;
            continue;
        }
        return ReductorSearch {
            reductor: Some((u, g)),
            rejected,
        };
    }
    ReductorSearch {
        reductor: None,
        rejected,
    }
}

/// Rows and columns chosen for one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    /// Strictly increasing signatures.
    pub rows: Vec<RowSpec>,
    /// Strictly decreasing monomials.
    pub columns: Vec<Monomial>,
    /// Reductor rows in the order they were found, with the monomial each
    /// one was found for.
    pub reductors: Vec<(Monomial, RowSpec)>,
    pub reductors_rejected: usize,
}

/// Collects every product that might be needed to reduce the selected rows.
///
/// The largest unprocessed monomial is handled first; each reductor found
/// contributes its own monomials. Returns the rows sorted by increasing
/// signature and the processed monomials sorted decreasing.
pub fn symbolic_preprocessing(
    selected: Vec<RowSpec>,
    basis: &[usize],
    store: &Store,
    rules: &RuleTable,
    ctx: &RingContext,
) -> Preprocessed {
    let mut rows = selected;
    let mut members: HashSet<(Monomial, usize)> = rows
        .iter()
        .map(|r| (r.multiplier.clone(), r.entry))
        .collect();
    let mut seen: HashSet<Monomial> = HashSet::new();
    // ascending; the maximum sits at the end
    let mut pending: Vec<Monomial> = Vec::new();
    let enqueue = |m: Monomial, seen: &mut HashSet<Monomial>, pending: &mut Vec<Monomial>| {
        if seen.insert(m.clone()) {
            let pos = pending.partition_point(|p| ctx.compare(p, &m) == Ordering::Less);
            pending.insert(pos, m);
        }
    };
    for row in &rows {
        for t in store.poly(row.entry).monomials() {
            enqueue(t.mul(&row.multiplier), &mut seen, &mut pending);
        }
    }

    let mut done = Vec::new();
    let mut reductors = Vec::new();
    let mut reductors_rejected = 0;
    while let Some(m) = pending.pop() {
        let search = search_reductor(
            &m,
            basis,
            |u, g| members.contains(&(u.clone(), g)),
            store,
            rules,
        );
        reductors_rejected += search.rejected;
        if let Some((u, g)) = search.reductor {
            for t in store.poly(g).monomials() {
                enqueue(t.mul(&u), &mut seen, &mut pending);
            }
            members.insert((u.clone(), g));
            let spec = RowSpec::new(u, g, store);
            reductors.push((m.clone(), spec.clone()));
            rows.push(spec);
        }
        done.push(m);
    }

    rows.sort_by(|a, b| a.signature.compare(&b.signature, ctx));
    // popped in decreasing order; later pushes are always smaller
    debug_assert!(done
        .windows(2)
        .all(|w| ctx.compare(&w[0], &w[1]) == Ordering::Greater));
    Preprocessed {
        rows,
        columns: done,
        reductors,
        reductors_rejected,
    }
}

/// A sparse row: `(column, coefficient)` sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacaulayMatrix {
    rows: Vec<RowSpec>,
    columns: Vec<Monomial>,
    coeffs: Vec<SparseRow>,
}

impl MacaulayMatrix {
    /// Expands each `u * poly(k)` over the given columns.
    pub fn build(
        rows: Vec<RowSpec>,
        columns: Vec<Monomial>,
        store: &Store,
        ctx: &RingContext,
    ) -> Result<Self, MatrixError> {
        for (i, w) in rows.windows(2).enumerate() {
            if w[0].signature.compare(&w[1].signature, ctx) != Ordering::Less {
                return Err(MatrixError::RowOrder(i + 1));
            }
        }
        for (i, w) in columns.windows(2).enumerate() {
            if ctx.compare(&w[0], &w[1]) != Ordering::Greater {
                return Err(MatrixError::ColumnOrder(i + 1));
            }
        }
        let index: HashMap<&Monomial, usize> =
            columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut coeffs = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let mut sparse = SparseRow::with_capacity(store.poly(row.entry).len());
            for term in store.poly(row.entry).terms() {
                let m = term.monomial.mul(&row.multiplier);
                let &c = index.get(&m).ok_or(MatrixError::MissingColumn(r))?;
                sparse.push((c, term.coeff));
            }
            // products keep the term order, so columns are already ascending
            debug_assert!(sparse.windows(2).all(|w| w[0].0 < w[1].0));
            coeffs.push(sparse);
        }
        Ok(MacaulayMatrix {
            rows,
            columns,
            coeffs,
        })
    }

    pub fn rows(&self) -> &[RowSpec] {
        &self.rows
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn coeffs(&self) -> &[SparseRow] {
        &self.coeffs
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// Reads a sparse row back as a polynomial.
    pub fn polynomial(&self, row: &SparseRow, ctx: &RingContext) -> Polynomial {
        Polynomial::from_sorted_terms(
            row.iter()
                .map(|&(c, coeff)| Term {
                    coeff,
                    monomial: self.columns[c].clone(),
                })
                .collect(),
            ctx,
        )
    }

    /// Line-oriented dump: one line per column set, one per row.
    pub fn dump(&self, degree: u32, ctx: &RingContext) -> String {
        let mut out = format!(
            "MATRIX degree={degree} rows={} cols={}\n",
            self.nrows(),
            self.ncols()
        );
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|m| ctx.format_monomial(m))
            .collect();
        out.push_str(&format!("COLUMNS {}\n", cols.join(" ")));
        for row in &self.rows {
            out.push_str(&format!(
                "ROW sig={} u={} entry={}\n",
                row.signature.display(ctx),
                ctx.format_monomial(&row.multiplier),
                row.entry
            ));
        }
        out
    }
}

/// One recorded row operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOp {
    /// `row *= factor`
    Scale { row: usize, factor: Scalar },
    /// `target -= factor * source`
    Eliminate {
        target: usize,
        source: usize,
        factor: Scalar,
    },
}

/// The reduced rows plus instrumentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub rows: Vec<SparseRow>,
    /// Present when recording was requested.
    pub ops: Option<Vec<RowOp>>,
    pub row_operations: usize,
    /// Eliminations whose source row did not have a strictly smaller
    /// signature than the target.
    pub signature_violations: usize,
}

impl Elimination {
    pub fn leading_column(&self, row: usize) -> Option<usize> {
        self.rows[row].first().map(|e| e.0)
    }

    pub fn polynomials(&self, matrix: &MacaulayMatrix, ctx: &RingContext) -> Vec<Polynomial> {
        self.rows
            .iter()
            .map(|r| matrix.polynomial(r, ctx))
            .collect()
    }
}

/// `target - factor * source` on sparse rows.
fn sub_scaled(
    target: &SparseRow,
    factor: Scalar,
    source: &SparseRow,
    p: PrimeModulus,
) -> SparseRow {
    let mut out = SparseRow::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let a = target.get(i);
        let b = source.get(j);
        match (a, b) {
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                let v = p.sub(va, p.mul(factor, vb));
                if !v.is_zero() {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                out.push((ca, va));
                i += 1;
            }
            (Some(&(ca, va)), None) => {
                out.push((ca, va));
                i += 1;
            }
            (_, Some(&(cb, vb))) => {
                out.push((cb, p.neg(p.mul(factor, vb))));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Row echelon form without row or column swaps.
///
/// Columns are swept left to right. The pivot of a column is the first row
/// whose leftmost nonzero entry lies in it; that row is made monic and its
/// multiples are subtracted from every later row with a nonzero entry in
/// the column. Earlier rows are never touched.
pub fn gaussian_elimination_f5(
    matrix: &MacaulayMatrix,
    ctx: &RingContext,
    record: bool,
) -> Elimination {
    let p = ctx.modulus();
    let mut rows = matrix.coeffs.clone();
    let mut ops = record.then(Vec::new);
    let mut row_operations = 0;
    let mut signature_violations = 0;
    let m = rows.len();

    for c in 0..matrix.ncols() {
        let Some(r) = (0..m).find(|&r| rows[r].first().map(|e| e.0) == Some(c)) else {
            continue;
        };
        let lead = rows[r][0].1;
        if lead != Scalar::ONE {
            let inv = p.inv(lead).expect("pivot is nonzero");
            for e in rows[r].iter_mut() {
                e.1 = p.mul(e.1, inv);
            }
            if let Some(ops) = ops.as_mut() {
                ops.push(RowOp::Scale {
                    row: r,
                    factor: inv,
                });
            }
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for (offset, target) in tail.iter_mut().enumerate() {
            let Ok(pos) = target.binary_search_by_key(&c, |e| e.0) else {
                continue;
            };
            let i = r + 1 + offset;
            let factor = target[pos].1;
            *target = sub_scaled(target, factor, pivot, p);
            row_operations += 1;
            if matrix.rows[r]
                .signature
                .compare(&matrix.rows[i].signature, ctx)
                != Ordering::Less
            {
                signature_violations += 1;
            }
            if let Some(ops) = ops.as_mut() {
                ops.push(RowOp::Eliminate {
                    target: i,
                    source: r,
                    factor,
                });
            }
        }
    }

    Elimination {
        rows,
        ops,
        row_operations,
        signature_violations,
    }
}

/// A store entry created from a matrix row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreatedEntry {
    pub row: usize,
    pub entry: usize,
    pub is_zero: bool,
}

/// Everything produced while reducing one degree.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub matrix: MacaulayMatrix,
    pub elimination: Elimination,
    pub reduced: Vec<Polynomial>,
    pub reductors: Vec<(Monomial, RowSpec)>,
    pub reductors_rejected: usize,
    /// In row order.
    pub created: Vec<CreatedEntry>,
    /// Nonzero new entries, in row order.
    pub new_basis: Vec<usize>,
}

impl Reduction {
    pub fn zero_rows(&self) -> usize {
        self.created.iter().filter(|c| c.is_zero).count()
    }
}

/// Builds and reduces the matrix for the selected rows, then stores every
/// row whose leading monomial changed as a new entry with its own rule.
/// Only the nonzero ones are returned for the basis.
pub fn reduction_f5(
    selected: &[(Monomial, usize)],
    basis: &[usize],
    store: &mut Store,
    rules: &mut RuleTable,
    ctx: &RingContext,
    record_ops: bool,
) -> Result<Reduction, MatrixError> {
    let specs = selected
        .iter()
        .map(|(u, k)| RowSpec::new(u.clone(), *k, store))
        .collect();
    let pre = symbolic_preprocessing(specs, basis, store, rules, ctx);
    let matrix = MacaulayMatrix::build(pre.rows, pre.columns, store, ctx)?;
    let elimination = gaussian_elimination_f5(&matrix, ctx, record_ops);
    let reduced = elimination.polynomials(&matrix, ctx);

    let mut created = Vec::new();
    let mut new_basis = Vec::new();
    for (row, (spec, poly)) in matrix.rows().iter().zip(&reduced).enumerate() {
        let original = store.leading_monomial(spec.entry).mul(&spec.multiplier);
        if poly.leading_monomial() == Some(&original) {
            continue;
        }
        let entry = store.push(spec.signature.clone(), poly.clone());
        rules.add_rule(&spec.signature, entry, store, ctx);
        created.push(CreatedEntry {
            row,
            entry,
            is_zero: poly.is_zero(),
        });
        if !poly.is_zero() {
            new_basis.push(entry);
        }
    }

    Ok(Reduction {
        matrix,
        elimination,
        reduced,
        reductors: pre.reductors,
        reductors_rejected: pre.reductors_rejected,
        created,
        new_basis,
    })
}
