//! Abelianization and exact Smith normal form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use galcov_core::presentation::GroupPresentation;

type Row = Vec<(usize, BigInt)>;

/// Sparse integer matrix stored by rows; each row is sorted by column and
/// holds no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub cols: usize,
    rows: Vec<Row>,
}

impl IntegerMatrix {
    pub fn new(cols: usize) -> Self {
        IntegerMatrix { cols, rows: Vec::new() }
    }

    pub fn from_dense(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = IntegerMatrix::new(cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.push_row(r.iter().enumerate().map(|(c, &v)| (c, BigInt::from(v))));
        }
        m
    }

    pub fn push_row<I: IntoIterator<Item = (usize, BigInt)>>(&mut self, entries: I) {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            *acc.entry(c).or_default() += v;
        }
        self.rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.rows[r].iter().find(|(k, _)| *k == c).map(|(_, v)| v.clone()).unwrap_or_default()
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Relation matrix of the abelianization: one row per relator, one column
/// per generator, entries are exponent sums.
pub fn abelianize(p: &GroupPresentation) -> IntegerMatrix {
    let index: std::collections::HashMap<_, _> = p.generators.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let mut m = IntegerMatrix::new(p.generators.len());
    for r in &p.relators {
        m.push_row(r.letters().iter().map(|l| (index[&l.gen], BigInt::from(l.exponent()))));
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | ⋯`, units included.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_free(&self) -> bool {
        self.torsion().is_empty()
    }
}

/// `a - q·b` on sparse rows.
fn sub_multiple(a: &Row, q: &BigInt, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(q * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - q * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form by unimodular row operations; returns the nonzero rows.
fn echelon(rows: Vec<Row>, cols: usize) -> Vec<Row> {
    let mut buckets: Vec<Vec<Row>> = vec![Vec::new(); cols];
    for r in rows {
        if let Some(&(c, _)) = r.first() {
            buckets[c].push(r);
        }
    }
    let mut out = Vec::new();
    for col in 0..cols {
        let mut bucket = std::mem::take(&mut buckets[col]);
        while bucket.len() > 1 {
            // smallest leading entry, then sparsest row, pivots
            let pi = (0..bucket.len())
                .min_by(|&a, &b| {
                    let (ra, rb) = (&bucket[a], &bucket[b]);
                    ra[0].1.abs().cmp(&rb[0].1.abs()).then(ra.len().cmp(&rb.len()))
                })
                .expect("nonempty");
            let pivot = bucket.swap_remove(pi);
            let lead = pivot[0].1.clone();
            let mut keep = vec![pivot.clone()];
            for r in bucket.drain(..) {
                let q = r[0].1.div_floor(&lead);
                let reduced = sub_multiple(&r, &q, &pivot);
                match reduced.first() {
                    None => {}
                    Some(&(c, _)) if c == col => keep.push(reduced),
                    Some(&(c, _)) => buckets[c].push(reduced),
                }
            }
            bucket = keep;
        }
        out.extend(bucket);
    }
    out
}

fn transpose(rows: &[Row], cols: usize) -> Vec<Row> {
    let mut t: Vec<Row> = vec![Vec::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r {
            t[*c].push((i, v.clone()));
        }
    }
    t.into_iter().filter(|r| !r.is_empty()).collect()
}

fn is_diagonal(rows: &[Row]) -> bool {
    rows.iter().all(|r| r.len() == 1)
}

/// Exact Smith normal form.
///
/// Alternates echelon passes on the matrix and its transpose until every
/// row has one entry (the pivots then sit in distinct columns), then turns
/// the diagonal into a divisibility chain.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let mut rows = echelon(m.rows.clone(), m.cols);
    let mut width = m.cols;
    while !is_diagonal(&rows) {
        let height = rows.len();
        rows = echelon(transpose(&rows, width), height);
        width = height;
    }
    let mut diag: Vec<BigInt> = rows.into_iter().map(|r| r[0].1.abs()).collect();
    let rank = diag.len();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    SnfResult { invariant_factors: diag, free_rank: m.cols - rank }
}
