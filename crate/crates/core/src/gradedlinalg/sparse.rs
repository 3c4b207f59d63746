//! Sparse exact linear algebra over Q: incremental reduced row echelon form,
//! null spaces and particular solutions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::symalg::Q;

/// Sparse vector: strictly increasing column indices, nonzero values.
pub type SparseVec = Vec<(usize, Q)>;

pub fn sparse_from_map(m: BTreeMap<usize, Q>) -> SparseVec {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a + c * b`
pub fn axpy(a: &SparseVec, c: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SparseVec, c: &Q) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, v)| (*k, v * c)).collect()
}

fn lookup(a: &SparseVec, col: usize) -> Option<&Q> {
    a.binary_search_by_key(&col, |(k, _)| *k).ok().map(|i| &a[i].1)
}

/// Reduced row echelon form maintained under row insertion. Every stored row
/// has a leading one at its pivot and zeros in all other pivot columns.
#[derive(Clone, Debug, Default)]
pub struct Rref {
    rows: Vec<SparseVec>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Rref {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_of.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<&SparseVec> {
        self.pivot_of.values().map(|&r| &self.rows[r]).collect()
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Q> = v.iter().cloned().collect();
        for (col, c) in v {
            if let Some(&r) = self.pivot_of.get(col) {
                for (k, x) in &self.rows[r] {
                    let e = acc.entry(*k).or_insert_with(Q::zero);
                    *e -= c * x;
                }
            }
        }
        sparse_from_map(acc)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns the new pivot column if `v` was
    /// independent of the rows already present.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let red = self.reduce(v);
        let (p, lead) = red.first().cloned()?;
        let row = scale(&red, &lead.recip());
        for existing in self.rows.iter_mut() {
            if let Some(c) = lookup(existing, p).cloned() {
                *existing = axpy(existing, &-c, &row);
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(row);
        Some(p)
    }

    /// Basis of `{x : R x = 0}` over `ncols` columns, one vector per free
    /// column in increasing order.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        // For each free column f, entries -row[f] at the pivots of rows that touch f.
        let mut by_free: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (&p, &r) in &self.pivot_of {
            for (k, x) in &self.rows[r] {
                if *k != p {
                    by_free.entry(*k).or_default().push((p, -x.clone()));
                }
            }
        }
        (0..ncols)
            .filter(|c| !self.pivot_of.contains_key(c))
            .map(|f| {
                let mut v = by_free.remove(&f).unwrap_or_default();
                v.push((f, Q::one()));
                v.sort_by_key(|(k, _)| *k);
                v
            })
            .collect()
    }
}

/// Particular solution of `sum_j x_j * columns[j] = target` with free
/// unknowns set to zero. `order` permutes the unknowns before elimination,
/// so different orders may select different solutions.
pub fn solve_linear(columns: &[SparseVec], target: &SparseVec, order: &[usize]) -> Option<Vec<Q>> {
    let n = columns.len();
    debug_assert_eq!(order.len(), n);
    // Transpose into equations over permuted unknowns plus an augmented column n.
    let mut eqs: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    for (pos, &j) in order.iter().enumerate() {
        for (row, v) in &columns[j] {
            eqs.entry(*row).or_default().insert(pos, v.clone());
        }
    }
    for (row, v) in target {
        eqs.entry(*row).or_default().insert(n, v.clone());
    }
    let mut rref = Rref::new();
    for (_, e) in eqs {
        if let Some(p) = rref.insert(&sparse_from_map(e)) {
            if p == n {
                return None;
            }
        }
    }
    let mut x = vec![Q::zero(); n];
    for row in rref.sorted_rows() {
        let p = row[0].0;
        if let Some(b) = lookup(row, n) {
            x[order[p]] = b.clone();
        }
    }
    Some(x)
}
