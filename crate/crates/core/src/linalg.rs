//! Exact linear algebra over `Q`: sparse semi-echelon accumulation, dense
//! reduced row echelon forms, null spaces and canonical subspaces.

use std::collections::BTreeMap;

use crate::rational::Q;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Q)>;

pub fn sparse_from_dense(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<Q> {
    let mut out = vec![Q::ZERO; len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + c * b`
pub fn sparse_axpy(a: &SparseVec, c: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let mut x = a[i].1.clone();
            x.add_mul(c, &b[j].1);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_dot(a: &SparseVec, b: &SparseVec) -> Q {
    let mut acc = Q::ZERO;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc.add_mul(&a[i].1, &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Scales so that the leading entry is 1.
pub fn sparse_normalize(v: &mut SparseVec) {
    if let Some((_, lead)) = v.first() {
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, x) in v.iter_mut() {
                *x = &*x * &inv;
            }
        }
    }
}

/// Incrementally built row space in semi-echelon form: every stored row has a
/// distinct leading index and leading coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    len: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: BTreeMap::new() }
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    /// Residue of `v` after eliminating the leading terms against stored rows.
    /// Zero exactly when `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((lead, c)) = v.first().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = sparse_axpy(&v, &-c, row),
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        sparse_normalize(&mut r);
        self.rows.insert(r[0].0, r);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Fully reduced echelon basis, ordered by pivot.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        // back substitution from the last pivot
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let (idx, c) = (r[k].0, r[k].1.clone());
                if let Some(other) = done.get(&idx) {
                    r = sparse_axpy(&r, &-c, other);
                } else {
                    k += 1;
                }
            }
            done.insert(p, r);
        }
        done.into_values().collect()
    }

    /// Basis of `{x : <x, row> = 0 for every stored row}`.
    pub fn orthogonal_complement(&self) -> Vec<SparseVec> {
        let rref = self.rref();
        let pivots: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let mut is_pivot = vec![false; self.len];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // column f of the rref: (pivot row index, value)
        let mut by_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.len];
        for r in &rref {
            for (idx, c) in &r[1..] {
                by_col[*idx].push((r[0].0, c.clone()));
            }
        }
        let mut out = Vec::new();
        for f in 0..self.len {
            if is_pivot[f] {
                continue;
            }
            let mut v: SparseVec = by_col[f].iter().map(|(p, c)| (*p, -c)).collect();
            v.push((f, Q::ONE));
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// Reduced row echelon form of a dense matrix; returns the nonzero rows and
/// the pivot columns.
pub fn rref_dense(rows: &[Vec<Q>], ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        x.add_mul(&f, y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_dense(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref_dense(rows, ncols).1.len()
}

/// Basis of `{x : M x = 0}` for the dense matrix `rows` with `ncols` columns.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref_dense(rows, ncols);
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![Q::ZERO; ncols];
        v[f] = Q::ONE;
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[f].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `sum_i x_i basis[i] = target`, if possible.
pub fn solve_in_span(basis: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = target.len();
    // augmented system: rows are coordinates, columns are basis vectors
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref_dense(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Q::ZERO; k];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// A linear subspace of `Q^n` stored by its reduced echelon basis, so equal
/// subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Q::ZERO; ambient];
                v[i] = Q::ONE;
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        let (basis, _) = rref_dense(vectors, ambient);
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        if v.iter().all(Q::is_zero) {
            return true;
        }
        solve_in_span(&self.basis, v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // x = sum a_i u_i = sum b_j w_j
        let (k1, k2) = (self.dim(), other.dim());
        let rows: Vec<Vec<Q>> = (0..self.ambient)
            .map(|c| {
                let mut row: Vec<Q> = self.basis.iter().map(|u| u[c].clone()).collect();
                row.extend(other.basis.iter().map(|w| -w[c].clone()));
                row
            })
            .collect();
        let ns = nullspace(&rows, k1 + k2);
        let vecs: Vec<Vec<Q>> = ns
            .iter()
            .map(|coef| {
                let mut v = vec![Q::ZERO; self.ambient];
                for (a, u) in coef[..k1].iter().zip(&self.basis) {
                    if !a.is_zero() {
                        for (x, y) in v.iter_mut().zip(u) {
                            x.add_mul(a, y);
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vecs)
    }
}
