//! Partitions, Young tableaux and the cocharacter of `P_<n>(A)`.
//!
//! The symmetric group acts on `P_<n>` by relabeling variables inside each
//! slot. Multiplicities are read off as `dim e_T M` for the Young
//! symmetrizer `e_T` of one standard multitableau, with `M` the block modulo
//! the identities of the algebra.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::codim::{factorials, lex_permutations, perm_rank, DegreeVector, Engine, Mode};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{Monomial, Polynomial, VarKind, Variable};
use crate::rational::{binomial, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// First part, 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One partition per slot of a degree vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition(pub Vec<Partition>);

impl Multipartition {
    pub fn degree_vector(&self) -> DegreeVector {
        DegreeVector(self.0.iter().map(Partition::weight).collect())
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(Partition::weight).sum()
    }

    /// `prod d_{lambda_i}`.
    pub fn dim(&self) -> u64 {
        self.0.iter().map(hook_dim).product()
    }
}

impl std::fmt::Display for Multipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn multipartitions(nv: &DegreeVector) -> Vec<Multipartition> {
    let mut out = vec![Vec::new()];
    for &k in &nv.0 {
        let ps = partitions(k);
        let mut next = Vec::with_capacity(out.len() * ps.len());
        for prefix in &out {
            for p in &ps {
                let mut v: Vec<Partition> = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Multipartition).collect()
}

/// Number of standard tableaux of shape `lambda`, by the hook formula.
pub fn hook_dim(lambda: &Partition) -> u64 {
    let n = lambda.weight();
    let conj = lambda.conjugate();
    let mut num = crate::rational::factorial(n as u64);
    for (i, &row) in lambda.0.iter().enumerate() {
        for j in 0..row {
            let hook = (row - j - 1) + (conj.0[j] - i - 1) + 1;
            num /= hook as u64;
        }
    }
    num.to_u64().expect("dimension fits in u64")
}

/// A filling of a Young diagram by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungTableau {
    pub rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn is_standard(&self) -> bool {
        let n = self.shape().weight();
        let mut seen = vec![false; n + 1];
        for r in &self.rows {
            for &e in r {
                if e == 0 || e > n || seen[e] {
                    return false;
                }
                seen[e] = true;
            }
        }
        if self.rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return false;
        }
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = (1..self.rows.len()).all(|i| (0..self.rows[i].len()).all(|j| self.rows[i - 1][j] < self.rows[i][j]));
        rows_ok && cols_ok
    }

    /// Columns filled top to bottom, left to right.
    pub fn column_superstandard(lambda: &Partition) -> YoungTableau {
        let mut rows: Vec<Vec<usize>> = lambda.0.iter().map(|&p| vec![0; p]).collect();
        let mut next = 1;
        for (j, &h) in lambda.conjugate().0.iter().enumerate() {
            for row in rows.iter_mut().take(h) {
                row[j] = next;
                next += 1;
            }
        }
        YoungTableau { rows }
    }

    /// Rows filled left to right, top to bottom.
    pub fn row_superstandard(lambda: &Partition) -> YoungTableau {
        let mut next = 1;
        let rows = lambda
            .0
            .iter()
            .map(|&p| {
                let r: Vec<usize> = (next..next + p).collect();
                next += p;
                r
            })
            .collect();
        YoungTableau { rows }
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let w = self.rows.first().map_or(0, Vec::len);
        (0..w).map(|j| self.rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect()
    }
}

/// All standard tableaux of a shape, by placing `n, n-1, ...` at corners.
pub fn standard_tableaux(lambda: &Partition) -> Vec<YoungTableau> {
    fn rec(shape: &mut Vec<usize>, n: usize, fill: &mut Vec<Vec<usize>>, out: &mut Vec<YoungTableau>) {
        if n == 0 {
            out.push(YoungTableau { rows: fill.clone() });
            return;
        }
        for i in 0..shape.len() {
            let len = shape[i];
            if len == 0 {
                continue;
            }
            let below = shape.get(i + 1).copied().unwrap_or(0);
            if below >= len {
                continue;
            }
            shape[i] -= 1;
            fill[i][len - 1] = n;
            rec(shape, n - 1, fill, out);
            shape[i] += 1;
        }
    }
    let mut shape = lambda.0.clone();
    let mut fill: Vec<Vec<usize>> = lambda.0.iter().map(|&p| vec![0; p]).collect();
    let mut out = Vec::new();
    rec(&mut shape, lambda.weight(), &mut fill, &mut out);
    out
}

/// `|Delta_n|`: vectors with `2t` entries summing to `n` and `n_1 > n - q`.
pub fn delta_count(n: usize, q: usize, t: usize) -> u64 {
    let r = n.min(q.saturating_sub(1));
    binomial((r + 2 * t - 1) as u64, (2 * t - 1) as u64).to_u64().unwrap()
}

/// The constant `C((q-1)+2t-1, 2t-1)`; equal to `delta_count` once `n >= q-1`.
pub fn delta_closed_form(q: usize, t: usize) -> u64 {
    binomial((q - 1 + 2 * t - 1) as u64, (2 * t - 1) as u64).to_u64().unwrap()
}

pub fn delta_enumerate(n: usize, q: usize, t: usize) -> u64 {
    DegreeVector::all(2 * t, n).iter().filter(|nv| nv.0[0] + q > n).count() as u64
}

/// `(q-1) p(q)^{2t}`, with `p` the partition count.
pub fn tset_bound(q: usize, t: usize) -> u64 {
    let pq = partitions(q).len() as u64;
    (q as u64 - 1) * pq.pow(2 * t as u32)
}

/// Multipartitions of `nv` with `(lambda_1)_1 > n - q`.
pub fn tset_enumerate(nv: &DegreeVector, q: usize) -> u64 {
    let n = nv.weight();
    multipartitions(nv).iter().filter(|mp| mp.0[0].first() + q > n).count() as u64
}

/// Permutations of `0..n` fixing everything outside `blocks`, each block
/// permuted internally. Returned with signs.
fn block_group(n: usize, blocks: &[Vec<usize>]) -> Vec<(Vec<usize>, i64)> {
    let mut out = vec![((0..n).collect::<Vec<usize>>(), 1i64)];
    for b in blocks {
        if b.len() < 2 {
            continue;
        }
        let perms = lex_permutations(b.len());
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for (p, s) in &out {
            for q in &perms {
                let mut np = p.clone();
                for (i, &k) in q.iter().enumerate() {
                    np[b[i]] = p[b[k]];
                }
                next.push((np, s * perm_sign(q)));
            }
        }
        out = next;
    }
    out
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// A multitableau in global variable positions: per slot, rows and columns
/// as lists of positions `0..n`.
struct Placed {
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
    /// (slot, row) of each position
    row_id: Vec<(usize, usize)>,
}

fn place(mp: &Multipartition, tableaux: &[YoungTableau]) -> Result<Placed> {
    if tableaux.len() != mp.0.len() {
        return Err(Error::InvalidParameter("one tableau per slot is required".into()));
    }
    let n = mp.weight();
    let mut offset = 0;
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    let mut row_id = vec![(0, 0); n];
    for (s, (lam, t)) in mp.0.iter().zip(tableaux).enumerate() {
        if &t.shape() != lam || !t.is_standard() {
            return Err(Error::InvalidParameter(format!("tableau for slot {s} is not a standard tableau of shape {lam}")));
        }
        for (i, r) in t.rows.iter().enumerate() {
            let pos: Vec<usize> = r.iter().map(|e| offset + e - 1).collect();
            for &p in &pos {
                row_id[p] = (s, i);
            }
            rows.push(pos);
        }
        for c in t.columns() {
            cols.push(c.iter().map(|e| offset + e - 1).collect());
        }
        offset += lam.weight();
    }
    Ok(Placed { rows, cols, row_id })
}

fn superstandard(mp: &Multipartition) -> Vec<YoungTableau> {
    mp.0.iter().map(YoungTableau::column_superstandard).collect()
}

/// Dense rows of a column space basis.
fn dense_rows(ech: &Echelon) -> Vec<Vec<Q>> {
    ech.rows()
        .map(|r| {
            let mut v = vec![Q::ZERO; ech.ambient()];
            for (i, c) in r {
                v[*i] = c.clone();
            }
            v
        })
        .collect()
}

fn pair(v: &HashMap<usize, Q>, rows: &[Vec<Q>]) -> SparseVec {
    let mut out = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let mut s = Q::ZERO;
        for (r, c) in v {
            if !row[*r].is_zero() {
                s.add_mul(c, &row[*r]);
            }
        }
        if !s.is_zero() {
            out.push((k, s));
        }
    }
    out
}

/// `m_<lambda>(A)` via the column-superstandard multitableau.
pub fn multiplicity(e: &Engine, mp: &Multipartition) -> Result<usize> {
    multiplicity_with(e, mp, &superstandard(mp))
}

/// `m_<lambda>(A)` as `dim e_T M` for the given standard multitableau.
pub fn multiplicity_with(e: &Engine, mp: &Multipartition, tableaux: &[YoungTableau]) -> Result<usize> {
    let nv = mp.degree_vector();
    if nv.slots() != e.slot_count(Mode::Full) {
        return Err(Error::InvalidParameter("multipartition has the wrong number of slots".into()));
    }
    let n = nv.weight();
    let cs = e.column_space(Mode::Full, &nv.assignment())?;
    if cs.rank() == 0 {
        return Ok(0);
    }
    let placed = place(mp, tableaux)?;
    let rgroup = block_group(n, &placed.rows);
    let cgroup = block_group(n, &placed.cols);
    let rows = dense_rows(&cs);
    // m * prod d_lambda never exceeds dim M
    let bound = cs.rank() / mp.dim() as usize;
    if bound == 0 {
        return Ok(0);
    }
    let mut ech = Echelon::new(rows.len());
    for pi in lex_permutations(n) {
        // e_T w_pi = sum_c sgn(c) sum_r  (c r) . w_pi, letters relabeled
        let mut acc: HashMap<usize, Q> = HashMap::new();
        for (c, sc) in &cgroup {
            for (r, _) in &rgroup {
                let w: Vec<usize> = pi.iter().map(|&x| c[r[x]]).collect();
                *acc.entry(perm_rank(&w)).or_insert(Q::ZERO) += &Q::from_int(*sc);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let v = pair(&acc, &rows);
        if !v.is_empty() {
            ech.insert(v);
            if ech.rank() >= bound {
                break;
            }
        }
    }
    Ok(ech.rank())
}

/// All nonzero multiplicities of a block.
pub fn cocharacter(e: &Engine, nv: &DegreeVector) -> Result<Vec<(Multipartition, usize)>> {
    let mut out = Vec::new();
    if e.block_codim(nv)? == 0 {
        return Ok(out);
    }
    for mp in multipartitions(nv) {
        let m = multiplicity(e, &mp)?;
        if m > 0 {
            out.push((mp, m));
        }
    }
    Ok(out)
}

/// `l_n(A)`: the sum of all multiplicities at degree `n`.
pub fn colength(e: &Engine, n: usize) -> Result<usize> {
    let slots = e.slot_count(Mode::Full);
    let mut total = 0;
    for nv in DegreeVector::all(slots, n) {
        total += cocharacter(e, &nv)?.iter().map(|(_, m)| m).sum::<usize>();
    }
    Ok(total)
}

/// Whether `m_<lambda> = 0` whenever `n - (lambda_1)_1 >= q`, `q` the
/// nilpotency index of the radical.
pub fn radical_strip_check(e: &Engine, n: usize) -> Result<bool> {
    let q = e.radical_index();
    let slots = e.slot_count(Mode::Full);
    for nv in DegreeVector::all(slots, n) {
        if e.block_codim(&nv)? == 0 {
            continue;
        }
        for mp in multipartitions(&nv) {
            if n - mp.0[0].first() >= q && multiplicity(e, &mp)? > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn slot_variable(slot: usize, row: usize) -> Variable {
    let kind = if slot % 2 == 0 { VarKind::Y } else { VarKind::Z };
    Variable::new(kind, row + 1, slot / 2)
}

/// Highest weight vector of a standard multitableau: one variable per
/// (slot, row), alternated along every column. Position `j` of each word
/// holds the variable of the row that the column permutation sends `j` to.
pub fn highest_weight_vector(mp: &Multipartition, tableaux: &[YoungTableau]) -> Result<Polynomial> {
    let placed = place(mp, tableaux)?;
    let n = mp.weight();
    let mut f = Polynomial::zero();
    for (c, s) in block_group(n, &placed.cols) {
        let word: Vec<Variable> = (0..n)
            .map(|j| {
                let (slot, row) = placed.row_id[c[j]];
                slot_variable(slot, row)
            })
            .collect();
        f.add_term(Monomial(word), Q::from_int(s));
    }
    Ok(f)
}

/// Full linearization of [`highest_weight_vector`] in the variables of the
/// block, as coordinates over the `n!` orderings.
pub fn linearized_hwv(mp: &Multipartition, tableaux: &[YoungTableau]) -> Result<SparseVec> {
    let placed = place(mp, tableaux)?;
    let n = mp.weight();
    let rgroup = block_group(n, &placed.rows);
    let mut acc: HashMap<usize, Q> = HashMap::new();
    for (c, s) in block_group(n, &placed.cols) {
        for (r, _) in &rgroup {
            let w: Vec<usize> = (0..n).map(|j| r[c[j]]).collect();
            *acc.entry(perm_rank(&w)).or_insert(Q::ZERO) += &Q::from_int(s);
        }
    }
    let mut v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|e| e.0);
    Ok(v)
}

/// Rank modulo the identities of the linearized highest weight vector of
/// the column-superstandard multitableau under all place permutations.
/// Computed independently of [`multiplicity`] and agrees with it.
pub fn hwv_rank(e: &Engine, mp: &Multipartition) -> Result<usize> {
    let nv = mp.degree_vector();
    let n = nv.weight();
    let cs = e.column_space(Mode::Full, &nv.assignment())?;
    if cs.rank() == 0 {
        return Ok(0);
    }
    let rows = dense_rows(&cs);
    let perms = lex_permutations(n);
    let lin = linearized_hwv(mp, &superstandard(mp))?;
    let mut ech = Echelon::new(rows.len());
    for sigma in &perms {
        // position j of the new word is position sigma(j) of the old one
        let mut v: HashMap<usize, Q> = HashMap::new();
        for (r, c) in &lin {
            let w: Vec<usize> = sigma.iter().map(|&j| perms[*r][j]).collect();
            *v.entry(perm_rank(&w)).or_insert(Q::ZERO) += c;
        }
        let p = pair(&v, &rows);
        if !p.is_empty() {
            ech.insert(p);
        }
    }
    Ok(ech.rank())
}

/// `n!` as used for block sizes.
pub fn block_size(n: usize) -> usize {
    factorials(n)[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(0), vec![Partition(vec![])]);
        assert_eq!(multipartitions(&DegreeVector(vec![2, 1])).len(), 2);
    }

    #[test]
    fn hooks_match_enumeration() {
        for n in 0..=7 {
            let mut sq = 0;
            for p in partitions(n) {
                let d = hook_dim(&p);
                assert_eq!(d as usize, standard_tableaux(&p).len(), "{p}");
                sq += d * d;
            }
            assert_eq!(sq as usize, block_size(n));
        }
        assert_eq!(hook_dim(&Partition(vec![2, 1])), 2);
        assert_eq!(hook_dim(&Partition(vec![5, 1])), 5);
    }

    #[test]
    fn superstandard_tableaux_are_standard() {
        for p in partitions(6) {
            assert!(YoungTableau::column_superstandard(&p).is_standard());
            assert!(YoungTableau::row_superstandard(&p).is_standard());
        }
        let bad = YoungTableau { rows: vec![vec![2, 1]] };
        assert!(!bad.is_standard());
    }

    #[test]
    fn delta_counts() {
        assert_eq!(delta_count(10, 3, 2), 10);
        assert_eq!(delta_count(7, 1, 3), 1);
        for n in 0..=12 {
            for q in 1..=4 {
                for t in 1..=3 {
                    assert_eq!(delta_count(n, q, t), delta_enumerate(n, q, t));
                    if n + 1 >= q {
                        assert_eq!(delta_count(n, q, t), delta_closed_form(q, t));
                    }
                }
            }
        }
    }

    #[test]
    fn tset_bound_holds_from_q2() {
        for q in 2..=4 {
            for t in 1..=2 {
                for n in 0..=8 {
                    for nv in DegreeVector::all(2 * t, n) {
                        assert!(tset_enumerate(&nv, q) <= tset_bound(q, t));
                    }
                }
            }
        }
        // at q = 1 the bound is 0 but the one-row shape still counts
        assert_eq!(tset_bound(1, 1), 0);
        assert_eq!(tset_enumerate(&DegreeVector(vec![3, 0]), 1), 1);
    }
}
