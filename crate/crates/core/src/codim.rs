//! Multilinear spaces `P_<n>`, their evaluation matrices and everything
//! built from their ranks and kernels.
//!
//! Rows of an evaluation matrix are the `n!` orderings of a fixed variable
//! set, ranked lexicographically (`rank 0` is `x_1 x_2 ... x_n`). Columns are
//! pairs (basis tuple, output coordinate). Only the row space of the
//! transpose is stored, as an [`Echelon`] over `n!` coordinates.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algebra::{GStarAlgebra, Sign};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::linalg::{sparse_dot, sparse_normalize, Echelon, SparseVec, Subspace};
use crate::poly::{Monomial, Polynomial, VarKind, Variable};
use crate::rational::{multinomial, Q};

pub const DEFAULT_CAP: usize = 5040;

/// Counts per slot. In [`Mode::Full`] slot `2j` holds symmetric variables of
/// degree `g_j` and slot `2j+1` skew ones; `g_0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn new(counts: Vec<usize>) -> Self {
        DegreeVector(counts)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn slots(&self) -> usize {
        self.0.len()
    }

    /// All vectors with `slots` entries summing to `n`, lexicographically
    /// decreasing from `(n,0,...)`.
    pub fn all(slots: usize, n: usize) -> Vec<DegreeVector> {
        fn rec(slots: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeVector>) {
            if cur.len() + 1 == slots {
                cur.push(n);
                out.push(DegreeVector(cur.clone()));
                cur.pop();
                return;
            }
            for k in (0..=n).rev() {
                cur.push(k);
                rec(slots, n - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if slots > 0 {
            rec(slots, n, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn multinomial(&self) -> u64 {
        multinomial(&self.0).to_u64().expect("multinomial fits in u64")
    }

    /// Slot of each variable, variables sorted by slot.
    pub fn assignment(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(s, &k)| std::iter::repeat(s).take(k)).collect()
    }

    /// The variables of `P_<n>` in [`Mode::Full`], numbered from 1 within
    /// each slot.
    pub fn variables(&self) -> Vec<Variable> {
        variables_for(&self.assignment())
    }

    pub fn parse(text: &str) -> Result<DegreeVector> {
        let t = text.trim().trim_start_matches(['(', '<', '[']).trim_end_matches([')', '>', ']']);
        let v: std::result::Result<Vec<usize>, _> = t.split(',').map(|s| s.trim().parse()).collect();
        v.map(DegreeVector).map_err(|_| Error::MalformedInput(format!("bad degree vector {text:?}")))
    }
}

impl std::fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn variables_for(assign: &[usize]) -> Vec<Variable> {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    assign
        .iter()
        .map(|&s| {
            let c = seen.entry(s).or_insert(0);
            *c += 1;
            let kind = if s % 2 == 0 { VarKind::Y } else { VarKind::Z };
            Variable::new(kind, *c, s / 2)
        })
        .collect()
}

/// Which variable families are used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Symmetric and skew variables of every degree.
    Full,
    /// Symmetric and skew variables, grading ignored.
    Star,
    /// One variable family per degree, involution ignored.
    Graded,
    /// A single family over the whole algebra.
    Ordinary,
}

impl Mode {
    pub fn slot_count(self, t: usize) -> usize {
        match self {
            Mode::Full => 2 * t,
            Mode::Star => 2,
            Mode::Graded => t,
            Mode::Ordinary => 1,
        }
    }
}

/// Basis of one variable family, radical elements flagged.
struct Slot {
    elems: Vec<Vec<Q>>,
    right: Vec<Vec<SparseVec>>,
    radical: Vec<bool>,
}

impl Slot {
    fn new(a: &GStarAlgebra, space: &Subspace, radical: &Subspace) -> Slot {
        let inter = space.intersect(radical);
        let mut elems: Vec<Vec<Q>> = inter.basis().to_vec();
        let mut flags = vec![true; elems.len()];
        let mut cur = inter;
        for v in space.basis() {
            if !cur.contains(v) {
                cur = cur.sum(&Subspace::span(a.dim(), std::slice::from_ref(v)));
                elems.push(v.clone());
                flags.push(false);
            }
        }
        let right = elems.iter().map(|x| a.right_mult(x)).collect();
        Slot { elems, right, radical: flags }
    }

    fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

pub(crate) fn factorials(n: usize) -> Vec<usize> {
    let mut f = vec![1usize; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i;
    }
    f
}

/// All permutations of `0..n` in lexicographic order.
pub fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let f = factorials(n);
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r += smaller * f[n - 1 - i];
    }
    r
}

/// A substitution showing that a polynomial is not an identity.
#[derive(Clone, Debug)]
pub struct Witness {
    pub assignment: Vec<(Variable, Vec<Q>)>,
    pub value: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscrepancyKind {
    /// The consequence space contains a non-identity.
    NotIdentity,
    /// Some identity is not a consequence.
    Incomplete,
}

#[derive(Clone, Debug)]
pub struct Discrepancy {
    pub block: DegreeVector,
    pub kind: DiscrepancyKind,
    pub consequence_dim: usize,
    pub kernel_dim: usize,
    pub polynomial: Polynomial,
}

#[derive(Clone, Debug)]
pub struct IdealReport {
    pub blocks_checked: usize,
    pub discrepancy: Option<Discrepancy>,
}

impl IdealReport {
    pub fn equal(&self) -> bool {
        self.discrepancy.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct ContainReport {
    pub holds: bool,
    pub failing: Option<(DegreeVector, Polynomial)>,
}

/// One row of a block table.
#[derive(Clone, Debug)]
pub struct BlockRow {
    pub n: usize,
    pub block: DegreeVector,
    pub multinomial: u64,
    pub codim: usize,
}

type CacheKey = (Mode, Vec<usize>);

/// Codimension engine for one algebra. Column spaces are cached per block
/// and may be computed from several threads.
pub struct Engine {
    a: GStarAlgebra,
    cap: usize,
    q: usize,
    slots: HashMap<Mode, Vec<Slot>>,
    cache: Mutex<HashMap<CacheKey, Arc<Echelon>>>,
}

impl Engine {
    pub fn new(a: &GStarAlgebra) -> Result<Engine> {
        Engine::with_cap(a, DEFAULT_CAP)
    }

    /// `cap` bounds `n!` for a single block.
    pub fn with_cap(a: &GStarAlgebra, cap: usize) -> Result<Engine> {
        let radical = a.radical();
        let q = a.nilpotency_index(&radical)?;
        let t = a.group().order();
        let d = a.dim();
        let mut slots = HashMap::new();
        let full: Vec<Slot> = (0..t)
            .flat_map(|g| [Sign::Plus, Sign::Minus].map(|s| (g, s)))
            .map(|(g, s)| Slot::new(a, &a.homogeneous_component(g, s), &radical))
            .collect();
        let sym = (0..t).fold(Subspace::zero(d), |acc, g| acc.sum(&a.homogeneous_component(g, Sign::Plus)));
        let skew = (0..t).fold(Subspace::zero(d), |acc, g| acc.sum(&a.homogeneous_component(g, Sign::Minus)));
        slots.insert(Mode::Full, full);
        slots.insert(Mode::Star, vec![Slot::new(a, &sym, &radical), Slot::new(a, &skew, &radical)]);
        slots.insert(Mode::Graded, (0..t).map(|g| Slot::new(a, &a.graded_component(g), &radical)).collect());
        slots.insert(Mode::Ordinary, vec![Slot::new(a, &Subspace::full(d), &radical)]);
        Ok(Engine { a: a.clone(), cap, q, slots, cache: Mutex::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &GStarAlgebra {
        &self.a
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Nilpotency index of the radical, used to prune basis tuples.
    pub fn radical_index(&self) -> usize {
        self.q
    }

    pub fn slot_count(&self, mode: Mode) -> usize {
        self.slots[&mode].len()
    }

    fn check_cap(&self, n: usize) -> Result<()> {
        let f = factorials(n.min(20))[n.min(20)];
        if n > 20 || f > self.cap {
            return Err(Error::Capacity(format!("{n}! monomials exceeds the cap of {}", self.cap)));
        }
        Ok(())
    }

    /// Row space of the transposed evaluation matrix for variables whose
    /// slots are given by `assign` (any order).
    pub fn column_space(&self, mode: Mode, assign: &[usize]) -> Result<Arc<Echelon>> {
        let n = assign.len();
        self.check_cap(n)?;
        let slots = &self.slots[&mode];
        if let Some(&s) = assign.iter().find(|&&s| s >= slots.len()) {
            return Err(Error::InvalidParameter(format!("slot {s} out of range for {} slots", slots.len())));
        }
        let key = (mode, assign.to_vec());
        if let Some(e) = self.cache.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.compute(slots, assign));
        self.cache.lock().unwrap().insert(key, e.clone());
        Ok(e)
    }

    fn compute(&self, slots: &[Slot], assign: &[usize]) -> Echelon {
        let n = assign.len();
        let fact = factorials(n);
        let mut ech = Echelon::new(fact[n]);
        if n == 0 || assign.iter().any(|&s| slots[s].is_empty()) {
            return ech;
        }
        let d = self.a.dim();
        let mut seen: HashSet<SparseVec> = HashSet::new();
        let mut pick = vec![0usize; n];
        // odometer over basis tuples, skipping those with >= q radical picks
        'tuples: loop {
            let rad = (0..n).filter(|&i| slots[assign[i]].radical[pick[i]]).count();
            if rad < self.q {
                let mut prods: Vec<(usize, Vec<Q>)> = Vec::new();
                let mut counter = 0usize;
                let elems: Vec<(&Vec<Q>, &Vec<SparseVec>)> = (0..n)
                    .map(|i| {
                        let s = &slots[assign[i]];
                        (&s.elems[pick[i]], &s.right[pick[i]])
                    })
                    .collect();
                dfs(&elems, n, d, &fact, 0, &mut vec![false; n], None, &mut counter, &mut prods);
                for k in 0..d {
                    let mut col: SparseVec =
                        prods.iter().filter(|(_, p)| !p[k].is_zero()).map(|(r, p)| (*r, p[k].clone())).collect();
                    if col.is_empty() {
                        continue;
                    }
                    sparse_normalize(&mut col);
                    if seen.insert(col.clone()) {
                        ech.insert(col);
                        if ech.is_full() {
                            break 'tuples;
                        }
                    }
                }
            }
            // advance
            let mut i = n;
            loop {
                if i == 0 {
                    break 'tuples;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < slots[assign[i]].elems.len() {
                    break;
                }
                pick[i] = 0;
            }
        }
        ech
    }

    /// `c_<n>(A)`.
    pub fn block_codim(&self, nv: &DegreeVector) -> Result<usize> {
        self.block_codim_mode(Mode::Full, nv)
    }

    pub fn block_codim_mode(&self, mode: Mode, nv: &DegreeVector) -> Result<usize> {
        if nv.slots() != self.slot_count(mode) {
            return Err(Error::InvalidParameter(format!(
                "degree vector has {} slots, expected {}",
                nv.slots(),
                self.slot_count(mode)
            )));
        }
        Ok(self.column_space(mode, &nv.assignment())?.rank())
    }

    /// Every block of weight `n` with its multinomial weight and codimension.
    pub fn blocks(&self, mode: Mode, n: usize) -> Result<Vec<BlockRow>> {
        self.check_cap(n)?;
        let nvs = DegreeVector::all(self.slot_count(mode), n);
        let ranks: Vec<usize> = nvs
            .par_iter()
            .map(|nv| self.column_space(mode, &nv.assignment()).map(|e| e.rank()))
            .collect::<Result<Vec<_>>>()?;
        Ok(nvs
            .into_iter()
            .zip(ranks)
            .map(|(nv, c)| BlockRow { n, multinomial: nv.multinomial(), block: nv, codim: c })
            .collect())
    }

    pub fn codim_mode(&self, mode: Mode, n: usize) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(self.blocks(mode, n)?.iter().map(|b| b.multinomial * b.codim as u64).sum())
    }

    /// `c_n^{(G,*)}(A)`.
    pub fn total_codim(&self, n: usize) -> Result<u64> {
        self.codim_mode(Mode::Full, n)
    }

    pub fn star_codim(&self, n: usize) -> Result<u64> {
        self.codim_mode(Mode::Star, n)
    }

    pub fn graded_codim(&self, n: usize) -> Result<u64> {
        self.codim_mode(Mode::Graded, n)
    }

    pub fn ordinary_codim(&self, n: usize) -> Result<u64> {
        self.codim_mode(Mode::Ordinary, n)
    }

    pub fn codim_sequence(&self, n_max: usize) -> Result<Vec<u64>> {
        (1..=n_max).map(|n| self.total_codim(n)).collect()
    }

    /// Rank of the whole evaluation matrix of `P_n^{(G,*)}` built in one
    /// piece: rows are (slot per variable, ordering), columns are tuples of
    /// (slot, basis element) per variable. Products are taken naively. Meant
    /// as an independent check of the blockwise sum.
    pub fn direct_codim(&self, n: usize) -> Result<u64> {
        self.check_cap(n)?;
        let slots = &self.slots[&Mode::Full];
        let ns = slots.len();
        let perms = lex_permutations(n);
        let nf = perms.len();
        let mut rows_total = 1usize;
        for _ in 0..n {
            rows_total *= ns;
        }
        let mut ech = Echelon::new(rows_total * nf);
        let universe: Vec<(usize, usize)> =
            (0..ns).flat_map(|s| (0..slots[s].elems.len()).map(move |i| (s, i))).collect();
        if universe.is_empty() {
            return Ok(0);
        }
        let d = self.a.dim();
        let mut pick = vec![0usize; n];
        loop {
            let tuple: Vec<(usize, usize)> = pick.iter().map(|&p| universe[p]).collect();
            // the row block this tuple can be nonzero on
            let block = tuple.iter().fold(0usize, |acc, (s, _)| acc * ns + s);
            let mut cols = vec![Vec::new(); d];
            for (r, p) in perms.iter().enumerate() {
                let mut acc = slots[tuple[p[0]].0].elems[tuple[p[0]].1].clone();
                for &j in &p[1..] {
                    acc = self.a.mul(&acc, &slots[tuple[j].0].elems[tuple[j].1]);
                }
                for (k, c) in acc.into_iter().enumerate() {
                    if !c.is_zero() {
                        cols[k].push((block * nf + r, c));
                    }
                }
            }
            for c in cols {
                if !c.is_empty() {
                    ech.insert(c);
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(ech.rank() as u64);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < universe.len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// Multilinear identities in `P_<n>`, as an echelon basis.
    pub fn kernel_identity_basis(&self, nv: &DegreeVector) -> Result<Vec<Polynomial>> {
        let assign = self.full_assignment(nv)?;
        let cs = self.column_space(Mode::Full, &assign)?;
        let vars = variables_for(&assign);
        let perms = lex_permutations(assign.len());
        Ok(cs.orthogonal_complement().iter().map(|v| vector_to_poly(v, &vars, &perms)).collect())
    }

    fn full_assignment(&self, nv: &DegreeVector) -> Result<Vec<usize>> {
        if nv.slots() != self.slot_count(Mode::Full) {
            return Err(Error::InvalidParameter(format!(
                "degree vector has {} slots, expected {}",
                nv.slots(),
                self.slot_count(Mode::Full)
            )));
        }
        if nv.weight() == 0 {
            return Err(Error::InvalidParameter("degree vector of weight 0".into()));
        }
        Ok(nv.assignment())
    }

    /// Decides whether `p` is an identity. On failure a witness over basis
    /// elements of the homogeneous components is returned.
    pub fn is_identity(&self, p: &Polynomial) -> Result<IdentityReport> {
        let t = self.a.group().order();
        if let Some(v) = p.variables().iter().find(|v| v.degree >= t) {
            return Err(Error::UnknownElement(format!("variable degree {} outside the group", v.degree)));
        }
        for comp in p.multihomogeneous_components() {
            let lin = comp.multilinearize()?;
            if lin.homogeneous_degree() == Some(0) {
                // a nonzero constant
                return Ok(IdentityReport { holds: false, witness: None });
            }
            let vars: Vec<Variable> = lin.variables().into_iter().collect();
            let assign: Vec<usize> = vars.iter().map(Variable::slot).collect();
            let cs = self.column_space(Mode::Full, &assign)?;
            let v = poly_to_vector(&lin, &vars);
            if cs.rows().all(|r| sparse_dot(r, &v).is_zero()) {
                continue;
            }
            let witness = match self.search_witness(&comp, 200_000)? {
                Some(w) => Some(w),
                None => self.search_witness(&lin, usize::MAX)?,
            };
            return Ok(IdentityReport { holds: false, witness });
        }
        Ok(IdentityReport { holds: true, witness: None })
    }

    /// Lexicographic search over tuples of reduced-echelon basis elements of
    /// the components, at most `budget` tuples.
    fn search_witness(&self, f: &Polynomial, budget: usize) -> Result<Option<Witness>> {
        let vars: Vec<Variable> = f.variables().into_iter().collect();
        let bases: Vec<Vec<Vec<Q>>> = vars
            .iter()
            .map(|v| {
                let s = if v.kind == VarKind::Y { Sign::Plus } else { Sign::Minus };
                self.a.homogeneous_component(v.degree, s).basis().to_vec()
            })
            .collect();
        if bases.iter().any(Vec::is_empty) {
            return Ok(None);
        }
        let mut pick = vec![0usize; vars.len()];
        let mut tried = 0usize;
        loop {
            let values: BTreeMap<Variable, Vec<Q>> =
                vars.iter().zip(&pick).enumerate().map(|(i, (v, &k))| (*v, bases[i][k].clone())).collect();
            let value = f.eval_raw(&self.a, &values)?;
            if value.iter().any(|c| !c.is_zero()) {
                return Ok(Some(Witness { assignment: values.into_iter().collect(), value }));
            }
            tried += 1;
            if tried >= budget {
                return Ok(None);
            }
            let mut i = vars.len();
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < bases[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// `n! - c_<n>` and the check that a set of generators spans exactly the
    /// identities of `P_<n>` for every block of weight at most `n_max`.
    pub fn ideal_generated_check(&self, generators: &[Polynomial], n_max: usize) -> Result<IdealReport> {
        let t = self.a.group().order();
        let mut checked = 0;
        for n in 1..=n_max {
            self.check_cap(n)?;
            for nv in DegreeVector::all(2 * t, n) {
                checked += 1;
                let assign = nv.assignment();
                let cs = self.column_space(Mode::Full, &assign)?;
                let tid = tideal_component(generators, &nv, self.a.group())?;
                let kernel_dim = cs.ambient() - cs.rank();
                let vars = variables_for(&assign);
                let perms = lex_permutations(n);
                for r in tid.rows() {
                    if cs.rows().any(|c| !sparse_dot(r, c).is_zero()) {
                        return Ok(IdealReport {
                            blocks_checked: checked,
                            discrepancy: Some(Discrepancy {
                                block: nv,
                                kind: DiscrepancyKind::NotIdentity,
                                consequence_dim: tid.rank(),
                                kernel_dim,
                                polynomial: vector_to_poly(r, &vars, &perms),
                            }),
                        });
                    }
                }
                if tid.rank() < kernel_dim {
                    let missing = cs.orthogonal_complement().into_iter().find(|k| !tid.contains(k)).expect("dimension gap");
                    return Ok(IdealReport {
                        blocks_checked: checked,
                        discrepancy: Some(Discrepancy {
                            block: nv,
                            kind: DiscrepancyKind::Incomplete,
                            consequence_dim: tid.rank(),
                            kernel_dim,
                            polynomial: vector_to_poly(&missing, &vars, &perms),
                        }),
                    });
                }
            }
        }
        Ok(IdealReport { blocks_checked: checked, discrepancy: None })
    }

    /// Whether every multilinear identity of `self` of degree at most
    /// `n_max` is an identity of `other`.
    pub fn var_contains(&self, other: &Engine, n_max: usize) -> Result<ContainReport> {
        if self.a.group().cayley() != other.a.group().cayley() {
            return Err(Error::InvalidParameter("algebras are graded by different groups".into()));
        }
        let t = self.a.group().order();
        for n in 1..=n_max {
            self.check_cap(n)?;
            for nv in DegreeVector::all(2 * t, n) {
                let assign = nv.assignment();
                let ca = self.column_space(Mode::Full, &assign)?;
                let cb = other.column_space(Mode::Full, &assign)?;
                if cb.rank() == 0 || cb.rows().all(|r| ca.contains(r)) {
                    continue;
                }
                let bad = cb.rows().find(|r| !ca.contains(r)).unwrap().clone();
                let kernel = ca.orthogonal_complement();
                let p = kernel.into_iter().find(|k| !sparse_dot(k, &bad).is_zero()).expect("separating vector");
                let vars = variables_for(&assign);
                return Ok(ContainReport {
                    holds: false,
                    failing: Some((nv, vector_to_poly(&p, &vars, &lex_permutations(n)))),
                });
            }
        }
        Ok(ContainReport { holds: true, failing: None })
    }

    pub fn t_equivalent(&self, other: &Engine, n_max: usize) -> Result<bool> {
        Ok(self.var_contains(other, n_max)?.holds && other.var_contains(self, n_max)?.holds)
    }
}

/// Products of the picked elements in every ordering, in lexicographic rank
/// order. Subtrees under a zero prefix are skipped.
#[allow(clippy::too_many_arguments)]
fn dfs(
    elems: &[(&Vec<Q>, &Vec<SparseVec>)],
    n: usize,
    d: usize,
    fact: &[usize],
    depth: usize,
    used: &mut [bool],
    prefix: Option<&Vec<Q>>,
    counter: &mut usize,
    out: &mut Vec<(usize, Vec<Q>)>,
) {
    for i in 0..n {
        if used[i] {
            continue;
        }
        let next = match prefix {
            None => elems[i].0.clone(),
            Some(p) => {
                let mut o = vec![Q::ZERO; d];
                for (j, pj) in p.iter().enumerate() {
                    if pj.is_zero() {
                        continue;
                    }
                    for (k, c) in &elems[i].1[j] {
                        o[*k].add_mul(pj, c);
                    }
                }
                o
            }
        };
        if next.iter().all(Q::is_zero) {
            *counter += fact[n - depth - 1];
            continue;
        }
        if depth + 1 == n {
            out.push((*counter, next));
            *counter += 1;
            continue;
        }
        used[i] = true;
        dfs(elems, n, d, fact, depth + 1, used, Some(&next), counter, out);
        used[i] = false;
    }
}

/// Coordinates of a multilinear polynomial in the variables `vars`, indexed
/// by the lexicographic rank of each word.
pub fn poly_to_vector(f: &Polynomial, vars: &[Variable]) -> SparseVec {
    let pos: HashMap<Variable, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut v: Vec<(usize, Q)> = f
        .terms()
        .map(|(m, c)| {
            let p: Vec<usize> = m.0.iter().map(|x| pos[x]).collect();
            (perm_rank(&p), c.clone())
        })
        .collect();
    v.sort_by_key(|e| e.0);
    v
}

pub fn vector_to_poly(v: &SparseVec, vars: &[Variable], perms: &[Vec<usize>]) -> Polynomial {
    let mut f = Polynomial::zero();
    for (r, c) in v {
        f.add_term(Monomial(perms[*r].iter().map(|&i| vars[i]).collect()), c.clone());
    }
    f
}

/// `q + q*` for symmetric, `q - q*` for skew variables, with
/// `q* = reversed word times (-1)^{#z}`.
fn image_terms(word: &[usize], vars: &[Variable], kind: VarKind) -> Vec<(Vec<usize>, Q)> {
    let skew = word.iter().filter(|&&i| vars[i].kind == VarKind::Z).count();
    let star_sign = if skew % 2 == 0 { 1 } else { -1 };
    let sign = if kind == VarKind::Y { star_sign } else { -star_sign };
    let mut rev = word.to_vec();
    rev.reverse();
    if rev == word {
        let c = 1 + sign;
        return if c == 0 { vec![] } else { vec![(word.to_vec(), Q::from_int(c))] };
    }
    vec![(word.to_vec(), Q::ONE), (rev, Q::from_int(sign))]
}

fn for_each_permutation(items: &[usize], f: &mut dyn FnMut(&[usize])) {
    for p in lex_permutations(items.len()) {
        let w: Vec<usize> = p.iter().map(|&i| items[i]).collect();
        f(&w);
    }
}

/// Multilinear consequences of `generators` in `P_<n>`.
pub fn tideal_component(generators: &[Polynomial], nv: &DegreeVector, g: &FiniteAbelianGroup) -> Result<Echelon> {
    let n = nv.weight();
    if factorials(n.min(12))[n.min(12)] > DEFAULT_CAP || n > 12 {
        return Err(Error::Capacity(format!("{n}! monomials exceeds the cap of {DEFAULT_CAP}")));
    }
    let assign = nv.assignment();
    let targets = variables_for(&assign);
    let mut ech = Echelon::new(factorials(n)[n]);
    let mut gens: Vec<Polynomial> = Vec::new();
    for p in generators {
        for comp in p.multihomogeneous_components() {
            let lin = comp.multilinearize()?;
            let st = lin.star();
            gens.push(lin);
            if !gens.contains(&st) {
                gens.push(st);
            }
        }
    }
    for f in &gens {
        let us: Vec<Variable> = f.variables().into_iter().collect();
        let k = us.len();
        if k == 0 || k > n {
            continue;
        }
        let upos: HashMap<Variable, usize> = us.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let nb = k + 2;
        let mut bins = vec![0usize; n];
        loop {
            // bins: 0 = left factor, 1 = right factor, 2.. = image of u_{j-2}
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); nb];
            for (i, &b) in bins.iter().enumerate() {
                members[b].push(i);
            }
            let ok = (0..k).all(|j| {
                let m = &members[j + 2];
                !m.is_empty() && m.iter().fold(g.identity(), |acc, &i| g.mul(acc, targets[i].degree)) == us[j].degree
            });
            if ok {
                expand_bins(f, &us, &upos, &members, &targets, &mut ech);
                if ech.is_full() {
                    return Ok(ech);
                }
            }
            let mut i = n;
            let mut done = true;
            while i > 0 {
                i -= 1;
                bins[i] += 1;
                if bins[i] < nb {
                    done = false;
                    break;
                }
                bins[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    Ok(ech)
}

fn expand_bins(
    f: &Polynomial,
    us: &[Variable],
    upos: &HashMap<Variable, usize>,
    members: &[Vec<usize>],
    targets: &[Variable],
    ech: &mut Echelon,
) {
    let k = us.len();
    // every ordering of every bin
    let mut orders: Vec<Vec<Vec<usize>>> = Vec::new();
    for m in members {
        let mut list = Vec::new();
        for_each_permutation(m, &mut |w| list.push(w.to_vec()));
        orders.push(list);
    }
    let mut idx = vec![0usize; members.len()];
    loop {
        let left = &orders[0][idx[0]];
        let right = &orders[1][idx[1]];
        let images: Vec<Vec<(Vec<usize>, Q)>> =
            (0..k).map(|j| image_terms(&orders[j + 2][idx[j + 2]], targets, us[j].kind)).collect();
        let mut acc: HashMap<usize, Q> = HashMap::new();
        for (m, c) in f.terms() {
            let mut words: Vec<(Vec<usize>, Q)> = vec![(left.clone(), c.clone())];
            for x in &m.0 {
                let img = &images[upos[x]];
                let mut next = Vec::with_capacity(words.len() * img.len());
                for (w, wc) in &words {
                    for (iw, ic) in img {
                        let mut nw = w.clone();
                        nw.extend_from_slice(iw);
                        next.push((nw, wc * ic));
                    }
                }
                words = next;
            }
            for (mut w, wc) in words {
                w.extend_from_slice(right);
                *acc.entry(perm_rank(&w)).or_insert(Q::ZERO) += &wc;
            }
        }
        let mut v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|e| e.0);
        if !v.is_empty() {
            ech.insert(v);
            if ech.is_full() {
                return;
            }
        }
        let mut i = members.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < orders[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}
