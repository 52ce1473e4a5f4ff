//! Growth profiles of codimension prefixes, exclusion of forbidden algebras,
//! minimality matching and the structure checks on algebras of shape `F + J`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GStarAlgebra, Sign};
use crate::catalog::{build_named, catalog_set, null_algebra};
use crate::codim::{DegreeVector, Engine};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::linalg::Subspace;
use crate::poly::Polynomial;
use crate::rational::{factorial, Q};

pub const DEFAULT_IDEAL_DEGREE: usize = 4;
pub const DEFAULT_CODIM_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum GrowthClass {
    Constant,
    Linear,
    Quadratic,
    Degree(usize),
    NotEventuallyPolynomial,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Constant => f.write_str("constant"),
            GrowthClass::Linear => f.write_str("linear"),
            GrowthClass::Quadratic => f.write_str("quadratic"),
            GrowthClass::Degree(k) => write!(f, "degree-{k}"),
            GrowthClass::NotEventuallyPolynomial => f.write_str("not-eventually-polynomial-at-this-N"),
        }
    }
}

impl From<GrowthClass> for String {
    fn from(c: GrowthClass) -> String {
        c.to_string()
    }
}

/// Result of [`poly_profile`]. `degree` is `None` when no order of finite
/// differences becomes constant on a tail of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub degree: Option<usize>,
    pub leading: Option<Q>,
    /// First `n` (1-based) from which the fitted polynomial matches.
    pub onset: Option<usize>,
    /// `Δ^j c_onset` for `j = 0..=degree`.
    newton: Vec<Q>,
}

impl Profile {
    pub fn is_polynomial(&self) -> bool {
        self.degree.is_some()
    }

    pub fn class(&self) -> GrowthClass {
        match self.degree {
            None => GrowthClass::NotEventuallyPolynomial,
            Some(0) => GrowthClass::Constant,
            Some(1) => GrowthClass::Linear,
            Some(2) => GrowthClass::Quadratic,
            Some(k) => GrowthClass::Degree(k),
        }
    }

    /// Value of the fitted polynomial at `n`, for `n` at or past the onset.
    pub fn value_at(&self, n: usize) -> Option<Q> {
        let onset = self.onset?;
        if n < onset {
            return None;
        }
        let m = (n - onset) as u64;
        let mut s = Q::ZERO;
        for (j, d) in self.newton.iter().enumerate() {
            s.add_mul(d, &Q::from(crate::rational::binomial(m, j as u64)));
        }
        Some(s)
    }
}

/// Exact finite-difference profile of a sequence (index 0 is `n = 1`).
pub fn poly_profile(seq: &[Q]) -> Result<Profile> {
    if seq.len() < 4 {
        return Err(Error::InvalidParameter(format!("profile needs at least 4 terms, got {}", seq.len())));
    }
    let mut diffs: Vec<Vec<Q>> = vec![seq.to_vec()];
    for k in 0..seq.len() - 1 {
        let d = &diffs[k];
        let last = &d[d.len() - 1];
        let tail = d.iter().rev().take_while(|x| *x == last).count();
        if tail >= 2 {
            let s = d.len() - tail;
            let newton: Vec<Q> = diffs.iter().map(|row| row[s].clone()).collect();
            let leading = last / &Q::from(factorial(k as u64));
            return Ok(Profile { degree: Some(k), leading: Some(leading), onset: Some(s + 1), newton });
        }
        let next: Vec<Q> = d.windows(2).map(|w| &w[1] - &w[0]).collect();
        diffs.push(next);
    }
    Ok(Profile { degree: None, leading: None, onset: None, newton: vec![] })
}

pub fn profile_of(counts: &[u64]) -> Result<Profile> {
    let seq: Vec<Q> = counts.iter().map(|&c| Q::from(c as usize)).collect();
    poly_profile(&seq)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub algebra: String,
    pub degree: usize,
    /// `true` when an identity of `A` of degree at most `degree` fails on the
    /// forbidden algebra, so it is certainly outside `var(A)`.
    pub excluded: bool,
    #[serde(skip)]
    pub separator: Option<(DegreeVector, Polynomial)>,
}

impl Exclusion {
    pub fn label(&self) -> String {
        if self.excluded {
            format!("excluded-at-{}", self.degree)
        } else {
            format!("not-excluded-at-{}", self.degree)
        }
    }
}

fn exclusion(e: &Engine, q: &GStarAlgebra, n: usize) -> Result<Exclusion> {
    let r = e.var_contains(&Engine::with_cap(q, e.cap())?, n)?;
    Ok(Exclusion { algebra: q.name().to_string(), degree: n, excluded: !r.holds, separator: r.failing })
}

/// For each member `Q` of the named set: is `Q` outside `var(A)` at degree `n`?
pub fn exclusion_report(e: &Engine, set_name: &str, n: usize) -> Result<Vec<Exclusion>> {
    if n < 2 {
        return Err(Error::InvalidParameter("exclusion degree must be at least 2".into()));
    }
    let set = catalog_set(set_name, e.algebra().group())?;
    set.par_iter().map(|q| exclusion(e, q, n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalBound {
    /// Nilpotency index of the radical.
    pub q: usize,
    pub degree: Option<usize>,
    pub holds: bool,
}

/// Is the detected profile degree of `c_1..c_n` at most `q - 1`?
pub fn radical_bound_check(e: &Engine, n: usize) -> Result<RadicalBound> {
    let a = e.algebra();
    let q = a.nilpotency_index(&a.radical())?;
    let profile = profile_of(&e.codim_sequence(n)?)?;
    let holds = matches!(profile.degree, Some(k) if k < q);
    Ok(RadicalBound { q, degree: profile.degree, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Minimality {
    MinimalQuadratic { matches: Vec<String> },
    QuadraticUnmatched,
    MinimalLinear { matches: Vec<String> },
    LinearNonMinimal { matches: Vec<String> },
    LinearUnmatched,
    Constant,
    OutOfQuadraticScope,
}

impl Minimality {
    pub fn label(&self) -> &'static str {
        match self {
            Minimality::MinimalQuadratic { .. } => "minimal-quadratic",
            Minimality::QuadraticUnmatched => "quadratic-unmatched",
            Minimality::MinimalLinear { .. } => "minimal-linear",
            Minimality::LinearNonMinimal { .. } => "linear-non-minimal",
            Minimality::LinearUnmatched => "linear-unmatched",
            Minimality::Constant => "constant",
            Minimality::OutOfQuadraticScope => "out-of-quadratic-scope",
        }
    }
}

impl fmt::Display for Minimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minimality::MinimalQuadratic { matches }
            | Minimality::MinimalLinear { matches }
            | Minimality::LinearNonMinimal { matches } => {
                write!(f, "{} (matches {})", self.label(), matches.join(", "))
            }
            _ => f.write_str(self.label()),
        }
    }
}

/// The non-minimal linear-growth shapes `M ⊕ N` for one group element, with
/// `N` the two-dimensional null algebra and `C` the commutative algebra of
/// dimension two with trivial grading and involution.
pub fn linear_shapes(g: &FiniteAbelianGroup, h: usize) -> Result<Vec<(String, GStarAlgebra)>> {
    let hn = g.name(h);
    let names: Vec<Vec<String>> = if h == g.identity() {
        vec![vec![], vec!["C[m=2]".into()], vec!["C2star[1]".into()], vec!["A2star".into()], vec![
            "C2star[1]".into(),
            "A2star".into(),
        ]]
    } else {
        let cs = format!("C2star[{hn}]");
        let c = format!("C2[{hn}]");
        let a = format!("A2[{hn}]");
        vec![
            vec![],
            vec!["C[m=2]".into()],
            vec![cs.clone()],
            vec![c.clone()],
            vec![a.clone()],
            vec![cs.clone(), c.clone()],
            vec![cs.clone(), a.clone()],
            vec![c.clone(), a.clone()],
            vec![cs, c, a],
        ]
    };
    let nil = null_algebra(g);
    let mut out = Vec::new();
    for parts in names {
        let mut algs = Vec::new();
        for p in &parts {
            algs.push(build_named(p, g)?);
        }
        algs.push(nil.clone());
        let mut label = parts.join("+");
        if !label.is_empty() {
            label.push('+');
        }
        label.push('N');
        out.push((label.clone(), GStarAlgebra::direct_sum(&algs)?.with_name(label)));
    }
    Ok(out)
}

fn matching(e: &Engine, candidates: &[GStarAlgebra], n: usize) -> Result<Vec<String>> {
    let hits: Vec<Option<String>> = candidates
        .par_iter()
        .map(|q| {
            let other = Engine::with_cap(q, e.cap())?;
            Ok(e.t_equivalent(&other, n)?.then(|| q.name().to_string()))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// Catalog matching by bounded-degree T-equivalence, dispatched on the
/// profile degree of `c_1..c_{n_codim}`.
pub fn minimality_report(e: &Engine, n_ideal: usize, n_codim: usize) -> Result<Minimality> {
    let profile = profile_of(&e.codim_sequence(n_codim)?)?;
    let g = e.algebra().group();
    match profile.degree {
        Some(2) => {
            let m = matching(e, &catalog_set("M", g)?, n_ideal)?;
            Ok(if m.is_empty() { Minimality::QuadraticUnmatched } else { Minimality::MinimalQuadratic { matches: m } })
        }
        Some(1) => {
            let m = matching(e, &catalog_set("LIN", g)?, n_ideal)?;
            if !m.is_empty() {
                return Ok(Minimality::MinimalLinear { matches: m });
            }
            let mut shapes = Vec::new();
            for h in g.elements() {
                shapes.extend(linear_shapes(g, h)?.into_iter().map(|(_, a)| a));
            }
            let m = matching(e, &shapes, n_ideal)?;
            Ok(if m.is_empty() { Minimality::LinearUnmatched } else { Minimality::LinearNonMinimal { matches: m } })
        }
        Some(0) => Ok(Minimality::Constant),
        _ => Ok(Minimality::OutOfQuadraticScope),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incomparability {
    pub names: Vec<String>,
    pub degree: usize,
    /// `contains[i][j]`: no identity of `names[i]` of degree at most
    /// `degree` fails on `names[j]`.
    pub contains: Vec<Vec<bool>>,
    /// Ordered pairs `(i, j)`, `i != j`, left unseparated.
    pub unseparated: Vec<(usize, usize)>,
}

impl Incomparability {
    pub fn all_separated(&self) -> bool {
        self.unseparated.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (i, row) in self.contains.iter().enumerate() {
            let mut rec = vec![self.names[i].clone()];
            rec.extend(row.iter().map(|b| b.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

pub fn pairwise_incomparability(set_name: &str, g: &FiniteAbelianGroup, n: usize) -> Result<Incomparability> {
    if n < 2 {
        return Err(Error::InvalidParameter("separation degree must be at least 2".into()));
    }
    let set = catalog_set(set_name, g)?;
    let engines: Vec<Engine> = set.iter().map(Engine::new).collect::<Result<_>>()?;
    let k = engines.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let cells: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| if i == j { Ok(true) } else { Ok(engines[i].var_contains(&engines[j], n)?.holds) })
        .collect::<Result<_>>()?;
    let contains: Vec<Vec<bool>> = cells.chunks(k.max(1)).map(|c| c.to_vec()).collect();
    let unseparated = pairs.into_iter().filter(|&(i, j)| i != j && contains[i][j]).collect();
    Ok(Incomparability { names: set.iter().map(|a| a.name().to_string()).collect(), degree: n, contains, unseparated })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub algebra: String,
    pub prefix: Vec<u64>,
    pub profile: Profile,
    pub class: GrowthClass,
    pub set: String,
    pub exclusions: Vec<Exclusion>,
    /// `q - 1` for the nilpotency index `q` of the radical.
    pub radical_bound: usize,
    pub radical_bound_holds: bool,
}

impl GrowthReport {
    /// Forbidden-set exclusion at `n_ideal` (set `E` by default) together
    /// with the profile of `c_1..c_{n_codim}`.
    pub fn compute(e: &Engine, set_name: &str, n_codim: usize, n_ideal: usize) -> Result<GrowthReport> {
        let prefix = e.codim_sequence(n_codim)?;
        let profile = profile_of(&prefix)?;
        let a = e.algebra();
        let q = a.nilpotency_index(&a.radical())?;
        let exclusions = exclusion_report(e, set_name, n_ideal)?;
        Ok(GrowthReport {
            algebra: a.name().to_string(),
            class: profile.class(),
            radical_bound_holds: matches!(profile.degree, Some(k) if k < q),
            prefix,
            profile,
            set: set_name.to_string(),
            exclusions,
            radical_bound: q - 1,
        })
    }

    pub fn all_excluded(&self) -> bool {
        self.exclusions.iter().all(|x| x.excluded)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        let labels: Vec<serde_json::Value> = self
            .exclusions
            .iter()
            .map(|x| serde_json::json!({"algebra": x.algebra, "verdict": x.label()}))
            .collect();
        v["exclusions"] = serde_json::Value::Array(labels);
        v
    }
}

// ---------------------------------------------------------------------------
// Structure of algebras F + J

/// One conclusion about the Peirce components of `A = F + J`, checked on
/// bases once its exclusion hypothesis holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    /// Corollary checks are reported but do not decide [`StructureReport::passed`].
    pub corollary: bool,
    pub hypothesis: bool,
    /// `None` when the hypothesis fails.
    pub conclusion: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub algebra: String,
    pub degree: usize,
    pub checks: Vec<LemmaCheck>,
}

impl StructureReport {
    /// Every applicable lemma conclusion holds.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| !c.corollary).all(|c| c.conclusion != Some(false))
    }

    pub fn corollary_failures(&self) -> Vec<&LemmaCheck> {
        self.checks.iter().filter(|c| c.corollary && c.conclusion == Some(false)).collect()
    }

    pub fn applicable(&self) -> usize {
        self.checks.iter().filter(|c| c.hypothesis).count()
    }
}

/// `A = F·e + J` with `e` the designated idempotent.
pub fn is_f_plus_j(a: &GStarAlgebra) -> bool {
    a.designated_idempotent().is_some() && a.radical().dim() + 1 == a.dim()
}

struct Ctx<'a> {
    a: &'a GStarAlgebra,
    g: &'a FiniteAbelianGroup,
}

impl Ctx<'_> {
    fn graded(&self, s: &Subspace, h: usize) -> Subspace {
        s.intersect(&self.a.graded_component(h))
    }

    fn signed(&self, s: &Subspace, h: usize, sign: Sign) -> Subspace {
        s.intersect(&self.a.homogeneous_component(h, sign))
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.a.multiply(x, y).expect("dimensions agree")
    }

    fn star(&self, x: &[Q]) -> Vec<Q> {
        self.a.involute(x).expect("dimensions agree")
    }

    fn zero(v: &[Q]) -> bool {
        v.iter().all(Q::is_zero)
    }

    /// `XY = 0`.
    fn annihilate(&self, x: &Subspace, y: &Subspace) -> bool {
        x.basis().iter().all(|u| y.basis().iter().all(|v| Ctx::zero(&self.mul(u, v))))
    }

    /// `a a^* = 0` for every `a` in `x` (the polarized form vanishes).
    fn self_star_zero(&self, x: &Subspace) -> bool {
        let b = x.basis();
        let st: Vec<Vec<Q>> = b.iter().map(|v| self.star(v)).collect();
        (0..b.len()).all(|i| {
            (i..b.len()).all(|j| {
                let p = self.mul(&b[i], &st[j]);
                let q = self.mul(&b[j], &st[i]);
                let s: Vec<Q> = p.iter().zip(&q).map(|(u, v)| u + v).collect();
                Ctx::zero(&s)
            })
        })
    }

    /// `b^2 = 0` for every `b` in `x`.
    fn square_zero(&self, x: &Subspace) -> bool {
        let b = x.basis();
        (0..b.len()).all(|i| {
            (i..b.len()).all(|j| {
                let p = self.mul(&b[i], &b[j]);
                let q = self.mul(&b[j], &b[i]);
                let s: Vec<Q> = p.iter().zip(&q).map(|(u, v)| u + v).collect();
                Ctx::zero(&s)
            })
        })
    }

    fn commute(&self, x: &Subspace) -> bool {
        let b = x.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.mul(&b[i], &b[j]) == self.mul(&b[j], &b[i])))
    }

    fn nontrivial(&self) -> Vec<usize> {
        self.g.elements().filter(|&h| h != self.g.identity()).collect()
    }
}

/// Exclusion verdicts for everything the structure checks may ask about,
/// keyed by display name.
fn exclusion_table(e: &Engine, n: usize) -> Result<BTreeMap<String, bool>> {
    let g = e.algebra().group();
    let mut pool: Vec<GStarAlgebra> = catalog_set("I", g)?;
    for h in g.elements() {
        pool.push(build_named(&format!("C3[{}]", g.name(h)), g)?);
        pool.push(build_named(&format!("C3star[{}]", g.name(h)), g)?);
    }
    let verdicts: Vec<(String, bool)> = pool
        .par_iter()
        .map(|q| Ok((q.name().to_string(), exclusion(e, q, n)?.excluded)))
        .collect::<Result<_>>()?;
    Ok(verdicts.into_iter().collect())
}

fn all_excluded(table: &BTreeMap<String, bool>, names: &[String]) -> bool {
    names.iter().all(|s| table.get(s).copied().unwrap_or(false))
}

fn set_names(set: &str, g: &FiniteAbelianGroup) -> Result<Vec<String>> {
    Ok(catalog_set(set, g)?.iter().map(|a| a.name().to_string()).collect())
}

/// The subalgebras `B^h = F + (J11)_1^+ + J_h`.
pub fn b_components(a: &GStarAlgebra) -> Result<Vec<GStarAlgebra>> {
    let one_f = a
        .designated_idempotent()
        .ok_or_else(|| Error::InvalidParameter("no designated idempotent".into()))?
        .to_vec();
    let g = a.group();
    let pd = a.peirce_decompose(&one_f)?;
    let j = a.radical();
    let id = g.identity();
    let j11p = pd.j11.intersect(&a.homogeneous_component(id, Sign::Plus));
    let d = a.dim();
    let mut out = Vec::new();
    for h in g.elements() {
        let mut unit_part = vec![one_f.clone()];
        unit_part.extend(j11p.basis().iter().cloned());
        let jh = j.intersect(&a.graded_component(h));
        let mut vecs: Vec<Vec<Q>> = if h == id {
            unit_part.extend(jh.basis().iter().cloned());
            Subspace::span(d, &unit_part).basis().to_vec()
        } else {
            let mut v = Subspace::span(d, &unit_part).basis().to_vec();
            v.extend(jh.basis().iter().cloned());
            v
        };
        vecs.retain(|v| !Ctx::zero(v));
        let labels = (0..vecs.len()).map(|i| format!("b{i}")).collect();
        let b = a.subalgebra(&vecs, labels)?.with_name(format!("B^{}({})", g.name(h), a.name()));
        out.push(b);
    }
    Ok(out)
}

/// Checks each structure conclusion on `A = F + J` whose exclusion
/// hypothesis holds at degree `n`.
pub fn structure_checks(e: &Engine, n: usize) -> Result<StructureReport> {
    let a = e.algebra();
    if !is_f_plus_j(a) {
        return Err(Error::InvalidParameter(format!("{} is not of the form F + J", a.name())));
    }
    let g = a.group();
    let one_f = a.designated_idempotent().expect("checked").to_vec();
    let pd = a.peirce_decompose(&one_f)?;
    let ctx = Ctx { a, g };
    let table = exclusion_table(e, n)?;
    let hyp = |set: &str| -> Result<bool> { Ok(all_excluded(&table, &set_names(set, g)?)) };
    let excluded = |name: String| table.get(&name).copied().unwrap_or(false);
    let id = g.identity();
    let els: Vec<usize> = g.elements().collect();
    let nontriv = ctx.nontrivial();
    let mut checks = Vec::new();
    let mut push = |lemma: &str, hypothesis: bool, conclusion: &dyn Fn() -> bool| {
        checks.push(LemmaCheck {
            lemma: lemma.to_string(),
            corollary: false,
            hypothesis,
            conclusion: hypothesis.then(conclusion),
        });
    };

    push("aa*=0 on (J10)_g", hyp("I1")?, &|| els.iter().all(|&h| ctx.self_star_zero(&ctx.graded(&pd.j10, h))));
    push("aa*=0 on (J01)_g", hyp("I2")?, &|| els.iter().all(|&h| ctx.self_star_zero(&ctx.graded(&pd.j01, h))));
    for (set, sign, tag) in [("I3", Sign::Plus, "+"), ("I4", Sign::Minus, "-")] {
        push(&format!("J10 (J00)_g^{tag} = (J00)_g^{tag} J01 = 0"), hyp(set)?, &|| {
            els.iter().all(|&h| {
                let c = ctx.signed(&pd.j00, h, sign);
                ctx.annihilate(&pd.j10, &c) && ctx.annihilate(&c, &pd.j01)
            })
        });
    }
    push("J10 J01 = 0", hyp("I5")?, &|| ctx.annihilate(&pd.j10, &pd.j01));
    push("J01 J10 = 0", hyp("I6")?, &|| ctx.annihilate(&pd.j01, &pd.j10));
    push("J01 (J11)_g^- = (J11)_g^- J10 = 0", hyp("I7")?, &|| {
        els.iter().all(|&h| {
            let c = ctx.signed(&pd.j11, h, Sign::Minus);
            ctx.annihilate(&pd.j01, &c) && ctx.annihilate(&c, &pd.j10)
        })
    });
    push("J01 (J11)_g^+ = (J11)_g^+ J10 = 0, g != 1", hyp("I8")?, &|| {
        nontriv.iter().all(|&h| {
            let c = ctx.signed(&pd.j11, h, Sign::Plus);
            ctx.annihilate(&pd.j01, &c) && ctx.annihilate(&c, &pd.j10)
        })
    });

    let only_j11 = pd.j00.is_zero() && pd.j10.is_zero() && pd.j01.is_zero();
    for &h in &els {
        let name = |fam: &str| format!("{fam}[{}]@{}", g.name(h), g.spec());
        let c3 = excluded(name("C3"));
        let c3s = excluded(name("C3star"));
        push(&format!("b^2=0 on (J11)_{}^+", g.name(h)), only_j11 && c3, &|| {
            ctx.square_zero(&ctx.signed(&pd.j11, h, Sign::Plus))
        });
        push(&format!("b^2=0 on (J11)_{}^-", g.name(h)), only_j11 && c3s, &|| {
            ctx.square_zero(&ctx.signed(&pd.j11, h, Sign::Minus))
        });
    }
    push("(J11) products with nontrivial degrees vanish", only_j11 && hyp("I9")?, &|| {
        let p1 = ctx.signed(&pd.j11, id, Sign::Plus);
        let m1 = ctx.signed(&pd.j11, id, Sign::Minus);
        ctx.commute(&p1)
            && nontriv.iter().all(|&h| {
                let jh = ctx.graded(&pd.j11, h);
                ctx.annihilate(&m1, &jh)
                    && ctx.annihilate(&jh, &m1)
                    && nontriv.iter().all(|&k| ctx.annihilate(&jh, &ctx.graded(&pd.j11, k)))
            })
    });

    let full = hyp("I")?;
    let identities = || -> Result<bool> {
        let mut polys = vec!["[y1_1, y2_1]".to_string()];
        for &h in &nontriv {
            polys.push(format!("z1_1 x2_{}", g.name(h)));
            for &k in &nontriv {
                polys.push(format!("x1_{} x2_{}", g.name(h), g.name(k)));
            }
        }
        for p in polys {
            if !e.is_identity(&Polynomial::parse(&p, g)?)?.holds {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let ids = if full { Some(identities()?) } else { None };
    checks.push(LemmaCheck {
        lemma: "[y1_1,y2_1], x1_g x2_h, z1_1 x2_g are identities".into(),
        corollary: true,
        hypothesis: full,
        conclusion: ids,
    });
    let decomposition = if full {
        let parts = b_components(a)?;
        let b = GStarAlgebra::direct_sum(&parts)?;
        let mut ok = e.t_equivalent(&Engine::with_cap(&b, e.cap())?, n)?;
        for &h in &nontriv {
            let m = Engine::new(&build_named(&format!("Mrho[{}]", g.name(h)), g)?)?;
            ok &= m.var_contains(&Engine::new(&parts[h])?, n)?.holds;
        }
        Some(ok)
    } else {
        None
    };
    checks.push(LemmaCheck {
        lemma: "A ~ sum of B^g with B^h in var(M_{h,rho})".into(),
        corollary: false,
        hypothesis: full,
        conclusion: decomposition,
    });
    Ok(StructureReport { algebra: a.name().to_string(), degree: n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_int(x)).collect()
    }

    #[test]
    fn profiles() {
        let p = poly_profile(&qs(&[3, 7, 11, 15, 19])).unwrap();
        assert_eq!((p.degree, p.leading.clone(), p.onset), (Some(1), Some(Q::from_int(4)), Some(1)));
        assert_eq!(poly_profile(&qs(&[1, 1, 1, 1])).unwrap().degree, Some(0));
        let p = poly_profile(&qs(&[2, 4, 8, 16, 32, 64])).unwrap();
        assert_eq!(p.class(), GrowthClass::NotEventuallyPolynomial);
        assert!(poly_profile(&qs(&[1, 2, 3])).is_err());
        // 1 + 2n + C(n,2)
        let seq: Vec<i64> = (1..=6).map(|n| 1 + 2 * n + n * (n - 1) / 2).collect();
        let p = poly_profile(&qs(&seq)).unwrap();
        assert_eq!(p.degree, Some(2));
        assert_eq!(p.leading, Some(Q::new(1, 2)));
        for (i, c) in seq.iter().enumerate() {
            assert_eq!(p.value_at(i + 1), Some(Q::from_int(*c)));
        }
        assert_eq!(p.value_at(10), Some(Q::from_int(1 + 20 + 45)));
    }

    #[test]
    fn late_onset() {
        let p = poly_profile(&qs(&[5, 0, 0, 0, 0])).unwrap();
        assert_eq!((p.degree, p.onset), (Some(0), Some(2)));
        assert_eq!(p.leading, Some(Q::ZERO));
        let p = poly_profile(&qs(&[9, 1, 3, 5, 7, 9])).unwrap();
        assert_eq!((p.degree, p.onset), (Some(1), Some(2)));
        assert_eq!(p.value_at(2), Some(Q::from_int(1)));
    }
}
