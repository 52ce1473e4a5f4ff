//! Named algebras and the finite sets they are collected into.
//!
//! Matrix algebras are materialized inside the full matrix-unit basis and
//! projected onto their spanning sets, so structure constants are computed
//! rather than typed in.

use crate::algebra::GStarAlgebra;
use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteAbelianGroup};
use crate::linalg::solve_in_span;
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    MRho,
    FCpG,
    FC2Star,
    FC2GStar,
    AStar,
    NStar,
    UStar,
    AG,
    NG,
    UG,
    Cg,
    CStarG,
    G2,
    W,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
    M10,
    M11,
    CommutativeTrivial,
    Nilpotent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvTag {
    Psi,
    Tau,
    Gamma,
    Nu1,
    Nu2,
    Nu3,
    Rho,
    Omega1,
    Omega2,
}

impl InvTag {
    pub fn name(self) -> &'static str {
        match self {
            InvTag::Psi => "psi",
            InvTag::Tau => "tau",
            InvTag::Gamma => "gamma",
            InvTag::Nu1 => "nu1",
            InvTag::Nu2 => "nu2",
            InvTag::Nu3 => "nu3",
            InvTag::Rho => "rho",
            InvTag::Omega1 => "omega1",
            InvTag::Omega2 => "omega2",
        }
    }

    fn parse(s: &str) -> Option<InvTag> {
        Some(match s {
            "psi" => InvTag::Psi,
            "tau" => InvTag::Tau,
            "gamma" => InvTag::Gamma,
            "nu1" => InvTag::Nu1,
            "nu2" => InvTag::Nu2,
            "nu3" => InvTag::Nu3,
            "rho" => InvTag::Rho,
            "omega1" => InvTag::Omega1,
            "omega2" => InvTag::Omega2,
            _ => return None,
        })
    }
}

/// A catalog family with its parameters. Group elements are indices into the
/// group the key is built over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogKey {
    pub family: Family,
    pub m: usize,
    pub elems: Vec<usize>,
    pub inv: Option<InvTag>,
}

impl CatalogKey {
    pub fn new(family: Family, m: usize, elems: Vec<usize>, inv: Option<InvTag>) -> Self {
        CatalogKey { family, m, elems, inv }
    }

    fn simple(family: Family, elems: Vec<usize>) -> Self {
        CatalogKey::new(family, 0, elems, None)
    }

    fn tagged(family: Family, inv: InvTag, elems: Vec<usize>) -> Self {
        CatalogKey::new(family, 0, elems, Some(inv))
    }

    /// Families whose codimensions grow exponentially.
    pub fn is_exponential(&self) -> bool {
        matches!(self.family, Family::MRho | Family::FCpG | Family::FC2Star | Family::FC2GStar)
    }

    /// Name in the `family[params]@group` grammar.
    pub fn display(&self, g: &FiniteAbelianGroup) -> String {
        let el: Vec<String> = self.elems.iter().map(|&e| g.name(e)).collect();
        let el = el.join(",");
        let head = match self.family {
            Family::MRho => format!("Mrho[{el}]"),
            Family::FCpG => format!("FCp[{el}]"),
            Family::FC2Star => "FC2star".to_string(),
            Family::FC2GStar => format!("FC2G[{el}]"),
            Family::AStar => format!("A{}star", self.m),
            Family::NStar => format!("N{}star", self.m),
            Family::UStar => format!("U{}star", self.m),
            Family::AG => format!("A{}[{el}]", self.m),
            Family::NG => format!("N{}[{el}]", self.m),
            Family::UG => format!("U{}[{el}]", self.m),
            Family::Cg => format!("C{}[{el}]", self.m),
            Family::CStarG => format!("C{}star[{el}]", self.m),
            Family::CommutativeTrivial => format!("C[m={}]", self.m),
            Family::Nilpotent => format!("nilpotent[dim={}]", self.m),
            f => {
                let base = match f {
                    Family::G2 => "G2",
                    Family::W => "W",
                    Family::M4 => "M4",
                    Family::M5 => "M5",
                    Family::M6 => "M6",
                    Family::M7 => "M7",
                    Family::M8 => "M8",
                    Family::M9 => "M9",
                    Family::M10 => "M10",
                    _ => "M11",
                };
                match self.inv {
                    Some(t) if !matches!(f, Family::M8 | Family::M9 | Family::M10 | Family::M11 | Family::M4 | Family::M5) => {
                        format!("{base}[{};{el}]", t.name())
                    }
                    _ => format!("{base}[{el}]"),
                }
            }
        };
        format!("{head}@{}", g.spec())
    }

    /// Parses `family[params]@group`. Without `@group` the fallback group is
    /// used.
    pub fn parse(text: &str, fallback: &FiniteAbelianGroup) -> Result<(CatalogKey, FiniteAbelianGroup)> {
        let bad = |m: &str| Error::MalformedInput(format!("{m} in algebra name {text:?}"));
        let (body, group) = match text.split_once('@') {
            Some((b, g)) => (b.trim(), FiniteAbelianGroup::parse_spec(g)?),
            None => (text.trim(), fallback.clone()),
        };
        let (head, params) = match body.find('[') {
            Some(p) => {
                let inner = body[p + 1..].strip_suffix(']').ok_or_else(|| bad("unclosed bracket"))?;
                (&body[..p], inner)
            }
            None => (body, ""),
        };
        let (tag, list) = match params.split_once(';') {
            Some((t, l)) => (Some(t.trim()), l),
            None => (None, params),
        };
        let mut elems = Vec::new();
        let mut kv: Vec<(String, String)> = Vec::new();
        let mut loose_tag = None;
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some((k, v)) = item.split_once('=') {
                kv.push((k.trim().to_string(), v.trim().to_string()));
            } else if InvTag::parse(item).is_some() && tag.is_none() {
                loose_tag = Some(item);
            } else {
                elems.push(group.parse_element(item)?);
            }
        }
        let tag = tag.or(loose_tag);
        let inv = match tag {
            Some(t) => Some(InvTag::parse(t).ok_or_else(|| bad("unknown involution tag"))?),
            None => None,
        };
        let int_param = |key: &str, default: Option<usize>| -> Result<usize> {
            match kv.iter().find(|(k, _)| k == key) {
                Some((_, v)) => v.parse().map_err(|_| bad("bad integer parameter")),
                None => default.ok_or_else(|| bad(&format!("missing parameter {key}"))),
            }
        };
        for (k, v) in &kv {
            if k == "g" || k == "h" {
                elems.push(group.parse_element(v)?);
            }
        }
        let fam_m = |s: &str| -> Option<(char, usize, bool)> {
            let mut chars = s.chars();
            let c = chars.next()?;
            let rest: String = chars.collect();
            let (num, star) = match rest.strip_suffix("star") {
                Some(n) => (n.to_string(), true),
                None => (rest, false),
            };
            let m: usize = num.parse().ok()?;
            Some((c, m, star))
        };
        let key = match head {
            "Mrho" | "M" => CatalogKey::simple(Family::MRho, elems),
            "FCp" => CatalogKey::simple(Family::FCpG, elems),
            "FC2star" => CatalogKey::simple(Family::FC2Star, vec![]),
            "FC2G" => CatalogKey::simple(Family::FC2GStar, elems),
            "G2" => CatalogKey::tagged(Family::G2, inv.ok_or_else(|| bad("missing involution"))?, elems),
            "W" => CatalogKey::tagged(Family::W, inv.ok_or_else(|| bad("missing involution"))?, elems),
            "C" => CatalogKey::new(Family::CommutativeTrivial, int_param("m", Some(2))?, vec![], None),
            "nilpotent" | "N" => CatalogKey::new(Family::Nilpotent, int_param("dim", Some(2))?, vec![], None),
            "M4" => CatalogKey::simple(Family::M4, elems),
            "M5" => CatalogKey::simple(Family::M5, elems),
            "M6" => CatalogKey::tagged(Family::M6, inv.unwrap_or(InvTag::Rho), elems),
            "M7" => CatalogKey::tagged(Family::M7, inv.unwrap_or(InvTag::Rho), elems),
            "M8" => CatalogKey::simple(Family::M8, elems),
            "M9" => CatalogKey::simple(Family::M9, elems),
            "M10" => CatalogKey::simple(Family::M10, elems),
            "M11" => CatalogKey::simple(Family::M11, elems),
            other => match fam_m(other) {
                Some((c, m, star)) => {
                    let family = match (c, star) {
                        ('A', true) => Family::AStar,
                        ('N', true) => Family::NStar,
                        ('U', true) => Family::UStar,
                        ('A', false) => Family::AG,
                        ('N', false) => Family::NG,
                        ('U', false) => Family::UG,
                        ('C', false) => Family::Cg,
                        ('C', true) if !elems.is_empty() => Family::CStarG,
                        ('C', true) => return Ok((CatalogKey::new(Family::CStarG, m, vec![0], None), group)),
                        _ => return Err(bad("unknown family")),
                    };
                    CatalogKey::new(family, m, elems, None)
                }
                None => return Err(bad("unknown family")),
            },
        };
        Ok((key, group))
    }
}

/// Parses a catalog name and builds the algebra.
pub fn build_named(text: &str, fallback: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    let (key, g) = CatalogKey::parse(text, fallback)?;
    build(&key, &g)
}

type Entry = (usize, usize, Q);

fn unit(i: usize, j: usize) -> Vec<Entry> {
    vec![(i, j, Q::ONE)]
}

fn combo(parts: &[(usize, usize, i64)]) -> Vec<Entry> {
    parts.iter().map(|&(i, j, c)| (i, j, Q::from_int(c))).collect()
}

fn entry_label(e: &[Entry]) -> String {
    let mut s = String::new();
    for (n, (i, j, c)) in e.iter().enumerate() {
        if c.is_negative() {
            s.push('-');
        } else if n > 0 {
            s.push('+');
        }
        if !c.abs().is_one() {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(&format!("e{i}{j}"));
    }
    s
}

enum InvSpec {
    Trivial,
    Reflection,
    /// Images of the spanning elements, as matrices.
    Images(Vec<Vec<Entry>>),
}

struct MatrixSpec {
    n: usize,
    elems: Vec<Vec<Entry>>,
    labels: Vec<String>,
    degrees: Vec<usize>,
    inv: InvSpec,
    one_f: Option<usize>,
}

impl MatrixSpec {
    fn new(n: usize) -> Self {
        MatrixSpec { n, elems: vec![], labels: vec![], degrees: vec![], inv: InvSpec::Reflection, one_f: None }
    }

    fn push(&mut self, e: Vec<Entry>, deg: usize) {
        self.labels.push(entry_label(&e));
        self.elems.push(e);
        self.degrees.push(deg);
    }

    fn push_labeled(&mut self, label: &str, e: Vec<Entry>, deg: usize) {
        self.labels.push(label.to_string());
        self.elems.push(e);
        self.degrees.push(deg);
    }

    fn flat(&self, e: &[Entry]) -> Vec<Q> {
        let n = self.n;
        let mut v = vec![Q::ZERO; n * n];
        for (i, j, c) in e {
            v[(i - 1) * n + (j - 1)] += c;
        }
        v
    }

    fn build(self, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
        let n = self.n;
        let d = self.elems.len();
        let flats: Vec<Vec<Q>> = self.elems.iter().map(|e| self.flat(e)).collect();
        let coords = |v: &[Q]| -> Result<Vec<Q>> {
            if v.iter().all(Q::is_zero) {
                return Ok(vec![Q::ZERO; d]);
            }
            solve_in_span(&flats, v).ok_or_else(|| Error::Structural("spanning set is not closed".into()))
        };
        let matmul = |a: &[Q], b: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::ZERO; n * n];
            for i in 0..n {
                for k in 0..n {
                    let x = &a[i * n + k];
                    if x.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let y = &b[k * n + j];
                        if !y.is_zero() {
                            out[i * n + j].add_mul(x, y);
                        }
                    }
                }
            }
            out
        };
        let mut triples = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in coords(&matmul(&flats[i], &flats[j]))?.into_iter().enumerate() {
                    if !c.is_zero() {
                        triples.push((i, j, k, c));
                    }
                }
            }
        }
        let mut involution = vec![vec![Q::ZERO; d]; d];
        for j in 0..d {
            let image = match &self.inv {
                InvSpec::Trivial => flats[j].clone(),
                InvSpec::Reflection => {
                    let mut r = vec![Q::ZERO; n * n];
                    for a in 0..n {
                        for b in 0..n {
                            r[(n - 1 - b) * n + (n - 1 - a)] = flats[j][a * n + b].clone();
                        }
                    }
                    r
                }
                InvSpec::Images(imgs) => self.flat(&imgs[j]),
            };
            for (i, c) in coords(&image)?.into_iter().enumerate() {
                involution[i][j] = c;
            }
        }
        let mut identity = vec![Q::ZERO; n * n];
        for i in 0..n {
            identity[i * n + i] = Q::ONE;
        }
        let unit = solve_in_span(&flats, &identity);
        let mut a = GStarAlgebra::new(g.clone(), self.labels, &triples, self.degrees, involution, unit)?;
        if let Some(k) = self.one_f {
            let mut e = vec![Q::ZERO; d];
            e[k] = Q::ONE;
            a = a.with_designated_idempotent(e);
        }
        Ok(a)
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

fn elems_exact(key: &CatalogKey, k: usize, g: &FiniteAbelianGroup) -> Result<()> {
    need(key.elems.len() == k, &format!("expected {k} group element parameter(s)"))?;
    need(key.elems.iter().all(|&e| e < g.order()), "group element out of range")
}

/// Powers `E^1..E^k` of a matrix given as entries, in `UT_n`.
fn matrix_powers(n: usize, e: &[Entry], k: usize) -> Vec<Vec<Entry>> {
    let mut m = vec![vec![Q::ZERO; n + 1]; n + 1];
    for (i, j, c) in e {
        m[*i][*j] = c.clone();
    }
    let mut out = Vec::new();
    let mut p = m.clone();
    for _ in 0..k {
        let mut entries = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if !p[i][j].is_zero() {
                    entries.push((i, j, p[i][j].clone()));
                }
            }
        }
        out.push(entries);
        let mut next = vec![vec![Q::ZERO; n + 1]; n + 1];
        for i in 1..=n {
            for l in 1..=n {
                if p[i][l].is_zero() {
                    continue;
                }
                for j in 1..=n {
                    if !m[l][j].is_zero() {
                        next[i][j].add_mul(&p[i][l], &m[l][j]);
                    }
                }
            }
        }
        p = next;
    }
    out
}

fn identity_entries(n: usize) -> Vec<Entry> {
    (1..=n).map(|i| (i, i, Q::ONE)).collect()
}

/// A_m, N_m, U_m inside UT_{2m}.
fn amn(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    let m = key.m;
    need(m >= 2, "m must be at least 2")?;
    let graded = matches!(key.family, Family::AG | Family::NG | Family::UG);
    let gen = if graded {
        elems_exact(key, 1, g)?;
        need(key.elems[0] != 0, "the graded variant needs g != 1")?;
        key.elems[0]
    } else {
        0
    };
    let n = 2 * m;
    // elementary grading (1, g^(m-1), 1^(m-1), g)
    let mut gv = vec![0usize; n + 1];
    for (i, slot) in gv.iter_mut().enumerate().skip(1) {
        *slot = if (2..=m).contains(&i) || i == n { gen } else { 0 };
    }
    let deg_of = |e: &[Entry]| -> Result<usize> {
        let degs: Vec<usize> = e.iter().map(|(i, j, _)| g.mul(g.inv(gv[*i]), gv[*j])).collect();
        if degs.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Structural("spanning element is not homogeneous".into()));
        }
        Ok(degs[0])
    };
    let mut e_entries = Vec::new();
    for i in 2..m {
        e_entries.push((i, i + 1, Q::ONE));
        e_entries.push((n - i, n - i + 1, Q::ONE));
    }
    let mut spec = MatrixSpec::new(n);
    let kind = match key.family {
        Family::AStar | Family::AG => 'A',
        Family::NStar | Family::NG => 'N',
        _ => 'U',
    };
    if kind == 'A' {
        spec.push(combo(&[(1, 1, 1), (n, n, 1)]), 0);
    } else {
        spec.push_labeled("I", identity_entries(n), 0);
    }
    spec.one_f = Some(0);
    for p in matrix_powers(n, &e_entries, m.saturating_sub(2)) {
        let deg = deg_of(&p)?;
        spec.push(p, deg);
    }
    let mut rad = Vec::new();
    match kind {
        'A' => rad.push(unit(1, 2)),
        'N' => rad.push(combo(&[(1, 2, 1), (n - 1, n, -1)])),
        _ => rad.push(combo(&[(1, 2, 1), (n - 1, n, 1)])),
    }
    for j in 3..=m {
        rad.push(unit(1, j));
    }
    let last = if kind == 'A' { n - 1 } else { n - 2 };
    for i in m + 1..=last {
        rad.push(unit(i, n));
    }
    if kind == 'A' {
        // e12 was pushed first; keep e_{m+1,2m}.. including e_{2m-1,2m}
    }
    for e in rad {
        let deg = deg_of(&e)?;
        spec.push(e, deg);
    }
    spec.build(g)
}

fn c_m(key: &CatalogKey, g: &FiniteAbelianGroup, star: bool, trivial_grading: bool) -> Result<GStarAlgebra> {
    let m = key.m;
    need(m >= 2, "m must be at least 2")?;
    let gen = if trivial_grading {
        0
    } else {
        elems_exact(key, 1, g)?;
        key.elems[0]
    };
    let e1: Vec<Entry> = (1..m).map(|i| (i, i + 1, Q::ONE)).collect();
    let mut spec = MatrixSpec::new(m);
    spec.push_labeled("I", identity_entries(m), 0);
    spec.one_f = Some(0);
    let mut images = vec![identity_entries(m)];
    for (i, p) in matrix_powers(m, &e1, m - 1).into_iter().enumerate() {
        let k = i + 1;
        let label = if k == 1 { "E1".to_string() } else { format!("E1^{k}") };
        let sign = if star && k % 2 == 1 { -1 } else { 1 };
        images.push(p.iter().map(|(a, b, c)| (*a, *b, c * &Q::from_int(sign))).collect());
        spec.push_labeled(&label, p, g.pow(gen, k));
    }
    spec.inv = InvSpec::Images(images);
    spec.build(g)
}

fn group_algebra(g: &FiniteAbelianGroup, p: usize, gen: Option<usize>, skew_generator: bool) -> Result<GStarAlgebra> {
    // basis u^0..u^{p-1} with u^p = 1
    let labels: Vec<String> = (0..p)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "u".to_string(),
            _ => format!("u^{i}"),
        })
        .collect();
    let mut triples = Vec::new();
    for i in 0..p {
        for j in 0..p {
            triples.push((i, j, (i + j) % p, Q::ONE));
        }
    }
    let grading: Vec<usize> = (0..p).map(|i| gen.map_or(0, |x| g.pow(x, i))).collect();
    let mut inv = vec![vec![Q::ZERO; p]; p];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = if skew_generator && i % 2 == 1 { -Q::ONE } else { Q::ONE };
    }
    let mut unit = vec![Q::ZERO; p];
    unit[0] = Q::ONE;
    let a = GStarAlgebra::new(g.clone(), labels, &triples, grading, inv, Some(unit.clone()))?;
    Ok(a.with_designated_idempotent(unit))
}

fn grassmann(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    elems_exact(key, 2, g)?;
    let (a, b) = (key.elems[0], key.elems[1]);
    let labels = vec!["1".to_string(), "e1".into(), "e2".into(), "e1e2".into()];
    let one = Q::ONE;
    let mut triples = vec![(0, 0, 0, one.clone())];
    for i in 1..4 {
        triples.push((0, i, i, one.clone()));
        triples.push((i, 0, i, one.clone()));
    }
    triples.push((1, 2, 3, one.clone()));
    triples.push((2, 1, 3, -one.clone()));
    let (s1, s2) = match key.inv {
        Some(InvTag::Psi) => (1, 1),
        Some(InvTag::Tau) => (-1, -1),
        Some(InvTag::Gamma) => (-1, 1),
        _ => return Err(Error::InvalidParameter("G2 takes psi, tau or gamma".into())),
    };
    // (e1 e2)^* = e2^* e1^* = -s1 s2 e1e2
    let s3 = -s1 * s2;
    let mut inv = vec![vec![Q::ZERO; 4]; 4];
    for (i, s) in [1, s1, s2, s3].into_iter().enumerate() {
        inv[i][i] = Q::from_int(s);
    }
    let grading = vec![0, a, b, g.mul(a, b)];
    let mut unit = vec![Q::ZERO; 4];
    unit[0] = Q::ONE;
    Ok(GStarAlgebra::new(g.clone(), labels, &triples, grading, inv, Some(unit.clone()))?
        .with_designated_idempotent(unit))
}

fn w_algebra(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    elems_exact(key, 2, g)?;
    let (a, b) = (key.elems[0], key.elems[1]);
    let mut spec = MatrixSpec::new(4);
    let bm = combo(&[(1, 2, 1), (3, 4, 1)]);
    let cm = combo(&[(1, 3, 1), (2, 4, 1)]);
    let dm = unit(1, 4);
    spec.push_labeled("I", identity_entries(4), 0);
    spec.push(bm.clone(), a);
    spec.push(cm.clone(), b);
    spec.push(dm.clone(), g.mul(a, b));
    spec.one_f = Some(0);
    let neg = |e: &Vec<Entry>| -> Vec<Entry> { e.iter().map(|(i, j, c)| (*i, *j, -c.clone())).collect() };
    spec.inv = match key.inv {
        Some(InvTag::Nu1) => InvSpec::Trivial,
        Some(InvTag::Nu2) => InvSpec::Images(vec![identity_entries(4), neg(&bm), neg(&cm), dm.clone()]),
        Some(InvTag::Nu3) => InvSpec::Images(vec![identity_entries(4), neg(&bm), cm.clone(), neg(&dm)]),
        _ => return Err(Error::InvalidParameter("W takes nu1, nu2 or nu3".into())),
    };
    spec.build(g)
}

/// Images under omega_1 / omega_2 of (idempotent, e12, e13, e14, e24, e34).
fn omega_images(idem: Vec<Entry>) -> InvSpec {
    InvSpec::Images(vec![
        idem,
        combo(&[(3, 4, -1)]),
        unit(2, 4),
        combo(&[(1, 4, -1)]),
        unit(1, 3),
        combo(&[(1, 2, -1)]),
    ])
}

fn m67(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    elems_exact(key, 2, g)?;
    let (a, b) = (key.elems[0], key.elems[1]);
    let idem = if key.family == Family::M6 { combo(&[(1, 1, 1), (4, 4, 1)]) } else { combo(&[(2, 2, 1), (3, 3, 1)]) };
    let mut spec = MatrixSpec::new(4);
    spec.push(idem.clone(), 0);
    spec.push(unit(1, 2), a);
    spec.push(unit(1, 3), b);
    spec.push(unit(1, 4), g.mul(a, b));
    spec.push(unit(2, 4), b);
    spec.push(unit(3, 4), a);
    spec.one_f = Some(0);
    spec.inv = match (key.family, key.inv) {
        (_, Some(InvTag::Rho)) | (_, None) => InvSpec::Reflection,
        (Family::M6, Some(InvTag::Omega1)) | (Family::M7, Some(InvTag::Omega2)) => omega_images(idem),
        _ => return Err(Error::InvalidParameter("M6 takes rho or omega1, M7 takes rho or omega2".into())),
    };
    spec.build(g)
}

fn m_ut6(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    elems_exact(key, 2, g)?;
    let (a, b) = (key.elems[0], key.elems[1]);
    let ab = g.mul(a, b);
    let mut spec = MatrixSpec::new(6);
    match key.family {
        Family::M8 | Family::M9 => {
            let s = if key.family == Family::M8 { 1 } else { -1 };
            spec.push(combo(&[(1, 1, 1), (6, 6, 1)]), 0);
            spec.push(combo(&[(2, 3, 1), (4, 5, s)]), b);
            spec.push(unit(1, 2), a);
            spec.push(unit(1, 3), ab);
            spec.push(unit(4, 6), ab);
            spec.push(unit(5, 6), a);
        }
        _ => {
            let s = if key.family == Family::M10 { -1 } else { 1 };
            spec.push(combo(&[(1, 1, 1), (2, 2, 1), (5, 5, 1), (6, 6, 1)]), 0);
            spec.push(combo(&[(1, 2, 1), (5, 6, s)]), a);
            spec.push(unit(1, 3), ab);
            spec.push(unit(2, 3), b);
            spec.push(unit(4, 5), b);
            spec.push(unit(4, 6), ab);
        }
    }
    spec.one_f = Some(0);
    spec.build(g)
}

fn m45(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    elems_exact(key, 1, g)?;
    let a = key.elems[0];
    let mut spec = MatrixSpec::new(3);
    if key.family == Family::M4 {
        spec.push(combo(&[(1, 1, 1), (3, 3, 1)]), 0);
    } else {
        spec.push(unit(2, 2), 0);
    }
    spec.push(unit(1, 2), a);
    spec.push(unit(2, 3), a);
    spec.push(unit(1, 3), g.mul(a, a));
    spec.one_f = Some(0);
    spec.build(g)
}

fn m_rho(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    elems_exact(key, 1, g)?;
    let a = key.elems[0];
    let mut spec = MatrixSpec::new(4);
    spec.push(combo(&[(1, 1, 1), (4, 4, 1)]), 0);
    spec.push(combo(&[(2, 2, 1), (3, 3, 1)]), 0);
    spec.push(unit(1, 2), a);
    spec.push(unit(3, 4), a);
    spec.build(g)
}

fn nilpotent(k: usize, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    need(k >= 1, "dimension must be positive")?;
    let labels = (1..=k).map(|i| format!("n{i}")).collect();
    let mut inv = vec![vec![Q::ZERO; k]; k];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Q::ONE;
    }
    GStarAlgebra::new(g.clone(), labels, &[], vec![0; k], inv, None)
}

/// Builds the algebra of a key over `g`; the result is validated.
pub fn build(key: &CatalogKey, g: &FiniteAbelianGroup) -> Result<GStarAlgebra> {
    let a = match key.family {
        Family::MRho => m_rho(key, g)?,
        Family::FCpG => {
            elems_exact(key, 1, g)?;
            let p = g.element_order(key.elems[0]);
            need(is_prime(p), "FC_p^G needs an element of prime order")?;
            group_algebra(g, p, Some(key.elems[0]), false)?
        }
        Family::FC2Star => group_algebra(g, 2, None, true)?,
        Family::FC2GStar => {
            elems_exact(key, 1, g)?;
            need(g.element_order(key.elems[0]) == 2, "(FC2)^(G,*) needs an element of order 2")?;
            group_algebra(g, 2, Some(key.elems[0]), true)?
        }
        Family::AStar | Family::NStar | Family::UStar => {
            need(key.elems.is_empty(), "star variants take no group element")?;
            amn(key, g)?
        }
        Family::AG | Family::NG | Family::UG => amn(key, g)?,
        Family::Cg => c_m(key, g, false, false)?,
        Family::CStarG => c_m(key, g, true, false)?,
        Family::CommutativeTrivial => c_m(key, g, false, true)?,
        Family::Nilpotent => nilpotent(key.m, g)?,
        Family::G2 => grassmann(key, g)?,
        Family::W => w_algebra(key, g)?,
        Family::M4 | Family::M5 => m45(key, g)?,
        Family::M6 | Family::M7 => m67(key, g)?,
        Family::M8 | Family::M9 | Family::M10 | Family::M11 => m_ut6(key, g)?,
    };
    let a = a.with_name(key.display(g));
    match a.validate() {
        crate::algebra::Validation::Pass => Ok(a),
        crate::algebra::Validation::Fail { axiom, witness } => Err(Error::Structural(format!(
            "catalog algebra {} fails {axiom} at {witness:?}",
            a.name()
        ))),
    }
}

pub const SET_NAMES: &[&str] =
    &["I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9", "I10", "I", "K", "K1", "M", "L", "E", "LIN"];

fn push_unique(out: &mut Vec<CatalogKey>, k: CatalogKey) {
    if !out.contains(&k) {
        out.push(k);
    }
}

fn extend_unique(out: &mut Vec<CatalogKey>, ks: Vec<CatalogKey>) {
    for k in ks {
        push_unique(out, k);
    }
}

fn c3(family: Family, g: usize) -> CatalogKey {
    CatalogKey::new(family, 3, vec![g], None)
}

/// Keys of a named set over `g`, in a fixed order without duplicates.
pub fn set_keys(name: &str, g: &FiniteAbelianGroup) -> Result<Vec<CatalogKey>> {
    let els: Vec<usize> = g.elements().collect();
    let nontriv: Vec<usize> = els.iter().copied().filter(|&e| e != 0).collect();
    let pairs = |f: &dyn Fn(usize, usize) -> CatalogKey| -> Vec<CatalogKey> {
        let mut v = Vec::new();
        for &a in &els {
            for &b in &els {
                v.push(f(a, b));
            }
        }
        v
    };
    let distinct_pairs = |f: &dyn Fn(usize, usize) -> CatalogKey| -> Vec<CatalogKey> {
        let mut v = Vec::new();
        for &a in &els {
            for &b in &els {
                if a != b {
                    v.push(f(a, b));
                }
            }
        }
        v
    };
    let mut out = Vec::new();
    match name {
        "I1" => out = els.iter().map(|&a| CatalogKey::simple(Family::M4, vec![a])).collect(),
        "I2" => out = els.iter().map(|&a| CatalogKey::simple(Family::M5, vec![a])).collect(),
        "I3" | "I4" => {
            out = set_keys("I1", g)?;
            extend_unique(&mut out, set_keys("I2", g)?);
            let fam = if name == "I3" { Family::M8 } else { Family::M9 };
            extend_unique(&mut out, pairs(&|a, b| CatalogKey::simple(fam, vec![a, b])));
        }
        "I5" | "I6" => {
            out = set_keys("I3", g)?;
            extend_unique(&mut out, set_keys("I4", g)?);
            let (fam, tag) = if name == "I5" { (Family::M6, InvTag::Omega1) } else { (Family::M7, InvTag::Omega2) };
            extend_unique(&mut out, pairs(&|a, b| CatalogKey::tagged(fam, tag, vec![a, b])));
            extend_unique(&mut out, distinct_pairs(&|a, b| CatalogKey::tagged(fam, InvTag::Rho, vec![a, b])));
        }
        "I7" => {
            out = set_keys("I6", g)?;
            extend_unique(&mut out, els.iter().map(|&a| c3(Family::CStarG, a)).collect());
            extend_unique(&mut out, pairs(&|a, b| CatalogKey::simple(Family::M10, vec![a, b])));
        }
        "I8" => {
            out = set_keys("I6", g)?;
            extend_unique(&mut out, nontriv.iter().map(|&a| c3(Family::Cg, a)).collect());
            for &a in &nontriv {
                for &b in &els {
                    push_unique(&mut out, CatalogKey::simple(Family::M11, vec![a, b]));
                }
            }
        }
        "I9" => {
            for &a in &nontriv {
                push_unique(&mut out, c3(Family::Cg, a));
            }
            for &u in &els {
                push_unique(&mut out, c3(Family::CStarG, u));
            }
            push_unique(&mut out, CatalogKey::new(Family::UStar, 3, vec![], None));
            for &a in &nontriv {
                for &b in &nontriv {
                    for t in [InvTag::Psi, InvTag::Tau, InvTag::Gamma] {
                        push_unique(&mut out, CatalogKey::tagged(Family::G2, t, vec![a, b]));
                    }
                    for t in [InvTag::Nu1, InvTag::Nu2, InvTag::Nu3] {
                        push_unique(&mut out, CatalogKey::tagged(Family::W, t, vec![a, b]));
                    }
                }
            }
            for &h in &nontriv {
                for t in [InvTag::Tau, InvTag::Gamma] {
                    push_unique(&mut out, CatalogKey::tagged(Family::G2, t, vec![0, h]));
                }
                for t in [InvTag::Nu2, InvTag::Nu3] {
                    push_unique(&mut out, CatalogKey::tagged(Family::W, t, vec![0, h]));
                }
            }
        }
        "I10" => {
            for &a in &nontriv {
                for fam in [Family::AG, Family::NG, Family::UG] {
                    push_unique(&mut out, CatalogKey::new(fam, 3, vec![a], None));
                }
            }
        }
        "I" => {
            for s in ["I5", "I7", "I8", "I9"] {
                extend_unique(&mut out, set_keys(s, g)?);
            }
        }
        "K" | "K1" => {
            out.push(CatalogKey::tagged(Family::G2, InvTag::Tau, vec![0, 0]));
            out.push(c3(Family::CStarG, 0));
            out.push(CatalogKey::new(Family::NStar, 3, vec![], None));
            out.push(CatalogKey::new(Family::UStar, 3, vec![], None));
            out.push(CatalogKey::simple(Family::M4, vec![0]));
            out.push(CatalogKey::simple(Family::M5, vec![0]));
            if name == "K" {
                out.push(CatalogKey::tagged(Family::M6, InvTag::Omega1, vec![0, 0]));
            }
            out.push(CatalogKey::tagged(Family::M7, InvTag::Omega2, vec![0, 0]));
            for fam in [Family::M8, Family::M9, Family::M10] {
                out.push(CatalogKey::simple(fam, vec![0, 0]));
            }
        }
        "M" => {
            for s in ["I", "K1", "I10"] {
                extend_unique(&mut out, set_keys(s, g)?);
            }
        }
        "L" => {
            need(g.order() == 2, "the set L is defined over Z2 only")?;
            let gg = 1;
            for &u in &els {
                push_unique(&mut out, CatalogKey::simple(Family::M4, vec![u]));
                push_unique(&mut out, CatalogKey::simple(Family::M5, vec![u]));
            }
            for fam in [Family::M8, Family::M9, Family::M10] {
                extend_unique(&mut out, pairs(&|a, b| CatalogKey::simple(fam, vec![a, b])));
            }
            for fam in [Family::M6, Family::M7] {
                extend_unique(&mut out, distinct_pairs(&|a, b| CatalogKey::tagged(fam, InvTag::Rho, vec![a, b])));
            }
            extend_unique(&mut out, pairs(&|a, b| CatalogKey::tagged(Family::M6, InvTag::Omega1, vec![a, b])));
            extend_unique(&mut out, pairs(&|a, b| CatalogKey::tagged(Family::M7, InvTag::Omega2, vec![a, b])));
            for &u in &els {
                push_unique(&mut out, CatalogKey::simple(Family::M11, vec![gg, u]));
                push_unique(&mut out, c3(Family::CStarG, u));
            }
            push_unique(&mut out, c3(Family::Cg, gg));
            for t in [InvTag::Tau, InvTag::Gamma, InvTag::Psi] {
                push_unique(&mut out, CatalogKey::tagged(Family::G2, t, vec![gg, gg]));
            }
            for t in [InvTag::Tau, InvTag::Gamma] {
                push_unique(&mut out, CatalogKey::tagged(Family::G2, t, vec![0, gg]));
            }
            push_unique(&mut out, CatalogKey::tagged(Family::G2, InvTag::Tau, vec![0, 0]));
            for t in [InvTag::Nu1, InvTag::Nu2, InvTag::Nu3] {
                push_unique(&mut out, CatalogKey::tagged(Family::W, t, vec![gg, gg]));
            }
            for t in [InvTag::Nu2, InvTag::Nu3] {
                push_unique(&mut out, CatalogKey::tagged(Family::W, t, vec![0, gg]));
            }
            push_unique(&mut out, CatalogKey::new(Family::UStar, 3, vec![], None));
            push_unique(&mut out, CatalogKey::new(Family::NStar, 3, vec![], None));
            for fam in [Family::AG, Family::NG, Family::UG] {
                push_unique(&mut out, CatalogKey::new(fam, 3, vec![gg], None));
            }
            let drop = CatalogKey::tagged(Family::M6, InvTag::Omega1, vec![0, 0]);
            out.retain(|k| k != &drop);
        }
        "E" => {
            out.push(CatalogKey::simple(Family::FC2Star, vec![]));
            for x in g.prime_order_subgroup_generators() {
                out.push(CatalogKey::simple(Family::FCpG, vec![x]));
            }
            for &a in &els {
                out.push(CatalogKey::simple(Family::MRho, vec![a]));
            }
            for &a in &nontriv {
                if g.element_order(a) == 2 {
                    out.push(CatalogKey::simple(Family::FC2GStar, vec![a]));
                }
            }
        }
        "LIN" => {
            for &a in &els {
                out.push(CatalogKey::new(Family::CStarG, 2, vec![a], None));
            }
            out.push(CatalogKey::new(Family::AStar, 2, vec![], None));
            for &h in &nontriv {
                out.push(CatalogKey::new(Family::Cg, 2, vec![h], None));
                out.push(CatalogKey::new(Family::AG, 2, vec![h], None));
            }
        }
        other => return Err(Error::UnknownSet(other.to_string())),
    }
    Ok(out)
}

pub fn catalog_set(name: &str, g: &FiniteAbelianGroup) -> Result<Vec<GStarAlgebra>> {
    set_keys(name, g)?.iter().map(|k| build(k, g)).collect()
}

/// Every catalog family at every admissible parameter choice over `g`
/// (with `m` ranging over `2..=3`, and `2..=4` for the commutative families).
pub fn all_keys(g: &FiniteAbelianGroup) -> Vec<CatalogKey> {
    let mut out = Vec::new();
    for s in ["M", "E", "LIN"] {
        extend_unique(&mut out, set_keys(s, g).expect("known set"));
    }
    let els: Vec<usize> = g.elements().collect();
    for m in 2..=3 {
        for fam in [Family::AStar, Family::NStar, Family::UStar] {
            push_unique(&mut out, CatalogKey::new(fam, m, vec![], None));
        }
        for &a in els.iter().filter(|&&a| a != 0) {
            for fam in [Family::AG, Family::NG, Family::UG] {
                push_unique(&mut out, CatalogKey::new(fam, m, vec![a], None));
            }
        }
    }
    for m in 2..=4 {
        for &a in &els {
            push_unique(&mut out, CatalogKey::new(Family::Cg, m, vec![a], None));
            push_unique(&mut out, CatalogKey::new(Family::CStarG, m, vec![a], None));
        }
    }
    for &a in &els {
        for &b in &els {
            for t in [InvTag::Psi, InvTag::Tau, InvTag::Gamma] {
                push_unique(&mut out, CatalogKey::tagged(Family::G2, t, vec![a, b]));
            }
            for t in [InvTag::Nu1, InvTag::Nu2, InvTag::Nu3] {
                push_unique(&mut out, CatalogKey::tagged(Family::W, t, vec![a, b]));
            }
        }
    }
    push_unique(&mut out, CatalogKey::new(Family::CommutativeTrivial, 2, vec![], None));
    push_unique(&mut out, CatalogKey::new(Family::Nilpotent, 2, vec![], None));
    out
}

/// The two-dimensional null algebra used for nilpotent summands.
pub fn null_algebra(g: &FiniteAbelianGroup) -> GStarAlgebra {
    build(&CatalogKey::new(Family::Nilpotent, 2, vec![], None), g).expect("null algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Sign;

    fn z(m: usize) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(m).unwrap()
    }

    #[test]
    fn dimensions() {
        let g = z(2);
        let dim = |s: &str| build_named(s, &g).unwrap().dim();
        assert_eq!(dim("A2star"), 3);
        assert_eq!(dim("N2star"), 2);
        assert_eq!(dim("U2star"), 2);
        assert_eq!(dim("M8[1,1]"), 6);
        assert_eq!(dim("A3[g]"), 6);
        assert_eq!(dim("N3star"), 5);
        assert_eq!(dim("M6[omega1;1,1]"), 6);
        assert_eq!(dim("G2[tau;g,g]"), 4);
    }

    #[test]
    fn every_key_builds_over_small_groups() {
        for spec in ["Z1", "Z2", "Z3", "Z4", "Z2xZ2"] {
            let g = FiniteAbelianGroup::parse_spec(spec).unwrap();
            for k in all_keys(&g) {
                let a = build(&k, &g).unwrap_or_else(|e| panic!("{}: {e}", k.display(&g)));
                let (k2, g2) = CatalogKey::parse(a.name(), &g).unwrap();
                assert_eq!(k2, k, "{}", a.name());
                assert_eq!(g2.cayley(), g.cayley());
            }
        }
    }

    #[test]
    fn parameter_constraints() {
        let g = z(3);
        assert!(matches!(build_named("FC2G[g]", &g), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_named("A2[1]", &g), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_named("FCp[1]", &g), Err(Error::InvalidParameter(_))));
        assert!(build_named("FCp[g]", &g).is_ok());
        assert!(matches!(set_keys("L", &g), Err(Error::InvalidParameter(_))));
        assert!(matches!(set_keys("Q", &g), Err(Error::UnknownSet(_))));
    }

    #[test]
    fn set_sizes() {
        let g = z(2);
        assert_eq!(set_keys("I1", &g).unwrap().len(), 2);
        assert_eq!(set_keys("I10", &g).unwrap().len(), 3);
        assert_eq!(set_keys("K", &g).unwrap().len(), 11);
        assert_eq!(set_keys("K1", &g).unwrap().len(), 10);
    }

    #[test]
    fn c3star_involution_signs() {
        let a = build_named("C3star[g]@Z3", &z(3)).unwrap();
        let inv = a.involution_matrix();
        assert_eq!(inv[1][1], -Q::ONE);
        assert_eq!(inv[2][2], Q::ONE);
    }

    #[test]
    fn mrho_components() {
        let g = z(2);
        let a = build_named("Mrho[g]", &g).unwrap();
        assert!(a.homogeneous_component(0, Sign::Minus).is_zero());
        let m1 = build_named("Mrho[1]", &g).unwrap();
        assert_eq!(m1.homogeneous_component(0, Sign::Minus).dim(), 1);
    }
}
