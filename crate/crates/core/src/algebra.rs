//! Finite-dimensional algebras with a group grading and a graded involution.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::linalg::{nullspace, solve_in_span, sparse_from_dense, SparseVec, Subspace};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> Q {
        match self {
            Sign::Plus => Q::ONE,
            Sign::Minus => -Q::ONE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    GradingCompatibility,
    Associativity,
    AntiAutomorphism,
    InvolutionSquare,
    GradedInvolution,
    Unit,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::GradingCompatibility => "grading-compatibility",
            Axiom::Associativity => "associativity",
            Axiom::AntiAutomorphism => "anti-automorphism",
            Axiom::InvolutionSquare => "involution-square",
            Axiom::GradedInvolution => "graded-involution",
            Axiom::Unit => "unit",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Pass,
    /// First violated axiom with the basis indices that witness it.
    Fail { axiom: Axiom, witness: Vec<usize> },
}

impl Validation {
    pub fn passed(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceDecomposition {
    pub j00: Subspace,
    pub j10: Subspace,
    pub j01: Subspace,
    pub j11: Subspace,
}

impl PeirceDecomposition {
    /// Component `J_{ik}` for `i, k` in `{0, 1}`.
    pub fn part(&self, i: usize, k: usize) -> &Subspace {
        match (i, k) {
            (0, 0) => &self.j00,
            (1, 0) => &self.j10,
            (0, 1) => &self.j01,
            _ => &self.j11,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GStarAlgebra {
    name: String,
    group: FiniteAbelianGroup,
    labels: Vec<String>,
    /// `sc[i][j]` holds the coordinates of `b_i b_j`.
    sc: Vec<Vec<SparseVec>>,
    grading: Vec<usize>,
    /// `involution[i][j]` is the coefficient of `b_i` in `b_j^*`.
    involution: Vec<Vec<Q>>,
    unit: Option<Vec<Q>>,
    one_f: Option<Vec<Q>>,
}

impl GStarAlgebra {
    /// Builds an algebra from sparse structure constants `(i, j, k, c)`
    /// meaning `b_i b_j` has coefficient `c` at `b_k`. No axioms are checked
    /// beyond shapes; call [`GStarAlgebra::validate`].
    pub fn new(
        group: FiniteAbelianGroup,
        labels: Vec<String>,
        triples: &[(usize, usize, usize, Q)],
        grading: Vec<usize>,
        involution: Vec<Vec<Q>>,
        unit: Option<Vec<Q>>,
    ) -> Result<Self> {
        let d = labels.len();
        if grading.len() != d {
            return Err(Error::MalformedInput(format!(
                "grading has {} entries for dimension {d}",
                grading.len()
            )));
        }
        if grading.iter().any(|&g| g >= group.order()) {
            return Err(Error::MalformedInput("grading refers to a missing group element".into()));
        }
        if involution.len() != d || involution.iter().any(|r| r.len() != d) {
            return Err(Error::MalformedInput(format!("involution must be {d}x{d}")));
        }
        if unit.as_ref().is_some_and(|u| u.len() != d) {
            return Err(Error::MalformedInput("unit has the wrong length".into()));
        }
        let mut dense = vec![vec![vec![Q::ZERO; d]; d]; d];
        for (i, j, k, c) in triples {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::MalformedInput(format!(
                    "structure constant index ({i},{j},{k}) out of range"
                )));
            }
            dense[*i][*j][*k] += c;
        }
        let sc = dense
            .into_iter()
            .map(|row| row.into_iter().map(|v| sparse_from_dense(&v)).collect())
            .collect();
        Ok(GStarAlgebra {
            name: String::new(),
            group,
            labels,
            sc,
            grading,
            involution,
            unit,
            one_f: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Records the idempotent used for Peirce decompositions.
    pub fn with_designated_idempotent(mut self, e: Vec<Q>) -> Self {
        self.one_f = Some(e);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn involution_matrix(&self) -> &[Vec<Q>] {
        &self.involution
    }

    pub fn unit(&self) -> Option<&[Q]> {
        self.unit.as_deref()
    }

    pub fn designated_idempotent(&self) -> Option<&[Q]> {
        self.one_f.as_deref()
    }

    /// Coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.sc[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::ZERO; self.dim()];
        v[i] = Q::ONE;
        v
    }

    pub(crate) fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::ZERO; d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in &self.sc[i][j] {
                    out[*k].add_mul(&c, s);
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn inv(&self, x: &[Q]) -> Vec<Q> {
        let d = self.dim();
        let mut out = vec![Q::ZERO; d];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = &self.involution[i][j];
                if !m.is_zero() {
                    o.add_mul(m, xj);
                }
            }
        }
        out
    }

    pub fn involute(&self, x: &[Q]) -> Result<Vec<Q>> {
        self.check_len(x)?;
        Ok(self.inv(x))
    }

    fn check_len(&self, x: &[Q]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::MalformedInput(format!(
                "vector of length {} for dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Matrix of `y -> y x`; row `i` is `b_i x`.
    pub(crate) fn right_mult(&self, x: &[Q]) -> Vec<SparseVec> {
        (0..self.dim()).map(|i| sparse_from_dense(&self.mul(&self.basis_vector(i), x))).collect()
    }

    pub fn validate(&self) -> Validation {
        let d = self.dim();
        let g = &self.group;
        for i in 0..d {
            for j in 0..d {
                for (k, _) in &self.sc[i][j] {
                    if self.grading[*k] != g.mul(self.grading[i], self.grading[j]) {
                        return Validation::Fail {
                            axiom: Axiom::GradingCompatibility,
                            witness: vec![i, j, *k],
                        };
                    }
                }
            }
        }
        let basis: Vec<Vec<Q>> = (0..d).map(|i| self.basis_vector(i)).collect();
        let prod: Vec<Vec<Vec<Q>>> = (0..d)
            .map(|i| (0..d).map(|j| self.mul(&basis[i], &basis[j])).collect())
            .collect();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.mul(&prod[i][j], &basis[k]) != self.mul(&basis[i], &prod[j][k]) {
                        return Validation::Fail { axiom: Axiom::Associativity, witness: vec![i, j, k] };
                    }
                }
            }
        }
        let star: Vec<Vec<Q>> = basis.iter().map(|b| self.inv(b)).collect();
        for i in 0..d {
            for j in 0..d {
                if self.inv(&prod[i][j]) != self.mul(&star[j], &star[i]) {
                    return Validation::Fail { axiom: Axiom::AntiAutomorphism, witness: vec![i, j] };
                }
            }
        }
        for i in 0..d {
            if self.inv(&star[i]) != basis[i] {
                return Validation::Fail { axiom: Axiom::InvolutionSquare, witness: vec![i] };
            }
        }
        for i in 0..d {
            let bad = star[i].iter().enumerate().any(|(k, c)| !c.is_zero() && self.grading[k] != self.grading[i]);
            if bad {
                return Validation::Fail { axiom: Axiom::GradedInvolution, witness: vec![i] };
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..d {
                if self.mul(u, &basis[i]) != basis[i] || self.mul(&basis[i], u) != basis[i] {
                    return Validation::Fail { axiom: Axiom::Unit, witness: vec![i] };
                }
            }
            if &self.inv(u) != u {
                return Validation::Fail { axiom: Axiom::Unit, witness: vec![] };
            }
        }
        Validation::Pass
    }

    /// `A_g` as a subspace.
    pub fn graded_component(&self, g: usize) -> Subspace {
        let vecs: Vec<Vec<Q>> =
            (0..self.dim()).filter(|&i| self.grading[i] == g).map(|i| self.basis_vector(i)).collect();
        Subspace::span(self.dim(), &vecs)
    }

    /// `A_g^+` or `A_g^-`: the `+1` / `-1` eigenspace of `*` on `A_g`.
    pub fn homogeneous_component(&self, g: usize, sign: Sign) -> Subspace {
        let d = self.dim();
        let idx: Vec<usize> = (0..d).filter(|&i| self.grading[i] == g).collect();
        if idx.is_empty() {
            return Subspace::zero(d);
        }
        let s = sign.value();
        // (M - s I) restricted to the columns in idx
        let rows: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                idx.iter()
                    .map(|&c| {
                        let mut x = self.involution[r][c].clone();
                        if r == c {
                            x -= &s;
                        }
                        x
                    })
                    .collect()
            })
            .collect();
        let ns = nullspace(&rows, idx.len());
        let vecs: Vec<Vec<Q>> = ns
            .iter()
            .map(|coef| {
                let mut v = vec![Q::ZERO; d];
                for (c, &i) in coef.iter().zip(&idx) {
                    v[i] = c.clone();
                }
                v
            })
            .collect();
        Subspace::span(d, &vecs)
    }

    /// Group elements whose component is nonzero.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.grading.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn direct_sum(parts: &[GStarAlgebra]) -> Result<GStarAlgebra> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidParameter("direct sum of an empty list".into()));
        };
        if parts.iter().any(|p| p.group.cayley() != first.group.cayley()) {
            return Err(Error::InvalidParameter("direct sum over different groups".into()));
        }
        if parts.len() == 1 {
            return Ok(first.clone());
        }
        let d: usize = parts.iter().map(|p| p.dim()).sum();
        let mut labels = Vec::with_capacity(d);
        let mut grading = Vec::with_capacity(d);
        let mut triples = Vec::new();
        let mut involution = vec![vec![Q::ZERO; d]; d];
        let mut unit = Some(vec![Q::ZERO; d]);
        let mut one_f = Some(vec![Q::ZERO; d]);
        let mut off = 0;
        for (n, p) in parts.iter().enumerate() {
            let pd = p.dim();
            labels.extend(p.labels.iter().map(|l| format!("{}:{l}", n + 1)));
            grading.extend(&p.grading);
            for i in 0..pd {
                for j in 0..pd {
                    for (k, c) in &p.sc[i][j] {
                        triples.push((i + off, j + off, k + off, c.clone()));
                    }
                    involution[i + off][j + off] = p.involution[i][j].clone();
                }
            }
            match (&mut unit, &p.unit) {
                (Some(u), Some(pu)) => u[off..off + pd].clone_from_slice(pu),
                _ => unit = None,
            }
            match (&mut one_f, p.one_f.as_ref().or(p.unit.as_ref())) {
                (Some(u), Some(pu)) => u[off..off + pd].clone_from_slice(pu),
                _ => one_f = None,
            }
            off += pd;
        }
        let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(" + ");
        let mut a = GStarAlgebra::new(first.group.clone(), labels, &triples, grading, involution, unit)?
            .with_name(name);
        a.one_f = one_f;
        Ok(a)
    }

    /// Jacobson radical: kernel of the trace form `tr(L_{xy})`, together with
    /// `tr(L_x) = 0` so that non-unital algebras are handled as ideals of
    /// their unitization.
    pub fn radical(&self) -> Subspace {
        let d = self.dim();
        // t_j = tr(L_{b_j})
        let t: Vec<Q> = (0..d)
            .map(|j| {
                let mut s = Q::ZERO;
                for i in 0..d {
                    for (k, c) in &self.sc[j][i] {
                        if *k == i {
                            s += c;
                        }
                    }
                }
                s
            })
            .collect();
        let mut rows = vec![t.clone()];
        for k in 0..d {
            rows.push(
                (0..d)
                    .map(|j| {
                        let mut s = Q::ZERO;
                        for (m, c) in &self.sc[j][k] {
                            s.add_mul(c, &t[*m]);
                        }
                        s
                    })
                    .collect(),
            );
        }
        Subspace::span(d, &nullspace(&rows, d))
    }

    /// Least `q` with `S^q = 0`.
    pub fn nilpotency_index(&self, s: &Subspace) -> Result<usize> {
        let d = self.dim();
        let mut power = s.clone();
        let mut q = 1;
        while !power.is_zero() {
            if q > d + 1 {
                return Err(Error::NotNilpotent(d + 1));
            }
            let mut prods = Vec::new();
            for x in power.basis() {
                for y in s.basis() {
                    prods.push(self.mul(x, y));
                }
            }
            let next = Subspace::span(d, &prods);
            if next == power {
                return Err(Error::NotNilpotent(q));
            }
            power = next;
            q += 1;
        }
        Ok(q)
    }

    pub fn is_idempotent(&self, e: &[Q]) -> bool {
        e.len() == self.dim() && self.mul(e, e) == e
    }

    pub fn peirce_decompose(&self, one_f: &[Q]) -> Result<PeirceDecomposition> {
        self.check_len(one_f)?;
        if !self.is_idempotent(one_f) {
            return Err(Error::InvalidParameter("designated element is not idempotent".into()));
        }
        let d = self.dim();
        let j = self.radical();
        let jb = j.basis();
        let left: Vec<Vec<Q>> = jb.iter().map(|v| self.mul(one_f, v)).collect();
        let right: Vec<Vec<Q>> = jb.iter().map(|v| self.mul(v, one_f)).collect();
        let part = |a: i64, b: i64| -> Subspace {
            if jb.is_empty() {
                return Subspace::zero(d);
            }
            let (qa, qb) = (Q::from_int(a), Q::from_int(b));
            let mut rows = Vec::with_capacity(2 * d);
            for r in 0..d {
                rows.push((0..jb.len()).map(|c| &left[c][r] - &(&qa * &jb[c][r])).collect());
            }
            for r in 0..d {
                rows.push((0..jb.len()).map(|c| &right[c][r] - &(&qb * &jb[c][r])).collect());
            }
            let vecs: Vec<Vec<Q>> = nullspace(&rows, jb.len())
                .iter()
                .map(|coef| {
                    let mut v = vec![Q::ZERO; d];
                    for (c, b) in coef.iter().zip(jb) {
                        for (x, y) in v.iter_mut().zip(b) {
                            x.add_mul(c, y);
                        }
                    }
                    v
                })
                .collect();
            Subspace::span(d, &vecs)
        };
        let pd = PeirceDecomposition { j00: part(0, 0), j10: part(1, 0), j01: part(0, 1), j11: part(1, 1) };
        let total = pd.j00.dim() + pd.j10.dim() + pd.j01.dim() + pd.j11.dim();
        let sum = pd.j00.sum(&pd.j10).sum(&pd.j01).sum(&pd.j11);
        if total != j.dim() || sum != j {
            return Err(Error::Structural("Peirce components do not span the radical".into()));
        }
        Ok(pd)
    }

    /// The subalgebra spanned by homogeneous `vectors`, with the restricted
    /// grading and involution.
    pub fn subalgebra(&self, vectors: &[Vec<Q>], labels: Vec<String>) -> Result<GStarAlgebra> {
        let d = self.dim();
        let k = vectors.len();
        if labels.len() != k {
            return Err(Error::MalformedInput("one label per spanning vector".into()));
        }
        if Subspace::span(d, vectors).dim() != k {
            return Err(Error::Structural("subalgebra spanning set is dependent".into()));
        }
        let mut grading = Vec::with_capacity(k);
        for v in vectors {
            let degs: Vec<usize> = (0..d).filter(|&i| !v[i].is_zero()).map(|i| self.grading[i]).collect();
            match degs.split_first() {
                Some((g, rest)) if rest.iter().all(|h| h == g) => grading.push(*g),
                Some(_) => return Err(Error::Structural("subalgebra basis vector is not homogeneous".into())),
                None => return Err(Error::Structural("zero vector in subalgebra basis".into())),
            }
        }
        let coords = |x: &[Q]| -> Result<Vec<Q>> {
            solve_in_span(vectors, x).ok_or_else(|| Error::Structural("span is not closed".into()))
        };
        let mut triples = Vec::new();
        for (i, x) in vectors.iter().enumerate() {
            for (j, y) in vectors.iter().enumerate() {
                for (m, c) in coords(&self.mul(x, y))?.into_iter().enumerate() {
                    if !c.is_zero() {
                        triples.push((i, j, m, c));
                    }
                }
            }
        }
        let mut involution = vec![vec![Q::ZERO; k]; k];
        for (j, x) in vectors.iter().enumerate() {
            for (i, c) in coords(&self.inv(x))?.into_iter().enumerate() {
                involution[i][j] = c;
            }
        }
        let unit = match &self.unit {
            Some(u) => solve_in_span(vectors, u),
            None => None,
        };
        let mut sub = GStarAlgebra::new(self.group.clone(), labels, &triples, grading, involution, unit)?;
        if let Some(e) = &self.one_f {
            sub.one_f = solve_in_span(vectors, e);
        }
        Ok(sub)
    }

    /// Human-readable linear combination of basis labels.
    pub fn format_element(&self, x: &[Q]) -> String {
        let terms: Vec<(usize, &Q)> = x.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return "0".into();
        }
        let single = terms.len() == 1;
        let mut s = String::new();
        for (n, (i, c)) in terms.iter().enumerate() {
            let label = &self.labels[*i];
            let compound = label.contains(['+', '-']);
            let (neg, abs) = (c.is_negative(), c.abs());
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            if compound && (!single || !abs.is_one() || neg) {
                s.push_str(&format!("({label})"));
            } else {
                s.push_str(label);
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim();
        let mut sc = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &self.sc[i][j] {
                    sc.push(json!([i, j, k, c.to_string()]));
                }
            }
        }
        let inv: Vec<Vec<String>> =
            self.involution.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        let mut v = json!({
            "name": self.name,
            "group": self.group.to_json(),
            "dim": d,
            "basis": self.labels,
            "sc": sc,
            "grading": self.grading,
            "involution": inv,
        });
        if let Some(u) = &self.unit {
            v["unit"] = json!(u.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        }
        if let Some(e) = &self.one_f {
            v["one_f"] = json!(e.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        }
        v
    }

    /// Reads the JSON algebra format. `group` may be a spec string such as
    /// `"Z2"` or a `{"order", "cayley"}` object; grading entries may be indices
    /// or element names.
    pub fn from_json(v: &Value) -> Result<GStarAlgebra> {
        let bad = |m: &str| Error::MalformedInput(m.to_string());
        let group = match v.get("group") {
            Some(Value::String(s)) => FiniteAbelianGroup::parse_spec(s)?,
            Some(g @ Value::Object(_)) => FiniteAbelianGroup::from_json(g)?,
            None => FiniteAbelianGroup::trivial(),
            _ => return Err(bad("group must be a spec string or an object")),
        };
        let labels: Vec<String> = match v.get("basis") {
            Some(Value::Array(a)) => a.iter().map(|x| x.as_str().map(String::from).ok_or_else(|| bad("basis labels must be strings"))).collect::<Result<_>>()?,
            _ => return Err(bad("missing basis")),
        };
        let d = labels.len();
        if let Some(dim) = v.get("dim") {
            if dim.as_u64() != Some(d as u64) {
                return Err(bad("dim does not match the number of basis labels"));
            }
        }
        let q_of = |x: &Value| -> Result<Q> {
            match x {
                Value::String(s) => s.parse(),
                Value::Number(n) => n.as_i64().map(Q::from_int).ok_or_else(|| bad("non-integer number")),
                _ => Err(bad("expected a rational")),
            }
        };
        let idx_of = |x: &Value| -> Result<usize> {
            x.as_u64().map(|u| u as usize).ok_or_else(|| bad("expected an index"))
        };
        let mut triples = Vec::new();
        for t in v.get("sc").and_then(Value::as_array).ok_or_else(|| bad("missing sc"))? {
            let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(|| bad("sc entries are [i,j,k,c]"))?;
            triples.push((idx_of(&t[0])?, idx_of(&t[1])?, idx_of(&t[2])?, q_of(&t[3])?));
        }
        let grading: Vec<usize> = v
            .get("grading")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing grading"))?
            .iter()
            .map(|g| match g {
                Value::String(s) => group.parse_element(s),
                _ => idx_of(g),
            })
            .collect::<Result<_>>()?;
        let involution: Vec<Vec<Q>> = match v.get("involution") {
            Some(Value::Array(rows)) => rows
                .iter()
                .map(|r| r.as_array().ok_or_else(|| bad("involution rows must be arrays"))?.iter().map(q_of).collect())
                .collect::<Result<_>>()?,
            _ => return Err(bad("missing involution")),
        };
        let vec_of = |key: &str| -> Result<Option<Vec<Q>>> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(Value::Array(a)) => Ok(Some(a.iter().map(q_of).collect::<Result<_>>()?)),
                _ => Err(bad("vector fields must be arrays")),
            }
        };
        let unit = vec_of("unit")?;
        let one_f = vec_of("one_f")?;
        if one_f.as_ref().is_some_and(|e| e.len() != d) {
            return Err(bad("one_f has the wrong length"));
        }
        let mut a = GStarAlgebra::new(group, labels, &triples, grading, involution, unit)?;
        a.one_f = one_f;
        if let Some(Value::String(n)) = v.get("name") {
            a.name = n.clone();
        }
        Ok(a)
    }

    /// Same algebra with the involution replaced; used to build counterexamples.
    pub fn with_involution(&self, involution: Vec<Vec<Q>>) -> Result<GStarAlgebra> {
        let d = self.dim();
        if involution.len() != d || involution.iter().any(|r| r.len() != d) {
            return Err(Error::MalformedInput(format!("involution must be {d}x{d}")));
        }
        let mut a = self.clone();
        a.involution = involution;
        Ok(a)
    }

    /// Same algebra with a replaced grading.
    pub fn with_grading(&self, grading: Vec<usize>) -> Result<GStarAlgebra> {
        if grading.len() != self.dim() || grading.iter().any(|&g| g >= self.group.order()) {
            return Err(Error::MalformedInput("bad grading".into()));
        }
        let mut a = self.clone();
        a.grading = grading;
        Ok(a)
    }
}
