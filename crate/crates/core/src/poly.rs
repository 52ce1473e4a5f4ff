//! Noncommutative polynomials in graded symmetric (`y`) and skew (`z`)
//! variables.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::GStarAlgebra;
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Y,
    Z,
}

impl VarKind {
    pub fn letter(self) -> char {
        match self {
            VarKind::Y => 'y',
            VarKind::Z => 'z',
        }
    }
}

/// `y<index>_<degree>` or `z<index>_<degree>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub kind: VarKind,
    pub index: usize,
    pub degree: usize,
}

impl Variable {
    pub fn new(kind: VarKind, index: usize, degree: usize) -> Self {
        Variable { kind, index, degree }
    }

    pub fn y(index: usize, degree: usize) -> Self {
        Variable::new(VarKind::Y, index, degree)
    }

    pub fn z(index: usize, degree: usize) -> Self {
        Variable::new(VarKind::Z, index, degree)
    }

    pub fn display(&self, g: &FiniteAbelianGroup) -> String {
        format!("{}{}_{}", self.kind.letter(), self.index, g.name(self.degree))
    }

    /// Engine slot: `2 * degree` for `y`, `2 * degree + 1` for `z`.
    pub fn slot(&self) -> usize {
        2 * self.degree + usize::from(self.kind == VarKind::Z)
    }
}

/// A word in the variables. Ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<Variable>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Multiset of variables, as a sorted list.
    pub fn content(&self) -> Vec<Variable> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    pub fn skew_count(&self) -> usize {
        self.0.iter().filter(|v| v.kind == VarKind::Z).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Q) -> Self {
        Polynomial::term(Monomial::default(), c)
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Variable) -> Self {
        Polynomial::term(Monomial(vec![v]), Q::ONE)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Q::ONE))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.0.clone();
                w.extend_from_slice(&b.0);
                out.add_term(Monomial(w), x * y);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Polynomial) -> Polynomial {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(Q::ONE);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Total degree; `None` for the zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).collect()
    }

    pub fn is_multilinear(&self) -> bool {
        let Some(d) = self.homogeneous_degree() else { return self.is_zero() };
        let vars = self.variables();
        vars.len() == d && self.terms.keys().all(|m| m.content().into_iter().collect::<BTreeSet<_>>().len() == d)
    }

    /// Components with a fixed multiset of variables.
    pub fn multihomogeneous_components(&self) -> Vec<Polynomial> {
        let mut parts: BTreeMap<Vec<Variable>, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.content()).or_default().add_term(m.clone(), c.clone());
        }
        parts.into_values().collect()
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.multihomogeneous_components().len() <= 1
    }

    /// Image under the induced involution: words reversed, sign `(-1)^{#z}`.
    pub fn star(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut w = m.0.clone();
            w.reverse();
            let s = if m.skew_count() % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(Monomial(w), s);
        }
        out
    }

    /// Full linearization of a multihomogeneous polynomial. Repeated
    /// variables get fresh indices of the same kind and degree, and every
    /// monomial is spread over all assignments of the copies.
    pub fn multilinearize(&self) -> Result<Polynomial> {
        if !self.is_multihomogeneous() {
            return Err(Error::MustBeHomogeneous("multilinearization needs a multihomogeneous input".into()));
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        let content = self.terms.keys().next().unwrap().content();
        let mut counts: BTreeMap<Variable, usize> = BTreeMap::new();
        for v in &content {
            *counts.entry(*v).or_default() += 1;
        }
        if counts.values().all(|&k| k == 1) {
            return Ok(self.clone());
        }
        let mut next_index: BTreeMap<(VarKind, usize), usize> = BTreeMap::new();
        for v in counts.keys() {
            let e = next_index.entry((v.kind, v.degree)).or_insert(0);
            *e = (*e).max(v.index);
        }
        // copies[v] = the fresh variables standing in for v
        let mut copies: BTreeMap<Variable, Vec<Variable>> = BTreeMap::new();
        for (v, &k) in &counts {
            let mut list = vec![*v];
            for _ in 1..k {
                let e = next_index.get_mut(&(v.kind, v.degree)).unwrap();
                *e += 1;
                list.push(Variable::new(v.kind, *e, v.degree));
            }
            copies.insert(*v, list);
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut partial: Vec<Vec<Variable>> = vec![Vec::new()];
            let mut used: Vec<BTreeMap<Variable, Vec<bool>>> = vec![BTreeMap::new()];
            for v in &m.0 {
                let list = &copies[v];
                let mut np = Vec::new();
                let mut nu = Vec::new();
                for (w, u) in partial.iter().zip(&used) {
                    for (i, cv) in list.iter().enumerate() {
                        let flags = u.get(v).cloned().unwrap_or_else(|| vec![false; list.len()]);
                        if flags[i] {
                            continue;
                        }
                        let mut f2 = flags.clone();
                        f2[i] = true;
                        let mut u2 = u.clone();
                        u2.insert(*v, f2);
                        let mut w2 = w.clone();
                        w2.push(*cv);
                        np.push(w2);
                        nu.push(u2);
                    }
                }
                partial = np;
                used = nu;
            }
            for w in partial {
                out.add_term(Monomial(w), c.clone());
            }
        }
        Ok(out)
    }

    /// Replaces each variable by a polynomial; unmapped variables stay.
    /// Images must be homogeneous of the variable's degree, symmetric for
    /// `y` and skew for `z`.
    pub fn substitute(&self, map: &BTreeMap<Variable, Polynomial>, g: &FiniteAbelianGroup) -> Result<Polynomial> {
        for (v, f) in map {
            for (m, _) in f.terms() {
                let d = m.0.iter().fold(g.identity(), |acc, w| g.mul(acc, w.degree));
                if d != v.degree {
                    return Err(Error::IllegalSubstitution(format!(
                        "image of {} is not of degree {}",
                        v.display(g),
                        g.name(v.degree)
                    )));
                }
            }
            let expected = if v.kind == VarKind::Y { f.clone() } else { f.scale(&-Q::ONE) };
            if f.star() != expected {
                return Err(Error::IllegalSubstitution(format!(
                    "image of {} must be {}",
                    v.display(g),
                    if v.kind == VarKind::Y { "symmetric" } else { "skew" }
                )));
            }
        }
        Ok(self.substitute_unchecked(map))
    }

    pub(crate) fn substitute_unchecked(&self, map: &BTreeMap<Variable, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for v in &m.0 {
                let f = map.get(v).cloned().unwrap_or_else(|| Polynomial::var(*v));
                acc = acc.mul(&f);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Evaluates on an algebra with the given element for each variable.
    /// Elements must be homogeneous of the right degree and symmetry.
    pub fn evaluate(&self, a: &GStarAlgebra, values: &BTreeMap<Variable, Vec<Q>>) -> Result<Vec<Q>> {
        for (v, x) in values {
            if x.len() != a.dim() {
                return Err(Error::IllegalSubstitution(format!("wrong length for {v:?}")));
            }
            let sign = if v.kind == VarKind::Y { Q::ONE } else { -Q::ONE };
            let xs = a.inv(x);
            let ok_sym = xs.iter().zip(x).all(|(p, q)| *p == q * &sign);
            let ok_deg = x.iter().enumerate().all(|(i, c)| c.is_zero() || a.grading()[i] == v.degree);
            if !ok_sym || !ok_deg {
                return Err(Error::IllegalSubstitution(format!(
                    "value for {} is not in the required component",
                    v.display(a.group())
                )));
            }
        }
        self.eval_raw(a, values)
    }

    pub(crate) fn eval_raw(&self, a: &GStarAlgebra, values: &BTreeMap<Variable, Vec<Q>>) -> Result<Vec<Q>> {
        let mut out = vec![Q::ZERO; a.dim()];
        for (m, c) in &self.terms {
            let mut acc: Option<Vec<Q>> = None;
            for v in &m.0 {
                let x = values
                    .get(v)
                    .ok_or_else(|| Error::IllegalSubstitution(format!("no value for {}", v.display(a.group()))))?;
                acc = Some(match acc {
                    None => x.clone(),
                    Some(p) => a.mul(&p, x),
                });
            }
            let acc = match acc {
                Some(p) => p,
                None => a.unit().map(<[Q]>::to_vec).ok_or_else(|| {
                    Error::IllegalSubstitution("constant term needs a unit".into())
                })?,
            };
            for (o, x) in out.iter_mut().zip(&acc) {
                o.add_mul(c, x);
            }
        }
        Ok(out)
    }

    pub fn display(&self, g: &FiniteAbelianGroup) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let word: Vec<String> = m.0.iter().map(|v| v.display(g)).collect();
            if word.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&format!("{a} "));
                }
                s.push_str(&word.join(" "));
            }
        }
        s
    }

    pub fn parse(text: &str, g: &FiniteAbelianGroup) -> Result<Polynomial> {
        let mut p = Parser { s: text.as_bytes(), pos: 0, g };
        let out = p.expr()?;
        p.ws();
        if p.pos < p.s.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&FiniteAbelianGroup::trivial()))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    g: &'a FiniteAbelianGroup,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(c: u8) -> bool {
        c.is_ascii_digit() || matches!(c, b'x' | b'y' | b'z' | b'(' | b'[')
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut sign = Q::ONE;
        while let Some(c @ (b'-' | b'+')) = self.peek() {
            self.pos += 1;
            if c == b'-' {
                sign = -sign;
            }
        }
        let mut acc = self.factor()?.scale(&sign);
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if Self::starts_factor(c) => acc = acc.mul(&self.factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let k = self.number()?;
            let k = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ','"));
                }
                self.pos += 1;
                let b = self.expr()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(a.commutator(&b))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut q = Q::from_int(i64::try_from(n).map_err(|_| self.err("number too large"))?);
                if self.s.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    q = q * Q::from_int(i64::try_from(d).map_err(|_| self.err("number too large"))?).recip();
                }
                Ok(Polynomial::constant(q))
            }
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                let index = self.number()? as usize;
                if index == 0 {
                    return Err(self.err("variable indices start at 1"));
                }
                if self.s.get(self.pos) != Some(&b'_') {
                    return Err(self.err("expected '_' and a group element"));
                }
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.s.len() {
                    let ch = self.s[self.pos] as char;
                    if ch.is_ascii_digit() || ch == '#' || (ch.is_ascii_lowercase() && !matches!(ch, 'x' | 'y' | 'z')) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let degree = self.g.parse_element(name).map_err(|_| self.err("unknown group element"))?;
                Ok(match c {
                    b'y' => Polynomial::var(Variable::y(index, degree)),
                    b'z' => Polynomial::var(Variable::z(index, degree)),
                    _ => Polynomial::var(Variable::y(index, degree)).add(&Polynomial::var(Variable::z(index, degree))),
                })
            }
            _ => Err(self.err("expected a variable, scalar or bracket")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let g = z2();
        let p = Polynomial::parse("[y1_1, y2_1]", &g).unwrap();
        assert_eq!(p.display(&g), "y1_1 y2_1 - y2_1 y1_1");
        let q = Polynomial::parse(&p.display(&g), &g).unwrap();
        assert_eq!(p, q);
        let r = Polynomial::parse("1/2 z1_g*y2_1 + 3 (y1_1)^2", &g).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(Polynomial::parse("y1_1y2_g", &g).unwrap().homogeneous_degree(), Some(2));
    }

    #[test]
    fn x_expands() {
        let g = z2();
        let p = Polynomial::parse("x1_g", &g).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let g = z2();
        assert!(matches!(Polynomial::parse("y1_1 +", &g), Err(Error::Syntax { .. })));
        assert!(matches!(Polynomial::parse("y1_q", &g), Err(Error::Syntax { .. })));
        assert!(matches!(Polynomial::parse("[y1_1 y2_1]", &g), Err(Error::Syntax { pos: 10, .. })));
    }

    #[test]
    fn star_of_commutator() {
        let g = z2();
        let p = Polynomial::parse("[z1_1, z2_1]", &g).unwrap();
        // (z1 z2)^* = z2 z1
        assert_eq!(p.star(), p.scale(&-Q::ONE));
    }

    #[test]
    fn linearize_square() {
        let g = z2();
        let p = Polynomial::parse("y1_1^2", &g).unwrap();
        let l = p.multilinearize().unwrap();
        assert_eq!(l, Polynomial::parse("y1_1 y2_1 + y2_1 y1_1", &g).unwrap());
        assert!(l.is_multilinear());
        let mixed = Polynomial::parse("y1_1 + y1_1^2", &g).unwrap();
        assert!(matches!(mixed.multilinearize(), Err(Error::MustBeHomogeneous(_))));
    }
}
