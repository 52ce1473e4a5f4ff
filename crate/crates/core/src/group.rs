//! Finite abelian groups as multiplication tables.
//!
//! Element 0 is always the identity. Groups built from cyclic factors keep
//! the factor orders so that elements can be named: the generators of the
//! factors are `g`, `h`, `k`, `l`, ... and an element is written as a product
//! of generator powers, e.g. `g2h` (identity is `1`). Any element can also be
//! addressed by raw index as `#i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GENERATOR_LETTERS: &[char] = &['g', 'h', 'k', 'l', 'm', 'p', 'r', 's', 'u', 'v'];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Orders of the cyclic factors, most significant first; empty when the
    /// group came from a bare table.
    factors: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    cayley: Vec<Vec<usize>>,
}

impl FiniteAbelianGroup {
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("cyclic group order must be positive".into()));
        }
        let cayley = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        Self::from_parts(cayley, vec![m])
    }

    /// Direct product with lexicographic element indexing.
    pub fn product(groups: &[FiniteAbelianGroup]) -> Result<Self> {
        let Some(first) = groups.first() else {
            return Err(Error::InvalidParameter("direct product of an empty list".into()));
        };
        let mut acc = first.clone();
        for g in &groups[1..] {
            let (a, b) = (acc.order(), g.order());
            let mut cayley = vec![vec![0; a * b]; a * b];
            for i in 0..a * b {
                for j in 0..a * b {
                    let (i1, i2) = (i / b, i % b);
                    let (j1, j2) = (j / b, j % b);
                    cayley[i][j] = acc.mul(i1, j1) * b + g.mul(i2, j2);
                }
            }
            let factors = if acc.factors.is_empty() || g.factors.is_empty() {
                Vec::new()
            } else {
                acc.factors.iter().chain(&g.factors).copied().collect()
            };
            acc = Self::from_parts(cayley, factors)?;
        }
        Ok(acc)
    }

    /// Builds a group from a raw table, checking every group axiom.
    pub fn from_table(cayley: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_parts(cayley, Vec::new())
    }

    fn from_parts(cayley: Vec<Vec<usize>>, factors: Vec<usize>) -> Result<Self> {
        let t = cayley.len();
        if t == 0 || cayley.iter().any(|row| row.len() != t) {
            return Err(Error::MalformedInput("cayley table must be a non-empty square".into()));
        }
        if cayley.iter().flatten().any(|&x| x >= t) {
            return Err(Error::InvalidParameter("cayley table is not closed".into()));
        }
        for a in 0..t {
            if cayley[0][a] != a || cayley[a][0] != a {
                return Err(Error::InvalidParameter("element 0 is not the identity".into()));
            }
            for b in 0..t {
                if cayley[a][b] != cayley[b][a] {
                    return Err(Error::InvalidParameter(format!("not abelian at ({a},{b})")));
                }
                for c in 0..t {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::InvalidParameter(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(t);
        for a in 0..t {
            match (0..t).find(|&b| cayley[a][b] == 0) {
                Some(b) => inverse.push(b),
                None => return Err(Error::InvalidParameter(format!("element {a} has no inverse"))),
            }
        }
        Ok(FiniteAbelianGroup { cayley, inverse, factors })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1")
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Least `k >= 1` with `a^k = 1`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The cyclic subgroup generated by `a`, in power order.
    pub fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    /// Name of an element in the default symbol table.
    pub fn name(&self, a: usize) -> String {
        if a == 0 {
            return "1".into();
        }
        if self.factors.is_empty() || self.factors.len() > GENERATOR_LETTERS.len() {
            return format!("#{a}");
        }
        let mut digits = vec![0; self.factors.len()];
        let mut rest = a;
        for (slot, &f) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = rest % f;
            rest /= f;
        }
        let mut s = String::new();
        for (i, &d) in digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            s.push(GENERATOR_LETTERS[i]);
            if d > 1 {
                s.push_str(&d.to_string());
            }
        }
        s
    }

    fn generator(&self, letter: char) -> Option<usize> {
        let pos = GENERATOR_LETTERS.iter().position(|&c| c == letter)?;
        if pos < self.factors.len() {
            let stride: usize = self.factors[pos + 1..].iter().product();
            if self.factors[pos] == 1 {
                return Some(0);
            }
            return Some(stride);
        }
        // single cyclic factor: `h` is the element of order 2 when the order
        // is even, otherwise g^2
        if letter == 'h' && self.factors.len() == 1 {
            let m = self.factors[0];
            return match m {
                1 => None,
                m if m % 2 == 0 => Some(m / 2),
                _ => Some(2 % m),
            };
        }
        None
    }

    /// Parses an element name: `1`, `#i`, or a product of generator powers.
    pub fn parse_element(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        let unknown = || Error::UnknownElement(name.to_string());
        if name == "1" {
            return Ok(0);
        }
        if let Some(idx) = name.strip_prefix('#') {
            let i: usize = idx.parse().map_err(|_| unknown())?;
            return if i < self.order() { Ok(i) } else { Err(unknown()) };
        }
        let chars: Vec<char> = name.chars().collect();
        if chars.is_empty() {
            return Err(unknown());
        }
        let mut acc = 0;
        let mut i = 0;
        while i < chars.len() {
            let gen = self.generator(chars[i]).ok_or_else(unknown)?;
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let exp = if start == i {
                1
            } else {
                chars[start..i].iter().collect::<String>().parse().map_err(|_| unknown())?
            };
            acc = self.mul(acc, self.pow(gen, exp));
        }
        Ok(acc)
    }

    /// Parses `Z<m>` or `Z<m>xZ<n>x...`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let bad = || Error::MalformedInput(format!("bad group spec {spec:?}; expected e.g. Z2 or Z2xZ3"));
        let mut factors = Vec::new();
        for part in spec.trim().split(['x', 'X', '*']) {
            let m: usize = part.trim().strip_prefix('Z').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            factors.push(Self::cyclic(m)?);
        }
        Self::product(&factors)
    }

    /// Short description, e.g. `Z2xZ2`.
    pub fn spec(&self) -> String {
        if self.factors.is_empty() {
            format!("G{}", self.order())
        } else {
            self.factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GroupJson { order: self.order(), cayley: self.cayley.clone() })
            .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let g: GroupJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::MalformedInput(format!("group json: {e}")))?;
        if g.order != g.cayley.len() {
            return Err(Error::MalformedInput("group order does not match table size".into()));
        }
        Self::from_table(g.cayley)
    }

    /// Elements of prime order, one per subgroup of prime order.
    pub fn prime_order_subgroup_generators(&self) -> Vec<usize> {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for a in 1..self.order() {
            let k = self.element_order(a);
            if !is_prime(k) {
                continue;
            }
            let mut sub = self.cyclic_subgroup(a);
            sub.sort_unstable();
            if !seen.contains(&sub) {
                seen.push(sub);
                out.push(a);
            }
        }
        out
    }
}

pub fn is_prime(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_examples() {
        let z1 = FiniteAbelianGroup::cyclic(1).unwrap();
        assert_eq!(z1.cayley(), &[vec![0]]);
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        assert_eq!(z2.element_order(1), 2);
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        assert_eq!(z4.element_order(0), 1);
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.element_order(2), 2);
        assert!(matches!(FiniteAbelianGroup::cyclic(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn products() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
        assert_eq!(FiniteAbelianGroup::product(&[z2.clone()]).unwrap(), z2);
        let v4 = FiniteAbelianGroup::product(&[z2.clone(), z2.clone()]).unwrap();
        assert_eq!(v4.order(), 4);
        assert!((1..4).all(|a| v4.element_order(a) == 2));
        assert_eq!(v4.element_order(3), 2);
        let z6 = FiniteAbelianGroup::cyclic(6).unwrap();
        let z2z3 = FiniteAbelianGroup::product(&[z2, z3]).unwrap();
        let profile = |g: &FiniteAbelianGroup| {
            let mut v: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(profile(&z2z3), profile(&z6));
        assert!(matches!(FiniteAbelianGroup::product(&[]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn naming_round_trips() {
        for spec in ["Z1", "Z2", "Z3", "Z4", "Z6", "Z2xZ2", "Z2xZ3xZ2"] {
            let g = FiniteAbelianGroup::parse_spec(spec).unwrap();
            assert_eq!(g.spec(), spec);
            for a in g.elements() {
                assert_eq!(g.parse_element(&g.name(a)).unwrap(), a, "{spec} element {a}");
                assert_eq!(g.parse_element(&format!("#{a}")).unwrap(), a);
            }
        }
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        assert_eq!(z4.parse_element("h").unwrap(), 2);
        assert_eq!(z4.parse_element("g3").unwrap(), 3);
        let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
        assert_eq!(z3.parse_element("h").unwrap(), 2);
        assert!(z3.parse_element("q").is_err());
        assert!(z3.parse_element("#7").is_err());
    }

    #[test]
    fn table_validation() {
        assert!(FiniteAbelianGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteAbelianGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
        let back = FiniteAbelianGroup::from_json(&z3.to_json()).unwrap();
        assert_eq!(back.cayley(), z3.cayley());
    }

    #[test]
    fn abelian_and_lagrange_exhaustive() {
        for spec in ["Z5", "Z6", "Z2xZ4", "Z3xZ3"] {
            let g = FiniteAbelianGroup::parse_spec(spec).unwrap();
            for a in g.elements() {
                assert_eq!(g.order() % g.element_order(a), 0);
                for b in g.elements() {
                    assert_eq!(g.mul(a, b), g.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn prime_subgroups() {
        let z6 = FiniteAbelianGroup::cyclic(6).unwrap();
        let gens = z6.prime_order_subgroup_generators();
        assert_eq!(gens.len(), 2);
        let v4 = FiniteAbelianGroup::parse_spec("Z2xZ2").unwrap();
        assert_eq!(v4.prime_order_subgroup_generators().len(), 3);
    }
}
