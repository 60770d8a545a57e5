//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{rat, rat_display, rat_from_str, rat_to_wire, ExtNat, Rational};

/// Exponent vector. Ordered graded reverse-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

pub type Vars = Arc<[String]>;

pub fn vars_of<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// A polynomial over an explicit, ordered variable list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

impl Poly {
    pub fn zero(vars: Vars) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Poly { vars, terms }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(n, i), Rational::one());
        Poly { vars, terms }
    }

    pub fn monomial(vars: Vars, exps: Vec<u32>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        Poly { vars, terms }
    }

    /// Builds from `(coefficient, exponents)` pairs, summing duplicates.
    pub fn from_terms<I>(vars: Vars, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (c, e) in it {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch { expected: vars.len(), found: e.len() });
            }
            *terms.entry(Monomial(e)).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly { vars, terms })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded reverse-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.nvars())))
        } else {
            None
        }
    }

    pub fn same_ring(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.vars.to_vec(), other.vars.to_vec()))
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Lowest total degree of a term: the order at the origin.
    pub fn lowest_degree(&self) -> ExtNat {
        self.terms.keys().map(|m| m.degree()).min().map_or(ExtNat::Infinity, ExtNat::Fin)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Leading coefficient scaled to one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        for c in self.terms.values() {
            let v = (c * Rational::from_integer(den.clone())).to_integer();
            num = num.gcd(&v);
        }
        let mut s = Rational::new(den, num);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn ring_op(&self, other: &Poly, op: RingOp) -> Result<Poly> {
        match op {
            RingOp::Pow(k) => Ok(self.pow(k)),
            _ => {
                self.check_ring(other)?;
                Ok(match op {
                    RingOp::Add => self.add_ref(other),
                    RingOp::Sub => self.sub_ref(other),
                    RingOp::Mul => self.mul_ref(other),
                    RingOp::Pow(_) => unreachable!(),
                })
            }
        }
    }

    fn add_ref(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Poly { vars: self.vars.clone(), terms }
    }

    fn sub_ref(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e -= c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Poly { vars: self.vars.clone(), terms }
    }

    fn mul_ref(&self, other: &Poly) -> Poly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Iterated formal partial derivative.
    pub fn derivative(&self, var: usize, order: u32) -> Result<Poly> {
        if var >= self.nvars() {
            return Err(Error::InvalidArgument(format!(
                "variable index {var} out of range for {} variables",
                self.nvars()
            )));
        }
        Ok(self.d(var, order))
    }

    pub(crate) fn d(&self, var: usize, order: u32) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e < order {
                continue;
            }
            let mut f = BigInt::one();
            for j in 0..order {
                f *= BigInt::from(e - j);
            }
            let mut m2 = m.clone();
            m2.0[var] -= order;
            terms.insert(m2, c * Rational::from_integer(f));
        }
        Poly { vars: self.vars.clone(), terms }
    }

    /// Directional derivative along an integer vector.
    pub fn directional(&self, v: &[i64]) -> Poly {
        let mut acc = Poly::zero(self.vars.clone());
        for (i, &vi) in v.iter().enumerate() {
            if vi != 0 {
                acc = acc.add_ref(&self.d(i, 1).scale(&rat(vi)));
            }
        }
        acc
    }

    pub fn directional_pow(&self, v: &[i64], k: u32) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = p.directional(v);
        }
        p
    }

    /// Substitutes `images[i]` for variable `i`; all images share one target ring.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars(), "compose: arity");
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => {
                return self.clone();
            }
        };
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target.clone()), p.clone()]).collect();
        let mut acc = Poly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_ref(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_ref(&powers[i][e as usize]);
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    pub fn eval(&self, a: &[Rational]) -> Result<Rational> {
        if a.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: a.len() });
        }
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in a.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            s += t;
        }
        Ok(s)
    }

    /// `q(x) = p(x + a)`.
    pub fn taylor_shift(&self, a: &[Rational]) -> Result<Poly> {
        if a.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: a.len() });
        }
        let images: Vec<Poly> = (0..self.nvars())
            .map(|i| Poly::var(self.vars.clone(), i).add_ref(&Poly::constant(self.vars.clone(), a[i].clone())))
            .collect();
        Ok(self.compose(&images))
    }

    pub fn order_at_point(&self, a: &[Rational]) -> Result<ExtNat> {
        Ok(self.taylor_shift(a)?.lowest_degree())
    }

    /// `p(U x)` for an invertible square matrix `U`.
    pub fn linear_change(&self, u: &[Vec<Rational>]) -> Result<Poly> {
        let n = self.nvars();
        if u.len() != n || u.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: u.len() });
        }
        if determinant(u).is_zero() {
            return Err(Error::InvalidArgument("singular linear change".into()));
        }
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                let mut p = Poly::zero(self.vars.clone());
                for (j, c) in u[i].iter().enumerate() {
                    if !c.is_zero() {
                        p = p.add_ref(&Poly::var(self.vars.clone(), j).scale(c));
                    }
                }
                p
            })
            .collect();
        Ok(self.compose(&images))
    }

    /// Exact division by a single polynomial; `None` when there is a remainder.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (ld, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !ld.divides(&m) {
                return None;
            }
            let qm = ld.quotient(&m);
            let qc = c / &lc;
            quot.terms.insert(qm.clone(), qc.clone());
            rem = rem.sub_ref(&d.mul_monomial(&qm, &qc));
        }
        Some(quot)
    }

    /// Largest `k` with `d^k | self`, and the cofactor. `self` must be nonzero and `d` nonconstant.
    pub fn divisibility_order(&self, d: &Poly) -> (u32, Poly) {
        let mut k = 0;
        let mut cur = self.clone();
        if self.is_zero() || d.is_constant() {
            return (0, cur);
        }
        while let Some(q) = cur.divide_exact(d) {
            k += 1;
            cur = q;
        }
        (k, cur)
    }

    /// Decomposes `self = c * x_i + r` with `c` a nonzero constant and `r` free of `x_i`.
    pub fn solve_linear(&self, i: usize) -> Option<(Rational, Poly)> {
        let mut c = None;
        let mut rest = BTreeMap::new();
        for (m, a) in &self.terms {
            match m.0[i] {
                0 => {
                    rest.insert(m.clone(), a.clone());
                }
                1 if m.degree() == 1 => c = Some(a.clone()),
                _ => return None,
            }
        }
        c.map(|c| (c, Poly { vars: self.vars.clone(), terms: rest }))
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Same polynomial over a renamed variable list of equal length.
    pub fn with_vars(&self, vars: Vars) -> Poly {
        assert_eq!(vars.len(), self.nvars());
        Poly { vars, terms: self.terms.clone() }
    }

    /// Embeds into a ring with extra trailing variables.
    pub fn extend(&self, vars: Vars) -> Poly {
        let extra = vars.len() - self.nvars();
        Poly {
            vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat_n(0, extra));
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing variables that do not occur.
    pub fn truncate(&self, vars: Vars) -> Option<Poly> {
        let n = vars.len();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[n..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.insert(Monomial(m.0[..n].to_vec()), c.clone());
        }
        Some(Poly { vars, terms })
    }

    pub fn to_wire(&self) -> PolyWire {
        PolyWire {
            vars: self.vars.to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermWire { coef: rat_to_wire(c), exps: m.0.clone() })
                .collect(),
        }
    }

    pub fn from_wire(w: &PolyWire) -> Result<Poly> {
        let vars = vars_of(&w.vars);
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = BTreeMap::new();
        for t in &w.terms {
            if t.exps.len() != vars.len() {
                return Err(Error::Parse(format!("exponent tuple {:?} has wrong length", t.exps)));
            }
            let c = rat_from_str(&t.coef)?;
            if c.is_zero() {
                return Err(Error::Parse("zero coefficient".into()));
            }
            if !seen.insert(t.exps.clone()) {
                return Err(Error::Parse(format!("duplicate exponent tuple {:?}", t.exps)));
            }
            terms.insert(Monomial(t.exps.clone()), c);
        }
        Ok(Poly { vars, terms })
    }
}

// Row reduction reads more clearly with explicit indices.
#[allow(clippy::needless_range_loop)]
pub fn determinant(u: &[Vec<Rational>]) -> Rational {
    let n = u.len();
    let mut a: Vec<Vec<Rational>> = u.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, `None` if singular.
#[allow(clippy::needless_range_loop)]
pub fn invert(u: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = u.len();
    let mut a: Vec<Vec<Rational>> = u
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert!(self.same_ring(rhs));
        self.add_ref(rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        debug_assert!(self.same_ring(rhs));
        self.sub_ref(rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert!(self.same_ring(rhs));
        self.mul_ref(rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", rat_display(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_display(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermWire {
    pub coef: String,
    pub exps: Vec<u32>,
}

/// JSON form: `{"vars": [...], "terms": [{"coef": "n/d", "exps": [...]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyWire {
    pub vars: Vec<String>,
    pub terms: Vec<TermWire>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        Poly::from_wire(&w).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn ring_identities() {
        let a = p("x+y");
        let b = p("x-y");
        assert_eq!(a.ring_op(&b, RingOp::Mul).unwrap(), p("x^2-y^2"));
        let z = Poly::zero(a.vars().clone());
        assert_eq!(a.ring_op(&z, RingOp::Add).unwrap(), a);
        let c = p("y^2-x^3");
        assert_eq!(c.ring_op(&p("1"), RingOp::Mul).unwrap(), c);
        let other = parse_poly("x", &["x", "z"]).unwrap();
        assert!(a.ring_op(&other, RingOp::Add).is_err());
        assert_eq!(a.ring_op(&z, RingOp::Pow(2)).unwrap(), p("x^2+2*x*y+y^2"));
    }

    #[test]
    fn derivatives() {
        let c = p("y^2-x^3");
        assert_eq!(c.derivative(1, 1).unwrap(), p("2*y"));
        assert_eq!(c.derivative(1, 2).unwrap(), p("2"));
        assert_eq!(c.derivative(0, 1).unwrap(), p("-3*x^2"));
        assert!(c.derivative(2, 1).is_err());
    }

    #[test]
    fn shifts() {
        let x2 = parse_poly("x^2", &["x"]).unwrap();
        assert_eq!(x2.taylor_shift(&[rat(1)]).unwrap(), parse_poly("x^2+2*x+1", &["x"]).unwrap());
        let c = p("y^2-x^3");
        assert_eq!(c.taylor_shift(&[rat(0), rat(0)]).unwrap(), c);
        assert_eq!(c.taylor_shift(&[rat(1), rat(1)]).unwrap(), p("y^2+2*y-x^3-3*x^2-3*x"));
        assert!(c.taylor_shift(&[rat(1)]).is_err());
    }

    #[test]
    fn orders() {
        let c = p("y^2-x^3");
        assert_eq!(c.order_at_point(&[rat(0), rat(0)]).unwrap(), ExtNat::Fin(2));
        assert_eq!(c.order_at_point(&[rat(2), rat(1)]).unwrap(), ExtNat::Fin(0));
        assert_eq!(c.order_at_point(&[rat(1), rat(1)]).unwrap(), ExtNat::Fin(1));
        assert_eq!(p("0").order_at_point(&[rat(1), rat(1)]).unwrap(), ExtNat::Infinity);
    }

    #[test]
    fn linear_changes() {
        let id = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        let swap = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        let shear = vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        let q = p("x^2-y^2");
        assert_eq!(q.linear_change(&id).unwrap(), q);
        assert_eq!(q.linear_change(&swap).unwrap(), p("y^2-x^2"));
        assert_eq!(p("x*y").linear_change(&shear).unwrap(), p("x*y+x^2"));
        let sing = vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]];
        assert!(q.linear_change(&sing).is_err());
    }

    #[test]
    fn exact_division() {
        let f = p("x^2*y^2-x^3");
        let (k, q) = f.divisibility_order(&p("x"));
        assert_eq!(k, 2);
        assert_eq!(q, p("y^2-x"));
        assert!(p("x+1").divide_exact(&p("x")).is_none());
    }

    #[test]
    fn wire_rejects_bad_input() {
        let ok = r#"{"vars":["x","y"],"terms":[{"coef":"-1/1","exps":[3,0]},{"coef":"1","exps":[0,2]}]}"#;
        let q: Poly = serde_json::from_str(ok).unwrap();
        assert_eq!(q, p("y^2-x^3"));
        let dup = r#"{"vars":["x"],"terms":[{"coef":"1","exps":[1]},{"coef":"2","exps":[1]}]}"#;
        assert!(serde_json::from_str::<Poly>(dup).is_err());
        let zero = r#"{"vars":["x"],"terms":[{"coef":"0/1","exps":[1]}]}"#;
        assert!(serde_json::from_str::<Poly>(zero).is_err());
    }

    #[test]
    fn grevlex_canonical_order() {
        let q = p("x^2 + x*y + y^2 + x + y + 1");
        let order: Vec<Vec<u32>> = q.terms().rev().map(|(m, _)| m.0.clone()).collect();
        assert_eq!(order, vec![vec![2, 0], vec![1, 1], vec![0, 2], vec![1, 0], vec![0, 1], vec![0, 0]]);
    }
}
