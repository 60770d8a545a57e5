//! Ideals, reduced bases, and the ideal-theoretic order computations built on them.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, leading_monomial, reduce, s_polynomial, Budget, MonomialOrder, SPoly};
use crate::poly::{Monomial, Poly, Vars};
use crate::rational::{ExtNat, Rational};

/// A finitely generated ideal; the zero ideal is `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    vars: Vars,
    gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(gens: Vec<Poly>) -> Result<Ideal> {
        let first = gens.first().ok_or_else(|| Error::InvalidArgument("an ideal needs a generator".into()))?;
        let vars = first.vars().clone();
        for g in &gens {
            if !g.same_ring(first) {
                return Err(Error::VariableMismatch(vars.to_vec(), g.vars().to_vec()));
            }
        }
        Ok(Ideal { vars, gens })
    }

    pub fn zero(vars: Vars) -> Ideal {
        Ideal { gens: vec![Poly::zero(vars.clone())], vars }
    }

    pub fn unit(vars: Vars) -> Ideal {
        Ideal { gens: vec![Poly::one(vars.clone())], vars }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Generators with zeros removed.
    pub fn nonzero_gens(&self) -> Vec<Poly> {
        self.gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(g)
    }

    pub fn with(&self, more: &[Poly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(more.iter().cloned());
        Ideal { vars: self.vars.clone(), gens: g }
    }
}

/// A reduced basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub basis: Vec<Poly>,
    pub order: MonomialOrder,
    pub reduced: bool,
    vars: Vars,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|g| leading_monomial(g, self.order)).collect()
    }

    /// Reduces every S-polynomial of basis elements; true when all vanish.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let sp: Vec<SPoly> = self.basis.iter().map(|g| SPoly::from_poly(g, self.order)).collect();
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_polynomial(&self.basis[i], &self.basis[j], self.order);
                let r = reduce(&SPoly::from_poly(&s, self.order), &sp, self.order);
                if !r.terms.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the reducedness invariants: monic, minimal, fully tail-reduced.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        for (i, g) in self.basis.iter().enumerate() {
            let lm = &lms[i];
            if !g.coeff(lm).is_one() {
                return false;
            }
            for (j, other) in lms.iter().enumerate() {
                if i == j {
                    continue;
                }
                if g.terms().any(|(m, _)| other.divides(m)) {
                    return false;
                }
            }
        }
        true
    }

    /// Human-readable dump of the basis and the standard-monomial staircase corners.
    pub fn diagnostic(&self) -> String {
        let mut s = format!("order: {:?}\nbasis:\n", self.order);
        for g in &self.basis {
            s.push_str(&format!("  {g}\n"));
        }
        s.push_str("staircase corners:\n");
        for m in self.leading_monomials() {
            s.push_str(&format!("  {:?}\n", m.0));
        }
        s
    }
}

pub fn groebner(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    groebner_with(ideal, order, &Budget::default())
}

pub fn groebner_with(ideal: &Ideal, order: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let gens: Vec<SPoly> = ideal.gens.iter().filter(|g| !g.is_zero()).map(|g| SPoly::from_poly(g, order)).collect();
    let basis = buchberger(&gens, order, budget)?;
    Ok(GroebnerBasis {
        basis: basis.iter().map(|b| b.to_poly(&ideal.vars)).collect(),
        order,
        reduced: true,
        vars: ideal.vars.clone(),
    })
}

pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Result<Poly> {
    if p.vars() != gb.vars() {
        return Err(Error::VariableMismatch(p.vars().to_vec(), gb.vars().to_vec()));
    }
    let sp: Vec<SPoly> = gb.basis.iter().map(|g| SPoly::from_poly(g, gb.order)).collect();
    Ok(reduce(&SPoly::from_poly(p, gb.order), &sp, gb.order).to_poly(gb.vars()))
}

pub fn contains(ideal: &Ideal, p: &Poly) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let gb = groebner(ideal, MonomialOrder::DegRevLex)?;
    Ok(normal_form(p, &gb)?.is_zero())
}

/// True iff 1 lies in the ideal, i.e. its variety over the algebraic closure is empty.
pub fn is_unit_ideal(ideal: &Ideal) -> Result<bool> {
    if ideal.gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok(true);
    }
    Ok(groebner(ideal, MonomialOrder::DegRevLex)?.is_unit())
}

fn fresh_names(vars: &Vars, k: usize) -> Vars {
    let mut v: Vec<String> = vars.to_vec();
    for i in 0..k {
        let mut name = format!("_t{i}");
        while v.contains(&name) {
            name.push('_');
        }
        v.push(name);
    }
    v.into()
}

/// Whether `V(eqs) \ V(prod units)` is nonempty over the algebraic closure.
pub fn locus_nonempty(vars: &Vars, eqs: &[Poly], units: &[Poly]) -> Result<bool> {
    let eqs: Vec<&Poly> = eqs.iter().filter(|p| !p.is_zero()).collect();
    if eqs.iter().any(|p| p.is_constant()) {
        return Ok(false);
    }
    let units: Vec<&Poly> = units.iter().filter(|u| !u.is_constant()).collect();
    if units.is_empty() {
        if eqs.is_empty() {
            return Ok(true);
        }
        return Ok(!is_unit_ideal(&Ideal::new(eqs.into_iter().cloned().collect())?)?);
    }
    let ext = fresh_names(vars, 1);
    let t = Poly::var(ext.clone(), vars.len());
    let mut prod = Poly::one(ext.clone());
    for u in &units {
        prod = &prod * &u.extend(ext.clone());
    }
    let mut gens: Vec<Poly> = eqs.iter().map(|p| p.extend(ext.clone())).collect();
    gens.push(&Poly::one(ext.clone()) - &(&t * &prod));
    Ok(!is_unit_ideal(&Ideal::new(gens)?)?)
}

/// Whether `f` vanishes on every point of `V(eqs) \ V(prod units)`.
pub fn vanishes_on(vars: &Vars, eqs: &[Poly], units: &[Poly], f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let mut u = units.to_vec();
    u.push(f.clone());
    Ok(!locus_nonempty(vars, eqs, &u)?)
}

/// Elimination ideal of `I ⊂ K[x, tail]` in `K[x]`.
pub fn eliminate_tail(gens: &[Poly], keep: &Vars) -> Result<Vec<Poly>> {
    let full = gens[0].vars().clone();
    let tail = full.len() - keep.len();
    let gb = groebner(&Ideal::new(gens.to_vec())?, MonomialOrder::Elim { tail })?;
    let out: Vec<Poly> = gb.basis.iter().filter_map(|g| g.truncate(keep.clone())).collect();
    if out.is_empty() {
        return Ok(vec![Poly::zero(keep.clone())]);
    }
    Ok(out)
}

/// `I : f^∞`.
pub fn saturate(ideal: &Ideal, f: &Poly) -> Result<Ideal> {
    if f.is_constant() {
        return Ok(ideal.clone());
    }
    let vars = ideal.vars.clone();
    let ext = fresh_names(&vars, 1);
    let t = Poly::var(ext.clone(), vars.len());
    let mut gens: Vec<Poly> = ideal.nonzero_gens().iter().map(|g| g.extend(ext.clone())).collect();
    if gens.is_empty() {
        return Ok(ideal.clone());
    }
    gens.push(&Poly::one(ext.clone()) - &(&t * &f.extend(ext.clone())));
    Ideal::new(eliminate_tail(&gens, &vars)?)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(a.vars.clone()));
    }
    let vars = a.vars.clone();
    let ext = fresh_names(&vars, 1);
    let t = Poly::var(ext.clone(), vars.len());
    let one_t = &Poly::one(ext.clone()) - &t;
    let mut gens: Vec<Poly> = a.nonzero_gens().iter().map(|g| &t * &g.extend(ext.clone())).collect();
    gens.extend(b.nonzero_gens().iter().map(|g| &one_t * &g.extend(ext.clone())));
    Ideal::new(eliminate_tail(&gens, &vars)?)
}

/// `I : (f)`.
pub fn quotient(ideal: &Ideal, f: &Poly) -> Result<Ideal> {
    if f.is_zero() {
        return Ok(Ideal::unit(ideal.vars.clone()));
    }
    let inter = intersect(ideal, &Ideal::new(vec![f.clone()])?)?;
    let gens: Vec<Poly> = inter
        .gens
        .iter()
        .map(|g| g.divide_exact(f).ok_or_else(|| Error::Inconsistent("intersection element not divisible".into())))
        .collect::<Result<_>>()?;
    Ideal::new(gens)
}

/// Greatest common divisor, normalized to a primitive integer polynomial.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Ok(g.primitive());
    }
    if g.is_zero() {
        return Ok(f.primitive());
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Poly::one(f.vars().clone()));
    }
    let inter = intersect(&Ideal::new(vec![f.clone()])?, &Ideal::new(vec![g.clone()])?)?;
    let lcm = inter
        .nonzero_gens()
        .into_iter()
        .min_by_key(|p| p.total_degree())
        .ok_or_else(|| Error::Inconsistent("empty lcm".into()))?;
    let prod = f * g;
    let q = prod.divide_exact(&lcm).ok_or_else(|| Error::Inconsistent("lcm does not divide product".into()))?;
    Ok(q.primitive())
}

/// Square-free part `f / gcd(f, ∂f/∂x_1, …, ∂f/∂x_n)`.
pub fn squarefree(f: &Poly) -> Result<Poly> {
    if f.is_constant() {
        return Ok(f.clone());
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        let d = f.d(i, 1);
        if d.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &d)?;
        if g.is_constant() {
            return Ok(f.primitive());
        }
    }
    Ok(f.divide_exact(&g).ok_or_else(|| Error::Inconsistent("gcd does not divide".into()))?.primitive())
}

/// Ideal generated by all partial derivatives of `g` of total order `< s`.
pub fn derivative_ideal(g: &Poly, s: u32) -> Ideal {
    let mut seen = BTreeSet::new();
    let mut out: Vec<Poly> = Vec::new();
    let mut frontier = vec![g.clone()];
    for level in 0..s {
        let mut next = Vec::new();
        for p in frontier {
            if p.is_zero() {
                continue;
            }
            let key = format!("{p:?}");
            if !seen.insert(key) {
                continue;
            }
            if level + 1 < s {
                for i in 0..p.nvars() {
                    next.push(p.d(i, 1));
                }
            }
            out.push(p);
        }
        frontier = next;
    }
    if out.is_empty() {
        return Ideal::zero(g.vars().clone());
    }
    Ideal { vars: g.vars().clone(), gens: out }
}

/// Largest `d` such that `g` has order `≥ d` somewhere on `V(domain)`.
pub fn max_order_on_variety(g: &Poly, domain: &Ideal) -> Result<u32> {
    if g.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has no finite order".into()));
    }
    let mut d = 0;
    loop {
        let mut gens = derivative_ideal(g, d + 1).nonzero_gens();
        gens.extend(domain.nonzero_gens());
        if is_unit_ideal(&Ideal::new(gens)?)? {
            return Ok(d);
        }
        d += 1;
    }
}

/// Order of `h` restricted to `V(n)` at the point `a`, via the filtration `N + m_a^k`.
pub fn order_along(h: &Poly, n: &Ideal, a: &[Rational], kmax: u32) -> Result<ExtNat> {
    for g in n.nonzero_gens() {
        if !g.eval(a)?.is_zero() {
            return Err(Error::InvalidArgument("point does not lie on the subvariety".into()));
        }
    }
    let vars = h.vars().clone();
    let hs = h.taylor_shift(a)?;
    let ns: Vec<Poly> = n.nonzero_gens().iter().map(|g| g.taylor_shift(a)).collect::<Result<_>>()?;
    for k in 1..=kmax {
        let mut gens = ns.clone();
        gens.extend(monomials_of_degree(&vars, k));
        if !contains(&Ideal::new(gens)?, &hs)? {
            return Ok(ExtNat::Fin(k - 1));
        }
    }
    if ns.is_empty() {
        if hs.is_zero() {
            return Ok(ExtNat::Infinity);
        }
    } else if contains(&Ideal::new(ns)?, &hs)? {
        return Ok(ExtNat::Infinity);
    }
    Err(Error::BudgetExceeded(format!("order along subvariety exceeds kmax = {kmax}")))
}

pub fn monomials_of_degree(vars: &Vars, k: u32) -> Vec<Poly> {
    let n = vars.len();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(e.clone());
            return;
        }
        for v in (0..=left).rev() {
            e[i] = v;
            rec(i + 1, left - v, e, out);
        }
    }
    let mut exps = Vec::new();
    if n > 0 {
        rec(0, k, &mut e, &mut exps);
    }
    for x in exps {
        out.push(Poly::monomial(vars.clone(), x, Rational::one()));
    }
    out
}

/// Determinant of a small square polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let vars = m[0][0].vars().clone();
    let mut acc = Poly::zero(vars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k × k` minors of the Jacobian matrix of `gens`.
pub fn jacobian_minors(gens: &[Poly], k: usize) -> Vec<Poly> {
    let Some(first) = gens.first() else { return Vec::new() };
    let n = first.nvars();
    let jac: Vec<Vec<Poly>> = gens.iter().map(|g| (0..n).map(|i| g.d(i, 1)).collect()).collect();
    let mut out = Vec::new();
    for rows in subsets(gens.len(), k) {
        for cols in subsets(n, k) {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = poly_det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Jacobian criterion: no point of `V(I) ∩ V(D)` where all `codim`-minors vanish.
pub fn jacobian_smooth(ideal: &Ideal, codim: usize, domain: &Ideal) -> Result<bool> {
    let gens = ideal.nonzero_gens();
    if gens.is_empty() {
        return Ok(codim == 0);
    }
    if codim == 0 {
        return is_unit_ideal(ideal);
    }
    if gens.len() < codim {
        return Err(Error::InvalidArgument(format!("{} generators cannot cut codimension {codim}", gens.len())));
    }
    let mut all = gens.clone();
    all.extend(domain.nonzero_gens());
    all.extend(jacobian_minors(&gens, codim));
    is_unit_ideal(&Ideal::new(all)?)
}

/// Krull dimension of the quotient ring via a maximal independent set of the staircase.
pub fn dim_ideal(ideal: &Ideal) -> Result<usize> {
    let gb = groebner(ideal, MonomialOrder::DegRevLex)?;
    if gb.is_unit() {
        return Err(Error::InvalidArgument("the unit ideal has no dimension".into()));
    }
    let n = ideal.vars.len();
    let lms = gb.leading_monomials();
    for k in (0..=n).rev() {
        for s in subsets(n, k) {
            let independent = lms.iter().all(|m| m.0.iter().enumerate().any(|(i, &e)| e > 0 && !s.contains(&i)));
            if independent {
                return Ok(k);
            }
        }
    }
    Ok(0)
}

/// Radical of a zero-dimensional ideal (adjoins square-free parts of univariate eliminants).
pub fn radical_zero_dim(ideal: &Ideal) -> Result<Ideal> {
    let vars = ideal.vars.clone();
    let n = vars.len();
    let mut gens = ideal.nonzero_gens();
    for i in 0..n {
        let mut perm: Vec<String> = vec![vars[i].clone()];
        perm.extend((0..n).filter(|&j| j != i).map(|j| vars[j].clone()));
        let pvars: Vars = perm.into();
        let images: Vec<Poly> = (0..n)
            .map(|j| {
                let pos = if j == i { 0 } else if j < i { j + 1 } else { j };
                Poly::var(pvars.clone(), pos)
            })
            .collect();
        let moved: Vec<Poly> = gens.iter().map(|g| g.compose(&images)).collect();
        let gb = groebner(&Ideal::new(moved)?, MonomialOrder::Elim { tail: n - 1 })?;
        let uni = gb
            .basis
            .iter()
            .find(|g| g.terms().all(|(m, _)| m.0[1..].iter().all(|&e| e == 0)))
            .ok_or_else(|| Error::InvalidArgument("ideal is not zero-dimensional".into()))?;
        let back: Vec<Poly> = (0..n)
            .map(|j| if j == 0 { Poly::var(vars.clone(), i) } else { Poly::zero(vars.clone()) })
            .collect();
        let u = uni.compose(&back);
        gens.push(squarefree(&u)?);
    }
    let gb = groebner(&Ideal::new(gens)?, MonomialOrder::DegRevLex)?;
    Ideal::new(gb.basis)
}

/// Best-effort radical for the small loci met during resolution: exact in dimension zero,
/// otherwise generators are replaced by square-free parts and smoothness is left to the caller.
pub fn radical(ideal: &Ideal) -> Result<Ideal> {
    let gb = groebner(ideal, MonomialOrder::DegRevLex)?;
    if gb.is_unit() || gb.is_zero() {
        return Ok(if gb.is_unit() { Ideal::unit(ideal.vars.clone()) } else { Ideal::zero(ideal.vars.clone()) });
    }
    if dim_ideal(ideal)? == 0 {
        return radical_zero_dim(ideal);
    }
    let gens: Vec<Poly> = gb.basis.iter().map(squarefree).collect::<Result<_>>()?;
    let gb = groebner(&Ideal::new(gens)?, MonomialOrder::DegRevLex)?;
    Ideal::new(gb.basis)
}

/// Mutual containment of two ideals.
pub fn ideals_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    let ga = groebner(a, MonomialOrder::DegRevLex)?;
    let gb = groebner(b, MonomialOrder::DegRevLex)?;
    Ok(ga.basis == gb.basis)
}

impl Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.gens.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ideal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let gens = Vec::<Poly>::deserialize(d)?;
        Ideal::new(gens).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::vars_of;
    use crate::rational::rat;

    fn ideal(gens: &[&str], vars: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|g| parse_poly(g, vars).unwrap()).collect()).unwrap()
    }

    fn gb(gens: &[&str], vars: &[&str]) -> Vec<String> {
        groebner(&ideal(gens, vars), MonomialOrder::DegRevLex).unwrap().basis.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(gb(&["x"], &["x", "y"]), vec!["x"]);
        assert_eq!(gb(&["x^2", "x"], &["x", "y"]), vec!["x"]);
        assert_eq!(gb(&["x+y", "x-y"], &["x", "y"]), vec!["y", "x"]);
    }

    #[test]
    fn normal_forms() {
        let v = ["x", "y"];
        let g1 = groebner(&ideal(&["x"], &v), MonomialOrder::DegRevLex).unwrap();
        assert!(normal_form(&parse_poly("x^2", &v).unwrap(), &g1).unwrap().is_zero());
        assert_eq!(normal_form(&parse_poly("y", &v).unwrap(), &g1).unwrap(), parse_poly("y", &v).unwrap());
        let g2 = groebner(&ideal(&["x", "y"], &v), MonomialOrder::DegRevLex).unwrap();
        assert!(normal_form(&parse_poly("x^2+y", &v).unwrap(), &g2).unwrap().is_zero());
        let other = parse_poly("x", &["x", "z"]).unwrap();
        assert!(normal_form(&other, &g2).is_err());
    }

    #[test]
    fn unit_tests() {
        assert!(is_unit_ideal(&ideal(&["x", "x+1"], &["x"])).unwrap());
        assert!(!is_unit_ideal(&ideal(&["x", "y"], &["x", "y"])).unwrap());
        assert!(is_unit_ideal(&ideal(&["x^2+1", "x-1"], &["x"])).unwrap());
    }

    #[test]
    fn derivative_ideals() {
        let v = ["x", "y"];
        let d = derivative_ideal(&parse_poly("y^2-x^3", &v).unwrap(), 2);
        assert_eq!(d.gens().len(), 3);
        assert!(!is_unit_ideal(&d).unwrap());
        let origin = ideal(&["x", "y"], &v);
        for g in d.gens() {
            assert!(contains(&origin, g).unwrap());
        }
        let g = parse_poly("x^2-y^2*z", &["x", "y", "z"]).unwrap();
        let d = derivative_ideal(&g, 2);
        assert_eq!(dim_ideal(&d).unwrap(), 1);
        let g1 = parse_poly("x*y+1", &v).unwrap();
        assert_eq!(derivative_ideal(&g1, 1).gens(), std::slice::from_ref(&g1));
    }

    #[test]
    fn max_orders() {
        let v = vars_of(&["x", "y"]);
        let z = Ideal::zero(v.clone());
        assert_eq!(max_order_on_variety(&parse_poly("y^2-x^3", &["x", "y"]).unwrap(), &z).unwrap(), 2);
        assert_eq!(max_order_on_variety(&parse_poly("x", &["x", "y"]).unwrap(), &z).unwrap(), 1);
        let w = vars_of(&["x", "y", "z"]);
        let g = parse_poly("x^2-y^2*z", &["x", "y", "z"]).unwrap();
        assert_eq!(max_order_on_variety(&g, &Ideal::zero(w)).unwrap(), 2);
    }

    #[test]
    fn orders_along() {
        let v = ["x", "y"];
        let n = ideal(&["y"], &v);
        let o = [rat(0), rat(0)];
        assert_eq!(order_along(&parse_poly("x^3", &v).unwrap(), &n, &o, 64).unwrap(), ExtNat::Fin(3));
        assert_eq!(order_along(&parse_poly("y", &v).unwrap(), &n, &o, 64).unwrap(), ExtNat::Infinity);
        assert_eq!(order_along(&parse_poly("x", &v).unwrap(), &n, &o, 64).unwrap(), ExtNat::Fin(1));
        assert!(order_along(&parse_poly("x", &v).unwrap(), &n, &[rat(0), rat(1)], 64).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let w = ["x", "y", "z"];
        let z3 = Ideal::zero(vars_of(&w));
        assert!(jacobian_smooth(&ideal(&["x", "y"], &w), 2, &z3).unwrap());
        let v = ["x", "y"];
        let z2 = Ideal::zero(vars_of(&v));
        assert!(!jacobian_smooth(&ideal(&["y^2-x^3"], &v), 1, &z2).unwrap());
        assert!(jacobian_smooth(&ideal(&["y^2-x^3-x"], &v), 1, &z2).unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_ideal(&ideal(&["x", "y"], &["x", "y", "z"])).unwrap(), 1);
        assert_eq!(dim_ideal(&ideal(&["y^2-x^3"], &["x", "y"])).unwrap(), 1);
        assert_eq!(dim_ideal(&Ideal::zero(vars_of(&["x", "y", "z"]))).unwrap(), 3);
        assert!(dim_ideal(&ideal(&["1"], &["x"])).is_err());
    }

    #[test]
    fn elimination_tools() {
        let v = ["x", "y"];
        let f = parse_poly("x^2*y", &v).unwrap();
        let g = parse_poly("x*y^3", &v).unwrap();
        assert_eq!(poly_gcd(&f, &g).unwrap(), parse_poly("x*y", &v).unwrap());
        assert_eq!(squarefree(&parse_poly("x^2*y^3", &v).unwrap()).unwrap(), parse_poly("x*y", &v).unwrap());
        let sat = saturate(&ideal(&["x*y"], &v), &parse_poly("x", &v).unwrap()).unwrap();
        assert!(ideals_equal(&sat, &ideal(&["y"], &v)).unwrap());
        let r = radical(&ideal(&["x^2", "y"], &v)).unwrap();
        assert!(ideals_equal(&r, &ideal(&["x", "y"], &v)).unwrap());
        let q = quotient(&ideal(&["x^2", "x*y"], &v), &parse_poly("x", &v).unwrap()).unwrap();
        assert!(ideals_equal(&q, &ideal(&["x", "y"], &v)).unwrap());
    }
}
