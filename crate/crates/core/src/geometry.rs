//! Chart atlases, coordinate blowups, transforms and normal-crossings certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::MonomialOrder;
use crate::ideal::{
    dim_ideal, groebner, intersect, is_unit_ideal, jacobian_minors, jacobian_smooth, locus_nonempty, normal_form, radical, saturate,
    subsets, vanishes_on, Ideal,
};
use crate::poly::{vars_of, Poly, Vars};
use crate::rational::Rational;

pub type ChartId = usize;
pub type DivisorId = usize;

/// A locally closed set `V(eqs) \ V(prod units)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locus {
    pub vars: Vars,
    pub eqs: Vec<Poly>,
    pub units: Vec<Poly>,
}

impl Locus {
    pub fn whole(vars: Vars) -> Locus {
        Locus { vars, eqs: Vec::new(), units: Vec::new() }
    }

    pub fn closed(vars: Vars, eqs: Vec<Poly>) -> Locus {
        Locus { vars, eqs, units: Vec::new() }
    }

    pub fn point(vars: Vars, a: &[Rational]) -> Locus {
        let eqs = (0..vars.len())
            .map(|i| &Poly::var(vars.clone(), i) - &Poly::constant(vars.clone(), a[i].clone()))
            .collect();
        Locus { vars, eqs, units: Vec::new() }
    }

    pub fn is_nonempty(&self) -> Result<bool> {
        locus_nonempty(&self.vars, &self.eqs, &self.units)
    }

    /// `p` vanishes identically on the locus.
    pub fn inside(&self, p: &Poly) -> Result<bool> {
        vanishes_on(&self.vars, &self.eqs, &self.units, p)
    }

    /// `p` has no zero on the locus.
    pub fn avoids(&self, p: &Poly) -> Result<bool> {
        if p.is_constant() {
            return Ok(!p.is_zero());
        }
        let mut eqs = self.eqs.clone();
        eqs.push(p.clone());
        Ok(!locus_nonempty(&self.vars, &eqs, &self.units)?)
    }

    pub fn cut(&self, p: &Poly) -> Locus {
        let mut l = self.clone();
        l.eqs.push(p.clone());
        l
    }

    pub fn cut_all(&self, ps: &[Poly]) -> Locus {
        let mut l = self.clone();
        l.eqs.extend(ps.iter().cloned());
        l
    }

    pub fn remove(&self, p: &Poly) -> Locus {
        let mut l = self.clone();
        if !p.is_constant() {
            l.units.push(p.clone());
        }
        l
    }

    /// Splits into the parts on and off `V(p)`, dropping empty parts.
    pub fn split(&self, p: &Poly) -> Result<(Option<Locus>, Option<Locus>)> {
        if self.inside(p)? {
            return Ok((Some(self.clone()), None));
        }
        if self.avoids(p)? {
            return Ok((None, Some(self.clone())));
        }
        Ok((Some(self.cut(p)), Some(self.remove(p))))
    }

    /// Zariski closure as an ideal.
    pub fn closure(&self) -> Result<Ideal> {
        let eqs: Vec<Poly> = self.eqs.iter().filter(|p| !p.is_zero()).cloned().collect();
        let base = if eqs.is_empty() { Ideal::zero(self.vars.clone()) } else { Ideal::new(eqs)? };
        if base.is_zero() {
            return Ok(base);
        }
        let mut prod = Poly::one(self.vars.clone());
        for u in &self.units {
            prod = &prod * u;
        }
        saturate(&base, &prod)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Transform {
    Hypersurface(Poly),
    Ideal(Vec<Poly>),
}

impl Transform {
    pub fn gens(&self) -> Vec<Poly> {
        match self {
            Transform::Hypersurface(p) => vec![p.clone()],
            Transform::Ideal(g) => g.clone(),
        }
    }

    pub fn vars(&self) -> Vars {
        match self {
            Transform::Hypersurface(p) => p.vars().clone(),
            Transform::Ideal(g) => g[0].vars().clone(),
        }
    }

    /// The transform has no zeros in the chart.
    pub fn is_empty_locus(&self) -> Result<bool> {
        match self {
            Transform::Hypersurface(p) => Ok(p.is_constant() && !p.is_zero()),
            Transform::Ideal(g) => is_unit_ideal(&Ideal::new(g.clone())?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub id: ChartId,
    pub year: u32,
    pub vars: Vec<String>,
    pub parent: Option<ChartId>,
    /// Parent coordinates as polynomials in this chart; empty for year-0 charts.
    pub transition: Vec<Poly>,
    pub divisors: Vec<DivisorId>,
    pub transform: Transform,
    /// Local factors of the divisor created in this chart's year (empty for identity children).
    pub exceptional: Vec<Poly>,
    /// Power of each exceptional factor extracted from the pulled-back transform.
    pub extracted: Vec<u32>,
    /// Total transform of the input equals `factor * transform` (generator-wise in ideal mode).
    pub factor: Poly,
    /// The chart is the open set where none of these vanish.
    #[serde(default)]
    pub domain: Vec<Poly>,
    /// Functions `v` such that `D(v)` is also covered by other charts of the same year.
    #[serde(default)]
    pub overlaps: Vec<Poly>,
}

impl Chart {
    pub fn ring(&self) -> Vars {
        vars_of(&self.vars)
    }

    pub fn root(id: ChartId, transform: Transform) -> Chart {
        let vars = transform.vars();
        Chart {
            id,
            year: 0,
            vars: vars.to_vec(),
            parent: None,
            transition: Vec::new(),
            divisors: Vec::new(),
            transform,
            exceptional: Vec::new(),
            extracted: Vec::new(),
            factor: Poly::one(vars),
            domain: Vec::new(),
            overlaps: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRecord {
    pub id: DivisorId,
    pub birth: u32,
    /// Local equation per chart as a list of pairwise disjoint smooth factors.
    pub equations: BTreeMap<ChartId, Vec<Poly>>,
}

impl DivisorRecord {
    pub fn equation(&self, chart: ChartId) -> Option<Poly> {
        let f = self.equations.get(&chart)?;
        let vars = f[0].vars().clone();
        Some(f.iter().fold(Poly::one(vars), |acc, p| &acc * p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterComponent {
    pub ideal: Vec<Poly>,
    /// Chart coordinates written in the straightened coordinates.
    pub substitution: Vec<Poly>,
    pub coords: Vec<usize>,
}

/// Result of straightening a smooth center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightening {
    pub substitution: Vec<Poly>,
    pub coords: Vec<usize>,
}

fn identity_images(vars: &Vars) -> Vec<Poly> {
    (0..vars.len()).map(|i| Poly::var(vars.clone(), i)).collect()
}

/// Reads `C` as a graph `x_t = r_t(rest)` over the coordinates outside `block`.
fn graph_over(gens: &[Poly], block: &[usize]) -> Result<Option<Vec<(usize, Poly)>>> {
    let vars = gens[0].vars().clone();
    let n = vars.len();
    let rest: Vec<usize> = (0..n).filter(|i| !block.contains(i)).collect();
    let order: Vec<usize> = rest.iter().chain(block.iter()).copied().collect();
    let pvars: Vars = order.iter().map(|&i| vars[i].clone()).collect::<Vec<_>>().into();
    let mut to_p = vec![Poly::zero(pvars.clone()); n];
    for (pos, &i) in order.iter().enumerate() {
        to_p[i] = Poly::var(pvars.clone(), pos);
    }
    let moved: Vec<Poly> = gens.iter().map(|g| g.compose(&to_p)).collect();
    let gb = groebner(&Ideal::new(moved)?, MonomialOrder::Elim { tail: block.len() })?;
    if gb.basis.len() != block.len() {
        return Ok(None);
    }
    let back: Vec<Poly> = (0..n).map(|pos| Poly::var(vars.clone(), order[pos])).collect();
    let mut out = Vec::new();
    for g in &gb.basis {
        let g = g.compose(&back);
        let solved = block.iter().find_map(|&t| g.solve_linear(t).map(|(c, r)| (t, c, r)));
        let Some((t, c, r)) = solved else { return Ok(None) };
        if block.iter().any(|&b| r.uses_var(b)) || out.iter().any(|(s, _)| *s == t) {
            return Ok(None);
        }
        out.push((t, -&r.scale(&c.recip())));
    }
    out.sort_by_key(|(t, _)| *t);
    Ok(Some(out))
}

fn linear_candidates(n: usize, bound: u32) -> Vec<Vec<Vec<Rational>>> {
    let id = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let mut out = vec![(0..n).map(|i| (0..n).map(|j| id(i, j)).collect()).collect()];
    for c in 1..=bound as i64 {
        for s in [c, -c] {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut u: Vec<Vec<Rational>> = (0..n).map(|a| (0..n).map(|b| id(a, b)).collect()).collect();
                        u[i][j] = Rational::from_integer(BigInt::from(s));
                        out.push(u);
                    }
                }
            }
        }
    }
    out
}

/// Finds an invertible substitution turning the smooth ideal `C` into a coordinate-subspace ideal.
pub fn straighten_center(c: &Ideal, bound: u32) -> Result<Straightening> {
    let vars = c.vars().clone();
    let n = vars.len();
    let gb = groebner(c, MonomialOrder::DegRevLex)?;
    if gb.is_unit() {
        return Err(Error::InvalidArgument("empty center".into()));
    }
    if gb.is_zero() {
        return Err(Error::InvalidArgument("the center is the whole chart".into()));
    }
    let dim = dim_ideal(c)?;
    let q = n - dim;
    let gens = gb.basis.clone();
    if !jacobian_smooth(&Ideal::new(gens.clone())?, q, &Ideal::zero(vars.clone()))? {
        return Err(Error::NotSmooth(format!("center {:?} is not smooth of codimension {q}", gens)));
    }
    for u in linear_candidates(n, bound) {
        let lin: Vec<Poly> = (0..n)
            .map(|i| {
                (0..n).fold(Poly::zero(vars.clone()), |acc, j| {
                    if u[i][j].is_zero() {
                        acc
                    } else {
                        &acc + &Poly::var(vars.clone(), j).scale(&u[i][j])
                    }
                })
            })
            .collect();
        let moved: Vec<Poly> = gens.iter().map(|g| g.compose(&lin)).collect();
        for block in subsets(n, q) {
            let Some(graph) = graph_over(&moved, &block)? else { continue };
            let mut shear = identity_images(&vars);
            for (t, r) in &graph {
                shear[*t] = &Poly::var(vars.clone(), *t) + r;
            }
            let subst: Vec<Poly> = lin.iter().map(|p| p.compose(&shear)).collect();
            if verify_straightening(&gens, &subst, &block)? {
                return Ok(Straightening { substitution: subst, coords: block });
            }
        }
    }
    Err(Error::Straighten(format!("no straightening of {:?} with coefficients up to {bound}", gens)))
}

fn verify_straightening(gens: &[Poly], subst: &[Poly], block: &[usize]) -> Result<bool> {
    let vars = subst[0].vars().clone();
    let target = Ideal::new(block.iter().map(|&t| Poly::var(vars.clone(), t)).collect())?;
    let moved: Vec<Poly> = gens.iter().map(|g| g.compose(subst)).collect();
    let tgb = groebner(&target, MonomialOrder::DegRevLex)?;
    for m in &moved {
        if !normal_form(m, &tgb)?.is_zero() {
            return Ok(false);
        }
    }
    let mgb = groebner(&Ideal::new(moved)?, MonomialOrder::DegRevLex)?;
    for t in target.gens() {
        if !normal_form(t, &mgb)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The standard affine charts of the blowup along `x_c = 0, c ∈ coords`.
/// Returns, per chart, the exceptional coordinate and the images of the old coordinates.
pub fn blowup_maps(vars: &Vars, coords: &[usize]) -> Result<Vec<(usize, Vec<Poly>)>> {
    let n = vars.len();
    for (k, &c) in coords.iter().enumerate() {
        if c >= n || coords[..k].contains(&c) {
            return Err(Error::InvalidArgument(format!("bad center coordinates {coords:?}")));
        }
    }
    if coords.is_empty() {
        return Err(Error::InvalidArgument("empty center coordinate list".into()));
    }
    if coords.len() == 1 {
        return Ok(vec![(coords[0], identity_images(vars))]);
    }
    Ok(coords
        .iter()
        .map(|&ci| {
            let mut im = identity_images(vars);
            for &cj in coords {
                if cj != ci {
                    im[cj] = &Poly::var(vars.clone(), ci) * &Poly::var(vars.clone(), cj);
                }
            }
            (ci, im)
        })
        .collect())
}

/// Pulls `f` back along `images` and removes the largest power of `theta`.
pub fn strict_transform(f: &Poly, images: &[Poly], theta: &Poly) -> Result<(Poly, u32)> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("strict transform of zero".into()));
    }
    let pulled = f.compose(images);
    let (d, q) = pulled.divisibility_order(theta);
    Ok((q, d))
}

/// Weak transform: removes the common power `theta^mu` from all pulled-back generators.
pub fn weak_transform_ideal(gens: &[Poly], images: &[Poly], theta: &Poly) -> Result<(Vec<Poly>, u32)> {
    let pulled: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.compose(images)).collect();
    if pulled.is_empty() {
        return Err(Error::InvalidArgument("weak transform of the zero ideal".into()));
    }
    let mu = pulled.iter().map(|p| p.divisibility_order(theta).0).min().unwrap();
    let t = theta.pow(mu);
    let out = pulled.iter().map(|p| p.divide_exact(&t).expect("common power divides")).collect();
    Ok((out, mu))
}

/// Pulls old divisor equations into a new chart and strips the new exceptional factor.
/// Returns `None` when the divisor misses the chart.
pub fn transform_divisor(factors: &[Poly], images: &[Poly], theta: &Poly) -> Result<Option<Vec<Poly>>> {
    let mut out = Vec::new();
    for f in factors {
        let (q, d) = strict_transform(f, images, theta)?;
        if d > 1 {
            return Err(Error::NotSmooth(format!("divisor {f} meets the center with multiplicity {d}")));
        }
        if !q.is_constant() {
            out.push(q);
        }
    }
    Ok(if out.is_empty() { None } else { Some(out) })
}

/// Exponents `k` with `f = u * prod theta^k` and `u` zero-free on `V(at)`, if any.
pub fn nc_check(f: &Poly, thetas: &[Poly], at: &Locus) -> Result<Option<Vec<u32>>> {
    if f.is_zero() {
        return Ok(None);
    }
    let mut u = f.clone();
    let mut exps = Vec::with_capacity(thetas.len());
    for t in thetas {
        let (k, q) = u.divisibility_order(t);
        exps.push(k);
        u = q;
    }
    Ok(if at.avoids(&u)? { Some(exps) } else { None })
}

/// Simultaneous normal crossings of a smooth hypersurface with divisor components.
pub fn snc_check(x: Option<&Poly>, divisors: &[Poly]) -> Result<bool> {
    snc_check_on(x, divisors, &[])
}

/// Jacobian criterion on the open set where the `units` do not vanish.
pub fn smooth_on(gens: &[Poly], codim: usize, units: &[Poly]) -> Result<bool> {
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(vars) = gens.first().map(|g| g.vars().clone()) else { return Ok(codim == 0) };
    if codim == 0 {
        return Ok(!locus_nonempty(&vars, &gens, units)?);
    }
    if gens.len() < codim {
        return Err(Error::InvalidArgument(format!("{} generators cannot cut codimension {codim}", gens.len())));
    }
    let mut all = gens.clone();
    all.extend(jacobian_minors(&gens, codim));
    Ok(!locus_nonempty(&vars, &all, units)?)
}

/// [`snc_check`] restricted to the open set where the `units` do not vanish.
pub fn snc_check_on(x: Option<&Poly>, divisors: &[Poly], units: &[Poly]) -> Result<bool> {
    let Some(vars) = x.map(|p| p.vars().clone()).or_else(|| divisors.first().map(|d| d.vars().clone())) else {
        return Ok(true);
    };
    let n = vars.len();
    let x = match x {
        Some(p) if p.is_constant() && !p.is_zero() => None,
        other => other,
    };
    if let Some(p) = x {
        if !smooth_on(std::slice::from_ref(p), 1, units)? {
            return Err(Error::NotSmooth(format!("{p} is not smooth")));
        }
    }
    for k in 1..=divisors.len() {
        for s in subsets(divisors.len(), k) {
            let mut gens: Vec<Poly> = s.iter().map(|&i| divisors[i].clone()).collect();
            if !normal_crossing_family(&gens, n, units)? {
                return Ok(false);
            }
            if let Some(p) = x {
                gens.insert(0, p.clone());
                if !normal_crossing_family(&gens, n, units)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn normal_crossing_family(gens: &[Poly], n: usize, units: &[Poly]) -> Result<bool> {
    if gens.len() > n {
        return Ok(!locus_nonempty(gens[0].vars(), gens, units)?);
    }
    smooth_on(gens, gens.len(), units)
}

/// Rational roots of a univariate polynomial (given in one variable of a larger ring).
pub fn rational_roots(p: &Poly, var: usize) -> Vec<Rational> {
    let deg = p.degree_in(var) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.0[var] as usize] = c.clone();
    }
    let denom = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(denom.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
    }
    let a0 = ints[low].abs();
    let an = ints[deg].abs();
    let cands = |x: &BigInt| -> Vec<BigInt> {
        let mut v = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *x {
            if (x % &d).is_zero() {
                v.push(d.clone());
                v.push(x / &d);
            }
            d += 1;
            if d > BigInt::from(100_000) {
                break;
            }
        }
        v
    };
    if a0.is_zero() || deg == low {
        return roots;
    }
    for pn in cands(&a0) {
        for qd in cands(&an) {
            for s in [1, -1] {
                let r = Rational::new(pn.clone() * s, qd.clone());
                if roots.contains(&r) {
                    continue;
                }
                let mut acc = Rational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * &r + c;
                }
                if acc.is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Splits a radical ideal into pieces separated by rational coordinate values.
pub fn split_components(c: &Ideal) -> Result<Vec<Ideal>> {
    let vars = c.vars().clone();
    let n = vars.len();
    if is_unit_ideal(c)? {
        return Ok(Vec::new());
    }
    for i in 0..n {
        let Some(u) = univariate_member(c, i)? else { continue };
        let roots = rational_roots(&u, i);
        if roots.len() < 2 && !(roots.len() == 1 && u.degree_in(i) > 1) {
            continue;
        }
        let mut rest = u.clone();
        let mut parts = Vec::new();
        for r in &roots {
            let lin = &Poly::var(vars.clone(), i) - &Poly::constant(vars.clone(), r.clone());
            rest = rest.divisibility_order(&lin).1;
            parts.push(radical(&c.with(&[lin]))?);
        }
        if !rest.is_constant() {
            let tail = radical(&c.with(&[rest]))?;
            if !is_unit_ideal(&tail)? {
                parts.push(tail);
            }
        }
        if parts.len() < 2 {
            continue;
        }
        let mut out = Vec::new();
        for p in parts {
            if !is_unit_ideal(&p)? {
                out.extend(split_components(&p)?);
            }
        }
        return Ok(out);
    }
    Ok(vec![c.clone()])
}

/// A nonzero element of `C ∩ K[x_i]`, if there is one.
pub fn univariate_member(c: &Ideal, i: usize) -> Result<Option<Poly>> {
    let vars = c.vars().clone();
    let n = vars.len();
    let order: Vec<usize> = std::iter::once(i).chain((0..n).filter(|&j| j != i)).collect();
    let pvars: Vars = order.iter().map(|&j| vars[j].clone()).collect::<Vec<_>>().into();
    let mut to_p = vec![Poly::zero(pvars.clone()); n];
    for (pos, &j) in order.iter().enumerate() {
        to_p[j] = Poly::var(pvars.clone(), pos);
    }
    let moved: Vec<Poly> = c.nonzero_gens().iter().map(|g| g.compose(&to_p)).collect();
    if moved.is_empty() {
        return Ok(None);
    }
    let gb = groebner(&Ideal::new(moved)?, MonomialOrder::Elim { tail: n - 1 })?;
    let back: Vec<Poly> = (0..n).map(|pos| Poly::var(vars.clone(), order[pos])).collect();
    Ok(gb
        .basis
        .iter()
        .find(|g| g.terms().all(|(m, _)| m.0[1..].iter().all(|&e| e == 0)))
        .map(|g| g.compose(&back)))
}

/// Union of closed sets given by ideals.
pub fn union_ideal(vars: &Vars, parts: &[Ideal]) -> Result<Ideal> {
    let mut acc = Ideal::unit(vars.clone());
    for p in parts {
        acc = intersect(&acc, p)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::rat;

    fn p(s: &str, v: &[&str]) -> Poly {
        parse_poly(s, v).unwrap()
    }

    #[test]
    fn blowup_charts() {
        let v = vars_of(&["x", "y"]);
        let maps = blowup_maps(&v, &[0, 1]).unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[0].1[1], p("x*y", &["x", "y"]));
        assert_eq!(maps[1].1[0], p("x*y", &["x", "y"]));
        let w = vars_of(&["x", "y", "z"]);
        let maps = blowup_maps(&w, &[0, 1]).unwrap();
        assert_eq!(maps[0].1[2], Poly::var(w.clone(), 2));
        assert_eq!(blowup_maps(&w, &[2]).unwrap().len(), 1);
        assert!(blowup_maps(&w, &[0, 0]).is_err());
    }

    #[test]
    fn cusp_strict_transforms() {
        let v = ["x", "y"];
        let f = p("y^2-x^3", &v);
        let maps = blowup_maps(&vars_of(&v), &[0, 1]).unwrap();
        let (s, d) = strict_transform(&f, &maps[0].1, &p("x", &v)).unwrap();
        assert_eq!((s, d), (p("y^2-x", &v), 2));
        let (s, d) = strict_transform(&f, &maps[1].1, &p("y", &v)).unwrap();
        assert_eq!((s, d), (p("1-x^3*y", &v), 2));
        let (s, d) = strict_transform(&p("x", &v), &maps[0].1, &p("x", &v)).unwrap();
        assert_eq!((s, d), (p("1", &v), 1));
    }

    #[test]
    fn weak_transforms() {
        let v = ["x", "y"];
        let maps = blowup_maps(&vars_of(&v), &[0, 1]).unwrap();
        let (w, mu) = weak_transform_ideal(&[p("x^2", &v), p("x*y", &v)], &maps[0].1, &p("x", &v)).unwrap();
        assert_eq!(mu, 2);
        assert!(is_unit_ideal(&Ideal::new(w).unwrap()).unwrap());
        let (w, mu) = weak_transform_ideal(&[p("x^2", &v)], &maps[0].1, &p("x", &v)).unwrap();
        assert_eq!((w, mu), (vec![p("1", &v)], 2));
    }

    #[test]
    fn straightening() {
        let w = ["x", "y", "z"];
        let s = straighten_center(&Ideal::new(vec![p("x", &w), p("y", &w)]).unwrap(), 3).unwrap();
        assert_eq!(s.coords, vec![0, 1]);
        let c = Ideal::new(vec![p("y-x^2", &w), p("z", &w)]).unwrap();
        let s = straighten_center(&c, 3).unwrap();
        assert_eq!(s.coords.len(), 2);
        let c = Ideal::new(vec![p("x+y", &w), p("z", &w)]).unwrap();
        assert!(straighten_center(&c, 3).is_ok());
        let cusp = Ideal::new(vec![p("y^2-x^3", &["x", "y"])]).unwrap();
        assert!(matches!(straighten_center(&cusp, 3), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn divisor_pullbacks() {
        let v = ["x", "y"];
        let maps = blowup_maps(&vars_of(&v), &[0, 1]).unwrap();
        let x = p("x", &v);
        assert_eq!(transform_divisor(std::slice::from_ref(&x), &maps[0].1, &p("x", &v)).unwrap(), None);
        assert_eq!(transform_divisor(std::slice::from_ref(&x), &maps[1].1, &p("y", &v)).unwrap(), Some(vec![x]));
    }

    #[test]
    fn normal_crossings() {
        let v = ["x", "y"];
        let origin = Locus::point(vars_of(&v), &[rat(0), rat(0)]);
        let th = [p("x", &v), p("y", &v)];
        assert_eq!(nc_check(&p("x^2*y^3", &v), &th, &origin).unwrap(), Some(vec![2, 3]));
        assert_eq!(nc_check(&p("y^2-x^3", &v), &th, &origin).unwrap(), None);
        let o1 = Locus::point(vars_of(&["x"]), &[rat(0)]);
        assert_eq!(nc_check(&p("(1+x)*x^2", &["x"]), &[p("x", &["x"])], &o1).unwrap(), Some(vec![2]));
        assert!(!snc_check(Some(&p("y^2-x", &v)), &[p("x", &v)]).unwrap());
        assert!(snc_check(Some(&p("y-x", &v)), &[p("x", &v)]).unwrap());
        assert!(snc_check(Some(&p("1", &v)), &[p("x", &v)]).unwrap());
    }

    #[test]
    fn components() {
        let v = ["x", "y"];
        let c = Ideal::new(vec![p("x", &v), p("y^2-1", &v)]).unwrap();
        assert_eq!(split_components(&c).unwrap().len(), 2);
        assert_eq!(rational_roots(&p("4*y^2-1", &v), 1), vec![crate::rational::ratio(-1, 2), crate::rational::ratio(1, 2)]);
    }
}
