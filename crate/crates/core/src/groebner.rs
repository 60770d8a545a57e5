//! Buchberger completion with the product and chain criteria.
//!
//! Polynomials are converted to a dense-term vector sorted by the active
//! monomial order (leading term last). Pair selection is the normal strategy:
//! smallest lcm degree first, ties broken by creation order, so the reduced
//! basis is reproducible run to run.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{grevlex_cmp, Monomial, Poly, Vars};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Block order eliminating the last `tail` variables.
    Elim { tail: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => grevlex_cmp(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elim { tail } => {
                let n = a.len();
                let cut = n.saturating_sub(tail);
                grevlex_cmp(&a[cut..], &b[cut..]).then_with(|| grevlex_cmp(&a[..cut], &b[..cut]))
            }
        }
    }
}

/// Caps on the completion; hitting one is a `BudgetExceeded` error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 200_000, max_degree: 200 }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SPoly {
    /// Ascending in the active order; the leading term is last.
    pub terms: Vec<(Vec<u32>, Rational)>,
}

impl SPoly {
    pub fn from_poly(p: &Poly, order: MonomialOrder) -> SPoly {
        let mut terms: Vec<(Vec<u32>, Rational)> = p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        SPoly { terms }
    }

    pub fn to_poly(&self, vars: &Vars) -> Poly {
        Poly::from_terms(vars.clone(), self.terms.iter().map(|(e, c)| (c.clone(), e.clone()))).expect("arity")
    }

    fn lm(&self) -> &[u32] {
        &self.terms.last().unwrap().0
    }

    fn lc(&self) -> &Rational {
        &self.terms.last().unwrap().1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some(lc) = self.terms.last().map(|t| t.1.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }

    /// `self - c * x^m * g`.
    fn sub_scaled(&self, c: &Rational, m: &[u32], g: &SPoly, order: MonomialOrder) -> SPoly {
        let shifted: Vec<(Vec<u32>, Rational)> = g
            .terms
            .iter()
            .map(|(e, a)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), a * c))
            .collect();
        let mut out = Vec::with_capacity(self.terms.len() + shifted.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < shifted.len() {
            match order.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 - &shifted[j].1;
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(shifted[j..].iter().map(|(e, a)| (e.clone(), -a.clone())));
        SPoly { terms: out }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Full reduction of `p` by `basis`; returns the remainder.
pub(crate) fn reduce(p: &SPoly, basis: &[SPoly], order: MonomialOrder) -> SPoly {
    let mut p = p.clone();
    let mut rem: Vec<(Vec<u32>, Rational)> = Vec::new();
    while let Some((lead, lc)) = p.terms.last().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &lead)) {
            Some(g) => {
                let m: Vec<u32> = lead.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                let c = &lc / g.lc();
                p = p.sub_scaled(&c, &m, g, order);
            }
            None => {
                rem.push(p.terms.pop().unwrap());
            }
        }
    }
    rem.reverse();
    SPoly { terms: rem }
}

fn s_poly(f: &SPoly, g: &SPoly, order: MonomialOrder) -> SPoly {
    let l = lcm(f.lm(), g.lm());
    let mf: Vec<u32> = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let mg: Vec<u32> = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    let fz = SPoly { terms: Vec::new() };
    let a = fz.sub_scaled(&-f.lc().recip(), &mf, f, order);
    a.sub_scaled(&g.lc().recip(), &mg, g, order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
    seq: usize,
}

/// Reduced Gröbner basis of the ideal generated by `gens` (all over one ring).
pub(crate) fn buchberger(gens: &[SPoly], order: MonomialOrder, budget: &Budget) -> Result<Vec<SPoly>> {
    let mut basis: Vec<SPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seq = 0usize;
    let mut processed = 0usize;

    fn insert(h: SPoly, basis: &mut Vec<SPoly>, pairs: &mut Vec<Pair>, seq: &mut usize) {
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pairs.push(Pair { i, j: k, lcm: lcm(b.lm(), h.lm()), seq: *seq });
            *seq += 1;
        }
        basis.push(h);
    }

    for g in gens {
        let mut h = reduce(g, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().iter().all(|&e| e == 0) {
            return Ok(vec![h]);
        }
        insert(h, &mut basis, &mut pairs, &mut seq);
    }

    while !pairs.is_empty() {
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let da: u32 = a.lcm.iter().sum();
                let db: u32 = b.lcm.iter().sum();
                da.cmp(&db).then(a.seq.cmp(&b.seq))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!("Buchberger pair cap {} reached", budget.max_pairs)));
        }
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        // product criterion
        if fi.lm().iter().zip(fj.lm()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && divides(basis[k].lm(), &pair.lcm)
                && !pairs.iter().any(|p| (p.i == pair.i.min(k) && p.j == pair.i.max(k)) || (p.i == pair.j.min(k) && p.j == pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(fi, fj, order);
        let mut h = reduce(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        let deg: u32 = h.lm().iter().sum();
        if deg > budget.max_degree {
            return Err(Error::BudgetExceeded(format!("basis degree cap {} reached", budget.max_degree)));
        }
        h.make_monic();
        if h.lm().iter().all(|&e| e == 0) {
            return Ok(vec![h]);
        }
        insert(h, &mut basis, &mut pairs, &mut seq);
    }

    // minimalize then interreduce
    let mut minimal: Vec<SPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let lead = minimal[i].terms.last().cloned().unwrap();
        let tail = SPoly { terms: minimal[i].terms[..minimal[i].terms.len() - 1].to_vec() };
        let mut r = reduce(&tail, &others, order);
        r.terms.push(lead);
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

/// Leading monomial of a polynomial under `order`.
pub fn leading_monomial(p: &Poly, order: MonomialOrder) -> Option<Monomial> {
    p.terms().map(|(m, _)| m).max_by(|a, b| order.cmp(&a.0, &b.0)).cloned()
}

/// S-polynomial of two polynomials under `order`.
pub fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let a = SPoly::from_poly(f, order);
    let b = SPoly::from_poly(g, order);
    s_poly(&a, &b, order).to_poly(f.vars())
}
