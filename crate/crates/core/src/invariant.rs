//! The desingularization invariant: words, presentations, maximal contact and the
//! stratified search for the maximum locus.
//!
//! Strata are handled as locally closed pieces living on a maximal-contact
//! subvariety (a "frame"). Every frame is a polynomial graph over a subset of the
//! chart coordinates, so functions on it are ordinary polynomials in fewer
//! variables and derivatives tangent to it are plain partial derivatives.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{rational_roots, ChartId, DivisorId, Locus};
use crate::ideal::{derivative_ideal, dim_ideal, groebner, is_unit_ideal, jacobian_smooth, radical, subsets, Ideal};
use crate::groebner::MonomialOrder;
use crate::poly::{Poly, Vars};
use crate::rational::{rat_display, rat_from_str, rat_to_wire, Rational};

/// A contact frame, the piece on it and its coefficient pairs (`None` when empty).
type Branch = (Frame, Locus, Option<Vec<MarkedPair>>);

/// A divisor id with its birth year.
type DivisorBirth = (DivisorId, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    Zero,
    Infinity,
}

/// `(ν1, s1; …; νt, st; ν_{t+1})` with `ν_{t+1} ∈ {0, ∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantWord {
    pub entries: Vec<(Rational, u32)>,
    pub terminal: Terminal,
    /// Recorded only when the terminal is zero.
    pub companion: Option<Rational>,
}

/// Extended rationals used for ν and μ values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Fin(Rational),
    Infinity,
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => a.cmp(b),
            (ExtRat::Fin(_), ExtRat::Infinity) => Ordering::Less,
            (ExtRat::Infinity, ExtRat::Fin(_)) => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Fin(r) => write!(f, "{}", rat_display(r)),
            ExtRat::Infinity => write!(f, "inf"),
        }
    }
}

fn terminal_rank(t: Terminal) -> u8 {
    match t {
        Terminal::Zero => 0,
        Terminal::Infinity => 2,
    }
}

impl InvariantWord {
    pub fn smooth_point() -> InvariantWord {
        InvariantWord { entries: vec![(Rational::one(), 0)], terminal: Terminal::Infinity, companion: None }
    }

    /// Lexicographic order on words, ignoring the companion value.
    pub fn cmp_word(&self, other: &InvariantWord) -> Ordering {
        let n = self.entries.len().min(other.entries.len());
        for k in 0..n {
            let (a, sa) = &self.entries[k];
            let (b, sb) = &other.entries[k];
            match a.cmp(b).then(sa.cmp(sb)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.entries.len().cmp(&other.entries.len()) {
            Ordering::Equal => terminal_rank(self.terminal).cmp(&terminal_rank(other.terminal)),
            // a positive rational sits strictly between the two terminals
            Ordering::Less => terminal_rank(self.terminal).cmp(&1),
            Ordering::Greater => 1.cmp(&terminal_rank(other.terminal)),
        }
    }

    pub fn nu1(&self) -> &Rational {
        &self.entries[0].0
    }

    pub fn s1(&self) -> u32 {
        self.entries[0].1
    }

    /// Whether `(ν1, s1; …; ν_r)` of this word equals the given prefix (`nus.len() == r`).
    fn matches_prefix(&self, done: &[(Rational, u32)], nu: &Rational) -> bool {
        let r = done.len();
        if self.entries.len() <= r {
            return false;
        }
        self.entries[..r] == *done && self.entries[r].0 == *nu
    }

    pub fn to_wire(&self) -> WordWire {
        WordWire {
            entries: self.entries.iter().map(|(n, s)| (rat_to_wire(n), *s)).collect(),
            terminal: self.terminal,
            companion: self.companion.as_ref().map(rat_to_wire),
            text: self.to_string(),
        }
    }

    pub fn from_wire(w: &WordWire) -> Result<InvariantWord> {
        Ok(InvariantWord {
            entries: w.entries.iter().map(|(n, s)| Ok((rat_from_str(n)?, *s))).collect::<Result<_>>()?,
            terminal: w.terminal,
            companion: w.companion.as_deref().map(rat_from_str).transpose()?,
        })
    }
}

/// Word order with the companion tie-break for equal words ending in zero.
pub fn word_compare(a: &InvariantWord, b: &InvariantWord) -> Ordering {
    a.cmp_word(b).then_with(|| match (a.terminal, &a.companion, &b.companion) {
        (Terminal::Zero, Some(x), Some(y)) => x.cmp(y),
        _ => Ordering::Equal,
    })
}

impl fmt::Display for InvariantWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, s) in &self.entries {
            write!(f, "{},{}; ", rat_display(n), s)?;
        }
        match self.terminal {
            Terminal::Zero => write!(f, "0)"),
            Terminal::Infinity => write!(f, "inf)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordWire {
    pub entries: Vec<(String, u32)>,
    pub terminal: Terminal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub companion: Option<String>,
    pub text: String,
}

impl Serialize for InvariantWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvariantWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WordWire::deserialize(d)?;
        InvariantWord::from_wire(&w).map_err(serde::de::Error::custom)
    }
}

/// Saturating `e!` used by the denominator bound; `None` means "too large to matter".
fn factorial_capped(e: &BigInt) -> Option<BigInt> {
    let e = e.to_u64()?;
    if e > 40 {
        return None;
    }
    Some((1..=e).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// `e_r! · ν_r ∈ ℕ` along the word, with `e_2 = ν_1`, `e_{r+1} = max(e_r!, e_r! · ν_r)`,
/// and the same test for the companion value against `e_{t+1}`.
pub fn e_bounds_check(w: &InvariantWord) -> bool {
    let Some((nu1, _)) = w.entries.first() else { return false };
    if !nu1.is_integer() || !nu1.is_positive() {
        return false;
    }
    // None stands for an integer so large that every small denominator divides its factorial
    let mut e: Option<BigInt> = Some(nu1.to_integer());
    let check = |e: &Option<BigInt>, v: &Rational| -> (bool, Option<BigInt>) {
        match e {
            None => (true, None),
            Some(e) => {
                let den = v.denom();
                if den <= e {
                    let f = factorial_capped(e);
                    let next = f.map(|f| {
                        let prod = (Rational::from_integer(f.clone()) * v).to_integer();
                        if prod > f {
                            prod
                        } else {
                            f
                        }
                    });
                    (true, next)
                } else {
                    let f = factorial_capped(e).expect("small e");
                    let prod = Rational::from_integer(f.clone()) * v;
                    let ok = prod.is_integer();
                    let next = prod.to_integer().max(f);
                    (ok, Some(next))
                }
            }
        }
    };
    for (nu, _) in &w.entries[1..] {
        if !nu.is_positive() {
            return false;
        }
        let (ok, next) = check(&e, nu);
        if !ok {
            return false;
        }
        e = next;
    }
    if let (Terminal::Zero, Some(mu)) = (w.terminal, &w.companion) {
        return check(&e, mu).0;
    }
    true
}

/// A marked function `(h, μ_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPair {
    pub h: Poly,
    pub mu: Rational,
}

impl MarkedPair {
    pub fn new(h: Poly, mu: Rational) -> MarkedPair {
        MarkedPair { h, mu }
    }
}

/// A smooth subvariety of a chart written as a graph over some of the chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub vars: Vars,
    /// Chart index of each frame coordinate.
    pub keep: Vec<usize>,
    /// Chart coordinates as polynomials on the frame.
    pub embed: Vec<Poly>,
}

impl Frame {
    pub fn chart(vars: &Vars) -> Frame {
        Frame {
            vars: vars.clone(),
            keep: (0..vars.len()).collect(),
            embed: (0..vars.len()).map(|i| Poly::var(vars.clone(), i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn restrict(&self, p: &Poly) -> Poly {
        p.compose(&self.embed)
    }

    /// Frame polynomial read as a chart polynomial through the coordinate projection.
    pub fn lift(&self, p: &Poly, chart: &Vars) -> Poly {
        if self.vars.is_empty() {
            return Poly::constant(chart.clone(), p.constant_value().unwrap_or_else(Rational::zero));
        }
        let images: Vec<Poly> = self.keep.iter().map(|&i| Poly::var(chart.clone(), i)).collect();
        p.compose(&images)
    }

    /// Defining ideal of the frame in chart coordinates.
    pub fn ideal(&self, chart: &Vars) -> Vec<Poly> {
        (0..chart.len())
            .filter(|i| !self.keep.contains(i))
            .map(|i| &Poly::var(chart.clone(), i) - &self.lift(&self.embed[i], chart))
            .collect()
    }

    /// Sub-frame `φ = 0` when `φ = c·y_k + r` with `r` free of `y_k`; also returns the
    /// images of the current frame coordinates on the sub-frame.
    pub fn solve(&self, phi: &Poly) -> Option<(Frame, Vec<Poly>)> {
        for k in (0..self.dim()).rev() {
            let Some((c, r)) = phi.solve_linear(k) else { continue };
            let names: Vec<String> = (0..self.dim()).filter(|&i| i != k).map(|i| self.vars[i].clone()).collect();
            let sub: Vars = names.into();
            let pos = |i: usize| if i < k { i } else { i - 1 };
            let down: Vec<Poly> = (0..self.dim())
                .map(|i| if i == k { Poly::zero(sub.clone()) } else { Poly::var(sub.clone(), pos(i)) })
                .collect();
            let mut images = down.clone();
            images[k] = -&r.compose(&down).scale(&c.recip());
            if sub.is_empty() {
                images = images.to_vec();
            }
            let embed = self.embed.iter().map(|p| compose_into(p, &images, &sub)).collect();
            let keep = (0..self.dim()).filter(|&i| i != k).map(|i| self.keep[i]).collect();
            return Some((Frame { vars: sub, keep, embed }, images));
        }
        None
    }
}

/// `p ∘ images`, valid also when the target ring has no variables.
fn compose_into(p: &Poly, images: &[Poly], target: &Vars) -> Poly {
    if target.is_empty() {
        let vals: Vec<Rational> = images.iter().map(|q| q.constant_value().unwrap_or_else(Rational::zero)).collect();
        return Poly::constant(target.clone(), p.eval(&vals).expect("arity"));
    }
    p.compose(images)
}

fn restrict_locus(l: &Locus, images: &[Poly], target: &Vars) -> Locus {
    Locus {
        vars: target.clone(),
        eqs: l.eqs.iter().map(|p| compose_into(p, images, target)).filter(|p| !p.is_zero()).collect(),
        units: l.units.iter().map(|p| compose_into(p, images, target)).collect(),
    }
}

/// Integer directions: coordinate axes from the last one, then primitive vectors by growing max-norm.
pub fn witness_directions(n: usize, bound: u32) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n)
        .rev()
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    if n < 2 {
        return out;
    }
    for norm in 1..=bound as i64 {
        let mut cur = vec![-norm; n];
        loop {
            let max = cur.iter().map(|x| x.abs()).max().unwrap_or(0);
            let nonzero = cur.iter().filter(|&&x| x != 0).count();
            let first_pos = cur.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
            let g = cur.iter().fold(0i64, |g, &x| g.gcd(&x));
            if max == norm && nonzero >= 2 && first_pos && g == 1 {
                out.push(cur.clone());
            }
            // odometer step, last coordinate fastest
            let Some(i) = (0..n).rev().find(|&i| cur[i] < norm) else { break };
            cur[i] += 1;
            for c in cur.iter_mut().skip(i + 1) {
                *c = -norm;
            }
        }
    }
    out
}

/// Divisor data visible in one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDivisor {
    pub id: DivisorId,
    pub birth: u32,
    pub factors: Vec<Poly>,
}

/// Everything the invariant needs to know about one chart.
#[derive(Clone, Debug)]
pub struct ChartView {
    pub id: ChartId,
    pub vars: Vars,
    pub gens: Vec<Poly>,
    pub divisors: Vec<LocalDivisor>,
    /// Preimage in this chart of each earlier year's center (`None` where it misses the chart).
    pub past_centers: Vec<Option<Vec<Poly>>>,
    /// The chart is the open set where these do not vanish.
    pub units: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantConfig {
    pub witness_bound: u32,
    /// Skip this many valid maximal-contact witnesses when more are available.
    pub witness_skip: usize,
    pub kmax: u32,
}

impl Default for InvariantConfig {
    fn default() -> Self {
        InvariantConfig { witness_bound: 3, witness_skip: 0, kmax: 64 }
    }
}

#[derive(Clone, Debug)]
struct HereDivisor {
    id: DivisorId,
    birth: u32,
    /// Local factor through the piece, in chart coordinates.
    theta: Poly,
}

#[derive(Clone, Debug)]
struct State {
    view: usize,
    frame: Frame,
    locus: Locus,
    done: Vec<(Rational, u32)>,
    nu: Rational,
    pairs: Vec<MarkedPair>,
    here: Vec<HereDivisor>,
    /// Indices into `here` still available for later splittings.
    erest: Vec<usize>,
    in_center: Vec<bool>,
}

/// A piece of the maximum locus with its final word data.
#[derive(Clone, Debug)]
pub struct FinalPiece {
    pub chart: ChartId,
    /// Closure of the piece in chart coordinates.
    pub closure: Vec<Poly>,
    pub companion: Option<Rational>,
    pub divisors: Vec<DivisorId>,
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub word: InvariantWord,
    pub pieces: Vec<FinalPiece>,
}

struct Engine<'a> {
    views: &'a [ChartView],
    history: &'a [InvariantWord],
    cfg: &'a InvariantConfig,
    keep_max: bool,
}

fn ext_of(nu: &Option<Rational>) -> ExtRat {
    match nu {
        Some(r) => ExtRat::Fin(r.clone()),
        None => ExtRat::Infinity,
    }
}

enum Step {
    Continue(State),
    Done(State, Terminal, Option<Rational>),
}

impl Engine<'_> {
    fn year(&self) -> usize {
        self.history.len()
    }

    /// Splits by divisor membership and by earlier centers.
    fn split_history(&self, st: State) -> Result<Vec<State>> {
        let view = &self.views[st.view];
        let mut states = vec![st];
        for d in &view.divisors {
            let mut next = Vec::new();
            for s in states {
                let mut rest = Some(s.locus.clone());
                for f in &d.factors {
                    let Some(cur) = rest.take() else { break };
                    let (on, off) = cur.split(&s.frame.restrict(f))?;
                    if let Some(on) = on {
                        let mut t = s.clone();
                        t.locus = on;
                        t.erest.push(t.here.len());
                        t.here.push(HereDivisor { id: d.id, birth: d.birth, theta: f.clone() });
                        next.push(t);
                    }
                    rest = off;
                }
                if let Some(off) = rest {
                    let mut t = s.clone();
                    t.locus = off;
                    next.push(t);
                }
            }
            states = next;
        }
        for (m, c) in view.past_centers.iter().enumerate() {
            let mut next = Vec::new();
            for s in states {
                match c {
                    None => {
                        let mut t = s;
                        t.in_center.push(false);
                        next.push(t);
                    }
                    Some(gens) => {
                        let (on, off) = split_by_ideal(&s.locus, &gens.iter().map(|g| s.frame.restrict(g)).collect::<Vec<_>>())?;
                        for (part, flag) in on.into_iter().map(|l| (l, true)).chain(off.into_iter().map(|l| (l, false))) {
                            let mut t = s.clone();
                            t.locus = part;
                            t.in_center.push(flag);
                            next.push(t);
                        }
                    }
                }
            }
            states = next;
            debug_assert!(states.iter().all(|s| s.in_center.len() == m + 1));
        }
        Ok(states)
    }

    /// Smallest year with the same `(ν1, s1; …; ν_r)` along the point's image trail.
    fn matching_year(&self, st: &State) -> usize {
        let mut i = self.year();
        for m in (0..self.year()).rev() {
            if st.in_center[m] {
                if self.history[m].matches_prefix(&st.done, &st.nu) {
                    i = m;
                } else {
                    break;
                }
            } else {
                i = m;
            }
        }
        i
    }

    /// Computes `s_r`, then the next ν; may split the state.
    fn advance(&self, mut st: State) -> Result<Vec<Step>> {
        let i = self.matching_year(&st) as u32;
        let (taken, rest): (Vec<usize>, Vec<usize>) = st.erest.iter().partition(|&&k| st.here[k].birth <= i);
        let s = taken.len() as u32;
        st.done.push((st.nu.clone(), s));
        st.erest = rest;
        let mut f = st.pairs.clone();
        for &k in &taken {
            f.push(MarkedPair::new(st.frame.restrict(&st.here[k].theta), Rational::one()));
        }
        let mut out = Vec::new();
        for (frame, locus, cascade) in self.contact(&st, &f)? {
            let mut t = st.clone();
            t.frame = frame;
            t.locus = locus;
            out.extend(self.next_nu(t, cascade)?);
        }
        Ok(out)
    }

    /// Maximal contact for `F` on the state's piece, possibly split into sub-pieces.
    /// Returns the frame, the piece on it and the coefficient pairs there.
    fn contact(&self, st: &State, f: &[MarkedPair]) -> Result<Vec<Branch>> {
        let f: Vec<MarkedPair> = f.iter().filter(|p| !p.h.is_zero()).cloned().collect();
        if f.is_empty() || (f.len() == 1 && f[0].mu.is_one()) {
            // the coefficient collection is empty whatever contact is chosen
            return Ok(vec![(st.frame.clone(), st.locus.clone(), None)]);
        }
        let dirs = witness_directions(st.frame.dim(), self.cfg.witness_bound);
        let mut cands: Vec<(usize, Vec<i64>, Poly)> = Vec::new();
        for (k, p) in f.iter().enumerate() {
            if !p.mu.is_integer() {
                continue;
            }
            let mu = p.mu.to_integer().to_u32().unwrap_or(u32::MAX);
            for v in &dirs {
                let w = p.h.directional_pow(v, mu);
                if !w.is_zero() {
                    cands.push((k, v.clone(), w));
                }
            }
        }
        // prefer witnesses valid on the whole piece
        let mut full = Vec::new();
        for (k, v, w) in &cands {
            if !st.locus.avoids(w)? {
                continue;
            }
            if let Some(att) = self.attach(st, &f, *k, v, &st.locus)? {
                full.push(att);
                if full.len() > self.cfg.witness_skip {
                    break;
                }
            }
        }
        if let Some(att) = full.into_iter().last() {
            return Ok(att);
        }
        let mut remaining = Some(st.locus.clone());
        let mut out = Vec::new();
        for (k, v, w) in &cands {
            let Some(rem) = remaining.clone() else { break };
            let (on, off) = rem.split(w)?;
            let Some(off) = off else { continue };
            if let Some(att) = self.attach(st, &f, *k, v, &off)? {
                out.extend(att);
                remaining = on;
            }
        }
        if remaining.is_some() {
            return Err(Error::NoWitness {
                what: format!("maximal contact on a piece of chart {}", self.views[st.view].id),
                bound: self.cfg.witness_bound,
            });
        }
        Ok(out)
    }

    /// Builds the sub-frame `∂_v^{μ-1} f_k = 0` over `piece` and the cascade of `F` on it.
    fn attach(
        &self,
        st: &State,
        f: &[MarkedPair],
        k: usize,
        v: &[i64],
        piece: &Locus,
    ) -> Result<Option<Vec<Branch>>> {
        // The contact direction must be tangent to every divisor that is still
        // split off as a monomial factor; otherwise the coefficients stop being
        // divisible by the exceptional equations and the orders along them change.
        for &e in &st.erest {
            let t = st.frame.restrict(&st.here[e].theta);
            if t.is_constant() {
                continue;
            }
            let dt = t.directional(v);
            if !dt.is_zero() && dt.divide_exact(&t).is_none() {
                return Ok(None);
            }
        }
        let mu = f[k].mu.to_integer().to_u32().unwrap();
        let phi = f[k].h.directional_pow(v, mu - 1);
        let phi = strip_unit_factor(&phi, piece)?.unwrap_or(phi);
        let mut branches: Vec<(Poly, Locus)> = Vec::new();
        if st.frame.solve(&phi).is_some() {
            branches.push((phi.clone(), piece.clone()));
        } else {
            let used: Vec<usize> = (0..st.frame.dim()).filter(|&i| phi.uses_var(i)).collect();
            if used.len() != 1 {
                return Ok(None);
            }
            let y = used[0];
            let vars = st.frame.vars.clone();
            let mut rest = Some(piece.clone());
            for r in rational_roots(&phi, y) {
                let lin = &Poly::var(vars.clone(), y) - &Poly::constant(vars.clone(), r);
                let Some(cur) = rest.take() else { break };
                let (on, off) = cur.split(&lin)?;
                if let Some(on) = on {
                    branches.push((lin, on));
                }
                rest = off;
            }
            if rest.is_some() {
                return Ok(None);
            }
        }
        let mut out = Vec::new();
        for (phi, part) in branches {
            let (frame, images) = st.frame.solve(&phi).expect("solvable branch");
            for &e in &st.erest {
                if frame.restrict(&st.here[e].theta).is_zero() {
                    return Ok(None);
                }
            }
            let mut cascade = Vec::new();
            for p in f {
                let mut q = 0u32;
                let mut d = p.h.clone();
                while Rational::from_integer(BigInt::from(q)) < p.mu {
                    let h = compose_into(&d, &images, &frame.vars);
                    if !h.is_zero() {
                        cascade.push(MarkedPair::new(h, &p.mu - Rational::from_integer(BigInt::from(q))));
                    }
                    d = d.directional(v);
                    q += 1;
                }
            }
            let locus = restrict_locus(&part, &images, &frame.vars);
            out.push((frame, locus, Some(cascade)));
        }
        Ok(Some(out))
    }

    /// Maximum of the next ν over the piece, restricting the piece to where it is attained.
    fn next_nu(&self, mut st: State, cascade: Option<Vec<MarkedPair>>) -> Result<Vec<Step>> {
        let Some(h) = cascade.filter(|c| !c.is_empty()) else {
            return Ok(vec![Step::Done(st, Terminal::Infinity, None)]);
        };
        let (mu, locus) = max_ratio(&h, &st.locus, self.cfg.kmax)?;
        st.locus = locus;
        let mut sum = Rational::zero();
        let mut exps: Vec<(Poly, Rational)> = Vec::new();
        for &e in &st.erest {
            let t = local_factor(&st.frame.restrict(&st.here[e].theta), &st.locus)?;
            let m = h
                .iter()
                .map(|p| Rational::from_integer(BigInt::from(p.h.divisibility_order(&t).0)) / &p.mu)
                .min()
                .unwrap();
            sum += &m;
            exps.push((t, m));
        }
        let nu = &mu - &sum;
        if nu.is_negative() {
            return Err(Error::Inconsistent(format!("negative ν after companion subtraction: {mu} - {sum}")));
        }
        if nu.is_zero() {
            return Ok(vec![Step::Done(st, Terminal::Zero, Some(mu))]);
        }
        st.pairs = monomial_divide_scaled(&h, &exps, &nu);
        st.nu = nu;
        Ok(vec![Step::Continue(st)])
    }

    fn run(&self, initial: Vec<State>) -> Result<Option<Evaluation>> {
        let mut active: Vec<State> = Vec::new();
        for s in initial {
            active.extend(self.split_history(s)?);
        }
        let mut finished: Vec<(State, Terminal, Option<Rational>)> = Vec::new();
        while !active.is_empty() {
            let mut steps = Vec::new();
            for s in active.drain(..) {
                steps.extend(self.advance(s)?);
            }
            // maximum of (s_r, ν_{r+1}) over all steps; all share the earlier prefix
            let key = |s: &Step| -> (u32, ExtRat) {
                match s {
                    Step::Continue(st) => (st.done.last().unwrap().1, ExtRat::Fin(st.nu.clone())),
                    Step::Done(st, Terminal::Zero, _) => (st.done.last().unwrap().1, ExtRat::Fin(Rational::zero())),
                    Step::Done(st, Terminal::Infinity, _) => (st.done.last().unwrap().1, ExtRat::Infinity),
                }
            };
            let best = steps.iter().map(key).max();
            let Some(best) = best else { break };
            for s in steps {
                if self.keep_max && key(&s) != best {
                    continue;
                }
                match s {
                    Step::Continue(st) => active.push(st),
                    Step::Done(st, t, c) => finished.push((st, t, c)),
                }
            }
            if !self.keep_max && finished.len() + active.len() > 1 {
                return Err(Error::Inconsistent("a point evaluation split into several pieces".into()));
            }
        }
        let Some((first, term, _)) = finished.first() else { return Ok(None) };
        let entries = first.done.clone();
        let terminal = *term;
        let companion = finished.iter().filter_map(|(_, _, c)| c.clone()).max();
        let mut pieces = Vec::new();
        for (st, _, c) in &finished {
            let view = &self.views[st.view];
            let closure = st.locus.closure()?;
            let mut gens: Vec<Poly> = closure.nonzero_gens().iter().map(|p| st.frame.lift(p, &view.vars)).collect();
            gens.extend(st.frame.ideal(&view.vars));
            if gens.is_empty() {
                gens.push(Poly::zero(view.vars.clone()));
            }
            pieces.push(FinalPiece {
                chart: view.id,
                closure: gens,
                companion: c.clone(),
                divisors: st.here.iter().map(|d| d.id).collect(),
            });
        }
        Ok(Some(Evaluation { word: InvariantWord { entries, terminal, companion }, pieces }))
    }
}

fn split_by_ideal(l: &Locus, gens: &[Poly]) -> Result<(Option<Locus>, Vec<Locus>)> {
    if gens.iter().all(|g| g.is_zero()) {
        return Ok((Some(l.clone()), Vec::new()));
    }
    let inside = {
        let mut ok = true;
        for g in gens {
            if !l.inside(g)? {
                ok = false;
                break;
            }
        }
        ok
    };
    if inside {
        return Ok((Some(l.clone()), Vec::new()));
    }
    let on = l.cut_all(gens);
    let on = if on.is_nonempty()? { Some(on) } else { None };
    // the complement of V(gens) is covered by the pieces where one generator is nonzero
    let mut off = Vec::new();
    let mut rest = l.clone();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let piece = rest.remove(g);
        if piece.is_nonempty()? {
            off.push(piece);
        }
        rest = rest.cut(g);
    }
    Ok((on, off))
}

/// `φ / c` when `φ = c·y_k + r` with `c | r` and `c` free of zeros on the piece.
fn strip_unit_factor(phi: &Poly, piece: &Locus) -> Result<Option<Poly>> {
    for k in (0..phi.nvars()).rev() {
        if phi.degree_in(k) != 1 {
            continue;
        }
        let y = Poly::var(phi.vars().clone(), k);
        let zero_k: Vec<Poly> = (0..phi.nvars())
            .map(|i| if i == k { Poly::zero(phi.vars().clone()) } else { Poly::var(phi.vars().clone(), i) })
            .collect();
        let r = phi.compose(&zero_k);
        let Some(c) = (phi - &r).divide_exact(&y) else { continue };
        if c.is_constant() || c.uses_var(k) {
            continue;
        }
        let Some(q) = r.divide_exact(&c) else { continue };
        if piece.avoids(&c)? {
            return Ok(Some(&y + &q));
        }
    }
    Ok(None)
}

/// The factor of `t` through the piece when `t` splits over rational values of one coordinate.
fn local_factor(t: &Poly, piece: &Locus) -> Result<Poly> {
    let used: Vec<usize> = (0..t.nvars()).filter(|&i| t.uses_var(i)).collect();
    if used.len() != 1 || t.degree_in(used[0]) < 2 {
        return Ok(t.clone());
    }
    let y = used[0];
    let vars = t.vars().clone();
    for r in rational_roots(t, y) {
        let lin = &Poly::var(vars.clone(), y) - &Poly::constant(vars.clone(), r);
        if piece.inside(&lin)? {
            return Ok(lin);
        }
    }
    Ok(t.clone())
}

/// Largest `k` with `h` of order `≥ k` somewhere on the piece.
fn max_order_on(h: &Poly, piece: &Locus, kmax: u32) -> Result<u32> {
    let mut k = 0;
    loop {
        if k >= kmax {
            return Err(Error::BudgetExceeded(format!("order on a stratum exceeds kmax = {kmax}")));
        }
        let d = derivative_ideal(h, k + 1);
        if !piece.cut_all(&d.nonzero_gens()).is_nonempty()? {
            return Ok(k);
        }
        k += 1;
    }
}

fn ceil_u32(r: &Rational) -> u32 {
    r.ceil().to_integer().to_u32().unwrap_or(0)
}

/// `max_a min_h ord_a(h)/μ_h` over the piece and the part of the piece where it is attained.
fn max_ratio(pairs: &[MarkedPair], piece: &Locus, kmax: u32) -> Result<(Rational, Locus)> {
    let mut cands: Vec<Rational> = Vec::new();
    for p in pairs {
        let top = max_order_on(&p.h, piece, kmax)?;
        for k in 0..=top {
            cands.push(Rational::from_integer(BigInt::from(k)) / &p.mu);
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands.into_iter().rev() {
        let mut l = piece.clone();
        for p in pairs {
            let need = ceil_u32(&(&c * &p.mu));
            if need > 0 {
                l = l.cut_all(&derivative_ideal(&p.h, need).nonzero_gens());
            }
        }
        if l.is_nonempty()? {
            return Ok((c, l));
        }
    }
    Err(Error::Inconsistent("empty piece in ν search".into()))
}

/// Common scaling, removal of the exceptional monomial and the final normalization `μ ↦ M·ν`.
fn monomial_divide_scaled(h: &[MarkedPair], exps: &[(Poly, Rational)], nu: &Rational) -> Vec<MarkedPair> {
    let m = h.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.mu.numer()));
    let mr = Rational::from_integer(m);
    let scaled: Vec<MarkedPair> = h
        .iter()
        .map(|p| {
            let k = (&mr / &p.mu).to_integer().to_u32().expect("integral scaling");
            MarkedPair::new(p.h.pow(k), mr.clone())
        })
        .collect();
    let thetas: Vec<Poly> = exps.iter().map(|(t, _)| t.clone()).collect();
    let divided = monomial_divide(&scaled, &thetas);
    divided.into_iter().map(|p| MarkedPair::new(p.h, &mr * nu)).collect()
}

/// Removes from pairs sharing one μ the largest common power product of the `thetas`.
pub fn monomial_divide(pairs: &[MarkedPair], thetas: &[Poly]) -> Vec<MarkedPair> {
    let mut out: Vec<MarkedPair> = pairs.to_vec();
    for t in thetas {
        if t.is_constant() {
            continue;
        }
        let e = out.iter().map(|p| p.h.divisibility_order(t).0).min().unwrap_or(0);
        if e == 0 {
            continue;
        }
        let te = t.pow(e);
        for p in &mut out {
            p.h = p.h.divide_exact(&te).expect("common power divides");
        }
    }
    out
}

/// `μ_h ↦ μ_h · ν`.
pub fn scale_pairs(pairs: &[MarkedPair], nu: &ExtRat) -> Result<Vec<MarkedPair>> {
    match nu {
        ExtRat::Fin(r) if r.is_positive() => Ok(pairs.iter().map(|p| MarkedPair::new(p.h.clone(), &p.mu * r)).collect()),
        _ => Err(Error::InvalidArgument(format!("scaling needs a finite positive ν, got {nu}"))),
    }
}

/// `min ord_a(h)/μ_h` at a point of the pairs' ring; infinity for no pairs or all-zero pairs.
pub fn nu_next(pairs: &[MarkedPair], a: &[Rational]) -> Result<ExtRat> {
    let mut best: Option<Rational> = None;
    for p in pairs {
        if let Some(o) = p.h.order_at_point(a)?.finite() {
            let v = Rational::from_integer(BigInt::from(o)) / &p.mu;
            best = Some(best.map_or(v.clone(), |b| b.min(v)));
        }
    }
    Ok(ext_of(&best))
}

/// Splits `E(a)` into the divisors born no later than year `i` and the rest.
pub fn divisor_split(here: &[(DivisorId, u32)], i: u32, year: u32) -> Result<(Vec<DivisorId>, u32, Vec<DivisorId>)> {
    if let Some((id, b)) = here.iter().find(|(_, b)| *b > year) {
        return Err(Error::Inconsistent(format!("divisor {id} born in year {b} after year {year}")));
    }
    let (e1, rest): (Vec<&DivisorBirth>, Vec<&DivisorBirth>) = here.iter().partition(|(_, b)| *b <= i);
    Ok((e1.iter().map(|d| d.0).collect(), e1.len() as u32, rest.iter().map(|d| d.0).collect()))
}

/// `(μ, ν, μ_H)` at a point: `ν = μ − Σ μ_H` with `μ_H = min ord_H(h)/μ_h`.
pub fn companion_subtract(
    pairs: &[MarkedPair],
    thetas: &[Poly],
    a: &[Rational],
) -> Result<(ExtRat, ExtRat, Vec<Rational>)> {
    let mu = nu_next(pairs, a)?;
    let ExtRat::Fin(m) = &mu else { return Ok((ExtRat::Infinity, ExtRat::Infinity, Vec::new())) };
    let mut per = Vec::new();
    let mut sum = Rational::zero();
    let live: Vec<&MarkedPair> = pairs.iter().filter(|p| !p.h.is_zero()).collect();
    for t in thetas {
        let v = live
            .iter()
            .map(|p| Rational::from_integer(BigInt::from(p.h.divisibility_order(t).0)) / &p.mu)
            .min()
            .unwrap_or_else(Rational::zero);
        sum += &v;
        per.push(v);
    }
    let nu = m - &sum;
    if nu.is_negative() {
        return Err(Error::Inconsistent("negative ν".into()));
    }
    Ok((mu, ExtRat::Fin(nu), per))
}

/// Result of a maximal-contact search.
#[derive(Clone, Debug)]
pub struct Contact {
    pub direction: Vec<i64>,
    pub phi: Poly,
    pub frame: Frame,
    /// Images of the chart coordinates on the contact hypersurface.
    pub images: Vec<Poly>,
}

/// First direction `v` with `∂_v^d g` zero-free on the stratum and `∂_v^{d-1} g` a graph.
pub fn maximal_contact(g: &Poly, d: u32, stratum: &Locus, bound: u32) -> Result<Contact> {
    if d < 1 {
        return Err(Error::InvalidArgument("maximal contact needs d >= 1".into()));
    }
    let frame = Frame::chart(g.vars());
    for v in witness_directions(g.nvars(), bound) {
        let w = g.directional_pow(&v, d);
        if w.is_zero() || !stratum.avoids(&w)? {
            continue;
        }
        let phi = g.directional_pow(&v, d - 1);
        if let Some((sub, images)) = frame.solve(&phi) {
            return Ok(Contact { direction: v, phi, frame: sub, images });
        }
    }
    Err(Error::NoWitness { what: format!("maximal contact for {g}"), bound })
}

/// `{(∂_v^q g |_N, d − q) : q = 0..d−2}`, dropping pairs that vanish on `N`.
pub fn coefficient_pairs(g: &Poly, d: u32, contact: &Contact) -> Vec<MarkedPair> {
    let mut out = Vec::new();
    let mut cur = g.clone();
    for q in 0..d.saturating_sub(1) {
        let h = compose_into(&cur, &contact.images, &contact.frame.vars);
        if !h.is_zero() {
            out.push(MarkedPair::new(h, Rational::from_integer(BigInt::from(d - q))));
        }
        cur = cur.directional(&contact.direction);
    }
    out
}

/// One contact step for pairs normalized to `μ = 1` on a frame: new frame and its pairs.
pub fn recurse_presentation(
    pairs: &[MarkedPair],
    frame: &Frame,
    piece: &Locus,
    bound: u32,
) -> Result<(Frame, Vec<MarkedPair>)> {
    let views = [ChartView {
        id: 0,
        vars: frame.vars.clone(),
        gens: Vec::new(),
        divisors: Vec::new(),
        past_centers: Vec::new(),
        units: Vec::new(),
    }];
    let cfg = InvariantConfig { witness_bound: bound, ..Default::default() };
    let eng = Engine { views: &views, history: &[], cfg: &cfg, keep_max: false };
    let st = State {
        view: 0,
        frame: frame.clone(),
        locus: piece.clone(),
        done: Vec::new(),
        nu: Rational::one(),
        pairs: pairs.to_vec(),
        here: Vec::new(),
        erest: Vec::new(),
        in_center: Vec::new(),
    };
    let mut res = eng.contact(&st, pairs)?;
    if res.len() != 1 {
        return Err(Error::InvalidArgument("the piece needs several contact witnesses".into()));
    }
    let (f, _, c) = res.pop().unwrap();
    Ok((f, c.unwrap_or_default()))
}

fn ideal_order_locus(gens: &[Poly], k: u32) -> Vec<Poly> {
    gens.iter().flat_map(|g| derivative_ideal(g, k).nonzero_gens()).collect()
}

/// Largest `k` such that all generators have order `≥ k` somewhere in the chart.
fn max_ideal_order(gens: &[Poly], units: &[Poly], kmax: u32) -> Result<u32> {
    let vars = gens[0].vars().clone();
    let whole = Locus { vars, eqs: Vec::new(), units: units.to_vec() };
    let mut k = 0;
    loop {
        if k >= kmax {
            return Err(Error::BudgetExceeded(format!("order exceeds kmax = {kmax}")));
        }
        if !whole.cut_all(&ideal_order_locus(gens, k + 1)).is_nonempty()? {
            return Ok(k);
        }
        k += 1;
    }
}

fn fresh_state(view: usize, v: &ChartView, locus: Locus, d: u32) -> State {
    State {
        view,
        frame: Frame::chart(&v.vars),
        locus,
        done: Vec::new(),
        nu: Rational::from_integer(BigInt::from(d)),
        pairs: v
            .gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| MarkedPair::new(g.clone(), Rational::from_integer(BigInt::from(d))))
            .collect(),
        here: Vec::new(),
        erest: Vec::new(),
        in_center: Vec::new(),
    }
}

/// Invariant at a rational point of a chart; `None` when the point is off the transform.
pub fn invariant_at_point(
    view: &ChartView,
    history: &[InvariantWord],
    a: &[Rational],
    cfg: &InvariantConfig,
) -> Result<Option<InvariantWord>> {
    if a.len() != view.vars.len() {
        return Err(Error::DimensionMismatch { expected: view.vars.len(), found: a.len() });
    }
    let mut d: Option<u32> = None;
    for g in view.gens.iter().filter(|g| !g.is_zero()) {
        let o = g.order_at_point(a)?.finite().unwrap_or(u32::MAX);
        d = Some(d.map_or(o, |x| x.min(o)));
    }
    let d = d.unwrap_or(0);
    if d == 0 {
        return Ok(None);
    }
    let views = std::slice::from_ref(view);
    let eng = Engine { views, history, cfg, keep_max: false };
    let st = fresh_state(0, view, Locus::point(view.vars.clone(), a), d);
    Ok(eng.run(vec![st])?.map(|e| e.word))
}

/// Maximum of the invariant over all charts (no extension).
pub fn evaluate_maximum(
    views: &[ChartView],
    history: &[InvariantWord],
    cfg: &InvariantConfig,
) -> Result<Option<Evaluation>> {
    let mut orders = Vec::new();
    for v in views {
        let gens: Vec<Poly> = v.gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Err(Error::InvalidArgument(format!("zero transform in chart {}", v.id)));
        }
        orders.push(max_ideal_order(&gens, &v.units, cfg.kmax)?);
    }
    let Some(&top) = orders.iter().max() else { return Ok(None) };
    if top == 0 {
        return Ok(None);
    }
    let mut initial = Vec::new();
    for (k, v) in views.iter().enumerate() {
        if orders[k] == top {
            let locus = Locus { vars: v.vars.clone(), eqs: ideal_order_locus(&v.gens, top), units: v.units.clone() };
            initial.push(fresh_state(k, v, locus, top));
        }
    }
    let eng = Engine { views, history, cfg, keep_max: true };
    eng.run(initial)
}

/// Maximum stratum with the extended invariant when the word ends in zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumReport {
    pub word: InvariantWord,
    /// Locus per chart (chart id → generators of a radical ideal).
    pub locus: BTreeMap<ChartId, Vec<Poly>>,
    pub j: Vec<DivisorId>,
    pub smooth: bool,
}

/// Order on divisor subsets: older birth years weigh more, then reverse lexicographic ids.
pub fn cmp_subsets(a: &[(DivisorId, u32)], b: &[(DivisorId, u32)]) -> Ordering {
    let mut ba: Vec<u32> = a.iter().map(|d| d.1).collect();
    let mut bb: Vec<u32> = b.iter().map(|d| d.1).collect();
    ba.sort();
    bb.sort();
    for (x, y) in ba.iter().zip(&bb) {
        if x != y {
            // an older divisor weighs more
            return y.cmp(x);
        }
    }
    match ba.len().cmp(&bb.len()) {
        Ordering::Equal => {}
        o => return o,
    }
    let mut ia: Vec<DivisorId> = a.iter().map(|d| d.0).collect();
    let mut ib: Vec<DivisorId> = b.iter().map(|d| d.0).collect();
    ia.sort();
    ib.sort();
    ia.reverse();
    ib.reverse();
    ib.cmp(&ia)
}

fn is_smooth(gens: &[Poly]) -> Result<bool> {
    let id = Ideal::new(gens.to_vec())?;
    if is_unit_ideal(&id)? {
        return Ok(true);
    }
    let vars = id.vars().clone();
    let n = vars.len();
    let q = n - dim_ideal(&id)?;
    if q == 0 {
        return Ok(true);
    }
    let gb = groebner(&id, MonomialOrder::DegRevLex)?;
    jacobian_smooth(&Ideal::new(gb.basis)?, q, &Ideal::zero(vars))
}

/// Maximum stratum over all charts, extended by `J(a)` when the word ends in zero.
pub fn max_stratum(
    views: &[ChartView],
    history: &[InvariantWord],
    cfg: &InvariantConfig,
) -> Result<Option<StratumReport>> {
    let Some(ev) = evaluate_maximum(views, history, cfg)? else { return Ok(None) };
    let mut per_chart: BTreeMap<ChartId, Vec<Ideal>> = BTreeMap::new();
    for p in &ev.pieces {
        per_chart.entry(p.chart).or_default().push(Ideal::new(p.closure.clone())?);
    }
    let mut locus: BTreeMap<ChartId, Vec<Poly>> = BTreeMap::new();
    for (c, parts) in &per_chart {
        let vars = parts[0].vars().clone();
        let u = crate::geometry::union_ideal(&vars, parts)?;
        locus.insert(*c, radical(&u)?.gens().to_vec());
    }
    let mut j = Vec::new();
    if ev.word.terminal == Terminal::Zero {
        // Components of S are the maximal smooth intersections S ∩ ⋂I; the
        // center is the union of those whose divisor set J(Z) is largest.
        let mut comps: Vec<(ChartId, Ideal, Vec<DivisorBirth>)> = Vec::new();
        for (c, s) in &locus {
            let view = views.iter().find(|v| v.id == *c).unwrap();
            let eqs: Vec<Poly> = view
                .divisors
                .iter()
                .map(|d| d.factors.iter().fold(Poly::one(view.vars.clone()), |a, f| &a * f))
                .collect();
            let mut cands: Vec<Ideal> = Vec::new();
            for k in 0..=eqs.len() {
                for sub in subsets(eqs.len(), k) {
                    let mut gens = s.clone();
                    gens.extend(sub.iter().map(|&i| eqs[i].clone()));
                    let id = Ideal::new(gens.clone())?;
                    if is_unit_ideal(&id)? || !is_smooth(&gens)? {
                        continue;
                    }
                    let rad = radical(&id)?;
                    let mut dup = false;
                    for other in &cands {
                        if same_ideal(other, &rad)? {
                            dup = true;
                            break;
                        }
                    }
                    if !dup {
                        cands.push(rad);
                    }
                }
            }
            for (i, z) in cands.iter().enumerate() {
                let mut maximal = true;
                for (k, other) in cands.iter().enumerate() {
                    if k != i && contained_in(other, z)? {
                        maximal = false;
                        break;
                    }
                }
                if !maximal {
                    continue;
                }
                let mut jz = Vec::new();
                for (d, eq) in view.divisors.iter().zip(&eqs) {
                    if crate::ideal::contains(z, eq)? {
                        jz.push((d.id, d.birth));
                    }
                }
                comps.push((*c, z.clone(), jz));
            }
        }
        let jstar = comps
            .iter()
            .map(|c| c.2.clone())
            .max_by(|a, b| cmp_subsets(a, b))
            .ok_or_else(|| Error::NotSmooth("no smooth component of the maximum locus".into()))?;
        let mut narrowed: BTreeMap<ChartId, Ideal> = BTreeMap::new();
        for (c, z, jz) in comps {
            if cmp_subsets(&jz, &jstar) != Ordering::Equal {
                continue;
            }
            let merged = match narrowed.remove(&c) {
                Some(prev) => crate::ideal::intersect(&prev, &z)?,
                None => z,
            };
            narrowed.insert(c, merged);
        }
        locus = narrowed.into_iter().map(|(c, z)| (c, z.gens().to_vec())).collect();
        j = jstar.into_iter().map(|d| d.0).collect();
    }
    let mut smooth = true;
    for gens in locus.values() {
        for comp in crate::geometry::split_components(&Ideal::new(gens.clone())?)? {
            if !is_smooth(comp.gens())? {
                smooth = false;
            }
        }
    }
    let mut word = ev.word;
    if word.terminal == Terminal::Infinity {
        word.companion = None;
    }
    Ok(Some(StratumReport { word, locus, j, smooth }))
}

/// V(b) ⊆ V(a) for radical ideals, i.e. a ⊆ b.
fn contained_in(a: &Ideal, b: &Ideal) -> Result<bool> {
    for g in a.gens() {
        if !crate::ideal::contains(b, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_ideal(a: &Ideal, b: &Ideal) -> Result<bool> {
    Ok(contained_in(a, b)? && contained_in(b, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::vars_of;
    use crate::rational::{rat, ratio};

    fn w(entries: &[(Rational, u32)], t: Terminal) -> InvariantWord {
        InvariantWord { entries: entries.to_vec(), terminal: t, companion: None }
    }

    #[test]
    fn word_order() {
        let a = w(&[(rat(2), 0), (ratio(3, 2), 0)], Terminal::Infinity);
        let b = w(&[(rat(2), 0), (rat(1), 0)], Terminal::Infinity);
        assert_eq!(word_compare(&a, &b), Ordering::Greater);
        let c = w(&[(rat(1), 0)], Terminal::Infinity);
        let d = w(&[(rat(2), 0)], Terminal::Zero);
        assert_eq!(word_compare(&c, &d), Ordering::Less);
        assert_eq!(word_compare(&a, &a), Ordering::Equal);
        assert_eq!(a.to_string(), "(2,0; 3/2,0; inf)");
        assert_eq!(d.to_string(), "(2,0; 0)");
    }

    #[test]
    fn e_bounds() {
        assert!(e_bounds_check(&w(&[(rat(2), 0), (ratio(3, 2), 0)], Terminal::Infinity)));
        assert!(e_bounds_check(&w(&[(rat(1), 0)], Terminal::Infinity)));
        assert!(!e_bounds_check(&w(&[(rat(2), 0), (ratio(4, 3), 0)], Terminal::Infinity)));
    }

    #[test]
    fn directions() {
        let d = witness_directions(2, 1);
        assert_eq!(d, vec![vec![0, 1], vec![1, 0], vec![1, -1], vec![1, 1]]);
        assert_eq!(witness_directions(1, 3), vec![vec![1]]);
    }

    #[test]
    fn contact_examples() {
        let v = ["x", "y"];
        let g = parse_poly("y^2-x^3", &v).unwrap();
        let origin = Locus::point(vars_of(&v), &[rat(0), rat(0)]);
        let c = maximal_contact(&g, 2, &origin, 3).unwrap();
        assert_eq!(c.direction, vec![0, 1]);
        let pairs = coefficient_pairs(&g, 2, &c);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].h.to_string(), "-x^3");
        assert_eq!(nu_next(&pairs, &[rat(0)]).unwrap(), ExtRat::Fin(ratio(3, 2)));

        let w3 = ["x", "y", "z"];
        let g = parse_poly("(x+y)^2-z^3", &w3).unwrap();
        let o3 = Locus::point(vars_of(&w3), &[rat(0), rat(0), rat(0)]);
        let c = maximal_contact(&g, 2, &o3, 3).unwrap();
        assert!(c.phi.total_degree() == Some(1));
    }

    #[test]
    fn pair_operations() {
        let v = ["x", "y"];
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let pairs = vec![MarkedPair::new(p("x^3*y^2"), rat(2)), MarkedPair::new(p("x^2*y^4"), rat(2))];
        let out = monomial_divide(&pairs, &[p("x"), p("y")]);
        assert_eq!(out[0].h, p("x"));
        assert_eq!(out[1].h, p("y^2"));
        let sc = scale_pairs(&[MarkedPair::new(p("-x^3"), rat(2))], &ExtRat::Fin(ratio(3, 2))).unwrap();
        assert_eq!(sc[0].mu, rat(3));
        let (mu, nu, per) =
            companion_subtract(&[MarkedPair::new(p("-x^2"), rat(2))], &[p("x")], &[rat(0), rat(0)]).unwrap();
        assert_eq!((mu, nu, per), (ExtRat::Fin(rat(1)), ExtRat::Fin(rat(0)), vec![rat(1)]));
        let (e1, s, rest) = divisor_split(&[(0, 1)], 0, 1).unwrap();
        assert_eq!((e1.len(), s, rest), (0, 0, vec![0]));
    }

    #[test]
    fn cusp_point_words() {
        let v = vars_of(&["x", "y"]);
        let view = ChartView {
            id: 0,
            vars: v.clone(),
            gens: vec![parse_poly("y^2-x^3", &["x", "y"]).unwrap()],
            divisors: Vec::new(),
            past_centers: Vec::new(),
            units: Vec::new(),
        };
        let cfg = InvariantConfig::default();
        let w0 = invariant_at_point(&view, &[], &[rat(0), rat(0)], &cfg).unwrap().unwrap();
        assert_eq!(w0.to_string(), "(2,0; 3/2,0; inf)");
        let w1 = invariant_at_point(&view, &[], &[rat(1), rat(1)], &cfg).unwrap().unwrap();
        assert_eq!(w1.to_string(), "(1,0; inf)");
        assert!(invariant_at_point(&view, &[], &[rat(2), rat(1)], &cfg).unwrap().is_none());
        let m = max_stratum(&[view], &[], &cfg).unwrap().unwrap();
        assert_eq!(m.word.to_string(), "(2,0; 3/2,0; inf)");
    }

    #[test]
    fn umbrella_origin_wins() {
        let w3 = ["x", "y", "z"];
        let view = ChartView {
            id: 0,
            vars: vars_of(&w3),
            gens: vec![parse_poly("x^2-y^2*z", &w3).unwrap()],
            divisors: Vec::new(),
            past_centers: Vec::new(),
            units: Vec::new(),
        };
        let cfg = InvariantConfig::default();
        let m = max_stratum(std::slice::from_ref(&view), &[], &cfg).unwrap().unwrap();
        assert_eq!(m.word.to_string(), "(2,0; 3/2,0; 1,0; inf)");
        let axis = invariant_at_point(&view, &[], &[rat(0), rat(0), rat(1)], &cfg).unwrap().unwrap();
        assert_eq!(&axis.entries[1].0, &rat(1));
    }
}
