//! The year loop: maximum stratum, straightening, blowup, transforms and history,
//! followed by certificates that are re-derived from the finished tree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    blowup_maps, nc_check, smooth_on, snc_check_on, split_components, straighten_center, strict_transform, transform_divisor,
    weak_transform_ideal, CenterComponent, Chart, ChartId, DivisorId, DivisorRecord, Locus, Transform,
};
use crate::groebner::MonomialOrder;
use crate::ideal::{
    contains, derivative_ideal, groebner, is_unit_ideal, jacobian_smooth, locus_nonempty, radical, saturate, squarefree,
    Ideal,
};
use crate::invariant::{
    cmp_subsets, e_bounds_check, invariant_at_point, max_stratum, word_compare, ChartView, InvariantConfig, InvariantWord,
    LocalDivisor, Terminal,
};
use crate::poly::{vars_of, Poly, Vars};
use crate::rational::{domain_member, rat, rat_to_wire, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Hypersurface,
    IdealToNc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ResolverConfig {
    pub max_years: u32,
    pub coef_bound: u32,
    pub kmax: u32,
    pub mode: Mode,
    pub prime: Option<u64>,
    pub sample_height: u32,
    /// Maximum number of fiber points checked per chart and year.
    pub samples_per_chart: usize,
    pub witness_skip: usize,
}

impl Default for ResolverConfig {
    fn default() -> Self {
        ResolverConfig {
            max_years: 40,
            coef_bound: 3,
            kmax: 64,
            mode: Mode::Hypersurface,
            prime: None,
            sample_height: 8,
            samples_per_chart: 6,
            witness_skip: 0,
        }
    }
}

impl ResolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_years < 1 || self.coef_bound < 1 || self.kmax < 1 || self.sample_height < 1 {
            return Err(Error::InvalidArgument("resolver bounds must be at least 1".into()));
        }
        Ok(())
    }

    pub fn invariant(&self) -> InvariantConfig {
        InvariantConfig { witness_bound: self.coef_bound, witness_skip: self.witness_skip, kmax: self.kmax }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YearRecord {
    pub year: u32,
    pub word: InvariantWord,
    /// Divisors added to the maximum locus by the extended invariant.
    pub j: Vec<DivisorId>,
    /// Center per chart of this year, as a radical ideal.
    pub locus: BTreeMap<ChartId, Vec<Poly>>,
    pub centers: BTreeMap<ChartId, Vec<CenterComponent>>,
    pub divisor: DivisorId,
    pub created: Vec<ChartId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTree {
    pub mode: Mode,
    pub vars: Vec<String>,
    pub k: usize,
    pub l: usize,
    pub input: Transform,
    pub charts: Vec<Chart>,
    pub divisors: Vec<DivisorRecord>,
    pub years: Vec<YearRecord>,
}

impl ResolutionTree {
    pub fn new(input: Transform, k: usize, l: usize, mode: Mode) -> Result<ResolutionTree> {
        let vars = input.vars();
        if k + l != vars.len() {
            return Err(Error::DimensionMismatch { expected: vars.len(), found: k + l });
        }
        Ok(ResolutionTree {
            mode,
            vars: vars.to_vec(),
            k,
            l,
            charts: vec![Chart::root(0, input.clone())],
            input,
            divisors: Vec::new(),
            years: Vec::new(),
        })
    }

    pub fn year(&self) -> u32 {
        self.years.len() as u32
    }

    pub fn chart(&self, id: ChartId) -> &Chart {
        &self.charts[id]
    }

    /// Charts of the current year.
    pub fn current(&self) -> Vec<&Chart> {
        self.charts_of_year(self.year())
    }

    pub fn charts_of_year(&self, y: u32) -> Vec<&Chart> {
        self.charts.iter().filter(|c| c.year == y).collect()
    }

    pub fn words(&self) -> Vec<InvariantWord> {
        self.years.iter().map(|y| y.word.clone()).collect()
    }

    /// Coordinates of the year-`m` ancestor as polynomials on `chart`.
    pub fn ancestor_map(&self, chart: ChartId, m: u32) -> (ChartId, Vec<Poly>) {
        let c = &self.charts[chart];
        let vars = c.ring();
        let mut images: Vec<Poly> = (0..vars.len()).map(|i| Poly::var(vars.clone(), i)).collect();
        let mut cur = c;
        while cur.year > m {
            images = cur.transition.iter().map(|p| p.compose(&images)).collect();
            cur = &self.charts[cur.parent.expect("non-root chart has a parent")];
        }
        (cur.id, images)
    }

    pub fn local_divisors(&self, chart: ChartId) -> Vec<LocalDivisor> {
        self.divisors
            .iter()
            .filter_map(|d| {
                d.equations.get(&chart).map(|f| LocalDivisor { id: d.id, birth: d.birth, factors: f.clone() })
            })
            .collect()
    }

    pub fn view(&self, chart: ChartId) -> Result<ChartView> {
        let c = &self.charts[chart];
        let mut past = Vec::new();
        for m in 0..c.year {
            let (anc, images) = self.ancestor_map(chart, m);
            let rec = &self.years[m as usize];
            past.push(match rec.locus.get(&anc) {
                None => None,
                Some(gens) => {
                    let pulled: Vec<Poly> = gens.iter().map(|g| g.compose(&images)).collect();
                    if is_unit_ideal(&Ideal::new(pulled.clone())?)? {
                        None
                    } else {
                        Some(pulled)
                    }
                }
            });
        }
        Ok(ChartView {
            id: chart,
            vars: c.ring(),
            gens: c.transform.gens(),
            divisors: self.local_divisors(chart),
            past_centers: past,
            units: c.domain.clone(),
        })
    }

    pub fn views_of_year(&self, y: u32) -> Result<Vec<ChartView>> {
        self.charts_of_year(y).iter().map(|c| self.view(c.id)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    pub fn from_json(s: &str) -> Result<ResolutionTree> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Graph of charts; labels are truncated to `width` characters.
    pub fn to_dot(&self, width: usize) -> String {
        let cut = |s: String| -> String {
            let s = s.replace('"', "'");
            if s.chars().count() > width {
                let mut t: String = s.chars().take(width).collect();
                t.push_str("...");
                t
            } else {
                s
            }
        };
        let mut out = String::from("digraph resolution {\n  node [shape=box, fontname=\"monospace\"];\n");
        for c in &self.charts {
            let t = match &c.transform {
                Transform::Hypersurface(p) => p.to_string(),
                Transform::Ideal(g) => format!("({})", g.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")),
            };
            let divs = c.divisors.iter().map(|d| format!("E{d}")).collect::<Vec<_>>().join(",");
            let _ = writeln!(
                out,
                "  c{} [label=\"chart {} (year {})\\n{}\\nE: [{}]\"];",
                c.id,
                c.id,
                c.year,
                cut(t),
                divs
            );
        }
        for c in &self.charts {
            let Some(p) = c.parent else { continue };
            let rec = &self.years[(c.year - 1) as usize];
            let label = match rec.locus.get(&p) {
                Some(gens) if !c.exceptional.is_empty() => format!(
                    "C = ({}); E{} = {}",
                    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
                    rec.divisor,
                    c.exceptional.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
                ),
                _ => "identity".to_string(),
            };
            let _ = writeln!(out, "  c{} -> c{} [label=\"{}\"];", p, c.id, cut(label));
        }
        out.push_str("}\n");
        out
    }
}

/// Chart being refined by the sequential blowups of one year.
#[derive(Clone)]
struct Working {
    vars: Vars,
    /// Parent chart coordinates as polynomials here.
    images: Vec<Poly>,
    gens: Vec<Poly>,
    factor: Poly,
    old: Vec<(DivisorId, Vec<Poly>)>,
    fresh: Vec<Poly>,
    extracted: Vec<u32>,
    domain: Vec<Poly>,
    overlaps: Vec<Poly>,
}

fn compose_all(ps: &[Poly], t: &[Poly]) -> Vec<Poly> {
    ps.iter().map(|p| p.compose(t)).collect()
}

fn blow_working(w: &Working, comp: &Ideal, mode: Mode, bound: u32) -> Result<Vec<Working>> {
    let mut local = Ideal::new(compose_all(comp.gens(), &w.images))?;
    if !w.fresh.is_empty() {
        let prod = w.fresh.iter().fold(Poly::one(w.vars.clone()), |a, f| &a * f);
        local = radical(&saturate(&local, &prod)?)?;
    }
    if !locus_nonempty(&w.vars, local.gens(), &w.domain)? {
        return Ok(vec![w.clone()]);
    }
    let st = match straighten_center(&local, bound) {
        Ok(st) => st,
        Err(e @ Error::Straighten(_)) => {
            // leave the component to overlapping charts that can straighten it
            let Some(h) = handoff(&local, w)? else { return Err(e) };
            let mut kept = w.clone();
            kept.domain.push(h);
            return Ok(vec![kept]);
        }
        Err(e) => return Err(e),
    };
    let maps = blowup_maps(&w.vars, &st.coords)?;
    let exc: Vec<usize> = maps.iter().map(|m| m.0).collect();
    let mut out = Vec::new();
    for (ci, sigma) in maps {
        let t: Vec<Poly> = st.substitution.iter().map(|p| p.compose(&sigma)).collect();
        let theta = Poly::var(w.vars.clone(), ci);
        let (gens, d) = match mode {
            Mode::Hypersurface => {
                let (q, d) = strict_transform(&w.gens[0], &t, &theta)?;
                (vec![q], d)
            }
            Mode::IdealToNc => weak_transform_ideal(&w.gens, &t, &theta)?,
        };
        let mut old = Vec::new();
        for (id, f) in &w.old {
            if let Some(g) = transform_divisor(f, &t, &theta)? {
                old.push((*id, g));
            }
        }
        let mut fresh = transform_divisor(&w.fresh, &t, &theta)?.unwrap_or_default();
        fresh.push(theta.clone());
        let mut extracted = w.extracted.clone();
        extracted.push(d);
        let mut overlaps: Vec<Poly> = compose_all(&w.overlaps, &t).into_iter().filter(|v| !v.is_constant()).collect();
        overlaps.extend(exc.iter().filter(|&&k| k != ci).map(|&k| Poly::var(w.vars.clone(), k)));
        out.push(Working {
            vars: w.vars.clone(),
            images: compose_all(&w.images, &t),
            gens,
            factor: &w.factor.compose(&t) * &theta.pow(d),
            old,
            fresh,
            extracted,
            domain: compose_all(&w.domain, &t),
            overlaps,
        });
    }
    Ok(out)
}

/// A generator `h` of the center whose zero set in the chart lies where other charts also cover.
fn handoff(local: &Ideal, w: &Working) -> Result<Option<Poly>> {
    if w.overlaps.is_empty() {
        return Ok(None);
    }
    let gb = groebner(local, MonomialOrder::DegRevLex)?;
    for h in gb.basis.iter().chain(local.gens()) {
        if h.is_constant() {
            continue;
        }
        let mut eqs = vec![h.clone()];
        eqs.extend(w.overlaps.iter().cloned());
        if !locus_nonempty(&w.vars, &eqs, &w.domain)? {
            return Ok(Some(h.clone()));
        }
    }
    Ok(None)
}

fn product(fs: &[Poly], vars: &Vars) -> Poly {
    fs.iter().fold(Poly::one(vars.clone()), |a, f| &a * f)
}

/// Admissibility: every center component is smooth and crosses the divisors normally.
fn center_admissible(comp: &Ideal, divisors: &[LocalDivisor]) -> Result<bool> {
    let factors: Vec<Poly> = divisors.iter().flat_map(|d| d.factors.iter().cloned()).collect();
    let vars = comp.vars().clone();
    for k in 0..=factors.len() {
        for s in crate::ideal::subsets(factors.len(), k) {
            let mut gens = comp.gens().to_vec();
            gens.extend(s.iter().map(|&i| factors[i].clone()));
            let id = radical(&Ideal::new(gens)?)?;
            if is_unit_ideal(&id)? {
                continue;
            }
            let dim = crate::ideal::dim_ideal(&id)?;
            let q = vars.len() - dim;
            if q > 0 && !jacobian_smooth(&id, q, &Ideal::zero(vars.clone()))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One year: blow up the maximum locus of the current charts.
pub fn year_step(tree: &ResolutionTree, config: &ResolverConfig) -> Result<ResolutionTree> {
    let year = tree.year();
    let views = tree.views_of_year(year)?;
    let history = tree.words();
    let report = max_stratum(&views, &history, &config.invariant())?
        .ok_or_else(|| Error::InvalidArgument("the transform is empty; nothing to blow up".into()))?;
    if !report.smooth {
        return Err(Error::NotSmooth(format!("maximum locus of {} is not smooth", report.word)));
    }
    let mut next = tree.clone();
    let divisor_id = tree.divisors.len();
    let mut record = YearRecord {
        year,
        word: report.word.clone(),
        j: report.j.clone(),
        locus: report.locus.clone(),
        centers: BTreeMap::new(),
        divisor: divisor_id,
        created: Vec::new(),
    };
    let mut new_div = DivisorRecord { id: divisor_id, birth: year + 1, equations: BTreeMap::new() };
    let mut new_old: BTreeMap<DivisorId, BTreeMap<ChartId, Vec<Poly>>> = BTreeMap::new();
    for chart in tree.current() {
        let vars = chart.ring();
        let divs = tree.local_divisors(chart.id);
        let start = Working {
            vars: vars.clone(),
            images: (0..vars.len()).map(|i| Poly::var(vars.clone(), i)).collect(),
            gens: chart.transform.gens(),
            factor: chart.factor.clone(),
            old: divs.iter().map(|d| (d.id, d.factors.clone())).collect(),
            fresh: Vec::new(),
            extracted: Vec::new(),
            domain: chart.domain.clone(),
            overlaps: chart.overlaps.clone(),
        };
        let mut work = vec![start];
        if let Some(gens) = report.locus.get(&chart.id) {
            let comps = split_components(&Ideal::new(gens.clone())?)?;
            let mut recs = Vec::new();
            for comp in &comps {
                // components left to overlapping charts are recorded without coordinates
                let (substitution, coords) = match straighten_center(comp, config.coef_bound) {
                    Ok(st) => (st.substitution, st.coords),
                    Err(Error::Straighten(_)) => (Vec::new(), Vec::new()),
                    Err(e) => return Err(e),
                };
                recs.push(CenterComponent { ideal: comp.gens().to_vec(), substitution, coords });
                if !center_admissible(comp, &divs)? {
                    return Err(Error::NotSmooth(format!(
                        "center component {:?} in chart {} is not normal crossing with the divisors",
                        comp.gens(),
                        chart.id
                    )));
                }
                let mut nw = Vec::new();
                for w in &work {
                    nw.extend(blow_working(w, comp, tree.mode, config.coef_bound)?);
                }
                work = nw;
            }
            record.centers.insert(chart.id, recs);
        }
        for w in work {
            let id = next.charts.len();
            let transform = match tree.mode {
                Mode::Hypersurface => Transform::Hypersurface(w.gens[0].clone()),
                Mode::IdealToNc => Transform::Ideal(w.gens.clone()),
            };
            let mut ids: Vec<DivisorId> = w.old.iter().map(|(d, _)| *d).collect();
            for (d, f) in &w.old {
                new_old.entry(*d).or_default().insert(id, f.clone());
            }
            if !w.fresh.is_empty() {
                new_div.equations.insert(id, w.fresh.clone());
                ids.push(divisor_id);
            }
            next.charts.push(Chart {
                id,
                year: year + 1,
                vars: chart.vars.clone(),
                parent: Some(chart.id),
                transition: w.images,
                divisors: ids,
                transform,
                exceptional: w.fresh,
                extracted: w.extracted,
                factor: w.factor,
                domain: w.domain,
                overlaps: w.overlaps,
            });
            record.created.push(id);
        }
    }
    for (d, eqs) in new_old {
        next.divisors[d].equations.extend(eqs);
    }
    next.divisors.push(new_div);
    next.years.push(record);
    Ok(next)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Resolved,
    YearBudget,
    ComputeBudget,
    CertificateFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCertificate {
    pub chart: ChartId,
    pub smooth: bool,
    pub snc: bool,
    /// Exponents of the total transform along the divisor factors (and the final transform).
    pub nc_exponents: Option<Vec<u32>>,
    pub transform_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleCheck {
    pub year: u32,
    pub chart: ChartId,
    pub point: Vec<String>,
    pub word: String,
    pub image_word: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: Status,
    pub mode: Mode,
    pub years: u32,
    pub words: Vec<InvariantWord>,
    pub decreasing: bool,
    pub words_reproduced: bool,
    pub centers_admissible: bool,
    pub charts: Vec<ChartCertificate>,
    pub samples_checked: usize,
    pub violations: Vec<SampleCheck>,
    pub e_bounds: bool,
    pub s1_zero: bool,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.status == Status::Resolved && self.failures.is_empty()
    }
}

fn is_smooth_word(w: &InvariantWord) -> bool {
    *w == InvariantWord::smooth_point()
}

fn all_divisor_factors(tree: &ResolutionTree, chart: ChartId) -> Vec<Poly> {
    tree.local_divisors(chart).into_iter().flat_map(|d| d.factors).collect()
}

/// The transform has no zeros on the chart's domain.
fn transform_empty(c: &Chart) -> Result<bool> {
    Ok(!locus_nonempty(&c.ring(), &c.transform.gens(), &c.domain)?)
}

enum Stop {
    Done,
    Continue,
    Fail(String),
}

fn stopping(tree: &ResolutionTree, config: &ResolverConfig) -> Result<Stop> {
    match tree.mode {
        Mode::IdealToNc => {
            for c in tree.current() {
                if !transform_empty(c)? {
                    return Ok(Stop::Continue);
                }
            }
            Ok(Stop::Done)
        }
        Mode::Hypersurface => {
            let views = tree.views_of_year(tree.year())?;
            let Some(ev) = crate::invariant::evaluate_maximum(&views, &tree.words(), &config.invariant())? else {
                return Ok(Stop::Done);
            };
            if !is_smooth_word(&ev.word) {
                return Ok(Stop::Continue);
            }
            for c in tree.current() {
                let g = &c.transform.gens()[0];
                if !snc_check_on(Some(g), &all_divisor_factors(tree, c.id), &c.domain)? {
                    return Ok(Stop::Fail(format!("chart {}: smooth transform is not snc with the divisors", c.id)));
                }
            }
            Ok(Stop::Done)
        }
    }
}

fn classify(e: &Error) -> Status {
    match e {
        Error::BudgetExceeded(_) => Status::ComputeBudget,
        _ => Status::CertificateFailure,
    }
}

fn run(mut tree: ResolutionTree, config: &ResolverConfig) -> Result<(ResolutionTree, Certificate)> {
    config.validate()?;
    let mut status = Status::Resolved;
    let mut failures = Vec::new();
    loop {
        match stopping(&tree, config) {
            Ok(Stop::Done) => break,
            Ok(Stop::Fail(msg)) => {
                status = Status::CertificateFailure;
                failures.push(msg);
                break;
            }
            Ok(Stop::Continue) => {}
            Err(e) => {
                status = classify(&e);
                failures.push(e.to_string());
                break;
            }
        }
        if tree.year() >= config.max_years {
            status = Status::YearBudget;
            failures.push(format!("not resolved within {} years", config.max_years));
            break;
        }
        match year_step(&tree, config) {
            Ok(t) => tree = t,
            Err(e) => {
                status = classify(&e);
                failures.push(format!("year {}: {e}", tree.year()));
                break;
            }
        }
    }
    let mut cert = verify_tree(&tree, config);
    if status != Status::Resolved {
        cert.status = status;
    }
    failures.append(&mut cert.failures);
    cert.failures = failures;
    if cert.status == Status::Resolved && !cert.failures.is_empty() {
        cert.status = Status::CertificateFailure;
    }
    Ok((tree, cert))
}

/// Embedded resolution of `V(g)`; the input is replaced by its squarefree part first.
pub fn resolve_hypersurface(g: &Poly, k: usize, l: usize, config: &ResolverConfig) -> Result<(ResolutionTree, Certificate)> {
    if g.is_zero() || g.is_constant() {
        return Err(Error::InvalidArgument("the hypersurface equation must be a nonconstant polynomial".into()));
    }
    let reduced = squarefree(g)?;
    let mut cfg = config.clone();
    cfg.mode = Mode::Hypersurface;
    run(ResolutionTree::new(Transform::Hypersurface(reduced), k, l, Mode::Hypersurface)?, &cfg)
}

/// Principalization: blow up until the weak transform of `I` is the unit ideal everywhere.
pub fn resolve_ideal_to_nc(ideal: &Ideal, k: usize, l: usize, config: &ResolverConfig) -> Result<(ResolutionTree, Certificate)> {
    let gens = ideal.nonzero_gens();
    if gens.is_empty() || is_unit_ideal(ideal)? {
        return Err(Error::InvalidArgument("the ideal must be nonzero and proper".into()));
    }
    let mut cfg = config.clone();
    cfg.mode = Mode::IdealToNc;
    run(ResolutionTree::new(Transform::Ideal(gens), k, l, Mode::IdealToNc)?, &cfg)
}

/// Integer points of max-norm `≤ h`, ordered by norm and then lexicographically.
fn grid_points(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![-h; n];
    loop {
        pts.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] < h) else { break };
        cur[i] += 1;
        for c in cur.iter_mut().skip(i + 1) {
            *c = -h;
        }
    }
    pts.sort_by_key(|p| (p.iter().map(|x| x.abs()).max().unwrap_or(0), p.clone()));
    pts
}

fn in_domain(c: &Chart, a: &[Rational]) -> Result<bool> {
    for u in &c.domain {
        if u.eval(a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn on_transform(c: &Chart, a: &[Rational]) -> Result<bool> {
    for g in c.transform.gens() {
        if !g.eval(a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fiber points over the center: `inv(a') ≤ inv(σ(a'))`, strictly when the image word ends in ∞.
fn semicontinuity(
    tree: &ResolutionTree,
    config: &ResolverConfig,
    checked: &mut usize,
    violations: &mut Vec<SampleCheck>,
    words: &mut Vec<InvariantWord>,
) -> Result<()> {
    let icfg = config.invariant();
    let n = tree.vars.len();
    let grid = grid_points(n, config.sample_height as i64);
    for rec in &tree.years {
        let history_before = &tree.years[..rec.year as usize];
        let before: Vec<InvariantWord> = history_before.iter().map(|y| y.word.clone()).collect();
        let after: Vec<InvariantWord> = tree.years[..=rec.year as usize].iter().map(|y| y.word.clone()).collect();
        for &cid in &rec.created {
            let child = tree.chart(cid);
            if child.exceptional.is_empty() {
                continue;
            }
            let parent = tree.chart(child.parent.unwrap());
            let cview = tree.view(cid)?;
            let pview = tree.view(parent.id)?;
            let theta = product(&child.exceptional, &child.ring());
            let mut taken = 0;
            for p in &grid {
                if taken >= config.samples_per_chart {
                    break;
                }
                let a: Vec<Rational> = p.iter().map(|&x| rat(x)).collect();
                if let Some(prime) = config.prime {
                    if !domain_member(&a, tree.k, tree.l, prime)? {
                        continue;
                    }
                }
                if !theta.eval(&a)?.is_zero() || !on_transform(child, &a)? || !in_domain(child, &a)? {
                    continue;
                }
                let image: Vec<Rational> = child.transition.iter().map(|t| t.eval(&a)).collect::<Result<_>>()?;
                let w1 = invariant_at_point(&cview, &after, &a, &icfg)?;
                let w0 = invariant_at_point(&pview, &before, &image, &icfg)?;
                taken += 1;
                *checked += 1;
                let (Some(w1), Some(w0)) = (w1, w0) else {
                    violations.push(SampleCheck {
                        year: rec.year,
                        chart: cid,
                        point: a.iter().map(rat_to_wire).collect(),
                        word: "order 0".into(),
                        image_word: "order 0".into(),
                        ok: false,
                    });
                    continue;
                };
                let ord = word_compare(&w1, &w0);
                let ok = match w0.terminal {
                    Terminal::Infinity => ord == Ordering::Less,
                    Terminal::Zero => ord != Ordering::Greater,
                };
                words.push(w1.clone());
                words.push(w0.clone());
                if !ok {
                    violations.push(SampleCheck {
                        year: rec.year,
                        chart: cid,
                        point: a.iter().map(rat_to_wire).collect(),
                        word: w1.to_string(),
                        image_word: w0.to_string(),
                        ok,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Total transform of the input in a chart.
pub fn total_transform(tree: &ResolutionTree, chart: ChartId) -> Vec<Poly> {
    let (_, images) = tree.ancestor_map(chart, 0);
    tree.input.gens().iter().map(|g| g.compose(&images)).collect()
}

fn chart_certificate(tree: &ResolutionTree, c: &Chart) -> Result<ChartCertificate> {
    let vars = c.ring();
    let factors = all_divisor_factors(tree, c.id);
    let totals = total_transform(tree, c.id);
    let gens = c.transform.gens();
    let identity = totals.iter().zip(&gens).all(|(t, g)| *t == &c.factor * g);
    let whole = Locus { vars: vars.clone(), eqs: Vec::new(), units: c.domain.clone() };
    Ok(match tree.mode {
        Mode::Hypersurface => {
            let g = &gens[0];
            let smooth = g.is_constant() || smooth_on(std::slice::from_ref(g), 1, &c.domain)?;
            let snc = smooth && snc_check_on(Some(g), &factors, &c.domain)?;
            let mut thetas = factors.clone();
            if !g.is_constant() {
                thetas.push(g.clone());
            }
            ChartCertificate { chart: c.id, smooth, snc, nc_exponents: nc_check(&totals[0], &thetas, &whole)?, transform_identity: identity }
        }
        Mode::IdealToNc => {
            let unit = transform_empty(c)?;
            let snc = snc_check_on(None, &factors, &c.domain)?;
            let nc = if unit { nc_check(&c.factor, &factors, &whole)? } else { None };
            ChartCertificate { chart: c.id, smooth: unit, snc, nc_exponents: nc, transform_identity: identity }
        }
    })
}

/// Yearly order: the word with its companion, then the divisor set added by the extended invariant.
pub fn extended_compare(a: &YearRecord, b: &YearRecord, tree: &ResolutionTree) -> Ordering {
    let births = |j: &[DivisorId]| -> Vec<(DivisorId, u32)> { j.iter().map(|&d| (d, tree.divisors[d].birth)).collect() };
    word_compare(&a.word, &b.word).then_with(|| cmp_subsets(&births(&a.j), &births(&b.j)))
}

/// Re-derives every certificate from the tree; failures are recorded, never raised.
pub fn verify_tree(tree: &ResolutionTree, config: &ResolverConfig) -> Certificate {
    let mut failures = Vec::new();
    let note = |r: Result<()>, failures: &mut Vec<String>| {
        if let Err(e) = r {
            failures.push(e.to_string());
        }
    };
    let words = tree.words();
    let decreasing = tree.years.windows(2).all(|y| extended_compare(&y[1], &y[0], tree) == Ordering::Less);
    if !decreasing {
        failures.push("yearly maximum words do not decrease".into());
    }
    let mut reproduced = true;
    let mut admissible = true;
    let icfg = config.invariant();
    for rec in &tree.years {
        let r = (|| -> Result<()> {
            let views = tree.views_of_year(rec.year)?;
            let hist: Vec<InvariantWord> = words[..rec.year as usize].to_vec();
            let rep = max_stratum(&views, &hist, &icfg)?;
            if rep.as_ref().map(|r| &r.word) != Some(&rec.word) {
                reproduced = false;
            }
            for (cid, gens) in &rec.locus {
                let id = Ideal::new(gens.clone())?;
                for comp in split_components(&id)? {
                    if !center_admissible(&comp, &tree.local_divisors(*cid))? {
                        admissible = false;
                    }
                }
                if tree.mode == Mode::Hypersurface {
                    let g = &tree.chart(*cid).transform.gens()[0];
                    let rad = radical(&id)?;
                    let in_sing = derivative_ideal(g, 2).nonzero_gens().iter().all(|p| contains(&rad, p).unwrap_or(false));
                    let in_xe = contains(&rad, g)?
                        && tree.local_divisors(*cid).iter().any(|d| {
                            contains(&rad, &product(&d.factors, g.vars())).unwrap_or(false)
                        });
                    if !(in_sing || in_xe) {
                        admissible = false;
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = r {
            reproduced = false;
            failures.push(format!("year {}: {e}", rec.year));
        }
    }
    if !reproduced {
        failures.push("recorded words are not reproduced by the invariant".into());
    }
    if !admissible {
        failures.push("a center is not admissible".into());
    }
    let mut charts = Vec::new();
    for c in tree.current() {
        match chart_certificate(tree, c) {
            Ok(cc) => {
                let ok = cc.smooth && cc.snc && cc.nc_exponents.is_some() && cc.transform_identity;
                if !ok {
                    failures.push(format!("chart {} certificate: {:?}", c.id, cc));
                }
                charts.push(cc);
            }
            Err(e) => failures.push(format!("chart {}: {e}", c.id)),
        }
    }
    // transform identities hold in every chart, not only the final ones
    for c in &tree.charts {
        let totals = total_transform(tree, c.id);
        if !totals.iter().zip(c.transform.gens()).all(|(t, g)| *t == &c.factor * &g) {
            failures.push(format!("chart {}: total transform differs from factor times transform", c.id));
        }
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut all_words = words.clone();
    note(semicontinuity(tree, config, &mut checked, &mut violations, &mut all_words), &mut failures);
    if !violations.is_empty() {
        failures.push(format!("{} semicontinuity violations", violations.len()));
    }
    let e_bounds = all_words.iter().all(e_bounds_check);
    if !e_bounds {
        failures.push("denominator bound violated".into());
    }
    let s1_zero = match tree.mode {
        Mode::IdealToNc => true,
        Mode::Hypersurface => match tree.views_of_year(tree.year()).and_then(|v| {
            crate::invariant::evaluate_maximum(&v, &words, &icfg)
        }) {
            Ok(None) => true,
            Ok(Some(ev)) => ev.word.entries[0].1 == 0,
            Err(e) => {
                failures.push(e.to_string());
                false
            }
        },
    };
    if !s1_zero {
        failures.push("s1 is not zero on the final transform".into());
    }
    let status = if failures.is_empty() { Status::Resolved } else { Status::CertificateFailure };
    Certificate {
        status,
        mode: tree.mode,
        years: tree.year(),
        words,
        decreasing,
        words_reproduced: reproduced,
        centers_admissible: admissible,
        charts,
        samples_checked: checked,
        violations,
        e_bounds,
        s1_zero,
        failures,
    }
}

/// Convenience for tests and the CLI: all words seen at sampled points plus yearly maxima.
pub fn corpus_words(tree: &ResolutionTree, config: &ResolverConfig) -> Result<Vec<InvariantWord>> {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut words = tree.words();
    semicontinuity(tree, config, &mut checked, &mut violations, &mut words)?;
    Ok(words)
}

/// Blows up one chart of a fresh tree along a coordinate center (no invariant involved).
pub fn blowup_chart(g: &Poly, coords: &[usize]) -> Result<Vec<Chart>> {
    let vars = g.vars().clone();
    let theta_vars = vars_of(&vars);
    let mut out = Vec::new();
    for (k, (ci, images)) in blowup_maps(&vars, coords)?.into_iter().enumerate() {
        let theta = Poly::var(theta_vars.clone(), ci);
        let (q, d) = strict_transform(g, &images, &theta)?;
        out.push(Chart {
            id: k + 1,
            year: 1,
            vars: vars.to_vec(),
            parent: Some(0),
            transition: images,
            divisors: vec![0],
            transform: Transform::Hypersurface(q),
            exceptional: vec![theta.clone()],
            extracted: vec![d],
            factor: theta.pow(d),
            domain: Vec::new(),
            overlaps: Vec::new(),
        });
    }
    Ok(out)
}
