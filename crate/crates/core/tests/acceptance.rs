//! One line per acceptance criterion; exits nonzero if any criterion fails.

mod common;

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{same_up_to_scalar, Case, CORPUS, CUSP, TACNODE, UMBRELLA};
use desing_core::groebner::s_polynomial;
use desing_core::ideal::{derivative_ideal, groebner, is_unit_ideal, max_order_on_variety, normal_form};
use desing_core::invariant::{
    companion_subtract, divisor_split, e_bounds_check, invariant_at_point, max_stratum, ExtRat, MarkedPair,
};
use desing_core::rational::{rat, ratio};
use desing_core::resolver::{corpus_words, resolve_ideal_to_nc, Certificate, ResolutionTree};
use desing_core::{parse_poly, vars_of, Ideal, MonomialOrder, Poly, Rational, ResolverConfig, Terminal};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Run {
    case: &'static Case,
    tree: ResolutionTree,
    cert: Certificate,
    elapsed: Duration,
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn check(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn run_corpus(cfg: &ResolverConfig) -> Vec<Run> {
    CORPUS
        .iter()
        .map(|case| {
            let start = Instant::now();
            let (tree, cert) = case.resolve(cfg);
            Run { case, tree, cert, elapsed: start.elapsed() }
        })
        .collect()
}

fn ideal_x2_xy() -> Ideal {
    let v = ["x", "y"];
    Ideal::new(vec![parse_poly("x^2", &v).unwrap(), parse_poly("x*y", &v).unwrap()]).unwrap()
}

fn origin(n: usize) -> Vec<Rational> {
    vec![rat(0); n]
}

fn find<'a>(runs: &'a [Run], case: &Case) -> &'a Run {
    runs.iter().find(|r| r.case.name == case.name).unwrap()
}

fn is_point(gens: &[Poly]) -> bool {
    gens.len() == gens.first().map_or(0, |g| g.nvars()) && gens.iter().all(|g| g.total_degree() == Some(1))
}

fn cusp_corpus(runs: &[Run]) -> Outcome {
    let r = find(runs, &CUSP);
    let cfg = ResolverConfig::default();
    let mut problems = Vec::new();
    if r.tree.year() != 3 {
        problems.push(format!("{} years", r.tree.year()));
    }
    for y in &r.tree.years {
        let comps: Vec<_> = y.locus.values().collect();
        if comps.len() != 1 || !is_point(comps[0]) {
            problems.push(format!("year {} center is not a single point", y.year));
        }
    }
    let w0 = r.tree.years.first().map(|y| y.word.to_string()).unwrap_or_default();
    if w0 != "(2,0; 3/2,0; inf)" {
        problems.push(format!("year-0 word {w0}"));
    }
    let view = ResolutionTree::new(r.tree.input.clone(), 2, 0, r.tree.mode).unwrap().view(0).unwrap();
    let at0 = invariant_at_point(&view, &[], &origin(2), &cfg.invariant()).unwrap();
    if at0.map(|w| w.to_string()).as_deref() != Some("(2,0; 3/2,0; inf)") {
        problems.push("pointwise word at the origin".into());
    }
    // Final strict transforms worked out by hand: the chart with E0 only keeps
    // x^3*y - 1, then x*y^2 - 1, and the last point blowup leaves y - 1 and x - 1.
    let v = vars_of(&["x", "y"]);
    let mut expected: Vec<Poly> = ["x^3*y - 1", "x*y^2 - 1", "y - 1", "x - 1"]
        .iter()
        .map(|s| desing_core::parse_in(s, v.clone()).unwrap())
        .collect();
    for c in r.tree.current() {
        let t = &c.transform.gens()[0];
        match expected.iter().position(|e| same_up_to_scalar(e, t)) {
            Some(i) => {
                expected.remove(i);
            }
            None => problems.push(format!("unexpected final transform {t}")),
        }
    }
    if !expected.is_empty() {
        problems.push(format!("missing final transforms {expected:?}"));
    }
    if !r.cert.passed() || !r.cert.s1_zero || !r.cert.charts.iter().all(|c| c.smooth && c.snc) {
        problems.push(format!("certificate: {:?}", r.cert.failures));
    }
    if r.elapsed >= Duration::from_secs(10) {
        problems.push(format!("took {:?}", r.elapsed));
    }
    check(problems.is_empty(), format!("{} point blowups in {:.2?} {}", r.tree.year(), r.elapsed, problems.join("; ")))
}

fn umbrella(runs: &[Run]) -> Outcome {
    let r = find(runs, &UMBRELLA);
    let cfg = ResolverConfig::default();
    let mut problems = Vec::new();
    let first: Vec<_> = r.tree.years.first().map(|y| y.locus.values().cloned().collect()).unwrap_or_default();
    if first.len() != 1 || !is_point(&first[0]) {
        problems.push(format!("first center {first:?}"));
    }
    let view = ResolutionTree::new(r.tree.input.clone(), 3, 0, r.tree.mode).unwrap().view(0).unwrap();
    let word_at = |a: &[Rational]| invariant_at_point(&view, &[], a, &cfg.invariant()).unwrap().unwrap();
    let w0 = word_at(&origin(3));
    if w0.entries.get(1).map(|e| e.0.clone()) != Some(ratio(3, 2)) {
        problems.push(format!("origin word {w0}"));
    }
    for t in [1, 2, -1] {
        let w = word_at(&[rat(0), rat(0), rat(t)]);
        if w.entries.get(1).map(|e| e.0.clone()) != Some(rat(1)) {
            problems.push(format!("axis word {w} at z = {t}"));
        }
    }
    if !r.cert.passed() {
        problems.push(format!("{:?} after {} years: {:?}", r.cert.status, r.cert.years, r.cert.failures));
    }
    if r.elapsed >= Duration::from_secs(60) {
        problems.push(format!("took {:?}", r.elapsed));
    }
    check(
        problems.is_empty(),
        format!("origin {w0}, {} years in {:.2?} {}", r.tree.year(), r.elapsed, problems.join("; ")),
    )
}

fn monomial_case(runs: &[Run]) -> Outcome {
    let r = find(runs, &TACNODE);
    let cfg = ResolverConfig::default();
    let mut problems = Vec::new();
    let Some(y1) = r.tree.years.get(1) else { return fail("tacnode stopped before year 1") };
    if y1.word.to_string() != "(2,0; 0)" || y1.word.terminal != Terminal::Zero {
        problems.push(format!("year-1 word {}", y1.word));
    }
    if y1.word.companion.is_none() {
        problems.push("no companion data".into());
    }
    if y1.j.is_empty() {
        problems.push("J is empty".into());
    }
    // In the x-chart the strict transform is y^2 - x^2 with exceptional divisor x.
    let v = vars_of(&["x", "y"]);
    let chart = r
        .tree
        .charts_of_year(1)
        .into_iter()
        .find(|c| same_up_to_scalar(&c.transform.gens()[0], &desing_core::parse_in("y^2 - x^2", v.clone()).unwrap()));
    match chart {
        None => problems.push("no chart with transform y^2 - x^2".into()),
        Some(c) => {
            let view = r.tree.view(c.id).unwrap();
            let w = invariant_at_point(&view, &r.tree.words()[..1], &origin(2), &cfg.invariant()).unwrap();
            if w.as_ref().map(|w| w.to_string()).as_deref() != Some("(2,0; 0)") {
                problems.push(format!("pointwise word {w:?}"));
            }
        }
    }
    if divisor_split(&[(0, 1)], 0, 1).unwrap() != (vec![], 0, vec![0]) {
        problems.push("divisor_split".into());
    }
    let x = Poly::var(v.clone(), 0);
    let (mu, nu, per) = companion_subtract(&[MarkedPair::new(x.pow(2), rat(2))], &[x], &origin(2)).unwrap();
    if (mu, nu, per) != (ExtRat::Fin(rat(1)), ExtRat::Fin(rat(0)), vec![rat(1)]) {
        problems.push("companion_subtract".into());
    }
    check(
        problems.is_empty(),
        format!("year 1 {} companion {:?} J {:?} {}", y1.word, y1.word.companion.as_ref().map(|c| c.to_string()), y1.j, problems.join("; ")),
    )
}

fn integrality(runs: &[Run]) -> Outcome {
    let cfg = ResolverConfig::default();
    let mut total = 0;
    let mut bad = Vec::new();
    for r in runs {
        for w in corpus_words(&r.tree, &cfg).unwrap() {
            total += 1;
            if !e_bounds_check(&w) {
                bad.push(format!("{}: {w}", r.case.name));
            }
        }
    }
    check(bad.is_empty() && total > 0, format!("{total} words checked, {} failures {}", bad.len(), bad.join(", ")))
}

fn semicontinuity(runs: &[Run]) -> Outcome {
    let mut samples = 0;
    let mut bad = Vec::new();
    for r in runs {
        samples += r.cert.samples_checked;
        if r.tree.year() > 0 && r.cert.samples_checked == 0 {
            bad.push(format!("{}: no samples", r.case.name));
        }
        for v in &r.cert.violations {
            bad.push(format!("{} year {} chart {}: {} vs {}", r.case.name, v.year, v.chart, v.word, v.image_word));
        }
    }
    check(bad.is_empty(), format!("{samples} fiber points, {} violations {}", bad.len(), bad.join("; ")))
}

fn transforms(runs: &[Run]) -> Outcome {
    let mut bad = Vec::new();
    let mut charts = 0;
    for r in runs {
        for c in &r.cert.charts {
            charts += 1;
            if !c.transform_identity {
                bad.push(format!("{} chart {}", r.case.name, c.chart));
            }
        }
    }
    let (tree, cert) = resolve_ideal_to_nc(&ideal_x2_xy(), 2, 0, &ResolverConfig::default()).unwrap();
    for c in &cert.charts {
        charts += 1;
        if !c.transform_identity || c.nc_exponents.is_none() {
            bad.push(format!("ideal chart {}", c.chart));
        }
    }
    if !cert.passed() {
        bad.push(format!("ideal certificate {:?}", cert.failures));
    }
    if tree.year() != 1 {
        bad.push(format!("(x^2, xy) needs {} blowups, expected 1", tree.year()));
    }
    check(bad.is_empty(), format!("{charts} charts {}", bad.join("; ")))
}

fn random_poly(rng: &mut StdRng, vars: &desing_core::Vars) -> Poly {
    let n = vars.len();
    loop {
        let terms = rng.gen_range(1..=6);
        let mut p = Poly::zero(vars.clone());
        for _ in 0..terms {
            let deg = rng.gen_range(0..=6u32);
            let mut exps = vec![0u32; n];
            for _ in 0..deg {
                exps[rng.gen_range(0..n)] += 1;
            }
            let c = rng.gen_range(-3..=3i64);
            p = &p + &Poly::monomial(vars.clone(), exps, rat(c));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn orders() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let names = ["x", "y", "z"];
    let mut mismatches = Vec::new();
    let mut comparisons = 0;
    for case in 0..200 {
        let n = 1 + case % 3;
        let vars = vars_of(&names[..n]);
        let g0 = random_poly(&mut rng, &vars);
        let a: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect();
        // Also look at polynomials forced to vanish to higher order at `a`.
        let c = Poly::constant(vars.clone(), g0.eval(&a).unwrap());
        let g1 = &g0 - &c;
        let lin = &Poly::var(vars.clone(), 0) - &Poly::constant(vars.clone(), a[0].clone());
        let g2 = &g1 * &lin;
        for g in [&g0, &g1, &g2] {
            if g.is_zero() {
                continue;
            }
            let ord = g.order_at_point(&a).unwrap().finite().unwrap();
            for s in 0..=ord + 2 {
                let vanish = derivative_ideal(g, s).nonzero_gens().iter().all(|h| h.eval(&a).unwrap() == rat(0));
                comparisons += 1;
                if vanish != (ord >= s) {
                    mismatches.push(format!("{g} at {a:?}, s = {s}"));
                }
            }
        }
        if case < 60 {
            let m = max_order_on_variety(&g0, &Ideal::zero(vars.clone())).unwrap();
            let grid: Vec<i64> = (-2..=2).collect();
            let mut pt = vec![0usize; n];
            loop {
                let p: Vec<Rational> = pt.iter().map(|&i| rat(grid[i])).collect();
                let o = g0.order_at_point(&p).unwrap().finite().unwrap();
                comparisons += 1;
                if o > m {
                    mismatches.push(format!("max order {m} < {o} for {g0}"));
                }
                let Some(i) = (0..n).rev().find(|&i| pt[i] + 1 < grid.len()) else { break };
                pt[i] += 1;
                pt[i + 1..].iter_mut().for_each(|v| *v = 0);
            }
        }
    }
    // Structured subcorpus: the maximum is attained at the origin.
    for case in CORPUS.iter() {
        let g = case.poly();
        let m = max_order_on_variety(&g, &Ideal::zero(g.vars().clone())).unwrap();
        let o = g.order_at_point(&origin(g.nvars())).unwrap().finite().unwrap();
        comparisons += 1;
        if m != o {
            mismatches.push(format!("{}: max {m} but origin order {o}", case.name));
        }
    }
    check(mismatches.is_empty(), format!("{comparisons} comparisons, {} mismatches {}", mismatches.len(), mismatches.join("; ")))
}

fn witness_independence(runs: &[Run]) -> Outcome {
    let cfg = ResolverConfig { witness_skip: 1, ..ResolverConfig::default() };
    let mut bad = Vec::new();
    let mut checked = 0;
    for r in runs {
        let words = r.tree.words();
        for (y, rec) in r.tree.years.iter().enumerate() {
            let views = r.tree.views_of_year(y as u32).unwrap();
            checked += 1;
            match max_stratum(&views, &words[..y], &cfg.invariant()) {
                Ok(Some(rep)) => {
                    if rep.word.cmp_word(&rec.word) != Ordering::Equal || rep.word.companion != rec.word.companion {
                        bad.push(format!("{} year {y}: {} vs {}", r.case.name, rep.word, rec.word));
                    }
                }
                other => bad.push(format!("{} year {y}: {other:?}", r.case.name)),
            }
        }
    }
    check(bad.is_empty(), format!("{checked} yearly words recomputed, {} mismatches {}", bad.len(), bad.join("; ")))
}

/// Ideals classified by hand: `true` when the ideal is the whole ring over the algebraic closure.
const UNIT_FIXTURE: [(&str, bool); 50] = [
    ("1", true),
    ("x; x - 1", true),
    ("x^2 + 1; x", true),
    ("x*y - 1; x", true),
    ("x*y - 1; y", true),
    ("x^2 - y; y - x^2 + 1", true),
    ("x + y; x + y + 3", true),
    ("x^2 + y^2 - 1; x; y", true),
    ("x^3 - 1; x^2 - 1; x - 2", true),
    ("x - y; y - z; z - x - 1", true),
    ("x*y*z - 1; x*y", true),
    ("x^2; y^2; x*y - 1", true),
    ("x^2 - 2; x^3 - 3", true),
    ("2", true),
    ("x^2 + y^2; x - 1; y", true),
    ("x*y; x - 1; y - 1", true),
    ("x^5 - x; x^2 + 1; x^2 - 1", true),
    ("y - x^2; y - x^2 - 1/2", true),
    ("x*z - 1; y*z - 1; x - y - 1", true),
    ("x + 1; y + 1; x*y - 2", true),
    ("x^2 - y^3; x - 1; y", true),
    ("x^3 + y^3 + z^3; x; y; z - 1", true),
    ("x^2 + 1; x - y; x*y - 1", true),
    ("x; y; z; x + y + z + 1", true),
    ("x^4 - 1; x^3 - 2", true),
    ("x", false),
    ("x^2 + 1", false),
    ("x*y - 1", false),
    ("x^2 - y^3", false),
    ("x; y", false),
    ("x - 1; y - 2; z - 3", false),
    ("x^2 + y^2 + 1", false),
    ("x^2 - 2; y^2 - 3", false),
    ("x^3 - 1; x^2 - 1", false),
    ("x*y; x + y", false),
    ("x^2; y^2", false),
    ("x^2 + 1; y^2 + 1; x*y - 1; x + y", false),
    ("x*z - 1; y - z", false),
    ("x^2 + y^2 - 1; x - y", false),
    ("x^3 + y^3 + z^3", false),
    ("x - y^2; y - z^2; z - x^2", false),
    ("x^4 + 4", false),
    ("x^2 - 2*x + 1; x - 1", false),
    ("x*y*z; x + y + z - 1", false),
    ("x^2*y - 1; x*y^2 - 1", false),
    ("x^5 - y^2; y^3 - z", false),
    ("x^2 + y^2; x^2 - y^2", false),
    ("x^3 - x; y^2 - 2; z*x - 1", false),
    ("x + y + z; x*y + y*z + z*x; x*y*z - 1", false),
    ("x^2 + x + 1; y - x", false),
];

fn groebner_kernel() -> Outcome {
    let start = Instant::now();
    let v = ["x", "y", "z"];
    let mut bad = Vec::new();
    let mut bases = 0;
    for (text, unit) in UNIT_FIXTURE {
        let gens: Vec<Poly> = text.split(';').map(|s| parse_poly(s, &v).unwrap()).collect();
        let ideal = Ideal::new(gens).unwrap();
        if is_unit_ideal(&ideal).unwrap() != unit {
            bad.push(format!("({text}) misclassified"));
        }
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::Elim { tail: 1 }] {
            let gb = groebner(&ideal, order).unwrap();
            bases += 1;
            for i in 0..gb.basis.len() {
                for j in i + 1..gb.basis.len() {
                    let s = s_polynomial(&gb.basis[i], &gb.basis[j], order);
                    if !normal_form(&s, &gb).unwrap().is_zero() {
                        bad.push(format!("({text}) {order:?}: S({i},{j}) does not reduce"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        bad.push(format!("took {elapsed:?}"));
    }
    check(
        bad.is_empty(),
        format!("{} fixture ideals, {bases} bases in {elapsed:.2?} {}", UNIT_FIXTURE.len(), bad.join("; ")),
    )
}

fn artifacts(runs: &[Run]) -> Vec<String> {
    runs.iter().flat_map(|r| [r.tree.to_json(), serde_json::to_string_pretty(&r.cert).unwrap()]).collect()
}

fn determinism(first: &[Run]) -> Outcome {
    let cfg = ResolverConfig::default();
    let second = run_corpus(&cfg);
    let (a, b) = (artifacts(first), artifacts(&second));
    let ideal = |_: ()| {
        let (t, c) = resolve_ideal_to_nc(&ideal_x2_xy(), 2, 0, &cfg).unwrap();
        (t.to_json(), serde_json::to_string_pretty(&c).unwrap())
    };
    let same_ideal = ideal(()) == ideal(());
    let differing: Vec<&str> = first
        .iter()
        .zip(a.chunks(2).zip(b.chunks(2)))
        .filter(|(_, (x, y))| x != y)
        .map(|(r, _)| r.case.name)
        .collect();
    let bytes: usize = a.iter().map(|s| s.len()).sum();
    check(
        differing.is_empty() && same_ideal,
        format!("{bytes} bytes compared, differing runs {differing:?}, ideal run identical {same_ideal}"),
    )
}

fn main() {
    let cfg = ResolverConfig::default();
    let runs = run_corpus(&cfg);
    let criteria: Vec<Criterion> = vec![
        ("cusp corpus", Box::new(|| cusp_corpus(&runs))),
        ("whitney umbrella", Box::new(|| umbrella(&runs))),
        ("monomial-case word", Box::new(|| monomial_case(&runs))),
        ("integrality", Box::new(|| integrality(&runs))),
        ("semicontinuity", Box::new(|| semicontinuity(&runs))),
        ("transform identities", Box::new(|| transforms(&runs))),
        ("order oracle", Box::new(orders)),
        ("witness independence", Box::new(|| witness_independence(&runs))),
        ("groebner kernel", Box::new(groebner_kernel)),
        ("determinism", Box::new(|| determinism(&runs))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            fail(format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !out.ok {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if out.ok { "PASS" } else { "FAIL" }, i + 1, out.detail.trim_end());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
