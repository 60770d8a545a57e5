use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use desing_core::geometry::{nc_check, snc_check};
use desing_core::invariant::invariant_at_point;
use desing_core::rational::{rat_from_str, rat_to_wire};
use desing_core::resolver::blowup_chart;
use desing_core::{
    resolve_hypersurface, resolve_ideal_to_nc, verify_tree, Certificate, Error, Ideal, Locus, Mode, Rational,
    ResolutionTree, Status, Transform,
};
use serde::Serialize;
use serde_json::json;

use crate::problem::{resolve_config, ConfigFile, Overrides, Payload, Problem};
use crate::CliError;

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Parse(m),
            Error::DimensionMismatch { .. } | Error::VariableMismatch(..) | Error::InvalidArgument(_) => {
                CliError::Parse(e.to_string())
            }
            Error::BudgetExceeded(m) => CliError::Budget(m),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Run metadata kept out of the canonical artifacts so that they stay byte-identical.
#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    input: String,
    started_unix_ms: u128,
    elapsed_ms: u128,
    status: Status,
    years: u32,
    charts: usize,
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("artifact serializes");
    s.push('\n');
    s
}

pub fn parse_point(s: &str, n: usize) -> Result<Vec<Rational>, CliError> {
    let a = s.split(',').map(rat_from_str).collect::<Result<Vec<_>, _>>()?;
    if a.len() != n {
        return Err(CliError::Parse(format!("point {s:?} has {} coordinates, expected {n}", a.len())));
    }
    Ok(a)
}

fn run_resolution(p: &Problem) -> Result<(ResolutionTree, Certificate), CliError> {
    let out = match (&p.payload, p.mode) {
        (Payload::Polynomial(f), Mode::Hypersurface) => resolve_hypersurface(f, p.k, p.l, &p.config)?,
        (Payload::Polynomial(f), Mode::IdealToNc) => resolve_ideal_to_nc(&Ideal::new(vec![f.clone()])?, p.k, p.l, &p.config)?,
        (Payload::Ideal(i), _) => resolve_ideal_to_nc(i, p.k, p.l, &p.config)?,
    };
    Ok(out)
}

fn certificate_exit(cert: &Certificate) -> Result<(), CliError> {
    match cert.status {
        _ if cert.passed() => Ok(()),
        Status::YearBudget | Status::ComputeBudget => {
            Err(CliError::Budget(format!("stopped after {} years ({:?})", cert.years, cert.status)))
        }
        _ => Err(CliError::Failed(cert.failures.join("; "))),
    }
}

pub fn resolve(input: &Path, p: &Problem, out_dir: &Path) -> Result<(), CliError> {
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
    let clock = Instant::now();
    let (tree, cert) = run_resolution(p)?;
    let elapsed_ms = clock.elapsed().as_millis();

    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Internal(format!("{}: {e}", out_dir.display())))?;
    let mut tree_json = tree.to_json();
    tree_json.push('\n');
    write(&out_dir.join("tree.json"), &tree_json)?;
    write(&out_dir.join("certificate.json"), &pretty(&cert))?;
    write(&out_dir.join("tree.dot"), &tree.to_dot(p.dot_width))?;
    let side = Sidecar {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: "resolve",
        input: input.display().to_string(),
        started_unix_ms: started,
        elapsed_ms,
        status: cert.status,
        years: cert.years,
        charts: tree.charts.len(),
    };
    write(&out_dir.join("run.json"), &pretty(&side))?;

    let words: Vec<String> = cert.words.iter().map(|w| w.to_string()).collect();
    println!("status: {:?}", cert.status);
    println!("years: {}", cert.years);
    for (y, w) in words.iter().enumerate() {
        println!("  year {y}: {w}");
    }
    println!("certificate: {}", if cert.passed() { "passed" } else { "failed" });
    for f in &cert.failures {
        println!("  {f}");
    }
    certificate_exit(&cert)
}

pub fn invariant(p: &Problem, at: &str, chart: Option<usize>) -> Result<(), CliError> {
    let (tree, history) = match chart {
        None | Some(0) => {
            let input = match (&p.payload, p.mode) {
                (Payload::Polynomial(f), Mode::Hypersurface) => Transform::Hypersurface(f.clone()),
                (Payload::Polynomial(f), Mode::IdealToNc) => Transform::Ideal(vec![f.clone()]),
                (Payload::Ideal(i), _) => Transform::Ideal(i.nonzero_gens()),
            };
            (ResolutionTree::new(input, p.k, p.l, p.mode)?, Vec::new())
        }
        Some(c) => {
            let (tree, _) = run_resolution(p)?;
            if c >= tree.charts.len() {
                return Err(CliError::Parse(format!("chart {c} does not exist (the tree has {} charts)", tree.charts.len())));
            }
            let y = tree.chart(c).year as usize;
            let history = tree.words()[..y].to_vec();
            (tree, history)
        }
    };
    let id = chart.unwrap_or(0);
    let view = tree.view(id)?;
    let a = parse_point(at, view.vars.len())?;
    let point: Vec<String> = a.iter().map(rat_to_wire).collect();
    match invariant_at_point(&view, &history, &a, &p.config.invariant())? {
        Some(w) => {
            println!("{w}");
            println!("{}", json!({ "chart": id, "point": point, "order": w.entries.first().map(|e| rat_to_wire(&e.0)), "word": w.to_wire() }));
        }
        None => {
            println!("order 0: the point is off the variety");
            println!("{}", json!({ "chart": id, "point": point, "order": "0", "word": null }));
        }
    }
    Ok(())
}

pub fn blowup(p: &Problem) -> Result<(), CliError> {
    let f = p.polynomial()?;
    let charts = blowup_chart(f, &p.center)?;
    print!("{}", pretty(&charts));
    Ok(())
}

pub fn check_nc(p: &Problem, at: Option<&str>) -> Result<(), CliError> {
    let f = p.polynomial()?;
    let locus = match at {
        Some(s) => Locus::point(p.vars.clone(), &parse_point(s, p.vars.len())?),
        None => Locus::whole(p.vars.clone()),
    };
    let exps = nc_check(f, &p.divisors, &locus)?;
    print!("{}", pretty(&json!({ "nc": exps.is_some(), "exponents": exps })));
    match exps {
        Some(_) => Ok(()),
        None => Err(CliError::Failed("not normal crossings".into())),
    }
}

pub fn check_snc(p: &Problem) -> Result<(), CliError> {
    let x = match &p.payload {
        Payload::Polynomial(f) => Some(f),
        Payload::Ideal(_) => None,
    };
    let ok = snc_check(x, &p.divisors)?;
    print!("{}", pretty(&json!({ "snc": ok })));
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed("not simultaneous normal crossings".into()))
    }
}

pub fn check_verify(tree_path: &PathBuf, flags: &Overrides) -> Result<(), CliError> {
    let text = std::fs::read_to_string(tree_path).map_err(|e| CliError::Parse(format!("{}: {e}", tree_path.display())))?;
    let tree = ResolutionTree::from_json(&text)?;
    let mut config = resolve_config(&ConfigFile::default(), None, flags);
    config.mode = tree.mode;
    config.validate()?;
    let cert = verify_tree(&tree, &config);
    print!("{}", pretty(&cert));
    if cert.passed() {
        Ok(())
    } else {
        Err(CliError::Failed(cert.failures.join("; ")))
    }
}
