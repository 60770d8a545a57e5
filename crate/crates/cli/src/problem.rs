use std::path::Path;

use desing_core::{parse_in, vars_of, Ideal, Mode, Poly, ResolverConfig, Vars};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk description of a resolution problem.
///
/// ```json
/// { "vars": ["x", "y"], "k": 2, "polynomial": "y^2 - x^3", "config": { "max_years": 10 } }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub vars: Vec<String>,
    /// Number of leading variables of the first kind; the remaining `l` are of the second kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<String>>,
    /// Divisor equations for `check nc` and `check snc`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub divisors: Vec<String>,
    /// Center variables for `blowup`; all variables when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<String>>,
    #[serde(default)]
    pub config: ConfigFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

/// Config-file equivalents of the command-line flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub max_years: Option<u32>,
    pub coef_bound: Option<u32>,
    pub kmax: Option<u32>,
    pub prime: Option<u64>,
    pub sample_height: Option<u32>,
    pub samples_per_chart: Option<usize>,
    pub witness_skip: Option<usize>,
    pub dot_width: Option<usize>,
}

/// Flag values; `None` means "not given on the command line".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_years: Option<u32>,
    pub coef_bound: Option<u32>,
    pub kmax: Option<u32>,
    pub prime: Option<u64>,
    pub sample_height: Option<u32>,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Polynomial(Poly),
    Ideal(Ideal),
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub vars: Vars,
    pub k: usize,
    pub l: usize,
    pub mode: Mode,
    pub payload: Payload,
    pub divisors: Vec<Poly>,
    pub center: Vec<usize>,
    pub config: ResolverConfig,
    pub dot_width: usize,
}

impl Problem {
    pub fn polynomial(&self) -> Result<&Poly, CliError> {
        match &self.payload {
            Payload::Polynomial(p) => Ok(p),
            Payload::Ideal(_) => Err(CliError::Parse("this command needs a \"polynomial\" payload".into())),
        }
    }
}

pub const DEFAULT_DOT_WIDTH: usize = 48;

pub fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Applies defaults, then the file's config, then the flags.
pub fn resolve_config(file: &ConfigFile, file_prime: Option<u64>, flags: &Overrides) -> ResolverConfig {
    let mut c = ResolverConfig::default();
    macro_rules! layer {
        ($field:ident) => {
            if let Some(v) = file.$field {
                c.$field = v;
            }
        };
    }
    layer!(max_years);
    layer!(coef_bound);
    layer!(kmax);
    layer!(sample_height);
    layer!(samples_per_chart);
    layer!(witness_skip);
    c.prime = file.prime.or(file_prime);

    if let Some(v) = flags.max_years {
        c.max_years = v;
    }
    if let Some(v) = flags.coef_bound {
        c.coef_bound = v;
    }
    if let Some(v) = flags.kmax {
        c.kmax = v;
    }
    if let Some(v) = flags.sample_height {
        c.sample_height = v;
    }
    if flags.prime.is_some() {
        c.prime = flags.prime;
    }
    c
}

impl ProblemFile {
    pub fn load(&self, flags: &Overrides) -> Result<Problem, CliError> {
        let n = self.vars.len();
        if n == 0 {
            return Err(CliError::Parse("\"vars\" is empty".into()));
        }
        for (i, v) in self.vars.iter().enumerate() {
            if self.vars[..i].contains(v) {
                return Err(CliError::Parse(format!("variable {v:?} is listed twice")));
            }
        }
        let (k, l) = match (self.k, self.l) {
            (None, None) => (n, 0),
            (Some(k), None) if k <= n => (k, n - k),
            (None, Some(l)) if l <= n => (n - l, l),
            (Some(k), Some(l)) if k + l == n => (k, l),
            _ => return Err(CliError::Parse(format!("k + l must equal the number of variables ({n})"))),
        };
        let vars = vars_of(&self.vars);
        let parse = |s: &String| parse_in(s, vars.clone()).map_err(|e| CliError::Parse(format!("{s:?}: {e}")));

        let payload = match (&self.polynomial, &self.ideal) {
            (Some(p), None) => Payload::Polynomial(parse(p)?),
            (None, Some(gens)) => {
                let gens = gens.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
                Payload::Ideal(Ideal::new(gens).map_err(|e| CliError::Parse(e.to_string()))?)
            }
            (Some(_), Some(_)) => return Err(CliError::Parse("give either \"polynomial\" or \"ideal\", not both".into())),
            (None, None) => return Err(CliError::Parse("missing \"polynomial\" or \"ideal\"".into())),
        };
        let mode = match (self.mode, &payload) {
            (Some(Mode::Hypersurface), Payload::Ideal(_)) => {
                return Err(CliError::Parse("hypersurface mode needs a \"polynomial\" payload".into()))
            }
            (Some(m), _) => m,
            (None, Payload::Polynomial(_)) => Mode::Hypersurface,
            (None, Payload::Ideal(_)) => Mode::IdealToNc,
        };
        let divisors = self.divisors.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let center = match &self.center {
            None => (0..n).collect(),
            Some(names) => names
                .iter()
                .map(|c| {
                    self.vars.iter().position(|v| v == c).ok_or_else(|| CliError::Parse(format!("unknown center variable {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };

        let mut config = resolve_config(&self.config, self.prime, flags);
        config.mode = mode;
        config.validate().map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(Problem {
            vars,
            k,
            l,
            mode,
            payload,
            divisors,
            center,
            config,
            dot_width: self.config.dot_width.unwrap_or(DEFAULT_DOT_WIDTH),
        })
    }
}
