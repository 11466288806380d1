//! Job configuration: a flat JSON file overlaid by command-line flags.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use ctinv::{ModelSpec, Params, Theory};
use exactalg::{Domain, Rational};
use loopmodel::{Caps, DEFAULT_STATE_CAP};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A grid value: a JSON number or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Int(i64),
    Text(String),
}

/// A grid given as a list or as a comma-separated string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridField {
    List(Vec<GridValue>),
    Text(String),
}

/// Every field is optional so that files and flags can be merged; the
/// field names double as the flag names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub length: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<usize>,
    #[serde(rename = "L2", skip_serializing_if = "Option::is_none")]
    pub length2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<PathBuf>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ncap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uorder: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplex_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($f:ident),*) => {
        ConfigFile { $($f: $top.$f.or($base.$f)),* }
    };
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::usage("config", format!("{}: {e}", path.display())))
    }

    /// Fields of `top` win over those of `self`.
    pub fn overlay(self, top: ConfigFile) -> ConfigFile {
        let base = self;
        overlay!(base, top, model, m, length, m2, length2, edges, n_points, ncap, theory, ell, coeff, grid, uorder, kmax, out, state_cap, simplex_cap, jobs)
    }
}

/// A validated job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub model: ModelSpec,
    pub theory: Theory,
    pub params: Params,
    pub grid: Vec<Rational>,
    pub kmax: usize,
    pub out: Option<PathBuf>,
    pub jobs: usize,
}

fn rational(field: &str, s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s).map_err(|_| CliError::usage(field, format!("'{s}' is not a rational number")))
}

fn required<T>(field: &str, v: Option<T>) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(field, "required"))
}

pub fn parse_domain(s: &str) -> Result<Domain, CliError> {
    let t = s.trim().to_ascii_lowercase();
    let p = match t.as_str() {
        "q" | "rational" => return Ok(Domain::Rational),
        "z" | "integer" => return Ok(Domain::Integer),
        _ => t.strip_prefix("prime:").or_else(|| t.strip_prefix('f')).unwrap_or(&t),
    };
    let p: u64 = p.parse().map_err(|_| CliError::usage("coeff", format!("'{s}' is not rational, integer or prime:p")))?;
    Domain::prime(p).map_err(|_| CliError::usage("coeff", format!("{p} is not prime")))
}

pub fn parse_grid(g: &GridField) -> Result<Vec<Rational>, CliError> {
    let items: Vec<String> = match g {
        GridField::List(v) => v.iter().map(|x| match x {
            GridValue::Int(n) => n.to_string(),
            GridValue::Text(s) => s.clone(),
        }).collect(),
        GridField::Text(s) if s.trim().is_empty() => Vec::new(),
        GridField::Text(s) => s.split(',').map(|p| p.trim().to_string()).collect(),
    };
    let grid = items.iter().map(|s| rational("grid", s)).collect::<Result<Vec<_>, _>>()?;
    if grid.iter().any(|t| t.signum() < 0) {
        return Err(CliError::usage("grid", "values must be nonnegative"));
    }
    if let Some(w) = grid.windows(2).find(|w| w[0] >= w[1]) {
        return Err(CliError::usage("grid", format!("must be strictly ascending, found {} then {}", w[0], w[1])));
    }
    Ok(grid)
}

fn parse_theory(s: &str, ell: Option<usize>) -> Result<Theory, CliError> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "s1" => Ok(Theory::S1),
        "noneq" => Ok(Theory::NonEquivariant),
        "zl" => Ok(Theory::Zl(required("ell", ell)?)),
        _ => match t.strip_prefix("zl:").or_else(|| t.strip_prefix("zl ")) {
            Some(l) => Ok(Theory::Zl(l.trim().parse().map_err(|_| CliError::usage("theory", format!("'{s}'")))?)),
            None => Err(CliError::usage("theory", format!("'{s}' is not s1, zl or noneq"))),
        },
    }
}

impl JobConfig {
    /// Resolves defaults and checks every invariant, naming the field at
    /// fault.
    pub fn resolve(c: &ConfigFile) -> Result<JobConfig, CliError> {
        let model_name = required("model", c.model.as_deref())?;
        let model = match model_name {
            "point" => ModelSpec::Point,
            "circle" => ModelSpec::Circle { m: required("m", c.m)?, length: rational("L", required("L", c.length.as_deref())?)? },
            "torus" => ModelSpec::Torus {
                m1: required("m", c.m)?,
                l1: rational("L", required("L", c.length.as_deref())?)?,
                m2: required("m2", c.m2)?,
                l2: rational("L2", required("L2", c.length2.as_deref())?)?,
            },
            "edge-list" => ModelSpec::EdgeList(required("edges", c.edges.clone())?),
            other => return Err(CliError::usage("model", format!("'{other}' is not point, circle, torus or edge-list"))),
        };
        let theory = parse_theory(c.theory.as_deref().unwrap_or("s1"), c.ell)?;
        let uorder = c.uorder.unwrap_or(2);
        let n_cap = c.ncap.unwrap_or(match theory {
            Theory::S1 => 2 * uorder + 2,
            Theory::Zl(l) => l,
            Theory::NonEquivariant => 1,
        });
        let n_points = c.n_points.unwrap_or(if model == ModelSpec::Point { 1 } else { 0 });
        if n_points == 0 {
            return Err(CliError::usage("N", "required and positive"));
        }
        let domain = parse_domain(c.coeff.as_deref().unwrap_or("rational"))?;
        let caps = Caps { tuples: c.state_cap.unwrap_or(DEFAULT_STATE_CAP), simplices: c.simplex_cap.unwrap_or(Caps::default().simplices) };
        let params = Params { n_points, n_cap, u_order: uorder, domain, caps };
        params.check(theory)?;
        let kmax = c.kmax.unwrap_or(0);
        if theory == Theory::S1 && kmax > 0 && uorder <= kmax {
            return Err(CliError::usage("kmax", format!("{kmax} needs uorder above it, got {uorder}")));
        }
        let grid = parse_grid(c.grid.as_ref().unwrap_or(&GridField::Text("0".into())))?;
        let jobs = c.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if jobs == 0 {
            return Err(CliError::usage("jobs", "must be positive"));
        }
        Ok(JobConfig { model, theory, params, grid, kmax, out: c.out.clone(), jobs })
    }

    /// The flat configuration reproducing this job, without the output
    /// path and thread count, which do not affect results.
    pub fn echo(&self) -> ConfigFile {
        let mut c = ConfigFile::default();
        match &self.model {
            ModelSpec::Point => c.model = Some("point".into()),
            ModelSpec::Circle { m, length } => {
                c.model = Some("circle".into());
                c.m = Some(*m);
                c.length = Some(length.to_pq());
            }
            ModelSpec::Torus { m1, l1, m2, l2 } => {
                c.model = Some("torus".into());
                c.m = Some(*m1);
                c.length = Some(l1.to_pq());
                c.m2 = Some(*m2);
                c.length2 = Some(l2.to_pq());
            }
            ModelSpec::EdgeList(p) => {
                c.model = Some("edge-list".into());
                c.edges = Some(p.clone());
            }
        }
        c.n_points = Some(self.params.n_points);
        c.ncap = Some(self.params.n_cap);
        c.theory = Some(match self.theory {
            Theory::S1 => "s1".into(),
            Theory::Zl(_) => "zl".into(),
            Theory::NonEquivariant => "noneq".into(),
        });
        if let Theory::Zl(l) = self.theory {
            c.ell = Some(l);
        }
        c.coeff = Some(self.params.domain.tag());
        c.grid = Some(GridField::List(self.grid.iter().map(|t| GridValue::Text(t.to_pq())).collect()));
        c.uorder = Some(self.params.u_order);
        c.kmax = Some(self.kmax);
        c.state_cap = Some(self.params.caps.tuples);
        c.simplex_cap = Some(self.params.caps.simplices);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ConfigFile {
        ConfigFile { model: Some("circle".into()), m: Some(6), length: Some("6".into()), n_points: Some(3), ..Default::default() }
    }

    #[test]
    fn flags_override_file_fields() {
        let file = ConfigFile { uorder: Some(1), ..circle() };
        let flags = ConfigFile { uorder: Some(3), ..Default::default() };
        let c = JobConfig::resolve(&file.overlay(flags)).unwrap();
        assert_eq!(c.params.u_order, 3);
        assert_eq!(c.params.n_cap, 8);
    }

    #[test]
    fn descending_grid_names_the_field() {
        let c = ConfigFile { grid: Some(GridField::Text("3,0".into())), ..circle() };
        let e = JobConfig::resolve(&c).unwrap_err();
        assert!(matches!(&e, CliError::Usage { field, .. } if field == "grid"), "{e}");
    }

    #[test]
    fn small_ncap_names_the_field() {
        let c = ConfigFile { ncap: Some(3), uorder: Some(1), ..circle() };
        assert!(matches!(JobConfig::resolve(&c).unwrap_err(), CliError::Usage { field, .. } if field == "ncap"));
        let z = ConfigFile { theory: Some("zl".into()), ell: Some(4), ncap: Some(3), ..circle() };
        assert!(matches!(JobConfig::resolve(&z).unwrap_err(), CliError::Usage { field, .. } if field == "ell"));
    }

    #[test]
    fn echo_round_trips() {
        let c = JobConfig::resolve(&ConfigFile { grid: Some(GridField::Text("0, 3/2".into())), coeff: Some("F5".into()), ..circle() }).unwrap();
        let again = JobConfig::resolve(&c.echo()).unwrap();
        assert_eq!(JobConfig { jobs: c.jobs, ..again }, c);
    }

    #[test]
    fn coefficient_spellings() {
        assert_eq!(parse_domain("Q").unwrap(), Domain::Rational);
        assert_eq!(parse_domain("integer").unwrap(), Domain::Integer);
        assert_eq!(parse_domain("prime:5").unwrap(), Domain::prime(5).unwrap());
        assert!(parse_domain("F4").is_err());
    }
}
