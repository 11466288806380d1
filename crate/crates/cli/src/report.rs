//! The report document, its CSV table and the plain-text summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use ctinv::{CapacityTable, CtError, CTResult};
use loopmodel::LoopError;
use serde::{Deserialize, Serialize};

use crate::config::ConfigFile;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarcodeDoc {
    pub free: Vec<i64>,
    /// `[birth, exponent]` pairs.
    pub torsion: Vec<(i64, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaDoc {
    pub nonzero: Option<bool>,
    /// Divisibility by `u^k` for `k = 1..=kmax`.
    pub u_divisibility: Vec<bool>,
}

/// Why a grid point has no result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDoc {
    /// `state-space overflow`, `complex overflow` or `error`.
    pub kind: String,
    pub message: String,
}

impl FailureDoc {
    pub fn from_error(e: &CtError) -> FailureDoc {
        let kind = match e {
            CtError::Loop(LoopError::StateSpaceOverflow { .. }) => "state-space overflow",
            CtError::Loop(LoopError::ComplexOverflow { .. }) => "complex overflow",
            _ => "error",
        };
        FailureDoc { kind: kind.into(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    #[serde(rename = "T")]
    pub t: String,
    /// `ok` or `failed`.
    pub status: String,
    pub failure: Option<FailureDoc>,
    /// Nonzero ranks by degree (free ranks over the integers).
    pub dims: BTreeMap<String, usize>,
    /// Torsion coefficients by degree, only over the integers.
    pub torsion: BTreeMap<String, Vec<String>>,
    /// `null` where no `u`-action was computed.
    pub barcode: Option<BarcodeDoc>,
    pub eta: EtaDoc,
    pub forgetful: Option<BTreeMap<String, usize>>,
    /// Window `[lo, hi]` of reported degrees.
    pub window: Option<(i64, i64)>,
    /// Tuples on each level that entered the computation.
    pub tuples: Vec<usize>,
}

impl PointDoc {
    pub fn failed(t: &exactalg::Rational, e: &CtError) -> PointDoc {
        PointDoc {
            t: t.to_pq(),
            status: "failed".into(),
            failure: Some(FailureDoc::from_error(e)),
            dims: BTreeMap::new(),
            torsion: BTreeMap::new(),
            barcode: None,
            eta: EtaDoc { nonzero: None, u_divisibility: Vec::new() },
            forgetful: None,
            window: None,
            tuples: Vec::new(),
        }
    }

    pub fn from_result(r: &CTResult, kmax: usize) -> Result<PointDoc, CliError> {
        let with_u = r.domain.is_field();
        let barcode = if with_u {
            let b = r.barcode()?;
            Some(BarcodeDoc { free: b.free, torsion: b.torsion })
        } else {
            None
        };
        let divisibility = if with_u && r.provenance.u_order > kmax { r.eta_divisibility(kmax)? } else { Vec::new() };
        Ok(PointDoc {
            t: r.t.to_pq(),
            status: "ok".into(),
            failure: None,
            dims: r.dims().into_iter().map(|(q, n)| (q.to_string(), n)).collect(),
            torsion: r
                .groups
                .iter()
                .filter(|(_, g)| !g.torsion.is_empty())
                .map(|(q, g)| (q.to_string(), g.torsion.iter().map(|d| d.to_string()).collect()))
                .collect(),
            barcode,
            eta: EtaDoc { nonzero: r.eta_nonzero(), u_divisibility: divisibility },
            forgetful: r.forgetful.as_ref().map(|f| f.iter().filter(|(_, &n)| n > 0).map(|(q, &n)| (q.to_string(), n)).collect()),
            window: Some((r.module.lo, r.module.hi)),
            tuples: r.provenance.tuples.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Doc {
    pub divisibility: String,
    pub vanishing: String,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityDoc {
    pub kmax: usize,
    /// `c̄_k` by `k`, as `"p/q"` or `"inf"`.
    pub values: BTreeMap<String, String>,
    /// False when some grid point failed, so `inf` is only a lower bound.
    pub complete: bool,
    pub c1: Option<C1Doc>,
}

pub fn rational_or_inf(v: Option<&exactalg::Rational>) -> String {
    v.map_or_else(|| "inf".to_string(), |t| t.to_pq())
}

impl CapacityDoc {
    pub fn new(t: &CapacityTable, c1: Option<C1Doc>) -> CapacityDoc {
        CapacityDoc {
            kmax: t.kmax,
            values: (1..=t.kmax).map(|k| (k.to_string(), rational_or_inf(t.get(k)))).collect(),
            complete: t.complete,
            c1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub messages: Vec<String>,
}

impl From<&chain::Report> for CheckDoc {
    fn from(r: &chain::Report) -> Self {
        CheckDoc { name: r.name.clone(), passed: r.passed, messages: r.messages.clone() }
    }
}

/// The whole report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub config: ConfigFile,
    #[serde(rename = "per_T")]
    pub per_t: Vec<PointDoc>,
    pub capacities: Option<CapacityDoc>,
    pub checks: Vec<CheckDoc>,
}

impl ReportDoc {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ReportDoc, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))
    }

    /// Rows `(T, degree, rank)` of every computed point.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Report(e.to_string());
        w.write_record(["T", "degree", "rank"]).map_err(err)?;
        for p in &self.per_t {
            let mut rows: Vec<(i64, usize)> = p.dims.iter().map(|(q, &n)| (q.parse().expect("integer degree"), n)).collect();
            rows.sort_unstable();
            for (q, n) in rows {
                w.write_record([p.t.clone(), q.to_string(), n.to_string()]).map_err(err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Report(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    /// Writes the JSON report to `path` and the CSV table next to it.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))?;
        let csv_path = path.with_extension("csv");
        std::fs::write(&csv_path, self.to_csv()?).map_err(|e| CliError::io(&csv_path, e))
    }

    /// A table of the grid points and the check outcomes.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>8}  {:<28}  {:<30}  eta", "T", "dims", "bars");
        for p in &self.per_t {
            if let Some(f) = &p.failure {
                let _ = writeln!(s, "{:>8}  {}: {}", p.t, f.kind, f.message);
                continue;
            }
            let mut dims: Vec<(i64, usize)> = p.dims.iter().map(|(q, &n)| (q.parse().unwrap_or(0), n)).collect();
            dims.sort_unstable();
            let dims = dims.iter().map(|(q, n)| format!("{q}:{n}")).collect::<Vec<_>>().join(" ");
            let bars = p.barcode.as_ref().map_or("-".into(), format_bars);
            let eta = match p.eta.nonzero {
                Some(true) => "nonzero",
                Some(false) => "zero",
                None => "-",
            };
            let _ = writeln!(s, "{:>8}  {:<28}  {:<30}  {eta}", p.t, dims, bars);
        }
        if let Some(c) = &self.capacities {
            let vals = c.values.iter().map(|(k, v)| format!("c{k}={v}")).collect::<Vec<_>>().join(" ");
            let _ = writeln!(s, "capacities: {vals}{}", if c.complete { "" } else { " (incomplete)" });
        }
        for c in &self.checks {
            let _ = writeln!(s, "{}: {}", c.name, if c.passed { "pass".to_string() } else { format!("FAIL ({})", c.messages.join("; ")) });
        }
        s
    }
}

pub fn format_bars(b: &BarcodeDoc) -> String {
    let mut parts: Vec<String> = b.free.iter().map(|g| format!("[{g},∞)")).collect();
    parts.extend(b.torsion.iter().map(|(g, m)| format!("[{g},u^{m})")));
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}
