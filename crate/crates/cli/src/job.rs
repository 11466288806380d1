//! Running one configured job into a report.

use chain::Report;
use ctinv::{
    c1_routes, capacities, circle_oracle, noneq_family, pointwise_family, s1_family_checked, spectrality_check, tautological_check, viterbo_compare,
    zl_family, PersistenceFamily, Theory,
};
use loopmodel::MetricGraph;

use crate::config::JobConfig;
use crate::report::{rational_or_inf, C1Doc, CapacityDoc, CheckDoc, PointDoc, ReportDoc};
use crate::CliError;

fn family(cfg: &JobConfig, g: &MetricGraph) -> Result<PersistenceFamily, CliError> {
    let p = &cfg.params;
    if !p.domain.is_field() {
        return Ok(pointwise_family(g, p, cfg.theory, &cfg.grid, cfg.jobs)?);
    }
    Ok(match cfg.theory {
        Theory::S1 => s1_family_checked(g, p, &cfg.grid, cfg.jobs, &|s| Ok(Some(tautological_check(s, p)?.report)))?,
        Theory::NonEquivariant => noneq_family(g, p, &cfg.grid, cfg.jobs)?,
        Theory::Zl(l) => zl_family(g, p, l, &cfg.grid, cfg.jobs)?,
    })
}

/// Every grid point was computed.
fn coverage(fam: &PersistenceFamily) -> Report {
    let mut rep = Report::new("grid coverage");
    for (t, r) in fam.grid.iter().zip(&fam.results) {
        if let Err(e) = r {
            rep.fail(format!("T = {t}: {e}"));
        }
    }
    rep
}

/// Runs the job; check failures are recorded in the report, never raised.
pub fn run_job(cfg: &JobConfig) -> Result<ReportDoc, CliError> {
    let g = cfg.model.build()?;
    let fam = family(cfg, &g)?;
    let mut per_t = Vec::new();
    for (t, r) in fam.grid.iter().zip(&fam.results) {
        per_t.push(match r {
            Ok(r) => PointDoc::from_result(r, cfg.kmax)?,
            Err(e) => PointDoc::failed(t, e),
        });
    }
    let mut checks: Vec<CheckDoc> = vec![(&coverage(&fam)).into()];
    if fam.maps.iter().any(Option::is_some) {
        checks.push((&fam.functoriality).into());
    }
    for (_, r) in fam.computed() {
        if let Some(gy) = &r.gysin {
            let mut named = gy.clone();
            named.name = format!("gysin at T = {}", r.t);
            checks.push((&named).into());
        }
    }
    checks.extend(fam.stage_checks.iter().map(CheckDoc::from));
    if let (Some(length), false) = (cfg.model.circle_length(), matches!(cfg.theory, Theory::Zl(_))) {
        checks.push((&viterbo_compare(&fam, |t| circle_oracle(length, t))).into());
        checks.push((&spectrality_check(&fam, length)).into());
    }
    let mut caps = None;
    if cfg.theory == Theory::S1 && cfg.kmax > 0 && cfg.params.domain.is_field() {
        let table = capacities(&fam, cfg.kmax)?;
        checks.push((&table.monotone).into());
        let noneq = noneq_family(&g, &cfg.params, &cfg.grid, cfg.jobs)?;
        let routes = c1_routes(&fam, &noneq)?;
        let mut agree = Report::new("c̄₁ routes");
        agree.require(routes.agree(), || {
            format!("divisibility gives {} but vanishing gives {}", rational_or_inf(routes.divisibility.as_ref()), rational_or_inf(routes.vanishing.as_ref()))
        });
        checks.push((&agree).into());
        let c1 = C1Doc { divisibility: rational_or_inf(routes.divisibility.as_ref()), vanishing: rational_or_inf(routes.vanishing.as_ref()), agree: routes.agree() };
        caps = Some(CapacityDoc::new(&table, Some(c1)));
    }
    Ok(ReportDoc { config: cfg.echo(), per_t, capacities: caps, checks })
}
