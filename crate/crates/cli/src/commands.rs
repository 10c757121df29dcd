use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use qtele_core::canonical::{canonicalize, CanonicalForm, DetClass};
use qtele_core::metrics::{metrics_of, TeleportMetrics};
use qtele_core::numkernel::Vector3;
use qtele_core::optimal::{
    check_fidelity_concurrence_saturation, check_optimal, construct_optimal, OptimalFamilySpec,
    PropertyKind,
};
use qtele_core::properties::{report, PropertyReport};
use qtele_core::qstate::{parse_state_json, state_to_json, DensityMatrix};
use qtele_core::sim::{
    fidelity_stats_mc_with, optimal_protocol_stats, FidelityStats, QuadratureRule, StatsMethod,
    TeleportProtocol,
};
use qtele_core::Error;

use crate::output::{json_report, sig12, text_report};
use crate::{exit, Failure};

/// Allowed gap between the closed-form and simulated fidelity in a sweep.
const SWEEP_AGREEMENT: f64 = 1e-9;

fn load_state(path: &Path) -> Result<DensityMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: exit::PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(parse_state_json(&text)?.into_density()?)
}

fn emit<T: Serialize>(body: &T, text: bool) {
    let doc = if text { text_report(body) } else { json_report(body) };
    // A closed pipe on stdout is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{doc}");
}

#[derive(Serialize)]
struct CanonicalSummary {
    t_abs: Vector3,
    lambda: [i8; 3],
    det_class: DetClass,
    det_t: f64,
    r: Vector3,
    s: Vector3,
    degenerate: bool,
}

impl From<&CanonicalForm> for CanonicalSummary {
    fn from(c: &CanonicalForm) -> Self {
        CanonicalSummary {
            t_abs: c.t_abs,
            lambda: c.lambda,
            det_class: c.det_class,
            det_t: c.det_t,
            r: c.r,
            s: c.s,
            degenerate: c.degenerate,
        }
    }
}

#[derive(Serialize)]
struct Saturation {
    lambda_min: f64,
    eigvec_max_entangled: bool,
}

#[derive(Serialize)]
struct Bounds {
    f_max: f64,
    negativity_bound: f64,
    concurrence_bound: f64,
    chain_holds: bool,
}

#[derive(Serialize)]
struct AnalysisReport {
    input: String,
    canonical: CanonicalSummary,
    metrics: TeleportMetrics,
    properties: PropertyReport,
    /// Absent for separable states.
    saturation: Option<Saturation>,
    bounds: Bounds,
}

pub fn analyze(path: &Path, text: bool) -> Result<u8, Failure> {
    let rho = load_state(path)?;
    let c = canonicalize(&rho);
    let metrics = metrics_of(&c);
    let properties = report(&rho);
    let saturation = match check_fidelity_concurrence_saturation(&rho) {
        Ok(rep) => Some(Saturation {
            lambda_min: rep.lambda_min,
            eigvec_max_entangled: rep.eigvec_max_entangled,
        }),
        Err(Error::NotEntangled { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let nb = (2.0 + properties.negativity) / 3.0;
    let cb = (2.0 + properties.concurrence) / 3.0;
    let body = AnalysisReport {
        input: path.display().to_string(),
        canonical: (&c).into(),
        metrics,
        properties,
        saturation,
        bounds: Bounds {
            f_max: metrics.f_max,
            negativity_bound: nb,
            concurrence_bound: cb,
            chain_holds: metrics.f_max <= nb + 1e-9 && nb <= cb + 1e-9,
        },
    };
    emit(&body, text);
    Ok(exit::OK)
}

#[derive(Serialize)]
struct ConstructReport {
    out: String,
    family: OptimalFamilySpec,
    measured_value: f64,
    f_max: f64,
    delta: f64,
}

pub fn construct(kind: PropertyKind, value: f64, r: Option<Vector3>, out: &Path) -> Result<u8, Failure> {
    if r.is_some() && kind != PropertyKind::Concurrence {
        return Err(Failure {
            code: exit::PARSE,
            message: "--r applies only to --kind C".into(),
        });
    }
    let (family, rho) = construct_optimal(kind, value, r)?;
    fs::write(out, state_to_json(&rho) + "\n").map_err(|e| Failure {
        code: exit::PARSE,
        message: format!("cannot write {}: {e}", out.display()),
    })?;
    let m = metrics_of(&canonicalize(&rho));
    emit(
        &ConstructReport {
            out: out.display().to_string(),
            family,
            measured_value: kind.measure(&rho),
            f_max: m.f_max,
            delta: m.delta,
        },
        false,
    );
    Ok(exit::OK)
}

pub fn verify(path: &Path, kind: PropertyKind, value: f64, text: bool) -> Result<u8, Failure> {
    let rho = load_state(path)?;
    let verdict = check_optimal(&rho, kind, value)?;
    emit(&verdict, text);
    Ok(if verdict.is_optimal { exit::OK } else { exit::NOT_OPTIMAL })
}

#[derive(Serialize)]
struct SweepRow {
    value: f64,
    f_closed_form: f64,
    t_abs: f64,
    f_oracle: f64,
    delta_oracle: f64,
}

pub fn sweep(kind: PropertyKind, from: f64, to: f64, steps: usize, out: Option<&Path>) -> Result<u8, Failure> {
    kind.check_range(from)?;
    kind.check_range(to)?;
    if steps == 0 {
        return Err(Failure {
            code: exit::PARSE,
            message: "--steps must be positive".into(),
        });
    }
    let values: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                from
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let rule = QuadratureRule::default();
    let rows: Vec<SweepRow> = values
        .par_iter()
        .map(|&v| -> Result<SweepRow, Error> {
            let (spec, rho) = construct_optimal(kind, v, None)?;
            let stats = optimal_protocol_stats(&rho, &rule)?;
            Ok(SweepRow {
                value: v,
                f_closed_form: spec.f_largest,
                t_abs: spec.t_abs_target[0],
                f_oracle: stats.mean,
                delta_oracle: stats.deviation,
            })
        })
        .collect::<Result<_, _>>()?;

    if let Some(bad) = rows
        .iter()
        .find(|r| (r.f_closed_form - r.f_oracle).abs() >= SWEEP_AGREEMENT)
    {
        return Err(Failure {
            code: exit::NOT_OPTIMAL,
            message: format!(
                "closed form and simulation disagree at {} = {}: {} vs {}",
                kind.symbol(),
                bad.value,
                bad.f_closed_form,
                bad.f_oracle
            ),
        });
    }

    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(fs::File::create(p).map_err(|e| Failure {
            code: exit::PARSE,
            message: format!("cannot write {}: {e}", p.display()),
        })?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    for r in &rows {
        w.serialize(SweepRow {
            value: sig12(r.value),
            f_closed_form: sig12(r.f_closed_form),
            t_abs: sig12(r.t_abs),
            f_oracle: sig12(r.f_oracle),
            delta_oracle: sig12(r.delta_oracle),
        })
        .map_err(|e| Failure {
            code: exit::PARSE,
            message: format!("csv: {e}"),
        })?;
    }
    w.flush().map_err(|e| Failure {
        code: exit::PARSE,
        message: format!("csv: {e}"),
    })?;
    Ok(exit::OK)
}

#[derive(Serialize)]
struct ClosedForm {
    f_max: f64,
    delta: f64,
}

#[derive(Serialize)]
struct MonteCarlo {
    seed: u64,
    stats: FidelityStats,
    /// |mean − F| within four standard errors.
    within_4_sigma: bool,
}

#[derive(Serialize)]
struct OracleReport {
    input: String,
    closed_form: ClosedForm,
    design_exact: FidelityStats,
    abs_diff_f: f64,
    abs_diff_delta: f64,
    monte_carlo: Option<MonteCarlo>,
}

pub fn oracle(path: &Path, mc: Option<usize>, seed: u64, text: bool) -> Result<u8, Failure> {
    let rho = load_state(path)?;
    let c = canonicalize(&rho);
    let m = metrics_of(&c);
    let exact = optimal_protocol_stats(&rho, &QuadratureRule::default())?;
    let monte_carlo = match mc {
        Some(n) => {
            let stats = fidelity_stats_mc_with(&TeleportProtocol::singlet(), &c.apply_to(&rho), n, seed)?;
            let se = match stats.method {
                StatsMethod::MonteCarlo { std_error, .. } => std_error,
                StatsMethod::DesignExact { .. } => 0.0,
            };
            Some(MonteCarlo {
                seed,
                stats,
                within_4_sigma: (stats.mean - m.f_max).abs() <= 4.0 * se + 1e-12,
            })
        }
        None => None,
    };
    emit(
        &OracleReport {
            input: path.display().to_string(),
            closed_form: ClosedForm {
                f_max: m.f_max,
                delta: m.delta,
            },
            design_exact: exact,
            abs_diff_f: (exact.mean - m.f_max).abs(),
            abs_diff_delta: (exact.deviation - m.delta).abs(),
            monte_carlo,
        },
        text,
    );
    Ok(exit::OK)
}
