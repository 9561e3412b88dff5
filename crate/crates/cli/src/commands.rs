//! One function per subcommand. Each returns a JSON report plus optional
//! CSV and plot payloads; the caller decides where they go.

use matsusy_core::catalog::{self, Branch, FamilyId, LevelCount, Params};
use matsusy_core::eigensolve::{
    analytic_spectrum, analytic_union, compare_spectra, isospectral_check, isospectral_partner,
    numeric_levels, numeric_spectrum, state_count, GridInfo, SpectrumReport,
};
use matsusy_core::gridops::{
    assemble_hamiltonian, build_grid, gaussian_bump, intertwining_residual,
    shape_invariance_residual, Grid, WaveFunction,
};
use matsusy_core::report::{params_comment, spectrum_plot, wavefunction_plot, SpectrumTable};
use matsusy_core::states::{
    excited_state, ground_state_closed_form, ground_state_ode, ground_state_residual,
    rayleigh_quotient, GroundStateSpec,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Command, Method, RunConfig};
use crate::CliError;

/// Shape-invariance and factorization residuals must stay below this.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Sample points for the pointwise identity checks.
pub const IDENTITY_SAMPLES: usize = 200;
/// Accepted range for the observed intertwining order (second-order stencil).
pub const ORDER_RANGE: (f64, f64) = (1.7, 2.3);
/// Intertwining residuals below this count as exact regardless of order.
pub const INTERTWINING_FLOOR: f64 = 1e-8;

pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    pub csv: Option<String>,
    pub plot: Option<String>,
    /// Report without bulk arrays, written next to a CSV artifact.
    pub meta: Option<Value>,
    /// Extra line for stderr on failure.
    pub message: Option<String>,
}

impl Outcome {
    fn new(passed: bool, report: Value) -> Self {
        Outcome {
            passed,
            report,
            csv: None,
            plot: None,
            meta: None,
            message: None,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::List => Ok(list(cfg)),
        Command::Validate => Ok(validate(cfg)),
        Command::VerifySi => verify_si(cfg),
        Command::Spectrum => spectrum(cfg),
        Command::Ground => ground(cfg),
        Command::Excited => excited(cfg),
        Command::Isospectral => isospectral(cfg),
        Command::Sweep => sweep(cfg),
    }
}

fn envelope(cfg: &RunConfig, body: Value) -> Value {
    let mut v = json!({ "command": cfg.command.name(), "config": cfg });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn list(cfg: &RunConfig) -> Outcome {
    let families: Vec<Value> = FamilyId::ALL
        .iter()
        .map(|&f| {
            json!({
                "id": f.as_str(),
                "superpotential": f.describe(),
                "parameter_rules": f.parameter_rules(),
                "branches": catalog::defined_branches(f),
                "scalar_reference": f.scalar_reference(),
            })
        })
        .collect();
    Outcome::new(true, envelope(cfg, json!({ "families": families })))
}

fn level_count_value(c: LevelCount) -> Value {
    match c {
        LevelCount::Bounded(k) => json!(k),
        LevelCount::Unbounded => json!("unbounded"),
    }
}

fn validate(cfg: &RunConfig) -> Outcome {
    let (f, p) = (cfg.family(), cfg.params());
    if let Err(e) = catalog::validate_params(f, &p) {
        let msg = format!("invalid parameters: {e}");
        let mut o = Outcome::new(
            false,
            envelope(cfg, json!({ "verdict": msg, "branches": [] })),
        );
        o.message = Some(msg);
        return o;
    }
    let available = catalog::branch_availability(f, &p).unwrap_or_default();
    let branches: Vec<Value> = catalog::defined_branches(f)
        .into_iter()
        .map(|b| {
            let ok = available.contains(&b);
            json!({
                "branch": b,
                "available": ok,
                "admissible_levels": catalog::admissible_levels(f, b, &p).ok().map(level_count_value),
            })
        })
        .collect();
    let passed = !available.is_empty();
    let verdict = if passed {
        "ok".to_string()
    } else {
        format!("no normalizable branch for {f} at these parameters")
    };
    let mut o = Outcome::new(
        passed,
        envelope(cfg, json!({ "verdict": verdict, "branches": branches })),
    );
    if !passed {
        o.message = Some(verdict);
    }
    o
}

fn intertwining_at(f: FamilyId, p: &Params, n: usize) -> Result<f64, CliError> {
    let w = catalog::superpotential(f, Branch::KappaBranch, p)?;
    let (lo, hi) = w.window();
    let grid = Grid::uniform(lo, hi, n)?;
    let bump = gaussian_bump(&grid, 0.5 * (lo + hi), 0.06 * (hi - lo));
    Ok(intertwining_residual(f, p, &bump)?)
}

fn verify_si(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (f, p) = (cfg.family(), cfg.params());
    catalog::validate_params(f, &p)?;
    let vhat = catalog::potential(f, &p)?;
    let branches = match cfg.branch {
        Some(b) => vec![b],
        None => catalog::defined_branches(f),
    };
    let mut passed = true;
    let mut rows = Vec::new();
    for b in branches {
        let si = shape_invariance_residual(f, b, &p, IDENTITY_SAMPLES)?;
        let w = catalog::superpotential(f, b, &p)?;
        let c = catalog::factorization_constant(f, b, &p)?;
        let fact = w
            .sample_points(IDENTITY_SAMPLES)
            .iter()
            .map(|&x| {
                (catalog::factorization_residual(&w, &vhat, x)
                    - matsusy_core::Mat2::IDENTITY.scale(c))
                .max_abs()
            })
            .fold(0.0, f64::max);
        let extracted = catalog::extract_constant(&w, &vhat, IDENTITY_SAMPLES);
        let ok = si < IDENTITY_TOL && fact < IDENTITY_TOL;
        passed &= ok;
        let mut row = json!({
            "branch": b,
            "shape_invariance_residual": si,
            "factorization_residual": fact,
            "c": c,
            "c_extracted": extracted.as_ref().ok(),
            "c_extraction_error": extracted.as_ref().err().map(|e| e.to_string()),
            "shift_constant": catalog::shift_constant(f, b, &p)?,
            "ground_energy": -c,
            "ground_energy_opposite_sign": c,
            "passed": ok,
        });
        if b == Branch::MuBranch {
            if let Some(printed) = catalog::printed_mu_constant(f, &p) {
                row["c_printed"] = json!(printed);
                row["c_printed_minus_extracted"] = json!(printed - c);
            }
        }
        rows.push(row);
    }
    let n = cfg.grid.n;
    let coarse = intertwining_at(f, &p, n)?;
    let fine = intertwining_at(f, &p, 2 * n - 1)?;
    let order = (coarse / fine).log2();
    let inter_ok = fine < INTERTWINING_FLOOR || (ORDER_RANGE.0..=ORDER_RANGE.1).contains(&order);
    passed &= inter_ok;
    let body = json!({
        "conventions": {
            "factorization": "W^2 - W' = V + c I",
            "hamiltonian": "H = -d^2 + V = a+ a- - c",
            "energies": "E_n = -c(q + n)",
            "opposite_sign_form": "H = a+ a- + c would give E_n = +c(q + n); listed as ground_energy_opposite_sign",
        },
        "thresholds": {
            "identity": IDENTITY_TOL,
            "samples": IDENTITY_SAMPLES,
            "intertwining_order": [ORDER_RANGE.0, ORDER_RANGE.1],
            "intertwining_floor": INTERTWINING_FLOOR,
        },
        "branches": rows,
        "intertwining": {
            "branch": Branch::KappaBranch,
            "grid_n": [n, 2 * n - 1],
            "residual": [coarse, fine],
            "observed_order": order,
            "passed": inter_ok,
        },
        "passed": passed,
    });
    Ok(Outcome::new(passed, envelope(cfg, body)))
}

/// Analytic-versus-numeric comparison and the notes that explain its shape.
pub fn spectrum_report(
    f: FamilyId,
    branch: Option<Branch>,
    p: &Params,
    cfg: &RunConfig,
) -> Result<(SpectrumReport, Vec<String>), CliError> {
    catalog::validate_params(f, p)?;
    let available = catalog::branch_availability(f, p)?;
    let branches = match branch {
        Some(b) if available.contains(&b) => vec![b],
        Some(b) => {
            return Err(matsusy_core::Error::Branch(format!(
                "{b} has no normalizable ground state for {f}"
            ))
            .into())
        }
        None if available.is_empty() => {
            return Err(
                matsusy_core::Error::Branch(format!("no normalizable branch for {f}")).into(),
            )
        }
        None => available,
    };
    let mut notes = Vec::new();
    for &b in &branches {
        if let LevelCount::Bounded(k) = catalog::admissible_levels(f, b, p)? {
            if k < cfg.levels {
                notes.push(format!("n is bounded: {b} admits {k} level(s), n < {k}"));
            }
        }
    }
    let analytic = match branch {
        Some(b) => analytic_spectrum(f, b, p, cfg.levels)?,
        None => analytic_union(f, p, cfg.levels)?,
    };
    let grid = build_grid(f, p, cfg.grid.n, &cfg.policy())?;
    let vhat = catalog::potential(f, p)?;
    let k = state_count(&analytic).max(cfg.levels) + 2;
    let mut numeric = numeric_levels(&numeric_spectrum(&vhat, &grid, k)?);
    // Levels above the requested ones are not unexplained when a tower was cut.
    let mut truncated = false;
    for &b in &branches {
        truncated |= catalog::admissible_levels(f, b, p)?.allows(cfg.levels);
    }
    if let (true, Some(top)) = (
        truncated,
        analytic.iter().map(|l| l.energy).reduce(f64::max),
    ) {
        let tol = cfg.tolerance;
        numeric.retain(|l| l.energy <= top + tol.abs + tol.rel * top.abs());
    }
    let edge = catalog::continuum_edge(f, p);
    let report = compare_spectra(&analytic, &numeric, cfg.tolerance, edge).with_context(
        f,
        branch,
        *p,
        Some(&grid),
    );
    Ok((report, notes))
}

fn spectrum(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (f, p) = (cfg.family(), cfg.params());
    let (report, notes) = spectrum_report(f, cfg.branch, &p, cfg)?;
    let table = SpectrumTable::from(&report);
    let mut body = to_value(&table);
    body["notes"] = json!(notes);
    body["analytic_levels"] = json!(table.levels.len());
    let mut o = Outcome::new(table.passed, envelope(cfg, body));
    o.csv = Some(table.to_csv());
    o.plot = Some(spectrum_plot(&table, &[params_comment(f, cfg.branch, &p)]));
    if !table.passed {
        o.message = Some(format!(
            "{} unmatched analytic state(s), {} unexplained numeric level(s)",
            table.unmatched.len(),
            table.extras.len()
        ));
    }
    Ok(o)
}

fn resolve_branch(cfg: &RunConfig) -> Result<Branch, CliError> {
    let (f, p) = (cfg.family(), cfg.params());
    if let Some(b) = cfg.branch {
        return Ok(b);
    }
    catalog::branch_availability(f, &p)?
        .first()
        .copied()
        .ok_or_else(|| {
            matsusy_core::Error::Branch(format!("no normalizable branch for {f}")).into()
        })
}

fn arrays(psi: &WaveFunction) -> Value {
    json!({ "x": psi.grid().nodes(), "phi": psi.phi(), "xi": psi.xi() })
}

/// Shared tail of `ground` and `excited`.
fn state_outcome(
    cfg: &RunConfig,
    b: Branch,
    psi: &WaveFunction,
    energy: f64,
    mut body: Value,
) -> Result<Outcome, CliError> {
    let (f, p) = (cfg.family(), cfg.params());
    let h = assemble_hamiltonian(&catalog::potential(f, &p)?, psi.grid())?;
    let q = rayleigh_quotient(&h, psi)?;
    let ok = cfg.tolerance.accepts(energy, q);
    body["family"] = json!(f);
    body["branch"] = json!(b);
    body["norm_residual"] = json!((psi.norm_sq() - 1.0).abs());
    body["energy"] = json!(energy);
    body["rayleigh_quotient"] = json!(q);
    body["rayleigh_gap"] = json!((q - energy).abs());
    body["eigen_residual"] = json!(h.eigen_residual(psi, energy));
    body["grid_info"] = to_value(&GridInfo::from(psi.grid()));
    body["passed"] = json!(ok);
    let meta = body.clone();
    if let (Value::Object(m), Value::Object(a)) = (&mut body, arrays(psi)) {
        m.extend(a);
    }
    let mut o = Outcome::new(ok, envelope(cfg, body));
    o.csv = Some(psi.to_csv_string());
    let mut comment = vec![params_comment(f, Some(b), &p), format!("energy={energy}")];
    if let Some(n) = cfg.n {
        comment.push(format!("n={n}"));
    }
    o.plot = Some(wavefunction_plot(psi, &comment));
    if !ok {
        o.message = Some(format!(
            "Rayleigh quotient {q} is outside the tolerance around {energy}"
        ));
    }
    o.meta = Some(envelope(cfg, meta));
    Ok(o)
}

fn ground(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (f, p) = (cfg.family(), cfg.params());
    let b = resolve_branch(cfg)?;
    let grid = build_grid(f, &p, cfg.grid.n, &cfg.policy())?;
    let sol = cfg.solution.unwrap_or(1);
    let ode = ground_state_ode(f, b, &p, &grid)?;
    let (psi, energy) = match cfg.method.unwrap_or_default() {
        Method::Closed => ground_state_closed_form(&GroundStateSpec::new(f, b, sol, p), &grid)?,
        Method::Ode => {
            let psi = ode.get(usize::from(sol) - 1).cloned().ok_or_else(|| {
                matsusy_core::Error::Normalization(format!(
                    "the ODE construction found {} solution(s)",
                    ode.len()
                ))
            })?;
            (psi, -catalog::factorization_constant(f, b, &p)?)
        }
    };
    let w = catalog::superpotential(f, b, &p)?;
    let body = json!({
        "n": 0,
        "solutionIndex": sol,
        "method": cfg.method.unwrap_or_default(),
        "kernel_residual": ground_state_residual(&w, &psi)?,
        "degeneracy_on_grid": ode.len(),
    });
    state_outcome(cfg, b, &psi, energy, body)
}

fn excited(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (f, p) = (cfg.family(), cfg.params());
    let b = resolve_branch(cfg)?;
    let n = cfg.n.unwrap_or(0);
    let policy = cfg.policy();
    let policy = matsusy_core::gridops::TruncationPolicy {
        levels: policy.levels.max(n + 1),
        ..policy
    };
    let grid = build_grid(f, &p, cfg.grid.n, &policy)?;
    let (psi, energy) = excited_state(f, b, &p, n, &grid)?;
    // The ladder chain has no solution choice and ψ_n is not in the kernel of a⁻ for n > 0.
    let kernel = match n {
        0 => json!(ground_state_residual(
            &catalog::superpotential(f, b, &p)?,
            &psi
        )?),
        _ => Value::Null,
    };
    state_outcome(
        cfg,
        b,
        &psi,
        energy,
        json!({ "n": n, "solutionIndex": Value::Null, "kernel_residual": kernel }),
    )
}

fn isospectral(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (f, p) = (cfg.family(), cfg.params());
    let (sf, sp) = isospectral_partner(f, &p)?;
    let report = isospectral_check(f, &p, sf, &sp, cfg.levels, cfg.grid.n, cfg.tolerance)?;
    let table = SpectrumTable::from(&report);
    let mut body = to_value(&table);
    body["partner"] = json!({ "family": sf, "params": sp });
    let mut o = Outcome::new(table.passed, envelope(cfg, body));
    o.csv = Some(table.to_csv());
    o.plot = Some(spectrum_plot(
        &table,
        &[
            params_comment(f, None, &p),
            format!("reference {}", params_comment(sf, None, &sp)),
        ],
    ));
    if !table.passed {
        o.message = Some(format!(
            "{} reference level(s) unmatched, {} extra matrix level(s)",
            table.unmatched.len(),
            table.extras.len()
        ));
    }
    Ok(o)
}

#[derive(Debug, Clone, Serialize)]
struct SweepRow {
    value: f64,
    passed: bool,
    matched: usize,
    unmatched: usize,
    extras: usize,
    max_rel_gap: Option<f64>,
    error: Option<String>,
}

fn sweep_point(cfg: &RunConfig, value: f64) -> SweepRow {
    let sw = cfg.sweep.as_ref().expect("sweep settings");
    let mut p = cfg.params();
    sw.param.set(&mut p, value);
    match spectrum_report(cfg.family(), cfg.branch, &p, cfg) {
        Ok((r, _)) => SweepRow {
            value,
            passed: r.passed(),
            matched: r.matched.len(),
            unmatched: r.unmatched.len(),
            extras: r.extras.len(),
            max_rel_gap: Some(r.max_rel_gap()),
            error: None,
        },
        Err(e) => SweepRow {
            value,
            passed: false,
            matched: 0,
            unmatched: 0,
            extras: 0,
            max_rel_gap: None,
            error: Some(e.name().to_string()),
        },
    }
}

fn sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let values = cfg.sweep.as_ref().expect("sweep settings").values();
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(values.len())
        .max(1);
    let mut rows: Vec<Option<SweepRow>> = vec![None; values.len()];
    std::thread::scope(|s| {
        let chunk = values.len().div_ceil(workers);
        for (vals, out) in values.chunks(chunk).zip(rows.chunks_mut(chunk)) {
            s.spawn(move || {
                for (v, slot) in vals.iter().zip(out.iter_mut()) {
                    *slot = Some(sweep_point(cfg, *v));
                }
            });
        }
    });
    let rows: Vec<SweepRow> = rows
        .into_iter()
        .map(|r| r.expect("every point computed"))
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    let failed = rows.iter().filter(|r| !r.passed).count();
    let mut csv = String::from("value,passed,matched,unmatched,extras,max_rel_gap,error\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            matsusy_core::report::sci(r.value),
            r.passed,
            r.matched,
            r.unmatched,
            r.extras,
            r.max_rel_gap
                .map(matsusy_core::report::sci)
                .unwrap_or_default(),
            r.error.as_deref().unwrap_or("")
        ));
    }
    let mut o = Outcome::new(
        passed,
        envelope(
            cfg,
            json!({ "points": rows, "failed": failed, "passed": passed }),
        ),
    );
    o.csv = Some(csv);
    if !passed {
        o.message = Some(format!("{failed} of {} sweep point(s) failed", rows.len()));
    }
    Ok(o)
}
