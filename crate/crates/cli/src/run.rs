use std::io::Write;

use fluxbound::ab_spectrum::{
    bound_doublet, continuum_doublet, solve_bound_energy, solve_paper_level, spectral_density, zero_mode, BoundLevel, ChannelIndices, DiracChannel,
    LevelVariant, Regime, CRITICAL_TOL,
};
use fluxbound::ac_spectrum::{ac_bound_energy, ac_classify, AcChannel, AcLevel, AcRegime};
use fluxbound::oracle::{dirac_shoot, schrodinger_shoot, ShootingConfig};
use fluxbound::Extension;
use rayon::prelude::*;

use crate::args::{AbSpec, AcAxis, AcSpec, Axis, ExtAxis, ExtSpec, Job, LevelEq, OracleTarget, RunSpec};
use crate::error::RunError;
use crate::table::{emit_table, Table, Value, AC_COLUMNS, DENSITY_COLUMNS, ORACLE_COLUMNS, SWEEP_COLUMNS, WAVEFUNCTION_COLUMNS};

type Row = Vec<Value>;

/// Worker count from `FLUXBOUND_THREADS`; `None` leaves rayon's default.
fn thread_cap() -> Result<Option<usize>, RunError> {
    match std::env::var("FLUXBOUND_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(RunError::domain("usage", format!("FLUXBOUND_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

/// Evaluates `f` on every item concurrently and keeps the rows in item
/// order; the first failing item (in order) decides the error.
fn par_rows<T, F>(items: &[T], f: F) -> Result<Vec<Row>, RunError>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Row>, RunError> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_cap()?.unwrap_or(0))
        .build()
        .map_err(|e| RunError::Internal(e.to_string()))?;
    let results: Vec<Result<Option<Row>, RunError>> = pool.install(|| items.par_iter().map(&f).collect());
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        if let Some(row) = r? {
            rows.push(row);
        }
    }
    Ok(rows)
}

fn extension(ext: ExtSpec) -> Result<Extension, RunError> {
    Ok(match ext {
        ExtSpec::Xi(xi) => Extension::from_xi(xi)?,
        ExtSpec::Theta(t) => Extension::from_theta(t)?,
    })
}

fn ext_points(ext: ExtAxis) -> Result<Vec<Extension>, RunError> {
    match ext {
        ExtAxis::Fixed(e) => Ok(vec![extension(e)?]),
        ExtAxis::Xi(g) => g.points().into_iter().map(|xi| Ok(Extension::from_xi(xi)?)).collect(),
    }
}

fn axis_points(a: Axis) -> Vec<f64> {
    match a {
        Axis::Fixed(v) => vec![v],
        Axis::Grid(g) => g.points(),
    }
}

fn cartesian<A: Copy, B: Copy>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

fn tau_value(idx: &ChannelIndices) -> Value {
    idx.tau.map_or(Value::Null, Value::from)
}

fn is_zero_mode_point(idx: &ChannelIndices, ext: &Extension) -> bool {
    idx.nu <= CRITICAL_TOL && !ext.is_infinite() && ext.xi() == -1.0
}

fn sweep_row(ch: &DiracChannel, idx: &ChannelIndices, xi: f64, e_over_m: f64, lambda_over_m: f64, residual: f64) -> Row {
    vec![
        idx.flux.beta.into(),
        ch.l().into(),
        ch.s().into(),
        ch.mu().into(),
        idx.nu.into(),
        tau_value(idx),
        xi.into(),
        e_over_m.into(),
        lambda_over_m.into(),
        residual.into(),
    ]
}

fn level_row(level: &BoundLevel) -> Row {
    let ch = level.channel;
    sweep_row(&ch, &ch.classify(), level.xi, level.e_over_m(), level.lambda_over_m(), level.residual)
}

fn variant(idx: &ChannelIndices, eq: LevelEq) -> Option<LevelVariant> {
    match eq {
        LevelEq::Master | LevelEq::Wr00 => None,
        LevelEq::Levab => Some(LevelVariant::Levab),
        LevelEq::Lev0lev1 if idx.flux.beta < 0.5 => Some(LevelVariant::Lev0),
        LevelEq::Lev0lev1 => Some(LevelVariant::Lev1),
    }
}

/// One bound-state row, `None` when the channel has no level at `ext`.
/// With `strict`, channels outside the extended regime are errors; without
/// it they are skipped.
fn ab_level_row(ch: &DiracChannel, ext: &Extension, eq: LevelEq, strict: bool) -> Result<Option<Row>, RunError> {
    let idx = ch.classify();
    if idx.regime != Regime::Extended {
        if eq == LevelEq::Master && is_zero_mode_point(&idx, ext) {
            return Ok(Some(level_row(&zero_mode(ch)?)));
        }
        if strict {
            return Err(RunError::domain("regime", format!("channel regime {} (nu = {}) has no extension family", idx.regime, idx.nu)));
        }
        return Ok(None);
    }
    match eq {
        LevelEq::Master => Ok(solve_bound_energy(ch, ext)?.map(|l| level_row(&l))),
        _ => {
            let m = ch.m();
            Ok(solve_paper_level(ch, ext, variant(&idx, eq))?.map(|(e, residual)| {
                let lambda = ((m - e) * (m + e)).sqrt();
                sweep_row(ch, &idx, ext.xi(), e / m, lambda / m, residual)
            }))
        }
    }
}

fn no_level(ext: &Extension) -> RunError {
    RunError::domain("no-level", format!("no bound level at xi = {}", ext.xi()))
}

fn ac_channel(m: f64, spec: AcSpec) -> Result<AcChannel, RunError> {
    Ok(match spec {
        AcSpec::Gamma(g) => AcChannel::with_gamma(m, g)?,
        AcSpec::Explicit { coupling, l, zeta } => AcChannel::new(m, coupling, l, zeta)?,
    })
}

fn ac_row(level: &AcLevel) -> Row {
    let ch = level.channel;
    vec![
        ch.gamma().into(),
        ch.l().into(),
        ch.zeta().into(),
        ch.coupling().into(),
        level.xi.into(),
        level.e_over_m().into(),
        level.kappa_over_m().into(),
        level.residual.into(),
    ]
}

fn ac_channels(m: f64, axis: AcAxis) -> Result<Vec<AcChannel>, RunError> {
    match axis {
        AcAxis::Fixed(spec) => Ok(vec![ac_channel(m, spec)?]),
        AcAxis::Gamma(g) => g.points().into_iter().map(|v| ac_channel(m, AcSpec::Gamma(v))).collect(),
    }
}

fn oracle_config(base: ShootingConfig, refine: u32, r_min: Option<f64>, tol: Option<f64>) -> Result<ShootingConfig, RunError> {
    let mut cfg = ShootingConfig { r_min: r_min.unwrap_or(base.r_min), tol: tol.unwrap_or(base.tol), ..base };
    for _ in 0..refine {
        cfg = cfg.refined();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn oracle_row(sector: &str, index: f64, xi: f64, analytic: Option<f64>, oracle: Option<(f64, f64)>) -> Option<Row> {
    if analytic.is_none() && oracle.is_none() {
        return None;
    }
    let diff = analytic.zip(oracle).map(|(a, (o, _))| (a - o).abs());
    Some(vec![
        Value::Text(sector.into()),
        index.into(),
        xi.into(),
        analytic.into(),
        oracle.map(|o| o.0).into(),
        diff.into(),
        oracle.map(|o| o.1).into(),
    ])
}

/// Computes the table for a validated spec.
pub fn execute(spec: &RunSpec) -> Result<Table, RunError> {
    thread_cap()?;
    let m = spec.mass;
    let dirac = |s: AbSpec, mu: f64| DiracChannel::new(m, s.l, s.s, mu).map_err(RunError::from);
    match spec.job {
        Job::AbSolve { spec: s, mu, ext, level_eq } => {
            let ch = dirac(s, mu)?;
            let ext = extension(ext)?;
            let row = ab_level_row(&ch, &ext, level_eq, true)?.ok_or_else(|| no_level(&ext))?;
            Ok(Table { columns: cols(&SWEEP_COLUMNS), rows: vec![row] })
        }
        Job::AbSweep { spec: s, mu, ext, level_eq } => {
            let points = cartesian(&axis_points(mu), &ext_points(ext)?);
            let rows = par_rows(&points, |(mu, ext)| ab_level_row(&dirac(s, *mu)?, ext, level_eq, false))?;
            Ok(Table { columns: cols(&SWEEP_COLUMNS), rows })
        }
        Job::AbDensity { spec: s, mu, ext, energies } => {
            let ch = dirac(s, mu)?;
            let idx = ch.classify();
            if idx.regime != Regime::Extended {
                return Err(RunError::domain("regime", format!("channel regime {} (nu = {}) has no extension family", idx.regime, idx.nu)));
            }
            let ext = extension(ext)?;
            let points: Vec<f64> = energies.points().into_iter().filter(|e| e.abs() > 1.0).collect();
            let rows = par_rows(&points, |e| {
                let p = spectral_density(&ch, &ext, e * m)?;
                Ok(Some(vec![(*e).into(), (p.density * m).into()]))
            })?;
            Ok(Table { columns: cols(&DENSITY_COLUMNS), rows })
        }
        Job::AbWavefunction { spec: s, mu, ext, radii, energy } => {
            let ch = dirac(s, mu)?;
            let ext = extension(ext)?;
            let (doublet, scale) = match energy {
                Some(e) => (continuum_doublet(&ch, &ext, e * m)?, 1.0),
                None => {
                    let idx = ch.classify();
                    let level = if idx.regime != Regime::Extended && is_zero_mode_point(&idx, &ext) {
                        zero_mode(&ch)?
                    } else {
                        solve_bound_energy(&ch, &ext)?.ok_or_else(|| no_level(&ext))?
                    };
                    (bound_doublet(&level)?, 1.0 / m.sqrt())
                }
            };
            let points = radii.points();
            let rows = par_rows(&points, |x| {
                let (f1, f2) = doublet.eval(x / m);
                Ok(Some(vec![(*x).into(), (f1 * scale).into(), (f2 * scale).into()]))
            })?;
            Ok(Table { columns: cols(&WAVEFUNCTION_COLUMNS), rows })
        }
        Job::AcSolve { spec: s, ext } => {
            let ch = ac_channel(m, s)?;
            let ext = extension(ext)?;
            let level = ac_bound_energy(&ch, &ext)?.ok_or_else(|| no_level(&ext))?;
            Ok(Table { columns: cols(&AC_COLUMNS), rows: vec![ac_row(&level)] })
        }
        Job::AcSweep { channel, ext } => {
            let points = cartesian(&ac_channels(m, channel)?, &ext_points(ext)?);
            let rows = par_rows(&points, |(ch, ext)| {
                if ac_classify(ch).1 == AcRegime::Regular {
                    return Ok(None);
                }
                Ok(ac_bound_energy(ch, ext)?.map(|l| ac_row(&l)))
            })?;
            Ok(Table { columns: cols(&AC_COLUMNS), rows })
        }
        Job::OracleCheck { target, ext, refine, r_min, tol } => {
            let exts = ext_points(ext)?;
            let rows = match target {
                OracleTarget::Ab { spec: s, mu } => {
                    let cfg = oracle_config(ShootingConfig::dirac(), refine, r_min, tol)?;
                    let points = cartesian(&axis_points(mu), &exts);
                    par_rows(&points, |(mu, ext)| {
                        let ch = dirac(s, *mu)?;
                        let idx = ch.classify();
                        if idx.regime != Regime::Extended {
                            return Ok(None);
                        }
                        let analytic = solve_bound_energy(&ch, ext)?.map(|l| l.e_over_m());
                        let oracle = dirac_shoot(&ch, ext, &cfg)?.map(|r| (r.energy / m, r.match_residual));
                        Ok(oracle_row("ab", idx.flux.beta, ext.xi(), analytic, oracle))
                    })?
                }
                OracleTarget::Ac(axis) => {
                    let cfg = oracle_config(ShootingConfig::schrodinger(), refine, r_min, tol)?;
                    let points = cartesian(&ac_channels(m, axis)?, &exts);
                    par_rows(&points, |(ch, ext)| {
                        let (g, regime) = ac_classify(ch);
                        if regime != AcRegime::Extended {
                            return Ok(None);
                        }
                        let analytic = ac_bound_energy(ch, ext)?.map(|l| l.e_over_m());
                        let oracle = schrodinger_shoot(ch, ext, &cfg)?.map(|r| (r.energy / m, r.match_residual));
                        Ok(oracle_row("ac", g, ext.xi(), analytic, oracle))
                    })?
                }
            };
            Ok(Table { columns: cols(&ORACLE_COLUMNS), rows })
        }
    }
}

fn cols(c: &[&str]) -> Vec<String> {
    c.iter().map(|s| s.to_string()).collect()
}

fn write_output(spec: &RunSpec, bytes: &[u8]) -> std::io::Result<()> {
    match &spec.output {
        Some(path) => std::fs::write(path, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// Runs a spec, writes its table, and returns the process exit code.
/// Failures are reported on stderr as one JSON line.
pub fn run(spec: &RunSpec) -> i32 {
    let result = execute(spec).and_then(|t| Ok(emit_table(&t, spec.format)?)).and_then(|bytes| {
        write_output(spec, &bytes).map_err(|e| RunError::Output(e.into()))
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
