//! Command-line front end.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::classical::verify_poisson_algebra;
use crate::error::Error as LibError;
use crate::model2d::{catalog, verify_all};
use crate::model3d::{
    box_degeneracy_scan, energy_3d, group_of, spectrum3d, Model3d, Spectrum3dEntry,
};
use crate::numerics::{fd_convergence_order, fd_cross_check};
use crate::quadalg::{
    casimir, casimir_printed, check_realization, extract_structure_constants, level_energy, phi_factorized,
    phi_general, representation, select_physical, verify_l_matrix, AlgebraOps, BranchSign, StructureConstants,
    UChoice,
};
use crate::report::{csv_float, write_csv, Check, Param, Report, Row};
use crate::wavefn::{
    chi_l, chibar_l, omega_zero_mode, psi_bar_nl, psi_nl, spectrum_2d, SmoothField, ZeroModeKind,
};

const EXIT_CODES: &str = "Exit codes:
  0  every check passed
  1  at least one check failed (the first failing id is printed to stderr)
  2  invalid command line or parameter values
  3  a computation could not be carried out
  4  the output could not be written";

#[derive(Parser, Debug)]
#[command(name = "pdm-channel", version, about = "Operator algebra, spectra and numerical checks for the sech² mass channel", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, allow_negative_numbers = true, global = true, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, allow_negative_numbers = true, global = true, default_value_t = 1.0)]
    pub q: f64,
    /// Cylinder radius.
    #[arg(long = "R", allow_negative_numbers = true, global = true, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run an identity suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
    },
    /// Lowest states of a model.
    Spectrum {
        #[arg(long, value_enum)]
        model: SpectrumModel,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// The L block on level N: closed form next to quadrature.
    Matelem {
        #[arg(long = "N")]
        n_total: u32,
    },
    /// Finite-difference eigenvalues of one x-channel against the closed form.
    Fdcheck {
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// Transverse parameter; overrides `--l` (which means δ = l+1).
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<f64>,
        /// Truncation length, default 12/q.
        #[arg(long, allow_negative_numbers = true)]
        x_max: Option<f64>,
        /// Cells of the coarse grid; the fine grid has twice as many.
        #[arg(long, default_value_t = 400)]
        nodes: usize,
    },
    /// Sample a planar field on a grid (always CSV: x, y, value).
    ExportField {
        /// psi:n,l | psibar:n,l | chi:l | chibar:l | omega:s | omegabar:s
        #[arg(long)]
        state: String,
        #[arg(long, default_value = "50x50")]
        grid: String,
    },
    /// Degenerate transverse labels of the box channel up to an energy.
    #[command(name = "spectrum3d-degeneracy")]
    Spectrum3dDegeneracy {
        #[arg(long, allow_negative_numbers = true, default_value_t = 200.0)]
        e_max: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Algebra2d,
    Quadratic,
    Classical,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumModel {
    #[value(name = "2d")]
    Planar,
    Box,
    Cyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] LibError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

/// Output of a command: the bytes to write and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub first_failure: Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn validate(cli: &Cli) -> Result<(), CliError> {
    for (name, v) in [("k", cli.k), ("q", cli.q), ("R", cli.radius)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(usage(format!("--{name} must be a positive number, got {v}")));
        }
    }
    Ok(())
}

fn base_params(cli: &Cli) -> BTreeMap<String, Param> {
    let mut p = BTreeMap::new();
    p.insert("k".into(), cli.k.into());
    p.insert("q".into(), cli.q.into());
    p.insert("format".into(), format!("{:?}", cli.format).to_lowercase().into());
    p
}

fn render(cli: &Cli, report: &Report, header: &[&str], csv_rows: Vec<Vec<String>>) -> Result<Outcome, CliError> {
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => {
            let mut buf = Vec::new();
            if header.is_empty() {
                let rows = report
                    .checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.id.clone(),
                            c.pass.to_string(),
                            csv_float(c.lhs.0),
                            csv_float(c.rhs.0),
                            csv_float(c.abs_err.0),
                            csv_float(c.rel_err.0),
                        ]
                    })
                    .collect::<Vec<_>>();
                write_csv(&mut buf, &["id", "pass", "lhs", "rhs", "abs_err", "rel_err"], &rows)?;
            } else {
                write_csv(&mut buf, header, &csv_rows)?;
            }
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    Ok(Outcome {
        text,
        first_failure: report.first_failure().map(|c| c.id.clone()),
    })
}

pub fn algebra2d_checks() -> Vec<Check> {
    verify_all(catalog())
        .iter()
        .map(|r| Check::exact(r.id.name(), r.residual.term_count()))
        .collect()
}

fn scalar_residual(a: &crate::coeffring::ScalarPoly, b: &crate::coeffring::ScalarPoly) -> usize {
    (a - b).len()
}

pub fn quadratic_checks(k: f64, q: f64) -> Result<Vec<Check>, LibError> {
    let cat = catalog();
    let mut out = Vec::new();
    let extracted = extract_structure_constants(cat)?;
    let printed = StructureConstants::printed();
    for ((name, got), (_, want)) in extracted.named().into_iter().zip(printed.named()) {
        out.push(Check::exact(format!("constant-{name}"), scalar_residual(got, want)));
    }

    let ops = AlgebraOps::new(cat);
    let kc = casimir(&ops, &extracted)?;
    let diff = &kc.in_h - &casimir_printed();
    out.push(Check::exact("casimir-in-h", diff.0.iter().map(|c| c.len()).sum()));
    out.push(Check::exact(
        "casimir-commutes-a",
        crate::diffalg::commutator(&kc.operator, &ops.a).term_count(),
    ));
    out.push(Check::exact(
        "casimir-commutes-b",
        crate::diffalg::commutator(&kc.operator, &ops.b).term_count(),
    ));
    let psi = psi_nl(0, 0, k, q)?;
    let num = kc.operator.numeric(q, k);
    let (x, y) = (0.7 / q, 0.2 / q);
    let on_psi = num.apply(&psi, x, y)? / psi.value(x, y);
    let e0 = crate::wavefn::energy_2d(0, k, q);
    out.push(Check::close("casimir-on-psi00", on_psi, kc.in_h.eval(q, k, e0), 1e-8));
    out.push(Check::exact(
        "phi-general-factorized",
        (&phi_general(&extracted, &kc.in_h) - &phi_factorized()).len(),
    ));

    for p in 0..=5 {
        for u in [UChoice::HalfK, UChoice::HalfKPlusHalf] {
            let tag = match u {
                UChoice::HalfK => "even",
                UChoice::HalfKPlusHalf => "odd",
            };
            let upper = representation(p, u, BranchSign::Upper)?;
            out.push(Check::exact(
                format!("upper-energy-p{p}-{tag}"),
                scalar_residual(&upper.energy, &level_energy(u.level(p))),
            ));
            let sel = select_physical(p, u)?;
            let lower_unphysical = sel
                .verdicts
                .iter()
                .filter(|v| v.sign == BranchSign::Lower)
                .all(|v| !v.physical);
            out.push(Check::flag(format!("lower-unphysical-p{p}-{tag}"), lower_unphysical));
            let rc = check_realization(&extracted, p, u, BranchSign::Upper, k, q)?;
            out.push(Check::within(format!("realization-p{p}-{tag}"), rc.max_residual(), 0.0, 1e-10));
        }
    }

    for n_total in 0..=6 {
        let r = verify_l_matrix(n_total, k, q)?;
        out.push(Check::within(format!("l-block-N{n_total}"), r.max_rel_err, 0.0, 1e-8));
        let worst = r
            .eigenvalues
            .iter()
            .zip(&r.eigenvalues_expected)
            .map(|(a, b)| (a - b).abs() / b.abs())
            .fold(0.0, f64::max);
        out.push(Check::within(format!("l-block-spectrum-N{n_total}"), worst, 0.0, 1e-8));
    }
    Ok(out)
}

pub fn classical_checks() -> Result<Vec<Check>, LibError> {
    Ok(verify_poisson_algebra()?
        .into_iter()
        .map(|c| {
            let mut ch = Check::exact(c.id, c.residual_term_count);
            ch.pass = c.holds;
            ch
        })
        .collect())
}

fn cmd_verify(cli: &Cli, scope: Scope) -> Result<Outcome, CliError> {
    let mut params = base_params(cli);
    let name = match scope {
        Scope::Algebra2d => "algebra2d",
        Scope::Quadratic => "quadratic",
        Scope::Classical => "classical",
        Scope::All => "all",
    };
    params.insert("scope".into(), name.into());
    let mut report = Report::new("verify", params);
    if matches!(scope, Scope::Algebra2d | Scope::All) {
        report.extend(algebra2d_checks());
    }
    if matches!(scope, Scope::Quadratic | Scope::All) {
        report.extend(quadratic_checks(cli.k, cli.q)?);
    }
    if matches!(scope, Scope::Classical | Scope::All) {
        report.extend(classical_checks()?);
    }
    render(cli, &report, &[], Vec::new())
}

fn spectrum_rows(entries: &[(String, String, f64, f64, u32)]) -> (Vec<Row>, Vec<Vec<String>>) {
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for (model, qn, delta, e, g) in entries {
        let mut r = Row::new();
        r.insert("model".into(), model.clone().into());
        r.insert("quantum_numbers".into(), qn.clone().into());
        r.insert("delta".into(), (*delta).into());
        r.insert("energy".into(), (*e).into());
        r.insert("degeneracy_group".into(), (*g).into());
        rows.push(r);
        csv_rows.push(vec![model.clone(), qn.clone(), csv_float(*delta), csv_float(*e), g.to_string()]);
    }
    (rows, csv_rows)
}

fn cmd_spectrum(cli: &Cli, model: SpectrumModel, count: usize) -> Result<Outcome, CliError> {
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let mut params = base_params(cli);
    params.insert("count".into(), count.into());
    let entries: Vec<(String, String, f64, f64, u32)> = match model {
        SpectrumModel::Planar => spectrum_2d(count, cli.k, cli.q)?
            .into_iter()
            .map(|e| ("2d".to_string(), format!("{};{}", e.n, e.l), (e.l + 1) as f64, e.energy, e.n_total))
            .collect(),
        SpectrumModel::Box | SpectrumModel::Cyl => {
            let m = if model == SpectrumModel::Box { Model3d::Box } else { Model3d::Cyl };
            if m == Model3d::Cyl {
                params.insert("R".into(), cli.radius.into());
            }
            spectrum3d(m, count, cli.k, cli.q, cli.radius)?
                .into_iter()
                .map(|e: Spectrum3dEntry| {
                    let qn = e.quantum_numbers;
                    let label = if m == Model3d::Box { "box" } else { "cyl" };
                    (label.to_string(), format!("{};{};{}", qn[0], qn[1], qn[2]), e.delta, e.energy, e.degeneracy_group)
                })
                .collect()
        }
    };
    let model_name = match model {
        SpectrumModel::Planar => "2d",
        SpectrumModel::Box => "box",
        SpectrumModel::Cyl => "cyl",
    };
    params.insert("model".into(), model_name.into());
    let mut report = Report::new("spectrum", params);
    report.push(Check::flag("ascending", entries.windows(2).all(|w| w[0].3 <= w[1].3)));
    let groups_consistent = entries
        .iter()
        .all(|a| entries.iter().filter(|b| b.4 == a.4).all(|b| b.3 == a.3));
    report.push(Check::flag("groups-share-energy", groups_consistent));
    let (rows, csv_rows) = spectrum_rows(&entries);
    report.rows = rows;
    render(
        cli,
        &report,
        &["model", "quantum_numbers", "delta", "energy", "degeneracy_group"],
        csv_rows,
    )
}

fn cmd_matelem(cli: &Cli, n_total: u32) -> Result<Outcome, CliError> {
    let mut params = base_params(cli);
    params.insert("N".into(), n_total.into());
    let r = verify_l_matrix(n_total, cli.k, cli.q)?;
    let analytic = r.analytic.matrix();
    let nus = r.analytic.nus.clone();
    let scale = analytic.amax();
    let mut report = Report::new("matelem", params);
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for i in 0..nus.len() {
        for j in 0..nus.len() {
            let (a, nq) = (analytic[(i, j)], r.numeric[(i, j)]);
            let id = format!("L[{},{}]", nus[i], nus[j]);
            if i.abs_diff(j) <= 1 {
                report.push(Check::close(id, nq.abs(), a.abs(), 1e-8));
            } else {
                report.push(Check::within(id, nq.abs(), 0.0, 1e-8 * scale));
            }
            let mut row = Row::new();
            row.insert("nu_row".into(), nus[i].into());
            row.insert("nu_col".into(), nus[j].into());
            row.insert("analytic".into(), a.into());
            row.insert("quadrature".into(), nq.into());
            rows.push(row);
            csv_rows.push(vec![nus[i].to_string(), nus[j].to_string(), csv_float(a), csv_float(nq)]);
        }
    }
    for (i, (got, want)) in r.eigenvalues.iter().zip(&r.eigenvalues_expected).enumerate() {
        report.push(Check::close(format!("eigenvalue-{i}"), *got, *want, 1e-8));
    }
    report.rows = rows;
    render(cli, &report, &["nu_row", "nu_col", "analytic", "quadrature"], csv_rows)
}

fn cmd_fdcheck(cli: &Cli, l: u32, delta: Option<f64>, x_max: Option<f64>, nodes: usize) -> Result<Outcome, CliError> {
    if nodes < 200 {
        return Err(usage(format!("--nodes must be at least 200, got {nodes}")));
    }
    let delta = delta.unwrap_or((l + 1) as f64);
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(usage(format!("--delta must be positive, got {delta}")));
    }
    let x_max = x_max.unwrap_or(12.0 / cli.q);
    if !(x_max > 0.0 && x_max.is_finite()) {
        return Err(usage(format!("--x-max must be positive, got {x_max}")));
    }
    let mut params = base_params(cli);
    params.insert("delta".into(), delta.into());
    params.insert("x_max".into(), x_max.into());
    params.insert("nodes".into(), nodes.into());
    let fd = fd_cross_check(delta, cli.k, cli.q, x_max, nodes)?;
    let mut report = Report::new("fdcheck", params);
    let mut csv_rows = Vec::new();
    for (n, got) in fd.extrapolated.iter().enumerate() {
        let want = energy_3d(n as u32, delta, cli.k, cli.q);
        report.push(Check::close(format!("eigenvalue-{n}"), *got, want, 1e-3));
        csv_rows.push(vec![
            n.to_string(),
            csv_float(fd.coarse[n]),
            csv_float(fd.fine[n]),
            csv_float(*got),
            csv_float(want),
        ]);
    }
    let exact = energy_3d(0, delta, cli.k, cli.q);
    let (_, order) = fd_convergence_order(delta, cli.k, cli.q, x_max, nodes / 2, 0, exact)?;
    report.push(Check::within("convergence-order", order, 2.0, 0.4));
    render(cli, &report, &["n", "coarse", "fine", "extrapolated", "analytic"], csv_rows)
}

fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("bad integer `{t}` in state"))))
        .collect()
}

fn parse_state(spec: &str, k: f64, q: f64) -> Result<SmoothField, CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("state `{spec}` must look like kind:args")))?;
    let nums = parse_ints(rest)?;
    let nonneg = |i: usize| -> Result<u32, CliError> {
        nums.get(i)
            .copied()
            .filter(|v| *v >= 0)
            .map(|v| v as u32)
            .ok_or_else(|| usage(format!("state `{spec}` needs non-negative arguments")))
    };
    let arity = |n: usize| -> Result<(), CliError> {
        if nums.len() == n {
            Ok(())
        } else {
            Err(usage(format!("state `{spec}` takes {n} argument(s)")))
        }
    };
    Ok(match kind {
        "psi" => {
            arity(2)?;
            psi_nl(nonneg(0)?, nonneg(1)?, k, q)?
        }
        "psibar" => {
            arity(2)?;
            psi_bar_nl(nonneg(0)?, nonneg(1)?, k, q)?
        }
        "chi" => {
            arity(1)?;
            chi_l(nonneg(0)?, q)
        }
        "chibar" => {
            arity(1)?;
            let l = nums[0];
            if l < -1 {
                return Err(usage("chibar takes l ≥ -1"));
            }
            chibar_l(l as i32, q)
        }
        "omega" | "omegabar" => {
            arity(1)?;
            let mode = if kind == "omega" { ZeroModeKind::Eta } else { ZeroModeKind::Etabar };
            omega_zero_mode(mode, nonneg(0)? as f64, k, q)?
        }
        _ => return Err(usage(format!("unknown state kind `{kind}`"))),
    })
}

fn cmd_export_field(cli: &Cli, state: &str, grid: &str) -> Result<Outcome, CliError> {
    let (nx, ny) = grid
        .split_once('x')
        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
        .filter(|&(a, b)| a >= 2 && b >= 2)
        .ok_or_else(|| usage(format!("grid `{grid}` must be NXxNY with both at least 2")))?;
    let field = parse_state(state, cli.k, cli.q)?;
    let (x_hi, y_edge) = (4.0 / cli.q, PI / (2.0 * cli.q));
    let mut rows = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        let x = x_hi * i as f64 / (nx - 1) as f64;
        for j in 0..ny {
            let y = -y_edge + 2.0 * y_edge * j as f64 / (ny - 1) as f64;
            rows.push(vec![csv_float(x), csv_float(y), csv_float(field.value(x, y))]);
        }
    }
    let mut buf = Vec::new();
    write_csv(&mut buf, &["x", "y", "value"], &rows)?;
    Ok(Outcome {
        text: String::from_utf8(buf).expect("csv is utf-8"),
        first_failure: None,
    })
}

fn cmd_degeneracy(cli: &Cli, e_max: f64) -> Result<Outcome, CliError> {
    if !e_max.is_finite() {
        return Err(usage(format!("--e-max must be finite, got {e_max}")));
    }
    let mut params = base_params(cli);
    params.insert("e_max".into(), e_max.into());
    let groups = box_degeneracy_scan(e_max, cli.k, cli.q)?;
    let mut report = Report::new("spectrum3d-degeneracy", params);
    let swap_closed = groups
        .iter()
        .all(|g| g.pairs.iter().all(|&(l, m)| g.pairs.contains(&(m, l))));
    report.push(Check::flag("swap-partners-grouped", swap_closed));
    if let Some(g) = group_of(&groups, 1, 8) {
        report.push(Check::flag(
            "accidental-85",
            g.delta_sq == 85 && g.pairs.contains(&(5, 6)) && g.accidental,
        ));
    }
    let mut csv_rows = Vec::new();
    for g in &groups {
        let pairs = g
            .pairs
            .iter()
            .map(|(l, m)| format!("{l},{m}"))
            .collect::<Vec<_>>()
            .join(";");
        let mut row = Row::new();
        row.insert("delta_sq".into(), (g.delta_sq as i64).into());
        row.insert("pairs".into(), pairs.clone().into());
        row.insert("accidental".into(), g.accidental.into());
        report.rows.push(row);
        csv_rows.push(vec![g.delta_sq.to_string(), pairs, g.accidental.to_string()]);
    }
    render(cli, &report, &["delta_sq", "pairs", "accidental"], csv_rows)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    validate(cli)?;
    match &cli.command {
        Command::Verify { scope } => cmd_verify(cli, *scope),
        Command::Spectrum { model, count } => cmd_spectrum(cli, *model, *count),
        Command::Matelem { n_total } => cmd_matelem(cli, *n_total),
        Command::Fdcheck { l, delta, x_max, nodes } => cmd_fdcheck(cli, *l, *delta, *x_max, *nodes),
        Command::ExportField { state, grid } => cmd_export_field(cli, state, grid),
        Command::Spectrum3dDegeneracy { e_max } => cmd_degeneracy(cli, *e_max),
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// Parse `args`, run, write the output and return the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = emit(&cli, &outcome.text) {
        eprintln!("error: {}", CliError::Io(e));
        return 4;
    }
    match outcome.first_failure {
        Some(id) => {
            eprintln!("check failed: {id}");
            1
        }
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("pdm-channel").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["pdm-channel", "verify", "--bogus"]).is_err());
        assert_eq!(main_with(["pdm-channel", "spectrum"]), 2);
    }

    #[test]
    fn bad_parameters_are_usage_errors() {
        let cli = parse(&["spectrum", "--model", "2d", "--k", "-1"]);
        assert_eq!(run(&cli).err().unwrap().exit_code(), 2);
        let cli = parse(&["export-field", "--state", "psi:0", "--grid", "5x5"]);
        assert_eq!(run(&cli).err().unwrap().exit_code(), 2);
    }

    #[test]
    fn planar_spectrum_csv() {
        let cli = parse(&["spectrum", "--model", "2d", "--count", "5", "--format", "csv"]);
        let out = run(&cli).unwrap();
        let lines: Vec<&str> = out.text.lines().collect();
        assert_eq!(lines[0], "model,quantum_numbers,delta,energy,degeneracy_group");
        assert_eq!(lines.len(), 6);
        assert!(lines[1].contains("6.00000000000e0"));
        assert!(lines[4].ends_with(",2"));
        assert!(out.first_failure.is_none());
    }

    #[test]
    fn export_grid_size() {
        let cli = parse(&["export-field", "--state", "psi:0,0", "--grid", "50x50"]);
        let out = run(&cli).unwrap();
        assert_eq!(out.text.lines().count(), 2501);
    }

    #[test]
    fn classical_scope_lists_casimir() {
        let cli = parse(&["verify", "--scope", "classical"]);
        let out = run(&cli).unwrap();
        assert!(out.first_failure.is_none());
        assert!(out.text.contains("\"classical-casimir\""));
    }

    #[test]
    fn degeneracy_scan_reports_85() {
        let cli = parse(&["spectrum3d-degeneracy"]);
        let out = run(&cli).unwrap();
        assert!(out.first_failure.is_none());
        assert!(out.text.contains("\"accidental-85\""));
    }
}
