use std::fs::File;
use std::io::Write;

use dqdyn::costmodel::{classic_polynomials, gp_polynomials, ne_polynomials, CostPolynomial, OpCost};
use dqdyn::fixtures::{self, TwoLinkParams};
use dqdyn::validation::{validate, Baseline, Method, ValidationReport};
use dqdyn::SerialChain;

use crate::trajectory::Trajectory;
use crate::{Cli, CliError, Command, Format, MethodArg, NRange, RobotArgs};

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Idyn { robot, traj, method } => {
            let chain = load_robot(robot)?;
            let file = File::open(traj).map_err(|e| CliError::Input(format!("{}: {e}", traj.display())))?;
            let trajectory = Trajectory::parse(file, chain.dof())?;
            idyn(&chain, &trajectory, *method, out)
        }
        Command::Validate {
            robot,
            samples,
            seed,
            threshold,
            format,
        } => {
            let chain = load_robot(robot)?;
            let baseline = match robot.builtin.as_deref() {
                Some("twolink") => Baseline::TwoLink(TwoLinkParams::default()),
                _ => Baseline::Dqne,
            };
            let report = validate(&chain, baseline, *samples as usize, *seed)?;
            match format {
                Format::Table => write_validation_table(&report, *threshold, out)?,
                Format::Csv => write_validation_csv(&report, out)?,
            }
            if report.passes(*threshold) {
                Ok(())
            } else {
                Err(CliError::Threshold {
                    worst: report.worst_mean_percent(),
                    threshold: *threshold,
                })
            }
        }
        Command::Cost { n, format } => match format {
            Format::Table => write_cost_table(*n, out),
            Format::Csv => write_cost_csv(*n, out),
        },
    }
}

pub fn load_robot(args: &RobotArgs) -> Result<SerialChain, CliError> {
    match (&args.robot, &args.builtin) {
        (Some(path), _) => Ok(SerialChain::from_path(path)?),
        (None, Some(name)) => fixtures::builtin(name).ok_or_else(|| {
            CliError::Input(format!(
                "unknown builtin robot {name:?} (expected pendulum, twolink or seven)"
            ))
        }),
        (None, None) => Err(CliError::Input("either --robot or --builtin is required".into())),
    }
}

/// Writes `t, τ₁…τₙ` per trajectory row. An empty trajectory writes nothing.
pub fn idyn(
    chain: &SerialChain,
    trajectory: &Trajectory,
    method: MethodArg,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if trajectory.is_empty() {
        return Ok(());
    }
    let method = Method::from(method);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string()];
    header.extend((1..=chain.dof()).map(|j| format!("tau{j}")));
    w.write_record(&header)?;
    for row in &trajectory.rows {
        let tau = method
            .inverse_dynamics(chain, &row.q, &row.qdot, &row.qddot)
            .map_err(|e| CliError::Input(format!("line {}: {e}", row.line)))?;
        let mut record = vec![row.t.to_string()];
        record.extend(tau.iter().map(f64::to_string));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_validation_table(
    report: &ValidationReport,
    threshold: f64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    writeln!(
        out,
        "robot {}, baseline {}, {} samples, seed {}",
        report.robot, report.baseline, report.samples, report.seed
    )?;
    writeln!(
        out,
        "{:<6} {:>5} {:>12} {:>12} {:>12} {:>8} {:>8}",
        "method", "joint", "mean %", "std %", "max rel", "used", "excluded"
    )?;
    for m in &report.methods {
        for (j, s) in m.joints.iter().enumerate() {
            writeln!(
                out,
                "{:<6} {:>5} {:>12.3e} {:>12.3e} {:>12.3e} {:>8} {:>8}",
                m.method.name(),
                j + 1,
                s.mean_percent,
                s.std_percent,
                s.max_relative,
                s.used,
                s.excluded
            )?;
        }
    }
    let verdict = if report.passes(threshold) { "pass" } else { "FAIL" };
    writeln!(
        out,
        "worst mean {:.3e} %, threshold {threshold:e} %: {verdict}",
        report.worst_mean_percent()
    )?;
    Ok(())
}

pub fn write_validation_csv(report: &ValidationReport, out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "method",
        "joint",
        "mean_percent",
        "std_percent",
        "max_relative",
        "used",
        "excluded",
    ])?;
    for m in &report.methods {
        for (j, s) in m.joints.iter().enumerate() {
            w.write_record([
                m.method.name().to_string(),
                (j + 1).to_string(),
                format!("{:e}", s.mean_percent),
                format!("{:e}", s.std_percent),
                format!("{:e}", s.max_relative),
                s.used.to_string(),
                s.excluded.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Cost rows reported by `cost`, as `(key, label, polynomial in n)`.
pub fn cost_rows() -> Vec<(&'static str, &'static str, CostPolynomial)> {
    let ne = ne_polynomials();
    let gp = gp_polynomials();
    let classic = classic_polynomials();
    vec![
        ("ne_fkine", "dq-NE forward kinematics", ne.fkine),
        ("ne_twists", "dq-NE twists", ne.twists),
        (
            "ne_twist_derivatives",
            "dq-NE twist derivatives",
            ne.twist_derivatives,
        ),
        ("ne_wrenches", "dq-NE wrenches", ne.wrenches),
        ("ne_total", "dq-NE total", ne.total),
        ("gp_twist_jacobians", "dq-GP twist Jacobians", gp.twist_jacobians),
        (
            "gp_twist_jacobian_derivatives",
            "dq-GP Jacobian derivatives",
            gp.twist_jacobian_derivatives,
        ),
        ("gp_inertia", "dq-GP inertia matrix", gp.inertia),
        ("gp_coriolis", "dq-GP Coriolis matrix", gp.coriolis),
        ("gp_gravity", "dq-GP gravity vector", gp.gravity),
        ("gp_total", "dq-GP total", gp.total),
        ("classic_ne", "classic Newton-Euler", classic.newton_euler),
        ("classic_el", "classic Euler-Lagrange", classic.euler_lagrange),
    ]
}

fn count(c: &OpCost) -> (String, String) {
    (c.mults.to_string(), c.adds.to_string())
}

pub fn write_cost_csv(range: NRange, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = cost_rows();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string()];
    for (key, _, _) in &rows {
        header.push(format!("{key}_mults"));
        header.push(format!("{key}_adds"));
    }
    w.write_record(&header)?;
    for n in range.first..=range.last {
        let mut record = vec![n.to_string()];
        for (_, _, p) in &rows {
            let (m, a) = count(&p.eval(n));
            record.push(m);
            record.push(a);
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_cost_table(range: NRange, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = cost_rows();
    let mut table: Vec<Vec<String>> = vec![{
        let mut h = vec!["".to_string(), "mults".into(), "adds".into()];
        h.extend((range.first..=range.last).map(|n| format!("n = {n}")));
        h
    }];
    for (_, label, p) in &rows {
        let mut line = vec![label.to_string(), p.mults.to_string(), p.adds.to_string()];
        line.extend((range.first..=range.last).map(|n| {
            let (m, a) = count(&p.eval(n));
            format!("{m} / {a}")
        }));
        table.push(line);
    }
    let widths: Vec<usize> = (0..table[0].len())
        .map(|c| table.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for row in &table {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, &w))| {
                if c == 0 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end())?;
    }
    Ok(())
}
