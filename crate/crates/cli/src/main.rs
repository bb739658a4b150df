mod args;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use num_traits::{Signed, Zero};

use mtorus_core::framing::{compare_up_to_sign, psi_with, PhaseComparison};
use mtorus_core::modular::rademacher_phi_with;
use mtorus_core::verify::{run_suite, Suite, SuiteParams};
use mtorus_core::{
    classify, fixed_points, general_phase_prediction, rt_trace_su2, z_sqm_general, z_sqm_su2,
    z_trace_general_cosets, z_trace_general_weights, z_trace_su2, ComplexVal, Error,
    MonodromyClass, PhaseExact, PhiConvention, RootSystem, SL2Element,
};

use args::{Cli, Command, FixedPointArgs, GeneralArgs, GeneralFormula, Su2Args, Su2Formula, VerifyArgs};
use report::{rational, ComparisonRecord, FixedPointRecord, Record, Report, SuiteRecord, ValueRecord};

/// Process exit codes.
const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::NotUnimodular { .. } => EXIT_INVALID,
        Error::ParabolicMonodromy(_) | Error::CUnsupported(_) | Error::DegenerateFixedSet { .. } => {
            EXIT_UNSUPPORTED
        }
        Error::SingularLattice | Error::IllPosedSum(_) | Error::Internal(_) => EXIT_INTERNAL,
    }
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn comparison(kind: &str, lhs: &str, rhs: &str, k: i64, c: &PhaseComparison) -> ComparisonRecord {
    let mut rec = ComparisonRecord::new(kind, lhs, rhs, k, c.predicted);
    rec.ratio_re = c.ratio.map(|z| z.re);
    rec.ratio_im = c.ratio.map(|z| z.im);
    rec.sign = c.sign;
    rec.residual = c.abs_residual;
    rec.matches = c.match_up_to_sign;
    rec
}

/// `||lhs| − |rhs||`, the sign- and phase-free comparison.
fn modulus_comparison(lhs: &str, rhs: &str, k: i64, a: ComplexVal, b: ComplexVal, tol: f64) -> ComparisonRecord {
    let mut rec = ComparisonRecord::new("modulus", lhs, rhs, k, ComplexVal::new(1.0, 0.0));
    rec.residual = (a.norm() - b.norm()).abs();
    rec.matches = rec.residual < tol;
    rec
}

fn sign_phase(x: &num_bigint::BigInt) -> PhaseExact {
    PhaseExact::from_sign(if x.is_negative() { -1 } else { 1 })
}

/// `K(U)` for the trace formula when the caller changes the conventions.
fn k_factor(args: &Su2Args, u: &SL2Element) -> Result<Option<ComplexVal>, Error> {
    if let Some(q) = &args.k_override {
        return Ok(Some(PhaseExact::new(q.clone()).to_complex()));
    }
    let convention = PhiConvention::from(args.phi_sign);
    if convention == PhiConvention::Standard || u.c().is_zero() {
        return Ok(None);
    }
    let phi = rademacher_phi_with(u, convention)?;
    Ok(Some((PhaseExact::from_ratio(-phi, 8) * sign_phase(u.c())).to_complex()))
}

fn cmd_su2(args: &Su2Args, tol: f64, report: &mut Report) -> Result<(), Failure> {
    let levels = args.levels.resolve().map_err(Failure::Usage)?;
    let u = args.matrix.to_sl2()?;
    report.input("command", "su2");
    report.input("matrix", u.to_string());
    report.input("levels", levels.clone().collect::<Vec<_>>());
    report.input("formula", format!("{:?}", args.formula).to_lowercase());
    report.input("phi_sign", format!("{:?}", args.phi_sign).to_lowercase());
    report.input("k_override", args.k_override.as_ref().map(rational));
    report.input("tol", tol);

    let all = args.formula == Su2Formula::All;
    let k_override = k_factor(args, &u)?;
    let hyperbolic = classify(&u) == MonodromyClass::Hyperbolic;
    let predicted = if hyperbolic {
        let psi = psi_with(&u, args.phi_sign.into())?;
        report.input("psi", psi.to_string());
        Some((PhaseExact::from_ratio(-psi, 8) * sign_phase(&u.trace())).to_complex())
    } else {
        None
    };

    for k in levels {
        let sqm = if all || args.formula == Su2Formula::Sqm {
            Some(z_sqm_su2(&u, k)?)
        } else {
            None
        };
        let trace = if all || args.formula == Su2Formula::Trace {
            Some(z_trace_su2(&u, k, k_override)?)
        } else {
            None
        };
        let rt = if all || args.formula == Su2Formula::Rt {
            Some(rt_trace_su2(&u, k)?)
        } else {
            None
        };
        for r in [&sqm, &trace, &rt].into_iter().flatten() {
            report.results.push(Record::Value(ValueRecord::from(r)));
        }
        if let (Some(sqm), Some(trace), Some(rt)) = (&sqm, &trace, &rt) {
            let one = ComplexVal::new(1.0, 0.0);
            let c = compare_up_to_sign(trace.value, rt.value, one, tol);
            report.residual("trace_vs_rt", c.abs_residual);
            report.comparisons.push(comparison("identity", "trace_su2", "rt_su2", k, &c));
            let m = modulus_comparison("rt_su2", "sqm", k, rt.value, sqm.value, tol);
            report.residual("modulus_rt_vs_sqm", m.residual);
            report.comparisons.push(m);
            if let Some(pred) = predicted {
                let c = compare_up_to_sign(rt.value, sqm.value, pred, tol);
                report.residual("framing_rt_vs_sqm", c.abs_residual);
                report.comparisons.push(comparison("framing", "rt_su2", "sqm", k, &c));
            }
        }
    }
    Ok(())
}

fn cmd_general(args: &GeneralArgs, tol: f64, report: &mut Report) -> Result<(), Failure> {
    let levels = args.levels.resolve().map_err(Failure::Usage)?;
    let rs = RootSystem::build(args.group.family, args.group.rank)?;
    let p = args.p;
    report.input("command", "general");
    report.input("group", rs.name());
    report.input("p", p);
    report.input("levels", levels.clone().collect::<Vec<_>>());
    report.input("formula", format!("{:?}", args.formula).to_lowercase());
    report.input("tol", tol);

    let all = args.formula == GeneralFormula::All;
    let prediction = if all && p.abs() > 2 {
        let pr = general_phase_prediction(&rs, p)?;
        report.input("framing_calc", rational(pr.calc.exponent()));
        report.input("framing_expected", rational(pr.expected.exponent()));
        report.input("framing_sign", pr.residual_sign);
        Some(pr)
    } else {
        None
    };

    for k in levels {
        let sqm = if all || args.formula == GeneralFormula::Sqm {
            Some(z_sqm_general(&rs, p, k)?)
        } else {
            None
        };
        let weights = if all || args.formula == GeneralFormula::Weights {
            Some(z_trace_general_weights(&rs, p, k)?)
        } else {
            None
        };
        let cosets = if all || args.formula == GeneralFormula::Cosets {
            Some(z_trace_general_cosets(&rs, p, k)?)
        } else {
            None
        };
        for r in [&sqm, &weights, &cosets].into_iter().flatten() {
            report.results.push(Record::Value(ValueRecord::from(r)));
        }
        if let (Some(sqm), Some(weights), Some(cosets)) = (&sqm, &weights, &cosets) {
            let one = ComplexVal::new(1.0, 0.0);
            let c = compare_up_to_sign(weights.value, cosets.value, one, tol);
            report.residual("weights_vs_cosets", c.abs_residual);
            report.comparisons.push(comparison("identity", "trace_weights", "trace_cosets", k, &c));
            let m = modulus_comparison("trace_weights", "sqm_general", k, weights.value, sqm.value, tol);
            report.residual("modulus_weights_vs_sqm", m.residual);
            report.comparisons.push(m);
            let m = modulus_comparison("trace_cosets", "sqm_general", k, cosets.value, sqm.value, tol);
            report.residual("modulus_cosets_vs_sqm", m.residual);
            report.comparisons.push(m);
            if let Some(pr) = &prediction {
                let c = compare_up_to_sign(weights.value, sqm.value, pr.calc.to_complex(), tol);
                report.residual("framing_weights_vs_sqm", c.abs_residual);
                report.comparisons.push(comparison("framing", "trace_weights", "sqm_general", k, &c));
            }
        }
    }
    Ok(())
}

fn cmd_fixed_points(args: &FixedPointArgs, report: &mut Report) -> Result<(), Failure> {
    let u = args.matrix.to_sl2()?;
    let rs = RootSystem::build(args.family, args.rank)?;
    report.input("command", "fixed-points");
    report.input("matrix", u.to_string());
    report.input("group", rs.name());
    for w in rs.weyl_elements() {
        for fp in fixed_points(&rs, &u, w)? {
            report.results.push(Record::FixedPoint(FixedPointRecord {
                w_index: fp.w_index,
                det_w: fp.w.det,
                lam: fp.lam.iter().map(|x| x.to_string()).collect(),
                a_point: fp.a_point.iter().map(rational).collect(),
                cs: rational(&fp.cs),
                eps: fp.eps,
                absdet: fp.absdet.to_string(),
            }));
        }
    }
    Ok(())
}

/// Returns whether every selected suite passed.
fn cmd_verify(args: &VerifyArgs, tol: f64, report: &mut Report) -> Result<bool, Failure> {
    let mut suites = Vec::new();
    for name in &args.suites {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>()?);
        }
    }
    suites.dedup();
    let defaults = SuiteParams::default();
    let params = SuiteParams {
        max: args.max,
        entry_bound: args.trace_bound,
        c_max: args.c_max,
        levels: args.levels.clone(),
        draws: args.draws,
        seed: args.seed.unwrap_or(defaults.seed),
        tol,
    };
    if *params.levels.start() < 1 || params.levels.is_empty() {
        return Err(Failure::Usage(format!("levels must be ≥ 1 and nonempty, got {:?}", params.levels)));
    }
    report.input("command", "verify");
    report.input("suites", suites.iter().map(|s| s.name()).collect::<Vec<_>>());
    report.input("max", params.max);
    report.input("trace_bound", params.entry_bound);
    report.input("c_max", params.c_max);
    report.input("levels", params.levels.clone().collect::<Vec<_>>());
    report.input("draws", params.draws);
    report.input("seed", params.seed);
    report.input("tol", tol);

    let mut ok = true;
    for s in suites {
        let r = run_suite(s, &params)?;
        ok &= r.passed;
        report.residual(&r.name, r.max_residual);
        report.results.push(Record::Suite(SuiteRecord {
            suite: r.name,
            passed: r.passed,
            cases: r.cases,
            failed: r.failed,
            max_residual: r.max_residual,
            failures: r.failures,
        }));
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        eprintln!("error: --tol must be a positive number");
        return ExitCode::from(EXIT_INVALID);
    }
    let mut report = Report::default();
    let outcome = match &cli.command {
        Command::Su2(a) => cmd_su2(a, cli.tol, &mut report).map(|()| true),
        Command::General(a) => cmd_general(a, cli.tol, &mut report).map(|()| true),
        Command::FixedPoints(a) => cmd_fixed_points(a, &mut report).map(|()| true),
        Command::Verify(a) => cmd_verify(a, cli.tol, &mut report),
    };
    match outcome {
        Ok(passed) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if let Err(e) = report.write(cli.format, &mut out).and_then(|()| out.flush()) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INTERNAL)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Domain("x".into())), EXIT_INVALID);
        assert_eq!(exit_code(&Error::ParabolicMonodromy("T".into())), EXIT_UNSUPPORTED);
        assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
    }
}
