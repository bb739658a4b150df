//! Framing corrections: the integer `ψ(U)` and the unit phases relating the
//! trace computations to the SQM fixed-point sums.
//!
//! The overall sign of the SQM sum is ambiguous, so every comparison here is
//! made up to a global `±1`, and the sign that fits is reported.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::gauss::{ComplexVal, PhaseExact};
use crate::modular::{classify, rademacher_phi_with, MonodromyClass, PhiConvention, SL2Element};
use crate::partition::{rt_trace_su2, z_sqm_general, z_sqm_su2, z_trace_general_weights};
use crate::roots::RootSystem;

/// `ψ(U) = Φ(U) − 3 sign(c(a + d))`, with the sign term taken as 0 when `c = 0`.
pub fn psi(u: &SL2Element) -> Result<BigInt> {
    psi_with(u, PhiConvention::Standard)
}

pub fn psi_with(u: &SL2Element, convention: PhiConvention) -> Result<BigInt> {
    let phi = rademacher_phi_with(u, convention)?;
    let s = (u.c() * u.trace()).signum();
    Ok(phi - BigInt::from(3) * s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseComparison {
    pub lhs: ComplexVal,
    pub rhs: ComplexVal,
    /// `lhs / rhs`, absent when `|rhs| ≤ tol`.
    pub ratio: Option<ComplexVal>,
    pub predicted: ComplexVal,
    pub match_up_to_sign: bool,
    /// The sign `s` minimising `|lhs − s·predicted·rhs|`, absent when `|rhs| ≤ tol`.
    pub sign: Option<i8>,
    /// `min_s |lhs − s·predicted·rhs|`.
    pub abs_residual: f64,
}

/// Compare `lhs` with `±predicted·rhs`.
pub fn compare_up_to_sign(lhs: ComplexVal, rhs: ComplexVal, predicted: ComplexVal, tol: f64) -> PhaseComparison {
    let plus = (lhs - predicted * rhs).norm();
    let minus = (lhs + predicted * rhs).norm();
    let degenerate = rhs.norm() <= tol;
    PhaseComparison {
        lhs,
        rhs,
        ratio: (!degenerate).then(|| lhs / rhs),
        predicted,
        match_up_to_sign: plus.min(minus) < tol,
        sign: (!degenerate).then_some(if plus <= minus { 1 } else { -1 }),
        abs_residual: plus.min(minus),
    }
}

/// `ζ^{−ψ(U)}·sign(a + d)` with `ζ = e^{2πi/8}`.
pub fn su2_predicted_phase(u: &SL2Element) -> Result<PhaseExact> {
    let psi = psi(u)?;
    let tr_sign = if u.trace().is_negative() { -1 } else { 1 };
    Ok(PhaseExact::from_ratio(-psi, 8) * PhaseExact::from_sign(tr_sign))
}

/// Compare `Tr R(U)` with the SQM sum for hyperbolic `U`.
pub fn su2_phase_check(u: &SL2Element, k: i64, tol: f64) -> Result<PhaseComparison> {
    if classify(u) != MonodromyClass::Hyperbolic {
        return Err(Error::domain(format!("phase comparison needs hyperbolic U, got {u}")));
    }
    let predicted = su2_predicted_phase(u)?.to_complex();
    let lhs = rt_trace_su2(u, k)?.value;
    let rhs = z_sqm_su2(u, k)?.value;
    Ok(compare_up_to_sign(lhs, rhs, predicted, tol))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPhasePrediction {
    /// `i^{|Δ₊|} e^{−πip⟨ρ,ρ⟩/h} e^{iπl sign(p)/4}`.
    pub calc: PhaseExact,
    /// `e^{−2πiψ dim G/24}` with `ψ = p − 3 sign p`.
    pub expected: PhaseExact,
    pub psi: i64,
    /// `(sign p)^{|Δ₊|}`, the sign separating `calc` from `expected`.
    pub residual_sign: i8,
}

/// Both framing phases for `U = T^p S`, checked to differ exactly by
/// `(sign p)^{|Δ₊|}`.
pub fn general_phase_prediction(rs: &RootSystem, p: i64) -> Result<GeneralPhasePrediction> {
    if p.abs() <= 2 {
        return Err(Error::domain(format!("framing phase needs |p| > 2, got {p}")));
    }
    let sp = p.signum();
    let rho2 = rs.pairing(&rs.rho, &rs.rho);
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let calc = PhaseExact::new(
        q(rs.n_pos as i64, 4) - rho2 * BigInt::from(p) / BigInt::from(2 * rs.h)
            + q(rs.rank as i64 * sp, 8),
    );
    let psi = p - 3 * sp;
    let expected = PhaseExact::from_ratio(-psi * rs.dim_g() as i64, 24);
    let residual_sign: i8 = if sp < 0 && rs.n_pos % 2 == 1 { -1 } else { 1 };
    if calc != &expected * &PhaseExact::from_sign(residual_sign.into()) {
        return Err(Error::internal(format!(
            "framing phases {calc} and {expected} do not differ by {residual_sign}"
        )));
    }
    Ok(GeneralPhasePrediction {
        calc,
        expected,
        psi,
        residual_sign,
    })
}

/// Compare the weight-sum trace formula with the SQM sum for `U = T^p S`,
/// predicting the ratio by the calculated framing phase.
pub fn general_phase_check(rs: &RootSystem, p: i64, k: i64, tol: f64) -> Result<PhaseComparison> {
    let prediction = general_phase_prediction(rs, p)?;
    let lhs = z_trace_general_weights(rs, p, k)?.value;
    let rhs = z_sqm_general(rs, p, k)?.value;
    Ok(compare_up_to_sign(lhs, rhs, prediction.calc.to_complex(), tol))
}
