//! Partition functions of mapping tori by three routes: the SQM fixed-point
//! sum, the Gauss-sum trace formulas, and (for SU(2)) the trace of the level-k
//! modular representation.
//!
//! The defect factor `i^μ` is taken to be 1 throughout.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::gauss::{ensure_finite, lattice_phases, sum_phases, ComplexVal, KahanSum, PhaseExact};
use crate::intlinalg::{symmetric_inertia, IntMatrix, QVector, ZVector};
use crate::modular::{
    classify, rademacher_phi, word_decompose, Generator, GeneratorWord, MonodromyClass,
    SL2Element,
};
use crate::roots::{RootSystem, WeylElement};

/// Level `k`, dual Coxeter number `h` and the shifted level `r = k + h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelData {
    pub k: i64,
    pub h: i64,
    pub r: i64,
}

impl LevelData {
    pub fn new(k: i64, h: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::domain(format!("level must be ≥ 1, got {k}")));
        }
        Ok(LevelData { k, h, r: k + h })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Sqm,
    TraceSu2,
    RtSu2,
    SqmGeneral,
    TraceWeights,
    TraceCosets,
}

impl Formula {
    pub fn as_str(&self) -> &'static str {
        match self {
            Formula::Sqm => "sqm",
            Formula::TraceSu2 => "trace_su2",
            Formula::RtSu2 => "rt_su2",
            Formula::SqmGeneral => "sqm_general",
            Formula::TraceWeights => "trace_weights",
            Formula::TraceCosets => "trace_cosets",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionResult {
    pub value: ComplexVal,
    pub formula: Formula,
    /// `"SU(2)"` or a root-system name such as `"B2"`.
    pub group: String,
    /// The monodromy as a matrix, or `T^p S` for the general-group formulas.
    pub monodromy: String,
    pub level: LevelData,
    /// Number of exponentials summed.
    pub term_count: u64,
}

/// One exponential of an SQM sum: `sign/√absdet · e^{2πi phase}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SqmTerm {
    pub weight_sign: i8,
    pub absdet: BigInt,
    pub phase: PhaseExact,
}

fn rq(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn zq(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn ensure_not_parabolic(u: &SL2Element) -> Result<()> {
    if classify(u) == MonodromyClass::Parabolic {
        return Err(Error::ParabolicMonodromy(u.to_string()));
    }
    Ok(())
}

fn inv_sqrt(n: &BigInt) -> f64 {
    1.0 / n.to_f64().expect("determinant fits in f64").sqrt()
}

/// `(1/|W|) Σ term`, summing each term's unit phase with its weight.
fn sum_sqm_terms(terms: &[SqmTerm], weyl_order: usize) -> ComplexVal {
    let mut acc = KahanSum::new();
    for t in terms {
        acc.add(t.phase.to_complex() * (f64::from(t.weight_sign) * inv_sqrt(&t.absdet)));
    }
    acc.value() / weyl_order as f64
}

/// The terms of the SU(2) fixed-point sum over `w = ±1` and
/// `λ ∈ Z² / (wU − 1)Z²`, in that order.
pub fn sqm_su2_terms(u: &SL2Element, k: i64) -> Result<Vec<SqmTerm>> {
    ensure_not_parabolic(u)?;
    let level = LevelData::new(k, 2)?;
    let [a, b, c, d] = u.entries();
    let mut out = Vec::new();
    for s in [1i8, -1] {
        let sb = BigInt::from(s);
        let m = IntMatrix::from_rows(&[
            vec![&sb * a - 1, &sb * b],
            vec![&sb * c, &sb * d - 1],
        ]);
        let den: BigInt = u.trace() - &sb * 2;
        let r = BigInt::from(level.r);
        let phases = lattice_phases(&m, |x| {
            let (l1, l2) = (&x[0], &x[1]);
            let qf = -(c * l1 * l1) + b * l2 * l2 + (a - d) * l1 * l2;
            BigRational::new(&r * qf, den.clone())
        })?;
        let absdet = den.abs();
        out.extend(phases.into_iter().map(|phase| SqmTerm {
            weight_sign: s,
            absdet: absdet.clone(),
            phase,
        }));
    }
    Ok(out)
}

/// The SQM fixed-point partition function for SU(2) and hyperbolic or
/// elliptic `U`.
pub fn z_sqm_su2(u: &SL2Element, k: i64) -> Result<PartitionResult> {
    let terms = sqm_su2_terms(u, k)?;
    Ok(PartitionResult {
        value: ensure_finite(sum_sqm_terms(&terms, 2), "SU(2) SQM sum")?,
        formula: Formula::Sqm,
        group: "SU(2)".into(),
        monodromy: u.to_string(),
        level: LevelData::new(k, 2)?,
        term_count: terms.len() as u64,
    })
}

/// Phases `r(−cγ² + (a−d)γβ + bβ²)/D` of the trace-formula double sum for the
/// branch `D = a + d + 2·branch`, with `γ ∈ 1..=|D|` and `β ∈ 0..|c|`, or
/// `β ∈ 1..=|c|·|D|` when `extended`.
pub fn trace_su2_double_sum(u: &SL2Element, k: i64, branch: i8, extended: bool) -> Result<Vec<PhaseExact>> {
    ensure_not_parabolic(u)?;
    if u.c().is_zero() {
        return Err(Error::CUnsupported(u.to_string()));
    }
    if branch != 1 && branch != -1 {
        return Err(Error::domain(format!("branch must be ±1, got {branch}")));
    }
    let level = LevelData::new(k, 2)?;
    let small = |x: &BigInt| {
        x.to_i64()
            .filter(|v| v.abs() < 1 << 20)
            .ok_or_else(|| Error::domain(format!("entry {x} too large for the trace formula")))
    };
    let [a, b, c, d] = u.entries();
    let (a, b, c, d) = (small(a)?, small(b)?, small(c)?, small(d)?);
    let den = a + d + 2 * i64::from(branch);
    let (abs_c, abs_den) = (c.abs(), den.abs());
    let betas = if extended { 1..=abs_c * abs_den } else { 0..=abs_c - 1 };
    // Integer numerators stay far below i128 limits for |entries| < 2^20.
    let (r, amd, sd) = (i128::from(level.r), i128::from(a - d), i128::from(den.signum()));
    let (b, c) = (i128::from(b), i128::from(c));
    let mut out = Vec::with_capacity(betas.clone().count() * abs_den as usize);
    for beta in betas {
        let beta = i128::from(beta);
        for gamma in 1..=i128::from(abs_den) {
            let qf = r * (-c * gamma * gamma + amd * gamma * beta + b * beta * beta);
            let n = (sd * qf).rem_euclid(i128::from(abs_den));
            out.push(PhaseExact::from_ratio(n as i64, abs_den));
        }
    }
    Ok(out)
}

/// Default `K(U) = ζ^{−Φ(U)}·sign(c)` as an exact phase, `ζ = e^{2πi/8}`.
fn default_k_phase(u: &SL2Element) -> Result<PhaseExact> {
    let phi = rademacher_phi(u)?;
    Ok(PhaseExact::from_ratio(-phi, 8) * PhaseExact::from_sign(sign_of(u.c())))
}

/// The Gauss-sum trace formula for SU(2), `c ≠ 0`. `k_override` replaces
/// the constant `K(U)`.
pub fn z_trace_su2(u: &SL2Element, k: i64, k_override: Option<ComplexVal>) -> Result<PartitionResult> {
    ensure_not_parabolic(u)?;
    if u.c().is_zero() {
        return Err(Error::CUnsupported(u.to_string()));
    }
    let level = LevelData::new(k, 2)?;
    let k_phase = match k_override {
        Some(_) => PhaseExact::zero(),
        None => default_k_phase(u)?,
    };
    let k_factor = k_override.unwrap_or(ComplexVal::new(1.0, 0.0));
    let abs_c = u.c().abs();
    let mut total = KahanSum::new();
    let mut term_count = 0u64;
    for s in [1i8, -1] {
        let den: BigInt = u.trace() + BigInt::from(2 * s);
        let inner = trace_su2_double_sum(u, k, s, false)?;
        term_count += inner.len() as u64;
        // s/(2i) · K · ζ^{sign(cD)}
        let phase = PhaseExact::from_sign(i32::from(s))
            * PhaseExact::from_ratio(-1, 4)
            * k_phase.clone()
            * PhaseExact::from_ratio(sign_of(&(u.c() * &den)), 8);
        let scale = 0.5 / abs_c.to_f64().expect("|c| fits in f64") * inv_sqrt(&den.abs());
        total.add(phase.to_complex() * k_factor * scale * sum_phases(&inner));
    }
    Ok(PartitionResult {
        value: ensure_finite(total.value(), "SU(2) trace formula")?,
        formula: Formula::TraceSu2,
        group: "SU(2)".into(),
        monodromy: u.to_string(),
        level,
        term_count,
    })
}

/// Level-k SU(2) modular data on `a, b ∈ {1, …, r−1}`:
/// `S_ab = √(2/r) sin(πab/r)`, `T_ab = δ_ab e^{2πi(a²/4r − 1/8)}`.
pub fn rt_modular_data_su2(k: i64) -> Result<(CMatrix, CMatrix)> {
    let level = LevelData::new(k, 2)?;
    let r = level.r;
    let n = (r - 1) as usize;
    let norm = (2.0 / r as f64).sqrt();
    let s = CMatrix::from_fn(n, |i, j| {
        let (a, b) = ((i + 1) as i64, (j + 1) as i64);
        // Reduce ab mod 2r before converting to keep the angle small.
        let ab = (a * b).rem_euclid(2 * r) as f64;
        ComplexVal::new(norm * (PI * ab / r as f64).sin(), 0.0)
    });
    let t = CMatrix::from_diagonal(
        &(1..r)
            .map(|a| t_eigenphase(a, r, &BigInt::from(1)).to_complex())
            .collect::<Vec<_>>(),
    );
    Ok((s, t))
}

/// `n·(a²/(4r) − 1/8)` as an exact phase.
fn t_eigenphase(a: i64, r: i64, n: &BigInt) -> PhaseExact {
    PhaseExact::new(rq(n * BigInt::from(2 * a * a - r), 8 * r))
}

/// Trace of the image of `word` in the level-k representation, with
/// `−1 ↦ S²`.
pub fn rt_trace_word(word: &GeneratorWord, k: i64) -> Result<ComplexVal> {
    let level = LevelData::new(k, 2)?;
    let r = level.r;
    let (s, _) = rt_modular_data_su2(k)?;
    let n = s.dim();
    let mut acc = CMatrix::identity(n);
    for g in word.tokens() {
        acc = match g {
            Generator::S => &acc * &s,
            Generator::Neg => &(&acc * &s) * &s,
            Generator::T(p) => {
                let diag: Vec<ComplexVal> = (1..r).map(|a| t_eigenphase(a, r, p).to_complex()).collect();
                &acc * &CMatrix::from_diagonal(&diag)
            }
        };
    }
    ensure_finite(acc.trace(), "modular representation trace")
}

/// `Tr R(U)` in the level-k SU(2) modular representation.
pub fn rt_trace_su2(u: &SL2Element, k: i64) -> Result<PartitionResult> {
    let level = LevelData::new(k, 2)?;
    let word = word_decompose(u);
    Ok(PartitionResult {
        value: rt_trace_word(&word, k)?,
        formula: Formula::RtSu2,
        group: "SU(2)".into(),
        monodromy: u.to_string(),
        level,
        term_count: (level.r - 1) as u64,
    })
}

fn check_weight(rs: &RootSystem, lam: &[BigRational]) -> Result<()> {
    if lam.len() != rs.rank || !rs.is_weight(lam) {
        return Err(Error::domain(format!(
            "{lam:?} is not a weight of {} (coroot coordinates expected)",
            rs.name()
        )));
    }
    Ok(())
}

/// `g(λ) = Σ_w det(w) e^{πi⟨(p − 2w)λ, λ⟩/r}` for a weight `λ` given in
/// coroot coordinates.
pub fn g_lambda(rs: &RootSystem, p: i64, r: i64, lam: &[BigRational]) -> Result<ComplexVal> {
    check_weight(rs, lam)?;
    if r == 0 {
        return Err(Error::domain("r must be nonzero"));
    }
    Ok(g_lambda_unchecked(rs, p, r, lam))
}

fn g_lambda_unchecked(rs: &RootSystem, p: i64, r: i64, lam: &[BigRational]) -> ComplexVal {
    let norm = rs.pairing(lam, lam) * BigInt::from(p);
    let mut acc = KahanSum::new();
    for w in rs.weyl_elements() {
        let wl = w.apply_q(lam);
        let e = (&norm - rs.pairing(&wl, lam) * BigInt::from(2)) / BigInt::from(2 * r);
        acc.add(PhaseExact::new(e).to_complex() * f64::from(w.det));
    }
    acc.value()
}

/// Strictly dominant weights `λ` with `⟨λ, α_m⟩ < r`, in coroot coordinates,
/// listed by Dynkin labels in lexicographic order.
pub fn trace_weight_domain(rs: &RootSystem, r: i64) -> Vec<QVector> {
    // ⟨ϖ_i, α_m⟩ is the i-th coroot coordinate of the highest root.
    let marks: Vec<i64> = rs
        .highest_root
        .iter()
        .map(|x| {
            debug_assert!(x.is_integer());
            x.to_integer().to_i64().expect("small mark")
        })
        .collect();
    let l = rs.rank;
    let mut labels = vec![1i64; l];
    let mut out = Vec::new();
    let budget = |m: &[i64]| m.iter().zip(&marks).map(|(a, b)| a * b).sum::<i64>();
    if budget(&labels) >= r {
        return out;
    }
    loop {
        let m: ZVector = labels.iter().map(|&x| BigInt::from(x)).collect();
        out.push(rs.weight_from_fundamental(&m));
        // Odometer over labels, least significant last.
        let mut i = l;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            labels[i] += 1;
            if budget(&labels) < r {
                break;
            }
            labels[i] = 1;
        }
    }
}

fn rho_norm(rs: &RootSystem) -> BigRational {
    rs.pairing(&rs.rho, &rs.rho)
}

/// `i^{|Δ₊|} e^{−πip⟨ρ,ρ⟩/h}` as an exact phase.
fn general_prefactor_phase(rs: &RootSystem, p: i64) -> PhaseExact {
    let n_pos = BigInt::from(rs.n_pos);
    PhaseExact::new(rq(n_pos, 4) - rho_norm(rs) * BigInt::from(p) / BigInt::from(2 * rs.h))
}

fn t_p_s_label(p: i64) -> String {
    format!("T^{p} S")
}

/// The trace formula as a sum of `g(λ)` over the weight domain.
pub fn z_trace_general_weights(rs: &RootSystem, p: i64, k: i64) -> Result<PartitionResult> {
    let level = LevelData::new(k, rs.h)?;
    let r = level.r;
    let domain = trace_weight_domain(rs, r);
    let mut acc = KahanSum::new();
    for lam in &domain {
        acc.add(g_lambda_unchecked(rs, p, r, lam));
    }
    let index = rs.weight_lattice_index().to_f64().expect("small index");
    let scale = 1.0 / (index * (r as f64).powi(rs.rank as i32)).sqrt();
    let value = general_prefactor_phase(rs, p).to_complex() * scale * acc.value();
    Ok(PartitionResult {
        value: ensure_finite(value, "weight-sum trace formula")?,
        formula: Formula::TraceWeights,
        group: rs.name(),
        monodromy: t_p_s_label(p),
        level,
        term_count: (domain.len() * rs.weyl_order()) as u64,
    })
}

/// `B_w = p − w − w⁻¹` on the coroot lattice.
pub fn b_operator(rs: &RootSystem, p: i64, w: &WeylElement) -> IntMatrix {
    IntMatrix::scalar(rs.rank, p).sub(&w.matrix).sub(&w.inverse)
}

fn nonsingular_b(rs: &RootSystem, p: i64, w: &WeylElement) -> Result<(IntMatrix, BigInt)> {
    let b = b_operator(rs, p, w);
    let det = b.det();
    if det.is_zero() {
        return Err(Error::DegenerateFixedSet {
            monodromy: t_p_s_label(p),
            weyl: w.matrix.to_string(),
        });
    }
    Ok((b, det))
}

/// Phases `−r⟨B⁻¹σ, σ⟩/2` for `σ ∈ Λ^R / B Λ^R`.
fn b_coset_phases(rs: &RootSystem, b: &IntMatrix, r: i64) -> Result<Vec<PhaseExact>> {
    let inv = b.inverse_rational()?;
    let factor = rq(-r, 2);
    lattice_phases(b, |sigma| {
        let sq: QVector = sigma.iter().map(zq).collect();
        let binv_sigma: QVector = inv
            .iter()
            .map(|row| row.iter().zip(&sq).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
            .collect();
        rs.pairing(&binv_sigma, &sq) * &factor
    })
}

/// The trace formula as a sum over `w ∈ W` and `μ ∈ Λ^R / B_w Λ^R`.
pub fn z_trace_general_cosets(rs: &RootSystem, p: i64, k: i64) -> Result<PartitionResult> {
    let level = LevelData::new(k, rs.h)?;
    let mut acc = KahanSum::new();
    let mut term_count = 0u64;
    for w in rs.weyl_elements() {
        let (b, det) = nonsingular_b(rs, p, w)?;
        let phases = b_coset_phases(rs, &b, level.r)?;
        term_count += phases.len() as u64;
        // The form ⟨·, B_w ·⟩ is symmetric; its signature sets the eighth root of unity.
        let (pos, neg, _) = symmetric_inertia(&(&rs.gram * &b));
        let sig = PhaseExact::from_ratio(pos as i64 - neg as i64, 8);
        let weight = f64::from(w.det) * inv_sqrt(&det.abs());
        acc.add(sig.to_complex() * weight * sum_phases(&phases));
    }
    let value = general_prefactor_phase(rs, p).to_complex() * acc.value() / rs.weyl_order() as f64;
    Ok(PartitionResult {
        value: ensure_finite(value, "coset-sum trace formula")?,
        formula: Formula::TraceCosets,
        group: rs.name(),
        monodromy: t_p_s_label(p),
        level,
        term_count,
    })
}

/// Terms of the SQM sum for `U = T^p S`: `w ∈ W` in enumeration order, then
/// `σ ∈ Λ^R / B_w Λ^R`.
pub fn sqm_general_terms(rs: &RootSystem, p: i64, k: i64) -> Result<Vec<SqmTerm>> {
    if p.abs() == 2 {
        return Err(Error::ParabolicMonodromy(t_p_s_label(p)));
    }
    let level = LevelData::new(k, rs.h)?;
    let mut out = Vec::new();
    for w in rs.weyl_elements() {
        let (b, det) = nonsingular_b(rs, p, w)?;
        let absdet = det.abs();
        out.extend(b_coset_phases(rs, &b, level.r)?.into_iter().map(|phase| SqmTerm {
            weight_sign: w.det,
            absdet: absdet.clone(),
            phase,
        }));
    }
    Ok(out)
}

/// The SQM fixed-point partition function for `U = T^p S` and any supported group.
pub fn z_sqm_general(rs: &RootSystem, p: i64, k: i64) -> Result<PartitionResult> {
    let terms = sqm_general_terms(rs, p, k)?;
    Ok(PartitionResult {
        value: ensure_finite(sum_sqm_terms(&terms, rs.weyl_order()), "general SQM sum")?,
        formula: Formula::SqmGeneral,
        group: rs.name(),
        monodromy: t_p_s_label(p),
        level: LevelData::new(k, rs.h)?,
        term_count: terms.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;

    const GOLDEN: f64 = 1.618_033_988_749_895;

    fn close(a: ComplexVal, b: ComplexVal, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    fn re(x: f64) -> ComplexVal {
        ComplexVal::new(x, 0.0)
    }

    fn t3s() -> SL2Element {
        SL2Element::t_pow_s(3)
    }

    #[test]
    fn sqm_golden_values() {
        let z3 = z_sqm_su2(&t3s(), 3).unwrap();
        assert!(close(z3.value, re(1.0 - GOLDEN), 1e-12), "{}", z3.value);
        assert_eq!(z3.term_count, 6);
        assert!(close(z_sqm_su2(&t3s(), 1).unwrap().value, re(1.0), 1e-12));
    }

    #[test]
    fn sqm_vanishes_on_s() {
        for k in 1..=20 {
            let z = z_sqm_su2(&SL2Element::s(), k).unwrap();
            assert!(z.value.norm() < 1e-12, "k = {k}: {}", z.value);
        }
    }

    #[test]
    fn parabolic_and_c_zero_rejected() {
        let t = SL2Element::t();
        assert!(matches!(z_sqm_su2(&t, 3), Err(Error::ParabolicMonodromy(_))));
        assert!(matches!(z_trace_su2(&t, 3, None), Err(Error::ParabolicMonodromy(_))));
        // c = 0 forces trace ±2, so parabolicity is reported first.
        let hyp_c0 = SL2Element::from_i64(-1, 3, 0, -1).unwrap();
        assert!(matches!(z_trace_su2(&hyp_c0, 3, None), Err(Error::ParabolicMonodromy(_))));
        assert!(matches!(
            z_sqm_general(&RootSystem::build(Family::A, 1).unwrap(), 2, 3),
            Err(Error::ParabolicMonodromy(_))
        ));
        assert!(matches!(z_sqm_su2(&t3s(), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn trace_matches_rt_and_sqm_modulus() {
        let u = t3s();
        for k in 1..=8 {
            let tr = z_trace_su2(&u, k, None).unwrap().value;
            let rt = rt_trace_su2(&u, k).unwrap().value;
            let sqm = z_sqm_su2(&u, k).unwrap().value;
            assert!(close(tr, rt, 1e-9), "k = {k}: {tr} vs {rt}");
            assert!((tr.norm() - sqm.norm()).abs() < 1e-9);
        }
        assert!((z_trace_su2(&u, 3, None).unwrap().value.norm() - (GOLDEN - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn k_override_scales_linearly() {
        let u = SL2Element::from_i64(2, 1, 1, 1).unwrap();
        let one = z_trace_su2(&u, 2, Some(re(1.0))).unwrap().value;
        let i = z_trace_su2(&u, 2, Some(ComplexVal::new(0.0, 1.0))).unwrap().value;
        assert!(close(i, one * ComplexVal::new(0.0, 1.0), 1e-12));
    }

    #[test]
    fn domain_counting() {
        let u = SL2Element::from_i64(5, 2, 2, 1).unwrap();
        for s in [1, -1] {
            let inner = trace_su2_double_sum(&u, 3, s, false).unwrap();
            let ext = trace_su2_double_sum(&u, 3, s, true).unwrap();
            let det = (u.trace() + 2 * s as i64).to_i64().unwrap().abs();
            assert_eq!(ext.len(), inner.len() * det as usize);
            let mut a: Vec<_> = inner.iter().flat_map(|x| std::iter::repeat_n(x.clone(), det as usize)).collect();
            let mut b = ext.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn modular_data_relations() {
        for k in 1..=8 {
            let (s, t) = rt_modular_data_su2(k).unwrap();
            let n = s.dim();
            assert!(s.max_abs_diff(&s.transpose()) < 1e-12);
            let s2 = &s * &s;
            let s4 = &s2 * &s2;
            assert!(s4.max_abs_diff(&CMatrix::identity(n)) < 1e-10);
            let st = &s * &t;
            let st3 = &(&st * &st) * &st;
            assert!(st3.max_abs_diff(&s2) < 1e-10, "k = {k}");
        }
        let (s, _) = rt_modular_data_su2(1).unwrap();
        let c = (2.0f64 / 3.0).sqrt();
        assert!((s.get(0, 0).re - c * (PI / 3.0).sin()).abs() < 1e-15);
        assert!((s.get(1, 1).re - c * (4.0 * PI / 3.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn rt_identity_and_word_independence() {
        for k in 1..=6 {
            let id = rt_trace_su2(&SL2Element::identity(), k).unwrap().value;
            assert!(close(id, re((k + 1) as f64), 1e-12));
        }
        // T³S written two ways: directly, and as S⁴·T³·S.
        let w1 = GeneratorWord(vec![Generator::T(3.into()), Generator::S]);
        let w2 = GeneratorWord(vec![
            Generator::S,
            Generator::S,
            Generator::Neg,
            Generator::T(1.into()),
            Generator::T(2.into()),
            Generator::S,
        ]);
        assert_eq!(w1.evaluate(), w2.evaluate());
        for k in 1..=8 {
            assert!(close(rt_trace_word(&w1, k).unwrap(), rt_trace_word(&w2, k).unwrap(), 1e-9));
        }
    }

    #[test]
    fn g_examples() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let zero = vec![BigRational::zero()];
        assert!(g_lambda(&a1, 3, 5, &zero).unwrap().norm() < 1e-15);
        let varpi = a1.fundamental_weight(0);
        let expected = ComplexVal::from_polar(1.0, PI / 10.0) - ComplexVal::from_polar(1.0, PI / 2.0);
        assert!(close(g_lambda(&a1, 3, 5, &varpi).unwrap(), expected, 1e-14));
        let neg: QVector = varpi.iter().map(|x| -x).collect();
        assert!(close(g_lambda(&a1, 3, 5, &neg).unwrap(), expected, 1e-14));
        let quarter = vec![rq(1, 4)];
        assert!(matches!(g_lambda(&a1, 3, 5, &quarter), Err(Error::Domain(_))));
    }

    #[test]
    fn a1_weight_domain() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let dom = trace_weight_domain(&a1, 5);
        assert_eq!(dom.len(), 4);
        for (n, lam) in dom.iter().enumerate() {
            assert_eq!(a1.dynkin_labels(lam).unwrap(), vec![BigInt::from(n + 1)]);
        }
    }

    #[test]
    fn walls_contribute_nothing() {
        for (fam, l) in [(Family::A, 2), (Family::B, 2), (Family::C, 2), (Family::A, 3)] {
            let rs = RootSystem::build(fam, l).unwrap();
            let r = 2 + rs.h;
            for lam in trace_weight_domain(&rs, r) {
                let on_wall = rs.roots().iter().any(|a| {
                    let x = rs.pairing(&lam, a) / BigInt::from(r);
                    x.is_integer()
                });
                if on_wall {
                    assert!(g_lambda(&rs, 3, r, &lam).unwrap().norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn general_a1_values() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let sqm = z_sqm_general(&a1, 3, 3).unwrap().value;
        assert!(close(sqm, re(1.0 - GOLDEN), 1e-12));
        assert!(close(z_sqm_general(&a1, 3, 1).unwrap().value, re(1.0), 1e-12));
        let wts = z_trace_general_weights(&a1, 3, 3).unwrap();
        assert!((wts.value.norm() - (GOLDEN - 1.0)).abs() < 1e-12);
        let cos = z_trace_general_cosets(&a1, 3, 3).unwrap();
        assert!(close(wts.value, cos.value, 1e-9));
        assert_eq!(cos.term_count, 1 + 5);
        let w: Vec<_> = a1.weyl_elements().collect();
        assert_eq!(b_operator(&a1, 3, w[0]), IntMatrix::from_i64(1, 1, &[1]));
        assert_eq!(b_operator(&a1, 3, w[1]), IntMatrix::from_i64(1, 1, &[5]));
    }

    #[test]
    fn a2_weights_equal_cosets() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let w = z_trace_general_weights(&a2, 3, 2).unwrap().value;
        let c = z_trace_general_cosets(&a2, 3, 2).unwrap().value;
        assert!(close(w, c, 1e-9), "{w} vs {c}");
        assert!((w.norm() - (GOLDEN - 1.0)).abs() < 1e-9, "{w}");
        let s = z_sqm_general(&a2, 3, 2).unwrap().value;
        assert!((s.norm() - w.norm()).abs() < 1e-9);
    }

    #[test]
    fn a1_reduction_is_exact() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        for p in [-4, -3, 3, 4, 5, 7] {
            for k in 1..=8 {
                let mut g = sqm_general_terms(&a1, p, k).unwrap();
                let mut s = sqm_su2_terms(&SL2Element::t_pow_s(p), k).unwrap();
                g.sort();
                s.sort();
                assert_eq!(g, s, "p = {p}, k = {k}");
            }
        }
    }
}
