//! Exact phases and lattice Gauss sums.
//!
//! Every exponent that appears in the partition-function formulas is a
//! rational multiple of `2π`. Phases are therefore carried as exact rationals
//! reduced mod 1 and exponentiated once, at the end.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{coset_representatives, IntMatrix, ZVector};

pub type ComplexVal = Complex64;

/// The unit complex number `e^{2πi q}`, with `q ∈ [0, 1)` exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExact(BigRational);

impl PhaseExact {
    pub fn new(q: BigRational) -> Self {
        let floor = q.floor();
        PhaseExact(q - floor)
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "phase with zero denominator");
        let num = num.into();
        // Reduce the numerator first so the rational stays small.
        let (num, den) = if den < BigInt::zero() { (-num, -den) } else { (num, den) };
        PhaseExact(BigRational::new(num.mod_floor(&den), den))
    }

    pub fn zero() -> Self {
        PhaseExact(BigRational::zero())
    }

    /// `-1 = e^{2πi/2}`.
    pub fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    /// `±1` as a phase.
    pub fn from_sign(sign: i32) -> Self {
        match sign {
            1 => Self::zero(),
            -1 => Self::half(),
            _ => panic!("from_sign expects ±1, got {sign}"),
        }
    }

    /// The reduced exponent `q ∈ [0, 1)`.
    pub fn exponent(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn conj(&self) -> Self {
        PhaseExact::new(-self.0.clone())
    }

    pub fn pow(&self, n: impl Into<BigInt>) -> Self {
        PhaseExact::new(&self.0 * BigRational::from_integer(n.into()))
    }

    pub fn to_complex(&self) -> ComplexVal {
        let q = self.0.to_f64().expect("reduced phase is in [0, 1)");
        let (s, c) = (TAU * q).sin_cos();
        ComplexVal::new(c, s)
    }
}

impl Mul for &PhaseExact {
    type Output = PhaseExact;

    // Phases are stored as exponents, so multiplication adds them.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &PhaseExact) -> PhaseExact {
        PhaseExact::new(&self.0 + &rhs.0)
    }
}

impl Mul for PhaseExact {
    type Output = PhaseExact;

    fn mul(self, rhs: PhaseExact) -> PhaseExact {
        &self * &rhs
    }
}

impl fmt::Display for PhaseExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: ComplexVal,
    carry: ComplexVal,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: ComplexVal) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> ComplexVal {
        self.sum
    }
}

/// `Σ e^{2πi q}` over the phases in order.
pub fn sum_phases<'a>(phases: impl IntoIterator<Item = &'a PhaseExact>) -> ComplexVal {
    let mut acc = KahanSum::new();
    for p in phases {
        acc.add(p.to_complex());
    }
    acc.value()
}

pub(crate) fn ensure_finite(z: ComplexVal, what: &str) -> Result<ComplexVal> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::internal(format!("{what} produced a non-finite value {z}")))
    }
}

/// Number of representatives probed by the coset-invariance check.
const INVARIANCE_PROBES: usize = 4;

/// The phases `q(x)` for `x` running over [`coset_representatives`] of `B`,
/// after checking on a sample that `q(x + B m) ≡ q(x) (mod 1)`.
pub fn lattice_phases<F>(b: &IntMatrix, q: F) -> Result<Vec<PhaseExact>>
where
    F: Fn(&[BigInt]) -> BigRational,
{
    let reps = coset_representatives(b)?;
    check_coset_invariance(b, &reps, &q)?;
    Ok(reps.iter().map(|x| PhaseExact::new(q(x))).collect())
}

fn check_coset_invariance<F>(b: &IntMatrix, reps: &[ZVector], q: &F) -> Result<()>
where
    F: Fn(&[BigInt]) -> BigRational,
{
    let n = b.n_cols();
    let mut shifts: Vec<ZVector> = (0..n).map(|j| b.column(j)).collect();
    let all: ZVector = (0..b.n_rows())
        .map(|i| b.row(i).iter().sum::<BigInt>())
        .collect();
    shifts.push(all.iter().map(|x| -x).collect());
    for x in reps.iter().take(INVARIANCE_PROBES) {
        let base = q(x);
        for s in &shifts {
            let y: ZVector = x.iter().zip(s).map(|(a, b)| a + b).collect();
            let diff = q(&y) - &base;
            if !diff.is_integer() {
                return Err(Error::IllPosedSum(format!(
                    "q({x:?} + shift) - q({x:?}) = {diff} is not an integer"
                )));
            }
        }
    }
    Ok(())
}

/// `Σ_{x ∈ Z^n / B Z^n} e^{2πi q(x)}`, summed in representative order.
pub fn lattice_gauss_sum<F>(b: &IntMatrix, q: F) -> Result<ComplexVal>
where
    F: Fn(&[BigInt]) -> BigRational,
{
    let phases = lattice_phases(b, q)?;
    ensure_finite(sum_phases(&phases), "lattice Gauss sum")
}

/// Both sides of the Landsberg-Schaar identity
/// `Σ_{n<c} e^{πi a n²/c} = √(c/a) e^{πi/4} Σ_{n<a} e^{-πi c n²/a}`.
pub fn reciprocity_1d(a: i64, c: i64) -> Result<(ComplexVal, ComplexVal)> {
    if a <= 0 || c <= 0 {
        return Err(Error::domain(format!("reciprocity needs a, c > 0 (got {a}, {c})")));
    }
    if (a * c) % 2 != 0 {
        return Err(Error::domain(format!("reciprocity needs a·c even (got {a}, {c})")));
    }
    let lhs = sum_phases(
        &(0..c)
            .map(|n| PhaseExact::from_ratio(a * n * n, 2 * c))
            .collect::<Vec<_>>(),
    );
    let inner = sum_phases(
        &(0..a)
            .map(|n| PhaseExact::from_ratio(-c * n * n, 2 * a))
            .collect::<Vec<_>>(),
    );
    let rhs = ComplexVal::from_polar((c as f64 / a as f64).sqrt(), FRAC_PI_4) * inner;
    Ok((lhs, rhs))
}

impl Neg for PhaseExact {
    type Output = PhaseExact;

    fn neg(self) -> PhaseExact {
        self.conj()
    }
}

/// `e^{iπ x}` for a rational `x`, as an exact phase.
pub fn half_turns(x: BigRational) -> PhaseExact {
    PhaseExact::new(x / BigRational::from_integer(2.into()))
}
