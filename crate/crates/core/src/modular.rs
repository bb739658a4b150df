//! Arithmetic in SL(2,Z): classification, Dedekind sums, the Rademacher Φ
//! function and decomposition into words in the generators S and T.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An integer 2×2 matrix `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SL2Element {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl SL2Element {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::NotUnimodular {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
                d: d.to_string(),
                det: det.to_string(),
            });
        }
        Ok(SL2Element { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        SL2Element { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn neg_identity() -> Self {
        -Self::identity()
    }

    /// `S = [[0, -1], [1, 0]]`.
    pub fn s() -> Self {
        Self::raw(BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// `T = [[1, 1], [0, 1]]`.
    pub fn t() -> Self {
        Self::t_pow(BigInt::one())
    }

    /// `T^n = [[1, n], [0, 1]]`.
    pub fn t_pow(n: impl Into<BigInt>) -> Self {
        Self::raw(BigInt::one(), n.into(), BigInt::zero(), BigInt::one())
    }

    /// `T^p S = [[p, -1], [1, 0]]`, the `c = 1` family.
    pub fn t_pow_s(p: impl Into<BigInt>) -> Self {
        Self::t_pow(p) * Self::s()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn inverse(&self) -> Self {
        Self::raw(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

impl std::ops::Neg for SL2Element {
    type Output = SL2Element;

    fn neg(self) -> SL2Element {
        SL2Element::raw(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for &SL2Element {
    type Output = SL2Element;

    fn mul(self, rhs: &SL2Element) -> SL2Element {
        SL2Element::raw(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl Mul for SL2Element {
    type Output = SL2Element;

    fn mul(self, rhs: SL2Element) -> SL2Element {
        &self * &rhs
    }
}

impl fmt::Display for SL2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonodromyClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Conjugacy type of `U`, read off from `|Tr U|` compared with 2.
pub fn classify(u: &SL2Element) -> MonodromyClass {
    let tr = u.trace().abs();
    let two = BigInt::from(2);
    match tr.cmp(&two) {
        std::cmp::Ordering::Less => MonodromyClass::Elliptic,
        std::cmp::Ordering::Equal => MonodromyClass::Parabolic,
        std::cmp::Ordering::Greater => MonodromyClass::Hyperbolic,
    }
}

/// Largest modulus for which [`dedekind_sum`] uses the direct sum.
const DIRECT_SUM_LIMIT: u64 = 1 << 14;

/// The Dedekind sum `s(h, k) = Σ_{n=1}^{k-1} ((n/k)) ((hn/k))`.
///
/// Small moduli are summed directly; beyond that the reciprocity law is used
/// to reduce `(h, k)` Euclid-style.
pub fn dedekind_sum(h: &BigInt, k: &BigInt) -> Result<BigRational> {
    if !k.is_positive() {
        return Err(Error::domain(format!("Dedekind sum modulus must be ≥ 1, got {k}")));
    }
    match k.to_u64() {
        Some(small) if small <= DIRECT_SUM_LIMIT => Ok(dedekind_sum_direct(h, k)),
        _ => Ok(dedekind_sum_reciprocity(h, k)),
    }
}

/// Direct `O(k)` evaluation. `k` must be positive.
pub(crate) fn dedekind_sum_direct(h: &BigInt, k: &BigInt) -> BigRational {
    // ((n/k)) ((hn/k)) = (2n - k)(2m - k) / (4k^2) with m = hn mod k, m != 0.
    let hk = h.mod_floor(k);
    let mut num = BigInt::zero();
    let mut n = BigInt::one();
    while &n < k {
        let m = (&hk * &n).mod_floor(k);
        if !m.is_zero() {
            num += (BigInt::from(2) * &n - k) * (BigInt::from(2) * &m - k);
        }
        n += 1;
    }
    BigRational::new(num, BigInt::from(4) * k * k)
}

/// Evaluation through `s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12`.
pub(crate) fn dedekind_sum_reciprocity(h: &BigInt, k: &BigInt) -> BigRational {
    let g = h.gcd(k);
    let mut h = (h / &g).mod_floor(&(k / &g));
    let mut k = k / &g;
    let mut sign = BigRational::one();
    let mut acc = BigRational::zero();
    let twelfth = BigRational::new(1.into(), 12.into());
    let quarter = BigRational::new(1.into(), 4.into());
    // Invariant: s(original) = acc + sign * s(h, k), 0 <= h < k, gcd(h, k) = 1.
    while !h.is_zero() {
        let hk = BigRational::new(h.clone(), k.clone());
        let kh = BigRational::new(k.clone(), h.clone());
        let inv = BigRational::new(BigInt::one(), &h * &k);
        acc += &sign * (&twelfth * (hk + kh + inv) - &quarter);
        sign = -sign;
        let next = k.mod_floor(&h);
        k = h;
        h = next;
    }
    acc
}

fn sign_int(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign convention switch for Φ. `Standard` is the default everywhere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhiConvention {
    #[default]
    Standard,
    Negated,
}

/// Rademacher's Φ with the standard convention.
pub fn rademacher_phi(u: &SL2Element) -> Result<BigInt> {
    rademacher_phi_with(u, PhiConvention::Standard)
}

/// Rademacher's Φ: `b/d` when `c = 0`, otherwise
/// `(a + d)/c - 12 sign(c) s(d, |c|)`. The result must be an integer.
pub fn rademacher_phi_with(u: &SL2Element, convention: PhiConvention) -> Result<BigInt> {
    let value = if u.c.is_zero() {
        BigRational::new(u.b.clone(), u.d.clone())
    } else {
        let s = dedekind_sum(&u.d, &u.c.abs())?;
        BigRational::new(u.trace(), u.c.clone())
            - BigRational::from_integer(BigInt::from(12 * sign_int(&u.c))) * s
    };
    if !value.is_integer() {
        return Err(Error::internal(format!(
            "Rademacher phi of {u} evaluated to non-integer {value}"
        )));
    }
    let phi = value.to_integer();
    Ok(match convention {
        PhiConvention::Standard => phi,
        PhiConvention::Negated => -phi,
    })
}

/// A generator token of a word in SL(2,Z).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S,
    T(BigInt),
    /// The central element `-I`.
    Neg,
}

impl Generator {
    pub fn matrix(&self) -> SL2Element {
        match self {
            Generator::S => SL2Element::s(),
            Generator::T(n) => SL2Element::t_pow(n.clone()),
            Generator::Neg => SL2Element::neg_identity(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn tokens(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self) -> SL2Element {
        word_evaluate(self)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match g {
                Generator::S => write!(f, "S")?,
                Generator::T(n) => write!(f, "T^{n}")?,
                Generator::Neg => write!(f, "-I")?,
            }
        }
        Ok(())
    }
}

/// Product of the generator matrices in order.
pub fn word_evaluate(word: &GeneratorWord) -> SL2Element {
    word.0
        .iter()
        .fold(SL2Element::identity(), |acc, g| &acc * &g.matrix())
}

/// Writes `U` as `T^{q_1} S T^{q_2} S ... [-I] T^{b}` by the Euclidean
/// algorithm on the first column.
pub fn word_decompose(u: &SL2Element) -> GeneratorWord {
    let mut word = Vec::new();
    let mut m = u.clone();
    while !m.c.is_zero() {
        let q = m.a.div_floor(&m.c);
        // m <- S^{-1} T^{-q} m
        let a = &m.a - &q * &m.c;
        let b = &m.b - &q * &m.d;
        if !q.is_zero() {
            word.push(Generator::T(q));
        }
        word.push(Generator::S);
        m = SL2Element::raw(m.c, m.d, -a, -b);
    }
    if m.a.is_negative() {
        word.push(Generator::Neg);
        m = -m;
    }
    if !m.b.is_zero() {
        word.push(Generator::T(m.b));
    }
    GeneratorWord(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> SL2Element {
        SL2Element::from_i64(a, b, c, d).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sign(x: &BigInt) -> i64 {
        sign_int(x) as i64
    }

    #[test]
    fn construction_rejects_non_unimodular() {
        assert!(matches!(
            SL2Element::from_i64(1, 1, 1, 1),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(SL2Element::from_i64(2, 0, 0, 2).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&SL2Element::s()), MonodromyClass::Elliptic);
        assert_eq!(classify(&SL2Element::t()), MonodromyClass::Parabolic);
        assert_eq!(classify(&m(3, -1, 1, 0)), MonodromyClass::Hyperbolic);
        assert_eq!(classify(&SL2Element::neg_identity()), MonodromyClass::Parabolic);
    }

    #[test]
    fn dedekind_examples() {
        let s = |h: i64, k: i64| dedekind_sum(&h.into(), &k.into()).unwrap();
        assert_eq!(s(0, 1), q(0, 1));
        assert_eq!(s(1, 2), q(0, 1));
        assert_eq!(s(1, 3), q(1, 18));
        assert!(dedekind_sum(&1.into(), &0.into()).is_err());
        assert!(dedekind_sum(&1.into(), &(-3).into()).is_err());
    }

    #[test]
    fn dedekind_reciprocity_path_matches_direct() {
        for k in 1..60i64 {
            for h in -70..70i64 {
                let (h, k) = (BigInt::from(h), BigInt::from(k));
                assert_eq!(
                    dedekind_sum_direct(&h, &k),
                    dedekind_sum_reciprocity(&h, &k),
                    "s({h},{k})"
                );
            }
        }
    }

    #[test]
    fn phi_examples() {
        for p in -6..=6i64 {
            assert_eq!(rademacher_phi(&SL2Element::t_pow(p)).unwrap(), p.into());
            assert_eq!(rademacher_phi(&SL2Element::t_pow_s(p)).unwrap(), p.into());
        }
        assert_eq!(rademacher_phi(&SL2Element::s()).unwrap(), 0.into());
        assert_eq!(
            rademacher_phi_with(&SL2Element::t_pow_s(4), PhiConvention::Negated).unwrap(),
            (-4).into()
        );
    }

    #[test]
    fn word_examples() {
        let w = GeneratorWord(vec![Generator::S, Generator::S]);
        assert_eq!(word_evaluate(&w), SL2Element::neg_identity());
        let w = GeneratorWord(vec![Generator::T(3.into()), Generator::S]);
        assert_eq!(word_evaluate(&w), m(3, -1, 1, 0));
        assert_eq!(word_evaluate(&GeneratorWord::default()), SL2Element::identity());

        assert!(word_decompose(&SL2Element::identity()).is_empty());
        let neg = word_decompose(&SL2Element::neg_identity());
        assert!(neg.tokens().contains(&Generator::Neg));
        assert_eq!(neg.evaluate(), SL2Element::neg_identity());
        let u = m(3, -1, 1, 0);
        assert_eq!(word_decompose(&u).evaluate(), u);
        assert_eq!(word_decompose(&u).to_string(), "T^3 S");
    }

    fn arb_word() -> impl Strategy<Value = SL2Element> {
        prop::collection::vec(prop_oneof![Just(None), (-5i64..=5).prop_map(Some)], 1..8).prop_map(
            |toks| {
                toks.into_iter()
                    .map(|t| match t {
                        None => SL2Element::s(),
                        Some(n) => SL2Element::t_pow(n),
                    })
                    .fold(SL2Element::identity(), |a, b| a * b)
            },
        )
    }

    fn arb_big_sl2() -> impl Strategy<Value = SL2Element> {
        // (a, c) coprime, then complete with a Bezout pair and a random T-shift.
        (-1_000_000i64..=1_000_000, -1_000_000i64..=1_000_000, -50i64..=50)
            .prop_filter("coprime", |(a, c, _)| a.gcd(c) == 1)
            .prop_map(|(a, c, t)| {
                let e = num_integer::Integer::extended_gcd(&a, &c);
                // a*x + c*y = 1  =>  [[a, -y], [c, x]]
                let base = SL2Element::from_i64(a, -e.y, c, e.x).unwrap();
                base * SL2Element::t_pow(t)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn decompose_round_trip(u in arb_big_sl2()) {
            prop_assert_eq!(word_decompose(&u).evaluate(), u);
        }
    }

    proptest! {
        #[test]
        fn phi_cocycle(u1 in arb_word(), u2 in arb_word()) {
            let u12 = &u1 * &u2;
            prop_assume!(!u1.c().is_zero() && !u2.c().is_zero() && !u12.c().is_zero());
            let lhs = rademacher_phi(&u12).unwrap();
            let rhs = rademacher_phi(&u1).unwrap() + rademacher_phi(&u2).unwrap()
                - BigInt::from(3 * sign(u1.c()) * sign(u2.c()) * sign(u12.c()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn phi_antisymmetric_on_hyperbolic(u in arb_word()) {
            prop_assume!(classify(&u) == MonodromyClass::Hyperbolic);
            prop_assert_eq!(
                rademacher_phi(&u.inverse()).unwrap(),
                -rademacher_phi(&u).unwrap()
            );
        }

        #[test]
        fn classify_conjugation_invariant(u in arb_word(), v in arb_word()) {
            let conj = &(&v * &u) * &v.inverse();
            prop_assert_eq!(classify(&conj), classify(&u));
        }

        #[test]
        fn dedekind_reciprocity(h in 1i64..200, k in 1i64..200) {
            prop_assume!(h.gcd(&k) == 1);
            let (hb, kb) = (BigInt::from(h), BigInt::from(k));
            let lhs = dedekind_sum(&hb, &kb).unwrap() + dedekind_sum(&kb, &hb).unwrap();
            let rhs = q(-1, 4) + (q(h, k) + q(k, h) + q(1, h * k)) / q(12, 1);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
