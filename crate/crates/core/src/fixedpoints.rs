//! Flat connections on the mapping torus as fixed points of `w·U` acting on
//! `T × T`, and their Chern-Simons invariants.
//!
//! A point of `t ⊕ t` is stored as a `2l` vector `(x₁, x₂)` in coroot
//! coordinates. `U = [[a, b], [c, d]]` acts by `(x₁, x₂) ↦ (a x₁ + b x₂, c x₁ + d x₂)`
//! and `w` acts diagonally.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{coset_representatives, solve_rational, IntMatrix, QVector, ZVector};
use crate::modular::SL2Element;
use crate::roots::{RootSystem, WeylElement};

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointDatum {
    pub w: WeylElement,
    /// Position of `w` in [`RootSystem::weyl_elements`].
    pub w_index: usize,
    /// `λ = (λ₁, λ₂) ∈ Λ^R ⊕ Λ^R`.
    pub lam: ZVector,
    /// `A_λ` with `(w⊗U − 1) A_λ = λ`.
    pub a_point: QVector,
    /// Chern-Simons invariant in `[0, 1)`.
    pub cs: BigRational,
    pub eps: i8,
    pub absdet: BigInt,
}

/// The operator `w⊗U − 1` on `Z^{2l}`.
pub fn block_operator(u: &SL2Element, w: &WeylElement) -> IntMatrix {
    let l = w.matrix.n_rows();
    let [a, b, c, d] = u.entries();
    let mut m = IntMatrix::zeros(2 * l, 2 * l);
    for (bi, bj, coef) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
        for i in 0..l {
            for j in 0..l {
                m[(bi * l + i, bj * l + j)] = coef * &w.matrix[(i, j)];
            }
        }
    }
    for i in 0..2 * l {
        m[(i, i)] -= 1;
    }
    m
}

/// `ε(λ₁, λ₂) = (−1)^{⟨λ₁, λ₂⟩}`.
pub fn theta_char(rs: &RootSystem, lam: &[BigInt]) -> i8 {
    let l = rs.rank;
    assert_eq!(lam.len(), 2 * l, "λ must have length 2l");
    if rs.pairing_int(&lam[..l], &lam[l..]).is_even() {
        1
    } else {
        -1
    }
}

fn nonsingular_operator(u: &SL2Element, w: &WeylElement) -> Result<(IntMatrix, BigInt)> {
    let m = block_operator(u, w);
    let det = m.det();
    if det.is_zero() {
        return Err(Error::DegenerateFixedSet {
            monodromy: u.to_string(),
            weyl: w.matrix.to_string(),
        });
    }
    Ok((m, det.abs()))
}

/// `|det(Tr U − w − w⁻¹)|`, which must agree with `|det(w⊗U − 1)|`.
fn factored_absdet(u: &SL2Element, w: &WeylElement) -> BigInt {
    let l = w.matrix.n_rows();
    IntMatrix::scalar(l, u.trace())
        .sub(&w.matrix)
        .sub(&w.inverse)
        .det()
        .abs()
}

/// `−½⟨A, Sλ⟩ + (ε(λ) = −1 ? ½ : 0)` reduced to `[0, 1)`.
fn cs_from_solution(rs: &RootSystem, lam: &[BigInt], a_point: &[BigRational]) -> BigRational {
    let l = rs.rank;
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    // Sλ = (−λ₂, λ₁)
    let s1: QVector = lam[l..].iter().map(|x| -q(x)).collect();
    let s2: QVector = lam[..l].iter().map(q).collect();
    let pair = rs.pairing(&a_point[..l], &s1) + rs.pairing(&a_point[l..], &s2);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut cs = -(pair * &half);
    if theta_char(rs, lam) == -1 {
        cs += half;
    }
    let floor = cs.floor();
    cs - floor
}

fn index_of(rs: &RootSystem, w: &WeylElement) -> Result<usize> {
    rs.weyl_elements()
        .position(|x| x.matrix == w.matrix)
        .ok_or_else(|| Error::domain(format!("{} is not in the Weyl group of {}", w.matrix, rs.name())))
}

/// One datum per class in `Λ / (w⊗U − 1)Λ`, in representative order.
pub fn fixed_points(rs: &RootSystem, u: &SL2Element, w: &WeylElement) -> Result<Vec<FixedPointDatum>> {
    let w_index = index_of(rs, w)?;
    let (m, absdet) = nonsingular_operator(u, w)?;
    let factored = factored_absdet(u, w);
    if factored != absdet {
        return Err(Error::internal(format!(
            "|det(w⊗U − 1)| = {absdet} but |det(Tr U − w − w⁻¹)| = {factored}"
        )));
    }
    let reps = coset_representatives(&m)?;
    if BigInt::from(reps.len()) != absdet {
        return Err(Error::internal(format!(
            "{} coset representatives for |det| = {absdet}",
            reps.len()
        )));
    }
    reps.into_iter()
        .map(|lam| {
            let rhs: QVector = lam.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let a_point = solve_rational(&m, &rhs)?;
            let cs = cs_from_solution(rs, &lam, &a_point);
            let eps = theta_char(rs, &lam);
            Ok(FixedPointDatum {
                w: w.clone(),
                w_index,
                lam,
                a_point,
                cs,
                eps,
                absdet: absdet.clone(),
            })
        })
        .collect()
}

/// Chern-Simons invariant of the flat connection labelled by `λ`, in `[0, 1)`.
pub fn cs_invariant(rs: &RootSystem, u: &SL2Element, w: &WeylElement, lam: &[BigInt]) -> Result<BigRational> {
    if lam.len() != 2 * rs.rank {
        return Err(Error::domain(format!(
            "λ has length {}, expected {}",
            lam.len(),
            2 * rs.rank
        )));
    }
    let (m, _) = nonsingular_operator(u, w)?;
    let rhs: QVector = lam.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let a_point = solve_rational(&m, &rhs)?;
    Ok(cs_from_solution(rs, lam, &a_point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;
    use proptest::prelude::*;

    fn zv(v: &[i64]) -> ZVector {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn a1() -> RootSystem {
        RootSystem::build(Family::A, 1).unwrap()
    }

    fn weyl_pm(rs: &RootSystem) -> (WeylElement, WeylElement) {
        let mut it = rs.weyl_elements();
        (it.next().unwrap().clone(), it.next().unwrap().clone())
    }

    #[test]
    fn su2_counts() {
        let rs = a1();
        let (plus, minus) = weyl_pm(&rs);
        let u = SL2Element::t_pow_s(3);
        let fp = fixed_points(&rs, &u, &plus).unwrap();
        assert_eq!(fp.len(), 1);
        assert_eq!(fp[0].absdet, BigInt::from(1));
        assert!(fp[0].cs.is_zero());
        assert!(fp[0].a_point.iter().all(Zero::is_zero));

        let fm = fixed_points(&rs, &u, &minus).unwrap();
        assert_eq!(fm.len(), 5);
        assert!(fm.iter().all(|d| d.absdet == BigInt::from(5) && d.w_index == 1));

        let s = SL2Element::s();
        assert_eq!(fixed_points(&rs, &s, &plus).unwrap().len(), 2);
        assert_eq!(fixed_points(&rs, &s, &minus).unwrap().len(), 2);
    }

    #[test]
    fn cs_example() {
        let rs = a1();
        let (_, minus) = weyl_pm(&rs);
        let u = SL2Element::t_pow_s(3);
        let lam = zv(&[1, 0]);
        assert_eq!(cs_invariant(&rs, &u, &minus, &lam).unwrap(), rat(4, 5));
        let m = block_operator(&u, &minus);
        let rhs: QVector = lam.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        assert_eq!(solve_rational(&m, &rhs).unwrap(), vec![rat(-1, 5), rat(1, 5)]);
        assert!(cs_invariant(&rs, &u, &minus, &zv(&[0, 0])).unwrap().is_zero());
    }

    #[test]
    fn theta_examples() {
        let rs = a1();
        assert_eq!(theta_char(&rs, &zv(&[1, 0])), 1);
        assert_eq!(theta_char(&rs, &zv(&[0, 0])), 1);
        assert_eq!(theta_char(&rs, &zv(&[1, 1])), 1);
        // SU(2): ⟨λ₁, λ₂⟩ = 2 λ₁ λ₂ is always even.
        assert_eq!(theta_char(&rs, &zv(&[3, -7])), 1);
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(theta_char(&a2, &zv(&[1, 0, 0, 1])), -1);
    }

    #[test]
    fn parabolic_is_degenerate() {
        let rs = a1();
        let (plus, _) = weyl_pm(&rs);
        let err = fixed_points(&rs, &SL2Element::t(), &plus).unwrap_err();
        assert!(matches!(err, Error::DegenerateFixedSet { .. }));
    }

    #[test]
    fn su2_absdet_formula() {
        let rs = a1();
        let (plus, minus) = weyl_pm(&rs);
        for (a, b, c, d) in [(2, 1, 1, 1), (5, 2, 2, 1), (-3, 1, -1, 0), (0, -1, 1, 0)] {
            let u = SL2Element::from_i64(a, b, c, d).unwrap();
            let tr = a + d;
            for (w, s) in [(&plus, 1), (&minus, -1)] {
                let expected = (2 - s * tr).abs();
                if expected == 0 {
                    continue;
                }
                let fp = fixed_points(&rs, &u, w).unwrap();
                assert_eq!(fp.len() as i64, expected);
            }
        }
    }

    fn random_u(seq: &[(bool, i64)]) -> SL2Element {
        seq.iter().fold(SL2Element::identity(), |acc, &(s, n)| {
            let g = if s { SL2Element::s() } else { SL2Element::t_pow(n) };
            acc * g
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cs_is_representative_independent(
            fam in 0usize..3,
            word in prop::collection::vec((any::<bool>(), -3i64..4), 1..5),
            widx in 0usize..8,
            lam in prop::collection::vec(-6i64..7, 4),
            shift in prop::collection::vec(-3i64..4, 4),
        ) {
            let rs = match fam {
                0 => a1(),
                1 => RootSystem::build(Family::A, 2).unwrap(),
                _ => RootSystem::build(Family::B, 2).unwrap(),
            };
            let l = rs.rank;
            let u = random_u(&word);
            let w = rs.weyl_elements().nth(widx % rs.weyl_order()).unwrap().clone();
            let m = block_operator(&u, &w);
            prop_assume!(!m.det().is_zero());
            let lam = zv(&lam[..2 * l]);
            let shift = zv(&shift[..2 * l]);
            let moved: ZVector = lam.iter().zip(m.mul_vec(&shift)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(
                cs_invariant(&rs, &u, &w, &lam).unwrap(),
                cs_invariant(&rs, &u, &w, &moved).unwrap()
            );
        }

        #[test]
        fn theta_is_equivariant(
            word in prop::collection::vec((any::<bool>(), -3i64..4), 1..5),
            widx in 0usize..8,
            lam in prop::collection::vec(-6i64..7, 4),
        ) {
            let rs = RootSystem::build(Family::B, 2).unwrap();
            let u = random_u(&word);
            let lam = zv(&lam);
            let w = rs.weyl_elements().nth(widx).unwrap().clone();
            let v = block_operator(&u, &rs.weyl_elements().next().unwrap().clone());
            // block_operator subtracts 1; add it back to get the action of U.
            let ul: ZVector = v.mul_vec(&lam).iter().zip(&lam).map(|(x, y)| x + y).collect();
            prop_assert_eq!(theta_char(&rs, &ul), theta_char(&rs, &lam));
            let wl: ZVector = [w.apply(&lam[..2]), w.apply(&lam[2..])].concat();
            prop_assert_eq!(theta_char(&rs, &wl), theta_char(&rs, &lam));
        }
    }
}
