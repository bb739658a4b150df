//! Classical root systems in the coroot basis with the basic inner product
//! (long roots have squared length 2), and their Weyl groups.
//!
//! All vectors live in the Cartan subalgebra `t` and are written in
//! coordinates with respect to the simple coroots `h_1, ..., h_l`, so the
//! coroot lattice is `Z^l`. Roots and weights are identified with elements
//! of `t` through the inner product and therefore have rational coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{IntMatrix, QVector, ZVector};

/// Largest rank accepted by [`RootSystem::build`].
pub const MAX_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::domain(format!("unsupported root system family {other:?}"))),
        }
    }
}

/// A Weyl group element acting on the coroot basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub inverse: IntMatrix,
    pub det: i8,
}

impl WeylElement {
    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.matrix.n_rows())
    }

    pub fn apply(&self, x: &[BigInt]) -> ZVector {
        self.matrix.mul_vec(x)
    }

    pub fn apply_q(&self, x: &[BigRational]) -> QVector {
        self.matrix.mul_qvec(x)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// `⟨h_i, h_j⟩`, an even integral symmetric matrix.
    pub gram: IntMatrix,
    /// `C_ij = ⟨α_i, h_j⟩`.
    pub cartan: IntMatrix,
    /// Positive roots in coroot coordinates.
    pub positive_roots: Vec<QVector>,
    pub simple_roots: Vec<QVector>,
    pub rho: QVector,
    /// Dual Coxeter number.
    pub h: i64,
    pub n_pos: usize,
    pub highest_root: QVector,
    /// Columns are the fundamental weights in coroot coordinates (`gram^{-1}`).
    pub weight_to_coroot: Vec<QVector>,
    weyl: Vec<WeylElement>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Simple roots in an orthogonal ambient basis together with the scale of
/// the ambient inner product that makes long roots have length² 2.
fn ambient_simple_roots(family: Family, l: usize) -> (Vec<Vec<i64>>, BigRational) {
    let dim = if family == Family::A { l + 1 } else { l };
    let e = |i: usize| -> Vec<i64> { (0..dim).map(|j| (i == j) as i64).collect() };
    let diff = |i: usize| -> Vec<i64> { e(i).iter().zip(e(i + 1)).map(|(a, b)| a - b).collect() };
    let mut roots: Vec<Vec<i64>> = (0..l.saturating_sub(1)).map(diff).collect();
    match family {
        Family::A => {
            roots.push(diff(l - 1));
            (roots, rat(1, 1))
        }
        Family::B => {
            roots.push(e(l - 1));
            (roots, rat(1, 1))
        }
        Family::C => {
            roots.push(e(l - 1).iter().map(|x| 2 * x).collect());
            (roots, rat(1, 2))
        }
        Family::D => {
            roots.push(e(l - 2).iter().zip(e(l - 1)).map(|(a, b)| a + b).collect());
            (roots, rat(1, 1))
        }
    }
}

impl RootSystem {
    /// Root system of type `family_l` with the basic inner product.
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        let min_rank = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min_rank || rank > MAX_RANK {
            return Err(Error::domain(format!(
                "{family}{rank} is not supported (rank must be in {min_rank}..={MAX_RANK})"
            )));
        }
        let l = rank;
        let (ambient, scale) = ambient_simple_roots(family, l);
        let ip = |x: &[i64], y: &[i64]| -> BigRational {
            let s: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
            &scale * BigRational::from_integer(s.into())
        };
        let norms: Vec<BigRational> = ambient.iter().map(|a| ip(a, a)).collect();
        // ⟨h_i, h_j⟩ = 4⟨α_i, α_j⟩ / (|α_i|² |α_j|²), ⟨α_i, h_j⟩ = 2⟨α_i, α_j⟩ / |α_j|².
        let mut gram = IntMatrix::zeros(l, l);
        let mut cartan = IntMatrix::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                let aij = ip(&ambient[i], &ambient[j]);
                let g = rat(4, 1) * &aij / (&norms[i] * &norms[j]);
                let c = rat(2, 1) * &aij / &norms[j];
                if !g.is_integer() || !c.is_integer() {
                    return Err(Error::internal(format!("non-integral Lie data for {family}{l}")));
                }
                gram[(i, j)] = g.to_integer();
                cartan[(i, j)] = c.to_integer();
            }
        }
        let simple_roots: Vec<QVector> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        if i == j {
                            &norms[i] / rat(2, 1)
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();

        let weyl = generate_weyl(&cartan)?;

        let mut positive_roots: Vec<QVector> = Vec::new();
        for w in &weyl {
            for a in &simple_roots {
                let r = w.apply_q(a);
                if r.iter().all(|x| !x.is_negative()) && !positive_roots.contains(&r) {
                    positive_roots.push(r);
                }
            }
        }
        // Sort by height so the highest root is last and output is stable.
        let height = |r: &QVector| -> BigRational {
            r.iter()
                .zip(&norms)
                .map(|(c, n)| c * rat(2, 1) / n)
                .fold(BigRational::zero(), |a, b| a + b)
        };
        positive_roots.sort_by(|x, y| height(x).cmp(&height(y)).then_with(|| x.cmp(y)));
        let highest_root = positive_roots.last().cloned().expect("nonempty root system");

        let mut rho = vec![BigRational::zero(); l];
        for r in &positive_roots {
            for (acc, x) in rho.iter_mut().zip(r) {
                *acc += x;
            }
        }
        for x in rho.iter_mut() {
            *x /= rat(2, 1);
        }

        let inv = gram.inverse_rational()?;
        let weight_to_coroot: Vec<QVector> =
            (0..l).map(|j| (0..l).map(|i| inv[i][j].clone()).collect()).collect();

        let h = match family {
            Family::A => l as i64 + 1,
            Family::B => 2 * l as i64 - 1,
            Family::C => l as i64 + 1,
            Family::D => 2 * l as i64 - 2,
        };
        let n_pos = positive_roots.len();
        Ok(RootSystem {
            family,
            rank,
            gram,
            cartan,
            positive_roots,
            simple_roots,
            rho,
            h,
            n_pos,
            highest_root,
            weight_to_coroot,
            weyl,
        })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn dim_g(&self) -> usize {
        self.rank + 2 * self.n_pos
    }

    /// Every element of `W` exactly once, identity first.
    pub fn weyl_elements(&self) -> std::slice::Iter<'_, WeylElement> {
        self.weyl.iter()
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// `xᵀ · gram · y`.
    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let gy = self.gram.mul_qvec(y);
        x.iter()
            .zip(&gy)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn pairing_int(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `[Λ^W : Λ^R]` with `Λ^R` the coroot lattice, i.e. `|det gram|`.
    pub fn weight_lattice_index(&self) -> BigInt {
        self.gram.det().abs()
    }

    /// All roots (positive then negative) in coroot coordinates.
    pub fn roots(&self) -> Vec<QVector> {
        let mut out = self.positive_roots.clone();
        out.extend(
            self.positive_roots
                .iter()
                .map(|r| r.iter().map(|x| -x).collect::<QVector>()),
        );
        out
    }

    /// The coroot `h_α = 2α / ⟨α, α⟩`, an element of `Z^l`.
    pub fn coroot(&self, alpha: &[BigRational]) -> ZVector {
        let n = self.pairing(alpha, alpha);
        alpha
            .iter()
            .map(|x| {
                let c = rat(2, 1) * x / &n;
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect()
    }

    pub fn fundamental_weight(&self, i: usize) -> QVector {
        self.weight_to_coroot[i].clone()
    }

    /// Coroot coordinates of `Σ m_i ϖ_i`.
    pub fn weight_from_fundamental(&self, m: &[BigInt]) -> QVector {
        assert_eq!(m.len(), self.rank);
        let mut out = vec![BigRational::zero(); self.rank];
        for (mi, w) in m.iter().zip(&self.weight_to_coroot) {
            for (o, x) in out.iter_mut().zip(w) {
                *o += x * mi;
            }
        }
        out
    }

    /// Dynkin labels `⟨λ, h_i⟩`, or `None` if `λ ∉ Λ^W`.
    pub fn dynkin_labels(&self, lam: &[BigRational]) -> Option<ZVector> {
        let g = self.gram.mul_qvec(lam);
        g.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn is_weight(&self, lam: &[BigRational]) -> bool {
        self.dynkin_labels(lam).is_some()
    }
}

fn generate_weyl(cartan: &IntMatrix) -> Result<Vec<WeylElement>> {
    let l = cartan.n_rows();
    let gens: Vec<IntMatrix> = (0..l)
        .map(|i| {
            let mut s = IntMatrix::identity(l);
            for j in 0..l {
                s[(i, j)] -= &cartan[(i, j)];
            }
            s
        })
        .collect();
    let id = IntMatrix::identity(l);
    let mut index: HashMap<IntMatrix, usize> = HashMap::new();
    let mut elems: Vec<(IntMatrix, i8)> = vec![(id.clone(), 1)];
    index.insert(id, 0);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &k in &frontier {
            for s in &gens {
                let m = s * &elems[k].0;
                if !index.contains_key(&m) {
                    index.insert(m.clone(), elems.len());
                    next.push(elems.len());
                    let det = -elems[k].1;
                    elems.push((m, det));
                }
            }
        }
        frontier = next;
    }
    elems
        .into_iter()
        .map(|(m, det)| {
            let inverse = m
                .inverse_unimodular()
                .ok_or_else(|| Error::internal("Weyl element is not unimodular"))?;
            Ok(WeylElement {
                matrix: m,
                inverse,
                det,
            })
        })
        .collect()
}

/// `(l+1)!`, `2^l l!`, `2^{l-1} l!`.
pub fn weyl_order_formula(family: Family, l: usize) -> usize {
    let fact = |n: usize| (1..=n).product::<usize>();
    match family {
        Family::A => fact(l + 1),
        Family::B | Family::C => (1 << l) * fact(l),
        Family::D => (1 << (l - 1)) * fact(l),
    }
}
