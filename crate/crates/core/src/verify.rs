//! Self-checking suites: each compares independent computations over a grid
//! or a seeded random sample and reports the worst residual.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::fixedpoints::{block_operator, cs_invariant, theta_char};
use crate::framing::{compare_up_to_sign, general_phase_prediction, su2_predicted_phase};
use crate::gauss::reciprocity_1d;
use crate::intlinalg::{coset_representatives, in_lattice, smith_normal_form, IntMatrix, QVector, ZVector};
use crate::modular::{classify, rademacher_phi, SL2Element};
use crate::partition::{
    g_lambda, rt_modular_data_su2, rt_trace_su2, sqm_general_terms, sqm_su2_terms,
    trace_su2_double_sum, z_sqm_general, z_sqm_su2, z_trace_general_cosets,
    z_trace_general_weights,
};
use crate::roots::{Family, RootSystem};

/// Failure messages kept per report; the count is always exact.
const MAX_MESSAGES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Reciprocity,
    Su2Modulus,
    Su2Phase,
    DomainCounting,
    GSymmetries,
    GeneralTriangle,
    A1Reduction,
    Structural,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Reciprocity,
        Suite::Su2Modulus,
        Suite::Su2Phase,
        Suite::DomainCounting,
        Suite::GSymmetries,
        Suite::GeneralTriangle,
        Suite::A1Reduction,
        Suite::Structural,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Reciprocity => "reciprocity",
            Suite::Su2Modulus => "su2-modulus",
            Suite::Su2Phase => "su2-phase",
            Suite::DomainCounting => "domain-counting",
            Suite::GSymmetries => "g-symmetries",
            Suite::GeneralTriangle => "general-triangle",
            Suite::A1Reduction => "a1-reduction",
            Suite::Structural => "structural",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    /// Bound on `a, c` for the reciprocity suite.
    pub max: i64,
    /// Bound on `|entries|` of the SU(2) grid.
    pub entry_bound: i64,
    /// Bound on `|c|` of the SU(2) grid.
    pub c_max: i64,
    pub levels: RangeInclusive<i64>,
    /// Random draws for the sampled suites.
    pub draws: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            max: 40,
            entry_bound: 10,
            c_max: 5,
            levels: 1..=8,
            draws: 500,
            seed: 0x6d74_6f72,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failed: usize,
    pub max_residual: f64,
    pub failures: Vec<String>,
}

struct Tally {
    name: String,
    cases: usize,
    failed: usize,
    max_residual: f64,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            name: name.to_string(),
            cases: 0,
            failed: 0,
            max_residual: 0.0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_MESSAGES {
                self.failures.push(msg());
            }
        }
    }

    fn residual(&mut self, res: f64, tol: f64, msg: impl FnOnce() -> String) {
        if res.is_nan() || res > self.max_residual {
            self.max_residual = res;
        }
        self.check(res < tol, || format!("{} (residual {res:.3e})", msg()));
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            passed: self.failed == 0 && self.cases > 0,
            name: self.name,
            cases: self.cases,
            failed: self.failed,
            max_residual: self.max_residual,
            failures: self.failures,
        }
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    match suite {
        Suite::Reciprocity => reciprocity(params),
        Suite::Su2Modulus => su2_modulus(params),
        Suite::Su2Phase => su2_phase(params),
        Suite::DomainCounting => domain_counting(params),
        Suite::GSymmetries => g_symmetries(params),
        Suite::GeneralTriangle => general_triangle(params),
        Suite::A1Reduction => a1_reduction(params),
        Suite::Structural => structural(params),
    }
}

/// Every hyperbolic `U` with `|entries| ≤ bound` and `1 ≤ |c| ≤ c_max`, in
/// lexicographic order of `(a, b, c, d)`.
pub fn hyperbolic_grid(bound: i64, c_max: i64) -> Vec<SL2Element> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if c == 0 || c.abs() > c_max {
                    continue;
                }
                for d in -bound..=bound {
                    if a * d - b * c != 1 || (a + d).abs() <= 2 {
                        continue;
                    }
                    out.push(SL2Element::from_i64(a, b, c, d).expect("unimodular by construction"));
                }
            }
        }
    }
    out
}

fn reciprocity(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("reciprocity");
    for a in 1..=params.max {
        for c in 1..=params.max {
            if (a * c) % 2 != 0 {
                continue;
            }
            let (lhs, rhs) = reciprocity_1d(a, c)?;
            t.residual((lhs - rhs).norm(), params.tol, || format!("a = {a}, c = {c}"));
        }
    }
    Ok(t.finish())
}

fn su2_modulus(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("su2-modulus");
    for u in hyperbolic_grid(params.entry_bound, params.c_max) {
        for k in params.levels.clone() {
            let rt = rt_trace_su2(&u, k)?.value;
            let sqm = z_sqm_su2(&u, k)?.value;
            t.residual((rt.norm() - sqm.norm()).abs(), params.tol, || format!("U = {u}, k = {k}"));
        }
    }
    Ok(t.finish())
}

fn su2_phase(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("su2-phase");
    for u in hyperbolic_grid(params.entry_bound, params.c_max) {
        let predicted = su2_predicted_phase(&u)?.to_complex();
        let mut signs = Vec::new();
        for k in params.levels.clone() {
            let lhs = rt_trace_su2(&u, k)?.value;
            let rhs = z_sqm_su2(&u, k)?.value;
            let cmp = compare_up_to_sign(lhs, rhs, predicted, params.tol);
            t.residual(cmp.abs_residual, params.tol, || format!("U = {u}, k = {k}"));
            signs.extend(cmp.sign);
        }
        // The residual sign must not depend on the level.
        signs.dedup();
        t.check(signs.len() <= 1, || format!("U = {u}: sign varies with k: {signs:?}"));
    }
    Ok(t.finish())
}

fn domain_counting(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("domain-counting");
    for u in hyperbolic_grid(params.entry_bound, params.c_max) {
        for k in params.levels.clone() {
            for branch in [1i8, -1] {
                let mut inner = trace_su2_double_sum(&u, k, branch, false)?;
                let mut ext = trace_su2_double_sum(&u, k, branch, true)?;
                let det = (u.trace() + BigInt::from(2 * branch)).abs().to_usize().unwrap_or(0);
                inner.sort();
                ext.sort();
                let repeated: Vec<_> = inner
                    .iter()
                    .flat_map(|x| std::iter::repeat_n(x, det))
                    .cloned()
                    .collect();
                t.check(repeated == ext, || format!("U = {u}, k = {k}, branch {branch}"));
            }
        }
    }
    Ok(t.finish())
}

fn sampled_groups() -> Result<Vec<RootSystem>> {
    [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::C, 2),
        (Family::B, 3),
        (Family::C, 3),
        (Family::D, 4),
    ]
    .into_iter()
    .map(|(f, l)| RootSystem::build(f, l))
    .collect()
}

fn random_weight(rs: &RootSystem, rng: &mut ChaCha8Rng) -> QVector {
    let labels: ZVector = (0..rs.rank).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect();
    rs.weight_from_fundamental(&labels)
}

fn g_symmetries(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("g-symmetries");
    let groups = sampled_groups()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for draw in 0..params.draws {
        let rs = groups.choose(&mut rng).expect("nonempty");
        let p = rng.gen_range(-7i64..=7);
        let r = rng.gen_range(2i64..=12);
        let lam = random_weight(rs, &mut rng);
        let g = g_lambda(rs, p, r, &lam)?;
        let tag = |what: &str| format!("draw {draw}: {} p = {p} r = {r} λ = {lam:?}: {what}", rs.name());

        let neg: QVector = lam.iter().map(|x| -x).collect();
        t.residual((g_lambda(rs, p, r, &neg)? - g).norm(), params.tol, || tag("g(−λ)"));

        let idx = rng.gen_range(0..rs.weyl_order());
        let u = rs.weyl_elements().nth(idx).expect("index in range");
        t.residual((g_lambda(rs, p, r, &u.apply_q(&lam))? - g).norm(), params.tol, || tag("g(uλ)"));

        let roots = rs.roots();
        let alpha = roots.choose(&mut rng).expect("roots");
        let shifted: QVector = lam
            .iter()
            .zip(rs.coroot(alpha))
            .map(|(x, h)| x + BigRational::from_integer(h * r))
            .collect();
        t.residual((g_lambda(rs, p, r, &shifted)? - g).norm(), params.tol, || tag("g(λ + r h_α)"));

        // Put λ on a wall ⟨λ, α_j⟩ ∈ rZ by resetting one Dynkin label.
        let j = rng.gen_range(0..rs.rank);
        let n = rng.gen_range(-1i64..=1);
        let alpha_j = &rs.simple_roots[j];
        let len2 = rs.pairing(alpha_j, alpha_j);
        let label = BigRational::from_integer(BigInt::from(2 * r * n)) / len2;
        debug_assert!(label.is_integer());
        let mut labels = rs.dynkin_labels(&lam).expect("λ is a weight");
        labels[j] = label.to_integer();
        let wall = rs.weight_from_fundamental(&labels);
        let on_wall = roots.iter().any(|a| (rs.pairing(&wall, a) / BigInt::from(r)).is_integer());
        t.check(on_wall, || tag("wall construction"));
        t.residual(g_lambda(rs, p, r, &wall)?.norm(), params.tol, || tag("g on a wall"));
    }
    Ok(t.finish())
}

/// The groups and `p` values of the general-group comparison grid.
pub fn triangle_groups() -> Result<Vec<RootSystem>> {
    [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::C, 2)]
        .into_iter()
        .map(|(f, l)| RootSystem::build(f, l))
        .collect()
}

pub const TRIANGLE_P: [i64; 4] = [3, -3, 4, 5];

fn general_triangle(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("general-triangle");
    let levels = *params.levels.start()..=(*params.levels.end()).min(4);
    for rs in triangle_groups()? {
        for p in TRIANGLE_P {
            let prediction = general_phase_prediction(&rs, p)?;
            for k in levels.clone() {
                let tag = |what: &str| format!("{} p = {p} k = {k}: {what}", rs.name());
                let weights = z_trace_general_weights(&rs, p, k)?.value;
                let cosets = z_trace_general_cosets(&rs, p, k)?.value;
                let sqm = z_sqm_general(&rs, p, k)?.value;
                t.residual((weights - cosets).norm(), params.tol, || tag("weights vs cosets"));
                t.residual((weights.norm() - sqm.norm()).abs(), params.tol, || tag("|weights| vs |sqm|"));
                let calc = compare_up_to_sign(weights, sqm, prediction.calc.to_complex(), params.tol);
                t.residual(calc.abs_residual, params.tol, || tag("calculated framing phase"));
                let exp = compare_up_to_sign(weights, sqm, prediction.expected.to_complex(), params.tol);
                t.residual(exp.abs_residual, params.tol, || tag("expected framing phase"));
                if let Some(s) = exp.sign {
                    t.check(s == prediction.residual_sign, || {
                        tag(&format!("sign {s}, predicted {}", prediction.residual_sign))
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

pub const A1_REDUCTION_P: [i64; 7] = [3, -3, 4, -4, 5, 7, -5];

fn a1_reduction(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("a1-reduction");
    let a1 = RootSystem::build(Family::A, 1)?;
    for p in A1_REDUCTION_P {
        for k in params.levels.clone() {
            let mut general = sqm_general_terms(&a1, p, k)?;
            let mut su2 = sqm_su2_terms(&SL2Element::t_pow_s(p), k)?;
            general.sort();
            su2.sort();
            t.check(general == su2, || format!("p = {p}, k = {k}"));
        }
    }
    Ok(t.finish())
}

fn random_sl2(rng: &mut ChaCha8Rng) -> SL2Element {
    let len = rng.gen_range(1..=6);
    (0..len).fold(SL2Element::identity(), |acc, _| {
        if rng.gen_bool(0.4) {
            acc * SL2Element::s()
        } else {
            acc * SL2Element::t_pow(rng.gen_range(-4i64..=4))
        }
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(n, n, &entries)
}

fn structural(params: &SuiteParams) -> Result<SuiteReport> {
    let mut t = Tally::new("structural");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x5eed);
    let draws = params.draws.max(1);

    // Smith normal form and coset enumeration.
    for i in 0..2 * draws {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n, 50);
        let snf = smith_normal_form(&m);
        let diag = snf.diagonal();
        let round_trip = &(&snf.u * &m) * &snf.v == snf.d;
        let inverse = &snf.u * &snf.u_inv == IntMatrix::identity(n);
        let divides = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        });
        t.check(round_trip && inverse && divides && diag.iter().all(|x| !x.is_negative()), || {
            format!("SNF of {m}")
        });
        // Small entries keep |det| within enumeration range.
        let m = random_matrix(&mut rng, n, 4);
        let det = m.det().abs();
        if det.is_zero() || det > BigInt::from(200) {
            continue;
        }
        let reps = coset_representatives(&m)?;
        t.check(BigInt::from(reps.len()) == det, || format!("coset count of {m}"));
        // Every probe vector lands in exactly one class.
        for _ in 0..3 {
            let z: ZVector = (0..n).map(|_| BigInt::from(rng.gen_range(-50..=50))).collect();
            let mut hits = 0;
            for rep in &reps {
                let diff: ZVector = z.iter().zip(rep).map(|(a, b)| a - b).collect();
                if in_lattice(&m, &diff)? {
                    hits += 1;
                }
            }
            t.check(hits == 1, || format!("probe {z:?} meets {hits} classes of {m} (draw {i})"));
        }
    }

    // Rademacher Φ cocycle.
    let mut triples = 0;
    while triples < 2 * draws {
        let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
        let ab = &a * &b;
        if a.c().is_zero() || b.c().is_zero() || ab.c().is_zero() {
            continue;
        }
        triples += 1;
        let sign = (a.c() * b.c() * ab.c()).signum();
        let lhs = rademacher_phi(&ab)?;
        let rhs = rademacher_phi(&a)? + rademacher_phi(&b)? - BigInt::from(3) * sign;
        t.check(lhs == rhs, || format!("Φ cocycle fails for A = {a}, B = {b}"));
    }

    // Modular relations of the level-k representation.
    for k in 1..=8 {
        let (s, tm) = rt_modular_data_su2(k)?;
        let s2 = &s * &s;
        let st = &s * &tm;
        let st3 = &(&st * &st) * &st;
        t.residual(st3.max_abs_diff(&s2), params.tol, || format!("(ST)³ = S² at k = {k}"));
        let s4 = &s2 * &s2;
        t.residual(s4.max_abs_diff(&CMatrix::identity(s.dim())), params.tol, || format!("S⁴ = 1 at k = {k}"));
    }

    // Chern-Simons invariants and theta characteristics.
    let groups = sampled_groups()?;
    let small: Vec<&RootSystem> = groups.iter().filter(|g| g.rank <= 3).collect();
    let mut done = 0;
    while done < draws {
        let rs = *small.choose(&mut rng).expect("groups");
        let l = rs.rank;
        let u = random_sl2(&mut rng);
        let w = rs
            .weyl_elements()
            .nth(rng.gen_range(0..rs.weyl_order()))
            .expect("index in range");
        let lam: ZVector = (0..2 * l).map(|_| BigInt::from(rng.gen_range(-8..=8))).collect();

        let sign_before = theta_char(rs, &lam);
        let ul = block_operator(&u, rs.weyl_elements().next().expect("identity"));
        let moved: ZVector = ul.mul_vec(&lam).iter().zip(&lam).map(|(x, y)| x + y).collect();
        let wl: ZVector = [w.apply(&lam[..l]), w.apply(&lam[l..])].concat();
        t.check(
            theta_char(rs, &moved) == sign_before && theta_char(rs, &wl) == sign_before,
            || format!("theta equivariance, {} U = {u} λ = {lam:?}", rs.name()),
        );

        let m = block_operator(&u, w);
        if m.det().is_zero() {
            continue;
        }
        done += 1;
        let shift: ZVector = (0..2 * l).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect();
        let other: ZVector = lam.iter().zip(m.mul_vec(&shift)).map(|(x, y)| x + y).collect();
        let same = cs_invariant(rs, &u, w, &lam)? == cs_invariant(rs, &u, w, &other)?;
        t.check(same, || format!("CS representative dependence, {} U = {u} λ = {lam:?}", rs.name()));
    }

    // Classification is conjugation invariant.
    for _ in 0..draws {
        let (u, v) = (random_sl2(&mut rng), random_sl2(&mut rng));
        let conj = &(&v * &u) * &v.inverse();
        let same = classify(&u) == classify(&conj);
        t.check(same, || format!("classify({u}) ≠ classify({conj})"));
    }
    Ok(t.finish())
}
