//! Closed determinant representations of the partition function.
//!
//! Every representation validates its own genericity preconditions and
//! fails loudly on singular parameter configurations instead of attempting
//! limits; the 0/0 points removable in the formulas are exactly where the
//! brute-force oracles remain valid.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::model::{SpecPoint, SpectralParams, TrigWeights, WeightModel, WeightSystem};
use crate::poly::PolyBasis;
use crate::scalar::{pow, Cpx, Scalar};

/// Variant selector for the paired determinant formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    One,
    Two,
}

/// Representation tags, used for model-compatibility checks and selector
/// strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReprTag {
    Ik,
    Kostov,
    Fw1,
    Fw2,
    BasisRat,
    BasisTrig1,
    BasisTrig2,
}

impl ReprTag {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "ik" => ReprTag::Ik,
            "kostov" => ReprTag::Kostov,
            "fw1" => ReprTag::Fw1,
            "fw2" => ReprTag::Fw2,
            "basis-rat" => ReprTag::BasisRat,
            "basis-trig1" => ReprTag::BasisTrig1,
            "basis-trig2" => ReprTag::BasisTrig2,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ReprTag::Ik => "ik",
            ReprTag::Kostov => "kostov",
            ReprTag::Fw1 => "fw1",
            ReprTag::Fw2 => "fw2",
            ReprTag::BasisRat => "basis-rat",
            ReprTag::BasisTrig1 => "basis-trig1",
            ReprTag::BasisTrig2 => "basis-trig2",
        }
    }

    /// Which weight models a representation is defined for.
    pub fn compatible_with(self, model: &WeightModel) -> bool {
        match self {
            ReprTag::Ik => true,
            ReprTag::Kostov | ReprTag::BasisRat => matches!(model, WeightModel::Rational),
            ReprTag::Fw1 | ReprTag::Fw2 => matches!(model, WeightModel::TrigComplex { .. }),
            ReprTag::BasisTrig1 | ReprTag::BasisTrig2 => {
                matches!(
                    model,
                    WeightModel::TrigComplex { .. } | WeightModel::TrigAlgebraic { .. }
                )
            }
        }
    }
}

/// The Izergin-Korepin determinant
///
/// ```text
/// Z_N = (-1)^(N(N-1)/2) [prod_{j,k} a_jk b_jk / (v({lambda}) v({nu}))]
///       det[ c / (a_jk b_jk) ]
/// ```
///
/// evaluated with the given weight system. In the root-gauged trigonometric
/// system the kernel `c` is the root-free `q - q^(-1)` and the result is the
/// gauge-normalized partition function.
pub fn z_ik<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
) -> Result<K> {
    let n = params.n();
    if !params.lambdas_distinct() || !params.nus_distinct() {
        return Err(Error::Singular(
            "coinciding spectral parameters in a determinant representation".into(),
        ));
    }
    let mut prod_ab = K::one();
    let mut kernel = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let (a, b, _) = weights.abc(params.lambda(j), params.nu(k));
            if a.is_zero() || b.is_zero() {
                return Err(Error::Singular(format!(
                    "vanishing vertex weight at (j, k) = ({}, {})",
                    j + 1,
                    k + 1
                )));
            }
            let c = weights.kernel_c(params.lambda(j), params.nu(k));
            let ab = a * b;
            kernel.push(c / ab.clone());
            prod_ab = prod_ab * ab;
        }
    }
    let v_l = weights.vandermonde(&params.lambda_vals());
    let v_n = weights.vandermonde(&params.nu_vals());
    // In the floating field an exact 0.0 here is underflow of a long
    // product at perfectly generic parameters, not a coincidence; the
    // distinctness check above already guards the actual precondition.
    if K::EXACT && (v_l.is_zero() || v_n.is_zero()) {
        return Err(Error::Singular("vanishing Vandermonde factor".into()));
    }
    let det = SquareMatrix::from_fn(n, |j, k| kernel[j * n + k].clone()).det();
    let sign = if n * (n - 1) / 2 % 2 == 1 {
        -K::one()
    } else {
        K::one()
    };
    Ok(sign * prod_ab / (v_l * v_n) * det)
}

/// Kostov's determinant for the rational weights:
///
/// ```text
/// Z_N = [prod_{j,k} a_jk / v({lambda})]
///       det[ lambda_j^(k-1) - (lambda_j + 1)^(k-1) prod_l b_jl / a_jl ]
/// ```
pub fn z_kostov<K: Scalar>(lambdas: &[K], nus: &[K]) -> Result<K> {
    let n = lambdas.len();
    if n == 0 || nus.len() != n {
        return Err(Error::Invalid("need equally many lambdas and nus".into()));
    }
    if !all_distinct(lambdas) {
        return Err(Error::Singular("coinciding lambda parameters".into()));
    }
    let mut prod_a = K::one();
    let mut ratios = Vec::with_capacity(n);
    for l in lambdas {
        let mut r = K::one();
        for nu in nus {
            let a = l.clone() - nu.clone() + K::one();
            let b = l.clone() - nu.clone();
            if a.is_zero() {
                return Err(Error::Singular("vanishing a-weight".into()));
            }
            r = r * (b / a.clone());
            prod_a = prod_a * a;
        }
        ratios.push(r);
    }
    let m = SquareMatrix::from_fn(n, |j, k| {
        let lam_pow = pow(&lambdas[j], k as i64).expect("nonnegative exponent");
        let shift_pow =
            pow(&(lambdas[j].clone() + K::one()), k as i64).expect("nonnegative exponent");
        lam_pow - shift_pow * ratios[j].clone()
    });
    let mut vander = K::one();
    for j in 0..n {
        for k in j + 1..n {
            vander = vander * (lambdas[k].clone() - lambdas[j].clone());
        }
    }
    Ok(prod_a / vander * m.det())
}

/// The Foda-Wheeler trigonometric determinants (two printed phase
/// conventions), as complex numbers.
pub fn z_fw(variant: Variant, gamma: f64, lambdas: &[f64], nus: &[f64]) -> Result<Cpx> {
    let n = lambdas.len();
    if n == 0 || nus.len() != n {
        return Err(Error::Invalid("need equally many lambdas and nus".into()));
    }
    let sin_g = |t: f64| Cpx::new((gamma * t).sin(), 0.0);
    let phase = |t: f64| Cpx::from_polar(1.0, gamma * t);
    // prod_{j,k} a_jk and the per-row products prod_l b_jl / a_jl
    let mut prod_a = Cpx::one();
    let mut ratios = Vec::with_capacity(n);
    for &l in lambdas {
        let mut r = Cpx::one();
        for &nu in nus {
            let a = sin_g(l - nu + 1.0);
            if a.is_zero() {
                return Err(Error::Singular("vanishing a-weight".into()));
            }
            r *= sin_g(l - nu) / a;
            prod_a *= a;
        }
        ratios.push(r);
    }
    let mut vander = Cpx::one();
    for j in 0..n {
        for k in j + 1..n {
            vander *= sin_g(lambdas[k] - lambdas[j]);
        }
    }
    if vander.is_zero() {
        return Err(Error::Singular("vanishing Vandermonde factor".into()));
    }
    let two_i_pow = pow(&Cpx::new(0.0, 2.0), (n * (n - 1) / 2) as i64)?;
    let mut prefactor = prod_a / (two_i_pow * vander);
    for j in 0..n {
        prefactor *= match variant {
            Variant::One => phase(-(n as f64 - 2.0) * lambdas[j] - nus[j]),
            Variant::Two => phase(-(n as f64) * lambdas[j] + nus[j]),
        };
    }
    let m = SquareMatrix::from_fn(n, |j, k| {
        let col_phase = match variant {
            Variant::One => phase(2.0 * (k as f64 + 1.0) - n as f64),
            Variant::Two => phase(2.0 * (k as f64 + 1.0) - 2.0 - n as f64),
        };
        phase(2.0 * lambdas[j] * k as f64) * (Cpx::one() - col_phase * ratios[j])
    });
    Ok(prefactor * m.det())
}

/// The basis-parametrized determinant for the rational weights:
///
/// ```text
/// Z_N = det[ p_k(lambda_j) a(lambda_j) - p_k(lambda_j + 1) d(lambda_j) ]
///       / det[ p_k(lambda_j) ]
/// ```
///
/// valid for any basis `p_1, ..., p_N` of polynomials of degree `N - 1`.
pub fn z_basis_rat<K: Scalar>(lambdas: &[K], nus: &[K], basis: &PolyBasis<K>) -> Result<K> {
    let n = lambdas.len();
    if n == 0 || nus.len() != n {
        return Err(Error::Invalid("need equally many lambdas and nus".into()));
    }
    if basis.n() != n {
        return Err(Error::Invalid("basis size must match parameter count".into()));
    }
    if !all_distinct(lambdas) {
        return Err(Error::Singular("coinciding lambda parameters".into()));
    }
    let vacuum = |l: &K| {
        let mut a = K::one();
        let mut d = K::one();
        for nu in nus {
            a = a * (l.clone() - nu.clone() + K::one());
            d = d * (l.clone() - nu.clone());
        }
        (a, d)
    };
    let numerator = SquareMatrix::from_fn(n, |j, k| {
        let (a, d) = vacuum(&lambdas[j]);
        let shifted = lambdas[j].clone() + K::one();
        basis.eval(k, &lambdas[j]) * a - basis.eval(k, &shifted) * d
    })
    .det();
    let denominator = basis.eval_matrix(lambdas).det();
    if denominator.is_zero() {
        return Err(Error::Singular("vanishing denominator determinant".into()));
    }
    Ok(numerator / denominator)
}

/// The basis-parametrized determinants in the multiplicative trigonometric
/// variables, returning the gauge-normalized partition function:
///
/// ```text
/// variant 1:  det[ p_k(x_j) a~(x_j) - q^(-N+2) p_k(q^2 x_j) d~(x_j) ]
///             / (prod_k y_k det[ p_k(x_j) ])
/// variant 2:  det[ p_k(x_j) a~(x_j) - q^(-N)   p_k(q^2 x_j) d~(x_j) ]
///             / (prod_j x_j det[ p_k(x_j) ])
/// ```
pub fn z_basis_trig<K: Scalar>(
    variant: Variant,
    q: &K,
    xs: &[K],
    ys: &[K],
    basis: &PolyBasis<K>,
) -> Result<K> {
    let n = xs.len();
    if n == 0 || ys.len() != n {
        return Err(Error::Invalid("need equally many xs and ys".into()));
    }
    if basis.n() != n {
        return Err(Error::Invalid("basis size must match parameter count".into()));
    }
    if !all_distinct(xs) {
        return Err(Error::Singular("coinciding x parameters".into()));
    }
    let trig = TrigWeights::new(q.clone())?;
    let vacuum = |x: &K| {
        let pt = SpecPoint::new(x.clone());
        trig.vacuum(&pt, &ys.iter().map(|y| SpecPoint::new(y.clone())).collect::<Vec<_>>())
    };
    let shift_coeff = match variant {
        Variant::One => pow(q, -(n as i64) + 2)?,
        Variant::Two => pow(q, -(n as i64))?,
    };
    let q2 = q.clone() * q.clone();
    let numerator = SquareMatrix::from_fn(n, |j, k| {
        let (a, d) = vacuum(&xs[j]);
        let shifted = q2.clone() * xs[j].clone();
        basis.eval(k, &xs[j]) * a - shift_coeff.clone() * basis.eval(k, &shifted) * d
    })
    .det();
    let mut gauge = K::one();
    for z in match variant {
        Variant::One => ys,
        Variant::Two => xs,
    } {
        if z.is_zero() {
            return Err(Error::Singular("vanishing spectral variable".into()));
        }
        gauge = gauge * z.clone();
    }
    let denominator = basis.eval_matrix(xs).det();
    if denominator.is_zero() {
        return Err(Error::Singular("vanishing denominator determinant".into()));
    }
    Ok(numerator / (gauge * denominator))
}

fn all_distinct<K: Scalar>(vals: &[K]) -> bool {
    for (i, v) in vals.iter().enumerate() {
        if vals[i + 1..].contains(v) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::z_enum;
    use crate::model::{RationalWeights, SinWeights, SpectralParams, TrigWeights};
    use crate::qism::z_qism;
    use crate::scalar::{rat, Rat, CPX_REL_TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rational_params(lams: &[i64], nus: &[i64]) -> SpectralParams<Rat> {
        SpectralParams::new(
            lams.iter().map(|&p| rat(p, 1)).collect(),
            nus.iter().map(|&p| rat(p, 1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn ik_reference_values() {
        let params = rational_params(&[2, 5], &[0, 1]);
        assert_eq!(z_ik(&RationalWeights, &params).unwrap(), rat(20, 1));
        let one = rational_params(&[7], &[0]);
        assert_eq!(z_ik(&RationalWeights, &one).unwrap(), rat(1, 1));
    }

    #[test]
    fn ik_rejects_its_singular_points() {
        // lambda_1 = nu_1 makes b vanish
        let params = rational_params(&[0, -1], &[0, 2]);
        assert!(matches!(
            z_ik(&RationalWeights, &params),
            Err(Error::Singular(_))
        ));
        // the partition function itself is zero there (oracle)
        assert!(z_enum(&RationalWeights, &params).unwrap().is_zero());
        // coinciding lambdas
        let params = rational_params(&[3, 3], &[0, 1]);
        assert!(matches!(
            z_ik(&RationalWeights, &params),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn kostov_reference_values() {
        assert_eq!(
            z_kostov(&[rat(2, 1), rat(5, 1)], &[rat(0, 1), rat(1, 1)]).unwrap(),
            rat(20, 1)
        );
        // {lambda} = {nu} = (0, 2): Kostov stays regular, value -3
        assert_eq!(
            z_kostov(&[rat(0, 1), rat(2, 1)], &[rat(0, 1), rat(2, 1)]).unwrap(),
            rat(-3, 1)
        );
        assert_eq!(z_kostov(&[rat(4, 1)], &[rat(9, 1)]).unwrap(), rat(1, 1));
    }

    #[test]
    fn basis_representation_reproduces_known_formulas() {
        let lams = [rat(2, 1), rat(5, 1)];
        let nus = [rat(0, 1), rat(1, 1)];
        let monomial = PolyBasis::monomial(2);
        assert_eq!(z_basis_rat(&lams, &nus, &monomial).unwrap(), rat(20, 1));
        let lagrange = PolyBasis::lagrange(&nus).unwrap();
        assert_eq!(z_basis_rat(&lams, &nus, &lagrange).unwrap(), rat(20, 1));
        for seed in 0..5 {
            let random = PolyBasis::random(2, seed).unwrap();
            assert_eq!(z_basis_rat(&lams, &nus, &random).unwrap(), rat(20, 1));
        }
    }

    #[test]
    fn basis_representation_is_basis_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=5usize {
            let params = random_rational_params(n, &mut rng);
            let lams = params.lambda_vals();
            let nus = params.nu_vals();
            let reference = z_basis_rat(&lams, &nus, &PolyBasis::monomial(n)).unwrap();
            assert_eq!(reference, z_enum(&RationalWeights, &params).unwrap());
            let lagrange = PolyBasis::lagrange(&nus).unwrap();
            assert_eq!(z_basis_rat(&lams, &nus, &lagrange).unwrap(), reference);
            for seed in 0..10 {
                let basis = PolyBasis::random(n, seed).unwrap();
                assert_eq!(z_basis_rat(&lams, &nus, &basis).unwrap(), reference);
            }
        }
    }

    #[test]
    fn basis_change_leaves_value_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let params = random_rational_params(3, &mut rng);
        let lams = params.lambda_vals();
        let nus = params.nu_vals();
        let basis = PolyBasis::random(3, 5).unwrap();
        let value = z_basis_rat(&lams, &nus, &basis).unwrap();
        for seed in 20..25 {
            let m = loop {
                let candidate = SquareMatrix::from_fn(3, |_, _| {
                    Rat::from_int(rand::Rng::gen_range(&mut rng, -9..=9))
                });
                if !candidate.det().is_zero() {
                    break candidate;
                }
                let _ = seed;
            };
            let transformed = basis.transformed(&m).unwrap();
            assert_eq!(z_basis_rat(&lams, &nus, &transformed).unwrap(), value);
        }
    }

    #[test]
    fn rational_representations_agree_with_the_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 1..=5usize {
            for _ in 0..8 {
                let params = random_rational_params(n, &mut rng);
                let lams = params.lambda_vals();
                let nus = params.nu_vals();
                let z = z_enum(&RationalWeights, &params).unwrap();
                assert_eq!(z_qism(&RationalWeights, &params).unwrap(), z);
                assert_eq!(z_ik(&RationalWeights, &params).unwrap(), z);
                assert_eq!(z_kostov(&lams, &nus).unwrap(), z);
            }
        }
    }

    #[test]
    fn trig_size_one_values() {
        // variant 1 at N = 1, q = 2, monomial basis: (q x - y/q - q(x - y)) / y
        let basis = PolyBasis::monomial(1);
        for (x, y) in [(rat(3, 1), rat(7, 1)), (rat(1, 2), rat(5, 3))] {
            let v1 =
                z_basis_trig(Variant::One, &rat(2, 1), std::slice::from_ref(&x), std::slice::from_ref(&y), &basis)
                    .unwrap();
            assert_eq!(v1, rat(3, 2));
            let v2 = z_basis_trig(Variant::Two, &rat(2, 1), &[x], &[y], &basis).unwrap();
            assert_eq!(v2, rat(3, 2));
        }
    }

    #[test]
    fn trig_representations_agree_with_the_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for n in 1..=4usize {
            for _ in 0..6 {
                let (w, params) = random_trig_params(n, &mut rng);
                let xs = params.lambda_vals();
                let ys = params.nu_vals();
                let z = z_enum(&w, &params).unwrap();
                assert_eq!(z_qism(&w, &params).unwrap(), z);
                let basis = PolyBasis::monomial(n);
                assert_eq!(
                    z_basis_trig(Variant::One, w.q(), &xs, &ys, &basis).unwrap(),
                    z
                );
                assert_eq!(
                    z_basis_trig(Variant::Two, w.q(), &xs, &ys, &basis).unwrap(),
                    z
                );
                if params.lambdas_distinct() && params.nus_distinct() {
                    if let Ok(ik) = z_ik(&w, &params) {
                        assert_eq!(ik, z);
                    }
                    let lagrange = PolyBasis::lagrange(&ys).unwrap();
                    assert_eq!(
                        z_basis_trig(Variant::One, w.q(), &xs, &ys, &lagrange).unwrap(),
                        z
                    );
                }
            }
        }
    }

    #[test]
    fn trig_specialization_value() {
        // {x} = {y}: (q - 1/q)^N prod_{j != k} (q y_j - y_k / q); includes a
        // vanishing instance at q = 2, y = (1, 4)
        let w = TrigWeights::new(rat(2, 1)).unwrap();
        let params = SpectralParams::from_roots(
            vec![rat(1, 1), rat(2, 1)],
            vec![rat(1, 1), rat(2, 1)],
        )
        .unwrap();
        let z = z_enum(&w, &params).unwrap();
        assert_eq!(z, w.coinciding_value(params.nus()));
        assert!(z.is_zero()); // q y_1 - q^(-1) y_2 = 2 - 2 = 0
        let basis = PolyBasis::monomial(2);
        assert_eq!(
            z_basis_trig(
                Variant::One,
                w.q(),
                &params.lambda_vals(),
                &params.nu_vals(),
                &basis
            )
            .unwrap(),
            z
        );
    }

    #[test]
    fn fw_size_one_is_sin_gamma() {
        for gamma in [0.3, 0.7, 1.2] {
            for (l, nu) in [(0.4, -0.2), (1.3, 0.9)] {
                for variant in [Variant::One, Variant::Two] {
                    let z = z_fw(variant, gamma, &[l], &[nu]).unwrap();
                    assert!((z - Cpx::new(gamma.sin(), 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fw_agrees_with_complex_ik() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for n in 1..=5usize {
            for _ in 0..5 {
                let (gamma, lams, nus) = random_complex_draw(n, &mut rng);
                let w = SinWeights::new(gamma).unwrap();
                let params = SpectralParams::new(
                    lams.iter().map(|&l| Cpx::new(l, 0.0)).collect(),
                    nus.iter().map(|&v| Cpx::new(v, 0.0)).collect(),
                )
                .unwrap();
                let ik = z_ik(&w, &params).unwrap();
                let fw1 = z_fw(Variant::One, gamma, &lams, &nus).unwrap();
                let fw2 = z_fw(Variant::Two, gamma, &lams, &nus).unwrap();
                assert!(
                    fw1.approx_eq(&ik, CPX_REL_TOL),
                    "fw1 = {fw1}, ik = {ik} at n = {n}"
                );
                assert!(
                    fw2.approx_eq(&ik, CPX_REL_TOL),
                    "fw2 = {fw2}, ik = {ik} at n = {n}"
                );
            }
        }
    }

    #[test]
    fn closed_forms_agree_on_many_draws() {
        // fifty draws per size and mode, closed forms against each other
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for n in 1..=5usize {
            for _ in 0..50 {
                let params = random_rational_params(n, &mut rng);
                let lams = params.lambda_vals();
                let nus = params.nu_vals();
                let ik = z_ik(&RationalWeights, &params).unwrap();
                assert_eq!(z_kostov(&lams, &nus).unwrap(), ik);
                assert_eq!(
                    z_basis_rat(&lams, &nus, &PolyBasis::monomial(n)).unwrap(),
                    ik
                );
            }
        }
        for n in 1..=5usize {
            for _ in 0..50 {
                let (w, params) = random_trig_params(n, &mut rng);
                let xs = params.lambda_vals();
                let ys = params.nu_vals();
                let ik = z_ik(&w, &params).unwrap();
                let basis = PolyBasis::monomial(n);
                assert_eq!(
                    z_basis_trig(Variant::One, w.q(), &xs, &ys, &basis).unwrap(),
                    ik
                );
                assert_eq!(
                    z_basis_trig(Variant::Two, w.q(), &xs, &ys, &basis).unwrap(),
                    ik
                );
            }
        }
        for n in 1..=5usize {
            for _ in 0..50 {
                let (gamma, lams, nus) = random_complex_draw(n, &mut rng);
                let w = SinWeights::new(gamma).unwrap();
                let params = SpectralParams::new(
                    lams.iter().map(|&l| Cpx::new(l, 0.0)).collect(),
                    nus.iter().map(|&v| Cpx::new(v, 0.0)).collect(),
                )
                .unwrap();
                let ik = z_ik(&w, &params).unwrap();
                for variant in [Variant::One, Variant::Two] {
                    let fw = z_fw(variant, gamma, &lams, &nus).unwrap();
                    assert!(fw.approx_eq(&ik, CPX_REL_TOL), "{fw} vs {ik} at n = {n}");
                }
            }
        }
    }

    #[test]
    fn representation_model_compatibility() {
        use crate::model::WeightModel;
        let rational = WeightModel::Rational;
        let trig_c = WeightModel::TrigComplex { gamma: 0.7 };
        let trig_a = WeightModel::TrigAlgebraic { q: rat(2, 1) };
        assert!(ReprTag::Ik.compatible_with(&rational));
        assert!(ReprTag::Ik.compatible_with(&trig_c));
        assert!(ReprTag::Ik.compatible_with(&trig_a));
        assert!(ReprTag::Kostov.compatible_with(&rational));
        assert!(!ReprTag::Kostov.compatible_with(&trig_c));
        assert!(!ReprTag::Fw1.compatible_with(&rational));
        assert!(ReprTag::Fw1.compatible_with(&trig_c));
        assert!(!ReprTag::BasisTrig1.compatible_with(&rational));
        assert!(ReprTag::BasisTrig1.compatible_with(&trig_a));
        assert_eq!(ReprTag::parse("basis-trig2"), Some(ReprTag::BasisTrig2));
        assert_eq!(ReprTag::parse("nonsense"), None);
    }

    pub(crate) fn random_rational_params(
        n: usize,
        rng: &mut ChaCha8Rng,
    ) -> SpectralParams<Rat> {
        loop {
            let mut vals: Vec<Rat> = Vec::new();
            while vals.len() < 2 * n {
                let v = rat(rng.gen_range(-20..=20), rng.gen_range(1..=5));
                if !vals.contains(&v) {
                    vals.push(v);
                }
            }
            let nus = vals.split_off(n);
            let lams = vals;
            // keep the closed forms regular: a, b nonzero everywhere
            let ok = lams.iter().all(|l| {
                nus.iter().all(|nu| {
                    let d = l.clone() - nu.clone();
                    !d.is_zero() && d != -Rat::from_int(1)
                })
            });
            if ok {
                return SpectralParams::new(lams, nus).unwrap();
            }
        }
    }

    pub(crate) fn random_trig_params(
        n: usize,
        rng: &mut ChaCha8Rng,
    ) -> (TrigWeights<Rat>, SpectralParams<Rat>) {
        let q = loop {
            let q = rat(rng.gen_range(2..=9), 1);
            if let Ok(w) = TrigWeights::new(q.clone()) {
                break w;
            }
        };
        loop {
            let mut roots: Vec<Rat> = Vec::new();
            while roots.len() < 2 * n {
                let r = rat(rng.gen_range(1..=15), rng.gen_range(1..=4));
                let sq = r.clone() * r.clone();
                if !roots.iter().any(|s: &Rat| s.clone() * s.clone() == sq) {
                    roots.push(r);
                }
            }
            let vs = roots.split_off(n);
            let us = roots;
            let params = SpectralParams::from_roots(us, vs).unwrap();
            let xs = params.lambda_vals();
            let ys = params.nu_vals();
            let ok = xs.iter().all(|x| {
                ys.iter().all(|y| {
                    x != y && q.q().clone() * x.clone() != q.q_inv().clone() * y.clone()
                })
            });
            if ok {
                return (q, params);
            }
        }
    }

    pub(crate) fn random_complex_draw(
        n: usize,
        rng: &mut ChaCha8Rng,
    ) -> (f64, Vec<f64>, Vec<f64>) {
        loop {
            let gamma = rng.gen_range(0.1..1.4);
            let lams: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let nus: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let w = SinWeights::new(gamma).unwrap();
            let params = SpectralParams::new(
                lams.iter().map(|&l| Cpx::new(l, 0.0)).collect(),
                nus.iter().map(|&v| Cpx::new(v, 0.0)).collect(),
            )
            .unwrap();
            if w.generic_draw_ok(&params) {
                return (gamma, lams, nus);
            }
        }
    }
}
