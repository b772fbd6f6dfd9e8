//! Weight models of the six-vertex model: vertex weights, vacuum
//! eigenvalues, Vandermonde factors, and the parameter conversions between
//! the rational, trigonometric and algebraic parametrizations.
//!
//! Three parametrizations are supported.
//!
//! * **Rational**: `a = lambda - nu + 1`, `b = lambda - nu`, `c = 1`, over
//!   any scalar field (exact rationals in practice).
//! * **Trigonometric (analytic)**: `a = sin gamma(lambda - nu + 1)`,
//!   `b = sin gamma(lambda - nu)`, `c = sin gamma`, over complex doubles.
//! * **Trigonometric (algebraic)**: the multiplicative variables
//!   `x = q^(2 lambda)`, `y = q^(2 nu)` turn the trigonometric weights into
//!   rational functions. Stripping the per-vertex gauge factor
//!   `2i (x y)^(1/2)` leaves the polynomial weights
//!   `a^ = q x - q^(-1) y`, `b^ = x - y`, `c^ = (q - q^(-1)) u v`, where
//!   `u, v` are the chosen square roots of `x, y`. With rational `q, u, v`
//!   every trigonometric identity becomes bit-exact. The configuration sum
//!   over the stripped weights equals `Z~_N * prod_j u_j v_j`, where `Z~_N`
//!   is the gauge-normalized partition function; see
//!   [`SpectralParams::gauge_norm`].

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{pow, Cpx, Rat, Scalar};

/// One spectral parameter: its value in the parametrization's polynomial
/// variable, plus the chosen square root in root-gauged parametrizations.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecPoint<K> {
    pub val: K,
    pub root: Option<K>,
}

impl<K: Scalar> SpecPoint<K> {
    pub fn new(val: K) -> Self {
        Self { val, root: None }
    }

    /// Point `u^2` carrying its root `u`.
    pub fn from_root(root: K) -> Self {
        Self {
            val: root.clone() * root.clone(),
            root: Some(root),
        }
    }

    pub fn with_root(val: K, root: K) -> Result<Self> {
        if root.clone() * root.clone() != val {
            return Err(Error::Invalid(
                "square root inconsistent with its square".into(),
            ));
        }
        if root.is_zero() {
            return Err(Error::Invalid("spectral square root must be nonzero".into()));
        }
        Ok(Self {
            val,
            root: Some(root),
        })
    }

    fn root(&self) -> &K {
        self.root
            .as_ref()
            .expect("root-gauged weight system fed a point without a root")
    }
}

/// The two ordered sets of spectral parameters attached to the vertical
/// (`lambda`) and horizontal (`nu`) lattice lines.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParams<K> {
    lambdas: Vec<SpecPoint<K>>,
    nus: Vec<SpecPoint<K>>,
}

impl<K: Scalar> SpectralParams<K> {
    pub fn new(lambdas: Vec<K>, nus: Vec<K>) -> Result<Self> {
        Self::from_points(
            lambdas.into_iter().map(SpecPoint::new).collect(),
            nus.into_iter().map(SpecPoint::new).collect(),
        )
    }

    /// Algebraic-parametrization constructor: `x_j = u_j^2`, `y_k = v_k^2`.
    pub fn from_roots(us: Vec<K>, vs: Vec<K>) -> Result<Self> {
        if us.iter().chain(vs.iter()).any(|r| r.is_zero()) {
            return Err(Error::Invalid("square roots must be nonzero".into()));
        }
        Self::from_points(
            us.into_iter().map(SpecPoint::from_root).collect(),
            vs.into_iter().map(SpecPoint::from_root).collect(),
        )
    }

    /// Constructor validating externally supplied values against their roots.
    pub fn from_values_and_roots(xs: Vec<K>, us: Vec<K>, ys: Vec<K>, vs: Vec<K>) -> Result<Self> {
        if xs.len() != us.len() || ys.len() != vs.len() {
            return Err(Error::Invalid("values and roots must pair up".into()));
        }
        let lambdas = xs
            .into_iter()
            .zip(us)
            .map(|(x, u)| SpecPoint::with_root(x, u))
            .collect::<Result<_>>()?;
        let nus = ys
            .into_iter()
            .zip(vs)
            .map(|(y, v)| SpecPoint::with_root(y, v))
            .collect::<Result<_>>()?;
        Self::from_points(lambdas, nus)
    }

    pub fn from_points(lambdas: Vec<SpecPoint<K>>, nus: Vec<SpecPoint<K>>) -> Result<Self> {
        if lambdas.is_empty() || lambdas.len() != nus.len() {
            return Err(Error::Invalid(
                "need equally many lambda and nu parameters, at least one each".into(),
            ));
        }
        Ok(Self { lambdas, nus })
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambda(&self, j: usize) -> &SpecPoint<K> {
        &self.lambdas[j]
    }

    pub fn nu(&self, k: usize) -> &SpecPoint<K> {
        &self.nus[k]
    }

    pub fn lambdas(&self) -> &[SpecPoint<K>] {
        &self.lambdas
    }

    pub fn nus(&self) -> &[SpecPoint<K>] {
        &self.nus
    }

    pub fn lambda_vals(&self) -> Vec<K> {
        self.lambdas.iter().map(|p| p.val.clone()).collect()
    }

    pub fn nu_vals(&self) -> Vec<K> {
        self.nus.iter().map(|p| p.val.clone()).collect()
    }

    pub fn lambdas_distinct(&self) -> bool {
        pairwise_distinct(&self.lambdas)
    }

    pub fn nus_distinct(&self) -> bool {
        pairwise_distinct(&self.nus)
    }

    /// Replace the `j`th lambda, e.g. for substitution checks.
    pub fn with_lambda(&self, j: usize, pt: SpecPoint<K>) -> Self {
        let mut out = self.clone();
        out.lambdas[j] = pt;
        out
    }

    pub fn with_lambdas(&self, lambdas: Vec<SpecPoint<K>>) -> Result<Self> {
        Self::from_points(lambdas, self.nus.clone())
    }

    /// `prod_j u_j v_j` in root-gauged parametrizations, one otherwise.
    ///
    /// The configuration sum over stripped weights is `Z~_N` times this.
    pub fn gauge_norm(&self) -> K {
        let mut acc = K::one();
        for p in self.lambdas.iter().chain(self.nus.iter()) {
            if let Some(r) = &p.root {
                acc = acc * r.clone();
            }
        }
        acc
    }
}

fn pairwise_distinct<K: Scalar>(pts: &[SpecPoint<K>]) -> bool {
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if p.val == q.val {
                return false;
            }
        }
    }
    true
}

/// Site-dependent Boltzmann weights over the field `K`, together with the
/// spectral-shift and Vandermonde conventions they induce.
pub trait WeightSystem<K: Scalar>: Clone + Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether spectral points must carry square roots (algebraic gauge).
    fn uses_roots(&self) -> bool {
        false
    }

    fn weight_a(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K;

    fn weight_b(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K;

    /// The c-weight. In the root-gauged system this needs the square roots
    /// of both arguments; `a` and `b` never do.
    fn weight_c(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K;

    /// The weight triple `(a, b, c)` at `(lambda, nu)`.
    fn abc(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> (K, K, K) {
        (
            self.weight_a(lam, nu),
            self.weight_b(lam, nu),
            self.weight_c(lam, nu),
        )
    }

    /// The c-weight as it enters the Izergin-Korepin determinant kernel.
    ///
    /// Identical to `weight_c` except in the root-gauged system, where the
    /// kernel uses the root-free `q - q^(-1)` and the determinant then
    /// evaluates the gauge-normalized `Z~_N` directly.
    fn kernel_c(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K {
        self.weight_c(lam, nu)
    }

    /// The spectral shift `lambda -> lambda - 1` (`x -> x / q^2`).
    fn shift_down(&self, p: &SpecPoint<K>) -> SpecPoint<K>;

    /// The spectral shift `lambda -> lambda + 1` (`x -> q^2 x`).
    fn shift_up(&self, p: &SpecPoint<K>) -> SpecPoint<K>;

    /// `prod_{j<k} (z_k - z_j)` in the parametrization's difference form.
    fn vandermonde(&self, zs: &[K]) -> K;

    /// Vacuum eigenvalues `(a(lambda), d(lambda))`: products of `a`- and
    /// `b`-weights over all horizontal lines.
    fn vacuum(&self, lam: &SpecPoint<K>, nus: &[SpecPoint<K>]) -> (K, K) {
        let mut a = K::one();
        let mut d = K::one();
        for nu in nus {
            a = a * self.weight_a(lam, nu);
            d = d * self.weight_b(lam, nu);
        }
        (a, d)
    }

    /// Value of the partition function at `{lambda} = {nu}`.
    fn coinciding_value(&self, nus: &[SpecPoint<K>]) -> K;

    /// Extra genericity constraints a random parameter draw must satisfy
    /// (used by floating-point systems to keep comparisons well conditioned).
    fn generic_draw_ok(&self, _params: &SpectralParams<K>) -> bool {
        true
    }
}

/// Rational weights `a = lambda - nu + 1`, `b = lambda - nu`, `c = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalWeights;

impl<K: Scalar> WeightSystem<K> for RationalWeights {
    fn name(&self) -> &'static str {
        "rational"
    }

    fn weight_a(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K {
        lam.val.clone() - nu.val.clone() + K::one()
    }

    fn weight_b(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K {
        lam.val.clone() - nu.val.clone()
    }

    fn weight_c(&self, _lam: &SpecPoint<K>, _nu: &SpecPoint<K>) -> K {
        K::one()
    }

    fn shift_down(&self, p: &SpecPoint<K>) -> SpecPoint<K> {
        SpecPoint::new(p.val.clone() - K::one())
    }

    fn shift_up(&self, p: &SpecPoint<K>) -> SpecPoint<K> {
        SpecPoint::new(p.val.clone() + K::one())
    }

    fn vandermonde(&self, zs: &[K]) -> K {
        difference_product(zs)
    }

    fn coinciding_value(&self, nus: &[SpecPoint<K>]) -> K {
        // prod_{j,k} (nu_j - nu_k + 1)
        let mut acc = K::one();
        for j in nus {
            for k in nus {
                acc = acc * (j.val.clone() - k.val.clone() + K::one());
            }
        }
        acc
    }
}

/// Stripped trigonometric weights in the multiplicative variables:
/// `a^ = q x - q^(-1) y`, `b^ = x - y`, `c^ = (q - q^(-1)) u v`.
#[derive(Clone, Debug)]
pub struct TrigWeights<K> {
    q: K,
    q_inv: K,
}

impl<K: Scalar> TrigWeights<K> {
    pub fn new(q: K) -> Result<Self> {
        let q_inv = q
            .inverse()
            .ok_or_else(|| Error::Invalid("q must be nonzero".into()))?;
        if q == q_inv {
            return Err(Error::Invalid("q = +/-1 makes the c-weight vanish".into()));
        }
        Ok(Self { q, q_inv })
    }

    pub fn q(&self) -> &K {
        &self.q
    }

    pub fn q_inv(&self) -> &K {
        &self.q_inv
    }

    /// `q - q^(-1)`, the stripped c-weight without its root factors.
    pub fn c_unit(&self) -> K {
        self.q.clone() - self.q_inv.clone()
    }
}

impl<K: Scalar> WeightSystem<K> for TrigWeights<K> {
    fn name(&self) -> &'static str {
        "trig-algebraic"
    }

    fn uses_roots(&self) -> bool {
        true
    }

    fn weight_a(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K {
        self.q.clone() * lam.val.clone() - self.q_inv.clone() * nu.val.clone()
    }

    fn weight_b(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K {
        lam.val.clone() - nu.val.clone()
    }

    fn weight_c(&self, lam: &SpecPoint<K>, nu: &SpecPoint<K>) -> K {
        self.c_unit() * lam.root().clone() * nu.root().clone()
    }

    fn kernel_c(&self, _lam: &SpecPoint<K>, _nu: &SpecPoint<K>) -> K {
        self.c_unit()
    }

    fn shift_down(&self, p: &SpecPoint<K>) -> SpecPoint<K> {
        SpecPoint {
            val: p.val.clone() * self.q_inv.clone() * self.q_inv.clone(),
            root: p.root.as_ref().map(|r| r.clone() * self.q_inv.clone()),
        }
    }

    fn shift_up(&self, p: &SpecPoint<K>) -> SpecPoint<K> {
        SpecPoint {
            val: p.val.clone() * self.q.clone() * self.q.clone(),
            root: p.root.as_ref().map(|r| r.clone() * self.q.clone()),
        }
    }

    fn vandermonde(&self, zs: &[K]) -> K {
        difference_product(zs)
    }

    fn coinciding_value(&self, nus: &[SpecPoint<K>]) -> K {
        // (q - q^(-1))^N prod_{j != k} (q y_j - q^(-1) y_k)
        let mut acc = pow(&self.c_unit(), nus.len() as i64).expect("nonzero base");
        for (j, yj) in nus.iter().enumerate() {
            for (k, yk) in nus.iter().enumerate() {
                if j != k {
                    acc = acc
                        * (self.q.clone() * yj.val.clone()
                            - self.q_inv.clone() * yk.val.clone());
                }
            }
        }
        acc
    }
}

/// Analytic trigonometric weights `a = sin gamma(lambda - nu + 1)`, etc.,
/// over complex doubles.
#[derive(Clone, Copy, Debug)]
pub struct SinWeights {
    gamma: f64,
}

impl SinWeights {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.sin().abs() < 1e-12 {
            return Err(Error::Invalid(
                "gamma must not be a multiple of pi (sin gamma = 0)".into(),
            ));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    fn sin_gamma_times(&self, z: Cpx) -> Cpx {
        (z * self.gamma).sin()
    }
}

impl WeightSystem<Cpx> for SinWeights {
    fn name(&self) -> &'static str {
        "trig-complex"
    }

    fn weight_a(&self, lam: &SpecPoint<Cpx>, nu: &SpecPoint<Cpx>) -> Cpx {
        self.sin_gamma_times(lam.val - nu.val + Cpx::one())
    }

    fn weight_b(&self, lam: &SpecPoint<Cpx>, nu: &SpecPoint<Cpx>) -> Cpx {
        self.sin_gamma_times(lam.val - nu.val)
    }

    fn weight_c(&self, _lam: &SpecPoint<Cpx>, _nu: &SpecPoint<Cpx>) -> Cpx {
        Cpx::new(self.gamma.sin(), 0.0)
    }

    fn shift_down(&self, p: &SpecPoint<Cpx>) -> SpecPoint<Cpx> {
        SpecPoint::new(p.val - Cpx::one())
    }

    fn shift_up(&self, p: &SpecPoint<Cpx>) -> SpecPoint<Cpx> {
        SpecPoint::new(p.val + Cpx::one())
    }

    fn vandermonde(&self, zs: &[Cpx]) -> Cpx {
        let mut acc = Cpx::one();
        for j in 0..zs.len() {
            for k in j + 1..zs.len() {
                acc *= self.sin_gamma_times(zs[k] - zs[j]);
            }
        }
        acc
    }

    fn coinciding_value(&self, nus: &[SpecPoint<Cpx>]) -> Cpx {
        let mut acc = Cpx::one();
        for j in nus {
            for k in nus {
                acc *= self.sin_gamma_times(j.val - k.val + Cpx::one());
            }
        }
        acc
    }

    fn generic_draw_ok(&self, params: &SpectralParams<Cpx>) -> bool {
        // Keep every sine that appears in a denominator or Vandermonde factor
        // bounded away from zero.
        const MIN: f64 = 1e-3;
        let apart = |zs: &[SpecPoint<Cpx>]| {
            for (i, z) in zs.iter().enumerate() {
                for w in &zs[i + 1..] {
                    if self.sin_gamma_times(z.val - w.val).norm() < MIN {
                        return false;
                    }
                }
            }
            true
        };
        if !apart(params.lambdas()) || !apart(params.nus()) {
            return false;
        }
        for l in params.lambdas() {
            for nu in params.nus() {
                let diff = l.val - nu.val;
                if self.sin_gamma_times(diff).norm() < MIN
                    || self.sin_gamma_times(diff + Cpx::one()).norm() < MIN
                {
                    return false;
                }
            }
        }
        true
    }
}

fn difference_product<K: Scalar>(zs: &[K]) -> K {
    let mut acc = K::one();
    for j in 0..zs.len() {
        for k in j + 1..zs.len() {
            acc = acc * (zs[k].clone() - zs[j].clone());
        }
    }
    acc
}

/// User-facing model selector with its fixed parameters.
#[derive(Clone, Debug)]
pub enum WeightModel {
    Rational,
    TrigComplex { gamma: f64 },
    TrigAlgebraic { q: Rat },
}

impl WeightModel {
    pub fn name(&self) -> &'static str {
        match self {
            WeightModel::Rational => "rational",
            WeightModel::TrigComplex { .. } => "trig-complex",
            WeightModel::TrigAlgebraic { .. } => "trig-algebraic",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WeightModel::Rational => Ok(()),
            WeightModel::TrigComplex { gamma } => SinWeights::new(*gamma).map(|_| ()),
            WeightModel::TrigAlgebraic { q } => TrigWeights::new(q.clone()).map(|_| ()),
        }
    }
}

/// Complex image of real trigonometric parameters in the multiplicative
/// variables, with the exact conversion factor between `Z_N` and `Z~_N`.
#[derive(Clone, Debug)]
pub struct AlgebraicImage {
    pub q: Cpx,
    pub xs: Vec<Cpx>,
    pub ys: Vec<Cpx>,
    /// Phase-consistent roots `u_j = q^(lambda_j)`, `v_k = q^(nu_k)`.
    pub us: Vec<Cpx>,
    pub vs: Vec<Cpx>,
    /// `(2i)^(N^2) prod_j (x_j y_j)^((N-1)/2)` with the root convention
    /// above, so that `Z~_N = Z_N * prefactor`.
    pub prefactor: Cpx,
}

/// Change of variables `x_j = q^(2 lambda_j)`, `y_k = q^(2 nu_k)`,
/// `q = e^(i gamma)`.
pub fn to_algebraic(lambdas: &[f64], nus: &[f64], gamma: f64) -> Result<AlgebraicImage> {
    SinWeights::new(gamma)?;
    let n = lambdas.len();
    if n != nus.len() || n == 0 {
        return Err(Error::Invalid("need equally many lambdas and nus".into()));
    }
    let phase = |t: f64| Cpx::from_polar(1.0, t);
    let q = phase(gamma);
    let us: Vec<Cpx> = lambdas.iter().map(|&l| phase(gamma * l)).collect();
    let vs: Vec<Cpx> = nus.iter().map(|&v| phase(gamma * v)).collect();
    let xs: Vec<Cpx> = lambdas.iter().map(|&l| phase(2.0 * gamma * l)).collect();
    let ys: Vec<Cpx> = nus.iter().map(|&v| phase(2.0 * gamma * v)).collect();
    let two_i = Cpx::new(0.0, 2.0);
    let mut prefactor = pow(&two_i, (n * n) as i64)?;
    for j in 0..n {
        // (x_j y_j)^((N-1)/2) = e^(i gamma (lambda_j + nu_j) (N-1))
        prefactor *= phase(gamma * (lambdas[j] + nus[j]) * (n as f64 - 1.0));
    }
    Ok(AlgebraicImage {
        q,
        xs,
        ys,
        us,
        vs,
        prefactor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::Zero;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn pt(n: i64, d: i64) -> SpecPoint<Rat> {
        SpecPoint::new(rat(n, d))
    }

    #[test]
    fn rational_weights_by_substitution() {
        let w = RationalWeights;
        assert_eq!(w.abc(&pt(2, 1), &pt(0, 1)), (rat(3, 1), rat(2, 1), rat(1, 1)));
        // b vanishes at coinciding arguments
        assert_eq!(w.abc(&pt(5, 2), &pt(5, 2)), (rat(1, 1), rat(0, 1), rat(1, 1)));
    }

    #[test]
    fn stripped_trig_weights() {
        let w = TrigWeights::new(rat(2, 1)).unwrap();
        let x = SpecPoint::with_root(rat(4, 1), rat(2, 1)).unwrap();
        let y = SpecPoint::with_root(rat(1, 1), rat(1, 1)).unwrap();
        let (a, b, c) = w.abc(&x, &y);
        assert_eq!(a, rat(15, 2));
        assert_eq!(b, rat(3, 1));
        assert_eq!(c, rat(3, 1));
    }

    #[test]
    fn root_consistency_is_enforced() {
        assert!(SpecPoint::with_root(rat(4, 1), rat(3, 1)).is_err());
        assert!(SpecPoint::with_root(rat(0, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn vacuum_eigenvalues_rational() {
        let w = RationalWeights;
        let params = SpectralParams::new(vec![rat(2, 1), rat(7, 1)], vec![rat(0, 1), rat(1, 1)])
            .unwrap();
        let (a, d) = w.vacuum(&pt(2, 1), params.nus());
        assert_eq!(a, rat(6, 1));
        assert_eq!(d, rat(2, 1));
        // a has zeros at nu_j - 1, d has zeros at nu_j
        for nu in params.nus() {
            let (a0, _) = w.vacuum(&w.shift_down(nu), params.nus());
            assert!(a0.is_zero());
            let (_, d0) = w.vacuum(nu, params.nus());
            assert!(d0.is_zero());
        }
    }

    #[test]
    fn vacuum_eigenvalues_trig() {
        let w = TrigWeights::new(rat(2, 1)).unwrap();
        let x = SpecPoint::with_root(rat(1, 1), rat(1, 1)).unwrap();
        let (a, d) = w.vacuum(&x, std::slice::from_ref(&x));
        assert_eq!(a, rat(3, 2));
        assert!(d.is_zero());
    }

    #[test]
    fn vandermonde_products() {
        let w = RationalWeights;
        assert_eq!(WeightSystem::<Rat>::vandermonde(&w, &[rat(2, 1), rat(5, 1)]), rat(3, 1));
        assert_eq!(WeightSystem::<Rat>::vandermonde(&w, &[rat(9, 1)]), rat(1, 1));
        assert_eq!(
            WeightSystem::<Rat>::vandermonde(&w, &[rat(0, 1), rat(1, 1), rat(3, 1)]),
            rat(6, 1)
        );
    }

    #[test]
    fn trig_shift_moves_root() {
        let w = TrigWeights::new(rat(2, 1)).unwrap();
        let x = SpecPoint::with_root(rat(4, 1), rat(2, 1)).unwrap();
        let down = w.shift_down(&x);
        assert_eq!(down.val, rat(1, 1));
        assert_eq!(down.root, Some(rat(1, 1)));
        let up = w.shift_up(&down);
        assert_eq!(up, x);
    }

    #[test]
    fn to_algebraic_conventions() {
        // lambda = 0 maps to x = 1
        let img = to_algebraic(&[0.0], &[0.3], 0.9).unwrap();
        assert!((img.xs[0] - Cpx::one()).norm() < 1e-15);
        // N = 1: prefactor is 2i exactly (exponent (N-1)/2 = 0)
        assert!((img.prefactor - Cpx::new(0.0, 2.0)).norm() < 1e-15);
        // gamma = pi/2, lambda = 1/2: x = i
        let img = to_algebraic(&[0.5], &[0.0], PI / 2.0).unwrap();
        assert!((img.xs[0] - Cpx::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn algebraic_image_reproduces_sin_weights() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let gamma = rng.gen_range(0.1..1.5);
            let l = rng.gen_range(-5.0..5.0);
            let nu = rng.gen_range(-5.0..5.0);
            let img = to_algebraic(&[l], &[nu], gamma).unwrap();
            let w = SinWeights::new(gamma).unwrap();
            let (a, b, c) = w.abc(&SpecPoint::new(Cpx::new(l, 0.0)), &SpecPoint::new(Cpx::new(nu, 0.0)));
            let gauge = Cpx::new(0.0, 2.0) * img.us[0] * img.vs[0];
            let a_alg = (img.q * img.xs[0] - img.ys[0] / img.q) / gauge;
            let b_alg = (img.xs[0] - img.ys[0]) / gauge;
            let c_alg = (img.q - 1.0 / img.q) / Cpx::new(0.0, 2.0);
            assert!((a_alg - a).norm() <= 1e-12 * a.norm().max(1.0));
            assert!((b_alg - b).norm() <= 1e-12 * b.norm().max(1.0));
            assert!((c_alg - c).norm() <= 1e-12);
        }
    }

    #[test]
    fn model_validation() {
        assert!(WeightModel::TrigComplex { gamma: PI }.validate().is_err());
        assert!(WeightModel::TrigComplex { gamma: 0.7 }.validate().is_ok());
        assert!(WeightModel::TrigAlgebraic { q: rat(1, 1) }.validate().is_err());
        assert!(WeightModel::TrigAlgebraic { q: rat(-1, 1) }.validate().is_err());
        assert!(WeightModel::TrigAlgebraic { q: rat(0, 1) }.validate().is_err());
        assert!(WeightModel::TrigAlgebraic { q: rat(3, 2) }.validate().is_ok());
    }

    #[test]
    fn gauge_norm_products() {
        let params =
            SpectralParams::from_roots(vec![rat(2, 1), rat(3, 1)], vec![rat(1, 2), rat(5, 1)])
                .unwrap();
        assert_eq!(params.gauge_norm(), rat(15, 1));
        let plain = SpectralParams::new(vec![rat(1, 1)], vec![rat(2, 1)]).unwrap();
        assert_eq!(plain.gauge_norm(), rat(1, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // a - b = c for the rational weights
        #[test]
        fn rational_a_minus_b_is_c(ln in -40i64..40, ld in 1i64..6, nn in -40i64..40, nd in 1i64..6) {
            let w = RationalWeights;
            let (a, b, c) = w.abc(&SpecPoint::new(rat(ln, ld)), &SpecPoint::new(rat(nn, nd)));
            prop_assert_eq!(a - b, c);
        }

        // a^ = q b^ + (q - q^(-1)) y for the stripped trig weights
        #[test]
        fn stripped_a_from_b(qn in 2i64..9, un in 1i64..9, vn in 1i64..9) {
            let q = rat(qn, 1);
            let w = TrigWeights::new(q.clone()).unwrap();
            let x = SpecPoint::from_root(rat(un, 1));
            let y = SpecPoint::from_root(rat(vn, 1));
            let (a, b, _) = w.abc(&x, &y);
            let expect = q.clone() * b + (q.clone() - Rat::one() / q) * y.val.clone();
            prop_assert_eq!(a, expect);
        }
    }
}
