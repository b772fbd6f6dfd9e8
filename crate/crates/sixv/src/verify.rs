//! Property suites for the defining properties of the partition function,
//! runnable against any implementation that computes it.
//!
//! The checks are black-box: an implementation is a closure from spectral
//! parameters to a scalar. Exact fields are compared exactly, the complex
//! field within `1e-9` relative. Every failed check carries a witness that
//! is reproducible from its `(id, seed)` pair.
//!
//! [`reconstruct_rational`] and [`reconstruct_trig`] rebuild the partition
//! function from the defining properties alone - symmetry, degree, the
//! vanishing substitutions and the value at coinciding parameter sets -
//! using the Lagrange expansion in the first variable and recursing on the
//! lattice size. They never touch a closed form, so agreement with the
//! enumeration oracle is evidence that the property system pins the
//! function down uniquely.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::detrep::{self, Variant};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::model::{
    RationalWeights, SinWeights, SpecPoint, SpectralParams, TrigWeights, WeightSystem,
};
use crate::poly::PolyBasis;
use crate::qism::{self, MonodromyEntry, QdetForm, QuantumState};
use crate::scalar::{Cpx, Rat, Scalar, CPX_REL_TOL};

const MAX_DRAW_ATTEMPTS: usize = 200;

/// Outcome of one property check.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub id: String,
    pub model: String,
    pub n: usize,
    pub seed: u64,
    pub pass: bool,
    pub witness: Option<Value>,
}

impl PropertyReport {
    fn passed(id: String, model: &str, n: usize, seed: u64) -> Self {
        Self {
            id,
            model: model.to_string(),
            n,
            seed,
            pass: true,
            witness: None,
        }
    }

    fn failed(id: String, model: &str, n: usize, seed: u64, witness: Value) -> Self {
        Self {
            id,
            model: model.to_string(),
            n,
            seed,
            pass: false,
            witness: Some(witness),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "model": self.model,
            "n": self.n,
            "seed": self.seed,
            "pass": self.pass,
            "witness": self.witness,
        })
    }
}

/// Scalars that property checks can draw at random.
pub trait DrawScalar: Scalar {
    fn draw(rng: &mut ChaCha8Rng) -> Self;
}

impl DrawScalar for Rat {
    /// Numerators in [-20, 20], denominators in [1, 5].
    fn draw(rng: &mut ChaCha8Rng) -> Self {
        crate::scalar::rat(rng.gen_range(-20..=20), rng.gen_range(1..=5))
    }
}

impl DrawScalar for Cpx {
    fn draw(rng: &mut ChaCha8Rng) -> Self {
        Cpx::new(rng.gen_range(-2.0..2.0), 0.0)
    }
}

/// A boxed partition-function evaluation.
pub type ZClosure<K> = Box<dyn Fn(&SpectralParams<K>) -> Result<K>>;

/// A black-box partition-function implementation under test.
pub struct ZImpl<K> {
    pub name: String,
    pub f: ZClosure<K>,
    /// Defined at the vanishing substitution `lambda_1 = nu_j`,
    /// `lambda_2 = nu_j - 1`.
    pub at_vanishing: bool,
    /// Defined at coinciding parameter sets `{lambda} = {nu}`.
    pub at_coinciding: bool,
}

impl<K> ZImpl<K> {
    pub fn eval(&self, params: &SpectralParams<K>) -> Result<K> {
        (self.f)(params)
    }
}

/// Property checker bound to one weight system.
#[derive(Clone)]
pub struct Checker<K, W> {
    weights: W,
    rel_tol: f64,
    _field: std::marker::PhantomData<K>,
}

impl<K: DrawScalar, W: WeightSystem<K>> Checker<K, W> {
    pub fn new(weights: W) -> Self {
        Self {
            weights,
            rel_tol: if K::EXACT { 0.0 } else { CPX_REL_TOL },
            _field: std::marker::PhantomData,
        }
    }

    pub fn weights(&self) -> &W {
        &self.weights
    }

    /// Model name with the scalar type pinned down.
    pub fn model_name(&self) -> &'static str {
        self.weights.name()
    }

    fn eq(&self, a: &K, b: &K) -> bool {
        if K::EXACT {
            a == b
        } else {
            a.approx_eq(b, self.rel_tol)
        }
    }

    fn is_zeroish(&self, v: &K, scale: f64) -> bool {
        if K::EXACT {
            v.is_zero()
        } else {
            v.abs_f64() <= self.rel_tol * scale.max(1.0)
        }
    }

    /// One random spectral point whose value avoids the given list.
    pub fn draw_point(&self, rng: &mut ChaCha8Rng, avoid: &[K]) -> SpecPoint<K> {
        loop {
            let pt = if self.weights.uses_roots() {
                let root = loop {
                    let r = K::draw(rng);
                    if !r.is_zero() {
                        break r;
                    }
                };
                SpecPoint::from_root(root)
            } else {
                SpecPoint::new(K::draw(rng))
            };
            if !avoid.contains(&pt.val) {
                return pt;
            }
        }
    }

    /// A generic-position parameter draw: distinct lambdas, distinct nus,
    /// plus the weight system's own conditioning constraints.
    pub fn draw_params(&self, n: usize, rng: &mut ChaCha8Rng) -> SpectralParams<K> {
        loop {
            let mut lambdas: Vec<SpecPoint<K>> = Vec::with_capacity(n);
            while lambdas.len() < n {
                let avoid: Vec<K> = lambdas.iter().map(|p| p.val.clone()).collect();
                lambdas.push(self.draw_point(rng, &avoid));
            }
            let mut nus: Vec<SpecPoint<K>> = Vec::with_capacity(n);
            while nus.len() < n {
                let avoid: Vec<K> = nus.iter().map(|p| p.val.clone()).collect();
                nus.push(self.draw_point(rng, &avoid));
            }
            let params = SpectralParams::from_points(lambdas, nus).expect("sized draw");
            if self.weights.generic_draw_ok(&params) {
                return params;
            }
        }
    }

    fn witness_params(&self, params: &SpectralParams<K>) -> Value {
        json!({
            "lambda": params.lambdas().iter().map(|p| p.val.to_json()).collect::<Vec<_>>(),
            "nu": params.nus().iter().map(|p| p.val.to_json()).collect::<Vec<_>>(),
        })
    }

    /// Symmetry of the value under permutations of the lambda set.
    pub fn check_symmetry(
        &self,
        zfn: &ZImpl<K>,
        n: usize,
        seed: u64,
    ) -> PropertyReport {
        let id = format!("symmetry:{}", zfn.name);
        let model = self.weights.name();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(1));
        for _ in 0..MAX_DRAW_ATTEMPTS {
            let params = self.draw_params(n, &mut rng);
            let base = match zfn.eval(&params) {
                Ok(v) => v,
                Err(Error::Singular(_)) => continue,
                Err(e) => return self.error_report(id, n, seed, &params, e),
            };
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                let permuted = params
                    .with_lambdas(perm.iter().map(|&i| params.lambda(i).clone()).collect())
                    .expect("same size");
                let z = match zfn.eval(&permuted) {
                    Ok(v) => v,
                    Err(Error::Singular(_)) => continue,
                    Err(e) => return self.error_report(id, n, seed, &permuted, e),
                };
                if !self.eq(&z, &base) {
                    let mut w = self.witness_params(&params);
                    w["permutation"] = json!(perm);
                    w["lhs"] = base.to_json();
                    w["rhs"] = z.to_json();
                    return PropertyReport::failed(id, model, n, seed, w);
                }
            }
            return PropertyReport::passed(id, model, n, seed);
        }
        self.draw_failure(id, n, seed)
    }

    /// Degree in the first lambda variable is exactly `n - 1`, established
    /// by interpolation through `n + 1` nodes (exact fields only).
    pub fn check_degree(&self, zfn: &ZImpl<K>, n: usize, seed: u64) -> PropertyReport {
        let id = format!("degree:{}", zfn.name);
        let model = self.weights.name();
        if !K::EXACT {
            return PropertyReport::failed(
                id,
                model,
                n,
                seed,
                json!({"detail": "degree check requires an exact field"}),
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(2));
        'attempt: for _ in 0..MAX_DRAW_ATTEMPTS {
            let params = self.draw_params(n, &mut rng);
            let mut nodes: Vec<SpecPoint<K>> = Vec::new();
            let mut values: Vec<K> = Vec::new();
            let mut node_tries = 0;
            while nodes.len() < n + 2 {
                node_tries += 1;
                if node_tries > 100 {
                    continue 'attempt;
                }
                let avoid: Vec<K> = nodes.iter().map(|p| p.val.clone()).collect();
                let node = self.draw_point(&mut rng, &avoid);
                let probe = params.with_lambda(0, node.clone());
                match zfn.eval(&probe) {
                    Ok(v) => {
                        nodes.push(node);
                        values.push(v);
                    }
                    Err(Error::Singular(_)) => continue,
                    Err(e) => return self.error_report(id, n, seed, &probe, e),
                }
            }
            // last node is the fresh evaluation point
            let fresh = nodes.pop().expect("nonempty");
            let fresh_value = values.pop().expect("nonempty");
            let xs: Vec<K> = nodes.iter().map(|p| p.val.clone()).collect();
            let coeffs = divided_differences(&xs, &values);
            let top = &coeffs[n];
            let leading = &coeffs[n - 1];
            if !top.is_zero() || leading.is_zero() {
                let mut w = self.witness_params(&params);
                w["nodes"] = json!(xs.iter().map(|x| x.to_json()).collect::<Vec<_>>());
                w["degree_n_coefficient"] = top.to_json();
                w["degree_n_minus_1_coefficient"] = leading.to_json();
                return PropertyReport::failed(id, model, n, seed, w);
            }
            let rebuilt = newton_eval(&xs[..n], &coeffs[..n], &fresh.val);
            if rebuilt != fresh_value {
                let mut w = self.witness_params(&params);
                w["fresh_point"] = fresh.val.to_json();
                w["lhs"] = rebuilt.to_json();
                w["rhs"] = fresh_value.to_json();
                return PropertyReport::failed(id, model, n, seed, w);
            }
            return PropertyReport::passed(id, model, n, seed);
        }
        self.draw_failure(id, n, seed)
    }

    /// Vanishing at `lambda_1 = nu_j`, `lambda_2 = nu_j` shifted down, for
    /// every `j`.
    pub fn check_vanishing(&self, zfn: &ZImpl<K>, n: usize, seed: u64) -> PropertyReport {
        let id = format!("vanishing:{}", zfn.name);
        let model = self.weights.name();
        if n < 2 {
            return PropertyReport::passed(id, model, n, seed);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(3));
        'attempt: for _ in 0..MAX_DRAW_ATTEMPTS {
            let params = self.draw_params(n, &mut rng);
            let scale = match zfn.eval(&params) {
                Ok(v) => v.abs_f64(),
                Err(Error::Singular(_)) => continue,
                Err(e) => return self.error_report(id, n, seed, &params, e),
            };
            for j in 0..n {
                let mut lambdas = params.lambdas().to_vec();
                lambdas[0] = params.nu(j).clone();
                lambdas[1] = self.weights.shift_down(params.nu(j));
                let taken: Vec<K> = vec![lambdas[0].val.clone(), lambdas[1].val.clone()];
                if taken[0] == taken[1] {
                    continue 'attempt;
                }
                for l in lambdas.iter_mut().skip(2) {
                    if taken.contains(&l.val) {
                        continue 'attempt;
                    }
                }
                let substituted = params.with_lambdas(lambdas).expect("same size");
                match zfn.eval(&substituted) {
                    Ok(z) => {
                        if !self.is_zeroish(&z, scale) {
                            let mut w = self.witness_params(&substituted);
                            w["j"] = json!(j + 1);
                            w["lhs"] = z.to_json();
                            w["rhs"] = K::zero().to_json();
                            return PropertyReport::failed(id, model, n, seed, w);
                        }
                    }
                    Err(Error::Singular(_)) => continue 'attempt,
                    Err(e) => return self.error_report(id, n, seed, &substituted, e),
                }
            }
            return PropertyReport::passed(id, model, n, seed);
        }
        self.draw_failure(id, n, seed)
    }

    /// Value at `{lambda} = {nu}` equals the model's closed product.
    pub fn check_specialization(&self, zfn: &ZImpl<K>, n: usize, seed: u64) -> PropertyReport {
        let id = format!("specialization:{}", zfn.name);
        let model = self.weights.name();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(4));
        for _ in 0..MAX_DRAW_ATTEMPTS {
            let params = self.draw_params(n, &mut rng);
            let coinciding = params
                .with_lambdas(params.nus().to_vec())
                .expect("same size");
            let expected = self.weights.coinciding_value(params.nus());
            match zfn.eval(&coinciding) {
                Ok(z) => {
                    if self.eq(&z, &expected) {
                        return PropertyReport::passed(id, model, n, seed);
                    }
                    let mut w = self.witness_params(&coinciding);
                    w["lhs"] = z.to_json();
                    w["rhs"] = expected.to_json();
                    return PropertyReport::failed(id, model, n, seed, w);
                }
                Err(Error::Singular(_)) => continue,
                Err(e) => return self.error_report(id, n, seed, &coinciding, e),
            }
        }
        self.draw_failure(id, n, seed)
    }

    fn error_report(
        &self,
        id: String,
        n: usize,
        seed: u64,
        params: &SpectralParams<K>,
        e: Error,
    ) -> PropertyReport {
        let mut w = self.witness_params(params);
        w["error"] = json!(e.to_string());
        PropertyReport::failed(id, self.weights.name(), n, seed, w)
    }

    fn draw_failure(&self, id: String, n: usize, seed: u64) -> PropertyReport {
        PropertyReport::failed(
            id,
            self.weights.name(),
            n,
            seed,
            json!({"detail": "no generic parameter draw found"}),
        )
    }
}

// Lemma-level checks on the quantum-space operators.
impl<K: DrawScalar, W: WeightSystem<K>> Checker<K, W> {
    fn random_state(&self, n: usize, rng: &mut ChaCha8Rng) -> QuantumState<K> {
        QuantumState::from_amplitudes(n, (0u32..1 << n).map(|mask| (mask, K::draw(rng))))
    }

    /// `C(lambda)` annihilates the all-up vacuum.
    pub fn check_cup0(&self, n: usize, seed: u64) -> PropertyReport {
        let id = "cup0".to_string();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(5));
        let params = self.draw_params(n, &mut rng);
        let lam = self.draw_point(&mut rng, &[]);
        let out = qism::monodromy_apply(
            &self.weights,
            &params,
            &lam,
            MonodromyEntry::C,
            &QuantumState::vacuum(n),
        )
        .expect("site counts match");
        if out.is_effectively_zero() {
            PropertyReport::passed(id, self.weights.name(), n, seed)
        } else {
            let mut w = self.witness_params(&params);
            w["state"] = json!(out.dump_lines());
            PropertyReport::failed(id, self.weights.name(), n, seed, w)
        }
    }

    /// `[B(lambda), B(mu)] = 0` on random states.
    pub fn check_bb(&self, n: usize, seed: u64) -> PropertyReport {
        let id = "bb-commute".to_string();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(6));
        let params = self.draw_params(n, &mut rng);
        let state = self.random_state(n, &mut rng);
        let lam = self.draw_point(&mut rng, &[]);
        let mu = self.draw_point(&mut rng, std::slice::from_ref(&lam.val));
        let apply = |at: &SpecPoint<K>, st: &QuantumState<K>| {
            qism::monodromy_apply(&self.weights, &params, at, MonodromyEntry::B, st)
                .expect("site counts match")
        };
        let lhs = apply(&lam, &apply(&mu, &state));
        let rhs = apply(&mu, &apply(&lam, &state));
        if lhs.coincides_with(&rhs) {
            PropertyReport::passed(id, self.weights.name(), n, seed)
        } else {
            let mut w = self.witness_params(&params);
            w["lambda_mu"] = json!([lam.val.to_json(), mu.val.to_json()]);
            PropertyReport::failed(id, self.weights.name(), n, seed, w)
        }
    }

    /// `A(mu) B(lambda) = f(lambda, mu) B(lambda) A(mu)
    ///  + g(mu, lambda) B(mu) A(lambda)` on random states.
    pub fn check_ab(&self, n: usize, seed: u64) -> PropertyReport {
        let id = "ab-relation".to_string();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(7));
        for _ in 0..MAX_DRAW_ATTEMPTS {
            let params = self.draw_params(n, &mut rng);
            let state = self.random_state(n, &mut rng);
            let lam = self.draw_point(&mut rng, &[]);
            let mu = self.draw_point(&mut rng, std::slice::from_ref(&lam.val));
            let (Ok(f), Ok(g)) = (
                qism::f_ratio(&self.weights, &lam, &mu),
                qism::g_ratio(&self.weights, &mu, &lam),
            ) else {
                continue;
            };
            let apply = |entry, at: &SpecPoint<K>, st: &QuantumState<K>| {
                qism::monodromy_apply(&self.weights, &params, at, entry, st)
                    .expect("site counts match")
            };
            use MonodromyEntry::{A, B};
            let lhs = apply(A, &mu, &apply(B, &lam, &state));
            let rhs = apply(B, &lam, &apply(A, &mu, &state))
                .scaled(&f)
                .add(&apply(B, &mu, &apply(A, &lam, &state)).scaled(&g));
            return if lhs.coincides_with(&rhs) {
                PropertyReport::passed(id, self.weights.name(), n, seed)
            } else {
                let mut w = self.witness_params(&params);
                w["lambda_mu"] = json!([lam.val.to_json(), mu.val.to_json()]);
                PropertyReport::failed(id, self.weights.name(), n, seed, w)
            };
        }
        self.draw_failure(id, n, seed)
    }

    /// Both quantum-determinant orderings act as the scalar
    /// `a(lambda) d(lambda - 1)` and commute with all monodromy entries.
    pub fn check_qdet(&self, n: usize, seed: u64) -> PropertyReport {
        let id = "qdet".to_string();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(8));
        let params = self.draw_params(n, &mut rng);
        let state = self.random_state(n, &mut rng);
        let lam = self.draw_point(&mut rng, &[]);
        let mu = self.draw_point(&mut rng, &[]);
        let expect = state.scaled(&qism::qdet_scalar(&self.weights, &params, &lam));
        for form in [QdetForm::One, QdetForm::Two] {
            let got = qism::qdet_apply(&self.weights, &params, &lam, form, &state)
                .expect("site counts match");
            if !got.coincides_with(&expect) {
                let mut w = self.witness_params(&params);
                w["form"] = json!(match form {
                    QdetForm::One => 1,
                    QdetForm::Two => 2,
                });
                w["lambda"] = lam.val.to_json();
                return PropertyReport::failed(id, self.weights.name(), n, seed, w);
            }
        }
        let qd = |st: &QuantumState<K>| {
            qism::qdet_apply(&self.weights, &params, &lam, QdetForm::One, st)
                .expect("site counts match")
        };
        for entry in [
            MonodromyEntry::A,
            MonodromyEntry::B,
            MonodromyEntry::C,
            MonodromyEntry::D,
        ] {
            let op = |st: &QuantumState<K>| {
                qism::monodromy_apply(&self.weights, &params, &mu, entry, st)
                    .expect("site counts match")
            };
            if !op(&qd(&state)).coincides_with(&qd(&op(&state))) {
                let mut w = self.witness_params(&params);
                w["entry"] = json!(format!("{entry:?}"));
                return PropertyReport::failed(id, self.weights.name(), n, seed, w);
            }
        }
        PropertyReport::passed(id, self.weights.name(), n, seed)
    }

    /// Whether the nu set keeps every Bethe vector in generic position:
    /// `a(nu_j, nu_k)` and `b(nu_j - 1, nu_k)` nonzero for `j != k`, so no
    /// shifted parameter collides with another nu and no vacuum eigenvalue
    /// vanishes where the construction needs it.
    fn bethe_generic(&self, params: &SpectralParams<K>) -> bool {
        let n = params.n();
        (0..n).all(|j| {
            let shifted = self.weights.shift_down(params.nu(j));
            (0..n).all(|k| {
                j == k
                    || (!self.weights.weight_a(params.nu(j), params.nu(k)).is_zero()
                        && !self.weights.weight_b(&shifted, params.nu(k)).is_zero())
            })
        })
    }

    /// Every subset Bethe vector is a nonzero `A(mu)` eigenvector with the
    /// predicted eigenvalue, and all `2^n` eigenvalues are distinct.
    pub fn check_bethe_eigenvectors(&self, n: usize, seed: u64) -> PropertyReport {
        let id = "bethe-eigen".to_string();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(9));
        'attempt: for _ in 0..MAX_DRAW_ATTEMPTS {
            let params = self.draw_params(n, &mut rng);
            if !self.bethe_generic(&params) {
                continue;
            }
            let mu = self.draw_point(&mut rng, &[]);
            if self.weights.vacuum(&mu, params.nus()).0.is_zero() {
                continue;
            }
            let subsets: Vec<Vec<usize>> = (0u32..1 << n)
                .map(|mask| (0..n).filter(|&j| mask >> j & 1 == 1).collect())
                .collect();
            let mut eigs: Vec<K> = Vec::with_capacity(subsets.len());
            for subset in &subsets {
                let v = match qism::bethe_vector(&self.weights, &params, subset) {
                    Ok(v) => v,
                    Err(_) => continue 'attempt,
                };
                if v.is_effectively_zero() {
                    let mut w = self.witness_params(&params);
                    w["subset"] = json!(subset);
                    w["detail"] = json!("Bethe vector vanished");
                    return PropertyReport::failed(id, self.weights.name(), n, seed, w);
                }
                let eig = match qism::a_eigenvalue(&self.weights, &params, &mu, subset) {
                    Ok(e) => e,
                    Err(_) => continue 'attempt,
                };
                let lhs = qism::monodromy_apply(
                    &self.weights,
                    &params,
                    &mu,
                    MonodromyEntry::A,
                    &v,
                )
                .expect("site counts match");
                if !lhs.coincides_with(&v.scaled(&eig)) {
                    let mut w = self.witness_params(&params);
                    w["subset"] = json!(subset);
                    w["eigenvalue"] = eig.to_json();
                    return PropertyReport::failed(id, self.weights.name(), n, seed, w);
                }
                eigs.push(eig);
            }
            // a non-generic mu can collide two eigenvalues; redraw
            let mut coincidence = false;
            'outer: for (i, a) in eigs.iter().enumerate() {
                for b in &eigs[i + 1..] {
                    if self.eq(a, b) {
                        coincidence = true;
                        break 'outer;
                    }
                }
            }
            if coincidence {
                continue;
            }
            return PropertyReport::passed(id, self.weights.name(), n, seed);
        }
        self.draw_failure(id, n, seed)
    }

    /// `B(nu_j) B(nu_j - 1)` annihilates the vacuum for every `j`, while
    /// mismatched pairs at separated parameters do not.
    pub fn check_null_vectors(&self, n: usize, seed: u64) -> PropertyReport {
        let id = "null-vector".to_string();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(10));
        let params = self.draw_params(n, &mut rng);
        for j in 0..n {
            if !qism::check_null_vector(&self.weights, &params, j).expect("valid index") {
                let mut w = self.witness_params(&params);
                w["j"] = json!(j + 1);
                return PropertyReport::failed(id, self.weights.name(), n, seed, w);
            }
        }
        if n >= 2 {
            // a shifted nu colliding with another nu can annihilate the pair
            // through a vanishing vacuum eigenvalue, so keep the negative
            // control in generic position
            let params = loop {
                let candidate = self.draw_params(n, &mut rng);
                if self.bethe_generic(&candidate) {
                    break candidate;
                }
            };
            let state =
                qism::b_pair_state(&self.weights, &params, 0, 1).expect("valid indices");
            if state.is_effectively_zero() {
                let mut w = self.witness_params(&params);
                w["detail"] = json!("mismatched B pair vanished unexpectedly");
                return PropertyReport::failed(id, self.weights.name(), n, seed, w);
            }
        }
        PropertyReport::passed(id, self.weights.name(), n, seed)
    }

    /// The spin-flip action of `B(nu_j)` on staircase states, including the
    /// saturated all-down case.
    pub fn check_spin_flips(&self, n: usize, seed: u64) -> PropertyReport {
        let id = "spin-flip".to_string();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(11));
        let params = self.draw_params(n, &mut rng);
        for j in 0..n {
            if !qism::check_spin_flip(&self.weights, &params, j).expect("valid index") {
                let mut w = self.witness_params(&params);
                w["j"] = json!(j + 1);
                return PropertyReport::failed(id, self.weights.name(), n, seed, w);
            }
        }
        // B(nu_N) ... B(nu_1) |up..up> = prod_k a(nu_k) |down..down>
        let mut state = QuantumState::vacuum(n);
        let mut factor = K::one();
        for k in 0..n {
            state = qism::monodromy_apply(
                &self.weights,
                &params,
                params.nu(k),
                MonodromyEntry::B,
                &state,
            )
            .expect("site counts match");
            factor = factor * self.weights.vacuum(params.nu(k), params.nus()).0;
        }
        let expect = QuantumState::basis(n, (1u32 << n) - 1).scaled(&factor);
        if !state.coincides_with(&expect) {
            let mut w = self.witness_params(&params);
            w["detail"] = json!("saturated B chain mismatch");
            return PropertyReport::failed(id, self.weights.name(), n, seed, w);
        }
        PropertyReport::passed(id, self.weights.name(), n, seed)
    }
}

/// Rebuilds the rational partition function from its defining properties:
/// Lagrange expansion in the first variable over the `nu` nodes, the forced
/// factorization at each node, and recursion on the size; the base case is
/// the constant `Z_1 = 1`.
pub fn reconstruct_rational<K: Scalar>(lambdas: &[K], nus: &[K]) -> Result<K> {
    let n = lambdas.len();
    if n != nus.len() || n == 0 {
        return Err(Error::Invalid("need equally many lambdas and nus".into()));
    }
    if n == 1 {
        return Ok(K::one());
    }
    let mut total = K::zero();
    for i in 0..n {
        let mut lagrange = K::one();
        for (j, nu) in nus.iter().enumerate() {
            if j == i {
                continue;
            }
            let den = nus[i].clone() - nu.clone();
            if den.is_zero() {
                return Err(Error::Singular("coinciding nu parameters".into()));
            }
            lagrange = lagrange * ((lambdas[0].clone() - nu.clone()) / den);
        }
        let mut factor = K::one();
        for l in &lambdas[1..] {
            factor = factor * (l.clone() - nus[i].clone() + K::one());
        }
        for nu in nus {
            factor = factor * (nus[i].clone() - nu.clone() + K::one());
        }
        let mut rest_nus = nus.to_vec();
        rest_nus.remove(i);
        let rest = reconstruct_rational(&lambdas[1..], &rest_nus)?;
        total = total + lagrange * factor * rest;
    }
    Ok(total)
}

/// Trigonometric counterpart of [`reconstruct_rational`] in the
/// multiplicative variables; the base case is the constant `q - q^(-1)`.
pub fn reconstruct_trig<K: Scalar>(q: &K, xs: &[K], ys: &[K]) -> Result<K> {
    let n = xs.len();
    if n != ys.len() || n == 0 {
        return Err(Error::Invalid("need equally many xs and ys".into()));
    }
    let q_inv = q
        .inverse()
        .ok_or_else(|| Error::Invalid("q must be nonzero".into()))?;
    let c_unit = q.clone() - q_inv.clone();
    if n == 1 {
        return Ok(c_unit);
    }
    let mut total = K::zero();
    for i in 0..n {
        let mut lagrange = K::one();
        for (j, y) in ys.iter().enumerate() {
            if j == i {
                continue;
            }
            let den = ys[i].clone() - y.clone();
            if den.is_zero() {
                return Err(Error::Singular("coinciding y parameters".into()));
            }
            lagrange = lagrange * ((xs[0].clone() - y.clone()) / den);
        }
        let mut factor = c_unit.clone();
        for x in &xs[1..] {
            factor = factor * (q.clone() * x.clone() - q_inv.clone() * ys[i].clone());
        }
        for (j, y) in ys.iter().enumerate() {
            if j != i {
                factor = factor * (q.clone() * ys[i].clone() - q_inv.clone() * y.clone());
            }
        }
        let mut rest_ys = ys.to_vec();
        rest_ys.remove(i);
        let rest = reconstruct_trig(q, &xs[1..], &rest_ys)?;
        total = total + lagrange * factor * rest;
    }
    Ok(total)
}

impl Checker<Rat, RationalWeights> {
    /// Reconstruction from properties alone matches the oracle at random
    /// points.
    pub fn check_uniqueness(&self, oracle: &ZImpl<Rat>, n: usize, seed: u64) -> PropertyReport {
        let id = format!("uniqueness:{}", oracle.name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(12));
        for _ in 0..5 {
            let params = self.draw_params(n, &mut rng);
            let rec = match reconstruct_rational(&params.lambda_vals(), &params.nu_vals()) {
                Ok(v) => v,
                Err(e) => return self.error_report(id, n, seed, &params, e),
            };
            let want = match oracle.eval(&params) {
                Ok(v) => v,
                Err(e) => return self.error_report(id, n, seed, &params, e),
            };
            if rec != want {
                let mut w = self.witness_params(&params);
                w["lhs"] = rec.to_json();
                w["rhs"] = want.to_json();
                return PropertyReport::failed(id, self.model_name(), n, seed, w);
            }
        }
        PropertyReport::passed(id, self.model_name(), n, seed)
    }
}

impl Checker<Rat, TrigWeights<Rat>> {
    pub fn check_uniqueness(&self, oracle: &ZImpl<Rat>, n: usize, seed: u64) -> PropertyReport {
        let id = format!("uniqueness:{}", oracle.name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37).wrapping_add(12));
        for _ in 0..5 {
            let params = self.draw_params(n, &mut rng);
            let rec = match reconstruct_trig(
                self.weights().q(),
                &params.lambda_vals(),
                &params.nu_vals(),
            ) {
                Ok(v) => v,
                Err(e) => return self.error_report(id, n, seed, &params, e),
            };
            let want = match oracle.eval(&params) {
                Ok(v) => v,
                Err(e) => return self.error_report(id, n, seed, &params, e),
            };
            if rec != want {
                let mut w = self.witness_params(&params);
                w["lhs"] = rec.to_json();
                w["rhs"] = want.to_json();
                return PropertyReport::failed(id, self.model_name(), n, seed, w);
            }
        }
        PropertyReport::passed(id, self.model_name(), n, seed)
    }
}

/// Newton divided differences `f[x_0..x_k]` for `k = 0..n-1`.
pub fn divided_differences<K: Scalar>(xs: &[K], values: &[K]) -> Vec<K> {
    assert_eq!(xs.len(), values.len());
    let n = xs.len();
    let mut a = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            a[i] = (a[i].clone() - a[i - 1].clone()) / (xs[i].clone() - xs[i - level].clone());
        }
    }
    a
}

/// Evaluates the Newton-form interpolant with the given nodes and divided
/// differences.
pub fn newton_eval<K: Scalar>(xs: &[K], coeffs: &[K], z: &K) -> K {
    let mut acc = coeffs[coeffs.len() - 1].clone();
    for i in (0..coeffs.len() - 1).rev() {
        acc = acc * (z.clone() - xs[i].clone()) + coeffs[i].clone();
    }
    acc
}

// ---------------------------------------------------------------------------
// Implementations under test, and the standard check matrix.
// ---------------------------------------------------------------------------

/// The rational-mode implementations, each flagged with the substitutions it
/// is defined at. The Izergin-Korepin form is excluded from both since its
/// kernel is singular there; Kostov's form divides by `a(nu_j - 1, nu_j) = 0`
/// at the vanishing substitution and is excluded from that one.
pub fn rational_zimpls(weights: RationalWeights) -> Vec<ZImpl<Rat>> {
    let w_enum = weights;
    let w_qism = weights;
    vec![
        ZImpl {
            name: "enum".into(),
            f: Box::new(move |p| enumerate::z_enum(&w_enum, p)),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "qism".into(),
            f: Box::new(move |p| qism::z_qism(&w_qism, p)),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "ik".into(),
            f: Box::new(move |p| detrep::z_ik(&weights, p)),
            at_vanishing: false,
            at_coinciding: false,
        },
        ZImpl {
            name: "kostov".into(),
            f: Box::new(|p| detrep::z_kostov(&p.lambda_vals(), &p.nu_vals())),
            at_vanishing: false,
            at_coinciding: true,
        },
        ZImpl {
            name: "basis-rat:monomial".into(),
            f: Box::new(|p| {
                detrep::z_basis_rat(&p.lambda_vals(), &p.nu_vals(), &PolyBasis::monomial(p.n()))
            }),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "basis-rat:lagrange".into(),
            f: Box::new(|p| {
                let basis = PolyBasis::lagrange(&p.nu_vals())?;
                detrep::z_basis_rat(&p.lambda_vals(), &p.nu_vals(), &basis)
            }),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "basis-rat:random".into(),
            f: Box::new(|p| {
                let basis = PolyBasis::random(p.n(), 0xbead)?;
                detrep::z_basis_rat(&p.lambda_vals(), &p.nu_vals(), &basis)
            }),
            at_vanishing: true,
            at_coinciding: true,
        },
    ]
}

/// The algebraic-trigonometric implementations over exact rationals.
pub fn trig_zimpls(weights: TrigWeights<Rat>) -> Vec<ZImpl<Rat>> {
    let w_enum = weights.clone();
    let w_qism = weights.clone();
    let w_ik = weights.clone();
    let q1 = weights.q().clone();
    let q2 = q1.clone();
    let q3 = q1.clone();
    vec![
        ZImpl {
            name: "enum".into(),
            f: Box::new(move |p| enumerate::z_enum(&w_enum, p)),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "qism".into(),
            f: Box::new(move |p| qism::z_qism(&w_qism, p)),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "ik".into(),
            f: Box::new(move |p| detrep::z_ik(&w_ik, p)),
            at_vanishing: false,
            at_coinciding: false,
        },
        ZImpl {
            name: "basis-trig1:monomial".into(),
            f: Box::new(move |p| {
                detrep::z_basis_trig(
                    Variant::One,
                    &q1,
                    &p.lambda_vals(),
                    &p.nu_vals(),
                    &PolyBasis::monomial(p.n()),
                )
            }),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "basis-trig2:monomial".into(),
            f: Box::new(move |p| {
                detrep::z_basis_trig(
                    Variant::Two,
                    &q2,
                    &p.lambda_vals(),
                    &p.nu_vals(),
                    &PolyBasis::monomial(p.n()),
                )
            }),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "basis-trig1:lagrange".into(),
            f: Box::new(move |p| {
                let basis = PolyBasis::lagrange(&p.nu_vals())?;
                detrep::z_basis_trig(Variant::One, &q3, &p.lambda_vals(), &p.nu_vals(), &basis)
            }),
            at_vanishing: true,
            at_coinciding: true,
        },
    ]
}

/// The analytic trigonometric implementations over complex doubles. The
/// Foda-Wheeler forms divide by an `a`-weight that vanishes at the vanishing
/// substitution, so only the oracles remain there.
pub fn complex_zimpls(weights: SinWeights) -> Vec<ZImpl<Cpx>> {
    let w_enum = weights;
    let w_qism = weights;
    let w_ik = weights;
    let gamma = weights.gamma();
    let real_parts = |p: &SpectralParams<Cpx>| -> (Vec<f64>, Vec<f64>) {
        (
            p.lambdas().iter().map(|z| z.val.re).collect(),
            p.nus().iter().map(|z| z.val.re).collect(),
        )
    };
    vec![
        ZImpl {
            name: "enum".into(),
            f: Box::new(move |p| enumerate::z_enum(&w_enum, p)),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "qism".into(),
            f: Box::new(move |p| qism::z_qism(&w_qism, p)),
            at_vanishing: true,
            at_coinciding: true,
        },
        ZImpl {
            name: "ik".into(),
            f: Box::new(move |p| detrep::z_ik(&w_ik, p)),
            at_vanishing: false,
            at_coinciding: false,
        },
        ZImpl {
            name: "fw1".into(),
            f: Box::new(move |p| {
                let (lams, nus) = real_parts(p);
                detrep::z_fw(Variant::One, gamma, &lams, &nus)
            }),
            at_vanishing: false,
            at_coinciding: true,
        },
        ZImpl {
            name: "fw2".into(),
            f: Box::new(move |p| {
                let (lams, nus) = real_parts(p);
                detrep::z_fw(Variant::Two, gamma, &lams, &nus)
            }),
            at_vanishing: false,
            at_coinciding: true,
        },
    ]
}

/// Configuration for the standard check matrix.
#[derive(Clone, Debug)]
pub struct MatrixConfig {
    pub n_max: usize,
    pub seeds: u64,
    pub base_seed: u64,
    /// Check-id prefixes to run; `None` runs everything.
    pub checks: Option<Vec<String>>,
    /// Model names to run; `None` runs all.
    pub models: Option<Vec<String>>,
    /// Swap the enumeration oracle for a sign-broken one; the matrix must
    /// then fail, demonstrating the harness catches violations.
    pub inject_fault: bool,
}

impl Default for MatrixConfig {
    fn default() -> Self {
        Self {
            n_max: 4,
            seeds: 20,
            base_seed: 0,
            checks: None,
            models: None,
            inject_fault: false,
        }
    }
}

fn check_enabled(cfg: &MatrixConfig, id: &str) -> bool {
    match &cfg.checks {
        None => true,
        Some(list) => list.iter().any(|c| id.starts_with(c.as_str())),
    }
}

fn model_enabled(cfg: &MatrixConfig, name: &str) -> bool {
    match &cfg.models {
        None => true,
        Some(list) => list.iter().any(|m| m == name),
    }
}

/// Runs the full property matrix over the requested models, sizes and
/// seeds, returning one report per (check, implementation, size, seed).
pub fn run_matrix(cfg: &MatrixConfig) -> Vec<PropertyReport> {
    let mut reports = Vec::new();
    if model_enabled(cfg, "rational") {
        let checker = Checker::new(RationalWeights);
        let mut impls = rational_zimpls(RationalWeights);
        if cfg.inject_fault {
            impls.push(ZImpl {
                name: "enum:faulty".into(),
                f: Box::new(|p| enumerate::z_enum_c6_flipped(&RationalWeights, p)),
                at_vanishing: true,
                at_coinciding: true,
            });
        }
        run_exact_checks(cfg, &checker, &impls, &mut reports);
        for n in 1..=cfg.n_max.min(4) {
            for seed in 0..cfg.seeds {
                let seed = cfg.base_seed ^ (seed << 8) ^ n as u64;
                if check_enabled(cfg, "uniqueness") {
                    reports.push(checker.check_uniqueness(&impls[0], n, seed));
                }
            }
        }
        run_lemma_checks(cfg, &checker, &mut reports);
    }
    if model_enabled(cfg, "trig-algebraic") {
        for seed in 0..cfg.seeds {
            let seed = cfg.base_seed ^ (seed << 8);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x7a19));
            let q = loop {
                let q = crate::scalar::rat(rng.gen_range(2..=9), rng.gen_range(1..=3));
                if TrigWeights::new(q.clone()).is_ok() {
                    break q;
                }
            };
            let weights = TrigWeights::new(q).expect("validated");
            let checker = Checker::new(weights.clone());
            let mut impls = trig_zimpls(weights.clone());
            if cfg.inject_fault {
                let wf = weights.clone();
                impls.push(ZImpl {
                    name: "enum:faulty".into(),
                    f: Box::new(move |p| enumerate::z_enum_c6_flipped(&wf, p)),
                    at_vanishing: true,
                    at_coinciding: true,
                });
            }
            let one_seed = MatrixConfig {
                seeds: 1,
                base_seed: seed,
                ..cfg.clone()
            };
            run_exact_checks(&one_seed, &checker, &impls, &mut reports);
            for n in 1..=cfg.n_max.min(4) {
                if check_enabled(cfg, "uniqueness") {
                    reports.push(checker.check_uniqueness(&impls[0], n, seed));
                }
            }
            run_lemma_checks(&one_seed, &checker, &mut reports);
        }
    }
    if model_enabled(cfg, "trig-complex") {
        for seed in 0..cfg.seeds {
            let seed = cfg.base_seed ^ (seed << 8);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x51c0));
            let weights = SinWeights::new(rng.gen_range(0.1..1.4)).expect("valid gamma");
            let checker = Checker::new(weights);
            let impls = complex_zimpls(weights);
            let one_seed = MatrixConfig {
                seeds: 1,
                base_seed: seed,
                ..cfg.clone()
            };
            for n in 1..=cfg.n_max {
                for zfn in &impls {
                    if check_enabled(&one_seed, &format!("symmetry:{}", zfn.name)) {
                        reports.push(checker.check_symmetry(zfn, n, seed));
                    }
                    if zfn.at_vanishing && check_enabled(&one_seed, &format!("vanishing:{}", zfn.name))
                    {
                        reports.push(checker.check_vanishing(zfn, n, seed));
                    }
                    if zfn.at_coinciding
                        && check_enabled(&one_seed, &format!("specialization:{}", zfn.name))
                    {
                        reports.push(checker.check_specialization(zfn, n, seed));
                    }
                }
            }
            run_lemma_checks(&one_seed, &checker, &mut reports);
        }
    }
    reports
}

fn run_exact_checks<K: DrawScalar, W: WeightSystem<K>>(
    cfg: &MatrixConfig,
    checker: &Checker<K, W>,
    impls: &[ZImpl<K>],
    reports: &mut Vec<PropertyReport>,
) {
    for n in 1..=cfg.n_max {
        for seed in 0..cfg.seeds {
            let seed = cfg.base_seed ^ (seed << 8) ^ n as u64;
            for zfn in impls {
                if check_enabled(cfg, &format!("symmetry:{}", zfn.name)) {
                    reports.push(checker.check_symmetry(zfn, n, seed));
                }
                if check_enabled(cfg, &format!("degree:{}", zfn.name)) {
                    reports.push(checker.check_degree(zfn, n, seed));
                }
                if zfn.at_vanishing && check_enabled(cfg, &format!("vanishing:{}", zfn.name)) {
                    reports.push(checker.check_vanishing(zfn, n, seed));
                }
                if zfn.at_coinciding
                    && check_enabled(cfg, &format!("specialization:{}", zfn.name))
                {
                    reports.push(checker.check_specialization(zfn, n, seed));
                }
            }
        }
    }
}

fn run_lemma_checks<K: DrawScalar, W: WeightSystem<K>>(
    cfg: &MatrixConfig,
    checker: &Checker<K, W>,
    reports: &mut Vec<PropertyReport>,
) {
    for n in 1..=cfg.n_max.min(4) {
        for seed in 0..cfg.seeds {
            let seed = cfg.base_seed ^ (seed << 8) ^ (n as u64) << 4;
            if check_enabled(cfg, "cup0") {
                reports.push(checker.check_cup0(n, seed));
            }
            if check_enabled(cfg, "bb-commute") {
                reports.push(checker.check_bb(n, seed));
            }
            if check_enabled(cfg, "ab-relation") {
                reports.push(checker.check_ab(n, seed));
            }
            if check_enabled(cfg, "qdet") {
                reports.push(checker.check_qdet(n, seed));
            }
            if check_enabled(cfg, "bethe-eigen") {
                reports.push(checker.check_bethe_eigenvectors(n, seed));
            }
            if check_enabled(cfg, "null-vector") {
                reports.push(checker.check_null_vectors(n, seed));
            }
            if check_enabled(cfg, "spin-flip") {
                reports.push(checker.check_spin_flips(n, seed));
            }
        }
    }
}
