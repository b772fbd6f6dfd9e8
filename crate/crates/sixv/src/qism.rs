//! The quantum inverse scattering picture: sparse states over the `2^N`
//! quantum space, the monodromy-matrix entries `A`, `B`, `C`, `D`, the
//! quantum determinant, Bethe vectors, and the operator-identity checkers.
//!
//! The monodromy matrix along a vertical line is the ordered product of
//! L-operators over the horizontal lines, bottom factor first. Applying one
//! of its entries sweeps the sites once while carrying the two
//! auxiliary-space components; the 2x2 matrix of operators is never
//! materialized. `B` lowers one spin per application, so states reached from
//! the all-up vacuum live in binomially-sized magnetization sectors, which
//! is why amplitudes are kept in a sparse map.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{SpecPoint, SpectralParams, WeightSystem};
use crate::scalar::Scalar;

/// `2^N` amplitudes at N = 14 keep the oracle comfortably under a minute.
pub const QISM_SITE_CAP: usize = 14;

/// Relative threshold below which a floating state counts as zero.
const ZERO_REL_TOL: f64 = 1e-10;

/// Relative threshold below which floating amplitudes are pruned.
const PRUNE_REL_TOL: f64 = 1e-14;

/// Spin configurations are bitmasks: bit `k` set means spin down at site
/// `k + 1`; mask 0 is the all-up vacuum.
pub type SpinConfig = u32;

/// Sparse vector over the quantum space; absent amplitudes are zero.
#[derive(Clone, Debug)]
pub struct QuantumState<K> {
    n: usize,
    amps: BTreeMap<SpinConfig, K>,
    /// Largest amplitude magnitude encountered while building this state;
    /// floating-point zero tests are relative to it.
    scale: f64,
}

impl<K: Scalar> QuantumState<K> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            amps: BTreeMap::new(),
            scale: 0.0,
        }
    }

    /// The all-spins-up vacuum.
    pub fn vacuum(n: usize) -> Self {
        Self::basis(n, 0)
    }

    /// Basis state with unit amplitude on `mask`.
    pub fn basis(n: usize, mask: SpinConfig) -> Self {
        debug_assert!(n == 32 || mask < 1 << n);
        let mut amps = BTreeMap::new();
        amps.insert(mask, K::one());
        Self {
            n,
            amps,
            scale: 1.0,
        }
    }

    pub fn from_amplitudes(n: usize, entries: impl IntoIterator<Item = (SpinConfig, K)>) -> Self {
        let mut state = Self::zero(n);
        for (mask, amp) in entries {
            state.add_amp(mask, amp);
        }
        state.prune();
        state
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn amp(&self, mask: SpinConfig) -> K {
        self.amps.get(&mask).cloned().unwrap_or_else(K::zero)
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&SpinConfig, &K)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    fn add_amp(&mut self, mask: SpinConfig, amp: K) {
        if !K::EXACT {
            self.scale = self.scale.max(amp.abs_f64());
        }
        let entry = self.amps.entry(mask).or_insert_with(K::zero);
        *entry = entry.clone() + amp;
    }

    fn prune(&mut self) {
        if K::EXACT {
            self.amps.retain(|_, a| !a.is_zero());
        } else {
            let floor = self.scale * PRUNE_REL_TOL;
            self.amps.retain(|_, a| a.abs_f64() > floor);
        }
    }

    /// Exact-zero check in exact fields; in floating fields, all amplitudes
    /// at most `1e-10` of the largest magnitude encountered.
    pub fn is_effectively_zero(&self) -> bool {
        if K::EXACT {
            self.amps.is_empty()
        } else {
            let floor = self.scale * ZERO_REL_TOL;
            self.amps.values().all(|a| a.abs_f64() <= floor)
        }
    }

    pub fn scaled(&self, factor: &K) -> Self {
        let mut out = Self::zero(self.n);
        out.scale = self.scale;
        for (&mask, amp) in &self.amps {
            out.add_amp(mask, amp.clone() * factor.clone());
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "site-count mismatch");
        let mut out = Self::zero(self.n);
        out.scale = self.scale.max(other.scale);
        for (&mask, amp) in &self.amps {
            out.add_amp(mask, amp.clone());
        }
        for (&mask, amp) in &other.amps {
            out.add_amp(mask, -amp.clone());
        }
        out.prune();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "site-count mismatch");
        let mut out = Self::zero(self.n);
        out.scale = self.scale.max(other.scale);
        for (&mask, amp) in &self.amps {
            out.add_amp(mask, amp.clone());
        }
        for (&mask, amp) in &other.amps {
            out.add_amp(mask, amp.clone());
        }
        out.prune();
        out
    }

    /// Exact equality in exact fields, tolerance-based otherwise.
    pub fn coincides_with(&self, other: &Self) -> bool {
        self.sub(other).is_effectively_zero()
    }

    /// `Some(m)` if every stored configuration has exactly `m` down spins.
    pub fn uniform_sector(&self) -> Option<u32> {
        let mut sector = None;
        for mask in self.amps.keys() {
            let m = mask.count_ones();
            match sector {
                None => sector = Some(m),
                Some(s) if s != m => return None,
                _ => {}
            }
        }
        sector
    }

    /// Debug dump: one line per amplitude, bitmask in binary with site 1
    /// rightmost.
    pub fn dump_lines(&self) -> Vec<String> {
        self.amps
            .iter()
            .map(|(mask, amp)| format!("{mask:0width$b} {amp}", width = self.n))
            .collect()
    }
}

/// Entry of the monodromy matrix in the auxiliary space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonodromyEntry {
    A,
    B,
    C,
    D,
}

/// Which of the two equivalent quantum-determinant orderings to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdetForm {
    /// `D(lambda) A(lambda - 1) - C(lambda) B(lambda - 1)`
    One,
    /// `A(lambda) D(lambda - 1) - B(lambda) C(lambda - 1)`
    Two,
}

/// Applies one monodromy-matrix entry at spectral parameter `lam` to a
/// state, sweeping sites `1..N` and carrying the auxiliary pair.
pub fn monodromy_apply<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    lam: &SpecPoint<K>,
    entry: MonodromyEntry,
    state: &QuantumState<K>,
) -> Result<QuantumState<K>> {
    let n = params.n();
    if state.sites() != n {
        return Err(Error::Invalid(format!(
            "state over {} sites, parameters over {n}",
            state.sites()
        )));
    }
    // Auxiliary components: index 1 (up) and index 2 (down). The incoming
    // auxiliary index is the second of the entry pair, the outgoing the
    // first (A = (1,1), B = (1,2), C = (2,1), D = (2,2)).
    let mut up: BTreeMap<SpinConfig, K>;
    let mut dn: BTreeMap<SpinConfig, K>;
    match entry {
        MonodromyEntry::A | MonodromyEntry::C => {
            up = state.amps.clone();
            dn = BTreeMap::new();
        }
        MonodromyEntry::B | MonodromyEntry::D => {
            up = BTreeMap::new();
            dn = state.amps.clone();
        }
    }
    let mut scale = state.scale;
    for k in 0..n {
        let (a, b, c) = weights.abc(lam, params.nu(k));
        let bit = 1u32 << k;
        let mut new_up: BTreeMap<SpinConfig, K> = BTreeMap::new();
        let mut new_dn: BTreeMap<SpinConfig, K> = BTreeMap::new();
        let mut add = |map: &mut BTreeMap<SpinConfig, K>, mask: SpinConfig, amp: K| {
            if !K::EXACT {
                scale = scale.max(amp.abs_f64());
            }
            let e = map.entry(mask).or_insert_with(K::zero);
            *e = e.clone() + amp;
        };
        for (&mask, amp) in &up {
            // a pi+ + b pi- on the up component
            let diag = if mask & bit == 0 { &a } else { &b };
            add(&mut new_up, mask, amp.clone() * diag.clone());
            // c sigma+ feeds the down component (site k down -> up)
            if mask & bit != 0 {
                add(&mut new_dn, mask & !bit, amp.clone() * c.clone());
            }
        }
        for (&mask, amp) in &dn {
            // c sigma- feeds the up component (site k up -> down)
            if mask & bit == 0 {
                add(&mut new_up, mask | bit, amp.clone() * c.clone());
            }
            // b pi+ + a pi- on the down component
            let diag = if mask & bit == 0 { &b } else { &a };
            add(&mut new_dn, mask, amp.clone() * diag.clone());
        }
        up = new_up;
        dn = new_dn;
    }
    let amps = match entry {
        MonodromyEntry::A | MonodromyEntry::B => up,
        MonodromyEntry::C | MonodromyEntry::D => dn,
    };
    let mut out = QuantumState {
        n,
        amps,
        scale,
    };
    out.prune();
    Ok(out)
}

/// The partition function as the matrix element
/// `<all-down| B(lambda_N) ... B(lambda_1) |all-up>`, divided by the gauge
/// normalization in root-gauged parametrizations. Valid at arbitrary,
/// including coinciding, parameters.
pub fn z_qism<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
) -> Result<K> {
    z_qism_capped(weights, params, QISM_SITE_CAP)
}

pub fn z_qism_capped<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    cap: usize,
) -> Result<K> {
    let n = params.n();
    if n > cap.min(31) {
        return Err(Error::ResourceCap(format!(
            "quantum space of 2^{n} sites exceeds cap {cap}"
        )));
    }
    let mut state = QuantumState::vacuum(n);
    for j in 0..n {
        state = monodromy_apply(weights, params, params.lambda(j), MonodromyEntry::B, &state)?;
        // B lowers the magnetization by exactly one.
        debug_assert!(
            state.is_empty() || state.uniform_sector() == Some(j as u32 + 1),
            "B application left the expected magnetization sector"
        );
    }
    let full = (1u32 << n) - 1;
    Ok(state.amp(full) / params.gauge_norm())
}

/// Applies the quantum determinant at `lam` to a state.
pub fn qdet_apply<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    lam: &SpecPoint<K>,
    form: QdetForm,
    state: &QuantumState<K>,
) -> Result<QuantumState<K>> {
    use MonodromyEntry::{A, B, C, D};
    let shifted = weights.shift_down(lam);
    let apply = |entry, at: &SpecPoint<K>, st: &QuantumState<K>| {
        monodromy_apply(weights, params, at, entry, st)
    };
    let (first, second) = match form {
        QdetForm::One => (
            apply(D, lam, &apply(A, &shifted, state)?)?,
            apply(C, lam, &apply(B, &shifted, state)?)?,
        ),
        QdetForm::Two => (
            apply(A, lam, &apply(D, &shifted, state)?)?,
            apply(B, lam, &apply(C, &shifted, state)?)?,
        ),
    };
    Ok(first.sub(&second))
}

/// The expected scalar action of the quantum determinant:
/// `a(lambda) d(lambda - 1)`.
pub fn qdet_scalar<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    lam: &SpecPoint<K>,
) -> K {
    let (a, _) = weights.vacuum(lam, params.nus());
    let (_, d) = weights.vacuum(&weights.shift_down(lam), params.nus());
    a * d
}

/// Off-shell Bethe vector `B(nu_{j_1} - 1) ... B(nu_{j_m} - 1) |all-up>`
/// over a subset of zero-based indices into the `nu` set.
pub fn bethe_vector<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    subset: &[usize],
) -> Result<QuantumState<K>> {
    for (i, j) in subset.iter().enumerate() {
        if *j >= params.n() {
            return Err(Error::Invalid(format!("index {j} out of range")));
        }
        if subset[i + 1..].contains(j) {
            return Err(Error::Invalid("repeated Bethe-vector index".into()));
        }
    }
    let mut state = QuantumState::vacuum(params.n());
    for &j in subset.iter().rev() {
        let at = weights.shift_down(params.nu(j));
        state = monodromy_apply(weights, params, &at, MonodromyEntry::B, &state)?;
    }
    Ok(state)
}

/// `f(lambda, mu) = a(lambda, mu) / b(lambda, mu)`.
pub fn f_ratio<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    lam: &SpecPoint<K>,
    mu: &SpecPoint<K>,
) -> Result<K> {
    let b = weights.weight_b(lam, mu);
    if b.is_zero() {
        return Err(Error::Singular("f ratio at coinciding arguments".into()));
    }
    Ok(weights.weight_a(lam, mu) / b)
}

/// `g(lambda, mu) = c(lambda, mu) / b(lambda, mu)`.
pub fn g_ratio<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    lam: &SpecPoint<K>,
    mu: &SpecPoint<K>,
) -> Result<K> {
    let b = weights.weight_b(lam, mu);
    if b.is_zero() {
        return Err(Error::Singular("g ratio at coinciding arguments".into()));
    }
    Ok(weights.weight_c(lam, mu) / b)
}

/// Eigenvalue of `A(mu)` on the Bethe vector over `subset`:
/// `a(mu) prod_l f(nu_{j_l} - 1, mu)`.
pub fn a_eigenvalue<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    mu: &SpecPoint<K>,
    subset: &[usize],
) -> Result<K> {
    let (mut acc, _) = weights.vacuum(mu, params.nus());
    for &j in subset {
        acc = acc * f_ratio(weights, &weights.shift_down(params.nu(j)), mu)?;
    }
    Ok(acc)
}

/// The pair state `B(nu_j) B(nu_k - 1) |all-up>`; with `k = j` this is the
/// null Bethe vector.
pub fn b_pair_state<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    j: usize,
    k: usize,
) -> Result<QuantumState<K>> {
    let inner = monodromy_apply(
        weights,
        params,
        &weights.shift_down(params.nu(k)),
        MonodromyEntry::B,
        &QuantumState::vacuum(params.n()),
    )?;
    monodromy_apply(weights, params, params.nu(j), MonodromyEntry::B, &inner)
}

/// Whether `B(nu_j) B(nu_j - 1) |all-up>` is the zero state.
pub fn check_null_vector<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    j: usize,
) -> Result<bool> {
    Ok(b_pair_state(weights, params, j, j)?.is_effectively_zero())
}

/// Whether `B(nu_j)` flips the `j`th spin of the staircase state
/// `|up ... up, down ... down>` with `j` up spins remaining, with factor
/// `a(nu_j)`.
pub fn check_spin_flip<K: Scalar, W: WeightSystem<K>>(
    weights: &W,
    params: &SpectralParams<K>,
    j: usize,
) -> Result<bool> {
    let n = params.n();
    if j >= n {
        return Err(Error::Invalid(format!("index {j} out of range")));
    }
    let staircase = QuantumState::basis(n, (1u32 << j) - 1);
    let lhs = monodromy_apply(weights, params, params.nu(j), MonodromyEntry::B, &staircase)?;
    let (a, _) = weights.vacuum(params.nu(j), params.nus());
    let rhs = QuantumState::basis(n, (1u32 << (j + 1)) - 1).scaled(&a);
    Ok(lhs.coincides_with(&rhs))
}
