//! Dense square matrices over a [`Scalar`] field and their determinants.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major square matrix. Index pair `(j, k)` is zero-based row then
/// column, matching the `[.]_{j,k=1..N}` convention shifted by one.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<K> {
    n: usize,
    data: Vec<K>,
}

/// Diagnostics from a determinant evaluation.
#[derive(Clone, Copy, Debug, Default)]
pub struct DetReport {
    /// A pivot magnitude fell below 1e-300 without being exactly zero;
    /// the floating result is likely meaningless.
    pub pivot_underflow: bool,
}

impl<K: Scalar> SquareMatrix<K> {
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> K) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                data.push(entry(j, k));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix rows must form a square".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |j, k| if j == k { K::one() } else { K::zero() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn at(&self, j: usize, k: usize) -> &K {
        &self.data[j * self.n + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: K) {
        self.data[j * self.n + k] = v;
    }

    pub fn row(&self, j: usize) -> &[K] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "order mismatch");
        Self::from_fn(self.n, |j, k| {
            let mut acc = K::zero();
            for l in 0..self.n {
                acc = acc + self.at(j, l).clone() * rhs.at(l, k).clone();
            }
            acc
        })
    }

    /// Determinant by in-place Gaussian elimination over the field.
    ///
    /// Pivots are chosen by largest magnitude among nonzero candidates; in
    /// the exact field any nonzero pivot is equally valid, in the complex
    /// field this is partial pivoting.
    pub fn det(&self) -> K {
        self.det_with_report().0
    }

    pub fn det_with_report(&self) -> (K, DetReport) {
        let n = self.n;
        let mut m = self.data.clone();
        let mut report = DetReport::default();
        let mut det = K::one();
        let mut negate = false;
        for col in 0..n {
            let candidate = (col..n)
                .filter(|&r| !m[r * n + col].is_zero())
                .max_by(|&r, &s| {
                    m[r * n + col]
                        .abs_f64()
                        .total_cmp(&m[s * n + col].abs_f64())
                });
            let Some(pivot_row) = candidate else {
                return (K::zero(), report);
            };
            if pivot_row != col {
                for k in col..n {
                    m.swap(pivot_row * n + k, col * n + k);
                }
                negate = !negate;
            }
            let pivot = m[col * n + col].clone();
            if !K::EXACT && pivot.abs_f64() < 1e-300 {
                report.pivot_underflow = true;
            }
            for r in col + 1..n {
                if m[r * n + col].is_zero() {
                    continue;
                }
                let factor = m[r * n + col].clone() / pivot.clone();
                for k in col + 1..n {
                    let delta = factor.clone() * m[col * n + k].clone();
                    m[r * n + k] = m[r * n + k].clone() - delta;
                }
                m[r * n + col] = K::zero();
            }
            det = det * pivot;
        }
        if negate {
            det = -det;
        }
        (det, report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Cpx, Rat};
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int_matrix(rows: &[&[i64]]) -> SquareMatrix<Rat> {
        SquareMatrix::from_fn(rows.len(), |j, k| rat(rows[j][k], 1))
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(int_matrix(&[&[1, 2], &[3, 4]]).det(), rat(-2, 1));
        assert_eq!(SquareMatrix::<Rat>::identity(5).det(), Rat::one());
        assert_eq!(int_matrix(&[&[7]]).det(), rat(7, 1));
        // Vandermonde on (0, 1, 2): rows [z^0, z^1, z^2].
        let vander = int_matrix(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4]]);
        assert_eq!(vander.det(), rat(2, 1));
    }

    #[test]
    fn det_zero_is_a_result_not_an_error() {
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).det(), Rat::zero());
    }

    #[test]
    fn complex_pivot_underflow_is_reported() {
        let tiny = Cpx::new(1e-310, 0.0);
        let m = SquareMatrix::from_fn(2, |j, k| if j == k { tiny } else { Cpx::zero() });
        let (_, report) = m.det_with_report();
        assert!(report.pivot_underflow);
        let healthy = SquareMatrix::from_fn(2, |j, k| Cpx::new((j * 2 + k + 1) as f64, 0.0));
        assert!(!healthy.det_with_report().1.pivot_underflow);
    }

    fn random_rat_matrix(n: usize, rng: &mut ChaCha8Rng) -> SquareMatrix<Rat> {
        SquareMatrix::from_fn(n, |_, _| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
    }

    #[test]
    fn det_is_multilinear_in_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_rat_matrix(4, &mut rng);
            let row = rng.gen_range(0..4);
            let s = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let mut scaled = m.clone();
            for k in 0..4 {
                scaled.set(row, k, s.clone() * m.at(row, k).clone());
            }
            assert_eq!(scaled.det(), s * m.det());
        }
    }

    #[test]
    fn row_swap_negates_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let m = random_rat_matrix(4, &mut rng);
            let mut swapped = m.clone();
            for k in 0..4 {
                let a = m.at(0, k).clone();
                let b = m.at(2, k).clone();
                swapped.set(0, k, b);
                swapped.set(2, k, a);
            }
            assert_eq!(swapped.det(), -m.det());
        }
    }

    #[test]
    fn complex_det_tracks_exact_det() {
        use num_traits::ToPrimitive;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let exact = SquareMatrix::from_fn(4, |_, _| {
                rat(rng.gen_range(-10..=10), rng.gen_range(1..=3))
            });
            let image =
                SquareMatrix::from_fn(4, |j, k| Cpx::new(exact.at(j, k).to_f64().unwrap(), 0.0));
            let want = exact.det().to_f64().unwrap();
            let got = image.det();
            assert!(got.im.abs() <= 1e-9 * want.abs().max(1.0));
            assert!((got.re - want).abs() <= 1e-9 * want.abs().max(1.0));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn det_is_multiplicative(seed in 0u64..1u64 << 48) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_rat_matrix(3, &mut rng);
            let b = random_rat_matrix(3, &mut rng);
            prop_assert_eq!(a.matmul(&b).det(), a.det() * b.det());
        }
    }
}
