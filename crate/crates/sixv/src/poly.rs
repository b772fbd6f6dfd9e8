//! Bases of polynomials of degree at most `N - 1`.
//!
//! A basis is stored as its coefficient matrix `p_{ij}`, where
//! `p_i(z) = sum_j p_{ij} z^(j-1)`. The coefficient determinant
//! `Q_N = det[p_{ij}]` is nonzero exactly when the rows form a basis, and
//! the evaluation matrix satisfies
//! `det[p_k(z_j)] = Q_N * prod_{j<k} (z_k - z_j)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyBasis<K> {
    coeffs: SquareMatrix<K>,
}

impl<K: Scalar> PolyBasis<K> {
    /// Builds a basis from its coefficient matrix, rejecting `Q_N = 0`.
    pub fn from_coeffs(coeffs: SquareMatrix<K>) -> Result<Self> {
        if coeffs.det().is_zero() {
            return Err(Error::Invalid(
                "coefficient determinant vanishes: not a basis".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// The monomial basis `p_k(z) = z^(k-1)`; coefficient matrix is the
    /// identity.
    pub fn monomial(n: usize) -> Self {
        Self {
            coeffs: SquareMatrix::identity(n),
        }
    }

    /// Interpolating polynomials `p_k(z) = prod_{l != k} (z - points_l)` for
    /// pairwise distinct points.
    pub fn lagrange(points: &[K]) -> Result<Self> {
        let n = points.len();
        for (i, p) in points.iter().enumerate() {
            if points[i + 1..].contains(p) {
                return Err(Error::Invalid("degenerate Lagrange basis".into()));
            }
        }
        if n == 0 {
            return Err(Error::Invalid("need at least one point".into()));
        }
        let mut rows = Vec::with_capacity(n);
        for k in 0..n {
            let mut poly = vec![K::one()];
            for (l, point) in points.iter().enumerate() {
                if l == k {
                    continue;
                }
                // multiply by (z - point)
                let mut next = vec![K::zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] = next[i + 1].clone() + c.clone();
                    next[i] = next[i].clone() - point.clone() * c.clone();
                }
                poly = next;
            }
            poly.resize(n, K::zero());
            rows.push(poly);
        }
        Ok(Self {
            coeffs: SquareMatrix::from_rows(rows)?,
        })
    }

    /// Deterministic pseudo-random basis with small integer coefficients,
    /// re-drawn until the coefficient determinant is nonzero.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let coeffs = SquareMatrix::from_fn(n, |_, _| K::from_int(rng.gen_range(-9..=9)));
            if !coeffs.det().is_zero() {
                return Ok(Self { coeffs });
            }
        }
        Err(Error::Invalid(
            "failed to draw an invertible coefficient matrix in 100 attempts".into(),
        ))
    }

    pub fn n(&self) -> usize {
        self.coeffs.order()
    }

    pub fn coeffs(&self) -> &SquareMatrix<K> {
        &self.coeffs
    }

    /// The coefficient determinant `Q_N`.
    pub fn qn(&self) -> K {
        self.coeffs.det()
    }

    /// Evaluates `p_i` (zero-based `i`) at `z` by Horner's rule.
    pub fn eval(&self, i: usize, z: &K) -> K {
        let n = self.n();
        let mut acc = self.coeffs.at(i, n - 1).clone();
        for j in (0..n - 1).rev() {
            acc = acc * z.clone() + self.coeffs.at(i, j).clone();
        }
        acc
    }

    /// The evaluation matrix `[p_k(z_j)]_{j,k}`.
    pub fn eval_matrix(&self, zs: &[K]) -> SquareMatrix<K> {
        assert_eq!(zs.len(), self.n(), "need one point per basis polynomial");
        SquareMatrix::from_fn(self.n(), |j, k| self.eval(k, &zs[j]))
    }

    /// Change of basis by an invertible coefficient transform.
    pub fn transformed(&self, m: &SquareMatrix<K>) -> Result<Self> {
        Self::from_coeffs(m.matmul(&self.coeffs))
    }
}
