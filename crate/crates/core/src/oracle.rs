//! Dense complex matrices for the shift `X` and clock `Z`, used to check the
//! normal-form algebra against literal matrix products.

use std::f64::consts::TAU;
use std::ops::Mul;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{self, PauliOp};
use crate::ring::Modulus;
use crate::symplectic::{self, Vec2};

pub const MATRIX_DIMENSION_MAX: u64 = 64;
pub const SWEEP_DIMENSION_MAX: u64 = 16;
/// Frobenius-norm tolerance for every matrix identity.
pub const TOLERANCE: f64 = 1e-10;

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseComplexMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(dim: usize, z: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = z;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(mut self, z: Complex64) -> Self {
        self.data.iter_mut().for_each(|x| *x *= z);
        self
    }

    pub fn pow(&self, k: u64) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| &acc * self)
    }

    /// `‖self − other‖_F`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }
}

impl std::ops::Index<(usize, usize)> for DenseComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;

    fn mul(self, rhs: &DenseComplexMatrix) -> DenseComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = DenseComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// `ω^k` with `ω = exp(2πi/d)`, `k` reduced first so the angle stays small.
pub fn root_of_unity(d: u64, k: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (k % d) as f64 / d as f64)
}

fn check_dimension(d: u64, max: u64) -> Result<usize> {
    if !(2..=max).contains(&d) {
        return Err(Error::DimensionOutOfRange { got: d, min: 2, max });
    }
    Ok(d as usize)
}

/// `X|s⟩ = |s+1⟩`: column `s` has its 1 in row `s + 1 mod d`.
pub fn build_shift(d: u64) -> Result<DenseComplexMatrix> {
    let n = check_dimension(d, MATRIX_DIMENSION_MAX)?;
    let mut m = DenseComplexMatrix::zeros(n);
    for s in 0..n {
        m[((s + 1) % n, s)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// `Z|s⟩ = ω^s|s⟩`.
pub fn build_clock(d: u64) -> Result<DenseComplexMatrix> {
    let n = check_dimension(d, MATRIX_DIMENSION_MAX)?;
    let mut m = DenseComplexMatrix::zeros(n);
    for s in 0..n {
        m[(s, s)] = root_of_unity(d, s as u64);
    }
    Ok(m)
}

/// `ω^a · X^b · Z^c` by literal matrix products.
pub fn op_to_matrix(m: &Modulus, g: PauliOp) -> Result<DenseComplexMatrix> {
    let d = m.d();
    let x = build_shift(d)?;
    let z = build_clock(d)?;
    Ok((&x.pow(g.b) * &z.pow(g.c)).scale(root_of_unity(d, g.a)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub d: u64,
    /// `‖ωXZ − ZX‖`.
    pub omega_xz_deviation: f64,
    /// `max(‖X^d − I‖, ‖Z^d − I‖)`.
    pub generator_order_deviation: f64,
    pub pairs_checked: u64,
    /// Pairs `((b,c),(b',c'))` whose matrices commute.
    pub commuting_pairs: u64,
    pub commutator_max_deviation: f64,
    pub product_samples: u64,
    pub product_max_deviation: f64,
    pub failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct PairOutcome {
    commuting: u64,
    max_dev: f64,
    failure: Option<IdentityFailure>,
}

/// Checks `ωXZ = ZX`, the commutator formula on every pair of `(b, c)`
/// vectors, agreement of matrix commutation with a vanishing form, and the
/// product rule on `product_samples` random pairs.
pub fn verify_identities(d: u64, product_samples: u64) -> Result<IdentityReport> {
    let n = check_dimension(d, SWEEP_DIMENSION_MAX)?;
    let m = Modulus::new(d)?;
    let x = build_shift(d)?;
    let z = build_clock(d)?;
    let omega = root_of_unity(d, 1);
    let mut failure = None;

    let omega_xz_deviation = (&x * &z).scale(omega).distance(&(&z * &x));
    if omega_xz_deviation > TOLERANCE {
        failure.get_or_insert(IdentityFailure {
            identity: "omega X Z = Z X".into(),
            detail: format!("deviation {omega_xz_deviation:e}"),
        });
    }
    let id = DenseComplexMatrix::identity(n);
    let generator_order_deviation = x.pow(d).distance(&id).max(z.pow(d).distance(&id));
    if generator_order_deviation > TOLERANCE {
        failure.get_or_insert(IdentityFailure {
            identity: "X^d = Z^d = I".into(),
            detail: format!("deviation {generator_order_deviation:e}"),
        });
    }

    let vectors: Vec<Vec2> = symplectic::all_vectors(&m).collect();
    let mats: Vec<DenseComplexMatrix> = vectors
        .iter()
        .map(|v| op_to_matrix(&m, PauliOp { a: 0, b: v.b, c: v.c }))
        .collect::<Result<_>>()?;
    let mats_adj: Vec<DenseComplexMatrix> = mats.iter().map(|w| w.adjoint()).collect();

    let outcomes: Vec<PairOutcome> = (0..vectors.len())
        .into_par_iter()
        .map(|i| {
            let mut out = PairOutcome {
                commuting: 0,
                max_dev: 0.0,
                failure: None,
            };
            for j in 0..vectors.len() {
                let (v, w) = (vectors[i], vectors[j]);
                let vw = &mats[i] * &mats[j];
                let wv = &mats[j] * &mats[i];
                // W W' W⁻¹ W'⁻¹ with unitary inverses
                let comm = &(&vw * &mats_adj[i]) * &mats_adj[j];
                let phase = symplectic::form(&m, v, w);
                let dev = comm.distance(&DenseComplexMatrix::scalar(n, root_of_unity(d, phase)));
                out.max_dev = out.max_dev.max(dev);
                if dev > TOLERANCE && out.failure.is_none() {
                    out.failure = Some(IdentityFailure {
                        identity: "commutator = omega^(c b' - c' b) I".into(),
                        detail: format!("pair {v} {w}: deviation {dev:e}"),
                    });
                }
                let matrix_commutes = vw.distance(&wv) < TOLERANCE;
                if matrix_commutes {
                    out.commuting += 1;
                }
                if matrix_commutes != (phase == 0) && out.failure.is_none() {
                    out.failure = Some(IdentityFailure {
                        identity: "matrix commutation iff form = 0".into(),
                        detail: format!("pair {v} {w}: form {phase}, matrix commutes {matrix_commutes}"),
                    });
                }
            }
            out
        })
        .collect();

    let mut commuting_pairs = 0;
    let mut commutator_max_deviation: f64 = 0.0;
    for o in outcomes {
        commuting_pairs += o.commuting;
        commutator_max_deviation = commutator_max_deviation.max(o.max_dev);
        if let Some(f) = o.failure {
            failure.get_or_insert(f);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(d);
    let mut product_max_deviation: f64 = 0.0;
    for _ in 0..product_samples {
        let mut draw = || PauliOp {
            a: rng.gen_range(0..d),
            b: rng.gen_range(0..d),
            c: rng.gen_range(0..d),
        };
        let (g, h) = (draw(), draw());
        let lhs = op_to_matrix(&m, pauli::multiply(&m, g, h))?;
        let rhs = &op_to_matrix(&m, g)? * &op_to_matrix(&m, h)?;
        let dev = lhs.distance(&rhs);
        product_max_deviation = product_max_deviation.max(dev);
        if dev > TOLERANCE {
            failure.get_or_insert(IdentityFailure {
                identity: "product rule".into(),
                detail: format!("{g:?} * {h:?}: deviation {dev:e}"),
            });
        }
    }

    Ok(IdentityReport {
        d,
        omega_xz_deviation,
        generator_order_deviation,
        pairs_checked: (vectors.len() * vectors.len()) as u64,
        commuting_pairs,
        commutator_max_deviation,
        product_samples,
        product_max_deviation,
        failure,
    })
}
