//! Numerical convex roof of the three-tangle.
//!
//! Every `m`-term decomposition of a rank-`r` density matrix comes from an
//! `m × r` isometry applied to the eigen-ensemble. Isometries are
//! parametrized as the first `r` columns of a product of complex Givens
//! rotations followed by column phases, and the average tangle is minimized
//! by derivative-free coordinate descent from random starting points.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, PureState3, C64, EIGEN_CLAMP, ZERO};
use crate::measures::{hyperdet_of, three_tangle};
use crate::sampling::RngSpec;

/// Column-isometry tolerance for mixing matrices.
pub const ISOMETRY_TOL: f64 = 1e-10;
/// Terms lighter than this are skipped when averaging.
pub const WEIGHT_EPS: f64 = 1e-14;
pub const DEFAULT_RESTARTS: usize = 32;
pub const MAX_SWEEPS: usize = 5000;
const INITIAL_STEP: f64 = 0.3;
const MIN_STEP: f64 = 1e-6;
/// Moves gaining less than this are rounding noise and are rejected.
const MIN_GAIN: f64 = 1e-15;

/// A pure-state ensemble `ρ ≈ Σᵢ wᵢ|ψᵢ⟩⟨ψᵢ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub weights: Vec<f64>,
    pub states: Vec<PureState3>,
    /// Frobenius norm of `Σᵢ wᵢ|ψᵢ⟩⟨ψᵢ| − ρ`.
    pub residual: f64,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(8, 8);
        for (w, psi) in self.weights.iter().zip(&self.states) {
            m = &m + &ComplexMatrix::outer(psi.amplitudes()).scale_real(*w);
        }
        m
    }
}

/// Eigenvectors scaled by `√μⱼ`, keeping eigenvalues above the clamp.
fn eigen_ensemble(rho: &DensityMatrix) -> Result<Vec<[C64; 8]>> {
    if rho.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: "8x8 density matrix".into(),
            found: format!("{}x{}", rho.dim(), rho.dim()),
        });
    }
    let eig = rho.eigen();
    Ok(eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &mu)| mu > EIGEN_CLAMP)
        .map(|(k, &mu)| {
            let v = eig.vector(k);
            std::array::from_fn(|i| v[i] * mu.sqrt())
        })
        .collect())
}

/// Rank of an 8×8 density matrix (eigenvalues above the clamp).
pub fn rank(rho: &DensityMatrix) -> Result<usize> {
    Ok(eigen_ensemble(rho)?.len())
}

fn mix(ensemble: &[[C64; 8]], mixing: &ComplexMatrix, i: usize) -> [C64; 8] {
    let mut out = [ZERO; 8];
    for (j, v) in ensemble.iter().enumerate() {
        let mij = mixing[(i, j)];
        for (o, x) in out.iter_mut().zip(v) {
            *o += mij * x;
        }
    }
    out
}

fn build(rho: &DensityMatrix, ensemble: &[[C64; 8]], mixing: &ComplexMatrix) -> Result<Decomposition> {
    let mut weights = Vec::with_capacity(mixing.rows());
    let mut states = Vec::with_capacity(mixing.rows());
    for i in 0..mixing.rows() {
        let psi = mix(ensemble, mixing, i);
        let w: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        weights.push(w);
        states.push(if w > 0.0 {
            PureState3::normalized(psi)?
        } else {
            PureState3::basis(0)
        });
    }
    let mut d = Decomposition { weights, states, residual: 0.0 };
    d.residual = (&d.reconstruct() - rho.matrix()).frobenius_norm();
    Ok(d)
}

/// Decomposition induced by an `m × r` column isometry acting on the
/// eigen-ensemble of `rho`.
pub fn decompose_from_isometry(rho: &DensityMatrix, mixing: &ComplexMatrix) -> Result<Decomposition> {
    let ensemble = eigen_ensemble(rho)?;
    if mixing.cols() != ensemble.len() {
        return Err(Error::RankMismatch { rank: ensemble.len(), cols: mixing.cols() });
    }
    let gram = &mixing.adjoint() * mixing;
    let deviation = (&gram - &ComplexMatrix::identity(mixing.cols()))
        .data()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if deviation > ISOMETRY_TOL {
        return Err(Error::NotIsometric { deviation });
    }
    build(rho, &ensemble, mixing)
}

/// `Σᵢ wᵢ τ(ψᵢ)`, skipping near-zero weights.
pub fn avg_tangle(d: &Decomposition) -> Result<f64> {
    let mut total = 0.0;
    for (w, psi) in d.weights.iter().zip(&d.states) {
        if *w >= WEIGHT_EPS {
            total += w * three_tangle(psi)?;
        }
    }
    Ok(total)
}

/// Angles and phases of the Givens pairs `(i, j)`, `j = 1..m`, `i < j`,
/// followed by `r` column phases. Growing `m` appends parameters, and the
/// new rotations are the identity at zero.
#[derive(Debug, Clone)]
struct Params {
    m: usize,
    r: usize,
    x: Vec<f64>,
}

impl Params {
    fn len_for(m: usize, r: usize) -> usize {
        m * (m - 1) + r
    }

    fn zeros(m: usize, r: usize) -> Self {
        Params { m, r, x: vec![0.0; Self::len_for(m, r)] }
    }

    fn random(m: usize, r: usize, rng: &mut impl Rng) -> Self {
        let x = (0..Self::len_for(m, r)).map(|_| rng.random_range(0.0..TAU)).collect();
        Params { m, r, x }
    }

    /// Same isometry padded with a zero row.
    fn grow(&self) -> Self {
        let mut next = Params::zeros(self.m + 1, self.r);
        let g = self.m * (self.m - 1);
        next.x[..g].copy_from_slice(&self.x[..g]);
        let g_next = next.m * (next.m - 1);
        next.x[g_next..].copy_from_slice(&self.x[g..]);
        next
    }

    fn isometry(&self) -> ComplexMatrix {
        let (m, r) = (self.m, self.r);
        let mut u = ComplexMatrix::zeros(m, r);
        for k in 0..r {
            u[(k, k)] = C64::from_polar(1.0, self.x[m * (m - 1) + k]);
        }
        // U = G₁G₂…G_K applied to the first r columns, innermost first
        let mut pairs = Vec::with_capacity(m * (m - 1) / 2);
        for j in 1..m {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        for (k, &(i, j)) in pairs.iter().enumerate().rev() {
            let (s, c) = self.x[2 * k].sin_cos();
            let e = C64::from_polar(1.0, self.x[2 * k + 1]);
            for col in 0..r {
                let (a, b) = (u[(i, col)], u[(j, col)]);
                u[(i, col)] = a * c - e.conj() * b * s;
                u[(j, col)] = e * a * s + b * c;
            }
        }
        u
    }
}

/// Weighted tangle through the hyperdeterminant on unnormalized members:
/// `wᵢ τ(ψᵢ) = 4|Det(ψ̃ᵢ)| / ‖ψ̃ᵢ‖²`.
fn objective(ensemble: &[[C64; 8]], p: &Params) -> f64 {
    let mixing = p.isometry();
    (0..p.m)
        .map(|i| {
            let psi = mix(ensemble, &mixing, i);
            let w: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            if w < WEIGHT_EPS {
                0.0
            } else {
                4.0 * hyperdet_of(&psi).norm() / w
            }
        })
        .sum()
}

struct Descent {
    params: Params,
    value: f64,
    converged: bool,
    sweeps: usize,
}

fn descend(ensemble: &[[C64; 8]], mut params: Params) -> Descent {
    let mut value = objective(ensemble, &params);
    let mut step = INITIAL_STEP;
    let mut sweeps = 0;
    while step >= MIN_STEP {
        if sweeps == MAX_SWEEPS {
            return Descent { params, value, converged: false, sweeps };
        }
        sweeps += 1;
        let mut improved = false;
        for k in 0..params.x.len() {
            for delta in [step, -step] {
                let old = params.x[k];
                params.x[k] = old + delta;
                let v = objective(ensemble, &params);
                if v < value - MIN_GAIN {
                    value = v;
                    improved = true;
                    break;
                }
                params.x[k] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Descent { params, value, converged: true, sweeps }
}

/// Outcome of [`minimize_tangle`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoofEstimate {
    /// Average tangle of `best`, an upper bound on the convex roof.
    pub estimate: f64,
    pub best: Decomposition,
    /// Every descent reached the minimum step size within the sweep cap.
    pub converged: bool,
    /// Largest sweep count of any single descent.
    pub sweeps: usize,
}

struct Level {
    params: Params,
    converged: bool,
    sweeps: usize,
}

fn optimize_level(ensemble: &[[C64; 8]], m: usize, restarts: usize, seed: u64) -> Level {
    let r = ensemble.len();
    let warm = (m > r).then(|| optimize_level(ensemble, m - 1, restarts, seed));
    let spec = RngSpec::new(seed);
    let mut runs: Vec<(usize, Descent)> = (0..restarts)
        .into_par_iter()
        .map(|idx| {
            let mut rng = spec.stream(idx as u64);
            (idx, descend(ensemble, Params::random(m, r, &mut rng)))
        })
        .collect();
    let (mut converged, mut sweeps) = (true, 0);
    if let Some(prev) = &warm {
        runs.push((restarts, descend(ensemble, prev.params.grow())));
        converged = prev.converged;
        sweeps = prev.sweeps;
    }
    converged &= runs.iter().all(|(_, d)| d.converged);
    sweeps = runs.iter().map(|(_, d)| d.sweeps).fold(sweeps, usize::max);
    let (_, best) = runs
        .into_iter()
        .min_by(|(ia, a), (ib, b)| a.value.total_cmp(&b.value).then(ia.cmp(ib)))
        .expect("at least one restart");
    Level { params: best.params, converged, sweeps }
}

/// Upper estimate of the convex-roof three-tangle of `rho` over `m`-term
/// decompositions. The optimum for `m − 1` terms seeds an extra descent, so
/// the estimate cannot increase with `m`.
pub fn minimize_tangle(rho: &DensityMatrix, m: usize, restarts: usize, seed: u64) -> Result<RoofEstimate> {
    let ensemble = eigen_ensemble(rho)?;
    let r = ensemble.len();
    if m < r {
        return Err(Error::OutOfRange { name: "m", value: m as f64 });
    }
    if restarts == 0 {
        return Err(Error::OutOfRange { name: "restarts", value: 0.0 });
    }
    let level = optimize_level(&ensemble, m, restarts, seed);
    let best = build(rho, &ensemble, &level.params.isometry())?;
    let estimate = avg_tangle(&best)?;
    Ok(RoofEstimate { estimate, best, converged: level.converged, sweeps: level.sweeps })
}

/// `minimize_tangle` with `m = rank + 2`.
pub fn minimize_tangle_default(rho: &DensityMatrix, restarts: usize, seed: u64) -> Result<RoofEstimate> {
    minimize_tangle(rho, rank(rho)? + 2, restarts, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{g_ii, ghz_w_state};
    use crate::states;
    use approx::assert_abs_diff_eq;

    #[test]
    fn params_grow_pads_with_zero_row() {
        let mut rng = RngSpec::new(3).stream(0);
        let p = Params::random(3, 2, &mut rng);
        let a = p.isometry();
        let b = p.grow().isometry();
        for i in 0..3 {
            for j in 0..2 {
                assert!((a[(i, j)] - b[(i, j)]).norm() < 1e-15);
            }
        }
        assert_eq!(b[(3, 0)], ZERO);
        assert_eq!(b[(3, 1)], ZERO);
        let gram = &b.adjoint() * &b;
        assert!((&gram - &ComplexMatrix::identity(2)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn pure_state_trivial_mixing() {
        let rho = states::ghz().density();
        let d = decompose_from_isometry(&rho, &ComplexMatrix::identity(1)).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.states[0].fidelity(&states::ghz()) > 1.0 - 1e-12);
        assert_abs_diff_eq!(avg_tangle(&d).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn identity_mixing_is_eigen_ensemble() {
        for p in [0.3, 0.5, 0.8] {
            let rho = ghz_w_state(p).unwrap();
            let d = decompose_from_isometry(&rho, &ComplexMatrix::identity(2)).unwrap();
            assert!(d.residual < 1e-9);
            // τ(GHZ) = 1 and τ(W) = 0
            assert_abs_diff_eq!(avg_tangle(&d).unwrap(), p, epsilon = 1e-10);
        }
        let d = decompose_from_isometry(&ghz_w_state(0.5).unwrap(), &ComplexMatrix::identity(2)).unwrap();
        assert_abs_diff_eq!(d.weights[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(d.weights[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn random_isometry_reconstructs() {
        let rho = ghz_w_state(0.8).unwrap();
        let mut rng = RngSpec::new(11).stream(0);
        let mixing = Params::random(5, 2, &mut rng).isometry();
        let d = decompose_from_isometry(&rho, &mixing).unwrap();
        assert_eq!(d.len(), 5);
        assert!(d.residual <= 1e-9);
        assert_abs_diff_eq!(d.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert!(avg_tangle(&d).unwrap() >= 0.0);
    }

    #[test]
    fn rejects_bad_mixing() {
        let rho = ghz_w_state(0.5).unwrap();
        assert!(matches!(
            decompose_from_isometry(&rho, &ComplexMatrix::identity(3)),
            Err(Error::RankMismatch { rank: 2, cols: 3 })
        ));
        let skew = ComplexMatrix::from_real(2, 2, &[1.0, 0.1, 0.0, 1.0]).unwrap();
        assert!(matches!(
            decompose_from_isometry(&rho, &skew),
            Err(Error::NotIsometric { .. })
        ));
        assert!(minimize_tangle(&rho, 1, 4, 0).is_err());
        assert!(minimize_tangle(&rho, 3, 0, 0).is_err());
    }

    #[test]
    fn objective_matches_avg_tangle() {
        let rho = ghz_w_state(0.7).unwrap();
        let ensemble = eigen_ensemble(&rho).unwrap();
        let mut rng = RngSpec::new(5).stream(1);
        let p = Params::random(4, 2, &mut rng);
        let d = build(&rho, &ensemble, &p.isometry()).unwrap();
        assert_abs_diff_eq!(objective(&ensemble, &p), avg_tangle(&d).unwrap(), epsilon = 1e-10);
    }

    #[test]
    fn pure_state_estimate_is_tangle() {
        let psi = states::psi5();
        let est = minimize_tangle(&psi.density(), 3, 2, 1).unwrap();
        assert_abs_diff_eq!(est.estimate, three_tangle(&psi).unwrap(), epsilon = 1e-8);
    }

    #[test]
    fn zero_and_linear_branches() {
        let est = minimize_tangle(&ghz_w_state(0.5).unwrap(), 4, 20, 9).unwrap();
        assert!(est.estimate <= 1e-4, "{}", est.estimate);
        let est = minimize_tangle(&ghz_w_state(0.9).unwrap(), 4, 32, 9).unwrap();
        assert!((est.estimate - g_ii(0.9)).abs() <= 2e-3, "{}", est.estimate);
        assert!(est.best.residual < 1e-9);
    }

    #[test]
    fn monotone_in_m_and_deterministic() {
        let rho = ghz_w_state(0.75).unwrap();
        let e2 = minimize_tangle(&rho, 2, 6, 4).unwrap().estimate;
        let e3 = minimize_tangle(&rho, 3, 6, 4).unwrap().estimate;
        let e4 = minimize_tangle(&rho, 4, 6, 4).unwrap();
        assert!(e3 <= e2 + 1e-6);
        assert!(e4.estimate <= e3 + 1e-6);
        let again = minimize_tangle(&rho, 4, 6, 4).unwrap();
        assert_eq!(e4.estimate.to_bits(), again.estimate.to_bits());
    }
}
