//! Seeded random states, local unitaries and local filters.
//!
//! All randomness goes through ChaCha20 streams, which are reproducible
//! across platforms. A [`RngSpec`] hands out independent streams by index so
//! that parallel work stays deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{ComplexMatrix, PureState3, Qubit, C64, ZERO};
use crate::schmidt::LocalUnitaryTriple;

/// Seed for a family of ChaCha20 streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSpec {
    pub seed: u64,
}

impl RngSpec {
    pub const ALGORITHM: &'static str = "chacha20";

    pub fn new(seed: u64) -> Self {
        RngSpec { seed }
    }

    /// Stream `index` of this seed.
    pub fn stream(&self, index: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    pub fn rng(&self) -> ChaCha20Rng {
        self.stream(0)
    }
}

fn complex_gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn gaussian_unit<const N: usize>(rng: &mut impl Rng) -> [C64; N] {
    loop {
        let mut v: [C64; N] = std::array::from_fn(|_| complex_gaussian(rng));
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-150 {
            v.iter_mut().for_each(|z| *z /= norm);
            return v;
        }
    }
}

/// Unitarily invariant random three-qubit state.
pub fn haar_pure_state(rng: &mut impl Rng) -> PureState3 {
    PureState3::normalized(gaussian_unit::<8>(rng)).expect("unit vector")
}

/// Haar-random single-qubit state.
pub fn haar_qubit(rng: &mut impl Rng) -> [C64; 2] {
    gaussian_unit::<2>(rng)
}

/// Haar-random 2×2 unitary: a uniform first column and a uniformly phased
/// orthogonal second column.
pub fn haar_unitary_2(rng: &mut impl Rng) -> ComplexMatrix {
    let [u0, u1] = haar_qubit(rng);
    let e = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    ComplexMatrix::from_vec(2, 2, vec![u0, -e * u1.conj(), u1, e * u0.conj()]).unwrap()
}

pub fn random_local_unitary(rng: &mut impl Rng) -> LocalUnitaryTriple {
    LocalUnitaryTriple {
        u_a: haar_unitary_2(rng),
        u_b: haar_unitary_2(rng),
        u_c: haar_unitary_2(rng),
    }
}

/// Two-outcome generalized measurement on a single qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFilter {
    pub qubit: Qubit,
    pub m0: ComplexMatrix,
    pub m1: ComplexMatrix,
}

impl LocalFilter {
    /// `M₀ = I`, `M₁ = 0`.
    pub fn trivial(qubit: Qubit) -> Self {
        LocalFilter {
            qubit,
            m0: ComplexMatrix::identity(2),
            m1: ComplexMatrix::zeros(2, 2),
        }
    }

    /// Largest entry of `M₀†M₀ + M₁†M₁ − I`.
    pub fn completeness_error(&self) -> f64 {
        let sum = &(&self.m0.adjoint() * &self.m0) + &(&self.m1.adjoint() * &self.m1);
        (&sum - &ComplexMatrix::identity(2))
            .data()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Outcome probabilities and normalized post-measurement states; outcomes
    /// with probability below `1e-14` are dropped.
    pub fn apply(&self, psi: &PureState3) -> Vec<(f64, PureState3)> {
        [&self.m0, &self.m1]
            .into_iter()
            .filter_map(|m| {
                let out = psi.apply_on(self.qubit, m);
                let p: f64 = out.iter().map(|z| z.norm_sqr()).sum();
                (p >= 1e-14).then(|| (p, PureState3::normalized(out).expect("nonzero branch")))
            })
            .collect()
    }
}

/// `M₀ = U·diag(cos α, cos β)·V`, `M₁ = W·diag(sin α, sin β)·V` with Haar
/// `U, V, W` and `α, β` uniform on `[0, π/2]`.
pub fn random_local_filter(rng: &mut impl Rng, qubit: Qubit) -> LocalFilter {
    let u = haar_unitary_2(rng);
    let v = haar_unitary_2(rng);
    let w = haar_unitary_2(rng);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let alpha: f64 = rng.random_range(0.0..=half_pi);
    let beta: f64 = rng.random_range(0.0..=half_pi);
    let d0 = ComplexMatrix::diag_real(&[alpha.cos(), beta.cos()]);
    let d1 = ComplexMatrix::diag_real(&[alpha.sin(), beta.sin()]);
    LocalFilter {
        qubit,
        m0: &(&u * &d0) * &v,
        m1: &(&w * &d1) * &v,
    }
}

/// `|φ⟩_X ⊗ |χ⟩_YZ` for the single qubit `X = split`, with the two-qubit
/// factor in the remaining qubits' natural order.
pub fn product_across(split: Qubit, phi: [C64; 2], chi: [C64; 4]) -> PureState3 {
    let mut a = [ZERO; 8];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let (x, y, z) = match split {
                    Qubit::A => (i, j, k),
                    Qubit::B => (j, i, k),
                    Qubit::C => (k, i, j),
                };
                a[4 * i + 2 * j + k] = phi[x] * chi[2 * y + z];
            }
        }
    }
    PureState3::normalized(a).expect("product of unit vectors")
}

/// Random state that factors across the cut `split | rest`.
pub fn biseparable_state(rng: &mut impl Rng, split: Qubit) -> PureState3 {
    let phi = haar_qubit(rng);
    let chi = gaussian_unit::<4>(rng);
    product_across(split, phi, chi)
}
