//! Generalized Schmidt decomposition of three-qubit pure states and the
//! reshaped two-qubit states built from it.
//!
//! Every state is local-unitarily equivalent to
//!
//! ```text
//! λ₀|000⟩ + λ₁e^{iφ}|100⟩ + λ₂|101⟩ + λ₃|110⟩ + λ₄|111⟩,   λᵢ ≥ 0, φ ∈ [0, π].
//! ```
//!
//! The rotation on qubit A is chosen so that the `A = 0` block of the
//! amplitude tensor becomes singular; that is a quadratic with two roots.
//! The two roots always produce phases with opposite signs of `sin φ`, so
//! requiring `φ ∈ [0, π]` selects one of them. Only when both are admissible
//! (φ at 0 or π, or φ undefined because a coefficient vanishes) does the
//! larger `λ₀` decide.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Pair, PureState3, C64, NORM_TOL, ONE, ZERO};
use crate::measures::{pairwise_concurrence, pure_concurrence_2q, unit_interval};

/// Coefficients below this are treated as exactly zero in branch decisions.
pub const COEFF_EPS: f64 = 1e-12;
/// Phases within this of a boundary snap onto it.
const PHASE_SNAP: f64 = 1e-9;
/// `λ₃² + λ₄²` below this leaves the BC transformation undefined.
pub const BC_DEGENERATE: f64 = 1e-14;

/// Canonical five-term form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtForm {
    lambda: [f64; 5],
    phi: f64,
}

impl SchmidtForm {
    pub fn new(lambda: [f64; 5], phi: f64) -> Result<Self> {
        if let Some(&bad) = lambda.iter().find(|&&l| l.is_nan() || l < 0.0) {
            return Err(Error::OutOfRange { name: "lambda", value: bad });
        }
        if !(0.0..=PI).contains(&phi) {
            return Err(Error::OutOfRange { name: "phi", value: phi });
        }
        let norm_sq: f64 = lambda.iter().map(|l| l * l).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(SchmidtForm { lambda, phi })
    }

    pub fn lambda(&self) -> [f64; 5] {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_state(&self) -> PureState3 {
        let [l0, l1, l2, l3, l4] = self.lambda;
        let mut a = [ZERO; 8];
        a[0] = C64::new(l0, 0.0);
        a[4] = C64::from_polar(l1, self.phi);
        a[5] = C64::new(l2, 0.0);
        a[6] = C64::new(l3, 0.0);
        a[7] = C64::new(l4, 0.0);
        PureState3::new(a).expect("validated coefficients are normalized")
    }

    /// `C_{A(BC)} = 2λ₀√(λ₂² + λ₃² + λ₄²)`.
    pub fn c_a_bc(&self) -> f64 {
        let [l0, _, l2, l3, l4] = self.lambda;
        2.0 * l0 * (l2 * l2 + l3 * l3 + l4 * l4).sqrt()
    }

    /// `C_{B(AC)}` in closed form.
    pub fn c_b_ac(&self) -> f64 {
        let [l0, l1, l2, l3, l4] = self.lambda;
        let inner = l0 * l0 * (l3 * l3 + l4 * l4) + l1 * l1 * l4 * l4 + l2 * l2 * l3 * l3
            - 2.0 * l1 * l2 * l3 * l4 * self.phi.cos();
        2.0 * inner.max(0.0).sqrt()
    }

    /// `𝒞_{A'B'} = 2λ₀√(λ₃² + λ₄²)`.
    pub fn pairwise_ab(&self) -> f64 {
        let [l0, _, _, l3, l4] = self.lambda;
        2.0 * l0 * l3.hypot(l4)
    }

    /// `τ = 4λ₀²λ₄²`.
    pub fn tangle(&self) -> f64 {
        let [l0, _, _, _, l4] = self.lambda;
        4.0 * l0 * l0 * l4 * l4
    }
}

/// Three single-qubit unitaries acting as `U_A ⊗ U_B ⊗ U_C`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitaryTriple {
    pub u_a: ComplexMatrix,
    pub u_b: ComplexMatrix,
    pub u_c: ComplexMatrix,
}

impl LocalUnitaryTriple {
    pub const UNITARY_TOL: f64 = 1e-10;

    pub fn new(u_a: ComplexMatrix, u_b: ComplexMatrix, u_c: ComplexMatrix) -> Result<Self> {
        for u in [&u_a, &u_b, &u_c] {
            if u.rows() != 2 || u.cols() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: "2x2 unitary".into(),
                    found: format!("{}x{}", u.rows(), u.cols()),
                });
            }
            let deviation = u.unitarity_error();
            if deviation > Self::UNITARY_TOL {
                return Err(Error::NotUnitary { deviation });
            }
        }
        Ok(LocalUnitaryTriple { u_a, u_b, u_c })
    }

    pub fn identity() -> Self {
        let id = ComplexMatrix::identity(2);
        LocalUnitaryTriple {
            u_a: id.clone(),
            u_b: id.clone(),
            u_c: id,
        }
    }

    pub fn apply(&self, psi: &PureState3) -> PureState3 {
        PureState3::normalized(psi.apply_local(&self.u_a, &self.u_b, &self.u_c))
            .expect("unitaries preserve the norm")
    }

    pub fn inverse(&self) -> Self {
        LocalUnitaryTriple {
            u_a: self.u_a.adjoint(),
            u_b: self.u_b.adjoint(),
            u_c: self.u_c.adjoint(),
        }
    }

    /// The full 8×8 operator.
    pub fn to_matrix(&self) -> ComplexMatrix {
        crate::linalg::kron(&self.u_a, &crate::linalg::kron(&self.u_b, &self.u_c))
    }
}

fn mat2(a: C64, b: C64, c: C64, d: C64) -> ComplexMatrix {
    ComplexMatrix::from_vec(2, 2, vec![a, b, c, d]).unwrap()
}

fn det2(m: &[[C64; 2]; 2]) -> C64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Homogeneous roots `(α, β)` of `det(α T₀ + β T₁) = 0`, each normalized.
fn rotation_roots(t0: &[[C64; 2]; 2], t1: &[[C64; 2]; 2]) -> Vec<(C64, C64)> {
    let a = det2(t0);
    let d = det2(t1);
    let c = t0[0][0] * t1[1][1] + t0[1][1] * t1[0][0] - t0[0][1] * t1[1][0] - t0[1][0] * t1[0][1];
    let normalize = |al: C64, be: C64| {
        let n = al.norm().hypot(be.norm());
        (al / n, be / n)
    };
    let s = (c * c - 4.0 * a * d).sqrt();
    // pick the sign that avoids cancellation
    let q = if (c + s).norm() >= (c - s).norm() {
        -(c + s) / 2.0
    } else {
        -(c - s) / 2.0
    };
    let scale = a.norm().max(c.norm()).max(d.norm());
    if scale < 1e-28 {
        // every combination is singular
        return vec![(ONE, ZERO), (ZERO, ONE)];
    }
    if q.norm() < 1e-14 * scale.max(1e-14) {
        // c ≈ 0 and a·d ≈ 0: a double root at α = 0 or β = 0
        return if a.norm() >= d.norm() {
            vec![(ZERO, ONE)]
        } else {
            vec![(ONE, ZERO)]
        };
    }
    // roots α/β = q/a and d/q
    vec![normalize(q, a), normalize(d, q)]
}

struct Candidate {
    form_lambda: [f64; 5],
    phi: f64,
    unitaries: LocalUnitaryTriple,
}

fn wrap_phase(x: f64) -> f64 {
    let mut p = x.rem_euclid(TAU);
    if p > TAU - PHASE_SNAP {
        p = 0.0;
    } else if p > PI && p <= PI + PHASE_SNAP {
        p = PI;
    }
    p
}

/// `(U₀ u)` maps `u` to `|0⟩`: rows `u†` and `(−u₁, u₀)`.
fn align_to_zero(u: [C64; 2]) -> ComplexMatrix {
    mat2(u[0].conj(), u[1].conj(), -u[1], u[0])
}

fn candidate(psi: &PureState3, alpha: C64, beta: C64) -> Candidate {
    let amp = psi.amplitudes();
    let block = |i: usize| [[amp[4 * i], amp[4 * i + 1]], [amp[4 * i + 2], amp[4 * i + 3]]];
    let (t0, t1) = (block(0), block(1));

    // U_A rows (α, β) and (−β̄, ᾱ)
    let u_a = mat2(alpha, beta, -beta.conj(), alpha.conj());
    let mut s0 = [[ZERO; 2]; 2];
    let mut s1 = [[ZERO; 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            s0[j][k] = alpha * t0[j][k] + beta * t1[j][k];
            s1[j][k] = -beta.conj() * t0[j][k] + alpha.conj() * t1[j][k];
        }
    }

    // s0 is rank one: s0 = σ u vᵀ
    let col_norm = |k: usize| s0[0][k].norm().hypot(s0[1][k].norm());
    let k = if col_norm(0) >= col_norm(1) { 0 } else { 1 };
    let (u, v) = if col_norm(k) < 1e-300 {
        ([ONE, ZERO], [ONE, ZERO])
    } else {
        let n = col_norm(k);
        let u = [s0[0][k] / n, s0[1][k] / n];
        let w = [
            u[0].conj() * s0[0][0] + u[1].conj() * s0[1][0],
            u[0].conj() * s0[0][1] + u[1].conj() * s0[1][1],
        ];
        let wn = w[0].norm().hypot(w[1].norm());
        let v = if wn < 1e-300 { [ONE, ZERO] } else { [w[0] / wn, w[1] / wn] };
        (u, v)
    };
    let u_b = align_to_zero(u);
    // T ↦ U_B T U_Cᵀ needs U_C v = |0⟩ with v read as a column
    let u_c = align_to_zero(v);

    let rotate = |t: &[[C64; 2]; 2]| {
        let tm = mat2(t[0][0], t[0][1], t[1][0], t[1][1]);
        &(&u_b * &tm) * &u_c.transpose()
    };
    let r0 = rotate(&s0);
    let r1 = rotate(&s1);
    // coefficients of |000⟩, |100⟩, |101⟩, |110⟩, |111⟩
    let coeffs = [r0[(0, 0)], r1[(0, 0)], r1[(0, 1)], r1[(1, 0)], r1[(1, 1)]];
    let lambda = coeffs.map(|z| z.norm());
    let mut theta = coeffs.map(|z| if z.norm() > 0.0 { z.arg() } else { 0.0 });

    // a vanishing coefficient frees its phase; spend it on φ = 0
    if let Some(free) = (1..5).find(|&i| lambda[i] < COEFF_EPS) {
        match free {
            1 => theta[1] = theta[2] + theta[3] - theta[4],
            2 => theta[2] = theta[1] - theta[3] + theta[4],
            3 => theta[3] = theta[1] - theta[2] + theta[4],
            _ => theta[4] = theta[2] + theta[3] - theta[1],
        }
    }
    let phi = wrap_phase(theta[1] - theta[2] - theta[3] + theta[4]);

    // diagonal phases making every coefficient but |100⟩ real and positive
    let c0 = -theta[0];
    let c1 = -theta[0] + theta[3] - theta[4];
    let a1 = theta[0] - theta[3] + theta[4] - theta[2];
    let b1 = theta[2] - theta[4];
    let phase = |x: f64| C64::from_polar(1.0, x);
    let p_a = mat2(ONE, ZERO, ZERO, phase(a1));
    let p_b = mat2(ONE, ZERO, ZERO, phase(b1));
    let p_c = mat2(phase(c0), ZERO, ZERO, phase(c1));

    Candidate {
        form_lambda: lambda,
        phi,
        unitaries: LocalUnitaryTriple {
            u_a: &p_a * &u_a,
            u_b: &p_b * &u_b,
            u_c: &p_c * &u_c,
        },
    }
}

/// Canonical form of `psi` and the local unitaries mapping `psi` onto it
/// (up to a global phase).
pub fn schmidt_decompose(psi: &PureState3) -> Result<(SchmidtForm, LocalUnitaryTriple)> {
    let amp = psi.amplitudes();
    let block = |i: usize| [[amp[4 * i], amp[4 * i + 1]], [amp[4 * i + 2], amp[4 * i + 3]]];
    let roots = rotation_roots(&block(0), &block(1));
    let mut best: Option<Candidate> = None;
    for (alpha, beta) in roots {
        let cand = candidate(psi, alpha, beta);
        if cand.phi > PI {
            continue;
        }
        best = match best {
            None => Some(cand),
            Some(prev) => {
                let dl0 = cand.form_lambda[0] - prev.form_lambda[0];
                let better = dl0 > COEFF_EPS
                    || (dl0.abs() <= COEFF_EPS && cand.form_lambda[1] < prev.form_lambda[1]);
                Some(if better { cand } else { prev })
            }
        };
    }
    let cand = best.ok_or(Error::RootSelection)?;
    // drop the rounding-level residue on the |0jk⟩ block
    let norm = cand.form_lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
    let lambda = cand.form_lambda.map(|l| l / norm);
    Ok((SchmidtForm::new(lambda, cand.phi)?, cand.unitaries))
}

/// The BC transformation: swaps on A and B and a λ₃/λ₄ reflection on C,
/// giving `l₀|000⟩ + l₁|010⟩ + l₂|011⟩ + l₃|110⟩ + l₄|111⟩`.
pub fn transform_bc(s: &SchmidtForm) -> Result<(LocalUnitaryTriple, PureState3)> {
    let [l0, l1, l2, l3, l4] = s.lambda;
    let n_sq = l3 * l3 + l4 * l4;
    if n_sq < BC_DEGENERATE {
        return Err(Error::DegenerateBc);
    }
    let n = n_sq.sqrt();
    let r = |x: f64| C64::new(x, 0.0);
    let u_a = mat2(ZERO, ONE, ONE, ZERO);
    let u_b = mat2(ZERO, -ONE, ONE, ZERO);
    let u_c = mat2(r(l3), r(l4), r(l4), r(-l3)).scale_real(-1.0 / n);
    let e = C64::from_polar(1.0, s.phi);
    let mut a = [ZERO; 8];
    a[0] = r(n);
    a[2] = -(e * l1 * l3 + l2 * l4) / n;
    a[3] = (r(l2 * l3) - e * l1 * l4) / n;
    a[6] = r(-l0 * l3 / n);
    a[7] = r(-l0 * l4 / n);
    let state = PureState3::normalized(a)?;
    Ok((LocalUnitaryTriple { u_a, u_b, u_c }, state))
}

/// Reshaped two-qubit state `(√P₀₀, 0, √P₁₀, √P₁₁)` for a pair of the
/// canonical form.
pub fn reshaped_state(s: &SchmidtForm, pair: Pair) -> Result<[f64; 4]> {
    let [l0, l1, l2, l3, l4] = s.lambda;
    Ok(match pair {
        Pair::AB => [l0, 0.0, l1.hypot(l2), l3.hypot(l4)],
        Pair::AC => [l0, 0.0, l1.hypot(l3), l2.hypot(l4)],
        Pair::BC => {
            let (_, t) = transform_bc(s)?;
            let l = t.amplitudes();
            [l[0].norm(), 0.0, l[2].norm().hypot(l[6].norm()), l[3].norm().hypot(l[7].norm())]
        }
    })
}

/// Pairwise concurrence as the concurrence of the reshaped state.
///
/// When λ₃ = λ₄ = 0 the BC reshaping is unavailable and the pair falls back
/// to `√(C²_BC + τ)`.
pub fn pairwise_via_reshape(psi: &PureState3, pair: Pair) -> Result<f64> {
    let (form, _) = schmidt_decompose(psi)?;
    match reshaped_state(&form, pair) {
        Ok(phi) => {
            let phi = phi.map(|x| C64::new(x, 0.0));
            pure_concurrence_2q(&phi).and_then(|c| unit_interval("reshaped concurrence", c))
        }
        Err(Error::DegenerateBc) => pairwise_concurrence(psi, pair),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_abs_diff_eq;

    fn generic_states() -> Vec<PureState3> {
        (0..40)
            .map(|s| {
                let amps = std::array::from_fn(|i| {
                    let x = (s * 8 + i) as f64;
                    C64::new((2.1 * x).sin(), (0.37 * x * x + 1.0).cos())
                });
                PureState3::normalized(amps).unwrap()
            })
            .collect()
    }

    fn roundtrip_fidelity(psi: &PureState3) -> f64 {
        let (form, u) = schmidt_decompose(psi).unwrap();
        u.apply(psi).fidelity(&form.to_state())
    }

    #[test]
    fn ghz_is_its_own_form() {
        let (form, _) = schmidt_decompose(&states::ghz()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let l = form.lambda();
        assert_abs_diff_eq!(l[0], h, epsilon = 1e-12);
        assert_abs_diff_eq!(l[4], h, epsilon = 1e-12);
        for x in &l[1..4] {
            assert_abs_diff_eq!(*x, 0.0, epsilon = 1e-12);
        }
        assert!(roundtrip_fidelity(&states::ghz()) > 1.0 - 1e-12);
    }

    #[test]
    fn psi5_form() {
        let (form, _) = schmidt_decompose(&states::psi5()).unwrap();
        let l = form.lambda();
        let expected = [0.1f64.sqrt(), 0.0, 2.0 / 5f64.sqrt(), 0.1f64.sqrt(), 0.0];
        for i in 0..5 {
            assert_abs_diff_eq!(l[i], expected[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn psi6_form() {
        let (form, _) = schmidt_decompose(&states::psi6()).unwrap();
        let l = form.lambda();
        let a = 3.0 / 20f64.sqrt();
        let expected = [a, 0.0, 0.1f64.sqrt(), a, 0.0];
        for i in 0..5 {
            assert_abs_diff_eq!(l[i], expected[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn w_state_form() {
        let (form, _) = schmidt_decompose(&states::w()).unwrap();
        let t = 1.0 / 3f64.sqrt();
        let l = form.lambda();
        let expected = [t, 0.0, t, t, 0.0];
        for i in 0..5 {
            assert_abs_diff_eq!(l[i], expected[i], epsilon = 1e-12);
        }
        assert!(roundtrip_fidelity(&states::w()) > 1.0 - 1e-12);
    }

    #[test]
    fn product_and_biseparable_round_trip() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let cases = [
            states::product_zero(),
            PureState3::from_real([h, 0.0, 0.0, h, 0.0, 0.0, 0.0, 0.0]).unwrap(),
            PureState3::from_real([h, 0.0, 0.0, 0.0, 0.0, h, 0.0, 0.0]).unwrap(),
            PureState3::from_real([h, 0.0, 0.0, 0.0, 0.0, 0.0, h, 0.0]).unwrap(),
            PureState3::from_real([0.5; 8].map(|x| x / 2f64.sqrt())).unwrap(),
        ];
        for psi in cases {
            assert!(roundtrip_fidelity(&psi) > 1.0 - 1e-12, "{psi:?}");
        }
    }

    #[test]
    fn generic_round_trip_and_phase_range() {
        for psi in generic_states() {
            let (form, u) = schmidt_decompose(&psi).unwrap();
            assert!((0.0..=PI).contains(&form.phi()));
            assert!(u.u_a.unitarity_error() < 1e-12);
            assert!(u.u_b.unitarity_error() < 1e-12);
            assert!(u.u_c.unitarity_error() < 1e-12);
            assert!(u.apply(&psi).fidelity(&form.to_state()) > 1.0 - 1e-12);
        }
    }

    #[test]
    fn closed_forms_match_measures() {
        for psi in generic_states() {
            let (form, _) = schmidt_decompose(&psi).unwrap();
            let r = crate::measures::measure_report(&psi).unwrap();
            assert_abs_diff_eq!(form.c_a_bc(), r.c_a_bc, epsilon = 1e-9);
            assert_abs_diff_eq!(form.c_b_ac(), r.c_b_ac, epsilon = 1e-9);
            assert_abs_diff_eq!(form.pairwise_ab(), r.pc_ab, epsilon = 1e-9);
            assert_abs_diff_eq!(form.tangle(), r.tau, epsilon = 1e-9);
        }
    }

    #[test]
    fn reshaped_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = SchmidtForm::new([h, 0.0, 0.0, 0.0, h], 0.0).unwrap();
        let ab = reshaped_state(&ghz, Pair::AB).unwrap();
        assert_eq!(ab, [h, 0.0, 0.0, h]);

        let a = 0.1f64.sqrt();
        let p5 = SchmidtForm::new([a, 0.0, 2.0 / 5f64.sqrt(), a, 0.0], 0.0).unwrap();
        let ab = reshaped_state(&p5, Pair::AB).unwrap();
        for (x, y) in ab.iter().zip([a, 0.0, 2.0 / 5f64.sqrt(), a]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
        }

        let b = 3.0 / 20f64.sqrt();
        let p6 = SchmidtForm::new([b, 0.0, a, b, 0.0], 0.0).unwrap();
        let bc = reshaped_state(&p6, Pair::BC).unwrap();
        for (x, y) in bc.iter().zip([b, 0.0, b, a]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
        }
    }

    #[test]
    fn transform_bc_examples() {
        let a = 0.1f64.sqrt();
        let p5 = SchmidtForm::new([a, 0.0, 2.0 / 5f64.sqrt(), a, 0.0], 0.0).unwrap();
        let (_, t) = transform_bc(&p5).unwrap();
        let l = t.amplitudes();
        assert_abs_diff_eq!(l[2].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l[3].re, 2.0 / 5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(l[6].re, -(10f64.sqrt()) / 10.0, epsilon = 1e-15);

        // λ₁ = λ₂ = 0 kills l₁ and l₂
        let s = SchmidtForm::new([0.6, 0.0, 0.0, 0.64, 0.48], 0.0).unwrap();
        let (_, t) = transform_bc(&s).unwrap();
        assert_eq!(t.amplitudes()[2].norm(), 0.0);
        assert_eq!(t.amplitudes()[3].norm(), 0.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = SchmidtForm::new([h, 0.0, 0.0, 0.0, h], 0.0).unwrap();
        let (_, t) = transform_bc(&ghz).unwrap();
        assert_abs_diff_eq!(t.amplitudes()[0].norm(), h, epsilon = 1e-15);
        assert_abs_diff_eq!(t.amplitudes()[7].norm(), h, epsilon = 1e-15);
    }

    #[test]
    fn transform_bc_matches_unitaries() {
        for psi in generic_states() {
            let (form, _) = schmidt_decompose(&psi).unwrap();
            let (u, t) = transform_bc(&form).unwrap();
            let applied = u.apply(&form.to_state());
            for (x, y) in applied.amplitudes().iter().zip(t.amplitudes()) {
                assert!((x - y).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn transform_bc_degenerate() {
        let s = SchmidtForm::new([0.6, 0.8, 0.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(transform_bc(&s).unwrap_err(), Error::DegenerateBc);
        assert_eq!(reshaped_state(&s, Pair::BC).unwrap_err(), Error::DegenerateBc);
    }

    #[test]
    fn reshape_route_matches_pairwise() {
        assert_abs_diff_eq!(pairwise_via_reshape(&states::ghz(), Pair::AB).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pairwise_via_reshape(&states::psi5(), Pair::AB).unwrap(), 0.2, epsilon = 1e-12);
        for psi in generic_states() {
            for pair in Pair::ALL {
                let a = pairwise_via_reshape(&psi, pair).unwrap();
                let b = pairwise_concurrence(&psi, pair).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn form_validation() {
        assert!(SchmidtForm::new([1.0, 0.0, 0.0, 0.0, 0.0], 4.0).is_err());
        assert!(SchmidtForm::new([1.0, -0.0, 0.0, 0.0, -0.1], 0.0).is_err());
        assert!(matches!(
            SchmidtForm::new([0.5, 0.0, 0.0, 0.0, 0.0], 0.0),
            Err(Error::NotNormalized { .. })
        ));
    }
}
