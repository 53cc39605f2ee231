//! Entanglement measures for three-qubit pure states.
//!
//! All bipartite quantities are computed basis-independently: cut
//! concurrences from the 2×2 minors of the cut's coefficient matrix, reduced
//! concurrences from the Wootters formula on the two-qubit marginal. The
//! three-tangle is the residual `C²_{A(BC)} − C²_AB − C²_AC`; the Cayley
//! hyperdeterminant is exposed separately as an independent cross-check.

use crate::error::{Error, Result};
use crate::linalg::{
    clamp_psd, singular_values, ComplexMatrix, DensityMatrix, Pair, PureState3,
    Qubit, C64, ZERO,
};

/// Measures may overshoot `[0, 1]` by this much before it counts as a bug.
pub const RANGE_TOL: f64 = 1e-9;
/// Three-tangle values below this are rounding residue of the difference of
/// squared concurrences and are set to 0; `√τ` would otherwise lift them to
/// ~1e-8 in the pairwise concurrences.
pub const TANGLE_FLOOR: f64 = 1e-14;
/// Squared cut concurrences below this are rounding residue of the minors
/// of a product cut and are set to 0, so that the cube root in GBC does not
/// turn them into ~1e-6.
pub const CUT_FLOOR_SQ: f64 = 1e-28;

/// Clamp into `[0, 1]` after checking the value is within rounding of it.
pub(crate) fn unit_interval(quantity: &'static str, value: f64) -> Result<f64> {
    if !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&value) {
        return Err(Error::Inconsistent { quantity, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Coefficient matrix of the cut `side | rest`: rows indexed by `side`'s
/// bit, columns by the remaining two bits in A < B < C order.
fn cut_matrix(psi: &PureState3, side: Qubit) -> [[C64; 4]; 2] {
    let mut m = [[ZERO; 4]; 2];
    let (x, y) = side.others();
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        let bit = |q: Qubit| (idx >> (2 - q.index())) & 1;
        m[bit(side)][2 * bit(x) + bit(y)] = amp;
    }
    m
}

/// `C²` across the cut, as `4 Σ_{j<k} |m₀ⱼm₁ₖ − m₀ₖm₁ⱼ|²`.
///
/// Equal to `4 det ρ_side = 2(1 − Tr ρ²_side)` by the Lagrange identity, but
/// stays accurate to machine precision for nearly product states.
fn cut_concurrence_sq(psi: &PureState3, side: Qubit) -> f64 {
    let m = cut_matrix(psi, side);
    let mut s = 0.0;
    for j in 0..4 {
        for k in (j + 1)..4 {
            s += (m[0][j] * m[1][k] - m[0][k] * m[1][j]).norm_sqr();
        }
    }
    let c_sq = 4.0 * s;
    if c_sq < CUT_FLOOR_SQ {
        0.0
    } else {
        c_sq
    }
}

/// Concurrence between `side` and the other two qubits.
pub fn bipartite_concurrence(psi: &PureState3, side: Qubit) -> Result<f64> {
    unit_interval("bipartite concurrence", cut_concurrence_sq(psi, side).sqrt())
}

/// Two-qubit pure-state concurrence `2|ps − qr|` for `p|00⟩ + q|01⟩ + r|10⟩ + s|11⟩`.
pub fn pure_concurrence_2q(phi: &[C64; 4]) -> Result<f64> {
    crate::linalg::check_normalized(phi)?;
    let [p, q, r, s] = *phi;
    unit_interval("pure two-qubit concurrence", 2.0 * (p * s - q * r).norm())
}

/// `σy ⊗ σy`, which is real.
fn spin_flip_operator() -> [[f64; 4]; 4] {
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
}

/// Spin-flipped state `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    let y = spin_flip_operator();
    let y = ComplexMatrix::from_real(4, 4, &y.concat()).unwrap();
    &(&y * &rho.matrix().conj()) * &y
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// With `ρ = Σⱼ |vⱼ⟩⟨vⱼ|` over subnormalized eigenvectors, the square roots of
/// the eigenvalues of `√ρ ρ̃ √ρ` are the singular values of the symmetric
/// matrix `Tᵢⱼ = vᵢᵀ (σy⊗σy) vⱼ`. Taking them from the Hermitian dilation of
/// `T` avoids the square-root amplification of rounding noise that the
/// eigenvalues of `√ρ ρ̃ √ρ` suffer on rank-deficient inputs.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: "4x4 two-qubit density matrix".into(),
            found: format!("{0}x{0}", rho.dim()),
        });
    }
    let eig = rho.eigen();
    let mut vectors = Vec::with_capacity(4);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let lambda = clamp_psd(lambda)?;
        if lambda > 0.0 {
            let w = lambda.sqrt();
            let v = eig.vector(k);
            vectors.push(std::array::from_fn(|a| v[a] * w));
        }
    }
    concurrence_from_factor(&vectors)
}

/// Wootters concurrence of `ρ = Σⱼ |vⱼ⟩⟨vⱼ|` for any such factorization; the
/// singular values of `T` do not depend on which one is used.
fn concurrence_from_factor(vectors: &[[C64; 4]]) -> Result<f64> {
    let y = spin_flip_operator();
    let r = vectors.len();
    if r == 0 {
        return Ok(0.0);
    }
    let mut t = ComplexMatrix::zeros(r, r);
    for i in 0..r {
        // (σy⊗σy) vᵢ
        let yv: [C64; 4] = std::array::from_fn(|a| (0..4).map(|b| vectors[i][b] * y[a][b]).sum());
        for j in 0..r {
            t[(i, j)] = (0..4).map(|a| vectors[j][a] * yv[a]).sum();
        }
    }
    let sv = singular_values(&t);
    let c = sv[0] - sv[1..].iter().sum::<f64>();
    unit_interval("Wootters concurrence", c.max(0.0))
}

/// Reduced concurrence of `pair` for a pure state. The marginal is
/// `Σₖ |φₖ⟩⟨φₖ|` with `φₖ = ⟨k|ψ⟩` on the traced qubit, so no
/// eigendecomposition (and no square root of a rounding-level eigenvalue)
/// is needed.
fn reduced_concurrence(psi: &PureState3, pair: Pair) -> Result<f64> {
    let (x, y) = pair.qubits();
    let z = pair.complement();
    let mut phi = [[ZERO; 4]; 2];
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        let bit = |q: Qubit| (idx >> (2 - q.index())) & 1;
        phi[bit(z)][2 * bit(x) + bit(y)] = amp;
    }
    concurrence_from_factor(&phi)
}

/// Cayley hyperdeterminant of the amplitude tensor.
pub fn hyperdeterminant(psi: &PureState3) -> C64 {
    hyperdet_of(psi.amplitudes())
}

/// Hyperdeterminant of an arbitrary (unnormalized) amplitude tensor.
pub(crate) fn hyperdet_of(amps: &[C64; 8]) -> C64 {
    let a = |i: usize, j: usize, k: usize| amps[4 * i + 2 * j + k];
    let (a000, a001, a010, a011) = (a(0, 0, 0), a(0, 0, 1), a(0, 1, 0), a(0, 1, 1));
    let (a100, a101, a110, a111) = (a(1, 0, 0), a(1, 0, 1), a(1, 1, 0), a(1, 1, 1));
    let d1 = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    d1 - 2.0 * d2 + 4.0 * d3
}

/// Three-tangle as `4|Hdet(ψ)|`; the cross-check route.
pub fn hyperdeterminant_tangle(psi: &PureState3) -> f64 {
    4.0 * hyperdeterminant(psi).norm()
}

/// All bipartite ingredients of one state, computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concurrences {
    /// Squared cut concurrences `C²_{A(BC)}, C²_{B(AC)}, C²_{C(AB)}`.
    pub cut_sq: [f64; 3],
    /// Reduced concurrences `C_AB, C_AC, C_BC`.
    pub reduced: [f64; 3],
    /// Three-tangle (clamped at 0).
    pub tau: f64,
}

impl Concurrences {
    pub fn compute(psi: &PureState3) -> Result<Self> {
        let cut_sq = Qubit::ALL.map(|q| cut_concurrence_sq(psi, q));
        for &c in &cut_sq {
            unit_interval("squared bipartite concurrence", c)?;
        }
        let mut reduced = [0.0; 3];
        for (slot, pair) in reduced.iter_mut().zip(Pair::ALL) {
            *slot = reduced_concurrence(psi, pair)?;
        }
        let raw = cut_sq[0] - reduced[0].powi(2) - reduced[1].powi(2);
        if raw < -RANGE_TOL {
            return Err(Error::Inconsistent {
                quantity: "three-tangle",
                value: raw,
            });
        }
        let tau = if raw < TANGLE_FLOOR {
            0.0
        } else {
            unit_interval("three-tangle", raw)?
        };
        Ok(Concurrences {
            cut_sq,
            reduced,
            tau,
        })
    }

    pub fn cut(&self, side: Qubit) -> f64 {
        self.cut_sq[side.index()].sqrt().min(1.0)
    }

    pub fn reduced(&self, pair: Pair) -> f64 {
        self.reduced[pair as usize]
    }

    pub fn pairwise(&self, pair: Pair) -> Result<f64> {
        unit_interval(
            "pairwise concurrence",
            (self.reduced(pair).powi(2) + self.tau).sqrt(),
        )
    }
}

/// Three-tangle `τ = C²_{A(BC)} − C²_AB − C²_AC`.
pub fn three_tangle(psi: &PureState3) -> Result<f64> {
    Ok(Concurrences::compute(psi)?.tau)
}

/// Pairwise concurrence `√(C²_pair + τ)`.
pub fn pairwise_concurrence(psi: &PureState3, pair: Pair) -> Result<f64> {
    Concurrences::compute(psi)?.pairwise(pair)
}

/// Minimum pairwise concurrence.
pub fn mpc(psi: &PureState3) -> Result<f64> {
    Ok(measure_report(psi)?.mpc)
}

/// Genuinely multipartite concurrence: the smallest cut concurrence.
pub fn gmc(psi: &PureState3) -> Result<f64> {
    let c = Concurrences::compute(psi)?;
    Ok(Qubit::ALL.map(|q| c.cut(q)).into_iter().fold(1.0, f64::min))
}

/// Concurrence fill from squared cut concurrences (Heron's formula,
/// normalized so the GHZ triangle has area 1). The radicand is clamped at 0.
fn fill_from_cuts(cut_sq: [f64; 3]) -> Result<f64> {
    let q = 0.5 * cut_sq.iter().sum::<f64>();
    let inner = 16.0 / 3.0 * q * (q - cut_sq[0]) * (q - cut_sq[1]) * (q - cut_sq[2]);
    unit_interval("concurrence fill", inner.max(0.0).powf(0.25))
}

pub fn concurrence_fill(psi: &PureState3) -> Result<f64> {
    fill_from_cuts(Qubit::ALL.map(|q| cut_concurrence_sq(psi, q)))
}

/// Geometric mean of the three cut concurrences. Each cut has one qubit on
/// a side, so the regularization factor is 1.
fn gbc_from_cuts(cuts: [f64; 3]) -> Result<f64> {
    unit_interval("GBC", (cuts[0] * cuts[1] * cuts[2]).cbrt())
}

pub fn gbc(psi: &PureState3) -> Result<f64> {
    let cuts = Qubit::ALL.map(|q| cut_concurrence_sq(psi, q).sqrt());
    gbc_from_cuts(cuts)
}

/// Every measure for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub c_a_bc: f64,
    pub c_b_ac: f64,
    pub c_c_ab: f64,
    pub c_ab: f64,
    pub c_ac: f64,
    pub c_bc: f64,
    pub tau: f64,
    pub pc_ab: f64,
    pub pc_ac: f64,
    pub pc_bc: f64,
    pub mpc: f64,
    pub gmc: f64,
    pub fill: f64,
    pub gbc: f64,
    /// Pair attaining the MPC (first in AB, AC, BC order on ties).
    pub mpc_pair: Pair,
    /// Cut attaining the GMC (first in A, B, C order on ties).
    pub gmc_cut: Qubit,
}

impl MeasureReport {
    pub const FIELD_NAMES: [&'static str; 14] = [
        "c_a_bc", "c_b_ac", "c_c_ab", "c_ab", "c_ac", "c_bc", "tau", "pc_ab", "pc_ac", "pc_bc",
        "mpc", "gmc", "fill", "gbc",
    ];

    pub fn values(&self) -> [f64; 14] {
        [
            self.c_a_bc, self.c_b_ac, self.c_c_ab, self.c_ab, self.c_ac, self.c_bc, self.tau,
            self.pc_ab, self.pc_ac, self.pc_bc, self.mpc, self.gmc, self.fill, self.gbc,
        ]
    }

    pub fn fields(&self) -> impl Iterator<Item = (&'static str, f64)> {
        Self::FIELD_NAMES.into_iter().zip(self.values())
    }

    /// Largest absolute difference over all numeric fields.
    pub fn max_abs_diff(&self, other: &MeasureReport) -> f64 {
        self.values()
            .iter()
            .zip(other.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn cut(&self, side: Qubit) -> f64 {
        match side {
            Qubit::A => self.c_a_bc,
            Qubit::B => self.c_b_ac,
            Qubit::C => self.c_c_ab,
        }
    }

    pub fn reduced(&self, pair: Pair) -> f64 {
        match pair {
            Pair::AB => self.c_ab,
            Pair::AC => self.c_ac,
            Pair::BC => self.c_bc,
        }
    }

    pub fn pairwise(&self, pair: Pair) -> f64 {
        match pair {
            Pair::AB => self.pc_ab,
            Pair::AC => self.pc_ac,
            Pair::BC => self.pc_bc,
        }
    }
}

fn argmin<T: Copy>(items: [(T, f64); 3]) -> (T, f64) {
    let mut best = items[0];
    for &item in &items[1..] {
        if item.1 < best.1 {
            best = item;
        }
    }
    best
}

pub fn measure_report(psi: &PureState3) -> Result<MeasureReport> {
    let c = Concurrences::compute(psi)?;
    let cuts = Qubit::ALL.map(|q| c.cut(q));
    let pcs = [
        c.pairwise(Pair::AB)?,
        c.pairwise(Pair::AC)?,
        c.pairwise(Pair::BC)?,
    ];
    let (mpc_pair, mpc) = argmin([(Pair::AB, pcs[0]), (Pair::AC, pcs[1]), (Pair::BC, pcs[2])]);
    let (gmc_cut, gmc) = argmin([(Qubit::A, cuts[0]), (Qubit::B, cuts[1]), (Qubit::C, cuts[2])]);
    Ok(MeasureReport {
        c_a_bc: cuts[0],
        c_b_ac: cuts[1],
        c_c_ab: cuts[2],
        c_ab: c.reduced[0],
        c_ac: c.reduced[1],
        c_bc: c.reduced[2],
        tau: c.tau,
        pc_ab: pcs[0],
        pc_ac: pcs[1],
        pc_bc: pcs[2],
        mpc,
        gmc,
        fill: fill_from_cuts(c.cut_sq)?,
        gbc: gbc_from_cuts(cuts)?,
        mpc_pair,
        gmc_cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eig, partial_trace, psd_sqrt};
    use crate::states;
    use approx::assert_abs_diff_eq;

    /// Oracle: √(2(1 − Tr ρ²)) of the single-qubit marginal.
    fn purity_concurrence(psi: &PureState3, side: Qubit) -> f64 {
        let r = partial_trace(&psi.density(), &[side]).unwrap();
        (2.0 * (1.0 - r.purity())).max(0.0).sqrt()
    }

    /// Oracle: textbook route through the eigenvalues of √ρ ρ̃ √ρ.
    fn wootters_via_r_matrix(rho: &DensityMatrix) -> f64 {
        let s = psd_sqrt(rho.matrix()).unwrap();
        let r = &(&s * &spin_flip(rho)) * &s;
        let mu = hermitian_eig(&r.hermitian_part()).unwrap().values;
        let l: Vec<f64> = mu.iter().map(|m| m.max(0.0).sqrt()).collect();
        (l[0] - l[1] - l[2] - l[3]).max(0.0)
    }

    fn sample_states() -> Vec<PureState3> {
        // deterministic, generic complex states
        (0..20)
            .map(|s| {
                let amps = std::array::from_fn(|i| {
                    let x = (s * 8 + i) as f64;
                    C64::new((1.3 * x).sin() + 0.2, (0.7 * x + 0.4).cos())
                });
                PureState3::normalized(amps).unwrap()
            })
            .collect()
    }

    #[test]
    fn bipartite_concurrence_named_states() {
        assert_abs_diff_eq!(bipartite_concurrence(&states::ghz(), Qubit::A).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(bipartite_concurrence(&states::psi6(), Qubit::C).unwrap(), 0.6, epsilon = 1e-12);
        let w_expected = 2.0 * 2f64.sqrt() / 3.0;
        assert_abs_diff_eq!(bipartite_concurrence(&states::w(), Qubit::A).unwrap(), w_expected, epsilon = 1e-12);
    }

    #[test]
    fn bipartite_concurrence_matches_purity_route() {
        for psi in sample_states() {
            for q in Qubit::ALL {
                let a = bipartite_concurrence(&psi, q).unwrap();
                assert_abs_diff_eq!(a, purity_concurrence(&psi, q), epsilon = 1e-7);
                assert_abs_diff_eq!(a * a, 2.0 * (1.0 - partial_trace(&psi.density(), &[q]).unwrap().purity()), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn wootters_examples() {
        let ghz_ab = partial_trace(&states::ghz().density(), &[Qubit::A, Qubit::B]).unwrap();
        assert_abs_diff_eq!(wootters_concurrence(&ghz_ab).unwrap(), 0.0, epsilon = 1e-12);
        let w_ab = partial_trace(&states::w().density(), &[Qubit::A, Qubit::B]).unwrap();
        assert_abs_diff_eq!(wootters_concurrence(&w_ab).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
        let mixed = DensityMatrix::new(ComplexMatrix::identity(4).scale_real(0.25)).unwrap();
        assert_eq!(wootters_concurrence(&mixed).unwrap(), 0.0);
    }

    #[test]
    fn wootters_rejects_wrong_dimension() {
        let rho = states::ghz().density();
        assert!(matches!(wootters_concurrence(&rho), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn wootters_matches_r_matrix_route() {
        for psi in sample_states() {
            for pair in Pair::ALL {
                let (x, y) = pair.qubits();
                let rho = partial_trace(&psi.density(), &[x, y]).unwrap();
                let fast = wootters_concurrence(&rho).unwrap();
                assert_abs_diff_eq!(fast, wootters_via_r_matrix(&rho), epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn wootters_on_full_rank_werner_state() {
        // Werner state F|ψ⁻⟩⟨ψ⁻| + (1−F)/3 (I − |ψ⁻⟩⟨ψ⁻|) has C = max(0, 2F − 1)
        for f in [0.2, 0.5, 0.7, 0.95] {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let singlet = [ZERO, C64::new(h, 0.0), C64::new(-h, 0.0), ZERO];
            let proj = ComplexMatrix::outer(&singlet);
            let rest = &ComplexMatrix::identity(4) - &proj;
            let m = &proj.scale_real(f) + &rest.scale_real((1.0 - f) / 3.0);
            let rho = DensityMatrix::new(m).unwrap();
            let c = wootters_concurrence(&rho).unwrap();
            assert_abs_diff_eq!(c, (2.0 * f - 1.0).max(0.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn pure_two_qubit_concurrence() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = |v: [f64; 4]| pure_concurrence_2q(&v.map(|x| C64::new(x, 0.0))).unwrap();
        assert_eq!(c([1.0, 0.0, 0.0, 0.0]), 0.0);
        assert_abs_diff_eq!(c([h, 0.0, 0.0, h]), 1.0, epsilon = 1e-15);
        let a = 0.1f64.sqrt();
        let b = 2.0 / 5.0f64.sqrt();
        assert_abs_diff_eq!(c([a, 0.0, a, b]), 4.0 / 50f64.sqrt(), epsilon = 1e-15);
        assert!(pure_concurrence_2q(&[C64::new(0.5, 0.0), ZERO, ZERO, ZERO]).is_err());
    }

    #[test]
    fn three_tangle_examples() {
        assert_abs_diff_eq!(three_tangle(&states::ghz()).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(three_tangle(&states::w()).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hyperdeterminant_tangle(&states::ghz()), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hyperdeterminant_tangle(&states::w()), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn three_tangle_agrees_with_hyperdeterminant() {
        for psi in sample_states() {
            let t = three_tangle(&psi).unwrap();
            assert_abs_diff_eq!(t, hyperdeterminant_tangle(&psi), epsilon = 1e-8);
        }
    }

    #[test]
    fn pairwise_and_mpc_named_states() {
        for pair in Pair::ALL {
            assert_abs_diff_eq!(pairwise_concurrence(&states::ghz(), pair).unwrap(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(pairwise_concurrence(&states::w(), pair).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(pairwise_concurrence(&states::psi5(), Pair::AB).unwrap(), 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(mpc(&states::ghz()).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mpc(&states::psi6()).unwrap(), 6.0 / 200f64.sqrt(), epsilon = 1e-12);
        assert_eq!(mpc(&states::product_zero()).unwrap(), 0.0);
    }

    #[test]
    fn gmc_examples() {
        assert_abs_diff_eq!(gmc(&states::psi5()).unwrap(), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(gmc(&states::psi6()).unwrap(), 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(gmc(&states::ghz()).unwrap(), 1.0, epsilon = 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // |0⟩ ⊗ (|00⟩ + |11⟩)/√2
        let bisep = PureState3::from_real([h, 0.0, 0.0, h, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(gmc(&bisep).unwrap(), 0.0);
        assert_eq!(mpc(&bisep).unwrap(), 0.0);
    }

    #[test]
    fn fill_examples() {
        assert_abs_diff_eq!(concurrence_fill(&states::ghz()).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(concurrence_fill(&states::product_zero()).unwrap(), 0.0);
        // all three squared sides 8/9: (16/3 · 4/3 · (4/9)³)^{1/4} = 8/9
        assert_abs_diff_eq!(concurrence_fill(&states::w()).unwrap(), 8.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn gbc_examples() {
        assert_abs_diff_eq!(gbc(&states::ghz()).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(gbc(&states::product_zero()).unwrap(), 0.0);
        let psi = states::psi5();
        let cuts: Vec<f64> = Qubit::ALL.iter().map(|&q| purity_concurrence(&psi, q)).collect();
        let expected = (cuts[0] * cuts[1] * cuts[2]).cbrt();
        assert_abs_diff_eq!(gbc(&psi).unwrap(), expected, epsilon = 1e-7);
        assert_abs_diff_eq!(cuts[0], 0.6, epsilon = 1e-7);
    }

    #[test]
    fn report_named_states() {
        let r = measure_report(&states::ghz()).unwrap();
        for v in [r.mpc, r.gmc, r.fill, r.gbc, r.tau] {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
        }
        let r = measure_report(&states::psi5()).unwrap();
        assert_abs_diff_eq!(r.mpc, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.gmc, 0.6, epsilon = 1e-12);
        let r = measure_report(&states::w()).unwrap();
        assert_abs_diff_eq!(r.mpc, 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.tau, 0.0, epsilon = 1e-12);
        for c in [r.c_ab, r.c_ac, r.c_bc] {
            assert_abs_diff_eq!(c, 2.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn report_invariants_hold() {
        for psi in sample_states() {
            let r = measure_report(&psi).unwrap();
            for pair in Pair::ALL {
                assert_abs_diff_eq!(r.pairwise(pair).powi(2), r.reduced(pair).powi(2) + r.tau, epsilon = 1e-9);
            }
            assert_eq!(r.mpc, r.pc_ab.min(r.pc_ac).min(r.pc_bc));
            assert_eq!(r.gmc, r.c_a_bc.min(r.c_b_ac).min(r.c_c_ab));
            assert_eq!(r.pairwise(r.mpc_pair), r.mpc);
            assert_eq!(r.cut(r.gmc_cut), r.gmc);
        }
    }

    #[test]
    fn unit_interval_guards() {
        assert_eq!(unit_interval("x", -5e-10).unwrap(), 0.0);
        assert_eq!(unit_interval("x", 1.0 + 5e-10).unwrap(), 1.0);
        assert!(unit_interval("x", -1e-8).is_err());
        assert!(unit_interval("x", f64::NAN).is_err());
    }
}
