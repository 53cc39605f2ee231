//! Small dense complex linear algebra: matrices up to 8×8, Kronecker
//! products, partial traces over qubits and a Hermitian Jacobi eigensolver.
//!
//! Basis ordering is fixed project-wide: qubit A is the most significant bit,
//! so `|ijk⟩` sits at index `4i + 2j + k`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Absolute tolerance for the Hermiticity check.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `(-EIGEN_CLAMP, 0)` are rounding noise and clamp to zero.
pub const EIGEN_CLAMP: f64 = 1e-10;
/// Normalization tolerance on `Σ|a|²`.
pub const NORM_TOL: f64 = 1e-10;

const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// One of the three qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The other two qubits, in A < B < C order.
    pub fn others(self) -> (Qubit, Qubit) {
        match self {
            Qubit::A => (Qubit::B, Qubit::C),
            Qubit::B => (Qubit::A, Qubit::C),
            Qubit::C => (Qubit::A, Qubit::B),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Qubit::A => "A",
            Qubit::B => "B",
            Qubit::C => "C",
        }
    }

    /// Label of the bipartite cut separating this qubit, e.g. `A|BC`.
    pub fn cut_label(self) -> &'static str {
        match self {
            Qubit::A => "A|BC",
            Qubit::B => "B|AC",
            Qubit::C => "C|AB",
        }
    }
}

/// An unordered pair of qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::AC, Pair::BC];

    pub fn qubits(self) -> (Qubit, Qubit) {
        match self {
            Pair::AB => (Qubit::A, Qubit::B),
            Pair::AC => (Qubit::A, Qubit::C),
            Pair::BC => (Qubit::B, Qubit::C),
        }
    }

    /// The qubit not in the pair.
    pub fn complement(self) -> Qubit {
        match self {
            Pair::AB => Qubit::C,
            Pair::AC => Qubit::B,
            Pair::BC => Qubit::A,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::AB => "AB",
            Pair::AC => "AC",
            Pair::BC => "BC",
        }
    }
}

/// Dense complex matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols} entries"),
                found: data.len().to_string(),
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let vals: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&vals)
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M[i][j] − conj(M[j][i])|`; infinite for non-square input.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() <= HERMITIAN_TOL
    }

    /// Frobenius distance of `M†M` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let g = &self.adjoint() * self;
        (&g - &Self::identity(self.cols)).frobenius_norm()
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "vector length must match matrix columns");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Hermitian eigendecomposition: `m = V diag(values) V†`, values descending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::diag_real(&self.values);
        &(&self.vectors * &d) * &self.vectors.adjoint()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of `a[p][q]` with a diagonal phase
/// and then applies the real symmetric Jacobi rotation, so the accumulated
/// transform stays unitary.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Eigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{}x{}", m.rows, m.cols),
        });
    }
    let deviation = m.hermiticity_error();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * a.frobenius_norm().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let g00 = C64::new(c, 0.0);
                let g01 = C64::new(s, 0.0);
                let g10 = -phase.conj() * s;
                let g11 = phase.conj() * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g00 + akq * g10;
                    a[(k, q)] = akp * g01 + akq * g11;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g00.conj() * apk + g10.conj() * aqk;
                    a[(q, k)] = g01.conj() * apk + g11.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g00 + vkq * g10;
                    v[(k, q)] = vkp * g01 + vkq * g11;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }
    Ok(Eigen { values, vectors })
}

/// Clamp an eigenvalue of a positive-semidefinite matrix.
pub(crate) fn clamp_psd(value: f64) -> Result<f64> {
    if value < -EIGEN_CLAMP {
        Err(Error::NegativeEigenvalue { value })
    } else {
        Ok(value.max(0.0))
    }
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let roots = eig
        .values
        .iter()
        .map(|&x| clamp_psd(x).map(f64::sqrt))
        .collect::<Result<Vec<_>>>()?;
    let d = ComplexMatrix::diag_real(&roots);
    Ok(&(&eig.vectors * &d) * &eig.vectors.adjoint())
}

/// Singular values (descending) via the Hermitian dilation `[[0, M], [M†, 0]]`,
/// whose spectrum is `±σᵢ`. Avoids squaring, so small singular values keep
/// absolute accuracy near machine epsilon.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let (r, c) = (m.rows, m.cols);
    let mut h = ComplexMatrix::zeros(r + c, r + c);
    for i in 0..r {
        for j in 0..c {
            h[(i, r + j)] = m[(i, j)];
            h[(r + j, i)] = m[(i, j)].conj();
        }
    }
    let eig = hermitian_eig(&h).expect("dilation is Hermitian by construction");
    eig.values
        .into_iter()
        .take(r.min(c))
        .map(|s| s.max(0.0))
        .collect()
}

/// Hermitian, unit-trace, positive-semidefinite matrix on 1–3 qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || !matches!(m.rows, 2 | 4 | 8) {
            return Err(Error::DimensionMismatch {
                expected: "2x2, 4x4 or 8x8".into(),
                found: format!("{}x{}", m.rows, m.cols),
            });
        }
        let eig = hermitian_eig(&m)?;
        let trace = m.trace().re;
        if (trace - 1.0).abs() > NORM_TOL {
            return Err(Error::BadTrace { trace });
        }
        if let Some(&min) = eig.values.last() {
            clamp_psd(min)?;
        }
        Ok(DensityMatrix(m))
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket of dimension 2, 4 or 8.
    pub fn from_ket(ket: &[C64]) -> Result<Self> {
        if !matches!(ket.len(), 2 | 4 | 8) {
            return Err(Error::DimensionMismatch {
                expected: "ket of length 2, 4 or 8".into(),
                found: ket.len().to_string(),
            });
        }
        check_normalized(ket)?;
        Ok(DensityMatrix(ComplexMatrix::outer(ket)))
    }

    pub fn from_pure(psi: &PureState3) -> Self {
        DensityMatrix(ComplexMatrix::outer(psi.amplitudes()))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        // Tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.0.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn eigen(&self) -> Eigen {
        hermitian_eig(&self.0).expect("density matrices are Hermitian")
    }
}

/// Reduced state on the qubits in `keep` (positions refer to the input's
/// register: A = most significant).
pub fn partial_trace(rho: &DensityMatrix, keep: &[Qubit]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    let mut kept: Vec<usize> = keep.iter().map(|q| q.index()).collect();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.is_empty() || kept.len() >= n {
        return Err(Error::InvalidKeepSet);
    }
    if kept.iter().any(|&q| q >= n) {
        return Err(Error::DimensionMismatch {
            expected: format!("qubits of a {n}-qubit register"),
            found: format!("{keep:?}"),
        });
    }
    let shift = |q: usize| n - 1 - q;
    let kept_mask: usize = kept.iter().map(|&q| 1 << shift(q)).sum();
    let sub_index = |i: usize| {
        kept.iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((i >> shift(q)) & 1))
    };
    let dim = rho.dim();
    let out_dim = 1 << kept.len();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for i in 0..dim {
        for j in 0..dim {
            if (i & !kept_mask) == (j & !kept_mask) {
                out[(sub_index(i), sub_index(j))] += m[(i, j)];
            }
        }
    }
    Ok(DensityMatrix(out))
}

pub(crate) fn check_normalized(v: &[C64]) -> Result<()> {
    let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > NORM_TOL {
        Err(Error::NotNormalized { norm_sq })
    } else {
        Ok(())
    }
}

/// Normalized three-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState3([C64; 8]);

impl PureState3 {
    pub fn new(amplitudes: [C64; 8]) -> Result<Self> {
        check_normalized(&amplitudes)?;
        Ok(PureState3(amplitudes))
    }

    /// Rescales to unit norm; fails only on the zero vector.
    pub fn normalized(mut amplitudes: [C64; 8]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::ZeroVector);
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(PureState3(amplitudes))
    }

    pub fn from_real(amplitudes: [f64; 8]) -> Result<Self> {
        Self::new(amplitudes.map(|x| C64::new(x, 0.0)))
    }

    pub fn basis(index: usize) -> Self {
        let mut a = [ZERO; 8];
        a[index] = ONE;
        PureState3(a)
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.0
    }

    /// Amplitude of `|ijk⟩`.
    pub fn amp(&self, i: usize, j: usize, k: usize) -> C64 {
        self.0[4 * i + 2 * j + k]
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState3) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &PureState3) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `(a ⊗ b ⊗ c)|ψ⟩` for arbitrary 2×2 operators; the result is not
    /// renormalized.
    pub fn apply_local(&self, a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> [C64; 8] {
        let mut out = [ZERO; 8];
        for (idx, slot) in out.iter_mut().enumerate() {
            let (i, j, k) = (idx >> 2, (idx >> 1) & 1, idx & 1);
            let mut acc = ZERO;
            for (src, amp) in self.0.iter().enumerate() {
                if *amp == ZERO {
                    continue;
                }
                let (x, y, z) = (src >> 2, (src >> 1) & 1, src & 1);
                acc += a[(i, x)] * b[(j, y)] * c[(k, z)] * amp;
            }
            *slot = acc;
        }
        out
    }

    /// A single-qubit operator on `qubit`, identity elsewhere.
    pub fn apply_on(&self, qubit: Qubit, op: &ComplexMatrix) -> [C64; 8] {
        let id = ComplexMatrix::identity(2);
        match qubit {
            Qubit::A => self.apply_local(op, &id, &id),
            Qubit::B => self.apply_local(&id, op, &id),
            Qubit::C => self.apply_local(&id, &id, op),
        }
    }
}
