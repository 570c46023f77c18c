//! Fixed-dimension complex linear algebra for one-, two- and three-qubit
//! states and operators.
//!
//! Basis convention: |ijk⟩ ↦ index 4i + 2j + k with qubit 1 the most
//! significant bit, and |0⟩ the +1 eigenvector of σ₃. Tensor products are
//! taken in party order, first factor most significant.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Hermiticity validation tolerance (max entrywise |M − M†|).
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Unit-trace / unit-norm validation tolerance.
pub const TRACE_TOL: f64 = 1e-12;
/// Positive-semidefiniteness tolerance: smallest eigenvalue ≥ −PSD_TOL.
pub const PSD_TOL: f64 = 1e-10;
/// Pure-state norm drift below this is normalized away silently; above it the
/// constructor rejects the input.
pub const NORM_DRIFT_TOL: f64 = 1e-9;

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev = 0.0f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            dev = dev.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    dev
}

/// Kronecker product in party order (first factor most significant).
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub(crate) fn identity_matrix(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Raw 2×2 Pauli matrix, `k` ∈ {1, 2, 3}.
pub(crate) fn pauli_matrix(k: usize) -> CMatrix {
    let i = Complex64::new(0.0, 1.0);
    match k {
        1 => CMatrix::from_row_slice(2, 2, &[C_ZERO, C_ONE, C_ONE, C_ZERO]),
        2 => CMatrix::from_row_slice(2, 2, &[C_ZERO, -i, i, C_ZERO]),
        3 => CMatrix::from_row_slice(2, 2, &[C_ONE, C_ZERO, C_ZERO, -C_ONE]),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// A normalized pure three-qubit state; 8 amplitudes a_{ijk}.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: CVector,
}

impl PureState {
    /// Builds a state from the 8 amplitudes in index order. Norm drift below
    /// [`NORM_DRIFT_TOL`] is normalized away; larger drift is rejected.
    /// Amplitudes already normalized to machine precision are kept bit-exact,
    /// so construction is idempotent.
    pub fn new(amplitudes: [Complex64; 8]) -> Result<Self> {
        let v = CVector::from_row_slice(&amplitudes);
        if !v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = v.norm();
        let drift = (norm - 1.0).abs();
        if drift > NORM_DRIFT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        let amps = if drift <= 1e-14 {
            v
        } else {
            v / Complex64::new(norm, 0.0)
        };
        Ok(Self { amps })
    }

    /// Computational basis state |ijk⟩.
    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        assert!(i < 2 && j < 2 && k < 2, "basis labels must be bits");
        let mut amps = [C_ZERO; 8];
        amps[4 * i + 2 * j + k] = C_ONE;
        Self::new(amps).expect("basis state is normalized")
    }

    pub fn amplitude(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.amps[4 * i + 2 * j + k]
    }

    pub fn vector(&self) -> &CVector {
        &self.amps
    }

    /// Applies an 8×8 unitary. The result must still normalize cleanly.
    pub fn transformed(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != 8 || u.ncols() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: u.nrows(),
            });
        }
        let v = u * &self.amps;
        let mut amps = [C_ZERO; 8];
        for (slot, z) in amps.iter_mut().zip(v.iter()) {
            *slot = *z;
        }
        Self::new(amps)
    }
}

/// An 8×8 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerances(m, HERMITICITY_TOL, TRACE_TOL, PSD_TOL)
    }

    /// Construction with explicit validation tolerances. These are fixed at
    /// construction; all later operations rely on the invariants.
    pub fn with_tolerances(
        m: CMatrix,
        hermiticity_tol: f64,
        trace_tol: f64,
        psd_tol: f64,
    ) -> Result<Self> {
        if m.nrows() != 8 || m.ncols() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: m.nrows(),
            });
        }
        if !all_finite(&m) {
            return Err(Error::NonFinite);
        }
        let dev = hermiticity_deviation(&m);
        if dev > hermiticity_tol {
            return Err(Error::NotHermitian(dev));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > trace_tol || tr.im.abs() > trace_tol {
            return Err(Error::TraceNotOne(tr.re));
        }
        let min_eig = min_eigenvalue_raw(&m);
        if min_eig < -psd_tol {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.m[(r, c)]
    }

    /// tr(ρ²).
    pub fn purity(&self) -> f64 {
        let mut s = C_ZERO;
        for r in 0..8 {
            for c in 0..8 {
                s += self.m[(r, c)] * self.m[(c, r)];
            }
        }
        s.re
    }

    /// The same matrix viewed as a plain Hermitian operator.
    pub fn operator(&self) -> HermitianOperator {
        HermitianOperator::new(self.m.clone()).expect("density matrix is Hermitian")
    }
}

/// A d×d Hermitian operator, d ∈ {2, 4, 8}.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    m: CMatrix,
}

impl HermitianOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        let d = m.nrows();
        if !(d == 2 || d == 4 || d == 8) || m.ncols() != d {
            return Err(Error::UnsupportedDimension(d));
        }
        if !all_finite(&m) {
            return Err(Error::NonFinite);
        }
        let dev = hermiticity_deviation(&m);
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { m })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        if !(dim == 2 || dim == 4 || dim == 8) {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(Self {
            m: identity_matrix(dim),
        })
    }

    /// σ_k for k ∈ {1, 2, 3}.
    pub fn pauli(k: usize) -> Self {
        Self {
            m: pauli_matrix(k),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }
}

/// A convex mixture Σ p_k |ψ_k⟩⟨ψ_k| given as its terms.
#[derive(Debug, Clone)]
pub struct Ensemble {
    terms: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(terms: Vec<(f64, PureState)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySettings);
        }
        let mut sum = 0.0;
        for (w, _) in &terms {
            if !w.is_finite() {
                return Err(Error::NonFinite);
            }
            if *w < 0.0 {
                return Err(Error::NegativeWeight(*w));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::WeightsNotNormalized(sum));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(f64, PureState)] {
        &self.terms
    }
}

/// Kronecker product of a sequence of operators, party order.
pub fn tensor(ops: &[HermitianOperator]) -> Result<HermitianOperator> {
    let mut dim = 1usize;
    for op in ops {
        dim *= op.dim();
        if dim > 8 {
            return Err(Error::DimensionOverflow(dim));
        }
    }
    if !(dim == 2 || dim == 4 || dim == 8) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut m = CMatrix::identity(1, 1);
    for op in ops {
        m = kron(&m, op.matrix());
    }
    HermitianOperator::new(m)
}

/// Rank-1 projector |ψ⟩⟨ψ|.
pub fn outer(psi: &PureState) -> DensityMatrix {
    let v = psi.vector();
    let m = v * v.adjoint();
    DensityMatrix::new(m).expect("projector of a normalized state is a density matrix")
}

/// Σ p_k |ψ_k⟩⟨ψ_k| for a validated ensemble.
pub fn mix(e: &Ensemble) -> DensityMatrix {
    let mut m = CMatrix::zeros(8, 8);
    for (w, psi) in e.terms() {
        let v = psi.vector();
        m += (v * v.adjoint()) * Complex64::new(*w, 0.0);
    }
    DensityMatrix::new(m).expect("mixture of valid terms is a density matrix")
}

/// tr(ρ·op) for an 8×8 operator. The imaginary residue must stay below
/// [`HERMITICITY_TOL`]; it is discarded after that check.
pub fn expectation(rho: &DensityMatrix, op: &HermitianOperator) -> Result<f64> {
    if op.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: op.dim(),
        });
    }
    Ok(trace_product(rho.matrix(), op.matrix()))
}

/// tr(A·B) with the imaginary residue asserted away. Callers guarantee both
/// matrices are Hermitian.
pub(crate) fn trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = C_ZERO;
    for r in 0..n {
        for c in 0..n {
            s += a[(r, c)] * b[(c, r)];
        }
    }
    assert!(
        s.im.abs() <= HERMITICITY_TOL,
        "imaginary residue {:.3e} in a trace of Hermitian operators",
        s.im
    );
    s.re
}

fn bit_of(index: usize, party: usize, qubits: usize) -> usize {
    (index >> (qubits - party)) & 1
}

/// Traces out one qubit of an 8×8 density matrix, leaving the remaining
/// ordered pair as a 4×4 operator. `party` ∈ 1..=3.
pub fn partial_trace(rho: &DensityMatrix, party: usize) -> Result<HermitianOperator> {
    if !(1..=3).contains(&party) {
        return Err(Error::InvalidParty { party, dim: 8 });
    }
    let keep: Vec<usize> = (1..=3).filter(|p| *p != party).collect();
    let mut out = CMatrix::zeros(4, 4);
    for r in 0..8 {
        for c in 0..8 {
            if bit_of(r, party, 3) != bit_of(c, party, 3) {
                continue;
            }
            let rr = 2 * bit_of(r, keep[0], 3) + bit_of(r, keep[1], 3);
            let cc = 2 * bit_of(c, keep[0], 3) + bit_of(c, keep[1], 3);
            out[(rr, cc)] += rho.entry(r, c);
        }
    }
    HermitianOperator::new(out)
}

/// Transposes the named qubit factor of a 4×4 or 8×8 operator. A pure entry
/// permutation, so applying it twice restores the input bit-exactly.
pub fn partial_transpose(op: &HermitianOperator, party: usize) -> Result<HermitianOperator> {
    let dim = op.dim();
    let qubits = match dim {
        4 => 2,
        8 => 3,
        _ => return Err(Error::UnsupportedDimension(dim)),
    };
    if !(1..=qubits).contains(&party) {
        return Err(Error::InvalidParty { party, dim });
    }
    let shift = qubits - party;
    let mask = 1usize << shift;
    let mut out = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            // swap the party bit between row and column index
            let rr = (r & !mask) | (c & mask);
            let cc = (c & !mask) | (r & mask);
            out[(rr, cc)] = op.matrix()[(r, c)];
        }
    }
    HermitianOperator::new(out)
}

fn min_eigenvalue_raw(m: &CMatrix) -> f64 {
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Smallest eigenvalue of a Hermitian operator.
pub fn min_eigenvalue(op: &HermitianOperator) -> f64 {
    min_eigenvalue_raw(op.matrix())
}

/// Per-party PPT verdicts: λ_min of each single-party partial transpose
/// compared against −tol.
#[derive(Debug, Clone, PartialEq)]
pub struct PptReport {
    pub min_eigenvalues: [f64; 3],
    pub per_party: [bool; 3],
    pub all_parties: bool,
}

pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> PptReport {
    let op = rho.operator();
    let mut min_eigenvalues = [0.0f64; 3];
    let mut per_party = [false; 3];
    for party in 1..=3 {
        let pt = partial_transpose(&op, party).expect("party index in range");
        let min = min_eigenvalue(&pt);
        min_eigenvalues[party - 1] = min;
        per_party[party - 1] = min >= -tol;
    }
    PptReport {
        min_eigenvalues,
        per_party,
        all_parties: per_party.iter().all(|b| *b),
    }
}
