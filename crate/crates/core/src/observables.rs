//! Single-qubit observables from Bloch vectors, complete sets of three
//! complementary observables, and their orientation.
//!
//! A triple {A₁, A₂, A₃} built from orthonormal Bloch vectors satisfies
//! −iA₁A₂A₃ = μ·I with μ = ±1; μ equals the determinant of the 3×3 matrix
//! whose rows are the Bloch vectors.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{pauli_matrix, CMatrix, HermitianOperator};

/// Orthonormality / unitarity / orientation validation tolerance.
pub const TRIPLE_TOL: f64 = 1e-10;

/// A unit vector on the Bloch sphere; `observable()` gives v·σ⃗.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > TRIPLE_TOL {
            return Err(Error::NotUnitVector(norm));
        }
        Ok(Self { x, y, z })
    }

    pub fn components(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// v·σ⃗ as a 2×2 Hermitian matrix (traceless, eigenvalues ±1).
    pub fn observable(&self) -> HermitianOperator {
        HermitianOperator::new(self.observable_matrix()).expect("v·σ is Hermitian")
    }

    pub(crate) fn observable_matrix(&self) -> CMatrix {
        let mut m = pauli_matrix(1) * Complex64::new(self.x, 0.0);
        m += pauli_matrix(2) * Complex64::new(self.y, 0.0);
        m += pauli_matrix(3) * Complex64::new(self.z, 0.0);
        m
    }
}

/// The two possible orientations of a complementary triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

/// Three orthonormal Bloch vectors together with their orientation μ.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableTriple {
    vectors: [BlochVector; 3],
    orientation: Orientation,
}

impl ObservableTriple {
    /// Validates pairwise orthogonality and computes the orientation along
    /// both routes (matrix product and determinant), requiring them to agree.
    pub fn new(vectors: [BlochVector; 3]) -> Result<Self> {
        let mut max_dot = 0.0f64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                max_dot = max_dot.max(vectors[i].dot(&vectors[j]).abs());
            }
        }
        if max_dot > TRIPLE_TOL {
            return Err(Error::NotOrthogonal(max_dot));
        }
        let orientation = orientation_from_vectors(&vectors)?;
        Ok(Self {
            vectors,
            orientation,
        })
    }

    /// The canonical triple (σ₁, σ₂, σ₃), orientation +1.
    pub fn pauli() -> Self {
        let e1 = BlochVector::new(1.0, 0.0, 0.0).unwrap();
        let e2 = BlochVector::new(0.0, 1.0, 0.0).unwrap();
        let e3 = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        Self::new([e1, e2, e3]).expect("canonical triple is valid")
    }

    /// Triple with observables Uσ_kU†. Conjugation preserves the product
    /// −iA₁A₂A₃ = I, so the orientation is always +1.
    pub fn from_unitary(u: &SingleQubitUnitary) -> Self {
        let vectors: [BlochVector; 3] = std::array::from_fn(|k| {
            let a = u.conjugated_pauli(k + 1);
            let bloch: [f64; 3] = std::array::from_fn(|j| {
                let mut tr = Complex64::new(0.0, 0.0);
                let sj = pauli_matrix(j + 1);
                for r in 0..2 {
                    for c in 0..2 {
                        tr += a[(r, c)] * sj[(c, r)];
                    }
                }
                tr.re / 2.0
            });
            BlochVector::new(bloch[0], bloch[1], bloch[2])
                .expect("conjugated Pauli has a unit Bloch vector")
        });
        let triple = Self::new(vectors).expect("conjugated triple is orthonormal");
        debug_assert_eq!(triple.orientation, Orientation::Positive);
        triple
    }

    /// Rows of the rotation matrix as Bloch vectors; orientation = det R.
    pub fn from_rotation(r: &RotationMatrix) -> Self {
        let vectors: [BlochVector; 3] = std::array::from_fn(|i| {
            let row = r.row(i);
            BlochVector::new(row[0], row[1], row[2]).expect("rotation rows are unit vectors")
        });
        Self::new(vectors).expect("rotation rows are orthonormal")
    }

    pub fn vector(&self, k: usize) -> &BlochVector {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[BlochVector; 3] {
        &self.vectors
    }

    /// The k-th observable (0-based) as a 2×2 operator.
    pub fn observable(&self, k: usize) -> HermitianOperator {
        self.vectors[k].observable()
    }

    pub(crate) fn observable_matrix(&self, k: usize) -> CMatrix {
        self.vectors[k].observable_matrix()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

/// μ with −iA₁A₂A₃ = μ·I, cross-checked against det of the vector matrix.
/// Fails with [`Error::NotComplementary`] when the product is not
/// proportional to the identity.
pub fn orientation_from_vectors(vectors: &[BlochVector; 3]) -> Result<Orientation> {
    // determinant route
    let m = Matrix3::from_fn(|r, c| {
        let (x, y, z) = vectors[r].components();
        [x, y, z][c]
    });
    let det = m.determinant();

    // matrix-product route
    let i = Complex64::new(0.0, 1.0);
    let prod = vectors[0].observable_matrix()
        * vectors[1].observable_matrix()
        * vectors[2].observable_matrix()
        * (-i);
    let mu = prod[(0, 0)].re;
    let dev = [
        (prod[(0, 0)] - Complex64::new(mu, 0.0)).norm(),
        (prod[(1, 1)] - Complex64::new(mu, 0.0)).norm(),
        prod[(0, 1)].norm(),
        prod[(1, 0)].norm(),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    if dev > TRIPLE_TOL || (mu.abs() - 1.0).abs() > TRIPLE_TOL {
        return Err(Error::NotComplementary);
    }
    if (det - mu).abs() > TRIPLE_TOL {
        return Err(Error::NotComplementary);
    }
    Ok(if mu > 0.0 {
        Orientation::Positive
    } else {
        Orientation::Negative
    })
}

/// A validated 2×2 unitary (U U† = I within [`TRIPLE_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SingleQubitUnitary {
    m: CMatrix,
}

impl SingleQubitUnitary {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != 2 || m.ncols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: m.nrows(),
            });
        }
        if !m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let dev = (&m * m.adjoint() - CMatrix::identity(2, 2))
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        if dev > TRIPLE_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    /// Uσ_kU†, k ∈ {1, 2, 3}.
    pub fn conjugated_pauli(&self, k: usize) -> CMatrix {
        &self.m * pauli_matrix(k) * self.m.adjoint()
    }
}

/// A 3×3 real orthogonal matrix (RᵀR = I within [`TRIPLE_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct RotationMatrix {
    m: Matrix3<f64>,
}

impl RotationMatrix {
    pub fn new(rows: [[f64; 3]; 3]) -> Result<Self> {
        let m = Matrix3::from_fn(|r, c| rows[r][c]);
        if !m.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let dev = (m.transpose() * m - Matrix3::identity())
            .iter()
            .map(|x| x.abs())
            .fold(0.0f64, f64::max);
        if dev > TRIPLE_TOL {
            return Err(Error::NotRotation(dev));
        }
        Ok(Self { m })
    }

    /// Z–Y–Z Euler angles in radians: R = R_z(α)·R_y(β)·R_z(γ) with
    /// R_z(θ) = [[cosθ, sinθ, 0], [−sinθ, cosθ, 0], [0, 0, 1]] and
    /// R_y(θ) = [[cosθ, 0, −sinθ], [0, 1, 0], [sinθ, 0, cosθ]].
    /// Always proper (det +1).
    pub fn from_euler_zyz(alpha: f64, beta: f64, gamma: f64) -> Self {
        let rz = |t: f64| {
            let (s, c) = t.sin_cos();
            Matrix3::new(c, s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0)
        };
        let ry = |t: f64| {
            let (s, c) = t.sin_cos();
            Matrix3::new(c, 0.0, -s, 0.0, 1.0, 0.0, s, 0.0, c)
        };
        Self {
            m: rz(alpha) * ry(beta) * rz(gamma),
        }
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }

    pub fn row(&self, i: usize) -> [f64; 3] {
        [self.m[(i, 0)], self.m[(i, 1)], self.m[(i, 2)]]
    }

    /// Matrix product, for composing rotations.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: self.m * other.m,
        }
    }
}

/// One complementary triple per party, all with equal orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSetting {
    triples: [ObservableTriple; 3],
}

impl WitnessSetting {
    pub fn new(a: ObservableTriple, b: ObservableTriple, c: ObservableTriple) -> Result<Self> {
        if a.orientation() != b.orientation() || b.orientation() != c.orientation() {
            return Err(Error::MixedOrientation);
        }
        Ok(Self { triples: [a, b, c] })
    }

    /// Canonical Paulis on every party.
    pub fn pauli() -> Self {
        Self::new(
            ObservableTriple::pauli(),
            ObservableTriple::pauli(),
            ObservableTriple::pauli(),
        )
        .expect("canonical setting has equal orientations")
    }

    /// The triple for party 0, 1 or 2 (parties 1..3 of the state).
    pub fn triple(&self, party: usize) -> &ObservableTriple {
        &self.triples[party]
    }

    pub fn orientation(&self) -> Orientation {
        self.triples[0].orientation()
    }
}
