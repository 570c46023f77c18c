//! Squared bipartite concurrence of pure three-qubit states, its expression
//! as a quadratic polynomial of Pauli expectation values (the g witnesses),
//! and the exact pure-state classifier built on them.
//!
//! For a pure state the g value of a cut equals det of the one-qubit reduced
//! density matrix across that cut, so it lies in [0, 1/4] and vanishes
//! exactly when the cut is separable.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::qstate::{
    expectation, identity_matrix, kron, outer, pauli_matrix, CMatrix, HermitianOperator, PureState,
};

/// Default classifier tolerance on g values.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-8;
/// When exactly two g values are below tolerance, the third may exceed it by
/// at most this factor before the pattern is reported as inconsistent.
pub const CLASSIFY_MARGIN: f64 = 100.0;

/// The three bipartitions of three qubits, named by the singled-out party.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bipartition {
    /// 1|23
    FirstVsRest,
    /// 2|13
    SecondVsRest,
    /// 12|3
    ThirdVsRest,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [
        Bipartition::FirstVsRest,
        Bipartition::SecondVsRest,
        Bipartition::ThirdVsRest,
    ];

    /// The singled-out party, 1-based.
    pub fn party(self) -> usize {
        match self {
            Bipartition::FirstVsRest => 1,
            Bipartition::SecondVsRest => 2,
            Bipartition::ThirdVsRest => 3,
        }
    }

    pub fn from_party(party: usize) -> Result<Self> {
        match party {
            1 => Ok(Bipartition::FirstVsRest),
            2 => Ok(Bipartition::SecondVsRest),
            3 => Ok(Bipartition::ThirdVsRest),
            _ => Err(Error::InvalidParty { party, dim: 8 }),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bipartition::FirstVsRest => "1|23",
            Bipartition::SecondVsRest => "2|13",
            Bipartition::ThirdVsRest => "12|3",
        }
    }
}

/// Squared concurrence of |ψ⟩ across a cut, by direct amplitude arithmetic:
/// for 1|23 it is (Σ|a₀jk|²)(Σ|a₁jk|²) − |Σ a₀jk a₁jk*|²; the other cuts
/// permute the grouped index.
pub fn concurrence_sq_oracle(psi: &PureState, cut: Bipartition) -> f64 {
    let group_bit = |i: usize, j: usize, k: usize| match cut {
        Bipartition::FirstVsRest => i,
        Bipartition::SecondVsRest => j,
        Bipartition::ThirdVsRest => k,
    };
    let mut p0 = 0.0;
    let mut p1 = 0.0;
    let mut cross = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let a = psi.amplitude(i, j, k);
                if group_bit(i, j, k) == 0 {
                    p0 += a.norm_sqr();
                    let (ii, jj, kk) = match cut {
                        Bipartition::FirstVsRest => (1, j, k),
                        Bipartition::SecondVsRest => (i, 1, k),
                        Bipartition::ThirdVsRest => (i, j, 1),
                    };
                    cross += a * psi.amplitude(ii, jj, kk).conj();
                } else {
                    p1 += a.norm_sqr();
                }
            }
        }
    }
    p0 * p1 - cross.norm_sqr()
}

#[derive(Clone, Copy)]
enum P {
    I,
    X,
    Y,
    Z,
}

struct GTerm {
    paulis: [P; 3],
    coeff: f64,
}

const fn t(p1: P, p2: P, p3: P, coeff: f64) -> GTerm {
    GTerm {
        paulis: [p1, p2, p3],
        coeff,
    }
}

/// The 15 squared-expectation terms of each g polynomial, transcribed
/// term-by-term from the displayed equations. The value is
/// (3 + Σ coeff·⟨P⟩²) / 16.
const G1_TERMS: [GTerm; 15] = [
    t(P::I, P::I, P::Z, -1.0),
    t(P::I, P::Z, P::I, -1.0),
    t(P::Z, P::I, P::I, -3.0),
    t(P::Z, P::Z, P::I, 1.0),
    t(P::Z, P::I, P::Z, 1.0),
    t(P::I, P::Z, P::Z, -1.0),
    t(P::Z, P::Z, P::Z, 1.0),
    t(P::X, P::I, P::I, -3.0),
    t(P::X, P::I, P::Z, 1.0),
    t(P::X, P::Z, P::I, 1.0),
    t(P::X, P::Z, P::Z, 1.0),
    t(P::Y, P::I, P::I, -3.0),
    t(P::Y, P::I, P::Z, 1.0),
    t(P::Y, P::Z, P::I, 1.0),
    t(P::Y, P::Z, P::Z, 1.0),
];

const G2_TERMS: [GTerm; 15] = [
    t(P::I, P::I, P::Z, -1.0),
    t(P::Z, P::I, P::I, -1.0),
    t(P::I, P::Z, P::I, -3.0),
    t(P::Z, P::Z, P::I, 1.0),
    t(P::I, P::Z, P::Z, 1.0),
    t(P::Z, P::I, P::Z, -1.0),
    t(P::Z, P::Z, P::Z, 1.0),
    t(P::I, P::X, P::I, -3.0),
    t(P::I, P::X, P::Z, 1.0),
    t(P::Z, P::X, P::I, 1.0),
    t(P::Z, P::X, P::Z, 1.0),
    t(P::I, P::Y, P::I, -3.0),
    t(P::I, P::Y, P::Z, 1.0),
    t(P::Z, P::Y, P::I, 1.0),
    t(P::Z, P::Y, P::Z, 1.0),
];

const G3_TERMS: [GTerm; 15] = [
    t(P::Z, P::I, P::I, -1.0),
    t(P::I, P::Z, P::I, -1.0),
    t(P::I, P::I, P::Z, -3.0),
    t(P::I, P::Z, P::Z, 1.0),
    t(P::Z, P::I, P::Z, 1.0),
    t(P::Z, P::Z, P::I, -1.0),
    t(P::Z, P::Z, P::Z, 1.0),
    t(P::I, P::I, P::X, -3.0),
    t(P::Z, P::I, P::X, 1.0),
    t(P::I, P::Z, P::X, 1.0),
    t(P::Z, P::Z, P::X, 1.0),
    t(P::I, P::I, P::Y, -3.0),
    t(P::Z, P::I, P::Y, 1.0),
    t(P::I, P::Z, P::Y, 1.0),
    t(P::Z, P::Z, P::Y, 1.0),
];

const G_CONSTANT: f64 = 3.0;
const G_PREFACTOR: f64 = 1.0 / 16.0;

fn g_terms(cut: Bipartition) -> &'static [GTerm; 15] {
    match cut {
        Bipartition::FirstVsRest => &G1_TERMS,
        Bipartition::SecondVsRest => &G2_TERMS,
        Bipartition::ThirdVsRest => &G3_TERMS,
    }
}

fn pauli_factor(p: P) -> CMatrix {
    match p {
        P::I => identity_matrix(2),
        P::X => pauli_matrix(1),
        P::Y => pauli_matrix(2),
        P::Z => pauli_matrix(3),
    }
}

fn term_operator(term: &GTerm) -> HermitianOperator {
    let m = kron(
        &kron(&pauli_factor(term.paulis[0]), &pauli_factor(term.paulis[1])),
        &pauli_factor(term.paulis[2]),
    );
    HermitianOperator::new(m).expect("Pauli strings are Hermitian")
}

fn cached_operators(cut: Bipartition) -> &'static Vec<(HermitianOperator, f64)> {
    static CACHE: OnceLock<[Vec<(HermitianOperator, f64)>; 3]> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        std::array::from_fn(|idx| {
            g_terms(Bipartition::ALL[idx])
                .iter()
                .map(|term| (term_operator(term), term.coeff))
                .collect()
        })
    });
    &all[cut.party() - 1]
}

/// Evaluates the g polynomial of a cut on a pure state: the quadratic
/// Pauli-expectation polynomial, not the amplitude oracle. Agreement between
/// the two is a nontrivial identity exercised by the test suite.
pub fn g_witness(psi: &PureState, cut: Bipartition) -> f64 {
    let rho = outer(psi);
    let mut acc = G_CONSTANT;
    for (op, coeff) in cached_operators(cut) {
        let e = expectation(&rho, op).expect("cached operators are 8x8");
        acc += coeff * e * e;
    }
    acc * G_PREFACTOR
}

/// Exact three-way label of a pure state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PureLabel {
    FullySeparable,
    Biseparable(Bipartition),
    GenuineEntangled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureClassification {
    pub label: PureLabel,
    pub g_values: [f64; 3],
    pub tolerance: f64,
}

/// Classifies a pure state from its three g values.
///
/// At least two values below `tol` imply full separability (the third then
/// vanishes identically for exact pure states and is allowed up to
/// [`CLASSIFY_MARGIN`]·tol of numerical noise); exactly one below `tol` picks
/// the separable cut; none means genuine entanglement. Two below `tol` with
/// the third far above is impossible for a pure state and reported as
/// [`Error::InconsistentGValues`].
pub fn classify_pure(psi: &PureState, tol: f64) -> Result<PureClassification> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidConfig("classifier tolerance must be positive"));
    }
    let g_values = [
        g_witness(psi, Bipartition::FirstVsRest),
        g_witness(psi, Bipartition::SecondVsRest),
        g_witness(psi, Bipartition::ThirdVsRest),
    ];
    let label = classify_g_values(g_values, tol)?;
    Ok(PureClassification {
        label,
        g_values,
        tolerance: tol,
    })
}

/// The classification rule on raw g values; see [`classify_pure`].
pub fn classify_g_values(g_values: [f64; 3], tol: f64) -> Result<PureLabel> {
    let low: Vec<usize> = (0..3).filter(|&i| g_values[i] <= tol).collect();
    Ok(match low.len() {
        3 => PureLabel::FullySeparable,
        2 => {
            let high = (0..3).find(|i| !low.contains(i)).unwrap();
            if g_values[high] <= CLASSIFY_MARGIN * tol {
                PureLabel::FullySeparable
            } else {
                return Err(Error::InconsistentGValues(
                    g_values[0],
                    g_values[1],
                    g_values[2],
                ));
            }
        }
        1 => PureLabel::Biseparable(Bipartition::from_party(low[0] + 1)?),
        _ => PureLabel::GenuineEntangled,
    })
}
