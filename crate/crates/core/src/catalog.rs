//! Constructors for every named state and family used by the toolkit, the
//! fixed example unitaries, and seeded random-state generators for property
//! testing. Generator streams are split per draw index, so draws are
//! reproducible and order-independent.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::observables::{ObservableTriple, RotationMatrix, SingleQubitUnitary, WitnessSetting};
use crate::pure_witness::Bipartition;
use crate::qstate::{
    identity_matrix, mix, outer, CMatrix, DensityMatrix, Ensemble, PureState, C_ZERO,
};

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Named states and parametrized families addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Ghz,
    W,
    /// |0⟩ ⊗ (|00⟩+|11⟩)/√2, the biseparable-across-1|23 benchmark.
    PsiPlus,
    /// Equal mixture of the three two-party Bell pairs padded with |0⟩.
    Rho1,
    SigmaInsep,
    /// |1⟩ ⊗ (√((1+b)/2)|00⟩ + √((1−b)/2)|10⟩).
    PhiB,
    /// 7b/(7b+1)·σ_insep + 1/(7b+1)·|φ_b⟩⟨φ_b|.
    SigmaB,
    /// p·σ_b + (1−p)/8·I, parameters (b, p).
    Rho3,
    /// p·|W⟩⟨W| + (1−p)/8·I.
    RhoW,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Ghz,
        Family::W,
        Family::PsiPlus,
        Family::Rho1,
        Family::SigmaInsep,
        Family::PhiB,
        Family::SigmaB,
        Family::Rho3,
        Family::RhoW,
    ];

    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ghz" => Some(Family::Ghz),
            "w" => Some(Family::W),
            "psi_plus" => Some(Family::PsiPlus),
            "rho1" => Some(Family::Rho1),
            "sigma_insep" => Some(Family::SigmaInsep),
            "phi_b" => Some(Family::PhiB),
            "sigma_b" => Some(Family::SigmaB),
            "rho3" => Some(Family::Rho3),
            "rho_w" => Some(Family::RhoW),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::PsiPlus => "psi_plus",
            Family::Rho1 => "rho1",
            Family::SigmaInsep => "sigma_insep",
            Family::PhiB => "phi_b",
            Family::SigmaB => "sigma_b",
            Family::Rho3 => "rho3",
            Family::RhoW => "rho_w",
        }
    }

    /// Names of the family's parameters, all over [0, 1].
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::PhiB | Family::SigmaB => &["b"],
            Family::Rho3 => &["b", "p"],
            Family::RhoW => &["p"],
            _ => &[],
        }
    }
}

/// A pure state or a density matrix, as the family dictates.
#[derive(Debug, Clone)]
pub enum StateKind {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl StateKind {
    pub fn density(&self) -> DensityMatrix {
        match self {
            StateKind::Pure(psi) => outer(psi),
            StateKind::Mixed(rho) => rho.clone(),
        }
    }

    pub fn pure(&self) -> Option<&PureState> {
        match self {
            StateKind::Pure(psi) => Some(psi),
            StateKind::Mixed(_) => None,
        }
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn state_from_pairs(pairs: &[(usize, f64)]) -> PureState {
    let mut amps = [C_ZERO; 8];
    for (idx, a) in pairs {
        amps[*idx] = re(*a);
    }
    PureState::new(amps).expect("catalog amplitudes are normalized")
}

pub fn ghz() -> PureState {
    state_from_pairs(&[(0, SQRT_HALF), (7, SQRT_HALF)])
}

pub fn w_state() -> PureState {
    let a = 1.0 / 3.0f64.sqrt();
    state_from_pairs(&[(1, a), (2, a), (4, a)])
}

/// |0⟩ ⊗ |ψ⁺⟩ with |ψ⁺⟩ = (|00⟩+|11⟩)/√2.
pub fn zero_psi_plus() -> PureState {
    state_from_pairs(&[(0, SQRT_HALF), (3, SQRT_HALF)])
}

/// The three Bell-pair components of rho1: ψ⁺ on the named pair, |0⟩ on the
/// remaining party.
fn bell_padded(high_index: usize) -> PureState {
    state_from_pairs(&[(0, SQRT_HALF), (high_index, SQRT_HALF)])
}

pub fn rho1() -> DensityMatrix {
    let e = Ensemble::new(vec![
        (1.0 / 3.0, bell_padded(6)), // pair on parties 1,2
        (1.0 / 3.0, bell_padded(5)), // pair on parties 1,3
        (1.0 / 3.0, bell_padded(3)), // pair on parties 2,3
    ])
    .expect("weights sum to 1");
    mix(&e)
}

fn sigma_insep_terms() -> Vec<(f64, PureState)> {
    let psi1 = state_from_pairs(&[(0, SQRT_HALF), (5, SQRT_HALF)]);
    let psi2 = state_from_pairs(&[(1, SQRT_HALF), (6, SQRT_HALF)]);
    let psi3 = state_from_pairs(&[(2, SQRT_HALF), (7, SQRT_HALF)]);
    vec![
        (2.0 / 7.0, psi1),
        (2.0 / 7.0, psi2),
        (2.0 / 7.0, psi3),
        (1.0 / 7.0, PureState::basis(0, 1, 1)),
    ]
}

pub fn sigma_insep() -> DensityMatrix {
    mix(&Ensemble::new(sigma_insep_terms()).expect("weights sum to 1"))
}

pub fn phi_b(b: f64) -> Result<PureState> {
    check_param("b", b)?;
    Ok(state_from_pairs(&[
        (4, ((1.0 + b) / 2.0).sqrt()),
        (6, ((1.0 - b) / 2.0).sqrt()),
    ]))
}

pub fn sigma_b(b: f64) -> Result<DensityMatrix> {
    check_param("b", b)?;
    let w_insep = 7.0 * b / (7.0 * b + 1.0);
    let w_phi = 1.0 / (7.0 * b + 1.0);
    let mut terms: Vec<(f64, PureState)> = sigma_insep_terms()
        .into_iter()
        .map(|(w, s)| (w * w_insep, s))
        .collect();
    terms.push((w_phi, phi_b(b)?));
    Ok(mix(&Ensemble::new(terms).expect("weights sum to 1")))
}

pub fn rho3(b: f64, p: f64) -> Result<DensityMatrix> {
    check_param("b", b)?;
    check_param("p", p)?;
    let m = sigma_b(b)?.matrix() * re(p) + identity_matrix(8) * re((1.0 - p) / 8.0);
    DensityMatrix::new(m)
}

pub fn rho_w(p: f64) -> Result<DensityMatrix> {
    check_param("p", p)?;
    let m = outer(&w_state()).matrix() * re(p) + identity_matrix(8) * re((1.0 - p) / 8.0);
    DensityMatrix::new(m)
}

fn check_param(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || !value.is_finite() {
        return Err(Error::ParamOutOfDomain { name, value });
    }
    Ok(())
}

/// Builds a family member, checking parameter arity and domain.
pub fn make(family: Family, params: &[f64]) -> Result<StateKind> {
    let expected = family.param_names().len();
    if params.len() != expected {
        return Err(Error::ParamArity {
            family: family.name(),
            expected,
            got: params.len(),
        });
    }
    Ok(match family {
        Family::Ghz => StateKind::Pure(ghz()),
        Family::W => StateKind::Pure(w_state()),
        Family::PsiPlus => StateKind::Pure(zero_psi_plus()),
        Family::Rho1 => StateKind::Mixed(rho1()),
        Family::SigmaInsep => StateKind::Mixed(sigma_insep()),
        Family::PhiB => StateKind::Pure(phi_b(params[0])?),
        Family::SigmaB => StateKind::Mixed(sigma_b(params[0])?),
        Family::Rho3 => StateKind::Mixed(rho3(params[0], params[1])?),
        Family::RhoW => StateKind::Mixed(rho_w(params[0])?),
    })
}

/// The fixed single-qubit unitaries of the worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedUnitary {
    U1,
    U2,
    V2,
}

pub fn fixed_unitary(which: FixedUnitary) -> SingleQubitUnitary {
    let m = match which {
        // |0⟩⟨1| − |1⟩⟨0|
        FixedUnitary::U1 | FixedUnitary::U2 => CMatrix::from_row_slice(
            2,
            2,
            &[re(0.0), re(1.0), re(-1.0), re(0.0)],
        ),
        // (|0⟩⟨0| + |0⟩⟨1| − |1⟩⟨0| + |1⟩⟨1|)/√2
        FixedUnitary::V2 => CMatrix::from_row_slice(
            2,
            2,
            &[re(SQRT_HALF), re(SQRT_HALF), re(-SQRT_HALF), re(SQRT_HALF)],
        ),
    };
    SingleQubitUnitary::new(m).expect("fixed unitaries are exactly unitary")
}

/// Setting of the first worked example: A conjugated by U₁, B = C = Paulis.
pub fn example1_setting() -> WitnessSetting {
    WitnessSetting::new(
        ObservableTriple::from_unitary(&fixed_unitary(FixedUnitary::U1)),
        ObservableTriple::pauli(),
        ObservableTriple::pauli(),
    )
    .expect("conjugated triples share orientation +1")
}

/// Setting of the second worked example: A from U₂, B from V₂, C = Paulis.
pub fn example2_setting() -> WitnessSetting {
    WitnessSetting::new(
        ObservableTriple::from_unitary(&fixed_unitary(FixedUnitary::U2)),
        ObservableTriple::from_unitary(&fixed_unitary(FixedUnitary::V2)),
        ObservableTriple::pauli(),
    )
    .expect("conjugated triples share orientation +1")
}

/// Seeded generators for property testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// 8 standard complex Gaussian amplitudes, normalized.
    HaarPure,
    /// Three independent Haar single-qubit states, tensored.
    ProductPure,
    /// Haar single-qubit state on the named party tensored with a Haar
    /// two-qubit state, resampled until the pair concurrence is ≥ 0.1.
    BisepPure(Bipartition),
    /// Mixture of `terms` product draws with uniform-simplex weights.
    FullySepMixed { terms: usize },
    /// Mixture of biseparable draws with random partitions.
    BisepMixed { terms: usize },
    /// Mixture of biseparable draws whose partitions alternate randomly
    /// between the two named cuts.
    PairSepMixed {
        first: Bipartition,
        second: Bipartition,
        terms: usize,
    },
    /// G·G† normalized, G an 8×8 standard complex Gaussian matrix.
    RandomMixed,
}

pub const DEFAULT_MIXTURE_TERMS: usize = 8;
/// Pair-concurrence floor for the entangled factor of biseparable draws.
pub const BISEP_CONCURRENCE_FLOOR: f64 = 0.1;

fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn haar_amplitudes<const N: usize>(rng: &mut ChaCha8Rng) -> [Complex64; N] {
    loop {
        let mut amps = [C_ZERO; N];
        let mut norm_sq = 0.0;
        for a in amps.iter_mut() {
            *a = gaussian_complex(rng);
            norm_sq += a.norm_sqr();
        }
        if norm_sq > 1e-12 {
            let n = norm_sq.sqrt();
            for a in amps.iter_mut() {
                *a /= n;
            }
            return amps;
        }
    }
}

fn haar_pure(rng: &mut ChaCha8Rng) -> PureState {
    PureState::new(haar_amplitudes::<8>(rng)).expect("normalized draw")
}

fn product_pure(rng: &mut ChaCha8Rng) -> PureState {
    let q: [[Complex64; 2]; 3] = std::array::from_fn(|_| haar_amplitudes::<2>(rng));
    let mut amps = [C_ZERO; 8];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                amps[4 * i + 2 * j + k] = q[0][i] * q[1][j] * q[2][k];
            }
        }
    }
    PureState::new(amps).expect("product of normalized qubits")
}

/// Concurrence of a pure two-qubit state: 2|a₀₀a₁₁ − a₀₁a₁₀|.
fn pair_concurrence(t: &[Complex64; 4]) -> f64 {
    2.0 * (t[0] * t[3] - t[1] * t[2]).norm()
}

fn bisep_pure(rng: &mut ChaCha8Rng, cut: Bipartition) -> PureState {
    let single = haar_amplitudes::<2>(rng);
    let pair = loop {
        let t = haar_amplitudes::<4>(rng);
        if pair_concurrence(&t) >= BISEP_CONCURRENCE_FLOOR {
            break t;
        }
    };
    let mut amps = [C_ZERO; 8];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                amps[4 * i + 2 * j + k] = match cut {
                    Bipartition::FirstVsRest => single[i] * pair[2 * j + k],
                    Bipartition::SecondVsRest => single[j] * pair[2 * i + k],
                    Bipartition::ThirdVsRest => single[k] * pair[2 * i + j],
                };
            }
        }
    }
    PureState::new(amps).expect("biseparable product is normalized")
}

fn simplex_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    let mut w: Vec<f64> = draws.iter().map(|x| x / total).collect();
    // pin the exact sum against round-off
    let correction: f64 = 1.0 - w.iter().sum::<f64>();
    w[0] += correction;
    w
}

fn mixture(rng: &mut ChaCha8Rng, n: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> PureState) -> DensityMatrix {
    let weights = simplex_weights(rng, n);
    let terms: Vec<(f64, PureState)> = weights.into_iter().map(|w| (w, draw(rng))).collect();
    mix(&Ensemble::new(terms).expect("simplex weights sum to 1"))
}

fn random_cut(rng: &mut ChaCha8Rng) -> Bipartition {
    Bipartition::ALL[rng.random_range(0..3)]
}

fn random_mixed(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = CMatrix::from_fn(8, 8, |_, _| gaussian_complex(rng));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(&m * re(1.0 / tr)).expect("Ginibre product is a density matrix")
}

/// Draws the `index`-th state of the generator's stream for `seed`.
pub fn random_state(generator: Generator, seed: u64, index: u64) -> StateKind {
    let mut rng = stream_rng(seed, index);
    match generator {
        Generator::HaarPure => StateKind::Pure(haar_pure(&mut rng)),
        Generator::ProductPure => StateKind::Pure(product_pure(&mut rng)),
        Generator::BisepPure(cut) => StateKind::Pure(bisep_pure(&mut rng, cut)),
        Generator::FullySepMixed { terms } => {
            StateKind::Mixed(mixture(&mut rng, terms, product_pure))
        }
        Generator::BisepMixed { terms } => StateKind::Mixed(mixture(&mut rng, terms, |r| {
            let cut = random_cut(r);
            bisep_pure(r, cut)
        })),
        Generator::PairSepMixed {
            first,
            second,
            terms,
        } => StateKind::Mixed(mixture(&mut rng, terms, |r| {
            let cut = if r.random::<bool>() { first } else { second };
            bisep_pure(r, cut)
        })),
        Generator::RandomMixed => StateKind::Mixed(random_mixed(&mut rng)),
    }
}

/// A random equal-orientation setting: one uniform Z–Y–Z rotation per party,
/// orientation pinned to +1.
pub fn random_setting(seed: u64, index: u64) -> WitnessSetting {
    let mut rng = stream_rng(seed, index.wrapping_add(1 << 32));
    let mut triple = || {
        let alpha = rng.random_range(0.0..std::f64::consts::TAU);
        let beta = rng.random_range(0.0..std::f64::consts::PI);
        let gamma = rng.random_range(0.0..std::f64::consts::TAU);
        ObservableTriple::from_rotation(&RotationMatrix::from_euler_zyz(alpha, beta, gamma))
    };
    WitnessSetting::new(triple(), triple(), triple()).expect("rotations share orientation +1")
}
