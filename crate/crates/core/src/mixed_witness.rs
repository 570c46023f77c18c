//! Mixed-state witnesses: the three T functionals (whose negativity excludes
//! separability under a pair of bipartitions) and the three F functionals
//! (nonnegative on fully separable states; their sum obeys a −2 bound used
//! to flag genuine entanglement), each a quadratic polynomial in product
//! expectation values ⟨X ⊗ Y ⊗ Z⟩ built from a witness setting.

use crate::error::{Error, Result};
use crate::observables::WitnessSetting;
use crate::qstate::{identity_matrix, kron, trace_product, CMatrix, DensityMatrix};

/// Default verdict tolerance separating violation from round-off.
pub const DEFAULT_VERDICT_TOL: f64 = 1e-9;
/// The biseparable bound on the F sum.
pub const F_SUM_BOUND: f64 = -2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessId {
    T1,
    T2,
    T3,
    F1,
    F2,
    F3,
    FSum,
}

impl WitnessId {
    pub const ALL: [WitnessId; 7] = [
        WitnessId::T1,
        WitnessId::T2,
        WitnessId::T3,
        WitnessId::F1,
        WitnessId::F2,
        WitnessId::F3,
        WitnessId::FSum,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Some(WitnessId::T1),
            "t2" => Some(WitnessId::T2),
            "t3" => Some(WitnessId::T3),
            "f1" => Some(WitnessId::F1),
            "f2" => Some(WitnessId::F2),
            "f3" => Some(WitnessId::F3),
            "fsum" | "f_sum" => Some(WitnessId::FSum),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WitnessId::T1 => "T1",
            WitnessId::T2 => "T2",
            WitnessId::T3 => "T3",
            WitnessId::F1 => "F1",
            WitnessId::F2 => "F2",
            WitnessId::F3 => "F3",
            WitnessId::FSum => "Fsum",
        }
    }

    /// For T witnesses, the pair of bipartitions a violation rules out.
    pub fn excluded_pair(self) -> Option<&'static str> {
        match self {
            WitnessId::T1 => Some("1|23 and 12|3"),
            WitnessId::T2 => Some("2|13 and 12|3"),
            WitnessId::T3 => Some("1|23 and 2|13"),
            _ => None,
        }
    }
}

/// One product of per-party observables: `None` is the identity, `Some(k)`
/// the k-th observable (0-based) of that party's triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductTerm {
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub c: Option<usize>,
}

const fn pt(a: i8, b: i8, c: i8) -> ProductTerm {
    const fn slot(v: i8) -> Option<usize> {
        if v < 0 {
            None
        } else {
            Some(v as usize)
        }
    }
    ProductTerm {
        a: slot(a),
        b: slot(b),
        c: slot(c),
    }
}

/// A witness of the shape ⟨b₀⟩² − ⟨b₁⟩² − ⟨b₂⟩², each bracket the
/// expectation of a sum of product terms.
#[derive(Debug, Clone, Copy)]
pub struct WitnessForm {
    pub brackets: [&'static [ProductTerm]; 3],
}

// Bracket term lists, transcribed literally from the displayed formulas.
// Indices: 0 ↦ first observable (x-like), 1 ↦ second, 2 ↦ third (z-like).
const T1_B0: [ProductTerm; 4] = [pt(-1, -1, -1), pt(-1, 2, -1), pt(2, -1, 2), pt(2, 2, 2)];
const T1_B1: [ProductTerm; 4] = [pt(-1, -1, 2), pt(-1, 2, 2), pt(2, -1, -1), pt(2, 2, -1)];
const T1_B2: [ProductTerm; 4] = [pt(0, -1, 0), pt(0, 2, 0), pt(1, -1, 1), pt(1, 2, 1)];

const T2_B0: [ProductTerm; 4] = [pt(-1, -1, -1), pt(2, -1, -1), pt(-1, 2, 2), pt(2, 2, 2)];
const T2_B1: [ProductTerm; 4] = [pt(-1, -1, 2), pt(2, -1, 2), pt(-1, 2, -1), pt(2, 2, -1)];
const T2_B2: [ProductTerm; 4] = [pt(-1, 0, 0), pt(2, 0, 0), pt(-1, 1, 1), pt(2, 1, 1)];

const T3_B0: [ProductTerm; 4] = [pt(-1, -1, -1), pt(-1, -1, 2), pt(2, 2, -1), pt(2, 2, 2)];
const T3_B1: [ProductTerm; 4] = [pt(-1, 2, -1), pt(-1, 2, 2), pt(2, -1, -1), pt(2, -1, 2)];
const T3_B2: [ProductTerm; 4] = [pt(0, 0, -1), pt(0, 0, 2), pt(1, 1, -1), pt(1, 1, 2)];

const F1_B0: [ProductTerm; 2] = [pt(-1, -1, -1), pt(-1, 2, 2)];
const F1_B1: [ProductTerm; 2] = [pt(-1, 2, -1), pt(-1, -1, 2)];
const F1_B2: [ProductTerm; 2] = [pt(-1, 0, 0), pt(-1, 1, 1)];

const F2_B0: [ProductTerm; 2] = [pt(-1, -1, -1), pt(2, -1, 2)];
const F2_B1: [ProductTerm; 2] = [pt(2, -1, -1), pt(-1, -1, 2)];
const F2_B2: [ProductTerm; 2] = [pt(0, -1, 0), pt(1, -1, 1)];

const F3_B0: [ProductTerm; 2] = [pt(-1, -1, -1), pt(2, 2, -1)];
const F3_B1: [ProductTerm; 2] = [pt(2, -1, -1), pt(-1, 2, -1)];
const F3_B2: [ProductTerm; 2] = [pt(0, 0, -1), pt(1, 1, -1)];

const T1_FORM: WitnessForm = WitnessForm {
    brackets: [&T1_B0, &T1_B1, &T1_B2],
};
const T2_FORM: WitnessForm = WitnessForm {
    brackets: [&T2_B0, &T2_B1, &T2_B2],
};
const T3_FORM: WitnessForm = WitnessForm {
    brackets: [&T3_B0, &T3_B1, &T3_B2],
};
const F1_FORM: WitnessForm = WitnessForm {
    brackets: [&F1_B0, &F1_B1, &F1_B2],
};
const F2_FORM: WitnessForm = WitnessForm {
    brackets: [&F2_B0, &F2_B1, &F2_B2],
};
const F3_FORM: WitnessForm = WitnessForm {
    brackets: [&F3_B0, &F3_B1, &F3_B2],
};

/// The bracket table of a simple witness; `None` for the composite FSum.
pub fn witness_form(id: WitnessId) -> Option<&'static WitnessForm> {
    match id {
        WitnessId::T1 => Some(&T1_FORM),
        WitnessId::T2 => Some(&T2_FORM),
        WitnessId::T3 => Some(&T3_FORM),
        WitnessId::F1 => Some(&F1_FORM),
        WitnessId::F2 => Some(&F2_FORM),
        WitnessId::F3 => Some(&F3_FORM),
        WitnessId::FSum => None,
    }
}

/// The simple forms a witness id expands to (FSum → F1, F2, F3).
pub fn component_forms(id: WitnessId) -> Vec<&'static WitnessForm> {
    match id {
        WitnessId::FSum => vec![&F1_FORM, &F2_FORM, &F3_FORM],
        other => vec![witness_form(other).unwrap()],
    }
}

/// 8×8 matrix of one product term under a setting: identity padding on
/// absent parties, the triple's observable elsewhere.
pub(crate) fn term_matrix(term: &ProductTerm, setting: &WitnessSetting) -> CMatrix {
    let factor = |slot: Option<usize>, party: usize| -> CMatrix {
        match slot {
            None => identity_matrix(2),
            Some(k) => setting.triple(party).observable_matrix(k),
        }
    };
    kron(
        &kron(&factor(term.a, 0), &factor(term.b, 1)),
        &factor(term.c, 2),
    )
}

fn bracket_value(rho: &DensityMatrix, terms: &[ProductTerm], setting: &WitnessSetting) -> f64 {
    let mut op = CMatrix::zeros(8, 8);
    for term in terms {
        op += term_matrix(term, setting);
    }
    trace_product(rho.matrix(), &op)
}

fn evaluate_form(rho: &DensityMatrix, form: &WitnessForm, setting: &WitnessSetting) -> f64 {
    let b0 = bracket_value(rho, form.brackets[0], setting);
    let b1 = bracket_value(rho, form.brackets[1], setting);
    let b2 = bracket_value(rho, form.brackets[2], setting);
    b0 * b0 - b1 * b1 - b2 * b2
}

/// Evaluates any witness id (FSum included) on a state under a setting.
pub fn evaluate(rho: &DensityMatrix, setting: &WitnessSetting, id: WitnessId) -> f64 {
    component_forms(id)
        .iter()
        .map(|form| evaluate_form(rho, form, setting))
        .sum()
}

/// ⟨T_which⟩ for which ∈ {1, 2, 3}.
pub fn t_witness(rho: &DensityMatrix, setting: &WitnessSetting, which: usize) -> Result<f64> {
    let id = match which {
        1 => WitnessId::T1,
        2 => WitnessId::T2,
        3 => WitnessId::T3,
        _ => return Err(Error::InvalidParty { party: which, dim: 8 }),
    };
    Ok(evaluate(rho, setting, id))
}

/// ⟨F_which⟩ for which ∈ {1, 2, 3}.
pub fn f_witness(rho: &DensityMatrix, setting: &WitnessSetting, which: usize) -> Result<f64> {
    let id = match which {
        1 => WitnessId::F1,
        2 => WitnessId::F2,
        3 => WitnessId::F3,
        _ => return Err(Error::InvalidParty { party: which, dim: 8 }),
    };
    Ok(evaluate(rho, setting, id))
}

/// F₁ + F₂ + F₃ for one setting.
pub fn f_sum(rho: &DensityMatrix, setting: &WitnessSetting) -> f64 {
    evaluate(rho, setting, WitnessId::FSum)
}

/// A witness value that crossed a threshold, with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub witness: WitnessId,
    pub value: f64,
    pub setting_index: usize,
}

/// Separability verdict over a batch of settings. Each flag keeps the most
/// negative witnessing value; ties go to the lowest setting index.
///
/// `pair_exclusions[i]` corresponds to T_{i+1} < −tol and rules out
/// separability under the pair named by [`WitnessId::excluded_pair`].
/// `f_negative` is any F_l < −tol (not fully separable); `sum_violation` is
/// F₁+F₂+F₃ < −2 − tol (genuine entanglement).
#[derive(Debug, Clone, PartialEq)]
pub struct MixedVerdict {
    pub pair_exclusions: [Option<Violation>; 3],
    pub f_negative: Option<Violation>,
    pub sum_violation: Option<Violation>,
    pub tolerance: f64,
}

impl MixedVerdict {
    pub fn not_fully_separable(&self) -> bool {
        self.f_negative.is_some()
    }

    pub fn genuine_entangled(&self) -> bool {
        self.sum_violation.is_some()
    }
}

fn update(slot: &mut Option<Violation>, candidate: Violation) {
    let better = match slot {
        None => true,
        Some(existing) => candidate.value < existing.value,
    };
    if better {
        *slot = Some(candidate);
    }
}

/// Evaluates the full witness battery on every setting and collects flags.
pub fn verdict(
    rho: &DensityMatrix,
    settings: &[WitnessSetting],
    tol: f64,
) -> Result<MixedVerdict> {
    if settings.is_empty() {
        return Err(Error::EmptySettings);
    }
    let mut out = MixedVerdict {
        pair_exclusions: [None, None, None],
        f_negative: None,
        sum_violation: None,
        tolerance: tol,
    };
    for (idx, setting) in settings.iter().enumerate() {
        for (i, id) in [WitnessId::T1, WitnessId::T2, WitnessId::T3].iter().enumerate() {
            let value = evaluate(rho, setting, *id);
            if value < -tol {
                update(
                    &mut out.pair_exclusions[i],
                    Violation {
                        witness: *id,
                        value,
                        setting_index: idx,
                    },
                );
            }
        }
        let mut sum = 0.0;
        for id in [WitnessId::F1, WitnessId::F2, WitnessId::F3] {
            let value = evaluate(rho, setting, id);
            sum += value;
            if value < -tol {
                update(
                    &mut out.f_negative,
                    Violation {
                        witness: id,
                        value,
                        setting_index: idx,
                    },
                );
            }
        }
        if sum < F_SUM_BOUND - tol {
            update(
                &mut out.sum_violation,
                Violation {
                    witness: WitnessId::FSum,
                    value: sum,
                    setting_index: idx,
                },
            );
        }
    }
    Ok(out)
}
