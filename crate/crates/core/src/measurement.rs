//! Finite-shot simulation of coincidence measurements of ±1-valued product
//! observables, and witness estimates with bootstrap error bars.
//!
//! Each product observable is sampled projectively: a shot yields ±1 with
//! P(+1) = (1 + ⟨O⟩)/2. An expectation appearing in several witness terms is
//! measured once and shared, as a real experiment would.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::mixed_witness::{component_forms, ProductTerm, WitnessForm, WitnessId};
use crate::observables::{BlochVector, WitnessSetting};
use crate::qstate::{identity_matrix, kron, trace_product, CMatrix, DensityMatrix};

/// Resamples drawn for the bootstrap error estimate.
pub const BOOTSTRAP_RESAMPLES: usize = 200;

/// A three-party product observable; `None` is the identity factor.
/// Eigenvalues are ±1 (the all-identity product is the constant 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ProductObservable {
    pub factors: [Option<BlochVector>; 3],
}

impl ProductObservable {
    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|f| f.is_none())
    }

    pub fn operator_matrix(&self) -> CMatrix {
        let factor = |f: &Option<BlochVector>| match f {
            None => identity_matrix(2),
            Some(v) => v.observable_matrix(),
        };
        kron(
            &kron(&factor(&self.factors[0]), &factor(&self.factors[1])),
            &factor(&self.factors[2]),
        )
    }

    fn from_term(term: &ProductTerm, setting: &WitnessSetting) -> Self {
        let factor = |slot: Option<usize>, party: usize| {
            slot.map(|k| *setting.triple(party).vector(k))
        };
        Self {
            factors: [
                factor(term.a, 0),
                factor(term.b, 1),
                factor(term.c, 2),
            ],
        }
    }
}

/// The distinct product observables a witness needs, measured `shots` times
/// each.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementPlan {
    pub settings: Vec<ProductObservable>,
    pub shots: u64,
}

/// Builds the deduplicated plan for a witness under a setting, in first
/// appearance order over brackets and forms.
pub fn measurement_plan(
    witness: WitnessId,
    setting: &WitnessSetting,
    shots: u64,
) -> Result<MeasurementPlan> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut terms: Vec<ProductTerm> = Vec::new();
    for form in component_forms(witness) {
        for bracket in form.brackets {
            for term in bracket {
                if !terms.contains(term) {
                    terms.push(*term);
                }
            }
        }
    }
    Ok(MeasurementPlan {
        settings: terms
            .iter()
            .map(|t| ProductObservable::from_term(t, setting))
            .collect(),
        shots,
    })
}

/// A finite-shot estimate of one expectation value.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationEstimate {
    pub mean: f64,
    /// √((1 − mean²)/shots), clamped at zero; exactly 0 for degenerate
    /// (±1-certain) outcomes.
    pub std_error: f64,
    pub shots: u64,
}

#[derive(Debug, Clone)]
struct SampledComponent {
    estimate: ExpectationEstimate,
    /// +1 counts, or `None` when the outcome was degenerate (no sampling).
    plus_counts: Option<u64>,
}

fn estimate_from_counts(n_plus: u64, shots: u64) -> ExpectationEstimate {
    let mean = (2.0 * n_plus as f64 - shots as f64) / shots as f64;
    let var = (1.0 - mean * mean).max(0.0);
    ExpectationEstimate {
        mean,
        std_error: (var / shots as f64).sqrt(),
        shots,
    }
}

fn sample_component(
    exact: f64,
    identity: bool,
    shots: u64,
    rng: &mut ChaCha8Rng,
) -> SampledComponent {
    if identity || exact >= 1.0 || exact <= -1.0 {
        // degenerate Bernoulli: the measured mean is the exact value
        let mean = if identity { 1.0 } else { exact.clamp(-1.0, 1.0) };
        return SampledComponent {
            estimate: ExpectationEstimate {
                mean,
                std_error: 0.0,
                shots,
            },
            plus_counts: None,
        };
    }
    let p = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
    let n_plus = Binomial::new(shots, p)
        .expect("probability is in [0, 1]")
        .sample(rng);
    SampledComponent {
        estimate: estimate_from_counts(n_plus, shots),
        plus_counts: Some(n_plus),
    }
}

/// Draws `shots` Bernoulli outcomes for one product observable and returns
/// the sample mean with its plug-in standard error. Deterministic per
/// (seed, observable, shots).
pub fn sample_expectation(
    rho: &DensityMatrix,
    observable: &ProductObservable,
    shots: u64,
    seed: u64,
) -> Result<ExpectationEstimate> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let exact = trace_product(rho.matrix(), &observable.operator_matrix());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_component(exact, observable.is_identity(), shots, &mut rng).estimate)
}

/// A witness value reconstructed from finite-shot component estimates.
#[derive(Debug, Clone)]
pub struct WitnessEstimate {
    pub value: f64,
    /// Bootstrap standard deviation over [`BOOTSTRAP_RESAMPLES`] resamples.
    pub std_error: f64,
    pub components: Vec<(ProductObservable, ExpectationEstimate)>,
    pub shots: u64,
    pub resamples: usize,
}

fn polynomial(forms: &[&WitnessForm], terms: &[ProductTerm], means: &[f64]) -> f64 {
    let mean_of = |term: &ProductTerm| -> f64 {
        let idx = terms
            .iter()
            .position(|t| t == term)
            .expect("every term is in the plan");
        means[idx]
    };
    forms
        .iter()
        .map(|form| {
            let bracket = |i: usize| -> f64 { form.brackets[i].iter().map(mean_of).sum() };
            let b0 = bracket(0);
            let b1 = bracket(1);
            let b2 = bracket(2);
            b0 * b0 - b1 * b1 - b2 * b2
        })
        .sum()
}

/// Estimates a witness by sampling each distinct component expectation once
/// (stream split per component index) and substituting the sample means into
/// the polynomial. The error is the standard deviation of the polynomial
/// over nonparametric resamples of the per-component counts.
pub fn estimate_witness(
    rho: &DensityMatrix,
    witness: WitnessId,
    setting: &WitnessSetting,
    shots_per_setting: u64,
    seed: u64,
) -> Result<WitnessEstimate> {
    if shots_per_setting == 0 {
        return Err(Error::ZeroShots);
    }
    let forms = component_forms(witness);
    let mut terms: Vec<ProductTerm> = Vec::new();
    for form in &forms {
        for bracket in form.brackets {
            for term in bracket {
                if !terms.contains(term) {
                    terms.push(*term);
                }
            }
        }
    }

    let mut components: Vec<SampledComponent> = Vec::with_capacity(terms.len());
    let mut observables: Vec<ProductObservable> = Vec::with_capacity(terms.len());
    for (i, term) in terms.iter().enumerate() {
        let obs = ProductObservable::from_term(term, setting);
        let exact = trace_product(rho.matrix(), &obs.operator_matrix());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1 + i as u64);
        components.push(sample_component(
            exact,
            obs.is_identity(),
            shots_per_setting,
            &mut rng,
        ));
        observables.push(obs);
    }

    let means: Vec<f64> = components.iter().map(|c| c.estimate.mean).collect();
    let value = polynomial(&forms, &terms, &means);

    // bootstrap: resample the +1 counts from the empirical rates; stream 0
    let mut boot_rng = ChaCha8Rng::seed_from_u64(seed);
    boot_rng.set_stream(0);
    let shots_f = shots_per_setting as f64;
    let mut resampled = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        let resample_means: Vec<f64> = components
            .iter()
            .map(|c| match c.plus_counts {
                None => c.estimate.mean,
                Some(n_plus) => {
                    let p_hat = n_plus as f64 / shots_f;
                    let n_star = Binomial::new(shots_per_setting, p_hat)
                        .expect("empirical rate is in [0, 1]")
                        .sample(&mut boot_rng);
                    (2.0 * n_star as f64 - shots_f) / shots_f
                }
            })
            .collect();
        resampled.push(polynomial(&forms, &terms, &resample_means));
    }
    let mean: f64 = resampled.iter().sum::<f64>() / resampled.len() as f64;
    let var: f64 = resampled.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
        / (resampled.len() - 1) as f64;

    Ok(WitnessEstimate {
        value,
        std_error: var.sqrt(),
        components: observables
            .into_iter()
            .zip(components.iter().map(|c| c.estimate.clone()))
            .collect(),
        shots: shots_per_setting,
        resamples: BOOTSTRAP_RESAMPLES,
    })
}
