//! Registered literature reference values, and the run ledger comparing
//! computed quantities against them. Discrepancies are a first-class output:
//! every matching command appends an entry with the absolute difference, so
//! a mismatch against a published figure is always visible in the report.

use triqwit_core::catalog::Family;
use triqwit_core::mixed_witness::WitnessId;

/// Version of the registered-claims table below.
pub const LEDGER_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub claim: String,
    pub computed: f64,
    pub published: f64,
    pub delta: f64,
}

/// Append-only within a run.
#[derive(Debug, Default)]
pub struct Ledger {
    entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&mut self, claim: impl Into<String>, computed: f64, published: f64) {
        self.entries.push(LedgerEntry {
            claim: claim.into(),
            computed,
            published,
            delta: (computed - published).abs(),
        });
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Closed form of ⟨T₁⟩ on the PPT family under the published setting.
pub fn sigma_b_t1_closed_form(b: f64) -> f64 {
    -32.0 * b * (-1.0 + b + (1.0 - b * b).sqrt()) / (1.0 + 7.0 * b).powi(2)
}

/// Registered threshold claims: (family, witness, target) → (claim, value).
pub fn threshold_reference(
    family: Family,
    witness: WitnessId,
    target: f64,
) -> Option<(&'static str, f64)> {
    match (family, witness) {
        (Family::RhoW, WitnessId::F1) if target.abs() < 1e-12 => Some((
            "published entanglement onset p for the W/white-noise family (F1 = 0)",
            0.56,
        )),
        (Family::RhoW, WitnessId::FSum) if (target + 2.0).abs() < 1e-12 => Some((
            "published genuine-entanglement onset p for the W/white-noise family (Fsum = -2)",
            0.92,
        )),
        _ => None,
    }
}

/// Registered witness-value claims:
/// (family, params, witness, setting name) → (claim, value).
pub fn witness_reference(
    family: Family,
    params: &[f64],
    witness: WitnessId,
    setting_name: &str,
) -> Option<(String, f64)> {
    match (family, witness, setting_name) {
        (Family::Rho1, WitnessId::T1, "example1") => Some((
            "published T1 value for the symmetric Bell-pair mixture".into(),
            -16.0 / 9.0,
        )),
        (Family::SigmaB, WitnessId::T1, "example2") => {
            let b = *params.first()?;
            Some((
                format!("published T1 closed form for the PPT family at b={b}"),
                sigma_b_t1_closed_form(b),
            ))
        }
        _ => None,
    }
}
