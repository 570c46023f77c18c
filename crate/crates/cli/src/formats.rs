//! On-disk formats: state files and setting files, JSON-encoded UTF-8 text.
//! Numbers round-trip bit-exactly (shortest-representation decimal).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use triqwit_core::catalog::{make, Family, StateKind};
use triqwit_core::observables::{
    ObservableTriple, RotationMatrix, SingleQubitUnitary, WitnessSetting,
};
use triqwit_core::qstate::{CMatrix, DensityMatrix, PureState};

use crate::error::{CliError, CliResult};

/// A pure state (8 amplitude pairs), an explicit density matrix (8×8 entry
/// pairs, row-major), or a reference to a named family.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateFile {
    Pure {
        amplitudes: Vec<[f64; 2]>,
    },
    Mixed {
        entries: Vec<Vec<[f64; 2]>>,
    },
    Family {
        family: String,
        #[serde(default)]
        params: Vec<f64>,
    },
}

impl StateFile {
    pub fn from_state(state: &StateKind) -> Self {
        match state {
            StateKind::Pure(psi) => StateFile::Pure {
                amplitudes: psi.vector().iter().map(|z| [z.re, z.im]).collect(),
            },
            StateKind::Mixed(rho) => StateFile::Mixed {
                entries: (0..8)
                    .map(|r| {
                        (0..8)
                            .map(|c| {
                                let z = rho.entry(r, c);
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect(),
            },
        }
    }

    pub fn to_state(&self) -> CliResult<StateKind> {
        match self {
            StateFile::Pure { amplitudes } => {
                if amplitudes.len() != 8 {
                    return Err(CliError::Input(format!(
                        "pure state needs 8 amplitudes, found {}",
                        amplitudes.len()
                    )));
                }
                let amps: [Complex64; 8] =
                    std::array::from_fn(|i| Complex64::new(amplitudes[i][0], amplitudes[i][1]));
                Ok(StateKind::Pure(PureState::new(amps)?))
            }
            StateFile::Mixed { entries } => {
                if entries.len() != 8 || entries.iter().any(|row| row.len() != 8) {
                    return Err(CliError::Input("mixed state needs an 8x8 matrix".into()));
                }
                let m = CMatrix::from_fn(8, 8, |r, c| {
                    Complex64::new(entries[r][c][0], entries[r][c][1])
                });
                Ok(StateKind::Mixed(DensityMatrix::new(m)?))
            }
            StateFile::Family { family, params } => {
                let fam = Family::parse(family).ok_or_else(|| {
                    CliError::Input(format!("unknown family '{family}' in state file"))
                })?;
                Ok(make(fam, params)?)
            }
        }
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("malformed state file {}: {e}", path.display())))
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

/// How one party's triple is specified: by name ("pauli"), a conjugating
/// 2×2 unitary, a 3×3 rotation, or Z–Y–Z Euler angles.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PartySpec {
    Named(String),
    Unitary { unitary: Vec<Vec<[f64; 2]>> },
    Rotation { rotation: [[f64; 3]; 3] },
    Euler { euler_zyz: [f64; 3] },
}

impl PartySpec {
    pub fn to_triple(&self) -> CliResult<ObservableTriple> {
        match self {
            PartySpec::Named(name) => match name.to_ascii_lowercase().as_str() {
                "pauli" => Ok(ObservableTriple::pauli()),
                other => Err(CliError::Input(format!(
                    "unknown named triple '{other}' (expected \"pauli\")"
                ))),
            },
            PartySpec::Unitary { unitary } => {
                if unitary.len() != 2 || unitary.iter().any(|r| r.len() != 2) {
                    return Err(CliError::Input("unitary must be 2x2".into()));
                }
                let m = CMatrix::from_fn(2, 2, |r, c| {
                    Complex64::new(unitary[r][c][0], unitary[r][c][1])
                });
                Ok(ObservableTriple::from_unitary(&SingleQubitUnitary::new(m)?))
            }
            PartySpec::Rotation { rotation } => Ok(ObservableTriple::from_rotation(
                &RotationMatrix::new(*rotation)?,
            )),
            PartySpec::Euler { euler_zyz } => Ok(ObservableTriple::from_rotation(
                &RotationMatrix::from_euler_zyz(euler_zyz[0], euler_zyz[1], euler_zyz[2]),
            )),
        }
    }
}

/// One triple per party. The parties must end up with equal orientations.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SettingFile {
    pub a: PartySpec,
    pub b: PartySpec,
    pub c: PartySpec,
}

impl SettingFile {
    pub fn to_setting(&self) -> CliResult<WitnessSetting> {
        Ok(WitnessSetting::new(
            self.a.to_triple()?,
            self.b.to_triple()?,
            self.c.to_triple()?,
        )?)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Input(format!("malformed setting file {}: {e}", path.display()))
        })
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}
