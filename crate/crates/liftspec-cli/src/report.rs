//! Machine-readable report schema shared by every subcommand's `--json`
//! output. Field order is fixed so serialized reports are byte-stable.

use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub instance: InstanceInfo,
    pub spectra: Vec<SpectrumEntry>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceInfo {
    /// Base-graph order.
    pub k: usize,
    /// Number of cosets (fibers).
    pub n: usize,
    pub group_order: usize,
    pub presets: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub method: String,
    pub coeffs: [f64; 4],
    /// Eigenvalues grouped by numerical equality within the comparison
    /// tolerance.
    pub values: Vec<ValueEntry>,
    /// Empty for the direct method.
    pub per_irrep: Vec<IrrepEntry>,
    /// Ungrouped sorted eigenvalues.
    pub raw: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ValueEntry {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IrrepEntry {
    pub name: String,
    pub dimension: usize,
    pub rank: usize,
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}
