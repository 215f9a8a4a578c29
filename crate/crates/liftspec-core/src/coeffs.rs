use crate::error::{Error, Result};

/// Coefficients `(c1, c2, c3, c4)` of the universal adjacency matrix
/// `U = c1·A + c2·D + c3·I + c4·J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl Coeffs {
    pub const ADJACENCY: Coeffs = Coeffs::raw(1.0, 0.0, 0.0, 0.0);
    pub const LAPLACIAN: Coeffs = Coeffs::raw(-1.0, 1.0, 0.0, 0.0);
    pub const SIGNLESS_LAPLACIAN: Coeffs = Coeffs::raw(1.0, 1.0, 0.0, 0.0);
    pub const SEIDEL: Coeffs = Coeffs::raw(-2.0, 0.0, -1.0, 1.0);

    /// The four standard presets in display order.
    pub const PRESETS: [(&'static str, Coeffs); 4] = [
        ("adjacency", Coeffs::ADJACENCY),
        ("laplacian", Coeffs::LAPLACIAN),
        ("signless", Coeffs::SIGNLESS_LAPLACIAN),
        ("seidel", Coeffs::SEIDEL),
    ];

    pub const fn raw(c1: f64, c2: f64, c3: f64, c4: f64) -> Self {
        Self { c1, c2, c3, c4 }
    }

    /// Checked constructor: `c1 = 0` is rejected (use [`Coeffs::raw`] with an
    /// explicit override for exploratory runs).
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self> {
        if c1 == 0.0 {
            return Err(Error::ZeroC1);
        }
        Ok(Self::raw(c1, c2, c3, c4))
    }

    pub fn preset(name: &str) -> Option<Self> {
        Self::PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| *c)
    }

    pub fn preset_name(&self) -> Option<&'static str> {
        Self::PRESETS
            .iter()
            .find(|(_, c)| c == self)
            .map(|(n, _)| *n)
    }
}
