//! Family averages over `pi ≡ 1 (mod 9)` compared with their predicted main
//! terms: shifted ratios, first and negative moments, log-derivatives, the
//! one-level density, and the rational analogues.

mod density;
mod family;
mod mds;
mod residue;
mod sums;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analytic::{Bump, ShiftExponent, WeightFunction};
use crate::C64;

pub use density::{density_prediction, one_level_density, DensityPrediction};
pub use mds::{mds_partial, ratios_by_mellin_inversion, MdsPartial};
pub use residue::residue_identity;
pub use sums::{
    family_size, first_moment, logderiv_moment, negative_moment, q_side_suite, ratios_sum,
    zeta_k_j_logderiv_numeric, DENOMINATOR_GUARD,
};

/// Which family statistic a report describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentKind {
    Ratios,
    First,
    Negative,
    Logderiv,
    Density,
    QRatios,
    QFirst,
    QNegative,
    QLogderiv,
    QDensity,
}

impl MomentKind {
    pub fn is_q_side(self) -> bool {
        matches!(
            self,
            MomentKind::QRatios
                | MomentKind::QFirst
                | MomentKind::QNegative
                | MomentKind::QLogderiv
                | MomentKind::QDensity
        )
    }

    /// The rational counterpart of a Hecke-side kind, and vice versa.
    pub fn with_side(self, q_side: bool) -> Self {
        use MomentKind::*;
        let base = match self {
            QRatios => Ratios,
            QFirst => First,
            QNegative => Negative,
            QLogderiv => Logderiv,
            QDensity => Density,
            k => k,
        };
        if !q_side {
            return base;
        }
        match base {
            Ratios => QRatios,
            First => QFirst,
            Negative => QNegative,
            Logderiv => QLogderiv,
            _ => QDensity,
        }
    }
}

impl std::str::FromStr for MomentKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        use MomentKind::*;
        Ok(match s {
            "ratios" => Ratios,
            "first" => First,
            "negative" => Negative,
            "logderiv" => Logderiv,
            "density" => Density,
            "q_ratios" => QRatios,
            "q_first" => QFirst,
            "q_negative" => QNegative,
            "q_logderiv" => QLogderiv,
            "q_density" => QDensity,
            _ => return Err(crate::Error::Parse(format!("unknown moment kind {s:?}"))),
        })
    }
}

/// Shift parameters of a report; unused ones are omitted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Shifts {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<C64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<C64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<C64>,
    /// Fourier support of the density test function
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<f64>,
}

/// One member's contribution `Lambda w(N/X) * value`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub a: i128,
    pub b: i128,
    pub norm: u64,
    pub weight: f64,
    pub lambda: f64,
    pub re: f64,
    pub im: f64,
    /// why the term was left out of the sum, if it was
    pub flag: Option<String>,
}

/// Family sum, predicted main term and bookkeeping for one statistic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub kind: MomentKind,
    #[serde(rename = "X_or_Q")]
    pub x_or_q: f64,
    pub shifts: Shifts,
    pub lhs: C64,
    pub main_term: C64,
    /// `lhs / main_term`, absent when the main term vanishes
    pub ratio: Option<C64>,
    pub predicted_exponent: Option<ShiftExponent>,
    /// family members inside the weight's support
    pub family_size: usize,
    pub weight_name: String,
    pub flags: Vec<String>,
    /// auxiliary named quantities, such as the parts of a density prediction
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
    #[serde(skip)]
    pub terms: Vec<Term>,
}

impl MomentReport {
    pub(crate) fn ratio_of(lhs: C64, main: C64) -> Option<C64> {
        (main.norm() > 0.0).then(|| lhs / main)
    }
}

static DEFAULT_WEIGHT: Bump = Bump::new();

/// Weight and family options shared by the moment computations.
#[derive(Clone, Copy)]
pub struct MomentOptions<'a> {
    pub weight: &'a dyn WeightFunction,
    /// drop the inert members `-q` from the Hecke-side family
    pub split_only: bool,
}

impl Default for MomentOptions<'static> {
    fn default() -> Self {
        Self { weight: &DEFAULT_WEIGHT, split_only: false }
    }
}

impl std::fmt::Debug for MomentOptions<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MomentOptions")
            .field("weight", &self.weight.name())
            .field("split_only", &self.split_only)
            .finish()
    }
}
