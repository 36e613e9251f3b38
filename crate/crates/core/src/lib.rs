//! Certified numerics for Dirichlet-type function spaces on the unit disk.
//!
//! The crate computes Hardy and Dirichlet norms, weighted Dirichlet energies
//! against a catalog of positive superharmonic weights, argument-principle
//! zero counts, and the boundary-ladder series construction that realizes a
//! surjective function in a weighted Dirichlet space whenever the weight has
//! vanishing infimum. Every nontrivial claim a routine makes is backed by a
//! certificate (sampled bounds, winding numbers, recorded margins) rather
//! than by trust in the algorithm that produced it.
//!
//! Modules:
//!
//! - [`series`]: finite Taylor data for holomorphic functions, with Möbius
//!   composition.
//! - [`mobius`]: the involutive disk automorphisms `(a - z)/(1 - āz)` and
//!   images of centered subdisks.
//! - [`weights`]: the superharmonic weight catalog and its hypothesis checks.
//! - [`energy`]: Hardy/Dirichlet/weighted-Dirichlet norms and the image-area
//!   bound.
//! - [`zeros`]: winding numbers, polynomial roots, nonvanishing certificates.
//! - [`surjective`]: the certified ladder construction, target hitting and
//!   coverage via a Rouché inequality chain.
//! - [`gkz`]: finite-order linear functionals, point-evaluation
//!   classification, nowhere-vanishing witnesses and decompositions, and
//!   weighted-composition-operator extraction.

pub mod dd;
pub mod energy;
pub mod error;
pub mod gkz;
pub mod mobius;
pub mod quad;
mod serde_util;
pub mod series;
pub mod surjective;
pub mod weights;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

use serde::{Deserialize, Serialize};

/// Arithmetic mode for the near-boundary ladder evaluations.
///
/// `Standard` is plain f64 with offset (`eps`) bookkeeping; `Extended` routes
/// the mixed-scale evaluation paths through double-double arithmetic and
/// raises the ladder depth cap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Standard,
    Extended,
}

impl std::str::FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Precision::Standard),
            "extended" => Ok(Precision::Extended),
            other => Err(Error::InvalidInput(format!(
                "precision must be \"standard\" or \"extended\", got {other:?}"
            ))),
        }
    }
}
