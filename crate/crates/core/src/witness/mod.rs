//! Explicit weak-homeomorphism evidence on presentations: piecewise maps,
//! closed-cover certificates and their finite-depth verification, the
//! Cantor–Bernstein construction, layered identities and derivative chains.
//!
//! Verification samples points; a passing report means no violation was
//! found at the stated depth and label bound, nothing more.

mod bernstein;
mod cert;
mod layers;
mod map;
mod script;

use serde::{Deserialize, Serialize};

use crate::point::Lasso;
use crate::present::{enumerate_depth, TreePresentation};

pub use self::bernstein::{cantor_bernstein, check_embedding, Bernstein};
pub use self::cert::{
    compose, verify, verify_with_bound, Certificate, Certified, Count, CoverPiece, Direction,
    VerificationReport, Violation,
};
pub use self::layers::{layered_identity, wdi_chain, DerivativeChain};
pub use self::map::{Located, MapSpec, Parity, PieceMap, Primitive, SetSpec, Side};
pub use self::script::{canonical_witness, embed_lib, DerivationScript, EmbedEntry, Step};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WitnessError {
    #[error("codomain of the first map does not match the domain of the second")]
    DomainMismatch,
    #[error("map is not injective: {0} and {1} have the same image")]
    NotInjective(Lasso, Lasso),
    #[error("image not closed at depth {depth} (near prefix {prefix:?})")]
    ImageNotClosedAtDepth { depth: usize, prefix: Vec<u64> },
    #[error("{0} is mapped outside the codomain")]
    OutsideCodomain(Lasso),
    #[error("filtration is not decreasing at depth {depth}: {point} is in layer {layer} but not in layer {previous}")]
    NotDecreasing { depth: usize, point: Lasso, layer: usize, previous: usize },
    #[error("map is not built from invertible primitive pieces")]
    NotPiecewise,
    #[error("no constructive witness for {0}")]
    UnsupportedWitness(String),
}

/// A presentation, optionally cut down to a definable subset.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Space {
    pub presentation: TreePresentation,
    #[serde(default, skip_serializing_if = "is_all")]
    pub within: SetSpec,
}

fn is_all(s: &SetSpec) -> bool {
    matches!(s, SetSpec::All)
}

impl Space {
    pub fn new(presentation: TreePresentation) -> Space {
        Space { presentation, within: SetSpec::All }
    }

    pub fn contains(&self, x: &Lasso) -> bool {
        self.presentation.contains(x) && self.within.contains(x)
    }

    /// Least continuations of the admitted depth-`d` prefixes.
    pub fn base_sample(&self, depth: usize, bound: u64) -> Vec<Lasso> {
        let mut out: Vec<Lasso> = enumerate_depth(&self.presentation, depth, bound)
            .words
            .iter()
            .flat_map(|w| self.presentation.continuations(w, depth))
            .filter(|x| self.within.contains(x))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// [`Space::base_sample`] together with least continuations one level
    /// deeper, so that every sampled prefix has all its bounded splits.
    pub fn sample(&self, depth: usize, bound: u64) -> Vec<Lasso> {
        let mut out = self.base_sample(depth, bound);
        for w in enumerate_depth(&self.presentation, depth + 1, bound).words {
            out.extend(self.presentation.continuations(&w, depth + 1).into_iter().filter(|x| self.within.contains(x)));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl From<TreePresentation> for Space {
    fn from(p: TreePresentation) -> Space {
        Space::new(p)
    }
}
