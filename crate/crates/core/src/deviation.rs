//! Fixed catalogue of readings the checkers adopt where the textbook
//! statement of a condition is self-contradictory or under-specified.
//!
//! Verdicts list the entries they relied on; reports merge them in
//! catalogue order.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deviation {
    /// Condition (vii) is checked as `M(x,t) < 1`; `M > 0` contradicts `M(0,t) = 0`.
    NonMembershipBelowOne,
    /// Condition (xi) constrains `M`: non-increasing in `t`, tending to 0.
    MonotoneConditionOnM,
    /// (xiii)/(xiv) are checked as: every sampled `x != 0` has some `t`
    /// with `N(x,t)` below (and `M(x,t)` above) the threshold.
    VanishingConditionsContrapositive,
    /// The non-membership alpha-norm is the infimum of `{t : M(x,t) <= alpha}`.
    NonMembershipAlphaNormInfimum,
    /// The non-membership alpha-norm family is reported as observed, not
    /// asserted to be ascending.
    NonMembershipFamilyDirectionObserved,
    /// Verdicts about sequences only hold on the finite prefix examined.
    FinitePrefixOnly,
    /// Closedness of a finite sample is declared metadata, not computed.
    DeclaredClosedness,
    /// Closure membership of a finite sample uses nearest-point distances.
    SampledClosure,
    /// Continuity probes: seeded shells plus radial escalation along fixed rays.
    SampledContinuityProbes,
    /// Strong continuity treats coincident images as satisfying the strict `M` condition.
    StrictConditionAtCoincidence,
}

impl Deviation {
    pub fn describe(self) -> &'static str {
        match self {
            Deviation::NonMembershipBelowOne => {
                "condition (vii) checked as M(x,t) < 1 (M > 0 would contradict M(0,t) = 0)"
            }
            Deviation::MonotoneConditionOnM => {
                "condition (xi) read as: M(x,.) non-increasing with limit 0 as t grows"
            }
            Deviation::VanishingConditionsContrapositive => {
                "conditions (xiii)/(xiv) checked in sampled contrapositive form on a shrinking t grid"
            }
            Deviation::NonMembershipAlphaNormInfimum => {
                "non-membership alpha-norm computed as inf{t : M(x,t) <= alpha}; the supremum is infinite for x != 0"
            }
            Deviation::NonMembershipFamilyDirectionObserved => {
                "non-membership alpha-norm family: monotonicity direction reported as observed"
            }
            Deviation::FinitePrefixOnly => "sequence verdicts are certified on the finite prefix only",
            Deviation::DeclaredClosedness => "closedness of a finite sample is taken from the declared flag",
            Deviation::SampledClosure => {
                "closure membership decided from nearest-point distances within the finite sample"
            }
            Deviation::SampledContinuityProbes => {
                "continuity quantifiers over all x are sampled: seeded shells plus radial escalation"
            }
            Deviation::StrictConditionAtCoincidence => {
                "strict M-inequality treated as satisfied where the image difference is exactly zero"
            }
        }
    }
}
