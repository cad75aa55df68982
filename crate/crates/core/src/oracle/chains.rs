use super::{canonical_code, CanonicalCode, ChainSpec, Rational};
use crate::chain_fixed::FixedChain;
use crate::chain_flip::FlipState;
use crate::dyck::DyckPair;
use crate::orientation::{Orientation3, OrientationKey};

/// `M_TR` on the orientations of one triangulation.
pub struct TrChain<'a>(pub &'a FixedChain);

/// `M_CR` on the orientations of one triangulation.
pub struct CrChain<'a>(pub &'a FixedChain);

/// `M_EF`; states are keyed by their canonical code, so relabelled copies of
/// one state coincide.
pub struct EfChain;

/// `M_DK` on pairs of Dyck paths.
pub struct DkChain;

impl ChainSpec for TrChain<'_> {
    type State = Orientation3;
    type Key = OrientationKey;

    fn tag(&self) -> &'static str {
        "tr"
    }

    fn key(&self, s: &Orientation3) -> OrientationKey {
        s.key()
    }

    fn successors(&self, s: &Orientation3) -> Vec<(Rational, Orientation3)> {
        self.0.mtr_transitions(s)
    }
}

impl ChainSpec for CrChain<'_> {
    type State = Orientation3;
    type Key = OrientationKey;

    fn tag(&self) -> &'static str {
        "cr"
    }

    fn key(&self, s: &Orientation3) -> OrientationKey {
        s.key()
    }

    fn successors(&self, s: &Orientation3) -> Vec<(Rational, Orientation3)> {
        self.0.mcr_transitions(s)
    }
}

impl ChainSpec for EfChain {
    type State = FlipState;
    type Key = CanonicalCode;

    fn tag(&self) -> &'static str {
        "ef"
    }

    fn key(&self, s: &FlipState) -> CanonicalCode {
        canonical_code(s)
    }

    fn successors(&self, s: &FlipState) -> Vec<(Rational, FlipState)> {
        s.mef_transitions()
    }
}

impl ChainSpec for DkChain {
    type State = DyckPair;
    type Key = DyckPair;

    fn tag(&self) -> &'static str {
        "dk"
    }

    fn key(&self, s: &DyckPair) -> DyckPair {
        s.clone()
    }

    fn successors(&self, s: &DyckPair) -> Vec<(Rational, DyckPair)> {
        s.mdk_transitions()
    }
}
