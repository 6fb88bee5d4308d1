//! Knot diagrams, their Wirtinger presentations, local moves and Montesinos
//! knots.

mod braid;
mod diagram;
mod gauss;
mod montesinos;
mod pd;
mod search;
mod tangle;
mod unknot;
mod wirtinger;

pub use braid::{pd_from_braid, BraidError, BraidWord};
pub use diagram::DiagramError;
pub use gauss::{GaussCode, GaussError, GaussLetter};
pub use montesinos::{
    classify_montesinos, montesinos_equiv, pd_for_montesinos, pd_for_two_bridge,
    rational_unknotting_certificate, replace_tangle, two_bridge_classify, LinkDescriptor,
    MontesinosError, MontesinosKnot, RationalUnknottingCertificate, TwoBridgeKind, TwoBridgeLink,
};
pub use pd::{PdCode, PdError};
pub use search::{
    replay_certificate, simplify, unknottability_search, CertificateStep, ReplayError,
    ReplaySummary, SearchLimits, SearchOutcome, UnknottingCertificate,
};
pub use tangle::{
    cf_from_fraction, is_proper_replacement, pairing, tangle_fraction, EndpointPairing,
    RationalTangle, TangleError,
};
pub use unknot::{detect_unknot, KnottedEvidence, UnknotEvidence, UnknotStatus};
pub use wirtinger::{
    crossing_change_relator_delta, virtualize_relator_delta, wirtinger_from_gauss,
    wirtinger_from_pd, RelatorDelta, WirtingerError,
};

use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}
