use crate::alexander::{alexander_polynomial, AlexanderError};
use crate::laurent::LaurentPolynomial;
use crate::presentation::Presentation;

use super::montesinos::{LinkDescriptor, TwoBridgeKind, TwoBridgeLink};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnknotEvidence {
    TwoBridge(TwoBridgeLink),
    /// `Δ = 1` and Tietze moves reached `<x | >`.
    FreeRankOne {
        steps: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnottedEvidence {
    TwoBridge(TwoBridgeLink),
    AlexanderPolynomial(LaurentPolynomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnknotStatus {
    Unknot(UnknotEvidence),
    Knotted(KnottedEvidence),
    /// A link with more than one component.
    Link,
    Unknown,
}

impl UnknotStatus {
    pub fn is_unknot(&self) -> bool {
        matches!(self, UnknotStatus::Unknot(_))
    }
}

/// Two-bridge classification when a descriptor is given, otherwise `Δ`
/// together with a bounded Tietze simplification of the knot group.
pub fn detect_unknot(
    p: &Presentation,
    descriptor: Option<&LinkDescriptor>,
    tietze_budget: usize,
) -> Result<UnknotStatus, AlexanderError> {
    if let Some(LinkDescriptor::TwoBridge(b)) = descriptor {
        return Ok(match b.kind {
            TwoBridgeKind::Unknot => UnknotStatus::Unknot(UnknotEvidence::TwoBridge(*b)),
            TwoBridgeKind::Knot => UnknotStatus::Knotted(KnottedEvidence::TwoBridge(*b)),
            TwoBridgeKind::TwoComponentLink => UnknotStatus::Link,
        });
    }
    let delta = alexander_polynomial(p)?;
    if delta != LaurentPolynomial::one() {
        return Ok(UnknotStatus::Knotted(KnottedEvidence::AlexanderPolynomial(
            delta,
        )));
    }
    let (simple, steps) = p.tietze_simplify(tietze_budget);
    if simple.generator_count() == 1 && simple.relators().iter().all(|r| r.is_identity()) {
        return Ok(UnknotStatus::Unknot(UnknotEvidence::FreeRankOne { steps }));
    }
    Ok(UnknotStatus::Unknown)
}
