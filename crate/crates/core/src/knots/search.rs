//! Bounded search for sequences of virtualizations and crossing changes
//! that, interleaved with Reidemeister I/II simplifications, reach the
//! crossingless diagram.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::gauss::{GaussCode, GaussError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateStep {
    Virtualize(u32),
    CrossingChange(u32),
    R1(u32),
    R2(u32, u32),
}

impl fmt::Display for CertificateStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateStep::Virtualize(c) => write!(f, "virtualize {}", c),
            CertificateStep::CrossingChange(c) => write!(f, "crossing-change {}", c),
            CertificateStep::R1(c) => write!(f, "R1 {}", c),
            CertificateStep::R2(c, d) => write!(f, "R2 {} {}", c, d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknottingCertificate {
    pub initial: GaussCode,
    pub steps: Vec<CertificateStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub virtualizations: usize,
    pub crossing_changes: usize,
    pub max_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(UnknottingCertificate),
    /// Every reachable state within the move budgets was explored. Greedy
    /// simplification is incomplete, so this is not a proof.
    NotFound {
        states: usize,
    },
    StateLimit {
        states: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: {source}")]
    Move { step: usize, source: GaussError },
    #[error("step {step}: crossing {id} is not a Reidemeister I kink")]
    NotR1 { step: usize, id: u32 },
    #[error("step {step}: crossings {a}, {b} do not form a Reidemeister II bigon")]
    NotR2 { step: usize, a: u32, b: u32 },
    #[error("final diagram has {0} crossings")]
    NotTrivial(usize),
    #[error("{used} {kind} exceed the budget of {budget}")]
    Budget {
        kind: &'static str,
        used: usize,
        budget: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplaySummary {
    pub virtualizations: usize,
    pub crossing_changes: usize,
}

/// Greedy Reidemeister I/II removal until neither applies.
pub fn simplify(code: &GaussCode) -> (GaussCode, Vec<CertificateStep>) {
    let mut code = code.clone();
    let mut steps = Vec::new();
    loop {
        if let Some(c) = code.find_r1() {
            code = code.remove(&[c]);
            steps.push(CertificateStep::R1(c));
        } else if let Some((c, d)) = code.find_r2() {
            code = code.remove(&[c, d]);
            steps.push(CertificateStep::R2(c, d));
        } else {
            return (code, steps);
        }
    }
}

struct Node {
    code: GaussCode,
    virt: usize,
    cc: usize,
    steps: Vec<CertificateStep>,
}

/// Breadth-first search over move sequences using at most
/// `limits.virtualizations` virtualizations and `limits.crossing_changes`
/// crossing changes; states are deduplicated up to rotation, reversal and
/// relabeling.
pub fn unknottability_search(code: &GaussCode, limits: SearchLimits) -> SearchOutcome {
    let (start, steps) = simplify(code);
    let mut seen: BTreeSet<(GaussCode, usize, usize)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert((start.canonical(), 0, 0));
    queue.push_back(Node {
        code: start,
        virt: 0,
        cc: 0,
        steps,
    });
    while let Some(node) = queue.pop_front() {
        if node.code.is_empty() {
            return SearchOutcome::Found(UnknottingCertificate {
                initial: code.clone(),
                steps: node.steps,
            });
        }
        for id in 1..=node.code.crossing_count() as u32 {
            let mut moves = Vec::new();
            if node.virt < limits.virtualizations {
                let next = node.code.virtualize(id).expect("valid id");
                moves.push((
                    next,
                    CertificateStep::Virtualize(id),
                    node.virt + 1,
                    node.cc,
                ));
            }
            if node.cc < limits.crossing_changes {
                let next = node.code.crossing_change(id).expect("valid id");
                moves.push((
                    next,
                    CertificateStep::CrossingChange(id),
                    node.virt,
                    node.cc + 1,
                ));
            }
            for (next, step, virt, cc) in moves {
                let (next, simp) = simplify(&next);
                if !seen.insert((next.canonical(), virt, cc)) {
                    continue;
                }
                if seen.len() > limits.max_states {
                    return SearchOutcome::StateLimit { states: seen.len() };
                }
                let mut steps = node.steps.clone();
                steps.push(step);
                steps.extend(simp);
                queue.push_back(Node {
                    code: next,
                    virt,
                    cc,
                    steps,
                });
            }
        }
    }
    SearchOutcome::NotFound { states: seen.len() }
}

fn cyclically_adjacent(n: usize, p: usize, q: usize) -> bool {
    (p + 1) % n == q || (q + 1) % n == p
}

/// Re-execute a certificate from its initial code, checking every
/// Reidemeister precondition directly on letter positions.
pub fn replay_certificate(
    cert: &UnknottingCertificate,
    virtualizations: usize,
    crossing_changes: usize,
) -> Result<ReplaySummary, ReplayError> {
    let mut code = cert.initial.clone();
    let mut summary = ReplaySummary {
        virtualizations: 0,
        crossing_changes: 0,
    };
    for (step, s) in cert.steps.iter().enumerate() {
        let n = code.len();
        code = match *s {
            CertificateStep::Virtualize(id) => {
                summary.virtualizations += 1;
                code.virtualize(id)
                    .map_err(|source| ReplayError::Move { step, source })?
            }
            CertificateStep::CrossingChange(id) => {
                summary.crossing_changes += 1;
                code.crossing_change(id)
                    .map_err(|source| ReplayError::Move { step, source })?
            }
            CertificateStep::R1(id) => {
                let (o, u) = code.positions(id).ok_or(ReplayError::NotR1 { step, id })?;
                if !cyclically_adjacent(n, o, u) {
                    return Err(ReplayError::NotR1 { step, id });
                }
                code.remove(&[id])
            }
            CertificateStep::R2(a, b) => {
                let bad = ReplayError::NotR2 { step, a, b };
                let (oa, ua) = code.positions(a).ok_or(bad.clone())?;
                let (ob, ub) = code.positions(b).ok_or(bad.clone())?;
                let opposite = code.letters()[oa].sign != code.letters()[ob].sign;
                if a == b
                    || !opposite
                    || !cyclically_adjacent(n, oa, ob)
                    || !cyclically_adjacent(n, ua, ub)
                {
                    return Err(bad);
                }
                let (lo, hi) = (a.min(b), a.max(b));
                code.remove(&[lo, hi])
            }
        };
    }
    if !code.is_empty() {
        return Err(ReplayError::NotTrivial(code.crossing_count()));
    }
    if summary.virtualizations > virtualizations {
        return Err(ReplayError::Budget {
            kind: "virtualizations",
            used: summary.virtualizations,
            budget: virtualizations,
        });
    }
    if summary.crossing_changes > crossing_changes {
        return Err(ReplayError::Budget {
            kind: "crossing changes",
            used: summary.crossing_changes,
            budget: crossing_changes,
        });
    }
    Ok(summary)
}
