//! The invariant report: Alexander data, the Ma-Qiu interval and the chain
//! `m <= a <= u_q <= u` with the certificate behind each bound.

use std::fmt::Write as _;

use serde::Serialize;

use mqindex_core::alexander::{
    alexander_polynomial, knot_determinant, nakanishi_lower, IdealDecision, ProperWitness,
    UnitCertificate,
};
use mqindex_core::knots::{
    classify_montesinos, detect_unknot, pd_for_two_bridge, rational_unknotting_certificate,
    replay_certificate, unknottability_search, wirtinger_from_pd, GaussCode, LinkDescriptor,
    SearchOutcome, UnknotEvidence, UnknotStatus,
};
use mqindex_core::mq::{mq_interval, LowerCertificate, MqInterval, UpperCertificate};
use mqindex_core::presentation::Presentation;
use mqindex_core::LaurentPolynomial;

use crate::config::RunConfiguration;
use crate::error::CliError;
use crate::input::KnotInput;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputRecord {
    pub format: String,
    pub text: String,
    pub crossings: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupRecord {
    pub generators: usize,
    pub relators: usize,
    pub simplified_generators: usize,
    pub simplified_relators: usize,
    pub abelianization: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealRecord {
    pub index: usize,
    pub generators: usize,
    pub decision: String,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalRecord {
    pub lower: usize,
    pub upper: Option<usize>,
    pub lower_certificate: String,
    pub upper_certificate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalRecord {
    pub position: usize,
    pub from: String,
    pub to: String,
    pub result: String,
    /// `Δ` and determinant of a diagram built from the result.
    pub result_alexander: String,
    pub result_determinant: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingChangeRecord {
    pub outcome: String,
    pub states: usize,
    pub crossing_changes: Option<usize>,
    pub steps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub lower: usize,
    pub upper: Option<usize>,
    pub lower_source: String,
    pub upper_source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub m: Term,
    pub a: Term,
    pub u_q: Option<Term>,
    pub u: Option<Term>,
    pub conclusions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub input: InputRecord,
    pub group: GroupRecord,
    pub alexander_polynomial: String,
    pub determinant: String,
    pub elementary_ideals: Vec<IdealRecord>,
    pub nakanishi_lower: usize,
    pub mq_interval: IntervalRecord,
    pub unknot: String,
    pub rational_unknotting: Option<RationalRecord>,
    pub crossing_change_unknotting: Option<CrossingChangeRecord>,
    pub chain: Chain,
}

pub fn proper_text(w: &ProperWitness) -> String {
    match w {
        ProperWitness::AllZero => "all minors vanish".into(),
        ProperWitness::RationalGcd(g) => format!("common factor {g} over Q"),
        ProperWitness::Modular { modulus, gcd } => format!("common factor {gcd} mod {modulus}"),
    }
}

pub fn unit_text(u: &UnitCertificate) -> String {
    let mut s = format!(
        "combination of {} minors = {}",
        u.coefficients.len(),
        LaurentPolynomial::monomial(u.integer.clone(), u.shift)
    );
    if !u.residues.is_empty() {
        let moduli: Vec<String> = u.residues.iter().map(|r| r.modulus.to_string()).collect();
        let _ = write!(s, "; combinations = 1 mod {}", moduli.join(", "));
    }
    s
}

fn interval_record(i: &MqInterval) -> IntervalRecord {
    IntervalRecord {
        lower: i.lower,
        upper: i.upper,
        lower_certificate: match i.lower_certificate {
            LowerCertificate::Trivial => "trivial".into(),
            LowerCertificate::Nakanishi(k) => format!("nakanishi index lower bound {k}"),
        },
        upper_certificate: i.upper_certificate.as_ref().map(|c| match c {
            UpperCertificate::RankBound {
                simplified,
                certificate,
            } => format!(
                "rank bound on the {} presentation ({} generators, h = {}): {} words",
                if *simplified {
                    "Tietze-simplified"
                } else {
                    "input"
                },
                certificate.witness.presentation.generator_count(),
                certificate.h,
                certificate.witness.len()
            ),
            UpperCertificate::User(w) => format!("verified user witness of {} words", w.len()),
        }),
    }
}

fn unknot_text(s: &UnknotStatus) -> String {
    match s {
        UnknotStatus::Unknot(UnknotEvidence::TwoBridge(b)) => format!("unknot ({b})"),
        UnknotStatus::Unknot(UnknotEvidence::FreeRankOne { steps }) => {
            format!("unknot (Δ = 1 and the group simplifies to <x | > in {steps} Tietze steps)")
        }
        UnknotStatus::Knotted(_) => "knotted (Δ ≠ 1)".into(),
        UnknotStatus::Link => "link".into(),
        UnknotStatus::Unknown => "unknown (Δ = 1 but the group did not simplify to Z)".into(),
    }
}

fn crossing_change_search(
    code: &GaussCode,
    config: &RunConfiguration,
) -> Result<(CrossingChangeRecord, Option<usize>), CliError> {
    let limits = config.search_limits(0, config.search_depth);
    Ok(match unknottability_search(code, limits) {
        SearchOutcome::Found(cert) => {
            let summary = replay_certificate(&cert, 0, config.search_depth)
                .map_err(|e| CliError::inconsistency(format!("certificate replay failed: {e}")))?;
            (
                CrossingChangeRecord {
                    outcome: "found".into(),
                    states: 0,
                    crossing_changes: Some(summary.crossing_changes),
                    steps: cert.steps.iter().map(ToString::to_string).collect(),
                },
                Some(summary.crossing_changes),
            )
        }
        SearchOutcome::NotFound { states } => (
            CrossingChangeRecord {
                outcome: "not-found".into(),
                states,
                crossing_changes: None,
                steps: Vec::new(),
            },
            None,
        ),
        SearchOutcome::StateLimit { states } => (
            CrossingChangeRecord {
                outcome: "state-limit".into(),
                states,
                crossing_changes: None,
                steps: Vec::new(),
            },
            None,
        ),
    })
}

fn rational_record(
    input: &KnotInput,
    config: &RunConfiguration,
) -> Result<Option<RationalRecord>, CliError> {
    let KnotInput::Montesinos(m) = input else {
        return Ok(None);
    };
    let Some(cert) = rational_unknotting_certificate(m, config.rational_bound) else {
        return Ok(None);
    };
    let (p, q) = (cert.result.p, cert.result.q);
    let pd = pd_for_two_bridge(p, q)
        .map_err(|e| CliError::inconsistency(format!("diagram of {}: {e}", cert.result)))?;
    let g = wirtinger_from_pd(&pd);
    let delta = alexander_polynomial(&g).map_err(|e| CliError::inconsistency(e.to_string()))?;
    let det = knot_determinant(&g).map_err(|e| CliError::inconsistency(e.to_string()))?;
    if delta != LaurentPolynomial::one() {
        return Err(CliError::inconsistency(format!(
            "replacement result {} has Δ = {delta}",
            cert.result
        )));
    }
    Ok(Some(RationalRecord {
        position: cert.position,
        from: cert.from.to_string(),
        to: cert.to.to_string(),
        result: cert.result.to_string(),
        result_alexander: delta.to_string(),
        result_determinant: det.to_string(),
    }))
}

fn min_bound(a: Option<(usize, String)>, b: Option<(usize, String)>) -> Option<(usize, String)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.0 < x.0 { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn term(
    lower: usize,
    lower_source: &str,
    upper: Option<(usize, String)>,
) -> Result<Term, CliError> {
    if let Some((u, src)) = &upper {
        if lower > *u {
            return Err(CliError::inconsistency(format!(
                "lower bound {lower} ({lower_source}) exceeds upper bound {u} ({src})"
            )));
        }
    }
    Ok(Term {
        lower,
        upper: upper.as_ref().map(|x| x.0),
        lower_source: lower_source.into(),
        upper_source: upper.map(|x| x.1),
    })
}

/// Compute every invariant of a knot input and assemble the chain.
pub fn build_report(
    input: &KnotInput,
    config: &RunConfiguration,
) -> Result<InvariantReport, CliError> {
    let p: Presentation = input.presentation()?;
    let ab = p.abelianization();
    if !ab.is_infinite_cyclic() {
        return Err(CliError::hypothesis(format!(
            "knot invariants need H_1 = Z, but the group has H_1 = {ab}"
        )));
    }
    let (simple, _) = p.tietze_simplify(config.tietze_budget);
    let group = GroupRecord {
        generators: p.generator_count(),
        relators: p.relators().len(),
        simplified_generators: simple.generator_count(),
        simplified_relators: simple.relators().len(),
        abelianization: ab.to_string(),
    };
    let alex_err = |e: mqindex_core::alexander::AlexanderError| CliError::hypothesis(e.to_string());
    let delta = alexander_polynomial(&p).map_err(alex_err)?;
    let det = knot_determinant(&p).map_err(alex_err)?;
    let nak = nakanishi_lower(&p).map_err(alex_err)?;
    let elementary_ideals = nak
        .ideals
        .iter()
        .map(|e| IdealRecord {
            index: e.index,
            generators: e.generators.len(),
            decision: if e.decision.is_unit() {
                "unit"
            } else {
                "proper"
            }
            .into(),
            certificate: match &e.decision {
                IdealDecision::Unit(u) => unit_text(u),
                IdealDecision::Proper(w) => proper_text(w),
            },
        })
        .collect();
    let interval = mq_interval(&p, Some(nak.value), &[], config.tietze_budget)
        .map_err(|e| CliError::inconsistency(e.to_string()))?;

    let two_bridge = match input {
        KnotInput::Montesinos(m) => match classify_montesinos(m) {
            d @ LinkDescriptor::TwoBridge(_) => Some(d),
            LinkDescriptor::Montesinos(_) => None,
        },
        _ => None,
    };
    let unknot = detect_unknot(&p, two_bridge.as_ref(), config.tietze_budget).map_err(alex_err)?;

    let diagram = input.gauss()?;
    let rational = rational_record(input, config)?;
    let classical = !matches!(input, KnotInput::Gauss(_) | KnotInput::Presentation(_));

    let (cc_record, cc_bound) = match &diagram {
        Some(code) => {
            let (r, b) = crossing_change_search(code, config)?;
            (Some(r), b)
        }
        None => (None, None),
    };

    let m_lower = nak.value;
    let m_source = if m_lower == 0 {
        "trivial".to_string()
    } else {
        format!("E_{} proper", m_lower - 1)
    };
    let mut u_upper = cc_bound.map(|n| {
        (
            n,
            format!("crossing-change certificate with {n} changes, replayed"),
        )
    });
    if unknot.is_unknot() && diagram.is_some() {
        u_upper = min_bound(u_upper, Some((0, unknot_text(&unknot))));
    }
    let uq_upper = if classical {
        min_bound(
            rational.as_ref().map(|r| {
                (
                    1,
                    format!(
                        "rational replacement {} -> {} at position {}",
                        r.from, r.to, r.position
                    ),
                )
            }),
            u_upper.clone().map(|(n, _)| (n, "u_q <= u".to_string())),
        )
    } else {
        None
    };
    let mq_upper = interval.upper.map(|u| {
        (
            u,
            interval_record(&interval)
                .upper_certificate
                .unwrap_or_default(),
        )
    });
    let via = if classical { &uq_upper } else { &u_upper };
    let a_upper = min_bound(
        mq_upper,
        via.clone().map(|(n, _)| {
            (
                n,
                if classical {
                    "a <= u_q"
                } else {
                    "a <= number of crossing changes"
                }
                .to_string(),
            )
        }),
    );
    let m = term(
        m_lower,
        &m_source,
        a_upper.clone().map(|(n, _)| (n, "m <= a".to_string())),
    )?;
    let a = term(m_lower, "a >= m", a_upper.clone())?;
    let u_q = if classical {
        Some(term(m_lower, "u_q >= a", uq_upper)?)
    } else {
        None
    };
    let u = if diagram.is_some() {
        Some(term(
            m_lower,
            if classical { "u >= u_q" } else { "u >= a" },
            u_upper,
        )?)
    } else {
        None
    };

    let mut conclusions = Vec::new();
    if a.upper == Some(m_lower) {
        conclusions.push(format!("m = a = {m_lower}"));
    }
    if let Some(t) = &u_q {
        if t.upper == Some(t.lower) {
            conclusions.push(format!("u_q = {}", t.lower));
        }
    }
    if let Some(t) = &u {
        if t.upper == Some(t.lower) {
            conclusions.push(format!("u = {}", t.lower));
        }
    }

    Ok(InvariantReport {
        input: InputRecord {
            format: input.format().to_string(),
            text: input.text(),
            crossings: diagram.as_ref().map(GaussCode::crossing_count),
        },
        group,
        alexander_polynomial: delta.to_string(),
        determinant: det.to_string(),
        elementary_ideals,
        nakanishi_lower: nak.value,
        mq_interval: interval_record(&interval),
        unknot: unknot_text(&unknot),
        rational_unknotting: rational,
        crossing_change_unknotting: cc_record,
        chain: Chain {
            m,
            a,
            u_q,
            u,
            conclusions,
        },
    })
}

fn bound_text(t: &Term) -> String {
    match (&t.upper, &t.upper_source) {
        (Some(u), Some(src)) if *u == t.lower => format!("= {u}  [{}; {}]", t.lower_source, src),
        (Some(u), Some(src)) => format!("in [{}, {u}]  [{}; {}]", t.lower, t.lower_source, src),
        _ => format!(">= {}  [{}]", t.lower, t.lower_source),
    }
}

impl InvariantReport {
    pub fn render_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input: {} {}", self.input.format, self.input.text);
        if let Some(c) = self.input.crossings {
            let _ = writeln!(s, "crossings: {c}");
        }
        let g = &self.group;
        let _ = writeln!(
            s,
            "group: {} generators, {} relators; simplified: {} generators, {} relators; H_1 = {}",
            g.generators,
            g.relators,
            g.simplified_generators,
            g.simplified_relators,
            g.abelianization
        );
        let _ = writeln!(s, "alexander polynomial: {}", self.alexander_polynomial);
        let _ = writeln!(s, "determinant: {}", self.determinant);
        for e in &self.elementary_ideals {
            let _ = writeln!(
                s,
                "E_{}: {} ({} generators; {})",
                e.index, e.decision, e.generators, e.certificate
            );
        }
        let _ = writeln!(s, "nakanishi lower bound: {}", self.nakanishi_lower);
        let i = &self.mq_interval;
        let _ = writeln!(
            s,
            "ma-qiu interval: [{}, {}]  (lower: {}; upper: {})",
            i.lower,
            i.upper.map_or("inf".to_string(), |u| u.to_string()),
            i.lower_certificate,
            i.upper_certificate.as_deref().unwrap_or("none")
        );
        let _ = writeln!(s, "unknot detection: {}", self.unknot);
        if let Some(r) = &self.rational_unknotting {
            let _ = writeln!(
                s,
                "rational unknotting: position {}: {} -> {} gives {} (Δ = {}, det {})",
                r.position, r.from, r.to, r.result, r.result_alexander, r.result_determinant
            );
        }
        if let Some(c) = &self.crossing_change_unknotting {
            match c.crossing_changes {
                Some(n) => {
                    let _ = if c.steps.is_empty() {
                        writeln!(s, "crossing-change unknotting: {n} changes")
                    } else {
                        writeln!(
                            s,
                            "crossing-change unknotting: {n} changes: {}",
                            c.steps.join(", ")
                        )
                    };
                }
                None => {
                    let _ = writeln!(
                        s,
                        "crossing-change unknotting: {} ({} states)",
                        c.outcome, c.states
                    );
                }
            }
        }
        let _ = writeln!(s, "chain m(K) <= a(K) <= u_q(K) <= u(K):");
        let _ = writeln!(s, "  m   {}", bound_text(&self.chain.m));
        let _ = writeln!(s, "  a   {}", bound_text(&self.chain.a));
        if let Some(t) = &self.chain.u_q {
            let _ = writeln!(s, "  u_q {}", bound_text(t));
        }
        if let Some(t) = &self.chain.u {
            let _ = writeln!(s, "  u   {}", bound_text(t));
        }
        for c in &self.chain.conclusions {
            let _ = writeln!(s, "{c}");
        }
        s
    }
}
