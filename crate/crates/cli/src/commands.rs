use std::fmt::Write as _;

use serde_json::{json, Value};

use mqindex_core::alexander::nakanishi_lower;
use mqindex_core::knots::{
    crossing_change_relator_delta, detect_unknot, replace_tangle, replay_certificate, simplify,
    unknottability_search, virtualize_relator_delta, wirtinger_from_gauss, GaussCode,
    LinkDescriptor, MontesinosError, RationalTangle, RelatorDelta, SearchOutcome, UnknotStatus,
};
use mqindex_core::mq::{
    move_catalog, mq_interval, presentation_distance_bounds, rank_bound_ngs, transfer_ngs,
    DiagramKind, MqError, MqInterval, VerifyStrategy,
};
use mqindex_core::presentation::{Presentation, RelatorMatching};

use crate::config::RunConfiguration;
use crate::error::CliError;
use crate::files::{parse_word, PresentationFile, WitnessFile};
use crate::input::{read_source, Document, KnotInput};
use crate::report::build_report;
use crate::{CommandOutput, GroupCommand, InputArgs, MovesCommand, SearchArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    Necessary,
    Search,
    Completion,
}

fn emit(config: &RunConfiguration, human: String, record: Value) -> CommandOutput {
    if config.json() {
        CommandOutput::success(format!(
            "{}\n",
            serde_json::to_string_pretty(&record).expect("serializable")
        ))
    } else {
        CommandOutput::success(human)
    }
}

fn write_file(path: &Option<String>, contents: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, format!("{contents}\n"))
            .map_err(|e| CliError::input(format!("writing {p}: {e}")))?;
    }
    Ok(())
}

pub fn invariants(args: &InputArgs, config: &RunConfiguration) -> Result<CommandOutput, CliError> {
    let input = KnotInput::parse(&args.read()?, args.format)?;
    let report = build_report(&input, config)?;
    let record = serde_json::to_value(&report).expect("serializable");
    Ok(emit(config, report.render_human(), record))
}

pub fn load_presentation(path: &str) -> Result<Presentation, CliError> {
    let doc = Document::parse(&read_source(path)?);
    PresentationFile::parse(&doc.body)?.to_presentation()
}

fn load_witness(path: &str) -> Result<WitnessFile, CliError> {
    WitnessFile::parse(&Document::parse(&read_source(path)?).body)
}

fn mq_error(e: MqError) -> CliError {
    match e {
        MqError::Presentation(p) => CliError::input(p.to_string()),
        MqError::H1Mismatch(a, b) => {
            CliError::hypothesis(format!("H_1 of both groups must agree, got {a} and {b}"))
        }
        MqError::RelatorNotNullHomologous(r) => CliError::hypothesis(format!(
            "replacement relators must be null-homologous: `{r}` is not"
        )),
        MqError::GeneratorMismatch => {
            CliError::hypothesis("both presentations must use the same generators")
        }
        MqError::WitnessNotNullHomologous(w) => CliError::hypothesis(format!(
            "witness words must be null-homologous: `{w}` is not"
        )),
        MqError::Inverted { .. } => CliError::inconsistency(e.to_string()),
    }
}

fn strategy(s: Strategy, config: &RunConfiguration) -> VerifyStrategy {
    match s {
        Strategy::Necessary => VerifyStrategy::NecessaryOnly,
        Strategy::Search => VerifyStrategy::BoundedSearch(config.closure_search()),
        Strategy::Completion => VerifyStrategy::Completion(config.kb_limits()),
    }
}

/// Interval for a group, with the Nakanishi bound when `H_1 = Z`.
pub fn group_interval(p: &Presentation, config: &RunConfiguration) -> Result<MqInterval, CliError> {
    let nak = if p.abelianization().is_infinite_cyclic() {
        Some(
            nakanishi_lower(p)
                .map_err(|e| CliError::hypothesis(e.to_string()))?
                .value,
        )
    } else {
        None
    };
    mq_interval(p, nak, &[], config.tietze_budget).map_err(mq_error)
}

pub fn group(cmd: &GroupCommand, config: &RunConfiguration) -> Result<CommandOutput, CliError> {
    match cmd {
        GroupCommand::Abelianize(a) => {
            let p = load_presentation(&a.input)?;
            let ab = p.abelianization();
            Ok(emit(
                config,
                format!("H_1 = {ab}\n"),
                json!({
                    "abelianization": ab.to_string(),
                    "free_rank": ab.free_rank,
                    "torsion": ab.torsion_factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "minimal_generators": ab.minimal_generators,
                }),
            ))
        }
        GroupCommand::Nullhom { presentation, word } => {
            let p = load_presentation(&presentation.input)?;
            let w = parse_word(word)?;
            let nh = p
                .is_null_homologous(&w)
                .map_err(|e| CliError::input(e.to_string()))?;
            Ok(emit(
                config,
                format!(
                    "{w}: {}\n",
                    if nh {
                        "null-homologous"
                    } else {
                        "not null-homologous"
                    }
                ),
                json!({ "word": w.to_string(), "null_homologous": nh }),
            ))
        }
        GroupCommand::Replace {
            presentation,
            index,
            word,
            output,
        } => {
            let p = load_presentation(&presentation.input)?;
            let new = parse_word(word)?;
            p.check_word(&new)
                .map_err(|e| CliError::input(e.to_string()))?;
            let i = index
                .checked_sub(1)
                .filter(|&i| i < p.relators().len())
                .ok_or_else(|| CliError::input(format!("relator index {index} out of range")))?;
            let old = p.relators()[i].clone();
            let q = p
                .replace_relator_at(i, new.clone())
                .map_err(|e| CliError::input(e.to_string()))?;
            let forward = p
                .is_null_homologous(&new)
                .map_err(|e| CliError::input(e.to_string()))?;
            let backward = q
                .is_null_homologous(&old)
                .map_err(|e| CliError::input(e.to_string()))?;
            let file = PresentationFile::from(&q);
            write_file(output, &file.to_json())?;
            Ok(emit(
                config,
                format!(
                    "relator {index}: {old} -> {new}\nnew relator null-homologous in the old group: {forward}\nold relator null-homologous in the new group: {backward}\n{}\n",
                    file.to_json()
                ),
                json!({
                    "index": index,
                    "old": old.to_string(),
                    "new": new.to_string(),
                    "new_null_homologous_in_old": forward,
                    "old_null_homologous_in_new": backward,
                    "presentation": file,
                }),
            ))
        }
        GroupCommand::Transfer {
            presentation,
            target,
            witness,
            output,
        } => {
            let p = load_presentation(&presentation.input)?;
            let q = load_presentation(target)?;
            let mut w = load_witness(witness)?.to_witness()?;
            if w.presentation != p {
                return Err(CliError::input(
                    "the witness belongs to a different presentation",
                ));
            }
            let input_status = w.verify(strategy(Strategy::Completion, config));
            let mut out = transfer_ngs(&p, &q, &w).map_err(mq_error)?;
            out.verify(strategy(Strategy::Completion, config));
            let diff = p
                .diff(&q, RelatorMatching::Exact)
                .map_err(|e| CliError::input(e.to_string()))?;
            let file = WitnessFile::from(&out);
            write_file(output, &file.to_json())?;
            Ok(emit(
                config,
                format!(
                    "{} relators replaced; input witness {} words ({input_status}); transferred witness {} words ({})\n{}\n",
                    diff.only_left.len(),
                    w.len(),
                    out.len(),
                    out.status,
                    file.to_json()
                ),
                json!({
                    "replaced": diff.only_left.len(),
                    "input_status": input_status.to_string(),
                    "size": out.len(),
                    "witness": file,
                }),
            ))
        }
        GroupCommand::RankBound {
            presentation,
            simplify,
            output,
        } => {
            let mut p = load_presentation(&presentation.input)?;
            if *simplify {
                p = p.tietze_simplify(config.tietze_budget).0;
            }
            let cert = rank_bound_ngs(&p);
            let mut w = cert.witness.clone();
            w.verify(strategy(Strategy::Completion, config));
            let file = WitnessFile::from(&w);
            write_file(output, &file.to_json())?;
            let images: Vec<String> = cert
                .transformed_generators
                .iter()
                .map(ToString::to_string)
                .collect();
            Ok(emit(
                config,
                format!(
                    "h = {}, {} generators, witness of {} words ({})\nnew basis: {}\n{}\n",
                    cert.h,
                    p.generator_count(),
                    w.len(),
                    w.status,
                    images.join(", "),
                    file.to_json()
                ),
                json!({
                    "h": cert.h,
                    "generators": p.generator_count(),
                    "basis": images,
                    "size": w.len(),
                    "witness": file,
                }),
            ))
        }
        GroupCommand::Verify {
            witness,
            strategy: s,
        } => {
            let mut w = load_witness(witness)?.to_witness()?;
            let status = w.verify(strategy(*s, config));
            let out = emit(
                config,
                format!("{status}\n"),
                json!({ "size": w.len(), "status": status.to_string() }),
            );
            if status == mqindex_core::mq::WitnessStatus::Refuted {
                return Ok(CommandOutput { code: 4, ..out });
            }
            Ok(out)
        }
        GroupCommand::Distance {
            presentation,
            target,
        } => {
            let p = load_presentation(&presentation.input)?;
            let q = load_presentation(target)?;
            if p.generators() != q.generators() {
                return Err(CliError::hypothesis(
                    "both presentations must use the same generators",
                ));
            }
            let ip = group_interval(&p, config)?;
            let iq = group_interval(&q, config)?;
            let d = presentation_distance_bounds(&p, &q, &ip, &iq, config.tietze_budget)
                .map_err(mq_error)?;
            Ok(emit(
                config,
                format!(
                    "a(G) in {ip}, a(G') in {iq}\n|a(G) - a(G')| <= d(G, G')\ndistance lower bound: {}\ndistance upper bound: {}\n",
                    d.lower, d.upper
                ),
                json!({
                    "interval": [ip.lower, ip.upper],
                    "target_interval": [iq.lower, iq.upper],
                    "lower": d.lower,
                    "upper": d.upper,
                }),
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSpec {
    CrossingChange(u32),
    Virtualize(u32),
    Rational { position: usize, to: RationalTangle },
    Sharp,
}

impl MoveSpec {
    pub fn parse(s: &str) -> Result<MoveSpec, CliError> {
        let bad = || {
            CliError::input(format!(
                "invalid move `{s}`; expected cc@k, virt@k or rational@k=p/q"
            ))
        };
        let (name, arg) = s.split_once('@').ok_or_else(bad)?;
        match name {
            "cc" | "crossing-change" => {
                Ok(MoveSpec::CrossingChange(arg.parse().map_err(|_| bad())?))
            }
            "virt" | "virtualization" => Ok(MoveSpec::Virtualize(arg.parse().map_err(|_| bad())?)),
            "rational" | "rational-replacement" => {
                let (pos, frac) = arg.split_once('=').ok_or_else(bad)?;
                let (p, q) = frac.split_once('/').unwrap_or((frac, "1"));
                let to = RationalTangle::new(
                    p.trim().parse().map_err(|_| bad())?,
                    q.trim().parse().map_err(|_| bad())?,
                )
                .map_err(|e| CliError::input(e.to_string()))?;
                Ok(MoveSpec::Rational {
                    position: pos.parse().map_err(|_| bad())?,
                    to,
                })
            }
            "sharp" => Ok(MoveSpec::Sharp),
            _ => Err(bad()),
        }
    }
}

fn recognize(code: &GaussCode, config: &RunConfiguration) -> Result<String, CliError> {
    let (reduced, _) = simplify(code);
    if reduced.is_empty() {
        return Ok("unknot (Reidemeister I/II reduce the diagram to no crossings)".into());
    }
    let p = wirtinger_from_gauss(code);
    Ok(
        match detect_unknot(&p, None, config.tietze_budget)
            .map_err(|e| CliError::hypothesis(e.to_string()))?
        {
            UnknotStatus::Unknot(_) => "unknot (Δ = 1 and the group is Z)".into(),
            UnknotStatus::Knotted(_) => "knotted (Δ ≠ 1)".into(),
            UnknotStatus::Link => "link".into(),
            UnknotStatus::Unknown => "unknown".into(),
        },
    )
}

fn delta_report(d: &RelatorDelta) -> Result<(String, Value), CliError> {
    let old = d.before.relators()[d.index].clone();
    let new = d.after.relators()[d.index].clone();
    let diff = d
        .before
        .diff(&d.after, RelatorMatching::Exact)
        .map_err(|e| CliError::inconsistency(e.to_string()))?;
    let forward = d
        .before
        .is_null_homologous(&new)
        .map_err(|e| CliError::inconsistency(e.to_string()))?;
    let backward = d
        .after
        .is_null_homologous(&old)
        .map_err(|e| CliError::inconsistency(e.to_string()))?;
    if diff.only_left.len() > 1 || !forward || !backward {
        return Err(CliError::inconsistency(
            "the move is not a single null-homologous relator replacement",
        ));
    }
    let human = format!(
        "relator {}: {old} -> {new}\nreplaced relators: {}; null-homologous both ways: {}\n",
        d.index + 1,
        diff.only_left.len(),
        forward && backward
    );
    Ok((
        human,
        json!({
            "index": d.index + 1,
            "old": old.to_string(),
            "new": new.to_string(),
            "replaced": diff.only_left.len(),
            "new_null_homologous_in_old": forward,
            "old_null_homologous_in_new": backward,
            "generators_before": d.before.generator_count(),
            "generators_after": d.after.generator_count(),
        }),
    ))
}

pub fn moves(cmd: &MovesCommand, config: &RunConfiguration) -> Result<CommandOutput, CliError> {
    match cmd {
        MovesCommand::List => {
            let mut human = String::from("move                  strands  relator cost  diagrams\n");
            let mut records = Vec::new();
            for e in move_catalog() {
                let kinds: Vec<&str> = e
                    .applicable
                    .iter()
                    .map(|k| match k {
                        DiagramKind::Classical => "classical",
                        DiagramKind::Virtual => "virtual",
                        DiagramKind::Welded => "welded",
                    })
                    .collect();
                let _ = writeln!(
                    human,
                    "{:<21} {:>7}  {:>12}  {}",
                    e.name,
                    e.strands,
                    e.relator_cost,
                    kinds.join(", ")
                );
                records.push(json!({
                    "name": e.name,
                    "strands": e.strands,
                    "relator_cost": e.relator_cost,
                    "applicable": kinds,
                }));
            }
            Ok(emit(config, human, json!({ "moves": records })))
        }
        MovesCommand::Apply { input, spec } => {
            let spec = MoveSpec::parse(spec)?;
            let parsed = KnotInput::parse(&input.read()?, input.format)?;
            apply_move(&parsed, &spec, config)
        }
    }
}

fn invalid_crossing(id: u32) -> CliError {
    CliError::input(format!("no crossing {id} in the diagram"))
}

pub fn apply_move(
    input: &KnotInput,
    spec: &MoveSpec,
    config: &RunConfiguration,
) -> Result<CommandOutput, CliError> {
    match (spec, input) {
        (MoveSpec::Sharp, _) => Err(CliError::input(
            "sharp moves are listed in the catalog only; diagram-level application is not supported",
        )),
        (MoveSpec::Rational { position, to }, KnotInput::Montesinos(m)) => {
            let d = replace_tangle(m, *position, *to).map_err(|e| match e {
                MontesinosError::Improper { .. } => CliError::hypothesis(format!("proper replacement required: {e}")),
                _ => CliError::input(e.to_string()),
            })?;
            let status = match &d {
                LinkDescriptor::TwoBridge(b) => format!("{:?}", b.kind).to_lowercase(),
                LinkDescriptor::Montesinos(_) => "montesinos".into(),
            };
            Ok(emit(
                config,
                format!("{m} -> {d} ({status})\n"),
                json!({ "input": m.to_string(), "result": d.to_string(), "classification": status }),
            ))
        }
        (MoveSpec::Rational { .. }, _) => Err(CliError::input("rational replacements need Montesinos input")),
        (MoveSpec::CrossingChange(id) | MoveSpec::Virtualize(id), KnotInput::Gauss(code)) => {
            if code.positions(*id).is_none() {
                return Err(invalid_crossing(*id));
            }
            let (new, delta) = match spec {
                MoveSpec::CrossingChange(_) => (
                    code.crossing_change(*id).map_err(|e| CliError::input(e.to_string()))?,
                    crossing_change_relator_delta(code, *id).map_err(|e| CliError::input(e.to_string()))?,
                ),
                _ => (
                    code.virtualize(*id).map_err(|e| CliError::input(e.to_string()))?,
                    virtualize_relator_delta(code, *id).map_err(|e| CliError::input(e.to_string()))?,
                ),
            };
            move_output(config, &new.to_string(), &new, &delta)
        }
        (MoveSpec::CrossingChange(k) | MoveSpec::Virtualize(k), other) => {
            let pd = other
                .pd()?
                .ok_or_else(|| CliError::input("crossing moves need a diagram"))?;
            let index = (*k as usize)
                .checked_sub(1)
                .filter(|&i| i < pd.crossing_count())
                .ok_or_else(|| invalid_crossing(*k))?;
            let id = pd.crossing_ids()[index];
            let code = pd.to_gauss();
            let (new_text, new_code, delta) = match spec {
                MoveSpec::CrossingChange(_) => {
                    let new = pd.crossing_change(index).map_err(|e| CliError::input(e.to_string()))?;
                    let d = crossing_change_relator_delta(&code, id).map_err(|e| CliError::input(e.to_string()))?;
                    (new.to_string(), new.to_gauss(), d)
                }
                _ => {
                    let new = code.virtualize(id).map_err(|e| CliError::input(e.to_string()))?;
                    let d = virtualize_relator_delta(&code, id).map_err(|e| CliError::input(e.to_string()))?;
                    (new.to_string(), new, d)
                }
            };
            move_output(config, &new_text, &new_code, &delta)
        }
    }
}

fn move_output(
    config: &RunConfiguration,
    new_text: &str,
    new_code: &GaussCode,
    delta: &RelatorDelta,
) -> Result<CommandOutput, CliError> {
    let (dh, dj) = delta_report(delta)?;
    let recognized = recognize(new_code, config)?;
    Ok(emit(
        config,
        format!("result: {new_text}\n{dh}recognized: {recognized}\n"),
        json!({ "result": new_text, "delta": dj, "recognized": recognized }),
    ))
}

pub fn search(args: &SearchArgs, config: &RunConfiguration) -> Result<CommandOutput, CliError> {
    let input = KnotInput::parse(&args.input.read()?, args.input.format)?;
    let code = input.gauss()?.ok_or_else(|| {
        CliError::input("search needs a diagram (Gauss, PD, braid or Montesinos input)")
    })?;
    let p = wirtinger_from_gauss(&code);
    let lower = nakanishi_lower(&p)
        .map_err(|e| CliError::hypothesis(e.to_string()))?
        .value;
    let outcome = unknottability_search(&code, config.search_limits(args.virt, args.cc));
    match outcome {
        SearchOutcome::Found(cert) => {
            let summary = replay_certificate(&cert, args.virt, args.cc)
                .map_err(|e| CliError::inconsistency(format!("certificate replay failed: {e}")))?;
            let bound = summary.virtualizations + summary.crossing_changes;
            if lower > bound {
                return Err(CliError::inconsistency(format!(
                    "nakanishi lower bound {lower} exceeds the certified bound {bound}"
                )));
            }
            let steps: Vec<String> = cert.steps.iter().map(ToString::to_string).collect();
            Ok(emit(
                config,
                format!(
                    "certificate ({} virtualizations, {} crossing changes, replayed): {}\n{lower} <= m(K) <= a(K) <= {bound}\n",
                    summary.virtualizations,
                    summary.crossing_changes,
                    if steps.is_empty() { "no moves".to_string() } else { steps.join(", ") }
                ),
                json!({
                    "certificate": {
                        "initial": cert.initial.to_string(),
                        "steps": steps,
                        "virtualizations": summary.virtualizations,
                        "crossing_changes": summary.crossing_changes,
                        "replayed": true,
                    },
                    "nakanishi_lower": lower,
                    "upper": bound,
                }),
            ))
        }
        SearchOutcome::NotFound { states } | SearchOutcome::StateLimit { states } => {
            let exhausted = matches!(outcome, SearchOutcome::NotFound { .. });
            Ok(emit(
                config,
                format!(
                    "None ({} after {states} states)\nnakanishi lower bound: {lower}\n",
                    if exhausted {
                        "budget exhausted"
                    } else {
                        "state limit reached"
                    }
                ),
                json!({
                    "certificate": null,
                    "states": states,
                    "state_limit": !exhausted,
                    "nakanishi_lower": lower,
                }),
            ))
        }
    }
}
