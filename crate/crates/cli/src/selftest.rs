//! Fixture checks run by `mqindex selftest`.

use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use mqindex_core::alexander::{alexander_polynomial, knot_determinant, nakanishi_lower};
use mqindex_core::knots::{
    montesinos_equiv, pd_for_montesinos, pd_for_two_bridge, rational_unknotting_certificate,
    replace_tangle, wirtinger_from_gauss, wirtinger_from_pd, BraidWord, LinkDescriptor,
    MontesinosKnot, PdCode, RationalTangle,
};
use mqindex_core::mq::{rank_bound_ngs, transfer_ngs, verify_ngs, VerifyStrategy, WitnessStatus};
use mqindex_core::presentation::{Presentation, RelatorMatching};

use crate::commands::MoveSpec;
use crate::config::RunConfiguration;
use crate::error::CliError;
use crate::files::PresentationFile;
use crate::fixtures::{self, KNOTS, REPLACEMENT_EXAMPLES};
use crate::input::{Document, KnotInput};
use crate::report::build_report;
use crate::{random, CommandOutput, SelftestArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

enum Verdict {
    Fail(String),
    Inconclusive(String),
}

type CheckResult = Result<String, Verdict>;

fn fail<T: std::fmt::Display>(e: T) -> Verdict {
    Verdict::Fail(e.to_string())
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn header<'a>(doc: &'a Document, key: &str) -> Result<&'a str, Verdict> {
    doc.metadata
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| Verdict::Fail(format!("missing `{key}` header")))
}

fn knot_fixture(dir: Option<&Path>, name: &str) -> CheckResult {
    let doc = fixtures::load(dir, &format!("knots/{name}.pd")).map_err(fail)?;
    let pd: PdCode = doc.body.parse().map_err(fail)?;
    let via_pd = wirtinger_from_pd(&pd);
    let via_gauss = wirtinger_from_gauss(&pd.to_gauss());
    let delta = alexander_polynomial(&via_pd).map_err(fail)?;
    let det = knot_determinant(&via_pd).map_err(fail)?;
    let expected = header(&doc, "alexander_polynomial")?;
    if squash(&delta.to_string()) != squash(expected) {
        return Err(Verdict::Fail(format!("Δ = {delta}, table has {expected}")));
    }
    let expected_det = header(&doc, "determinant")?;
    if det.to_string() != expected_det {
        return Err(Verdict::Fail(format!(
            "det = {det}, table has {expected_det}"
        )));
    }
    let m_pd = nakanishi_lower(&via_pd).map_err(fail)?.value;
    let m_gauss = nakanishi_lower(&via_gauss).map_err(fail)?.value;
    let same = via_pd.abelianization() == via_gauss.abelianization()
        && alexander_polynomial(&via_gauss).map_err(fail)? == delta
        && knot_determinant(&via_gauss).map_err(fail)? == det
        && m_pd == m_gauss;
    if !same {
        return Err(Verdict::Fail("PD and Gauss routes disagree".into()));
    }
    Ok(format!("Δ = {delta}, det {det}, m >= {m_pd}, routes agree"))
}

fn closing_fixture(dir: Option<&Path>) -> CheckResult {
    let doc = fixtures::load(dir, "knots/10_63.pd").map_err(fail)?;
    let pd: PdCode = doc.body.parse().map_err(fail)?;
    let m = nakanishi_lower(&wirtinger_from_pd(&pd)).map_err(fail)?;
    if m.value != 2 {
        return Err(Verdict::Fail(format!(
            "nakanishi lower bound {} (expected 2)",
            m.value
        )));
    }
    Ok("E_1 proper, E_2 unit: m = 2".into())
}

fn parse_replacement(doc: &Document) -> Result<(usize, RationalTangle), Verdict> {
    let spec = header(doc, "replacement")?;
    match MoveSpec::parse(&format!("rational@{spec}")) {
        Ok(MoveSpec::Rational { position, to }) => Ok((position, to)),
        _ => Err(Verdict::Fail(format!("bad replacement header `{spec}`"))),
    }
}

fn replacement_example(dir: Option<&Path>, name: &str, config: &RunConfiguration) -> CheckResult {
    let doc = fixtures::load(dir, &format!("montesinos/{name}.mont")).map_err(fail)?;
    let m: MontesinosKnot = doc.body.parse().map_err(fail)?;
    let table: MontesinosKnot = header(&doc, "table_form")?.parse().map_err(fail)?;
    if !montesinos_equiv(&m, &table) {
        return Err(Verdict::Fail(format!("{m} is not equivalent to {table}")));
    }
    let (position, to) = parse_replacement(&doc)?;
    let named = replace_tangle(&m, position, to).map_err(fail)?;
    let LinkDescriptor::TwoBridge(b) = named else {
        return Err(Verdict::Fail(format!(
            "replacement gives {named}, not a two-bridge link"
        )));
    };
    let after = wirtinger_from_pd(&pd_for_two_bridge(b.p, b.q).map_err(fail)?);
    if !named.is_unknot() || alexander_polynomial(&after).map_err(fail)?.to_string() != "1" {
        return Err(Verdict::Fail(format!(
            "replacement at {position} gives {named}"
        )));
    }
    let pd = pd_for_montesinos(&m).map_err(fail)?;
    let nak = nakanishi_lower(&wirtinger_from_pd(&pd))
        .map_err(fail)?
        .value;
    if nak != 1 {
        return Err(Verdict::Fail(format!(
            "nakanishi lower bound {nak} (expected 1)"
        )));
    }
    let Some(cert) = rational_unknotting_certificate(&m, config.rational_bound) else {
        let height = to.numerator().abs().max(to.denominator());
        return if height <= config.rational_bound {
            Err(Verdict::Fail(format!(
                "no certificate with bound {}",
                config.rational_bound
            )))
        } else {
            Err(Verdict::Inconclusive(format!(
                "rational bound {} is below the replacement height {height}",
                config.rational_bound
            )))
        };
    };
    let report = build_report(&KnotInput::Montesinos(m.clone()), config).map_err(fail)?;
    if !report.chain.conclusions.iter().any(|c| c == "m = a = 1") {
        return Err(Verdict::Fail(format!(
            "report concludes {:?}",
            report.chain.conclusions
        )));
    }
    Ok(format!(
        "{m} ≡ {table}; {} -> {} at {} unknots; m = a = 1",
        cert.from, cert.to, cert.position
    ))
}

fn trefoil_squeeze(dir: Option<&Path>, config: &RunConfiguration) -> CheckResult {
    let doc = fixtures::load(dir, "knots/3_1.pd").map_err(fail)?;
    let pd: PdCode = doc.body.parse().map_err(fail)?;
    let report = build_report(&KnotInput::Pd(pd), config).map_err(fail)?;
    let cc = report
        .crossing_change_unknotting
        .as_ref()
        .and_then(|c| c.crossing_changes);
    if cc.is_none() {
        return Err(Verdict::Inconclusive(
            "no crossing-change certificate within the search budget".into(),
        ));
    }
    if !report.chain.conclusions.iter().any(|c| c == "m = a = 1") {
        return Err(Verdict::Fail(format!(
            "report concludes {:?}",
            report.chain.conclusions
        )));
    }
    Ok("m = a = u = 1 with a replayed crossing-change certificate".into())
}

fn granny_squeeze(dir: Option<&Path>, config: &RunConfiguration) -> CheckResult {
    let doc = fixtures::load(dir, "braids/granny.braid").map_err(fail)?;
    let b: BraidWord = doc.body.parse().map_err(fail)?;
    let report = build_report(&KnotInput::Braid(b), config).map_err(fail)?;
    if report.nakanishi_lower != 2 {
        return Err(Verdict::Fail(format!(
            "nakanishi lower bound {}",
            report.nakanishi_lower
        )));
    }
    match report.chain.a.upper {
        Some(2) => Ok("E_1 proper and a rank-bound witness of 2 words: m = a = 2".into()),
        Some(u) if u > 2 => Err(Verdict::Inconclusive(format!(
            "upper bound {u}; the Tietze budget is too small"
        ))),
        other => Err(Verdict::Fail(format!("upper bound {other:?}"))),
    }
}

fn load_presentation(dir: Option<&Path>, path: &str) -> Result<Presentation, Verdict> {
    let doc = fixtures::load(dir, path).map_err(fail)?;
    PresentationFile::parse(&doc.body)
        .and_then(|f| f.to_presentation())
        .map_err(fail)
}

fn presentation_files(dir: Option<&Path>, config: &RunConfiguration) -> CheckResult {
    let trefoil = load_presentation(dir, "presentations/trefoil.json")?;
    let unknot = load_presentation(dir, "presentations/unknot_rank2.json")?;
    let hopf = load_presentation(dir, "presentations/hopf.json")?;
    let cert = rank_bound_ngs(&trefoil);
    if cert.witness.len() != 1 {
        return Err(Verdict::Fail(format!(
            "rank-bound witness has {} words",
            cert.witness.len()
        )));
    }
    let transferred = transfer_ngs(&trefoil, &unknot, &cert.witness).map_err(fail)?;
    if transferred.len() != 2 {
        return Err(Verdict::Fail(format!(
            "transfer gave {} words",
            transferred.len()
        )));
    }
    if transfer_ngs(&trefoil, &hopf, &cert.witness).is_ok() {
        return Err(Verdict::Fail(
            "transfer across different H_1 succeeded".into(),
        ));
    }
    match verify_ngs(
        &trefoil,
        &cert.witness.words,
        VerifyStrategy::Completion(config.kb_limits()),
    ) {
        WitnessStatus::Verified => Ok("rank bound 1, transfer size 2, completion verifies".into()),
        WitnessStatus::Refuted => Err(Verdict::Fail("rank-bound witness refuted".into())),
        _ => Err(Verdict::Inconclusive(
            "completion did not finish within the budget".into(),
        )),
    }
}

fn seeded_transfers(config: &RunConfiguration) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let strategy = VerifyStrategy::Completion(config.kb_limits());
    let mut verified = 0;
    for _ in 0..20 {
        let p = random::presentation(&mut rng, 2, 3, 6);
        let k = 1 + (rand::Rng::gen_range(&mut rng, 0..3usize)).min(p.relators().len() - 1);
        let q = random::replaced(&mut rng, &p, k);
        let mut w = rank_bound_ngs(&p).witness;
        let input = w.verify(strategy);
        let out = transfer_ngs(&p, &q, &w).map_err(fail)?;
        let rg = p
            .diff(&q, RelatorMatching::Exact)
            .map_err(fail)?
            .only_left
            .len();
        if out.len() != rg + w.len() {
            return Err(Verdict::Fail(format!(
                "transfer size {} != {rg} + {}",
                out.len(),
                w.len()
            )));
        }
        if input == WitnessStatus::Verified {
            verified += 1;
            if verify_ngs(&q, &out.words, strategy) == WitnessStatus::Refuted {
                return Err(Verdict::Fail(format!("transfer to {q} refuted")));
            }
        }
    }
    Ok(format!(
        "20 random pairs, {verified} with verified input witnesses"
    ))
}

pub fn run_checks(dir: Option<&Path>, config: &RunConfiguration) -> Vec<Check> {
    let mut checks: Vec<(String, CheckResult)> = Vec::new();
    for name in KNOTS {
        checks.push((format!("knot {name}"), knot_fixture(dir, name)));
    }
    checks.push(("10_63 nakanishi index".into(), closing_fixture(dir)));
    for name in REPLACEMENT_EXAMPLES {
        checks.push((
            format!("rational unknotting {name}"),
            replacement_example(dir, name, config),
        ));
    }
    checks.push(("trefoil squeeze".into(), trefoil_squeeze(dir, config)));
    checks.push(("granny squeeze".into(), granny_squeeze(dir, config)));
    checks.push(("presentation files".into(), presentation_files(dir, config)));
    checks.push(("seeded transfers".into(), seeded_transfers(config)));
    checks
        .into_iter()
        .map(|(name, r)| match r {
            Ok(detail) => Check {
                name,
                status: Status::Pass,
                detail,
            },
            Err(Verdict::Fail(detail)) => Check {
                name,
                status: Status::Fail,
                detail,
            },
            Err(Verdict::Inconclusive(detail)) => Check {
                name,
                status: Status::Inconclusive,
                detail,
            },
        })
        .collect()
}

pub fn command(args: &SelftestArgs, config: &RunConfiguration) -> Result<CommandOutput, CliError> {
    let checks = run_checks(args.fixtures.as_deref().map(Path::new), config);
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let (pass, failed, inconclusive) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Inconclusive),
    );
    let text = if config.json() {
        let record = json!({
            "checks": checks,
            "passed": pass,
            "failed": failed,
            "inconclusive": inconclusive,
        });
        format!(
            "{}\n",
            serde_json::to_string_pretty(&record).expect("serializable")
        )
    } else {
        let mut s = String::new();
        for c in &checks {
            let label = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            let _ = writeln!(s, "{label:<12} {}: {}", c.name, c.detail);
        }
        let _ = writeln!(
            s,
            "{pass} passed, {failed} failed, {inconclusive} inconclusive"
        );
        s
    };
    Ok(CommandOutput {
        code: if failed > 0 { 3 } else { 0 },
        text,
    })
}
