//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mqindex::config::RunConfiguration;
use mqindex::input::{Document, KnotInput};
use mqindex::random;
use mqindex::report::build_report;
use mqindex_core::alexander::{
    alexander_polynomial, fox_derivative, ideal_is_unit, knot_determinant, nakanishi_lower,
    GroupRingElement, IdealDecision, NakanishiLowerBound,
};
use mqindex_core::knots::{
    crossing_change_relator_delta, is_proper_replacement, montesinos_equiv, pd_for_montesinos,
    pd_for_two_bridge, pd_from_braid, rational_unknotting_certificate, replace_tangle,
    virtualize_relator_delta, wirtinger_from_gauss, wirtinger_from_pd, BraidWord, GaussCode,
    GaussLetter, LinkDescriptor, MontesinosKnot, PdCode, RationalTangle, RelatorDelta, Sign,
};
use mqindex_core::matrix::snf;
use mqindex_core::mq::{
    move_catalog, rank_bound_ngs, transfer_ngs, verify_ngs, VerifyStrategy, WitnessStatus,
};
use mqindex_core::polymatrix::LaurentMatrix;
use mqindex_core::presentation::{knuth_bendix, Completion, Presentation, RelatorMatching};
use mqindex_core::{IntegerMatrix, LaurentPolynomial, Word};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(path: &str) -> Document {
    let full = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(path);
    let text = std::fs::read_to_string(&full).unwrap_or_else(|e| panic!("{}: {e}", full.display()));
    Document::parse(&text)
}

fn fixture_pd(name: &str) -> Result<PdCode, String> {
    fixture(&format!("knots/{name}.pd"))
        .body
        .parse()
        .map_err(|e| format!("{name}: {e}"))
}

fn nakanishi(p: &Presentation) -> Result<NakanishiLowerBound, String> {
    nakanishi_lower(p).map_err(|e| e.to_string())
}

fn conclusions(input: KnotInput) -> Result<Vec<String>, String> {
    let report = build_report(&input, &RunConfiguration::default()).map_err(|e| e.to_string())?;
    Ok(report.chain.conclusions)
}

fn mont(s: &str) -> MontesinosKnot {
    s.parse().expect("valid descriptor")
}

// 1

fn paper_examples() -> Outcome {
    let cases = [("12a_504", 2), ("12a_642", 1), ("12n_278", 3)];
    for (name, position) in cases {
        let m = mont(&fixture(&format!("montesinos/{name}.mont")).body);
        let cert = rational_unknotting_certificate(&m, 8)
            .ok_or_else(|| format!("{name}: no rational unknotting certificate"))?;
        ensure(is_proper_replacement(&cert.from, &cert.to), || {
            format!("{name}: {} -> {} is not proper", cert.from, cert.to)
        })?;
        ensure(cert.result.p == 1, || {
            format!("{name}: certificate gives {}", cert.result)
        })?;

        let zero = RationalTangle::new(0, 1).expect("0/1");
        let from = m.tangles()[position - 1];
        ensure(is_proper_replacement(&from, &zero), || {
            format!("{name}: {from} -> 0/1 is not proper")
        })?;
        let after = replace_tangle(&m, position, zero).map_err(|e| e.to_string())?;
        let LinkDescriptor::TwoBridge(b) = after else {
            return Err(format!("{name}: 0/1 at {position} gives {after}"));
        };
        let unknot = wirtinger_from_pd(&pd_for_two_bridge(b.p, b.q).map_err(|e| e.to_string())?);
        let delta = alexander_polynomial(&unknot).map_err(|e| e.to_string())?;
        ensure(b.p == 1 && delta == LaurentPolynomial::one(), || {
            format!("{name}: 0/1 at {position} gives {b} with Δ = {delta}")
        })?;

        let pd = pd_for_montesinos(&m).map_err(|e| e.to_string())?;
        let nak = nakanishi(&wirtinger_from_pd(&pd))?;
        ensure(nak.value == 1, || {
            format!("{name}: nakanishi lower bound {}", nak.value)
        })?;
        ensure(
            !nak.ideals[0].decision.is_unit() && nak.ideals[1].decision.is_unit(),
            || format!("{name}: E_0 / E_1 decisions wrong"),
        )?;

        let c = conclusions(KnotInput::Montesinos(m.clone()))?;
        ensure(c.iter().any(|s| s == "m = a = 1"), || {
            format!("{name}: report concludes {c:?}")
        })?;
    }
    Ok("12a_504, 12a_642, 12n_278: u_q <= 1, m = 1, report prints m = a = 1".into())
}

// 2

fn montesinos_identities() -> Outcome {
    let pairs = [
        ("K(2/3, 1/3, 12/5)", "K(2/3, 10/3, -3/5)"),
        ("K(1/3, 3/4, 2/7)", "K(4/3, -1/4, 2/7)"),
    ];
    for (a, b) in pairs {
        ensure(montesinos_equiv(&mont(a), &mont(b)), || {
            format!("{a} and {b} not identified")
        })?;
    }
    Ok("both identities confirmed".into())
}

// 3

fn closing_fixture() -> Outcome {
    let doc = fixture("knots/10_63.pd");
    ensure(doc.metadata.contains_key("source"), || {
        "10_63 fixture has no provenance".into()
    })?;
    let pd: PdCode = doc.body.parse().map_err(|e| format!("10_63: {e}"))?;
    let nak = nakanishi(&wirtinger_from_pd(&pd))?;
    ensure(nak.value == 2, || {
        format!("nakanishi lower bound {}", nak.value)
    })?;
    ensure(!nak.ideals[1].decision.is_unit(), || {
        "E_1 is not proper".into()
    })?;
    Ok("10_63: E_1 proper, m = 2".into())
}

// 4

fn squeeze_suite() -> Outcome {
    let trefoil = fixture_pd("3_1")?;
    let p = wirtinger_from_pd(&trefoil);
    let delta = alexander_polynomial(&p).map_err(|e| e.to_string())?;
    ensure(delta == LaurentPolynomial::from_i64(0, &[1, -1, 1]), || {
        format!("trefoil Δ = {delta}")
    })?;
    let det = knot_determinant(&p).map_err(|e| e.to_string())?;
    ensure(det == BigInt::from(3), || format!("trefoil det = {det}"))?;
    let report = build_report(&KnotInput::Pd(trefoil), &RunConfiguration::default())
        .map_err(|e| e.to_string())?;
    ensure(
        report.chain.conclusions.iter().any(|c| c == "m = a = 1"),
        || format!("trefoil concludes {:?}", report.chain.conclusions),
    )?;
    let cc = report
        .crossing_change_unknotting
        .and_then(|c| c.crossing_changes);
    ensure(cc == Some(1), || {
        format!("trefoil crossing-change certificate {cc:?}")
    })?;

    let eight = wirtinger_from_pd(&fixture_pd("4_1")?);
    let delta = alexander_polynomial(&eight).map_err(|e| e.to_string())?;
    ensure(delta == LaurentPolynomial::from_i64(0, &[1, -3, 1]), || {
        format!("figure-eight Δ = {delta}")
    })?;
    let det = knot_determinant(&eight).map_err(|e| e.to_string())?;
    ensure(det == BigInt::from(5), || {
        format!("figure-eight det = {det}")
    })?;
    let m = nakanishi(&eight)?.value;
    ensure(m == 1, || format!("figure-eight m = {m}"))?;

    let granny: BraidWord = fixture("braids/granny.braid")
        .body
        .parse()
        .map_err(|e| format!("{e}"))?;
    let pd = pd_from_braid(&granny).map_err(|e| e.to_string())?;
    let nak = nakanishi(&wirtinger_from_pd(&pd))?;
    ensure(nak.value == 2 && !nak.ideals[1].decision.is_unit(), || {
        format!("granny nakanishi lower bound {}", nak.value)
    })?;
    let report = build_report(&KnotInput::Braid(granny), &RunConfiguration::default())
        .map_err(|e| e.to_string())?;
    ensure(report.chain.a.upper == Some(2), || {
        format!("granny a upper {:?}", report.chain.a.upper)
    })?;
    ensure(
        report.chain.conclusions.iter().any(|c| c == "m = a = 2"),
        || format!("granny concludes {:?}", report.chain.conclusions),
    )?;
    Ok("trefoil m = a = u = 1, figure-eight m = 1, granny m = a = 2".into())
}

// 5

fn transfer_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let strategy = VerifyStrategy::Completion(RunConfiguration::default().kb_limits());
    let mut verified = 0;
    for case in 0..200 {
        let p = random::presentation(&mut rng, 2, 4, 8);
        let k = rng.gen_range(1..=3usize).min(p.relators().len());
        let q = random::replaced(&mut rng, &p, k);
        let mut w = rank_bound_ngs(&p).witness;
        let input = w.verify(strategy);
        let out = transfer_ngs(&p, &q, &w).map_err(|e| format!("case {case}: {p} -> {q}: {e}"))?;
        let r_g = p
            .diff(&q, RelatorMatching::Exact)
            .map_err(|e| e.to_string())?
            .only_left
            .len();
        ensure(out.len() == r_g + w.len(), || {
            format!("case {case}: size {} != {r_g} + {}", out.len(), w.len())
        })?;
        if input == WitnessStatus::Verified {
            verified += 1;
            let s = verify_ngs(&q, &out.words, strategy);
            ensure(s != WitnessStatus::Refuted, || {
                format!("case {case}: transfer to {q} refuted")
            })?;
        }
    }
    Ok(format!(
        "200 pairs, {verified} with verified input witnesses"
    ))
}

// 6

fn rank_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let limits = RunConfiguration::default().kb_limits();
    let mut completed = 0;
    for case in 0..200 {
        let gens = random::generators(rng.gen_range(1..=4));
        let r = rng.gen_range(0..=4);
        let relators = (0..r).map(|_| random::word(&mut rng, &gens, 8)).collect();
        let p = Presentation::new(gens, relators).expect("valid");
        let cert = rank_bound_ngs(&p);
        let (n, h) = (p.generator_count() as i64, cert.h as i64);
        let expected = n + h * (h - 3) / 2;
        ensure(cert.witness.len() as i64 == expected, || {
            format!(
                "case {case}: {p}: {} words, expected {expected}",
                cert.witness.len()
            )
        })?;
        for w in &cert.witness.words {
            ensure(p.is_null_homologous(w) == Ok(true), || {
                format!("case {case}: {w} not null-homologous")
            })?;
        }
        let quotient = p
            .with_relators(&cert.witness.words)
            .map_err(|e| e.to_string())?;
        ensure(quotient.abelianization() == p.abelianization(), || {
            format!("case {case}: {p}: abelianization changed")
        })?;
        if let Completion::Complete(_) = knuth_bendix(&quotient, limits) {
            completed += 1;
            let s = verify_ngs(&p, &cert.witness.words, VerifyStrategy::Completion(limits));
            ensure(s == WitnessStatus::Verified, || {
                format!("case {case}: {p}: {s}")
            })?;
        }
    }
    Ok(format!(
        "200 presentations, completion finished on {completed}"
    ))
}

// 7

fn random_matrix(rng: &mut ChaCha8Rng) -> IntegerMatrix {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        0
                    } else {
                        rng.gen_range(-9..=9)
                    }
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_i64_rows(&rows, c).expect("rectangular")
}

fn snf_contract(m: &IntegerMatrix) -> Result<(), String> {
    let d = snf(m);
    let prod =
        d.u.mul(m)
            .and_then(|um| um.mul(&d.v))
            .map_err(|e| e.to_string())?;
    ensure(prod == d.s, || "U M V != S".into())?;
    for x in [&d.u, &d.v] {
        let det = x.determinant().map_err(|e| e.to_string())?;
        ensure(det.abs() == BigInt::from(1), || {
            format!("transform has determinant {det}")
        })?;
    }
    let mut diag = Vec::new();
    for i in 0..d.s.rows() {
        for j in 0..d.s.cols() {
            if i == j {
                diag.push(d.s[(i, j)].clone());
            } else {
                ensure(d.s[(i, j)].is_zero(), || "S is not diagonal".into())?;
            }
        }
    }
    let nonzero: Vec<BigInt> = diag.iter().take_while(|x| !x.is_zero()).cloned().collect();
    ensure(diag[nonzero.len()..].iter().all(Zero::is_zero), || {
        "zeros are not trailing".into()
    })?;
    ensure(nonzero.iter().all(|x| x.is_positive()), || {
        "negative invariant factor".into()
    })?;
    ensure(
        nonzero.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
        || "divisibility fails".into(),
    )?;
    ensure(nonzero == d.invariant_factors, || {
        "invariant factors disagree with S".into()
    })
}

fn fox_identity(w: &Word, gens: &[mqindex_core::Symbol]) -> bool {
    let mut sum = GroupRingElement::zero();
    for g in gens {
        let g_minus_1 =
            &GroupRingElement::from_word(Word::generator(g.clone())) - &GroupRingElement::one();
        sum = &sum + &(&fox_derivative(w, g) * &g_minus_1);
    }
    sum == &GroupRingElement::from_word(w.clone()) - &GroupRingElement::one()
}

/// Ordinary polynomial coefficients, lowest first, after dividing by the lowest power of t.
fn poly(p: &LaurentPolynomial) -> Vec<i64> {
    p.coefficients()
        .iter()
        .map(|c| i64::try_from(c).expect("small"))
        .collect()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OracleVerdict {
    Unit,
    Proper,
}

/// Unit when some combination with coefficient polynomials of degree <= 1 and
/// entries in [-2, 2] is a signed power of t. Proper when every generator
/// vanishes at one point of some F_p^*.
fn ideal_oracle(gens: &[LaurentPolynomial]) -> Option<OracleVerdict> {
    let polys: Vec<Vec<i64>> = gens.iter().filter(|g| !g.is_zero()).map(poly).collect();
    if polys.is_empty() {
        return Some(OracleVerdict::Proper);
    }
    for p in [2i64, 3, 5, 7, 11, 13] {
        for a in 1..p {
            let vanishes = polys.iter().all(|f| {
                f.iter()
                    .rev()
                    .fold(0i64, |acc, c| (acc * a + c).rem_euclid(p))
                    == 0
            });
            if vanishes {
                return Some(OracleVerdict::Proper);
            }
        }
    }
    let multipliers: Vec<[i64; 2]> = (-2..=2)
        .flat_map(|c0| (-2..=2).map(move |c1| [c0, c1]))
        .collect();
    let width = polys.iter().map(Vec::len).max().unwrap_or(1) + 1;
    let mut idx = vec![0usize; polys.len()];
    loop {
        let mut sum = vec![0i64; width];
        for (f, &i) in polys.iter().zip(&idx) {
            for (k, c) in poly_mul(f, &multipliers[i]).into_iter().enumerate() {
                sum[k] += c;
            }
        }
        let nonzero: Vec<i64> = sum.into_iter().filter(|&c| c != 0).collect();
        if nonzero.len() == 1 && nonzero[0].abs() == 1 {
            return Some(OracleVerdict::Unit);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < multipliers.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..=rng.gen_range(0..=max_deg))
            .map(|_| rng.gen_range(-4..=4))
            .collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

fn laurent(rng: &mut ChaCha8Rng, coeffs: &[i64]) -> LaurentPolynomial {
    LaurentPolynomial::from_i64(rng.gen_range(-2..=2), coeffs)
}

fn random_ideal(rng: &mut ChaCha8Rng) -> Vec<LaurentPolynomial> {
    let k = rng.gen_range(1..=3);
    let raw: Vec<Vec<i64>> = match rng.gen_range(0..3) {
        0 => (0..k).map(|_| random_poly(rng, 2)).collect(),
        1 => {
            let f = random_poly(rng, 2);
            (0..k).map(|_| poly_mul(&f, &random_poly(rng, 1))).collect()
        }
        _ => {
            let p = [2i64, 3, 5][rng.gen_range(0..3)];
            let a = rng.gen_range(1..p);
            (0..k)
                .map(|_| {
                    let f = poly_mul(&[-a, 1], &random_poly(rng, 1));
                    let g = random_poly(rng, 2);
                    let len = f.len().max(g.len());
                    (0..len)
                        .map(|i| f.get(i).unwrap_or(&0) + p * g.get(i).unwrap_or(&0))
                        .collect()
                })
                .collect()
        }
    };
    raw.iter().map(|c| laurent(rng, c)).collect()
}

fn cofactor_det(m: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    if m.is_empty() {
        return LaurentPolynomial::one();
    }
    let mut acc = LaurentPolynomial::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<LaurentPolynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn algebra_kernels() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..500 {
        let m = random_matrix(&mut rng);
        snf_contract(&m).map_err(|e| format!("snf case {case}: {e}"))?;
    }
    for case in 0..500 {
        let gens = random::generators(rng.gen_range(1..=4));
        let w = random::word(&mut rng, &gens, 12);
        ensure(fox_identity(&w, &gens), || format!("fox case {case}: {w}"))?;
    }
    let (mut decided, mut units, mut attempts) = (0, 0, 0);
    while decided < 100 {
        attempts += 1;
        ensure(attempts <= 5000, || {
            format!("oracle decided only {decided} ideals")
        })?;
        let gens = random_ideal(&mut rng);
        let Some(verdict) = ideal_oracle(&gens) else {
            continue;
        };
        decided += 1;
        let ours = ideal_is_unit(&gens).map_err(|e| e.to_string())?;
        let agrees = match (&ours, verdict) {
            (IdealDecision::Unit(cert), OracleVerdict::Unit) => cert.verify(&gens),
            (IdealDecision::Proper(_), OracleVerdict::Proper) => true,
            _ => false,
        };
        let shown: Vec<String> = gens.iter().map(ToString::to_string).collect();
        ensure(agrees, || {
            format!("ideal {shown:?}: {ours:?}, oracle {verdict:?}")
        })?;
        units += usize::from(verdict == OracleVerdict::Unit);
    }
    for case in 0..200 {
        let n = 1 + case % 4;
        let rows: Vec<Vec<LaurentPolynomial>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let c: Vec<i64> = (0..rng.gen_range(1..=3))
                            .map(|_| rng.gen_range(-3..=3))
                            .collect();
                        LaurentPolynomial::from_i64(rng.gen_range(-1..=1), &c)
                    })
                    .collect()
            })
            .collect();
        let expected = cofactor_det(&rows);
        let got = LaurentMatrix::from_rows(rows)
            .and_then(|m| m.determinant())
            .map_err(|e| e.to_string())?;
        ensure(got == expected, || {
            format!("det case {case} ({n}x{n}): {got} != {expected}")
        })?;
    }
    Ok(format!(
        "500 SNF, 500 Fox, {decided} ideals ({units} unit) of {attempts} decided by the oracle, 200 determinants"
    ))
}

// 8

fn random_gauss(rng: &mut ChaCha8Rng) -> GaussCode {
    let n = rng.gen_range(1..=7u32);
    let mut letters = Vec::new();
    for id in 1..=n {
        let sign = if rng.gen_bool(0.5) {
            Sign::Positive
        } else {
            Sign::Negative
        };
        letters.push(GaussLetter {
            id,
            over: true,
            sign,
        });
        letters.push(GaussLetter {
            id,
            over: false,
            sign,
        });
    }
    rand::seq::SliceRandom::shuffle(letters.as_mut_slice(), rng);
    GaussCode::new(letters).expect("each crossing once over, once under")
}

fn random_braid_pd(rng: &mut ChaCha8Rng) -> PdCode {
    loop {
        let strands = rng.gen_range(2..=4);
        let len = rng.gen_range(1..=8);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..strands);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let b = BraidWord::new(letters).expect("nonzero letters");
        if let Ok(pd) = pd_from_braid(&b) {
            return pd;
        }
    }
}

fn single_replacement(d: &RelatorDelta) -> Result<bool, String> {
    let (before, after) = (d.before.relators(), d.after.relators());
    ensure(
        before.len() == after.len() && d.before.generators() == d.after.generators(),
        || "generators or relator counts differ".into(),
    )?;
    let changed: Vec<usize> = (0..before.len())
        .filter(|&i| before[i] != after[i])
        .collect();
    let old = &before[d.index];
    let new = &after[d.index];
    // A kink whose overarc is also its incoming arc already has the relator
    // `x_out x_in^-1`; the replacement is then the identity.
    let trivial = changed.is_empty() && new.len() <= 2;
    ensure(changed == [d.index] || trivial, || {
        format!("changed relators {changed:?}, index {}", d.index)
    })?;
    let diff = d
        .before
        .diff(&d.after, RelatorMatching::Exact)
        .map_err(|e| e.to_string())?;
    let size = usize::from(!trivial);
    ensure(
        diff.only_left.len() == size && diff.only_right.len() == size,
        || "diff is not one relator".into(),
    )?;
    ensure(d.before.is_null_homologous(new) == Ok(true), || {
        format!("{new} not null-homologous before")
    })?;
    ensure(d.after.is_null_homologous(old) == Ok(true), || {
        format!("{old} not null-homologous after")
    })?;
    Ok(trivial)
}

fn move_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut trivial = 0;
    for case in 0..500 {
        let code = if case % 2 == 0 {
            random_gauss(&mut rng)
        } else {
            random_braid_pd(&mut rng).to_gauss()
        };
        let id = rng.gen_range(1..=code.crossing_count() as u32);
        let cc = crossing_change_relator_delta(&code, id).map_err(|e| format!("{code}: {e}"))?;
        trivial += usize::from(
            single_replacement(&cc).map_err(|e| format!("case {case} {code} cc@{id}: {e}"))?,
        );
        let v = virtualize_relator_delta(&code, id).map_err(|e| format!("{code}: {e}"))?;
        trivial += usize::from(
            single_replacement(&v).map_err(|e| format!("case {case} {code} virt@{id}: {e}"))?,
        );
    }
    let costs: Vec<(&str, usize, usize)> = move_catalog()
        .iter()
        .map(|e| (e.name, e.strands, e.relator_cost))
        .collect();
    let expected = [
        ("crossing-change", 2, 1),
        ("virtualization", 2, 1),
        ("sharp", 4, 3),
        ("rational-replacement", 2, 1),
    ];
    ensure(costs == expected, || format!("catalog {costs:?}"))?;
    Ok(format!(
        "500 codes: one null-homologous replacement per move ({trivial} identical at kinks); costs {{1, 1, 3, 1}}"
    ))
}

// 9

fn route_independence() -> Outcome {
    let mut pds: Vec<(String, PdCode)> = Vec::new();
    for name in mqindex::fixtures::KNOTS {
        pds.push((name.to_string(), fixture_pd(name)?));
    }
    let granny: BraidWord = fixture("braids/granny.braid")
        .body
        .parse()
        .map_err(|e| format!("{e}"))?;
    pds.push((
        "granny".into(),
        pd_from_braid(&granny).map_err(|e| e.to_string())?,
    ));
    for name in mqindex::fixtures::REPLACEMENT_EXAMPLES {
        let m = mont(&fixture(&format!("montesinos/{name}.mont")).body);
        pds.push((
            format!("{m}"),
            pd_for_montesinos(&m).map_err(|e| e.to_string())?,
        ));
    }
    for (name, pd) in &pds {
        let a = wirtinger_from_pd(pd);
        let b = wirtinger_from_gauss(&pd.to_gauss());
        let err = |e: mqindex_core::alexander::AlexanderError| format!("{name}: {e}");
        ensure(a.abelianization() == b.abelianization(), || {
            format!("{name}: H_1 differs")
        })?;
        ensure(
            alexander_polynomial(&a).map_err(err)? == alexander_polynomial(&b).map_err(err)?,
            || format!("{name}: Δ differs"),
        )?;
        ensure(
            knot_determinant(&a).map_err(err)? == knot_determinant(&b).map_err(err)?,
            || format!("{name}: det differs"),
        )?;
        ensure(nakanishi(&a)?.value == nakanishi(&b)?.value, || {
            format!("{name}: m differs")
        })?;
    }
    Ok(format!("{} diagrams agree on H_1, Δ, det and m", pds.len()))
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("rational unknotting examples", paper_examples, 120),
        ("montesinos identities", montesinos_identities, 1),
        ("10_63 nakanishi index", closing_fixture, 60),
        ("squeeze suite", squeeze_suite, 60),
        ("transfer property suite", transfer_suite, 60),
        ("rank bound property suite", rank_suite, 120),
        ("algebra kernels", algebra_kernels, 60),
        ("move structure", move_structure, 60),
        ("route independence", route_independence, 30),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took longer than {limit} s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS ({:.2} s) {name}: {detail}",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL ({:.2} s) {name}: {why}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
