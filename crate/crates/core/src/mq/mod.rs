//! Normal generating sets of commutator subgroups: transfer across relator
//! replacements, explicit rank-bound witnesses, verification, interval
//! bookkeeping and distance bounds.

mod nielsen;
mod quotient;

pub use nielsen::{NielsenAutomorphism, NielsenMove};
pub use quotient::{symmetric_quotient, Permutation};

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::matrix::{snf, ColumnOp};
use crate::presentation::{
    knuth_bendix, normal_closure_member_bounded, ClosureResult, ClosureSearch, Completion,
    KbLimits, Presentation, PresentationError, RelatorMatching,
};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MqError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("generator lists differ")]
    GeneratorMismatch,
    #[error("relator `{0}` of the target is not null-homologous in the source group")]
    RelatorNotNullHomologous(String),
    #[error("abelianizations differ ({0} vs {1})")]
    H1Mismatch(String, String),
    #[error("witness word `{0}` is not null-homologous")]
    WitnessNotNullHomologous(String),
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    Inverted { lower: usize, upper: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    RankBound,
    Transfer,
    User,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessStatus {
    Unverified,
    NecessaryChecksPassed,
    Verified,
    Refuted,
}

impl fmt::Display for WitnessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessStatus::Unverified => "unverified",
            WitnessStatus::NecessaryChecksPassed => "necessary-checks-passed",
            WitnessStatus::Verified => "verified",
            WitnessStatus::Refuted => "refuted",
        })
    }
}

/// Words claimed to normally generate the commutator subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalGeneratorWitness {
    pub presentation: Presentation,
    pub words: Vec<Word>,
    pub provenance: Provenance,
    pub status: WitnessStatus,
}

impl NormalGeneratorWitness {
    /// Every word must be null-homologous in `presentation`.
    pub fn new(
        presentation: Presentation,
        words: Vec<Word>,
        provenance: Provenance,
    ) -> Result<Self, MqError> {
        for w in &words {
            if !presentation.is_null_homologous(w)? {
                return Err(MqError::WitnessNotNullHomologous(w.to_string()));
            }
        }
        Ok(NormalGeneratorWitness {
            presentation,
            words,
            provenance,
            status: WitnessStatus::Unverified,
        })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Run `strategy`; the status only moves forward, or to `Refuted`.
    pub fn verify(&mut self, strategy: VerifyStrategy) -> WitnessStatus {
        let s = verify_ngs(&self.presentation, &self.words, strategy);
        if s == WitnessStatus::Refuted || s > self.status {
            self.status = s;
        }
        self.status
    }
}

/// Witness for `P'` from a witness for `P`: the relators of `P` missing
/// from `P'` together with the old words.
pub fn transfer_ngs(
    p: &Presentation,
    p_prime: &Presentation,
    witness: &NormalGeneratorWitness,
) -> Result<NormalGeneratorWitness, MqError> {
    if p.generators() != p_prime.generators() || witness.presentation.generators() != p.generators()
    {
        return Err(MqError::GeneratorMismatch);
    }
    let diff = p.diff(p_prime, RelatorMatching::Exact)?;
    for r in &diff.only_right {
        if !p.is_null_homologous(r)? {
            return Err(MqError::RelatorNotNullHomologous(r.to_string()));
        }
    }
    let (a, b) = (p.abelianization(), p_prime.abelianization());
    if a != b {
        return Err(MqError::H1Mismatch(a.to_string(), b.to_string()));
    }
    for w in &witness.words {
        if !p.is_null_homologous(w)? {
            return Err(MqError::WitnessNotNullHomologous(w.to_string()));
        }
    }
    let mut words = diff.only_left;
    words.extend(witness.words.iter().cloned());
    Ok(NormalGeneratorWitness {
        presentation: p_prime.clone(),
        words,
        provenance: Provenance::Transfer,
        status: WitnessStatus::NecessaryChecksPassed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankBoundCertificate {
    pub automorphism: NielsenAutomorphism,
    /// Images of the basis, in the original generators.
    pub transformed_generators: Vec<Word>,
    pub h: usize,
    /// Row `k - h` holds `c_{k,1}, ..., c_{k,h}`.
    pub coefficients: Vec<Vec<i64>>,
    pub witness: NormalGeneratorWitness,
}

/// Lift the Smith column operations of the exponent matrix to Nielsen moves
/// so the first `h` new generators generate `H_1` and the rest vanish in it;
/// the witness is the `h(h-1)/2` commutators of the first `h` and the
/// inverses of the rest.
pub fn rank_bound_ngs(p: &Presentation) -> RankBoundCertificate {
    let n = p.generator_count();
    let d = snf(&p.exponent_matrix());
    let mut moves: Vec<NielsenMove> = d
        .column_ops
        .iter()
        .map(|op| match op {
            ColumnOp::Swap(i, j) => NielsenMove::Swap(*i, *j),
            ColumnOp::Negate(i) => NielsenMove::Invert(*i),
            ColumnOp::AddMultiple {
                target,
                source,
                factor,
            } => NielsenMove::Multiply {
                target: *source,
                by: *target,
                power: -factor.to_i64().expect("small factor"),
            },
        })
        .collect();
    let diag = d.s.rows().min(n);
    let mut unit: Vec<bool> = (0..n).map(|j| j < diag && d.s[(j, j)].is_one()).collect();
    // Stable partition: non-unit columns first.
    let mut next = 0;
    for j in 0..n {
        if !unit[j] {
            if j != next {
                // Bubble column j down to position `next`.
                for k in (next..j).rev() {
                    moves.push(NielsenMove::Swap(k, k + 1));
                    unit.swap(k, k + 1);
                }
            }
            next += 1;
        }
    }
    let h = next;
    let automorphism = NielsenAutomorphism {
        basis: nielsen::basis_of(p),
        moves,
    };
    let images = automorphism.images();
    let mut words = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            words.push(Word::commutator(&images[i], &images[j]));
        }
    }
    words.extend(images[h..].iter().map(Word::inverse));
    let witness = NormalGeneratorWitness::new(p.clone(), words, Provenance::RankBound)
        .expect("rank-bound words are null-homologous");
    let mut witness = witness;
    witness.status = WitnessStatus::NecessaryChecksPassed;
    RankBoundCertificate {
        automorphism,
        transformed_generators: images,
        h,
        coefficients: alloc::vec![alloc::vec![0; h]; n - h],
        witness,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyStrategy {
    NecessaryOnly,
    BoundedSearch(ClosureSearch),
    /// Knuth-Bendix on the quotient; when it does not finish, a search for a
    /// non-abelian image in `S_4`.
    Completion(KbLimits),
}

fn commutator_pairs(p: &Presentation) -> Vec<Word> {
    let g = p.generators();
    let mut out = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            out.push(Word::commutator(
                &Word::generator(g[i].clone()),
                &Word::generator(g[j].clone()),
            ));
        }
    }
    out
}

/// Check that `words` normally generate the commutator subgroup of `p`, to
/// the extent the strategy can decide.
pub fn verify_ngs(p: &Presentation, words: &[Word], strategy: VerifyStrategy) -> WitnessStatus {
    let necessary = words
        .iter()
        .all(|w| matches!(p.is_null_homologous(w), Ok(true)));
    if !necessary {
        return WitnessStatus::Refuted;
    }
    let quotient = p.with_relators(words).expect("words checked");
    if quotient.abelianization() != p.abelianization() {
        return WitnessStatus::Refuted;
    }
    match strategy {
        VerifyStrategy::NecessaryOnly => WitnessStatus::NecessaryChecksPassed,
        VerifyStrategy::BoundedSearch(search) => {
            let all = commutator_pairs(p).iter().all(|c| {
                matches!(
                    normal_closure_member_bounded(p, c, words, search),
                    ClosureResult::Yes(_)
                )
            });
            if all {
                WitnessStatus::Verified
            } else {
                WitnessStatus::NecessaryChecksPassed
            }
        }
        VerifyStrategy::Completion(limits) => match knuth_bendix(&quotient, limits) {
            Completion::Complete(rs) => {
                let abelian = commutator_pairs(p)
                    .iter()
                    .all(|c| rs.word_problem(c).expect("complete system"));
                if abelian {
                    WitnessStatus::Verified
                } else {
                    WitnessStatus::Refuted
                }
            }
            Completion::Inconclusive { .. } => {
                if symmetric_quotient(&quotient, 4).is_some() {
                    WitnessStatus::Refuted
                } else {
                    WitnessStatus::NecessaryChecksPassed
                }
            }
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerCertificate {
    Trivial,
    Nakanishi(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpperCertificate {
    RankBound {
        simplified: bool,
        certificate: RankBoundCertificate,
    },
    User(NormalGeneratorWitness),
}

impl UpperCertificate {
    fn provenance(&self) -> (Provenance, bool) {
        match self {
            UpperCertificate::RankBound { simplified, .. } => (Provenance::RankBound, *simplified),
            UpperCertificate::User(_) => (Provenance::User, false),
        }
    }
}

/// `lower <= a(G) <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MqInterval {
    pub lower: usize,
    pub upper: Option<usize>,
    pub lower_certificate: LowerCertificate,
    pub upper_certificate: Option<UpperCertificate>,
}

impl fmt::Display for MqInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) => write!(f, "[{}, {}]", self.lower, u),
            None => write!(f, "[{}, inf)", self.lower),
        }
    }
}

/// Interval from an optional Nakanishi lower bound and the best available
/// upper certificate: rank bounds on `p` and its Tietze simplification, and
/// `Verified` user witnesses for `p`.
pub fn mq_interval(
    p: &Presentation,
    nakanishi_lower: Option<usize>,
    user: &[NormalGeneratorWitness],
    tietze_budget: usize,
) -> Result<MqInterval, MqError> {
    let (lower, lower_certificate) = match nakanishi_lower {
        Some(k) => (k, LowerCertificate::Nakanishi(k)),
        None => (0, LowerCertificate::Trivial),
    };
    let mut candidates: Vec<(usize, UpperCertificate)> = Vec::new();
    let raw = rank_bound_ngs(p);
    candidates.push((
        raw.witness.len(),
        UpperCertificate::RankBound {
            simplified: false,
            certificate: raw,
        },
    ));
    let (simple, _) = p.tietze_simplify(tietze_budget);
    let simp = rank_bound_ngs(&simple);
    candidates.push((
        simp.witness.len(),
        UpperCertificate::RankBound {
            simplified: true,
            certificate: simp,
        },
    ));
    for w in user {
        if w.status == WitnessStatus::Verified && w.presentation == *p {
            candidates.push((w.len(), UpperCertificate::User(w.clone())));
        }
    }
    let (upper, cert) = candidates
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.provenance().cmp(&b.1.provenance())))
        .expect("rank bound always present");
    if lower > upper {
        return Err(MqError::Inverted { lower, upper });
    }
    Ok(MqInterval {
        lower,
        upper: Some(upper),
        lower_certificate,
        upper_certificate: Some(cert),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceBounds {
    pub lower: usize,
    pub upper: i64,
}

fn gap(a: &MqInterval, b: &MqInterval) -> usize {
    let one = |lo: usize, up: Option<usize>| up.map_or(0, |u| lo.saturating_sub(u));
    one(a.lower, b.upper).max(one(b.lower, a.upper))
}

/// Bounds on the number of null-homologous relator replacements between the
/// two groups: the interval gap below, `r + r' + h(h-3)` above with Tietze
/// ranks.
pub fn presentation_distance_bounds(
    p: &Presentation,
    q: &Presentation,
    ip: &MqInterval,
    iq: &MqInterval,
    tietze_budget: usize,
) -> Result<DistanceBounds, MqError> {
    let (a, b) = (p.abelianization(), q.abelianization());
    if a != b {
        return Err(MqError::H1Mismatch(a.to_string(), b.to_string()));
    }
    let h = a.minimal_generators as i64;
    let r = p.tietze_simplify(tietze_budget).0.generator_count() as i64;
    let r2 = q.tietze_simplify(tietze_budget).0.generator_count() as i64;
    Ok(DistanceBounds {
        lower: gap(ip, iq),
        upper: r + r2 + h * (h - 3),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramKind {
    Classical,
    Virtual,
    Welded,
}

/// A local move replacing an `n`-strand tangle; each application changes
/// at most `n - 1` relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveCatalogEntry {
    pub name: &'static str,
    pub strands: usize,
    pub relator_cost: usize,
    pub applicable: &'static [DiagramKind],
}

impl MoveCatalogEntry {
    pub const fn new(
        name: &'static str,
        strands: usize,
        applicable: &'static [DiagramKind],
    ) -> Self {
        MoveCatalogEntry {
            name,
            strands,
            relator_cost: strands - 1,
            applicable,
        }
    }
}

const ALL: &[DiagramKind] = &[
    DiagramKind::Classical,
    DiagramKind::Virtual,
    DiagramKind::Welded,
];
const CLASSICAL: &[DiagramKind] = &[DiagramKind::Classical];

pub fn move_catalog() -> Vec<MoveCatalogEntry> {
    alloc::vec![
        MoveCatalogEntry::new("crossing-change", 2, ALL),
        MoveCatalogEntry::new("virtualization", 2, ALL),
        MoveCatalogEntry::new("sharp", 4, CLASSICAL),
        MoveCatalogEntry::new("rational-replacement", 2, CLASSICAL),
    ]
}

/// `ceil(gap / relator_cost)` moves are needed between the two knots.
pub fn gordian_lower_bound(a: &MqInterval, b: &MqInterval, entry: &MoveCatalogEntry) -> usize {
    gap(a, b).div_ceil(entry.relator_cost.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn trefoil() -> Presentation {
        Presentation::parse(&["x", "y"], &["x y x y^-1 x^-1 y^-1"]).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn transfer() {
        let p = trefoil();
        let q = Presentation::parse(&["x", "y"], &["x y^-1"]).unwrap();
        let wit =
            NormalGeneratorWitness::new(p.clone(), alloc::vec![w("x y^-1")], Provenance::User)
                .unwrap();
        let t = transfer_ngs(&p, &q, &wit).unwrap();
        assert_eq!(t.words, [w("x y x y^-1 x^-1 y^-1"), w("x y^-1")]);
        let same = transfer_ngs(&p, &p, &wit).unwrap();
        assert_eq!(same.words, wit.words);
        let bad = Presentation::parse(&["x", "y"], &["x"]).unwrap();
        assert!(matches!(
            transfer_ngs(&p, &bad, &wit),
            Err(MqError::RelatorNotNullHomologous(_))
        ));
    }

    #[test]
    fn rank_bound_examples() {
        let c = rank_bound_ngs(&trefoil());
        assert_eq!(c.h, 1);
        assert_eq!(c.witness.len(), 1);
        assert_eq!(
            verify_ngs(
                &trefoil(),
                &c.witness.words,
                VerifyStrategy::Completion(KbLimits::default())
            ),
            WitnessStatus::Verified
        );
        let hopf = Presentation::parse(&["x", "y"], &["x y x^-1 y^-1"]).unwrap();
        let c = rank_bound_ngs(&hopf);
        assert_eq!(c.h, 2);
        assert_eq!(c.witness.words, [w("x y x^-1 y^-1")]);
        let unknot = Presentation::parse(&["x"], &[]).unwrap();
        assert!(rank_bound_ngs(&unknot).witness.is_empty());
    }

    #[test]
    fn verification() {
        let p = trefoil();
        let kb = VerifyStrategy::Completion(KbLimits::default());
        assert_eq!(verify_ngs(&p, &[], kb), WitnessStatus::Refuted);
        assert_eq!(verify_ngs(&p, &[w("x")], kb), WitnessStatus::Refuted);
        assert_eq!(
            verify_ngs(&p, &[w("x y^-1")], VerifyStrategy::NecessaryOnly),
            WitnessStatus::NecessaryChecksPassed
        );
        let search = ClosureSearch { depth: 2, width: 3 };
        assert_eq!(
            verify_ngs(&p, &[w("x y^-1")], VerifyStrategy::BoundedSearch(search)),
            WitnessStatus::Verified
        );
    }

    #[test]
    fn intervals_and_distances() {
        let p = trefoil();
        let i = mq_interval(&p, Some(1), &[], 100).unwrap();
        assert_eq!(i.to_string(), "[1, 1]");
        let u = Presentation::parse(&["x"], &[]).unwrap();
        let j = mq_interval(&u, Some(0), &[], 100).unwrap();
        assert_eq!(j.to_string(), "[0, 0]");
        assert!(matches!(
            mq_interval(&u, Some(1), &[], 100),
            Err(MqError::Inverted { .. })
        ));
        let d = presentation_distance_bounds(&p, &u, &i, &j, 100).unwrap();
        assert_eq!(d.lower, 1);
        assert_eq!(d.upper, 2 + 1 - 2);
        let cat = move_catalog();
        assert_eq!(gordian_lower_bound(&i, &j, &cat[0]), 1);
        assert_eq!(gordian_lower_bound(&i, &i, &cat[0]), 0);
        let wide = MqInterval {
            lower: 3,
            ..j.clone()
        };
        assert_eq!(gordian_lower_bound(&wide, &j, &cat[2]), 1);
    }
}
