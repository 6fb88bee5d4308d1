//! JSON file formats for presentations and normal-generator witnesses.

use serde::{Deserialize, Serialize};

use mqindex_core::mq::{NormalGeneratorWitness, Provenance, WitnessStatus};
use mqindex_core::presentation::Presentation;
use mqindex_core::word::{Symbol, Word};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::input(format!("invalid presentation file: {e}")))
    }

    pub fn to_presentation(&self) -> Result<Presentation, CliError> {
        let generators = self
            .generators
            .iter()
            .map(|g| Symbol::new(g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::input(format!("invalid generator: {e}")))?;
        let relators = self
            .relators
            .iter()
            .map(|r| parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(generators, relators)
            .map_err(|e| CliError::input(format!("invalid presentation: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl From<&Presentation> for PresentationFile {
    fn from(p: &Presentation) -> Self {
        PresentationFile {
            generators: p
                .generators()
                .iter()
                .map(|g| g.as_str().to_string())
                .collect(),
            relators: p.relators().iter().map(Word::to_string).collect(),
        }
    }
}

pub fn parse_word(s: &str) -> Result<Word, CliError> {
    s.parse()
        .map_err(|e| CliError::input(format!("invalid word `{s}`: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProvenanceTag {
    RankBound,
    Transfer,
    User,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusTag {
    Unverified,
    NecessaryChecksPassed,
    Verified,
    Refuted,
}

impl From<Provenance> for ProvenanceTag {
    fn from(p: Provenance) -> Self {
        match p {
            Provenance::RankBound => ProvenanceTag::RankBound,
            Provenance::Transfer => ProvenanceTag::Transfer,
            Provenance::User => ProvenanceTag::User,
        }
    }
}

impl From<ProvenanceTag> for Provenance {
    fn from(p: ProvenanceTag) -> Self {
        match p {
            ProvenanceTag::RankBound => Provenance::RankBound,
            ProvenanceTag::Transfer => Provenance::Transfer,
            ProvenanceTag::User => Provenance::User,
        }
    }
}

impl From<WitnessStatus> for StatusTag {
    fn from(s: WitnessStatus) -> Self {
        match s {
            WitnessStatus::Unverified => StatusTag::Unverified,
            WitnessStatus::NecessaryChecksPassed => StatusTag::NecessaryChecksPassed,
            WitnessStatus::Verified => StatusTag::Verified,
            WitnessStatus::Refuted => StatusTag::Refuted,
        }
    }
}

/// A witness file. The stored status is informational; loading always
/// starts from `Unverified`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub presentation: PresentationFile,
    pub words: Vec<String>,
    pub provenance: ProvenanceTag,
    pub status: StatusTag,
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::input(format!("invalid witness file: {e}")))
    }

    pub fn to_witness(&self) -> Result<NormalGeneratorWitness, CliError> {
        let p = self.presentation.to_presentation()?;
        let words = self
            .words
            .iter()
            .map(|w| parse_word(w))
            .collect::<Result<Vec<_>, _>>()?;
        NormalGeneratorWitness::new(p, words, self.provenance.into())
            .map_err(|e| CliError::hypothesis(format!("witness: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl From<&NormalGeneratorWitness> for WitnessFile {
    fn from(w: &NormalGeneratorWitness) -> Self {
        WitnessFile {
            presentation: PresentationFile::from(&w.presentation),
            words: w.words.iter().map(Word::to_string).collect(),
            provenance: w.provenance.into(),
            status: w.status.into(),
        }
    }
}
