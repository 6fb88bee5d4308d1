use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use mqindex_core::knots::{
    pd_for_montesinos, pd_from_braid, wirtinger_from_gauss, wirtinger_from_pd, BraidWord,
    GaussCode, MontesinosKnot, PdCode,
};
use mqindex_core::presentation::Presentation;

use crate::error::CliError;
use crate::files::PresentationFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum Format {
    Pd,
    Gauss,
    Braid,
    Montesinos,
    Presentation,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Pd => "pd",
            Format::Gauss => "gauss",
            Format::Braid => "braid",
            Format::Montesinos => "montesinos",
            Format::Presentation => "presentation",
        })
    }
}

impl Format {
    /// Guess from the first non-blank character.
    pub fn detect(text: &str) -> Option<Format> {
        let t = text.trim_start();
        match t.chars().next()? {
            'X' => Some(Format::Pd),
            'K' => Some(Format::Montesinos),
            '{' => Some(Format::Presentation),
            's' | 'σ' => Some(Format::Braid),
            'O' | 'U' | 'o' | 'u' => Some(Format::Gauss),
            _ => None,
        }
    }
}

/// Input text with `# key: value` header lines split off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub body: String,
    pub metadata: BTreeMap<String, String>,
}

impl Document {
    pub fn parse(text: &str) -> Document {
        let mut body = Vec::new();
        let mut metadata = BTreeMap::new();
        for line in text.lines() {
            let l = line.trim();
            if let Some(rest) = l.strip_prefix('#') {
                if let Some((k, v)) = rest.split_once(':') {
                    metadata.insert(k.trim().to_string(), v.trim().to_string());
                }
            } else if !l.is_empty() {
                body.push(l);
            }
        }
        Document {
            body: body.join(" "),
            metadata,
        }
    }
}

pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(path))
            .map_err(|e| CliError::input(format!("reading {path}: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotInput {
    Pd(PdCode),
    Gauss(GaussCode),
    Braid(BraidWord),
    Montesinos(MontesinosKnot),
    Presentation(Presentation),
}

fn parse_as<T: FromStr>(text: &str, what: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    text.parse()
        .map_err(|e: T::Err| CliError::input(format!("invalid {what}: {e}")))
}

impl KnotInput {
    pub fn parse(text: &str, format: Option<Format>) -> Result<KnotInput, CliError> {
        let doc = Document::parse(text);
        let format = match format {
            Some(f) => f,
            None if doc.body.is_empty() => {
                return Err(CliError::input(
                    "empty input; pass --format to read an empty code",
                ))
            }
            None => Format::detect(&doc.body)
                .ok_or_else(|| CliError::input("cannot detect the input format; pass --format"))?,
        };
        Ok(match format {
            Format::Pd => KnotInput::Pd(parse_as(&doc.body, "PD code")?),
            Format::Gauss => KnotInput::Gauss(parse_as(&doc.body, "Gauss code")?),
            Format::Braid => KnotInput::Braid(parse_as(&doc.body, "braid word")?),
            Format::Montesinos => {
                KnotInput::Montesinos(parse_as(&doc.body, "Montesinos descriptor")?)
            }
            Format::Presentation => {
                KnotInput::Presentation(PresentationFile::parse(&doc.body)?.to_presentation()?)
            }
        })
    }

    pub fn format(&self) -> Format {
        match self {
            KnotInput::Pd(_) => Format::Pd,
            KnotInput::Gauss(_) => Format::Gauss,
            KnotInput::Braid(_) => Format::Braid,
            KnotInput::Montesinos(_) => Format::Montesinos,
            KnotInput::Presentation(_) => Format::Presentation,
        }
    }

    /// Canonical text of the parsed input.
    pub fn text(&self) -> String {
        match self {
            KnotInput::Pd(pd) => pd.to_string(),
            KnotInput::Gauss(g) => g.to_string(),
            KnotInput::Braid(b) => b.to_string(),
            KnotInput::Montesinos(m) => m.to_string(),
            KnotInput::Presentation(p) => PresentationFile::from(p).to_json(),
        }
    }

    /// A PD code, when the input describes a classical diagram.
    pub fn pd(&self) -> Result<Option<PdCode>, CliError> {
        Ok(match self {
            KnotInput::Pd(pd) => Some(pd.clone()),
            KnotInput::Braid(b) => {
                Some(pd_from_braid(b).map_err(|e| CliError::input(format!("braid closure: {e}")))?)
            }
            KnotInput::Montesinos(m) => Some(
                pd_for_montesinos(m)
                    .map_err(|e| CliError::input(format!("Montesinos diagram: {e}")))?,
            ),
            KnotInput::Gauss(_) | KnotInput::Presentation(_) => None,
        })
    }

    /// Gauss code of the diagram, if there is one.
    pub fn gauss(&self) -> Result<Option<GaussCode>, CliError> {
        Ok(match self {
            KnotInput::Gauss(g) => Some(g.clone()),
            _ => self.pd()?.map(|pd| pd.to_gauss()),
        })
    }

    /// Wirtinger presentation of the diagram, or the given presentation.
    pub fn presentation(&self) -> Result<Presentation, CliError> {
        Ok(match self {
            KnotInput::Presentation(p) => p.clone(),
            KnotInput::Gauss(g) => wirtinger_from_gauss(g),
            _ => wirtinger_from_pd(&self.pd()?.expect("diagram input")),
        })
    }
}
