//! Fixture files compiled into the binary; `load` can read replacements
//! from a directory with the same layout.

use std::path::Path;

use crate::error::CliError;
use crate::input::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub path: &'static str,
    pub contents: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        path: "knots/10_63.pd",
        contents: include_str!("../fixtures/knots/10_63.pd"),
    },
    Fixture {
        path: "knots/12a_504.pd",
        contents: include_str!("../fixtures/knots/12a_504.pd"),
    },
    Fixture {
        path: "knots/12a_642.pd",
        contents: include_str!("../fixtures/knots/12a_642.pd"),
    },
    Fixture {
        path: "knots/12n_278.pd",
        contents: include_str!("../fixtures/knots/12n_278.pd"),
    },
    Fixture {
        path: "knots/3_1.pd",
        contents: include_str!("../fixtures/knots/3_1.pd"),
    },
    Fixture {
        path: "knots/4_1.pd",
        contents: include_str!("../fixtures/knots/4_1.pd"),
    },
    Fixture {
        path: "knots/6_1.pd",
        contents: include_str!("../fixtures/knots/6_1.pd"),
    },
    Fixture {
        path: "knots/9_35.pd",
        contents: include_str!("../fixtures/knots/9_35.pd"),
    },
    Fixture {
        path: "montesinos/10_63.mont",
        contents: include_str!("../fixtures/montesinos/10_63.mont"),
    },
    Fixture {
        path: "montesinos/12a_504.mont",
        contents: include_str!("../fixtures/montesinos/12a_504.mont"),
    },
    Fixture {
        path: "montesinos/12a_642.mont",
        contents: include_str!("../fixtures/montesinos/12a_642.mont"),
    },
    Fixture {
        path: "montesinos/12n_278.mont",
        contents: include_str!("../fixtures/montesinos/12n_278.mont"),
    },
    Fixture {
        path: "braids/granny.braid",
        contents: include_str!("../fixtures/braids/granny.braid"),
    },
    Fixture {
        path: "presentations/hopf.json",
        contents: include_str!("../fixtures/presentations/hopf.json"),
    },
    Fixture {
        path: "presentations/trefoil.json",
        contents: include_str!("../fixtures/presentations/trefoil.json"),
    },
    Fixture {
        path: "presentations/trefoil_witness.json",
        contents: include_str!("../fixtures/presentations/trefoil_witness.json"),
    },
    Fixture {
        path: "presentations/unknot_rank2.json",
        contents: include_str!("../fixtures/presentations/unknot_rank2.json"),
    },
];

/// Classical knot PD fixtures, by knot name.
pub const KNOTS: &[&str] = &[
    "3_1", "4_1", "6_1", "9_35", "10_63", "12a_504", "12a_642", "12n_278",
];

/// Montesinos descriptors of the three 12-crossing knots, by knot name.
pub const REPLACEMENT_EXAMPLES: &[&str] = &["12a_504", "12a_642", "12n_278"];

pub fn bundled(path: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|f| f.path == path).map(|f| f.contents)
}

/// A fixture from `dir`, or the bundled copy when `dir` is `None`.
pub fn load(dir: Option<&Path>, path: &str) -> Result<Document, CliError> {
    let text = match dir {
        Some(d) => std::fs::read_to_string(d.join(path))
            .map_err(|e| CliError::input(format!("fixture {path}: {e}")))?,
        None => bundled(path)
            .ok_or_else(|| CliError::input(format!("no bundled fixture {path}")))?
            .to_string(),
    };
    Ok(Document::parse(&text))
}
