use mqindex_core::knots::SearchLimits;
use mqindex_core::presentation::{ClosureSearch, KbLimits};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 0x6d71_6964_7831;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Human,
    Json,
}

/// Effort budgets and output settings shared by every command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfiguration {
    pub tietze_budget: usize,
    /// Rule limit for Knuth-Bendix; length and step limits scale with it.
    pub kb_budget: usize,
    /// Move budget for unknotting searches.
    pub search_depth: usize,
    /// State limit for unknotting searches.
    pub search_width: usize,
    pub rational_bound: i64,
    pub output: OutputMode,
    pub seed: u64,
}

impl Default for RunConfiguration {
    fn default() -> Self {
        RunConfiguration {
            tietze_budget: 500,
            kb_budget: 400,
            search_depth: 2,
            search_width: 20_000,
            rational_bound: 8,
            output: OutputMode::Human,
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfiguration {
    pub fn validate(&self) -> Result<(), CliError> {
        let budgets = [
            ("--budget-tietze", self.tietze_budget as i64),
            ("--budget-kb", self.kb_budget as i64),
            ("--search-depth", self.search_depth as i64),
            ("--search-width", self.search_width as i64),
            ("--rational-bound", self.rational_bound),
        ];
        for (flag, v) in budgets {
            if v <= 0 {
                return Err(CliError::input(format!("{flag} must be positive")));
            }
        }
        Ok(())
    }

    pub fn kb_limits(&self) -> KbLimits {
        let d = KbLimits::default();
        KbLimits {
            max_rules: self.kb_budget,
            max_length: d.max_length.min(4 + self.kb_budget / 10),
            max_steps: self.kb_budget.saturating_mul(50),
        }
    }

    pub fn closure_search(&self) -> ClosureSearch {
        ClosureSearch {
            depth: self.search_depth,
            width: self.search_depth + 1,
        }
    }

    pub fn search_limits(&self, virtualizations: usize, crossing_changes: usize) -> SearchLimits {
        SearchLimits {
            virtualizations,
            crossing_changes,
            max_states: self.search_width,
        }
    }

    pub fn json(&self) -> bool {
        self.output == OutputMode::Json
    }
}
