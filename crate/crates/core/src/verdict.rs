use std::fmt;

/// The resource limit that stopped a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Limit {
    TruthTableVariables,
    ExpansionSize,
    EvaluationSteps,
    ScheduleCap,
}

impl Limit {
    pub fn as_str(self) -> &'static str {
        match self {
            Limit::TruthTableVariables => "truth-table-variables",
            Limit::ExpansionSize => "expansion-size",
            Limit::EvaluationSteps => "evaluation-steps",
            Limit::ScheduleCap => "schedule-cap",
        }
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Theorem,
    NonTheorem,
    Unknown(Limit),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Theorem
        } else {
            Verdict::NonTheorem
        }
    }

    pub fn is_theorem(self) -> bool {
        self == Verdict::Theorem
    }

    pub fn is_known(self) -> bool {
        !matches!(self, Verdict::Unknown(_))
    }

    /// `T`, `N` or `U`.
    pub fn letter(self) -> char {
        match self {
            Verdict::Theorem => 'T',
            Verdict::NonTheorem => 'N',
            Verdict::Unknown(_) => 'U',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Theorem => "Theorem",
            Verdict::NonTheorem => "NonTheorem",
            Verdict::Unknown(_) => "Unknown",
        }
    }

    /// The limit for `Unknown`, `-` otherwise.
    pub fn reason(self) -> &'static str {
        match self {
            Verdict::Unknown(l) => l.as_str(),
            _ => "-",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Resource limits shared by the decision procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest materialized énoncé, in signs.
    pub max_nodes: usize,
    /// Largest number of distinct variables for a truth table.
    pub max_tt_vars: usize,
    /// Largest number of instance evaluations for one F-decision.
    pub max_eval_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: 200_000,
            max_tt_vars: 20,
            max_eval_steps: 100_000_000,
        }
    }
}
