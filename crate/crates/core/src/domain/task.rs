use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::error::DomainError;

/// Task family a problem belongs to. The set of legal answer labels is a
/// pure function of the kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TaskKind {
    #[serde(rename = "multiple-choice")]
    MultipleChoice,
    #[serde(rename = "yes-no-maybe")]
    YesNoMaybe,
    #[serde(rename = "yes-no")]
    YesNo,
    #[serde(rename = "nli-3way")]
    Nli3Way,
    #[serde(rename = "binary-entailment")]
    BinaryEntailment,
    #[serde(rename = "fact-4way")]
    Fact4Way,
}

impl TaskKind {
    /// Closed label sets for the non-multiple-choice kinds. Multiple choice
    /// returns `None`: its labels are option letters, validated per problem.
    pub fn label_set(&self) -> Option<&'static [&'static str]> {
        match self {
            TaskKind::MultipleChoice => None,
            TaskKind::YesNoMaybe => Some(&["yes", "no", "maybe"]),
            TaskKind::YesNo => Some(&["yes", "no"]),
            TaskKind::Nli3Way => Some(&["entailment", "contradiction", "neutral"]),
            TaskKind::BinaryEntailment => Some(&["entailment", "not-entailment"]),
            TaskKind::Fact4Way => Some(&["true", "false", "unproven", "mixture"]),
        }
    }

    /// Whether `canonical` is a legal label for this kind. Multiple choice
    /// admits any single uppercase letter at the task level; whether the
    /// letter actually names one of a problem's options is checked by
    /// [`super::Problem::validate`].
    pub fn is_legal(&self, canonical: &str) -> bool {
        match self.label_set() {
            None => {
                canonical.len() == 1 && canonical.chars().all(|c| c.is_ascii_uppercase())
            }
            Some(set) => set.contains(&canonical),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TaskKind::MultipleChoice => "multiple-choice",
            TaskKind::YesNoMaybe => "yes-no-maybe",
            TaskKind::YesNo => "yes-no",
            TaskKind::Nli3Way => "nli-3way",
            TaskKind::BinaryEntailment => "binary-entailment",
            TaskKind::Fact4Way => "fact-4way",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskKind {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "multiple-choice" => Ok(TaskKind::MultipleChoice),
            "yes-no-maybe" => Ok(TaskKind::YesNoMaybe),
            "yes-no" => Ok(TaskKind::YesNo),
            "nli-3way" => Ok(TaskKind::Nli3Way),
            "binary-entailment" => Ok(TaskKind::BinaryEntailment),
            "fact-4way" => Ok(TaskKind::Fact4Way),
            other => Err(DomainError::UnknownTaskKind {
                kind: other.to_string(),
            }),
        }
    }
}
