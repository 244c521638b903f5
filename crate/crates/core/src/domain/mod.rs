//! Canonical task/candidate data model: task kinds and their label sets,
//! answer normalization and equality, final-answer extraction, and the
//! question–rationale–answer concatenation used by every downstream stage.

mod answer;
mod concat;
mod error;
mod jsonl;
mod problem;
mod task;

pub use answer::{answers_equal, extract_final_answer, normalize_answer, AnswerValue};
pub use concat::{
    concat_example, concat_gold_positive, concat_parts, question_block, render_options,
    MISSING_ANSWER_TEXT, SEPARATOR,
};
pub use error::DomainError;
pub use jsonl::{read_candidates, read_problems, write_candidates, write_problems};
pub use problem::{AdapterExample, Candidate, Problem, TokenUsage};
pub use task::TaskKind;
