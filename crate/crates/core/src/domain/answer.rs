use std::fmt;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::error::DomainError;
use super::task::TaskKind;

/// A canonical answer label: an uppercase option letter for multiple choice,
/// a lowercase token from the task's label set otherwise. Construct via
/// [`normalize_answer`] or [`AnswerValue::from_canonical`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AnswerValue(String);

impl AnswerValue {
    /// Accepts an already-canonical label, validating it against the task.
    pub fn from_canonical(canonical: &str, task: TaskKind) -> Result<Self, DomainError> {
        if task.is_legal(canonical) {
            Ok(AnswerValue(canonical.to_string()))
        } else {
            Err(DomainError::IllegalLabel {
                label: canonical.to_string(),
                task,
            })
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AnswerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

// Leading option letter with an optional "(" and a required boundary after,
// so "B.", "(D) some text", "b:" map to a letter but "Because..." does not.
static MC_LEADING: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"^\(?([A-Za-z])\)?(?:[.,:;)\s]|$)").expect("static regex"));

// Standalone uppercase letter inside running text, used by the extraction
// fallback: "(D)" or a letter delimited by word boundaries.
static MC_STANDALONE: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\(([A-Z])\)|\b([A-Z])\b").expect("static regex"));

/// Maps a raw answer string to its canonical label.
///
/// Strips whitespace and edge punctuation, case-folds, and maps option
/// phrasings like "(B)", "B.", "b:" to "B". Errors with
/// [`DomainError::UnmappableAnswer`] when no legal label can be recovered.
pub fn normalize_answer(raw: &str, task: TaskKind) -> Result<AnswerValue, DomainError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(unmappable(raw, task));
    }
    match task.label_set() {
        None => {
            if let Some(caps) = MC_LEADING.captures(trimmed) {
                let letter = caps.get(1).expect("group 1").as_str();
                return Ok(AnswerValue(letter.to_ascii_uppercase()));
            }
            let stripped = trimmed.trim_matches(|c: char| !c.is_alphanumeric());
            let mut chars = stripped.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_alphabetic() => {
                    Ok(AnswerValue(c.to_ascii_uppercase().to_string()))
                }
                _ => Err(unmappable(raw, task)),
            }
        }
        Some(set) => {
            let folded = trimmed.to_lowercase();
            let tokens: Vec<&str> = folded
                .split_whitespace()
                .map(|t| t.trim_matches(|c: char| !c.is_alphanumeric()))
                .filter(|t| !t.is_empty())
                .collect();
            // Whole input joined with "-" covers multiword labels such as
            // "not entailment" -> "not-entailment".
            let joined = tokens.join("-");
            if set.contains(&joined.as_str()) {
                return Ok(AnswerValue(joined));
            }
            if let Some(first) = tokens.first() {
                if set.contains(first) {
                    return Ok(AnswerValue((*first).to_string()));
                }
            }
            Err(unmappable(raw, task))
        }
    }
}

fn unmappable(raw: &str, task: TaskKind) -> DomainError {
    DomainError::UnmappableAnswer {
        raw: raw.to_string(),
        task,
    }
}

/// Pulls the final answer out of a full generation.
///
/// Takes the text after the LAST occurrence of the "####" marker and
/// normalizes it. Without a marker, falls back to scanning the final
/// sentence for a standalone legal label. Returns `None` (extraction
/// failure) when both fail; such candidates are labeled incorrect.
pub fn extract_final_answer(generation: &str, task: TaskKind) -> Option<AnswerValue> {
    if let Some(pos) = generation.rfind("####") {
        let tail = &generation[pos + 4..];
        return normalize_answer(tail, task).ok();
    }
    let sentence = final_sentence(generation);
    match task.label_set() {
        None => {
            let mut last = None;
            for caps in MC_STANDALONE.captures_iter(sentence) {
                let letter = caps.get(1).or_else(|| caps.get(2));
                if let Some(m) = letter {
                    last = Some(m.as_str().to_string());
                }
            }
            last.map(AnswerValue)
        }
        Some(set) => {
            let folded = sentence.to_lowercase();
            let mut best: Option<(usize, &str)> = None;
            for label in set {
                let pattern = format!(r"\b{}\b", regex::escape(label));
                let re = Regex::new(&pattern).expect("label regex");
                if let Some(m) = re.find_iter(&folded).last() {
                    if best.map_or(true, |(pos, _)| m.start() >= pos) {
                        best = Some((m.start(), label));
                    }
                }
            }
            best.map(|(_, label)| AnswerValue(label.to_string()))
        }
    }
}

fn final_sentence(text: &str) -> &str {
    let trimmed = text.trim_end();
    let body = trimmed.trim_end_matches(|c| matches!(c, '.' | '?' | '!'));
    match body.rfind(|c| matches!(c, '.' | '?' | '!')) {
        Some(i) => body[i + 1..].trim_start(),
        None => body,
    }
}

/// Exact equality of canonical forms; symmetric and reflexive.
pub fn answers_equal(a: &AnswerValue, b: &AnswerValue, task: TaskKind) -> bool {
    debug_assert!(task.is_legal(a.as_str()), "lhs not legal for {task}");
    debug_assert!(task.is_legal(b.as_str()), "rhs not legal for {task}");
    a.as_str() == b.as_str()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MC: TaskKind = TaskKind::MultipleChoice;

    #[test]
    fn normalize_strips_punctuation() {
        assert_eq!(normalize_answer("B.", MC).unwrap().as_str(), "B");
    }

    #[test]
    fn normalize_takes_leading_option_letter_with_trailing_text() {
        // Case-study style phrasing: a parenthesized letter then the option text.
        let raw = "(D) Impulses for pain travel principally up the dorsal columns";
        assert_eq!(normalize_answer(raw, MC).unwrap().as_str(), "D");
    }

    #[test]
    fn normalize_case_folds_labels() {
        assert_eq!(
            normalize_answer("Yes", TaskKind::YesNo).unwrap().as_str(),
            "yes"
        );
        assert_eq!(
            normalize_answer("  MAYBE. ", TaskKind::YesNoMaybe)
                .unwrap()
                .as_str(),
            "maybe"
        );
    }

    #[test]
    fn normalize_does_not_mistake_words_for_letters() {
        assert!(normalize_answer("Because of reasons", MC).is_err());
        assert!(normalize_answer("", MC).is_err());
        assert!(normalize_answer("perhaps", TaskKind::YesNo).is_err());
    }

    #[test]
    fn normalize_handles_multiword_labels() {
        assert_eq!(
            normalize_answer("Not Entailment", TaskKind::BinaryEntailment)
                .unwrap()
                .as_str(),
            "not-entailment"
        );
    }

    #[test]
    fn normalize_label_with_trailing_clause_uses_first_token() {
        assert_eq!(
            normalize_answer("yes, the study supports it", TaskKind::YesNo)
                .unwrap()
                .as_str(),
            "yes"
        );
    }

    #[test]
    fn normalize_is_idempotent() {
        for (raw, task) in [
            ("B.", MC),
            ("(D) trailing", MC),
            ("Yes", TaskKind::YesNo),
            ("not entailment", TaskKind::BinaryEntailment),
            ("Mixture.", TaskKind::Fact4Way),
        ] {
            let once = normalize_answer(raw, task).unwrap();
            let twice = normalize_answer(once.as_str(), task).unwrap();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn extract_takes_text_after_marker() {
        let text = "Impulses travel up the anterolateral system, not the dorsal columns. #### A.";
        assert_eq!(extract_final_answer(text, MC).unwrap().as_str(), "A");
    }

    #[test]
    fn extract_uses_last_marker() {
        let text = "#### D. Wait, reconsider. #### B. (B) Proprioception is appreciated via the same tracts as light touch.";
        assert_eq!(extract_final_answer(text, MC).unwrap().as_str(), "B");
    }

    #[test]
    fn extract_without_marker_or_label_fails() {
        assert!(extract_final_answer("no marker at all", MC).is_none());
    }

    #[test]
    fn extract_fallback_scans_final_sentence() {
        let text = "Vibration sense is tested with a 128 Hz fork. \
                    (D) Impulses for pain travel principally up the dorsal columns.";
        assert_eq!(extract_final_answer(text, MC).unwrap().as_str(), "D");
    }

    #[test]
    fn extract_fallback_finds_label_token() {
        let text = "Considering the abstract, the evidence points one way. The answer is yes.";
        assert_eq!(
            extract_final_answer(text, TaskKind::YesNo).unwrap().as_str(),
            "yes"
        );
    }

    #[test]
    fn extract_with_unparseable_marker_tail_fails() {
        assert!(extract_final_answer("thinking... #### unsure", MC).is_none());
    }

    #[test]
    fn equality_matches_canonical_forms() {
        let b = AnswerValue::from_canonical("B", MC).unwrap();
        let b2 = AnswerValue::from_canonical("B", MC).unwrap();
        let d = AnswerValue::from_canonical("D", MC).unwrap();
        assert!(answers_equal(&b, &b2, MC));
        assert!(!answers_equal(&d, &b, MC));
        let yes = AnswerValue::from_canonical("yes", TaskKind::YesNo).unwrap();
        let no = AnswerValue::from_canonical("no", TaskKind::YesNo).unwrap();
        assert!(!answers_equal(&yes, &no, TaskKind::YesNo));
    }
}
