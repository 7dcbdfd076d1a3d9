//! Machine-readable output documents.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::abduction::Explanation;
use crate::solver::AnswerSetResult;
use crate::syntax::{Literal, Program, Rule};
use crate::updates::UpdateSolution;

/// One solution: the change and the program it produces, rules in source
/// syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub add: Vec<String>,
    pub remove: Vec<String>,
    pub program: Vec<String>,
}

impl SolutionDoc {
    pub fn new(delta: &Explanation, program: &Program) -> Self {
        SolutionDoc {
            add: rules(&delta.add),
            remove: rules(&delta.remove),
            program: program.iter().map(Rule::to_string).collect(),
        }
    }
}

impl From<&UpdateSolution> for SolutionDoc {
    fn from(s: &UpdateSolution) -> Self {
        SolutionDoc::new(&s.delta, &s.program)
    }
}

fn rules(set: &BTreeSet<Rule>) -> Vec<String> {
    set.iter().map(Rule::to_string).collect()
}

/// Intermediate programs, when tracing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub normal_form: Vec<String>,
    pub update_program: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionsDoc {
    pub solutions: Vec<SolutionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerSetsDoc {
    /// Consistent answer sets, literals in source syntax.
    pub answer_sets: Vec<Vec<String>>,
    /// Whether the only answer set is the contradictory one.
    pub contradictory: bool,
}

impl From<&AnswerSetResult> for AnswerSetsDoc {
    fn from(r: &AnswerSetResult) -> Self {
        AnswerSetsDoc {
            answer_sets: r
                .consistent()
                .map(|s| s.iter().map(Literal::to_string).collect())
                .collect(),
            contradictory: r.contains_contradictory,
        }
    }
}
