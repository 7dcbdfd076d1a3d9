use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: identifier `{name}` uses the reserved `__` prefix")]
    ReservedName {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("program has variables but no constants to instantiate them with")]
    NoConstants,
    #[error("grounding produced more than {limit} rules")]
    GroundingBudgetExceeded { limit: usize },
    #[error("search space of {size} undecided literals exceeds the limit of {limit}")]
    CandidateBudgetExceeded { size: usize, limit: usize },
    #[error("rule `{0}` is not ground")]
    NonGroundRule(String),
    #[error("program is not a normal logic program: `{0}`")]
    NotNlp(String),
    #[error("observation `{0}` is an abducible")]
    AbducibleObservation(String),
    #[error("observation `{0}` is not ground")]
    NonGroundObservation(String),
    #[error("skeptical anti-explanation of bottom is not defined")]
    SkepticalBotUnsupported,
    #[error("brute-force oracle needs {size} abducible instances, limit is {limit}")]
    OracleBudgetExceeded { size: usize, limit: usize },
    #[error("integrity constraint `{0}` lies in the variable part")]
    ConstraintInVariablePart(String),
    #[error("the update program itself is inconsistent")]
    InconsistentUpdate,
    #[error("rule `{0}` is already in the program")]
    RuleAlreadyPresent(String),
    #[error("rule `{0}` is not in the program")]
    RuleNotPresent(String),
    #[error("rule `{0}` of the repair scope is not in the program")]
    ScopeNotSubset(String),
    #[error("{0}")]
    Invalid(String),
}
