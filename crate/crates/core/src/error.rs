use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("two-qubit gate acts twice on qubit {0}")]
    RepeatedQubit(usize),
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    QubitCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QasmError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unsupported gate `{name}` at line {line}")]
    UnsupportedGate { name: String, line: usize },
    #[error("unsupported statement `{stmt}` at line {line}")]
    UnsupportedStatement { stmt: String, line: usize },
    #[error("line {line}: {source}")]
    Circuit {
        line: usize,
        #[source]
        source: CircuitError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("stale match: vertex {0} no longer exists or no longer satisfies the rule")]
    StaleMatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("diagram is not graph-like: {0}")]
    NotGraphLike(String),
    #[error("no extractable vertex on the frontier ({remaining} interior vertices left)")]
    NoProgress { remaining: usize },
    #[error("malformed boundary: {0}")]
    Boundary(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{what} exceeds the oracle limit ({size} > {limit})")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),
}
