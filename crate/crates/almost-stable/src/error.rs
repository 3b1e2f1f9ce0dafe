use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants carry enough context to pinpoint the offending agent, pair, or
/// input line; the CLI maps validation errors to exit code 2 and
/// size/feasibility refusals ([`Error::TooLarge`], [`Error::Infeasible`]) to
/// exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally bad input text (missing header, unparsable token, ...).
    #[error("MALFORMED: line {line}: {msg}")]
    Malformed { line: usize, msg: String },

    /// An id outside 1..=n (or 0) appeared in a list or matching.
    #[error("BAD_ID: line {line}: id {id} out of range 1..={n}")]
    BadId { line: usize, id: i64, n: usize },

    /// An agent ranked itself.
    #[error("SELF_RANKED: agent {agent} ranks itself")]
    SelfRanked { agent: u32 },

    /// An agent listed the same partner twice.
    #[error("DUPLICATE_ENTRY: agent {agent} lists agent {partner} more than once")]
    DuplicateEntry { agent: u32, partner: u32 },

    /// Acceptability must be mutual: `lister` ranks `listed`, but not back.
    #[error(
        "ASYMMETRIC: agent {lister} ranks agent {listed}, but {listed} does not rank {lister}"
    )]
    Asymmetric { lister: u32, listed: u32 },

    /// A two-sided instance whose acceptability graph is not bipartite.
    #[error("NOT_BIPARTITE: acceptability graph has an odd cycle through agent {agent}")]
    NotBipartite { agent: u32 },

    /// Operation requires a two-sided instance.
    #[error("NOT_SMI: operation requires a two-sided (smi) instance")]
    NotSmi,

    /// A matching that does not fit the instance (non-mutual pair, reused
    /// agent, unacceptable pair).
    #[error("INVALID_MATCHING: {msg}")]
    InvalidMatching { msg: String },

    /// A short-list solver was handed an instance with a list longer than two.
    #[error("DEGREE_EXCEEDED: agent {agent} has {len} acceptable partners (limit 2)")]
    DegreeExceeded { agent: u32, len: usize },

    /// Exact search refused an instance above its size cap.
    #[error(
        "TOO_LARGE: {n} agents exceeds the exact-search cap of {cap} (raise the cap to force)"
    )]
    TooLarge { n: usize, cap: usize },

    /// No matching satisfies the requested cardinality constraint.
    #[error("INFEASIBLE: {msg}")]
    Infeasible { msg: String },

    /// Family parameter out of range.
    #[error("BAD_K: {msg}")]
    BadK { msg: String },

    /// Forcing-gadget nesting depth out of range.
    #[error("BAD_OMEGA: {msg}")]
    BadOmega { msg: String },

    /// A formula that is not in the required (2,2) exactly-3 form.
    #[error("INVALID_FORMULA: {}", violations.join("; "))]
    InvalidFormula { violations: Vec<String> },

    /// An assignment that leaves some clause unsatisfied.
    #[error("UNSATISFYING_ASSIGNMENT: clause {clause} has no true literal")]
    UnsatisfyingAssignment { clause: usize },

    /// A matching handed to assignment extraction that no satisfying
    /// assignment can produce.
    #[error("MALFORMED_WITNESS: {msg}")]
    MalformedWitness { msg: String },

    /// Bad experiment or generator configuration.
    #[error("BAD_CONFIG: {msg}")]
    BadConfig { msg: String },

    /// A cut state whose cached crossing counts disagree with its sides.
    #[error("INCONSISTENT_CUT: agent {agent}: cached crossing count {cached}, actual {actual}")]
    InconsistentCut {
        agent: u32,
        cached: u32,
        actual: u32,
    },

    /// An ILP assignment that does not value every variable.
    #[error("MISSING_VARIABLE: {name}")]
    MissingVariable { name: String },

    /// An empty input where content is required.
    #[error("EMPTY: {msg}")]
    Empty { msg: String },

    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code for this error: 3 for size/feasibility refusals, 2 for
    /// everything else (validation).
    pub fn exit_code(&self) -> i32 {
        match self {
            // Bad flag values or combinations are usage errors, like the
            // argument errors the parser itself rejects.
            Error::BadConfig { .. } => 2,
            // Everything discovered while running — unreadable or malformed
            // files, oversized or infeasible instances — is a runtime error.
            _ => 3,
        }
    }
}
