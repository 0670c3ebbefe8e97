use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator has equal indices ({0},{0})")]
    EqualIndices(u16),
    #[error("strand indices are 1-based")]
    ZeroIndex,
    #[error("strand index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("sigma({i},{j}) requires i < j")]
    SigmaOrder { i: usize, j: usize },
    #[error("word was written with s(i,j) sugar; formatting would not reproduce the input")]
    LossyRoundTrip,
    #[error("illegal move {mv} for word {word}")]
    IllegalMove { mv: String, word: String },
    #[error("certificate does not replay: {0}")]
    BadCertificate(String),
    #[error("kernel precondition violated: strand {strand} projection has nonzero exponent vector")]
    NotInKernel { strand: usize },
    #[error("invalid generator spec: {0}")]
    BadSpec(String),
    #[error("comb needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
}
