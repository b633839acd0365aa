use thiserror::Error;

/// Every failure the library can report.
///
/// Variants carry the witnesses that made a check fail so callers (and the
/// CLI) can echo them back. [`Error::name`] gives the stable structured name
/// used in machine-readable reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason}")]
    NotAGroup { reason: String, triple: Option<[usize; 3]> },
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("element {element} is out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("subset is not closed: {a} * {b} falls outside it")]
    NotClosed { a: usize, b: usize },
    #[error("subset does not contain the identity")]
    MissingIdentity,
    #[error("subgroup is not proper")]
    NotProper,
    #[error("map is not a bijection: {reason}")]
    NotBijective { reason: String },
    #[error("map is not a homomorphism: phi({x} * {y}) != phi({x}) * phi({y})")]
    NotHomomorphism { x: usize, y: usize },
    #[error("subgroup is not normal: {g} * {h} * {g}^-1 leaves it")]
    NotNormal { h: usize, g: usize },
    #[error("H is not normal and no element a has aH != a^-1 H")]
    NoCase2Witness,
    #[error("double coset of {a} contains the involution {element}")]
    OrderTwoInDoubleCoset { a: usize, element: usize },
    #[error("unknown letter {token:?} at position {position}")]
    UnknownLetter { token: String, position: usize },
    #[error("instance has no element outside the associated subgroup")]
    InstanceTooSmall,
    #[error("every base element lies in H1 or H2")]
    NoSeparatorElement,
    #[error("witness element is not applicable: {reason}")]
    WitnessNotApplicable { reason: String },
    #[error("no filler element outside H and the witness double cosets")]
    NoFillerElement,
    #[error("the opposite factor has no element outside H")]
    NoOppositeFactorElement,
    #[error("ball enumeration exceeded the cap of {cap} elements")]
    BallCapExceeded { cap: usize },
    #[error("unknown suite {0:?}")]
    SuiteUnknown(String),
    #[error("suite {suite:?} does not apply to {construction}")]
    SuiteNotApplicable { suite: String, construction: &'static str },
    #[error("operation {operation:?} does not apply to {construction}")]
    NotApplicable {
        operation: &'static str,
        construction: &'static str,
    },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Structured name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotAGroup { .. } => "NotAGroup",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::NotClosed { .. } => "NotClosed",
            Error::MissingIdentity => "MissingIdentity",
            Error::NotProper => "NotProper",
            Error::NotBijective { .. } => "NotBijective",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::NotNormal { .. } => "NotNormal",
            Error::NoCase2Witness => "NoCase2Witness",
            Error::OrderTwoInDoubleCoset { .. } => "OrderTwoInDoubleCoset",
            Error::UnknownLetter { .. } => "UnknownLetter",
            Error::InstanceTooSmall => "InstanceTooSmall",
            Error::NoSeparatorElement => "NoSeparatorElement",
            Error::WitnessNotApplicable { .. } => "WitnessNotApplicable",
            Error::NoFillerElement => "NoFillerElement",
            Error::NoOppositeFactorElement => "NoOppositeFactorElement",
            Error::BallCapExceeded { .. } => "BallCapExceeded",
            Error::SuiteUnknown(_) => "SuiteUnknown",
            Error::SuiteNotApplicable { .. } => "SuiteNotApplicable",
            Error::NotApplicable { .. } => "NotApplicable",
            Error::Malformed(_) => "Malformed",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
