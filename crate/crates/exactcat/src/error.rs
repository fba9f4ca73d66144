use std::fmt;

/// Errors surfaced by kernel operations.
///
/// Every variant carries a human-readable detail string; the variant itself is
/// the stable, machine-checkable part of the contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Composition chain broken: codomain of the first arrow differs from the
    /// domain of the second.
    DomainMismatch(String),
    /// Additive operation on morphisms with different domains or codomains,
    /// or matrix data whose shape disagrees with the declared objects.
    ShapeMismatch(String),
    /// Operands live in different models.
    ModelMismatch(String),
    /// Object payload rejected by its model's validation rule.
    InvalidObject(String),
    /// Morphism data rejected by its model (shape, divisibility, or
    /// intertwining constraints).
    InvalidMorphism(String),
    /// Morphism failed the admissible-mono predicate where one was required.
    NotAdmissibleMono(String),
    /// Morphism failed the admissible-epi predicate where one was required.
    NotAdmissibleEpi(String),
    /// Morphism admits no admissible (epi, mono) factorization in this
    /// structure.
    NotAdmissibleMorphism(String),
    /// Factorization input does not annihilate the required composite.
    NotAnnihilating(String),
    /// An exact linear system that was expected to be solvable had no
    /// solution. Reaching this from validated inputs indicates a model bug.
    NoSolution(String),
    /// Claimed section does not satisfy mu_tilde . mu = id.
    NotASection(String),
    /// Component lift handed to the summand-injectivity constructor fails its
    /// defining composite.
    BadComponentLift(String),
    /// Lifting target failed the model's injectivity test.
    NotInjectiveTarget(String),
    /// Middle object of a presentation failed the injectivity test.
    NotInjectiveMiddle(String),
    /// The two inputs do not share the required base object.
    BaseMismatch(String),
    /// Provided base certificate failed verification.
    BadBaseIso(String),
    /// Resolution too short for the requested iteration depth.
    DepthTooShallow(String),
    /// Certificate composites are not identities.
    CertificateInvalid(String),
    /// Unrecognized mutation identifier.
    UnknownMutation(String),
    /// Seeded generator could not produce a sample within its rejection
    /// budget.
    GeneratorExhausted(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, detail) = match self {
            Error::DomainMismatch(d) => ("DomainMismatch", d),
            Error::ShapeMismatch(d) => ("ShapeMismatch", d),
            Error::ModelMismatch(d) => ("ModelMismatch", d),
            Error::InvalidObject(d) => ("InvalidObject", d),
            Error::InvalidMorphism(d) => ("InvalidMorphism", d),
            Error::NotAdmissibleMono(d) => ("NotAdmissibleMono", d),
            Error::NotAdmissibleEpi(d) => ("NotAdmissibleEpi", d),
            Error::NotAdmissibleMorphism(d) => ("NotAdmissibleMorphism", d),
            Error::NotAnnihilating(d) => ("NotAnnihilating", d),
            Error::NoSolution(d) => ("NoSolution", d),
            Error::NotASection(d) => ("NotASection", d),
            Error::BadComponentLift(d) => ("BadComponentLift", d),
            Error::NotInjectiveTarget(d) => ("NotInjectiveTarget", d),
            Error::NotInjectiveMiddle(d) => ("NotInjectiveMiddle", d),
            Error::BaseMismatch(d) => ("BaseMismatch", d),
            Error::BadBaseIso(d) => ("BadBaseIso", d),
            Error::DepthTooShallow(d) => ("DepthTooShallow", d),
            Error::CertificateInvalid(d) => ("CertificateInvalid", d),
            Error::UnknownMutation(d) => ("UnknownMutation", d),
            Error::GeneratorExhausted(d) => ("GeneratorExhausted", d),
        };
        write!(f, "{name}: {detail}")
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
