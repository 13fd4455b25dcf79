use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// Gamma function evaluated at a nonpositive integer.
    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("invalid mixture-Gamma distribution: {0}")]
    InvalidDistribution(String),

    /// The moment triple cannot be represented by a KG distribution.
    #[error("KG moment matching failed: {detail} (a_A={a}, b_A={b}, c_A={c}, discriminant={discriminant})")]
    ModelFit {
        detail: String,
        a: f64,
        b: f64,
        c: f64,
        discriminant: f64,
    },

    /// No vertical line separates the two pole families of a Mellin-Barnes integrand.
    #[error("no separating contour: right poles start at {right}, left poles end at {left}")]
    Contour { left: f64, right: f64 },

    #[error("{what} did not converge: {detail}")]
    Convergence { what: &'static str, detail: String },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }

    pub(crate) fn convergence(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Convergence {
            what,
            detail: detail.into(),
        }
    }
}
