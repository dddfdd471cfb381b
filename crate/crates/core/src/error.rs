use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{name} = {value} is outside the domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: String,
    },

    #[error("Rodrigues expansion supports degree <= {max}, got {degree}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("series did not converge within {terms} terms (last term {last_term:e}, sum {sum:e})")]
    SeriesNotConverged {
        terms: usize,
        last_term: f64,
        sum: f64,
    },

    #[error("integrand returned {value} at abscissa {abscissa}")]
    NonFiniteIntegrand { abscissa: f64, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name,
            value,
            domain: "finite reals".into(),
        })
    }
}
