//! Exact scalar layer: rationals, sparse multivariate polynomials, truncated
//! ν-series, Bernoulli numbers, a small exact linear solver and the textual
//! expression grammar used by every input surface.

mod bernoulli;
mod compose;
mod linsolve;
mod parse;
mod poly;
mod series;

pub use bernoulli::{bernoulli, bernoulli_series_coeffs, exp_coeffs, inverse_exp_coeffs};
pub use compose::{series_compose_operator, Filtered};
pub use linsolve::{solve_linear, Infeasible, LinearSpace};
pub use parse::{parse_nu_series, parse_poly, ParseError, ParseErrorKind};
pub use poly::{
    exps_add, exps_bump, exps_degree, exps_get, exps_up_to, trim as trim_exps, unit_exps as unit, Exps, Poly,
};
pub use series::NuSeries;

use num_bigint::BigInt;
use num_traits::One;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = Rational::one();
    for k in 2..=n {
        acc *= int(k as i64);
    }
    acc
}
