use crate::error::{Error, Result};

use super::Rational;

/// An element of a filtered space with a validity horizon: components of
/// filtration degree above `valid()` are unknown.
pub trait Filtered: Clone {
    /// Lowest filtration degree that may be nonzero, counting the unknown
    /// region, so a zero element reports `valid() + 1`.
    fn low(&self) -> i64;
    fn valid(&self) -> i64;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

/// Evaluates Σₖ cₖ opᵏ(arg) for an operator that strictly raises the
/// filtration. The sum stops once opᵏ(arg) lies entirely above the
/// validity horizon of the partial sum.
pub fn series_compose_operator<T, C, F>(coeffs: C, mut op: F, arg: &T) -> Result<T>
where
    T: Filtered,
    C: Fn(usize) -> Rational,
    F: FnMut(&T) -> Result<T>,
{
    let mut acc = arg.scale(&coeffs(0));
    if arg.is_zero() {
        return Ok(acc);
    }
    let mut term = arg.clone();
    let mut k = 0;
    loop {
        let next = op(&term)?;
        k += 1;
        if next.is_zero() && next.low() > acc.valid() {
            return Ok(acc);
        }
        if next.low() <= term.low() {
            return Err(Error::NonContracting(format!(
                "operator power {k} has filtration degree {} not above {}",
                next.low(),
                term.low()
            )));
        }
        if next.low() > acc.valid() {
            return Ok(acc);
        }
        acc = acc.add(&next.scale(&coeffs(k)));
        if next.is_zero() {
            return Ok(acc);
        }
        term = next;
    }
}
