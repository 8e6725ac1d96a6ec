use std::sync::Mutex;

use num_traits::Zero;

use super::{factorial, int, Rational};

static TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

fn binomial(n: usize, k: usize) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Bernoulli number Bₙ with B₁ = −1/2, the convention of x/(eˣ − 1).
pub fn bernoulli(n: usize) -> Rational {
    let mut table = TABLE.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len();
        if m == 0 {
            table.push(int(1));
            continue;
        }
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += binomial(m + 1, k) * b;
        }
        let b = -acc / binomial(m + 1, m);
        table.push(b);
    }
    table[n].clone()
}

/// Taylor coefficients of eˣ through xⁿ.
pub fn exp_coeffs(n: usize) -> Vec<Rational> {
    (0..=n).map(|k| factorial(k).recip()).collect()
}

/// Taylor coefficients of e⁻ˣ through xⁿ.
pub fn inverse_exp_coeffs(n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|k| {
            let c = factorial(k).recip();
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Taylor coefficients Bₖ/k! of x/(eˣ − 1) through xⁿ.
pub fn bernoulli_series_coeffs(n: usize) -> Vec<Rational> {
    (0..=n).map(|k| bernoulli(k) / factorial(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn recurrence_and_odd_vanishing() {
        for n in 1..=20 {
            let s: Rational = (0..=n).map(|k| binomial(n + 1, k) * bernoulli(k)).sum();
            assert!(s.is_zero(), "recurrence fails at n = {n}");
        }
        for n in (3..=21).step_by(2) {
            assert!(bernoulli(n).is_zero());
        }
    }

    #[test]
    fn series_times_exp_minus_one_is_x() {
        // (Σ Bₖ/k! xᵏ)(Σ_{j≥1} xʲ/j!) = x
        let b = bernoulli_series_coeffs(10);
        let e = exp_coeffs(11);
        for n in 1..=10 {
            let s: Rational = (0..n).map(|k| &b[k] * &e[n - k]).sum();
            assert_eq!(s, if n == 1 { int(1) } else { Rational::zero() });
        }
    }
}
