use crate::algebra::{factorial, int, NuSeries, Poly, Rational};

/// P_m(f, g) = (ω^{ij} ∂_i ⊗ ∂_j)^m (f ⊗ g) followed by multiplication.
fn bidiff(omega_upper: &[Vec<Rational>], f: &Poly, g: &Poly, m: usize) -> Poly {
    if m == 0 {
        return f * g;
    }
    if f.is_zero() || g.is_zero() {
        return Poly::zero();
    }
    let n = omega_upper.len();
    let mut out = Poly::zero();
    for i in 0..n {
        let fi = f.deriv(i);
        if fi.is_zero() {
            continue;
        }
        for j in 0..n {
            let w = &omega_upper[i][j];
            if *w == int(0) {
                continue;
            }
            out += &bidiff(omega_upper, &fi, &g.deriv(j), m - 1).scale(w);
        }
    }
    out
}

/// Weyl–Moyal product exp{(ν/2) ω^{ij} ∂_i ⊗ ∂_j} through ν^order, computed
/// directly from the bidifferential series.
pub fn moyal_oracle(omega_upper: &[Vec<Rational>], f: &NuSeries, g: &NuSeries, order: usize) -> NuSeries {
    let mut coeffs = vec![Poly::zero(); order + 1];
    for (a, fa) in f.coeffs().iter().enumerate().take(order + 1) {
        for (b, gb) in g.coeffs().iter().enumerate().take(order + 1 - a) {
            for m in 0..=order - a - b {
                let c = (factorial(m) * int(1 << m)).recip();
                coeffs[a + b + m] += &bidiff(omega_upper, fa, gb, m).scale(&c);
            }
        }
    }
    NuSeries::from_coeffs(coeffs, order.min(f.order()).min(g.order()))
}
