use num_traits::{One, Zero};

use super::{NuSeries, Poly, Rational};

/// Right-hand-side values of a linear system: any ℚ-vector space.
pub trait LinearSpace: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero_vec(&self) -> bool;
    fn axpy(&mut self, c: &Rational, x: &Self);
    fn scaled(&self, c: &Rational) -> Self;
}

impl LinearSpace for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn is_zero_vec(&self) -> bool {
        self.is_zero()
    }
    fn axpy(&mut self, c: &Rational, x: &Self) {
        *self += c * x;
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
}

impl LinearSpace for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn is_zero_vec(&self) -> bool {
        self.is_zero()
    }
    fn axpy(&mut self, c: &Rational, x: &Self) {
        *self += &x.scale(c);
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl LinearSpace for NuSeries {
    fn zero_like(&self) -> Self {
        NuSeries::zero(self.order())
    }
    fn is_zero_vec(&self) -> bool {
        self.is_zero()
    }
    fn axpy(&mut self, c: &Rational, x: &Self) {
        *self = self.add(&x.scale(c));
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

/// Proof that `A x = b` has no solution: `yᵀA = 0` while `yᵀb = residual ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Infeasible<V> {
    pub certificate: Vec<Rational>,
    pub residual: V,
}

/// Solves `A x = b` by Gaussian elimination over ℚ, where `A` is given
/// row-wise with `ncols` columns. Free variables are set to zero.
pub fn solve_linear<V: LinearSpace>(
    a: &[Vec<Rational>],
    b: &[V],
    ncols: usize,
    zero: &V,
) -> Result<Vec<V>, Infeasible<V>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count of A and b differ");
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(ncols, Rational::zero());
            r
        })
        .collect();
    let mut rhs: Vec<V> = b.to_vec();
    let mut track: Vec<Vec<Rational>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        track.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for x in track[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] = rhs[r].scaled(&inv);
        for i in 0..m {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = -rows[i][c].clone();
            let (pivot_row, pivot_track, pivot_rhs) = (rows[r].clone(), track[r].clone(), rhs[r].clone());
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x += &f * y;
            }
            for (x, y) in track[i].iter_mut().zip(&pivot_track) {
                *x += &f * y;
            }
            rhs[i].axpy(&f, &pivot_rhs);
        }
        pivots.push(c);
        r += 1;
    }
    for i in r..m {
        if !rhs[i].is_zero_vec() {
            return Err(Infeasible {
                certificate: track[i].clone(),
                residual: rhs[i].clone(),
            });
        }
    }
    let mut x = vec![zero.zero_like(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Ok(x)
}
