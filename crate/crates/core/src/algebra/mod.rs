//! Exact scalars, dense polynomials in `t`, rational functions whose poles
//! are all of the form `1 - k t`, and the calculus on them.

mod factored;
mod partial;
mod poly;

use alloc::vec::Vec;

use num_traits::Zero;

pub use factored::{FactoredRat, LinFactor};
pub use partial::{partial_fractions, pf_integrate, PFDecomp, PoleTerm};
pub use poly::Poly;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = num_rational::BigRational;

/// Taylor coefficients of `f` at `t = 0` for `t^0..=t^order`.
pub fn series_expand(f: &FactoredRat, order: usize) -> Result<Vec<Rat>> {
    if f.t_power() < 0 {
        return Err(Error::NegativeTPower(f.t_power()));
    }
    let len = order + 1;
    let numerator = f
        .full_numerator()
        .expect("nonnegative t power")
        .truncate(len);
    let den = f.denominator().iter().fold(Poly::one(), |acc, &(fac, e)| {
        acc.mul_one_minus_pow(fac.k(), e)
    });
    // den has constant term 1, so q_n = num_n - sum_{i>=1} den_i q_{n-i}
    let mut out: Vec<Rat> = Vec::with_capacity(len);
    for n in 0..len {
        let mut q = numerator.coeff(n);
        for (i, d) in den.coeffs().iter().enumerate().skip(1).take(n) {
            if !d.is_zero() {
                q -= d * &out[n - i];
            }
        }
        out.push(q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| Rat::from_integer(c.into())).collect()
    }

    #[test]
    fn geometric_series() {
        let f = FactoredRat::factor_pow(2, -1);
        assert_eq!(series_expand(&f, 3).unwrap(), ints(&[1, 2, 4, 8]));
    }

    #[test]
    fn planar_hypermap_generating_function_in_t() {
        let f = FactoredRat::new(1, Poly::from_ints([1, -3]), [(2, 2)]);
        assert_eq!(series_expand(&f, 4).unwrap(), ints(&[0, 1, 1, 0, -4]));
    }

    #[test]
    fn zero_and_pole_at_origin() {
        assert_eq!(
            series_expand(&FactoredRat::zero(), 2).unwrap(),
            ints(&[0, 0, 0])
        );
        assert_eq!(
            series_expand(&FactoredRat::t_pow(-1), 2),
            Err(Error::NegativeTPower(-1))
        );
    }
}
