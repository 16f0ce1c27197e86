//! The genus recursion for both models.
//!
//! Everything here works in the variable `t`. Given `C_0, ..., C_{g-1}` the
//! next generating function is
//!
//! ```text
//! C_g = prefactor * integral_0^t weight * (D C_{g-1} + convolution) dt
//! ```
//!
//! where `D` is a third-order linear differential operator with rational
//! coefficients. The two models differ only in the data held by
//! [`ModelSpec`] and in the shape of the convolution term.

mod checks;
mod solve;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::algebra::{FactoredRat, LinFactor, Poly};

pub use checks::{
    integrating_factor_residual, s_form_residual, substituted_residual, FootnoteReport,
};
pub use solve::{
    apply_operator, base_case, build_integrand, leading_coefficient,
    leading_coefficient_by_recurrence, solve_genus, GenusSolution, GenusTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    /// Bicolored maps counted by darts.
    Hypermap,
    /// Maps counted by edges.
    Map,
}

impl ModelKind {
    pub const ALL: [ModelKind; 2] = [ModelKind::Hypermap, ModelKind::Map];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Hypermap => "hypermap",
            ModelKind::Map => "map",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = alloc::string::String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hypermap" => Ok(ModelKind::Hypermap),
            "map" => Ok(ModelKind::Map),
            other => Err(alloc::format!(
                "unknown model `{other}` (expected hypermap or map)"
            )),
        }
    }
}

/// Parameter pack for one enumeration problem.
///
/// All rational coefficients are stored as data so that both models run
/// through the same evaluation code.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub kind: ModelKind,
    /// `a` in `s = t(1 - a t)`.
    pub subst_coeff: u32,
    /// The two denominator factors of `C_g`, `g >= 2`.
    pub denom_factors: (LinFactor, LinFactor),
    /// Coefficients of `d^0/dt^0 .. d^3/dt^3` in the differential operator.
    pub operator_coeffs: [FactoredRat; 4],
    /// Factor in front of the integral.
    pub prefactor: FactoredRat,
    /// `1 / prefactor`.
    pub inverse_prefactor: FactoredRat,
    /// Weight multiplying the bracket under the integral.
    pub integrand_weight: FactoredRat,
    /// Left-hand side `lhs_dot * dC_g/dt + lhs_value * C_g` of the ODE for `C_g`.
    pub lhs_dot: FactoredRat,
    pub lhs_value: FactoredRat,
    /// Weight multiplying the bracket on the right-hand side of that ODE.
    pub rhs_weight: FactoredRat,
    /// Multiplier turning the ODE's left side into `d/dt (C_g / prefactor)`.
    pub integrating_factor: FactoredRat,
}

fn frat(t_power: i64, num: &[i64], den: &[(u32, u32)]) -> FactoredRat {
    FactoredRat::new(
        t_power,
        Poly::from_ints(num.iter().copied()),
        den.iter().copied(),
    )
}

fn times(a: FactoredRat, b: FactoredRat) -> FactoredRat {
    &a * &b
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        match kind {
            ModelKind::Hypermap => Self::hypermap(),
            ModelKind::Map => Self::map(),
        }
    }

    /// `s = t(1 - 2t)`, denominators `(1 - t)^{4g-3} (1 - 4t)^{5g-3}`.
    pub fn hypermap() -> Self {
        let one_minus_2t_sq = FactoredRat::factor_pow(2, 2);
        ModelSpec {
            kind: ModelKind::Hypermap,
            subst_coeff: 2,
            denom_factors: (LinFactor::new(1), LinFactor::new(4)),
            operator_coeffs: [
                FactoredRat::zero(),
                // 4(1 - 11t + 58t^2 - 144t^3 + 144t^4)/(1-4t)^5
                frat(0, &[4, -44, 232, -576, 576], &[(4, 5)]),
                // t(1-2t)(5 - 28t + 56t^2)/(1-4t)^4
                times(
                    frat(1, &[5, -28, 56], &[(4, 4)]),
                    FactoredRat::factor_pow(2, 1),
                ),
                // t^2(1-2t)^2/(1-4t)^3
                times(frat(2, &[1], &[(4, 3)]), one_minus_2t_sq.clone()),
            ],
            prefactor: times(frat(-1, &[1], &[(1, 3)]), one_minus_2t_sq),
            // t(1-t)^3/(1-2t)^2
            inverse_prefactor: times(frat(1, &[1], &[(2, 2)]), FactoredRat::factor_pow(1, 3)),
            integrand_weight: times(FactoredRat::t_pow(3), FactoredRat::factor_pow(1, 1)),
            // t(1-t)^2(1-2t)
            lhs_dot: frat(1, &[1], &[])
                * FactoredRat::factor_pow(1, 2)
                * FactoredRat::factor_pow(2, 1),
            // (1-t)(1 - 2t + 4t^2)
            lhs_value: times(FactoredRat::factor_pow(1, 1), frat(0, &[1, -2, 4], &[])),
            rhs_weight: times(FactoredRat::t_pow(3), FactoredRat::factor_pow(2, 3)),
            // (1-t)/(1-2t)^3
            integrating_factor: frat(0, &[1, -1], &[(2, 3)]),
        }
    }

    /// `s = t(1 - 3t)`, denominators `(1 - 2t)^{3g-2} (1 - 6t)^{5g-3}`.
    pub fn map() -> Self {
        ModelSpec {
            kind: ModelKind::Map,
            subst_coeff: 3,
            denom_factors: (LinFactor::new(2), LinFactor::new(6)),
            operator_coeffs: [
                FactoredRat::from_int(3),
                // 9t(1-3t)(3 - 56t + 456t^2 - 1728t^3 + 2592t^4)/(1-6t)^5
                times(
                    frat(1, &[27, -504, 4104, -15552, 23328], &[(6, 5)]),
                    FactoredRat::factor_pow(3, 1),
                ),
                // 24t^2(1-3t)^2(1 - 9t + 27t^2)/(1-6t)^4
                times(
                    frat(2, &[24, -216, 648], &[(6, 4)]),
                    FactoredRat::factor_pow(3, 2),
                ),
                // 4t^3(1-3t)^3/(1-6t)^3
                times(frat(3, &[4], &[(6, 3)]), FactoredRat::factor_pow(3, 3)),
            ],
            prefactor: frat(-1, &[1, -3], &[(2, 1)]),
            // t(1-2t)/(1-3t)
            inverse_prefactor: times(frat(1, &[1], &[(3, 1)]), FactoredRat::factor_pow(2, 1)),
            integrand_weight: FactoredRat::t_pow(2),
            // t(1-2t)(1-3t)
            lhs_dot: times(frat(1, &[1], &[]), FactoredRat::factor_pow(2, 1))
                * FactoredRat::factor_pow(3, 1),
            lhs_value: frat(0, &[1, -4, 6], &[]),
            rhs_weight: times(FactoredRat::t_pow(2), FactoredRat::factor_pow(3, 2)),
            // 1/(1-3t)^2
            integrating_factor: FactoredRat::factor_pow(3, -2),
        }
    }

    /// Denominator exponents of `C_g` for `g >= 2`.
    pub fn denom_exponents(&self, g: usize) -> (u32, u32) {
        let g = g as u32;
        match self.kind {
            ModelKind::Hypermap => (4 * g - 3, 5 * g - 3),
            ModelKind::Map => (3 * g - 2, 5 * g - 3),
        }
    }

    /// `[low, high]` support of the numerator polynomial for `g >= 2`.
    pub fn poly_degree_bounds(&self, g: usize) -> (usize, usize) {
        match self.kind {
            ModelKind::Hypermap => (2 * g + 1, 9 * g - 7),
            ModelKind::Map => (2 * g, 8 * g - 6),
        }
    }

    /// Denominator factors with their exponents for `g >= 2`.
    pub fn denominator(&self, g: usize) -> Vec<(u32, u32)> {
        let (e1, e2) = self.denom_exponents(g);
        vec![
            (self.denom_factors.0.k(), e1),
            (self.denom_factors.1.k(), e2),
        ]
    }

    /// Lowest power of `s` (and of `t`) with a nonzero coefficient.
    pub fn first_index(&self, g: usize) -> usize {
        match self.kind {
            ModelKind::Hypermap => 2 * g + 1,
            ModelKind::Map => 2 * g,
        }
    }

    /// `s = t(1 - a t)` as a rational function of `t`.
    pub fn substitution(&self) -> FactoredRat {
        times(
            FactoredRat::t_pow(1),
            FactoredRat::factor_pow(self.subst_coeff, 1),
        )
    }
}
