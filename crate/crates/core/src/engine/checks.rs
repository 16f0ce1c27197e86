//! Residual checks: computed solutions plugged back into the differential
//! equations they are supposed to satisfy. Each returns a rational function
//! that must be identically zero.

use alloc::vec::Vec;

use super::solve::bracket;
use super::{GenusSolution, GenusTable, ModelKind, ModelSpec};
use crate::algebra::{FactoredRat, Rat};
use crate::error::{Error, Result};

/// Properties of `P_g` that are observed but not proven; a `false` field is
/// reported rather than treated as an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FootnoteReport {
    /// Coefficient of the top admissible degree is nonzero.
    pub top_coefficient_nonzero: bool,
    /// `P_g` does not vanish at the root of the first denominator factor.
    pub nonzero_at_first_pole: bool,
    /// `P_g` does not vanish at the root of the second denominator factor.
    pub nonzero_at_second_pole: bool,
}

impl Default for FootnoteReport {
    fn default() -> Self {
        FootnoteReport {
            top_coefficient_nonzero: true,
            nonzero_at_first_pole: true,
            nonzero_at_second_pole: true,
        }
    }
}

impl FootnoteReport {
    pub fn all_hold(&self) -> bool {
        self.top_coefficient_nonzero && self.nonzero_at_first_pole && self.nonzero_at_second_pole
    }
}

fn lhs(spec: &ModelSpec, c: &FactoredRat) -> FactoredRat {
    &(&spec.lhs_dot * &c.derivative()) + &(&spec.lhs_value * c)
}

/// `lhs(C_g) - rhs_weight * (D C_{g-1} + convolution)` in the variable `t`.
pub fn substituted_residual(table: &GenusTable, g: usize) -> Result<FactoredRat> {
    let spec = table.spec();
    let c = table.get(g)?.c_of_t();
    let rhs = &spec.rhs_weight * &bracket(spec, table, g)?;
    Ok(&lhs(spec, c) - &rhs)
}

/// `d/dt (C / prefactor) - integrating_factor * lhs(C)`; zero for every `C`.
pub fn integrating_factor_residual(spec: &ModelSpec, sol: &GenusSolution) -> FactoredRat {
    let c = sol.c_of_t();
    let lhs_total = &spec.integrating_factor * &lhs(spec, c);
    &(&spec.inverse_prefactor * c).derivative() - &lhs_total
}

/// `d/ds` expressed in `t`: `(1 / (1 - 2a t)) d/dt`.
fn d_ds(f: &FactoredRat, a: u32) -> FactoredRat {
    &f.derivative() * &FactoredRat::factor_pow(2 * a, -1)
}

/// The genus-`g` differential recursion in the original variable `s`,
/// with all `s`-derivatives computed by the chain rule and everything
/// expressed in `t`.
///
/// Hypermaps:
/// `(s - 6s^2 - 3s^3 - 4s^3 C_0 - 12s^4 C_0') C_g' + (1 - 3s - 4s^3 C_0') C_g
///   = s^5 C_{g-1}''' + 5s^4 C_{g-1}'' + 4s^3 C_{g-1}' + s^3 sum (4C_i + 6sC_i') C_{g-i}'`.
///
/// Maps:
/// `(s - 8s^2 - 12s^3 C_0 - 24s^4 C_0') C_g' + (1 - 4s - 6s^2 C_0 - 12s^3 C_0') C_g
///   = 4s^5 C_{g-1}''' + 24s^4 C_{g-1}'' + 27s^3 C_{g-1}' + 3s^2 C_{g-1}
///     + 3s^2 sum (C_i + 2sC_i')(C_{g-i} + 2sC_{g-i}')`,
/// sums over `1 <= i <= g-1`.
pub fn s_form_residual(table: &GenusTable, g: usize) -> Result<FactoredRat> {
    if g == 0 {
        return Err(Error::MissingGenus {
            model: table.kind(),
            genus: 0,
        });
    }
    let spec = table.spec();
    let a = spec.subst_coeff;
    let s = spec.substitution();
    let s_pow = |n: usize| (0..n).fold(FactoredRat::one(), |acc, _| &acc * &s);
    let lin = |terms: &[(i64, &FactoredRat)]| {
        let parts: Vec<FactoredRat> = terms
            .iter()
            .map(|(c, f)| (*f).scale(&Rat::from_integer((*c).into())))
            .collect();
        FactoredRat::sum(&parts)
    };

    let c0 = table.get(0)?.c_of_t();
    let c0s = d_ds(c0, a);
    let cg = table.get(g)?.c_of_t();
    let cgs = d_ds(cg, a);
    let prev = table.get(g - 1)?.c_of_t();
    let p1 = d_ds(prev, a);
    let p2 = d_ds(&p1, a);
    let p3 = d_ds(&p2, a);
    let (s2, s3, s4, s5) = (s_pow(2), s_pow(3), s_pow(4), s_pow(5));
    let first_derivs: Vec<(&FactoredRat, FactoredRat)> = (1..g)
        .map(|i| {
            let c = table.get(i).map(GenusSolution::c_of_t)?;
            Ok((c, d_ds(c, a)))
        })
        .collect::<Result<_>>()?;

    let (lhs_total, rhs_total) = match spec.kind {
        ModelKind::Hypermap => {
            let s3c0 = &s3 * c0;
            let s4c0s = &s4 * &c0s;
            let s3c0s = &s3 * &c0s;
            let coeff_d = lin(&[(1, &s), (-6, &s2), (-3, &s3), (-4, &s3c0), (-12, &s4c0s)]);
            let coeff_v = lin(&[(1, &FactoredRat::one()), (-3, &s), (-4, &s3c0s)]);
            let lhs_total = &(&coeff_d * &cgs) + &(&coeff_v * cg);
            let conv: Vec<FactoredRat> = (1..g)
                .map(|i| {
                    let (ci, cis) = (&first_derivs[i - 1].0, &first_derivs[i - 1].1);
                    let s_cis = &s * cis;
                    let left = lin(&[(4, ci), (6, &s_cis)]);
                    &left * &first_derivs[g - i - 1].1
                })
                .collect();
            let conv = &s3 * &FactoredRat::sum(&conv);
            let s5p3 = &s5 * &p3;
            let s4p2 = &s4 * &p2;
            let s3p1 = &s3 * &p1;
            let rhs_total = &lin(&[(1, &s5p3), (5, &s4p2), (4, &s3p1)]) + &conv;
            (lhs_total, rhs_total)
        }
        ModelKind::Map => {
            let s3c0 = &s3 * c0;
            let s4c0s = &s4 * &c0s;
            let s2c0 = &s2 * c0;
            let s3c0s = &s3 * &c0s;
            let coeff_d = lin(&[(1, &s), (-8, &s2), (-12, &s3c0), (-24, &s4c0s)]);
            let coeff_v = lin(&[
                (1, &FactoredRat::one()),
                (-4, &s),
                (-6, &s2c0),
                (-12, &s3c0s),
            ]);
            let lhs_total = &(&coeff_d * &cgs) + &(&coeff_v * cg);
            let e: Vec<FactoredRat> = first_derivs
                .iter()
                .map(|(c, cs)| {
                    let scs = &s * cs;
                    lin(&[(1, c), (2, &scs)])
                })
                .collect();
            let conv: Vec<FactoredRat> = (1..g).map(|i| &e[i - 1] * &e[g - i - 1]).collect();
            let conv = (&s2 * &FactoredRat::sum(&conv)).scale(&Rat::from_integer(3.into()));
            let s5p3 = &s5 * &p3;
            let s4p2 = &s4 * &p2;
            let s3p1 = &s3 * &p1;
            let s2p0 = &s2 * prev;
            let rhs_total = &lin(&[(4, &s5p3), (24, &s4p2), (27, &s3p1), (3, &s2p0)]) + &conv;
            (lhs_total, rhs_total)
        }
    };
    Ok(&lhs_total - &rhs_total)
}
