use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{FactoredRat, LinFactor, Poly, Rat};
use crate::error::{Error, Result};

/// One principal-part term `coefficient / (1 - k t)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub factor: LinFactor,
    pub exponent: u32,
    pub coefficient: Rat,
}

/// `poly_part + sum coefficient / (1 - k t)^exponent`.
///
/// Pole terms are sorted by factor and then by exponent; zero coefficients
/// are kept so that every exponent `1..=e` of every factor is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFDecomp {
    pub poly_part: Poly,
    pub pole_terms: Vec<PoleTerm>,
}

impl PFDecomp {
    /// Coefficient of `1/(1 - k t)^exponent`, zero when absent.
    pub fn coefficient(&self, k: u32, exponent: u32) -> Rat {
        self.pole_terms
            .iter()
            .find(|p| p.factor.k() == k && p.exponent == exponent)
            .map_or_else(Rat::zero, |p| p.coefficient.clone())
    }

    /// Sums the terms back into a single canonical rational function.
    pub fn recombine(&self) -> FactoredRat {
        let mut tops: Vec<(u32, u32)> = Vec::new();
        for p in &self.pole_terms {
            match tops.iter_mut().find(|(k, _)| *k == p.factor.k()) {
                Some((_, e)) => *e = (*e).max(p.exponent),
                None => tops.push((p.factor.k(), p.exponent)),
            }
        }
        let clear_except = |poly: Poly, skip: Option<u32>| {
            tops.iter()
                .filter(|(k, _)| Some(*k) != skip)
                .fold(poly, |acc, &(k, e)| acc.mul_one_minus_pow(k, e))
        };
        let mut numerator = clear_except(self.poly_part.clone(), None);
        for &(k, top) in &tops {
            // sum_i c_i (1 - kt)^{top - i}, by Horner in (1 - kt)
            let mut s = Poly::zero();
            for i in 1..=top {
                s = s.mul_one_minus(k);
                let c = self
                    .pole_terms
                    .iter()
                    .filter(|p| p.factor.k() == k && p.exponent == i)
                    .fold(Rat::zero(), |acc, p| acc + &p.coefficient);
                s = &s + &Poly::constant(c);
            }
            numerator = &numerator + &clear_except(s, Some(k));
        }
        FactoredRat::new(0, numerator, tops)
    }
}

/// Taylor coefficients `b_0..b_{count-1}` of `p` around `t = root`,
/// i.e. `p(t) = sum b_j (t - root)^j`, by repeated synthetic division.
fn taylor_shift(p: &Poly, root: &Rat, count: usize) -> Vec<Rat> {
    let mut rest: Vec<Rat> = p.coeffs().to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if rest.is_empty() {
            out.push(Rat::zero());
            continue;
        }
        // divide rest by (t - root): remainder is rest(root)
        let mut quotient = alloc::vec![Rat::zero(); rest.len() - 1];
        let mut acc = Rat::zero();
        for i in (0..rest.len()).rev() {
            acc = acc * root + &rest[i];
            if i > 0 {
                quotient[i - 1] = acc.clone();
            }
        }
        out.push(acc);
        rest = quotient;
    }
    out
}

/// Decomposes `f` into polynomial part plus principal parts at each pole.
///
/// Principal parts are found locally: around `t = 1/k` write `u = 1 - k t`
/// and expand everything except `u^{-e}` as a power series in `u`.
pub fn partial_fractions(f: &FactoredRat) -> Result<PFDecomp> {
    if f.t_power() < 0 {
        return Err(Error::NegativeTPower(f.t_power()));
    }
    let den = f.denominator();
    if den.len() > 2 {
        return Err(Error::TooManyPoles(den.len()));
    }
    let numerator = f.full_numerator().expect("nonnegative t power");
    let den_poly = den.iter().fold(Poly::one(), |acc, &(fac, e)| {
        acc.mul_one_minus_pow(fac.k(), e)
    });
    let (poly_part, _) = numerator.div_rem(&den_poly);

    let mut pole_terms = Vec::new();
    for (idx, &(fac, e)) in den.iter().enumerate() {
        let k = Rat::from_integer(fac.k().into());
        let count = e as usize;
        // numerator in powers of u: (t - 1/k) = -u/k
        let step = -k.recip();
        let mut scale = Rat::one();
        let num_u: Vec<Rat> = taylor_shift(&numerator, &fac.root(), count)
            .into_iter()
            .map(|b| {
                let v = b * &scale;
                scale *= &step;
                v
            })
            .collect();
        // remaining factor (1 - k2 t)^{-e2} = (alpha + beta u)^{-e2}
        let mut other_u = alloc::vec![Rat::zero(); count];
        other_u[0] = Rat::one();
        if let Some(&(g, e2)) = den
            .iter()
            .enumerate()
            .find(|(j, _)| *j != idx)
            .map(|(_, p)| p)
        {
            let k2 = Rat::from_integer(g.k().into());
            let alpha = Rat::one() - &k2 / &k;
            let beta = &k2 / &k;
            let ratio = -(beta / &alpha);
            let e2r = Rat::from_integer(e2.into());
            for j in 1..count {
                let jr = Rat::from_integer(j.into());
                other_u[j] = &other_u[j - 1] * (&e2r + &jr - Rat::one()) / jr * &ratio;
            }
            let norm = num_traits::pow(alpha.recip(), e2 as usize);
            for c in other_u.iter_mut() {
                *c *= &norm;
            }
        }
        for j in 0..count {
            let c = (0..=j).fold(Rat::zero(), |acc, i| acc + &num_u[i] * &other_u[j - i]);
            pole_terms.push(PoleTerm {
                factor: fac,
                exponent: e - j as u32,
                coefficient: c,
            });
        }
    }
    pole_terms.sort_by_key(|p| (p.factor, p.exponent));
    Ok(PFDecomp {
        poly_part,
        pole_terms,
    })
}

/// Antiderivative of a decomposition, with the constant chosen so the
/// result vanishes at `t = 0`.
///
/// `int c/(1 - kt)^j dt = c / (k (j - 1)) * 1/(1 - kt)^{j-1}` for `j >= 2`;
/// a nonzero `j = 1` coefficient would produce a logarithm and is rejected.
pub fn pf_integrate(d: &PFDecomp) -> Result<FactoredRat> {
    let mut terms = Vec::with_capacity(d.pole_terms.len());
    let mut constant = Rat::zero();
    for p in &d.pole_terms {
        if p.coefficient.is_zero() {
            continue;
        }
        if p.exponent == 1 {
            return Err(Error::SimplePole {
                k: p.factor.k(),
                coefficient: p.coefficient.clone(),
            });
        }
        let c = &p.coefficient / Rat::from_integer((p.factor.k() * (p.exponent - 1)).into());
        constant -= &c;
        terms.push(PoleTerm {
            factor: p.factor,
            exponent: p.exponent - 1,
            coefficient: c,
        });
    }
    let poly_part = &d.poly_part.integral() + &Poly::constant(constant);
    Ok(PFDecomp {
        poly_part,
        pole_terms: terms,
    }
    .recombine())
}
