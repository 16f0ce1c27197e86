use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FootnoteReport, ModelKind, ModelSpec};
use crate::algebra::{partial_fractions, pf_integrate, FactoredRat, Poly, Rat};
use crate::error::{Error, Result};

/// `C_g` as a function of `t`, plus its integer numerator for `g >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSolution {
    kind: ModelKind,
    genus: usize,
    c_of_t: FactoredRat,
    polynomial: Option<Poly>,
}

impl GenusSolution {
    /// Rebuilds a solution from its rational function, e.g. after loading
    /// it from disk. Nothing is trusted: call [`GenusSolution::validate`].
    pub fn from_function(kind: ModelKind, genus: usize, c_of_t: FactoredRat) -> Result<Self> {
        let polynomial = if genus >= 2 {
            let spec = ModelSpec::new(kind);
            Some(
                c_of_t
                    .clear(&spec.denominator(genus))
                    .ok_or(Error::Indivisible {
                        model: kind,
                        genus,
                        what: "C_g",
                        by: "its expected denominator",
                    })?,
            )
        } else {
            None
        };
        Ok(GenusSolution {
            kind,
            genus,
            c_of_t,
            polynomial,
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn c_of_t(&self) -> &FactoredRat {
        &self.c_of_t
    }

    /// `P_g(t)` for `g >= 2`.
    pub fn polynomial(&self) -> Option<&Poly> {
        self.polynomial.as_ref()
    }

    fn invariant(&self, detail: alloc::string::String) -> Error {
        Error::Invariant {
            model: self.kind,
            genus: self.genus,
            detail,
        }
    }

    /// Checks every proven structural property; returns the observed-only
    /// properties as a report instead of failing on them.
    pub fn validate(&self) -> Result<FootnoteReport> {
        let spec = ModelSpec::new(self.kind);
        let g = self.genus;
        let Some(p) = &self.polynomial else {
            if g >= 2 {
                return Err(self.invariant("missing numerator polynomial".into()));
            }
            let closed = base_case(&spec, g);
            if self.c_of_t != closed.c_of_t {
                return Err(self.invariant(format!(
                    "{} differs from the closed form {}",
                    self.c_of_t, closed.c_of_t
                )));
            }
            return Ok(FootnoteReport::default());
        };

        let (e1, e2) = spec.denom_exponents(g);
        let (f1, f2) = spec.denom_factors;
        let den = self.c_of_t.denominator();
        if den.len() != 2 || den[0] != (f1, e1) || den[1] != (f2, e2) {
            return Err(self.invariant(format!(
                "denominator of {} is not {}^{}{}^{}",
                self.c_of_t, f1, e1, f2, e2
            )));
        }
        if FactoredRat::new(0, p.clone(), spec.denominator(g)) != self.c_of_t {
            return Err(self.invariant("numerator polynomial does not match C_g".into()));
        }
        check_polynomial(&spec, g, p)?;

        let lead = leading_coefficient(self.kind, g);
        let (low, high) = spec.poly_degree_bounds(g);
        if p.coeff(low) != Rat::from_integer(lead.clone()) {
            return Err(self.invariant(format!("lowest coefficient {} != {}", p.coeff(low), lead)));
        }
        let root = |k: i64| Rat::new(1.into(), k.into());
        match self.kind {
            ModelKind::Hypermap => {
                if !p.eval(&root(2)).is_zero() || !p.derivative().eval(&root(2)).is_zero() {
                    return Err(self.invariant("t = 1/2 is not a double root".into()));
                }
            }
            ModelKind::Map => {
                if !p.eval(&root(3)).is_zero() {
                    return Err(self.invariant("t = 1/3 is not a root".into()));
                }
            }
        }
        Ok(FootnoteReport {
            top_coefficient_nonzero: !p.coeff(high).is_zero(),
            nonzero_at_first_pole: !p.eval(&f1.root()).is_zero(),
            nonzero_at_second_pole: !p.eval(&f2.root()).is_zero(),
        })
    }
}

fn check_polynomial(spec: &ModelSpec, g: usize, p: &Poly) -> Result<()> {
    if let Some((degree, value)) = p.coeffs().iter().enumerate().find(|(_, c)| !c.is_integer()) {
        return Err(Error::NonIntegerCoefficient {
            model: spec.kind,
            genus: g,
            degree,
            value: value.clone(),
        });
    }
    let (min, max) = spec.poly_degree_bounds(g);
    let low = p.valuation().unwrap_or(0);
    let high = p.degree().unwrap_or(0);
    if p.is_zero() || low != min || high > max {
        return Err(Error::DegreeBoundViolation {
            model: spec.kind,
            genus: g,
            low,
            high,
            min,
            max,
        });
    }
    Ok(())
}

/// The closed forms for `g = 0` and `g = 1`.
///
/// # Panics
/// If `g > 1`.
pub fn base_case(spec: &ModelSpec, g: usize) -> GenusSolution {
    let c_of_t = match (spec.kind, g) {
        // t(1-3t)/(1-2t)^2
        (ModelKind::Hypermap, 0) => FactoredRat::new(1, Poly::from_ints([1, -3]), [(2, 2)]),
        // t^3/((1-t)(1-4t)^2)
        (ModelKind::Hypermap, 1) => FactoredRat::new(3, Poly::one(), [(1, 1), (4, 2)]),
        // (1-4t)/(1-3t)^2
        (ModelKind::Map, 0) => FactoredRat::new(0, Poly::from_ints([1, -4]), [(3, 2)]),
        // t^2/((1-2t)(1-6t)^2)
        (ModelKind::Map, 1) => FactoredRat::new(2, Poly::one(), [(2, 1), (6, 2)]),
        _ => panic!("no closed form for genus {g}"),
    };
    GenusSolution {
        kind: spec.kind,
        genus: g,
        c_of_t,
        polynomial: None,
    }
}

/// `D f = sum_j coeff_j * d^j f / dt^j`.
pub fn apply_operator(spec: &ModelSpec, f: &FactoredRat) -> FactoredRat {
    let mut derivative = f.clone();
    let mut terms = Vec::with_capacity(4);
    for (order, coeff) in spec.operator_coeffs.iter().enumerate() {
        if order > 0 {
            derivative = derivative.derivative();
        }
        if !coeff.is_zero() {
            terms.push(coeff * &derivative);
        }
    }
    FactoredRat::sum(&terms)
}

/// `C_g` together with its `t`-derivative.
struct Known<'a> {
    value: &'a FactoredRat,
    dot: FactoredRat,
}

/// `D C_{g-1} + convolution`, the bracket shared by the integrand and the
/// right-hand side of the ODE.
pub(super) fn bracket(spec: &ModelSpec, table: &GenusTable, g: usize) -> Result<FactoredRat> {
    if g == 0 {
        return Err(Error::MissingGenus {
            model: spec.kind,
            genus: 0,
        });
    }
    let known: Vec<Known> = (1..g)
        .map(|i| {
            let value = table.get(i)?.c_of_t();
            Ok(Known {
                value,
                dot: value.derivative(),
            })
        })
        .collect::<Result<_>>()?;
    let operator_part = apply_operator(spec, table.get(g - 1)?.c_of_t());
    if g == 1 {
        return Ok(operator_part);
    }
    let at = |i: usize| &known[i - 1];
    let conv = match spec.kind {
        ModelKind::Hypermap => {
            // (1-4t)^{-2} sum (4(1-4t) C_i + 6t(1-2t) C_i') C_{g-i}'
            let four_lin = FactoredRat::factor_pow(4, 1).scale(&Rat::from_integer(4.into()));
            let six_t_lin = (&FactoredRat::t_pow(1) * &FactoredRat::factor_pow(2, 1))
                .scale(&Rat::from_integer(6.into()));
            let terms: Vec<FactoredRat> = (1..g)
                .map(|i| {
                    let left = &(&four_lin * at(i).value) + &(&six_t_lin * &at(i).dot);
                    &left * &at(g - i).dot
                })
                .collect();
            &FactoredRat::sum(&terms) * &FactoredRat::factor_pow(4, -2)
        }
        ModelKind::Map => {
            // 3 sum E_i E_{g-i},  E_i = C_i + 2t(1-3t)/(1-6t) C_i'  (= C_i + 2s dC_i/ds)
            let w = FactoredRat::new(1, Poly::from_ints([2, -6]), [(6, 1)]);
            let e: Vec<FactoredRat> = (1..g).map(|i| at(i).value + &(&w * &at(i).dot)).collect();
            // symmetric in i <-> g - i
            let mut terms = Vec::with_capacity(g);
            for i in 1..g {
                let j = g - i;
                if i > j {
                    break;
                }
                let prod = &e[i - 1] * &e[j - 1];
                let mult = if i == j { 3 } else { 6 };
                terms.push(prod.scale(&Rat::from_integer(mult.into())));
            }
            FactoredRat::sum(&terms)
        }
    };
    Ok(&operator_part + &conv)
}

/// The integrand whose antiderivative, times the prefactor, is `C_g`.
pub fn build_integrand(spec: &ModelSpec, table: &GenusTable, g: usize) -> Result<FactoredRat> {
    if table.kind() != spec.kind {
        return Err(Error::Invariant {
            model: spec.kind,
            genus: g,
            detail: format!("table holds {} solutions", table.kind()),
        });
    }
    let integrand = &spec.integrand_weight * &bracket(spec, table, g)?;
    if g >= 2 {
        check_integrand(spec, g, &integrand)?;
    }
    Ok(integrand)
}

fn check_integrand(spec: &ModelSpec, g: usize, f: &FactoredRat) -> Result<()> {
    let gu = g as u32;
    let (max1, max2, low, lead) = match spec.kind {
        ModelKind::Hypermap => {
            let prev = leading_coefficient(spec.kind, g - 1);
            let m = BigInt::from((2 * g - 1) * (2 * g) * (2 * g));
            (4 * gu - 5, 5 * gu - 2, 2 * g + 1, m * prev)
        }
        ModelKind::Map => {
            let prev = leading_coefficient(spec.kind, g - 1);
            let m = BigInt::from((2 * g - 1) * (4 * g - 1) * (4 * g - 3));
            (3 * gu - 2, 5 * gu - 2, 2 * g, m * prev)
        }
    };
    let (f1, f2) = spec.denom_factors;
    let fail = |detail| Error::Invariant {
        model: spec.kind,
        genus: g,
        detail,
    };
    if f.denominator().iter().any(|&(k, _)| k != f1 && k != f2)
        || f.exponent_of(f1.k()) > max1
        || f.exponent_of(f2.k()) > max2
    {
        return Err(fail(format!("integrand denominator too large: {}", f)));
    }
    if f.t_power() != low as i64 || f.numerator().coeff(0) != Rat::from_integer(lead.clone()) {
        return Err(fail(format!(
            "integrand starts with {} t^{}, expected {} t^{}",
            f.numerator().coeff(0),
            f.t_power(),
            lead,
            low
        )));
    }
    Ok(())
}

/// Computes `C_g` from `C_0..C_{g-1}`.
pub fn solve_genus(spec: &ModelSpec, table: &GenusTable, g: usize) -> Result<GenusSolution> {
    let integrand = build_integrand(spec, table, g)?;
    let integral = pf_integrate(&partial_fractions(&integrand)?)?;
    let c_of_t = &spec.prefactor * &integral;
    if g < 2 {
        return Ok(GenusSolution {
            kind: spec.kind,
            genus: g,
            c_of_t,
            polynomial: None,
        });
    }

    let gu = g as u32;
    let (f1, f2) = (spec.denom_factors.0.k(), spec.denom_factors.1.k());
    let indivisible = |what, by| Error::Indivisible {
        model: spec.kind,
        genus: g,
        what,
        by,
    };
    // R_g = integral * (F1^{e1 - d} F2^{e2}), then P_g = (numerator of prefactor) R_g / t
    let (clear, lift) = match spec.kind {
        ModelKind::Hypermap => (
            [(f1, 4 * gu - 6), (f2, 5 * gu - 3)],
            Poly::one_minus(2).mul_one_minus(2),
        ),
        ModelKind::Map => ([(f1, 3 * gu - 3), (f2, 5 * gu - 3)], Poly::one_minus(3)),
    };
    let r = integral
        .clear(&clear)
        .ok_or_else(|| indivisible("the integral", "the denominator of R_g"))?;
    let p = (&r * &lift)
        .shift_down(1)
        .ok_or_else(|| indivisible("the numerator", "t"))?;
    check_polynomial(spec, g, &p)?;
    if FactoredRat::new(0, p.clone(), spec.denominator(g)) != c_of_t {
        return Err(Error::Invariant {
            model: spec.kind,
            genus: g,
            detail: "extracted numerator disagrees with prefactor * integral".into(),
        });
    }
    Ok(GenusSolution {
        kind: spec.kind,
        genus: g,
        c_of_t,
        polynomial: Some(p),
    })
}

/// Lowest coefficient of `P_g`: `(2g)!/(g+1)` for hypermaps,
/// `(4g-1)!!/(2g+1)` for maps. For `g = 1` this is the coefficient of the
/// closed form, which is 1 in both cases.
pub fn leading_coefficient(kind: ModelKind, g: usize) -> BigInt {
    let range_product = |it: &mut dyn Iterator<Item = usize>| {
        it.fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
    };
    match kind {
        ModelKind::Hypermap => range_product(&mut (1..=2 * g)) / BigInt::from(g + 1),
        ModelKind::Map => range_product(&mut (1..4 * g).step_by(2)) / BigInt::from(2 * g + 1),
    }
}

/// The same number from the recurrence that links consecutive genera,
/// seeded with 1 at `g = 1`. Kept rational so a non-integral step shows.
pub fn leading_coefficient_by_recurrence(kind: ModelKind, g: usize) -> Rat {
    let mut value = Rat::one();
    for h in 2..=g {
        let h = h as i64;
        let (num, den) = match kind {
            ModelKind::Hypermap => ((2 * h - 1) * (2 * h) * (2 * h), 2 * h + 2),
            ModelKind::Map => ((2 * h - 1) * (4 * h - 1) * (4 * h - 3), 2 * h + 1),
        };
        value *= Rat::new(num.into(), den.into());
    }
    value
}

/// Solutions for genera `0..len`, each validated before insertion.
#[derive(Clone, Debug)]
pub struct GenusTable {
    spec: ModelSpec,
    solutions: Vec<GenusSolution>,
    footnotes: Vec<FootnoteReport>,
}

impl GenusTable {
    /// A table holding only the genus-0 closed form.
    pub fn new(spec: ModelSpec) -> Self {
        let zero = base_case(&spec, 0);
        GenusTable {
            spec,
            solutions: alloc::vec![zero],
            footnotes: alloc::vec![FootnoteReport::default()],
        }
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn kind(&self) -> ModelKind {
        self.spec.kind
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Highest genus present.
    pub fn max_genus(&self) -> usize {
        self.solutions.len() - 1
    }

    pub fn get(&self, g: usize) -> Result<&GenusSolution> {
        self.solutions.get(g).ok_or(Error::MissingGenus {
            model: self.spec.kind,
            genus: g,
        })
    }

    pub fn solutions(&self) -> &[GenusSolution] {
        &self.solutions
    }

    pub fn footnotes(&self, g: usize) -> Option<&FootnoteReport> {
        self.footnotes.get(g)
    }

    /// Appends the next genus after validating it.
    pub fn push(&mut self, sol: GenusSolution) -> Result<&FootnoteReport> {
        let next = self.solutions.len();
        if sol.kind != self.spec.kind || sol.genus != next {
            return Err(Error::Invariant {
                model: sol.kind,
                genus: sol.genus,
                detail: format!("table expects {} genus {}", self.spec.kind, next),
            });
        }
        let report = sol.validate()?;
        self.solutions.push(sol);
        self.footnotes.push(report);
        Ok(self.footnotes.last().expect("just pushed"))
    }

    /// Computes and appends the next genus. Genus 1 goes through the
    /// recursion too and is compared with its closed form on insertion.
    pub fn extend_one(&mut self) -> Result<&GenusSolution> {
        let g = self.solutions.len();
        let sol = solve_genus(&self.spec, self, g)?;
        self.push(sol)?;
        Ok(self.solutions.last().expect("just pushed"))
    }

    pub fn extend_to(&mut self, max_genus: usize) -> Result<()> {
        while self.max_genus() < max_genus {
            self.extend_one()?;
        }
        Ok(())
    }

    pub fn computed(spec: ModelSpec, max_genus: usize) -> Result<Self> {
        let mut table = Self::new(spec);
        table.extend_to(max_genus)?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Poly {
        Poly::from_ints(v.iter().copied())
    }

    #[test]
    fn genus_one_from_recursion_matches_closed_forms() {
        for spec in [ModelSpec::hypermap(), ModelSpec::map()] {
            let table = GenusTable::new(spec.clone());
            let sol = solve_genus(&spec, &table, 1).unwrap();
            assert_eq!(sol, base_case(&spec, 1), "{}", spec.kind);
        }
    }

    #[test]
    fn hypermap_genus_two() {
        let table = GenusTable::computed(ModelSpec::hypermap(), 2).unwrap();
        let p = table.get(2).unwrap().polynomial().unwrap();
        let expected = ints(&[0, 0, 0, 0, 0, 8, -92, 464, -1316, 2204, -2048, 816]);
        assert_eq!(p, &expected);
        assert_eq!(table.get(2).unwrap().c_of_t().exponent_of(1), 5);
        assert_eq!(table.get(2).unwrap().c_of_t().exponent_of(4), 7);
    }

    #[test]
    fn map_genus_two() {
        let table = GenusTable::computed(ModelSpec::map(), 2).unwrap();
        let p = table.get(2).unwrap().polynomial().unwrap();
        let expected = ints(&[0, 0, 0, 0, 21, -336, 2334, -9108, 21177, -27756, 15876]);
        assert_eq!(p, &expected);
    }

    #[test]
    fn integrand_leading_terms() {
        let h = GenusTable::computed(ModelSpec::hypermap(), 1).unwrap();
        let q = build_integrand(h.spec(), &h, 2).unwrap();
        assert_eq!(
            (q.t_power(), q.numerator().coeff(0)),
            (5, Rat::from_integer(48.into()))
        );
        let m = GenusTable::computed(ModelSpec::map(), 1).unwrap();
        let q = build_integrand(m.spec(), &m, 2).unwrap();
        assert_eq!(
            (q.t_power(), q.numerator().coeff(0)),
            (4, Rat::from_integer(105.into()))
        );
    }

    #[test]
    fn integrand_for_genus_one_has_no_convolution() {
        let spec = ModelSpec::hypermap();
        let table = GenusTable::new(spec.clone());
        let direct =
            &spec.integrand_weight * &apply_operator(&spec, table.get(0).unwrap().c_of_t());
        assert_eq!(build_integrand(&spec, &table, 1).unwrap(), direct);
    }

    #[test]
    fn missing_genus() {
        let spec = ModelSpec::map();
        let table = GenusTable::new(spec.clone());
        assert_eq!(
            build_integrand(&spec, &table, 3),
            Err(Error::MissingGenus {
                model: ModelKind::Map,
                genus: 1
            })
        );
    }

    #[test]
    fn operator_on_trivial_inputs() {
        let h = ModelSpec::hypermap();
        assert!(apply_operator(&h, &FactoredRat::zero()).is_zero());
        let m = ModelSpec::map();
        let c = FactoredRat::from_int(5);
        assert_eq!(apply_operator(&m, &c), FactoredRat::from_int(15));
    }

    #[test]
    fn operator_on_hypermap_genus_one() {
        // lowest term of D_t C_1 is (2g-1)(2g)^2 p_{1,3} t^{2g-2} = 48 t^2 for g = 2
        let h = ModelSpec::hypermap();
        let c1 = base_case(&h, 1);
        let d = apply_operator(&h, c1.c_of_t());
        assert_eq!(d.t_power(), 2);
        assert_eq!(d.numerator().coeff(0), Rat::from_integer(48.into()));
        assert_eq!(d.exponent_of(1), 4);
        assert_eq!(d.exponent_of(4), 8);
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(leading_coefficient(ModelKind::Hypermap, 2), BigInt::from(8));
        assert_eq!(leading_coefficient(ModelKind::Map, 2), BigInt::from(21));
        assert_eq!(leading_coefficient(ModelKind::Map, 3), BigInt::from(1485));
        assert_eq!(
            leading_coefficient(ModelKind::Hypermap, 3),
            BigInt::from(180)
        );
        for kind in ModelKind::ALL {
            for g in 1..12 {
                assert_eq!(
                    leading_coefficient_by_recurrence(kind, g),
                    Rat::from_integer(leading_coefficient(kind, g))
                );
            }
        }
    }

    #[test]
    fn push_rejects_gaps_and_corruption() {
        let spec = ModelSpec::hypermap();
        let mut table = GenusTable::new(spec.clone());
        let two = GenusTable::computed(spec.clone(), 2)
            .unwrap()
            .get(2)
            .unwrap()
            .clone();
        assert!(table.push(two.clone()).is_err());
        table.extend_one().unwrap();
        let mut bad = two.c_of_t().numerator().clone().into_coeffs();
        bad[3] += Rat::one();
        let corrupted = FactoredRat::new(5, Poly::new(bad), spec.denominator(2));
        let sol = GenusSolution::from_function(ModelKind::Hypermap, 2, corrupted).unwrap();
        assert!(table.push(sol).is_err());
        table.push(two).unwrap();
    }
}
