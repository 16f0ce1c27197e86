use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rat};

/// The linear factor `1 - k t`, `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinFactor(u32);

impl LinFactor {
    pub fn new(k: u32) -> Self {
        assert!(k >= 1, "linear factor 1 - kt needs k >= 1");
        LinFactor(k)
    }

    pub fn k(self) -> u32 {
        self.0
    }

    /// The root `1/k`.
    pub fn root(self) -> Rat {
        Rat::new(1.into(), self.0.into())
    }

    pub fn as_poly(self) -> Poly {
        Poly::one_minus(self.0)
    }
}

impl fmt::Display for LinFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 1 {
            f.write_str("(1-t)")
        } else {
            write!(f, "(1-{}t)", self.0)
        }
    }
}

/// A rational function `t^m * N(t) / prod (1 - k_i t)^{e_i}`.
///
/// Always held in canonical form: `N` has a nonzero constant term, is not
/// divisible by any factor of the denominator, denominator factors are
/// distinct with positive exponents and sorted by `k`. Zero is stored as
/// `t^0 * 0 / 1`. With that normalization the derived `PartialEq` is
/// equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRat {
    t_power: i64,
    numerator: Poly,
    denominator: Vec<(LinFactor, u32)>,
}

impl FactoredRat {
    /// Builds and canonicalizes `t^t_power * numerator / prod (1 - k t)^e`.
    pub fn new<I>(t_power: i64, numerator: Poly, denominator: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut den: Vec<(LinFactor, u32)> = Vec::new();
        for (k, e) in denominator {
            let k = LinFactor::new(k);
            match den.iter_mut().find(|(f, _)| *f == k) {
                Some((_, acc)) => *acc += e,
                None => den.push((k, e)),
            }
        }
        den.sort_by_key(|(f, _)| *f);
        Self::reduced(t_power, numerator, den)
    }

    pub fn zero() -> Self {
        FactoredRat {
            t_power: 0,
            numerator: Poly::zero(),
            denominator: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::reduced(0, p, Vec::new())
    }

    /// `t^m`, `m` may be negative.
    pub fn t_pow(m: i64) -> Self {
        Self::reduced(m, Poly::one(), Vec::new())
    }

    /// `(1 - k t)^e` for `e >= 0`, or `1/(1 - k t)^{-e}` for `e < 0`.
    pub fn factor_pow(k: u32, e: i32) -> Self {
        if e >= 0 {
            Self::from_poly(Poly::one().mul_one_minus_pow(k, e.unsigned_abs()))
        } else {
            Self::new(0, Poly::one(), [(k, e.unsigned_abs())])
        }
    }

    fn reduced(
        mut t_power: i64,
        mut numerator: Poly,
        mut denominator: Vec<(LinFactor, u32)>,
    ) -> Self {
        let Some(v) = numerator.valuation() else {
            return Self::zero();
        };
        if v > 0 {
            numerator = numerator.shift_down(v).expect("valuation");
            t_power += v as i64;
        }
        for (f, e) in denominator.iter_mut() {
            while *e > 0 {
                match numerator.div_one_minus(f.k()) {
                    Some(q) => {
                        numerator = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        denominator.retain(|(_, e)| *e > 0);
        FactoredRat {
            t_power,
            numerator,
            denominator,
        }
    }

    pub fn t_power(&self) -> i64 {
        self.t_power
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(LinFactor, u32)] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Exponent of `(1 - k t)` in the denominator, 0 when absent.
    pub fn exponent_of(&self, k: u32) -> u32 {
        self.denominator
            .iter()
            .find(|(f, _)| f.k() == k)
            .map_or(0, |&(_, e)| e)
    }

    /// `t^t_power * numerator` when the function is a polynomial.
    pub fn as_poly(&self) -> Option<Poly> {
        if !self.denominator.is_empty() || self.t_power < 0 {
            return None;
        }
        Some(self.numerator.shift_up(self.t_power as usize))
    }

    /// Polynomial `t^m * N` with `m >= 0` (denominator ignored).
    pub fn full_numerator(&self) -> Option<Poly> {
        (self.t_power >= 0).then(|| self.numerator.shift_up(self.t_power as usize))
    }

    /// Multiplies by the given denominator factors and returns the result
    /// if it is a polynomial.
    pub fn clear(&self, factors: &[(u32, u32)]) -> Option<Poly> {
        let mut num = self.numerator.clone();
        for &(k, e) in factors {
            num = num.mul_one_minus_pow(k, e);
        }
        Self::reduced(self.t_power, num, self.denominator.clone()).as_poly()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredRat {
            t_power: self.t_power,
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    /// Value at `t`, `None` at a pole.
    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        let mut den = Rat::one();
        for &(f, e) in &self.denominator {
            let v = Rat::one() - t * Rat::from_integer(f.k().into());
            den *= num_traits::pow(v, e as usize);
        }
        if den.is_zero() || (t.is_zero() && self.t_power < 0) {
            return None;
        }
        let tp = if self.t_power >= 0 {
            num_traits::pow(t.clone(), self.t_power as usize)
        } else {
            num_traits::pow(t.clone(), self.t_power.unsigned_abs() as usize).recip()
        };
        Some(tp * self.numerator.eval(t) / den)
    }

    /// Exact `d/dt`.
    ///
    /// With `f = t^m N / prod (1 - k t)^e`,
    /// `f' = t^{m-1} [ (m N + t N') prod (1 - k t) + t N sum_k e_k k prod_{j != k} (1 - j t) ]
    ///       / prod (1 - k t)^{e+1}`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let m = Rat::from_integer(self.t_power.into());
        let n = &self.numerator;
        let mut all = Poly::one();
        for &(f, _) in &self.denominator {
            all = all.mul_one_minus(f.k());
        }
        let base = &n.scale(&m) + &n.derivative().shift_up(1);
        let mut num = &base * &all;
        for (i, &(f, e)) in self.denominator.iter().enumerate() {
            let mut others = Poly::constant(Rat::from_integer((e * f.k()).into()));
            for (j, &(g, _)) in self.denominator.iter().enumerate() {
                if i != j {
                    others = others.mul_one_minus(g.k());
                }
            }
            num = &num + &(n * &others).shift_up(1);
        }
        let den = self.denominator.iter().map(|&(f, e)| (f, e + 1)).collect();
        Self::reduced(self.t_power - 1, num, den)
    }

    /// `n`-th derivative.
    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    fn merged_denominator(&self, other: &Self) -> Vec<(LinFactor, u32)> {
        let mut den = self.denominator.clone();
        for &(f, e) in &other.denominator {
            match den.iter_mut().find(|(g, _)| *g == f) {
                Some((_, acc)) => *acc = (*acc).max(e),
                None => den.push((f, e)),
            }
        }
        den.sort_by_key(|(f, _)| *f);
        den
    }

    /// Numerator of `self` rewritten over `t^m / den`, `m <= self.t_power`.
    fn lift(&self, m: i64, den: &[(LinFactor, u32)]) -> Poly {
        let mut num = self.numerator.shift_up((self.t_power - m) as usize);
        for &(f, e) in den {
            num = num.mul_one_minus_pow(f.k(), e - self.exponent_of(f.k()));
        }
        num
    }

    /// Sum of many terms over their common denominator, canonicalized once.
    pub fn sum<'a, I: IntoIterator<Item = &'a FactoredRat>>(terms: I) -> Self {
        let terms: Vec<&FactoredRat> = terms.into_iter().filter(|f| !f.is_zero()).collect();
        let Some(m) = terms.iter().map(|f| f.t_power).min() else {
            return Self::zero();
        };
        let den = terms
            .iter()
            .fold(Self::one(), |acc, f| FactoredRat {
                t_power: 0,
                numerator: Poly::one(),
                denominator: acc.merged_denominator(f),
            })
            .denominator;
        let num = terms
            .iter()
            .fold(Poly::zero(), |acc, f| &acc + &f.lift(m, &den));
        Self::reduced(m, num, den)
    }
}

impl Add<&FactoredRat> for &FactoredRat {
    type Output = FactoredRat;

    fn add(self, rhs: &FactoredRat) -> FactoredRat {
        FactoredRat::sum([self, rhs])
    }
}

impl Sub<&FactoredRat> for &FactoredRat {
    type Output = FactoredRat;

    fn sub(self, rhs: &FactoredRat) -> FactoredRat {
        FactoredRat::sum([self, &-rhs])
    }
}

impl Mul<&FactoredRat> for &FactoredRat {
    type Output = FactoredRat;

    fn mul(self, rhs: &FactoredRat) -> FactoredRat {
        if self.is_zero() || rhs.is_zero() {
            return FactoredRat::zero();
        }
        let mut den = self.denominator.clone();
        for &(f, e) in &rhs.denominator {
            match den.iter_mut().find(|(g, _)| *g == f) {
                Some((_, acc)) => *acc += e,
                None => den.push((f, e)),
            }
        }
        den.sort_by_key(|(f, _)| *f);
        FactoredRat::reduced(
            self.t_power + rhs.t_power,
            &self.numerator * &rhs.numerator,
            den,
        )
    }
}

impl Neg for &FactoredRat {
    type Output = FactoredRat;

    fn neg(self) -> FactoredRat {
        FactoredRat {
            t_power: self.t_power,
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<FactoredRat> for FactoredRat {
            type Output = FactoredRat;
            fn $method(self, rhs: FactoredRat) -> FactoredRat {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for FactoredRat {
    /// Renders in the factored shape, e.g. `t^3/((1-t)(1-4t)^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let tp = self.t_power.max(0) as usize;
        let single_term = self
            .numerator
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .count()
            == 1;
        let has_den = !self.denominator.is_empty() || self.t_power < 0;
        if single_term {
            write!(f, "{}", self.numerator.shift_up(tp))?;
        } else {
            match tp {
                0 if has_den => write!(f, "({})", self.numerator)?,
                0 => write!(f, "{}", self.numerator)?,
                1 => write!(f, "t({})", self.numerator)?,
                m => write!(f, "t^{}({})", m, self.numerator)?,
            }
        }
        if !has_den {
            return Ok(());
        }
        let mut parts: Vec<alloc::string::String> = Vec::new();
        match self.t_power {
            m if m < -1 => parts.push(alloc::format!("t^{}", -m)),
            -1 => parts.push("t".into()),
            _ => {}
        }
        for &(fac, e) in &self.denominator {
            if e == 1 {
                parts.push(alloc::format!("{}", fac));
            } else {
                parts.push(alloc::format!("{}^{}", fac, e));
            }
        }
        let joined: alloc::string::String = parts.concat();
        let bare = parts.len() == 1 && (self.denominator.is_empty() || joined.starts_with('('));
        if bare {
            write!(f, "/{}", joined)
        } else {
            write!(f, "/({})", joined)
        }
    }
}
