use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Dense univariate polynomial in `t` with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `t^i`. The vector never carries
/// trailing zeros, so the zero polynomial is the empty vector and two
/// polynomials are equal iff their coefficient vectors are.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^degree`
    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(Rat::from_integer).collect())
    }

    /// The linear factor `1 - k t`.
    pub fn one_minus(k: u32) -> Self {
        Self::from_ints([1, -i64::from(k)])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient (the `t`-adic valuation).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    /// Multiply by `t^n`.
    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `t^n`; `None` unless the division is exact.
    pub fn shift_down(&self, n: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.valuation()? < n {
            return None;
        }
        Some(Poly {
            coeffs: self.coeffs[n..].to_vec(),
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Keep the terms of degree `< len`.
    pub fn truncate(&self, len: usize) -> Self {
        Self::new(self.coeffs.iter().take(len).cloned().collect())
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    /// Antiderivative vanishing at `t = 0`.
    pub fn integral(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / Rat::from_integer((i + 1).into())),
        );
        Poly { coeffs }
    }

    /// Multiply by `(1 - k t)`.
    pub fn mul_one_minus(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let k = Rat::from_integer(k.into());
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        let mut prev = Rat::zero();
        for c in &self.coeffs {
            coeffs.push(c - &prev * &k);
            prev = c.clone();
        }
        coeffs.push(-prev * k);
        Poly { coeffs }
    }

    /// Multiply by `(1 - k t)^e`.
    pub fn mul_one_minus_pow(&self, k: u32, e: u32) -> Self {
        (0..e).fold(self.clone(), |p, _| p.mul_one_minus(k))
    }

    /// Exact division by `(1 - k t)`, `None` when `1/k` is not a root.
    pub fn div_one_minus(&self, k: u32) -> Option<Self> {
        let deg = match self.degree() {
            None => return Some(Self::zero()),
            Some(0) => return None,
            Some(d) => d,
        };
        // n_i = q_i - k q_{i-1}  =>  q_i = n_i + k q_{i-1}
        let k = Rat::from_integer(k.into());
        let mut quotient = Vec::with_capacity(deg);
        let mut prev = Rat::zero();
        for c in &self.coeffs[..deg] {
            let q = c + &prev * &k;
            quotient.push(q.clone());
            prev = q;
        }
        if (&self.coeffs[deg] + prev * k).is_zero() {
            Some(Self::new(quotient))
        } else {
            None
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Largest absolute numerator bit-length over the coefficients.
    pub fn max_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::new(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    /// Plain ascending-degree rendering, e.g. `8t^5-92t^6+464t^7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            let unit = mag.is_one();
            if !unit || i == 0 {
                if mag.is_integer() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{}", i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn difference_of_squares() {
        let p = Poly::from_ints([1, 1]) * Poly::from_ints([1, -1]);
        assert_eq!(p, Poly::from_ints([1, 0, -1]));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = Poly::from_ints([3, 0, -2, 5]);
        assert_eq!(&p + &Poly::zero(), p);
        assert_eq!(&p * &Poly::one(), p);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).coeffs().len(), 0);
    }

    #[test]
    fn linear_factor_division() {
        let p = Poly::from_ints([2, 5, -3]).mul_one_minus_pow(4, 3);
        assert_eq!(
            p.div_one_minus(4)
                .unwrap()
                .div_one_minus(4)
                .unwrap()
                .div_one_minus(4),
            Some(Poly::from_ints([2, 5, -3]))
        );
        assert_eq!(Poly::from_ints([2, 5, -3]).div_one_minus(4), None);
        assert_eq!(Poly::one().div_one_minus(1), None);
        // 8t^5 - ... from the hypermap genus 2 numerator has a double root at 1/2
        let p2 = Poly::from_ints([0, 0, 0, 0, 0, 8, -92, 464, -1316, 2204, -2048, 816]);
        let once = p2.div_one_minus(2).unwrap();
        let twice = once.div_one_minus(2).unwrap();
        assert!(twice.div_one_minus(2).is_none());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = Poly::from_ints([1, -7, 0, 3, 9, -2]);
        let b = Poly::from_ints([1, -3]).mul_one_minus_pow(6, 2);
        let (q, rem) = a.div_rem(&b);
        assert!(rem.degree().unwrap_or(0) < 3);
        assert_eq!(&(&q * &b) + &rem, a);
    }

    #[test]
    fn calculus() {
        let p = Poly::from_ints([4, 3, 0, 2]);
        assert_eq!(p.derivative(), Poly::from_ints([3, 0, 6]));
        assert_eq!(p.integral().derivative(), p);
        assert_eq!(p.integral().coeff(0), r(0, 1));
        assert_eq!(p.integral().coeff(2), r(3, 2));
    }

    #[test]
    fn shifts_and_valuation() {
        let p = Poly::from_ints([0, 0, 5, 1]);
        assert_eq!(p.valuation(), Some(2));
        assert_eq!(p.shift_down(2), Some(Poly::from_ints([5, 1])));
        assert_eq!(p.shift_down(3), None);
        assert_eq!(Poly::from_ints([5, 1]).shift_up(2), p);
    }

    #[test]
    fn evaluation() {
        let p = Poly::from_ints([1, -3]);
        assert_eq!(p.eval(&r(1, 3)), r(0, 1));
        assert_eq!(p.eval(&r(1, 2)), r(-1, 2));
    }

    #[test]
    fn display() {
        assert_eq!(
            alloc::format!("{}", Poly::from_ints([0, 0, 0, 0, 0, 8, -92, 0, 1, -1])),
            "8t^5-92t^6+t^8-t^9"
        );
        assert_eq!(alloc::format!("{}", Poly::from_ints([1, -3])), "1-3t");
        assert_eq!(alloc::format!("{}", Poly::zero()), "0");
        assert_eq!(alloc::format!("{}", Poly::constant(r(-1, 2))), "-(1/2)");
    }
}
