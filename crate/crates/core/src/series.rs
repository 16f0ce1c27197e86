//! Count sequences `c_{g,n}` in the original variable `s`.
//!
//! Two independent routes: compose the rational `t`-form with the inverse
//! substitution `t(s)`, or run the coefficient recursion obtained from the
//! genus-graded differential identities directly on integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{series_expand, Rat};
use crate::engine::{GenusSolution, ModelKind, ModelSpec};
use crate::error::{Error, Result};

/// `c_{g,0..=N}` for one model and genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub kind: ModelKind,
    pub genus: usize,
    pub counts: Vec<BigInt>,
}

impl CountTable {
    pub fn max_n(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Checks that the sequence starts exactly at the first admissible index.
    pub fn check_support(&self) -> Result<()> {
        let first = ModelSpec::new(self.kind).first_index(self.genus);
        let fail = |detail| Error::Invariant {
            model: self.kind,
            genus: self.genus,
            detail,
        };
        if let Some(n) = self.counts.iter().take(first).position(|c| !c.is_zero()) {
            return Err(fail(alloc::format!(
                "nonzero count below the support at n = {n}"
            )));
        }
        if self.counts.len() > first && self.counts[first].is_zero() {
            return Err(fail(alloc::format!("count at n = {first} vanishes")));
        }
        Ok(())
    }

    /// Whether counts never decrease after the first nonzero one. Observed,
    /// not proven.
    pub fn is_nondecreasing(&self) -> bool {
        let first = ModelSpec::new(self.kind).first_index(self.genus);
        self.counts
            .iter()
            .skip(first)
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[0] <= w[1])
    }
}

/// The compositional inverse `t(s) = s + a s^2 + ...` of `s = t(1 - a t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversionSeries {
    pub subst_coeff: u32,
    /// Coefficients of `s^0..=s^order`.
    pub coeffs: Vec<Rat>,
}

impl ReversionSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn truncated_mul(a: &[Rat], b: &[Rat], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverts `s = t - a t^2` to order `order` by the fixed point
/// `t <- s + a t^2`; each pass fixes at least one more coefficient.
pub fn revert(a: u32, order: usize) -> ReversionSeries {
    let len = order + 1;
    let a = Rat::from_integer(a.into());
    let mut t = vec![Rat::zero(); len];
    for _ in 0..order {
        let sq = truncated_mul(&t, &t, len);
        let mut next: Vec<Rat> = sq.iter().map(|c| c * &a).collect();
        if len > 1 {
            next[1] += Rat::from_integer(1.into());
        }
        if next == t {
            break;
        }
        t = next;
    }
    ReversionSeries {
        subst_coeff: a
            .to_integer()
            .try_into()
            .expect("small substitution coefficient"),
        coeffs: t,
    }
}

/// `sum_k f_k t(s)^k` truncated after `s^(len-1)`, by Horner's rule.
pub fn compose(f: &[Rat], t_of_s: &[Rat], len: usize) -> Vec<Rat> {
    let mut acc = vec![Rat::zero(); len];
    for c in f.iter().take(len).rev() {
        acc = truncated_mul(&acc, t_of_s, len);
        acc[0] += c;
    }
    acc
}

/// `c_{g,0..=max_n}` from the `t`-form of `C_g`.
pub fn counts_from_solution(
    sol: &GenusSolution,
    rev: &ReversionSeries,
    max_n: usize,
) -> Result<CountTable> {
    let kind = sol.kind();
    let genus = sol.genus();
    if rev.order() < max_n {
        return Err(Error::ReversionTooShort {
            have: rev.order(),
            need: max_n,
        });
    }
    if rev.subst_coeff != ModelSpec::new(kind).subst_coeff {
        return Err(Error::Invariant {
            model: kind,
            genus,
            detail: alloc::format!("reversion for a = {} used on {}", rev.subst_coeff, kind),
        });
    }
    let in_t = series_expand(sol.c_of_t(), max_n)?;
    let in_s = compose(&in_t, &rev.coeffs, max_n + 1);
    let counts = in_s
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            if !c.is_integer() {
                return Err(Error::NonIntegerCount {
                    model: kind,
                    genus,
                    n,
                    value: c,
                });
            }
            let c = c.to_integer();
            if c.is_negative() {
                return Err(Error::NegativeCount {
                    model: kind,
                    genus,
                    n,
                });
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let table = CountTable {
        kind,
        genus,
        counts,
    };
    table.check_support()?;
    Ok(table)
}

/// `c_{g,0..=max_n}` from the integer coefficient recursion, given the
/// tables of all lower genera (each at least up to `max_n`).
///
/// Hypermaps:
/// `(n+1) c_{g,n} = 3(2n-1) c_{g,n-1} + 3(n-2) c_{g,n-2} + (n-1)^2 (n-2) c_{g-1,n-2}
///    + sum_{i=0}^{g} sum_j (4+6j)(n-2-j) c_{i,j} c_{g-i,n-2-j} + 2 [g=0][n=1]`.
///
/// Maps:
/// `(n+1) c_{g,n} = 4(2n-1) c_{g,n-1} + (2n-1)(2n-3)(n-1) c_{g-1,n-2}
///    + 3 sum_{i=0}^{g} sum_j (2j+1)(2(n-2-j)+1) c_{i,j} c_{g-i,n-2-j} + [g=0][n=0]`.
pub fn counts_by_recursion(
    kind: ModelKind,
    genus: usize,
    max_n: usize,
    lower: &[CountTable],
) -> Result<CountTable> {
    for g in 0..genus {
        match lower.get(g) {
            Some(t) if t.kind == kind && t.genus == g && t.counts.len() > max_n => {}
            _ => {
                return Err(Error::MissingGenus {
                    model: kind,
                    genus: g,
                })
            }
        }
    }
    let mut cur: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    let big = |v: i64| BigInt::from(v);
    for n in 0..=max_n {
        let ni = n as i64;
        // c_{i,j} with i = genus reads the entries computed so far
        let entry = |i: usize, j: usize, cur: &Vec<BigInt>| -> BigInt {
            if i == genus {
                cur[j].clone()
            } else {
                lower[i].counts[j].clone()
            }
        };
        let mut rhs = BigInt::zero();
        match kind {
            ModelKind::Hypermap => {
                if n >= 1 {
                    rhs += big(3 * (2 * ni - 1)) * &cur[n - 1];
                }
                if n >= 2 {
                    rhs += big(3 * (ni - 2)) * &cur[n - 2];
                    if genus >= 1 {
                        rhs +=
                            big((ni - 1) * (ni - 1) * (ni - 2)) * &lower[genus - 1].counts[n - 2];
                    }
                    for i in 0..=genus {
                        for j in 0..=n - 2 {
                            let m = n - 2 - j;
                            let w = big((4 + 6 * j as i64) * m as i64);
                            if w.is_zero() {
                                continue;
                            }
                            rhs += w * entry(i, j, &cur) * entry(genus - i, m, &cur);
                        }
                    }
                }
                if genus == 0 && n == 1 {
                    rhs += 2;
                }
            }
            ModelKind::Map => {
                if n >= 1 {
                    rhs += big(4 * (2 * ni - 1)) * &cur[n - 1];
                }
                if n >= 2 {
                    if genus >= 1 {
                        rhs += big((2 * ni - 1) * (2 * ni - 3) * (ni - 1))
                            * &lower[genus - 1].counts[n - 2];
                    }
                    let mut conv = BigInt::zero();
                    for i in 0..=genus {
                        for j in 0..=n - 2 {
                            let m = n - 2 - j;
                            let w = big((2 * j as i64 + 1) * (2 * m as i64 + 1));
                            conv += w * entry(i, j, &cur) * entry(genus - i, m, &cur);
                        }
                    }
                    rhs += conv * 3;
                }
                if genus == 0 && n == 0 {
                    rhs += 1;
                }
            }
        }
        let (q, r) = rhs.div_rem(&BigInt::from(n + 1));
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                context: alloc::format!("{kind} recursion at g = {genus}, n = {n}"),
            });
        }
        cur.push(q);
    }
    Ok(CountTable {
        kind,
        genus,
        counts: cur,
    })
}

/// Recursion tables for all genera `0..=max_genus`.
pub fn count_tables_by_recursion(
    kind: ModelKind,
    max_genus: usize,
    max_n: usize,
) -> Result<Vec<CountTable>> {
    let mut tables = Vec::with_capacity(max_genus + 1);
    for g in 0..=max_genus {
        let t = counts_by_recursion(kind, g, max_n, &tables)?;
        tables.push(t);
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{base_case, GenusTable};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| Rat::from_integer(c.into())).collect()
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn reversion_low_orders() {
        assert_eq!(revert(2, 4).coeffs, ints(&[0, 1, 2, 8, 40]));
        assert_eq!(revert(3, 3).coeffs, ints(&[0, 1, 3, 18]));
        for a in 1..6 {
            assert_eq!(revert(a, 5).coeffs[1], Rat::from_integer(1.into()));
        }
    }

    #[test]
    fn reversion_composes_to_identity() {
        for a in [1u32, 2, 3, 4] {
            let rev = revert(a, 12);
            let ar = Rat::from_integer(a.into());
            // s = t(s) - a t(s)^2
            let sq = truncated_mul(&rev.coeffs, &rev.coeffs, 13);
            let back: Vec<Rat> = rev
                .coeffs
                .iter()
                .zip(&sq)
                .map(|(t, q)| t - q * &ar)
                .collect();
            let mut s = vec![Rat::zero(); 13];
            s[1] = Rat::from_integer(1.into());
            assert_eq!(back, s);
            assert!(rev.coeffs.iter().all(Rat::is_integer));
        }
    }

    #[test]
    fn closed_form_counts() {
        let h = ModelSpec::hypermap();
        let m = ModelSpec::map();
        let rh = revert(2, 6);
        let rm = revert(3, 6);
        let c = counts_from_solution(&base_case(&h, 0), &rh, 4).unwrap();
        assert_eq!(c.counts, bigs(&[0, 1, 3, 12, 56]));
        let c = counts_from_solution(&base_case(&h, 1), &rh, 4).unwrap();
        assert_eq!(c.counts, bigs(&[0, 0, 0, 1, 15]));
        let c = counts_from_solution(&base_case(&m, 0), &rm, 3).unwrap();
        assert_eq!(c.counts, bigs(&[1, 2, 9, 54]));
        let c = counts_from_solution(&base_case(&m, 1), &rm, 3).unwrap();
        assert_eq!(c.counts, bigs(&[0, 0, 1, 20]));
    }

    #[test]
    fn planar_maps_match_closed_formula() {
        // 2 * 3^n (2n)! / (n! (n+2)!)
        let rec = counts_by_recursion(ModelKind::Map, 0, 15, &[]).unwrap();
        let mut fact = vec![BigInt::from(1)];
        for k in 1..=32 {
            let next = &fact[k - 1] * BigInt::from(k);
            fact.push(next);
        }
        for n in 0..=15usize {
            let v = BigInt::from(2) * BigInt::from(3).pow(n as u32) * &fact[2 * n]
                / (&fact[n] * &fact[n + 2]);
            assert_eq!(rec.counts[n], v, "n = {n}");
        }
    }

    #[test]
    fn recursion_small_values() {
        let h0 = counts_by_recursion(ModelKind::Hypermap, 0, 4, &[]).unwrap();
        assert_eq!(h0.counts, bigs(&[0, 1, 3, 12, 56]));
        let h1 = counts_by_recursion(ModelKind::Hypermap, 1, 4, &[h0]).unwrap();
        assert_eq!(h1.counts, bigs(&[0, 0, 0, 1, 15]));
        let m = count_tables_by_recursion(ModelKind::Map, 1, 3).unwrap();
        assert_eq!(m[0].counts, bigs(&[1, 2, 9, 54]));
        assert_eq!(m[1].counts, bigs(&[0, 0, 1, 20]));
    }

    #[test]
    fn recursion_needs_lower_genera() {
        assert_eq!(
            counts_by_recursion(ModelKind::Map, 2, 5, &[]),
            Err(Error::MissingGenus {
                model: ModelKind::Map,
                genus: 0
            })
        );
    }

    #[test]
    fn both_routes_agree_through_genus_three() {
        for kind in ModelKind::ALL {
            let spec = ModelSpec::new(kind);
            let table = GenusTable::computed(spec.clone(), 3).unwrap();
            let rev = revert(spec.subst_coeff, 20);
            let rec = count_tables_by_recursion(kind, 3, 20).unwrap();
            for (g, rec) in rec.iter().enumerate() {
                let direct = counts_from_solution(table.get(g).unwrap(), &rev, 20).unwrap();
                assert_eq!(&direct, rec, "{kind} g={g}");
                assert!(direct.is_nondecreasing());
            }
        }
    }

    #[test]
    fn short_reversion_is_rejected() {
        let h = ModelSpec::hypermap();
        let err = counts_from_solution(&base_case(&h, 0), &revert(2, 3), 5).unwrap_err();
        assert_eq!(err, Error::ReversionTooShort { have: 3, need: 5 });
    }
}
