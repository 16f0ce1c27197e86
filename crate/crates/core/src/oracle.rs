//! Brute-force rooted counts over permutation pairs.
//!
//! A hypermap with `n` darts is a pair `(sigma, alpha)` of permutations of
//! the darts generating a transitive group; vertices, hyperedges and faces
//! are the cycles of `sigma`, `alpha` and `sigma * alpha`. A map with `n`
//! edges is the special case on `2n` darts where `alpha` is a fixed-point-free
//! involution. Labeled pairs are counted and divided by `(d - 1)!`, which
//! turns the count into the rooted count.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest dart count accepted by the hypermap oracle.
pub const MAX_HYPERMAP_DARTS: usize = 8;
/// Largest edge count for full enumeration of maps.
pub const MAX_MAP_EDGES_FULL: usize = 4;
/// Largest edge count with the involution fixed by symmetry.
pub const MAX_MAP_EDGES_REDUCED: usize = 5;

/// A permutation of `0..d` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d).collect())
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen: u64 = 0;
        for &i in &images {
            if i >= images.len() || i >= 64 || seen & (1 << i) != 0 {
                return None;
            }
            seen |= 1 << i;
        }
        Some(Perm(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn cycle_count(&self) -> usize {
        cycle_count(&self.0)
    }

    /// Advances to the next permutation in lexicographic order; `false`
    /// (leaving `self` unchanged) after the last one.
    pub fn next_lexicographic(&mut self) -> bool {
        next_permutation(&mut self.0)
    }
}

fn cycle_count(p: &[usize]) -> usize {
    let mut seen: u64 = 0;
    let mut cycles = 0;
    for start in 0..p.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while seen & (1 << x) == 0 {
            seen |= 1 << x;
            x = p[x];
        }
    }
    cycles
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Whether `<sigma, alpha>` acts transitively, by growing the orbit of 0.
pub fn is_transitive(sigma: &[usize], alpha: &[usize]) -> bool {
    let d = sigma.len();
    if d == 0 {
        return true;
    }
    let full: u64 = if d == 64 { u64::MAX } else { (1 << d) - 1 };
    let mut reached: u64 = 1;
    let mut stack = [0usize; 64];
    let mut top = 1;
    while top > 0 {
        top -= 1;
        let x = stack[top];
        for y in [sigma[x], alpha[x]] {
            if reached & (1 << y) == 0 {
                reached |= 1 << y;
                stack[top] = y;
                top += 1;
            }
        }
    }
    reached == full
}

/// Same question answered with union-find over the functional graphs.
pub fn is_transitive_union_find(sigma: &[usize], alpha: &[usize]) -> bool {
    let d = sigma.len();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = d;
    for x in 0..d {
        for y in [sigma[x], alpha[x]] {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components <= 1
}

/// Labeled pair counts by genus, before division.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pairs_by_genus: Vec<u64>,
}

impl Tally {
    fn add(&mut self, g: usize) {
        if self.pairs_by_genus.len() <= g {
            self.pairs_by_genus.resize(g + 1, 0);
        }
        self.pairs_by_genus[g] += 1;
    }

    pub fn merge(&mut self, other: &Tally) {
        if self.pairs_by_genus.len() < other.pairs_by_genus.len() {
            self.pairs_by_genus.resize(other.pairs_by_genus.len(), 0);
        }
        for (a, b) in self.pairs_by_genus.iter_mut().zip(&other.pairs_by_genus) {
            *a += b;
        }
    }
}

/// Rooted counts of one size, indexed by genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Darts for hypermaps, edges for maps.
    pub size: usize,
    pub counts: Vec<BigInt>,
    /// Number of transitive labeled pairs that were classified.
    pub transitive_pairs: BigInt,
}

impl OracleResult {
    /// Count for genus `g`, zero beyond the computed range.
    pub fn count(&self, g: usize) -> BigInt {
        self.counts.get(g).cloned().unwrap_or_else(BigInt::zero)
    }
}

fn genus_from_euler(
    twice_genus: i64,
    context: impl FnOnce() -> alloc::string::String,
) -> Result<usize> {
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::BadGenus { context: context() });
    }
    Ok((twice_genus / 2) as usize)
}

/// Pairs `(sigma, alpha)` with `sigma(0) = first`, all `alpha` in `S_n`.
pub fn hypermap_shard(n: usize, first: usize) -> Result<Tally> {
    check_bound(n, MAX_HYPERMAP_DARTS)?;
    let mut tally = Tally::default();
    let mut sigma = first_with_head(n, first);
    let mut prod = alloc::vec![0usize; n];
    loop {
        let cs = cycle_count(&sigma) as i64;
        let mut alpha: Vec<usize> = (0..n).collect();
        loop {
            if is_transitive(&sigma, &alpha) {
                for x in 0..n {
                    prod[x] = sigma[alpha[x]];
                }
                let chi = cs + cycle_count(&alpha) as i64 + cycle_count(&prod) as i64;
                let g = genus_from_euler(n as i64 + 2 - chi, || {
                    alloc::format!("hypermap sigma={sigma:?} alpha={alpha:?}")
                })?;
                tally.add(g);
            }
            if !next_permutation(&mut alpha) {
                break;
            }
        }
        if !next_permutation(&mut sigma) || sigma[0] != first {
            break;
        }
    }
    Ok(tally)
}

/// Smallest permutation of `0..n` in lexicographic order starting with `head`.
fn first_with_head(n: usize, head: usize) -> Vec<usize> {
    let mut p = Vec::with_capacity(n);
    p.push(head);
    p.extend((0..n).filter(|&x| x != head));
    p
}

fn check_bound(size: usize, max: usize) -> Result<()> {
    if size == 0 || size > max {
        return Err(Error::OracleBound { size, max });
    }
    Ok(())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn finish(size: usize, tally: &Tally, multiplier: BigInt, divisor: BigInt) -> Result<OracleResult> {
    let mut counts = Vec::with_capacity(tally.pairs_by_genus.len());
    let mut total = BigInt::zero();
    for (g, &pairs) in tally.pairs_by_genus.iter().enumerate() {
        let labeled = BigInt::from(pairs) * &multiplier;
        let (q, r) = labeled.div_rem(&divisor);
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                context: alloc::format!("size {size}, genus {g}: {labeled} pairs / {divisor}"),
            });
        }
        total += labeled;
        counts.push(q);
    }
    Ok(OracleResult {
        size,
        counts,
        transitive_pairs: total,
    })
}

/// Combines shard tallies for `n` darts into rooted hypermap counts.
pub fn hypermap_result(n: usize, tally: &Tally) -> Result<OracleResult> {
    finish(n, tally, BigInt::from(1), factorial(n - 1))
}

/// Rooted hypermap counts with `n` darts, by genus.
pub fn count_rooted_hypermaps(n: usize) -> Result<OracleResult> {
    check_bound(n, MAX_HYPERMAP_DARTS)?;
    let mut tally = Tally::default();
    for first in 0..n {
        tally.merge(&hypermap_shard(n, first)?);
    }
    hypermap_result(n, &tally)
}

/// How the map oracle treats the edge involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapEnumeration {
    /// Every fixed-point-free involution against every `sigma`.
    Full,
    /// Only `(0 1)(2 3)...`; every involution is conjugate to it, so the
    /// pair count is that count times `(2n - 1)!!`.
    FixedInvolution,
}

impl MapEnumeration {
    pub fn max_edges(self) -> usize {
        match self {
            MapEnumeration::Full => MAX_MAP_EDGES_FULL,
            MapEnumeration::FixedInvolution => MAX_MAP_EDGES_REDUCED,
        }
    }
}

/// All fixed-point-free involutions of `0..d`, `d` even, in lexicographic order.
pub fn fixed_point_free_involutions(d: usize) -> Vec<Vec<usize>> {
    fn rec(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(x) = p.iter().position(|&v| v == usize::MAX) else {
            out.push(p.clone());
            return;
        };
        for y in x + 1..p.len() {
            if p[y] == usize::MAX {
                p[x] = y;
                p[y] = x;
                rec(p, out);
                p[x] = usize::MAX;
                p[y] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if d.is_multiple_of(2) {
        rec(&mut alloc::vec![usize::MAX; d], &mut out);
    }
    out
}

/// Pairs for maps with `n` edges where `sigma(0) = first`.
pub fn map_shard(n: usize, first: usize, mode: MapEnumeration) -> Result<Tally> {
    check_bound(n, mode.max_edges())?;
    let d = 2 * n;
    let involutions = match mode {
        MapEnumeration::Full => fixed_point_free_involutions(d),
        MapEnumeration::FixedInvolution => {
            alloc::vec![(0..d).map(|x| x ^ 1).collect::<Vec<usize>>()]
        }
    };
    let mut tally = Tally::default();
    let mut sigma = first_with_head(d, first);
    let mut prod = alloc::vec![0usize; d];
    loop {
        let cs = cycle_count(&sigma) as i64;
        for alpha in &involutions {
            if !is_transitive(&sigma, alpha) {
                continue;
            }
            for x in 0..d {
                prod[x] = sigma[alpha[x]];
            }
            // v - e + f = 2 - 2g
            let chi = cs - n as i64 + cycle_count(&prod) as i64;
            let g = genus_from_euler(2 - chi, || {
                alloc::format!("map sigma={sigma:?} alpha={alpha:?}")
            })?;
            tally.add(g);
        }
        if !next_permutation(&mut sigma) || sigma[0] != first {
            break;
        }
    }
    Ok(tally)
}

/// Combines shard tallies for `n` edges into rooted map counts.
pub fn map_result(n: usize, tally: &Tally, mode: MapEnumeration) -> Result<OracleResult> {
    let multiplier = match mode {
        MapEnumeration::Full => BigInt::from(1),
        MapEnumeration::FixedInvolution => {
            (1..2 * n).step_by(2).fold(BigInt::from(1), |a, k| a * k)
        }
    };
    finish(n, tally, multiplier, factorial(2 * n - 1))
}

/// Rooted map counts with `n` edges, by genus.
pub fn count_rooted_maps(n: usize, mode: MapEnumeration) -> Result<OracleResult> {
    check_bound(n, mode.max_edges())?;
    let mut tally = Tally::default();
    for first in 0..2 * n {
        tally.merge(&map_shard(n, first, mode)?);
    }
    map_result(n, &tally, mode)
}
