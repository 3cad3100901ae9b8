//! Increasing index tuples `1 <= a_1 < ... < a_l <= m`, the Bruhat order on
//! them, and the counting functions that go with Schubert cells.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A strictly increasing tuple of 1-based indices bounded by `m`.
///
/// Tuples with the same `(ell, m)` compare lexicographically, which is the
/// coordinate order used for every Plücker vector in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    entries: Vec<usize>,
    m: usize,
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Comma-joined entries, e.g. `1,3,4`.
impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl IndexTuple {
    pub fn new(entries: Vec<usize>, m: usize) -> Result<IndexTuple> {
        if entries.first().is_some_and(|&a| a < 1) || entries.last().is_some_and(|&a| a > m) {
            return Err(Error::InvalidTuple(format!("{entries:?} not within 1..={m}")));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTuple(format!("{entries:?} is not strictly increasing")));
        }
        Ok(IndexTuple { entries, m })
    }

    /// Sorts `entries` first; fails on repeated indices.
    pub fn from_unordered(mut entries: Vec<usize>, m: usize) -> Result<IndexTuple> {
        entries.sort_unstable();
        IndexTuple::new(entries, m)
    }

    pub fn parse(s: &str, m: usize) -> Result<IndexTuple> {
        let s = s.trim();
        if s.is_empty() {
            return IndexTuple::new(Vec::new(), m);
        }
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad index {t:?} in tuple {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(entries, m)
    }

    #[inline]
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    #[inline]
    pub fn ell(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.entries.iter().copied().collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.entries.binary_search(&i).is_ok()
    }

    fn same_shape(&self, other: &IndexTuple) -> Result<()> {
        if self.ell() == other.ell() && self.m == other.m {
            Ok(())
        } else {
            Err(Error::InvalidTuple(format!(
                "shape mismatch: I({},{}) vs I({},{})",
                self.ell(),
                self.m,
                other.ell(),
                other.m
            )))
        }
    }

    /// Componentwise comparison `a_i <= b_i` for all `i`.
    pub fn bruhat_leq(&self, other: &IndexTuple) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    /// Removes the entries at 1-based positions `r < s`.
    pub fn delete_pair(&self, r: usize, s: usize) -> Result<IndexTuple> {
        if !(1 <= r && r < s && s <= self.ell()) {
            return Err(Error::InvalidTuple(format!(
                "positions ({r},{s}) invalid for a tuple of length {}",
                self.ell()
            )));
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != r && i + 1 != s)
            .map(|(_, &a)| a)
            .collect();
        Ok(IndexTuple { entries, m: self.m })
    }

    /// `sum_j (a_j - j)`, the dimension of the Schubert cell indexed by the
    /// tuple.
    pub fn cell_dimension(&self) -> usize {
        self.entries.iter().enumerate().map(|(j, &a)| a - (j + 1)).sum()
    }

    /// Position in the lexicographic listing of `I(ell, m)`.
    pub fn lex_rank(&self) -> usize {
        let ell = self.ell();
        let mut rank = 0;
        let mut prev = 0;
        for (i, &a) in self.entries.iter().enumerate() {
            for skipped in prev + 1..a {
                rank += binomial(self.m - skipped, ell - i - 1);
            }
            prev = a;
        }
        rank
    }
}

/// Ordinary binomial coefficient (0 when `k > n`).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All of `I(ell, m)` in lexicographic order.
pub fn enumerate_index_tuples(ell: usize, m: usize) -> Result<Vec<IndexTuple>> {
    if ell > m {
        return Err(Error::InvalidTuple(format!("I({ell},{m}) requires ell <= m")));
    }
    let mut out = Vec::with_capacity(binomial(m, ell));
    let mut cur: Vec<usize> = (1..=ell).collect();
    loop {
        out.push(IndexTuple {
            entries: cur.clone(),
            m,
        });
        // rightmost entry that can still move up
        let Some(i) = (0..ell).rev().find(|&i| cur[i] < m - (ell - 1 - i)) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..ell {
            cur[j] = cur[j - 1] + 1;
        }
    }
    Ok(out)
}

/// The Gaussian binomial `[m choose ell]_q`, the number of `ell`-dimensional
/// subspaces of `F_q^m`.
pub fn gaussian_binomial(m: usize, ell: usize, q: u64) -> Result<BigUint> {
    if ell > m {
        return Err(Error::InvalidArgument(format!(
            "Gaussian binomial [{m} {ell}] needs ell <= m"
        )));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q = {q} must be at least 2")));
    }
    let q = BigUint::from(q);
    let qm = q.pow(m as u32);
    let ql = q.pow(ell as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..ell {
        num *= &qm - &qi;
        den *= &ql - &qi;
        qi *= &q;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Whether every two distinct members have supports meeting in `ell - 1`
/// elements.
pub fn is_close_family(family: &[IndexTuple]) -> Result<bool> {
    let Some(first) = family.first() else {
        return Err(Error::InvalidArgument("close-family test on an empty set".into()));
    };
    for t in family {
        first.same_shape(t)?;
    }
    let ell = first.ell();
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if a == b {
                continue;
            }
            let common = a.entries.iter().filter(|x| b.contains(**x)).count();
            if common + 1 != ell {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Down-set `{b : b <= top}` in Bruhat order, lexicographically sorted.
pub fn bruhat_down_set(top: &IndexTuple) -> Vec<IndexTuple> {
    enumerate_index_tuples(top.ell(), top.m())
        .expect("shape already valid")
        .into_iter()
        .filter(|b| b.bruhat_leq(top).expect("same shape"))
        .collect()
}
