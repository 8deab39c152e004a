//! Reachable sums of bounded integer combinations `sum_i c_i e_i` with
//! `0 <= e_i <= u_i`, distinguishing the two extreme vectors `e = 0` and
//! `e = u` from every other ("proper") choice.
//!
//! Tables are built over suffixes `i..n` so that a lexicographically smallest
//! proper vector hitting a target can be read off greedily from the front.

use crate::error::{Error, Result};

/// Largest sum range, in bits per table, that [`BoundedSums`] will allocate.
pub const MAX_RANGE_BITS: u64 = 1 << 30;

/// Fixed-width occupancy table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitTable {
    words: Vec<u64>,
    len: usize,
}

impl BitTable {
    pub(crate) fn new(len: usize) -> Self {
        BitTable { words: vec![0; len.div_ceil(64)], len }
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// `self |= other << shift`, dropping bits that leave `0..len`.
    pub(crate) fn or_shifted(&mut self, other: &BitTable, shift: i64) {
        debug_assert_eq!(self.len, other.len);
        let nw = self.words.len();
        let word_shift = (shift.unsigned_abs() / 64) as usize;
        let bit_shift = (shift.unsigned_abs() % 64) as u32;
        if word_shift >= nw {
            return;
        }
        if shift >= 0 {
            for w in (word_shift..nw).rev() {
                let src = w - word_shift;
                let mut v = other.words[src] << bit_shift;
                if bit_shift > 0 && src > 0 {
                    v |= other.words[src - 1] >> (64 - bit_shift);
                }
                self.words[w] |= v;
            }
        } else {
            for w in 0..nw - word_shift {
                let src = w + word_shift;
                let mut v = other.words[src] >> bit_shift;
                if bit_shift > 0 && src + 1 < nw {
                    v |= other.words[src + 1] << (64 - bit_shift);
                }
                self.words[w] |= v;
            }
        }
        let tail = self.len % 64;
        if tail > 0 {
            self.words[nw - 1] &= (1u64 << tail) - 1;
        }
    }

    pub(crate) fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Reachable-sum tables for `sum_i coeffs[i] * e_i`, `0 <= e_i <= bounds[i]`.
#[derive(Clone, Debug)]
pub struct BoundedSums {
    coeffs: Vec<i64>,
    bounds: Vec<i64>,
    lo: i64,
    hi: i64,
    /// `proper[i]`: sums of vectors on positions `i..n` that are neither all
    /// zero nor all at their bounds. `proper[n]` is empty.
    proper: Vec<BitTable>,
    /// `max_sum[i] = sum_{j >= i} coeffs[j] * bounds[j]`.
    max_sum: Vec<i64>,
}

impl BoundedSums {
    pub fn new(coeffs: &[i64], bounds: &[i64]) -> Result<Self> {
        assert_eq!(coeffs.len(), bounds.len());
        if bounds.iter().any(|&u| u < 1) {
            return Err(Error::Inconsistent("reachable-sum bounds must be positive".into()));
        }
        let overflow = || Error::Overflow("reachable-sum range");
        let n = coeffs.len();
        let (mut lo, mut hi) = (0i64, 0i64);
        for (&c, &u) in coeffs.iter().zip(bounds) {
            let t = c.checked_mul(u).ok_or_else(overflow)?;
            if t < 0 {
                lo = lo.checked_add(t).ok_or_else(overflow)?;
            } else {
                hi = hi.checked_add(t).ok_or_else(overflow)?;
            }
        }
        let width = hi.checked_sub(lo).and_then(|w| w.checked_add(1)).ok_or_else(overflow)?;
        if width as u64 > MAX_RANGE_BITS {
            return Err(overflow());
        }
        let width = width as usize;

        let mut proper = vec![BitTable::new(width); n + 1];
        let mut max_sum = vec![0i64; n + 1];
        for i in (0..n).rev() {
            let (c, u) = (coeffs[i], bounds[i]);
            let rest_empty = i + 1 == n;
            let rest_max = max_sum[i + 1];
            let (head, tail) = proper.split_at_mut(i + 1);
            let cur = &mut head[i];
            let next = &tail[0];
            if !rest_empty {
                for k in 0..=u {
                    cur.or_shifted(next, k * c);
                }
            }
            // The checked range bounds every partial sum below, so plain
            // arithmetic cannot overflow from here on.
            let idx = |s: i64| (s - lo) as usize;
            for k in 1..=u {
                if !(rest_empty && k == u) {
                    cur.set(idx(k * c));
                }
            }
            for k in 0..u {
                if !(rest_empty && k == 0) {
                    cur.set(idx(rest_max + k * c));
                }
            }
            max_sum[i] = rest_max + u * c;
        }
        Ok(BoundedSums { coeffs: coeffs.to_vec(), bounds: bounds.to_vec(), lo, hi, proper, max_sum })
    }

    /// Smallest and largest attainable sums.
    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// Sum of the all-bounds vector.
    pub fn max_sum(&self) -> i64 {
        self.max_sum[0]
    }

    fn proper_contains(&self, from: usize, sum: i64) -> bool {
        sum >= self.lo && sum <= self.hi && self.proper[from].get((sum - self.lo) as usize)
    }

    /// Whether some proper vector (neither zero nor the bounds) sums to `target`.
    pub fn has_proper(&self, target: i64) -> bool {
        self.proper_contains(0, target)
    }

    /// All sums attained by proper vectors, ascending.
    pub fn proper_sums(&self) -> impl Iterator<Item = i64> + '_ {
        self.proper[0].iter_ones().map(move |i| i as i64 + self.lo)
    }

    /// Whether positions `from..n` can be completed to reach `rem`, given that
    /// the prefix is all zero (`zero`) and/or all at its bounds (`full`), so
    /// that the whole vector ends up proper.
    fn completes(&self, from: usize, rem: i64, zero: bool, full: bool) -> bool {
        if from == self.coeffs.len() {
            return rem == 0 && !zero && !full;
        }
        self.proper_contains(from, rem)
            || (rem == 0 && !zero)
            || (rem == self.max_sum[from] && !full)
    }

    /// The lexicographically smallest proper vector summing to `target`.
    pub fn lex_smallest_proper(&self, target: i64) -> Option<Vec<i64>> {
        if !self.has_proper(target) {
            return None;
        }
        let n = self.coeffs.len();
        let mut e = Vec::with_capacity(n);
        let (mut sum, mut zero, mut full) = (0i64, true, true);
        for i in 0..n {
            let (c, u) = (self.coeffs[i], self.bounds[i]);
            let k = (0..=u).find(|&k| {
                self.completes(i + 1, target - sum - k * c, zero && k == 0, full && k == u)
            })?;
            e.push(k);
            sum += k * c;
            zero &= k == 0;
            full &= k == u;
        }
        Some(e)
    }
}
