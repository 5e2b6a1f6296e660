//! Fixed-length bitsets over `[0, N]` and word-level shifted-OR sumsets.

use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    /// A bitset for the integers `0..len`.
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_values(len: usize, values: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bitset::new(len);
        for v in values {
            if v < len {
                b.set(v);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| !self.get(i))
    }

    fn trim(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// `{a + s : a ∈ self, s ∈ shifts} ∩ [0, len)`.
    ///
    /// The output words are split into `shards` contiguous ranges that are
    /// filled independently, so the result does not depend on `shards`.
    pub fn sumset(&self, shifts: &[usize], shards: usize) -> Bitset {
        let mut out = Bitset::new(self.len);
        let nwords = out.words.len();
        let shards = shards.clamp(1, nwords.max(1));
        let chunk = nwords.div_ceil(shards).max(1);
        let src = &self.words;
        out.words
            .par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(ci, dst)| {
                let base = ci * chunk;
                for &s in shifts {
                    if s >= self.len {
                        continue;
                    }
                    let (q, r) = (s / 64, (s % 64) as u32);
                    let start = base.max(q);
                    for i in start..base + dst.len() {
                        let lo = src[i - q];
                        let mut w = lo << r;
                        if r != 0 && i > q {
                            w |= src[i - q - 1] >> (64 - r);
                        }
                        dst[i - base] |= w;
                    }
                }
            });
        out.trim();
        out
    }
}

/// Sumset `V₁ + V₂ + … ∩ [0, limit]` of value lists, each containing only
/// nonnegative entries.
pub fn sumset_of(value_sets: &[Vec<usize>], limit: usize, shards: usize) -> Bitset {
    let len = limit + 1;
    let Some((first, rest)) = value_sets.split_first() else {
        return Bitset::from_values(len, [0]);
    };
    let mut acc = Bitset::from_values(len, first.iter().copied());
    for vals in rest {
        acc = acc.sumset(vals, shards);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
        let mut v: Vec<usize> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x + y))
            .filter(|&s| s < len)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn small_sumset() {
        let a = Bitset::from_values(20, [0, 1, 3, 6, 10, 15]);
        let s = a.sumset(&[0, 2, 7], 3);
        assert_eq!(s.ones().collect::<Vec<_>>(), naive(&[0, 1, 3, 6, 10, 15], &[0, 2, 7], 20));
    }

    proptest! {
        #[test]
        fn sumset_matches_naive(
            len in 1usize..600,
            a in proptest::collection::vec(0usize..600, 0..40),
            b in proptest::collection::vec(0usize..700, 0..40),
            shards in 1usize..20,
        ) {
            let bs = Bitset::from_values(len, a.iter().copied());
            let a_in: Vec<usize> = a.iter().copied().filter(|&x| x < len).collect();
            let got: Vec<usize> = bs.sumset(&b, shards).ones().collect();
            prop_assert_eq!(got, naive(&a_in, &b, len));
        }
    }
}
