//! Packed bit rows indexed by canonical agent position.
//!
//! Profiles, groups, and adjacency rows all share this representation so
//! that tallies reduce to masked popcounts. Invariant: bits at positions
//! >= `nbits` are zero, which makes `Eq`/`Hash` structural.

use smallvec::SmallVec;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct Bits {
    words: SmallVec<[u64; 2]>,
    nbits: usize,
}

impl Bits {
    pub fn zeros(nbits: usize) -> Self {
        Bits {
            words: smallvec::smallvec![0; nbits.div_ceil(WORD)],
            nbits,
        }
    }

    pub fn ones(nbits: usize) -> Self {
        let mut b = Bits::zeros(nbits);
        for w in b.words.iter_mut() {
            *w = u64::MAX;
        }
        b.clear_tail();
        b
    }

    pub fn from_fn(nbits: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut b = Bits::zeros(nbits);
        for i in 0..nbits {
            if f(i) {
                b.set(i, true);
            }
        }
        b
    }

    /// Low `nbits` of `mask`, bit i = position i. Only valid for rows that
    /// fit one word; exhaustive sweeps are capped well below 64 agents.
    pub fn from_mask(mask: u64, nbits: usize) -> Self {
        debug_assert!(nbits <= WORD);
        let mut b = Bits::zeros(nbits);
        if !b.words.is_empty() {
            b.words[0] = mask;
        }
        b.clear_tail();
        b
    }

    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.nbits
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.nbits);
        let w = &mut self.words[i / WORD];
        if v {
            *w |= 1 << (i % WORD);
        } else {
            *w &= !(1 << (i % WORD));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// |self AND other|, the workhorse behind neighborhood tallies.
    pub fn and_count(&self, other: &Bits) -> usize {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Pointwise complement within the first `nbits` positions.
    pub fn complement(&self) -> Bits {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    /// Set inclusion, which on belief rows is the pointwise order.
    pub fn le(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Positions from `target` where `group` is set, from `self` elsewhere.
    pub fn blend(&self, target: &Bits, group: &Bits) -> Bits {
        debug_assert_eq!(self.nbits, target.nbits);
        debug_assert_eq!(self.nbits, group.nbits);
        let mut out = self.clone();
        for ((w, t), g) in out.words.iter_mut().zip(&target.words).zip(&group.words) {
            *w = (*w & !g) | (t & g);
        }
        out
    }


    pub fn without(&self, i: usize) -> Bits {
        let mut out = self.clone();
        out.set(i, false);
        out
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nbits).filter(|&i| self.get(i))
    }

    fn clear_tail(&mut self) {
        let used = self.nbits % WORD;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.nbits == 0 {
            self.words.clear();
        }
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.nbits {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
