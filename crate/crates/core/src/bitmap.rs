//! Packed composite-flag bitmap, one bit per integer.

/// Fixed-length bitset; a set bit marks its integer composite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositeFlags {
    words: Vec<u64>,
    len: usize,
}

impl CompositeFlags {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} outside bitmap of length {}", self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len, "bit {i} outside bitmap of length {}", self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    pub fn count_set(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of clear bits in ascending order.
    pub fn iter_clear(&self) -> impl Iterator<Item = usize> + '_ {
        let len = self.len;
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut free = !w;
            let base = wi * 64;
            if base + 64 > len {
                let valid = len - base;
                free &= (1u64 << valid) - 1;
            }
            std::iter::from_fn(move || {
                if free == 0 {
                    return None;
                }
                let tz = free.trailing_zeros() as usize;
                free &= free - 1;
                Some(base + tz)
            })
        })
    }

    /// 64 bits starting at bit `off`; bits past the end read as zero.
    fn word_at(&self, off: usize) -> u64 {
        let wi = off >> 6;
        let s = off & 63;
        let lo = self.words.get(wi).copied().unwrap_or(0);
        if s == 0 {
            return lo;
        }
        let hi = self.words.get(wi + 1).copied().unwrap_or(0);
        (lo >> s) | (hi << (64 - s))
    }

    fn trim(&mut self) {
        let tail = self.len & 63;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// Splits into `[0, at)` and `[at, len)`.
    pub fn split_at(&self, at: usize) -> (Self, Self) {
        assert!(at <= self.len);
        let mut head = Self {
            words: self.words[..at.div_ceil(64)].to_vec(),
            len: at,
        };
        head.trim();
        let tail_len = self.len - at;
        let mut tail = Self {
            words: (0..tail_len.div_ceil(64))
                .map(|k| self.word_at(at + k * 64))
                .collect(),
            len: tail_len,
        };
        tail.trim();
        (head, tail)
    }

    /// Appends all bits of `other` after the bits of `self`.
    pub fn append(&mut self, other: &Self) {
        let s = self.len & 63;
        if s == 0 {
            self.words.extend_from_slice(&other.words);
        } else {
            for &w in &other.words {
                *self.words.last_mut().expect("non-empty when len%64 != 0") |= w << s;
                self.words.push(w >> (64 - s));
            }
        }
        self.len += other.len;
        self.words.truncate(self.len.div_ceil(64));
        self.trim();
    }
}
