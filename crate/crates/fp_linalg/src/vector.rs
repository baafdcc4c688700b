use std::fmt;

const BITS: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(BITS)
}

/// A vector over GF(2), bit-packed into 64-bit words.
///
/// Bits past `len` in the final word are always zero, so word-level equality
/// and hashing agree with mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FVector {
    len: usize,
    words: Vec<u64>,
}

impl FVector {
    pub fn new(len: usize) -> Self {
        Self { len, words: vec![0; word_count(len)] }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::new(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from raw words; bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(word_count(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    /// The vector with a single one at position `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::new(len);
        v.set(i, true);
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    fn clear_tail(&mut self) {
        let r = self.len % BITS;
        if r != 0 {
            if let Some(w) = self.words.last_mut() {
                *w &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "index {i} out of bounds for length {}", self.len);
        (self.words[i / BITS] >> (i % BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len, "index {i} out of bounds for length {}", self.len);
        let mask = 1u64 << (i % BITS);
        if value {
            self.words[i / BITS] |= mask;
        } else {
            self.words[i / BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / BITS] ^= 1u64 << (i % BITS);
    }

    pub fn set_zero(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `self += other`. Both vectors must have the same length.
    #[inline]
    pub fn add_assign(&mut self, other: &FVector) {
        assert_eq!(self.len, other.len, "length mismatch in vector addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Adds `other` into the bits `offset .. offset + other.len()` of `self`.
    pub fn add_shifted(&mut self, other: &FVector, offset: usize) {
        assert!(offset + other.len <= self.len, "shifted add out of bounds: {} + {} > {}", offset, other.len, self.len);
        if other.len == 0 {
            return;
        }
        let word_off = offset / BITS;
        let bit_off = offset % BITS;
        if bit_off == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[word_off + i] ^= w;
            }
        } else {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[word_off + i] ^= w << bit_off;
                let hi = w >> (BITS - bit_off);
                if hi != 0 {
                    self.words[word_off + i + 1] ^= hi;
                }
            }
        }
    }

    /// The bits `start .. end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> FVector {
        assert!(start <= end && end <= self.len);
        let len = end - start;
        let mut out = FVector::new(len);
        if len == 0 {
            return out;
        }
        let word_off = start / BITS;
        let bit_off = start % BITS;
        for i in 0..out.words.len() {
            let lo = self.words[word_off + i] >> bit_off;
            let hi = if bit_off != 0 && word_off + i + 1 < self.words.len() {
                self.words[word_off + i + 1] << (BITS - bit_off)
            } else {
                0
            };
            out.words[i] = lo | hi;
        }
        out.clear_tail();
        out
    }

    /// Whether the bits `start .. end` are all zero.
    pub fn is_zero_range(&self, start: usize, end: usize) -> bool {
        match self.next_one(start) {
            Some(i) => i >= end,
            None => true,
        }
    }

    /// Extends the vector with zeros (or truncates it) to `len`.
    pub fn resize(&mut self, len: usize) {
        self.len = len;
        self.words.resize(word_count(len), 0);
        self.clear_tail();
    }

    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// First one at a position `>= from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / BITS;
        let mut w = self.words[wi] & (!0u64 << (from % BITS));
        loop {
            if w != 0 {
                return Some(wi * BITS + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * BITS + b)
                }
            })
        })
    }

    pub fn dot(&self, other: &FVector) -> bool {
        assert_eq!(self.len, other.len);
        let c: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        c % 2 == 1
    }

    /// Coordinatewise product.
    pub fn and(&self, other: &FVector) -> FVector {
        assert_eq!(self.len, other.len);
        FVector { len: self.len, words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    /// Adds `(olo, ohi)` into `(lo, hi)` as vectors over Z/4 stored in two bit
    /// planes (value = lo + 2·hi).
    pub fn add_mod4(lo: &mut FVector, hi: &mut FVector, olo: &FVector, ohi: &FVector) {
        assert!(lo.len == hi.len && lo.len == olo.len && lo.len == ohi.len, "length mismatch in Z/4 addition");
        for i in 0..lo.words.len() {
            let carry = lo.words[i] & olo.words[i];
            lo.words[i] ^= olo.words[i];
            hi.words[i] ^= ohi.words[i] ^ carry;
        }
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &FVector) -> FVector {
        let mut out = self.clone();
        out.resize(self.len + other.len);
        out.add_shifted(other, self.len);
        out
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::AddAssign<&FVector> for FVector {
    fn add_assign(&mut self, rhs: &FVector) {
        FVector::add_assign(self, rhs);
    }
}
