//! Dense vectors and row-reduced echelon forms over the field with two elements.

use std::fmt;

/// A fixed-length vector over `F_2`, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-reduced echelon form of a subspace of `F_2^dim`.
///
/// Each row's pivot is its first nonzero column, and every pivot column is
/// zero in all other rows. Columns without a pivot index a basis of the
/// quotient `F_2^dim / span`.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, BitVec)>,
    free: Vec<usize>,
    free_index: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize, generators: impl IntoIterator<Item = BitVec>) -> Self {
        let mut rows: Vec<(usize, BitVec)> = Vec::new();
        for mut v in generators {
            assert_eq!(v.len(), dim, "generator length mismatch");
            for (p, r) in &rows {
                if v.get(*p) {
                    v.xor_assign(r);
                }
            }
            let Some(p) = v.first_one() else { continue };
            for (_, r) in &mut rows {
                if r.get(p) {
                    r.xor_assign(&v);
                }
            }
            rows.push((p, v));
        }
        rows.sort_by_key(|(p, _)| *p);
        let mut free_index = vec![None; dim];
        let mut is_pivot = vec![false; dim];
        for (p, _) in &rows {
            is_pivot[*p] = true;
        }
        let free: Vec<usize> = (0..dim).filter(|&c| !is_pivot[c]).collect();
        for (i, &c) in free.iter().enumerate() {
            free_index[c] = Some(i);
        }
        Echelon { dim, rows, free, free_index }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn corank(&self) -> usize {
        self.dim - self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Columns without a pivot, increasing.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// The unique representative of `v + span` vanishing on pivot columns.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
        v
    }

    /// Coordinates of `v + span` in the basis given by the free columns.
    pub fn quotient_coords(&self, v: &BitVec) -> BitVec {
        let reduced = self.reduce(v);
        let mut out = BitVec::zeros(self.free.len());
        for c in reduced.ones() {
            if let Some(i) = self.free_index[c] {
                out.set(i, true);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }
}
