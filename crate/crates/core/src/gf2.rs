//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are packed into 64-bit words; bits past `cols` are always zero.
//! Elimination pivots on the lowest set bit of each row, which makes every
//! reduction deterministic.

use crate::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A packed vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.toggle(i);
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
        assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        set_bits(&self.words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

fn set_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                wi * WORD + b
            })
        })
    })
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Row-major packed matrix over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors of length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            m.row_words_mut(i).copy_from_slice(&r.words);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    /// Adds row `src` into row `dst`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        if src == dst {
            self.row_words_mut(dst).fill(0);
            return;
        }
        let src_row = self.row_words(src).to_vec();
        xor_into(self.row_words_mut(dst), &src_row);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in set_bits(self.row_words(r)) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// `self · other`, i.e. row `i` of the result is the sum of the rows of
    /// `other` selected by row `i` of `self`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let (lo, hi) = (r * out.stride, (r + 1) * out.stride);
            for k in set_bits(self.row_words(r)) {
                xor_into(&mut out.data[lo..hi], other.row_words(k));
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: the sum of the rows selected by `v`.
    pub fn left_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.cols);
        for k in v.ones() {
            xor_into(&mut out.words, self.row_words(k));
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(self.row_words(r));
        }
        e.rank()
    }
}

/// Incrementally built echelon basis of a row space.
///
/// Each stored row has a distinct pivot (its lowest set bit) and no bits below
/// it, so reducing a vector strictly raises its lowest set bit at every step.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    pivot_row: Vec<Option<u32>>,
    basis: Vec<Vec<u64>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            pivot_row: vec![None; cols],
            basis: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut e = Self::new(m.cols());
        for r in 0..m.rows() {
            e.insert(m.row_words(r));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    // Reduces `row` in place; returns the pivot of the remainder, if nonzero.
    fn reduce_words(&self, row: &mut [u64]) -> Option<usize> {
        let mut start = 0;
        loop {
            let wi = (start..row.len()).find(|&i| row[i] != 0)?;
            start = wi;
            let col = wi * WORD + row[wi].trailing_zeros() as usize;
            match self.pivot_row[col] {
                Some(b) => xor_into(&mut row[wi..], &self.basis[b as usize][wi..]),
                None => return Some(col),
            }
        }
    }

    /// Adds a row to the span; returns whether it was independent.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        let mut row = row.to_vec();
        match self.reduce_words(&mut row) {
            Some(col) => {
                self.pivot_row[col] = Some(self.basis.len() as u32);
                self.basis.push(row);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut row = v.words.clone();
        self.reduce_words(&mut row).is_none()
    }
}

/// Dimension of the image of `row-space(v)` in the quotient by
/// `row-space(w)`: `rank(stack(v, w)) − rank(w)`.
pub fn rank_of_span_in_quotient(v: &BitMatrix, w: &BitMatrix) -> Result<usize> {
    if v.cols() != w.cols() {
        return Err(Error::DimensionMismatch {
            expected: w.cols(),
            actual: v.cols(),
        });
    }
    let mut e = Echelon::from_matrix(w);
    let base = e.rank();
    for r in 0..v.rows() {
        e.insert(v.row_words(r));
    }
    Ok(e.rank() - base)
}

/// Whether `v` lies in the row space of `w`.
pub fn solve_membership(v: &BitVector, w: &BitMatrix) -> Result<bool> {
    if v.len() != w.cols() {
        return Err(Error::DimensionMismatch {
            expected: w.cols(),
            actual: v.len(),
        });
    }
    Ok(Echelon::from_matrix(w).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random(rows: usize, cols: usize, density: f64, rng: &mut StdRng) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(density) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    // Textbook elimination on a Vec<Vec<bool>> copy; independent of Echelon.
    fn naive_rank(m: &BitMatrix) -> usize {
        let mut a: Vec<Vec<bool>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| a[r][c]) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && a[r][c] {
                    let pivot = a[rank].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        assert_eq!(BitMatrix::zeros(3, 7).rank(), 0);
        // Disc, three points: both 5-cells have boundary (3).
        let mut d = BitMatrix::zeros(2, 1);
        d.set(0, 0, true);
        d.set(1, 0, true);
        assert_eq!(d.rank(), 1);
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn quotient_rank_examples() {
        let id = BitMatrix::identity(2);
        assert_eq!(rank_of_span_in_quotient(&id, &BitMatrix::zeros(0, 2)), Ok(2));
        assert_eq!(rank_of_span_in_quotient(&id, &id), Ok(0));
        let v = BitMatrix::from_rows(3, &[BitVector::from_indices(3, [0, 1])]).unwrap();
        let w = BitMatrix::from_rows(3, &[BitVector::unit(3, 1)]).unwrap();
        assert_eq!(rank_of_span_in_quotient(&v, &w), Ok(1));
        assert!(rank_of_span_in_quotient(&v, &BitMatrix::zeros(1, 4)).is_err());
    }

    #[test]
    fn membership_examples() {
        let w = BitMatrix::from_rows(3, &[BitVector::unit(3, 1)]).unwrap();
        assert_eq!(solve_membership(&BitVector::zeros(3), &w), Ok(true));
        assert_eq!(solve_membership(&BitVector::unit(3, 0), &w), Ok(false));
        let w = BitMatrix::from_rows(3, &[BitVector::unit(3, 0), BitVector::unit(3, 1)]).unwrap();
        assert_eq!(solve_membership(&BitVector::from_indices(3, [0, 1]), &w), Ok(true));
        assert!(solve_membership(&BitVector::zeros(2), &w).is_err());
    }

    #[test]
    fn rank_agrees_with_naive_and_transpose() {
        let mut rng = StdRng::seed_from_u64(7);
        for &(r, c, d) in &[
            (1, 1, 0.5),
            (10, 70, 0.3),
            (65, 64, 0.5),
            (130, 90, 0.05),
            (512, 512, 0.5),
            (300, 200, 0.01),
        ] {
            let m = random(r, c, d, &mut rng);
            let rank = m.rank();
            assert_eq!(rank, m.transpose().rank());
            assert!(rank <= r.min(c));
            if r * c <= 20_000 {
                assert_eq!(rank, naive_rank(&m));
            }
        }
    }

    #[test]
    fn rank_invariant_under_row_operations() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let mut m = random(40, 100, 0.1, &mut rng);
            let rank = m.rank();
            let (a, b) = (rng.gen_range(0..40), rng.gen_range(0..40));
            m.swap_rows(a, b);
            assert_eq!(m.rank(), rank);
            if a != b {
                m.add_row(a, b);
                assert_eq!(m.rank(), rank);
            }
        }
    }

    #[test]
    fn rank_leaves_input_untouched() {
        let mut rng = StdRng::seed_from_u64(3);
        let m = random(50, 50, 0.3, &mut rng);
        let copy = m.clone();
        let _ = m.rank();
        assert_eq!(m, copy);
    }

    #[test]
    fn padding_bits_stay_zero() {
        let mut rng = StdRng::seed_from_u64(5);
        let m = random(20, 70, 0.5, &mut rng);
        for r in 0..m.rows() {
            assert_eq!(m.row_words(r)[1] >> 6, 0);
        }
        let t = m.transpose().transpose();
        assert_eq!(t, m);
    }

    #[test]
    fn product_matches_entrywise_definition() {
        let mut rng = StdRng::seed_from_u64(13);
        let a = random(9, 70, 0.3, &mut rng);
        let b = random(70, 5, 0.3, &mut rng);
        let p = a.mul(&b).unwrap();
        for i in 0..9 {
            for j in 0..5 {
                let e = (0..70).filter(|&k| a.get(i, k) && b.get(k, j)).count() % 2 == 1;
                assert_eq!(p.get(i, j), e);
            }
        }
        let v = a.row(2);
        assert_eq!(b.left_mul(&v).unwrap(), p.row(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
            (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
                proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                    let mut m = BitMatrix::zeros(r, c);
                    for (i, b) in bits.into_iter().enumerate() {
                        m.set(i / c, i % c, b);
                    }
                    m
                })
            })
        }

        proptest! {
            #[test]
            fn quotient_rank_identity(v in matrix(12, 80), w_rows in 1usize..12, seed in any::<u64>()) {
                let mut rng = StdRng::seed_from_u64(seed);
                let w = random(w_rows, v.cols(), 0.2, &mut rng);
                let q = rank_of_span_in_quotient(&v, &w).unwrap();
                prop_assert_eq!(q + w.rank(), v.stack(&w).unwrap().rank());
            }

            #[test]
            fn rows_are_members_of_their_span(m in matrix(10, 90)) {
                for r in 0..m.rows() {
                    prop_assert!(solve_membership(&m.row(r), &m).unwrap());
                }
                prop_assert_eq!(m.rank(), naive_rank(&m));
            }
        }
    }
}
