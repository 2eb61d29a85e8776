//! Dense bit matrices over GF(2) with row reduction.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        for k in 0..self.words {
            let v = self.data[src * self.words + k];
            self.data[dst * self.words + k] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Column indices of the set bits in row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.get(r, c)).collect()
    }

    /// Reduced row echelon form in place. Pivot columns are scanned left to
    /// right and each pivot is taken from the lowest-index eligible row.
    /// Every row operation is applied to `companion` as well (if given),
    /// which lets a caller track the transform. Returns the pivot columns.
    pub fn rref(&mut self, mut companion: Option<&mut BitMatrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            if let Some(m) = companion.as_deref_mut() {
                m.swap_rows(r, p);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.add_row(r, i);
                    if let Some(m) = companion.as_deref_mut() {
                        m.add_row(r, i);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref(None).len()
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..out.words {
                        out.data[i * out.words + w] ^= other.data[k * other.words + w];
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, rng.gen_bool(0.5));
            }
        }
        m
    }

    #[test]
    fn rref_transform_reproduces_the_reduced_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..8), rng.gen_range(1..70));
            let m = random(&mut rng, r, c);
            let mut red = m.clone();
            let mut t = BitMatrix::identity(r);
            let piv = red.rref(Some(&mut t));
            assert_eq!(t.mul(&m), red);
            for (i, &pc) in piv.iter().enumerate() {
                for k in 0..r {
                    assert_eq!(red.get(k, pc), k == i);
                }
            }
            for k in piv.len()..r {
                assert_eq!(red.row_weight(k), 0);
            }
        }
    }

    #[test]
    fn rank_of_identity_and_duplicate_rows() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        let mut m = BitMatrix::zeros(3, 4);
        for c in [0, 2] {
            m.set(0, c, true);
            m.set(1, c, true);
        }
        m.set(2, 3, true);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_matches_exhaustive_span_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let m = random(&mut rng, r, c);
            let mut span = std::collections::HashSet::new();
            for mask in 0..1u32 << r {
                let v: Vec<bool> = (0..c)
                    .map(|j| (0..r).filter(|&i| mask >> i & 1 == 1 && m.get(i, j)).count() % 2 == 1)
                    .collect();
                span.insert(v);
            }
            assert_eq!(1usize << m.rank(), span.len());
        }
    }
}
