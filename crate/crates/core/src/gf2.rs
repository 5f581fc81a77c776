//! Dense linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words. Coordinates are 0-based here;
//! the text formats elsewhere in the crate print them 1-based (`x1` is
//! coordinate 0).

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector in GF(2)^len. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
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

    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "coordinate {index} out of range {}",
            self.len
        );
        self.words[index / WORD] >> (index % WORD) & 1 == 1
    }

    pub fn set(&mut self, index: usize, bit: bool) {
        assert!(
            index < self.len,
            "coordinate {index} out of range {}",
            self.len
        );
        let mask = 1u64 << (index % WORD);
        if bit {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(
            index < self.len,
            "coordinate {index} out of range {}",
            self.len
        );
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest nonzero coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Clears every coordinate that is set in `mask`.
    pub fn clear_masked(&mut self, mask: &Gf2Vector) {
        debug_assert_eq!(self.len, mask.len);
        for (w, m) in self.words.iter_mut().zip(&mask.words) {
            *w &= !m;
        }
    }

    pub fn and(&self, other: &Gf2Vector) -> Gf2Vector {
        debug_assert_eq!(self.len, other.len);
        Gf2Vector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn check_len(&self, other: &Gf2Vector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::Dimension {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }
}

impl BitXorAssign<&Gf2Vector> for Gf2Vector {
    fn bitxor_assign(&mut self, rhs: &Gf2Vector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&Gf2Vector> for &Gf2Vector {
    type Output = Gf2Vector;

    fn bitxor(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}

/// A matrix over GF(2) stored as a list of equal-length rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize) -> Self {
        Gf2Matrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Gf2Matrix {
            ncols,
            rows: vec![Gf2Vector::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            ncols: n,
            rows: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Dimension {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Gf2Matrix { ncols, rows })
    }

    /// Builds a matrix from 0/1 entries given row by row.
    pub fn from_bits(bits: &[Vec<u8>]) -> Result<Self> {
        let ncols = bits.first().map_or(0, Vec::len);
        let rows = bits
            .iter()
            .map(|row| {
                if row.len() != ncols {
                    return Err(Error::Dimension {
                        expected: ncols,
                        found: row.len(),
                    });
                }
                Ok(Gf2Vector::from_indices(
                    ncols,
                    row.iter()
                        .enumerate()
                        .filter(|(_, &b)| b != 0)
                        .map(|(i, _)| i),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Gf2Matrix { ncols, rows })
    }

    pub fn push_row(&mut self, row: Gf2Vector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::Dimension {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &Gf2Vector {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.rows[r].set(c, bit)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut out = Gf2Matrix::zeros(self.ncols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank_of(self.rows.iter().cloned())
    }

    /// Reduced row-echelon form and the pivot columns, ascending.
    ///
    /// The result keeps the input shape: nonzero rows first in pivot order,
    /// zero rows after.
    pub fn row_reduce(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        (
            Gf2Matrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.nrows(), self.ncols)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Forward elimination keyed on each row's lowest set bit.
fn rank_of<I: IntoIterator<Item = Gf2Vector>>(rows: I) -> usize {
    let mut basis = EchelonBasis::default();
    for row in rows {
        basis.insert(row);
    }
    basis.len()
}

/// An incrementally built echelon basis: every stored vector has a distinct
/// lowest set bit, so membership tests are a single reduction pass.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Gf2Vector)>,
}

impl EchelonBasis {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: Gf2Vector) -> Gf2Vector {
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v ^= row;
            }
        }
        v
    }

    /// Adds `v` to the basis. Returns false if it was already in the span.
    pub fn insert(&mut self, v: Gf2Vector) -> bool {
        let v = self.reduce(v);
        match v.first_one() {
            None => false,
            Some(pivot) => {
                // keep every stored row clear of the new pivot so reduce() is one pass
                for (_, row) in self.rows.iter_mut() {
                    if row.get(pivot) {
                        *row ^= &v;
                    }
                }
                self.rows.push((pivot, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

/// True iff `target` is a GF(2) combination of `basis`.
pub fn in_span(target: &Gf2Vector, basis: &[Gf2Vector]) -> Result<bool> {
    let mut echelon = EchelonBasis::default();
    for b in basis {
        target.check_len(b)?;
        echelon.insert(b.clone());
    }
    Ok(echelon.contains(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(len: usize, ones: &[usize]) -> Gf2Vector {
        Gf2Vector::from_indices(len, ones.iter().copied())
    }

    #[test]
    fn identity_has_full_rank() {
        assert_eq!(Gf2Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn all_ones_has_rank_one() {
        let m = Gf2Matrix::from_bits(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn fitting_matrix_of_seven_vertex_graph() {
        // diagonal ones plus the adjacency pattern of the 7-vertex example;
        // rank frozen from an independent elimination (rows 6 and 7 coincide)
        let adj = [
            [0, 1, 1, 0, 1, 0, 0],
            [0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 0, 0],
            [0, 0, 1, 1, 0, 1, 0],
            [0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 1, 0],
        ];
        let bits: Vec<Vec<u8>> = (0..7)
            .map(|i| (0..7).map(|j| if i == j { 1 } else { adj[i][j] }).collect())
            .collect();
        assert_eq!(Gf2Matrix::from_bits(&bits).unwrap().rank(), 6);
    }

    #[test]
    fn empty_matrix_rank_zero() {
        assert_eq!(Gf2Matrix::new(5).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn span_membership() {
        assert!(in_span(&Gf2Vector::zeros(3), &[]).unwrap());
        assert!(in_span(&v(3, &[0]), &[v(3, &[0, 1]), v(3, &[1])]).unwrap());
        assert!(!in_span(&v(3, &[0]), &[v(3, &[1]), v(3, &[2])]).unwrap());
    }

    #[test]
    fn span_length_mismatch() {
        let err = in_span(&v(3, &[0]), &[v(4, &[0])]).unwrap_err();
        assert_eq!(
            err,
            Error::Dimension {
                expected: 3,
                found: 4
            }
        );
    }

    #[test]
    fn row_reduce_cases() {
        let (z, p) = Gf2Matrix::zeros(3, 3).row_reduce();
        assert_eq!(z, Gf2Matrix::zeros(3, 3));
        assert!(p.is_empty());

        let (i, p) = Gf2Matrix::identity(4).row_reduce();
        assert_eq!(i, Gf2Matrix::identity(4));
        assert_eq!(p, vec![0, 1, 2, 3]);

        let m = Gf2Matrix::from_rows(2, vec![v(2, &[0, 1]), v(2, &[1])]).unwrap();
        let (r, p) = m.row_reduce();
        assert_eq!(r, Gf2Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn vector_basics() {
        let a = v(70, &[0, 65, 69]);
        assert_eq!(a.support(), vec![0, 65, 69]);
        assert_eq!(a.weight(), 3);
        assert!((&a ^ &a).is_zero());
        assert_eq!(v(70, &[66]).first_one(), Some(66));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Gf2Matrix::from_rows(3, vec![v(3, &[0]), v(2, &[0])]).is_err());
        let mut m = Gf2Matrix::new(3);
        assert!(m.push_row(v(4, &[])).is_err());
    }
}
