//! Dense matrices over F_2, stored one byte per entry. Desk-scale plumbing
//! for parity checks, generator matrices, and the McEliece scrambler.

/// A rows x cols matrix over F_2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u8>>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BinMatrix {
        BinMatrix {
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> BinMatrix {
        let mut m = BinMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<u8>>) -> BinMatrix {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        assert!(
            data.iter().flatten().all(|&b| b <= 1),
            "entries must be bits"
        );
        BinMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i][j] = v & 1;
    }

    /// v^T · M for a row vector v of length `rows`.
    pub fn row_vec_mul(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u8; self.cols];
        for (i, &b) in v.iter().enumerate() {
            if b != 0 {
                for (o, &m) in out.iter_mut().zip(&self.data[i]) {
                    *o ^= m;
                }
            }
        }
        out
    }

    /// M · w^T for a column vector w of length `cols`.
    pub fn mul_vec(&self, w: &[u8]) -> Vec<u8> {
        assert_eq!(w.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(w).fold(0u8, |acc, (&a, &b)| acc ^ (a & b)))
            .collect()
    }

    pub fn mul(&self, other: &BinMatrix) -> BinMatrix {
        assert_eq!(self.cols, other.rows);
        let data = self.data.iter().map(|row| other.row_vec_mul(row)).collect();
        BinMatrix::from_rows(data)
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.data[i][c] == 1) else {
                continue;
            };
            self.data.swap(r, p);
            let pivot_row = self.data[r].clone();
            for (i, row) in self.data.iter_mut().enumerate() {
                if i != r && row[c] == 1 {
                    for (d, &s) in row.iter_mut().zip(&pivot_row) {
                        *d ^= s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref().len()
    }

    /// Canonical null-space basis from the RREF: one vector per free column,
    /// with a 1 at that free column and the matching pivot-row entries copied
    /// in. Returns (basis matrix, free column indices), rows sorted by free
    /// column.
    pub fn null_space(&self) -> (BinMatrix, Vec<usize>) {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u8; self.cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = reduced.data[row][fc];
            }
            basis.push(v);
        }
        (
            BinMatrix {
                rows: basis.len(),
                cols: self.cols,
                data: basis,
            },
            free,
        )
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BinMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = BinMatrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.data[i][..n].copy_from_slice(&self.data[i]);
            aug.data[i][n + i] = 1;
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let data = aug.data.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(BinMatrix {
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut out = BinMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j];
            }
        }
        out
    }
}

pub fn weight(bits: &[u8]) -> usize {
    bits.iter().filter(|&&b| b != 0).count()
}

pub fn xor_words(a: &[u8], b: &[u8]) -> Vec<u8> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x ^ y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> BinMatrix {
        BinMatrix::from_rows(
            (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..2u8)).collect())
                .collect(),
        )
    }

    #[test]
    fn null_space_annihilates() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = random_matrix(5, 9, &mut rng);
            let (basis, free) = m.null_space();
            assert_eq!(basis.rows(), 9 - m.rank());
            assert_eq!(basis.rows(), free.len());
            for i in 0..basis.rows() {
                assert!(m.mul_vec(basis.row(i)).iter().all(|&b| b == 0));
            }
            // Basis rows are independent: each has a lone 1 among free columns.
            for i in 0..free.len() {
                for j in 0..free.len() {
                    assert_eq!(basis.get(i, free[j]), (i == j) as u8);
                }
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut found = 0;
        while found < 10 {
            let m = random_matrix(6, 6, &mut rng);
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv), BinMatrix::identity(6));
                assert_eq!(inv.mul(&m), BinMatrix::identity(6));
                found += 1;
            }
        }
        let singular = BinMatrix::zeros(3, 3);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn rref_rank_of_identity() {
        assert_eq!(BinMatrix::identity(4).rank(), 4);
        assert_eq!(BinMatrix::zeros(3, 5).rank(), 0);
    }
}
