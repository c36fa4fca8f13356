//! Dense exact matrices, fraction-free elimination and reduced row echelon
//! forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Multiplies every row by the lcm of its entries' denominators, so all
    /// entries become (Gaussian) integers.
    fn clear_denominators(&mut self) {
        for r in 0..self.rows {
            let lcm = self
                .row(r)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator_lcm()));
            if lcm.is_one() {
                continue;
            }
            let k = Scalar::from_bigint(lcm);
            for c in 0..self.cols {
                let i = r * self.cols + c;
                if !self.data[i].is_zero() {
                    self.data[i] = &self.data[i] * &k;
                }
            }
        }
    }

    /// Bareiss fraction-free forward elimination. Returns the pivot columns;
    /// the first `pivots.len()` rows are in (non-reduced) echelon form and the
    /// rest are zero.
    fn bareiss_forward(&mut self) -> Vec<usize> {
        self.clear_denominators();
        let mut prev = Scalar::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let lead = self.get(i, c).clone();
                for j in c + 1..self.cols {
                    let a = self.get(i, j);
                    let b = self.get(r, j);
                    if a.is_zero() && (lead.is_zero() || b.is_zero()) {
                        continue;
                    }
                    let mut v = &pivot * a;
                    if !lead.is_zero() && !b.is_zero() {
                        v = &v - &(&lead * b);
                    }
                    if !prev.is_one() {
                        v = &v / &prev;
                    }
                    self.set(i, j, v);
                }
                self.set(i, c, Scalar::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form: fraction-free forward pass, then a
    /// normalizing backward pass (leading ones, zeros above pivots).
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.bareiss_forward();
        let rank = pivots.len();
        for (r, &c) in pivots.iter().enumerate() {
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                if !m.get(r, j).is_zero() {
                    let v = m.get(r, j) * &inv;
                    m.set(r, j, v);
                }
            }
        }
        for (r, &c) in pivots.iter().enumerate().rev() {
            for above in 0..r {
                let f = m.get(above, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let b = m.get(r, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(above, j) - &(&f * b);
                    m.set(above, j, v);
                }
            }
        }
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss_forward().len()
    }

    /// A basis of `{v : M v = 0}`, one vector per free column, in RREF
    /// parameterization (free coordinate 1, other free coordinates 0).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &p) in rref.pivots.iter().enumerate() {
                let e = rref.matrix.get(r, free);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A matrix in reduced row echelon form with no zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.matrix.rows()).map(|r| self.matrix.row(r).to_vec()).collect()
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.matrix.cols());
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate().skip(p) {
                let b = self.matrix.get(r, j);
                if !b.is_zero() {
                    *wj = &*wj - &(&f * b);
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }
}

/// Canonical echelon basis of the span of `vectors` in `Q(i)^cols`.
pub fn echelonize(cols: usize, vectors: &[Vec<Scalar>]) -> Rref {
    Matrix::from_rows(cols, vectors.to_vec()).rref()
}
