use super::field::{FieldElem, GaloisField};

/// Dense row-major matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Reduced row echelon form plus pivot columns (one per nonzero row, increasing).
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: FqMatrix,
    pub pivots: Vec<usize>,
}

/// Output of [`FqMatrix::analyze`].
#[derive(Clone, Debug)]
pub struct Analysis {
    pub rank: usize,
    pub solution: Option<Vec<FieldElem>>,
    pub nullspace: Vec<Vec<FieldElem>>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        FqMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, f: &GaloisField, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    /// Gauss-Jordan elimination restricted to the first `limit` columns.
    ///
    /// Columns are scanned left to right; the pivot is the first remaining row
    /// (top-down) with a nonzero entry in the current column.
    fn reduce_cols(&self, f: &GaloisField, limit: usize) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..limit {
            if next == m.rows {
                break;
            }
            let Some(pr) = (next..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pr != next {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, next * m.cols + c);
                }
            }
            let inv = f.inv(m.get(next, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(next, c), inv);
                m.set(next, c, v);
            }
            for r in 0..m.rows {
                if r == next {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for c in col..m.cols {
                    let v = f.mul_add(m.get(r, c), neg, m.get(next, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            next += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn row_reduce(&self, f: &GaloisField) -> Echelon {
        self.reduce_cols(f, self.cols)
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        self.row_reduce(f).pivots.len()
    }

    /// Basis of {v : Mv = 0}, one vector per free column in increasing order,
    /// with a 1 at that column and zeros at the other free columns.
    pub fn nullspace_basis(&self, f: &GaloisField) -> Vec<Vec<FieldElem>> {
        let ech = self.row_reduce(f);
        nullspace_from_echelon(f, &ech, self.cols)
    }

    /// A solution of Mx = c with every free variable set to zero, or `None`.
    pub fn solve(&self, f: &GaloisField, c: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(c.len(), self.rows, "right-hand side length");
        let mut aug = FqMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, c[i]);
        }
        let ech = aug.reduce_cols(f, self.cols);
        let rank = ech.pivots.len();
        if (rank..self.rows).any(|r| !ech.rref.get(r, self.cols).is_zero()) {
            return None;
        }
        let mut x = vec![FieldElem::ZERO; self.cols];
        for (r, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.rref.get(r, self.cols);
        }
        Some(x)
    }

    /// One elimination of [M | c]: rank, the particular solution (if consistent)
    /// and the nullspace basis of M.
    pub fn analyze(&self, f: &GaloisField, c: &[FieldElem]) -> Analysis {
        assert_eq!(c.len(), self.rows, "right-hand side length");
        let mut aug = FqMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, c[i]);
        }
        let ech = aug.reduce_cols(f, self.cols);
        let rank = ech.pivots.len();
        let consistent = (rank..self.rows).all(|r| ech.rref.get(r, self.cols).is_zero());
        let solution = consistent.then(|| {
            let mut x = vec![FieldElem::ZERO; self.cols];
            for (r, &pc) in ech.pivots.iter().enumerate() {
                x[pc] = ech.rref.get(r, self.cols);
            }
            x
        });
        let nullspace = nullspace_from_echelon(f, &ech, self.cols);
        Analysis { rank, solution, nullspace }
    }

    /// Whether `b` is orthogonal to every vector of the nullspace, i.e. lies in
    /// the row space.
    pub fn perp_to_nullspace(&self, f: &GaloisField, b: &[FieldElem]) -> bool {
        assert_eq!(b.len(), self.cols, "vector length");
        self.nullspace_basis(f).iter().all(|v| dot(f, v, b).is_zero())
    }
}

pub(crate) fn nullspace_from_echelon(
    f: &GaloisField,
    ech: &Echelon,
    cols: usize,
) -> Vec<Vec<FieldElem>> {
    let mut is_pivot = vec![false; cols];
    for &pc in &ech.pivots {
        is_pivot[pc] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![FieldElem::ZERO; cols];
            v[free] = FieldElem::ONE;
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = f.neg(ech.rref.get(r, free));
            }
            v
        })
        .collect()
}

pub fn dot(f: &GaloisField, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(FieldElem::ZERO, |acc, (&x, &y)| f.mul_add(acc, x, y))
}

/// Rank of the span of a list of vectors of common length `len`.
pub fn span_rank(f: &GaloisField, vectors: &[Vec<FieldElem>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = FqMatrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), len);
    m.rank(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: &GaloisField, rows: &[&[i64]]) -> FqMatrix {
        FqMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| f.from_int(v)).collect()).collect())
    }

    fn vecf(f: &GaloisField, v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        let f2 = GaloisField::new(2, None).unwrap();
        let f3 = GaloisField::new(3, None).unwrap();
        assert_eq!(FqMatrix::zeros(3, 3).rank(&f2), 0);
        assert_eq!(FqMatrix::identity(3).rank(&f3), 3);
        assert_eq!(mat(&f2, &[&[1, 1], &[1, 1]]).rank(&f2), 1);
    }

    #[test]
    fn nullspace_examples() {
        let f2 = GaloisField::new(2, None).unwrap();
        let f3 = GaloisField::new(3, None).unwrap();
        assert!(FqMatrix::identity(2).nullspace_basis(&f3).is_empty());
        assert_eq!(
            FqMatrix::zeros(1, 2).nullspace_basis(&f2),
            vec![vecf(&f2, &[1, 0]), vecf(&f2, &[0, 1])]
        );
        assert_eq!(mat(&f3, &[&[1, 1]]).nullspace_basis(&f3), vec![vecf(&f3, &[2, 1])]);
    }

    #[test]
    fn solve_examples() {
        let f2 = GaloisField::new(2, None).unwrap();
        let f5 = GaloisField::new(5, None).unwrap();
        let c = vecf(&f5, &[3, 1, 4]);
        assert_eq!(FqMatrix::identity(3).solve(&f5, &c), Some(c.clone()));
        assert_eq!(FqMatrix::zeros(2, 2).solve(&f2, &vecf(&f2, &[1, 0])), None);
        assert_eq!(mat(&f2, &[&[1, 1]]).solve(&f2, &vecf(&f2, &[1])), Some(vecf(&f2, &[1, 0])));
    }

    #[test]
    fn analyze_agrees_with_separate_calls() {
        let f3 = GaloisField::new(3, None).unwrap();
        let m = mat(&f3, &[&[1, 2, 0], &[2, 1, 0], &[0, 0, 1]]);
        for c in [[1, 2, 0], [1, 1, 1]] {
            let c = vecf(&f3, &c);
            let a = m.analyze(&f3, &c);
            assert_eq!(a.rank, m.rank(&f3));
            assert_eq!(a.solution, m.solve(&f3, &c));
            assert_eq!(a.nullspace, m.nullspace_basis(&f3));
        }
    }

    #[test]
    fn perp_examples() {
        let f3 = GaloisField::new(3, None).unwrap();
        assert!(FqMatrix::identity(2).perp_to_nullspace(&f3, &vecf(&f3, &[1, 2])));
        assert!(!FqMatrix::zeros(2, 2).perp_to_nullspace(&f3, &vecf(&f3, &[0, 1])));
        let m = mat(&f3, &[&[1, 0]]);
        assert!(m.perp_to_nullspace(&f3, &vecf(&f3, &[1, 0])));
        assert!(!m.perp_to_nullspace(&f3, &vecf(&f3, &[0, 1])));
    }
}
