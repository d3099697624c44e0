//! Dense integer matrices and the row-style Hermite normal form.
//!
//! Every rank, kernel and lattice computation in the crate goes through
//! [`hnf`]. The transform is tracked so that callers get the unimodular
//! matrix `U` with `U·M = H`; the rows of `U` that land on zero rows of `H`
//! span the integer left kernel of `M`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            data.extend(row);
        }
        IntegerMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot += coef * self.get(r, c);
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// True when the matrix is in row-style Hermite normal form: echelon,
    /// positive pivots, entries above each pivot reduced into `[0, pivot)`,
    /// zero rows last.
    pub fn is_hermite(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for r in 0..self.rows {
            let lead = (0..self.cols).find(|&c| !self.get(r, c).is_zero());
            match lead {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last_pivot.is_some_and(|p| c <= p) {
                        return false;
                    }
                    let p = self.get(r, c);
                    if !p.is_positive() {
                        return false;
                    }
                    for above in 0..r {
                        let v = self.get(above, c);
                        if v.is_negative() || v >= p {
                            return false;
                        }
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Result of a Hermite reduction: `transform · input = form`.
#[derive(Debug, Clone)]
pub struct HermiteDecomposition {
    pub form: IntegerMatrix,
    pub transform: IntegerMatrix,
    /// Pivot column of each nonzero row of `form`, in order.
    pub pivots: Vec<usize>,
}

impl HermiteDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Row-style Hermite normal form with the unimodular transform.
pub fn hnf_decompose(m: &IntegerMatrix) -> HermiteDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.row_vecs();
    let mut u = IntegerMatrix::identity(rows).row_vecs();
    let mut pivots = Vec::new();
    let mut p = 0;

    for col in 0..cols {
        if p == rows {
            break;
        }
        loop {
            // smallest nonzero magnitude at or below p becomes the pivot
            let best = (p..rows)
                .filter(|&r| !h[r][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()));
            let Some(best) = best else { break };
            h.swap(p, best);
            u.swap(p, best);
            let mut done = true;
            for r in p + 1..rows {
                if h[r][col].is_zero() {
                    continue;
                }
                let q = &h[r][col] / &h[p][col];
                sub_multiple(&mut h, r, p, &q);
                sub_multiple(&mut u, r, p, &q);
                if !h[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[p][col].is_zero() {
            continue;
        }
        if h[p][col].is_negative() {
            negate_row(&mut h[p]);
            negate_row(&mut u[p]);
        }
        for r in 0..p {
            let q = h[r][col].div_floor(&h[p][col]);
            sub_multiple(&mut h, r, p, &q);
            sub_multiple(&mut u, r, p, &q);
        }
        pivots.push(col);
        p += 1;
    }

    HermiteDecomposition {
        form: IntegerMatrix::from_rows(cols, h),
        transform: IntegerMatrix::from_rows(rows, u),
        pivots,
    }
}

/// `(H, U)` with `U` unimodular and `U·M = H` in Hermite normal form.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let d = hnf_decompose(m);
    (d.form, d.transform)
}

pub fn rank(m: &IntegerMatrix) -> usize {
    hnf_decompose(m).rank()
}

/// Canonical basis of `{u : u·M = 0}`.
///
/// The rows are the Hermite form of the integer left kernel, so each row is
/// primitive with a positive leading entry, and the row count is
/// `M.rows − rank(M)`.
pub fn left_kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let d = hnf_decompose(m);
    let r = d.rank();
    let kernel_rows: Vec<Vec<BigInt>> = (r..m.rows()).map(|i| d.transform.row(i).to_vec()).collect();
    if kernel_rows.is_empty() {
        return IntegerMatrix::zeros(0, m.rows());
    }
    let raw = IntegerMatrix::from_rows(m.rows(), kernel_rows);
    let canon = hnf_decompose(&raw);
    let rows = (0..canon.rank()).map(|i| canon.form.row(i).to_vec()).collect();
    IntegerMatrix::from_rows(m.rows(), rows)
}

/// Divides out the content and makes the first nonzero entry positive.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let g = g * sign;
    v.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(cols, rows)
    }

    #[test]
    fn identity_is_its_own_form() {
        let id = IntegerMatrix::identity(2);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn two_by_two_example() {
        let a = m(2, &[vec![2, 4], vec![6, 8]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, m(2, &[vec![2, 0], vec![0, 4]]));
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.determinant().abs(), BigInt::one());
    }

    #[test]
    fn single_row_already_echelon() {
        let a = m(3, &[vec![3, 6, 9]]);
        let (h, _) = hnf(&a);
        assert_eq!(h, a);
    }

    #[test]
    fn negative_pivot_is_flipped() {
        let a = m(2, &[vec![-3, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, m(2, &[vec![3, -1]]));
        assert_eq!(u, m(1, &[vec![-1]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(left_kernel_basis(&IntegerMatrix::identity(2)).rows(), 0);
        let k = left_kernel_basis(&m(2, &[vec![1, 1], vec![2, 2]]));
        assert_eq!(k, m(2, &[vec![2, -1]]));
        let k = left_kernel_basis(&IntegerMatrix::zeros(3, 2));
        assert_eq!(k, IntegerMatrix::identity(3));
    }

    #[test]
    fn kernel_of_matrix_without_columns() {
        let k = left_kernel_basis(&IntegerMatrix::zeros(2, 0));
        assert_eq!(k, IntegerMatrix::identity(2));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(2, &[vec![2, 4], vec![6, 8]]).determinant(), BigInt::from(-8));
        assert_eq!(
            m(3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]).determinant(),
            BigInt::from(-5)
        );
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let v: Vec<BigInt> = [-4, 6, 0].iter().map(|&x| BigInt::from(x)).collect();
        let p: Vec<BigInt> = [2, -3, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(primitive(&v), p);
    }
}
