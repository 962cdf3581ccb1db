//! Exact integer matrices, Bareiss determinants, Smith and Hermite normal
//! forms, and lattice membership.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.into_iter().map(Into::into));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds a `rows`-row matrix whose columns are `columns`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Keeps the columns whose indices are listed, in that order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// Deletes one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        let rs: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        Self::from_fn(rs.len(), cs.len(), |i, j| self[(rs[i], cs[j])].clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics on a
    /// non-square matrix.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    // exact by Sylvester's identity
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * k;
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * k;
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// (col[a], col[b]) <- (x col[a] + y col[b], p col[a] + q col[b])
    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
        for i in 0..self.rows {
            let ca = self[(i, a)].clone();
            let cb = self[(i, b)].clone();
            self[(i, a)] = x * &ca + y * &cb;
            self[(i, b)] = p * &ca + q * &cb;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| (0..self.cols).map(|k| &self[(i, k)] * &rhs[(k, j)]).sum())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `u * m * v == s` with `u`, `v` unimodular and `u_inv` the inverse of `u`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `s`, nonnegative, each dividing the next, zeros last.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn min_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    // row[dst] += k row[src] on s, mirrored on u and (inversely) on u_inv
    let row_op = |s: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, k: &BigInt| {
        s.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        ui.add_col_multiple(src, dst, &-k);
    };

    'outer: for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_nonzero(&s, t) else { break 'outer };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                row_op(&mut s, &mut u, &mut u_inv, i, t, &-q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let p = s[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => row_op(&mut s, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SnfResult { u, s, v, u_inv }
}

/// `m * t == h` with `t` unimodular; `h` in column Hermite normal form.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub t: IntMatrix,
    /// Row index of the pivot of each nonzero column of `h`.
    pub pivots: Vec<usize>,
}

impl HnfResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Column Hermite normal form: nonzero columns first, pivot rows strictly
/// increasing, pivots positive, entries left of a pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> HnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut t = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        if h[(i, k)].is_zero() {
            if let Some(j) = (k + 1..cols).find(|&j| !h[(i, j)].is_zero()) {
                h.swap_cols(k, j);
                t.swap_cols(k, j);
            } else {
                continue;
            }
        }
        for j in k + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, k)].clone();
            let b = h[(i, j)].clone();
            let e = a.extended_gcd(&b);
            let p = -(&b / &e.gcd);
            let q = &a / &e.gcd;
            h.combine_cols(k, j, &e.x, &e.y, &p, &q);
            t.combine_cols(k, j, &e.x, &e.y, &p, &q);
        }
        if h[(i, k)].is_negative() {
            h.negate_col(k);
            t.negate_col(k);
        }
        let piv = h[(i, k)].clone();
        for j in 0..k {
            let q = -h[(i, j)].div_floor(&piv);
            h.add_col_multiple(j, k, &q);
            t.add_col_multiple(j, k, &q);
        }
        pivots.push(i);
        k += 1;
    }
    HnfResult { h, t, pivots }
}

/// Integer lattice spanned by the columns of a generator matrix.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
    to_generators: IntMatrix,
}

impl Lattice {
    pub fn from_generators(m: &IntMatrix) -> Self {
        let hnf = hermite_normal_form(m);
        let r = hnf.rank();
        let keep: Vec<usize> = (0..r).collect();
        Lattice {
            dim: m.rows(),
            basis: hnf.h.select_columns(&keep),
            to_generators: hnf.t.select_columns(&keep),
            pivots: hnf.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Hermite basis, one column per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coefficients `x` with `generators * x == v`, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let mut residual = v.to_vec();
        let mut coef = Vec::with_capacity(self.rank());
        for (c, &p) in self.pivots.iter().enumerate() {
            let (q, r) = residual[p].div_rem(&self.basis[(p, c)]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (i, x) in residual.iter_mut().enumerate() {
                    *x -= &q * &self.basis[(i, c)];
                }
            }
            coef.push(q);
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        self.to_generators.mul_vec(&coef).map(Some)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }
}

pub fn lattice_contains(m: &IntMatrix, v: &[BigInt]) -> Result<bool, LinalgError> {
    Lattice::from_generators(m).contains(v)
}

/// Basis of `{x : m x = 0}`, returned in Hermite form (one column each).
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let hnf = hermite_normal_form(m);
    let free: Vec<usize> = (hnf.rank()..m.cols()).collect();
    let raw = hnf.t.select_columns(&free);
    let canon = hermite_normal_form(&raw);
    let keep: Vec<usize> = (0..canon.rank()).collect();
    canon.h.select_columns(&keep)
}

/// Converts a slice of machine integers to big integers.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn is_snf_diagonal(s: &IntMatrix) -> bool {
        let d: Vec<BigInt> = (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).collect();
        let off = (0..s.rows()).all(|i| (0..s.cols()).all(|j| i == j || s[(i, j)].is_zero()));
        let chain = d
            .windows(2)
            .all(|w| !w[0].is_negative() && if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        off && chain && d.iter().all(|x| !x.is_negative())
    }

    fn check_snf(a: &IntMatrix) {
        let r = smith_normal_form(a);
        assert_eq!(&(&r.u * a) * &r.v, r.s);
        assert_eq!(&r.u * &r.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(r.u.determinant().abs(), BigInt::one());
        assert_eq!(r.v.determinant().abs(), BigInt::one());
        assert!(is_snf_diagonal(&r.s), "{}", r.s);
    }

    fn check_hnf(a: &IntMatrix) {
        let r = hermite_normal_form(a);
        assert_eq!(&(a * &r.t), &r.h);
        assert_eq!(r.t.determinant().abs(), BigInt::one());
        for (c, &p) in r.pivots.iter().enumerate() {
            assert!(r.h[(p, c)].is_positive());
            for i in 0..p {
                assert!(r.h[(i, c)].is_zero());
            }
            for j in 0..c {
                assert!(!r.h[(p, j)].is_negative() && r.h[(p, j)] < r.h[(p, c)]);
            }
        }
        assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
        for j in r.rank()..a.cols() {
            assert!(r.h.column(j).iter().all(Zero::is_zero));
        }
        assert_eq!(hermite_normal_form(&r.h).h, r.h);
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(m(vec![vec![2, -1], vec![-1, 2]]).determinant(), BigInt::from(3));
        assert_eq!(m(vec![vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).determinant(), BigInt::zero());
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
        let a = m(vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(a.determinant(), BigInt::from(6));
    }

    #[test]
    fn snf_examples() {
        let r = smith_normal_form(&m(vec![vec![2, 0], vec![0, 6]]));
        assert_eq!(r.diagonal(), big_vec(&[2, 6]));
        let r = smith_normal_form(&m(vec![vec![2, 4], vec![6, 8]]));
        assert_eq!(r.diagonal(), big_vec(&[2, 4]));
        let r = smith_normal_form(&m(vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]));
        assert_eq!(r.diagonal(), big_vec(&[1, 3, 21, 0]));
        let r = smith_normal_form(&m(vec![vec![6, 4], vec![0, 0], vec![0, 0]]));
        assert_eq!(r.diagonal(), big_vec(&[2, 0]));
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn snf_of_empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            check_snf(&IntMatrix::zeros(r, c));
        }
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id).h, id);
        let d = m(vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(hermite_normal_form(&d).h, d);
        let a = hermite_normal_form(&m(vec![vec![1, 1], vec![0, 2]])).h;
        let b = hermite_normal_form(&m(vec![vec![1, 0], vec![0, 2]])).h;
        assert_eq!(a, b);
    }

    #[test]
    fn lattice_examples() {
        let d = m(vec![vec![2, 0], vec![0, 2]]);
        assert!(lattice_contains(&d, &big_vec(&[0, 0])).unwrap());
        assert!(lattice_contains(&d, &big_vec(&[2, 0])).unwrap());
        assert!(!lattice_contains(&d, &big_vec(&[1, 1])).unwrap());
        assert!(lattice_contains(&d, &big_vec(&[1])).is_err());
        let a = m(vec![vec![3, 5], vec![1, 2]]);
        let lat = Lattice::from_generators(&a);
        let x = lat.coordinates(&big_vec(&[7, 3])).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), big_vec(&[7, 3]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel(&m(vec![vec![1, 1]])), m(vec![vec![1], vec![-1]]));
        assert_eq!(integer_kernel(&m(vec![vec![2, 4]])), m(vec![vec![2], vec![-1]]));
        assert_eq!(integer_kernel(&m(vec![vec![2, 1], vec![1, 1]])).cols(), 0);
        let k = integer_kernel(&IntMatrix::zeros(2, 3));
        assert_eq!(k.cols(), 3);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c)
                .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
        })
    }

    fn brute_contains(a: &IntMatrix, v: &[BigInt], bound: i64) -> bool {
        let k = a.cols();
        let mut coef = vec![-bound; k];
        loop {
            let c: Vec<BigInt> = big_vec(&coef);
            if a.mul_vec(&c).unwrap() == v {
                return true;
            }
            let mut i = 0;
            loop {
                if i == k {
                    return false;
                }
                coef[i] += 1;
                if coef[i] <= bound {
                    break;
                }
                coef[i] = -bound;
                i += 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn snf_invariants(a in small_matrix()) {
            check_snf(&a);
        }

        #[test]
        fn hnf_invariants(a in small_matrix()) {
            check_hnf(&a);
        }

        #[test]
        fn snf_product_is_determinant(v in proptest::collection::vec(-9i64..=9, 16)) {
            let a = IntMatrix::from_fn(4, 4, |i, j| BigInt::from(v[4 * i + j]));
            let d: BigInt = smith_normal_form(&a).diagonal().iter().product();
            prop_assert_eq!(d, a.determinant().abs());
        }

        #[test]
        fn kernel_is_exact(a in small_matrix()) {
            let k = integer_kernel(&a);
            let rank = smith_normal_form(&a).rank();
            prop_assert_eq!(k.cols(), a.cols() - rank);
            prop_assert!((&a * &k).is_zero());
            // saturation: any integer kernel vector is an integer combination
            let hnf = hermite_normal_form(&a);
            for j in hnf.rank()..a.cols() {
                prop_assert!(lattice_contains(&k, &hnf.t.column(j)).unwrap());
            }
        }

        #[test]
        fn membership_matches_bounded_search(
            v in proptest::collection::vec(-3i64..=3, 6),
            coef in proptest::collection::vec(-2i64..=2, 3),
            target in proptest::collection::vec(-4i64..=4, 2),
            use_combo in any::<bool>(),
        ) {
            let a = IntMatrix::from_fn(2, 3, |i, j| BigInt::from(v[3 * i + j]));
            let t = if use_combo { a.mul_vec(&big_vec(&coef)).unwrap() } else { big_vec(&target) };
            let fast = lattice_contains(&a, &t).unwrap();
            if brute_contains(&a, &t, 6) {
                prop_assert!(fast);
            }
            if use_combo {
                prop_assert!(fast);
            }
            if fast {
                let x = Lattice::from_generators(&a).coordinates(&t).unwrap().unwrap();
                prop_assert_eq!(a.mul_vec(&x).unwrap(), t);
            }
        }
    }
}
