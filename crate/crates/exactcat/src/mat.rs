//! Dense exact matrices over the ring Z/p^k.
//!
//! One engine serves every model: over F_p (k = 1) the diagonal form is plain
//! Gaussian elimination, and over Z/p^k the pivoting rule picks an entry of
//! least p-adic valuation, which keeps every quotient exact. Reductions track
//! the four change-of-basis matrices U, U^-1, V, V^-1 so callers can read off
//! kernels, images, inverses and canonical solutions without re-solving.

use std::fmt;

/// p-adic valuation of x viewed in Z/p^k, with val(0) = k.
pub fn valuation(mut x: u64, p: u64, k: u32) -> u32 {
    if x == 0 {
        return k;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Modular inverse of a mod m via extended Euclid; None when gcd(a, m) != 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// p^e without any modulus bound; callers keep e <= k so this fits u64.
pub fn pow_exact(p: u64, e: u32) -> u64 {
    let mut out = 1u64;
    for _ in 0..e {
        out = out.checked_mul(p).expect("exponent overflow");
    }
    out
}

/// p^k, asserting the supported modulus bound.
pub fn prime_power(p: u64, k: u32) -> u64 {
    let m = pow_exact(p, k);
    assert!(m <= 1 << 31, "modulus p^k must be <= 2^31");
    m
}

/// Row-major matrix with entries canonically reduced into [0, p^k).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    p: u64,
    k: u32,
    m: u64,
    data: Vec<u64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat({}x{} mod {})[", self.rows, self.cols, self.m)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row_slice(i))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn new(rows: usize, cols: usize, p: u64, k: u32, data: Vec<u64>) -> Mat {
        assert!(p >= 2 && k >= 1, "need p >= 2 and k >= 1");
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        let m = prime_power(p, k);
        let data = data.into_iter().map(|x| x % m).collect();
        Mat {
            rows,
            cols,
            p,
            k,
            m,
            data,
        }
    }

    pub fn from_rows(p: u64, k: u32, rows: &[Vec<u64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::new(r, c, p, k, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize, p: u64, k: u32) -> Mat {
        Mat::new(rows, cols, p, k, vec![0; rows * cols])
    }

    pub fn identity(n: usize, p: u64, k: u32) -> Mat {
        Mat::from_fn(n, n, p, k, |i, j| u64::from(i == j))
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        p: u64,
        k: u32,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat::new(rows, cols, p, k, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.m;
    }

    pub fn row_slice(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    fn same_ring(&self, other: &Mat) {
        assert!(
            self.p == other.p && self.k == other.k,
            "mixed coefficient rings"
        );
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.same_ring(other);
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch in add"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.m)
            .collect();
        Mat {
            data,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.same_ring(other);
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch in sub"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.m - b) % self.m)
            .collect();
        Mat {
            data,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|&a| (self.m - a) % self.m).collect();
        Mat {
            data,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let c = c % self.m;
        let data = self.data.iter().map(|&a| a * c % self.m).collect();
        Mat {
            data,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.same_ring(other);
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.data[i * self.cols + t];
                if a == 0 {
                    continue;
                }
                let src = t * other.cols;
                let dst = i * other.cols;
                for j in 0..other.cols {
                    let b = other.data[src + j];
                    if b != 0 {
                        out[dst + j] = (out[dst + j] + a * b % self.m) % self.m;
                    }
                }
            }
        }
        Mat {
            rows: self.rows,
            cols: other.cols,
            p: self.p,
            k: self.k,
            m: self.m,
            data: out,
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.p, self.k, |i, j| self.get(j, i))
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        self.same_ring(other);
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, self.p, self.k, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        self.same_ring(other);
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        Mat::from_fn(self.rows + other.rows, self.cols, self.p, self.k, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                other.get(i - self.rows, j)
            }
        })
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        self.same_ring(other);
        Mat::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            self.p,
            self.k,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j)
                } else if i >= self.rows && j >= self.cols {
                    other.get(i - self.rows, j - self.cols)
                } else {
                    0
                }
            },
        )
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(idx.len(), self.cols, self.p, self.k, |i, j| {
            self.get(idx[i], j)
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), self.p, self.k, |i, j| {
            self.get(i, idx[j])
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        for j in 0..self.cols {
            let x = self.get(i, j);
            self.set(i, j, x * c % self.m);
        }
    }

    fn scale_col(&mut self, j: usize, c: u64) {
        for i in 0..self.rows {
            let x = self.get(i, j);
            self.set(i, j, x * c % self.m);
        }
    }

    /// row_dst -= c * row_src
    fn row_sub(&mut self, dst: usize, src: usize, c: u64) {
        for j in 0..self.cols {
            let x = (self.get(dst, j) + self.m - c * self.get(src, j) % self.m) % self.m;
            self.set(dst, j, x);
        }
    }

    /// row_dst += c * row_src
    fn row_add(&mut self, dst: usize, src: usize, c: u64) {
        for j in 0..self.cols {
            let x = (self.get(dst, j) + c * self.get(src, j) % self.m) % self.m;
            self.set(dst, j, x);
        }
    }

    /// col_dst -= c * col_src
    fn col_sub(&mut self, dst: usize, src: usize, c: u64) {
        for i in 0..self.rows {
            let x = (self.get(i, dst) + self.m - c * self.get(i, src) % self.m) % self.m;
            self.set(i, dst, x);
        }
    }

    /// col_dst += c * col_src
    fn col_add(&mut self, dst: usize, src: usize, c: u64) {
        for i in 0..self.rows {
            let x = (self.get(i, dst) + c * self.get(i, src) % self.m) % self.m;
            self.set(i, dst, x);
        }
    }

    /// Diagonal form u * self * v = d with all four change-of-basis matrices.
    ///
    /// Pivots are chosen by least p-adic valuation (row-major tie-break) and
    /// normalized to exact powers of p, so the diagonal reads
    /// p^vals[0], p^vals[1], ... with non-decreasing valuations; a zero entry
    /// is recorded as valuation k.
    pub fn diagonalize(&self) -> Reduction {
        let mut d = self.clone();
        let mut u = Mat::identity(self.rows, self.p, self.k);
        let mut u_inv = u.clone();
        let mut v = Mat::identity(self.cols, self.p, self.k);
        let mut v_inv = v.clone();
        let steps = self.rows.min(self.cols);
        let mut vals = vec![self.k; steps];
        for t in 0..steps {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    let x = d.get(i, j);
                    if x == 0 {
                        continue;
                    }
                    let vl = valuation(x, self.p, self.k);
                    if best.is_none_or(|(bv, _, _)| vl < bv) {
                        best = Some((vl, i, j));
                    }
                }
            }
            let Some((vl, pi, pj)) = best else { break };
            vals[t] = vl;
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
            }
            let pw = pow_exact(self.p, vl);
            let unit = d.get(t, t) / pw;
            if unit != 1 {
                let w = inv_mod(unit, self.m).expect("unit part is invertible");
                d.scale_row(t, w);
                u.scale_row(t, w);
                u_inv.scale_col(t, unit);
            }
            for i in (t + 1)..self.rows {
                let x = d.get(i, t);
                if x == 0 {
                    continue;
                }
                let q = x / pw;
                d.row_sub(i, t, q);
                u.row_sub(i, t, q);
                u_inv.col_add(t, i, q);
            }
            for j in (t + 1)..self.cols {
                let x = d.get(t, j);
                if x == 0 {
                    continue;
                }
                let q = x / pw;
                d.col_sub(j, t, q);
                v.col_sub(j, t, q);
                v_inv.row_add(t, j, q);
            }
        }
        Reduction {
            d,
            u,
            u_inv,
            v,
            v_inv,
            vals,
        }
    }

    /// Canonical solution of self * x = rhs, if one exists.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        self.diagonalize().solve(rhs)
    }

    /// Canonical solution of x * self = lhs, if one exists.
    pub fn solve_left(&self, lhs: &Mat) -> Option<Mat> {
        self.transpose()
            .solve(&lhs.transpose())
            .map(|x| x.transpose())
    }

    /// Columns generating the kernel module {x : self * x = 0}.
    pub fn kernel_gens(&self) -> Mat {
        self.diagonalize().kernel_gens()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let red = self.diagonalize();
        if red.unit_rank() == self.rows {
            Some(red.v.mul(&red.u))
        } else {
            None
        }
    }

    /// F_p rank; field-only helper.
    pub fn rank(&self) -> usize {
        self.col_reduce().pivot_rows.len()
    }

    /// Reduced column echelon basis of the column space; field-only helper.
    pub fn col_reduce(&self) -> ColReduction {
        assert_eq!(self.k, 1, "col_reduce works over F_p only");
        let mut a = self.clone();
        let mut pivot_rows = Vec::new();
        let mut s = 0;
        for r in 0..self.rows {
            if s == self.cols {
                break;
            }
            let Some(j) = (s..self.cols).find(|&j| a.get(r, j) != 0) else {
                continue;
            };
            if j != s {
                a.swap_cols(s, j);
            }
            let w = inv_mod(a.get(r, s), self.m).expect("nonzero field element");
            if w != 1 {
                a.scale_col(s, w);
            }
            for j2 in 0..self.cols {
                if j2 == s {
                    continue;
                }
                let c = a.get(r, j2);
                if c != 0 {
                    a.col_sub(j2, s, c);
                }
            }
            pivot_rows.push(r);
            s += 1;
        }
        let keep: Vec<usize> = (0..s).collect();
        ColReduction {
            basis: a.select_cols(&keep),
            pivot_rows,
        }
    }

    /// Complement columns extending this matrix's independent columns to a
    /// basis of the ambient space; field-only helper.
    pub fn extend_to_basis(&self) -> Mat {
        let red = self.col_reduce();
        assert_eq!(
            red.pivot_rows.len(),
            self.cols,
            "columns must be independent"
        );
        let pivots: Vec<usize> = red.pivot_rows;
        let free: Vec<usize> = (0..self.rows).filter(|r| !pivots.contains(r)).collect();
        Mat::from_fn(self.rows, free.len(), self.p, self.k, |i, j| {
            u64::from(i == free[j])
        })
    }
}

/// Result of [`Mat::diagonalize`]: u * a * v = d, with u * u_inv = 1 and
/// v * v_inv = 1.
pub struct Reduction {
    pub d: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    pub vals: Vec<u32>,
}

impl Reduction {
    /// Number of unit pivots (valuation 0).
    pub fn unit_rank(&self) -> usize {
        self.vals.iter().filter(|&&v| v == 0).count()
    }

    /// Number of nonzero diagonal entries.
    pub fn nonzero_rank(&self) -> usize {
        let k = self.d.k();
        self.vals.iter().filter(|&&v| v < k).count()
    }

    /// Canonical solution of a * x = rhs for the diagonalized a.
    ///
    /// Free coordinates are set to zero and pivot coordinates take their
    /// minimal nonnegative lift, so equal inputs give byte-equal solutions.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(rhs.rows(), self.u.cols(), "rhs rows mismatch");
        let p = self.d.p();
        let k = self.d.k();
        let c = self.u.mul(rhs);
        let n = self.v.rows();
        let mut y = Mat::zeros(n, rhs.cols(), p, k);
        for t in 0..c.rows() {
            let vl = if t < self.vals.len() { self.vals[t] } else { k };
            if vl >= k {
                for j in 0..c.cols() {
                    if c.get(t, j) != 0 {
                        return None;
                    }
                }
                continue;
            }
            let pw = pow_exact(p, vl);
            for j in 0..c.cols() {
                let x = c.get(t, j);
                if !x.is_multiple_of(pw) {
                    return None;
                }
                y.set(t, j, x / pw);
            }
        }
        Some(self.v.mul(&y))
    }

    /// Columns generating {x : a * x = 0} for the diagonalized a.
    pub fn kernel_gens(&self) -> Mat {
        let p = self.d.p();
        let k = self.d.k();
        let n = self.v.rows();
        let mut cols = Mat::zeros(n, 0, p, k);
        for t in 0..n {
            let vl = if t < self.vals.len() { self.vals[t] } else { k };
            if vl == 0 {
                continue;
            }
            let coeff = pow_exact(p, k - vl);
            let keep = [t];
            cols = cols.hstack(&self.v.select_cols(&keep).scale(coeff));
        }
        cols
    }
}

/// Result of [`Mat::col_reduce`]: the unique reduced column echelon basis of
/// the column space together with its pivot rows.
pub struct ColReduction {
    pub basis: Mat,
    pub pivot_rows: Vec<usize>,
}

/// Incremental column span over F_p.
///
/// Columns are inserted one at a time; each insertion reports whether the
/// span grew. Stored columns keep their insertion order.
pub struct Echelon {
    p: u64,
    dim: usize,
    cols: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize, p: u64) -> Echelon {
        Echelon {
            p,
            dim,
            cols: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    /// Insert a column; returns true when it was independent of the span.
    pub fn insert(&mut self, col: &[u64]) -> bool {
        assert_eq!(col.len(), self.dim, "column length mismatch");
        let mut c: Vec<u64> = col.iter().map(|&x| x % self.p).collect();
        for (stored, &pivot) in self.cols.iter().zip(&self.pivots) {
            let f = c[pivot];
            if f == 0 {
                continue;
            }
            for (x, &s) in c.iter_mut().zip(stored) {
                *x = (*x + (self.p - f) * s) % self.p;
            }
        }
        let Some(pivot) = c.iter().position(|&x| x != 0) else {
            return false;
        };
        let w = inv_mod(c[pivot], self.p).expect("nonzero field element");
        for x in &mut c {
            *x = *x * w % self.p;
        }
        self.cols.push(c);
        self.pivots.push(pivot);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, p: u64, k: u32, d: &[u64]) -> Mat {
        Mat::new(r, c, p, k, d.to_vec())
    }

    #[test]
    fn valuation_boundaries() {
        assert_eq!(valuation(0, 2, 3), 3);
        assert_eq!(valuation(4, 2, 3), 2);
        assert_eq!(valuation(6, 2, 3), 1);
        assert_eq!(valuation(5, 2, 3), 0);
    }

    #[test]
    fn inv_mod_units_and_nonunits() {
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(5, 9), Some(2));
        assert_eq!(inv_mod(2, 8), None);
    }

    #[test]
    fn mul_matches_hand_product() {
        let a = m(2, 2, 2, 2, &[1, 2, 3, 1]);
        let b = m(2, 1, 2, 2, &[1, 2]);
        assert_eq!(a.mul(&b), m(2, 1, 2, 2, &[1, 1]));
    }

    #[test]
    fn add_neg_cancel() {
        let a = m(2, 2, 3, 2, &[4, 5, 0, 8]);
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(a.sub(&a), Mat::zeros(2, 2, 3, 2));
    }

    #[test]
    fn stacking_shapes() {
        let a = m(1, 2, 2, 1, &[1, 0]);
        let b = m(1, 1, 2, 1, &[1]);
        assert_eq!(a.hstack(&a).cols(), 4);
        assert_eq!(a.vstack(&a).rows(), 2);
        let bd = a.block_diag(&b);
        assert_eq!((bd.rows(), bd.cols()), (2, 3));
        assert_eq!(bd.get(1, 2), 1);
        assert_eq!(bd.get(0, 2), 0);
    }

    #[test]
    fn diagonalize_tracks_change_of_basis() {
        let cases = [
            m(2, 2, 2, 2, &[2, 0, 0, 1]),
            m(3, 2, 2, 3, &[2, 4, 6, 1, 0, 5]),
            m(2, 3, 3, 2, &[3, 6, 1, 0, 3, 3]),
            m(2, 2, 2, 2, &[2, 2, 2, 2]),
            Mat::zeros(2, 3, 5, 1),
        ];
        for a in cases {
            let red = a.diagonalize();
            assert_eq!(red.u.mul(&a).mul(&red.v), red.d, "u a v = d for {a:?}");
            assert!(red.u.mul(&red.u_inv).is_identity());
            assert!(red.v.mul(&red.v_inv).is_identity());
            for t in 1..red.vals.len() {
                assert!(red.vals[t - 1] <= red.vals[t], "valuations sorted");
            }
            for (t, &vl) in red.vals.iter().enumerate() {
                let expect = if vl >= a.k() { 0 } else { pow_exact(a.p(), vl) };
                assert_eq!(red.d.get(t, t), expect, "normalized pivot");
            }
        }
    }

    #[test]
    fn diagonalize_prefers_unit_pivot() {
        let a = m(2, 2, 2, 2, &[2, 0, 0, 1]);
        let red = a.diagonalize();
        assert_eq!(red.vals, vec![0, 1]);
        assert_eq!(red.d, m(2, 2, 2, 2, &[1, 0, 0, 2]));
    }

    #[test]
    fn solve_picks_minimal_lift() {
        let a = m(1, 1, 2, 2, &[2]);
        assert_eq!(a.solve(&m(1, 1, 2, 2, &[2])), Some(m(1, 1, 2, 2, &[1])));
        assert_eq!(a.solve(&m(1, 1, 2, 2, &[1])), None);
    }

    #[test]
    fn solve_left_is_transposed_solve() {
        let a = m(2, 2, 3, 1, &[1, 1, 0, 1]);
        let l = m(1, 2, 3, 1, &[2, 0]);
        let x = a.solve_left(&l).unwrap();
        assert_eq!(x.mul(&a), l);
    }

    #[test]
    fn kernel_of_multiplication_by_p() {
        let a = m(1, 1, 2, 2, &[2]);
        let g = a.kernel_gens();
        assert_eq!(g, m(1, 1, 2, 2, &[2]));
    }

    #[test]
    fn kernel_gens_annihilate() {
        let a = m(2, 3, 3, 2, &[3, 1, 4, 0, 6, 2]);
        let g = a.kernel_gens();
        assert!(a.mul(&g).is_zero());
        assert!(g.cols() >= 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(2, 2, 3, 2, &[1, 1, 0, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        assert_eq!(m(1, 1, 2, 2, &[2]).inverse(), None);
    }

    #[test]
    fn empty_shapes_are_fine() {
        let a = Mat::zeros(0, 3, 2, 2);
        assert_eq!(a.kernel_gens(), Mat::identity(3, 2, 2));
        let b = Mat::zeros(3, 0, 2, 2);
        assert_eq!(b.kernel_gens().cols(), 0);
        assert_eq!(
            b.solve(&Mat::zeros(3, 2, 2, 2)),
            Some(Mat::zeros(0, 2, 2, 2))
        );
        assert_eq!(b.solve(&m(3, 1, 2, 2, &[1, 0, 0])), None);
    }

    #[test]
    fn col_reduce_gives_reduced_basis() {
        let a = m(3, 3, 5, 1, &[2, 4, 1, 1, 2, 0, 0, 0, 3]);
        let red = a.col_reduce();
        // span{(2,1,0),(1,0,3)} reduces to (1,0,3),(0,1,4): pivots in rows 0,1
        assert_eq!(red.pivot_rows, vec![0, 1]);
        assert_eq!(red.basis, m(3, 2, 5, 1, &[1, 0, 0, 1, 3, 4]));
        for (j, &r) in red.pivot_rows.iter().enumerate() {
            for j2 in 0..red.basis.cols() {
                assert_eq!(red.basis.get(r, j2), u64::from(j == j2));
            }
        }
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn extend_to_basis_completes() {
        let c = m(3, 1, 2, 1, &[1, 1, 0]);
        let ext = c.extend_to_basis();
        let full = c.hstack(&ext);
        assert!(full.inverse().is_some());
    }

    #[test]
    fn echelon_tracks_independence() {
        let mut e = Echelon::new(3, 3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(!e.insert(&[2, 4, 0]));
        assert!(e.insert(&[1, 2, 1]));
        assert!(!e.insert(&[0, 0, 2]));
        assert!(e.insert(&[0, 1, 0]));
        assert_eq!(e.rank(), 3);
        assert!(!e.insert(&[2, 2, 2]));
    }
}
