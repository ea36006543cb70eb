//! Exact sparse integer matrices indexed by window-vertex positions.
//!
//! All arithmetic is checked `i64`; entries in this crate stay tiny, so an
//! overflow always signals a construction bug and panics with context.

use std::collections::BTreeMap;

#[inline]
pub fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in exact matrix arithmetic")
}

#[inline]
pub fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in exact matrix arithmetic")
}

/// Column-major sparse integer matrix with `u32` row/column positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub nrows: u32,
    pub ncols: u32,
    cols: Vec<BTreeMap<u32, i64>>,
}

impl IntMatrix {
    pub fn zeros(nrows: u32, ncols: u32) -> Self {
        IntMatrix {
            nrows,
            ncols,
            cols: vec![BTreeMap::new(); ncols as usize],
        }
    }

    pub fn identity(n: u32) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: u32, c: u32) -> i64 {
        *self.cols[c as usize].get(&r).unwrap_or(&0)
    }

    pub fn set(&mut self, r: u32, c: u32, v: i64) {
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        if v == 0 {
            self.cols[c as usize].remove(&r);
        } else {
            self.cols[c as usize].insert(r, v);
        }
    }

    pub fn add_to(&mut self, r: u32, c: u32, v: i64) {
        let cur = self.get(r, c);
        self.set(r, c, cadd(cur, v));
    }

    /// Non-zero entries of one column.
    pub fn col(&self, c: u32) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.cols[c as usize].iter().map(|(&r, &v)| (r, v))
    }

    pub fn col_map(&self, c: u32) -> &BTreeMap<u32, i64> {
        &self.cols[c as usize]
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, m)| m.iter().map(move |(&r, &v)| (r, c as u32, v)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.set(c, r, v);
        }
        t
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.nrows == self.ncols
            && self.entries().all(|(r, c, v)| self.get(c, r) == -v)
    }

    pub fn scaled(&self, k: i64) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            out.set(r, c, cmul(v, k));
        }
        out
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.nrows, rhs.ncols);
        for c in 0..rhs.ncols {
            for (k, w) in rhs.col(c) {
                for (r, v) in self.col(k) {
                    out.add_to(r, c, cmul(v, w));
                }
            }
        }
        out
    }

    /// Fomin-Zelevinsky matrix mutation at position `k`, applied to every
    /// row but only to the first `ncols` (exchangeable) columns. The matrix
    /// may be rectangular with frozen rows below the square part; `k` indexes
    /// a mutable row/column of the square part.
    pub fn mutate(&mut self, k: u32) {
        let colk: Vec<(u32, i64)> = self.col(k).collect();
        // row k over the mutable columns, read off the skew square part
        let rowk: Vec<(u32, i64)> = (0..self.ncols)
            .filter_map(|c| {
                let v = -self.get(c, k); // b_{k,c} = -b_{c,k} within the square part
                (v != 0 && c != k).then_some((c, v))
            })
            .collect();
        for &(x, bxk) in &colk {
            for &(y, bky) in &rowk {
                let s = if bxk > 0 { 1 } else { -1 };
                let delta = s * cmul(bxk, bky).max(0);
                if delta != 0 && x != k {
                    self.add_to(x, y, delta);
                }
            }
        }
        // negate row and column k
        for &(x, v) in &colk {
            self.set(x, k, -v);
        }
        for y in 0..self.ncols {
            if y == k {
                continue;
            }
            let v = self.get(k, y);
            if v != 0 {
                self.set(k, y, -v);
            }
        }
    }
}

/// Exact integer inverse, or `None` if the matrix is singular or the
/// inverse is not integral. Intended for the small per-block inversions;
/// arithmetic is exact rational over `i128`.
pub fn invert_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.nrows, m.ncols);
    let n = m.nrows as usize;
    #[derive(Clone, Copy)]
    struct Q(i128, i128); // num / den, den > 0
    fn norm(Q(mut a, mut b): Q) -> Q {
        if b < 0 {
            a = -a;
            b = -b;
        }
        let g = gcd(a.abs(), b);
        Q(a / g, b / g)
    }
    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.max(1)
    }
    fn sub(x: Q, y: Q) -> Q {
        norm(Q(x.0 * y.1 - y.0 * x.1, x.1 * y.1))
    }
    fn mul(x: Q, y: Q) -> Q {
        norm(Q(x.0 * y.0, x.1 * y.1))
    }
    fn div(x: Q, y: Q) -> Q {
        norm(Q(x.0 * y.1, x.1 * y.0))
    }
    let mut a = vec![vec![Q(0, 1); 2 * n]; n];
    for (r, c, v) in m.entries() {
        a[r as usize][c as usize] = Q(v as i128, 1);
    }
    for i in 0..n {
        a[i][n + i] = Q(1, 1);
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col].0 != 0)?;
        a.swap(col, piv);
        let p = a[col][col];
        for c in 0..2 * n {
            a[col][c] = div(a[col][c], p);
        }
        for r in 0..n {
            if r != col && a[r][col].0 != 0 {
                let f = a[r][col];
                for c in 0..2 * n {
                    a[r][c] = sub(a[r][c], mul(f, a[col][c]));
                }
            }
        }
    }
    let mut out = IntMatrix::zeros(m.nrows, m.ncols);
    for r in 0..n {
        for c in 0..n {
            let q = a[r][n + c];
            if q.1 != 1 {
                return None;
            }
            out.set(r as u32, c as u32, i64::try_from(q.0).ok()?);
        }
    }
    Some(out)
}
