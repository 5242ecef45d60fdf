use std::fmt;

use super::{FieldCtx, Fq2};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// A dense matrix over F_{q²} (entries of an F_q matrix simply have `b = 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Fq2>,
}

impl FFMatrix {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        FFMatrix { ctx, rows, cols, data: vec![Fq2::ZERO; rows * cols] }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Fq2::ONE);
        }
        m
    }

    /// `W_N`: ones on the secondary diagonal.
    pub fn w(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, Fq2::ONE);
        }
        m
    }

    pub fn from_rows(ctx: FieldCtx, rows: Vec<Vec<Fq2>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|x| x.a >= ctx.q() || x.b >= ctx.q()) {
            return Err(Error::InvalidParameter("entry out of range".into()));
        }
        Ok(FFMatrix { ctx, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries reduced mod q.
    pub fn from_ints(ctx: FieldCtx, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(ctx, rows.iter().map(|r| r.iter().map(|&x| ctx.from_int(x)).collect()).collect())
    }

    /// The matrix whose columns are `cols` (all of length `n`).
    pub fn from_columns(ctx: FieldCtx, n: usize, cols: &[Vec<Fq2>]) -> Self {
        let mut m = Self::zeros(ctx, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
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

    pub fn get(&self, i: usize, j: usize) -> Fq2 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq2) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq2] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fq2> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Whether every entry lies in F_q.
    pub fn is_over_base(&self) -> bool {
        self.data.iter().all(|x| x.in_base())
    }

    pub fn map(&self, f: impl Fn(Fq2) -> Fq2) -> Self {
        FFMatrix { data: self.data.iter().map(|&x| f(x)).collect(), ..self.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let f = self.ctx;
        FFMatrix { data: self.data.iter().zip(&o.data).map(|(&x, &y)| f.add(x, y)).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(self.ctx.from_int(-1)))
    }

    pub fn scale(&self, c: Fq2) -> Self {
        let f = self.ctx;
        self.map(|x| f.mul(c, x))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let f = self.ctx;
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(out.get(i, j), f.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fq2]) -> Vec<Fq2> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let f = self.ctx;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Fq2::ZERO, |acc, (&a, &x)| f.add(acc, f.mul(a, x))))
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.ctx, self.rows), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `A*`: transpose and Frobenius.
    pub fn conj_transpose(&self) -> Self {
        let f = self.ctx;
        self.transpose().map(|x| f.conj(x))
    }

    /// `A^♯ = W A* W`.
    pub fn sharp(&self) -> Self {
        let w = Self::w(self.ctx, self.rows);
        w.mul(&self.conj_transpose()).mul(&w)
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.is_square() && self.sharp() == self.scale(self.ctx.from_int(-1))
    }

    /// `A^♯ = A`.
    pub fn is_w_hermitian(&self) -> bool {
        self.is_square() && self.sharp() == *self
    }

    /// `A* = A`, the condition on a Gram matrix.
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.conj_transpose() == *self
    }

    pub fn is_strictly_upper(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i + 1)).all(|j| self.get(i, j).is_zero()))
    }

    /// Reduced row echelon form and pivot columns; pivots are the first
    /// nonzero entries in column order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.ctx;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    let (x, y) = (m.get(p, j), m.get(r, j));
                    m.set(p, j, y);
                    m.set(r, j, x);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Fq2>> {
        let f = self.ctx;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fq2::ZERO; self.cols];
                v[fc] = Fq2::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Some `x` with `A x = b`.
    pub fn solve(&self, b: &[Fq2]) -> Option<Vec<Fq2>> {
        let mut aug = Self::zeros(self.ctx, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fq2::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::InvalidParameter("not square".into()));
        }
        let mut aug = Self::zeros(self.ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fq2::ONE);
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(Error::DegenerateForm);
        }
        let mut out = Self::zeros(self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, m.get(i, n + j));
            }
        }
        Ok(out)
    }

    /// Ranks of `A^0, A^1, …, A^N`.
    fn power_ranks(&self) -> Vec<usize> {
        let n = self.rows;
        let mut out = vec![n];
        let mut p = Self::identity(self.ctx, n);
        for _ in 0..n {
            p = p.mul(self);
            out.push(p.rank());
        }
        out
    }

    fn type_from_ranks(ranks: &[usize]) -> Partition {
        let cols: Vec<u32> = ranks.windows(2).map(|w| (w[0] - w[1]) as u32).filter(|&d| d > 0).collect();
        Partition::from_unsorted(cols).transpose()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.power_ranks().last() == Some(&0)
    }

    /// Jordan type from `μ'_i = rk A^{i-1} - rk A^i`.
    pub fn jordan_type(&self) -> Result<Partition> {
        if !self.is_square() {
            return Err(Error::NotNilpotent);
        }
        let ranks = self.power_ranks();
        if *ranks.last().expect("nonempty") != 0 {
            return Err(Error::NotNilpotent);
        }
        Ok(Self::type_from_ranks(&ranks))
    }

    /// `(s, λ)`: size of the invertible Fitting component and the Jordan
    /// type of the nilpotent one.
    pub fn fitting_type(&self) -> Result<(usize, Partition)> {
        if !self.is_square() {
            return Err(Error::InvalidParameter("not square".into()));
        }
        let ranks = self.power_ranks();
        let s = *ranks.last().expect("nonempty");
        Ok((s, Self::type_from_ranks(&ranks)))
    }
}

impl fmt::Display for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.ctx.display(x)).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFMatrix({}x{} over {}):\n{self}", self.rows, self.cols, self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_solve() {
        let f = FieldCtx::new(5).unwrap();
        let a = FFMatrix::from_ints(f, &[vec![1, 0, 3], vec![0, 1, 1]]).unwrap();
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        let b = vec![f.from_int(1), f.from_int(0)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let sing = FFMatrix::from_ints(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.solve(&[f.from_int(1), f.from_int(0)]).is_none());
        assert!(sing.inverse().is_err());
        let inv = a.mul(&a.transpose()).inverse().unwrap();
        assert_eq!(inv.mul(&a.mul(&a.transpose())), FFMatrix::identity(f, 2));
    }

    #[test]
    fn fitting_split() {
        let f = FieldCtx::new(3).unwrap();
        let d = FFMatrix::from_ints(f, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(d.fitting_type().unwrap(), (1, Partition::new(vec![1]).unwrap()));
        assert!(d.jordan_type().is_err());
        assert_eq!(FFMatrix::identity(f, 3).fitting_type().unwrap(), (3, Partition::empty()));
    }
}
