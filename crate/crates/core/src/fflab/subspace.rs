use super::{FFMatrix, FieldCtx, Fq2};
use crate::error::{Error, Result};

/// A subspace of F_{q²}^N, stored by the nonzero rows of its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<Fq2>>,
}

impl Subspace {
    pub fn from_vectors(ctx: FieldCtx, n: usize, vecs: &[Vec<Fq2>]) -> Self {
        if vecs.is_empty() {
            return Subspace { n, basis: Vec::new() };
        }
        let (m, pivots) = FFMatrix::from_rows(ctx, vecs.to_vec()).expect("rectangular").rref();
        Subspace { n, basis: (0..pivots.len()).map(|i| m.row(i).to_vec()).collect() }
    }

    pub fn full(ctx: FieldCtx, n: usize) -> Self {
        let id = FFMatrix::identity(ctx, n);
        Subspace { n, basis: (0..n).map(|i| id.row(i).to_vec()).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Fq2>] {
        &self.basis
    }

    pub fn contains(&self, ctx: FieldCtx, v: &[Fq2]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::from_vectors(ctx, self.n, &vs).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, ctx: FieldCtx, o: &Subspace) -> bool {
        self.basis.iter().all(|v| o.contains(ctx, v))
    }
}

/// `V_k = {v : X^{k-1} v ∈ Ran X^k}`.
pub fn v_subspace(x: &FFMatrix, k: u32) -> Result<Subspace> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let f = x.ctx();
    let n = x.rows();
    let a = x.pow(k - 1);
    let b = x.pow(k).scale(f.from_int(-1));
    // kernel of [X^{k-1} | -X^k] projected to the first block
    let mut m = FFMatrix::zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.get(i, j));
            m.set(i, n + j, b.get(i, j));
        }
    }
    let vs: Vec<Vec<Fq2>> = m.kernel().into_iter().map(|v| v[..n].to_vec()).collect();
    Ok(Subspace::from_vectors(f, n, &vs))
}

/// `V_k` and the Gram matrix of `τ_k(x, y) = τ(X^{k-2}x, y) - τ(X^{k-1}x', y)`
/// on its basis, where `X^k x' = X^{k-1} x` and `τ(x, y) = y* W x`.
pub fn tau_k_gram(x: &FFMatrix, k: u32) -> Result<(Subspace, FFMatrix)> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    if !x.is_w_hermitian() {
        return Err(Error::NotHermitian);
    }
    let f = x.ctx();
    let n = x.rows();
    let vk = v_subspace(x, k)?;
    let w = FFMatrix::w(f, n);
    let (xk2, xk1, xk) = (x.pow(k - 2), x.pow(k - 1), x.pow(k));
    let tau = |a: &[Fq2], b: &[Fq2]| {
        let wa = w.mul_vec(a);
        b.iter().zip(&wa).fold(Fq2::ZERO, |acc, (&bi, &v)| f.add(acc, f.mul(f.conj(bi), v)))
    };
    let d = vk.dim();
    let mut g = FFMatrix::zeros(f, d, d);
    for (i, xi) in vk.basis().iter().enumerate() {
        let xp = xk.solve(&xk1.mul_vec(xi)).expect("x lies in V_k");
        let left = xk2.mul_vec(xi);
        let corr = xk1.mul_vec(&xp);
        for (j, yj) in vk.basis().iter().enumerate() {
            g.set(i, j, f.sub(tau(&left, yj), tau(&corr, yj)));
        }
    }
    Ok((vk, g))
}

/// Checks that `τ_k` is Hermitian on `V_k` and that its radical is `V_{k-1}`.
pub fn tau_k_radical_check(x: &FFMatrix, k: u32) -> Result<bool> {
    let f = x.ctx();
    let n = x.rows();
    let (vk, g) = tau_k_gram(x, k)?;
    let d = vk.dim();
    let hermitian = (0..d).all(|i| (0..d).all(|j| g.get(j, i) == f.conj(g.get(i, j))));
    // c is in the radical iff Σ_i c_i τ_k(b_i, b_j) = 0 for every j
    let coeffs = g.transpose().kernel();
    let rad: Vec<Vec<Fq2>> = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![Fq2::ZERO; n];
            for (ci, bi) in c.iter().zip(vk.basis()) {
                for t in 0..n {
                    v[t] = f.add(v[t], f.mul(*ci, bi[t]));
                }
            }
            v
        })
        .collect();
    let rad = Subspace::from_vectors(f, n, &rad);
    Ok(hermitian && rad == v_subspace(x, k - 1)?)
}
