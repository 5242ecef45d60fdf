use super::{FFMatrix, FieldCtx, Fq2};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Block-diagonal Jordan matrix of type `μ` (ones on the superdiagonal of each block).
pub fn canonical_nilpotent_gl(ctx: FieldCtx, mu: &Partition) -> FFMatrix {
    let n = mu.size();
    let mut x = FFMatrix::zeros(ctx, n, n);
    let mut start = 0;
    for &len in mu.parts() {
        for j in 1..len as usize {
            x.set(start + j - 1, start + j, Fq2::ONE);
        }
        start += len as usize;
    }
    x
}

/// Gram matrix of the form with `τ(v_ij, v_{i,μ_i-j+1}) = 1` on the box basis,
/// boxes listed row by row. The operator `v_ij ↦ v_{i,j-1}` is
/// [`canonical_nilpotent_gl`] in this basis and is Hermitian for this form.
pub fn model_gram(ctx: FieldCtx, mu: &Partition) -> FFMatrix {
    let n = mu.size();
    let mut g = FFMatrix::zeros(ctx, n, n);
    let mut start = 0;
    for &len in mu.parts() {
        let len = len as usize;
        for j in 0..len {
            g.set(start + j, start + len - 1 - j, Fq2::ONE);
        }
        start += len;
    }
    g
}

/// `τ(x, y) = y* G x`.
fn form(g: &FFMatrix, x: &[Fq2], y: &[Fq2]) -> Fq2 {
    let f = g.ctx();
    let gx = g.mul_vec(x);
    y.iter().zip(&gx).fold(Fq2::ZERO, |acc, (&yi, &v)| f.add(acc, f.mul(f.conj(yi), v)))
}

fn axpy(f: FieldCtx, a: Fq2, x: &[Fq2], y: &[Fq2]) -> Vec<Fq2> {
    x.iter().zip(y).map(|(&xi, &yi)| f.add(f.mul(a, xi), yi)).collect()
}

/// Some `S` with `S* G S = W_N`, for a nondegenerate Hermitian Gram matrix `G`.
///
/// Orthogonalizes, rescales each diagonal entry to 1 with a norm preimage,
/// then pairs orthonormal vectors into hyperbolic pairs placed at mirrored
/// positions.
pub fn hermitian_congruence(g: &FFMatrix) -> Result<FFMatrix> {
    let f = g.ctx();
    let n = g.rows();
    if !g.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if g.rank() < n {
        return Err(Error::DegenerateForm);
    }
    if *g == FFMatrix::w(f, n) {
        return Ok(FFMatrix::identity(f, n));
    }

    let mut work: Vec<Vec<Fq2>> = (0..n)
        .map(|i| {
            let mut e = vec![Fq2::ZERO; n];
            e[i] = Fq2::ONE;
            e
        })
        .collect();
    let mut ortho = Vec::with_capacity(n);
    while !work.is_empty() {
        // a nonzero Hermitian form has an anisotropic vector among b_i, b_i + b_j, b_i + ε b_j
        let mut pick = None;
        'search: for i in 0..work.len() {
            if !form(g, &work[i], &work[i]).is_zero() {
                pick = Some((i, work[i].clone()));
                break;
            }
            for j in 0..work.len() {
                if j == i {
                    continue;
                }
                for c in [Fq2::ONE, f.eps()] {
                    let v = axpy(f, c, &work[j], &work[i]);
                    if !form(g, &v, &v).is_zero() {
                        pick = Some((i, v));
                        break 'search;
                    }
                }
            }
        }
        let (i, v) = pick.ok_or(Error::DegenerateForm)?;
        work.remove(i);
        let d = form(g, &v, &v);
        let dinv = f.inv(d)?;
        for b in work.iter_mut() {
            let c = f.neg(f.mul(form(g, b, &v), dinv));
            *b = axpy(f, c, &v, b);
        }
        // rescale so that τ(v, v) = 1
        let x = f.norm_preimage(f.inv(d)?.a)?;
        ortho.push(v.iter().map(|&y| f.mul(x, y)).collect::<Vec<_>>());
    }

    let c = f.norm_preimage(f.q() - 1)?;
    let half = f.inv(f.from_int(2))?;
    let mut cols = vec![vec![Fq2::ZERO; n]; n];
    for j in 0..n / 2 {
        let (e1, e2) = (&ortho[2 * j], &ortho[2 * j + 1]);
        cols[j] = axpy(f, c, e2, e1);
        let minus = axpy(f, f.neg(c), e2, e1);
        cols[n - 1 - j] = minus.iter().map(|&y| f.mul(half, y)).collect();
    }
    if n % 2 == 1 {
        cols[n / 2] = ortho[n - 1].clone();
    }
    let s = FFMatrix::from_columns(f, n, &cols);
    debug_assert_eq!(s.conj_transpose().mul(g).mul(&s), FFMatrix::w(f, n));
    Ok(s)
}

/// A `W_N`-Hermitian nilpotent of Jordan type `μ`: the box-basis model
/// carried to the form `W_N` by [`hermitian_congruence`].
pub fn canonical_nilpotent_hermitian(ctx: FieldCtx, mu: &Partition) -> Result<FFMatrix> {
    let x = canonical_nilpotent_gl(ctx, mu);
    let s = hermitian_congruence(&model_gram(ctx, mu))?;
    Ok(s.inverse()?.mul(&x).mul(&s))
}

/// `ε` times [`canonical_nilpotent_hermitian`].
pub fn canonical_nilpotent_skew_hermitian(ctx: FieldCtx, mu: &Partition) -> Result<FFMatrix> {
    Ok(canonical_nilpotent_hermitian(ctx, mu)?.scale(ctx.eps()))
}

/// `(I - A)(I + A)⁻¹`, unitary for skew-Hermitian `A` with `I + A` invertible.
pub fn cayley_unitary(a: &FFMatrix) -> Result<FFMatrix> {
    if !a.is_skew_hermitian() {
        return Err(Error::InvalidParameter("matrix is not skew-Hermitian".into()));
    }
    let i = FFMatrix::identity(a.ctx(), a.rows());
    Ok(i.sub(a).mul(&i.add(a).inverse()?))
}

/// Orthogonal complement of the span of `u` for the form `W`.
fn perp(f: FieldCtx, n: usize, u: &[Vec<Fq2>]) -> Vec<Vec<Fq2>> {
    if u.is_empty() {
        return (0..n).map(|i| FFMatrix::identity(f, n).column(i)).collect();
    }
    let w = FFMatrix::w(f, n);
    // τ(u, v) = v* W u = 0  ⟺  Σ v_i conj((W u)_i) = 0
    let rows: Vec<Vec<Fq2>> = u.iter().map(|x| w.mul_vec(x).into_iter().map(|y| f.conj(y)).collect()).collect();
    FFMatrix::from_rows(f, rows).expect("rectangular").kernel()
}

fn span_rank(f: FieldCtx, n: usize, vs: &[Vec<Fq2>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    FFMatrix::from_columns(f, n, vs).rank()
}

/// Basis of a complete `X`-stable flag whose first `⌊N/2⌋` members are
/// isotropic and whose later members are their orthogonal complements, for
/// a nilpotent `X` that is Hermitian or skew-Hermitian for `W_N`. In this
/// basis `X` is strictly upper triangular.
pub fn isotropic_flag(x: &FFMatrix) -> Result<FFMatrix> {
    let f = x.ctx();
    let n = x.rows();
    if !(x.is_skew_hermitian() || x.is_w_hermitian()) {
        return Err(Error::NotHermitian);
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let w = FFMatrix::w(f, n);
    let mut iso: Vec<Vec<Fq2>> = Vec::new();
    while 2 * iso.len() + 2 <= n {
        // K = U^⊥ ∩ X⁻¹(U)
        let mut rows: Vec<Vec<Fq2>> = Vec::new();
        for u in &iso {
            rows.push(w.mul_vec(u).into_iter().map(|y| f.conj(y)).collect());
        }
        if !iso.is_empty() {
            let ann = FFMatrix::from_rows(f, iso.clone()).expect("rectangular").kernel();
            let ann = FFMatrix::from_rows(f, ann).expect("rectangular");
            let ax = ann.mul(x);
            for i in 0..ax.rows() {
                rows.push(ax.row(i).to_vec());
            }
        } else {
            for i in 0..n {
                rows.push(x.row(i).to_vec());
            }
        }
        let k = FFMatrix::from_rows(f, rows).expect("rectangular").kernel();
        // complement of U inside K
        let mut comp: Vec<Vec<Fq2>> = Vec::new();
        let mut acc = iso.clone();
        for v in k {
            acc.push(v.clone());
            if span_rank(f, n, &acc) == acc.len() {
                comp.push(v);
            } else {
                acc.pop();
            }
        }
        let d = comp.len() as u32;
        let total = (f.q() as u64 * f.q() as u64).pow(d);
        let found = (1..total).find_map(|idx| {
            let mut v = vec![Fq2::ZERO; n];
            let mut r = idx;
            for c in &comp {
                let coef = f.element(r);
                r /= f.q() as u64 * f.q() as u64;
                v = axpy(f, coef, c, &v);
            }
            form(&w, &v, &v).is_zero().then_some(v)
        });
        iso.push(found.ok_or_else(|| Error::InvalidParameter("no isotropic vector found".into()))?);
    }
    let m = iso.len();
    let mut basis = iso.clone();
    if n % 2 == 1 {
        let up = perp(f, n, &iso);
        let mid = up
            .into_iter()
            .find(|v| {
                let mut t = iso.clone();
                t.push(v.clone());
                span_rank(f, n, &t) == t.len()
            })
            .expect("odd dimension leaves a middle vector");
        basis.push(mid);
    }
    for i in (1..=m).rev() {
        let outer = perp(f, n, &iso[..i - 1]);
        let v = outer
            .into_iter()
            .find(|v| {
                let mut t = basis.clone();
                t.push(v.clone());
                span_rank(f, n, &t) == t.len()
            })
            .expect("complements grow by one");
        basis.push(v);
    }
    Ok(FFMatrix::from_columns(f, n, &basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn congruence_examples() {
        let f = FieldCtx::new(3).unwrap();
        let w = FFMatrix::w(f, 3);
        assert_eq!(hermitian_congruence(&w).unwrap(), FFMatrix::identity(f, 3));
        let i2 = FFMatrix::identity(f, 2);
        let s = hermitian_congruence(&i2).unwrap();
        assert_eq!(s.conj_transpose().mul(&s), FFMatrix::w(f, 2));
        let d = FFMatrix::from_ints(f, &[vec![2]]).unwrap();
        let s = hermitian_congruence(&d).unwrap();
        assert_eq!(f.norm(s.get(0, 0)), 2);
        assert!(hermitian_congruence(&FFMatrix::zeros(f, 2, 2)).is_err());
    }

    #[test]
    fn skew_model_of_type_two() {
        let f = FieldCtx::new(3).unwrap();
        let x = canonical_nilpotent_skew_hermitian(f, &p(&[2])).unwrap();
        let mut want = FFMatrix::zeros(f, 2, 2);
        want.set(0, 1, f.eps());
        assert_eq!(x, want);
        assert!(x.is_skew_hermitian());
    }
}
