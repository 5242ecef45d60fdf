use std::ops::{Add, Mul};

use super::{Field, Ring};

/// Formal power series in `z` truncated after `z^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Pads or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> R {
        self.coeffs.get(n).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, o: &Series<R>) -> Series<R> {
        let order = self.order().min(o.order());
        let mut out = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn add(&self, o: &Series<R>) -> Series<R> {
        let order = self.order().min(o.order());
        let coeffs = (0..=order).map(|i| self.coeffs[i].clone() + o.coeffs[i].clone()).collect();
        Series { coeffs }
    }

    /// Coefficient-wise image under a ring map.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<R: Ring> Mul for &Series<R> {
    type Output = Series<R>;
    fn mul(self, o: &Series<R>) -> Series<R> {
        Series::mul(self, o)
    }
}

impl<R: Ring> Add for &Series<R> {
    type Output = Series<R>;
    fn add(self, o: &Series<R>) -> Series<R> {
        Series::add(self, o)
    }
}

fn embed<R: Ring>(n: u64) -> R {
    let mut acc = R::zero();
    for bit in (0..64).rev() {
        acc = acc.clone() + acc;
        if n >> bit & 1 == 1 {
            acc = acc + R::one();
        }
    }
    acc
}

/// `e^{γz} = Σ γ^k z^k / k!`.
pub fn exp_series<F: Field>(gamma: &F, order: usize) -> Series<F> {
    let mut coeffs = vec![F::one()];
    for k in 1..=order {
        let prev = coeffs[k - 1].clone();
        coeffs.push(prev * gamma.clone() / embed::<F>(k as u64));
    }
    Series::new(coeffs, order)
}

/// `(-βz; t)_∞ = Σ t^{C(n,2)} β^n z^n / (t;t)_n`.
pub fn q_exponential_series<F: Field>(beta: &F, t: &F, order: usize) -> Series<F> {
    let mut coeffs = vec![F::one()];
    let mut tp = F::one(); // t^{n-1}
    for n in 1..=order {
        let tn = tp.clone() * t.clone();
        let prev = coeffs[n - 1].clone();
        coeffs.push(prev * tp.clone() * beta.clone() / (F::one() - tn.clone()));
        tp = tn;
    }
    Series::new(coeffs, order)
}

/// `1 / (uz; r)_∞ = Σ u^n z^n / (r;r)_n`.
pub fn inverse_pochhammer_series<F: Field>(u: &F, r: &F, order: usize) -> Series<F> {
    let mut coeffs = vec![F::one()];
    let mut rp = F::one();
    for n in 1..=order {
        rp = rp * r.clone();
        let prev = coeffs[n - 1].clone();
        coeffs.push(prev * u.clone() / (F::one() - rp.clone()));
    }
    Series::new(coeffs, order)
}

/// `1 / (1 - az) = Σ a^n z^n`.
pub fn geometric_series<R: Ring>(a: &R, order: usize) -> Series<R> {
    let mut coeffs = vec![R::one()];
    for n in 1..=order {
        let prev = coeffs[n - 1].clone();
        coeffs.push(prev * a.clone());
    }
    Series::new(coeffs, order)
}
