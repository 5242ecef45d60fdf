//! Matrices over F_q and F_{q²} for odd primes q, and brute-force counting
//! oracles for the branching weights.

mod counts;
mod forms;
mod matrix;
mod subspace;

pub use counts::{
    c0_bruteforce, c0_formula, case_counts_bruteforce, case_counts_formula, class_size, count_l_bruteforce,
    count_ltilde_bruteforce, count_ltilde_bruteforce_with, l_formula, l_row_bruteforce, ltilde_formula,
    ltilde_row_bruteforce, ltilde_row_bruteforce_with, nilpotent_census, UnitaryCase,
};
pub use forms::{
    canonical_nilpotent_gl, canonical_nilpotent_hermitian, canonical_nilpotent_skew_hermitian, cayley_unitary,
    hermitian_congruence, isotropic_flag, model_gram,
};
pub use matrix::FFMatrix;
pub use subspace::{tau_k_gram, tau_k_radical_check, v_subspace, Subspace};

use std::fmt;

use crate::error::{Error, Result};

/// `a + bε` with `ε² = δ`; elements of F_q have `b = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq2 {
    pub a: u32,
    pub b: u32,
}

impl Fq2 {
    pub const ZERO: Fq2 = Fq2 { a: 0, b: 0 };
    pub const ONE: Fq2 = Fq2 { a: 1, b: 0 };

    pub fn is_zero(self) -> bool {
        self == Fq2::ZERO
    }

    /// Whether the element lies in the prime field.
    pub fn in_base(self) -> bool {
        self.b == 0
    }
}

/// The prime `q` together with the quadratic extension `F_q(ε)`, `ε² = δ`,
/// `δ` the smallest quadratic non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    q: u32,
    delta: u32,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FieldCtx {
    pub fn new(q: u32) -> Result<Self> {
        if q == 2 || !is_prime(q) || q > 46_000 {
            return Err(Error::NotOddPrime(q));
        }
        let squares: Vec<bool> = {
            let mut s = vec![false; q as usize];
            for x in 0..q as u64 {
                s[(x * x % q as u64) as usize] = true;
            }
            s
        };
        let delta = (1..q).find(|&d| !squares[d as usize]).expect("odd prime has a non-residue");
        Ok(FieldCtx { q, delta })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn eps(&self) -> Fq2 {
        Fq2 { a: 0, b: 1 }
    }

    pub fn from_int(&self, n: i64) -> Fq2 {
        Fq2 { a: n.rem_euclid(self.q as i64) as u32, b: 0 }
    }

    pub fn add(&self, x: Fq2, y: Fq2) -> Fq2 {
        Fq2 { a: (x.a + y.a) % self.q, b: (x.b + y.b) % self.q }
    }

    pub fn neg(&self, x: Fq2) -> Fq2 {
        Fq2 { a: (self.q - x.a) % self.q, b: (self.q - x.b) % self.q }
    }

    pub fn sub(&self, x: Fq2, y: Fq2) -> Fq2 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fq2, y: Fq2) -> Fq2 {
        let q = self.q as u64;
        let (a, b, c, d) = (x.a as u64, x.b as u64, y.a as u64, y.b as u64);
        Fq2 {
            a: ((a * c + b * d % q * self.delta as u64) % q) as u32,
            b: ((a * d + b * c) % q) as u32,
        }
    }

    /// Frobenius `x ↦ x^q`, i.e. `a + bε ↦ a - bε`.
    pub fn conj(&self, x: Fq2) -> Fq2 {
        Fq2 { a: x.a, b: (self.q - x.b) % self.q }
    }

    /// `x x̄ = a² - δb²`, in F_q.
    pub fn norm(&self, x: Fq2) -> u32 {
        self.mul(x, self.conj(x)).a
    }

    fn inv_base(&self, a: u32) -> u32 {
        // Fermat
        let (mut base, mut e, mut acc) = (a as u64, self.q as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.q as u64;
            }
            base = base * base % self.q as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn inv(&self, x: Fq2) -> Result<Fq2> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = Fq2 { a: self.inv_base(self.norm(x)), b: 0 };
        Ok(self.mul(self.conj(x), n))
    }

    pub fn pow(&self, x: Fq2, mut e: u64) -> Fq2 {
        let (mut base, mut acc) = (x, Fq2::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All `q²` elements, ordered by `(b, a)`.
    pub fn elements(&self) -> impl Iterator<Item = Fq2> + '_ {
        (0..self.q).flat_map(move |b| (0..self.q).map(move |a| Fq2 { a, b }))
    }

    /// The `q` elements of F_q.
    pub fn base_elements(&self) -> impl Iterator<Item = Fq2> + '_ {
        (0..self.q).map(|a| Fq2 { a, b: 0 })
    }

    /// Some `x` with `x x̄ = a`, found by exhaustive search.
    pub fn norm_preimage(&self, a: u32) -> Result<Fq2> {
        self.elements()
            .find(|&x| self.norm(x) == a % self.q)
            .ok_or_else(|| Error::InvalidParameter(format!("{a} is not a norm")))
    }

    /// Element with index `i` in the order of [`FieldCtx::elements`].
    pub fn element(&self, i: u64) -> Fq2 {
        let q = self.q as u64;
        Fq2 { a: (i % q) as u32, b: (i / q % q) as u32 }
    }

    pub fn display(&self, x: Fq2) -> String {
        match (x.a, x.b) {
            (a, 0) => a.to_string(),
            (0, 1) => "e".into(),
            (0, b) => format!("{b}e"),
            (a, 1) => format!("{a}+e"),
            (a, b) => format!("{a}+{b}e"),
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(e), e^2 = {}", self.q, self.delta)
    }
}
