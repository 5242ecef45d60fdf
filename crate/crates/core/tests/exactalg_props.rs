use hlbranch::exactalg::{
    int, pochhammer, q_exponential_series, rat, Poly, QuadExt, RatFun, Rational, Series,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..4).prop_map(Poly::new)
}

fn small_ratfun() -> impl Strategy<Value = RatFun> {
    (small_poly(), small_poly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn quad2() -> impl Strategy<Value = QuadExt> {
    (small_rat(), small_rat()).prop_map(|(a, b)| QuadExt::new(a, b, &int(2)))
}

proptest! {
    #[test]
    fn poly_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
    }

    #[test]
    fn poly_division(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn ratfun_field_laws(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn ratfun_eval_is_a_homomorphism(a in small_ratfun(), b in small_ratfun(), t in small_rat()) {
        let (Ok(ea), Ok(eb)) = (a.eval(&t), b.eval(&t)) else { return Ok(()) };
        if let Ok(s) = (&a + &b).eval(&t) {
            prop_assert_eq!(s, &ea + &eb);
        }
        if let Ok(p) = (&a * &b).eval(&t) {
            prop_assert_eq!(p, &ea * &eb);
        }
        prop_assert_eq!((&a - &b).eval(&t).unwrap(), &ea - &eb);
    }

    #[test]
    fn quad_field_laws(a in quad2(), b in quad2(), c in quad2()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if !b.is_zero() {
            prop_assert_eq!((a.clone() / b.clone()) * b.clone(), a);
        }
    }

    #[test]
    fn quad_sign_matches_bisection(a in small_rat(), b in small_rat()) {
        let x = QuadExt::new(a.clone(), b.clone(), &int(2));
        prop_assert_eq!(x.signum(), bisection_sign(&a, &b));
    }
}

/// Sign of `a + b√2` by bracketing √2 between rationals until both ends agree.
fn bisection_sign(a: &Rational, b: &Rational) -> i8 {
    if a.is_zero() && b.is_zero() {
        return 0;
    }
    let sign = |x: Rational| if x > Rational::zero() { 1 } else if x < Rational::zero() { -1 } else { 0 };
    let (mut lo, mut hi) = (int(1), int(2));
    loop {
        let (sl, sh) = (sign(a + b * &lo), sign(a + b * &hi));
        if sl == sh && sl != 0 {
            return sl;
        }
        let mid = (&lo + &hi) / int(2);
        if &mid * &mid < int(2) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Coefficient of `z^n` in `Π_{j=0}^{J} (1 + β t^j z)`, as a polynomial in t.
fn truncated_product(beta: &Rational, jmax: usize, order: usize) -> Vec<Poly> {
    let mut coeffs = vec![Poly::one()];
    coeffs.resize(order + 1, Poly::zero());
    for j in 0..=jmax {
        let factor = Poly::monomial(beta.clone(), j);
        for n in (1..=order).rev() {
            coeffs[n] = &coeffs[n] + &(&coeffs[n - 1] * &factor);
        }
    }
    coeffs
}

#[test]
fn q_exponential_matches_truncated_product() {
    let beta = rat(2, 3);
    let order = 4;
    let closed: Series<RatFun> =
        q_exponential_series(&RatFun::constant(beta.clone()), &RatFun::t(), order);
    for jmax in [4usize, 6, 9] {
        let prod = truncated_product(&beta, jmax, order);
        for n in 0..=order {
            // closed form times (t;t)_n is the monomial t^{C(n,2)} β^n; the
            // product times (t;t)_n must agree with it below degree J + 1
            let tt_n = pochhammer(&Poly::t(), &Poly::t(), n as u32);
            let c = closed.coeff(n);
            let lhs = (&RatFun::from(tt_n.clone()) * &c).as_poly().cloned().unwrap();
            let rhs = &prod[n] * &tt_n;
            let diff = &lhs - &rhs;
            for k in 0..=jmax {
                assert!(diff.coeff(k).is_zero(), "n={n} J={jmax} degree {k}");
            }
        }
    }
}

#[test]
fn q_exponential_rational_point_convergence() {
    let (beta, t) = (rat(1, 2), rat(-1, 3));
    let closed = q_exponential_series(&beta, &t, 3);
    let mut last_err: Option<Rational> = None;
    for jmax in [3usize, 6, 12] {
        let prod = truncated_product(&beta, jmax, 3);
        let err: Rational = (0..=3)
            .map(|n| {
                let d = prod[n].eval(&t) - closed.coeff(n);
                if d < Rational::zero() { -d } else { d }
            })
            .fold(Rational::zero(), |a, b| a + b);
        if let Some(prev) = &last_err {
            assert!(err < *prev);
        }
        last_err = Some(err);
    }
    assert!(last_err.unwrap() < rat(1, 10_000));
}

#[test]
fn q_exponential_low_order() {
    let t = RatFun::t();
    let beta = RatFun::constant(rat(5, 7));
    let s = q_exponential_series(&beta, &t, 2);
    assert_eq!(s.coeff(0), RatFun::one());
    let two = &t * &(&beta * &beta)
        / RatFun::from(Poly::one_minus_t_pow(1) * Poly::one_minus_t_pow(2));
    assert_eq!(s.coeff(2), two);
}
