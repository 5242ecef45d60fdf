use hlbranch::exactalg::{int, rat, Rational, Ring};
use hlbranch::fflab::{class_size, l_formula, ltilde_formula};
use hlbranch::graphs::{BranchingGraph, GraphKind, GraphParam};
use hlbranch::hallittlewood::{plancherel_functional, principal_functional, two_point_functional, HlFunctional, Parity};
use hlbranch::measures::*;
use hlbranch::partitions::{binomial2, enumerate, Partition};
use hlbranch::Error;
use num_traits::{One, Signed, Zero};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn qpow(q: u32, e: i64) -> Rational {
    let b = int(q as i64);
    if e >= 0 {
        Ring::pow(&b, e as u32)
    } else {
        Rational::one() / Ring::pow(&b, (-e) as u32)
    }
}

/// Haar, Plancherel, Dirac at zero and a generic point, all at `t = 1/q`.
fn gl_points(q: u32) -> Vec<OmegaPoint> {
    let t = rat(1, q as i64);
    vec![
        OmegaPoint::haar(t.clone()).unwrap(),
        OmegaPoint::plancherel(t.clone()).unwrap(),
        OmegaPoint::dirac_zero(t.clone()).unwrap(),
        OmegaPoint::new(vec![rat(1, 2)], vec![rat(1, 8)], t).unwrap(),
    ]
}

fn unitary_families(t: &Rational, parity: Parity) -> Vec<HlFunctional> {
    vec![
        plancherel_functional(parity),
        principal_functional(Some(2), t.clone()).unwrap(),
        principal_functional(None, t.clone()).unwrap(),
        two_point_functional(rat(4, 5), rat(-3, 5)).unwrap(),
    ]
}

#[test]
fn gl_harmonic_examples() {
    let t = rat(1, 3);
    for omega in gl_points(3) {
        assert_eq!(gl_harmonic(&Partition::empty(), &omega).unwrap(), int(1));
    }
    let haar = OmegaPoint::haar(t.clone()).unwrap();
    for n in 0..=5 {
        for l in enumerate(n) {
            assert_eq!(gl_harmonic(&l, &haar).unwrap(), Ring::pow(&t, l.n_stat() as u32), "{l}");
        }
    }
    let planch = OmegaPoint::plancherel(t.clone()).unwrap();
    assert_eq!(gl_harmonic(&p(&[2]), &planch).unwrap(), rat(1, 2));
    // harmonicity at (1): (1 - t)/2 + φ(1,1) = 1
    assert_eq!(gl_harmonic(&p(&[1, 1]), &planch).unwrap(), (int(1) + &t) / int(2));
    // the zero matrix carries all the mass of the Dirac point
    let dirac = OmegaPoint::dirac_zero(t).unwrap();
    for n in 1..=5 {
        for l in enumerate(n) {
            let want = if l.len() == n { int(1) } else { int(0) };
            assert_eq!(gl_harmonic(&l, &dirac).unwrap(), want, "{l}");
        }
    }
}

#[test]
fn gl_mass_examples() {
    let t = rat(1, 3);
    let planch = OmegaPoint::plancherel(t.clone()).unwrap();
    assert_eq!(gl_cylinder_mass(&p(&[2]), &planch, 3).unwrap(), rat(1, 6));
    for omega in gl_points(3) {
        assert_eq!(gl_cylinder_mass(&Partition::empty(), &omega, 3).unwrap(), int(1));
        assert_eq!(gl_level_mass(0, &omega, 3).unwrap(), int(1));
        assert_eq!(gl_level_mass(1, &omega, 3).unwrap(), gl_level_mass_by_classes(1, &omega, 3).unwrap());
    }
    assert!(gl_cylinder_mass(&p(&[1]), &planch, 5).is_err());
    assert!(gl_level_mass(2, &planch, 5).is_err());
}

#[test]
fn haar_flatness() {
    for q in [3u32, 5] {
        let haar = OmegaPoint::haar(rat(1, q as i64)).unwrap();
        let phi_inf = principal_functional(None, rat(-1, q as i64)).unwrap();
        for n in 0..=6 {
            let flat = qpow(q, -(binomial2(n) as i64));
            for l in enumerate(n) {
                assert_eq!(gl_cylinder_mass(&l, &haar, q).unwrap(), flat, "{l}");
                assert_eq!(unitary_cylinder_mass(&l, &phi_inf, q).unwrap(), flat, "{l}");
            }
        }
    }
}

#[test]
fn haar_level_masses() {
    let q = 3;
    let haar = OmegaPoint::haar(rat(1, 3)).unwrap();
    let mut prev = Rational::zero();
    for n in 0..=6 {
        let m = gl_level_mass(n, &haar, q).unwrap();
        // q^{n(n-1)} nilpotents, each of mass q^{-n(n-1)/2}
        assert_eq!(m, qpow(q, binomial2(n) as i64));
        if n > 1 {
            assert!(m > prev);
        }
        prev = m;
    }
}

#[test]
fn level_mass_cross_route() {
    for q in [3u32, 5] {
        for omega in gl_points(q) {
            for n in 0..=4 {
                assert_eq!(
                    gl_level_mass(n, &omega, q).unwrap(),
                    gl_level_mass_by_classes(n, &omega, q).unwrap(),
                    "{omega} n={n}"
                );
            }
        }
    }
}

#[test]
fn h_series_examples() {
    let t = rat(1, 3);
    // h_n(α = (a)) = aⁿ, γ̃ = 1 - a
    let w = OmegaPoint::new(vec![int(1)], vec![], t.clone()).unwrap();
    assert_eq!(omega_h(3, &w), int(1));
    let pl = OmegaPoint::plancherel(t).unwrap();
    assert_eq!(omega_h(3, &pl), rat(1, 6));
}

#[test]
fn gl_harmonicity() {
    for q in [3u32, 5] {
        let t = rat(1, q as i64);
        let g = BranchingGraph::build(GraphKind::Hl, 6, GraphParam::T(t)).unwrap();
        for omega in gl_points(q) {
            assert!(g.is_harmonic(6, |l| gl_harmonic(l, &omega)).unwrap(), "{omega}");
        }
    }
}

#[test]
fn gl_mass_consistency() {
    for q in [3u32, 5] {
        for omega in gl_points(q) {
            for n in 0..=5 {
                for mu in enumerate(n) {
                    let lhs = gl_cylinder_mass(&mu, &omega, q).unwrap();
                    let mut rhs = Rational::zero();
                    for lambda in enumerate(n + 1) {
                        let l = Rational::from_integer(l_formula(&mu, &lambda, q));
                        if !l.is_zero() {
                            rhs += l * gl_cylinder_mass(&lambda, &omega, q).unwrap();
                        }
                    }
                    assert_eq!(lhs, rhs, "{omega} {mu}");
                }
            }
        }
    }
}

#[test]
fn unitary_examples() {
    let t = rat(-1, 3);
    let even = plancherel_functional(Parity::Even);
    let odd = plancherel_functional(Parity::Odd);
    assert_eq!(unitary_harmonic(&Partition::empty(), &even, &t).unwrap(), int(1));
    assert_eq!(unitary_harmonic(&p(&[1]), &odd, &t).unwrap(), int(1));
    assert_eq!(unitary_harmonic(&p(&[2]), &even, &t).unwrap(), rat(1, 2));
    let inf = principal_functional(None, t.clone()).unwrap();
    assert_eq!(unitary_harmonic(&p(&[1, 1]), &inf, &t).unwrap(), rat(1, 3));
    assert_eq!(unitary_cylinder_mass(&p(&[2]), &even, 3).unwrap(), rat(1, 6));
    assert_eq!(unitary_cylinder_mass(&Partition::empty(), &even, 3).unwrap(), int(1));
    assert!(matches!(unitary_harmonic(&p(&[1]), &even, &t), Err(Error::ParityMismatch(_))));
    assert!(matches!(unitary_harmonic(&p(&[2]), &odd, &t), Err(Error::ParityMismatch(_))));
    for f in unitary_families(&t, Parity::Odd) {
        assert_eq!(unitary_harmonic(&p(&[1]), &f, &t).unwrap(), int(1), "{f}");
    }
    // a principal functional is tied to its own t
    assert!(unitary_harmonic(&p(&[2]), &inf, &rat(-1, 5)).is_err());
}

#[test]
fn unitary_harmonicity() {
    let t = rat(-1, 3);
    for (kind, parity) in [(GraphKind::HlEven, Parity::Even), (GraphKind::HlOdd, Parity::Odd)] {
        let g = BranchingGraph::build(kind, 3, GraphParam::T(t.clone())).unwrap();
        for f in unitary_families(&t, parity) {
            assert!(g.is_harmonic(3, |l| unitary_harmonic(l, &f, &t)).unwrap(), "{f} {parity}");
        }
    }
}

#[test]
fn unitary_positivity() {
    let t = rat(-1, 3);
    for (kind, parity) in [(GraphKind::HlEven, Parity::Even), (GraphKind::HlOdd, Parity::Odd)] {
        let g = BranchingGraph::build(kind, 3, GraphParam::T(t.clone())).unwrap();
        for f in unitary_families(&t, parity) {
            for l in g.levels().iter().flatten() {
                let v = unitary_harmonic(l, &f, &t).unwrap();
                match &f {
                    HlFunctional::Principal { m: Some(m), .. } if l.len() > *m as usize => {
                        assert!(v.is_zero(), "{f} {l}")
                    }
                    // a specialization in two variables kills every column of length 3
                    HlFunctional::TwoPoint { .. } if l.len() > 2 => assert!(v.is_zero(), "{f} {l}"),
                    _ => assert!(v.is_positive(), "{f} {l}"),
                }
            }
        }
    }
}

#[test]
fn unitary_mass_consistency() {
    let q = 3;
    let t = rat(-1, 3);
    for parity in [Parity::Even, Parity::Odd] {
        for f in unitary_families(&t, parity) {
            let start = if parity == Parity::Even { 0 } else { 1 };
            for n in (start..=4).step_by(2) {
                for mu in enumerate(n) {
                    let lhs = unitary_cylinder_mass(&mu, &f, q).unwrap();
                    let mut rhs = Rational::zero();
                    for lambda in enumerate(n + 2) {
                        let l = Rational::from_integer(ltilde_formula(&mu, &lambda, q));
                        if !l.is_zero() {
                            rhs += l * unitary_cylinder_mass(&lambda, &f, q).unwrap();
                        }
                    }
                    assert_eq!(lhs, rhs, "{f} {mu}");
                }
            }
        }
    }
}

#[test]
fn measure_specs() {
    let q = 3;
    let points = gl_points(q);
    let mix = MeasureSpec::gl_mixture(
        vec![(rat(1, 4), points[0].clone()), (rat(3, 4), points[3].clone())],
        q,
    )
    .unwrap();
    for l in enumerate(3) {
        let want = rat(1, 4) * gl_harmonic(&l, &points[0]).unwrap() + rat(3, 4) * gl_harmonic(&l, &points[3]).unwrap();
        assert_eq!(mix.harmonic(&l).unwrap(), want);
    }
    let g = mix.harmonic_graph(4).unwrap();
    assert!(g.is_harmonic(4, |l| mix.harmonic(l)).unwrap());
    let gm = mix.mass_graph(4).unwrap();
    assert!(gm.is_harmonic(4, |l| mix.cylinder_mass(l)).unwrap());
    for n in 0..=3 {
        let direct: Rational = enumerate(n)
            .iter()
            .map(|l| Rational::from_integer(class_size(l, q)) * mix.cylinder_mass(l).unwrap())
            .sum();
        assert_eq!(mix.level_mass(n).unwrap().unwrap(), direct);
    }

    assert!(MeasureSpec::gl_mixture(vec![(rat(1, 2), points[0].clone())], q).is_err());
    assert!(MeasureSpec::gl(points[0].clone(), 5).is_err());
    let t = rat(-1, 3);
    assert!(MeasureSpec::unitary(Parity::Odd, plancherel_functional(Parity::Even), q).is_err());
    assert!(MeasureSpec::unitary(Parity::Even, principal_functional(None, rat(-1, 5)).unwrap(), q).is_err());
    let u = MeasureSpec::unitary(Parity::Odd, principal_functional(None, t).unwrap(), q).unwrap();
    assert_eq!(u.level_mass(1).unwrap(), None);
    assert!(u.mass_graph(2).unwrap().is_harmonic(2, |l| u.cylinder_mass(l)).unwrap());
}

#[test]
fn growth_transitions() {
    let t = rat(1, 3);
    let haar = OmegaPoint::haar(t.clone()).unwrap();
    let g = BranchingGraph::build(GraphKind::Hl, 4, GraphParam::T(t.clone())).unwrap();
    let chain = GrowthChain::new(&g, |l| gl_harmonic(l, &haar), 4).unwrap();
    let first = chain.transitions(&Partition::empty()).unwrap();
    assert_eq!(first.len(), 1);
    assert_eq!(first[0].probability, int(1));
    let from_one = chain.transitions(&p(&[1])).unwrap();
    let prob = |l: &Partition| from_one.iter().find(|s| &s.next == l).unwrap().probability.clone();
    assert_eq!(prob(&p(&[2])), rat(2, 3));
    assert_eq!(prob(&p(&[1, 1])), rat(1, 3));
    for level in &g.levels()[..4] {
        for mu in level {
            let s: Rational = chain.transitions(mu).unwrap().iter().map(|s| s.probability.clone()).sum();
            assert_eq!(s, int(1));
        }
    }
    // Dirac: the chain never leaves the one-column diagonal
    let dirac = OmegaPoint::dirac_zero(t).unwrap();
    let path = markov_growth(&g, |l| gl_harmonic(l, &dirac), 4, 1).unwrap();
    assert_eq!(path.last().unwrap(), &p(&[1, 1, 1, 1]));

    assert!(matches!(GrowthChain::new(&g, |_| Ok(int(1)), 3), Err(Error::NotHarmonic(_))));
    assert!(GrowthChain::new(&g, |l| gl_harmonic(l, &haar), 5).is_err());
}

#[test]
fn growth_is_deterministic() {
    let t = rat(1, 3);
    let haar = OmegaPoint::haar(t.clone()).unwrap();
    let g = BranchingGraph::build(GraphKind::Hl, 3, GraphParam::T(t)).unwrap();
    let chain = GrowthChain::new(&g, |l| gl_harmonic(l, &haar), 3).unwrap();
    assert_eq!(chain.sample_paths(50, 7), chain.sample_paths(50, 7));
    assert_ne!(chain.sample_paths(50, 7), chain.sample_paths(50, 8));
    for path in chain.sample_paths(20, 3) {
        assert_eq!(path.len(), 4);
        for (i, l) in path.iter().enumerate() {
            assert_eq!(l.size(), i);
        }
    }
}

#[test]
fn empirical_frequencies() {
    let t = rat(1, 3);
    let haar = OmegaPoint::haar(t.clone()).unwrap();
    let g = BranchingGraph::build(GraphKind::Hl, 2, GraphParam::T(t)).unwrap();
    let chain = GrowthChain::new(&g, |l| gl_harmonic(l, &haar), 2).unwrap();
    let paths = chain.sample_paths(100_000, 2024);
    let report = empirical_check(&paths, &chain, &p(&[1]));
    assert_eq!(report.visits, 100_000);
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.rows.len(), 2);

    let root = empirical_check(&paths, &chain, &Partition::empty());
    assert_eq!(root.rows.len(), 1);
    assert_eq!(root.rows[0].frequency, 1.0);
    assert!(root.passed());

    let empty = empirical_check(&[], &chain, &p(&[1]));
    assert!(empty.rows.is_empty());
    assert_eq!(empty.visits, 0);
}

#[test]
fn unitary_growth() {
    let t = rat(-1, 3);
    let f = plancherel_functional(Parity::Odd);
    let g = BranchingGraph::build(GraphKind::HlOdd, 2, GraphParam::T(t.clone())).unwrap();
    let chain = GrowthChain::new(&g, |l| unitary_harmonic(l, &f, &t), 2).unwrap();
    let paths = chain.sample_paths(2_000, 11);
    assert!(paths.iter().all(|p| p[0] == Partition::new(vec![1]).unwrap() && p[2].size() == 5));
    assert!(empirical_check(&paths, &chain, &p(&[1])).passed());
}

#[test]
fn tables() {
    let q = 3;
    let haar = MeasureSpec::gl(OmegaPoint::haar(rat(1, 3)).unwrap(), q).unwrap();
    let table = MeasureTable::build(&haar, 3).unwrap();
    let masses: Vec<Rational> = table.rows.iter().map(|r| r.mass.clone()).collect();
    assert_eq!(masses[0], int(1));
    for r in &table.rows {
        assert_eq!(r.mass, [int(1), int(1), rat(1, 3), rat(1, 27)][r.level]);
    }
    let csv = table.to_csv().unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "partition,n_stat,mass_num,mass_den,level_mass");
    assert_eq!(lines.next().unwrap(), "∅,0,1,1,1");
    assert!(csv.contains("\"(2,1)\",1,1,27,27"));
    let v: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
    assert_eq!(v["q"], 3);
    assert_eq!(v["rows"][0]["partition"], serde_json::json!([]));
    assert_eq!(v["level_masses"][2], "3");

    let u = MeasureSpec::unitary(Parity::Even, plancherel_functional(Parity::Even), q).unwrap();
    let table = MeasureTable::build(&u, 1).unwrap();
    let row = table.rows.iter().find(|r| r.partition == p(&[2])).unwrap();
    assert_eq!(row.mass, rat(1, 6));
    assert!(table.level_masses.is_none());
    assert!(table.to_csv().unwrap().lines().nth(1).unwrap().ends_with(','));
}
