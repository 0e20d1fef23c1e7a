use qinv_core::certify;
use qinv_core::eform::{self, MultiPoly, Shape};
use qinv_core::linspace::{self, Subspace};
use qinv_core::FieldCtx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn e_substitutes_to_c0() {
    for (spec, d) in [("2^1:8", 3), ("5^1:4", 2), ("2^2:8", 4)] {
        let f = FieldCtx::parse(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let a = linspace::qpoly_from_subspace(&f, &Subspace::random(&f, d, &mut rng).unwrap()).unwrap();
            let b = linspace::qpoly_from_subspace(&f, &Subspace::random(&f, d, &mut rng).unwrap()).unwrap();
            let e = eform::e_of_pair(&f, &a, &b).unwrap();
            assert!(eform::check_property(&e));
            assert_eq!(e.to_univariate(&f), certify::certificate_c0(&f, &a, &b).unwrap());
        }
    }
}

#[test]
fn factor_reports_on_small_grids() {
    for p in [2u64, 3] {
        let f = FieldCtx::new(p, 1, 1).unwrap();
        let vals: Vec<_> = f.elements().collect();
        let units: Vec<_> = f.elements().filter(|e| !e.is_zero()).collect();
        let mut shapes = std::collections::BTreeSet::new();
        for &a0 in &units {
            for &a1 in &vals {
                for &a2 in &vals {
                    for &b0 in &units {
                        for &b1 in &vals {
                            for &b2 in &vals {
                                let e = eform::build_e(&f, &[a0, a1, a2], &[b0, b1, b2], -1).unwrap();
                                if e.is_zero() {
                                    continue;
                                }
                                let r = eform::factor_report(&f, &e).unwrap();
                                assert_ne!(r.shape, Shape::OtherSplit, "p={p} a={:?} b={:?} {:?} {:?}", [a0, a1, a2], [b0, b1, b2], r.binomial_linear_factors, r.n);
                                assert!(eform::check_property(&r.residual));
                                assert_eq!(r.expand(&f), e);
                                shapes.insert(r.shape);
                            }
                        }
                    }
                }
            }
        }
        assert!(shapes.contains(&Shape::IrreducibleCandidate));
    }
}

#[test]
fn coordinate_functionals_are_fq_valued() {
    let f = FieldCtx::parse("3^1:6").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let sb = Subspace::random(&f, 3, &mut rng).unwrap();
        let b = linspace::qpoly_from_subspace(&f, &sb).unwrap();
        let cc = eform::coordinate_change(&f, &b).unwrap();
        assert_eq!(cc.gammas.len(), 3);
        for w in sb.elements(&f) {
            let z = cc.z(&f, w);
            assert!(z.iter().all(|&t| f.in_fq(t)));
        }
        let sa = Subspace::random(&f, 3, &mut rng).unwrap();
        let a = linspace::qpoly_from_subspace(&f, &sa).unwrap();
        let e = eform::e_of_pair(&f, &a, &b).unwrap();
        let ez = cc.transform(&f, &e);
        for w in sb.elements(&f).into_iter().take(40) {
            let x = [w, f.frobenius(w, 1), f.frobenius(w, 2)];
            assert_eq!(ez.eval(&f, &cc.z(&f, w)), e.eval(&f, &x));
        }
    }
}

#[test]
fn conjugate_form_agrees_with_reduction() {
    for spec in ["2^2:12", "5^1:6"] {
        let f = FieldCtx::parse(spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..3 {
            let a = linspace::qpoly_from_subspace(&f, &Subspace::random(&f, 3, &mut rng).unwrap()).unwrap();
            let sb = Subspace::random(&f, 3, &mut rng).unwrap();
            let b = linspace::qpoly_from_subspace(&f, &sb).unwrap();
            let e = eform::e_of_pair(&f, &a, &b).unwrap();
            let direct = eform::conjugate_form(&f, &e, &b).unwrap();
            assert_eq!(direct, eform::conjugate_form_by_reduction(&f, &a, &b).unwrap());
            let t = eform::frobenius_conjugate_points(&f, &a, &b, &sb).unwrap();
            assert_eq!(t.vanish_on_e, [true; 3]);
            assert_eq!(t.vanish_on_conjugate, [true; 3]);
        }
    }
}

#[test]
fn multipoly_arithmetic() {
    let f = FieldCtx::new(5, 1, 1).unwrap();
    let x = MultiPoly::var(2, 0, f.one());
    let y = MultiPoly::var(2, 1, f.one());
    let s = x.add(&f, &y);
    let sq = s.mul(&f, &s);
    assert_eq!(sq.coeff(&[1, 1]), f.from_int(2));
    assert_eq!(s.pow(&f, 5), x.pow(&f, 5).add(&f, &y.pow(&f, 5)));
    let pt = [f.from_int(2), f.from_int(4)];
    assert_eq!(sq.eval(&f, &pt), f.from_int(1));
    assert!(sq.sub(&f, &sq).is_zero());
}

#[test]
fn factor_reports_random_wide() {
    let f = FieldCtx::parse("3^1:4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in [4usize, 5] {
        for _ in 0..40 {
            let mut draw = || {
                (0..n)
                    .map(|i| {
                        let v = rng.gen_range(0..f.size() + 4);
                        if i == 0 { f.elem(1 + v % (f.size() - 1)).unwrap() } else if v >= f.size() { f.zero() } else { f.elem(v).unwrap() }
                    })
                    .collect::<Vec<_>>()
            };
            let (a, b) = (draw(), draw());
            let e = eform::build_e(&f, &a, &b, -1).unwrap();
            let r = eform::factor_report(&f, &e).unwrap();
            assert_ne!(r.shape, Shape::OtherSplit);
            assert!(eform::check_property(&r.residual));
            assert_eq!(r.expand(&f), e);
        }
    }
}

#[test]
fn exceptional_quadratic_can_split() {
    let f = FieldCtx::new(5, 1, 1).unwrap();
    let one = [f.one(); 3];
    let e = eform::build_e(&f, &one, &one, -1).unwrap();
    let r = eform::factor_report(&f, &e).unwrap();
    assert_eq!(r.binomial_linear_factors.len(), 3);
    assert_eq!(r.shape, Shape::Exc2);
}
