use proptest::prelude::*;
use qinv_core::classify::{self, CensusTables};
use qinv_core::linspace::{self, Subspace};
use qinv_core::{FieldCtx, FieldElem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup() -> impl Strategy<Value = (FieldCtx, usize, u64)> {
    (prop::sample::select(&["2^1:6", "3^1:4", "2^2:6", "5^1:3"][..]), 1usize..4, any::<u64>())
        .prop_map(|(s, d, seed)| {
            let f = FieldCtx::parse(s).unwrap();
            let d = d.min(f.fq_dim());
            (f, d, seed)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn qpoly_round_trip((f, d, seed) in setup()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Subspace::random(&f, d, &mut rng).unwrap();
        let a = linspace::qpoly_from_subspace(&f, &s).unwrap();
        prop_assert_eq!(a.dim(), d);
        prop_assert!(s.elements(&f).iter().all(|&w| a.eval(&f, w).is_zero()));
        prop_assert_eq!(linspace::kernel(&f, &a).unwrap(), s);
    }

    #[test]
    fn rescale_matches_scaled_kernel((f, d, seed) in setup(), g in 1u64..) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Subspace::random(&f, d, &mut rng).unwrap();
        let gamma = f.elem(1 + g % (f.size() - 1)).unwrap();
        let a = linspace::qpoly_from_subspace(&f, &s).unwrap();
        let scaled = s.scale(&f, f.inv(gamma).unwrap());
        prop_assert_eq!(a.rescale(&f, gamma).unwrap(), linspace::qpoly_from_subspace(&f, &scaled).unwrap());
    }

    #[test]
    fn intersection_is_equivariant((f, d, seed) in setup(), g in 1u64..) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Subspace::random(&f, d, &mut rng).unwrap();
        let b = Subspace::random(&f, d, &mut rng).unwrap();
        let gamma = f.elem(1 + g % (f.size() - 1)).unwrap();
        let (a2, b2) = classify::act(&f, gamma, &a, &b).unwrap();
        let before = linspace::inverse_intersection_bruteforce(&f, &a, &b).unwrap();
        let after = linspace::inverse_intersection_bruteforce(&f, &a2, &b2).unwrap();
        prop_assert_eq!(before.count, after.count);
        let mut moved: Vec<FieldElem> = before.witnesses.iter().map(|&w| f.mul(gamma, w)).collect();
        moved.sort();
        prop_assert_eq!(moved, after.witnesses);
    }
}

#[test]
fn enumeration_matches_gaussian_binomial() {
    for (spec, d, e, q) in [("2^1:6", 3, 6, 2), ("3^1:4", 2, 4, 3), ("2^2:4", 1, 2, 4), ("5^1:4", 3, 4, 5)] {
        let f = FieldCtx::parse(spec).unwrap();
        let s = classify::enumerate_subspaces(&f, d, e).unwrap();
        assert_eq!(s.len() as u64, classify::gaussian_binomial(e as u32, d as u32, q));
    }
}

#[test]
fn census_tables_agree_with_brute_force() {
    let f = FieldCtx::parse("3^1:4").unwrap();
    let t = CensusTables::new(&f, classify::enumerate_subspaces(&f, 2, 4).unwrap()).unwrap();
    for i in (0..t.len()).step_by(7) {
        for j in (0..t.len()).step_by(11) {
            let (a, b) = (&t.subspaces()[i], &t.subspaces()[j]);
            let bf = linspace::inverse_intersection_bruteforce(&f, a, b).unwrap();
            assert_eq!(t.count(i, j), bf.count as u64);
            assert_eq!(t.witnesses(i, j), bf.witnesses);
        }
    }
}

#[test]
fn canonical_form_ignores_basis_choice() {
    let f = FieldCtx::parse("2^2:6").unwrap();
    let g = f.generator();
    let (u, v) = (f.pow(g, 5), f.pow(g, 17));
    let w4 = f.fq_elements().into_iter().find(|&e| f.mul(e, e) != e).unwrap();
    let s1 = Subspace::from_basis(&f, &[u, v]).unwrap();
    let w = f.add(u, f.mul(w4, v));
    let s2 = Subspace::from_basis(&f, &[w, v]).unwrap();
    assert_eq!(s1, s2);
    assert_eq!(Subspace::parse(&f, &s1.format(&f)).unwrap(), s1);
    assert!(Subspace::from_basis(&f, &[u, f.mul(w4, u)]).is_err());
}
