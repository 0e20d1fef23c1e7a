use qinv_core::classify::{self, CensusTables};
use qinv_core::construct;
use qinv_core::linspace::{self, Subspace};
use qinv_core::FieldCtx;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn raw_orbits_at_q3() {
    let f = FieldCtx::parse("3^1:4").unwrap();
    let t = CensusTables::new(&f, classify::enumerate_subspaces(&f, 3, 4).unwrap()).unwrap();
    let mut pairs16 = Vec::new();
    let mut pairs12 = Vec::new();
    for i in 0..t.len() {
        for j in 0..t.len() {
            let (a, b) = (t.subspaces()[i].clone(), t.subspaces()[j].clone());
            match t.count(i, j) {
                16 => pairs16.push((a, b)),
                12 => pairs12.push((a, b)),
                _ => {}
            }
        }
    }
    assert_eq!(classify::orbit_partition(&f, &pairs16), vec![40]);
    let sizes12 = classify::orbit_partition(&f, &pairs12);
    assert!(sizes12.iter().all(|&s| s == 40));
}

#[test]
fn stabilizer_is_fq_star() {
    let f = FieldCtx::parse("3^1:4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let a = Subspace::random(&f, 3, &mut rng).unwrap();
        let b = Subspace::random(&f, 3, &mut rng).unwrap();
        let st = classify::stabilizer(&f, &a, &b);
        assert!(st.iter().all(|&g| f.in_fq(g)));
        assert_eq!(st.len() as u64, f.q() - 1);
    }
}

#[test]
fn equivalent_finds_the_acting_scalar() {
    let f = FieldCtx::parse("5^1:4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = Subspace::random(&f, 3, &mut rng).unwrap();
    let b = Subspace::random(&f, 3, &mut rng).unwrap();
    let g = f.generator_pow(77);
    let (a2, b2) = classify::act(&f, g, &a, &b).unwrap();
    let h = classify::equivalent(&f, &a, &b, &a2, &b2).unwrap();
    assert!(f.in_fq(f.div(h, g).unwrap()));
    let other = Subspace::random(&f, 3, &mut rng).unwrap();
    let n = |x: &Subspace, y: &Subspace| linspace::inverse_intersection_bruteforce(&f, x, y).unwrap().count;
    if n(&a, &other) != n(&a, &b) {
        assert!(classify::equivalent(&f, &a, &b, &a, &other).is_none());
    }
}

#[test]
fn self_paired_members_have_the_closed_form() {
    for spec in ["3^1:4", "2^2:8", "5^1:4"] {
        let f = FieldCtx::parse(spec).unwrap();
        let t = linspace::linear_kernel(&f, &[f.one(); 4]);
        let q = f.q();
        let mut found = 0;
        for g in f.elements().filter(|g| !g.is_zero()) {
            for alpha in f.elements().filter(|a| !a.is_zero()) {
                let s = f.mul(alpha, alpha);
                if f.pow(s, q * q) != s || f.in_fq(s) {
                    continue;
                }
                let (a, b) = construct::corollary_pair(&f, alpha, g).unwrap();
                if a == b {
                    assert!(classify::self_paired_parameter(&f, &a).unwrap().is_some(), "{spec}");
                    found += 1;
                }
            }
            if found > 0 {
                break;
            }
        }
        assert!(found > 0, "{spec}");
        assert!(classify::self_paired_parameter(&f, &t).unwrap().is_none() || q.is_multiple_of(2));
    }
}

#[test]
fn orbit_pairs_generate_the_whole_field() {
    let f = FieldCtx::parse("3^1:4").unwrap();
    let r = classify::orbit_census(&f, 16).unwrap();
    let cl = &r.classes_by_action[0];
    let (_, sa, sb) = construct::make_special_pair(&f, 3, cl.a, cl.b).unwrap();
    let w = linspace::inverse_intersection_bruteforce(&f, &sa, &sb).unwrap().witnesses;
    assert_eq!(classify::generated_subfield_degree(&f, &w), 4);
    assert_eq!(classify::generated_subfield_degree(&f, &f.subfield_elements(9).unwrap()), 2);
}

#[test]
fn census_spectrum_q3_three_dimensional() {
    let c = classify::intersection_census(&FieldCtx::parse("3^1:4").unwrap(), 3, 4).unwrap();
    let want = [(4, 240), (6, 160), (8, 640), (10, 200), (12, 320), (16, 40)];
    assert_eq!(c.counts.iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>(), want);
    assert_eq!(c.total_pairs(), 40 * 40);
    assert_eq!(c.max_non_subfield(), Some(16));
}

#[test]
fn weil_check_flags_only_allowed_ratios() {
    let c = classify::intersection_census(&FieldCtx::parse("3^1:4").unwrap(), 3, 4).unwrap();
    let w = classify::weil_gap_check(&c);
    assert!(w.pass);
    assert_eq!(w.threshold, 7);
    assert_eq!(w.above.keys().copied().collect::<Vec<_>>(), vec![8]);
}
