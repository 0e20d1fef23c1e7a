use proptest::prelude::*;
use qinv_core::poly::{self, Poly};
use qinv_core::{FieldCtx, FieldElem};

const FIELDS: &[&str] = &["2^1:8", "3^1:5", "2^2:6", "5^2:2", "7^1:3", "3^2:4"];

fn field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(FIELDS).prop_map(|s| FieldCtx::parse(s).unwrap())
}

fn el(f: &FieldCtx, i: u64) -> FieldElem {
    f.elem(i % f.size()).unwrap()
}

fn poly_of(f: &FieldCtx, c: &[u64]) -> Poly {
    Poly::new(c.iter().map(|&i| el(f, i)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(f in field(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let (a, b, c) = (el(&f, x), el(&f, y), el(&f, z));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.size() - 1), f.one());
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_fq(f in field(), x in any::<u64>(), y in any::<u64>(), j in 0usize..4) {
        let (a, b) = (el(&f, x), el(&f, y));
        prop_assert_eq!(f.frobenius(f.add(a, b), j), f.add(f.frobenius(a, j), f.frobenius(b, j)));
        prop_assert_eq!(f.frobenius(a, j), f.pow(a, f.q().pow(j as u32)));
        prop_assert_eq!(f.in_fq(a), f.frobenius(a, 1) == a);
    }

    #[test]
    fn coords_round_trip(f in field(), x in any::<u64>()) {
        let a = el(&f, x);
        let c = f.coords(a);
        prop_assert_eq!(c.len(), f.fq_dim());
        prop_assert!(c.iter().all(|&t| f.in_fq(t)));
        prop_assert_eq!(f.from_coords(&c), a);
    }

    #[test]
    fn division_identity(f in field(), a in prop::collection::vec(any::<u64>(), 1..9), b in prop::collection::vec(any::<u64>(), 1..6)) {
        let (pa, pb) = (poly_of(&f, &a), poly_of(&f, &b));
        prop_assume!(!pb.is_zero());
        let (quo, rem) = pa.div_rem(&f, &pb).unwrap();
        prop_assert_eq!(quo.mul(&f, &pb).add(&f, &rem), pa);
        prop_assert!(rem.is_zero() || rem.degree() < pb.degree());
    }

    #[test]
    fn gcd_divides_both(f in field(), a in prop::collection::vec(any::<u64>(), 1..7), b in prop::collection::vec(any::<u64>(), 1..7), c in prop::collection::vec(any::<u64>(), 1..4)) {
        let common = poly_of(&f, &c);
        prop_assume!(!common.is_zero());
        let pa = poly_of(&f, &a).mul(&f, &common);
        let pb = poly_of(&f, &b).mul(&f, &common);
        prop_assume!(!pa.is_zero() && !pb.is_zero());
        let g = poly::gcd(&f, &pa, &pb).unwrap();
        prop_assert!(pa.rem(&f, &g).unwrap().is_zero());
        prop_assert!(pb.rem(&f, &g).unwrap().is_zero());
        prop_assert!(g.degree() >= common.degree());
        prop_assert_eq!(g.leading(), f.one());
    }

    #[test]
    fn eval_is_ring_hom(f in field(), a in prop::collection::vec(any::<u64>(), 1..6), b in prop::collection::vec(any::<u64>(), 1..6), x in any::<u64>()) {
        let (pa, pb, w) = (poly_of(&f, &a), poly_of(&f, &b), el(&f, x));
        prop_assert_eq!(pa.mul(&f, &pb).eval(&f, w), f.mul(pa.eval(&f, w), pb.eval(&f, w)));
        prop_assert_eq!(pa.add(&f, &pb).eval(&f, w), f.add(pa.eval(&f, w), pb.eval(&f, w)));
    }
}

#[test]
fn distinct_roots_of_field_polynomial() {
    let f = FieldCtx::parse("3^1:4").unwrap();
    let x81 = Poly::from_terms(&f, [(81, f.one()), (1, f.minus_one())]);
    assert_eq!(poly::distinct_root_count(&f, &x81).unwrap(), 81);
    let x9 = Poly::from_terms(&f, [(9, f.one()), (1, f.minus_one())]);
    assert_eq!(x9.roots_by_scan(&f).unwrap(), f.subfield_elements(9).unwrap());
    let sq = x9.mul(&f, &x9);
    assert_eq!(poly::distinct_root_count(&f, &sq).unwrap(), 9);
}

#[test]
fn parse_format_round_trip() {
    let f = FieldCtx::parse("5^1:3").unwrap();
    for s in ["4;2;0;0;0;0;0;1", "1", "0;1,2;3"] {
        let p = Poly::parse(&f, s).unwrap();
        assert_eq!(Poly::parse(&f, &p.format(&f)).unwrap(), p);
    }
}
