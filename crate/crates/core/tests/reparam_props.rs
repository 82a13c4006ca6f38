mod common;

use proptest::prelude::*;
use tamepath::rational::{frac, q, Q};
use tamepath::Reparam;

use common::oracle_eval_reparam;

/// A morphism from increments: each step advances time by `dt/4` and value
/// by `dv/4`; a zero `dv` is a flat.
fn from_steps(steps: &[(u8, u8)]) -> Option<Reparam> {
    let mut pts = vec![(q(0), q(0))];
    for &(dt, dv) in steps {
        let (t, v) = pts.last().unwrap().clone();
        pts.push((t + frac(dt as i64, 4), v + frac(dv as i64, 4)));
    }
    Reparam::new(pts).ok()
}

fn steps() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((1u8..6, 0u8..4), 1..5)
}

fn reparam() -> impl Strategy<Value = Reparam> {
    steps().prop_filter_map("needs a positive target", |s| from_steps(&s))
}

/// Rescale the target of `r` to `len`.
fn with_dst(r: &Reparam, len: &Q) -> Reparam {
    let k = len / r.dst_len();
    Reparam::new(r.breakpoints().iter().map(|(t, v)| (t.clone(), v * &k)).collect()).unwrap()
}

/// Rescale the source of `r` to `len`.
fn with_src(r: &Reparam, len: &Q) -> Reparam {
    let k = len / r.src_len();
    Reparam::new(r.breakpoints().iter().map(|(t, v)| (t * &k, v.clone())).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn eval_matches_interpolation(r in reparam(), num in 0i64..=16) {
        let t = r.src_len() * frac(num, 16);
        prop_assert_eq!(r.eval(&t).unwrap(), oracle_eval_reparam(&r, &t));
    }

    #[test]
    fn composition_is_associative(a in reparam(), b in reparam(), c in reparam()) {
        let b = with_src(&b, a.dst_len());
        let c = with_src(&c, b.dst_len());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_units(a in reparam()) {
        let src = Reparam::identity(a.src_len()).unwrap();
        let dst = Reparam::identity(a.dst_len()).unwrap();
        prop_assert_eq!(src.compose(&a).unwrap(), a.clone());
        prop_assert_eq!(a.compose(&dst).unwrap(), a);
    }

    #[test]
    fn composite_evaluates_pointwise(a in reparam(), b in reparam(), num in 0i64..=24) {
        let b = with_src(&b, a.dst_len());
        let ab = a.compose(&b).unwrap();
        let t = a.src_len() * frac(num, 24);
        let expected = oracle_eval_reparam(&b, &oracle_eval_reparam(&a, &t));
        prop_assert_eq!(ab.eval(&t).unwrap(), expected);
    }

    #[test]
    fn tensor_is_associative(a in reparam(), b in reparam(), c in reparam()) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
    }

    #[test]
    fn tensor_is_functorial(a in reparam(), b in reparam(), c in reparam(), d in reparam()) {
        // (a ⊗ b) then (c ⊗ d) equals (a then c) ⊗ (b then d)
        let c = with_src(&c, a.dst_len());
        let d = with_src(&d, b.dst_len());
        let left = a.tensor(&b).compose(&c.tensor(&d)).unwrap();
        let right = a.compose(&c).unwrap().tensor(&b.compose(&d).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn regularity_is_closed_under_composition(a in reparam(), b in reparam()) {
        let b = with_src(&b, a.dst_len());
        let ab = a.compose(&b).unwrap();
        if a.is_regular() && b.is_regular() {
            prop_assert!(ab.is_regular());
        }
        if !a.is_regular() {
            prop_assert!(!ab.is_regular());
        }
    }

    #[test]
    fn preimage_brackets_the_level_set(a in reparam(), num in 0i64..=12) {
        let v = a.dst_len() * frac(num, 12);
        let (lo, hi) = a.preimage(&v).unwrap();
        prop_assert!(lo <= hi);
        prop_assert_eq!(a.eval(&lo).unwrap(), v.clone());
        prop_assert_eq!(a.eval(&hi).unwrap(), v.clone());
        for t in [&lo, &hi] {
            prop_assert!(*t >= q(0) && t <= a.src_len());
        }
        let eps = frac(1, 1000);
        if lo > eps {
            prop_assert!(a.eval(&(&lo - &eps)).unwrap() < v);
        }
        if &hi + &eps < *a.src_len() {
            prop_assert!(a.eval(&(&hi + &eps)).unwrap() > v);
        }
    }

    #[test]
    fn rescaling_keeps_shape(a in reparam(), n in 1i64..5) {
        let b = with_dst(&a, &q(n));
        prop_assert_eq!(b.dst_len(), &q(n));
        prop_assert_eq!(b.is_regular(), a.is_regular());
    }
}
