use oppairs_core::{Integers, IntegersMod, TruncatedSeries};
use proptest::prelude::*;

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries<Integers>> {
    prop::collection::vec(-20i64..=20, order).prop_map(move |c| TruncatedSeries::from_ints(Integers, &c, order).unwrap())
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries<Integers>> {
    (prop::bool::ANY, prop::collection::vec(-5i64..=5, order - 1)).prop_map(move |(neg, tail)| {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(tail);
        TruncatedSeries::from_ints(Integers, &c, order).unwrap()
    })
}

const N: usize = 24;

proptest! {
    #[test]
    fn ring_laws(a in series(N), b in series(N), c in series(N)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sub(&a).unwrap(), TruncatedSeries::zero(Integers, N).unwrap());
    }

    #[test]
    fn inverse_and_division(u in unit_series(N), a in series(N)) {
        let one = TruncatedSeries::one(Integers, N).unwrap();
        prop_assert_eq!(u.mul(&u.invert().unwrap()).unwrap(), one);
        prop_assert_eq!(a.div(&u).unwrap().mul(&u).unwrap(), a.clone());
        prop_assert_eq!(u.pow(-3).unwrap().mul(&u.pow(3).unwrap()).unwrap(), TruncatedSeries::one(Integers, N).unwrap());
    }

    #[test]
    fn dissection_is_complete(a in series(N), m in 1usize..6) {
        // a = sum_r q^r A_r(q^m)
        let mut rebuilt = TruncatedSeries::zero(Integers, N).unwrap();
        for r in 0..m {
            let part = a.dissect(m, r).unwrap();
            let spread = part.inflate(m, N - r).unwrap();
            let mut coeffs = vec![0i64; N];
            for (i, c) in spread.coeffs().iter().enumerate() {
                coeffs[i + r] = i64::try_from(c).unwrap();
            }
            rebuilt = rebuilt.add(&TruncatedSeries::from_ints(Integers, &coeffs, N).unwrap()).unwrap();
        }
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn dissect_undoes_inflate(a in series(N), k in 1usize..5) {
        let spread = a.inflate(k, k * N).unwrap();
        prop_assert_eq!(spread.dissect(k, 0).unwrap(), a);
    }

    #[test]
    fn reduction_is_a_ring_morphism(a in series(N), u in unit_series(N), m in 2u64..50) {
        let (ra, ru) = (a.reduce_mod(m).unwrap(), u.reduce_mod(m).unwrap());
        prop_assert_eq!(a.mul(&u).unwrap().reduce_mod(m).unwrap(), ra.mul(&ru).unwrap());
        prop_assert_eq!(a.add(&u).unwrap().reduce_mod(m).unwrap(), ra.add(&ru).unwrap());
        prop_assert_eq!(a.div(&u).unwrap().reduce_mod(m).unwrap(), ra.div(&ru).unwrap());
        prop_assert_eq!(a.lift_into(IntegersMod::new(m).unwrap()).unwrap(), ra);
    }

    #[test]
    fn negating_the_variable_twice_is_identity(a in series(N)) {
        prop_assert_eq!(a.negate_variable().negate_variable(), a);
    }
}
