//! Group algebra of the wreath product `G wr S_n` over cyclotomic scalars.

mod element;
mod kernel;
mod ratalg;
mod wreath;

pub use element::AlgebraElement;
pub use ratalg::RatAlgebraElement;
pub use wreath::{perm_rank, WreathElement, WreathGroup};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::kernel::{convolve, convolve_naive};
    use super::*;
    use crate::groups::GroupData;
    use crate::scalar::{rat, Cyclotomic, Poly};

    fn ctx(g: &str, n: usize) -> Arc<WreathGroup> {
        WreathGroup::new(GroupData::from_spec(&g.parse().unwrap()).unwrap(), n).unwrap()
    }

    fn q(p: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_rational(rat(p, d))
    }

    fn element(w: &Arc<WreathGroup>, seeds: &[(u64, i64, i64, i64)]) -> AlgebraElement {
        let size = w.size() as u64;
        let z = Cyclotomic::root_of_unity(3, 1).unwrap();
        AlgebraElement::from_terms(
            w,
            seeds.iter().map(|&(c, a, b, d)| (c % size, &q(a, d) + &z.scale(&rat(b, d)))),
        )
        .unwrap()
    }

    #[test]
    fn kernel_matches_naive() {
        let w = ctx("S3", 3);
        let a = element(&w, &[(3, 1, 0, 2), (77, -3, 1, 5), (200, 7, 7, 1), (12, 0, 1, 1)]);
        let b = element(&w, &[(5, 2, 1, 3), (1000, 1, -1, 1), (77, 4, 0, 7)]);
        assert_eq!(convolve(&w, a.terms(), b.terms()), convolve_naive(&w, a.terms(), b.terms()));
        let big = element(&w, &[(1, 1 << 60, 1 << 59, 3), (9, -(1 << 61), 5, 7)]);
        let prod = convolve(&w, big.terms(), big.terms());
        assert_eq!(prod, convolve_naive(&w, big.terms(), big.terms()));
        let dense: Vec<_> = (0..w.size() as u64).map(|c| (c, 1, (c % 3) as i64 - 1, 1)).collect();
        let d = element(&w, &dense);
        assert_eq!(convolve(&w, d.terms(), a.terms()), convolve_naive(&w, d.terms(), a.terms()));
    }

    #[test]
    fn generators_and_relations() {
        let w = ctx("C3", 3);
        let one = AlgebraElement::one(&w);
        let s1 = AlgebraElement::s(&w, 1).unwrap();
        let s2 = AlgebraElement::s(&w, 2).unwrap();
        assert_eq!(&s1 * &s1, one);
        assert_eq!(&(&s1 * &s2) * &s1, &(&s2 * &s1) * &s2);
        let e12 = AlgebraElement::e(&w, 1, 2).unwrap();
        assert_eq!(&e12 * &e12, e12);
        assert_eq!(&s1 * &e12, &e12 * &s1);
        assert!(AlgebraElement::s(&w, 3).is_err());
        assert!(AlgebraElement::g(&w, 4, 0).is_err());
        let j1 = AlgebraElement::jucys_murphy(&w, 1).unwrap();
        assert!(j1.is_zero());
        let j2 = AlgebraElement::jucys_murphy(&w, 2).unwrap();
        assert_eq!(j2, &e12 * &s1);
        let j3 = AlgebraElement::jucys_murphy(&w, 3).unwrap();
        assert_eq!(j2.commutator(&j3), AlgebraElement::zero(&w));
    }

    #[test]
    fn class_sum_is_central_in_slot() {
        let w = ctx("S3", 2);
        let c = AlgebraElement::class_sum(&w, 1, 1).unwrap();
        for g in 0..6 {
            let x = AlgebraElement::g(&w, 1, g).unwrap();
            assert_eq!(c.commutator(&x), AlgebraElement::zero(&w));
        }
        let s = AlgebraElement::s(&w, 1).unwrap();
        assert_eq!(&(&s * &c) * &s, AlgebraElement::class_sum(&w, 2, 1).unwrap());
    }

    #[test]
    fn serialization_round_trip() {
        let w = ctx("C3", 2);
        let x = element(&w, &[(0, 1, 0, 1), (4, -1, 2, 3), (17, 0, 1, 1)]);
        let text = x.to_structured();
        assert_eq!(AlgebraElement::parse_structured(&w, &text).unwrap(), x);
        assert!(AlgebraElement::parse_structured(&w, "999: 1").is_err());
        assert!(AlgebraElement::parse_structured(&w, "1 1").is_err());
        let y = &AlgebraElement::one(&w) + &AlgebraElement::s(&w, 1).unwrap().scale(&q(-1, 2));
        assert_eq!(y.to_human(), "1 + -1/2*[1; 1 | 2 1]");
    }

    #[test]
    fn embedding_preserves_products() {
        let small = ctx("C2", 2);
        let large = ctx("C2", 3);
        let a = AlgebraElement::jucys_murphy(&small, 2).unwrap();
        let b = AlgebraElement::g(&small, 1, 1).unwrap();
        let lhs = (&a * &b).embed(&large).unwrap();
        let rhs = &a.embed(&large).unwrap() * &b.embed(&large).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(a.embed(&large).unwrap(), AlgebraElement::jucys_murphy(&large, 2).unwrap());
        assert!(a.embed(&ctx("C3", 3)).is_err());
    }

    #[test]
    fn rational_evaluation_cancels() {
        let w = ctx("C2", 2);
        let s = AlgebraElement::s(&w, 1).unwrap();
        let e = AlgebraElement::e(&w, 1, 2).unwrap();
        let c = q(1, 1);
        let zero = AlgebraElement::zero(&w);
        let r = RatAlgebraElement::linear_over(&s, &zero, &c);
        assert_eq!(r.eval(&c).unwrap(), s);
        let pole = RatAlgebraElement::linear_over(&s, &e, &c);
        assert!(matches!(pole.eval(&c), Err(crate::Error::Pole { .. })));
        assert_eq!(pole.eval(&q(3, 1)).unwrap(), &s + &e.scale(&q(1, 2)));
        let sq = pole.checked_mul(&pole).unwrap();
        assert_eq!(sq.denominator(), &Poly::from_roots([&c, &c]));
        let sum = r.checked_add(&pole).unwrap();
        let want = RatAlgebraElement::linear_over(&s.scale(&q(2, 1)), &e, &c);
        assert!(sum.equals(&want).unwrap());
        let one = RatAlgebraElement::constant(AlgebraElement::one(&w));
        let tail = RatAlgebraElement::new(&w, vec![e.clone()], Poly::from_roots([&c, &c])).unwrap();
        let mixed = one.checked_add(&tail).unwrap();
        assert_eq!(mixed.eval(&q(3, 1)).unwrap(), &AlgebraElement::one(&w) + &e.scale(&q(1, 4)));
        let coef = pole.coefficient(s.terms().keys().next().copied().unwrap()).unwrap();
        assert_eq!(coef.as_constant(), Some(Cyclotomic::one()));
    }

    proptest! {
        #[test]
        fn distributive_and_associative(
            xs in prop::collection::vec((0u64..48, -5i64..5, -5i64..5, 1i64..4), 1..6),
            ys in prop::collection::vec((0u64..48, -5i64..5, -5i64..5, 1i64..4), 1..6),
            zs in prop::collection::vec((0u64..48, -5i64..5, -5i64..5, 1i64..4), 1..6),
        ) {
            let w = ctx("C2", 3);
            let (x, y, z) = (element(&w, &xs), element(&w, &ys), element(&w, &zs));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(convolve(&w, x.terms(), y.terms()), convolve_naive(&w, x.terms(), y.terms()));
        }
    }
}
