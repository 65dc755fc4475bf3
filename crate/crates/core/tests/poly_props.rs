use proptest::prelude::*;
use qbic_core::cohom::{monomials, SparsePoly};
use qbic_core::gf::{Field, FieldElement};

fn field() -> Field {
    Field::new(3, 2).unwrap()
}

// A homogeneous polynomial in three variables with coefficient codes drawn
// from F_9.
fn poly(deg: u32) -> impl Strategy<Value = SparsePoly> {
    let mons = monomials(deg, 3);
    prop::collection::vec(0u32..9, mons.len()).prop_map(move |codes| {
        let f = field();
        codes.iter().zip(&mons).fold(SparsePoly::zero(&f, 3, deg), |acc, (&c, m)| {
            acc.add(&SparsePoly::monomial(&f, m.clone(), f.from_code(c).unwrap()))
        })
    })
}

fn point() -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::vec(0u32..9, 3).prop_map(|c| c.iter().map(|&x| field().from_code(x).unwrap()).collect())
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_map(a in poly(2), b in poly(3), x in point()) {
        let f = field();
        prop_assert_eq!(a.mul(&b).evaluate(&x), f.mul(a.evaluate(&x), b.evaluate(&x)));
        prop_assert_eq!(a.pow(3).evaluate(&x), f.pow(a.evaluate(&x), 3));
    }

    #[test]
    fn frobenius_power_is_pth_power(a in poly(2), x in point()) {
        let f = field();
        prop_assert_eq!(a.frobenius_power(1).evaluate(&x), f.frobenius(a.evaluate(&x), 1));
        prop_assert_eq!(a.frobenius_power(1), a.pow(3));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(2), b in poly(1)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
    }
}
