use clifford_lab_core::clifford::Multivector;
use clifford_lab_core::lie::Rat;
use clifford_lab_core::scalar::{root_of_unity_8, Exact, Scalar};
use proptest::prelude::*;

fn exact(parts: [(i64, i64); 4]) -> Exact {
    let r = |(p, q): (i64, i64)| Rat::new(p.into(), q.into());
    Exact::new(r(parts[0]), r(parts[1]), r(parts[2]), r(parts[3]))
}

fn scalar() -> impl Strategy<Value = Exact> {
    prop::array::uniform4((-6i64..=6, 1i64..=4)).prop_map(exact)
}

fn multivector(dim: usize) -> impl Strategy<Value = Multivector<Exact>> {
    prop::collection::vec(-3i64..=3, 1 << dim)
        .prop_map(move |c| Multivector::from_coefficients(dim, &c.into_iter().map(Exact::from_i64).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Exact::one());
        }
    }

    #[test]
    fn clifford_product_is_associative(x in multivector(4), y in multivector(4), z in multivector(4)) {
        let lhs = x.clifford_mul(&y).unwrap().clifford_mul(&z).unwrap();
        let rhs = x.clifford_mul(&y.clifford_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vector_product_splits(v in prop::collection::vec(-3i64..=3, 4), phi in multivector(4)) {
        // v·φ = v∧φ − v⌟φ
        let v = Multivector::vector(4, &v.into_iter().map(Exact::from_i64).collect::<Vec<_>>());
        let split = v.wedge(&phi).unwrap().sub(&Multivector::contract(&v, &phi).unwrap()).unwrap();
        prop_assert_eq!(v.clifford_mul(&phi).unwrap(), split);
    }

    #[test]
    fn transpose_reverses_products(x in multivector(3), y in multivector(3)) {
        let lhs = x.clifford_mul(&y).unwrap().transpose();
        prop_assert_eq!(lhs, y.transpose().clifford_mul(&x.transpose()).unwrap());
    }
}

#[test]
fn generators_square_to_minus_one() {
    for k in 0..5 {
        let e = Multivector::<Exact>::generator(5, k);
        assert_eq!(e.clifford_mul(&e).unwrap(), Multivector::scalar(5, Exact::from_i64(-1)));
    }
}

#[test]
fn eighth_roots() {
    let z = root_of_unity_8::<Exact>(1);
    let mut p = Exact::one();
    for _ in 0..8 {
        p = p.mul(&z);
    }
    assert_eq!(p, Exact::one());
    assert_eq!(z.mul(&z), Exact::i().neg());
    assert_eq!(root_of_unity_8::<Exact>(3), z.mul(&z).mul(&z));
}
