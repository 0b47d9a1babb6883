use proptest::prelude::*;

use diagspread::catalog::LoadedGroup;
use diagspread::chartab::{
    class_mult_coefficient, dixon_character_table, Cyclotomic, DEFAULT_CLASS_CAP,
};

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(vec![1u64, 3, 4, 5, 8, 12, 15]),
        prop::collection::vec(-4i64..5, 16),
    )
        .prop_map(|(n, c)| Cyclotomic::from_powers(n, &c[..n as usize]))
}

proptest! {
    #[test]
    fn conjugation_is_an_involutive_homomorphism(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
    }

    #[test]
    fn field_operations(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn simplify_and_embed_preserve_value(a in cyclotomic()) {
        let s = a.simplify();
        prop_assert_eq!(a.order() % s.order(), 0);
        prop_assert_eq!(s.clone(), a.clone());
        prop_assert_eq!(a.embed(a.order() * 2), a);
    }
}

#[test]
fn roots_of_unity_sum_to_zero() {
    for n in [2u64, 3, 5, 7, 12] {
        let s = (0..n).fold(Cyclotomic::zero(n), |acc, k| {
            acc.add(&Cyclotomic::root_of_unity(n, k))
        });
        assert!(s.is_zero(), "n = {n}");
    }
}

#[test]
fn class_multiplication_is_a_class_function() {
    for name in ["A5", "PSL(2,7)"] {
        let lg = LoadedGroup::load(name).unwrap();
        let t = &lg.table;
        let r = t.classes().len();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let members = &t.classes()[k].members;
                    let first = class_mult_coefficient(t, i, j, members[0]);
                    for &h in members.iter().step_by(7) {
                        assert_eq!(
                            class_mult_coefficient(t, i, j, h),
                            first,
                            "{name} ({i},{j},{k})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn psl27_table() {
    let lg = LoadedGroup::load("PSL(2,7)").unwrap();
    let ct = dixon_character_table(&lg.table, DEFAULT_CLASS_CAP).unwrap();
    assert_eq!(ct.degrees, vec![1, 3, 3, 6, 7, 8]);
    ct.check_row_orthogonality().unwrap();
    ct.check_column_orthogonality().unwrap();
    ct.check_degree_sum().unwrap();
    ct.check_class_algebra(&lg.table, None).unwrap();
    // the degree-3 characters take (-1 ± sqrt(-7))/2 on the elements of order 7
    let c7 = lg.table.class_by_label("7A").unwrap();
    let v = ct.value(1, c7).add(ct.value(2, c7));
    assert_eq!(v.as_integer(), Some(-1));
}

#[test]
fn m11_degrees() {
    let lg = LoadedGroup::load("M11").unwrap();
    let ct = dixon_character_table(&lg.table, DEFAULT_CLASS_CAP).unwrap();
    assert_eq!(ct.degrees, vec![1, 10, 10, 10, 11, 16, 16, 44, 45, 55]);
    ct.check_row_orthogonality().unwrap();
    ct.check_degree_sum().unwrap();
}
