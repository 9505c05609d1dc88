use e8trig::alcove::{AlcovePoint, RootDatum};
use e8trig::exact::determinant;
use e8trig::exact::Matrix;
use e8trig::scalar::{q_frac, Rational};
use proptest::prelude::*;

const TYPES: [&str; 9] = ["A1", "A2", "A4", "D4", "D5", "E6", "E7", "E8", "A7"];

fn point(rank: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-20i64..=20, 1i64..=6).prop_map(|(n, d)| q_frac(n, d)), rank)
}

fn datum_and_point() -> impl Strategy<Value = (RootDatum, Vec<Rational>)> {
    (0..TYPES.len()).prop_flat_map(|i| {
        let d = RootDatum::from_label(TYPES[i]).unwrap();
        let r = d.rank();
        (Just(d), point(r))
    })
}

#[test]
fn omega_order_is_cartan_determinant() {
    for t in TYPES {
        let d = RootDatum::from_label(t).unwrap();
        let n = d.rank();
        let c = Matrix::from_fn(n, n, |i, j| q_frac(d.cartan[i][j], 1));
        let det = determinant(&c);
        assert_eq!(q_frac(d.fundamental_group().order() as i64, 1), det, "{t}");
        assert_eq!(d.omega_elements().len() as u64, d.fundamental_group().order(), "{t}");
    }
}

#[test]
fn kac_points_lie_in_alcove_with_integral_multiple() {
    for (t, m) in [("E8", 2), ("E8", 3), ("E7", 2), ("E6", 3), ("D4", 2), ("A3", 4)] {
        let d = RootDatum::from_label(t).unwrap();
        for c in d.kac_classes(m).unwrap() {
            assert!(d.in_closed_alcove(&c.point.coords), "{t} {m}");
            assert!(c.point.coords.iter().all(|x| (x * q_frac(m as i64, 1)).is_integer()));
            let weighted: u64 = c.labels[0] + c.labels[1..].iter().zip(&d.highest).map(|(s, a)| s * *a as u64).sum::<u64>();
            assert_eq!(weighted, m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normalisation_is_idempotent((d, x) in datum_and_point()) {
        let (p, word) = d.normalize_to_alcove(&x);
        prop_assert!(d.in_closed_alcove(&p.coords));
        prop_assert_eq!(&d.apply_affine_word(&word, &x), &p.coords);
        let (again, word2) = d.normalize_to_alcove(&p.coords);
        prop_assert_eq!(again, p);
        prop_assert!(word2.is_empty());
    }

    #[test]
    fn e8_stabilisers_are_trivial(x in point(8)) {
        let d = RootDatum::from_label("E8").unwrap();
        let (p, _) = d.normalize_to_alcove(&x);
        prop_assert_eq!(d.stabilizer(&AlcovePoint::new(p.coords)).unwrap().len(), 1);
    }
}
