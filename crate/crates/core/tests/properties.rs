//! Property tests for the exact scalar layer: field axioms, canonical-form
//! idempotence, series multiplicativity and the textual round-trip.

use proptest::prelude::*;
use qcurrent_core::{OmegaRational, QRational, Rational};

/// Small random element of Q(q): ratio of sparse Laurent polynomials.
fn qrational_strategy() -> impl Strategy<Value = QRational> {
    let term = (-6i64..=6, 1i64..=4, -3i64..=3)
        .prop_map(|(n, d, e)| QRational::monomial(Rational::new(n.into(), d.into()), e));
    let poly = prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut acc = QRational::zero();
        for t in terms {
            acc += &t;
        }
        acc
    });
    (poly.clone(), poly).prop_map(|(a, b)| {
        if b.is_zero() {
            a
        } else {
            &a / &b
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in qrational_strategy(), b in qrational_strategy(), c in qrational_strategy()) {
        // associativity and commutativity
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        // distributivity
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // inverses
        prop_assert_eq!(&a - &a, QRational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), QRational::one());
        }
    }

    #[test]
    fn canonical_form_is_stable(a in qrational_strategy(), b in qrational_strategy()) {
        // equal values have equal representations: build the same value two
        // ways and compare the full debug form
        if !b.is_zero() {
            let x = &a / &b;
            let y = &(&a * &b) / &(&b * &b);
            prop_assert_eq!(format!("{x:?}"), format!("{y:?}"));
        }
    }

    #[test]
    fn display_round_trips(a in qrational_strategy()) {
        let s = a.to_string();
        let back: QRational = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn series_multiplicativity(
        n1 in prop::collection::vec(-4i64..=4, 1..3),
        n2 in prop::collection::vec(-4i64..=4, 1..3),
        d1 in -4i64..=4,
        d2 in -4i64..=4,
    ) {
        // expansion of a product equals the truncated product of expansions
        let lift = |v: &[i64]| -> Vec<QRational> {
            v.iter().map(|&x| QRational::from_int(x)).collect()
        };
        let den = |c: i64| vec![QRational::one(), QRational::from_int(c)];
        let f = OmegaRational::new(lift(&n1), den(d1)).unwrap();
        let g = OmegaRational::new(lift(&n2), den(d2)).unwrap();
        let t = 6;
        let sf = f.series_expand(t).unwrap();
        let sg = g.series_expand(t).unwrap();
        let mut prod_num = vec![QRational::zero(); n1.len() + n2.len() - 1];
        for (i, x) in lift(&n1).iter().enumerate() {
            for (j, y) in lift(&n2).iter().enumerate() {
                prod_num[i + j] += &(x * y);
            }
        }
        let mut prod_den = vec![QRational::zero(); 3];
        for (i, x) in den(d1).iter().enumerate() {
            for (j, y) in den(d2).iter().enumerate() {
                prod_den[i + j] += &(x * y);
            }
        }
        let fg = OmegaRational::new(prod_num, prod_den).unwrap();
        let expanded = fg.series_expand(t).unwrap();
        prop_assert!(sf.mul(&sg).unwrap().eq_series(&expanded));
    }
}
