use proptest::prelude::*;

use qjf_cli::{SerializedSeries, YSpec};
use qjf_core::qseries::QTSeries;
use qjf_core::ring::{Coeff, Rational, TLaurent, ULaurent};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::new(n, d))
}

fn t_laurent() -> impl Strategy<Value = TLaurent> {
    prop::collection::vec((-3i64..4, prop::collection::vec((-4i64..5, rational()), 0..4)), 0..4).prop_map(|ts| {
        TLaurent::from_terms(ts.into_iter().map(|(t, us)| (t, ULaurent::from_terms(us))))
    })
}

fn qt_series() -> impl Strategy<Value = QTSeries> {
    (-2i64..3, prop::collection::vec(t_laurent(), 0..6), 0i64..4)
        .prop_map(|(lead, c, extra)| QTSeries::new(lead, c.clone(), lead + c.len() as i64 + extra))
}

proptest! {
    #[test]
    fn json_round_trip_is_identity(s in qt_series()) {
        let ser = SerializedSeries::from_series(&s, YSpec::Formal);
        ser.check().unwrap();
        let back = SerializedSeries::from_json(&ser.to_json().unwrap()).unwrap();
        prop_assert_eq!(&back, &ser);
        let rebuilt = back.to_qt_series(s.prec()).unwrap();
        prop_assert_eq!(rebuilt.known_part(), s.known_part());
    }

    #[test]
    fn y1_sums_u_coefficients(s in qt_series()) {
        let ser = SerializedSeries::from_series(&s, YSpec::One);
        ser.check().unwrap();
        for (q, c) in s.terms() {
            for (t, p) in c.terms() {
                let want = p.at_one();
                let got = ser
                    .terms
                    .iter()
                    .find(|x| x.q == q && x.t == t)
                    .map(|x| x.c.parse::<Rational>().unwrap())
                    .unwrap_or_else(Rational::zero);
                prop_assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn malformed_json_is_rejected() {
    let unsorted = r#"{"variable_order":["q","t","u"],"terms":[{"q":2,"t":0,"u":0,"c":"1/1"},{"q":1,"t":0,"u":0,"c":"1/1"}]}"#;
    assert!(SerializedSeries::from_json(unsorted).is_err());
    let zero = r#"{"variable_order":["q","t","u"],"terms":[{"q":1,"t":0,"u":0,"c":"0/3"}]}"#;
    assert!(SerializedSeries::from_json(zero).is_err());
}
