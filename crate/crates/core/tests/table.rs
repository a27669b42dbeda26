//! Table rendering: exact round trips and stable layout.

use ghq_core::table::{fmt17, to_csv, to_json, Row, HEADER};
use proptest::prelude::*;

fn row_strategy() -> impl Strategy<Value = Row> {
    let finite = prop::num::f64::NORMAL | prop::num::f64::ZERO | prop::num::f64::SUBNORMAL;
    (
        0.0..=0.5f64,
        0.0..=0.5f64,
        2usize..64,
        "[a-z_]{1,12}",
        prop::collection::vec(finite, 0..5),
        prop::collection::vec(0.0..1e-3f64, 0..5),
        prop_oneof![Just("ok".to_string()), Just("unconverged".to_string()), "error: [a-z ,]{0,20}"],
    )
        .prop_map(|(e, t, n, q, v, d, s)| Row { status: s, ..Row::new(e, t, n, &q).with_values(v, d, "ok") })
}

fn parse_list(cell: &str) -> Vec<f64> {
    if cell.is_empty() {
        Vec::new()
    } else {
        cell.split(';').map(|x| x.parse().unwrap()).collect()
    }
}

proptest! {
    #[test]
    fn seventeen_digits_round_trip(x in prop::num::f64::ANY) {
        let s = fmt17(x);
        if x.is_finite() {
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
            let mantissa = s.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
            prop_assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn csv_round_trip(rows in prop::collection::vec(row_strategy(), 0..6)) {
        let text = to_csv(&rows);
        prop_assert_eq!(&text, &to_csv(&rows));
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
        prop_assert_eq!(header, HEADER.to_vec());
        let back: Vec<Row> = rdr
            .records()
            .map(|r| {
                let r = r.unwrap();
                Row {
                    eta_bar: r[0].parse().unwrap(),
                    theta_bar: r[1].parse().unwrap(),
                    n: r[2].parse().unwrap(),
                    quantity: r[3].to_string(),
                    value: parse_list(&r[4]),
                    convergence_delta: parse_list(&r[5]),
                    status: r[6].to_string(),
                }
            })
            .collect();
        prop_assert_eq!(back, rows);
    }

    #[test]
    fn json_is_valid_and_stable(rows in prop::collection::vec(row_strategy(), 0..6)) {
        let text = to_json(&rows);
        prop_assert_eq!(&text, &to_json(&rows));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let arr = v.as_array().unwrap();
        prop_assert_eq!(arr.len(), rows.len());
        for (obj, row) in arr.iter().zip(&rows) {
            let keys: Vec<&str> = obj.as_object().unwrap().keys().map(String::as_str).collect();
            for k in HEADER {
                prop_assert!(keys.contains(&k));
            }
            prop_assert_eq!(obj["status"].as_str().unwrap(), row.status.as_str());
            let values: Vec<f64> = obj["value"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
            prop_assert_eq!(values, row.value.clone());
        }
    }
}

#[test]
fn non_finite_values() {
    let r = Row::new(0.0, 0.0, 8, "q").with_values(vec![f64::INFINITY, f64::NAN], vec![], "ok");
    let v: serde_json::Value = serde_json::from_str(&to_json(std::slice::from_ref(&r))).unwrap();
    assert!(v[0]["value"][0].is_null() && v[0]["value"][1].is_null());
    assert!(to_csv(&[r]).contains("inf;NaN"));
}
