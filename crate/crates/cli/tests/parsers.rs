use fluxbound_cli::{emit_table, parse_config, parse_csv_table, parse_grid, Format, Table, Value};
use proptest::prelude::*;

fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        any::<i64>().prop_map(Value::Int),
        any::<f64>().prop_filter("finite", |v| v.is_finite()).prop_map(Value::Float),
        "[a-z][a-z ,\"]{0,8}".prop_map(Value::Text),
        Just(Value::Null),
    ]
}

fn table() -> impl Strategy<Value = Table> {
    (1usize..5).prop_flat_map(|w| {
        let cols = proptest::collection::vec("[a-z_]{1,6}", w);
        let rows = proptest::collection::vec(proptest::collection::vec(value(), w), 0..6);
        (cols, rows).prop_map(|(columns, rows)| Table { columns, rows })
    })
}

proptest! {
    #[test]
    fn grid_parser_is_total(s in "\\PC{0,24}") {
        if let Ok(g) = parse_grid(&s) {
            let p = g.points();
            prop_assert_eq!(p.len(), g.n);
            prop_assert!(g.n >= 2 && p[0] == g.lo && p[g.n - 1] == g.hi);
            prop_assert!(p.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn grid_round_trips(lo in -1e6f64..1e6, span in 1e-6f64..1e6, n in 2usize..500) {
        let g = parse_grid(&format!("{lo}:{}:{n}", lo + span)).unwrap();
        prop_assert_eq!(parse_grid(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn config_parser_is_total(s in "(\\PC{0,20}\n){0,6}") {
        if let Ok(entries) = parse_config(&s) {
            for e in entries {
                prop_assert!(!e.key.is_empty() && !e.value.is_empty() && !e.key.contains('_'));
            }
        }
    }

    #[test]
    fn csv_round_trip(t in table()) {
        let bytes = emit_table(&t, Format::Csv).unwrap();
        let back = parse_csv_table(&bytes).unwrap();
        prop_assert_eq!(back.columns, t.columns.clone());
        prop_assert_eq!(back.rows.len(), t.rows.len());
        for (a, b) in back.rows.iter().zip(&t.rows) {
            for (x, y) in a.iter().zip(b) {
                match (x, y) {
                    // a lone text field that looks numeric reads back as a number
                    (_, Value::Text(s)) if s.trim().parse::<f64>().is_ok() => {}
                    (Value::Null, Value::Text(s)) if s.is_empty() => {}
                    _ => prop_assert_eq!(x, y),
                }
            }
        }
    }

    #[test]
    fn json_keeps_floats_exact(vals in proptest::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..20)) {
        let t = Table { columns: vec!["v".into()], rows: vals.iter().map(|&v| vec![Value::Float(v)]).collect() };
        let parsed: Vec<serde_json::Value> = serde_json::from_slice(&emit_table(&t, Format::Json).unwrap()).unwrap();
        for (p, v) in parsed.iter().zip(&vals) {
            prop_assert_eq!(p["v"].as_f64(), Some(*v));
        }
    }
}
