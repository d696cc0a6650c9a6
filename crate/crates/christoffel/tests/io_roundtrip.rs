use christoffel::core::measure::{AlgebraicSingularity, GJMeasure, Interval, SmoothFactor};
use christoffel::core::orthopoly::RecurrenceTable;
use christoffel::core::universality::{ScanConstants, ScanMode, ScanReport, ScanRow};
use christoffel::io::{
    fmt_f64, measure_to_json, parse_measure, scan_rows_from_csv, scan_to_csv, table_from_csv, table_to_csv,
};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e300..1e300f64, -1.0..1.0f64, Just(0.0), Just(-0.0), Just(f64::MIN_POSITIVE)]
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn doubles_survive_seventeen_digits(x in finite()) {
        let back: f64 = fmt_f64(x).parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }

    #[test]
    fn tables_round_trip(
        mass in 1e-3..1e3f64,
        rows in prop::collection::vec((finite(), 1e-6..10.0f64), 1..40),
    ) {
        let diag: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let offdiag: Vec<f64> = rows[1..].iter().map(|r| r.1).collect();
        let t = RecurrenceTable::new(mass, diag, offdiag).unwrap();
        prop_assert_eq!(table_from_csv(&table_to_csv(&t)).unwrap(), t);
    }

    #[test]
    fn scan_rows_round_trip(
        rows in prop::collection::vec((1usize..5000, finite(), finite(), finite(), finite()), 0..30),
    ) {
        let rows: Vec<ScanRow> = rows
            .into_iter()
            .map(|(n, a, b, m, p)| ScanRow { n, a, b, measured: m, predicted: p, abs_err: (m - p).abs(), rel_err: 0.5 })
            .collect();
        let report = ScanReport {
            mode: ScanMode::BulkRatio,
            x0: 0.0,
            alpha: 1.0,
            rows: rows.clone(),
            fitted_order: None,
            constants: ScanConstants::default(),
        };
        prop_assert_eq!(scan_rows_from_csv(&scan_to_csv(&report, Some("meta"))).unwrap(), rows);
    }

    #[test]
    fn measures_round_trip(
        lo in -10.0..10.0f64,
        widths in prop::collection::vec((0.01..3.0f64, 0.0..2.0f64), 1..5),
        exponent in -0.99..4.0f64,
        c in 0.1..10.0f64,
    ) {
        let mut intervals = Vec::new();
        let mut x = lo;
        for (w, gap) in widths {
            intervals.push(Interval { lo: x, hi: x + w });
            x += w + gap;
        }
        let first = intervals[0];
        let sing = vec![AlgebraicSingularity { location: 0.5 * (first.lo + first.hi), exponent }];
        let mu = GJMeasure::new(intervals, sing, SmoothFactor::Constant(c)).unwrap();
        prop_assert_eq!(parse_measure(&measure_to_json(&mu)).unwrap(), mu);
    }
}
