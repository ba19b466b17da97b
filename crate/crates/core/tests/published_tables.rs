mod common;

use common::fixtures;
use iris::report::{emit_matrix, read_matrix_csv, MatrixFormat};
use iris::{analyze_evolution, commonality_report, evaluate_hypothesis, Metric, MetricsMatrix, TrendClass};

fn table(name: &str) -> MetricsMatrix {
    read_matrix_csv(&fixtures().join(format!("{name}.csv"))).unwrap()
}

#[test]
fn row_counts() {
    let counts: Vec<usize> = ["table3", "table4", "table5", "table6"]
        .iter()
        .map(|t| table(t).len())
        .collect();
    assert_eq!(counts, [3, 16, 8, 10]);
}

#[test]
fn drawing_shapes_commonality() {
    let c = commonality_report(&table("table3"));
    assert!(c.common_metrics.contains(&Metric::Nop));
    assert!(c.common_metrics.contains(&Metric::Noi));
    assert!(c.varying_metrics.contains(&Metric::Loc));
    assert_eq!(c.common_metrics.len() + c.varying_metrics.len(), 13);
}

#[test]
fn drawing_shapes_first_two_releases_share_classes_and_methods() {
    let m = table("table3");
    let (r1, r2) = (&m.rows()[0], &m.rows()[1]);
    assert_eq!(r1[Metric::Noc], r2[Metric::Noc]);
    assert_eq!(r1[Metric::Nom], r2[Metric::Nom]);
    assert_ne!(r1[Metric::Loc], r2[Metric::Loc]);
}

#[test]
fn drawing_shapes_dependency_growth() {
    let r = analyze_evolution(&table("table3")).unwrap();
    assert_eq!((r.get(Metric::Nomi).first, r.get(Metric::Nomi).last), (99, 139));
    assert_eq!((r.get(Metric::Noir).first, r.get(Metric::Noir).last), (5, 7));
    assert_eq!((r.get(Metric::Noaa).first, r.get(Metric::Noaa).last), (125, 161));
    assert_eq!(r.get(Metric::Loc).deltas, [-12, 74]);
}

#[test]
fn drawing_shapes_csv_row() {
    let out = String::from_utf8(emit_matrix(&table("table3"), MatrixFormat::Csv)).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("r3,2018-02-01,448,4,8,0,16,33,"));
    assert!(lines[3].ends_with(",61,1,30,7,161,139"));
}

#[test]
fn mobile_media_never_decreases() {
    let r = analyze_evolution(&table("table5")).unwrap();
    for t in r.trends() {
        assert!(
            matches!(
                t.class,
                TrendClass::Constant | TrendClass::NonDecreasing | TrendClass::StrictlyIncreasing
            ),
            "{} is {}",
            t.metric,
            t.class
        );
    }
    assert_eq!(r.get(Metric::Loc).first, 760);
    assert_eq!(r.get(Metric::Nomi).last, 1200);
}

#[test]
fn rhino_dips_but_grows() {
    let r = analyze_evolution(&table("table4")).unwrap();
    let loc = r.get(Metric::Loc);
    // the 1.6R1 -> 1.6R2 release lost lines
    assert_eq!(loc.deltas[7], 37771 - 37961);
    assert!(loc.net_change > 0);
    let v = evaluate_hypothesis(&r);
    assert!(v.change_detected);
    assert!(v.complexity_supported);
}

#[test]
fn release_order_is_file_order() {
    let m = table("table4");
    let names = m.release_names();
    let r41 = names.iter().position(|n| *n == "1.5R4.1").unwrap();
    let r4 = names.iter().position(|n| *n == "1.5R4").unwrap();
    assert!(r41 < r4);
    assert!(m.rows()[r41].release_date < m.rows()[r4].release_date);
}

#[test]
fn verdict_lines_name_every_metric() {
    let v = evaluate_hypothesis(&analyze_evolution(&table("table5")).unwrap());
    assert_eq!(v.evidence.len(), 13);
    assert!(v.evidence.iter().any(|l| l.starts_with("NOMI: 299 -> 1200 (net +901")));
}
