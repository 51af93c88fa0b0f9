use regge_web::{jost_ray, phase_shift_rows, pole_scatter};

const WELL: &str = r#"{"kind":"square_well","q0":4.0,"a":2.0}"#;

#[test]
fn phase_rows_cover_the_range() {
    let rows = phase_shift_rows(WELL, 10).unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.delta < 0.0));
    assert!((rows[3].nu - 3.5).abs() < 1e-15);
}

#[test]
fn poles_and_predictions() {
    let s = pole_scatter(WELL, 6.0, 10.0).unwrap();
    assert_eq!(s.located.len(), 7);
    assert!(s.predicted.len() >= 7);
    assert!((s.located[0][0] - 2.535).abs() < 1e-3);
}

#[test]
fn decaying_potential_has_no_prediction() {
    let s = pole_scatter(r#"{"kind":"analytic_decay","amp":1.0,"c":1.0,"p":2.0}"#, 4.0, 4.0).unwrap();
    assert!(s.predicted.is_empty());
}

#[test]
fn ray_is_flat_for_zero_strength() {
    let pts = jost_ray(r#"{"kind":"square_well","q0":0.0,"a":1.0}"#, 1.2, 5.0, 6).unwrap();
    assert_eq!(pts.len(), 6);
    assert!(pts.iter().all(|p| p.log10_abs_h.abs() < 1e-8));
}

#[test]
fn sums_are_accepted() {
    let s = r#"{"kind":"sum","parts":[{"kind":"square_well","q0":1.0,"a":1.0},{"kind":"analytic_decay","amp":0.5,"c":1.0,"p":2.0}]}"#;
    assert_eq!(phase_shift_rows(s, 4).unwrap().len(), 5);
}

#[test]
fn bad_input_is_reported() {
    assert!(phase_shift_rows(r#"{"kind":"square_well","q0":1.0}"#, 3).is_err());
    assert!(phase_shift_rows(r#"{"kind":"square_well","q0":1.0,"a":-1.0}"#, 3).is_err());
    assert!(phase_shift_rows(r#"{"kind":"square_well","q0":1.0,"a":1.0,"b":2}"#, 3).is_err());
}
