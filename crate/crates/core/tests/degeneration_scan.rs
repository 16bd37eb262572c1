use ratideal::degeneration::{limit_scan, DegenerationPoint};
use ratideal::numeric::{ComplexValue, Precision};
use ratideal::Error;

fn y(text: &str) -> ComplexValue {
    ComplexValue::parse(text, Precision::DEFAULT).unwrap()
}

#[test]
fn deviation_and_phase_shrink() {
    for yv in ["0.3", "0.7", "1+0.5i"] {
        for n in -2..=2 {
            let r = limit_scan(n, &y(yv), &[1e-2, 1e-3]).unwrap();
            assert_eq!(r.decreasing, Some(true), "n = {n}, y = {yv}");
            assert!(r.final_deviation().unwrap() <= 0.05);
            let coarse = r.rows[0].phase.unwrap().abs();
            let fine = r.rows[1].phase.unwrap().abs();
            assert!(fine < coarse || fine < 1e-3, "phase n = {n}, y = {yv}: {coarse} → {fine}");
        }
    }
}

#[test]
fn single_delta_has_no_trend() {
    let r = limit_scan(1, &y("0.7"), &[5e-3]).unwrap();
    assert_eq!(r.decreasing, None);
    assert_eq!(r.rows.len(), 1);
}

#[test]
fn bad_scans_are_rejected() {
    assert!(matches!(limit_scan(0, &y("0.7"), &[]), Err(Error::InvalidScan(_))));
    assert!(limit_scan(0, &y("0.7"), &[1e-3, 1e-2]).is_err());
    assert!(limit_scan(0, &y("0.7"), &[-1e-3]).is_err());
    assert!(DegenerationPoint::new(0, y("0.7"), 0.0).is_err());
    assert!(DegenerationPoint::new(9, y("0.7"), 1e-3).is_err());
}
