use num_complex::Complex64;
use qaffine::{Precision, XBranch};
use qaffine_cli::commands::parse_point_spec;
use qaffine_cli::{parse_complex, resolve, Overrides, EXIT_USAGE};

#[test]
fn complex_literals() {
    assert_eq!(parse_complex("2.0+1.0i").unwrap(), Complex64::new(2.0, 1.0));
    assert_eq!(parse_complex("-0.5i").unwrap(), Complex64::new(0.0, -0.5));
    assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
    assert_eq!(parse_complex("1e-3-2i").unwrap(), Complex64::new(1e-3, -2.0));
    assert_eq!(parse_complex("two").unwrap_err().code, EXIT_USAGE);
}

#[test]
fn point_specs() {
    let (x, g, b) = parse_point_spec("1.2+0.3i,0.8-0.1i", XBranch::Big).unwrap();
    assert_eq!((x, g, b), (Complex64::new(1.2, 0.3), Complex64::new(0.8, -0.1), XBranch::Big));
    assert_eq!(parse_point_spec("1,2,small", XBranch::Big).unwrap().2, XBranch::Small);
    assert!(parse_point_spec("1", XBranch::Big).is_err());
    assert!(parse_point_spec("1,2,3,4", XBranch::Big).is_err());
}

#[test]
fn defaults_and_overrides() {
    let cfg = resolve(None, &Overrides::default()).unwrap();
    assert_eq!(cfg.precision, Precision::Standard);
    assert_eq!(cfg.points, 20);
    assert_eq!(cfg.threshold(1e-10, 1e-24), 1e-10);
    let o = Overrides { precision: Some("extended".into()), tol: Some(1e-7), branch: Some("small".into()), ..Overrides::default() };
    let cfg = resolve(None, &o).unwrap();
    assert_eq!(cfg.precision, Precision::Extended);
    assert_eq!(cfg.threshold(1e-10, 1e-24), 1e-7);
    assert_eq!(cfg.branch, XBranch::Small);
    let bad = Overrides { tol: Some(-1.0), ..Overrides::default() };
    assert_eq!(resolve(None, &bad).unwrap_err().code, EXIT_USAGE);
}
