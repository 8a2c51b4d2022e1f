use caustica::catalog::{get, Params, SingularityId};
use caustica::scanner::{consistency_check, find_max_region, scan, CellFlag, ScanGrid};
use caustica::solver::{magnification_sum, SolverConfig};
use num_complex::Complex64;

fn params(c: &[f64], s: [f64; 2]) -> Params<Complex64> {
    Params::new(c.iter().map(|&v| v.into()).collect(), [s[0].into(), s[1].into()])
}

#[test]
fn all_real_sum_at_maximal_region() {
    let cfg = SolverConfig::default();
    let def = get(SingularityId::D4minus);
    let region = find_max_region(def, &[1.0], 4, &cfg).unwrap();
    assert_eq!(region.n_real, 4);
    let report = magnification_sum(def, &params(&[1.0], region.s), &cfg).unwrap();
    assert_eq!(report.n_real, 4);
    assert!(report.rel_residual_real.unwrap() < 1e-9);
    assert!(report.within_tolerance(), "{:?}", report.guards);
}

#[test]
fn report_flags_tight_tolerance() {
    let mut cfg = SolverConfig::default();
    let def = get(SingularityId::A4);
    let report = magnification_sum(def, &params(&[-2.0], [0.3, 0.1]), &cfg).unwrap();
    assert!(report.check(&cfg).is_ok());
    cfg.set("sum_tol", 1e-300).unwrap();
    let report = magnification_sum(def, &params(&[-2.0], [0.3, 0.1]), &cfg).unwrap();
    assert!(report.rel_residual_all == 0.0 || report.check(&cfg).is_err());
}

#[test]
fn unknown_or_bad_tolerances_rejected() {
    let mut cfg = SolverConfig::default();
    assert!(cfg.set("nonsense", 1e-3).is_err());
    assert!(cfg.set("sum_tol", 0.0).is_err());
    assert!(cfg.set("sum_tol", f64::NAN).is_err());
    cfg.set("root_residual_tol", 1e-11).unwrap();
    assert_eq!(cfg.roots.root_residual_tol, 1e-11);
}

#[test]
fn scans_are_deterministic_and_consistent() {
    let cfg = SolverConfig::default();
    let def = get(SingularityId::A3);
    let grid = ScanGrid::square(40, vec![]);
    let a = scan(def, &grid, &cfg).unwrap();
    let b = scan(def, &grid, &cfg).unwrap();
    assert_eq!(a, b);
    consistency_check(&a).unwrap();
    assert!(a.cells.iter().filter_map(|c| c.n_real).all(|k| k == 1 || k == 3));
    assert!(a.cells.iter().any(|c| c.n_real == Some(3)));
    assert!(!a.caustic_points.is_empty());
}

#[test]
fn csv_outputs() {
    let cfg = SolverConfig::default();
    let def = get(SingularityId::A2);
    let grid = ScanGrid::new((-1.0, 1.0), (-1.0, 1.0), (5, 4), vec![]).unwrap();
    let result = scan(def, &grid, &cfg).unwrap();
    let mut cells = Vec::new();
    result.write_cells_csv(&mut cells).unwrap();
    let cells = String::from_utf8(cells).unwrap();
    let lines: Vec<_> = cells.lines().collect();
    assert_eq!(lines[0], "s1,s2,n_real,disc_sign");
    assert_eq!(lines.len(), 1 + 20);
    let mut caustics = Vec::new();
    result.write_caustics_csv(&mut caustics).unwrap();
    let caustics = String::from_utf8(caustics).unwrap();
    assert_eq!(caustics.lines().next(), Some("s1,s2"));
    assert_eq!(caustics.lines().count(), 1 + result.caustic_points.len());
}

#[test]
fn guard_parameter_is_flagged() {
    let cfg = SolverConfig::default();
    let def = get(SingularityId::D6plus);
    let grid = ScanGrid::new((-1.0, 1.0), (-1.0, 1.0), (3, 3), vec![-2.0, -0.25, 2.0]).unwrap();
    let result = scan(def, &grid, &cfg).unwrap();
    // the middle column sits on s1 = 0
    for j in 0..3 {
        assert_eq!(result.cell(1, j).flag, Some(CellFlag::Degenerate));
    }
}

#[test]
fn wrong_parameter_count_is_invalid() {
    let grid = ScanGrid::square(4, vec![1.0, 2.0]);
    assert!(scan(get(SingularityId::A4), &grid, &SolverConfig::default()).is_err());
}
