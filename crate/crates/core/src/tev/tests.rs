use super::*;
use crate::geometry::BoundaryCurve;
use crate::linalg::singular_value_ratio;

const TABLE1_REAL: [(f64, usize); 3] = [(1.081995004204943, 2), (1.444057126606098, 3), (1.567008428331221, 1)];
const TABLE1_PAIR: (f64, f64) = (1.223227533499797, 0.236035304541013);

fn table1() -> DiskTevParams<f64> {
    DiskTevParams { radius: 2.0, n: 4.0, mu: 2.0, gamma: 1.0 }
}

fn region() -> ContourSpec<f64> {
    ContourSpec::new(cx(1.25, 0.0), 0.35)
}

fn table1_expected() -> Vec<Cx<f64>> {
    let mut v: Vec<Cx<f64>> = TABLE1_REAL.iter().flat_map(|&(k, _)| [cx(k, 0.0), cx(k, 0.0)]).collect();
    v.push(cx(TABLE1_PAIR.0, TABLE1_PAIR.1));
    v.push(cx(TABLE1_PAIR.0, -TABLE1_PAIR.1));
    v
}

/// Greedy matching; returns the largest distance.
fn match_sets(found: &[Cx<f64>], expected: &[Cx<f64>]) -> f64 {
    assert_eq!(found.len(), expected.len(), "{found:?}");
    let mut used = vec![false; found.len()];
    let mut worst = 0.0f64;
    for e in expected {
        let (i, d) = found
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, f)| (i, (f - e).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        used[i] = true;
        worst = worst.max(d);
    }
    worst
}

#[test]
fn determinant_conjugate_symmetry() {
    for a in 0..6 {
        for b in 0..5 {
            let k = cx::<f64>(0.3 + 0.5 * a as f64, -0.8 + 0.4 * b as f64);
            for p in 0..4 {
                let d1 = disk_determinant(k.conj(), p, &table1()).unwrap();
                let d2 = disk_determinant(k, p, &table1()).unwrap().conj();
                assert!((d1 - d2).norm() <= 1e-13 * d1.norm().max(1e-300));
            }
        }
    }
}

#[test]
fn determinant_vanishes_at_table_values() {
    let (det, _) = disk_determinant_scaled(cx::<f64>(1.081995004204943, 0.0), 2, &table1()).unwrap();
    assert!(det.norm() <= 1e-10, "{det}");
    let (det, _) = disk_determinant_scaled(cx::<f64>(TABLE1_PAIR.0, TABLE1_PAIR.1), 0, &table1()).unwrap();
    assert!(det.norm() <= 1e-9, "{det}");
}

#[test]
fn table1_series_roots() {
    let res = find_disk_tevs(&table1(), &region(), 3).unwrap();
    assert_eq!(res.total_multiplicity(), 8);
    let err = match_sets(&res.eigenvalues(), &table1_expected());
    assert!(err <= 1e-9, "{err:e}");
    for e in &res.entries {
        assert!(e.converged && e.residual <= 1e-9);
        let p = e.order.unwrap();
        assert_eq!(e.multiplicity, if p == 0 { 1 } else { 2 });
    }
}

#[test]
fn multiplicity_matches_winding_counts() {
    let d = table1();
    let res = find_disk_tevs(&d, &region(), 3).unwrap();
    // signed orders ±p share a determinant up to sign
    let mut total = 0i64;
    for p in 0..=3usize {
        let w = winding_count(&|k| disk_determinant(k, p, &d), region().center, region().radius).unwrap();
        total += if p == 0 { w } else { 2 * w };
    }
    assert_eq!(total as usize, res.total_multiplicity());
}

#[test]
fn radial_modes_ignore_mu() {
    let mut d0 = table1();
    d0.mu = 0.0;
    let c = ContourSpec::new(cx(1.5, 0.0), 1.0);
    let a: Vec<_> = find_disk_tevs(&table1(), &c, 0).unwrap().eigenvalues();
    let b: Vec<_> = find_disk_tevs(&d0, &c, 0).unwrap().eigenvalues();
    assert!(!a.is_empty());
    assert!(match_sets(&a, &b) < 1e-10);
}

#[test]
fn empty_region() {
    let c = ContourSpec::new(cx(0.2, 0.0), 0.05);
    assert_eq!(find_disk_tevs(&table1(), &c, 3).unwrap().entries.len(), 0);
    // grid oracle: the determinant stays away from zero on the region
    for p in 0..=3 {
        let mut least = f64::INFINITY;
        for a in 0..21 {
            for b in 0..21 {
                let k = cx::<f64>(0.15 + 0.005 * a as f64, -0.05 + 0.005 * b as f64);
                if (k - c.center).norm() <= c.radius {
                    least = least.min(disk_determinant_scaled(k, p, &table1()).unwrap().0.norm());
                }
            }
        }
        assert!(least > 1e-3, "p={p}: {least}");
    }
}

#[test]
fn invalid_parameters() {
    let mut d = table1();
    d.n = 0.5;
    assert!(find_disk_tevs(&d, &region(), 1).is_err());
    let mut c = region();
    c.radius = 0.0;
    assert!(find_disk_tevs(&table1(), &c, 1).is_err());
}

#[test]
fn beyn_on_linear_pencil() {
    let eig = [cx::<f64>(0.9, 0.1), cx(1.1, -0.2), cx(1.3, 0.05), cx(3.0, 0.0)];
    let q = DMatrix::from_fn(6, 6, |i, j| cx::<f64>(((i * 7 + j * 3) % 5) as f64 + if i == j { 4.0 } else { 0.0 }, 0.1 * j as f64));
    let qi = q.clone().try_inverse().unwrap();
    let mut diag = DMatrix::from_element(6, 6, cx::<f64>(0.0, 0.0));
    for (i, e) in eig.iter().chain([cx(5.0, 0.0), cx(-2.0, 1.0)].iter()).enumerate() {
        diag[(i, i)] = *e;
    }
    let a = &q * diag * &qi;
    let m = |k: Cx<f64>| Ok(&a - DMatrix::identity(6, 6) * k);
    let mut c = ContourSpec::new(cx(1.1, 0.0), 0.5);
    c.n_quad = 32;
    c.ell = 5;
    let res = beyn_solve(6, m, &c, 1e-6, TevMethod::BeynDet).unwrap();
    assert!(match_sets(&res.eigenvalues(), &eig[..3]) < 1e-10);
}

#[test]
fn beyn_reports_small_probe_block() {
    let m = |k: Cx<f64>| Ok(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![k - 1.0, k - 1.1, k - 0.9, k + 5.0])));
    let mut c = ContourSpec::new(cx(1.0, 0.0), 0.5);
    c.ell = 2;
    assert!(matches!(beyn_solve(4, m, &c, 1e-6, TevMethod::BeynDet), Err(Error::EllTooSmall { .. })));
}

#[test]
fn beyn_on_determinant_matrix_matches_roots() {
    let d = table1();
    let mut c = region();
    c.n_quad = 64;
    c.ell = 2;
    c.moments = 2;
    let res = beyn_solve(2, |k| disk_matrix(k, 0, &d), &c, 1e-6, TevMethod::BeynDet).unwrap();
    let expect = [cx::<f64>(TABLE1_PAIR.0, TABLE1_PAIR.1), cx(TABLE1_PAIR.0, -TABLE1_PAIR.1)];
    let err = match_sets(&res.eigenvalues(), &expect);
    assert!(err <= 1e-6, "{err:e}");
    // all orders: agreement with the determinant roots
    let roots = find_disk_tevs(&d, &c, 3).unwrap();
    for p in 0..=3usize {
        let mine: Vec<Cx<f64>> = roots.entries.iter().filter(|e| e.order == Some(p)).map(|e| e.k).collect();
        let mut cc = c;
        cc.n_quad = 128;
        let got = beyn_solve(2, |k| disk_matrix(k, p, &d), &cc, 1e-6, TevMethod::BeynDet).unwrap();
        let got: Vec<Cx<f64>> = got.entries.iter().map(|e| e.k).collect();
        assert!(match_sets(&got, &mine) <= 1e-8, "p={p}");
    }
}

#[test]
fn bie_matrix_near_null_at_eigenvalue() {
    let problem = TevProblem::new(BoundaryCurve::disk(2.0).unwrap(), 4.0, 2.0, 1.0, 60);
    let op = TevOperator::new(&problem).unwrap();
    let ratio_median = |k: Cx<f64>| {
        let s = singular_values(&op.matrix(k).unwrap());
        s[s.len() - 1] / s[s.len() / 2]
    };
    assert!(ratio_median(cx(1.081995004204943, 0.0)) <= 1e-3);
    assert!(ratio_median(cx(0.5, 0.0)) >= 1e-2);
    let k = cx::<f64>(1.3, 0.2);
    let a = op.matrix(k).unwrap();
    let b = op.matrix(-k.conj()).unwrap();
    assert!(crate::linalg::max_abs(&(a.conjugate() - b)) <= 1e-10 * crate::linalg::max_abs(&a));
}

#[test]
fn beyn_bie_table1() {
    let problem = TevProblem::new(BoundaryCurve::disk(2.0).unwrap(), 4.0, 2.0, 1.0, 60);
    let res = beyn_bie(&problem, &region()).unwrap();
    eprintln!("{:?}", res.entries.iter().map(|e| (e.k, e.residual)).collect::<Vec<_>>());
    let err = match_sets(&res.eigenvalues(), &table1_expected());
    assert!(err <= 2e-3, "{err:e}");
    for e in &res.entries {
        assert!(singular_value_ratio(&assemble_tev_bie(e.k, &problem).unwrap()) <= 1e-6);
    }
    // conjugate pairing
    for e in &res.entries {
        let partner = res.entries.iter().any(|f| (f.k - e.k.conj()).norm() <= 1e-6);
        assert!(partner || e.k.im.abs() <= 1e-6, "{}", e.k);
    }
}
#[test]
fn survey_lowest_eigenvalue_rises_as_ellipse_flattens() {
    let template = TevProblem::new(BoundaryCurve::disk(1.0).unwrap(), 4.0, 2.0, 1.0, 120);
    let contours = real_axis_contours(0.3, 1.1, 0.4, 24, 20);
    assert_eq!(contours.len(), 1);
    let curves = vec![
        ("disk".to_string(), BoundaryCurve::disk(1.0).unwrap()),
        ("ellipse_0.9".to_string(), BoundaryCurve::ellipse(1.0, 0.9).unwrap()),
        ("ellipse_0.8".to_string(), BoundaryCurve::ellipse(1.0, 0.8).unwrap()),
    ];
    let cols = tev_survey(&template, &contours, &curves, 0.1).unwrap();
    let lowest: Vec<f64> = cols.iter().map(|c| c.result.entries[0].k.re).collect();
    for (got, want) in lowest.iter().zip([0.683, 0.708, 0.737]) {
        assert!((got - want).abs() <= 1e-2, "{lowest:?}");
    }
    assert!(lowest[0] < lowest[1] && lowest[1] < lowest[2]);
    // the disk value is the p = 0 series root for R = 1
    let d = DiskTevParams { radius: 1.0, n: 4.0, mu: 2.0, gamma: 1.0 };
    let series = find_disk_tevs(&d, &contours[0], 8).unwrap();
    assert!((series.entries[0].k - cols[0].result.entries[0].k).norm() <= 1e-6);
}

#[test]
fn real_axis_contours_cover_the_strip() {
    let cs = real_axis_contours(0.3, 3.6, 0.4, 24, 20);
    for i in 0..=300 {
        let z = cx(0.5 + 2.9 * i as f64 / 300.0, 0.1);
        assert!(cs.iter().any(|c| c.contains(z)), "{z}");
    }
}
