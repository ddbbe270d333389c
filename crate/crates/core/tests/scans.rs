use disperse_core::model::RegimeClass;
use disperse_core::scan::{group_index_scan, linspace, regime_map, spectrum_scan, Scanner};
use disperse_core::SystemParams;

fn lam(rate: f64, omega: f64) -> SystemParams {
    SystemParams::lambda(1.0, rate, omega)
}

/// Class implied by the two boundary lines R = γ and ω = 2γ + R.
fn predicate_class(r: f64, omega: f64, gamma: f64) -> RegimeClass {
    let inversion = r - gamma;
    let resolved = omega - 2.0 * gamma - r;
    if inversion == 0.0 {
        return RegimeClass::Saturated;
    }
    match (inversion > 0.0, resolved > 0.0) {
        (false, false) => RegimeClass::SuperluminalAbsorption,
        (false, true) => RegimeClass::SubluminalAbsorption,
        (true, true) => RegimeClass::SuperluminalGain,
        (true, false) => RegimeClass::SubluminalGain,
    }
}

#[test]
fn unpumped_narrow_splitting_spectrum() {
    let s = spectrum_scan(&lam(0.0, 1.0), -3.0, 3.0, 1601).unwrap();
    assert_eq!(s.grid[800], 0.0);
    let centre = s.samples[800];
    assert!(centre.slope < 0.0);
    let peak = s.samples.iter().enumerate().max_by(|a, b| a.1.chi_im.total_cmp(&b.1.chi_im)).unwrap().0;
    assert_eq!(peak, 800);
    // Single peak: Im χ rises monotonically up to the centre.
    assert!(s.samples[..=800].windows(2).all(|w| w[1].chi_im >= w[0].chi_im));
}

#[test]
fn gain_doublet_spectrum() {
    let s = spectrum_scan(&lam(2.3, 8.0), -8.0, 8.0, 1601).unwrap();
    assert!(s.samples.iter().all(|x| x.chi_im < 0.0));
    let minima: Vec<f64> = s
        .samples
        .windows(3)
        .filter(|w| w[1].chi_im < w[0].chi_im && w[1].chi_im < w[2].chi_im)
        .map(|w| w[1].delta_p)
        .collect();
    assert_eq!(minima.len(), 2);
    assert!((minima[0] + 4.0).abs() < 0.1 && (minima[1] - 4.0).abs() < 0.1, "{minima:?}");
    assert!(s.samples[800].slope < 0.0);
}

#[test]
fn saturated_spectrum_is_zero() {
    let s = spectrum_scan(&lam(1.0, 5.0), -5.0, 5.0, 101).unwrap();
    assert!(s.samples.iter().all(|x| x.chi_re == 0.0 && x.chi_im == 0.0 && x.slope == 0.0));
}

#[test]
fn vee_spectrum() {
    let s = spectrum_scan(&SystemParams::vee(1.0, 2.0, 8.0), -6.0, 6.0, 121).unwrap();
    assert!(s.samples.iter().all(|x| x.chi_im < 0.0));
    assert!(s.samples[60].slope < 0.0);
}

#[test]
fn regime_map_matches_boundary_predicates() {
    let base = lam(0.0, 0.0);
    let (dr, dw) = (6.0 / 199.0, 10.0 / 199.0);
    let g = regime_map(&base, (0.0, 6.0, 200), (0.0, 10.0, 200)).unwrap();
    assert_eq!(g.cells.len(), 40_000);
    let mut compared = 0;
    for (r, omega, class) in g.iter() {
        let near_boundary = (r - 1.0).abs() <= dr || (omega - 2.0 - r).abs() <= dr + dw;
        if near_boundary {
            continue;
        }
        assert_eq!(class, predicate_class(r, omega, 1.0), "R={r} ω={omega}");
        compared += 1;
    }
    assert!(compared > 35_000);
    // No cell lies exactly on R = γ, so nothing is saturated.
    assert_eq!(g.count(RegimeClass::Saturated), 0);
}

#[test]
fn regime_map_examples_and_saturated_column() {
    let g = regime_map(&lam(0.0, 0.0), (0.0, 2.0, 5), (1.0, 8.0, 8)).unwrap();
    let at = |r: f64, w: f64| g.iter().find(|&(a, b, _)| a == r && b == w).unwrap().2;
    assert_eq!(at(0.5, 1.0), RegimeClass::SuperluminalAbsorption);
    assert_eq!(at(2.0, 8.0), RegimeClass::SuperluminalGain);
    assert_eq!(at(2.0, 1.0), RegimeClass::SubluminalGain);
    for w in 1..=8 {
        assert_eq!(at(1.0, w as f64), RegimeClass::Saturated);
    }
    assert_eq!(g.count(RegimeClass::Saturated), 8);
}

#[test]
fn class_flips_across_resolution_line() {
    for r in [1.5, 2.0, 3.0] {
        let below = regime_map(&lam(0.0, 0.0), (r, r, 1), (2.0 + r - 0.01, 2.0 + r - 0.01, 1)).unwrap();
        let above = regime_map(&lam(0.0, 0.0), (r, r, 1), (2.0 + r + 0.01, 2.0 + r + 0.01, 1)).unwrap();
        assert_eq!(below.cells[0], RegimeClass::SubluminalGain);
        assert_eq!(above.cells[0], RegimeClass::SuperluminalGain);
    }
}

#[test]
fn refinement_keeps_classes_away_from_boundaries() {
    let base = lam(0.0, 0.0);
    let coarse = regime_map(&base, (0.0, 6.0, 31), (0.0, 10.0, 41)).unwrap();
    let fine = regime_map(&base, (0.0, 6.0, 61), (0.0, 10.0, 81)).unwrap();
    let (dr, dw) = (0.2_f64, 0.25_f64);
    let diagonal = (dr * dr + dw * dw).sqrt();
    for ir in 0..31 {
        for iw in 0..41 {
            let (r, w) = (coarse.r_axis[ir], coarse.omega_axis[iw]);
            // Distance to the lines R = 1 and ω = 2 + R.
            let d1 = (r - 1.0).abs();
            let d2 = (w - 2.0 - r).abs() / 2f64.sqrt();
            if d1.min(d2) <= diagonal {
                continue;
            }
            assert_eq!(coarse.cell(ir, iw), fine.cell(2 * ir, 2 * iw));
        }
    }
}

#[test]
fn group_index_curves() {
    let curves = group_index_scan(&lam(0.0, 0.0), &[1.0, 2.0, 8.0], 0.0, 8.0, 801).unwrap();
    assert_eq!(curves.len(), 3);
    for c in &curves {
        assert_eq!(c.values.len(), 801);
        assert!(c.values.iter().all(|v| v.is_finite()));
        assert_eq!(c.values[100], 0.0, "R = γ for ω = {}", c.omega);
    }
    let one = &curves[0];
    assert!(one.values[..100].iter().all(|&v| v < 0.0));
    assert!(one.values[101..].iter().all(|&v| v > 0.0));

    let eight = &curves[2];
    for (r, &v) in eight.r_axis.iter().zip(&eight.values) {
        if *r > 1.0 + 1e-9 && *r < 6.0 - 1e-9 {
            assert!(v < 0.0, "R={r}: {v}");
        } else if (*r - 1.0).abs() > 1e-9 && (*r - 6.0).abs() > 1e-9 {
            assert!(v > 0.0, "R={r}: {v}");
        }
    }
    assert!(eight.values[600].abs() < 1e-12);
    let half = linspace(0.0, 8.0, 801).unwrap().iter().position(|&r| r == 0.5).unwrap();
    assert!(eight.values[half] > 0.0);
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    let seq = Scanner::sequential();
    let par = Scanner::default();
    let p = lam(2.3, 8.0);
    assert_eq!(seq.spectrum(&p, -8.0, 8.0, 1601).unwrap(), par.spectrum(&p, -8.0, 8.0, 1601).unwrap());
    let base = lam(0.0, 0.0);
    assert_eq!(
        seq.regime_map(&base, (0.0, 6.0, 60), (0.0, 10.0, 70)).unwrap(),
        par.regime_map(&base, (0.0, 6.0, 60), (0.0, 10.0, 70)).unwrap()
    );
    assert_eq!(
        seq.group_index(&base, &[1.0, 8.0], 0.0, 8.0, 101).unwrap(),
        par.group_index(&base, &[1.0, 8.0], 0.0, 8.0, 101).unwrap()
    );
    let cases = [lam(0.8, 1.0), lam(2.3, 8.0)];
    let grid = linspace(-5.0, 5.0, 21).unwrap();
    assert_eq!(seq.validate(&cases, &grid, 1e-3).unwrap(), par.validate(&cases, &grid, 1e-3).unwrap());
}
