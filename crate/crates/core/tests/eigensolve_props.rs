use std::f64::consts::PI;

use matsusy_core::catalog::{self, Branch, Domain, FamilyId, Layout, MatrixFunction, Params};
use matsusy_core::eigensolve::{
    analytic_spectrum, analytic_union, compare_spectra, convergence_order, fit_slope,
    isospectral_check, isospectral_partner, lowest_eigenpairs, numeric_levels, numeric_spectrum,
    state_count, SpectrumLevel, Tolerance,
};
use matsusy_core::gridops::{
    assemble_hamiltonian, build_grid, default_grid, Grid, TruncationPolicy,
};
use matsusy_core::Error;
use nalgebra::DMatrix;

const K: Branch = Branch::KappaBranch;
const M: Branch = Branch::MuBranch;

fn energies(levels: &[SpectrumLevel]) -> Vec<f64> {
    levels.iter().map(|l| l.energy).collect()
}

#[test]
fn analytic_examples() {
    let e = energies(
        &analytic_spectrum(FamilyId::F1CoulombLike, K, &Params::new(1.0, 0.2, 1.0), 3).unwrap(),
    );
    for (a, b) in e.iter().zip([-1.0 / 9.0, -1.0 / 25.0, -1.0 / 49.0]) {
        assert!((a - b).abs() < 1e-15);
    }
    let e = energies(
        &analytic_spectrum(FamilyId::F2MorseLike, K, &Params::new(-3.0, 1.0, 1.0), 10).unwrap(),
    );
    assert_eq!(e.len(), 2);
    assert!((e[0] + 9.0 + 1.0 / 9.0).abs() < 1e-14 && (e[1] + 4.25).abs() < 1e-14);
    let s = analytic_spectrum(FamilyId::F3TrigRmLike, M, &Params::new(1.2, 0.5, 1.0), 2).unwrap();
    assert_eq!(s[0].spectral_parameter, Some(1.0));
    assert_eq!(s[1].spectral_parameter, Some(2.0));
    assert!(s[0].energy.abs() < 1e-15 && (s[1].energy - 3.75).abs() < 1e-15);
}

#[test]
fn analytic_branch_levels_increase() {
    let p = Params::new(1.0, 0.2, 1.0);
    for b in [K, M] {
        let s = analytic_spectrum(FamilyId::F1CoulombLike, b, &p, 6).unwrap();
        assert!(s.windows(2).all(|w| w[1].energy > w[0].energy));
    }
    let unavailable = Params::new(-0.5, 1.0, 1.0);
    assert!(matches!(
        analytic_spectrum(FamilyId::F2MorseLike, K, &unavailable, 3),
        Err(Error::Branch(_))
    ));
    let one = analytic_spectrum(FamilyId::F2MorseLike, K, &Params::new(-1.1, 1.0, 1.2), 3).unwrap();
    assert_eq!(one.len(), 1);
}

fn box_operator(n: usize, shift: f64) -> (Grid, MatrixFunction) {
    let g = Grid::uniform(0.0, PI, n).unwrap();
    let v = MatrixFunction::scalar(move |_| shift, |_| 0.0, Domain::real_line(), (0.0, PI))
        .with_layout(Layout::Scalar);
    (g, v)
}

#[test]
fn box_spectrum() {
    let (g, v) = box_operator(402, 0.0);
    let h = assemble_hamiltonian(&v, &g).unwrap();
    let hh = g.spacing() * g.spacing();
    let pairs = lowest_eigenpairs(&h, 5).unwrap();
    for (j, p) in pairs.iter().enumerate() {
        let exact = (2.0 - 2.0 * ((j + 1) as f64 * PI / 401.0).cos()) / hh;
        assert!((p.energy - exact).abs() < 1e-9 * exact);
        let k2 = ((j + 1) * (j + 1)) as f64;
        assert!((p.energy - k2).abs() < 2.0 * k2 * k2 * hh / 12.0 + 1e-9);
    }
    assert!((pairs[0].energy - 1.0).abs() < 1e-4);
}

#[test]
fn constant_shift_moves_every_level() {
    let (g, v0) = box_operator(300, 0.0);
    let (_, v5) = box_operator(300, 5.0);
    let a = numeric_spectrum(&v0, &g, 4).unwrap();
    let b = numeric_spectrum(&v5, &g, 4).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((y.energy - x.energy - 5.0).abs() < 1e-9);
    }
}

#[test]
fn oscillator_levels() {
    // W = x: V̂ + c = x² − 1 with levels 0, 2, 4 (twice each in two components).
    let p = Params::new(0.0, 0.0, 1.0);
    let c = catalog::factorization_constant(FamilyId::F0Oscillator, K, &p).unwrap();
    let v = catalog::potential(FamilyId::F0Oscillator, &p)
        .unwrap()
        .shifted(c);
    let g = default_grid(FamilyId::F0Oscillator, &p, 2000, 3).unwrap();
    let e = numeric_spectrum(&v, &g, 6).unwrap();
    for (i, pair) in e.iter().enumerate() {
        let exact = 2.0 * (i / 2) as f64;
        assert!((pair.energy - exact).abs() < 1e-3, "{i}: {}", pair.energy);
    }
}

#[test]
fn coulomb_ground_level_on_fixed_box() {
    let p = Params::new(1.0, 0.0, 1.0);
    let g = build_grid(
        FamilyId::F1CoulombLike,
        &p,
        4000,
        &TruncationPolicy::explicit(1e-3, 60.0),
    )
    .unwrap();
    let e = numeric_spectrum(
        &catalog::potential(FamilyId::F1CoulombLike, &p).unwrap(),
        &g,
        1,
    )
    .unwrap();
    assert!(
        (e[0].energy / (-1.0 / 9.0) - 1.0).abs() < 1e-3,
        "{}",
        e[0].energy
    );
}

#[test]
fn eigenpairs_agree_with_dense_oracle_and_are_orthogonal() {
    let p = Params::new(2.0, 1.0, 1.0);
    let g = default_grid(FamilyId::F3TrigRmLike, &p, 150, 3).unwrap();
    let h =
        assemble_hamiltonian(&catalog::potential(FamilyId::F3TrigRmLike, &p).unwrap(), &g).unwrap();
    let dense = h.to_dense();
    let n = dense.len();
    let m = DMatrix::from_fn(n, n, |i, j| dense[i][j]);
    let mut oracle: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    oracle.sort_by(f64::total_cmp);
    let pairs = lowest_eigenpairs(&h, 6).unwrap();
    for (pair, o) in pairs.iter().zip(&oracle) {
        assert!(
            (pair.energy - o).abs() < 1e-9 * o.abs().max(1.0),
            "{} vs {o}",
            pair.energy
        );
        assert!(pair.residual < 1e-8);
        assert!((pair.state.norm() - 1.0).abs() < 1e-12);
    }
    for i in 0..pairs.len() {
        for j in 0..i {
            assert!(
                pairs[i].state.inner(&pairs[j].state).abs() < 1e-8,
                "({i},{j})"
            );
        }
    }
}

#[test]
fn comparison_examples() {
    let lvl = |n, e| SpectrumLevel::numeric(n, e);
    let an: Vec<SpectrumLevel> =
        analytic_spectrum(FamilyId::F1CoulombLike, K, &Params::new(1.0, 0.0, 1.0), 2).unwrap();
    let same: Vec<SpectrumLevel> = an.iter().map(|l| lvl(l.n, l.energy)).collect();
    let r = compare_spectra(&an, &same, Tolerance::new(0.0, 1e-12), Some(0.0));
    assert!(r.passed() && r.matched.iter().all(|m| m.abs_gap == 0.0));

    let r = compare_spectra(
        &an[..1],
        &[lvl(0, -0.1110)],
        Tolerance::new(0.0, 1e-2),
        Some(0.0),
    );
    assert_eq!(r.matched.len(), 1);

    let r = compare_spectra(
        &an,
        &[lvl(0, -1.0 / 9.0)],
        Tolerance::new(0.0, 1e-3),
        Some(0.0),
    );
    assert_eq!(r.unmatched.len(), 1);
    assert!((r.unmatched[0].energy + 1.0 / 25.0).abs() < 1e-15);
    assert!(!r.all_matched());
}

#[test]
fn matching_is_one_to_one_and_labels_leftovers() {
    let lvl = |n, e| SpectrumLevel::numeric(n, e);
    let reference = vec![lvl(0, -1.0), lvl(1, -0.5)];
    let numeric = vec![lvl(0, -1.0005), lvl(1, -0.9999), lvl(2, -0.7), lvl(3, 0.3)];
    let r = compare_spectra(&reference, &numeric, Tolerance::new(1e-3, 0.0), Some(0.0));
    assert_eq!(r.matched.len(), 1);
    assert_eq!(r.matched[0].numeric.energy, -0.9999);
    assert_eq!(r.unmatched.len(), 1);
    assert_eq!(energies(&r.extras), vec![-1.0005, -0.7]);
    assert_eq!(energies(&r.continuum), vec![0.3]);
    assert_eq!(r.matched.len() + r.unmatched.len(), 2);
}

#[test]
fn degenerate_levels_take_two_numeric_partners() {
    let p = Params::new(2.0, 1.0, 1.0);
    let an = analytic_union(FamilyId::F3TrigRmLike, &p, 2).unwrap();
    assert_eq!(state_count(&an), 4);
    let g = default_grid(FamilyId::F3TrigRmLike, &p, 4000, 2).unwrap();
    let num = numeric_spectrum(
        &catalog::potential(FamilyId::F3TrigRmLike, &p).unwrap(),
        &g,
        4,
    )
    .unwrap();
    let r = compare_spectra(
        &an,
        &numeric_levels(&num),
        Tolerance::default_for(1.0),
        None,
    );
    assert!(r.passed(), "{r:?}");
}

#[test]
fn bounded_families_reproduce_every_admissible_level() {
    for (f, p) in [
        (FamilyId::F2MorseLike, Params::new(-3.4, 1.0, 1.0)),
        (FamilyId::F4EckartLike, Params::new(-3.0, -4.0, 1.0)),
        (FamilyId::F5HypRmLike, Params::new(-3.0, 1.0, 1.0)),
    ] {
        let an = analytic_union(f, &p, 10).unwrap();
        let g = default_grid(f, &p, 4000, 10).unwrap();
        let num =
            numeric_spectrum(&catalog::potential(f, &p).unwrap(), &g, state_count(&an)).unwrap();
        let r = compare_spectra(
            &an,
            &numeric_levels(&num),
            Tolerance::default_for(1.0),
            catalog::continuum_edge(f, &p),
        );
        assert!(r.passed(), "{f}: {r:?}");
    }
}

#[test]
fn coulomb_levels_do_not_depend_on_mu() {
    let spec = |mu: f64| {
        let p = Params::new(1.6, mu, 1.0);
        let g = default_grid(FamilyId::F1CoulombLike, &p, 4000, 3).unwrap();
        numeric_spectrum(
            &catalog::potential(FamilyId::F1CoulombLike, &p).unwrap(),
            &g,
            3,
        )
        .unwrap()
    };
    let (a, b) = (spec(0.2), spec(0.6));
    for (x, y) in a.iter().zip(&b) {
        assert!((x.energy / y.energy - 1.0).abs() < 2e-3);
    }
}

#[test]
fn convergence_orders() {
    let s = convergence_order(
        FamilyId::F1CoulombLike,
        &Params::new(1.0, 0.0, 1.0),
        &[1000, 2000, 4000],
    )
    .unwrap();
    assert!((1.7..=2.3).contains(&s), "{s}");

    let mut hs = Vec::new();
    let mut errs = Vec::new();
    for n in [101, 201, 401] {
        let (g, v) = box_operator(n, 0.0);
        hs.push(g.spacing());
        errs.push((numeric_spectrum(&v, &g, 1).unwrap()[0].energy - 1.0).abs());
    }
    let s = fit_slope(&hs, &errs);
    assert!((1.8..=2.2).contains(&s), "{s}");

    assert!(convergence_order(
        FamilyId::F1CoulombLike,
        &Params::new(1.0, 0.0, 1.0),
        &[1000, 2000]
    )
    .is_err());
    assert!(convergence_order(
        FamilyId::F1CoulombLike,
        &Params::new(1.0, 0.0, 1.0),
        &[1000, 2000, 3000]
    )
    .is_err());
}

#[test]
fn isospectral_partners() {
    let tol = Tolerance::new(0.0, 1e-3);
    let p = Params::new(2.0, 0.5, 1.0);
    let (s, sp) = isospectral_partner(FamilyId::F1CoulombLike, &p).unwrap();
    assert_eq!(s, FamilyId::S1CoulombScalar);
    let r = isospectral_check(FamilyId::F1CoulombLike, &p, s, &sp, 4, 4000, tol).unwrap();
    assert!(r.passed() && r.matched.len() == 4, "{r:?}");

    let p = Params::new(2.5, 1.0, 1.0);
    let (s, sp) = isospectral_partner(FamilyId::F3TrigRmLike, &p).unwrap();
    assert_eq!((s, sp.kappa), (FamilyId::S2TrigRmScalar, 2.5));
    let r = isospectral_check(FamilyId::F3TrigRmLike, &p, s, &sp, 4, 4000, tol).unwrap();
    assert!(r.passed() && r.matched.len() == 4, "{r:?}");

    let bad = Params::new(1.0, 0.3, 1.0);
    assert!(matches!(
        isospectral_partner(FamilyId::F1CoulombLike, &bad),
        Err(Error::Param(_))
    ));
    assert!(matches!(
        isospectral_check(
            FamilyId::F1CoulombLike,
            &Params::new(2.0, 0.5, 1.0),
            FamilyId::S2TrigRmScalar,
            &sp,
            2,
            500,
            tol
        ),
        Err(Error::Param(_))
    ));
}

#[test]
fn solver_rejects_oversized_requests() {
    let (g, v) = box_operator(20, 0.0);
    let h = assemble_hamiltonian(&v, &g).unwrap();
    assert!(matches!(lowest_eigenpairs(&h, 19), Err(Error::Solver(_))));
    assert!(matches!(lowest_eigenpairs(&h, 0), Err(Error::Solver(_))));
}
