mod common;

use common::{draw_params, matrix_pairs, Stream};
use matsusy_core::catalog::{self, Domain, FamilyId, Layout, MatrixFunction, Params};
use matsusy_core::gridops::{
    apply_ladder, assemble_hamiltonian, build_grid, gaussian_bump, intertwining_between,
    intertwining_residual, shape_invariance_residual, Direction, EndKind, Grid, TruncationPolicy,
    WaveFunction,
};
use matsusy_core::{Error, Mat2};

#[test]
fn grid_examples() {
    let p = Params::new(1.0, 0.2, 1.0);
    let g = build_grid(
        FamilyId::F1CoulombLike,
        &p,
        1000,
        &TruncationPolicy::explicit(1e-3, 50.0),
    )
    .unwrap();
    assert_eq!(g.n(), 1000);
    assert_eq!(g.x_lo(), 1e-3);
    assert_eq!(g.x_hi(), 50.0);
    assert_eq!(g.cutoffs().lo, EndKind::Singular);
    assert_eq!(g.cutoffs().hi, EndKind::Tail);

    let p3 = Params::new(2.0, 1.0, 1.0);
    let policy = TruncationPolicy {
        epsilon: Some(1e-4),
        ..Default::default()
    };
    let g = build_grid(FamilyId::F3TrigRmLike, &p3, 100, &policy).unwrap();
    let half = std::f64::consts::FRAC_PI_2;
    assert!((g.x_lo() - (-half + 1e-4)).abs() < 1e-15);
    assert!((g.x_hi() - (half - 1e-4)).abs() < 1e-15);

    assert!(matches!(
        build_grid(FamilyId::F1CoulombLike, &p, 3, &policy),
        Err(Error::Grid(_))
    ));
    assert!(matches!(Grid::uniform(1.0, 1.0, 20), Err(Error::Grid(_))));
}

#[test]
fn default_grids_lie_inside_the_domains() {
    let mut s = Stream::new(21);
    for (f, b) in matrix_pairs() {
        for _ in 0..5 {
            let p = draw_params(f, b, &mut s);
            let g = build_grid(f, &p, 200, &TruncationPolicy::default().with_levels(3)).unwrap();
            let d = f.domain(&p);
            assert!(d.contains(g.x_lo()) && d.contains(g.x_hi()), "{f} {p:?}");
            assert!(assemble_hamiltonian(&catalog::potential(f, &p).unwrap(), &g).is_ok());
        }
    }
}

#[test]
fn assembled_operators_are_exactly_symmetric() {
    let mut s = Stream::new(22);
    for (f, b) in matrix_pairs() {
        let p = draw_params(f, b, &mut s);
        let g = build_grid(f, &p, 60, &TruncationPolicy::default()).unwrap();
        let h = assemble_hamiltonian(&catalog::potential(f, &p).unwrap(), &g).unwrap();
        let a = h.to_dense();
        for i in 0..a.len() {
            for j in 0..a.len() {
                assert_eq!(a[i][j].to_bits(), a[j][i].to_bits());
                if (i / 2).abs_diff(j / 2) > 1 {
                    assert_eq!(a[i][j], 0.0);
                }
            }
        }
    }
}

#[test]
fn shape_invariance_for_random_draws() {
    let mut s = Stream::new(23);
    for (f, b) in matrix_pairs() {
        for _ in 0..20 {
            let p = draw_params(f, b, &mut s);
            let r = shape_invariance_residual(f, b, &p, 200).unwrap();
            let w = catalog::superpotential(f, b, &p).unwrap();
            let scale = w
                .sample_points(200)
                .iter()
                .map(|&x| (w.eval(x) * w.eval(x)).norm_inf())
                .fold(1.0, f64::max);
            assert!(r < 1e-9 * scale, "{f} {b} {p:?}: {r}");
        }
    }
}

fn coulomb_intertwining(n: usize) -> f64 {
    let p = Params::new(1.0, 0.2, 1.0);
    let g = build_grid(
        FamilyId::F1CoulombLike,
        &p,
        n,
        &TruncationPolicy::explicit(1e-3, 30.0),
    )
    .unwrap();
    let bump = gaussian_bump(&g, 4.0, 0.8);
    intertwining_residual(FamilyId::F1CoulombLike, &p, &bump).unwrap()
}

#[test]
fn intertwining_on_the_grid() {
    let r = coulomb_intertwining(4000);
    assert!(r < 1e-4, "{r}");
    let r2 = coulomb_intertwining(2000);
    let r1 = coulomb_intertwining(1000);
    let slope = ((r1 / r2).log2() + (r2 / r).log2()) / 2.0;
    assert!((slope - 2.0).abs() < 0.3, "slope {slope}");
}

#[test]
fn free_operators_commute_on_the_stencil() {
    let g = Grid::uniform(-6.0, 6.0, 121).unwrap();
    let zero = MatrixFunction::zero(Domain::real_line(), (-6.0, 6.0), Layout::Coupled);
    let bump = gaussian_bump(&g, 0.0, 1.0);
    let r = intertwining_between(&zero, &zero, &zero, &bump).unwrap();
    assert!(r < 1e-12, "{r}");
}

#[test]
fn intertwining_for_every_parameter_family() {
    let mut s = Stream::new(24);
    for f in [
        FamilyId::F0Oscillator,
        FamilyId::F2MorseLike,
        FamilyId::F3TrigRmLike,
        FamilyId::F4EckartLike,
        FamilyId::F5HypRmLike,
        FamilyId::F6Extended,
    ] {
        let p = draw_params(f, catalog::Branch::KappaBranch, &mut s);
        let at = |n: usize| {
            let g = build_grid(f, &p, n, &TruncationPolicy::default()).unwrap();
            let mid = 0.5 * (g.x_lo() + g.x_hi());
            let width = 0.06 * (g.x_hi() - g.x_lo());
            intertwining_residual(f, &p, &gaussian_bump(&g, mid, width)).unwrap()
        };
        let (coarse, fine) = (at(2000), at(4000));
        let slope = (coarse / fine).log2();
        // Wide bumps may already sit at the rounding floor.
        assert!(
            fine < 1e-8 || (slope - 2.0).abs() < 0.3,
            "{f} {p:?}: {coarse} -> {fine}"
        );
    }
}

#[test]
fn raising_is_adjoint_to_lowering() {
    let mut s = Stream::new(25);
    for (f, b) in matrix_pairs() {
        let p = draw_params(f, b, &mut s);
        let g = build_grid(f, &p, 2000, &TruncationPolicy::default()).unwrap();
        let w = catalog::superpotential(f, b, &p).unwrap();
        let (lo, hi) = (g.x_lo(), g.x_hi());
        let len = hi - lo;
        let u = gaussian_bump(&g, lo + 0.4 * len, 0.05 * len);
        let v = gaussian_bump(&g, lo + 0.45 * len, 0.07 * len);
        let up = apply_ladder(Direction::Up, &w, &u).unwrap();
        let down = apply_ladder(Direction::Down, &w, &v).unwrap();
        let gap = (up.inner(&v) - u.inner(&down)).abs();
        assert!(
            gap < 1e-8 * up.norm().max(1.0) * v.norm().max(1.0),
            "{f} {b}: {gap}"
        );
    }
}

#[test]
fn ladder_rejects_foreign_grids() {
    let g = Grid::uniform(-1.0, 1.0, 40).unwrap();
    let w = catalog::superpotential(
        FamilyId::F1CoulombLike,
        catalog::Branch::KappaBranch,
        &Params::new(1.0, 0.2, 1.0),
    )
    .unwrap();
    let psi = WaveFunction::from_fn(&g, |x| [x, 0.0]);
    assert!(matches!(
        apply_ladder(Direction::Down, &w, &psi),
        Err(Error::Grid(_))
    ));
}

#[test]
fn potential_blocks_are_real_symmetric_on_grids() {
    let mut s = Stream::new(26);
    for (f, b) in matrix_pairs() {
        let p = draw_params(f, b, &mut s);
        let g = build_grid(f, &p, 300, &TruncationPolicy::default()).unwrap();
        let v = catalog::potential(f, &p).unwrap();
        for &x in g.nodes() {
            let m: Mat2 = v.eval(x);
            assert!(m.is_finite());
            assert_eq!(m.b, m.c);
        }
    }
}
