//! Variational diagonalization against the asymmetric-box table, the exact
//! symmetric spectrum and imaginary-time propagation.

use cho_toolkit::exact::{scho_energies, ConfinedSystem1D};
use cho_toolkit::itp::{itp_spectrum, ItpConfig};
use cho_toolkit::numerics::solve_symmetric_eigen;
use cho_toolkit::vardiag::{
    basis_overlap, build_hamiltonian_matrix, scho_basis, vardiag_solve, vardiag_solve_detailed, VardiagConfig,
};

mod common;
use common::{acho, ACHO, ACHO_DM};

#[test]
fn basis_reproduces_kummer_energies() {
    let sys = acho(0.0);
    let basis = scho_basis(&sys, 2.0 / (2.0 * std::f64::consts::SQRT_2), 20, 200).unwrap();
    let exact = scho_energies(&sys, 8).unwrap();
    for (e, x) in basis.energies.iter().zip(&exact) {
        assert!((e - x).abs() < 1e-10, "{e} vs {x}");
    }
}

#[test]
fn basis_is_orthonormal() {
    let basis = scho_basis(&acho(0.0), 0.3, 80, 260).unwrap();
    for m in 0..80 {
        for n in 0..=m {
            let target = if m == n { 1.0 } else { 0.0 };
            assert!((basis_overlap(&basis, m, n).unwrap() - target).abs() < 1e-10);
        }
    }
}

#[test]
fn own_basis_is_diagonal() {
    let sys = acho(0.0);
    let alpha = sys.alpha();
    let basis = scho_basis(&sys, alpha, 30, 200).unwrap();
    let h = build_hamiltonian_matrix(&sys, &basis).unwrap();
    for m in 0..30 {
        for n in 0..30 {
            let expect = if m == n { basis.energies[n] } else { 0.0 };
            assert!((h[(m, n)] - expect).abs() < 1e-10);
        }
    }
}

#[test]
fn matrix_is_symmetric() {
    let sys = acho(1.92);
    let basis = scho_basis(&sys, 0.4, 50, 200).unwrap();
    let h = build_hamiltonian_matrix(&sys, &basis).unwrap();
    assert!((&h - h.transpose()).amax() <= 1e-11);
}

#[test]
fn symmetric_box_recovered_for_any_alpha() {
    let sys = acho(0.0);
    let exact = scho_energies(&sys, 6).unwrap();
    for alpha in [0.15, 0.7, 2.0] {
        let basis = scho_basis(&sys, alpha, 80, 260).unwrap();
        let h = build_hamiltonian_matrix(&sys, &basis).unwrap();
        let pairs = solve_symmetric_eigen(&h, 6).unwrap();
        for (p, e) in pairs.iter().zip(&exact) {
            assert!((p.value - e).abs() < 1e-10, "α = {alpha}: {} vs {e}", p.value);
        }
    }
}

#[test]
fn reproduces_the_table() {
    for (row, &d_m) in ACHO_DM.iter().enumerate() {
        let states = vardiag_solve(&acho(d_m), &VardiagConfig::default(), 6).unwrap();
        for (n, st) in states.iter().enumerate() {
            let err = st.energy - ACHO[row][n];
            assert!(err.abs() < 1e-10, "d_m = {d_m}, n = {n}: off by {err:.3e}");
            assert_eq!(st.node_count(), n);
        }
        for i in 0..6 {
            for j in 0..=i {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((states[i].overlap(&states[j]).unwrap() - target).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn doubling_the_basis_never_raises_the_ground_state() {
    for d_m in [0.36, 5.0] {
        let sys = acho(d_m);
        let small = vardiag_solve(&sys, &VardiagConfig::with_basis_size(25), 1).unwrap();
        let large = vardiag_solve(&sys, &VardiagConfig::with_basis_size(50), 1).unwrap();
        assert!(large[0].energy <= small[0].energy + 1e-12);
    }
}

#[test]
fn agrees_with_imaginary_time_propagation() {
    let sys = acho(1.92);
    let vd = vardiag_solve(&sys, &VardiagConfig::default(), 6).unwrap();
    let itp = itp_spectrum(&sys, 6, &ItpConfig::default()).unwrap();
    for (a, b) in vd.iter().zip(&itp) {
        assert!((a.energy - b.energy).abs() < 1e-9);
    }
}

#[test]
fn narrow_range_reports_edge_minimum() {
    let cfg = VardiagConfig {
        basis_size: 12,
        collocation_order: 100,
        alpha_range: Some((5.0, 8.0)),
        ..VardiagConfig::default()
    };
    let err = vardiag_solve_detailed(&acho(5.0), &cfg, 1).unwrap_err();
    assert!(matches!(err, cho_toolkit::ChoError::AlphaAtEdge(_)));
}

#[test]
fn rejects_unbounded_systems() {
    let sys = ConfinedSystem1D::free(1.0).unwrap();
    assert!(vardiag_solve(&sys, &VardiagConfig::default(), 1).is_err());
}
