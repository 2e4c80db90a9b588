//! Imaginary-time propagation against exact spectra and the asymmetric-box table.

use cho_toolkit::exact::{scho_eigenstate, ConfinedSystem1D};
use cho_toolkit::itp::{itp_solve_traced, itp_spectrum, ItpConfig};

mod common;
use common::{acho, ACHO, ACHO_DM};

#[test]
fn symmetric_box_matches_exact_spectrum() {
    for &x_c in &[0.5, 1.0, 2.0] {
        let sys = ConfinedSystem1D::scho(1.0, x_c).unwrap();
        let states = itp_spectrum(&sys, 6, &ItpConfig::default()).unwrap();
        for (n, st) in states.iter().enumerate() {
            let exact = scho_eigenstate(&sys, n).unwrap().energy;
            assert!((st.energy - exact).abs() < 1e-9, "x_c = {x_c}, n = {n}: {} vs {exact}", st.energy);
            assert_eq!(st.node_count(), n);
        }
        for i in 0..6 {
            for j in 0..i {
                assert!(states[i].overlap(&states[j]).unwrap().abs() < 1e-9);
            }
        }
    }
}

#[test]
fn asymmetric_box_table() {
    for (row, &d_m) in ACHO_DM.iter().enumerate() {
        let states = itp_spectrum(&acho(d_m), 6, &ItpConfig::default()).unwrap();
        for (n, st) in states.iter().enumerate() {
            let err = st.energy - ACHO[row][n];
            assert!(err.abs() < 1e-10, "d_m = {d_m}, n = {n}: off by {err:.3e}");
            assert_eq!(st.node_count(), n);
        }
    }
}

#[test]
fn doubling_the_grid_moves_energies_by_less_than_1e_9() {
    let sys = acho(5.0);
    let coarse = itp_spectrum(&sys, 6, &ItpConfig::default()).unwrap();
    let fine = itp_spectrum(&sys, 6, &ItpConfig::with_intervals(4000)).unwrap();
    for (c, f) in coarse.iter().zip(&fine) {
        assert!((c.energy - f.energy).abs() < 1e-9);
    }
}

#[test]
fn ground_state_descends_monotonically() {
    let sys = acho(1.92);
    let (_, trace) = itp_solve_traced(&sys, 0, &ItpConfig::default()).unwrap();
    for w in trace.energies[30..].windows(2) {
        assert!(w[1] <= w[0] + 1e-12);
    }
}

#[test]
fn mirror_image_offsets() {
    let cfg = ItpConfig::default();
    let plus = itp_spectrum(&acho(1.92), 6, &cfg).unwrap();
    let minus = itp_spectrum(&acho(-1.92), 6, &cfg).unwrap();
    for (p, m) in plus.iter().zip(&minus) {
        assert!((p.energy - m.energy).abs() < 1e-10);
        let k = p.values.len();
        let sign = if p.values[k / 4] * m.values[3 * k / 4] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..k {
            assert!((p.values[i] - sign * m.values[k - 1 - i]).abs() < 1e-8);
        }
    }
}
