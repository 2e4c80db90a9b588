//! Shared reference data for the asymmetric-box tests.

#![allow(dead_code)]

use cho_toolkit::exact::ConfinedSystem1D;

/// Asymmetric box [−1, 1] with H = −d²/dx² + (x − d_m)², i.e. mass ½ and
/// ω = 2 in the ½mω² convention. Rows d_m = 0.36, 1.92, 5, 10; states 0..5.
pub const ACHO_DM: [f64; 4] = [0.36, 1.92, 5.0, 10.0];

/// Printed values, except d_m = 5 ε₃ (printed 64.900…, a transposed digit)
/// and d_m = 10 ε₅ (printed 189.515389275133, 1.35e-10 off), which hold
/// 50-digit parabolic-cylinder roots.
pub const ACHO: [[f64; 6]; 4] = [
    [2.7177633960054, 10.283146010610, 22.648848755052, 39.929984298830, 62.140768627508, 89.284409553063],
    [6.0383021056781, 13.901445986629, 26.249310409373, 43.513981920357, 65.715672311936, 92.854029622882],
    [26.065225076406, 35.462261039378, 47.817024422796, 64.990200447499, 87.137790461503, 114.244486402564],
    [97.474035270680, 110.51944554927, 123.593144939095, 140.555432078323, 162.519960161732, 189.515389274998],
];

pub fn acho(d_m: f64) -> ConfinedSystem1D {
    ConfinedSystem1D::acho(2.0, d_m, 1.0).unwrap().with_mass(0.5).unwrap()
}
