//! Sweep execution: one row per (point, state), computed on a bounded rayon
//! pool and returned in sweep order.

use rayon::prelude::*;

use cho_toolkit::exact::{
    cho3d_eigenstate, pisb_energy, scho_eigenstate, ConfinedSystem1D, ConfinedSystemRadial, Eigenstate,
};
use cho_toolkit::gps::{gps_solve, GpsConfig};
use cho_toolkit::itp::{itp_spectrum, ItpConfig};
use cho_toolkit::measures::{
    fisher_bounds, fisher_from_moments, virial_check, Expectations, MeasureReport, RadialDensityPair, SpaceValues,
    BOUND_SLACK,
};
use cho_toolkit::momentum::{
    aligned_line_p_grid, aligned_radial_p_grid, line_p_grid, radial_p_grid, to_momentum, to_momentum_1d, MomentumState,
};
use cho_toolkit::vardiag::{vardiag_solve, VardiagConfig};

use crate::config::{MeasureKind, Point, RunSpec, SolverKind, StateLabel, SystemKind, ToleranceProfile};
use crate::report::{Cell, ReportRow, Table};
use crate::CliError;

/// Environment variable holding the worker count.
pub const THREADS_VAR: &str = "CHO_TOOLKIT_THREADS";

/// Worker count from [`THREADS_VAR`], or `None` for all available cores.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{THREADS_VAR} must be a positive integer, got {text:?}"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Config(format!("{THREADS_VAR}: {e}"))),
    }
}

/// The finished table and how many of its rows carry an error.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub table: Table,
    pub failed_rows: usize,
}

impl RunOutcome {
    pub fn all_failed(&self) -> bool {
        !self.table.rows.is_empty() && self.failed_rows == self.table.rows.len()
    }
}

/// Runs `spec` on a pool of `threads` workers (all cores when `None`).
pub fn run_with_threads(spec: &RunSpec, threads: Option<usize>) -> Result<RunOutcome, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(pool.install(|| run(spec)))
}

/// Runs `spec` on the current rayon pool.
pub fn run(spec: &RunSpec) -> RunOutcome {
    let layout = Layout::new(spec);
    let units = work_units(spec);
    let mut rows: Vec<(usize, usize, ReportRow)> = units
        .par_iter()
        .flat_map_iter(|unit| {
            solve_unit(spec, unit)
                .into_iter()
                .map(|(state_idx, result)| (unit.point_idx, state_idx, layout.row(spec, unit, state_idx, result)))
        })
        .collect();
    rows.sort_by_key(|r| (r.0, r.1));
    let error_col = layout.columns.len() - 1;
    let failed_rows = rows.iter().filter(|r| r.2.cells[error_col] != Cell::Empty).count();
    let mut table = Table::new(layout.columns);
    table.rows = rows.into_iter().map(|r| r.2).collect();
    RunOutcome { table, failed_rows }
}

/// States solved together: all states of a 1D point, or all states of one
/// l at a radial point.
struct Unit {
    point_idx: usize,
    point: Point,
    states: Vec<usize>,
}

fn work_units(spec: &RunSpec) -> Vec<Unit> {
    let mut units = Vec::new();
    for (point_idx, &point) in spec.points.iter().enumerate() {
        let mut groups: Vec<(Option<usize>, Vec<usize>)> = Vec::new();
        for (idx, s) in spec.states.iter().enumerate() {
            let key = match *s {
                StateLabel::Line { .. } => None,
                StateLabel::Radial { l, .. } => Some(l),
            };
            match groups.iter_mut().find(|g| g.0 == key) {
                Some(g) => g.1.push(idx),
                None => groups.push((key, vec![idx])),
            }
        }
        units.extend(groups.into_iter().map(|(_, states)| Unit { point_idx, point, states }));
    }
    units
}

/// Either system family, built for one unit.
#[derive(Clone, Copy)]
enum System {
    Line(ConfinedSystem1D),
    Radial(ConfinedSystemRadial),
    /// Closed-form energies only.
    Pisb {
        r_c: f64,
    },
}

fn build_system(spec: &RunSpec, point: &Point, l: usize) -> cho_toolkit::Result<System> {
    let size = point.size.unwrap_or(f64::INFINITY);
    Ok(match spec.system {
        SystemKind::Scho => System::Line(ConfinedSystem1D::scho(point.omega, size)?.with_mass(spec.mass)?),
        SystemKind::Acho => System::Line(ConfinedSystem1D::acho(point.omega, point.d_m, size)?.with_mass(spec.mass)?),
        SystemKind::Free if spec.dim == 1 => System::Line(ConfinedSystem1D::free(point.omega)?.with_mass(spec.mass)?),
        SystemKind::Free => System::Radial(ConfinedSystemRadial::free(point.omega, l)?),
        SystemKind::Cho3d => System::Radial(ConfinedSystemRadial::new(point.omega, l, size)?),
        SystemKind::Pisb => System::Pisb { r_c: size },
    })
}

/// A solved state, or only an energy for closed-form systems.
enum Solved {
    State(Box<Eigenstate>, System),
    Energy(f64),
}

type StateResult = Result<Solved, String>;

fn solve_unit(spec: &RunSpec, unit: &Unit) -> Vec<(usize, StateResult)> {
    let labels: Vec<StateLabel> = unit.states.iter().map(|&i| spec.states[i]).collect();
    let l = match labels[0] {
        StateLabel::Radial { l, .. } => l,
        StateLabel::Line { .. } => 0,
    };
    let fail_all = |msg: String| unit.states.iter().map(|&i| (i, Err(msg.clone()))).collect();
    let sys = match build_system(spec, &unit.point, l) {
        Ok(s) => s,
        Err(e) => return fail_all(e.to_string()),
    };
    // Principal index of each label within its symmetry block.
    let index = |s: &StateLabel| match *s {
        StateLabel::Line { n } => n,
        StateLabel::Radial { n_r, .. } => n_r,
    };
    let count = labels.iter().map(index).max().unwrap_or(0) + 1;
    let fast = spec.profile == ToleranceProfile::Fast;

    let spectrum: Option<cho_toolkit::Result<Vec<Eigenstate>>> = match (spec.solver, sys) {
        (SolverKind::Itp, System::Line(s)) => {
            let cfg = if fast { ItpConfig::with_intervals(800) } else { ItpConfig::default() };
            Some(itp_spectrum(&s, count, &cfg))
        }
        (SolverKind::Vardiag, System::Line(s)) => {
            let cfg = if fast { VardiagConfig::with_basis_size(50) } else { VardiagConfig::default() };
            Some(vardiag_solve(&s, &cfg, count))
        }
        (SolverKind::Gps, System::Radial(s)) => {
            let cfg = if fast { GpsConfig::with_order(64) } else { GpsConfig::default() };
            Some(gps_solve(&s, &cfg, count))
        }
        _ => None,
    };
    let spectrum = match spectrum {
        Some(Ok(states)) => Some(states),
        Some(Err(e)) => return fail_all(e.to_string()),
        None => None,
    };

    unit.states
        .iter()
        .zip(&labels)
        .map(|(&idx, label)| {
            let solved = match (&spectrum, sys, *label) {
                (Some(states), _, StateLabel::Radial { m, .. }) => {
                    states[index(label)].clone().with_m(m).map(|st| Solved::State(Box::new(st), sys))
                }
                (Some(states), _, StateLabel::Line { n }) => Ok(Solved::State(Box::new(states[n].clone()), sys)),
                (None, System::Line(s), StateLabel::Line { n }) => {
                    scho_eigenstate(&s, n).map(|st| Solved::State(Box::new(st), sys))
                }
                (None, System::Radial(s), StateLabel::Radial { n_r, m, .. }) => {
                    cho3d_eigenstate(&s, n_r).and_then(|st| st.with_m(m)).map(|st| Solved::State(Box::new(st), sys))
                }
                (None, System::Pisb { r_c }, StateLabel::Radial { n_r, l, .. }) => {
                    pisb_energy(l, n_r, r_c).map(Solved::Energy)
                }
                _ => unreachable!("labels are validated against the system"),
            };
            (idx, solved.map_err(|e| e.to_string()))
        })
        .collect()
}

/// Column names, built once from the spec, and the assembly of each row.
struct Layout {
    columns: Vec<String>,
}

const COMPLEXITY_KINDS: [&str; 4] = ["er", "es", "ir", "is"];
const COMPLEXITY_ORDERS: [&str; 2] = ["b2_3", "b1"];

impl Layout {
    fn new(spec: &RunSpec) -> Self {
        let mut c: Vec<String> = vec!["system".into(), "solver".into(), "omega".into()];
        if spec.is_radial() {
            c.extend(["r_c", "n_r", "l", "m"].map(String::from));
        } else {
            c.extend(["mass", "d_m", "x_c", "n"].map(String::from));
        }
        c.push("energy".into());
        let triple = |c: &mut Vec<String>, name: &str| c.extend(["r", "p", "t"].map(|s| format!("{name}_{s}")));
        for m in &spec.measures {
            match m {
                MeasureKind::Shannon => {
                    triple(&mut c, "shannon");
                    c.push("bbm_ok".into());
                }
                MeasureKind::Renyi => {
                    c.extend(["renyi_alpha", "renyi_beta"].map(String::from));
                    triple(&mut c, "renyi");
                    c.push("renyi_bound_ok".into());
                }
                MeasureKind::Onicescu => triple(&mut c, "onicescu"),
                MeasureKind::Fisher => {
                    triple(&mut c, "fisher");
                    if spec.is_radial() {
                        c.extend(["fisher_lower", "fisher_upper", "fisher_bound_ok"].map(String::from));
                    }
                }
                MeasureKind::Complexity => {
                    for b in COMPLEXITY_ORDERS {
                        for kind in COMPLEXITY_KINDS {
                            for space in ["r", "p"] {
                                c.push(format!("c_{kind}_{space}_{b}"));
                            }
                        }
                    }
                }
                MeasureKind::Virial => c.extend(["dv2", "dt2", "tv_gap", "vt_gap"].map(String::from)),
            }
        }
        c.extend(["grid", "p_nodes", "profile", "error"].map(String::from));
        Self { columns: c }
    }

    fn row(&self, spec: &RunSpec, unit: &Unit, state_idx: usize, result: StateResult) -> ReportRow {
        let mut cells: Vec<Cell> = vec![
            Cell::Text(spec.system.to_string()),
            Cell::Text(spec.solver.to_string()),
            if spec.system == SystemKind::Pisb { Cell::Empty } else { Cell::Num(unit.point.omega) },
        ];
        let size = unit.point.size.map_or(Cell::Num(f64::INFINITY), Cell::Num);
        match spec.states[state_idx] {
            StateLabel::Radial { n_r, l, m } => {
                cells.extend([size, Cell::Int(n_r as i64), Cell::Int(l as i64), Cell::Int(m as i64)]);
            }
            StateLabel::Line { n } => {
                cells.extend([Cell::Num(spec.mass), Cell::Num(unit.point.d_m), size, Cell::Int(n as i64)]);
            }
        }
        let width = self.columns.len();
        let finish = |mut cells: Vec<Cell>, p_nodes: Option<usize>, error: Option<String>| {
            cells.resize(width - 4, Cell::Empty);
            cells.extend([
                Cell::Text(grid_description(spec)),
                p_nodes.map_or(Cell::Empty, |n| Cell::Int(n as i64)),
                Cell::Text(spec.profile.to_string()),
                error.map_or(Cell::Empty, Cell::Text),
            ]);
            ReportRow { cells }
        };
        match result {
            Err(msg) => finish(cells, None, Some(msg)),
            Ok(Solved::Energy(e)) => {
                cells.push(Cell::Num(e));
                finish(cells, None, None)
            }
            Ok(Solved::State(state, sys)) => {
                cells.push(Cell::Num(state.energy));
                match measure_cells(spec, &state, sys) {
                    Ok((values, p_nodes)) => {
                        cells.extend(values);
                        debug_assert_eq!(cells.len(), width - 4);
                        finish(cells, p_nodes, None)
                    }
                    Err(e) => finish(cells, None, Some(e.to_string())),
                }
            }
        }
    }
}

fn grid_description(spec: &RunSpec) -> String {
    let fast = spec.profile == ToleranceProfile::Fast;
    match (spec.system, spec.solver) {
        (SystemKind::Pisb, _) => "bessel zeros".into(),
        (_, SolverKind::Exact) => "kummer closed form".into(),
        (_, SolverKind::Itp) => format!("finite differences, {} intervals", if fast { 800 } else { 2000 }),
        (_, SolverKind::Vardiag) => format!("scho basis of {}", if fast { 50 } else { 80 }),
        (_, SolverKind::Gps) => format!("lgl collocation, N = {}", if fast { 64 } else { 128 }),
        (_, SolverKind::Auto) => unreachable!("auto is resolved during validation"),
    }
}

/// The requested measure columns for one state, and the momentum grid size
/// when a transform was needed.
fn measure_cells(spec: &RunSpec, st: &Eigenstate, sys: System) -> cho_toolkit::Result<(Vec<Cell>, Option<usize>)> {
    let wants = |m: MeasureKind| spec.measures.contains(&m);
    let (l, m) = match st.labels {
        cho_toolkit::exact::Labels::Radial { l, m, .. } => (l, m),
        cho_toolkit::exact::Labels::OneD { .. } => (0, 0),
    };
    let entropic = wants(MeasureKind::Shannon) || wants(MeasureKind::Renyi) || wants(MeasureKind::Complexity);
    let needs_momentum = entropic || wants(MeasureKind::Onicescu) || (wants(MeasureKind::Fisher) && m != 0);
    // Node-aligned grids only matter where ρ ln ρ or ρ^λ is integrated.
    let aligned = entropic && spec.profile == ToleranceProfile::Paper;

    let momentum: Option<MomentumState> = match (needs_momentum, sys) {
        (false, _) => None,
        (true, System::Line(s)) => {
            let grid = if aligned { aligned_line_p_grid(st, &s)? } else { line_p_grid(&s, st.energy)? };
            Some(to_momentum_1d(st, &grid)?)
        }
        (true, System::Radial(s)) => {
            let grid = if aligned { aligned_radial_p_grid(st, &s)? } else { radial_p_grid(&s, st.energy)? };
            Some(to_momentum(st, &grid)?)
        }
        (true, System::Pisb { .. }) => unreachable!("pisb has no measures"),
    };
    let ex = match sys {
        System::Line(s) => Expectations::line(st, &s)?,
        System::Radial(s) => Expectations::radial(st, &s, momentum.as_ref())?,
        System::Pisb { .. } => unreachable!("pisb has no measures"),
    };
    let report = match &momentum {
        Some(mom) => Some(MeasureReport::compute(&RadialDensityPair::from_states(st, mom)?, Some(&ex), spec.orders)?),
        None => None,
    };
    let fisher = match &report {
        Some(r) => r.fisher,
        None if wants(MeasureKind::Fisher) => Some(fisher_from_moments(&ex, spec.dim, l, m)?),
        None => None,
    };

    let mut cells = Vec::new();
    let triple = |cells: &mut Vec<Cell>, v: SpaceValues| cells.extend([Cell::Num(v.r), Cell::Num(v.p), Cell::Num(v.t)]);
    let opt_bool = |b: Option<bool>| b.map_or(Cell::Empty, Cell::Bool);
    for measure in &spec.measures {
        match measure {
            MeasureKind::Shannon => {
                let r = report.as_ref().expect("momentum computed");
                triple(&mut cells, r.shannon);
                cells.push(Cell::Bool(r.bounds.bbm));
            }
            MeasureKind::Renyi => {
                let r = report.as_ref().expect("momentum computed");
                cells.extend([Cell::Num(spec.orders.alpha), Cell::Num(spec.orders.beta)]);
                triple(&mut cells, r.renyi);
                cells.push(opt_bool(r.bounds.renyi));
            }
            MeasureKind::Onicescu => triple(&mut cells, report.as_ref().expect("momentum computed").onicescu),
            MeasureKind::Fisher => {
                let i = fisher.expect("fisher computed");
                triple(&mut cells, i);
                if spec.is_radial() {
                    let (lo, hi) = fisher_bounds(&ex);
                    let ok = i.t >= lo - BOUND_SLACK * lo && i.t <= hi + BOUND_SLACK * hi;
                    cells.extend([Cell::Num(lo), Cell::Num(hi), Cell::Bool(ok)]);
                }
            }
            MeasureKind::Complexity => {
                let r = report.as_ref().expect("momentum computed");
                for set in &r.complexities {
                    let pairs =
                        [Some(set.energy_renyi), Some(set.energy_shannon), set.fisher_renyi, set.fisher_shannon];
                    for pair in pairs {
                        match pair {
                            Some(v) => cells.extend([Cell::Num(v.r), Cell::Num(v.p)]),
                            None => cells.extend([Cell::Empty, Cell::Empty]),
                        }
                    }
                }
            }
            MeasureKind::Virial => {
                let v = match sys {
                    System::Line(s) => virial_check(st, s)?,
                    System::Radial(s) => virial_check(st, s)?,
                    System::Pisb { .. } => unreachable!("pisb has no measures"),
                };
                cells.extend([v.delta_v2, v.delta_t2, v.tv_gap, v.vt_gap].map(Cell::Num));
            }
        }
    }
    Ok((cells, momentum.map(|m| m.grid.nodes().len())))
}
