//! Run specifications: the TOML config file, flag overrides, and the
//! validated [`RunSpec`] the runner consumes.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cho_toolkit::measures::RenyiOrders;
use serde::Deserialize;

use crate::CliError;

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = CliError;

            fn from_str(s: &str) -> Result<Self, CliError> {
                match s.trim() {
                    $($text => Ok($name::$variant),)+
                    other => {
                        let known: Vec<&str> = Self::ALL.iter().map(|v| v.as_str()).collect();
                        Err(CliError::Config(format!(
                            "unknown {} {other:?} (expected one of {})",
                            stringify!($name),
                            known.join(", ")
                        )))
                    }
                }
            }
        }
    };
}

keyword_enum!(SystemKind {
    Scho => "scho",
    Acho => "acho",
    Cho3d => "cho3d",
    Pisb => "pisb",
    Free => "free",
});

keyword_enum!(SolverKind {
    Exact => "exact",
    Itp => "itp",
    Gps => "gps",
    Vardiag => "vardiag",
    Auto => "auto",
});

keyword_enum!(
    /// Quantities beyond the energy, which is always reported.
    MeasureKind {
        Shannon => "shannon",
        Renyi => "renyi",
        Onicescu => "onicescu",
        Fisher => "fisher",
        Complexity => "complexity",
        Virial => "virial",
    }
);

keyword_enum!(OutputFormat {
    Csv => "csv",
    Json => "json",
});

keyword_enum!(
    /// `paper` uses the solver defaults and node-aligned momentum grids;
    /// `fast` trades a few digits for speed.
    ToleranceProfile {
        Fast => "fast",
        Paper => "paper",
    }
);

/// One point of the parameter sweep. Box sizes are absent for systems that
/// have none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub omega: f64,
    pub d_m: f64,
    /// Half-width x_c in 1D, radius r_c in 3D.
    pub size: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateLabel {
    Line { n: usize },
    Radial { n_r: usize, l: usize, m: i32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub system: SystemKind,
    /// Never `Auto`; resolved during validation.
    pub solver: SolverKind,
    pub points: Vec<Point>,
    pub states: Vec<StateLabel>,
    pub measures: BTreeSet<MeasureKind>,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub profile: ToleranceProfile,
    /// 1D mass; 1 unless configured.
    pub mass: f64,
    /// 1 or 3.
    pub dim: usize,
    pub orders: RenyiOrders,
}

impl RunSpec {
    pub fn is_radial(&self) -> bool {
        self.dim == 3
    }

    /// Name of the box-size column: x_c in 1D, r_c in 3D.
    pub fn size_name(&self) -> &'static str {
        if self.is_radial() {
            "r_c"
        } else {
            "x_c"
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    omega: Option<Vec<f64>>,
    d_m: Option<Vec<f64>>,
    x_c: Option<Vec<f64>>,
    r_c: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct StatesSection {
    n: Option<Vec<usize>>,
    n_r: Option<Vec<usize>>,
    l: Option<Vec<usize>>,
    m: Option<Vec<i32>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RenyiSection {
    alpha: f64,
    beta: f64,
}

/// The config file as written. Every field may also come from a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    system: Option<SystemKind>,
    solver: Option<SolverKind>,
    measures: Option<Vec<MeasureKind>>,
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
    tolerance_profile: Option<ToleranceProfile>,
    mass: Option<f64>,
    dimension: Option<usize>,
    renyi: Option<RenyiSection>,
    #[serde(default)]
    sweep: SweepSection,
    #[serde(default)]
    states: StatesSection,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        Self::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Relative output paths in a config file are taken relative to the file.
    pub fn resolve_paths(mut self, base: &Path) -> Self {
        if let Some(out) = &self.out {
            if out.is_relative() && out.as_os_str() != "-" {
                self.out = Some(base.join(out));
            }
        }
        self
    }

    /// Applies flag values on top of the file; flags win.
    pub fn apply(mut self, o: &Overrides) -> Result<Self, CliError> {
        self.system = o.system.or(self.system);
        self.solver = o.solver.or(self.solver);
        self.format = o.format.or(self.format);
        self.tolerance_profile = o.tolerance_profile.or(self.tolerance_profile);
        if let Some(out) = &o.out {
            self.out = Some(out.clone());
        }
        if let Some(m) = &o.measures {
            self.measures = Some(parse_measures(m)?);
        }
        for item in &o.sweep {
            let (axis, values) = split_assignment(item)?;
            let values = Some(parse_list(values, parse_float)?);
            match axis {
                "omega" => self.sweep.omega = values,
                "d_m" => self.sweep.d_m = values,
                "x_c" => self.sweep.x_c = values,
                "r_c" => self.sweep.r_c = values,
                _ => return Err(CliError::Config(format!("unknown sweep axis {axis:?}"))),
            }
        }
        for item in &o.states {
            let (key, values) = split_assignment(item)?;
            match key {
                "n" => self.states.n = Some(parse_list(values, parse_index)?.into_iter().flatten().collect()),
                "n_r" => self.states.n_r = Some(parse_list(values, parse_index)?.into_iter().flatten().collect()),
                "l" => self.states.l = Some(parse_list(values, parse_index)?.into_iter().flatten().collect()),
                "m" => self.states.m = Some(parse_list(values, parse_signed)?.into_iter().flatten().collect()),
                _ => return Err(CliError::Config(format!("unknown state label {key:?}"))),
            }
        }
        Ok(self)
    }

    pub fn into_spec(self) -> Result<RunSpec, CliError> {
        fn bad<T>(msg: String) -> Result<T, CliError> {
            Err(CliError::Config(msg))
        }
        let Some(system) = self.system else {
            return bad("no system given".into());
        };
        let dim = match (system, self.dimension) {
            (SystemKind::Scho | SystemKind::Acho, None | Some(1)) => 1,
            (SystemKind::Cho3d | SystemKind::Pisb, None | Some(3)) => 3,
            (SystemKind::Free, None | Some(3)) => 3,
            (SystemKind::Free, Some(1)) => 1,
            (_, Some(d)) => return bad(format!("{system} does not support dimension {d}")),
        };
        let solver = resolve_solver(system, self.solver.unwrap_or(SolverKind::Auto))?;

        let sweep = self.sweep;
        let axis =
            |name: &str, values: Option<Vec<f64>>, used: bool, default: Option<f64>| match (values, used, default) {
                (Some(v), true, _) if v.is_empty() => bad(format!("sweep axis {name} is empty")),
                (Some(v), true, _) => Ok(v),
                (Some(_), false, _) => bad(format!("sweep axis {name} does not apply to {system}")),
                (None, true, Some(d)) => Ok(vec![d]),
                (None, true, None) => bad(format!("{system} needs a {name} sweep")),
                (None, false, _) => Ok(vec![f64::NAN]),
            };
        let pisb = system == SystemKind::Pisb;
        let omegas = axis("omega", sweep.omega, !pisb, Some(1.0))?;
        let d_ms = axis("d_m", sweep.d_m, system == SystemKind::Acho, None)?;
        let x_cs = axis("x_c", sweep.x_c, dim == 1 && system != SystemKind::Free, None)?;
        let r_cs = axis("r_c", sweep.r_c, matches!(system, SystemKind::Cho3d | SystemKind::Pisb), None)?;
        for &w in &omegas {
            if !pisb && !(w > 0.0 && w.is_finite()) {
                return bad(format!("omega must be positive and finite, got {w}"));
            }
        }
        let sizes: Vec<f64> = if dim == 1 { x_cs } else { r_cs };
        for &s in &sizes {
            if s <= 0.0 {
                return bad(format!("box sizes must be positive, got {s}"));
            }
        }
        let mut points = Vec::new();
        for &omega in &omegas {
            for &d_m in &d_ms {
                for &size in &sizes {
                    points.push(Point {
                        omega: if pisb { 1.0 } else { omega },
                        d_m: if d_m.is_nan() { 0.0 } else { d_m },
                        size: (!size.is_nan()).then_some(size),
                    });
                }
            }
        }
        if pisb && points.iter().any(|p| p.size == Some(f64::INFINITY)) {
            return bad("pisb needs a finite r_c".into());
        }

        let st = self.states;
        let states: Vec<StateLabel> = if dim == 1 {
            if st.n_r.is_some() || st.l.is_some() || st.m.is_some() {
                return bad("1D systems take states as n".into());
            }
            st.n.unwrap_or_else(|| vec![0]).into_iter().map(|n| StateLabel::Line { n }).collect()
        } else {
            if st.n.is_some() {
                return bad("radial systems take states as n_r, l, m".into());
            }
            let mut out = Vec::new();
            let ms = st.m.unwrap_or_else(|| vec![0]);
            for n_r in st.n_r.unwrap_or_else(|| vec![0]) {
                for &l in st.l.as_deref().unwrap_or(&[0]) {
                    for &m in &ms {
                        if m.unsigned_abs() as usize <= l {
                            out.push(StateLabel::Radial { n_r, l, m });
                        }
                    }
                }
            }
            out
        };
        if states.is_empty() {
            return bad("no states selected".into());
        }

        let measures: BTreeSet<MeasureKind> = self.measures.unwrap_or_default().into_iter().collect();
        if pisb && !measures.is_empty() {
            return bad("pisb provides energies only".into());
        }
        if pisb && states.iter().any(|s| matches!(s, StateLabel::Radial { m, .. } if *m != 0)) {
            return bad("pisb energies do not depend on m; use m = 0".into());
        }
        let mass = self.mass.unwrap_or(1.0);
        if self.mass.is_some() && dim != 1 {
            return bad("mass applies to 1D systems only".into());
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return bad(format!("mass must be positive, got {mass}"));
        }
        let orders = match self.renyi {
            Some(r) => {
                for order in [r.alpha, r.beta] {
                    if !(order > 0.0 && order.is_finite() && order != 1.0) {
                        return bad(format!("Rényi orders must be positive and not 1, got {order}"));
                    }
                }
                RenyiOrders { alpha: r.alpha, beta: r.beta }
            }
            None => RenyiOrders::default(),
        };
        let out = self.out.filter(|p| p.as_os_str() != "-");
        Ok(RunSpec {
            system,
            solver,
            points,
            states,
            measures,
            format: self.format.unwrap_or(OutputFormat::Csv),
            out,
            profile: self.tolerance_profile.unwrap_or(ToleranceProfile::Paper),
            mass,
            dim,
            orders,
        })
    }
}

/// Flag values that override a config file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub system: Option<SystemKind>,
    pub solver: Option<SolverKind>,
    /// `axis=v1,v2,...`, one entry per axis.
    pub sweep: Vec<String>,
    /// `label=v1,v2,...` with inclusive ranges such as `0..4`.
    pub states: Vec<String>,
    /// Comma-separated list, or `none`.
    pub measures: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub tolerance_profile: Option<ToleranceProfile>,
}

fn resolve_solver(system: SystemKind, solver: SolverKind) -> Result<SolverKind, CliError> {
    use SolverKind::*;
    use SystemKind::*;
    let resolved = match (system, solver) {
        (Scho | Cho3d | Free | Pisb, Auto) => Exact,
        (Acho, Auto) => Vardiag,
        (Scho, Exact | Itp | Vardiag) | (Acho, Itp | Vardiag) | (Cho3d, Exact | Gps) | (Pisb, Exact) => solver,
        (Free, Exact | Gps) => solver,
        _ => return Err(CliError::Config(format!("solver {solver} does not apply to {system}"))),
    };
    Ok(resolved)
}

fn parse_measures(text: &str) -> Result<Vec<MeasureKind>, CliError> {
    if text.trim() == "none" || text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(MeasureKind::from_str).collect()
}

fn split_assignment(item: &str) -> Result<(&str, &str), CliError> {
    item.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| CliError::Config(format!("expected key=values, got {item:?}")))
}

fn parse_list<T>(text: &str, item: impl Fn(&str) -> Result<T, CliError>) -> Result<Vec<T>, CliError> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| item(s.trim())).collect()
}

fn parse_float(s: &str) -> Result<f64, CliError> {
    s.parse().map_err(|_| CliError::Config(format!("not a number: {s:?}")))
}

/// A non-negative integer or an inclusive range `a..b`.
fn parse_index(s: &str) -> Result<Vec<usize>, CliError> {
    let int = |t: &str| t.trim().parse::<usize>().map_err(|_| CliError::Config(format!("not an index: {s:?}")));
    match s.split_once("..") {
        Some((a, b)) => Ok((int(a)?..=int(b)?).collect()),
        None => Ok(vec![int(s)?]),
    }
}

fn parse_signed(s: &str) -> Result<Vec<i32>, CliError> {
    let int = |t: &str| t.trim().parse::<i32>().map_err(|_| CliError::Config(format!("not an integer: {s:?}")));
    match s.split_once("..") {
        Some((a, b)) => Ok((int(a)?..=int(b)?).collect()),
        None => Ok(vec![int(s)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> Result<RunSpec, CliError> {
        ConfigFile::parse(text)?.into_spec()
    }

    #[test]
    fn sweep_is_the_cartesian_product_in_order() {
        let s = spec("system = \"acho\"\nmass = 0.5\n[sweep]\nomega = [2.0]\nd_m = [0.0, 0.5]\nx_c = [1.0, 2.0]\n")
            .unwrap();
        let got: Vec<(f64, Option<f64>)> = s.points.iter().map(|p| (p.d_m, p.size)).collect();
        assert_eq!(got, vec![(0.0, Some(1.0)), (0.0, Some(2.0)), (0.5, Some(1.0)), (0.5, Some(2.0))]);
        assert_eq!(s.solver, SolverKind::Vardiag);
        assert_eq!(s.mass, 0.5);
    }

    #[test]
    fn radial_states_skip_impossible_m() {
        let s = spec("system = \"cho3d\"\n[sweep]\nr_c = [1.0]\n[states]\nl = [0, 1]\nm = [0, 1]\n").unwrap();
        let want = vec![
            StateLabel::Radial { n_r: 0, l: 0, m: 0 },
            StateLabel::Radial { n_r: 0, l: 1, m: 0 },
            StateLabel::Radial { n_r: 0, l: 1, m: 1 },
        ];
        assert_eq!(s.states, want);
    }

    #[test]
    fn infinity_is_a_box_size() {
        let s = spec("system = \"scho\"\n[sweep]\nx_c = [0.5, inf]\n").unwrap();
        assert_eq!(s.points[1].size, Some(f64::INFINITY));
    }

    #[test]
    fn incompatible_choices_are_rejected() {
        for text in [
            "system = \"acho\"\nsolver = \"exact\"\n[sweep]\nd_m = [1.0]\nx_c = [1.0]\n",
            "system = \"scho\"\nsolver = \"gps\"\n[sweep]\nx_c = [1.0]\n",
            "system = \"cho3d\"\n[sweep]\nx_c = [1.0]\n",
            "system = \"cho3d\"\n[sweep]\nr_c = []\n",
            "system = \"pisb\"\nmeasures = [\"shannon\"]\n[sweep]\nr_c = [1.0]\n",
            "system = \"scho\"\n[sweep]\nx_c = [1.0]\n[states]\nl = [1]\n",
            "system = \"scho\"\ncolour = \"red\"\n",
        ] {
            assert!(spec(text).is_err(), "{text}");
        }
    }

    #[test]
    fn flags_override_the_file() {
        let file = ConfigFile::parse("system = \"scho\"\nmeasures = [\"shannon\"]\n[sweep]\nx_c = [1.0]\n").unwrap();
        let o = Overrides {
            sweep: vec!["x_c=0.5,inf".into()],
            states: vec!["n=0..2".into()],
            measures: Some("fisher,virial".into()),
            format: Some(OutputFormat::Json),
            ..Default::default()
        };
        let s = file.apply(&o).unwrap().into_spec().unwrap();
        assert_eq!(s.points.len(), 2);
        assert_eq!(s.states.len(), 3);
        assert_eq!(s.measures, [MeasureKind::Fisher, MeasureKind::Virial].into_iter().collect());
        assert_eq!(s.format, OutputFormat::Json);
    }

    #[test]
    fn keywords_round_trip() {
        for &k in MeasureKind::ALL {
            assert_eq!(k.as_str().parse::<MeasureKind>().unwrap(), k);
        }
        assert!("tsallis".parse::<MeasureKind>().is_err());
    }
}
