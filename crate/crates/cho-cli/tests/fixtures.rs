//! Pinned reference tables: each config under `configs/` is run in-process,
//! written as CSV, read back, and every fixture row is matched to an output
//! row by its label columns and compared value by value.
//!
//! A cell passes when |got − want| is within the tolerance, widened to one
//! unit in the last digit of the reference string and half a unit in the
//! twelfth significant digit of the emitted number.

use std::path::PathBuf;
use std::sync::OnceLock;

use cho_cli::config::OutputFormat;
use cho_cli::{emit_table, run, Cell, ConfigFile, Table};

const LABELS: [&str; 10] = ["system", "omega", "mass", "d_m", "x_c", "r_c", "n", "n_r", "l", "m"];

#[derive(Clone, Copy)]
enum Tol {
    Absolute(f64),
    Relative(f64),
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Runs a config and returns the table as it reads back from CSV.
fn run_config(name: &str) -> Table {
    let path = workspace_root().join("configs").join(name);
    let spec = ConfigFile::load(&path)
        .and_then(|c| c.resolve_paths(path.parent().unwrap()).into_spec())
        .unwrap_or_else(|e| panic!("{name}: {e}"));
    let outcome = run(&spec);
    assert_eq!(outcome.failed_rows, 0, "{name}: failed rows");
    let mut buf = Vec::new();
    emit_table(&outcome.table, OutputFormat::Csv, &mut buf).unwrap();
    Table::read_csv(&buf[..]).unwrap()
}

fn load_fixture(name: &str) -> Vec<Vec<(String, String)>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    rdr.records().map(|r| header.iter().cloned().zip(r.unwrap().iter().map(String::from)).collect()).collect()
}

/// One unit in the last digit of a decimal string such as "0.0113" or "1.5e-6".
fn printed_unit(s: &str) -> f64 {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().unwrap()),
        None => (s, 0),
    };
    let decimals = mantissa.split_once('.').map_or(0, |(_, f)| f.len() as i32);
    10f64.powi(exp - decimals)
}

fn same_label(cell: &Cell, want: &str) -> bool {
    match (cell, Cell::Text(want.into())) {
        (Cell::Text(a), Cell::Text(b)) if a == &b => true,
        _ => match (cell.as_f64(), want.parse::<f64>()) {
            (Some(a), Ok(b)) => a == b,
            _ => false,
        },
    }
}

fn compare(fixture: &str, table: &Table, tol: Tol) {
    let rows = load_fixture(fixture);
    assert!(!rows.is_empty(), "{fixture} is empty");
    let mut failures = Vec::new();
    for fields in &rows {
        let (labels, values): (Vec<_>, Vec<_>) = fields.iter().partition(|(k, _)| LABELS.contains(&k.as_str()));
        let found = (0..table.rows.len())
            .find(|&i| labels.iter().all(|(k, v)| table.get(i, k).is_some_and(|c| same_label(c, v))));
        let Some(i) = found else {
            failures.push(format!("no output row for {labels:?}"));
            continue;
        };
        for (column, text) in values {
            let want: f64 = text.parse().unwrap();
            let Some(got) = table.get(i, column).and_then(Cell::as_f64) else {
                failures.push(format!("{labels:?} {column}: missing"));
                continue;
            };
            let base = match tol {
                Tol::Absolute(t) => t,
                Tol::Relative(t) => t * want.abs(),
            };
            let emitted = 0.5 * 10f64.powi(got.abs().log10().floor() as i32 - 11);
            let allowed = base.max(printed_unit(text)).max(emitted) + 1e-12 * want.abs();
            let err = (got - want).abs();
            if err.is_nan() || err > allowed {
                failures.push(format!("{labels:?} {column}: got {got}, want {text}"));
            }
        }
    }
    assert!(failures.is_empty(), "{fixture}: {} mismatches\n{}", failures.len(), failures.join("\n"));
}

fn entropy_table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| run_config("entropies.toml"))
}

#[test]
fn acho_energies() {
    compare("table3.csv", &run_config("table3.toml"), Tol::Absolute(1e-10));
}

#[test]
fn circular_state_energies() {
    let mut table = run_config("table5_cho3d.toml");
    table.rows.extend(run_config("table5_pisb.toml").rows);
    compare("table5.csv", &table, Tol::Relative(1e-9));
}

#[test]
fn fisher_s_states() {
    compare("table7.csv", &run_config("table7.toml"), Tol::Relative(1e-6));
}

#[test]
fn fisher_circular_states() {
    compare("table8.csv", &run_config("table8.toml"), Tol::Relative(1e-6));
}

#[test]
fn renyi_entropies() {
    compare("table11.csv", entropy_table(), Tol::Relative(2e-5));
}

#[test]
fn shannon_entropies() {
    compare("table12.csv", entropy_table(), Tol::Relative(2e-5));
}

#[test]
fn onicescu_energies() {
    compare("table13.csv", entropy_table(), Tol::Relative(1e-6));
}

#[test]
fn virial_fluctuations_1d() {
    compare("table14.csv", &run_config("table14.toml"), Tol::Relative(1e-7));
}

#[test]
fn virial_fluctuations_3d() {
    compare("table15.csv", &run_config("table15.toml"), Tol::Relative(1e-7));
}
