//! The dimension table of the tensor-algebra series:
//!
//!     R ⊗ O →  52     C ⊗ O →  78     H ⊗ O → 133     O ⊗ O → 248
//!
//! Dimensions are exact ranks over the rationals. The two small rows run
//! in seconds; pass `large` as an argument to include H ⊗ O and O ⊗ O
//! (a couple of minutes — the grade ±1 and ±2 ranks are certified from
//! coefficient blocks instead of full symbolic operators).

use kantor::realize::{dimension_table, TableEntry};
use kantor::report::render_dimension_table_markdown;
use kantor::sysspec::parse_system;

fn main() {
    let large = std::env::args().any(|a| a == "large");
    let mut specs = vec!["tensor:R", "tensor:C"];
    if large {
        specs.extend(["tensor:H", "tensor:O"]);
    }
    let entries: Vec<TableEntry> = specs
        .iter()
        .map(|spec| {
            let p = parse_system(spec).unwrap();
            TableEntry {
                system: spec.to_string(),
                algebra: p.algebra.clone().unwrap(),
                expected_total: p.expected_total.unwrap(),
                ts: p.ts,
            }
        })
        .collect();
    let table = dimension_table(&entries);
    println!("{}", render_dimension_table_markdown(&table));
    assert!(table.pass);
    if !large {
        println!("(run with `large` for the 133- and 248-dimensional rows)");
    }
}
