#![allow(dead_code)]

use std::path::PathBuf;

use bianchi_core::{parse_problem, parse_table, CayleyTable, Perm, TemplateProblem};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> CayleyTable {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_table(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn problem(name: &str) -> TemplateProblem {
    parse_problem(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn table(rows: &[[usize; 4]]) -> CayleyTable {
    CayleyTable::from_label_rows(rows).unwrap()
}

pub fn perm(labels: &[usize]) -> Perm {
    Perm::from_labels(labels).unwrap()
}

/// Decodes `code` as base-`n` digits, one per cell.
pub fn cells_from_code(n: usize, cells: usize, mut code: usize) -> Vec<u8> {
    (0..cells)
        .map(|_| {
            let d = (code % n) as u8;
            code /= n;
            d
        })
        .collect()
}

/// Orbit minimum by applying every permutation, independent of the
/// library's canonicalizer.
pub fn naive_canonical(t: &CayleyTable, with_transpose: bool) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut candidates = vec![t.clone()];
    if with_transpose {
        candidates.push(t.transpose());
    }
    for c in &candidates {
        for p in Perm::all(t.order()) {
            let img = c.apply_perm(&p).unwrap().cells().to_vec();
            if best.iter().all(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap()
}
