//! Completion of partial Cayley tables under associativity, commutativity, a
//! prescribed zero and a prescribed resonant decomposition.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cayley::{CayleyTable, Convention, PartialCayleyTable};
use crate::resonance::{is_resonant, parse_label_list, ResonanceError, ResonantDecomposition};
use crate::search::CompletionSearch;
use crate::text::{parse_partial_table, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("cell ({row}, {col}): {reason}")]
    Cell { row: usize, col: usize, reason: String },
    #[error("zero λ{label} is outside a table of order {order}")]
    ZeroOutOfRange { label: usize, order: usize },
    #[error("decomposition {0} does not cover the element set with two nonempty blocks")]
    NotCovering(String),
    #[error(transparent)]
    Decomposition(#[from] ResonanceError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
}

/// A template with its side conditions. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateProblem {
    pub template: PartialCayleyTable,
    pub required_zero: Option<usize>,
    pub required_decomposition: Option<ResonantDecomposition>,
    pub require_commutative: bool,
}

impl TemplateProblem {
    pub fn new(template: PartialCayleyTable) -> Self {
        TemplateProblem {
            template,
            required_zero: None,
            required_decomposition: None,
            require_commutative: false,
        }
    }

    pub fn zero(mut self, z: usize) -> Self {
        self.required_zero = Some(z);
        self
    }

    pub fn decomposition(mut self, d: ResonantDecomposition) -> Self {
        self.required_decomposition = Some(d);
        self
    }

    pub fn commutative(mut self, yes: bool) -> Self {
        self.require_commutative = yes;
        self
    }

    pub fn order(&self) -> usize {
        self.template.order()
    }

    /// Checks the prefilled cells against the side conditions and builds
    /// the constrained search.
    fn search(&self) -> Result<CompletionSearch, SolverError> {
        let n = self.order();
        let t = &self.template;
        let cell_err = |a: usize, b: usize, reason: String| SolverError::Cell {
            row: a + 1,
            col: b + 1,
            reason,
        };
        if self.require_commutative {
            for a in 0..n {
                for b in a + 1..n {
                    if let (Some(x), Some(y)) = (t.get(a, b), t.get(b, a)) {
                        if x != y {
                            return Err(cell_err(
                                a,
                                b,
                                format!("λ{} but the mirror cell holds λ{}", x + 1, y + 1),
                            ));
                        }
                    }
                }
            }
        }
        let mut search = CompletionSearch::new(t, self.require_commutative);
        if let Some(z) = self.required_zero {
            if z >= n {
                return Err(SolverError::ZeroOutOfRange { label: z + 1, order: n });
            }
            for i in 0..n {
                for (a, b) in [(z, i), (i, z)] {
                    if let Some(v) = t.get(a, b) {
                        if v != z {
                            return Err(cell_err(a, b, format!("λ{} contradicts zero λ{}", v + 1, z + 1)));
                        }
                    }
                    search.restrict(a, b, 1 << z);
                }
            }
        }
        if let Some(d) = &self.required_decomposition {
            let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
            let stray = (d.s0() | d.s1()) & !full;
            if stray != 0 {
                return Err(ResonanceError::InvalidLabel {
                    label: stray.trailing_zeros() as usize + 1,
                    order: n,
                }
                .into());
            }
            if d.s0() == 0 || d.s1() == 0 || d.s0() | d.s1() != full {
                return Err(SolverError::NotCovering(d.to_string()));
            }
            for a in 0..n {
                for b in 0..n {
                    let mask = allowed_by(d, a, b, full);
                    if let Some(v) = t.get(a, b) {
                        if mask & (1 << v) == 0 {
                            return Err(cell_err(
                                a,
                                b,
                                format!("λ{} breaks the resonance condition of {d}", v + 1),
                            ));
                        }
                    }
                    search.restrict(a, b, mask);
                }
            }
        }
        Ok(search)
    }

    /// Number of fillings of the free cells, counting mirrored cells once
    /// when commutativity is required, before any condition is applied.
    pub fn candidate_count(&self) -> u128 {
        let n = self.order();
        let free = self
            .template
            .unfilled()
            .filter(|&(a, b)| !self.require_commutative || (a <= b && self.template.get(b, a).is_none()))
            .count();
        (n as u128).pow(free as u32)
    }

    fn accepts(&self, t: &CayleyTable) -> bool {
        t.is_associative()
            && (!self.require_commutative || t.is_commutative())
            && self.required_zero.iter().all(|&z| t.is_zero(z))
            && self
                .required_decomposition
                .iter()
                .all(|d| is_resonant(t, d).unwrap_or(false))
    }
}

/// Values a cell may take so that the decomposition stays resonant.
fn allowed_by(d: &ResonantDecomposition, a: usize, b: usize, full: u32) -> u32 {
    let mut mask = full;
    if d.in_s0(a) && d.in_s0(b) {
        mask &= d.s0();
    }
    if (d.in_s0(a) && d.in_s1(b)) || (d.in_s1(a) && d.in_s0(b)) {
        mask &= d.s1();
    }
    if d.in_s1(a) && d.in_s1(b) {
        mask &= d.s0();
    }
    mask
}

/// Every completion satisfying the conditions, sorted.
pub fn raw_completions(p: &TemplateProblem) -> Result<Vec<CayleyTable>, SolverError> {
    let mut search = p.search()?;
    let n = search.order();
    let mut out = Vec::new();
    search.for_each(&mut |cells| {
        let t = CayleyTable::new(n, cells.to_vec()).expect("search emits in-range cells");
        debug_assert!(p.accepts(&t));
        if p.accepts(&t) {
            out.push(t);
        }
    });
    out.sort();
    Ok(out)
}

pub fn completion_count_raw(p: &TemplateProblem) -> Result<u64, SolverError> {
    Ok(raw_completions(p)?.len() as u64)
}

/// One representative per isomorphism class (the smallest completion in
/// the class), ordered by canonical form.
pub fn complete(p: &TemplateProblem) -> Result<Vec<CayleyTable>, SolverError> {
    let mut classes: BTreeMap<CayleyTable, CayleyTable> = BTreeMap::new();
    for t in raw_completions(p)? {
        // Raw completions arrive sorted, so the first one seen is the least.
        classes.entry(t.canonical_form(Convention::Iso)).or_insert(t);
    }
    Ok(classes.into_values().collect())
}

/// Reads a problem file: a table with `?` cells and `# key=value` headers
/// for `zero`, `S0`, `S1` and `commutative`. Other comments are ignored.
pub fn parse_problem(input: &str) -> Result<TemplateProblem, SolverError> {
    let parsed = parse_partial_table(input)?;
    let mut problem = TemplateProblem::new(parsed.table);
    let (mut s0, mut s1) = (None, None);
    let comment_lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.trim_start()[1..].trim()));
    for (line, text) in comment_lines {
        let Some((key, value)) = text.split_once('=') else {
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        let header = |message: String| SolverError::Header { line, message };
        match key {
            "zero" => {
                let z: usize = value
                    .trim_start_matches('λ')
                    .parse()
                    .map_err(|_| header(format!("bad zero label `{value}`")))?;
                if z == 0 {
                    return Err(header("labels are 1-based".into()));
                }
                problem.required_zero = Some(z - 1);
            }
            "S0" => s0 = Some(parse_label_list(value)?),
            "S1" => s1 = Some(parse_label_list(value)?),
            "commutative" => {
                problem.require_commutative = value
                    .parse()
                    .map_err(|_| header(format!("expected true or false, found `{value}`")))?;
            }
            _ => {}
        }
    }
    match (s0, s1) {
        (Some(a), Some(b)) => problem.required_decomposition = Some(ResonantDecomposition::from_masks(a, b)),
        (None, None) => {}
        _ => {
            return Err(SolverError::Header {
                line: 1,
                message: "S0 and S1 must be given together".into(),
            })
        }
    }
    Ok(problem)
}
