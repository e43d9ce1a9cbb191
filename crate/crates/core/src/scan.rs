//! Exhaustive sweep over abelian semigroups, their resonant decompositions
//! and both 2-dimensional starting algebras, classifying every
//! 3-dimensional outcome.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::cayley::{CayleyTable, Convention};
use crate::classify::{classify3, BianchiTag, BianchiType};
use crate::enumerate::{enumerate_semigroups, CensusError, CensusRequest, DEFAULT_ORDER_CAP};
use crate::expand::{resonant_part, s_expand, zero_reduce, ExpandError, LabeledAlgebra};
use crate::liealg::{abelian_plane, solvable_plane, Grading, LieAlgebra};
use crate::resonance::{find_resonances, ResonantDecomposition};

/// Types reachable from the 2-dimensional starts.
pub const REACHABLE: [BianchiTag; 4] = [BianchiTag::I, BianchiTag::II, BianchiTag::III, BianchiTag::V];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StartAlgebra {
    /// `[X1, X2] = 0`
    Abelian,
    /// `[X1, X2] = X1`
    Solvable,
}

impl StartAlgebra {
    pub fn algebra(self) -> LieAlgebra {
        match self {
            StartAlgebra::Abelian => abelian_plane(),
            StartAlgebra::Solvable => solvable_plane(),
        }
    }
}

impl fmt::Display for StartAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StartAlgebra::Abelian => "abelian",
            StartAlgebra::Solvable => "solvable",
        })
    }
}

impl FromStr for StartAlgebra {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abelian" => Ok(StartAlgebra::Abelian),
            "solvable" | "nonabelian" => Ok(StartAlgebra::Solvable),
            _ => Err(format!("unknown start algebra `{s}` (expected abelian or solvable)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartSet {
    Abelian,
    Nonabelian,
    #[default]
    Both,
}

impl StartSet {
    pub fn starts(self) -> &'static [StartAlgebra] {
        match self {
            StartSet::Abelian => &[StartAlgebra::Abelian],
            StartSet::Nonabelian => &[StartAlgebra::Solvable],
            StartSet::Both => &[StartAlgebra::Abelian, StartAlgebra::Solvable],
        }
    }
}

impl FromStr for StartSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abelian" => Ok(StartSet::Abelian),
            "nonabelian" | "solvable" => Ok(StartSet::Nonabelian),
            "both" => Ok(StartSet::Both),
            _ => Err(format!(
                "unknown start set `{s}` (expected abelian, nonabelian or both)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub max_order: usize,
    pub start: StartSet,
    pub workers: Option<usize>,
}

impl ScanOptions {
    pub fn new(max_order: usize) -> Self {
        ScanOptions {
            max_order,
            start: StartSet::Both,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("scan order {0} is above the limit of {DEFAULT_ORDER_CAP}")]
    OrderTooLarge(usize),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// One pipeline run. Field order gives the report order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ScanRecord {
    pub semigroup: CayleyTable,
    pub decomposition: ResonantDecomposition,
    pub start: StartAlgebra,
    pub reduce: bool,
    pub dim: usize,
    pub bianchi: Option<BianchiType>,
    /// Every basis bracket is zero or one basis element up to sign.
    pub monomial: bool,
    /// Every nonzero structure constant is `±1`.
    pub unit_constants: bool,
    /// For 3-dimensional results: some pair of basis elements commutes.
    pub vanishing_pair: Option<bool>,
}

impl ScanRecord {
    /// Re-runs the pipeline from scratch on the recorded inputs.
    pub fn replay(&self) -> Result<Option<BianchiType>, ExpandError> {
        let out = crate::expand::pipeline(
            &self.start.algebra(),
            &Grading::planar(),
            &self.semigroup,
            &self.decomposition,
            self.reduce,
        )?;
        Ok(classify_if_three(out.algebra()))
    }

    pub fn is_forbidden(&self) -> bool {
        self.bianchi.as_ref().is_some_and(|b| !REACHABLE.contains(&b.tag()))
    }

    fn invariants_hold(&self) -> bool {
        self.monomial && self.unit_constants && self.vanishing_pair != Some(false)
    }
}

impl fmt::Display for ScanRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S={} {} start={} reduce={} dim={}",
            compact_table(&self.semigroup),
            self.decomposition,
            self.start,
            self.reduce,
            self.dim
        )?;
        if let Some(b) = &self.bianchi {
            write!(f, " type={b}")?;
        }
        Ok(())
    }
}

/// Rows of 1-based labels separated by `|`, e.g. `1 1|1 2`.
pub fn compact_table(t: &CayleyTable) -> String {
    (0..t.order())
        .map(|a| {
            t.row(a)
                .iter()
                .map(|&v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("|")
}

fn classify_if_three(g: &LieAlgebra) -> Option<BianchiType> {
    if g.dim() == 3 {
        Some(classify3(g).expect("pipeline output is a valid Lie algebra"))
    } else {
        None
    }
}

fn has_vanishing_pair(g: &LieAlgebra) -> bool {
    let zero = |i, j| g.bracket(i, j).iter().all(num_traits::Zero::is_zero);
    zero(0, 1) || zero(0, 2) || zero(1, 2)
}

fn record(
    semigroup: &CayleyTable,
    decomposition: ResonantDecomposition,
    start: StartAlgebra,
    reduce: bool,
    out: &LabeledAlgebra,
) -> ScanRecord {
    let g = out.algebra();
    let bianchi = classify_if_three(g);
    ScanRecord {
        semigroup: semigroup.clone(),
        decomposition,
        start,
        reduce,
        dim: g.dim(),
        monomial: g.is_monomial_unit(),
        unit_constants: g.has_unit_constants(),
        vanishing_pair: bianchi.as_ref().map(|_| has_vanishing_pair(g)),
        bianchi,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub max_order: usize,
    pub records: Vec<ScanRecord>,
    /// Expansions (before restriction) that broke a structural invariant.
    pub expansion_failures: Vec<String>,
    /// Pipeline errors; none are expected.
    pub errors: Vec<String>,
}

impl ScanResult {
    pub fn forbidden(&self) -> Vec<&ScanRecord> {
        self.records.iter().filter(|r| r.is_forbidden()).collect()
    }

    pub fn invariant_failures(&self) -> Vec<&ScanRecord> {
        self.records.iter().filter(|r| !r.invariants_hold()).collect()
    }

    /// Bianchi tags seen among 3-dimensional results, with counts.
    pub fn type_counts(&self) -> BTreeMap<BianchiTag, usize> {
        let mut m = BTreeMap::new();
        for b in self.records.iter().filter_map(|r| r.bianchi.as_ref()) {
            *m.entry(b.tag()).or_insert(0) += 1;
        }
        m
    }

    pub fn three_dimensional(&self) -> usize {
        self.records.iter().filter(|r| r.dim == 3).count()
    }

    /// `Ok` when no forbidden type, broken invariant or error was seen;
    /// otherwise the offending lines.
    pub fn check(&self) -> Result<(), Vec<String>> {
        let mut bad: Vec<String> = self.forbidden().iter().map(|r| format!("forbidden: {r}")).collect();
        bad.extend(self.invariant_failures().iter().map(|r| format!("invariant: {r}")));
        bad.extend(self.expansion_failures.iter().map(|e| format!("expansion: {e}")));
        bad.extend(self.errors.iter().map(|e| format!("error: {e}")));
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    /// Stable plain-text summary.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "max_order={} runs={} three_dimensional={} forbidden={} invariant_failures={} errors={}\n",
            self.max_order,
            self.records.len(),
            self.three_dimensional(),
            self.forbidden().len(),
            self.invariant_failures().len() + self.expansion_failures.len(),
            self.errors.len()
        );
        let reached: Vec<String> = self.type_counts().iter().map(|(t, k)| format!("{t}:{k}")).collect();
        out.push_str(&format!("reached {}\n", reached.join(" ")));
        out
    }
}

/// Runs every (semigroup, decomposition, start, reduce) combination.
pub fn scan(opts: &ScanOptions) -> Result<ScanResult, ScanError> {
    if opts.max_order > DEFAULT_ORDER_CAP {
        return Err(ScanError::OrderTooLarge(opts.max_order));
    }
    let mut tables = Vec::new();
    for order in 1..=opts.max_order {
        let req = CensusRequest::new(order).abelian(true).convention(Convention::Iso);
        tables.extend(enumerate_semigroups(&req)?);
    }
    let starts = opts.start.starts();
    let work = || tables.par_iter().map(|t| scan_table(t, starts)).collect::<Vec<_>>();
    let parts = match opts.workers {
        None => work(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| ScanError::Pool(e.to_string()))?
            .install(work),
    };
    let mut result = ScanResult {
        max_order: opts.max_order,
        records: Vec::new(),
        expansion_failures: Vec::new(),
        errors: Vec::new(),
    };
    for (records, expansion_failures, errors) in parts {
        result.records.extend(records);
        result.expansion_failures.extend(expansion_failures);
        result.errors.extend(errors);
    }
    result.records.sort();
    result.expansion_failures.sort();
    result.errors.sort();
    Ok(result)
}

type TableScan = (Vec<ScanRecord>, Vec<String>, Vec<String>);

fn scan_table(t: &CayleyTable, starts: &[StartAlgebra]) -> TableScan {
    let grading = Grading::planar();
    let decompositions = find_resonances(t);
    let zero = t.find_zero();
    let (mut records, mut expansion_failures, mut errors) = (Vec::new(), Vec::new(), Vec::new());
    let name = compact_table(t);
    for &start in starts {
        let full = match s_expand(&start.algebra(), t) {
            Ok(full) => full,
            Err(e) => {
                errors.push(format!("S={name} start={start}: {e}"));
                continue;
            }
        };
        if !(full.algebra().is_monomial_unit() && full.algebra().has_unit_constants()) {
            expansion_failures.push(format!("S={name} start={start}"));
        }
        for d in &decompositions {
            let sub = match resonant_part(&full, &grading, d) {
                Ok(sub) => sub,
                Err(e) => {
                    errors.push(format!("S={name} {d} start={start}: {e}"));
                    continue;
                }
            };
            records.push(record(t, *d, start, false, &sub));
            if let Some(z) = zero {
                match zero_reduce(&sub, z) {
                    Ok(red) => records.push(record(t, *d, start, true, &red)),
                    Err(e) => errors.push(format!("S={name} {d} start={start} reduce: {e}")),
                }
            }
        }
    }
    (records, expansion_failures, errors)
}
