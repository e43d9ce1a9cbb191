//! Orderly generation of semigroups up to isomorphism.
//!
//! The search enumerates labeled associative tables cell by cell and emits a
//! completed table only when it passes the minimal-image test, so each
//! equivalence class yields exactly its lexicographically least member and no
//! seen-set is needed. The tree is split on its first cells and the parts are
//! explored in parallel; results are sorted, so output never depends on the
//! worker count or branch order.

use rayon::prelude::*;
use thiserror::Error;

use crate::cayley::{Canonicalizer, CayleyTable, Convention, PartialCayleyTable};
use crate::search::{BranchOrder, CompletionSearch};

/// Largest order accepted without an explicit override.
pub const DEFAULT_ORDER_CAP: usize = 5;

/// Largest order accepted at all.
pub const HARD_ORDER_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error(
        "order {order} exceeds the cap of {cap}; class counts grow super-exponentially \
         (1160 at order 5, 15973 at order 6, 836021 at order 7)"
    )]
    OrderAboveCap { order: usize, cap: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("could not build a worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRequest {
    pub order: usize,
    pub abelian_only: bool,
    pub convention: Convention,
    /// Orders above this are refused. Raising it past [`HARD_ORDER_LIMIT`]
    /// has no effect.
    pub order_cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub branch_order: BranchOrder,
}

impl CensusRequest {
    pub fn new(order: usize) -> Self {
        CensusRequest {
            order,
            abelian_only: false,
            convention: Convention::Iso,
            order_cap: DEFAULT_ORDER_CAP,
            workers: None,
            branch_order: BranchOrder::Ascending,
        }
    }

    pub fn abelian(mut self, abelian_only: bool) -> Self {
        self.abelian_only = abelian_only;
        self
    }

    pub fn convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// Permits orders up to `cap` (at most [`HARD_ORDER_LIMIT`]).
    pub fn allow_up_to(mut self, cap: usize) -> Self {
        self.order_cap = cap;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn branch_order(mut self, branch: BranchOrder) -> Self {
        self.branch_order = branch;
        self
    }

    fn check(&self) -> Result<(), CensusError> {
        if self.order == 0 {
            return Err(CensusError::ZeroOrder);
        }
        let cap = self.order_cap.min(HARD_ORDER_LIMIT);
        if self.order > cap {
            return Err(CensusError::OrderAboveCap { order: self.order, cap });
        }
        Ok(())
    }
}

/// One canonical representative per class, sorted by canonical form.
pub fn enumerate_semigroups(req: &CensusRequest) -> Result<Vec<CayleyTable>, CensusError> {
    req.check()?;
    let canon = Canonicalizer::new(req.order);
    let parts = run_parts(req, |mut search| {
        let mut found = Vec::new();
        search.for_each(&mut |cells| {
            if canon.is_canonical_cells(cells, req.convention) {
                found.push(cells.to_vec());
            }
        });
        found
    })?;
    let mut tables: Vec<CayleyTable> = parts
        .into_iter()
        .flatten()
        .map(|cells| CayleyTable::new(req.order, cells).expect("search emits in-range cells"))
        .collect();
    tables.sort();
    Ok(tables)
}

/// Same count as `enumerate_semigroups(req).len()`, without keeping tables.
pub fn count_semigroups(req: &CensusRequest) -> Result<u64, CensusError> {
    req.check()?;
    let canon = Canonicalizer::new(req.order);
    let parts = run_parts(req, |mut search| {
        let mut k = 0u64;
        search.for_each(&mut |cells| {
            if canon.is_canonical_cells(cells, req.convention) {
                k += 1;
            }
        });
        k
    })?;
    Ok(parts.into_iter().sum())
}

fn run_parts<T, F>(req: &CensusRequest, work: F) -> Result<Vec<T>, CensusError>
where
    T: Send,
    F: Fn(CompletionSearch) -> T + Sync,
{
    let empty = PartialCayleyTable::empty(req.order).expect("order checked");
    let root = CompletionSearch::new(&empty, req.abelian_only).with_branch_order(req.branch_order);
    // Three cells give up to n^3 independent subtrees, plenty for a pool.
    let parts = root.split(3);
    let run = || parts.into_par_iter().map(&work).collect::<Vec<T>>();
    match req.workers {
        None => Ok(run()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| CensusError::Pool(e.to_string()))?;
            Ok(pool.install(run))
        }
    }
}
