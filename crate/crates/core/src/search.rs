//! Backtracking completion of partial Cayley tables under associativity.
//!
//! Cells are assigned in row-major order. After each assignment every triple
//! `(x y) z = x (y z)` whose evaluation touches the new cell and is fully
//! determined is checked, so by induction every leaf is associative.

use crate::cayley::PartialCayleyTable;

pub(crate) const UNSET: u8 = u8::MAX;

/// Value order tried at each branch. The output of every search is sorted
/// afterwards, so this only changes the traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchOrder {
    #[default]
    Ascending,
    Descending,
}

#[derive(Debug, Clone)]
pub(crate) struct CompletionSearch {
    n: usize,
    cells: Vec<u8>,
    /// Cells left to assign, in order. With `symmetric` only `a <= b` appear.
    free: Vec<(usize, usize)>,
    /// Per-cell bitmask of admissible values.
    allowed: Vec<u32>,
    symmetric: bool,
    branch: BranchOrder,
}

impl CompletionSearch {
    pub(crate) fn new(template: &PartialCayleyTable, symmetric: bool) -> Self {
        let n = template.order();
        let mut cells = vec![UNSET; n * n];
        for a in 0..n {
            for b in 0..n {
                if let Some(v) = template.get(a, b) {
                    cells[a * n + b] = v as u8;
                }
            }
        }
        if symmetric {
            for a in 0..n {
                for b in 0..n {
                    if cells[a * n + b] == UNSET && cells[b * n + a] != UNSET {
                        cells[a * n + b] = cells[b * n + a];
                    }
                }
            }
        }
        let free = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| (!symmetric || a <= b) && cells[a * n + b] == UNSET)
            .collect();
        let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        CompletionSearch {
            n,
            cells,
            free,
            allowed: vec![all; n * n],
            symmetric,
            branch: BranchOrder::Ascending,
        }
    }

    pub(crate) fn with_branch_order(mut self, branch: BranchOrder) -> Self {
        self.branch = branch;
        self
    }

    /// Intersects the admissible values of cell `(a, b)` with `mask`.
    pub(crate) fn restrict(&mut self, a: usize, b: usize, mask: u32) {
        self.allowed[a * self.n + b] &= mask;
        if self.symmetric {
            self.allowed[b * self.n + a] &= mask;
        }
    }

    pub(crate) fn order(&self) -> usize {
        self.n
    }

    /// Whether the prefilled cells respect their allowed masks and
    /// associativity on every determined triple.
    pub(crate) fn prefilled_consistent(&self) -> bool {
        let n = self.n;
        for i in 0..n * n {
            let v = self.cells[i];
            if v != UNSET && self.allowed[i] & (1 << v) == 0 {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.cells[a * n + b] == UNSET {
                    continue;
                }
                if !self.consistent_at(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Visits every completion. The visitor sees row-major 0-based cells.
    pub(crate) fn for_each(&mut self, visit: &mut dyn FnMut(&[u8])) {
        if !self.prefilled_consistent() {
            return;
        }
        self.descend(0, visit);
    }

    /// Splits the search tree by the first `depth` free cells. The returned
    /// subsearches are consistent, disjoint and jointly cover the tree.
    pub(crate) fn split(&self, depth: usize) -> Vec<CompletionSearch> {
        let mut out = Vec::new();
        if !self.prefilled_consistent() {
            return out;
        }
        let depth = depth.min(self.free.len());
        let mut work = self.clone();
        work.collect_prefixes(0, depth, &mut out);
        out
    }

    fn collect_prefixes(&mut self, idx: usize, depth: usize, out: &mut Vec<CompletionSearch>) {
        if idx == depth {
            let mut sub = self.clone();
            sub.free.drain(..depth);
            out.push(sub);
            return;
        }
        let (a, b) = self.free[idx];
        for v in self.values(a, b) {
            if self.assign(a, b, v) {
                self.collect_prefixes(idx + 1, depth, out);
            }
            self.unassign(a, b);
        }
    }

    fn descend(&mut self, idx: usize, visit: &mut dyn FnMut(&[u8])) {
        if idx == self.free.len() {
            debug_assert!(self.cells.iter().all(|&v| v != UNSET));
            visit(&self.cells);
            return;
        }
        let (a, b) = self.free[idx];
        for v in self.values(a, b) {
            if self.assign(a, b, v) {
                self.descend(idx + 1, visit);
            }
            self.unassign(a, b);
        }
    }

    fn values(&self, a: usize, b: usize) -> Vec<u8> {
        let mask = self.allowed[a * self.n + b];
        let mut vals: Vec<u8> = (0..self.n as u8).filter(|&v| mask & (1 << v) != 0).collect();
        if self.branch == BranchOrder::Descending {
            vals.reverse();
        }
        vals
    }

    /// Sets the cell (and its mirror) and reports whether all determined
    /// triples through it still associate.
    fn assign(&mut self, a: usize, b: usize, v: u8) -> bool {
        let n = self.n;
        self.cells[a * n + b] = v;
        if self.symmetric && a != b {
            self.cells[b * n + a] = v;
            self.consistent_at(a, b) && self.consistent_at(b, a)
        } else {
            self.consistent_at(a, b)
        }
    }

    fn unassign(&mut self, a: usize, b: usize) {
        let n = self.n;
        self.cells[a * n + b] = UNSET;
        if self.symmetric {
            self.cells[b * n + a] = UNSET;
        }
    }

    /// Checks the triples in which cell `(a, b)` takes part, in each of its
    /// four possible roles.
    fn consistent_at(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let t = &self.cells;
        let get = |x: usize, y: usize| t[x * n + y];
        let v = get(a, b);
        debug_assert_ne!(v, UNSET);
        let vu = v as usize;
        for z in 0..n {
            // (a b) z = a (b z)
            let left = get(vu, z);
            let bz = get(b, z);
            if left != UNSET && bz != UNSET {
                let right = get(a, bz as usize);
                if right != UNSET && right != left {
                    return false;
                }
            }
            // z (a b) = (z a) b
            let right = get(z, vu);
            let za = get(z, a);
            if right != UNSET && za != UNSET {
                let left = get(za as usize, b);
                if left != UNSET && left != right {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = get(x, y);
                // (x y) b = x (y b) with x y = a
                if xy as usize == a {
                    let yb = get(y, b);
                    if yb != UNSET {
                        let right = get(x, yb as usize);
                        if right != UNSET && right != v {
                            return false;
                        }
                    }
                }
                // a (x y) = (a x) y with x y = b
                if xy as usize == b {
                    let ax = get(a, x);
                    if ax != UNSET {
                        let left = get(ax as usize, y);
                        if left != UNSET && left != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
