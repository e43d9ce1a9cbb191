//! Cayley tables of finite magmas and the predicates, relabelings and
//! canonical forms the rest of the crate is built on.
//!
//! Elements are addressed by 0-based indices in the Rust API. Every textual
//! surface (files, `Display`, reports) uses the 1-based labels `λ1..λn`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Perm;

/// Largest order a table may have; element subsets are stored as `u32` masks.
pub const MAX_TABLE_ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table order must be between 1 and {MAX_TABLE_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("expected {expected} cells, got {actual}")]
    CellCount { expected: usize, actual: usize },
    #[error("entry {value} at row {row}, column {col} is outside 1..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("permutation of order {perm} applied to a table of order {table}")]
    SizeMismatch { table: usize, perm: usize },
    #[error("table still has unfilled cell at row {row}, column {col}")]
    Unfilled { row: usize, col: usize },
}

/// Equivalence used when counting or canonicalizing tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// Relabeling by a permutation.
    Iso,
    /// Relabeling, optionally combined with reversing the product order.
    IsoAndAnti,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Iso => "iso",
            Convention::IsoAndAnti => "iso-anti",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iso" => Ok(Convention::Iso),
            "iso-anti" | "iso_and_anti" | "iso-and-anti" => Ok(Convention::IsoAndAnti),
            other => Err(format!("unknown convention `{other}` (expected iso or iso-anti)")),
        }
    }
}

/// Full multiplication table: `product(a, b)` is the index of `λa λb`.
///
/// Ordering and equality compare the order first and then the row-major
/// flattening, which is the order canonical forms minimize.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u8>,
}

impl CayleyTable {
    /// Builds a table from 0-based row-major cells.
    pub fn new(order: usize, cells: Vec<u8>) -> Result<Self, TableError> {
        if order == 0 || order > MAX_TABLE_ORDER {
            return Err(TableError::BadOrder(order));
        }
        if cells.len() != order * order {
            return Err(TableError::CellCount {
                expected: order * order,
                actual: cells.len(),
            });
        }
        for (i, &v) in cells.iter().enumerate() {
            if v as usize >= order {
                return Err(TableError::EntryOutOfRange {
                    row: i / order + 1,
                    col: i % order + 1,
                    value: v as usize + 1,
                    order,
                });
            }
        }
        Ok(CayleyTable { order, cells })
    }

    /// Builds a table from rows of 1-based labels, as printed in the literature.
    pub fn from_label_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(TableError::CellCount {
                    expected: order * order,
                    actual: order * r + row.len(),
                });
            }
            for (c, &label) in row.iter().enumerate() {
                if label == 0 || label > order {
                    return Err(TableError::EntryOutOfRange {
                        row: r + 1,
                        col: c + 1,
                        value: label,
                        order,
                    });
                }
                cells.push((label - 1) as u8);
            }
        }
        CayleyTable::new(order, cells)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self, TableError> {
        let mut cells = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = f(a, b);
                if v >= order {
                    return Err(TableError::EntryOutOfRange {
                        row: a + 1,
                        col: b + 1,
                        value: v + 1,
                        order,
                    });
                }
                cells.push(v as u8);
            }
        }
        CayleyTable::new(order, cells)
    }

    /// The trivial semigroup of order one.
    pub fn trivial() -> Self {
        CayleyTable {
            order: 1,
            cells: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b] as usize
    }

    /// Row-major 0-based cells.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn row(&self, a: usize) -> &[u8] {
        &self.cells[a * self.order..(a + 1) * self.order]
    }

    /// Bitmask of the element set `{0..n}`.
    pub fn full_mask(&self) -> u32 {
        if self.order == 32 {
            u32::MAX
        } else {
            (1u32 << self.order) - 1
        }
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.product(a, b);
                (0..n).all(|c| self.product(ab, c) == self.product(a, self.product(b, c)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.product(a, b) == self.product(b, a)))
    }

    /// The absorbing element, if any. At most one exists: `z = z z' = z'`.
    pub fn find_zero(&self) -> Option<usize> {
        (0..self.order).find(|&z| self.is_zero(z))
    }

    pub fn is_zero(&self, z: usize) -> bool {
        z < self.order && (0..self.order).all(|a| self.product(z, a) == z && self.product(a, z) == z)
    }

    /// Relabels by `p`: the result `t'` satisfies `t'(p a, p b) = p(t(a, b))`.
    pub fn apply_perm(&self, p: &Perm) -> Result<CayleyTable, TableError> {
        if p.order() != self.order {
            return Err(TableError::SizeMismatch {
                table: self.order,
                perm: p.order(),
            });
        }
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[p.apply(a) * n + p.apply(b)] = p.apply(self.product(a, b)) as u8;
            }
        }
        Ok(CayleyTable { order: n, cells })
    }

    /// The opposite magma, `a ∘ b = b a`.
    pub fn transpose(&self) -> CayleyTable {
        let n = self.order;
        CayleyTable::from_fn(n, |a, b| self.product(b, a)).expect("transpose keeps entries in range")
    }

    /// Searches for `p` with `other.apply_perm(p) == self`.
    ///
    /// The witness direction is the one the isomorphism tables in the
    /// literature use: mapping the listed table onto the constructed one.
    /// Among several witnesses the lexicographically smallest is returned.
    pub fn isomorphism_from(&self, other: &CayleyTable) -> Option<Perm> {
        are_isomorphic(self, other)
    }

    pub fn canonical_form(&self, convention: Convention) -> CayleyTable {
        Canonicalizer::new(self.order).canonical_form(self, convention)
    }

    pub fn is_canonical(&self, convention: Convention) -> bool {
        Canonicalizer::new(self.order).is_canonical(self, convention)
    }
}

impl fmt::Display for CayleyTable {
    /// The bit-exact table file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for a in 0..self.order {
            let row: Vec<String> = self.row(a).iter().map(|&v| (v + 1).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Finds `p` with `b.apply_perm(p) == a`, or `None` when the tables are not
/// isomorphic.
///
/// Backtracks over the images of `b`'s elements in order. Once `k` is
/// placed, every cell among placed elements whose product is also placed
/// is checked, which covers cells whose product is `k` itself. A cell whose
/// product is not yet placed must land on an image still unused.
pub fn are_isomorphic(a: &CayleyTable, b: &CayleyTable) -> Option<Perm> {
    if a.order != b.order {
        return None;
    }
    let n = a.order;
    let mut images = vec![u8::MAX; n];
    let mut used = vec![false; n];
    if place(a, b, 0, &mut images, &mut used) {
        Some(Perm::new(images.iter().map(|&x| x as usize).collect()).expect("search builds a bijection"))
    } else {
        None
    }
}

fn place(a: &CayleyTable, b: &CayleyTable, k: usize, images: &mut [u8], used: &mut [bool]) -> bool {
    let n = a.order;
    if k == n {
        return true;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        images[k] = y as u8;
        used[y] = true;
        if consistent_prefix(a, b, k, images, used) && place(a, b, k + 1, images, used) {
            return true;
        }
        used[y] = false;
    }
    images[k] = u8::MAX;
    false
}

fn consistent_prefix(a: &CayleyTable, b: &CayleyTable, k: usize, images: &[u8], used: &[bool]) -> bool {
    let check = |x: usize, z: usize| {
        let w = b.product(x, z);
        let target = a.product(images[x] as usize, images[z] as usize);
        if w <= k {
            target == images[w] as usize
        } else {
            !used[target]
        }
    };
    (0..=k).all(|x| (0..=k).all(|z| (x != k && z != k && b.product(x, z) != k) || check(x, z)))
}

/// Precomputed permutations of one order, shared by canonical-form and
/// minimal-image computations. Cheap to share across threads.
#[derive(Debug, Clone)]
pub struct Canonicalizer {
    order: usize,
    // (p, p⁻¹) pairs as raw images.
    perms: Vec<(Vec<u8>, Vec<u8>)>,
}

impl Canonicalizer {
    pub fn new(order: usize) -> Self {
        let perms = Perm::all(order)
            .map(|p| {
                let inv = p.inverse();
                (
                    p.images().map(|x| x as u8).collect(),
                    inv.images().map(|x| x as u8).collect(),
                )
            })
            .collect();
        Canonicalizer { order, perms }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Lexicographically minimal row-major flattening over the orbit of `t`
    /// (and of its transpose under [`Convention::IsoAndAnti`]).
    pub fn canonical_form(&self, t: &CayleyTable, convention: Convention) -> CayleyTable {
        assert_eq!(t.order, self.order, "canonicalizer order mismatch");
        let n = self.order;
        let mut best = t.cells.clone();
        let mut scratch = vec![0u8; n * n];
        for &transposed in transposes(convention) {
            for (p, q) in &self.perms {
                for r in 0..n {
                    for c in 0..n {
                        let (x, y) = (q[r] as usize, q[c] as usize);
                        let v = if transposed { t.product(y, x) } else { t.product(x, y) };
                        scratch[r * n + c] = p[v];
                    }
                }
                if scratch < best {
                    best.copy_from_slice(&scratch);
                }
            }
        }
        CayleyTable { order: n, cells: best }
    }

    /// Minimal-image test: true iff `t` equals its own canonical form.
    pub fn is_canonical(&self, t: &CayleyTable, convention: Convention) -> bool {
        self.is_canonical_cells(&t.cells, convention)
    }

    pub(crate) fn is_canonical_cells(&self, cells: &[u8], convention: Convention) -> bool {
        let n = self.order;
        for &transposed in transposes(convention) {
            'perm: for (p, q) in &self.perms {
                for r in 0..n {
                    let qr = q[r] as usize;
                    for c in 0..n {
                        let qc = q[c] as usize;
                        let v = if transposed {
                            cells[qc * n + qr]
                        } else {
                            cells[qr * n + qc]
                        };
                        let image = p[v as usize];
                        let own = cells[r * n + c];
                        if image < own {
                            return false;
                        }
                        if image > own {
                            continue 'perm;
                        }
                    }
                }
            }
        }
        true
    }
}

fn transposes(convention: Convention) -> &'static [bool] {
    match convention {
        Convention::Iso => &[false],
        Convention::IsoAndAnti => &[false, true],
    }
}

/// A table whose cells may still be unfilled.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialCayleyTable {
    order: usize,
    cells: Vec<Option<u8>>,
}

impl PartialCayleyTable {
    pub fn empty(order: usize) -> Result<Self, TableError> {
        if order == 0 || order > MAX_TABLE_ORDER {
            return Err(TableError::BadOrder(order));
        }
        Ok(PartialCayleyTable {
            order,
            cells: vec![None; order * order],
        })
    }

    /// Builds from rows of 1-based labels where `0` marks an unfilled cell.
    pub fn from_label_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let mut t = PartialCayleyTable::empty(rows.len())?;
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != t.order {
                return Err(TableError::CellCount {
                    expected: t.order * t.order,
                    actual: t.order * r + row.len(),
                });
            }
            for (c, &label) in row.iter().enumerate() {
                if label != 0 {
                    t.set(r, c, label - 1)?;
                }
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.cells[a * self.order + b].map(usize::from)
    }

    pub fn set(&mut self, a: usize, b: usize, value: usize) -> Result<(), TableError> {
        if value >= self.order {
            return Err(TableError::EntryOutOfRange {
                row: a + 1,
                col: b + 1,
                value: value + 1,
                order: self.order,
            });
        }
        self.cells[a * self.order + b] = Some(value as u8);
        Ok(())
    }

    pub fn clear(&mut self, a: usize, b: usize) {
        self.cells[a * self.order + b] = None;
    }

    pub fn unfilled(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(move |(i, _)| (i / n, i % n))
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn to_table(&self) -> Result<CayleyTable, TableError> {
        if let Some((row, col)) = self.unfilled().next() {
            return Err(TableError::Unfilled {
                row: row + 1,
                col: col + 1,
            });
        }
        CayleyTable::new(self.order, self.cells.iter().map(|v| v.unwrap()).collect())
    }
}

impl From<&CayleyTable> for PartialCayleyTable {
    fn from(t: &CayleyTable) -> Self {
        PartialCayleyTable {
            order: t.order,
            cells: t.cells.iter().map(|&v| Some(v)).collect(),
        }
    }
}

impl fmt::Display for PartialCayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|b| match self.get(a, b) {
                    Some(v) => (v + 1).to_string(),
                    None => "?".to_string(),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
