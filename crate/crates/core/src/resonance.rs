//! Resonant decompositions `S = S0 ∪ S1` with
//! `S0·S0 ⊆ S0`, `S0·S1 ⊆ S1` and `S1·S1 ⊆ S0`.

use std::fmt;

use thiserror::Error;

use crate::cayley::CayleyTable;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResonanceError {
    #[error("label {label} is not an element of a semigroup of order {order}")]
    InvalidLabel { label: usize, order: usize },
    #[error("element set {0:#x} does not fit a 32-bit mask")]
    TooLarge(u64),
    #[error("bad label list `{0}`: expected comma-separated labels such as `2,3,4`")]
    BadList(String),
}

/// A pair of element subsets, stored as bitmasks (bit `i` is element `i`).
/// The blocks may overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResonantDecomposition {
    s0: u32,
    s1: u32,
}

impl ResonantDecomposition {
    pub fn from_masks(s0: u32, s1: u32) -> Self {
        ResonantDecomposition { s0, s1 }
    }

    /// From 1-based labels: `from_labels(&[2, 3, 4], &[1, 4])`.
    pub fn from_labels(s0: &[usize], s1: &[usize]) -> Result<Self, ResonanceError> {
        Ok(ResonantDecomposition {
            s0: labels_to_mask(s0)?,
            s1: labels_to_mask(s1)?,
        })
    }

    pub fn s0(&self) -> u32 {
        self.s0
    }

    pub fn s1(&self) -> u32 {
        self.s1
    }

    pub fn s0_labels(&self) -> Vec<usize> {
        mask_labels(self.s0)
    }

    pub fn s1_labels(&self) -> Vec<usize> {
        mask_labels(self.s1)
    }

    pub fn in_s0(&self, element: usize) -> bool {
        self.s0 & (1 << element) != 0
    }

    pub fn in_s1(&self, element: usize) -> bool {
        self.s1 & (1 << element) != 0
    }

    /// Image of the decomposition under a relabeling of the semigroup.
    pub fn relabel(&self, p: &Perm) -> ResonantDecomposition {
        let map = |m: u32| {
            (0..p.order())
                .filter(|&i| m & (1 << i) != 0)
                .fold(0u32, |acc, i| acc | (1 << p.apply(i)))
        };
        ResonantDecomposition {
            s0: map(self.s0),
            s1: map(self.s1),
        }
    }

    fn validate_for(&self, t: &CayleyTable) -> Result<(), ResonanceError> {
        let stray = (self.s0 | self.s1) & !t.full_mask();
        if stray != 0 {
            return Err(ResonanceError::InvalidLabel {
                label: stray.trailing_zeros() as usize + 1,
                order: t.order(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ResonantDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S0={} S1={}", render_set(self.s0), render_set(self.s1))
    }
}

/// `{2,3,4}` rendering of a mask, labels ascending.
pub fn render_set(mask: u32) -> String {
    let labels: Vec<String> = mask_labels(mask).iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", labels.join(","))
}

pub fn mask_labels(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

pub fn labels_to_mask(labels: &[usize]) -> Result<u32, ResonanceError> {
    let mut m = 0u32;
    for &l in labels {
        if l == 0 || l > 32 {
            return Err(ResonanceError::InvalidLabel { label: l, order: 32 });
        }
        m |= 1 << (l - 1);
    }
    Ok(m)
}

/// Parses `2,3,4` (braces and spaces tolerated) into a mask.
pub fn parse_label_list(s: &str) -> Result<u32, ResonanceError> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    if inner.trim().is_empty() {
        return Ok(0);
    }
    let labels = inner
        .split(',')
        .map(|tok| tok.trim().trim_start_matches('λ').parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ResonanceError::BadList(s.to_string()))?;
    labels_to_mask(&labels)
}

/// Mask of all products `a b` with `a ∈ left`, `b ∈ right`.
pub fn product_mask(t: &CayleyTable, left: u32, right: u32) -> u32 {
    let n = t.order();
    let mut out = 0u32;
    for a in (0..n).filter(|a| left & (1 << a) != 0) {
        for b in (0..n).filter(|b| right & (1 << b) != 0) {
            out |= 1 << t.product(a, b);
        }
    }
    out
}

fn closure_holds(t: &CayleyTable, s0: u32, s1: u32) -> bool {
    let within = |m: u32, target: u32| m & !target == 0;
    within(product_mask(t, s0, s0), s0) && within(product_mask(t, s0, s1), s1) && within(product_mask(t, s1, s1), s0)
}

pub fn is_resonant(t: &CayleyTable, d: &ResonantDecomposition) -> Result<bool, ResonanceError> {
    d.validate_for(t)?;
    Ok(d.s0 != 0 && d.s1 != 0 && d.s0 | d.s1 == t.full_mask() && closure_holds(t, d.s0, d.s1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResonanceFilter {
    #[default]
    All,
    /// Only decompositions with the zero element in both blocks.
    ZeroInBoth,
}

/// Every resonant decomposition, ordered by `(s0, s1)` masks.
pub fn find_resonances(t: &CayleyTable) -> Vec<ResonantDecomposition> {
    let full = t.full_mask();
    let mut out = Vec::new();
    for s0 in 1..=full {
        if product_mask(t, s0, s0) & !s0 != 0 {
            continue;
        }
        // s1 must contain the complement of s0.
        let need = full & !s0;
        let mut extra = s0;
        loop {
            let s1 = need | extra;
            if s1 != 0 && closure_holds(t, s0, s1) {
                out.push(ResonantDecomposition { s0, s1 });
            }
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & s0;
        }
    }
    out.sort();
    out
}

pub fn find_resonances_filtered(t: &CayleyTable, filter: ResonanceFilter) -> Vec<ResonantDecomposition> {
    let all = find_resonances(t);
    match filter {
        ResonanceFilter::All => all,
        ResonanceFilter::ZeroInBoth => match t.find_zero() {
            Some(z) => all.into_iter().filter(|d| d.in_s0(z) && d.in_s1(z)).collect(),
            None => Vec::new(),
        },
    }
}
