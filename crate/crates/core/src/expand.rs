//! S-expansion of a Lie algebra by a finite abelian semigroup, the resonant
//! subalgebra for a two-block grading, and the 0_S-reduction.
//!
//! The expanded basis is `X_(i,α)` with bracket
//! `[X_(i,α), X_(j,β)] = Σ_k c_ij^k X_(k, αβ)`, ordered by `(i, α)`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::cayley::CayleyTable;
use crate::liealg::{Grading, LieAlgebra, LieError};
use crate::linalg::Rational;
use crate::resonance::{is_resonant, ResonanceError, ResonantDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("semigroup table is not associative")]
    NotAssociative,
    #[error("semigroup table is not commutative, so the expanded bracket is not antisymmetric")]
    NotCommutative,
    #[error("input algebra is invalid: {0}")]
    InvalidAlgebra(LieError),
    #[error("input algebra must have monomial structure constants in {{-1, 0, 1}}")]
    NotMonomial,
    #[error("grading {0} is not valid for the input algebra")]
    BadGrading(String),
    #[error("decomposition {0} is not resonant for this semigroup")]
    NotResonant(String),
    #[error(transparent)]
    Decomposition(#[from] ResonanceError),
    #[error("subspace is not closed: [{a}, {b}] leaves it through {c}")]
    NotClosed { a: String, b: String, c: String },
    #[error("λ{0} is not the zero element of the semigroup")]
    NotZero(usize),
    #[error("the semigroup has no zero element to reduce by")]
    NoZero,
    #[error("no basis element carries λ{0}; the algebra was already reduced")]
    NoZeroSector(usize),
    #[error("the λ{0} sector is not an ideal")]
    NotAnIdeal(usize),
    #[error("expanded algebra failed validation: {0}")]
    Result(LieError),
}

/// `λ_α X_i`; both indices 0-based here, 1-based on display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub generator: usize,
    pub element: usize,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{}X{}", self.element + 1, self.generator + 1)
    }
}

/// An algebra whose basis elements are labeled by generator and semigroup
/// element, together with the semigroup it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledAlgebra {
    algebra: LieAlgebra,
    labels: Vec<BasisLabel>,
    semigroup: CayleyTable,
}

impl LabeledAlgebra {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn semigroup(&self) -> &CayleyTable {
        &self.semigroup
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn position(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn into_algebra(self) -> LieAlgebra {
        self.algebra
    }

    /// Keeps the basis elements selected by `keep`, checking that their
    /// span is closed under the bracket.
    fn restrict(&self, keep: impl Fn(&BasisLabel) -> bool) -> Result<LabeledAlgebra, ExpandError> {
        let kept: Vec<usize> = (0..self.dim()).filter(|&p| keep(&self.labels[p])).collect();
        let mut new_index = vec![None; self.dim()];
        for (n, &p) in kept.iter().enumerate() {
            new_index[p] = Some(n);
        }
        let mut out = LieAlgebra::with_labels(kept.iter().map(|&p| self.labels[p].to_string()).collect());
        for (np, &p) in kept.iter().enumerate() {
            for (nq, &q) in kept.iter().enumerate() {
                for (r, c) in self.algebra.bracket(p, q).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let Some(nr) = new_index[r] else {
                        return Err(ExpandError::NotClosed {
                            a: self.labels[p].to_string(),
                            b: self.labels[q].to_string(),
                            c: self.labels[r].to_string(),
                        });
                    };
                    out.set_constant_raw(np, nq, nr, c.clone());
                }
            }
        }
        Ok(LabeledAlgebra {
            algebra: out,
            labels: kept.iter().map(|&p| self.labels[p]).collect(),
            semigroup: self.semigroup.clone(),
        })
    }

    /// Every bracket of two basis elements is zero or `±1` times one basis
    /// element.
    pub fn is_monomial(&self) -> bool {
        self.algebra.is_monomial_unit()
    }

    /// Multiline report: basis then nonzero brackets.
    pub fn render(&self) -> String {
        let basis: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        let mut out = format!("basis ({}): {}\n", self.dim(), basis.join(" "));
        out.push_str(&self.algebra.render_brackets());
        out
    }
}

impl fmt::Display for LabeledAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn check_input(g: &LieAlgebra) -> Result<(), ExpandError> {
    g.check().map_err(ExpandError::InvalidAlgebra)?;
    if !g.is_monomial_unit() {
        return Err(ExpandError::NotMonomial);
    }
    Ok(())
}

pub fn s_expand(g: &LieAlgebra, t: &CayleyTable) -> Result<LabeledAlgebra, ExpandError> {
    check_input(g)?;
    if !t.is_associative() {
        return Err(ExpandError::NotAssociative);
    }
    if !g.is_abelian() && !t.is_commutative() {
        return Err(ExpandError::NotCommutative);
    }
    let (d, n) = (g.dim(), t.order());
    let labels: Vec<BasisLabel> = (0..d)
        .flat_map(|generator| (0..n).map(move |element| BasisLabel { generator, element }))
        .collect();
    let at = |l: BasisLabel| l.generator * n + l.element;
    let mut out = LieAlgebra::with_labels(labels.iter().map(|l| l.to_string()).collect());
    for (p, lp) in labels.iter().enumerate() {
        for (q, lq) in labels.iter().enumerate() {
            let element = t.product(lp.element, lq.element);
            for (k, c) in g.bracket(lp.generator, lq.generator).iter().enumerate() {
                if !c.is_zero() {
                    out.set_constant_raw(p, q, at(BasisLabel { generator: k, element }), c.clone());
                }
            }
        }
    }
    out.check().map_err(ExpandError::Result)?;
    Ok(LabeledAlgebra {
        algebra: out,
        labels,
        semigroup: t.clone(),
    })
}

/// The span of `(S0 × V0) ∪ (S1 × V1)` inside the expansion.
pub fn resonant_subalgebra(
    g: &LieAlgebra,
    grading: &Grading,
    t: &CayleyTable,
    d: &ResonantDecomposition,
) -> Result<LabeledAlgebra, ExpandError> {
    check_input(g)?;
    if !grading.is_valid_for(g) {
        return Err(ExpandError::BadGrading(grading.to_string()));
    }
    if !is_resonant(t, d)? {
        return Err(ExpandError::NotResonant(d.to_string()));
    }
    resonant_part(&s_expand(g, t)?, grading, d)
}

/// Same as [`resonant_subalgebra`] but starting from an existing expansion,
/// so sweeps over many decompositions expand each semigroup once. The
/// grading is assumed valid for the algebra that was expanded.
pub fn resonant_part(
    full: &LabeledAlgebra,
    grading: &Grading,
    d: &ResonantDecomposition,
) -> Result<LabeledAlgebra, ExpandError> {
    if !is_resonant(&full.semigroup, d)? {
        return Err(ExpandError::NotResonant(d.to_string()));
    }
    let sub = full.restrict(|l| {
        (grading.in_v0(l.generator) && d.in_s0(l.element)) || (grading.in_v1(l.generator) && d.in_s1(l.element))
    })?;
    sub.algebra.check().map_err(ExpandError::Result)?;
    Ok(sub)
}

/// Quotient by the span of the basis elements labeled with the zero `z`.
pub fn zero_reduce(a: &LabeledAlgebra, z: usize) -> Result<LabeledAlgebra, ExpandError> {
    if z >= a.semigroup.order() || !a.semigroup.is_zero(z) {
        return Err(ExpandError::NotZero(z + 1));
    }
    if !a.labels.iter().any(|l| l.element == z) {
        return Err(ExpandError::NoZeroSector(z + 1));
    }
    let d = a.dim();
    for p in (0..d).filter(|&p| a.labels[p].element == z) {
        for q in 0..d {
            let escapes = a
                .algebra
                .bracket(p, q)
                .iter()
                .enumerate()
                .any(|(r, c)| !c.is_zero() && a.labels[r].element != z);
            if escapes {
                return Err(ExpandError::NotAnIdeal(z + 1));
            }
        }
    }
    let labels: Vec<BasisLabel> = a.labels.iter().copied().filter(|l| l.element != z).collect();
    let index: Vec<usize> = (0..d).filter(|&p| a.labels[p].element != z).collect();
    let mut out = LieAlgebra::with_labels(labels.iter().map(|l| l.to_string()).collect());
    for (np, &p) in index.iter().enumerate() {
        for (nq, &q) in index.iter().enumerate() {
            for (nr, &r) in index.iter().enumerate() {
                let c: &Rational = a.algebra.constant(p, q, r);
                if !c.is_zero() {
                    out.set_constant_raw(np, nq, nr, c.clone());
                }
            }
        }
    }
    out.check().map_err(ExpandError::Result)?;
    Ok(LabeledAlgebra {
        algebra: out,
        labels,
        semigroup: a.semigroup.clone(),
    })
}

/// Expansion, resonant restriction and, when `reduce` is set, reduction by
/// the semigroup's zero.
pub fn pipeline(
    g: &LieAlgebra,
    grading: &Grading,
    t: &CayleyTable,
    d: &ResonantDecomposition,
    reduce: bool,
) -> Result<LabeledAlgebra, ExpandError> {
    let sub = resonant_subalgebra(g, grading, t, d)?;
    if !reduce {
        return Ok(sub);
    }
    let z = t.find_zero().ok_or(ExpandError::NoZero)?;
    zero_reduce(&sub, z)
}
