//! Lie algebras given by exact rational structure constants.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, fmt_rational, Matrix, Rational};
use crate::text::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("antisymmetry fails: c[{i}][{j}][{k}] = {a} but c[{j}][{i}][{k}] = {b}")]
    NotAntisymmetric {
        i: usize,
        j: usize,
        k: usize,
        a: String,
        b: String,
    },
    #[error("Jacobi identity fails for (X{i}, X{j}, X{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("expected a {expected}x{expected} change-of-basis matrix")]
    BadMatrix { expected: usize },
    #[error("change-of-basis matrix is singular")]
    Singular,
    #[error("basis index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
}

/// `[X_i, X_j] = Σ_k c[i][j][k] X_k`, with dense storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    constants: Vec<Rational>,
}

impl LieAlgebra {
    /// The abelian algebra on `X1..Xdim`.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::with_labels((1..=dim).map(|i| format!("X{i}")).collect())
    }

    /// The abelian algebra on the given basis names.
    pub fn with_labels(labels: Vec<String>) -> Self {
        let dim = labels.len();
        LieAlgebra {
            dim,
            labels,
            constants: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds from `(i, j, k, value)` entries meaning `[X_i, X_j] ∋ value X_k`
    /// (0-based), filling in the antisymmetric partner.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self, LieError> {
        let mut g = LieAlgebra::abelian(dim);
        for (i, j, k, v) in entries {
            g.set_bracket(*i, *j, *k, v.clone())?;
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.dim, "label count must equal dimension");
        self.labels = labels;
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.idx(i, j, k)]
    }

    /// Sets `c[i][j][k] = value` and `c[j][i][k] = -value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, value: Rational) -> Result<(), LieError> {
        for index in [i, j, k] {
            if index >= self.dim {
                return Err(LieError::BadIndex {
                    index: index + 1,
                    dim: self.dim,
                });
            }
        }
        let (a, b) = (self.idx(i, j, k), self.idx(j, i, k));
        self.constants[b] = -value.clone();
        self.constants[a] = value;
        Ok(())
    }

    /// Writes one raw constant without touching its partner; used to build
    /// deliberately malformed inputs.
    pub fn set_constant_raw(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let a = self.idx(i, j, k);
        self.constants[a] = value;
    }

    /// Coefficient vector of `[X_i, X_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.idx(i, j, 0);
        &self.constants[start..start + self.dim]
    }

    /// Bracket of two arbitrary vectors in this basis.
    pub fn bracket_vectors(&self, u: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in (0..self.dim).filter(|&i| !u[i].is_zero()) {
            for j in (0..self.dim).filter(|&j| !w[j].is_zero()) {
                let s = &u[i] * &w[j];
                for (k, c) in self.bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &s * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }

    fn antisymmetry_violation(&self) -> Option<LieError> {
        let d = self.dim;
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    let a = self.constant(i, j, k);
                    let b = self.constant(j, i, k);
                    if *a != -b.clone() {
                        return Some(LieError::NotAntisymmetric {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            a: fmt_rational(a),
                            b: fmt_rational(b),
                        });
                    }
                }
            }
        }
        None
    }

    fn jacobi_violation(&self) -> Option<LieError> {
        let d = self.dim;
        // [[X_i, X_j], X_k] accumulated into `acc`, skipping zero constants.
        let add_nested = |acc: &mut [Rational], i: usize, j: usize, k: usize| {
            for (m, cm) in self.bracket(i, j).iter().enumerate() {
                if cm.is_zero() {
                    continue;
                }
                for (l, cl) in self.bracket(m, k).iter().enumerate() {
                    if !cl.is_zero() {
                        acc[l] += cm * cl;
                    }
                }
            }
        };
        let mut acc = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    acc.iter_mut().for_each(|v| v.set_zero());
                    add_nested(&mut acc, i, j, k);
                    add_nested(&mut acc, j, k, i);
                    add_nested(&mut acc, k, i, j);
                    if !linalg::is_zero_vec(&acc) {
                        return Some(LieError::Jacobi {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// Antisymmetry and Jacobi, reporting the first violation.
    pub fn check(&self) -> Result<(), LieError> {
        if let Some(e) = self.antisymmetry_violation() {
            return Err(e);
        }
        if let Some(e) = self.jacobi_violation() {
            return Err(e);
        }
        Ok(())
    }

    pub fn validate(&self) -> bool {
        self.check().is_ok()
    }

    /// Every bracket of basis elements is zero or `±1` times one basis element.
    pub fn is_monomial_unit(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let v = self.bracket(i, j);
                let nonzero: Vec<&Rational> = v.iter().filter(|c| !c.is_zero()).collect();
                nonzero.len() <= 1 && nonzero.iter().all(|c| c.abs().is_one())
            })
        })
    }

    /// Every bracket of basis elements has at most one nonzero coefficient.
    pub fn is_monomial(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.bracket(i, j).iter().filter(|c| !c.is_zero()).count() <= 1))
    }

    pub fn has_unit_constants(&self) -> bool {
        self.constants.iter().all(|c| c.is_zero() || c.abs().is_one())
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Rewrites the algebra in the basis `Y_a = Σ_i rows[a][i] X_i`.
    #[allow(clippy::needless_range_loop)]
    pub fn change_basis(&self, rows: &[Vec<Rational>]) -> Result<LieAlgebra, LieError> {
        let d = self.dim;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(LieError::BadMatrix { expected: d });
        }
        let inv: Matrix = linalg::inverse(rows).ok_or(LieError::Singular)?;
        let mut out = LieAlgebra::abelian(d);
        for a in 0..d {
            for b in 0..d {
                // [Y_a, Y_b] in X coordinates, then mapped back through inv.
                let xs = self.bracket_vectors(&rows[a], &rows[b]);
                for c in 0..d {
                    let coeff = (0..d).fold(Rational::zero(), |acc, k| {
                        if xs[k].is_zero() {
                            acc
                        } else {
                            acc + &xs[k] * &inv[k][c]
                        }
                    });
                    let at = out.idx(a, b, c);
                    out.constants[at] = coeff;
                }
            }
        }
        Ok(out)
    }

    /// Relabels the basis by a permutation: new basis element `perm[a]` is
    /// old element `a`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<LieAlgebra, LieError> {
        let d = self.dim;
        let mut rows = vec![vec![Rational::zero(); d]; d];
        for (old, &new) in perm.iter().enumerate() {
            if new >= d {
                return Err(LieError::BadIndex { index: new + 1, dim: d });
            }
            rows[new][old] = Rational::one();
        }
        self.change_basis(&rows)
    }

    /// `[Xi,Xj] = ...` lines for nonzero brackets with `i < j`.
    pub fn render_brackets(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket(i, j);
                if linalg::is_zero_vec(v) {
                    continue;
                }
                out.push_str(&format!(
                    "[{},{}] = {}\n",
                    self.labels[i],
                    self.labels[j],
                    render_combination(v, &self.labels)
                ));
            }
        }
        out
    }

    /// The structure-constants file format.
    pub fn to_constants_file(&self) -> String {
        let mut out = format!("{}\n", self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out.push_str(&format!("{} {} {} {}/{}\n", i + 1, j + 1, k + 1, c.numer(), c.denom()));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.render_brackets();
        if body.is_empty() {
            writeln!(f, "(abelian, dimension {})", self.dim)
        } else {
            f.write_str(&body)
        }
    }
}

/// `-X1 + 2X2 - 1/2X3` style rendering of a coefficient vector.
pub fn render_combination(v: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        let coeff = if magnitude.is_one() {
            String::new()
        } else {
            fmt_rational(&magnitude)
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&coeff);
        out.push_str(&labels[k]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the structure-constants format: a `dim` line, then `i j k num/den`
/// lines (1-based, `i < j`). `#` starts a comment line.
pub fn parse_constants_file(input: &str) -> Result<LieAlgebra, ParseError> {
    let mut g: Option<LieAlgebra> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let col = raw.len() - raw.trim_start().len() + 1;
        let Some(alg) = g.as_mut() else {
            let dim: usize = trimmed
                .parse()
                .map_err(|_| ParseError::new(line, col, format!("expected dimension, found `{trimmed}`")))?;
            if dim == 0 {
                return Err(ParseError::new(line, col, "dimension must be positive"));
            }
            g = Some(LieAlgebra::abelian(dim));
            continue;
        };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(ParseError::new(line, col, "expected `i j k num/den`"));
        }
        let dim = alg.dim();
        let mut idxs = [0usize; 3];
        for (n, f) in fields[..3].iter().enumerate() {
            let v: usize = f
                .parse()
                .map_err(|_| ParseError::new(line, col, format!("bad index `{f}`")))?;
            if v == 0 || v > dim {
                return Err(ParseError::new(line, col, format!("index {v} outside 1..{dim}")));
            }
            idxs[n] = v - 1;
        }
        let [i, j, k] = idxs;
        if i >= j {
            return Err(ParseError::new(line, col, "entries must have i < j"));
        }
        let value = parse_rational(fields[3])
            .ok_or_else(|| ParseError::new(line, col, format!("bad coefficient `{}`", fields[3])))?;
        alg.set_bracket(i, j, k, value).expect("indices checked");
    }
    g.ok_or_else(|| ParseError::new(1, 1, "missing dimension line"))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// `[X1, X2] = 0`.
pub fn abelian_plane() -> LieAlgebra {
    LieAlgebra::abelian(2)
}

/// `[X1, X2] = X1`, the non-abelian 2-dimensional algebra.
pub fn solvable_plane() -> LieAlgebra {
    LieAlgebra::from_brackets(2, &[(0, 1, 0, linalg::int(1))]).expect("indices in range")
}

/// A basis-aligned two-block split `V0 ⊕ V1` with
/// `[V0,V0] ⊆ V0`, `[V0,V1] ⊆ V1`, `[V1,V1] ⊆ V0`. Masks index the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grading {
    pub v0: u32,
    pub v1: u32,
}

impl Grading {
    /// `V0 = {X2}`, `V1 = {X1}` on a 2-dimensional algebra.
    pub fn planar() -> Self {
        Grading { v0: 0b10, v1: 0b01 }
    }

    pub fn is_valid_for(&self, g: &LieAlgebra) -> bool {
        let d = g.dim();
        let full = if d >= 32 { u32::MAX } else { (1u32 << d) - 1 };
        if self.v0 & self.v1 != 0 || self.v0 | self.v1 != full || self.v0 == 0 || self.v1 == 0 {
            return false;
        }
        let block = |i: usize| self.v1 & (1 << i) != 0;
        let admits = |target_odd: bool, k: usize| block(k) == target_odd;
        (0..d).all(|i| {
            (0..d).all(|j| {
                let odd = block(i) ^ block(j);
                g.bracket(i, j)
                    .iter()
                    .enumerate()
                    .all(|(k, c)| c.is_zero() || admits(odd, k))
            })
        })
    }

    pub fn in_v0(&self, i: usize) -> bool {
        self.v0 & (1 << i) != 0
    }

    pub fn in_v1(&self, i: usize) -> bool {
        self.v1 & (1 << i) != 0
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |m: u32| {
            (0..32)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| format!("X{}", i + 1))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "V0={{{}}} V1={{{}}}", names(self.v0), names(self.v1))
    }
}

/// All ordered partitions into nonempty `(V0, V1)` satisfying the grading
/// closure, ordered by the `V0` mask.
pub fn find_gradings(g: &LieAlgebra) -> Vec<Grading> {
    let d = g.dim();
    assert!(d < 32, "gradings are enumerated for dimension below 32");
    let full = (1u32 << d) - 1;
    (1..full)
        .map(|v0| Grading { v0, v1: full & !v0 })
        .filter(|gr| gr.is_valid_for(g))
        .collect()
}
