//! Bianchi types of 3-dimensional real Lie algebras.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::{self, fmt_rational, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BianchiTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII1,
    VII2,
    VIII,
    IX,
}

impl BianchiTag {
    pub const ALL: [BianchiTag; 10] = [
        BianchiTag::I,
        BianchiTag::II,
        BianchiTag::III,
        BianchiTag::IV,
        BianchiTag::V,
        BianchiTag::VI,
        BianchiTag::VII1,
        BianchiTag::VII2,
        BianchiTag::VIII,
        BianchiTag::IX,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BianchiTag::I => "I",
            BianchiTag::II => "II",
            BianchiTag::III => "III",
            BianchiTag::IV => "IV",
            BianchiTag::V => "V",
            BianchiTag::VI => "VI",
            BianchiTag::VII1 => "VII1",
            BianchiTag::VII2 => "VII2",
            BianchiTag::VIII => "VIII",
            BianchiTag::IX => "IX",
        }
    }

    pub fn has_parameter(self) -> bool {
        matches!(self, BianchiTag::VI | BianchiTag::VII2)
    }
}

impl fmt::Display for BianchiTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BianchiTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BianchiTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown Bianchi type `{s}`"))
    }
}

/// A classification result. The family members carry the exact
/// invariant `tr²/det` of the adjoint action on the derived plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BianchiType {
    I,
    II,
    III,
    IV,
    V,
    VI { invariant: Rational },
    VII1,
    VII2 { invariant: Rational },
    VIII,
    IX,
}

impl BianchiType {
    pub fn tag(&self) -> BianchiTag {
        match self {
            BianchiType::I => BianchiTag::I,
            BianchiType::II => BianchiTag::II,
            BianchiType::III => BianchiTag::III,
            BianchiType::IV => BianchiTag::IV,
            BianchiType::V => BianchiTag::V,
            BianchiType::VI { .. } => BianchiTag::VI,
            BianchiType::VII1 => BianchiTag::VII1,
            BianchiType::VII2 { .. } => BianchiTag::VII2,
            BianchiType::VIII => BianchiTag::VIII,
            BianchiType::IX => BianchiTag::IX,
        }
    }

    pub fn invariant(&self) -> Option<&Rational> {
        match self {
            BianchiType::VI { invariant } | BianchiType::VII2 { invariant } => Some(invariant),
            _ => None,
        }
    }
}

impl fmt::Display for BianchiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.invariant() {
            Some(q) => write!(f, "{} (tr^2/det = {})", self.tag(), fmt_rational(q)),
            None => write!(f, "{}", self.tag()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("classification needs dimension 3, got {0}")]
    NotThreeDimensional(usize),
    #[error("not a Lie algebra: {0}")]
    Invalid(#[from] LieError),
    #[error("type {0} needs a parameter h")]
    MissingParameter(BianchiTag),
    #[error("type {0} takes no parameter")]
    UnexpectedParameter(BianchiTag),
    #[error("parameter h = {h} is outside the allowed range for type {tag} ({range})")]
    ParameterOutOfRange {
        tag: BianchiTag,
        h: String,
        range: &'static str,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistent(&'static str),
}

/// The bracket table of a Bianchi row. `h` is required for VI (`h ≠ 0, 1`)
/// and VII2 (`0 < h < 2`) and refused otherwise.
pub fn canonical_bianchi(tag: BianchiTag, h: Option<&Rational>) -> Result<LieAlgebra, ClassifyError> {
    let h = match (tag.has_parameter(), h) {
        (true, None) => return Err(ClassifyError::MissingParameter(tag)),
        (false, Some(_)) => return Err(ClassifyError::UnexpectedParameter(tag)),
        (_, h) => h.cloned(),
    };
    let one = int(1);
    let (x1, x2, x3) = (0, 1, 2);
    let entries: Vec<(usize, usize, usize, Rational)> = match tag {
        BianchiTag::I => vec![],
        BianchiTag::II => vec![(x2, x3, x1, one)],
        BianchiTag::III => vec![(x1, x3, x1, one)],
        BianchiTag::IV => vec![(x1, x3, x1, one.clone()), (x2, x3, x1, one.clone()), (x2, x3, x2, one)],
        BianchiTag::V => vec![(x1, x3, x1, one.clone()), (x2, x3, x2, one)],
        BianchiTag::VI => {
            let h = h.expect("checked above");
            if h.is_zero() || h.is_one() {
                return Err(out_of_range(tag, &h, "h ≠ 0, 1"));
            }
            vec![(x1, x3, x1, one), (x2, x3, x2, h)]
        }
        BianchiTag::VII1 => vec![(x1, x3, x2, one.clone()), (x2, x3, x1, -one)],
        BianchiTag::VII2 => {
            let h = h.expect("checked above");
            if !(h.is_positive() && h < int(2)) {
                return Err(out_of_range(tag, &h, "0 < h < 2"));
            }
            vec![(x1, x3, x2, one.clone()), (x2, x3, x1, -one), (x2, x3, x2, h)]
        }
        BianchiTag::VIII => vec![(x1, x2, x1, one.clone()), (x1, x3, x2, int(2)), (x2, x3, x3, one)],
        BianchiTag::IX => vec![(x1, x2, x3, one.clone()), (x2, x3, x1, one.clone()), (x3, x1, x2, one)],
    };
    Ok(LieAlgebra::from_brackets(3, &entries).expect("indices in range"))
}

fn out_of_range(tag: BianchiTag, h: &Rational, range: &'static str) -> ClassifyError {
    ClassifyError::ParameterOutOfRange {
        tag,
        h: fmt_rational(h),
        range,
    }
}

/// Basis of the derived algebra in reduced row echelon form.
fn derived_basis(g: &LieAlgebra) -> Vec<Vec<Rational>> {
    let d = g.dim();
    let brackets: Vec<Vec<Rational>> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .map(|(i, j)| g.bracket(i, j).to_vec())
        .filter(|v| !linalg::is_zero_vec(v))
        .collect();
    linalg::row_reduce(brackets)
}

/// Dimension of the span of all brackets.
pub fn derived_dim(g: &LieAlgebra) -> Result<usize, ClassifyError> {
    g.check()?;
    Ok(derived_basis(g).len())
}

pub fn classify3(g: &LieAlgebra) -> Result<BianchiType, ClassifyError> {
    if g.dim() != 3 {
        return Err(ClassifyError::NotThreeDimensional(g.dim()));
    }
    g.check()?;
    let derived = derived_basis(g);
    match derived.len() {
        0 => Ok(BianchiType::I),
        1 => {
            let v = &derived[0];
            let central = (0..3).all(|i| linalg::is_zero_vec(&g.bracket_vectors(&unit(i), v)));
            Ok(if central { BianchiType::II } else { BianchiType::III })
        }
        2 => classify_derived_plane(g, &derived),
        3 => Ok(if killing_definite(g) {
            BianchiType::IX
        } else {
            BianchiType::VIII
        }),
        _ => Err(ClassifyError::Inconsistent("derived algebra larger than the algebra")),
    }
}

fn unit(i: usize) -> Vec<Rational> {
    (0..3)
        .map(|k| if k == i { Rational::one() } else { Rational::zero() })
        .collect()
}

fn classify_derived_plane(g: &LieAlgebra, plane: &[Vec<Rational>]) -> Result<BianchiType, ClassifyError> {
    // A complement vector: the first unit vector outside the plane.
    let e = (0..3)
        .map(unit)
        .find(|u| linalg::coordinates(plane, u).is_none())
        .ok_or(ClassifyError::Inconsistent("no complement to the derived plane"))?;
    // Columns of A are the coordinates of [e, d_k] in the plane basis.
    let mut a = vec![vec![Rational::zero(); 2]; 2];
    for (k, d) in plane.iter().enumerate() {
        let image = g.bracket_vectors(&e, d);
        let coords =
            linalg::coordinates(plane, &image).ok_or(ClassifyError::Inconsistent("derived plane is not invariant"))?;
        for (r, c) in coords.into_iter().enumerate() {
            a[r][k] = c;
        }
    }
    let tr = &a[0][0] + &a[1][1];
    let det = linalg::determinant(&a);
    if det.is_zero() {
        return Err(ClassifyError::Inconsistent(
            "adjoint action on the derived plane is singular",
        ));
    }
    let tr2 = &tr * &tr;
    let four_det = &det * int(4);
    if tr2 == four_det {
        let scalar = a[0][1].is_zero() && a[1][0].is_zero() && a[0][0] == a[1][1];
        return Ok(if scalar { BianchiType::V } else { BianchiType::IV });
    }
    let invariant = &tr2 / &det;
    if tr2 > four_det {
        Ok(BianchiType::VI { invariant })
    } else if tr.is_zero() {
        Ok(BianchiType::VII1)
    } else {
        Ok(BianchiType::VII2 { invariant })
    }
}

/// `K(a, b) = Σ c[a][j][k] c[b][k][j]`, decided by leading principal minors.
fn killing_definite(g: &LieAlgebra) -> bool {
    let d = g.dim();
    let k: Vec<Vec<Rational>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    let mut s = Rational::zero();
                    for j in 0..d {
                        for m in 0..d {
                            s += g.constant(a, j, m) * g.constant(b, m, j);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    let minors: Vec<Rational> = (1..=d)
        .map(|s| {
            let sub: Vec<Vec<Rational>> = k[..s].iter().map(|row| row[..s].to_vec()).collect();
            linalg::determinant(&sub)
        })
        .collect();
    let positive = minors.iter().all(|m| m.is_positive());
    let negative = minors
        .iter()
        .enumerate()
        .all(|(i, m)| if i % 2 == 0 { m.is_negative() } else { m.is_positive() });
    positive || negative
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn canon(tag: BianchiTag, h: Option<Rational>) -> LieAlgebra {
        canonical_bianchi(tag, h.as_ref()).unwrap()
    }

    #[test]
    fn canonical_rows_are_lie_algebras() {
        for tag in BianchiTag::ALL {
            let h = match tag {
                BianchiTag::VI => Some(int(3)),
                BianchiTag::VII2 => Some(int(1)),
                _ => None,
            };
            assert!(canon(tag, h).validate(), "{tag}");
        }
    }

    #[test]
    fn parameter_ranges_are_enforced() {
        assert!(canonical_bianchi(BianchiTag::VI, Some(&int(1))).is_err());
        assert!(canonical_bianchi(BianchiTag::VI, Some(&int(0))).is_err());
        assert!(canonical_bianchi(BianchiTag::VII2, Some(&int(2))).is_err());
        assert!(canonical_bianchi(BianchiTag::VII2, Some(&int(0))).is_err());
        assert!(canonical_bianchi(BianchiTag::VI, None).is_err());
        assert!(canonical_bianchi(BianchiTag::II, Some(&int(2))).is_err());
    }

    #[test]
    fn derived_dimensions() {
        assert_eq!(derived_dim(&canon(BianchiTag::I, None)).unwrap(), 0);
        assert_eq!(derived_dim(&canon(BianchiTag::II, None)).unwrap(), 1);
        assert_eq!(derived_dim(&canon(BianchiTag::IX, None)).unwrap(), 3);
    }

    #[test]
    fn family_invariants() {
        // VI_h: diag(-1, -h) on the derived plane, so tr²/det = (1+h)²/h.
        for h in [int(-3), int(-2), int(2), int(3), frac(1, 2)] {
            let expected = (int(1) + &h) * (int(1) + &h) / &h;
            let got = classify3(&canon(BianchiTag::VI, Some(h))).unwrap();
            assert_eq!(got, BianchiType::VI { invariant: expected });
        }
        // VII2 with h: tr = -h, det = 1.
        let got = classify3(&canon(BianchiTag::VII2, Some(frac(1, 2)))).unwrap();
        assert_eq!(got, BianchiType::VII2 { invariant: frac(1, 4) });
        // h and 1/h give isomorphic algebras and the same invariant.
        assert_eq!(
            classify3(&canon(BianchiTag::VI, Some(int(3)))).unwrap(),
            classify3(&canon(BianchiTag::VI, Some(frac(1, 3)))).unwrap()
        );
    }

    #[test]
    fn broken_jacobi_is_rejected() {
        // Type IX with [X1,X3] redirected to X1 keeps antisymmetry only.
        let mut g = canon(BianchiTag::IX, None);
        g.set_bracket(0, 2, 0, int(1)).unwrap();
        g.set_bracket(0, 2, 1, int(0)).unwrap();
        assert!(g.is_antisymmetric());
        assert!(!g.validate());
        assert!(matches!(classify3(&g), Err(ClassifyError::Invalid(_))));
    }

    #[test]
    fn wrong_dimension() {
        assert_eq!(
            classify3(&crate::liealg::solvable_plane()),
            Err(ClassifyError::NotThreeDimensional(2))
        );
    }
}
