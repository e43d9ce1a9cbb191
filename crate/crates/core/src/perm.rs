//! Permutations of semigroup element labels.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 1..{order}: {images:?}")]
    NotBijective { order: usize, images: Vec<usize> },
}

/// A bijection on the elements `0..n` of a finite magma.
///
/// Written in the one-line notation `(λa λb λc λd)`, read as
/// "λ1 becomes λa, λ2 becomes λb, ...".
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective {
                    order: n,
                    images: images.iter().map(|x| x + 1).collect(),
                });
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based labels, `from_labels(&[4, 3, 1, 2])`
    /// being the paper-style `(λ4 λ3 λ1 λ2)`.
    pub fn from_labels(labels: &[usize]) -> Result<Self, PermError> {
        if labels.contains(&0) {
            return Err(PermError::NotBijective {
                order: labels.len(),
                images: labels.to_vec(),
            });
        }
        Perm::new(labels.iter().map(|l| l - 1).collect())
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        Perm { images: inv }
    }

    /// `self` followed by `next`: `x ↦ next(self(x))`.
    pub fn then(&self, next: &Perm) -> Perm {
        assert_eq!(self.order(), next.order(), "permutation orders differ");
        Perm {
            images: self.images.iter().map(|&x| next.images[x as usize]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        (0..n as u8).permutations(n).map(|images| Perm { images })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.images().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "λ{}", x + 1)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip_through_display() {
        let p = Perm::from_labels(&[4, 3, 1, 2]).unwrap();
        assert_eq!(p.to_string(), "(λ4 λ3 λ1 λ2)");
        assert_eq!(p.apply(0), 3);
        assert_eq!(p.then(&p.inverse()), Perm::identity(4));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_labels(&[1, 1, 2]).is_err());
        assert!(Perm::from_labels(&[0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }

    #[test]
    fn all_counts_factorial() {
        assert_eq!(Perm::all(4).count(), 24);
        assert_eq!(Perm::all(1).count(), 1);
        assert!(Perm::all(3).next().unwrap().is_identity());
    }
}
