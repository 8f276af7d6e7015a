//! Light cone of a form of signature `(1, k)`.
//!
//! Vectors are given in a basis where `a . b = a0 b0 - sum_{i>=1} ai bi`.
//! The forward cone is the component of `{a : a . a > 0}` with `a0 > 0`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LorentzVector(Vec<Rational>);

impl LorentzVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("a Lorentz vector needs at least one coordinate".into()));
        }
        Ok(LorentzVector(coords))
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn time(&self) -> &Rational {
        &self.0[0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> LorentzVector {
        LorentzVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &LorentzVector) -> Result<LorentzVector> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(LorentzVector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect()))
    }
}

impl core::ops::Neg for &LorentzVector {
    type Output = LorentzVector;
    fn neg(self) -> LorentzVector {
        LorentzVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for LorentzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConePosition {
    Forward,
    ForwardBoundary,
    Zero,
    Backward,
    BackwardBoundary,
    Spacelike,
}

impl ConePosition {
    /// In the closure of the forward cone.
    pub fn in_forward_closure(self) -> bool {
        matches!(self, ConePosition::Forward | ConePosition::ForwardBoundary | ConePosition::Zero)
    }

    pub fn mirror(self) -> ConePosition {
        match self {
            ConePosition::Forward => ConePosition::Backward,
            ConePosition::Backward => ConePosition::Forward,
            ConePosition::ForwardBoundary => ConePosition::BackwardBoundary,
            ConePosition::BackwardBoundary => ConePosition::ForwardBoundary,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConePosition::Forward => "Forward",
            ConePosition::ForwardBoundary => "ForwardBoundary",
            ConePosition::Zero => "Zero",
            ConePosition::Backward => "Backward",
            ConePosition::BackwardBoundary => "BackwardBoundary",
            ConePosition::Spacelike => "Spacelike",
        }
    }
}

impl fmt::Display for ConePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `a0 b0 - sum_{i>=1} ai bi`.
pub fn pairing(a: &LorentzVector, b: &LorentzVector) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let time = a.time() * b.time();
    let space: Rational = a.0[1..].iter().zip(&b.0[1..]).map(|(x, y)| x * y).sum();
    Ok(time - space)
}

pub fn cone_position(a: &LorentzVector) -> ConePosition {
    let square = pairing(a, a).expect("same length");
    if square.is_negative() {
        ConePosition::Spacelike
    } else if a.is_zero() {
        ConePosition::Zero
    } else {
        // a . a >= 0 and a != 0 force a0 != 0.
        let forward = a.time().is_positive();
        match (square.is_zero(), forward) {
            (false, true) => ConePosition::Forward,
            (false, false) => ConePosition::Backward,
            (true, true) => ConePosition::ForwardBoundary,
            (true, false) => ConePosition::BackwardBoundary,
        }
    }
}

/// Checks the three clauses of the light cone lemma on `(a, b)`:
///
/// 1. `a` forward and `b` in the closure, `b != 0`: `a . b > 0`.
/// 2. `a` and `b` in the closure: `a . b >= 0`.
/// 3. `a` forward, `b . b >= 0` and `a . b >= 0`: `b` is in the closure.
///
/// Clauses whose hypotheses fail hold vacuously.
pub fn check_cone_lemma(a: &LorentzVector, b: &LorentzVector) -> Result<bool> {
    let ab = pairing(a, b)?;
    let bb = pairing(b, b)?;
    let pa = cone_position(a);
    let pb = cone_position(b);

    let first = !(pa == ConePosition::Forward && pb.in_forward_closure() && !b.is_zero())
        || ab.is_positive();
    let second = !(pa.in_forward_closure() && pb.in_forward_closure()) || !ab.is_negative();
    let third = !(pa == ConePosition::Forward && !bb.is_negative() && !ab.is_negative())
        || pb.in_forward_closure();
    Ok(first && second && third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::vec;

    fn v(coords: &[i64]) -> LorentzVector {
        LorentzVector::from_integers(coords).unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&v(&[1, 0]), &v(&[1, 1])).unwrap(), Rational::one());
        assert_eq!(pairing(&v(&[1, 0]), &v(&[1, 0])).unwrap(), Rational::one());
        assert_eq!(pairing(&v(&[1, 1]), &v(&[1, 1])).unwrap(), Rational::zero());
        assert_eq!(pairing(&v(&[1, 1]), &v(&[1, 1, 0])), Err(Error::LengthMismatch(2, 3)));
        assert!(LorentzVector::new(vec![]).is_err());
    }

    #[test]
    fn positions() {
        let half = LorentzVector::new(vec![Rational::one(), rat(1, 2).unwrap()]).unwrap();
        assert_eq!(cone_position(&half), ConePosition::Forward);
        assert_eq!(cone_position(&v(&[1, 1])), ConePosition::ForwardBoundary);
        assert_eq!(cone_position(&v(&[0, 1])), ConePosition::Spacelike);
        assert_eq!(cone_position(&v(&[0, 0])), ConePosition::Zero);
        assert_eq!(cone_position(&v(&[-2, 1])), ConePosition::Backward);
        assert_eq!(cone_position(&v(&[-1, 1])), ConePosition::BackwardBoundary);
        assert_eq!(cone_position(&v(&[3])), ConePosition::Forward);
    }

    #[test]
    fn lemma_examples() {
        assert!(check_cone_lemma(&v(&[1, 0]), &v(&[1, 1])).unwrap());
        assert!(check_cone_lemma(&v(&[1, 0]), &v(&[2, -1])).unwrap());
        assert!(check_cone_lemma(&v(&[1, 0]), &v(&[-1, 0])).unwrap());
        assert!(check_cone_lemma(&v(&[1, 0]), &v(&[1, 1, 0])).is_err());
    }

    #[test]
    fn mirror_under_negation() {
        for c in [[2, 1], [1, 1], [0, 0], [-2, 1], [-1, 1], [0, 3]] {
            let a = v(&c);
            assert_eq!(cone_position(&-&a), cone_position(&a).mirror());
        }
    }
}
