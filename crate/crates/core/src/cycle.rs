//! Rational cycles: vectors of exact rationals in the `E_v` basis.

use std::cmp::Ordering;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::rational::{format_rational, frac, int, Rational};

/// An element of `L ⊗ Q`, coordinates indexed by vertex id.
///
/// Arithmetic is coordinatewise and exact. The order is the coordinatewise
/// partial order, so `partial_cmp` returns `None` for incomparable cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QCycle(Vec<Rational>);

impl QCycle {
    pub fn new(coords: Vec<Rational>) -> Self {
        QCycle(coords)
    }

    pub fn zero(n: usize) -> Self {
        QCycle(vec![Rational::zero(); n])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QCycle(xs.iter().map(|&x| int(x)).collect())
    }

    /// The base element `E_v`.
    pub fn basis(n: usize, v: usize) -> Self {
        let mut c = Self::zero(n);
        c.0[v] = int(1);
        c
    }

    /// `E = Σ_v E_v`.
    pub fn reduced_sum(n: usize) -> Self {
        QCycle(vec![int(1); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn scale(&self, k: &Rational) -> QCycle {
        QCycle(self.0.iter().map(|x| x * k).collect())
    }

    pub fn floor(&self) -> QCycle {
        QCycle(self.0.iter().map(|x| x.floor()).collect())
    }

    /// Coordinatewise fractional part; every entry lands in `[0, 1)`.
    pub fn frac(&self) -> QCycle {
        QCycle(self.0.iter().map(frac).collect())
    }

    pub fn min(&self, other: &QCycle) -> QCycle {
        assert_eq!(self.len(), other.len());
        QCycle(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Effective: every coordinate is `>= 0`.
    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Coordinatewise `self >= other`.
    pub fn dominates(&self, other: &QCycle) -> bool {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Integer coordinates, if the cycle is integral and fits in `i64`.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(crate::rational::to_i64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl Index<usize> for QCycle {
    type Output = Rational;
    fn index(&self, v: usize) -> &Rational {
        &self.0[v]
    }
}

impl PartialOrd for QCycle {
    fn partial_cmp(&self, other: &QCycle) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }
}

impl Add for &QCycle {
    type Output = QCycle;
    fn add(self, rhs: &QCycle) -> QCycle {
        assert_eq!(self.len(), rhs.len(), "cycles over different vertex sets");
        QCycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QCycle {
    type Output = QCycle;
    fn sub(self, rhs: &QCycle) -> QCycle {
        assert_eq!(self.len(), rhs.len(), "cycles over different vertex sets");
        QCycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for QCycle {
    type Output = QCycle;
    fn add(self, rhs: QCycle) -> QCycle {
        &self + &rhs
    }
}

impl Sub for QCycle {
    type Output = QCycle;
    fn sub(self, rhs: QCycle) -> QCycle {
        &self - &rhs
    }
}

impl Neg for &QCycle {
    type Output = QCycle;
    fn neg(self) -> QCycle {
        QCycle(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for QCycle {
    type Output = QCycle;
    fn neg(self) -> QCycle {
        -&self
    }
}

/// Serializes as a JSON array of `"p/q"` strings.
impl Serialize for QCycle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn partial_order_is_coordinatewise() {
        let a = QCycle::new(vec![rat(1, 2), int(1)]);
        let b = QCycle::new(vec![int(1), int(0)]);
        assert_eq!(a.partial_cmp(&b), None);
        assert!(a.min(&b) <= a);
        assert!(a.min(&b) <= b);
        assert!(&a + &b > a);
    }

    #[test]
    fn frac_plus_floor_is_identity() {
        let a = QCycle::new(vec![rat(-7, 3), rat(13, 5), int(4)]);
        assert_eq!(&a.floor() + &a.frac(), a);
        assert_eq!(a.frac(), QCycle::new(vec![rat(2, 3), rat(3, 5), int(0)]));
    }

    #[test]
    fn serializes_as_strings() {
        let a = QCycle::new(vec![rat(21, 4), int(3)]);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"["21/4","3"]"#);
    }
}
