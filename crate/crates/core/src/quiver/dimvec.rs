use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

/// An integer vector indexed by the vertices of a quiver.
///
/// Entries may be negative; reflections pass through such vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// `e_vertex` of length `n` (1-based vertex).
    pub fn unit(n: usize, vertex: usize) -> Self {
        let mut v = vec![0; n];
        v[vertex - 1] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.0.iter()
    }

    /// Coordinate at a 1-based vertex.
    pub fn at(&self, vertex: usize) -> i64 {
        self.0[vertex - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// `self > 0` in the componentwise partial order.
    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&x| x < 0)
    }

    /// If this is some `e_i`, returns `i`.
    pub fn as_simple(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(i + 1),
                _ => return None,
            }
        }
        found
    }

    /// `self >= other` componentwise.
    pub fn dominates(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// `self < other` in the componentwise order: `self <= other` and `self != other`.
    pub fn strictly_below(&self, other: &DimVector) -> bool {
        other.dominates(self) && self != other
    }

    /// Componentwise comparison: `None` when incomparable.
    pub fn partial_cmp_componentwise(&self, other: &DimVector) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    pub(crate) fn add_scaled(&mut self, vertex: usize, by: i64) {
        self.0[vertex - 1] += by;
    }
}

impl From<Vec<i64>> for DimVector {
    fn from(v: Vec<i64>) -> Self {
        DimVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for DimVector {
    fn from(v: [i64; N]) -> Self {
        DimVector(v.to_vec())
    }
}

impl Index<usize> for DimVector {
    type Output = i64;

    /// 0-based coordinate access.
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;

    fn add(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len());
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;

    fn sub(self, rhs: &DimVector) -> DimVector {
        assert_eq!(self.len(), rhs.len());
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&DimVector> for i64 {
    type Output = DimVector;

    fn mul(self, rhs: &DimVector) -> DimVector {
        DimVector(rhs.0.iter().map(|x| self * x).collect())
    }
}

impl Neg for &DimVector {
    type Output = DimVector;

    fn neg(self) -> DimVector {
        -1 * self
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DimVector {
    type Err = String;

    /// Parses `1,2,3` or `(1,2,3)`.
    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Err("empty vector".into());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| format!("invalid coordinate `{}`", t.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DimVector)
    }
}
