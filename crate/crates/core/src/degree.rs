//! Multidegrees in Z^t and the grading data of a polynomial ring.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the grading group Z^t. Exterior degrees carry one extra
/// trailing coordinate for the homological weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(coords: Vec<i64>) -> Self {
        Multidegree(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Multidegree(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, theta: &[i64]) -> i64 {
        debug_assert_eq!(self.0.len(), theta.len());
        self.0.iter().zip(theta).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        Multidegree(self.0.iter().map(|c| c * k).collect())
    }

    /// Appends a coordinate: `(self; last)`.
    pub fn with_last(&self, last: i64) -> Self {
        let mut c = self.0.clone();
        c.push(last);
        Multidegree(c)
    }

    /// Splits `(a; j)` into `a` and `j`.
    pub fn split_last(&self) -> (Multidegree, i64) {
        let (last, rest) = self.0.split_last().expect("nonempty multidegree");
        (Multidegree(rest.to_vec()), *last)
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("nonempty multidegree")
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Multidegree(v)
    }
}

impl<const N: usize> From<[i64; N]> for Multidegree {
    fn from(v: [i64; N]) -> Self {
        Multidegree(v.to_vec())
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.rank(), rhs.rank(), "multidegree rank mismatch");
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.rank(), rhs.rank(), "multidegree rank mismatch");
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Default box half-width for the positivity search.
pub const DEFAULT_THETA_BOUND: i64 = 10;

/// Degrees of the variables of a polynomial ring, plus an optional
/// functional theta that is strictly positive on all of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingSpec {
    rank: usize,
    var_degrees: Vec<Multidegree>,
    theta: Option<Vec<i64>>,
}

impl GradingSpec {
    /// Builds a grading. A supplied `theta` must be positive on every
    /// variable degree; otherwise one is searched for in the default box and
    /// left unset when none exists.
    pub fn new(var_degrees: Vec<Multidegree>, theta: Option<Vec<i64>>) -> Result<Self> {
        let rank = var_degrees.first().map(Multidegree::rank).unwrap_or(0);
        if rank == 0 {
            return Err(Error::mismatch("grading rank", 1, 0));
        }
        for d in &var_degrees {
            if d.rank() != rank {
                return Err(Error::mismatch("variable degree", rank, d.rank()));
            }
        }
        let theta = match theta {
            Some(t) => {
                if t.len() != rank {
                    return Err(Error::mismatch("theta", rank, t.len()));
                }
                if let Some(var) = var_degrees.iter().position(|d| d.dot(&t) <= 0) {
                    return Err(Error::ThetaNotPositive { theta: t, var });
                }
                Some(t)
            }
            None => find_positivity_functional(&var_degrees, DEFAULT_THETA_BOUND).ok(),
        };
        Ok(GradingSpec {
            rank,
            var_degrees,
            theta,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn var_degrees(&self) -> &[Multidegree] {
        &self.var_degrees
    }

    pub fn theta(&self) -> Result<&[i64]> {
        self.theta.as_deref().ok_or(Error::NotPositivelyGraded {
            bound: DEFAULT_THETA_BOUND,
        })
    }

    pub fn has_theta(&self) -> bool {
        self.theta.is_some()
    }

    /// Theta-weights of the variables, each at least 1.
    pub fn weights(&self) -> Result<Vec<i64>> {
        let t = self.theta()?;
        Ok(self.var_degrees.iter().map(|d| d.dot(t)).collect())
    }
}

/// Lexicographically smallest integer vector in the box `[-bound, bound]^t`
/// that is strictly positive on every given degree.
pub fn find_positivity_functional(degrees: &[Multidegree], bound: i64) -> Result<Vec<i64>> {
    let rank = degrees.first().map(Multidegree::rank).unwrap_or(0);
    if bound < 1 || rank == 0 {
        return Err(Error::NotPositivelyGraded { bound });
    }
    let mut theta = vec![-bound; rank];
    loop {
        if degrees.iter().all(|d| d.dot(&theta) > 0) {
            return Ok(theta);
        }
        // odometer step, last coordinate fastest
        let mut k = rank;
        loop {
            if k == 0 {
                return Err(Error::NotPositivelyGraded { bound });
            }
            k -= 1;
            if theta[k] < bound {
                theta[k] += 1;
                for c in theta.iter_mut().skip(k + 1) {
                    *c = -bound;
                }
                break;
            }
        }
    }
}
