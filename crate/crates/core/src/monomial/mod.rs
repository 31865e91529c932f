//! Monomials as exponent vectors, and monomial ideals in canonical form.

mod ideal;
mod text;

pub use ideal::MonomialIdeal;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{VarSet, MAX_VARS};
use crate::error::{Error, Result};

/// A monomial `x^a` in `n` variables. Exponents are `u16`; every arithmetic
/// operation is checked and reports [`Error::ExponentOverflow`] instead of
/// wrapping.
///
/// The derived ordering is lexicographic on the exponent vector, which is the
/// canonical generator order of [`MonomialIdeal`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::VertexOutOfRange { vertex: i, n });
        }
        let mut exps = vec![0; n];
        exps[i] = 1;
        Ok(Monomial { exps })
    }

    pub fn from_exponents(exps: Vec<u16>) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: exps.len(),
                max: MAX_VARS,
            });
        }
        Ok(Monomial { exps })
    }

    /// The squarefree monomial `∏_{i ∈ set} x_i`.
    pub fn squarefree(n: usize, set: VarSet) -> Self {
        let exps = (0..n).map(|i| u16::from(set.contains(i))).collect();
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> VarSet {
        (0..self.n()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub(crate) fn check_same(&self, other: &Monomial) -> Result<()> {
        if self.n() != other.n() {
            Err(Error::AmbientMismatch {
                left: self.n(),
                right: other.n(),
            })
        } else {
            Ok(())
        }
    }

    /// `self | other`. Both must live in the same ring.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let k = u16::try_from(k).map_err(|_| Error::ExponentOverflow)?;
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Ok(Monomial { exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Ok(Monomial { exps })
    }

    /// `self / gcd(self, m)`.
    pub fn colon(&self, m: &Monomial) -> Result<Monomial> {
        self.check_same(m)?;
        let exps = self
            .exps
            .iter()
            .zip(&m.exps)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        Ok(Monomial { exps })
    }

    /// Exact division; `None` when `m` does not divide `self`.
    pub fn div(&self, m: &Monomial) -> Option<Monomial> {
        if self.n() != m.n() || !m.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&m.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps })
    }

    /// Re-embeds into an ambient ring of `n` variables, sending variable `i`
    /// to `map[i]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> Result<Monomial> {
        if map.len() != self.n() {
            return Err(Error::input("embedding map has the wrong length"));
        }
        let mut exps = vec![0u16; n];
        for (i, &e) in self.exps.iter().enumerate() {
            let j = map[i];
            if j >= n {
                return Err(Error::VertexOutOfRange { vertex: j, n });
            }
            exps[j] = e;
        }
        Ok(Monomial { exps })
    }
}

impl fmt::Display for Monomial {
    /// `x1^2*x3` with 1-based variable names; `1` for the unit monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
