use serde::{Deserialize, Serialize};

use crate::bits::VarSet;
use crate::decomp::{ModuleDescriptor, ModuleKind, Rule, StanleyDecomposition, StanleySpace};
use crate::error::{Error, Result};
use crate::homology::{box_points, box_size};
use crate::monomial::{Monomial, MonomialIdeal};

/// Largest box `[0, g]` the exact solver will materialize.
pub const POSET_BOX_CAP: u64 = 2_000_000;

pub(crate) const ABSENT: u32 = u32::MAX;

/// The exponent vectors `a ≤ g` with `x^a ∈ I` (ideal mode) or `x^a ∉ I`
/// (quotient mode), where `g` is the lcm exponent vector of `I`, listed in
/// graded lexicographic order.
#[derive(Debug, Clone)]
pub struct CharacteristicPoset {
    pub(crate) bound: Vec<u16>,
    pub(crate) kind: ModuleKind,
    pub(crate) elements: Vec<Vec<u16>>,
    pub(crate) strides: Vec<usize>,
    /// box code -> element index, or `ABSENT`
    pub(crate) index: Vec<u32>,
}

pub(crate) fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::domain("the zero ideal has no characteristic poset"));
    }
    if ideal.is_unit() {
        return Err(Error::domain("the unit ideal has no characteristic poset"));
    }
    Ok(())
}

impl CharacteristicPoset {
    pub fn new(ideal: &MonomialIdeal, kind: ModuleKind) -> Result<Self> {
        check_proper(ideal)?;
        let bound = ideal.lcm_exponents();
        let size = box_size(&bound);
        if size > POSET_BOX_CAP {
            return Err(Error::Resource {
                what: "characteristic poset box".into(),
                needed: size,
                cap: POSET_BOX_CAP,
            });
        }
        let mut strides = Vec::with_capacity(bound.len());
        let mut s = 1usize;
        for &b in &bound {
            strides.push(s);
            s *= usize::from(b) + 1;
        }
        let mut elements: Vec<Vec<u16>> = box_points(&bound)
            .filter(|a| ideal.contains_unchecked(a) == (kind == ModuleKind::Ideal))
            .collect();
        elements.sort_by(|a, b| {
            let da: u32 = a.iter().map(|&e| u32::from(e)).sum();
            let db: u32 = b.iter().map(|&e| u32::from(e)).sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        let mut index = vec![ABSENT; size as usize];
        for (i, a) in elements.iter().enumerate() {
            index[code(&strides, a)] = i as u32;
        }
        Ok(CharacteristicPoset {
            bound,
            kind,
            elements,
            strides,
            index,
        })
    }

    pub fn bound(&self) -> &[u16] {
        &self.bound
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<u16>] {
        &self.elements
    }

    /// `ρ(b) = |{i : b_i = g_i}|`.
    pub fn rho(&self, b: &[u16]) -> usize {
        rho(&self.bound, b)
    }

    pub(crate) fn code(&self, a: &[u16]) -> usize {
        code(&self.strides, a)
    }
}

fn code(strides: &[usize], a: &[u16]) -> usize {
    a.iter().zip(strides).map(|(&e, &s)| usize::from(e) * s).sum()
}

fn rho(bound: &[u16], b: &[u16]) -> usize {
    b.iter().zip(bound).filter(|(x, g)| x == g).count()
}

/// Intervals `[a, b]` of a characteristic poset, as exponent-vector pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub kind: ModuleKind,
    pub bound: Vec<u16>,
    pub intervals: Vec<(Vec<u16>, Vec<u16>)>,
}

impl IntervalPartition {
    /// Smallest `ρ(b)` over the interval tops; `None` for no intervals.
    pub fn min_rho(&self) -> Option<usize> {
        self.intervals.iter().map(|(_, b)| rho(&self.bound, b)).min()
    }

    /// Checks against `ideal` from scratch: the bound is the lcm of `I`,
    /// every interval lies in the poset, intervals are disjoint, and they
    /// cover every poset element. Returns a description of the first problem.
    pub fn verify(&self, ideal: &MonomialIdeal) -> Result<std::result::Result<(), String>> {
        check_proper(ideal)?;
        let bound = ideal.lcm_exponents();
        if bound != self.bound {
            return Ok(Err(format!("bound {:?} is not the lcm {:?}", self.bound, bound)));
        }
        let size = box_size(&bound);
        if size > POSET_BOX_CAP {
            return Err(Error::Resource {
                what: "characteristic poset box".into(),
                needed: size,
                cap: POSET_BOX_CAP,
            });
        }
        let want = self.kind == ModuleKind::Ideal;
        let mut hits: Vec<(Vec<u16>, u32)> = box_points(&bound)
            .filter(|a| ideal.contains_unchecked(a) == want)
            .map(|a| (a, 0))
            .collect();
        hits.sort();
        for (a, b) in &self.intervals {
            if a.len() != bound.len() || b.len() != bound.len() {
                return Ok(Err(format!("interval [{a:?}, {b:?}] has the wrong length")));
            }
            if a.iter().zip(b).any(|(x, y)| x > y) || b.iter().zip(&bound).any(|(x, g)| x > g) {
                return Ok(Err(format!("[{a:?}, {b:?}] is not an interval of the box")));
            }
            let lens: Vec<u16> = a.iter().zip(b).map(|(x, y)| y - x).collect();
            for off in box_points(&lens) {
                let c: Vec<u16> = a.iter().zip(&off).map(|(x, o)| x + o).collect();
                match hits.binary_search_by(|(p, _)| p.cmp(&c)) {
                    Ok(i) => {
                        hits[i].1 += 1;
                        if hits[i].1 > 1 {
                            return Ok(Err(format!("{c:?} is covered twice")));
                        }
                    }
                    Err(_) => return Ok(Err(format!("{c:?} is not in the poset"))),
                }
            }
        }
        if let Some((c, _)) = hits.iter().find(|(_, h)| *h == 0) {
            return Ok(Err(format!("{c:?} is not covered")));
        }
        Ok(Ok(()))
    }

    /// `[a, b] ↦ x^a K[{j : b_j = g_j}]`, a Stanley decomposition of `I` or
    /// `S/I` with the same minimum dimension as `min_rho`.
    pub fn to_decomposition(&self, ideal: &MonomialIdeal) -> Result<StanleyDecomposition> {
        let n = ideal.n();
        let spaces = self
            .intervals
            .iter()
            .map(|(a, b)| {
                let free: VarSet = (0..n).filter(|&j| b[j] == self.bound[j]).collect();
                Ok(StanleySpace::new(Monomial::from_exponents(a.clone())?, free)
                    .tagged(Rule::IntervalWitness))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StanleyDecomposition::new(
            ModuleDescriptor::new(ideal.clone(), self.kind),
            spaces,
        ))
    }
}
