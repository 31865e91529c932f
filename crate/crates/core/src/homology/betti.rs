use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::{Field, SimplicialComplex};
use crate::bits::VarSet;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Default cap on the number of multidegrees in the lcm box.
pub const DEFAULT_MULTIDEGREE_CAP: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiConfig {
    pub field: Field,
    pub max_multidegrees: u64,
    /// Skip multidegrees outside the lcm lattice (their upper Koszul complex
    /// is a cone).
    pub lattice_pruning: bool,
}

impl Default for BettiConfig {
    fn default() -> Self {
        BettiConfig {
            field: Field::Rationals,
            max_multidegrees: DEFAULT_MULTIDEGREE_CAP,
            lattice_pruning: true,
        }
    }
}

impl BettiConfig {
    pub fn with_field(self, field: Field) -> Self {
        BettiConfig { field, ..self }
    }
}

/// Multigraded Betti numbers `β_{i,a}(I)` of an ideal `I`. Only nonzero
/// entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub n: usize,
    pub field: Field,
    #[serde(with = "entry_list")]
    pub entries: BTreeMap<(usize, Vec<u16>), u64>,
}

mod entry_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        i: usize,
        multidegree: Vec<u16>,
        rank: u64,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(usize, Vec<u16>), u64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter().map(|((i, a), &rank)| Entry {
            i: *i,
            multidegree: a.clone(),
            rank,
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(usize, Vec<u16>), u64>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter().map(|e| ((e.i, e.multidegree), e.rank)).collect())
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, a: &[u16]) -> u64 {
        self.entries.get(&(i, a.to_vec())).copied().unwrap_or(0)
    }

    /// Total Betti numbers `(β_0, β_1, ...)`.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (&(i, _), &r) in &self.entries {
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += r;
        }
        out
    }

    /// Graded Betti numbers `β_{i,j}` keyed by `(i, j)`.
    pub fn graded(&self) -> BTreeMap<(usize, u64), u64> {
        let mut out = BTreeMap::new();
        for ((i, a), &r) in &self.entries {
            let j = a.iter().map(|&e| u64::from(e)).sum();
            *out.entry((*i, j)).or_insert(0) += r;
        }
        out
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn regularity(&self) -> Option<i64> {
        self.entries
            .keys()
            .map(|(i, a)| a.iter().map(|&e| i64::from(e)).sum::<i64>() - *i as i64)
            .max()
    }

    /// Betti table of `S/I`: `β_{i,a}(S/I) = β_{i-1,a}(I)` plus `β_{0,0} = 1`.
    pub fn to_quotient(&self) -> BettiTable {
        let mut entries: BTreeMap<_, _> = self
            .entries
            .iter()
            .map(|((i, a), &r)| ((i + 1, a.clone()), r))
            .collect();
        entries.insert((0, vec![0; self.n]), 1);
        BettiTable {
            n: self.n,
            field: self.field,
            entries,
        }
    }
}

/// The upper Koszul simplicial complex of `ideal` at multidegree `a`: faces
/// are the `W ⊆ supp(a)` with `x^a / x^W ∈ ideal`.
pub fn upper_koszul_complex(a: &Monomial, ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if a.n() != ideal.n() {
        return Err(Error::AmbientMismatch {
            left: ideal.n(),
            right: a.n(),
        });
    }
    Ok(koszul(a.exponents(), ideal))
}

fn koszul(a: &[u16], ideal: &MonomialIdeal) -> SimplicialComplex {
    let n = a.len();
    let supp: VarSet = (0..n).filter(|&i| a[i] > 0).collect();
    let mut buf = a.to_vec();
    SimplicialComplex::from_predicate(n, supp, |w| {
        for i in w.iter() {
            buf[i] = a[i] - 1;
        }
        let inside = ideal.contains_unchecked(&buf);
        for i in w.iter() {
            buf[i] = a[i];
        }
        inside
    })
}

fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::domain("Betti numbers of the zero ideal"));
    }
    if ideal.is_unit() {
        return Err(Error::domain("Betti numbers of the unit ideal"));
    }
    Ok(())
}

/// All points of the box `[0, bound]`, in mixed-radix order.
pub(crate) fn box_points(bound: &[u16]) -> impl Iterator<Item = Vec<u16>> + '_ {
    let total: u64 = bound.iter().map(|&b| u64::from(b) + 1).product();
    (0..total).map(move |mut idx| {
        bound
            .iter()
            .map(|&b| {
                let r = u64::from(b) + 1;
                let v = (idx % r) as u16;
                idx /= r;
                v
            })
            .collect()
    })
}

pub(crate) fn box_size(bound: &[u16]) -> u64 {
    bound
        .iter()
        .map(|&b| u64::from(b) + 1)
        .fold(1u64, |acc, r| acc.saturating_mul(r))
}

pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    betti_table_with(ideal, &BettiConfig::default())
}

/// `β_{i,a}(I) = dim H̃_{i-1}(K^a(I))` over every `a` in the lcm box.
pub fn betti_table_with(ideal: &MonomialIdeal, cfg: &BettiConfig) -> Result<BettiTable> {
    check_proper(ideal)?;
    let bound = ideal.lcm_exponents();
    let size = box_size(&bound);
    if size > cfg.max_multidegrees {
        return Err(Error::Resource {
            what: "multidegree box".into(),
            needed: size,
            cap: cfg.max_multidegrees,
        });
    }
    let points: Vec<Vec<u16>> = box_points(&bound).collect();
    let per_point: Vec<Vec<((usize, Vec<u16>), u64)>> = points
        .into_par_iter()
        .map(|a| -> Result<Vec<_>> {
            if !ideal.contains_unchecked(&a) {
                return Ok(Vec::new());
            }
            if cfg.lattice_pruning && !in_lcm_lattice(&a, ideal) {
                return Ok(Vec::new());
            }
            let h = koszul(&a, ideal).reduced_homology(cfg.field)?;
            // h[d + 1] = dim H̃_d, contributing to β_{d+1}
            Ok(h
                .iter()
                .enumerate()
                .filter(|(_, &r)| r > 0)
                .map(|(s, &r)| ((s, a.clone()), r as u64))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(BettiTable {
        n: ideal.n(),
        field: cfg.field,
        entries: per_point.into_iter().flatten().collect(),
    })
}

/// `a` is the lcm of the generators dividing it.
fn in_lcm_lattice(a: &[u16], ideal: &MonomialIdeal) -> bool {
    let mut l = vec![0u16; a.len()];
    for g in ideal.generators() {
        let e = g.exponents();
        if e.iter().zip(a).all(|(x, y)| x <= y) {
            for (li, &ei) in l.iter_mut().zip(e) {
                *li = (*li).max(ei);
            }
        }
    }
    l == a
}

/// Computes the table over `Q` and over `GF(32003)` and fails with
/// [`Error::FieldDisagreement`] if they differ anywhere.
pub fn betti_table_cross_checked(ideal: &MonomialIdeal, cfg: &BettiConfig) -> Result<BettiTable> {
    let q = betti_table_with(ideal, &cfg.with_field(Field::Rationals))?;
    let p = betti_table_with(ideal, &cfg.with_field(Field::DEFAULT_PRIME))?;
    if q.entries != p.entries {
        return Err(Error::FieldDisagreement(format!(
            "Betti tables of {ideal} differ between Q and GF(32003)"
        )));
    }
    Ok(q)
}

/// Projective dimension, depth and regularity of `I` and `S/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologicalInvariants {
    pub pd_ideal: usize,
    pub pd_quotient: usize,
    pub depth_ideal: usize,
    pub depth_quotient: usize,
    pub reg_ideal: i64,
    pub reg_quotient: i64,
}

impl HomologicalInvariants {
    pub fn from_table(t: &BettiTable) -> Result<Self> {
        let pd = t
            .projective_dimension()
            .ok_or_else(|| Error::domain("empty Betti table"))?;
        let reg = t.regularity().expect("nonempty table");
        Ok(HomologicalInvariants {
            pd_ideal: pd,
            pd_quotient: pd + 1,
            depth_ideal: t.n - pd,
            depth_quotient: t.n - pd - 1,
            reg_ideal: reg,
            reg_quotient: reg - 1,
        })
    }
}

pub fn homological_invariants(ideal: &MonomialIdeal) -> Result<HomologicalInvariants> {
    HomologicalInvariants::from_table(&betti_table(ideal)?)
}

pub fn homological_invariants_with(
    ideal: &MonomialIdeal,
    cfg: &BettiConfig,
) -> Result<HomologicalInvariants> {
    HomologicalInvariants::from_table(&betti_table_with(ideal, cfg)?)
}
