//! Stanley decompositions: the data types, an exact certificate checker,
//! the module transformations used by the recursive constructions, and the
//! constructions themselves for cover ideals and their powers.

mod construct;
mod transforms;

pub use construct::{construct_cover, construct_cover_power};
pub use transforms::{
    colon_transform, extend_free_variables, multiply_ideal_decomposition,
    multiply_quotient_decomposition, principal_complement_decomposition,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::VarSet;
use crate::error::{Error, Result};
use crate::homology::{box_points, box_size};
use crate::monomial::{Monomial, MonomialIdeal};

/// Which module of an ideal `I` is meant: `I` itself or `S/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Ideal,
    Quotient,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::Ideal => "ideal",
            ModuleKind::Quotient => "quotient",
        })
    }
}

impl std::str::FromStr for ModuleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(ModuleKind::Ideal),
            "quotient" => Ok(ModuleKind::Quotient),
            _ => Err(Error::input(format!("unknown module kind `{s}`"))),
        }
    }
}

/// `I·K[ring]` or `K[ring]/I·K[ring]`, inside the ambient ring of `n`
/// variables. The generators of `ideal` are supported on `ring`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub n: usize,
    pub ring: VarSet,
    pub ideal: MonomialIdeal,
    pub kind: ModuleKind,
}

impl ModuleDescriptor {
    pub fn new(ideal: MonomialIdeal, kind: ModuleKind) -> Self {
        let n = ideal.n();
        ModuleDescriptor {
            n,
            ring: VarSet::full(n),
            ideal,
            kind,
        }
    }

    pub fn on_ring(ideal: MonomialIdeal, ring: VarSet, kind: ModuleKind) -> Self {
        ModuleDescriptor {
            n: ideal.n(),
            ring,
            ideal,
            kind,
        }
    }

    /// Membership of a monomial supported on `ring`.
    pub fn contains(&self, exps: &[u16]) -> bool {
        let inside = self.ideal.contains_unchecked(exps);
        match self.kind {
            ModuleKind::Ideal => inside,
            ModuleKind::Quotient => !inside,
        }
    }
}

/// Which step of a construction emitted a space, outermost last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `(1)` over an edgeless graph.
    EdgelessBase,
    /// `(x, y)` for a single edge.
    EdgeBase,
    /// Part of `u·J(G \ N[x])` (the summand avoiding `x`).
    NeighborhoodBranch,
    /// Part of `x·(J : x)`.
    DeletionBranch,
    /// Spaces covering the complement of a principal ideal.
    PrincipalComplement,
    /// Survived a colon by a variable.
    Colon,
    /// Part of the summand avoiding the current chain variable.
    ChainBranch,
    /// Part of the lower power reached at the end of the colon chain.
    ChainTerminal,
    /// Read off an interval partition of the characteristic poset.
    IntervalWitness,
}

/// The Stanley space `origin·K[free]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleySpace {
    pub origin: Monomial,
    pub free: VarSet,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<Rule>,
}

impl StanleySpace {
    pub fn new(origin: Monomial, free: VarSet) -> Self {
        StanleySpace {
            origin,
            free,
            provenance: Vec::new(),
        }
    }

    pub fn tagged(mut self, rule: Rule) -> Self {
        self.provenance.push(rule);
        self
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// `x^exps ∈ origin·K[free]`.
    pub fn contains(&self, exps: &[u16]) -> bool {
        self.origin.exponents().iter().enumerate().all(|(i, &u)| {
            if self.free.contains(i) {
                exps[i] >= u
            } else {
                exps[i] == u
            }
        })
    }

    /// A common monomial of the two spaces, if any.
    pub fn meet(&self, other: &StanleySpace) -> Option<Vec<u16>> {
        let (a, b) = (self.origin.exponents(), other.origin.exponents());
        let mut out = Vec::with_capacity(a.len());
        for i in 0..a.len() {
            let v = match (self.free.contains(i), other.free.contains(i)) {
                (false, false) if a[i] != b[i] => return None,
                (false, true) if a[i] < b[i] => return None,
                (true, false) if b[i] < a[i] => return None,
                (false, _) => a[i],
                (true, false) => b[i],
                (true, true) => a[i].max(b[i]),
            };
            out.push(v);
        }
        Some(out)
    }
}

impl fmt::Display for StanleySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.free.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}·K[{}]", self.origin, vars.join(","))
    }
}

/// A Stanley decomposition of the module described by `module`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyDecomposition {
    pub module: ModuleDescriptor,
    pub spaces: Vec<StanleySpace>,
}

/// Default cap on the number of monomials the checker enumerates.
pub const VERIFY_BOX_CAP: u64 = 5_000_000;

/// First failure found by [`verify_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Violation {
    OutsideRing { space: usize },
    NotContained { space: usize, monomial: Vec<u16> },
    Overlap { first: usize, second: usize, monomial: Vec<u16> },
    Uncovered { monomial: Vec<u16> },
    BadDescriptor { reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutsideRing { space } => write!(f, "space {space} leaves the ring"),
            Violation::NotContained { space, monomial } => {
                write!(f, "space {space} contains {monomial:?} outside the module")
            }
            Violation::Overlap {
                first,
                second,
                monomial,
            } => write!(f, "spaces {first} and {second} share {monomial:?}"),
            Violation::Uncovered { monomial } => write!(f, "{monomial:?} is not covered"),
            Violation::BadDescriptor { reason } => write!(f, "bad module descriptor: {reason}"),
        }
    }
}

impl StanleyDecomposition {
    pub fn new(module: ModuleDescriptor, spaces: Vec<StanleySpace>) -> Self {
        StanleyDecomposition { module, spaces }
    }

    /// Minimum space dimension; `None` (standing for +∞) when empty.
    pub fn sdepth(&self) -> Option<usize> {
        self.spaces.iter().map(StanleySpace::dimension).min()
    }

    /// Spaces sorted by origin, then free set.
    pub fn canonical_spaces(&self) -> Vec<(Monomial, VarSet)> {
        let mut v: Vec<_> = self
            .spaces
            .iter()
            .map(|s| (s.origin.clone(), s.free))
            .collect();
        v.sort();
        v
    }

    pub fn verify(&self) -> Result<std::result::Result<(), Violation>> {
        verify_decomposition(self)
    }
}

/// Exact check that the spaces partition the module.
///
/// Every membership predicate in play ("some generator divides", "equal to
/// the origin off `Z`", "at least the origin on `Z`") is a threshold test
/// with thresholds below `B_i = 1 + max` of the generator and origin
/// exponents at `i`. Clamping a coordinate at `B_i` therefore preserves all
/// of them, so checking coverage on the box `[0, B]` is complete.
///
/// The outer `Result` reports resource problems (box above
/// [`VERIFY_BOX_CAP`]); the inner one the first violation found.
pub fn verify_decomposition(
    d: &StanleyDecomposition,
) -> Result<std::result::Result<(), Violation>> {
    let m = &d.module;
    let n = m.n;
    if m.ideal.n() != n {
        return Ok(Err(Violation::BadDescriptor {
            reason: "ideal ambient differs".into(),
        }));
    }
    if !m.ideal.support().is_subset(m.ring) {
        return Ok(Err(Violation::BadDescriptor {
            reason: "ideal generators leave the ring".into(),
        }));
    }
    for (idx, s) in d.spaces.iter().enumerate() {
        if s.origin.n() != n || !s.origin.support().is_subset(m.ring) || !s.free.is_subset(m.ring)
        {
            return Ok(Err(Violation::OutsideRing { space: idx }));
        }
    }
    let mut bound = vec![0u16; n];
    for g in m.ideal.generators() {
        for (b, &e) in bound.iter_mut().zip(g.exponents()) {
            *b = (*b).max(e);
        }
    }
    for s in &d.spaces {
        for (b, &e) in bound.iter_mut().zip(s.origin.exponents()) {
            *b = (*b).max(e);
        }
    }
    for (i, b) in bound.iter_mut().enumerate() {
        *b = if m.ring.contains(i) {
            b.checked_add(1).ok_or(Error::ExponentOverflow)?
        } else {
            0
        };
    }

    // (a) containment, tested at the corner of each space
    for (idx, s) in d.spaces.iter().enumerate() {
        let ok = match m.kind {
            ModuleKind::Ideal => m.ideal.contains_unchecked(s.origin.exponents()),
            ModuleKind::Quotient => {
                let corner: Vec<u16> = (0..n)
                    .map(|i| {
                        if s.free.contains(i) {
                            bound[i]
                        } else {
                            s.origin.exponent(i)
                        }
                    })
                    .collect();
                if m.ideal.contains_unchecked(&corner) {
                    return Ok(Err(Violation::NotContained {
                        space: idx,
                        monomial: corner,
                    }));
                }
                true
            }
        };
        if !ok {
            return Ok(Err(Violation::NotContained {
                space: idx,
                monomial: s.origin.exponents().to_vec(),
            }));
        }
    }

    // (b) pairwise disjointness
    for i in 0..d.spaces.len() {
        for j in i + 1..d.spaces.len() {
            if let Some(w) = d.spaces[i].meet(&d.spaces[j]) {
                return Ok(Err(Violation::Overlap {
                    first: i,
                    second: j,
                    monomial: w,
                }));
            }
        }
    }

    // (c) coverage of the box
    let size = box_size(&bound);
    if size > VERIFY_BOX_CAP {
        return Err(Error::Resource {
            what: "decomposition check box".into(),
            needed: size,
            cap: VERIFY_BOX_CAP,
        });
    }
    for p in box_points(&bound) {
        let hits = d.spaces.iter().filter(|s| s.contains(&p)).count();
        let want = usize::from(m.contains(&p));
        if hits != want {
            return Ok(Err(if hits < want {
                Violation::Uncovered { monomial: p }
            } else {
                let idx = d.spaces.iter().position(|s| s.contains(&p)).unwrap();
                Violation::NotContained {
                    space: idx,
                    monomial: p,
                }
            }));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn space(s: &str, free: &[usize]) -> StanleySpace {
        StanleySpace::new(mono(s, 2), free.iter().copied().collect())
    }

    fn module(s: &str, kind: ModuleKind) -> ModuleDescriptor {
        ModuleDescriptor::new(MonomialIdeal::parse(s, 2).unwrap(), kind)
    }

    #[test]
    fn checker_accepts_standard_decomposition() {
        let d = StanleyDecomposition::new(
            module("(x1, x2)", ModuleKind::Ideal),
            vec![space("x1", &[0, 1]), space("x2", &[1])],
        );
        assert_eq!(verify_decomposition(&d).unwrap(), Ok(()));
        assert_eq!(d.sdepth(), Some(1));
    }

    #[test]
    fn checker_finds_overlap() {
        let d = StanleyDecomposition::new(
            module("(x1, x2)", ModuleKind::Ideal),
            vec![space("x1", &[0, 1]), space("x2", &[0, 1])],
        );
        assert!(matches!(
            verify_decomposition(&d).unwrap(),
            Err(Violation::Overlap { first: 0, second: 1, .. })
        ));
    }

    #[test]
    fn checker_finds_space_leaving_quotient() {
        let d = StanleyDecomposition::new(
            module("(x1)", ModuleKind::Quotient),
            vec![space("1", &[0, 1])],
        );
        assert!(matches!(
            verify_decomposition(&d).unwrap(),
            Err(Violation::NotContained { space: 0, .. })
        ));
    }

    #[test]
    fn checker_finds_gap() {
        let d = StanleyDecomposition::new(
            module("(x1, x2)", ModuleKind::Ideal),
            vec![space("x1", &[0, 1])],
        );
        assert!(matches!(
            verify_decomposition(&d).unwrap(),
            Err(Violation::Uncovered { .. })
        ));
    }

    #[test]
    fn empty_decomposition_of_zero_module() {
        let d = StanleyDecomposition::new(module("(1)", ModuleKind::Quotient), vec![]);
        assert_eq!(verify_decomposition(&d).unwrap(), Ok(()));
        assert_eq!(d.sdepth(), None);
    }

    #[test]
    fn serializes_to_json() {
        let d = StanleyDecomposition::new(
            module("(x1, x2)", ModuleKind::Ideal),
            vec![space("x1", &[0, 1]).tagged(Rule::EdgeBase)],
        );
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains(r#""origin":[1,0],"free":[0,1],"provenance":["edge-base"]"#));
        assert_eq!(serde_json::from_str::<StanleyDecomposition>(&s).unwrap(), d);
    }
}
