use std::fmt;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::bits::VarSet;
use crate::error::{Error, Result};

/// A monomial ideal stored by its minimal generators in ascending
/// lexicographic order. The zero ideal has no generators; the unit ideal is
/// generated by `1`. Two ideals are equal iff their generator lists are.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal", into = "RawIdeal")]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct RawIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: RawIdeal) -> Result<Self> {
        MonomialIdeal::minimalize(raw.n, raw.generators)
    }
}

impl From<MonomialIdeal> for RawIdeal {
    fn from(i: MonomialIdeal) -> Self {
        RawIdeal {
            n: i.n,
            generators: i.gens,
        }
    }
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal {
            n: m.n(),
            gens: vec![m],
        }
    }

    /// `(x_i : i ∈ set)`.
    pub fn variables(n: usize, set: VarSet) -> Self {
        let gens = set
            .iter()
            .rev()
            .map(|i| Monomial::squarefree(n, VarSet::singleton(i)))
            .collect();
        MonomialIdeal { n, gens }
    }

    /// Minimal, deduplicated, canonically sorted generating set of the ideal
    /// generated by `gens`.
    pub fn minimalize(n: usize, mut gens: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::AmbientMismatch {
                left: n,
                right: bad.n(),
            });
        }
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort();
        Ok(MonomialIdeal { n, gens: kept })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.n != other.n {
            Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Ideal membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: m.n(),
            });
        }
        Ok(self.contains_unchecked(m.exponents()))
    }

    /// Membership test on a raw exponent vector of the right length.
    #[inline]
    pub fn contains_unchecked(&self, exps: &[u16]) -> bool {
        self.gens
            .iter()
            .any(|g| g.exponents().iter().zip(exps).all(|(a, b)| a <= b))
    }

    /// Canonical-form equality with an ambient check.
    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self == other)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g.exponents())))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        MonomialIdeal::minimalize(self.n, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        MonomialIdeal::minimalize(self.n, gens)
    }

    pub fn multiply_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.mul(m))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// Generated by the pairwise lcms of generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b)?);
            }
        }
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// `(self : m)`, generated by `g / gcd(g, m)`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        if m.n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: m.n(),
            });
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.colon(m))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// `self^k`, with `self^0` the unit ideal. Each step multiplies by the
    /// generators once more and re-minimalizes.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Ok(MonomialIdeal::unit(self.n));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Alexander dual of a squarefree ideal: the intersection over generators
    /// `m` of the prime `(x_i : i ∈ supp m)`.
    pub fn alexander_dual(&self) -> Result<MonomialIdeal> {
        if !self.is_squarefree() {
            return Err(Error::domain("Alexander dual needs a squarefree ideal"));
        }
        let mut acc = MonomialIdeal::unit(self.n);
        for g in &self.gens {
            acc = acc.intersect(&MonomialIdeal::variables(self.n, g.support()))?;
        }
        Ok(acc)
    }

    /// Componentwise maximum of the generator exponents (the exponent of the
    /// lcm of all minimal generators).
    pub fn lcm_exponents(&self) -> Vec<u16> {
        let mut out = vec![0u16; self.n];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// Variables appearing in some generator.
    pub fn support(&self) -> VarSet {
        self.gens
            .iter()
            .fold(VarSet::EMPTY, |acc, g| acc.union(g.support()))
    }

    /// Re-embeds into `n` variables, sending variable `i` to `map[i]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> Result<MonomialIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed(n, map))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(n, gens)
    }

    /// `self ∩ K[ring]`: the generators supported on `ring`.
    pub fn restrict(&self, ring: VarSet) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .filter(|g| g.support().is_subset(ring))
            .cloned()
            .collect();
        MonomialIdeal { n: self.n, gens }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec()).unwrap()
    }

    fn ideal(n: usize, gens: &[&[u16]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| m(g)).collect()).unwrap()
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(2, &[&[1, 0], &[2, 0], &[1, 1]]), ideal(2, &[&[1, 0]]));
        assert_eq!(
            ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 1, 1, 0]]).generators(),
            &[m(&[0, 1, 0, 1]), m(&[1, 0, 1, 0])]
        );
        assert!(MonomialIdeal::minimalize(3, vec![]).unwrap().is_zero());
        assert!(MonomialIdeal::minimalize(2, vec![m(&[1])]).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = ideal(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = ideal(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), ideal(3, &[&[0, 1, 0], &[1, 0, 1]]));
        let x = ideal(1, &[&[1]]);
        assert_eq!(x.intersect(&MonomialIdeal::unit(1)).unwrap(), x);
        let a = ideal(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let b = ideal(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(
            a.intersect(&b).unwrap(),
            ideal(
                4,
                &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]
            )
        );
    }

    #[test]
    fn colon_examples() {
        let j = ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(
            j.colon(&m(&[1, 0, 0, 0])).unwrap(),
            ideal(4, &[&[0, 0, 1, 0], &[0, 1, 0, 1]])
        );
        let sq = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(sq.colon(&m(&[1, 0])).unwrap(), ideal(2, &[&[1, 0], &[0, 1]]));
        let xy = ideal(2, &[&[1, 0], &[0, 1]]);
        assert!(xy.colon(&m(&[1, 0])).unwrap().is_unit());
    }

    #[test]
    fn power_examples() {
        let xy = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(xy.power(2).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        let j = ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(
            j.power(2).unwrap(),
            ideal(4, &[&[2, 0, 2, 0], &[1, 1, 1, 1], &[0, 2, 0, 2]])
        );
        assert_eq!(j.power(1).unwrap(), j);
        assert!(j.power(0).unwrap().is_unit());
    }

    #[test]
    fn membership_and_equality() {
        assert!(!MonomialIdeal::zero(2).contains(&Monomial::one(2)).unwrap());
        let a = ideal(2, &[&[1, 0], &[0, 1]]);
        let b = ideal(2, &[&[0, 1], &[1, 0]]);
        assert!(a.equals(&b).unwrap());
        assert!(!ideal(1, &[&[1]]).equals(&ideal(1, &[&[2]])).unwrap());
        assert!(a.equals(&MonomialIdeal::zero(3)).is_err());
    }

    #[test]
    fn alexander_dual_examples() {
        assert_eq!(
            ideal(2, &[&[1, 1]]).alexander_dual().unwrap(),
            ideal(2, &[&[1, 0], &[0, 1]])
        );
        let c4 = ideal(
            4,
            &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]],
        );
        assert_eq!(
            c4.alexander_dual().unwrap(),
            ideal(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]])
        );
        let p3 = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(p3.alexander_dual().unwrap().alexander_dual().unwrap(), p3);
        assert!(ideal(1, &[&[2]]).alexander_dual().is_err());
        assert!(MonomialIdeal::zero(2).alexander_dual().unwrap().is_unit());
        assert!(MonomialIdeal::unit(2).alexander_dual().unwrap().is_zero());
    }

    #[test]
    fn serde_canonicalizes() {
        let s = r#"{"n":2,"generators":[[0,1],[1,1],[1,0]]}"#;
        let i: MonomialIdeal = serde_json::from_str(s).unwrap();
        assert_eq!(i, ideal(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(
            serde_json::to_string(&i).unwrap(),
            r#"{"n":2,"generators":[[0,1],[1,0]]}"#
        );
    }

    fn arb_ideal(n: usize, max_exp: u16, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 0..=max_gens).prop_map(
            move |gens| {
                MonomialIdeal::minimalize(
                    n,
                    gens.into_iter()
                        .map(|e| Monomial::from_exponents(e).unwrap())
                        .collect(),
                )
                .unwrap()
            },
        )
    }

    fn arb_monomial(n: usize, max_exp: u16) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0..=max_exp, n).prop_map(|e| Monomial::from_exponents(e).unwrap())
    }

    fn box_points(n: usize, bound: u16) -> Vec<Vec<u16>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=bound).map(move |e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
        }
        out
    }

    proptest! {
        #[test]
        fn minimalize_is_idempotent(a in arb_ideal(3, 3, 6)) {
            let again = MonomialIdeal::minimalize(3, a.generators().to_vec()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn colon_contains_ideal(a in arb_ideal(3, 3, 5), x in arb_monomial(3, 2), y in arb_monomial(3, 2)) {
            let c = a.colon(&x).unwrap();
            prop_assert!(a.is_subset_of(&c).unwrap());
            for g in a.generators() {
                prop_assert!(a.contains(&g.mul(&x).unwrap()).unwrap());
            }
            let chain = a.colon(&x).unwrap().colon(&y).unwrap();
            prop_assert_eq!(a.colon(&x.mul(&y).unwrap()).unwrap(), chain);
        }

        #[test]
        fn intersect_matches_box_membership(a in arb_ideal(4, 2, 4), b in arb_ideal(4, 2, 4)) {
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(&i, &b.intersect(&a).unwrap());
            for p in box_points(4, 3) {
                let both = a.contains_unchecked(&p) && b.contains_unchecked(&p);
                prop_assert_eq!(i.contains_unchecked(&p), both);
            }
        }

        #[test]
        fn alexander_dual_is_involutive(a in arb_ideal(6, 1, 6)) {
            let dd = a.alexander_dual().unwrap().alexander_dual().unwrap();
            prop_assert_eq!(dd, a);
        }
    }
}
