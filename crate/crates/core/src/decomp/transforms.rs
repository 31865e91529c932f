use super::{ModuleDescriptor, ModuleKind, Rule, StanleyDecomposition, StanleySpace};
use crate::bits::VarSet;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

fn check_in_ring(d: &StanleyDecomposition, m: &Monomial) -> Result<()> {
    if m.n() != d.module.n {
        return Err(Error::AmbientMismatch {
            left: d.module.n,
            right: m.n(),
        });
    }
    if !m.support().is_subset(d.module.ring) {
        return Err(Error::input(format!("{m} is not in the ring of the module")));
    }
    Ok(())
}

/// Adjoins the variables of `free` to the ring and to every space:
/// `uK[Z]` becomes `uK[Z ∪ F]`. Minimum dimension grows by `|F|`.
pub fn extend_free_variables(d: &StanleyDecomposition, free: VarSet) -> Result<StanleyDecomposition> {
    if !free.is_disjoint(d.module.ring) {
        return Err(Error::input("extension variables overlap the ring"));
    }
    if !free.is_subset(VarSet::full(d.module.n)) {
        return Err(Error::input("extension variables outside the ambient"));
    }
    let module = ModuleDescriptor {
        ring: d.module.ring.union(free),
        ..d.module.clone()
    };
    let spaces = d
        .spaces
        .iter()
        .map(|s| StanleySpace {
            free: s.free.union(free),
            ..s.clone()
        })
        .collect();
    Ok(StanleyDecomposition { module, spaces })
}

/// Multiplies every origin by `m`; the module is left for the caller.
pub(crate) fn shift_spaces(spaces: &[StanleySpace], m: &Monomial) -> Result<Vec<StanleySpace>> {
    spaces
        .iter()
        .map(|s| {
            Ok(StanleySpace {
                origin: s.origin.mul(m)?,
                ..s.clone()
            })
        })
        .collect()
}

/// From a decomposition of `I` to one of `m·I`, with the same free sets.
pub fn multiply_ideal_decomposition(d: &StanleyDecomposition, m: &Monomial) -> Result<StanleyDecomposition> {
    if d.module.kind != ModuleKind::Ideal {
        return Err(Error::input("multiply_ideal_decomposition needs an ideal module"));
    }
    check_in_ring(d, m)?;
    Ok(StanleyDecomposition {
        module: ModuleDescriptor {
            ideal: d.module.ideal.multiply_monomial(m)?,
            ..d.module.clone()
        },
        spaces: shift_spaces(&d.spaces, m)?,
    })
}

/// The complement of `(u)` in `K[ring]`, split by the first variable `x_i`
/// (in index order) whose exponent falls below `c_i = deg_{x_i} u`:
/// `x_{<i}^{c_{<i}}·x_i^j·K[ring \ x_i]` for `0 ≤ j < c_i`. Every space has
/// dimension `|ring| - 1`; `u = 1` gives the empty decomposition of `0`.
pub fn principal_complement_decomposition(
    ring: VarSet,
    u: &Monomial,
) -> Result<StanleyDecomposition> {
    let n = u.n();
    if !u.support().is_subset(ring) {
        return Err(Error::input(format!("{u} is not in the ring")));
    }
    let mut spaces = Vec::new();
    let mut prefix = vec![0u16; n];
    for i in u.support() {
        let c = u.exponent(i);
        for j in 0..c {
            let mut origin = prefix.clone();
            origin[i] = j;
            spaces.push(
                StanleySpace::new(Monomial::from_exponents(origin)?, ring.without(i))
                    .tagged(Rule::PrincipalComplement),
            );
        }
        prefix[i] = c;
    }
    Ok(StanleyDecomposition {
        module: ModuleDescriptor::on_ring(
            MonomialIdeal::principal(u.clone()),
            ring,
            ModuleKind::Quotient,
        ),
        spaces,
    })
}

/// From a decomposition of `S/I` to one of `S/(m·I)`, using
/// `S/(mI) = S/(m) ⊕ m·(S/I)`.
pub fn multiply_quotient_decomposition(
    d: &StanleyDecomposition,
    m: &Monomial,
) -> Result<StanleyDecomposition> {
    if d.module.kind != ModuleKind::Quotient {
        return Err(Error::input("multiply_quotient_decomposition needs a quotient module"));
    }
    check_in_ring(d, m)?;
    if m.is_one() {
        return Ok(d.clone());
    }
    let mut spaces = principal_complement_decomposition(d.module.ring, m)?.spaces;
    spaces.extend(shift_spaces(&d.spaces, m)?);
    Ok(StanleyDecomposition {
        module: ModuleDescriptor {
            ideal: d.module.ideal.multiply_monomial(m)?,
            ..d.module.clone()
        },
        spaces,
    })
}

/// From a decomposition of `I` (or `S/I`) to one of `(I : x_v)` (or
/// `S/(I : x_v)`). Per space: divide the origin by `x_v` when possible, keep
/// it when `x_v` is free, otherwise drop it. Free sets never shrink.
pub fn colon_transform(d: &StanleyDecomposition, v: usize) -> Result<StanleyDecomposition> {
    if !d.module.ring.contains(v) {
        return Err(Error::input(format!("x{} is not in the ring", v + 1)));
    }
    let xv = Monomial::var(d.module.n, v)?;
    let mut spaces = Vec::with_capacity(d.spaces.len());
    for s in &d.spaces {
        if let Some(q) = s.origin.div(&xv) {
            spaces.push(StanleySpace {
                origin: q,
                ..s.clone()
            });
        } else if s.free.contains(v) {
            spaces.push(s.clone());
        }
    }
    for s in &mut spaces {
        s.provenance.push(Rule::Colon);
    }
    Ok(StanleyDecomposition {
        module: ModuleDescriptor {
            ideal: d.module.ideal.colon(&xv)?,
            ..d.module.clone()
        },
        spaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::verify_decomposition;

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    fn set(v: &[usize]) -> VarSet {
        v.iter().copied().collect()
    }

    fn dec(n: usize, ring: &[usize], ideal: &str, kind: ModuleKind, spaces: &[(&str, &[usize])]) -> StanleyDecomposition {
        StanleyDecomposition::new(
            ModuleDescriptor::on_ring(MonomialIdeal::parse(ideal, n).unwrap(), set(ring), kind),
            spaces
                .iter()
                .map(|(o, z)| StanleySpace::new(mono(o, n), set(z)))
                .collect(),
        )
    }

    fn verified(d: &StanleyDecomposition) {
        assert_eq!(verify_decomposition(d).unwrap(), Ok(()), "{d:?}");
    }

    #[test]
    fn extend_examples() {
        // (y) ⊂ K[y], extended by x
        let d = dec(2, &[1], "(x2)", ModuleKind::Ideal, &[("x2", &[1])]);
        verified(&d);
        let e = extend_free_variables(&d, set(&[0])).unwrap();
        verified(&e);
        assert_eq!(e.canonical_spaces(), vec![(mono("x2", 2), set(&[0, 1]))]);
        assert_eq!(extend_free_variables(&d, VarSet::EMPTY).unwrap(), d);
        assert!(extend_free_variables(&d, set(&[1])).is_err());
    }

    #[test]
    fn multiply_ideal_examples() {
        let d = dec(1, &[0], "(1)", ModuleKind::Ideal, &[("1", &[0])]);
        let m = multiply_ideal_decomposition(&d, &mono("x1^2", 1)).unwrap();
        verified(&m);
        assert_eq!(m.canonical_spaces(), vec![(mono("x1^2", 1), set(&[0]))]);
        assert_eq!(multiply_ideal_decomposition(&d, &Monomial::one(1)).unwrap(), d);
    }

    #[test]
    fn principal_complement_examples() {
        let d = principal_complement_decomposition(set(&[0, 1, 2]), &mono("x1^2*x2", 3)).unwrap();
        verified(&d);
        assert_eq!(
            d.canonical_spaces(),
            vec![
                (mono("1", 3), set(&[1, 2])),
                (mono("x1", 3), set(&[1, 2])),
                (mono("x1^2", 3), set(&[0, 2])),
            ]
        );
        let d = principal_complement_decomposition(set(&[0, 1]), &mono("x1", 2)).unwrap();
        assert_eq!(d.canonical_spaces(), vec![(mono("1", 2), set(&[1]))]);
        let d = principal_complement_decomposition(set(&[0, 1]), &Monomial::one(2)).unwrap();
        assert!(d.spaces.is_empty());
        verified(&d);
    }

    #[test]
    fn multiply_quotient_examples() {
        // S/(y) decomposed as {1·K[x]}; times x gives S/(xy)
        let d = dec(2, &[0, 1], "(x2)", ModuleKind::Quotient, &[("1", &[0])]);
        verified(&d);
        let m = multiply_quotient_decomposition(&d, &mono("x1", 2)).unwrap();
        verified(&m);
        assert_eq!(m.module.ideal, MonomialIdeal::parse("(x1*x2)", 2).unwrap());
        assert_eq!(m.canonical_spaces(), vec![(mono("1", 2), set(&[1])), (mono("x1", 2), set(&[0]))]);
        assert_eq!(multiply_quotient_decomposition(&d, &Monomial::one(2)).unwrap(), d);
        // S/(x,y) times x^2 gives S/(x^3, x^2 y)
        let d = dec(2, &[0, 1], "(x1, x2)", ModuleKind::Quotient, &[("1", &[])]);
        let m = multiply_quotient_decomposition(&d, &mono("x1^2", 2)).unwrap();
        verified(&m);
        assert_eq!(m.module.ideal, MonomialIdeal::parse("(x1^3, x1^2*x2)", 2).unwrap());
    }

    #[test]
    fn colon_examples() {
        let d = dec(2, &[0, 1], "(x1, x2)", ModuleKind::Ideal, &[("x1", &[0, 1]), ("x2", &[1])]);
        let c = colon_transform(&d, 0).unwrap();
        verified(&c);
        assert!(c.module.ideal.is_unit());
        assert_eq!(c.canonical_spaces(), vec![(mono("1", 2), set(&[0, 1]))]);

        let d = dec(2, &[0, 1], "(x1*x2)", ModuleKind::Ideal, &[("x1*x2", &[0, 1])]);
        let c = colon_transform(&d, 1).unwrap();
        verified(&c);
        assert_eq!(c.canonical_spaces(), vec![(mono("x1", 2), set(&[0, 1]))]);

        let d = dec(2, &[0, 1], "(x1, x2)", ModuleKind::Quotient, &[("1", &[])]);
        let c = colon_transform(&d, 0).unwrap();
        verified(&c);
        assert!(c.spaces.is_empty());
    }
}
