//! Text syntax: `x1^2*x3` (1-based variables, `1` for the unit) or an
//! exponent array `[2,0,1]`. Ideals are `(m1, m2, ...)` or an array of
//! exponent arrays.

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

impl Monomial {
    /// Parses a monomial in `n` variables.
    pub fn parse(text: &str, n: usize) -> Result<Monomial> {
        let t = text.trim();
        let offset = text.len() - text.trim_start().len();
        if t.starts_with('[') {
            let exps: Vec<u16> = serde_json::from_str(t)
                .map_err(|e| Error::parse(1, offset + e.column(), e.to_string()))?;
            if exps.len() != n {
                return Err(Error::AmbientMismatch {
                    left: n,
                    right: exps.len(),
                });
            }
            return Monomial::from_exponents(exps);
        }
        if t == "1" {
            return Ok(Monomial::one(n));
        }
        let mut exps = vec![0u16; n];
        let mut col = offset + 1;
        for factor in t.split('*') {
            let f = factor.trim();
            let fcol = col + (factor.len() - factor.trim_start().len());
            let rest = f
                .strip_prefix('x')
                .ok_or_else(|| Error::parse(1, fcol, format!("expected `x<i>`, found `{f}`")))?;
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| Error::parse(1, fcol + 1, format!("bad variable index `{idx}`")))?;
            if i == 0 || i > n {
                return Err(Error::parse(
                    1,
                    fcol + 1,
                    format!("variable x{i} outside x1..x{n}"),
                ));
            }
            let e: u16 = match exp {
                Some(e) => e.trim().parse().map_err(|_| {
                    Error::parse(1, fcol + idx.len() + 2, format!("bad exponent `{e}`"))
                })?,
                None => 1,
            };
            exps[i - 1] = exps[i - 1].checked_add(e).ok_or(Error::ExponentOverflow)?;
            col += factor.len() + 1;
        }
        Monomial::from_exponents(exps)
    }
}

impl MonomialIdeal {
    /// Parses `(m1, m2, ...)`, `()` for the zero ideal, or a JSON array of
    /// exponent arrays.
    pub fn parse(text: &str, n: usize) -> Result<MonomialIdeal> {
        let t = text.trim();
        if t.starts_with("[[") || t == "[]" {
            let raw: Vec<Vec<u16>> =
                serde_json::from_str(t).map_err(|e| Error::parse(1, e.column(), e.to_string()))?;
            let gens = raw
                .into_iter()
                .map(|e| {
                    if e.len() != n {
                        Err(Error::AmbientMismatch {
                            left: n,
                            right: e.len(),
                        })
                    } else {
                        Monomial::from_exponents(e)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            return MonomialIdeal::minimalize(n, gens);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(1, 1, "expected `(` ... `)`"))?;
        if inner.trim().is_empty() {
            return Ok(MonomialIdeal::zero(n));
        }
        let gens = inner
            .split(',')
            .map(|s| Monomial::parse(s, n))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(n, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_monomials() {
        let m = Monomial::parse("x1^2*x3", 4).unwrap();
        assert_eq!(m.exponents(), &[2, 0, 1, 0]);
        assert_eq!(Monomial::parse("1", 2).unwrap(), Monomial::one(2));
        assert_eq!(Monomial::parse("[0,3]", 2).unwrap().exponents(), &[0, 3]);
        assert_eq!(Monomial::parse(" x2 * x2 ", 2).unwrap().exponents(), &[0, 2]);
        for s in ["x1^2*x3", "x2^5", "1"] {
            let m = Monomial::parse(s, 3).unwrap();
            assert_eq!(Monomial::parse(&m.to_string(), 3).unwrap(), m);
        }
    }

    #[test]
    fn parse_errors_have_positions() {
        match Monomial::parse("x1*y2", 3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Monomial::parse("x4", 3).is_err());
        assert!(Monomial::parse("x0", 3).is_err());
        assert!(Monomial::parse("[1,2]", 3).is_err());
    }

    #[test]
    fn parse_ideals() {
        let i = MonomialIdeal::parse("(x2*x4, x1*x3, x1*x2*x3)", 4).unwrap();
        assert_eq!(i.to_string(), "(x2*x4, x1*x3)");
        assert_eq!(MonomialIdeal::parse(&i.to_string(), 4).unwrap(), i);
        assert!(MonomialIdeal::parse("()", 3).unwrap().is_zero());
        assert_eq!(MonomialIdeal::parse("[[1,0],[0,1]]", 2).unwrap().generators().len(), 2);
    }
}
