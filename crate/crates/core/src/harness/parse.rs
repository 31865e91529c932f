//! Graph input formats: edge lists (`n 4` then `e 0 1` lines), the compact
//! `n=4;edges=0-1,1-2` form, and graph6.

use crate::bits::MAX_VARS;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parses any of the supported formats, guessing which from the text.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::parse(1, 1, "empty graph description"));
    }
    if t.starts_with("n=") {
        return parse_compact(t);
    }
    let body = t.strip_prefix(">>graph6<<").unwrap_or(t);
    if !body.contains(char::is_whitespace) && body.bytes().all(|b| (63..=126).contains(&b)) {
        return parse_graph6(body);
    }
    parse_edge_list(text)
}

fn parse_index(tok: &str, line: usize, column: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, column, format!("expected a vertex index, got `{tok}`")))
}

/// `n=4;edges=0-1,1-2,2-3,3-0`. An empty edge list is allowed.
pub fn parse_compact(text: &str) -> Result<Graph> {
    let t = text.trim();
    let rest = t
        .strip_prefix("n=")
        .ok_or_else(|| Error::parse(1, 1, "expected `n=`"))?;
    let (n_str, edges_part) = match rest.split_once(';') {
        Some((a, b)) => (a, Some(b)),
        None => (rest, None),
    };
    let n = parse_index(n_str.trim(), 1, 3)?;
    let mut g = Graph::new(n)?;
    let Some(edges_part) = edges_part else {
        return Ok(g);
    };
    let offset = 3 + n_str.len();
    let list = edges_part
        .trim()
        .strip_prefix("edges=")
        .ok_or_else(|| Error::parse(1, offset + 1, "expected `edges=`"))?;
    let mut col = offset + 1 + "edges=".len();
    for item in list.split(',') {
        let item_col = col;
        col += item.len() + 1;
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (a, b) = item
            .split_once('-')
            .ok_or_else(|| Error::parse(1, item_col, format!("expected `u-v`, got `{item}`")))?;
        let u = parse_index(a.trim(), 1, item_col)?;
        let v = parse_index(b.trim(), 1, item_col + a.len() + 1)?;
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Header `n <count>`, then one `e <u> <v>` per edge. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim_start();
        let indent = raw.len() - content.len();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let toks: Vec<(usize, &str)> = content
            .split_whitespace()
            .map(|tok| (indent + tok.as_ptr() as usize - content.as_ptr() as usize + 1, tok))
            .collect();
        match toks[0].1 {
            "n" => {
                if g.is_some() {
                    return Err(Error::parse(line, toks[0].0, "duplicate `n` header"));
                }
                let &[_, (c, count)] = &toks[..] else {
                    return Err(Error::parse(line, toks[0].0, "expected `n <count>`"));
                };
                g = Some(Graph::new(parse_index(count, line, c)?)?);
            }
            "e" => {
                let graph = g
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, toks[0].0, "edge before the `n` header"))?;
                let &[_, (cu, u), (cv, v)] = &toks[..] else {
                    return Err(Error::parse(line, toks[0].0, "expected `e <u> <v>`"));
                };
                graph.add_edge(parse_index(u, line, cu)?, parse_index(v, line, cv)?)?;
            }
            other => {
                return Err(Error::parse(line, toks[0].0, format!("unknown record `{other}`")));
            }
        }
    }
    g.ok_or_else(|| Error::parse(1, 1, "missing `n <count>` header"))
}

fn g6_byte(b: u8, pos: usize) -> Result<u8> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(Error::parse(1, pos + 1, format!("byte {b} is not graph6")))
    }
}

/// graph6 for `n ≤ 62` (one-byte size prefix); larger sizes exceed the
/// variable limit anyway.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let t = text.trim();
    let t = t.strip_prefix(">>graph6<<").unwrap_or(t);
    let bytes = t.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::parse(1, 1, "empty graph6 string"));
    };
    let n = usize::from(g6_byte(first, 0)?);
    if n == 63 {
        return Err(Error::TooManyVariables {
            got: 63,
            max: MAX_VARS,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if bytes.len() != 1 + need {
        return Err(Error::parse(
            1,
            bytes.len().min(1 + need) + 1,
            format!("graph6 for {n} vertices needs {} bytes, got {}", 1 + need, bytes.len()),
        ));
    }
    let mut g = Graph::new(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = g6_byte(bytes[1 + bit / 6], 1 + bit / 6)?;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    // padding bits must be zero
    if !bit.is_multiple_of(6) {
        let last = g6_byte(bytes[bytes.len() - 1], bytes.len() - 1)?;
        if last & ((1 << (6 - bit % 6)) - 1) != 0 {
            return Err(Error::parse(1, bytes.len(), "nonzero graph6 padding"));
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > 62 {
        return Err(Error::input("graph6 with a one-byte header holds at most 62 vertices"));
    }
    let mut out = vec![n as u8 + 63];
    let mut cur = 0u8;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            cur = cur << 1 | u8::from(g.has_edge(i, j));
            bit += 1;
            if bit.is_multiple_of(6) {
                out.push(cur + 63);
                cur = 0;
            }
        }
    }
    if !bit.is_multiple_of(6) {
        out.push((cur << (6 - bit % 6)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn compact_examples() {
        let k2 = parse_graph("n=2;edges=0-1").unwrap();
        assert_eq!(k2.edges(), vec![(0, 1)]);
        let c4 = parse_graph("n=4;edges=0-1,1-2,2-3,3-0").unwrap();
        assert_eq!(c4.edges(), Graph::cycle(4).unwrap().edges());
        assert_eq!(parse_graph("n=3;edges=0-0").unwrap_err(), Error::SelfLoop(0));
        assert_eq!(parse_graph("n=3;edges=0-1,1-0").unwrap().edge_count(), 1);
        assert_eq!(parse_graph("n=3;edges=").unwrap().edge_count(), 0);
        assert_eq!(parse_graph("n=3").unwrap().n(), 3);
        assert!(matches!(
            parse_graph("n=3;edges=0-1,x-2").unwrap_err(),
            Error::Parse { line: 1, column: 15, .. }
        ));
        assert!(matches!(
            parse_graph("n=3;edges=0-5").unwrap_err(),
            Error::VertexOutOfRange { vertex: 5, n: 3 }
        ));
    }

    #[test]
    fn edge_list_examples() {
        let g = parse_graph("# a path\nn 3\ne 0 1\n\ne 1 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        let err = parse_graph("n 3\ne 0 1\n  e 1 q\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 7,
                message: "expected a vertex index, got `q`".into()
            }
        );
        assert!(matches!(parse_graph("e 0 1\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_graph("n 2\nf 0 1\n").unwrap_err(), Error::Parse { line: 2, column: 1, .. }));
        assert_eq!(parse_graph("n 2\ne 1 1").unwrap_err(), Error::SelfLoop(1));
    }

    #[test]
    fn graph6_reference_vector() {
        let g = parse_graph("DQc").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
        assert_eq!(parse_graph(">>graph6<<DQc").unwrap(), g);
        assert_eq!(to_graph6(&Graph::new(0).unwrap()).unwrap(), "?");
        assert_eq!(to_graph6(&Graph::path(2).unwrap()).unwrap(), "A_");
        assert!(parse_graph6("DQ").is_err());
        assert!(parse_graph6("A`").is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..12, bits in any::<u64>()) {
            let mut g = Graph::new(n).unwrap();
            let mut b = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits >> (b % 64) & 1 == 1 {
                        g.add_edge(i, j).unwrap();
                    }
                    b += 1;
                }
            }
            let s = to_graph6(&g).unwrap();
            prop_assert_eq!(parse_graph(&s).unwrap(), g.clone());
            prop_assert_eq!(parse_graph(&g.canonical_string()).unwrap(), g);
        }
    }
}
