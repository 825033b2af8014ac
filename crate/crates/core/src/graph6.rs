//! graph6 text encoding.
//!
//! Bits of the upper triangle are taken column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`) and packed big-endian into 6-bit
//! groups, each offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Decodes one graph6 string; an optional `>>graph6<<` prefix is accepted.
pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, text.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let (n, mut pos) = decode_order(body).map_err(|(off, msg)| parse_err(base + off, msg))?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() - pos != need {
        return Err(parse_err(
            base + body.len().min(pos + need),
            format!("expected {need} data bytes for n = {n}, found {}", body.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    pos += need;
    if bits % 6 != 0 {
        let last = body[pos - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + pos - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

fn decode_order(body: &[u8]) -> std::result::Result<(usize, usize), (usize, String)> {
    let first = *body.first().ok_or((0, "empty input".to_string()))?;
    if first != 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let take = |from: usize, count: usize| -> std::result::Result<usize, (usize, String)> {
        if body.len() < from + count {
            return Err((body.len(), "truncated order field".to_string()));
        }
        Ok(body[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    if body.get(1) == Some(&126) {
        Ok((take(2, 6)?, 8))
    } else {
        Ok((take(1, 3)?, 4))
    }
}

/// Decodes a text with one graph per line; blank lines are skipped.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| decode(l.trim()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{complete, cycle, path};
    use proptest::prelude::*;

    #[test]
    fn tiny_graphs() {
        assert_eq!(encode(&complete(1)), "@");
        assert_eq!(encode(&complete(2)), "A_");
        assert_eq!(decode("@").unwrap(), complete(1));
        assert_eq!(decode("A_").unwrap(), complete(2));
        assert_eq!(encode(&Graph::empty(0)), "?");
    }

    #[test]
    fn known_strings() {
        // the five-vertex example used by other graph6 implementations
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(encode(&cycle(5)), "Dhc");
        assert_eq!(decode(">>graph6<<Dhc").unwrap(), cycle(5));
    }

    #[test]
    fn long_form_order() {
        let g = path(70);
        let s = encode(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offset() {
        match decode("A ") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        match decode("D") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(decode("").is_err());
        assert!(decode("~?").is_err());
        // K2 with a stray padding bit
        assert!(matches!(decode("A`"), Err(Error::Graph6 { offset: 1, .. })));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..12, bits in proptest::collection::vec(any::<bool>(), 66)) {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] { g.add_edge(i, j); }
                    k += 1;
                }
            }
            let text = encode(&g);
            prop_assert_eq!(decode(&text).unwrap(), g);
        }
    }
}
