//! graph6 codec.
//!
//! One graph per ASCII line: a size byte `63 + n` for `1 <= n <= 62`,
//! followed by the upper triangle `x(0,1), x(0,2), x(1,2), x(0,3), ...`
//! packed big-endian into 6-bit groups, zero padded, each group emitted as
//! `value + 63`. The optional `>>graph6<<` header line is tolerated on
//! input and never written.

use crate::graph::{Graph, MAX_ORDER};
use thiserror::Error;

/// Largest order representable in the single-byte size encoding.
pub const MAX_GRAPH6_ORDER: usize = 62;

const OPTIONAL_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: order byte {byte:#04x} outside '?'..'~'")]
    BadOrderByte { offset: usize, byte: u8 },
    #[error("byte 0: order 0 is not a graph")]
    ZeroOrder,
    #[error("order {n} unsupported (1..={MAX_GRAPH6_ORDER})")]
    UnsupportedOrder { n: usize },
    #[error("truncated bit section: expected {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("byte {offset}: trailing byte beyond the bit section")]
    TrailingBytes { offset: usize },
    #[error("byte {offset}: data byte {byte:#04x} outside '?'..'~'")]
    BadDataByte { offset: usize, byte: u8 },
    #[error("byte {offset}: nonzero padding bits")]
    NonZeroPadding { offset: usize },
}

/// Decodes one graph6 line.
pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = text.trim_end_matches(['\r', '\n']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let b0 = bytes[0];
    if !(63..=126).contains(&b0) {
        return Err(Graph6Error::BadOrderByte { offset: 0, byte: b0 });
    }
    let n = (b0 - 63) as usize;
    if n == 0 {
        return Err(Graph6Error::ZeroOrder);
    }
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::UnsupportedOrder { n });
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: data.len() });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingBytes { offset: 1 + expected });
    }
    let mut adj = vec![0u64; n];
    let mut bit = 0usize;
    for (k, &byte) in data.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadDataByte { offset: 1 + k, byte });
        }
        let group = byte - 63;
        for s in (0..6).rev() {
            let value = group >> s & 1;
            if bit >= nbits {
                if value != 0 {
                    return Err(Graph6Error::NonZeroPadding { offset: 1 + k });
                }
                continue;
            }
            if value == 1 {
                let (i, j) = pair_from_index(bit);
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            bit += 1;
        }
    }
    Ok(Graph::from_adj_rows(adj))
}

/// Encodes a graph as one graph6 line (no terminator).
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    debug_assert!(n <= MAX_ORDER);
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::UnsupportedOrder { n });
    }
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(63 + n as u8);
    let mut group = 0u8;
    let mut filled = 0usize;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// graph6 string, or a placeholder for the rare graphs too large to encode.
pub fn graph6_or_placeholder(g: &Graph) -> String {
    to_graph6(g).unwrap_or_else(|_| format!("<order {} exceeds graph6>", g.order()))
}

/// Inverse of [`crate::graph::pair_index`]: the pair `(i, j)` at upper
/// triangle position `idx`.
fn pair_from_index(idx: usize) -> (usize, usize) {
    // find j with j*(j-1)/2 <= idx < j*(j+1)/2
    let mut j = 1usize;
    while (j + 1) * j / 2 <= idx {
        j += 1;
    }
    (idx - j * (j - 1) / 2, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pair_index;

    #[test]
    fn pair_indexing_round_trip() {
        let mut idx = 0;
        for j in 1..12 {
            for i in 0..j {
                assert_eq!(pair_index(i, j), idx);
                assert_eq!(pair_from_index(idx), (i, j));
                idx += 1;
            }
        }
    }

    // Hand-encoded values: "@" is 63+1 with no data bytes. For K_3 the bits
    // x(0,1) x(0,2) x(1,2) = 111 pad to 111000 = 56, 56+63 = 119 = 'w'.
    // For K_2 the single bit 1 pads to 100000 = 32, 32+63 = 95 = '_'.
    #[test]
    fn decode_hand_encoded_values() {
        let single = from_graph6("@").unwrap();
        assert_eq!(single.order(), 1);
        assert_eq!(single.edge_count(), 0);

        let k3 = from_graph6("Bw").unwrap();
        assert_eq!(k3, Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]));

        let e2 = from_graph6("A?").unwrap();
        assert_eq!(e2, Graph::empty(2));

        let k2 = from_graph6("A_").unwrap();
        assert_eq!(k2, Graph::from_edges(2, &[(0, 1)]));
    }

    #[test]
    fn encode_hand_encoded_values() {
        assert_eq!(to_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(to_graph6(&Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)])).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::empty(2)).unwrap(), "A?");
        assert_eq!(to_graph6(&Graph::from_edges(2, &[(0, 1)])).unwrap(), "A_");
    }

    // Adjacency published with the format: the 5-vertex graph with edges
    // 0-2, 0-4, 1-3, 3-4 encodes as "DQc".
    #[test]
    fn known_five_vertex_encoding() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn header_prefix_is_tolerated() {
        assert_eq!(from_graph6(">>graph6<<Bw").unwrap().order(), 3);
    }

    #[test]
    fn newline_is_tolerated() {
        assert_eq!(from_graph6("Bw\n").unwrap().order(), 3);
    }

    #[test]
    fn error_cases_name_offsets() {
        assert_eq!(from_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(from_graph6("?"), Err(Graph6Error::ZeroOrder));
        assert_eq!(
            from_graph6("B"),
            Err(Graph6Error::Truncated { expected: 1, found: 0 })
        );
        assert_eq!(
            from_graph6("Bww"),
            Err(Graph6Error::TrailingBytes { offset: 2 })
        );
        assert_eq!(
            from_graph6("B\t"),
            Err(Graph6Error::BadDataByte { offset: 1, byte: b'\t' })
        );
        // K_2's bit section must pad with zeros: 'w' = 119 has low bits set
        assert_eq!(
            from_graph6("Aw"),
            Err(Graph6Error::NonZeroPadding { offset: 1 })
        );
        assert!(matches!(
            from_graph6("\x1c?"),
            Err(Graph6Error::BadOrderByte { offset: 0, .. })
        ));
    }

    #[test]
    fn round_trip_small_orders() {
        for n in 1..=5usize {
            for mask in 0..1u64 << (n * (n - 1) / 2) {
                let g = Graph::from_edge_mask(n, mask);
                let enc = to_graph6(&g).unwrap();
                assert_eq!(from_graph6(&enc).unwrap(), g);
            }
        }
    }

    #[test]
    fn orders_above_62_are_refused() {
        let g = Graph::empty(63);
        assert_eq!(to_graph6(&g), Err(Graph6Error::UnsupportedOrder { n: 63 }));
    }
}
