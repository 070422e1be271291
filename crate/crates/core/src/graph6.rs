//! graph6 codec and a line-oriented stream reader.
//!
//! A record is a header encoding the order followed by the upper triangle of
//! the adjacency matrix in column-major order (`x(0,1), x(0,2), x(1,2),
//! x(0,3), ...`), six bits per byte, each byte offset by 63. Orders up to 62
//! use a one-byte header, larger orders `~` followed by three bytes.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

const HEADER_PREFIX: &str = ">>graph6<<";

#[derive(Debug, Error)]
pub enum Graph6Error {
    #[error("empty record")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated extended header")]
    TruncatedHeader,
    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data: expected {expected} payload bytes, found {found}")]
    TrailingBytes { expected: usize, found: usize },
    #[error("nonzero padding bits after the last adjacency bit")]
    NonzeroPadding,
    #[error("order {0} exceeds the capacity of {MAX_ORDER} vertices")]
    OrderTooLarge(u64),
    #[error("{0} records are not supported, only graph6")]
    Unsupported(&'static str),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Graph6Error {
    /// Line number for errors raised by [`Graph6Reader`].
    pub fn line(&self) -> Option<usize> {
        match self {
            Graph6Error::AtLine { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Graph6Options {
    /// Reject records whose padding bits are not zero.
    pub strict_padding: bool,
}

/// Number of payload bytes for a graph of order `n`.
pub fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one record with lenient padding.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    parse_graph6_with(line, Graph6Options::default())
}

pub fn parse_graph6_with(line: &str, opts: Graph6Options) -> Result<Graph, Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER_PREFIX).unwrap_or(line);
    let bytes = line.as_bytes();
    match bytes.first() {
        None => return Err(Graph6Error::Empty),
        Some(b':') => return Err(Graph6Error::Unsupported("sparse6")),
        Some(b'&') => return Err(Graph6Error::Unsupported("digraph6")),
        _ => {}
    }
    if let Some(offset) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::InvalidByte { offset, byte: bytes[offset] });
    }
    let (n, header_len) = decode_order(bytes)?;
    if n > MAX_ORDER as u64 {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let n = n as usize;
    let payload = &bytes[header_len..];
    let expected = payload_len(n);
    if payload.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingBytes { expected, found: payload.len() });
    }

    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if opts.strict_padding && k % 6 != 0 {
        let last = payload[k / 6] - 63;
        if last & ((1u8 << (6 - k % 6)) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

fn decode_order(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let six = |range: std::ops::Range<usize>| -> Result<u64, Graph6Error> {
        let chunk = bytes.get(range).ok_or(Graph6Error::TruncatedHeader)?;
        Ok(chunk.iter().fold(0u64, |acc, &b| acc << 6 | u64::from(b - 63)))
    };
    if bytes[0] != 126 {
        return Ok((u64::from(bytes[0] - 63), 1));
    }
    if bytes.get(1) == Some(&126) {
        Ok((six(2..8)?, 8))
    } else {
        Ok((six(1..4)?, 4))
    }
}

/// Encodes a graph; padding bits are always zero.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + payload_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Yields graphs from newline-delimited graph6 text. Blank lines and `>>`
/// comment lines are skipped; a `>>graph6<<` prefix is stripped. Errors carry
/// the 1-based line number.
pub struct Graph6Reader<R> {
    reader: R,
    line_no: usize,
    opts: Graph6Options,
    buf: String,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(reader: R) -> Self {
        Self::with_options(reader, Graph6Options::default())
    }

    pub fn with_options(reader: R, opts: Graph6Options) -> Self {
        Graph6Reader { reader, line_no: 0, opts, buf: String::new() }
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<Graph, Graph6Error>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            self.line_no += 1;
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    return Some(Err(Graph6Error::AtLine {
                        line: self.line_no,
                        source: Box::new(e.into()),
                    }))
                }
            }
            let mut line = self.buf.trim();
            if let Some(rest) = line.strip_prefix(HEADER_PREFIX) {
                line = rest;
            } else if line.starts_with(">>") {
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let line_no = self.line_no;
            return Some(parse_graph6_with(line, self.opts).map_err(|e| Graph6Error::AtLine {
                line: line_no,
                source: Box::new(e),
            }));
        }
    }
}

/// Convenience wrapper over [`Graph6Reader`].
pub fn stream_graph6<R: BufRead>(reader: R) -> Graph6Reader<R> {
    Graph6Reader::new(reader)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    #[test]
    fn small_records() {
        let k3 = NamedGraph::Complete(3).build().unwrap();
        assert_eq!(parse_graph6("Bw").unwrap(), k3);
        assert_eq!(write_graph6(&k3), "Bw");
        assert_eq!(parse_graph6("B?").unwrap(), Graph::empty(3).unwrap());
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(parse_graph6(">>graph6<<Bw").unwrap(), k3);
        assert_eq!(parse_graph6("Bw\n").unwrap(), k3);
    }

    #[test]
    fn known_encodings() {
        // Cross-checked against the example in the petgraph test-suite.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn malformed_records() {
        assert!(matches!(parse_graph6("~"), Err(Graph6Error::TruncatedHeader)));
        assert!(matches!(parse_graph6(""), Err(Graph6Error::Empty)));
        assert!(matches!(parse_graph6("C"), Err(Graph6Error::Truncated { expected: 1, found: 0 })));
        assert!(matches!(parse_graph6("Bww"), Err(Graph6Error::TrailingBytes { .. })));
        assert!(matches!(
            parse_graph6("B w"),
            Err(Graph6Error::InvalidByte { offset: 1, byte: b' ' })
        ));
        assert!(matches!(parse_graph6(":Fa@x^"), Err(Graph6Error::Unsupported("sparse6"))));
        assert!(matches!(parse_graph6("&B?"), Err(Graph6Error::Unsupported("digraph6"))));
        // Order 65 via the extended header.
        let big = format!("~{}", String::from_utf8(vec![63, 64, 64]).unwrap());
        assert!(matches!(parse_graph6(&big), Err(Graph6Error::OrderTooLarge(65))));
    }

    #[test]
    fn padding_modes() {
        // 'x' = 111001: the last three bits are padding.
        assert_eq!(parse_graph6("Bx").unwrap(), NamedGraph::Complete(3).build().unwrap());
        let strict = Graph6Options { strict_padding: true };
        assert!(matches!(parse_graph6_with("Bx", strict), Err(Graph6Error::NonzeroPadding)));
        assert!(parse_graph6_with("Bw", strict).is_ok());
    }

    #[test]
    fn extended_header_round_trip() {
        for n in [62, 63, 64] {
            let g = NamedGraph::Cycle(n).build().unwrap();
            let s = write_graph6(&g);
            assert_eq!(s.len(), if n <= 62 { 1 } else { 4 } + payload_len(n));
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn stream_behaviour() {
        let input = ">>comment\nBw\n\nB?\n";
        let graphs: Vec<_> = stream_graph6(input.as_bytes()).collect::<Result<_, _>>().unwrap();
        assert_eq!(graphs, vec![NamedGraph::Complete(3).build().unwrap(), Graph::empty(3).unwrap()]);
        assert_eq!(stream_graph6("".as_bytes()).count(), 0);
        let errs: Vec<_> = stream_graph6("Bw\nB\n".as_bytes()).collect();
        let err = errs[1].as_ref().unwrap_err();
        assert_eq!(err.line(), Some(2));
        assert!(err.to_string().starts_with("line 2:"));
    }
}
