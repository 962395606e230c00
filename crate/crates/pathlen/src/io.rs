//! Graph ingestion and report serialization helpers.
//!
//! Two input formats: plain edge lists ("i j" or "i j w" per line, 1-based,
//! '#' comments) and Matrix Market coordinate files (real, integer or
//! pattern; a symmetric header implies an undirected graph). Infinite
//! lengths render as the string "inf" everywhere, JSON included.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serializer;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tropical::TropicalMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    MatrixMarket,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Directedness {
    /// Detect from the data: a Matrix Market symmetric header or an exactly
    /// symmetric assembled weight matrix means undirected.
    #[default]
    Auto,
    Directed,
    Undirected,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReadOptions {
    /// Resolved from the file extension (".mtx"/".mm") or a header sniff
    /// when absent.
    pub format: Option<Format>,
    pub directed: Directedness,
    /// Vertex count override; otherwise the maximum index seen (edge list)
    /// or the size header (Matrix Market).
    pub n: Option<usize>,
    pub allow_negative: bool,
}

pub fn read_graph(path: &Path, opts: &ReadOptions) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    let format = opts.format.unwrap_or_else(|| detect_format(path, &text));
    parse_graph(&text, format, opts)
}

fn detect_format(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("mtx") | Some("mm") => Format::MatrixMarket,
        _ if text.trim_start().starts_with("%%MatrixMarket") => Format::MatrixMarket,
        _ => Format::EdgeList,
    }
}

pub fn parse_graph(text: &str, format: Format, opts: &ReadOptions) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text, opts),
        Format::MatrixMarket => parse_matrix_market(text, opts),
    }
}

fn build(
    arcs: &[(usize, usize, Option<f64>)],
    n: usize,
    directed: Directedness,
    allow_negative: bool,
) -> Result<Graph> {
    match directed {
        Directedness::Directed => Graph::from_edge_list_with(arcs, n, true, allow_negative),
        Directedness::Undirected => Graph::from_edge_list_with(arcs, n, false, allow_negative),
        Directedness::Auto => {
            let g = Graph::from_edge_list_with(arcs, n, true, allow_negative)?;
            if g.is_symmetric() {
                Graph::from_weights(g.weights().to_vec(), n, Some(false), allow_negative)
            } else {
                Ok(g)
            }
        }
    }
}

fn parse_edge_list(text: &str, opts: &ReadOptions) -> Result<Graph> {
    let mut arcs = Vec::new();
    let mut max_index = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected 'i j' or 'i j w', got {} fields", fields.len()),
            });
        }
        let i = parse_index(fields[0], lineno)?;
        let j = parse_index(fields[1], lineno)?;
        let w = match fields.get(2) {
            Some(s) => Some(parse_weight(s, lineno)?),
            None => None,
        };
        max_index = max_index.max(i).max(j);
        arcs.push((i, j, w));
    }
    let n = opts.n.unwrap_or(max_index);
    build(&arcs, n, opts.directed, opts.allow_negative)
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::Parse { line, msg: format!("invalid vertex index '{s}'") })
}

fn parse_weight(s: &str, line: usize) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("invalid weight '{s}'") })
}

fn parse_matrix_market(text: &str, opts: &ReadOptions) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) =
        lines.next().ok_or(Error::Parse { line: 1, msg: "empty file".into() })?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_lowercase).collect();
    if fields.len() < 4 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(Error::Parse {
            line: header_line,
            msg: "expected '%%MatrixMarket matrix coordinate <field> <symmetry>' header".into(),
        });
    }
    if fields[2] != "coordinate" {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("unsupported layout '{}'; only coordinate is accepted", fields[2]),
        });
    }
    let pattern = match fields[3].as_str() {
        "pattern" => true,
        "real" | "integer" => false,
        other => {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("unsupported field type '{other}'"),
            })
        }
    };
    let symmetric = match fields.get(4).map(String::as_str) {
        Some("symmetric") => true,
        Some("general") | None => false,
        Some(other) => {
            return Err(Error::Parse {
                line: header_line,
                msg: format!("unsupported symmetry '{other}'"),
            })
        }
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut arcs = Vec::new();
    for (lineno, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if size.is_none() {
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected size line 'rows cols nnz'".into(),
                });
            }
            let rows = parse_index(fields[0], lineno)?;
            let cols = parse_index(fields[1], lineno)?;
            let nnz = parse_index(fields[2], lineno)?;
            if rows != cols {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("adjacency matrix must be square, got {rows}x{cols}"),
                });
            }
            size = Some((rows, cols, nnz));
            continue;
        }
        let expected = if pattern { 2 } else { 3 };
        if fields.len() != expected {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected {expected} fields per entry, got {}", fields.len()),
            });
        }
        let i = parse_index(fields[0], lineno)?;
        let j = parse_index(fields[1], lineno)?;
        let w = if pattern { None } else { Some(parse_weight(fields[2], lineno)?) };
        arcs.push((i, j, w));
    }
    let (rows, _, nnz) =
        size.ok_or(Error::Parse { line: header_line, msg: "missing size line".into() })?;
    if arcs.len() != nnz {
        return Err(Error::Parse {
            line: header_line,
            msg: format!("size line announces {nnz} entries, file holds {}", arcs.len()),
        });
    }
    let n = opts.n.unwrap_or(rows).max(rows);
    let directed = match (opts.directed, symmetric) {
        // a symmetric header locks in the undirected reading unless
        // explicitly overridden
        (Directedness::Auto, true) => Directedness::Undirected,
        (Directedness::Directed, true) => {
            let mut mirrored = arcs.clone();
            mirrored.extend(arcs.iter().map(|&(i, j, w)| (j, i, w)));
            return build(&mirrored, n, Directedness::Directed, opts.allow_negative);
        }
        (d, _) => d,
    };
    build(&arcs, n, directed, opts.allow_negative)
}

/// Edge list text for a graph: "i j w" per line, 1-based, one line per
/// undirected edge (i < j) or per arc. Weights print in shortest
/// round-tripping form.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (i, j, w) in g.edges() {
        writeln!(out, "{i} {j} {w}").expect("string write");
    }
    out
}

pub fn write_graph_file(path: &Path, g: &Graph) -> Result<()> {
    std::fs::write(path, write_edge_list(g))?;
    Ok(())
}

/// "inf" for infinite lengths, shortest round-tripping decimal otherwise.
pub fn fmt_len(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x}")
    }
}

/// Fixed-point rendering with "inf" passthrough, for tables.
pub fn fmt_fixed(x: f64, digits: usize) -> String {
    if x.is_infinite() {
        fmt_len(x)
    } else {
        format!("{x:.digits$}")
    }
}

/// Aligned text rendering of a tropical power matrix.
pub fn format_tropical_matrix(t: &TropicalMatrix) -> String {
    let n = t.n();
    let cells: Vec<String> = t.entries().iter().map(|&v| fmt_len(v)).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells.chunks(n) {
        let mut first = true;
        for cell in row {
            if !first {
                out.push(' ');
            }
            write!(out, "{cell:>width$}").expect("string write");
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Serializes a length, mapping infinities to the JSON string "inf".
pub fn ser_len<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Vector variant of [`ser_len`].
pub fn ser_len_vec<S: Serializer>(v: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for &x in v {
        if x.is_finite() {
            seq.serialize_element(&x)?;
        } else if x > 0.0 {
            seq.serialize_element("inf")?;
        } else {
            seq.serialize_element("-inf")?;
        }
    }
    seq.end()
}
