//! Text formats: tab-separated edge lists, CSV distance matrices, and JSON
//! for partitions and expansive maps. Vertices are 1-based in every file.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, PseudoDistance};
use crate::monotonic::ExpansiveMap;
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    /// Dense symmetric CSV matrix; zero off the diagonal means no edge.
    Matrix,
    /// `u<TAB>v<TAB>weight` per line.
    EdgeList,
}

impl InputFormat {
    /// `.csv` is a matrix, `.tsv`, `.txt` and `.edges` are edge lists.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(InputFormat::Matrix),
            "tsv" | "txt" | "edges" => Some(InputFormat::EdgeList),
            _ => None,
        }
    }
}

impl std::str::FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" | "matrix" => Ok(InputFormat::Matrix),
            "tsv" | "edges" => Ok(InputFormat::EdgeList),
            _ => Err(Error::Parse(format!("unknown input format `{s}`"))),
        }
    }
}

pub fn parse_distance(text: &str, format: InputFormat) -> Result<PseudoDistance> {
    match format {
        InputFormat::Matrix => parse_matrix(text),
        InputFormat::EdgeList => parse_edge_list(text, None),
    }
}

/// Reads `u<TAB>v<TAB>weight` lines; blank lines and lines starting with
/// `#` are skipped. The vertex count is `n` if given, else the largest
/// index seen.
pub fn parse_edge_list(text: &str, n: Option<usize>) -> Result<PseudoDistance> {
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut top = 0;
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}: `{line}`", no + 1));
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(bad("expected three tab-separated fields"));
        }
        let index = |s: &str| match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(bad("vertices are 1-based integers")),
            Ok(v) => Ok(v),
        };
        let (u, v) = (index(fields[0])?, index(fields[1])?);
        let w: f64 = fields[2].parse().map_err(|_| bad("weight is not a number"))?;
        top = top.max(u).max(v);
        edges.push((u.min(v) - 1, u.max(v) - 1));
        weights.push(w);
    }
    let n = n.unwrap_or(top);
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let g = Graph::new(n, edges.iter().copied())?;
    // Graph sorts its edges; put the weights in the same order
    let mut sorted = vec![0.0; weights.len()];
    for (&(u, v), w) in edges.iter().zip(weights) {
        sorted[g.edge_id(u, v).expect("edge was just added")] = w;
    }
    PseudoDistance::new(Arc::new(g), sorted)
}

pub fn parse_matrix(text: &str) -> Result<PseudoDistance> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let row = record
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: `{s}` is not a number", i + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    PseudoDistance::from_matrix(&rows)
}

pub fn write_edge_list(d: &PseudoDistance) -> String {
    d.iter().map(|(u, v, w)| format!("{}\t{}\t{w}\n", u + 1, v + 1)).collect()
}

pub fn write_matrix(d: &PseudoDistance) -> String {
    let n = d.n();
    let mut out = String::new();
    for u in 0..n {
        let row: Vec<String> = (0..n).map(|v| d.value(u, v).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("partition: {e}")))
}

pub fn parse_map(text: &str) -> Result<ExpansiveMap> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("expansive map: {e}")))
}
