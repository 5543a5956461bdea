//! File schemas for the command-line front end. Inputs are single JSON
//! objects with integer-only numerics; rationals never appear in inputs
//! (labels are primitive integer vectors) and are emitted as [num, den]
//! pairs in reports.

use crate::gkm::{ComponentKind, Edge, FixedComponent, SelfLoop, SkeletonGraph};
use crate::lattice::IntVector;
use crate::weights::{MergeNote, WeightSystem};
use crate::z2::{Z2Set, Z2Vector};
use crate::z2graph::{LabeledEdge, LabeledLoop, Z2LabeledGraph};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation at `{field}`: {reason}")]
    Schema { field: String, reason: String },
}

fn schema(field: &str, reason: impl Into<String>) -> ParseError {
    ParseError::Schema {
        field: field.into(),
        reason: reason.into(),
    }
}

fn read(path: &str) -> Result<String, ParseError> {
    std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.into(),
        source,
    })
}

// ------------------------------------------------------------- weight files

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightFile {
    d: usize,
    weights: Vec<Vec<i64>>,
    #[serde(default)]
    multiplicities: Option<Vec<u32>>,
    #[serde(default)]
    trivial: Option<u32>,
}

/// Parses a weight-system file; sign-equivalent weights merge with summed
/// multiplicity, reported in the returned notes.
pub fn parse_weight_file(path: &str) -> Result<(WeightSystem, Vec<MergeNote>), ParseError> {
    let file: WeightFile = serde_json::from_str(&read(path)?)?;
    if file.d == 0 || file.d > 32 {
        return Err(schema("d", "rank must be between 1 and 32"));
    }
    let mults = match &file.multiplicities {
        Some(m) if m.len() != file.weights.len() => {
            return Err(schema(
                "multiplicities",
                format!(
                    "expected {} entries to match `weights`, found {}",
                    file.weights.len(),
                    m.len()
                ),
            ))
        }
        Some(m) => m.clone(),
        None => vec![1; file.weights.len()],
    };
    let mut entries = Vec::new();
    for (idx, (w, m)) in file.weights.iter().zip(mults).enumerate() {
        if w.len() != file.d {
            return Err(schema(
                &format!("weights[{idx}]"),
                format!("length {} does not match d = {}", w.len(), file.d),
            ));
        }
        if m == 0 {
            return Err(schema(
                &format!("multiplicities[{idx}]"),
                "multiplicities must be positive",
            ));
        }
        entries.push((IntVector::from_i64(w), m));
    }
    WeightSystem::new(file.d, entries, file.trivial.unwrap_or(0))
        .map_err(|e| schema("weights", e.to_string()))
}

// -------------------------------------------------------------- graph files

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    d: usize,
    n: usize,
    vertices: Vec<VertexFile>,
    #[serde(default)]
    edges: Vec<EdgeFile>,
    #[serde(default)]
    loops: Vec<LoopFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    dim: usize,
    ctype: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    i: usize,
    j: usize,
    label: Vec<i64>,
    #[serde(default)]
    count: Option<u32>,
    #[serde(default)]
    z2label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LoopFile {
    i: usize,
    label: Vec<i64>,
    #[serde(default)]
    count: Option<u32>,
    #[serde(default)]
    z2label: Option<String>,
}

/// Either kind of graph, depending on whether GF(2) labels are present.
#[derive(Debug)]
pub enum ParsedGraph {
    Plain(SkeletonGraph),
    Labeled(Z2LabeledGraph),
}

fn parse_kind(s: &str, field: &str) -> Result<ComponentKind, ParseError> {
    match s {
        "point" => Ok(ComponentKind::Point),
        "sphere" => Ok(ComponentKind::Sphere),
        "cp" => Ok(ComponentKind::Cp),
        "hp" => Ok(ComponentKind::Hp),
        other => Err(schema(
            field,
            format!("unknown component type `{other}` (expected point|sphere|cp|hp)"),
        )),
    }
}

fn parse_bits(s: &str, d: usize, field: &str) -> Result<Z2Vector, ParseError> {
    if s.len() != d {
        return Err(schema(
            field,
            format!("bitstring length {} does not match d = {d}", s.len()),
        ));
    }
    let mut bits = 0u32;
    for (k, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => bits |= 1 << k,
            _ => return Err(schema(field, "bitstrings may contain only 0 and 1")),
        }
    }
    Ok(bits)
}

pub fn parse_graph_file(path: &str) -> Result<ParsedGraph, ParseError> {
    let file: GraphFile = serde_json::from_str(&read(path)?)?;
    if file.d == 0 || file.d > 32 {
        return Err(schema("d", "rank must be between 1 and 32"));
    }
    if file.n == 0 || file.n % 2 != 0 {
        return Err(schema("n", "ambient dimension must be even and positive"));
    }
    let mut vertices = Vec::new();
    for (idx, v) in file.vertices.iter().enumerate() {
        let kind = parse_kind(&v.ctype, &format!("vertices[{idx}].ctype"))?;
        let comp = FixedComponent { dim: v.dim, kind };
        comp.check()
            .map_err(|e| schema(&format!("vertices[{idx}]"), e.to_string()))?;
        vertices.push(comp);
    }

    let labeled = file.edges.iter().any(|e| e.z2label.is_some())
        || file.loops.iter().any(|l| l.z2label.is_some());
    if labeled {
        let all = file.edges.iter().all(|e| e.z2label.is_some())
            && file.loops.iter().all(|l| l.z2label.is_some());
        if !all {
            return Err(schema(
                "edges",
                "either every edge and loop carries a z2label or none does",
            ));
        }
    }

    let mut edges_out: Vec<(Edge, Z2Vector)> = Vec::new();
    for (idx, e) in file.edges.iter().enumerate() {
        let field = format!("edges[{idx}]");
        if e.i >= vertices.len() || e.j >= vertices.len() || e.i == e.j {
            return Err(schema(&field, "edge endpoints must be distinct vertices"));
        }
        if e.label.len() != file.d {
            return Err(schema(&field, "label length does not match d"));
        }
        let label = IntVector::from_i64(&e.label);
        if label.is_zero() {
            return Err(schema(&field, "zero labels are allowed only on loops"));
        }
        let z2 = match &e.z2label {
            Some(s) => parse_bits(s, file.d, &format!("{field}.z2label"))?,
            None => 0,
        };
        edges_out.push((
            Edge {
                i: e.i,
                j: e.j,
                label: label.primitive_part(),
                count: e.count.unwrap_or(1),
            },
            z2,
        ));
    }
    let mut loops_out: Vec<(SelfLoop, Z2Vector)> = Vec::new();
    for (idx, l) in file.loops.iter().enumerate() {
        let field = format!("loops[{idx}]");
        if l.i >= vertices.len() {
            return Err(schema(&field, "loop vertex out of range"));
        }
        if l.label.len() != file.d {
            return Err(schema(&field, "label length does not match d"));
        }
        let label = IntVector::from_i64(&l.label);
        let z2 = match &l.z2label {
            Some(s) => parse_bits(s, file.d, &format!("{field}.z2label"))?,
            None => 0,
        };
        loops_out.push((
            SelfLoop {
                vertex: l.i,
                label: label.primitive_part(),
                count: l.count.unwrap_or(1),
            },
            z2,
        ));
    }

    if labeled {
        Ok(ParsedGraph::Labeled(Z2LabeledGraph {
            rank: file.d,
            n: file.n,
            vertices,
            edges: edges_out
                .into_iter()
                .map(|(e, z2label)| LabeledEdge {
                    i: e.i,
                    j: e.j,
                    label: e.label,
                    z2label,
                    count: e.count,
                })
                .collect(),
            loops: loops_out
                .into_iter()
                .map(|(l, z2label)| LabeledLoop {
                    vertex: l.vertex,
                    label: l.label,
                    z2label,
                    count: l.count,
                })
                .collect(),
        }))
    } else {
        Ok(ParsedGraph::Plain(SkeletonGraph {
            rank: file.d,
            n: file.n,
            vertices,
            edges: edges_out.into_iter().map(|(e, _)| e).collect(),
            loops: loops_out.into_iter().map(|(l, _)| l).collect(),
        }))
    }
}

// ----------------------------------------------------------- GF(2) set files

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Z2SetFile {
    d: usize,
    members: Vec<Vec<u8>>,
}

pub fn parse_z2_set_file(path: &str) -> Result<Z2Set, ParseError> {
    let file: Z2SetFile = serde_json::from_str(&read(path)?)?;
    if file.d == 0 || file.d > 32 {
        return Err(schema("d", "dimension must be between 1 and 32"));
    }
    let mut members = Vec::new();
    for (idx, m) in file.members.iter().enumerate() {
        let field = format!("members[{idx}]");
        if m.len() != file.d {
            return Err(schema(&field, "vector length does not match d"));
        }
        let mut bits = 0u32;
        for (k, &b) in m.iter().enumerate() {
            match b {
                0 => {}
                1 => bits |= 1 << k,
                _ => return Err(schema(&field, "coordinates must be 0 or 1")),
            }
        }
        members.push(bits);
    }
    Z2Set::new(file.d, members).map_err(|e| schema("members", e.to_string()))
}

// --------------------------------------------------------------- misc files

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimensionFile {
    d: usize,
}

pub fn parse_dimension_file(path: &str) -> Result<usize, ParseError> {
    let file: DimensionFile = serde_json::from_str(&read(path)?)?;
    Ok(file.d)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VandermondeFile {
    u: Vec<Vec<i64>>,
    betti: Vec<usize>,
}

pub fn parse_vandermonde_file(path: &str) -> Result<(Vec<IntVector>, Vec<usize>), ParseError> {
    let file: VandermondeFile = serde_json::from_str(&read(path)?)?;
    if file.u.is_empty() {
        return Err(schema("u", "at least one placement is required"));
    }
    let dim = file.u[0].len();
    if dim == 0 || file.u.iter().any(|v| v.len() != dim) {
        return Err(schema("u", "placements must share a positive length"));
    }
    Ok((
        file.u.iter().map(|v| IntVector::from_i64(v)).collect(),
        file.betti,
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvolutionFile {
    iota: Vec<u8>,
}

/// The involution is stored in a sibling field of the graph file; this helper
/// re-reads the file for it.
pub fn parse_involution(path: &str, d: usize) -> Result<Z2Vector, ParseError> {
    #[derive(Deserialize)]
    struct Probe {
        iota: Option<Vec<u8>>,
    }
    let value: serde_json::Value = serde_json::from_str(&read(path)?)?;
    let probe: Probe = serde_json::from_value(serde_json::json!({
        "iota": value.get("iota").cloned()
    }))?;
    let Some(raw) = probe.iota else {
        return Err(schema("iota", "missing involution field"));
    };
    let file = InvolutionFile { iota: raw };
    if file.iota.len() != d {
        return Err(schema("iota", "length does not match the torus rank"));
    }
    let mut bits = 0u32;
    for (k, &b) in file.iota.iter().enumerate() {
        match b {
            0 => {}
            1 => bits |= 1 << k,
            _ => return Err(schema("iota", "coordinates must be 0 or 1")),
        }
    }
    Ok(bits)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct M4File {
    r: Vec<Vec<i64>>,
    s1: Vec<Vec<i64>>,
    s2: Vec<Vec<i64>>,
}

pub type M4Data = ([IntVector; 4], [IntVector; 4], [IntVector; 4]);

pub fn parse_m4_file(path: &str) -> Result<M4Data, ParseError> {
    let file: M4File = serde_json::from_str(&read(path)?)?;
    let convert = |v: &[Vec<i64>], field: &str| -> Result<[IntVector; 4], ParseError> {
        if v.len() != 4 {
            return Err(schema(field, "exactly four weights are required"));
        }
        let dim = v[0].len();
        if dim == 0 || v.iter().any(|x| x.len() != dim) {
            return Err(schema(field, "weights must share a positive length"));
        }
        let vecs: Vec<IntVector> = v.iter().map(|x| IntVector::from_i64(x)).collect();
        Ok([
            vecs[0].clone(),
            vecs[1].clone(),
            vecs[2].clone(),
            vecs[3].clone(),
        ])
    };
    Ok((
        convert(&file.r, "r")?,
        convert(&file.s1, "s1")?,
        convert(&file.s2, "s2")?,
    ))
}
