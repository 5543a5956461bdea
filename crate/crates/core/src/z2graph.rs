//! Skeleton graphs with a second GF(2) label per parallel edge: coset
//! structure of the labels, fixed-set accounting for involutions, the
//! sigma-permutation family of triangles, and the reflection model pinning
//! four parallel edges to half-sums of four independent weights.

use crate::gkm::{validate_skeleton, GraphError, SkeletonGraph};
use crate::lattice::{self, IntVector};
use crate::z2::{self, Z2Vector};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Z2GraphError {
    #[error("base graph failed validation: {0}")]
    Base(#[from] GraphError),
    #[error("edge between {i} and {j}: {reason}")]
    EdgeLabels { i: usize, j: usize, reason: String },
    #[error("loops at vertex {vertex}: {reason}")]
    LoopLabels { vertex: usize, reason: String },
    #[error("label multiplicity {m2} is not a power of two")]
    MultiplicityNotPowerOfTwo { m2: u32 },
    #[error("coset condition fails on triple ({i},{j},{k})")]
    CosetCocycle { i: usize, j: usize, k: usize },
    #[error("involution lies in the kernel of every edge label")]
    KernelInvolution,
    #[error("component {component} has inconsistent dimensions: {dims:?}")]
    DimensionMismatch {
        component: usize,
        dims: Vec<usize>,
    },
    #[error("fixed-set dichotomy fails: {0}")]
    Dichotomy(String),
    #[error("degenerate triangle configuration: {0}")]
    Degenerate(String),
    #[error("weights r_1..r_4 must be linearly independent")]
    DependentWeights,
    #[error("reflection data inconsistent with the half-sum formulas")]
    ReflectionMismatch,
}

/// A parallel-edge bundle carrying both the rational label of the base graph
/// and one GF(2) character per bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledEdge {
    pub i: usize,
    pub j: usize,
    pub label: IntVector,
    pub z2label: Z2Vector,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledLoop {
    pub vertex: usize,
    pub label: IntVector,
    pub z2label: Z2Vector,
    pub count: u32,
}

/// A skeleton graph whose parallel edges carry GF(2) labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2LabeledGraph {
    pub rank: usize,
    pub n: usize,
    pub vertices: Vec<crate::gkm::FixedComponent>,
    pub edges: Vec<LabeledEdge>,
    pub loops: Vec<LabeledLoop>,
}

impl Z2LabeledGraph {
    /// The underlying skeleton graph, merging parallel bundles that share a
    /// rational label.
    pub fn base(&self) -> SkeletonGraph {
        let mut edges: Vec<crate::gkm::Edge> = Vec::new();
        for e in &self.edges {
            let key = (e.i.min(e.j), e.i.max(e.j));
            match edges
                .iter_mut()
                .find(|b| (b.i, b.j) == key && b.label == e.label)
            {
                Some(b) => b.count += e.count,
                None => edges.push(crate::gkm::Edge {
                    i: key.0,
                    j: key.1,
                    label: e.label.clone(),
                    count: e.count,
                }),
            }
        }
        let mut loops: Vec<crate::gkm::SelfLoop> = Vec::new();
        for l in &self.loops {
            match loops
                .iter_mut()
                .find(|b| b.vertex == l.vertex && b.label == l.label)
            {
                Some(b) => b.count += l.count,
                None => loops.push(crate::gkm::SelfLoop {
                    vertex: l.vertex,
                    label: l.label.clone(),
                    count: l.count,
                }),
            }
        }
        SkeletonGraph {
            rank: self.rank,
            n: self.n,
            vertices: self.vertices.clone(),
            edges,
            loops,
        }
    }

    fn pair_z2_multiset(&self, i: usize, j: usize) -> BTreeMap<Z2Vector, u32> {
        let mut out: BTreeMap<Z2Vector, u32> = BTreeMap::new();
        for e in &self.edges {
            if (e.i == i && e.j == j) || (e.i == j && e.j == i) {
                *out.entry(e.z2label).or_insert(0) += e.count;
            }
        }
        out
    }

    fn loop_z2_multiset(&self, v: usize) -> BTreeMap<Z2Vector, u32> {
        let mut out: BTreeMap<Z2Vector, u32> = BTreeMap::new();
        for l in &self.loops {
            if l.vertex == v {
                *out.entry(l.z2label).or_insert(0) += l.count;
            }
        }
        out
    }
}

/// The extracted coset structure: labels between any two vertices form one
/// coset of a fixed subspace U, each with the same power-of-two multiplicity,
/// and the representatives satisfy the triple condition modulo U.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetStructure {
    /// Echelon basis of U inside the GF(2) dual.
    pub subspace_basis: Vec<Z2Vector>,
    /// Canonical coset representative per vertex pair (i < j).
    pub representatives: BTreeMap<(usize, usize), Z2Vector>,
    /// Multiplicity of every label.
    pub m2: u32,
}

/// Verifies the coset-label structure and extracts it.
pub fn validate_z2_structure(g: &Z2LabeledGraph) -> Result<CosetStructure, Z2GraphError> {
    let base = g.base();
    let report = validate_skeleton(&base)?;
    let k = g.vertices.len();

    // Derive U from the first pair: the difference set of a coset is U.
    let mut subspace: Vec<Z2Vector> = Vec::new();
    if k >= 2 {
        let first = g.pair_z2_multiset(0, 1);
        let labels: Vec<Z2Vector> = first.keys().copied().collect();
        let diffs: Vec<Z2Vector> = labels.iter().map(|&l| l ^ labels[0]).collect();
        subspace = z2::echelon_basis(&diffs);
    }
    let u_elems = z2::span_elements(&subspace);

    // Each pair carries exactly the coset of its smallest label, all with one
    // multiplicity.
    let mut m2: Option<u32> = None;
    let mut reps: BTreeMap<(usize, usize), Z2Vector> = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let multi = g.pair_z2_multiset(i, j);
            let labels: Vec<Z2Vector> = multi.keys().copied().collect();
            if labels.is_empty() {
                return Err(Z2GraphError::EdgeLabels {
                    i,
                    j,
                    reason: "no labels".into(),
                });
            }
            let rep = labels[0];
            let expect: Vec<Z2Vector> = {
                let mut v: Vec<Z2Vector> = u_elems.iter().map(|&u| rep ^ u).collect();
                v.sort_unstable();
                v
            };
            if labels != expect {
                return Err(Z2GraphError::EdgeLabels {
                    i,
                    j,
                    reason: format!(
                        "labels {labels:?} are not a coset of the derived subspace"
                    ),
                });
            }
            let counts: Vec<u32> = multi.values().copied().collect();
            let c0 = counts[0];
            if counts.iter().any(|&c| c != c0) {
                return Err(Z2GraphError::EdgeLabels {
                    i,
                    j,
                    reason: format!("label multiplicities {counts:?} are not uniform"),
                });
            }
            match m2 {
                None => m2 = Some(c0),
                Some(prev) if prev != c0 => {
                    return Err(Z2GraphError::EdgeLabels {
                        i,
                        j,
                        reason: format!("multiplicity {c0} differs from {prev}"),
                    })
                }
                _ => {}
            }
            reps.insert((i, j), rep);
        }
    }
    let m2 = m2.unwrap_or_else(|| {
        // Single-vertex graphs: read the multiplicity off the loops.
        g.loop_z2_multiset(0).values().copied().min().unwrap_or(1)
    });
    if m2 == 0 || (m2 & (m2 - 1)) != 0 {
        return Err(Z2GraphError::MultiplicityNotPowerOfTwo { m2 });
    }
    // The base multiplicity factors as m = m2 * |U|.
    if report.m != m2 * u_elems.len() as u32 {
        return Err(Z2GraphError::MultiplicityNotPowerOfTwo {
            m2: report.m / u_elems.len().max(1) as u32,
        });
    }

    // Triple condition: a_ij + a_ik + a_kj lies in U.
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let a_ij = reps[&(i, j)];
                let a_il = reps[&(i, l)];
                let a_jl = reps[&(j, l)];
                if !z2::in_span(&subspace, a_ij ^ a_il ^ a_jl) {
                    return Err(Z2GraphError::CosetCocycle { i, j, k: l });
                }
            }
        }
    }

    // Loops at positive-dimensional vertices carry exactly U, each label with
    // multiplicity m2.
    for (v, comp) in g.vertices.iter().enumerate() {
        if comp.dim == 0 {
            continue;
        }
        let multi = g.loop_z2_multiset(v);
        let mut got: Vec<(Z2Vector, u32)> = multi.into_iter().collect();
        got.sort_unstable();
        let mut expect: Vec<(Z2Vector, u32)> =
            u_elems.iter().map(|&u| (u, m2)).collect();
        expect.sort_unstable();
        if got != expect {
            return Err(Z2GraphError::LoopLabels {
                vertex: v,
                reason: format!("loop labels {got:?} are not the subspace elements"),
            });
        }
    }

    Ok(CosetStructure {
        subspace_basis: subspace,
        representatives: reps,
        m2,
    })
}

/// One fixed-set component of an involution: the vertices it contains and
/// the common reconstructed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSetComponent {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// Outcome of the involution analysis, including which dichotomy branch
/// applied. The dimension-sum rule is verified for generator degree
/// w in {2, 4, n}; the degree-8 case is reported but not verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionReport {
    pub components: Vec<FixedSetComponent>,
    pub halved: bool,
    pub verified_sum: Option<usize>,
    pub flagged_unverified: bool,
}

/// Components of the subgraph of edges whose GF(2) label vanishes on the
/// involution, with per-component fixed-set dimensions. Verifies the
/// dichotomy: either the surviving graph is connected with dimension n/2, or
/// it has exactly two components whose dimensions sum to n - w, where w is
/// twice the uniform multiplicity.
pub fn involution_fixed_analysis(
    g: &Z2LabeledGraph,
    iota: Z2Vector,
) -> Result<InvolutionReport, Z2GraphError> {
    let base = g.base();
    let report = validate_skeleton(&base)?;
    let k = g.vertices.len();
    let pairing = |x: Z2Vector| -> bool { (x & iota).count_ones() % 2 == 1 };

    if !g.edges.iter().any(|e| pairing(e.z2label))
        && !g.loops.iter().any(|l| pairing(l.z2label))
    {
        return Err(Z2GraphError::KernelInvolution);
    }

    // Union-find over surviving edges.
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for e in &g.edges {
        if !pairing(e.z2label) {
            let (a, b) = (find(&mut parent, e.i), find(&mut parent, e.j));
            if a != b {
                parent[a] = b;
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..k {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }

    // Per-vertex dimension: the component dimension plus two per surviving
    // incident parallel edge or nonzero-rational loop. Trivial loops are the
    // tangent directions already counted by the component dimension.
    let mut components: Vec<FixedSetComponent> = Vec::new();
    for (_, vertices) in groups {
        let mut dims: Vec<usize> = Vec::new();
        for &v in &vertices {
            let mut surviving = 0u32;
            for e in &g.edges {
                if (e.i == v || e.j == v) && !pairing(e.z2label) {
                    surviving += e.count;
                }
            }
            for l in &g.loops {
                if l.vertex == v && !l.label.is_zero() && !pairing(l.z2label) {
                    surviving += l.count;
                }
            }
            dims.push(g.vertices[v].dim + 2 * surviving as usize);
        }
        let d0 = dims[0];
        if dims.iter().any(|&d| d != d0) {
            return Err(Z2GraphError::DimensionMismatch {
                component: vertices[0],
                dims,
            });
        }
        components.push(FixedSetComponent {
            vertices,
            dim: d0,
        });
    }

    let w = 2 * report.m as usize;
    match components.len() {
        1 => {
            if components[0].dim != g.n / 2 {
                return Err(Z2GraphError::Dichotomy(format!(
                    "single component has dimension {}, expected n/2 = {}",
                    components[0].dim,
                    g.n / 2
                )));
            }
            Ok(InvolutionReport {
                components,
                halved: true,
                verified_sum: None,
                flagged_unverified: false,
            })
        }
        2 => {
            let total = components[0].dim + components[1].dim;
            if w == 8 && g.n != 8 {
                // Generator degree eight: accepted but not verified.
                return Ok(InvolutionReport {
                    components,
                    halved: false,
                    verified_sum: None,
                    flagged_unverified: true,
                });
            }
            if total != g.n - w {
                return Err(Z2GraphError::Dichotomy(format!(
                    "two components have dimension sum {total}, expected n - w = {}",
                    g.n as i64 - w as i64
                )));
            }
            Ok(InvolutionReport {
                components,
                halved: false,
                verified_sum: Some(total),
                flagged_unverified: false,
            })
        }
        c => Err(Z2GraphError::Dichotomy(format!(
            "{c} components survive, expected one or two"
        ))),
    }
}

/// The permutation family of a triangle with m parallel edges per pair.
///
/// Input: the weights r_k of the edges from vertex 0 to 1, t_i from 1 to 2,
/// and s_l from 0 to 2. Weak triple-independence is required: every pair
/// (r_k, t_i) is linearly independent and spans exactly one s_l.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaFamily {
    /// sigma[k][i] = the unique l with s_l in span(r_k, t_i).
    pub sigmas: Vec<Vec<usize>>,
    /// Elements of the group generated by sigma_1^{-1} sigma_k, sorted.
    pub group: Vec<Vec<usize>>,
}

pub fn sigma_permutations(
    r: &[IntVector],
    t: &[IntVector],
    s: &[IntVector],
) -> Result<SigmaFamily, Z2GraphError> {
    let m = r.len();
    if t.len() != m || s.len() != m || m == 0 {
        return Err(Z2GraphError::Degenerate(
            "all three sides must carry the same positive number of edges".into(),
        ));
    }
    let mut sigmas: Vec<Vec<usize>> = Vec::with_capacity(m);
    for (k, rk) in r.iter().enumerate() {
        let mut sigma_k: Vec<usize> = Vec::with_capacity(m);
        for (i, ti) in t.iter().enumerate() {
            if lattice::rank(&[rk.clone(), ti.clone()]) != 2 {
                return Err(Z2GraphError::Degenerate(format!(
                    "edge weights r_{k} and t_{i} are linearly dependent"
                )));
            }
            let mut hits = (0..m).filter(|&l| {
                lattice::rank(&[rk.clone(), ti.clone(), s[l].clone()]) == 2
            });
            let Some(l) = hits.next() else {
                return Err(Z2GraphError::Degenerate(format!(
                    "no opposite edge lies in span(r_{k}, t_{i})"
                )));
            };
            if hits.next().is_some() {
                return Err(Z2GraphError::Degenerate(format!(
                    "multiple opposite edges lie in span(r_{k}, t_{i})"
                )));
            }
            sigma_k.push(l);
        }
        // sigma_k must be a bijection.
        let mut seen = vec![false; m];
        for &l in &sigma_k {
            if seen[l] {
                return Err(Z2GraphError::Degenerate(format!(
                    "sigma_{k} is not a bijection"
                )));
            }
            seen[l] = true;
        }
        sigmas.push(sigma_k);
    }

    // sigma_i^{-1} . sigma_j is a fixed-point-free involution for i != j.
    let invert = |p: &[usize]| -> Vec<usize> {
        let mut inv = vec![0; p.len()];
        for (a, &b) in p.iter().enumerate() {
            inv[b] = a;
        }
        inv
    };
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> {
        // p after q
        q.iter().map(|&x| p[x]).collect()
    };
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let comp = compose(&invert(&sigmas[i]), &sigmas[j]);
            if comp.iter().enumerate().any(|(a, &b)| a == b) {
                return Err(Z2GraphError::Degenerate(format!(
                    "sigma_{i}^-1 sigma_{j} has a fixed point"
                )));
            }
            let square = compose(&comp, &comp);
            if square.iter().enumerate().any(|(a, &b)| a != b) {
                return Err(Z2GraphError::Degenerate(format!(
                    "sigma_{i}^-1 sigma_{j} does not have order two"
                )));
            }
        }
    }

    // The translates sigma_1^{-1} sigma_k generate an elementary abelian
    // group whose order divides m; the edge count is then a power of two in
    // {1, 2, 4}.
    let base_inv = invert(&sigmas[0]);
    let generators: Vec<Vec<usize>> = sigmas.iter().map(|s| compose(&base_inv, s)).collect();
    let mut group: Vec<Vec<usize>> = vec![(0..m).collect()];
    loop {
        let mut grew = false;
        let snapshot = group.clone();
        for g1 in &snapshot {
            for g2 in &generators {
                let prod = compose(g1, g2);
                if !group.contains(&prod) {
                    group.push(prod);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    group.sort();
    for g1 in &group {
        for g2 in &group {
            if compose(g1, g2) != compose(g2, g1) {
                return Err(Z2GraphError::Degenerate(
                    "generated permutation group is not abelian".into(),
                ));
            }
        }
    }
    if m % group.len() != 0 {
        return Err(Z2GraphError::Degenerate(format!(
            "group order {} does not divide the edge count {m}",
            group.len()
        )));
    }
    if !matches!(m, 1 | 2 | 4) {
        return Err(Z2GraphError::Degenerate(format!(
            "edge count {m} is not 1, 2, or 4"
        )));
    }
    Ok(SigmaFamily { sigmas, group })
}

/// The fitted half-sum model for four parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M4Model {
    /// u_0..u_3: pairwise sums and differences of the r-weights, halved when
    /// integral. Their span is four-dimensional.
    pub u: [IntVector; 4],
    /// The permutations matching the s-data to the reflection formulas.
    pub r_order: [usize; 4],
}

/// Verifies the reflection formulas
///   s1_i ~ (1/2) sum_j (-1)^(delta_ij) r_j,
///   s2_i ~ (1/2) sum_j (-1)^(delta_1j + delta_ij) r_j
/// up to reordering and rescaling, and returns the half-sum placements
/// u_1 = (r_1 - r_2)/2, u_2 = (r_1 + r_2)/2, u_3 = (r_3 - r_4)/2,
/// u_0 = (r_3 + r_4)/2. The span is confirmed to be four-dimensional.
pub fn fit_m4_model(
    r: &[IntVector; 4],
    s1: &[IntVector; 4],
    s2: &[IntVector; 4],
) -> Result<M4Model, Z2GraphError> {
    let rvec: Vec<IntVector> = r.to_vec();
    if lattice::rank(&rvec) != 4 {
        return Err(Z2GraphError::DependentWeights);
    }

    // Projective normal forms of the inputs.
    let lines = |v: &[IntVector; 4]| -> Vec<IntVector> {
        let mut out: Vec<IntVector> = v.iter().map(|x| x.primitive_part()).collect();
        out.sort();
        out
    };
    let s1_lines = lines(s1);
    let s2_lines = lines(s2);

    // Try every ordering of the r-weights; the doubled formulas avoid any
    // half-integer arithmetic, and rescaling makes doubling irrelevant.
    let mut perm = [0usize, 1, 2, 3];
    let orderings = permutations4();
    for order in orderings {
        let rr: Vec<&IntVector> = order.iter().map(|&x| &r[x]).collect();
        let total = rr[0].add(rr[1]).add(&rr[2].add(rr[3]));
        let mut s1_expect: Vec<IntVector> = (0..4)
            .map(|i| total.sub(&rr[i].scale(&BigInt::from(2))).primitive_part())
            .collect();
        s1_expect.sort();
        if s1_expect != s1_lines {
            continue;
        }
        let mut s2_expect: Vec<IntVector> = (0..4)
            .map(|i| {
                if i == 0 {
                    total.primitive_part()
                } else {
                    total
                        .sub(&rr[0].scale(&BigInt::from(2)))
                        .sub(&rr[i].scale(&BigInt::from(2)))
                        .primitive_part()
                }
            })
            .collect();
        s2_expect.sort();
        if s2_expect != s2_lines {
            continue;
        }
        perm = order;
        let doubled: [IntVector; 4] = [
            rr[2].add(rr[3]),
            rr[0].sub(rr[1]),
            rr[0].add(rr[1]),
            rr[2].sub(rr[3]),
        ];
        let u = halve_if_even(doubled);
        let uvec: Vec<IntVector> = u.to_vec();
        assert_eq!(lattice::rank(&uvec), 4, "independent r forces a 4-dim span");
        return Ok(M4Model { u, r_order: perm });
    }
    let _ = perm;
    Err(Z2GraphError::ReflectionMismatch)
}

/// Divides all four vectors by two when every entry is even.
fn halve_if_even(v: [IntVector; 4]) -> [IntVector; 4] {
    let two = BigInt::from(2);
    let all_even = v
        .iter()
        .all(|x| x.0.iter().all(|e| (e % &two).is_zero()));
    if all_even {
        v.map(|x| IntVector(x.0.iter().map(|e| e / &two).collect()))
    } else {
        v
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// Builds the edge-weight triple of the half-sum configuration from four
/// placements: r = u_2 +- u_3 and u_1 +- u_0, s = u_1 +- u_3 and u_2 +- u_0,
/// t = u_1 +- u_2 and u_3 +- u_0.
pub fn m4_triangle_from_placements(
    u: &[IntVector; 4],
) -> (Vec<IntVector>, Vec<IntVector>, Vec<IntVector>) {
    let r = vec![
        u[2].add(&u[3]),
        u[2].sub(&u[3]),
        u[1].add(&u[0]),
        u[1].sub(&u[0]),
    ];
    let s = vec![
        u[1].add(&u[3]),
        u[1].sub(&u[3]),
        u[2].add(&u[0]),
        u[2].sub(&u[0]),
    ];
    let t = vec![
        u[1].add(&u[2]),
        u[1].sub(&u[2]),
        u[3].add(&u[0]),
        u[3].sub(&u[0]),
    ];
    (r, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::FixedComponent;

    fn iv(e: &[i64]) -> IntVector {
        IntVector::from_i64(e)
    }

    /// Complete GKM-style labeled graph on isolated points from a coset
    /// structure: labels between i and j are a_ij + U, each m2 times.
    fn synthetic(
        rank: usize,
        k: usize,
        subspace: &[Z2Vector],
        rep: impl Fn(usize, usize) -> Z2Vector,
        m2: u32,
    ) -> Z2LabeledGraph {
        let u_elems = z2::span_elements(subspace);
        let m = m2 * u_elems.len() as u32;
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                // Distinct rational labels per parallel edge keep the base
                // graph a valid multigraph with m parallel edges.
                let mut idx = 0;
                for &u in &u_elems {
                    for _ in 0..m2 {
                        let mut label = vec![0i64; rank];
                        label[0] = 1;
                        label[1] = (i + 1) as i64;
                        label[2] = (j + 1) as i64;
                        label[3] = idx as i64;
                        edges.push(LabeledEdge {
                            i,
                            j,
                            label: iv(&label).primitive_part(),
                            z2label: rep(i, j) ^ u,
                            count: 1,
                        });
                        idx += 1;
                    }
                }
            }
        }
        let chi = k;
        let n = 2 * m as usize * (chi - 1);
        Z2LabeledGraph {
            rank,
            n,
            vertices: vec![FixedComponent::point(); k],
            edges,
            loops: vec![],
        }
    }

    #[test]
    fn coset_structure_two_vertices() {
        // Labels {a, a+u} with U = {0, u}: valid with m = 2, m2 = 1.
        let u = 0b0010u32;
        let a = 0b0001u32;
        let g = synthetic(4, 2, &[u], |_, _| a, 1);
        let cs = validate_z2_structure(&g).unwrap();
        assert_eq!(cs.subspace_basis, vec![u]);
        assert_eq!(cs.m2, 1);
    }

    #[test]
    fn coset_cocycle_on_triangle() {
        // a_01 = a, a_02 = b, a_12 = a + b with trivial U.
        let a = 0b01u32;
        let b = 0b10u32;
        let rep = move |i: usize, j: usize| match (i, j) {
            (0, 1) => a,
            (0, 2) => b,
            (1, 2) => a ^ b,
            _ => unreachable!(),
        };
        let g = synthetic(4, 3, &[], rep, 1);
        let cs = validate_z2_structure(&g).unwrap();
        assert!(cs.subspace_basis.is_empty());
    }

    #[test]
    fn cocycle_violation_detected() {
        let a = 0b001u32;
        let b = 0b010u32;
        let c = 0b100u32;
        let rep = move |i: usize, j: usize| match (i, j) {
            (0, 1) => a,
            (0, 2) => b,
            (1, 2) => a ^ b ^ c,
            _ => unreachable!(),
        };
        let g = synthetic(4, 3, &[], rep, 1);
        assert!(matches!(
            validate_z2_structure(&g),
            Err(Z2GraphError::CosetCocycle { .. })
        ));
    }

    #[test]
    fn involution_halving_branch() {
        // iota outside ker u: half the labels survive at every pair, the
        // surviving graph is connected and its dimension is n/2.
        let u = 0b0010u32;
        let a = 0b0001u32;
        let g = synthetic(4, 3, &[u], |_, _| a, 1);
        let iota = 0b0010u32; // u(iota) = 1, a(iota) = 0
        let rep = involution_fixed_analysis(&g, iota).unwrap();
        assert!(rep.halved);
        assert_eq!(rep.components.len(), 1);
        assert_eq!(rep.components[0].dim, g.n / 2);
    }

    #[test]
    fn involution_two_component_branch() {
        // iota in ker of U but not of the action: exactly two components
        // whose dimensions sum to n - 2m.
        let u = 0b0010u32;
        let rep = move |i: usize, j: usize| -> Z2Vector {
            // a_ij = c_i + c_j with colors c = (0, 1, 0) times 0b0100.
            let colors = [0u32, 0b0100, 0];
            colors[i] ^ colors[j]
        };
        let g = synthetic(4, 3, &[u], rep, 1);
        let iota = 0b0100u32; // kills u, pairs with the color character
        let report = involution_fixed_analysis(&g, iota).unwrap();
        assert!(!report.halved);
        assert_eq!(report.components.len(), 2);
        let m = 2;
        assert_eq!(report.verified_sum, Some(g.n - 2 * m));
    }

    #[test]
    fn kernel_involution_rejected() {
        let u = 0b0010u32;
        let a = 0b0001u32;
        let g = synthetic(4, 2, &[u], |_, _| a, 1);
        // iota = 0b1000 pairs trivially with every label.
        assert!(matches!(
            involution_fixed_analysis(&g, 0b1000),
            Err(Z2GraphError::KernelInvolution)
        ));
    }

    #[test]
    fn sigma_identity_for_simple_triangle() {
        let r = [iv(&[1, -1, 0])];
        let t = [iv(&[0, 1, -1])];
        let s = [iv(&[1, 0, -1])];
        let fam = sigma_permutations(&r, &t, &s).unwrap();
        assert_eq!(fam.sigmas, vec![vec![0]]);
        assert_eq!(fam.group.len(), 1);
    }

    #[test]
    fn sigma_group_for_quaternionic_triangle() {
        // Model placements u = (e1, e2, e3): edges u_i +- u_j.
        let r = [iv(&[1, -1, 0]), iv(&[1, 1, 0])];
        let t = [iv(&[0, 1, -1]), iv(&[0, 1, 1])];
        let s = [iv(&[1, 0, -1]), iv(&[1, 0, 1])];
        let fam = sigma_permutations(&r, &t, &s).unwrap();
        assert_eq!(fam.group.len(), 2);
    }

    #[test]
    fn sigma_group_for_half_sum_configuration() {
        let u = [iv(&[0, 0, 0, 1]), iv(&[1, 0, 0, 0]), iv(&[0, 1, 0, 0]), iv(&[0, 0, 1, 0])];
        let (r, s, t) = m4_triangle_from_placements(&u);
        // Triangle sides: r between (1,2), s between (0,2), t between (0,1):
        // feed them as the three sides of one triangle.
        let fam = sigma_permutations(&r, &t, &s).unwrap();
        assert_eq!(fam.group.len(), 4);
        // Elementary abelian: every element squares to the identity.
        for g in &fam.group {
            let sq: Vec<usize> = g.iter().map(|&x| g[x]).collect();
            assert_eq!(sq, (0..4).collect::<Vec<_>>());
        }
    }

    #[test]
    fn m4_fit_on_doubled_units() {
        // r_j = 2 e_j: the documented expected values.
        let r = [
            iv(&[2, 0, 0, 0]),
            iv(&[0, 2, 0, 0]),
            iv(&[0, 0, 2, 0]),
            iv(&[0, 0, 0, 2]),
        ];
        let s1 = [
            iv(&[-1, 1, 1, 1]),
            iv(&[1, -1, 1, 1]),
            iv(&[1, 1, -1, 1]),
            iv(&[1, 1, 1, -1]),
        ];
        let s2 = [
            iv(&[1, 1, 1, 1]),
            iv(&[-1, -1, 1, 1]),
            iv(&[-1, 1, -1, 1]),
            iv(&[-1, 1, 1, -1]),
        ];
        let model = fit_m4_model(&r, &s1, &s2).unwrap();
        assert_eq!(model.u[1], iv(&[1, -1, 0, 0]));
        assert_eq!(model.u[2], iv(&[1, 1, 0, 0]));
        assert_eq!(model.u[3], iv(&[0, 0, 1, -1]));
        assert_eq!(model.u[0], iv(&[0, 0, 1, 1]));
    }

    #[test]
    fn m4_fit_rejects_dependent_r() {
        let r = [
            iv(&[1, 0, 0, 0]),
            iv(&[0, 1, 0, 0]),
            iv(&[1, 1, 0, 0]),
            iv(&[0, 0, 0, 1]),
        ];
        let s = r.clone();
        assert!(matches!(
            fit_m4_model(&r, &s, &s),
            Err(Z2GraphError::DependentWeights)
        ));
    }

    #[test]
    fn m4_fit_rejects_perturbed_sign() {
        let r = [
            iv(&[2, 0, 0, 0]),
            iv(&[0, 2, 0, 0]),
            iv(&[0, 0, 2, 0]),
            iv(&[0, 0, 0, 2]),
        ];
        let mut s1 = [
            iv(&[-1, 1, 1, 1]),
            iv(&[1, -1, 1, 1]),
            iv(&[1, 1, -1, 1]),
            iv(&[1, 1, 1, -1]),
        ];
        let s2 = [
            iv(&[1, 1, 1, 1]),
            iv(&[-1, -1, 1, 1]),
            iv(&[-1, 1, -1, 1]),
            iv(&[-1, 1, 1, -1]),
        ];
        s1[0] = iv(&[-1, -1, 1, 1]); // one sign flipped
        assert!(matches!(
            fit_m4_model(&r, &s1, &s2),
            Err(Z2GraphError::ReflectionMismatch)
        ));
    }
}
