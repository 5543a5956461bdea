//! One-skeleton graphs with rational weight labels: model graphs for complex
//! and quaternionic projective ambients, structural validation (uniform edge
//! multiplicity and the Euler-characteristic formula), reconstruction of the
//! isotropy representation at a vertex, linear label models, and the
//! confluent Vandermonde freeness certificate.

pub mod fit;
pub mod vandermonde;

pub use fit::{fit_linear_model, verify_linear_model, FitError, LinearModel};

use crate::lattice::IntVector;
use crate::weights::WeightSystem;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Cohomological type of a fixed-point component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentKind {
    Point,
    Sphere,
    Cp,
    Hp,
}

/// A fixed-point component: an even-dimensional rational rank-one piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedComponent {
    pub dim: usize,
    pub kind: ComponentKind,
}

impl FixedComponent {
    pub fn point() -> Self {
        FixedComponent {
            dim: 0,
            kind: ComponentKind::Point,
        }
    }

    pub fn cp(complex_dim: usize) -> Self {
        FixedComponent {
            dim: 2 * complex_dim,
            kind: if complex_dim == 0 {
                ComponentKind::Point
            } else {
                ComponentKind::Cp
            },
        }
    }

    pub fn hp(quaternionic_dim: usize) -> Self {
        FixedComponent {
            dim: 4 * quaternionic_dim,
            kind: if quaternionic_dim == 0 {
                ComponentKind::Point
            } else {
                ComponentKind::Hp
            },
        }
    }

    /// Total Betti number (half the cohomology dimensions are zero): the
    /// Euler characteristic of the component.
    pub fn betti_total(&self) -> usize {
        match self.kind {
            ComponentKind::Point => 1,
            ComponentKind::Sphere => 2,
            ComponentKind::Cp => self.dim / 2 + 1,
            ComponentKind::Hp => self.dim / 4 + 1,
        }
    }

    pub fn check(&self) -> Result<(), GraphError> {
        let ok = match self.kind {
            ComponentKind::Point => self.dim == 0,
            ComponentKind::Sphere => self.dim >= 2 && self.dim % 2 == 0,
            ComponentKind::Cp => self.dim >= 2 && self.dim % 2 == 0,
            ComponentKind::Hp => self.dim >= 4 && self.dim % 4 == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(GraphError::BadComponent {
                dim: self.dim,
                kind: self.kind,
            })
        }
    }
}

/// Parallel edges between two vertices sharing one primitive label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub label: IntVector,
    pub count: u32,
}

/// Self-loops at a vertex; the label may be zero (trivial directions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfLoop {
    pub vertex: usize,
    pub label: IntVector,
    pub count: u32,
}

/// A labeled one-skeleton graph: vertices are fixed components, edges carry
/// primitive integer labels up to sign, self-loops may carry the zero label
/// only at positive-dimensional vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonGraph {
    pub rank: usize,
    pub n: usize,
    pub vertices: Vec<FixedComponent>,
    pub edges: Vec<Edge>,
    pub loops: Vec<SelfLoop>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("component of dimension {dim} cannot have kind {kind:?}")]
    BadComponent { dim: usize, kind: ComponentKind },
    #[error("edge ({i},{j}) has an invalid endpoint or a zero/non-primitive label")]
    BadEdge { i: usize, j: usize },
    #[error("self-loop at {vertex} is invalid: {reason}")]
    BadLoop { vertex: usize, reason: String },
    #[error("graph is not connected")]
    NotConnected,
    #[error("edge counts are not uniform: pair ({i},{j}) has {found}, expected {expected}")]
    NonUniform {
        i: usize,
        j: usize,
        found: u32,
        expected: u32,
    },
    #[error("loop count at positive-dimensional vertex {vertex} is {found}, expected {expected}")]
    LoopCount {
        vertex: usize,
        found: u32,
        expected: u32,
    },
    #[error("ambient dimension {n} is not divisible by 2m = {two_m}")]
    DimensionNotDivisible { n: usize, two_m: u32 },
    #[error("Euler characteristic {chi} does not equal n/(2m)+1 = {expected}")]
    EulerMismatch { chi: usize, expected: usize },
    #[error("multiplicity m = {m} not in {{1, 2, n/2}} although a component has dimension >= 4")]
    BadMultiplicity { m: u32 },
    #[error("model precondition failed: {0}")]
    ModelPrecondition(String),
    #[error("isotropy reconstruction failed at vertex {vertex}: {reason}")]
    Reconstruction { vertex: usize, reason: String },
}

/// Validation report: the uniform parallel-edge count and the Euler
/// characteristic of the skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkeletonReport {
    pub m: u32,
    pub chi: usize,
}

impl SkeletonGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn check_basic(&self) -> Result<(), GraphError> {
        for v in &self.vertices {
            v.check()?;
        }
        if self.n == 0 || self.n % 2 != 0 {
            return Err(GraphError::ModelPrecondition(
                "ambient dimension must be even and positive".into(),
            ));
        }
        for e in &self.edges {
            let endpoints_ok = e.i < self.vertex_count() && e.j < self.vertex_count() && e.i != e.j;
            let label_ok = e.label.len() == self.rank && e.label.is_primitive() && e.count > 0;
            if !endpoints_ok || !label_ok {
                return Err(GraphError::BadEdge { i: e.i, j: e.j });
            }
        }
        for l in &self.loops {
            if l.vertex >= self.vertex_count() {
                return Err(GraphError::BadLoop {
                    vertex: l.vertex,
                    reason: "vertex out of range".into(),
                });
            }
            if self.vertices[l.vertex].dim == 0 {
                return Err(GraphError::BadLoop {
                    vertex: l.vertex,
                    reason: "loops are only allowed at positive-dimensional vertices".into(),
                });
            }
            let label_ok = l.label.len() == self.rank
                && (l.label.is_zero() || l.label.is_primitive())
                && l.count > 0;
            if !label_ok {
                return Err(GraphError::BadLoop {
                    vertex: l.vertex,
                    reason: "label must be zero or primitive".into(),
                });
            }
        }
        Ok(())
    }

    /// Total number of parallel edges between i and j.
    pub fn pair_count(&self, i: usize, j: usize) -> u32 {
        self.edges
            .iter()
            .filter(|e| (e.i == i && e.j == j) || (e.i == j && e.j == i))
            .map(|e| e.count)
            .sum()
    }

    pub fn loop_count(&self, v: usize) -> u32 {
        self.loops
            .iter()
            .filter(|l| l.vertex == v)
            .map(|l| l.count)
            .sum()
    }

    fn is_connected(&self) -> bool {
        let k = self.vertex_count();
        if k == 0 {
            return false;
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.i, e.j), (e.j, e.i)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Checks uniform edge multiplicity, matching loop counts, and the Euler
/// formula chi = n/(2m) + 1, returning (m, chi).
pub fn validate_skeleton(g: &SkeletonGraph) -> Result<SkeletonReport, GraphError> {
    g.check_basic()?;
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    let k = g.vertex_count();

    // Uniform number of parallel edges between any two vertices.
    let mut m: Option<u32> = None;
    for i in 0..k {
        for j in i + 1..k {
            let c = g.pair_count(i, j);
            match m {
                None => m = Some(c),
                Some(expected) if expected != c => {
                    return Err(GraphError::NonUniform {
                        i,
                        j,
                        found: c,
                        expected,
                    })
                }
                _ => {}
            }
        }
    }
    // Single-vertex graphs read the multiplicity off the loop count.
    let m = match m {
        Some(m) => m,
        None => g.loop_count(0).max(1),
    };
    if m == 0 {
        return Err(GraphError::NonUniform {
            i: 0,
            j: 1,
            found: 0,
            expected: 1,
        });
    }

    // Loop counts at positive-dimensional vertices match m.
    for (v, comp) in g.vertices.iter().enumerate() {
        if comp.dim > 0 {
            let c = g.loop_count(v);
            if c != m {
                return Err(GraphError::LoopCount {
                    vertex: v,
                    found: c,
                    expected: m,
                });
            }
        }
    }

    // Euler characteristic formula.
    let two_m = 2 * m;
    if g.n % two_m as usize != 0 {
        return Err(GraphError::DimensionNotDivisible { n: g.n, two_m });
    }
    let chi: usize = g.vertices.iter().map(|v| v.betti_total()).sum();
    let expected = g.n / (two_m as usize) + 1;
    if chi != expected {
        return Err(GraphError::EulerMismatch { chi, expected });
    }

    // Multiplicity restriction in the presence of a component of dim >= 4.
    if g.vertices.iter().any(|v| v.dim >= 4)
        && !(m == 1 || m == 2 || m as usize * 2 == g.n)
    {
        return Err(GraphError::BadMultiplicity { m });
    }

    Ok(SkeletonReport { m, chi })
}

/// Ambient type for model graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Cp,
    Hp,
}

/// Builds the one-skeleton of a linear model: the complete graph on the given
/// components with labels u_i - u_j (complex projective ambient) or
/// u_i +- u_j (quaternionic ambient), plus the prescribed self-loops.
pub fn build_model_graph(
    kind: ModelKind,
    components: &[FixedComponent],
    u: &[IntVector],
) -> Result<SkeletonGraph, GraphError> {
    if components.is_empty() || components.len() != u.len() {
        return Err(GraphError::ModelPrecondition(
            "need one placement vector per component".into(),
        ));
    }
    let rank = u[0].len();
    if rank == 0 || u.iter().any(|v| v.len() != rank) {
        return Err(GraphError::ModelPrecondition(
            "placement vectors must share a positive length".into(),
        ));
    }
    for c in components {
        c.check()?;
    }
    for (a, va) in u.iter().enumerate() {
        for (b, vb) in u.iter().enumerate().skip(a + 1) {
            if va.eq_up_to_sign(vb) {
                return Err(GraphError::ModelPrecondition(format!(
                    "placements {a} and {b} agree up to sign"
                )));
            }
        }
    }

    let chi: usize = components.iter().map(|c| c.betti_total()).sum();
    let (_m, n) = match kind {
        ModelKind::Cp => (1u32, 2 * (chi - 1)),
        ModelKind::Hp => (2u32, 4 * (chi - 1)),
    };
    // Dimension bookkeeping: component dimensions are consistent with the
    // ambient via the Euler formula; component kinds must fit the ambient.
    for (idx, c) in components.iter().enumerate() {
        let ok = match (kind, c.kind) {
            (_, ComponentKind::Point) => true,
            (ModelKind::Cp, ComponentKind::Cp) => true,
            // A positive-dimensional component of a quaternionic model is a
            // complex-projective piece placed at a nonzero u, or the whole
            // space (single vertex).
            (ModelKind::Hp, ComponentKind::Cp) => !u[idx].is_zero(),
            (ModelKind::Hp, ComponentKind::Hp) => components.len() == 1,
            _ => false,
        };
        if !ok {
            return Err(GraphError::ModelPrecondition(format!(
                "component {idx} of kind {:?} does not fit a {kind:?} model",
                c.kind
            )));
        }
    }

    let mut edges: Vec<Edge> = Vec::new();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            match kind {
                ModelKind::Cp => edges.push(Edge {
                    i,
                    j,
                    label: u[i].sub(&u[j]).primitive_part(),
                    count: 1,
                }),
                ModelKind::Hp => {
                    let minus = u[i].sub(&u[j]).primitive_part();
                    let plus = u[i].add(&u[j]).primitive_part();
                    if minus == plus {
                        edges.push(Edge {
                            i,
                            j,
                            label: minus,
                            count: 2,
                        });
                    } else {
                        edges.push(Edge {
                            i,
                            j,
                            label: minus,
                            count: 1,
                        });
                        edges.push(Edge {
                            i,
                            j,
                            label: plus,
                            count: 1,
                        });
                    }
                }
            }
        }
    }

    let mut loops: Vec<SelfLoop> = Vec::new();
    for (idx, c) in components.iter().enumerate() {
        if c.dim == 0 {
            continue;
        }
        match (kind, c.kind) {
            (ModelKind::Cp, _) => loops.push(SelfLoop {
                vertex: idx,
                label: IntVector::zero(rank),
                count: 1,
            }),
            (ModelKind::Hp, ComponentKind::Hp) => loops.push(SelfLoop {
                vertex: idx,
                label: IntVector::zero(rank),
                count: 2,
            }),
            (ModelKind::Hp, _) => {
                // Complex-projective piece inside its quaternionic hull: one
                // trivial loop and one loop in the hull direction 2u ~ u.
                loops.push(SelfLoop {
                    vertex: idx,
                    label: IntVector::zero(rank),
                    count: 1,
                });
                loops.push(SelfLoop {
                    vertex: idx,
                    label: u[idx].primitive_part(),
                    count: 1,
                });
            }
        }
    }

    let g = SkeletonGraph {
        rank,
        n,
        vertices: components.to_vec(),
        edges,
        loops,
    };
    validate_skeleton(&g)?;
    Ok(g)
}

/// Reconstructs the weight multiset of the isotropy representation at a
/// vertex. For each incident label r, the component of the codimension-one
/// subgroup with kernel r is recovered from the r-labeled subgraph: its Euler
/// characteristic is the sum over reachable vertices, its multiplicity is the
/// uniform r-labeled parallel count, and its dimension is 2 * mult * (chi-1).
/// The label r then occurs with multiplicity (dim N - dim F_i) / 2. The zero
/// label contributes a trivial summand of dimension dim F_i.
pub fn isotropy_rep_at(g: &SkeletonGraph, vertex: usize) -> Result<WeightSystem, GraphError> {
    let report = validate_skeleton(g)?;
    let comp = &g.vertices[vertex];

    // Incident labels, with loop labels included.
    let mut labels: BTreeSet<IntVector> = BTreeSet::new();
    for e in &g.edges {
        if e.i == vertex || e.j == vertex {
            labels.insert(e.label.clone());
        }
    }
    for l in &g.loops {
        if l.vertex == vertex && !l.label.is_zero() {
            labels.insert(l.label.clone());
        }
    }

    let zero_loops = g
        .loops
        .iter()
        .filter(|l| l.vertex == vertex && l.label.is_zero())
        .map(|l| l.count)
        .sum::<u32>();

    let mut entries: Vec<(IntVector, u32)> = Vec::new();
    let mut total_dim = comp.dim;
    for label in labels {
        // Reachable set through label-r edges.
        let mut seen = vec![false; g.vertex_count()];
        seen[vertex] = true;
        let mut stack = vec![vertex];
        while let Some(v) = stack.pop() {
            for e in &g.edges {
                if e.label != label {
                    continue;
                }
                for (a, b) in [(e.i, e.j), (e.j, e.i)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        let reachable: Vec<usize> = (0..g.vertex_count()).filter(|&v| seen[v]).collect();

        // Uniform parallel count of r-labeled edges within the reachable set.
        let mult = if reachable.len() >= 2 {
            let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
            for e in &g.edges {
                if e.label == label && seen[e.i] && seen[e.j] {
                    let key = (e.i.min(e.j), e.i.max(e.j));
                    *counts.entry(key).or_insert(0) += e.count;
                }
            }
            let mut values: BTreeSet<u32> = counts.values().copied().collect();
            // Every pair of reachable vertices must carry the same count.
            if counts.len() != reachable.len() * (reachable.len() - 1) / 2 {
                values.insert(0);
            }
            if values.len() != 1 {
                return Err(GraphError::Reconstruction {
                    vertex,
                    reason: format!("label {label:?} has non-uniform parallel counts"),
                });
            }
            let pair_mult = values.into_iter().next().unwrap();
            // Loops with this label at positive-dimensional reachable
            // vertices must complete the component multiplicity.
            for &v in &reachable {
                if g.vertices[v].dim > 0 {
                    let r_loops: u32 = g
                        .loops
                        .iter()
                        .filter(|l| l.vertex == v && l.label == label)
                        .map(|l| l.count)
                        .sum();
                    let z_loops: u32 = g
                        .loops
                        .iter()
                        .filter(|l| l.vertex == v && l.label.is_zero())
                        .map(|l| l.count)
                        .sum();
                    if z_loops + r_loops != pair_mult {
                        return Err(GraphError::Reconstruction {
                            vertex,
                            reason: format!(
                                "loop bookkeeping at vertex {v} disagrees with label {label:?}"
                            ),
                        });
                    }
                }
            }
            pair_mult
        } else {
            // Loops only: the component multiplicity is the loop count plus
            // the trivial loops (the multiplicity of the component itself).
            let r_loops: u32 = g
                .loops
                .iter()
                .filter(|l| l.vertex == vertex && l.label == label)
                .map(|l| l.count)
                .sum();
            r_loops + zero_loops
        };

        let chi: usize = reachable.iter().map(|&v| g.vertices[v].betti_total()).sum();
        let dim_n = 2 * (mult as usize) * (chi - 1);
        if dim_n < comp.dim || (dim_n - comp.dim) % 2 != 0 {
            return Err(GraphError::Reconstruction {
                vertex,
                reason: format!(
                    "label {label:?} reconstructs dim {dim_n} below the component dimension"
                ),
            });
        }
        let weight_mult = ((dim_n - comp.dim) / 2) as u32;
        if weight_mult == 0 {
            return Err(GraphError::Reconstruction {
                vertex,
                reason: format!("label {label:?} reconstructs an empty weight space"),
            });
        }
        total_dim += 2 * weight_mult as usize;
        entries.push((label, weight_mult));
    }

    if total_dim != g.n {
        return Err(GraphError::Reconstruction {
            vertex,
            reason: format!(
                "weight-space dimensions sum to {total_dim}, ambient dimension is {}",
                g.n
            ),
        });
    }
    let _ = report;

    Ok(WeightSystem::new(g.rank, entries, comp.dim as u32)
        .expect("reconstructed weights are valid")
        .0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(e: &[i64]) -> IntVector {
        IntVector::from_i64(e)
    }

    #[test]
    fn cp_triangle_model() {
        // Three isolated points placed at e1, e2, 0: labels e1-e2, e1, e2.
        let comps = [FixedComponent::point(); 3];
        let u = [iv(&[1, 0]), iv(&[0, 1]), iv(&[0, 0])];
        let g = build_model_graph(ModelKind::Cp, &comps, &u).unwrap();
        let report = validate_skeleton(&g).unwrap();
        assert_eq!(report.m, 1);
        assert_eq!(report.chi, 3);
        assert_eq!(g.n, 4);
        let labels: BTreeSet<IntVector> = g.edges.iter().map(|e| e.label.clone()).collect();
        let expect: BTreeSet<IntVector> =
            [iv(&[1, -1]), iv(&[1, 0]), iv(&[0, 1])].into_iter().collect();
        assert_eq!(labels, expect);
    }

    #[test]
    fn hp_two_point_model() {
        let comps = [FixedComponent::point(); 2];
        let u = [iv(&[1, 0]), iv(&[0, 1])];
        let g = build_model_graph(ModelKind::Hp, &comps, &u).unwrap();
        let report = validate_skeleton(&g).unwrap();
        assert_eq!(report.m, 2);
        assert_eq!(report.chi, 2);
        assert_eq!(g.n, 4);
        let labels: BTreeSet<IntVector> = g.edges.iter().map(|e| e.label.clone()).collect();
        let expect: BTreeSet<IntVector> = [iv(&[1, -1]), iv(&[1, 1])].into_iter().collect();
        assert_eq!(labels, expect);
    }

    #[test]
    fn single_vertex_cp_model() {
        // The whole component fixed: one self-loop with label zero.
        let comps = [FixedComponent::cp(2)];
        let u = [iv(&[1, 0])];
        let g = build_model_graph(ModelKind::Cp, &comps, &u).unwrap();
        assert_eq!(g.n, 4);
        assert_eq!(g.edges.len(), 0);
        assert_eq!(g.loops.len(), 1);
        assert!(g.loops[0].label.is_zero());
        let report = validate_skeleton(&g).unwrap();
        assert_eq!(report.chi, 3);
    }

    #[test]
    fn two_vertex_sphere_graph() {
        // n = 2m forces chi = 2.
        let g = SkeletonGraph {
            rank: 2,
            n: 8,
            vertices: vec![FixedComponent::point(), FixedComponent::point()],
            edges: vec![
                Edge {
                    i: 0,
                    j: 1,
                    label: iv(&[1, 0]),
                    count: 2,
                },
                Edge {
                    i: 0,
                    j: 1,
                    label: iv(&[0, 1]),
                    count: 2,
                },
            ],
            loops: vec![],
        };
        let report = validate_skeleton(&g).unwrap();
        assert_eq!(report.m, 4);
        assert_eq!(report.chi, 2);
    }

    #[test]
    fn non_uniform_counts_rejected() {
        let comps = [FixedComponent::point(); 3];
        let u = [iv(&[1, 0]), iv(&[0, 1]), iv(&[0, 0])];
        let mut g = build_model_graph(ModelKind::Cp, &comps, &u).unwrap();
        g.edges.push(Edge {
            i: 0,
            j: 1,
            label: iv(&[1, 1]),
            count: 1,
        });
        assert!(matches!(
            validate_skeleton(&g),
            Err(GraphError::NonUniform { .. })
        ));
    }

    #[test]
    fn euler_formula_on_larger_models() {
        // CP ambient n = 12 with a positive-dimensional component.
        let comps = [
            FixedComponent::cp(2),
            FixedComponent::point(),
            FixedComponent::point(),
            FixedComponent::point(),
            FixedComponent::point(),
        ];
        let u = [
            iv(&[0, 0, 0]),
            iv(&[1, 0, 0]),
            iv(&[0, 1, 0]),
            iv(&[0, 0, 1]),
            iv(&[1, 1, 1]),
        ];
        let g = build_model_graph(ModelKind::Cp, &comps, &u).unwrap();
        assert_eq!(g.n, 2 * (7 - 1));
        let report = validate_skeleton(&g).unwrap();
        assert_eq!(report.m, 1);
        assert_eq!(report.chi, 7);
    }

    #[test]
    fn isotropy_at_cp_origin_vertex() {
        // Vertex placed at 0 sees weights e1, e2 with multiplicity one.
        let comps = [FixedComponent::point(); 3];
        let u = [iv(&[1, 0]), iv(&[0, 1]), iv(&[0, 0])];
        let g = build_model_graph(ModelKind::Cp, &comps, &u).unwrap();
        let w = isotropy_rep_at(&g, 2).unwrap();
        assert_eq!(w.entries().len(), 2);
        assert_eq!(w.entries()[0], (iv(&[0, 1]), 1));
        assert_eq!(w.entries()[1], (iv(&[1, 0]), 1));
        assert_eq!(w.trivial_multiplicity(), 0);
    }

    #[test]
    fn isotropy_on_hp_pair() {
        let comps = [FixedComponent::point(); 2];
        let u = [iv(&[1, 0]), iv(&[0, 1])];
        let g = build_model_graph(ModelKind::Hp, &comps, &u).unwrap();
        let w = isotropy_rep_at(&g, 0).unwrap();
        // Both labels appear with multiplicity one; total dimension 4 = n.
        assert_eq!(w.entries().len(), 2);
        assert!(w.entries().iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn isotropy_with_positive_dimensional_vertex() {
        // CP^1 and a point in CP ambient n = 6: at the point, the weight
        // toward the CP^1 has multiplicity chi(CP^1) = 2.
        let comps = [FixedComponent::cp(1), FixedComponent::point(), FixedComponent::point()];
        let u = [iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])];
        let g = build_model_graph(ModelKind::Cp, &comps, &u).unwrap();
        assert_eq!(g.n, 2 * (4 - 1));
        let w = isotropy_rep_at(&g, 1).unwrap();
        let toward_cp1 = iv(&[1, -1]);
        let entry = w.entries().iter().find(|(v, _)| *v == toward_cp1).unwrap();
        assert_eq!(entry.1, 2);
        // At the CP^1 itself: trivial part of dimension 2.
        let w0 = isotropy_rep_at(&g, 0).unwrap();
        assert_eq!(w0.trivial_multiplicity(), 2);
    }

    #[test]
    fn hp_model_with_cp_component() {
        // CP^1 placed at u != 0 inside a quaternionic model: the loop labels
        // are 0 and u.
        let comps = [FixedComponent::cp(1), FixedComponent::point()];
        let u = [iv(&[1, 0]), iv(&[0, 1])];
        let g = build_model_graph(ModelKind::Hp, &comps, &u).unwrap();
        assert_eq!(g.n, 4 * (3 - 1));
        let report = validate_skeleton(&g).unwrap();
        assert_eq!(report.m, 2);
        let w = isotropy_rep_at(&g, 0).unwrap();
        // Loop weight u with multiplicity 1 (normal of CP^1 in HP^1),
        // pair weights each 1, trivial part 2: total = 2 + 2*3 = 8 = n.
        let loop_entry = w.entries().iter().find(|(v, _)| *v == iv(&[1, 0])).unwrap();
        assert_eq!(loop_entry.1, 1);
        assert_eq!(w.trivial_multiplicity(), 2);
    }
}
