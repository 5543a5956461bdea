//! Seeded synthetic-instance generation for stress tests and benchmarks:
//! unimodular base changes, random weight systems with or without planted
//! structure, GF(2) sets with the sparseness property, model graphs, and
//! coset-labeled graphs.

use crate::gkm::{build_model_graph, FixedComponent, ModelKind, SkeletonGraph};
use crate::lattice::IntVector;
use crate::weights::WeightSystem;
use crate::z2::{self, Z2Set, Z2Vector};
use crate::z2graph::{LabeledEdge, Z2LabeledGraph};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random unimodular matrix as a list of rows, built from elementary row
/// operations with small coefficients.
pub fn unimodular_matrix(d: usize, ops: usize, rng: &mut StdRng) -> Vec<IntVector> {
    let mut rows: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
    for _ in 0..ops {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d);
        while j == i && d > 1 {
            j = rng.gen_range(0..d);
        }
        match rng.gen_range(0..3) {
            0 if d > 1 => {
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                let add = rows[j].scale(&c);
                rows[i] = rows[i].add(&add);
            }
            1 => rows.swap(i, j.min(d - 1)),
            _ => rows[i] = rows[i].neg(),
        }
    }
    rows
}

/// Applies a unimodular base change to every weight.
pub fn apply_base_change(w: &WeightSystem, cols: &[IntVector]) -> WeightSystem {
    w.base_change(cols)
}

/// A random weight system with entries in a small box; `classes` attempts are
/// made, duplicates merge. Not necessarily faithful.
pub fn random_system(d: usize, classes: usize, rng: &mut StdRng) -> WeightSystem {
    let mut entries = Vec::new();
    for _ in 0..classes {
        loop {
            let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-2i64..=2)).collect();
            if v.iter().any(|&x| x != 0) {
                entries.push((IntVector::from_i64(&v), 1u32));
                break;
            }
        }
    }
    WeightSystem::new(d, entries, 0).expect("nonzero entries").0
}

/// A random faithful weight system: unit weights are always included so the
/// span is the full lattice, plus extra random classes.
pub fn random_faithful_system(d: usize, extra: usize, rng: &mut StdRng) -> WeightSystem {
    let mut entries: Vec<(IntVector, u32)> =
        (0..d).map(|i| (IntVector::unit(d, i), 1u32)).collect();
    for _ in 0..extra {
        loop {
            let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-2i64..=2)).collect();
            if v.iter().any(|&x| x != 0) {
                entries.push((IntVector::from_i64(&v), 1));
                break;
            }
        }
    }
    let w = WeightSystem::new(d, entries, 0).expect("valid").0;
    debug_assert!(w.is_faithful());
    w
}

/// The extremal system {e_i} plus {e_i - e_j}, pushed through a random
/// unimodular base change.
pub fn planted_extremal(d: usize, rng: &mut StdRng) -> WeightSystem {
    let mut entries: Vec<(IntVector, u32)> = Vec::new();
    for i in 0..d {
        entries.push((IntVector::unit(d, i), 1));
        for j in 0..i {
            entries.push((IntVector::unit(d, j).sub(&IntVector::unit(d, i)), 1));
        }
    }
    let w = WeightSystem::new(d, entries, 0).expect("valid").0;
    let cols = unimodular_matrix(d, 3 * d + 4, rng);
    w.base_change(&cols)
}

/// A faithful system with a planted non-saturated subset (finite isotropy).
pub fn planted_finite_isotropy(d: usize, rng: &mut StdRng) -> WeightSystem {
    let mut entries: Vec<(IntVector, u32)> =
        (0..d).map(|i| (IntVector::unit(d, i), 1u32)).collect();
    // Two weights whose pair spans an index-two sublattice.
    let mut a = vec![0i64; d];
    a[0] = 1;
    a[1] = 1;
    let mut b = vec![0i64; d];
    b[0] = 1;
    b[1] = -1;
    entries.push((IntVector::from_i64(&a), 1));
    entries.push((IntVector::from_i64(&b), 1));
    let w = WeightSystem::new(d, entries, 0).expect("valid").0;
    let cols = unimodular_matrix(d, 2 * d + 3, rng);
    w.base_change(&cols)
}

/// A random generating set with the sparseness property, produced by
/// filtering random sets; falls back to the extremal set if sampling fails.
pub fn random_property_set(d: usize, rng: &mut StdRng) -> Z2Set {
    for _ in 0..200 {
        let count = rng.gen_range(d..=d * (d + 1) / 2);
        let members: Vec<Z2Vector> = (0..count)
            .map(|_| rng.gen_range(1..1u32 << d))
            .collect();
        let s = Z2Set::new(d, members).expect("in range");
        if s.is_generating() && z2::has_codim3_property(&s).unwrap_or(false) {
            return s;
        }
    }
    z2::hamming_weight2_set(d)
}

/// A property set derived from an extremal set by random closure operations
/// (projections along members and intersections with spanned subspaces).
pub fn closure_derived_set(d: usize, rng: &mut StdRng) -> Z2Set {
    let start_dim = (d + rng.gen_range(0..=2)).min(7);
    let mut s = z2::hamming_weight2_set(start_dim);
    while s.dim() > d {
        if rng.gen_bool(0.5) {
            let nonzero: Vec<Z2Vector> = s.nonzero().collect();
            let pick = nonzero[rng.gen_range(0..nonzero.len())];
            s = s.project_along(pick);
        } else {
            // Intersect with the span of a random (dim-1)-subset of members.
            let mut pool: Vec<Z2Vector> = s.nonzero().collect();
            let mut chosen: Vec<Z2Vector> = Vec::new();
            while z2::rank(&chosen) < s.dim() - 1 && !pool.is_empty() {
                let pick = pool.swap_remove(rng.gen_range(0..pool.len()));
                chosen.push(pick);
            }
            let sub = s.intersect_with_span(&chosen);
            if sub.dim() >= d && sub.is_generating() {
                s = sub;
            }
        }
    }
    s
}

/// Random placements for a model graph: pairwise distinct up to sign.
pub fn random_placements(d: usize, count: usize, rng: &mut StdRng) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = Vec::new();
    while out.len() < count {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-4i64..=4)).collect();
        let v = IntVector::from_i64(&v);
        if out.iter().all(|w| !w.eq_up_to_sign(&v)) {
            out.push(v);
        }
    }
    out
}

/// A random model graph over isolated points, with its hidden placements.
pub fn random_model_graph(
    kind: ModelKind,
    d: usize,
    vertices: usize,
    rng: &mut StdRng,
) -> (SkeletonGraph, Vec<IntVector>) {
    loop {
        let u = random_placements(d, vertices, rng);
        let comps = vec![FixedComponent::point(); vertices];
        if let Ok(g) = build_model_graph(kind, &comps, &u) {
            return (g, u);
        }
    }
}

/// A complete coset-labeled graph on isolated points: the GF(2) labels
/// between i and j are (c_i + c_j + base) + U, each with multiplicity m2, and
/// the rational labels are pairwise distinct primitives. The triple condition
/// holds iff `base` lies in the subspace; other values plant a violation.
pub fn coset_labeled_graph(
    rank: usize,
    vertices: usize,
    subspace: &[Z2Vector],
    colors: &[Z2Vector],
    base: Z2Vector,
    m2: u32,
) -> Z2LabeledGraph {
    assert_eq!(colors.len(), vertices);
    let u_elems = z2::span_elements(subspace);
    let m = m2 * u_elems.len() as u32;
    let mut edges = Vec::new();
    for i in 0..vertices {
        for j in i + 1..vertices {
            let rep = colors[i] ^ colors[j] ^ base;
            let mut idx = 0i64;
            for &u in &u_elems {
                for _ in 0..m2 {
                    let mut label = vec![0i64; rank];
                    label[0] = 1;
                    label[1.min(rank - 1)] += (i + 1) as i64;
                    label[2.min(rank - 1)] += ((j + 1) * 7) as i64;
                    label[3.min(rank - 1)] += idx * 53;
                    edges.push(LabeledEdge {
                        i,
                        j,
                        label: IntVector::from_i64(&label).primitive_part(),
                        z2label: rep ^ u,
                        count: 1,
                    });
                    idx += 1;
                }
            }
        }
    }
    let n = 2 * m as usize * (vertices - 1);
    Z2LabeledGraph {
        rank,
        n,
        vertices: vec![FixedComponent::point(); vertices],
        edges,
        loops: vec![],
    }
}
