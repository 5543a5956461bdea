//! Weight-system analysis for torus representations: faithfulness, detection
//! of finite isotropy, reduction to connected isotropy, the circle-splitting
//! construction, iterated splitting, and the d(d+1)/2 bound with its
//! extremal classification.
//!
//! A weight system is a multiset of nonzero integer characters of a d-torus,
//! pairwise inequivalent up to sign. All verdicts here are exact lattice
//! computations; nothing is numeric.

use crate::lattice::{self, canonical_basis, elementary_divisors, IntVector, Sublattice};
use crate::z2::{self, Z2Set};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("weight {0:?} is zero")]
    ZeroWeight(usize),
    #[error("weight length {found} does not match rank {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("rank must be between 1 and 32")]
    RankOutOfRange,
    #[error("weight system is not faithful")]
    NotFaithful,
    #[error("rank {0} is too small for a circle split (need at least 3)")]
    RankTooSmall(usize),
    #[error("expected rank {expected} = 2*steps+1, found {found}")]
    StepMismatch { expected: usize, found: usize },
    #[error("system has a finite-isotropy witness on weights {witness:?}")]
    DisconnectedIsotropy { witness: Vec<usize> },
    #[error("weights are not injective modulo two: {0}")]
    Mod2Failure(String),
}

/// A multiset of pairwise-inequivalent nonzero weights with multiplicities,
/// plus the multiplicity of the trivial summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    rank: usize,
    entries: Vec<(IntVector, u32)>,
    trivial_multiplicity: u32,
}

/// A warning emitted when equivalent weights are merged on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeNote {
    pub weight: IntVector,
    pub total_multiplicity: u32,
}

impl WeightSystem {
    /// Canonicalizes signs, merges weights that agree up to sign, and sorts.
    pub fn new(
        rank: usize,
        weights: Vec<(IntVector, u32)>,
        trivial_multiplicity: u32,
    ) -> Result<(Self, Vec<MergeNote>), WeightError> {
        if rank == 0 || rank > 32 {
            return Err(WeightError::RankOutOfRange);
        }
        let mut entries: Vec<(IntVector, u32)> = Vec::new();
        let mut notes = Vec::new();
        for (i, (w, m)) in weights.into_iter().enumerate() {
            if w.len() != rank {
                return Err(WeightError::LengthMismatch {
                    expected: rank,
                    found: w.len(),
                });
            }
            if w.is_zero() {
                return Err(WeightError::ZeroWeight(i));
            }
            let w = w.canonical_sign();
            match entries.iter_mut().find(|(e, _)| *e == w) {
                Some((e, em)) => {
                    *em += m;
                    notes.push(MergeNote {
                        weight: e.clone(),
                        total_multiplicity: *em,
                    });
                }
                None => entries.push((w, m)),
            }
        }
        entries.sort();
        Ok((
            WeightSystem {
                rank,
                entries,
                trivial_multiplicity,
            },
            notes,
        ))
    }

    /// Convenience constructor for multiplicity-one systems.
    pub fn simple(rank: usize, weights: &[&[i64]]) -> Self {
        let ws = weights
            .iter()
            .map(|w| (IntVector::from_i64(w), 1u32))
            .collect();
        WeightSystem::new(rank, ws, 0).expect("valid test system").0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &[(IntVector, u32)] {
        &self.entries
    }

    pub fn weights(&self) -> impl Iterator<Item = &IntVector> {
        self.entries.iter().map(|(w, _)| w)
    }

    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    pub fn trivial_multiplicity(&self) -> u32 {
        self.trivial_multiplicity
    }

    fn weight_vec(&self) -> Vec<IntVector> {
        self.weights().cloned().collect()
    }

    pub fn span(&self) -> Sublattice {
        canonical_basis(self.rank, &self.weight_vec()).expect("weights have uniform length")
    }

    /// True iff the weights generate the full character lattice, i.e. the
    /// representation has trivial kernel.
    pub fn is_faithful(&self) -> bool {
        let divs = elementary_divisors(self.rank, &self.weight_vec())
            .expect("weights have uniform length");
        divs.len() == self.rank && divs.iter().all(|d| d.is_one())
    }

    /// True iff the kernel of the representation is finite, i.e. the weights
    /// span a full-rank sublattice. Such systems become faithful after the
    /// reduction step divides out a maximal finite isotropy group.
    pub fn has_finite_kernel(&self) -> bool {
        lattice::rank(&self.weight_vec()) == self.rank
    }

    /// Applies a unimodular change of the character lattice basis.
    pub fn base_change(&self, cols: &[IntVector]) -> WeightSystem {
        assert_eq!(cols.len(), self.rank);
        let entries = self
            .entries
            .iter()
            .map(|(w, m)| {
                let img = IntVector(cols.iter().map(|c| w.dot(c)).collect());
                (img, *m)
            })
            .collect();
        WeightSystem::new(self.rank, entries, self.trivial_multiplicity)
            .expect("unimodular image is valid")
            .0
    }
}

/// A closed subgroup of the torus, encoded by the sublattice of characters
/// vanishing on it. The encoding determines the subgroup completely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    ambient_rank: usize,
    annihilator: Sublattice,
}

impl SubgroupSpec {
    pub fn new(ambient_rank: usize, annihilator: Sublattice) -> Self {
        assert_eq!(annihilator.ambient_rank(), ambient_rank);
        SubgroupSpec {
            ambient_rank,
            annihilator,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn annihilator(&self) -> &Sublattice {
        &self.annihilator
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.annihilator.rank()
    }

    /// Connected iff the annihilator is saturated.
    pub fn is_connected(&self) -> bool {
        self.annihilator.is_saturated()
    }

    /// Nontrivial elementary divisors of the component group.
    pub fn component_group(&self) -> Vec<BigInt> {
        elementary_divisors(self.ambient_rank, self.annihilator.basis())
            .expect("annihilator basis is well formed")
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }
}

/// A subset of weight indices whose span fails saturation, witnessing a
/// point with disconnected (equivalently, nontrivial finite) isotropy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyWitness {
    pub indices: Vec<usize>,
    pub divisors: Vec<BigInt>,
}

/// Searches weight subsets in order of (size, lexicographic position) and
/// returns the first whose span is not saturated. `None` means every subset
/// of weights spans a saturated sublattice (connected isotropy everywhere).
///
/// Dependent subsets are skipped: a dependent subset contains a strictly
/// smaller independent subset with the same span, already visited earlier, so
/// only independent subsets can be minimal witnesses.
pub fn finite_isotropy_witness(w: &WeightSystem) -> Option<IsotropyWitness> {
    let vecs = w.weight_vec();
    let l = vecs.len();
    let max_size = w.rank().min(l);
    for size in 1..=max_size {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            let subset: Vec<IntVector> = indices.iter().map(|&i| vecs[i].clone()).collect();
            // Zero: dependent subset (skipped); one: saturated span; anything
            // else is a witness.
            let dgcd = lattice::determinantal_gcd(&subset);
            if !dgcd.is_zero() && !dgcd.is_one() {
                let divs = elementary_divisors(w.rank(), &subset).expect("uniform length");
                return Some(IsotropyWitness {
                    indices,
                    divisors: divs,
                });
            }
            if !advance_combination(&mut indices, l) {
                break;
            }
        }
    }
    None
}

/// Steps `indices` to the next size-k combination of {0..n-1} in
/// lexicographic order; false when exhausted.
fn advance_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < n - k + i {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Outcome of the reduction step: the induced system on the quotient by a
/// maximal finite isotropy group, plus the base change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// The finite group divided out, as a subgroup spec (dimension zero).
    pub finite_group: SubgroupSpec,
    /// Rows are the basis of the new character lattice in old coordinates.
    pub lattice: Sublattice,
    /// The induced weight system in the new coordinates.
    pub system: WeightSystem,
}

/// Divides out a maximal finite isotropy group: among all spans of
/// independent full-rank weight subsets, picks an inclusion-minimal lattice
/// (ties broken by canonical encoding), restricts to the weights it contains,
/// and re-expresses them in its basis. The result has no finite-isotropy
/// witness.
pub fn reduce_to_connected_isotropy(w: &WeightSystem) -> Result<Reduction, WeightError> {
    if !w.has_finite_kernel() {
        return Err(WeightError::NotFaithful);
    }
    let d = w.rank();
    let vecs = w.weight_vec();
    let l = vecs.len();

    // A span of maximal determinant is inclusion-minimal among all spans of
    // full-rank weight subsets: a proper sub-span would need a strictly
    // larger determinant. Its finite kernel is therefore inclusion-maximal
    // among the finite isotropy groups. Determinants are cheap; canonical
    // bases are only computed for the maximal ones.
    let mut best_det = BigInt::one();
    let mut best_subsets: Vec<Vec<usize>> = Vec::new();
    let mut indices: Vec<usize> = (0..d).collect();
    loop {
        let subset: Vec<IntVector> = indices.iter().map(|&i| vecs[i].clone()).collect();
        let det = lattice::determinant_quick(&subset).abs();
        if !det.is_zero() {
            if det > best_det {
                best_det = det.clone();
                best_subsets.clear();
            }
            if det == best_det {
                best_subsets.push(indices.clone());
            }
        }
        if !advance_combination(&mut indices, l) {
            break;
        }
    }
    let lattice = if best_det.is_one() {
        lattice::full_lattice(d)
    } else {
        best_subsets
            .iter()
            .map(|idx| {
                let subset: Vec<IntVector> = idx.iter().map(|&i| vecs[i].clone()).collect();
                canonical_basis(d, &subset).expect("uniform length")
            })
            .min_by_key(|s| s.encoding())
            .expect("some span has a nontrivial kernel")
    };

    let entries: Vec<(IntVector, u32)> = w
        .entries()
        .iter()
        .filter_map(|(wt, m)| lattice.coordinates(wt).map(|c| (c, *m)))
        .collect();
    let system = WeightSystem::new(d, entries, w.trivial_multiplicity())
        .expect("restricted system is valid")
        .0;
    debug_assert!(system.is_faithful());
    Ok(Reduction {
        finite_group: SubgroupSpec::new(d, lattice.clone()),
        lattice,
        system,
    })
}

/// Reduction of the weights modulo two, as a subset of GF(2)^d with 0 added.
/// For a faithful system with connected isotropy this map is injective on the
/// weight classes, misses zero, and the image has the codimension-three
/// property; a failure is returned together with a finite-isotropy witness.
pub fn mod2_weights(w: &WeightSystem) -> Result<Z2Set, (WeightError, Option<IsotropyWitness>)> {
    let mut images = Vec::new();
    for (i, (wt, _)) in w.entries().iter().enumerate() {
        let mut bits = 0u32;
        for (c, e) in wt.0.iter().enumerate() {
            if e.is_odd() {
                bits |= 1 << c;
            }
        }
        if bits == 0 {
            let witness = finite_isotropy_witness(w);
            return Err((
                WeightError::Mod2Failure(format!("weight {i} reduces to zero")),
                witness,
            ));
        }
        if images.contains(&bits) {
            let witness = finite_isotropy_witness(w);
            return Err((
                WeightError::Mod2Failure(format!("collision at weight {i}")),
                witness,
            ));
        }
        images.push(bits);
    }
    Ok(Z2Set::new(w.rank(), images).expect("rank is within bitset range"))
}

/// The outcome of one circle split. The quotient torus has character lattice
/// `l1`; `fixed_weights`, `circle_weight` and `complement` are expressed in
/// the canonical basis of `l1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub subgroup: SubgroupSpec,
    pub l1: Sublattice,
    pub l2: Sublattice,
    pub fixed_weights: WeightSystem,
    pub circle_weight: (IntVector, u32),
    pub complement: WeightSystem,
    pub reduction: Option<Reduction>,
}

/// Finds a one-dimensional subgroup H such that the induced representation on
/// the fixed space of H is faithful for the quotient torus and splits as a
/// product of a semifree circle summand and a complementary torus summand.
///
/// If the input has finite isotropy, the reduction step is applied first.
/// Among all valid splits the one minimizing the canonical encoding of
/// (l1, l2, circle weight) is returned.
pub fn s1_split(w: &WeightSystem) -> Result<SplitResult, WeightError> {
    if w.rank() < 3 {
        return Err(WeightError::RankTooSmall(w.rank()));
    }
    if !w.has_finite_kernel() {
        return Err(WeightError::NotFaithful);
    }
    let d = w.rank();

    let (reduction, working) = if finite_isotropy_witness(w).is_some() || !w.is_faithful() {
        let red = reduce_to_connected_isotropy(w)?;
        let sys = red.system.clone();
        (Some(red), sys)
    } else {
        (None, w.clone())
    };

    let s = mod2_weights(&working).map_err(|(e, _)| e)?;
    let splits = z2::enumerate_splits(&s).expect("connected isotropy gives the property");

    // Weights of the working system in the order matching the mod-2 image.
    let wvecs: Vec<IntVector> = working.weights().cloned().collect();
    let bits_of = |v: &IntVector| -> u32 {
        let mut b = 0u32;
        for (c, e) in v.0.iter().enumerate() {
            if e.is_odd() {
                b |= 1 << c;
            }
        }
        b
    };

    let embed = reduction.as_ref().map(|r| r.lattice.clone());
    let lift = |v: &IntVector| -> IntVector {
        match &embed {
            Some(lat) => lat.embed(v),
            None => v.clone(),
        }
    };

    // The quotient lattice l1 depends only on the codimension-one subspace
    // spanned by the split; group the candidates so that lattice work is done
    // once per distinct subspace.
    let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<&z2::Split>> =
        std::collections::BTreeMap::new();
    for split in &splits {
        let mut hat_basis = split.subspace_basis.clone();
        hat_basis.push(split.lonely);
        groups
            .entry(z2::echelon_basis(&hat_basis))
            .or_default()
            .push(split);
    }

    // Lattice work once per group, then the winner by (l1, l2, h) encoding.
    let mut computed: Vec<(Vec<BigInt>, Sublattice, &Vec<&z2::Split>)> = groups
        .iter()
        .map(|(hat_basis, group)| {
            let in_hat: Vec<IntVector> = wvecs
                .iter()
                .filter(|v| z2::in_span(hat_basis, bits_of(v)))
                .cloned()
                .collect();
            let l1_red = canonical_basis(d, &in_hat).expect("uniform length");
            let l1 = canonical_basis(d, &l1_red.basis().iter().map(&lift).collect::<Vec<_>>())
                .expect("lift is well formed");
            (l1.encoding(), l1, group)
        })
        .collect();
    computed.sort_by(|a, b| a.0.cmp(&b.0));
    let min_l1_key = computed[0].0.clone();

    let mut best: Option<(Vec<BigInt>, Sublattice, Sublattice, IntVector)> = None;
    for (l1_key, l1, group) in computed {
        if l1_key != min_l1_key {
            break;
        }
        for split in group {
            let in_w: Vec<IntVector> = wvecs
                .iter()
                .filter(|v| z2::in_span(&split.subspace_basis, bits_of(v)))
                .cloned()
                .collect();
            let h_red = wvecs
                .iter()
                .find(|v| bits_of(v) == split.lonely)
                .expect("the lonely class has a unique preimage")
                .clone();
            let l2_red = canonical_basis(d, &in_w).expect("uniform length");
            let l2 = canonical_basis(d, &l2_red.basis().iter().map(&lift).collect::<Vec<_>>())
                .expect("lift is well formed");
            let h_orig = lift(&h_red);

            let mut key = l1_key.clone();
            key.extend(l2.encoding());
            key.extend(h_orig.0.iter().cloned());
            if best.as_ref().is_none_or(|(k, _, _, _)| key < *k) {
                best = Some((key, l1.clone(), l2, h_orig));
            }
        }
    }
    let (_, l1, l2, h_orig) = best.expect("the splitting lemma guarantees at least one split");

    let fixed_entries: Vec<(IntVector, u32)> = w
        .entries()
        .iter()
        .filter_map(|(wt, m)| l1.coordinates(wt).map(|c| (c, *m)))
        .collect();
    let complement_entries: Vec<(IntVector, u32)> = w
        .entries()
        .iter()
        .filter(|(wt, _)| l2.contains(wt))
        .filter_map(|(wt, m)| l1.coordinates(wt).map(|c| (c, *m)))
        .collect();
    let circle_mult = w
        .entries()
        .iter()
        .find(|(wt, _)| wt.eq_up_to_sign(&h_orig))
        .map(|(_, m)| *m)
        .expect("the split weight is a weight of the input");
    let circle_vec = l1
        .coordinates(&h_orig.canonical_sign())
        .expect("h lies in l1");

    let fixed_weights = WeightSystem::new(d - 1, fixed_entries, w.trivial_multiplicity())
        .expect("fixed system is valid")
        .0;
    let complement = WeightSystem::new(d - 1, complement_entries, w.trivial_multiplicity())
        .expect("complement system is valid")
        .0;

    Ok(SplitResult {
        subgroup: SubgroupSpec::new(d, l1.clone()),
        l1,
        l2,
        fixed_weights,
        circle_weight: (circle_vec.canonical_sign(), circle_mult),
        complement,
        reduction,
    })
}

/// Independent verification of a split result against the defining clauses,
/// kept free of the construction internals.
pub fn verify_split_result(w: &WeightSystem, res: &SplitResult) -> Result<(), String> {
    let d = w.rank();
    let fail = |m: &str| Err(m.to_string());
    if res.l1.rank() != d - 1 {
        return fail("l1 does not have corank one");
    }
    if res.l2.rank() != d - 2 {
        return fail("l2 does not have corank two");
    }
    if !res.l1.contains_sublattice(&res.l2) {
        return fail("l2 is not contained in l1");
    }
    // Spanned by the weights they contain.
    let in_l1: Vec<IntVector> = w.weights().filter(|v| res.l1.contains(v)).cloned().collect();
    let in_l2: Vec<IntVector> = w.weights().filter(|v| res.l2.contains(v)).cloned().collect();
    if canonical_basis(d, &in_l1).unwrap() != res.l1 {
        return fail("l1 is not spanned by the weights it contains");
    }
    if canonical_basis(d, &in_l2).unwrap() != res.l2 {
        return fail("l2 is not spanned by the weights it contains");
    }
    // One-more-element condition.
    if in_l1.len() != in_l2.len() + 1 {
        return fail("l1 does not contain exactly one more weight than l2");
    }
    let extra: Vec<&IntVector> = in_l1.iter().filter(|v| !res.l2.contains(v)).collect();
    if extra.len() != 1 {
        return fail("the extra weight of l1 is not unique");
    }
    let h = extra[0];
    // The circle weight is the extra weight, expressed in the l1 basis.
    match res.l1.coordinates(h) {
        Some(c) => {
            if !c.eq_up_to_sign(&res.circle_weight.0) {
                return fail("circle weight does not match the extra weight");
            }
        }
        None => return fail("extra weight does not lie in l1"),
    }
    // Semifreeness: the circle weight is primitive in the quotient lattice.
    if !res.circle_weight.0.primitive_part().eq_up_to_sign(&res.circle_weight.0) {
        return fail("circle weight is not primitive in the quotient lattice");
    }
    // Induced representation is faithful for the quotient torus.
    if !res.fixed_weights.is_faithful() {
        return fail("induced representation is not faithful");
    }
    // Product structure: the quotient character lattice decomposes as
    // <h> + l2 with index one, so the circle and complementary-torus kernels
    // intersect trivially and together span the quotient torus.
    let mut gens: Vec<IntVector> = res.l2.basis().to_vec();
    gens.push(h.clone());
    if canonical_basis(d, &gens).unwrap() != res.l1 {
        return fail("l1 does not split as <h> + l2");
    }
    if res.l2.contains(h) {
        return fail("h lies in l2");
    }
    // Without a reduction step the lattices sit saturated in the full
    // character lattice (independent weight subsets extend to bases).
    if res.reduction.is_none() && (!res.l1.is_saturated() || !res.l2.is_saturated()) {
        return fail("l1 or l2 is not saturated in the character lattice");
    }
    // The subgroup is one-dimensional with annihilator l1.
    if res.subgroup.dim() != 1 || res.subgroup.annihilator() != &res.l1 {
        return fail("subgroup spec does not match l1");
    }
    Ok(())
}

/// Enumeration oracle: all corank-one sublattices spanned by subsets of the
/// weights, for cross-checking split candidates.
pub fn corank1_spanned_sublattices(w: &WeightSystem) -> Vec<Sublattice> {
    let d = w.rank();
    let vecs = w.weight_vec();
    let n = vecs.len();
    let mut out: Vec<Sublattice> = Vec::new();
    for mask in 1u64..1 << n {
        let subset: Vec<IntVector> = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| vecs[i].clone())
            .collect();
        let lat = canonical_basis(d, &subset).unwrap();
        if lat.rank() == d - 1 {
            // Keep only lattices actually spanned by *all* weights they contain,
            // then dedupe.
            let spanned: Vec<IntVector> =
                vecs.iter().filter(|v| lat.contains(v)).cloned().collect();
            let closed = canonical_basis(d, &spanned).unwrap();
            if closed == lat && !out.contains(&lat) {
                out.push(lat);
            }
        }
    }
    out.sort_by_key(|l| l.encoding());
    out
}

/// Result of iterating the circle split on a torus of odd rank 2k+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedSplit {
    pub subgroup: SubgroupSpec,
    pub induced: WeightSystem,
}

/// Applies the circle split `steps` times to a faithful system of rank
/// 2*steps+1, accumulating a subgroup H of dimension `steps` whose fixed
/// space carries a faithful representation with exactly steps+1 inequivalent
/// weights. For steps = 0 the subgroup is a maximal finite isotropy group and
/// the induced circle action is semifree.
pub fn iterated_split(w: &WeightSystem, steps: usize) -> Result<IteratedSplit, WeightError> {
    if w.rank() != 2 * steps + 1 {
        return Err(WeightError::StepMismatch {
            expected: 2 * steps + 1,
            found: w.rank(),
        });
    }
    if !w.has_finite_kernel() {
        return Err(WeightError::NotFaithful);
    }
    let d = w.rank();

    // Basis of the current character lattice expressed in original coordinates.
    let mut frame: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
    let mut current = w.clone();
    let mut peeled: Vec<(IntVector, u32)> = Vec::new();

    let to_original = |frame: &[IntVector], v: &IntVector| -> IntVector {
        let mut out = IntVector::zero(d);
        for (c, row) in v.0.iter().zip(frame) {
            out = out.add(&row.scale(c));
        }
        out
    };

    for _ in 0..steps {
        let split = s1_split(&current)?;
        let h_cur = {
            // The extra weight in current coordinates.
            let in_l1: Vec<IntVector> = current
                .weights()
                .filter(|v| split.l1.contains(v))
                .cloned()
                .collect();
            in_l1
                .into_iter()
                .find(|v| !split.l2.contains(v))
                .expect("one-more-element condition")
        };
        let mult = current
            .entries()
            .iter()
            .find(|(wt, _)| *wt == h_cur)
            .map(|(_, m)| *m)
            .unwrap();
        peeled.push((to_original(&frame, &h_cur), mult));

        // Descend into the complement lattice l2.
        let next_entries: Vec<(IntVector, u32)> = current
            .entries()
            .iter()
            .filter_map(|(wt, m)| split.l2.coordinates(wt).map(|c| (c, *m)))
            .collect();
        frame = split
            .l2
            .basis()
            .iter()
            .map(|row| to_original(&frame, row))
            .collect();
        current = WeightSystem::new(current.rank() - 2, next_entries, 0)
            .expect("descended system is valid")
            .0;
        debug_assert!(current.is_faithful());
    }

    // Terminal rank-one step: divide out a maximal finite isotropy group.
    debug_assert_eq!(current.rank(), 1);
    let red = reduce_to_connected_isotropy(&current)?;
    let mut collected: Vec<(IntVector, u32)> = peeled;
    for (wt, m) in red.system.entries() {
        collected.push((to_original(&frame, &red.lattice.embed(wt)), *m));
    }

    let char_lattice = canonical_basis(
        d,
        &collected.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>(),
    )
    .unwrap();
    debug_assert_eq!(char_lattice.rank(), steps + 1);
    let induced_entries: Vec<(IntVector, u32)> = collected
        .iter()
        .map(|(v, m)| (char_lattice.coordinates(v).expect("by construction"), *m))
        .collect();
    let induced = WeightSystem::new(steps + 1, induced_entries, w.trivial_multiplicity())
        .expect("induced system is valid")
        .0;
    debug_assert!(induced.is_faithful());
    Ok(IteratedSplit {
        subgroup: SubgroupSpec::new(d, char_lattice),
        induced,
    })
}

/// Result of the weight-count bound with the extremal classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub count: usize,
    pub bound: usize,
    /// Present iff count == bound: a lattice basis such that every weight is
    /// some e_i or e_i - e_j up to sign.
    pub extremal_basis: Option<Vec<IntVector>>,
}

/// Counts inequivalent nontrivial weights of a faithful connected-isotropy
/// system (guaranteed at most d(d+1)/2) and, in the extremal case, recovers a
/// basis e_1..e_d with every weight of the form e_i or e_i - e_j up to sign.
pub fn extremal_classification(w: &WeightSystem) -> Result<ExtremalReport, WeightError> {
    if !w.is_faithful() {
        return Err(WeightError::NotFaithful);
    }
    if let Some(witness) = finite_isotropy_witness(w) {
        return Err(WeightError::DisconnectedIsotropy {
            witness: witness.indices,
        });
    }
    let d = w.rank();
    let bound = d * (d + 1) / 2;
    let count = w.class_count();
    assert!(
        count <= bound,
        "connected isotropy forces at most d(d+1)/2 weight classes"
    );
    if count < bound {
        return Ok(ExtremalReport {
            count,
            bound,
            extremal_basis: None,
        });
    }

    let s = mod2_weights(w).map_err(|(e, _)| e)?;
    let bits_basis = z2::canonicalize_hamming2(&s)
        .expect("image is generating")
        .expect("extremal systems reduce to the weight-two configuration");

    // Unique preimages of the basis classes and of the pair classes.
    let bits_of = |v: &IntVector| -> u32 {
        let mut b = 0u32;
        for (c, e) in v.0.iter().enumerate() {
            if e.is_odd() {
                b |= 1 << c;
            }
        }
        b
    };
    let preimage = |bits: u32| -> IntVector {
        w.weights()
            .find(|v| bits_of(v) == bits)
            .expect("mod-2 reduction is injective here")
            .clone()
    };

    let h: Vec<IntVector> = bits_basis.iter().map(|&b| preimage(b)).collect();
    // Fix signs: e_1 = h_1; e_j is chosen so that the preimage of b_1 + b_j
    // equals +-(e_1 - e_j).
    let mut basis: Vec<IntVector> = vec![h[0].clone()];
    for j in 1..d {
        let pair = preimage(bits_basis[0] ^ bits_basis[j]);
        let diff_plus = basis[0].sub(&h[j]);
        let diff_minus = basis[0].add(&h[j]);
        if pair.eq_up_to_sign(&diff_plus) {
            basis.push(h[j].clone());
        } else if pair.eq_up_to_sign(&diff_minus) {
            basis.push(h[j].neg());
        } else {
            unreachable!("pair weights have coefficients of absolute value one");
        }
    }
    // Verification: all pair weights match e_i - e_j and the basis is a
    // lattice basis.
    for i in 1..d {
        for j in 0..i {
            let pair = preimage(bits_basis[i] ^ bits_basis[j]);
            let diff = basis[i].sub(&basis[j]);
            assert!(
                pair.eq_up_to_sign(&diff),
                "extremal weights must be pairwise differences"
            );
        }
    }
    assert!(lattice::is_zbasis(&basis).expect("square by construction"));
    Ok(ExtremalReport {
        count,
        bound,
        extremal_basis: Some(basis),
    })
}

/// Checks that a recovered basis regenerates the weight set up to sign.
pub fn regenerates_weights(w: &WeightSystem, basis: &[IntVector]) -> bool {
    let d = w.rank();
    assert_eq!(basis.len(), d);
    let mut expect: Vec<IntVector> = Vec::new();
    for i in 0..d {
        expect.push(basis[i].canonical_sign());
        for j in 0..i {
            expect.push(basis[j].sub(&basis[i]).canonical_sign());
        }
    }
    expect.sort();
    let mut got: Vec<IntVector> = w.weights().map(|v| v.canonical_sign()).collect();
    got.sort();
    expect == got
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::full_lattice;

    #[test]
    fn faithfulness() {
        assert!(WeightSystem::simple(2, &[&[1, 0], &[0, 1]]).is_faithful());
        // Kernel of order two.
        assert!(!WeightSystem::simple(2, &[&[2, 0], &[0, 1]]).is_faithful());
        assert!(WeightSystem::simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0]])
            .is_faithful());
    }

    #[test]
    fn witness_absent_for_extremal_d3() {
        // All 2^6 subsets span saturated sublattices.
        let w = WeightSystem::simple(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]],
        );
        assert_eq!(finite_isotropy_witness(&w), None);
    }

    #[test]
    fn witness_for_index_two_pair() {
        let w = WeightSystem::simple(2, &[&[1, 1], &[1, -1]]);
        let witness = finite_isotropy_witness(&w).unwrap();
        assert_eq!(witness.indices.len(), 2);
        assert_eq!(witness.divisors, vec![BigInt::one(), BigInt::from(2)]);
    }

    #[test]
    fn witness_for_order_two_triple() {
        // The triple spans a sublattice of index two.
        let w = WeightSystem::simple(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        let witness = finite_isotropy_witness(&w).unwrap();
        assert_eq!(witness.indices, vec![0, 1, 2]);
        assert!(witness.divisors.contains(&BigInt::from(2)));
    }

    #[test]
    fn reduction_identity_when_connected() {
        let w = WeightSystem::simple(2, &[&[1, 0], &[0, 1]]);
        let red = reduce_to_connected_isotropy(&w).unwrap();
        assert_eq!(red.lattice, full_lattice(2));
        assert_eq!(red.system, w);
        assert_eq!(red.finite_group.dim(), 0);
        assert!(red.finite_group.component_group().is_empty());
    }

    #[test]
    fn reduction_divides_out_order_two() {
        // F is the order-2 kernel of {2e1, e2}.
        let w = WeightSystem::simple(2, &[&[2, 0], &[0, 1], &[1, 1]]);
        let red = reduce_to_connected_isotropy(&w).unwrap();
        assert_eq!(finite_isotropy_witness(&red.system), None);
        assert!(red.system.is_faithful());
        assert_eq!(red.finite_group.component_group(), vec![BigInt::from(2)]);
    }

    #[test]
    fn mod2_of_basis() {
        let w = WeightSystem::simple(2, &[&[1, 0], &[0, 1]]);
        let s = mod2_weights(&w).unwrap();
        assert_eq!(s.members(), &[0b00, 0b01, 0b10]);
    }

    #[test]
    fn mod2_collision_carries_witness() {
        let w = WeightSystem::simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, 0]]);
        let (err, witness) = mod2_weights(&w).unwrap_err();
        assert!(matches!(err, WeightError::Mod2Failure(_)));
        let witness = witness.expect("collisions force finite isotropy");
        assert!(witness.divisors.iter().any(|d| !d.is_one()));
    }

    #[test]
    fn split_small_example() {
        // E = {e1, e2, e3, e1-e2}: enumerate all corank-one spanned
        // sublattices and check the result satisfies every clause.
        let w = WeightSystem::simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0]]);
        let res = s1_split(&w).unwrap();
        verify_split_result(&w, &res).unwrap();
        // The documented candidate (l1 = <e3, e1-e2>, l2 = <e3>, h = e1-e2)
        // is among the valid splits.
        let candidates = corank1_spanned_sublattices(&w);
        let l1_doc = canonical_basis(3, &[IntVector::from_i64(&[0, 0, 1]), IntVector::from_i64(&[1, -1, 0])]).unwrap();
        assert!(candidates.contains(&l1_doc));
        let doc = SplitResult {
            subgroup: SubgroupSpec::new(3, l1_doc.clone()),
            l1: l1_doc.clone(),
            l2: canonical_basis(3, &[IntVector::from_i64(&[0, 0, 1])]).unwrap(),
            fixed_weights: WeightSystem::new(
                2,
                vec![
                    (l1_doc.coordinates(&IntVector::from_i64(&[0, 0, 1])).unwrap(), 1),
                    (l1_doc.coordinates(&IntVector::from_i64(&[1, -1, 0])).unwrap(), 1),
                ],
                0,
            )
            .unwrap()
            .0,
            circle_weight: (
                l1_doc
                    .coordinates(&IntVector::from_i64(&[1, -1, 0]))
                    .unwrap()
                    .canonical_sign(),
                1,
            ),
            complement: WeightSystem::new(
                2,
                vec![(l1_doc.coordinates(&IntVector::from_i64(&[0, 0, 1])).unwrap(), 1)],
                0,
            )
            .unwrap()
            .0,
            reduction: None,
        };
        verify_split_result(&w, &doc).unwrap();
    }

    #[test]
    fn split_extremal_d3() {
        let w = WeightSystem::simple(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]],
        );
        let res = s1_split(&w).unwrap();
        verify_split_result(&w, &res).unwrap();
    }

    #[test]
    fn split_applies_reduction_first() {
        // Planted finite isotropy in rank 4.
        let w = WeightSystem::simple(
            4,
            &[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 0, 0]],
        );
        assert!(finite_isotropy_witness(&w).is_some());
        let res = s1_split(&w).unwrap();
        assert!(res.reduction.is_some());
        // The lifted lattices still satisfy the rank clauses.
        assert_eq!(res.l1.rank(), 3);
        assert_eq!(res.l2.rank(), 2);
        assert!(res.fixed_weights.is_faithful());
    }

    #[test]
    fn split_requires_rank_three() {
        let w = WeightSystem::simple(2, &[&[1, 0], &[0, 1]]);
        assert!(matches!(s1_split(&w), Err(WeightError::RankTooSmall(2))));
    }

    #[test]
    fn iterated_split_steps_zero() {
        let w = WeightSystem::simple(1, &[&[2]]);
        let res = iterated_split(&w, 0).unwrap();
        assert_eq!(res.subgroup.dim(), 0);
        assert_eq!(res.subgroup.component_group(), vec![BigInt::from(2)]);
        assert_eq!(res.induced.class_count(), 1);
        assert_eq!(res.induced.entries()[0].0, IntVector::from_i64(&[1]));
    }

    #[test]
    fn iterated_split_one_step() {
        let w = WeightSystem::simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0]]);
        let res = iterated_split(&w, 1).unwrap();
        assert_eq!(res.subgroup.dim(), 1);
        assert_eq!(res.induced.class_count(), 2);
        assert!(res.induced.is_faithful());
    }

    #[test]
    fn iterated_split_rank_mismatch() {
        let w = WeightSystem::simple(2, &[&[1, 0], &[0, 1]]);
        assert!(matches!(
            iterated_split(&w, 1),
            Err(WeightError::StepMismatch { .. })
        ));
    }

    #[test]
    fn extremal_d2() {
        let w = WeightSystem::simple(2, &[&[1, 0], &[0, 1], &[1, -1]]);
        let rep = extremal_classification(&w).unwrap();
        assert_eq!(rep.count, 3);
        let basis = rep.extremal_basis.unwrap();
        assert!(regenerates_weights(&w, &basis));
    }

    #[test]
    fn extremal_d3() {
        let w = WeightSystem::simple(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]],
        );
        let rep = extremal_classification(&w).unwrap();
        assert_eq!(rep.count, 6);
        let basis = rep.extremal_basis.unwrap();
        assert!(regenerates_weights(&w, &basis));
    }

    #[test]
    fn extremal_rejects_disconnected() {
        // Faithful, but {e1, e1+2e2} spans an index-two sublattice.
        let w = WeightSystem::simple(2, &[&[1, 0], &[0, 1], &[1, 2]]);
        assert!(matches!(
            extremal_classification(&w),
            Err(WeightError::DisconnectedIsotropy { .. })
        ));
    }

    #[test]
    fn merge_note_on_sign_duplicates() {
        let (w, notes) = WeightSystem::new(
            3,
            vec![
                (IntVector::from_i64(&[1, 0, 0]), 1),
                (IntVector::from_i64(&[-1, 0, 0]), 1),
            ],
            0,
        )
        .unwrap();
        assert_eq!(w.class_count(), 1);
        assert_eq!(w.entries()[0].1, 2);
        assert_eq!(notes.len(), 1);
    }
}
