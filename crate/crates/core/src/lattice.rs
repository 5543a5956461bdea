//! Exact integer-lattice algebra: Hermite and Smith normal forms, saturation
//! and basis tests over arbitrary-precision integers.
//!
//! Everything here is pure value arithmetic on `BigInt`; no floating point is
//! used anywhere. Hermite normal form is row-style and upper-staircase with
//! positive pivots and entries above each pivot reduced into `[0, pivot)`,
//! which makes it a unique canonical form for the generated sublattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector length {found} does not match ambient rank {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("expected exactly {expected} vectors, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("ambient rank must be at least 1")]
    ZeroRank,
}

/// A vector of the character lattice `Z^d`, with exact entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(pub Vec<BigInt>);

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl IntVector {
    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); len];
        v[i] = BigInt::one();
        IntVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for e in &self.0 {
            g = g.gcd(e);
        }
        g
    }

    /// True if the entries are coprime and the first nonzero entry is positive.
    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one() && self.has_canonical_sign()
    }

    pub fn has_canonical_sign(&self) -> bool {
        match self.0.iter().find(|e| !e.is_zero()) {
            Some(e) => e.is_positive(),
            None => true,
        }
    }

    /// Flips the sign so the first nonzero entry is positive.
    pub fn canonical_sign(&self) -> Self {
        if self.has_canonical_sign() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Divides out the content and fixes the sign convention.
    /// The zero vector stays zero.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|e| e / &g).collect()).canonical_sign()
    }

    /// Whether `self` and `other` agree up to a global sign.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

/// A sublattice of `Z^d` in canonical (Hermite normal form) basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<IntVector>,
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice[d={}; ", self.ambient_rank)?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

impl Sublattice {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// Membership test by reduction against the HNF basis.
    pub fn contains(&self, v: &IntVector) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        let mut v = v.clone();
        for row in &self.basis {
            let p = pivot_col(row).expect("basis rows are nonzero");
            if v.0[p].is_zero() {
                continue;
            }
            let (q, r) = v.0[p].div_rem(&row.0[p]);
            if !r.is_zero() {
                return false;
            }
            v = v.sub(&row.scale(&q));
        }
        v.is_zero()
    }

    pub fn contains_sublattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|row| self.contains(row))
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the sublattice.
    pub fn coordinates(&self, v: &IntVector) -> Option<IntVector> {
        assert_eq!(v.len(), self.ambient_rank);
        let mut v = v.clone();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = pivot_col(row).expect("basis rows are nonzero");
            if v.0[p].is_zero() {
                coords.push(BigInt::zero());
                continue;
            }
            let (q, r) = v.0[p].div_rem(&row.0[p]);
            if !r.is_zero() {
                return None;
            }
            v = v.sub(&row.scale(&q));
            coords.push(q);
        }
        if v.is_zero() {
            Some(IntVector(coords))
        } else {
            None
        }
    }

    /// Maps coordinate vectors back to ambient coordinates.
    pub fn embed(&self, coords: &IntVector) -> IntVector {
        assert_eq!(coords.len(), self.rank());
        let mut out = IntVector::zero(self.ambient_rank);
        for (c, row) in coords.0.iter().zip(&self.basis) {
            out = out.add(&row.scale(c));
        }
        out
    }

    /// The quotient by this sublattice is torsion-free iff all elementary
    /// divisors are 1.
    pub fn is_saturated(&self) -> bool {
        elementary_divisors_of_rows(&self.basis)
            .iter()
            .all(|x| x.is_one())
    }

    /// Saturation: the set of ambient vectors with a multiple in the lattice.
    pub fn saturation(&self) -> Sublattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        // Solve over Q: saturate each HNF row by clearing the rational
        // denominators of its expression in a triangular basis. Equivalent and
        // simpler: the saturation is the kernel-of-kernel. We compute the
        // integer kernel of the transpose and take its integer kernel again.
        let ker = integer_kernel(&transpose(&self.basis, self.ambient_rank));
        if ker.is_empty() {
            return full_lattice(self.ambient_rank);
        }
        let ker2 = integer_kernel(&transpose(&ker, self.ambient_rank));
        canonical_basis(self.ambient_rank, &ker2).expect("saturation is well formed")
    }

    /// A deterministic total encoding used for tie-breaking.
    pub fn encoding(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::from(self.rank() as i64)];
        for row in &self.basis {
            out.extend(row.0.iter().cloned());
        }
        out
    }
}

fn pivot_col(row: &IntVector) -> Option<usize> {
    row.0.iter().position(|e| !e.is_zero())
}

pub fn full_lattice(d: usize) -> Sublattice {
    Sublattice {
        ambient_rank: d,
        basis: (0..d).map(|i| IntVector::unit(d, i)).collect(),
    }
}

fn check_lengths(d: usize, generators: &[IntVector]) -> Result<(), LatticeError> {
    if d == 0 {
        return Err(LatticeError::ZeroRank);
    }
    for g in generators {
        if g.len() != d {
            return Err(LatticeError::LengthMismatch {
                expected: d,
                found: g.len(),
            });
        }
    }
    Ok(())
}

/// Hermite normal form of the row span: the canonical basis of the sublattice
/// generated by `generators` inside `Z^d`.
pub fn canonical_basis(d: usize, generators: &[IntVector]) -> Result<Sublattice, LatticeError> {
    check_lengths(d, generators)?;
    let rows = hnf_rows(generators.to_vec());
    Ok(Sublattice {
        ambient_rank: d,
        basis: rows,
    })
}

/// Row HNF: upper staircase, positive pivots, entries above pivots in `[0, pivot)`.
fn hnf_rows(mut rows: Vec<IntVector>) -> Vec<IntVector> {
    rows.retain(|r| !r.is_zero());
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut done = 0usize;
    for col in 0..ncols {
        // Clear column `col` below row `done` with extended-gcd row ops.
        let mut pivot_row: Option<usize> = None;
        for r in done..rows.len() {
            if !rows[r].0[col].is_zero() {
                pivot_row = Some(r);
                break;
            }
        }
        let Some(pr) = pivot_row else { continue };
        rows.swap(done, pr);
        for r in done + 1..rows.len() {
            if rows[r].0[col].is_zero() {
                continue;
            }
            let a = rows[done].0[col].clone();
            let b = rows[r].0[col].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            let new_done: Vec<BigInt> = (0..ncols)
                .map(|c| &s * &rows[done].0[c] + &t * &rows[r].0[c])
                .collect();
            let new_r: Vec<BigInt> = (0..ncols)
                .map(|c| -&b_g * &rows[done].0[c] + &a_g * &rows[r].0[c])
                .collect();
            rows[done] = IntVector(new_done);
            rows[r] = IntVector(new_r);
        }
        if rows[done].0[col].is_negative() {
            rows[done] = rows[done].neg();
        }
        // Reduce the entries above the new pivot into [0, pivot).
        let pivot = rows[done].0[col].clone();
        for r in 0..done {
            let e = rows[r].0[col].clone();
            let q = e.div_floor(&pivot);
            if !q.is_zero() {
                let sub = rows[done].scale(&q);
                rows[r] = rows[r].sub(&sub);
            }
        }
        done += 1;
        if done == rows.len() {
            break;
        }
    }
    rows.truncate(done);
    rows.retain(|r| !r.is_zero());
    rows
}

/// Smith normal form divisor chain `d1 | d2 | ... | dr` of the generator matrix.
pub fn elementary_divisors(
    d: usize,
    generators: &[IntVector],
) -> Result<Vec<BigInt>, LatticeError> {
    check_lengths(d, generators)?;
    Ok(elementary_divisors_of_rows(generators))
}

fn elementary_divisors_of_rows(rows: &[IntVector]) -> Vec<BigInt> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = rows.len();
    let n = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();

    let mut rank = 0usize;
    for k in 0..m.min(n) {
        let Some((pi, pj)) = find_pivot(&a, k) else {
            break;
        };
        a.swap(k, pi);
        swap_cols(&mut a, k, pj);
        loop {
            let mut changed = false;
            // Clear column k.
            for i in k + 1..m {
                if a[i][k].is_zero() {
                    continue;
                }
                if (&a[i][k] % &a[k][k]).is_zero() {
                    let q = &a[i][k] / &a[k][k];
                    for j in k..n {
                        let v = &a[k][j] * &q;
                        a[i][j] -= v;
                    }
                } else {
                    let eg = a[k][k].extended_gcd(&a[i][k]);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let ak_g = &a[k][k] / &g;
                    let ai_g = &a[i][k] / &g;
                    for j in k..n {
                        let top = &s * &a[k][j] + &t * &a[i][j];
                        let bot = -&ai_g * &a[k][j] + &ak_g * &a[i][j];
                        a[k][j] = top;
                        a[i][j] = bot;
                    }
                }
                changed = true;
            }
            // Clear row k.
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                if (&a[k][j] % &a[k][k]).is_zero() {
                    let q = &a[k][j] / &a[k][k];
                    for i in k..m {
                        let v = &a[i][k] * &q;
                        a[i][j] -= v;
                    }
                } else {
                    let eg = a[k][k].extended_gcd(&a[k][j]);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let ak_g = &a[k][k] / &g;
                    let aj_g = &a[k][j] / &g;
                    for i in k..m {
                        let left = &s * &a[i][k] + &t * &a[i][j];
                        let right = -&aj_g * &a[i][k] + &ak_g * &a[i][j];
                        a[i][k] = left;
                        a[i][j] = right;
                    }
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
        rank += 1;
    }

    let mut divs: Vec<BigInt> = (0..rank).map(|i| a[i][i].abs()).collect();
    // Enforce the divisibility chain by gcd/lcm swaps.
    loop {
        let mut fixed = true;
        for i in 0..divs.len().saturating_sub(1) {
            if !(&divs[i + 1] % &divs[i]).is_zero() {
                let g = divs[i].gcd(&divs[i + 1]);
                let l = &divs[i] / &g * &divs[i + 1];
                divs[i] = g;
                divs[i + 1] = l;
                fixed = false;
            }
        }
        if fixed {
            break;
        }
    }
    divs
}

fn find_pivot(a: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    for i in k..a.len() {
        for j in k..a[i].len() {
            if !a[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// True iff the quotient by the span of `sub` is torsion-free.
pub fn is_saturated(sub: &Sublattice) -> bool {
    sub.is_saturated()
}

/// True iff exactly `d` vectors of length `d` with determinant of absolute
/// value one are given.
pub fn is_zbasis(vectors: &[IntVector]) -> Result<bool, LatticeError> {
    let d = vectors
        .first()
        .map(|v| v.len())
        .ok_or(LatticeError::ZeroRank)?;
    check_lengths(d, vectors)?;
    if vectors.len() != d {
        return Err(LatticeError::CountMismatch {
            expected: d,
            found: vectors.len(),
        });
    }
    Ok(determinant(vectors).abs().is_one())
}

/// Determinant of a square matrix given as rows, by fraction-free elimination.
pub fn determinant(rows: &[IntVector]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(rows.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn rank(rows: &[IntVector]) -> usize {
    hnf_rows(rows.to_vec()).len()
}

/// Gcd of all maximal (k x k) minors of a k x d matrix: zero iff the rows are
/// dependent, one iff the row span is a saturated sublattice. Early exit once
/// the gcd reaches one. Small matrices run on checked i128 arithmetic.
pub fn determinantal_gcd(rows: &[IntVector]) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    let d = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == d));
    if k > d {
        // More rows than columns: reduce through the HNF instead.
        let h = hnf_rows(rows.to_vec());
        if h.len() < k.min(d) {
            return BigInt::zero();
        }
        return determinantal_gcd(&h);
    }

    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| {
            r.0.iter()
                .map(|e| i128::try_from(e).ok().filter(|v| v.abs() < 1 << 40))
                .collect()
        })
        .collect();

    let mut cols: Vec<usize> = (0..k).collect();
    let mut g = BigInt::zero();
    loop {
        let det = match &small {
            Some(m) => det_i128(m, &cols).map(BigInt::from),
            None => None,
        };
        let det = det.unwrap_or_else(|| {
            let sub: Vec<IntVector> = rows
                .iter()
                .map(|r| IntVector(cols.iter().map(|&c| r.0[c].clone()).collect()))
                .collect();
            determinant(&sub)
        });
        g = g.gcd(&det);
        if g.is_one() {
            return g;
        }
        // Advance the column combination.
        let mut i = k;
        let mut done = true;
        while i > 0 {
            i -= 1;
            if cols[i] < d - k + i {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                done = false;
                break;
            }
        }
        if done {
            return g;
        }
    }
}

/// Determinant with an i128 fast path for small entries.
pub fn determinant_quick(rows: &[IntVector]) -> BigInt {
    let n = rows.len();
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| {
            r.0.iter()
                .map(|e| i128::try_from(e).ok().filter(|v| v.abs() < 1 << 40))
                .collect()
        })
        .collect();
    if let Some(m) = small {
        let cols: Vec<usize> = (0..n).collect();
        if let Some(det) = det_i128(&m, &cols) {
            return BigInt::from(det);
        }
    }
    determinant(rows)
}

/// Checked Bareiss determinant of the selected columns; `None` on overflow.
fn det_i128(rows: &[Vec<i128>], cols: &[usize]) -> Option<i128> {
    let n = cols.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| cols.iter().map(|&c| r[c]).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k]
                    .checked_mul(a[i][j])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn transpose(rows: &[IntVector], ncols: usize) -> Vec<IntVector> {
    (0..ncols)
        .map(|c| IntVector(rows.iter().map(|r| r.0[c].clone()).collect()))
        .collect()
}

/// An integral basis of `{ x : x * rows^T = 0 }`, i.e. the left kernel of the
/// matrix whose rows are given. Returned rows have length `rows.len()`.
pub fn integer_kernel(rows: &[IntVector]) -> Vec<IntVector> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    // Augment with an identity and row-reduce; kernel rows are those whose
    // left block vanished.
    let mut aug: Vec<IntVector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.0.clone();
            let mut id = vec![BigInt::zero(); m];
            id[i] = BigInt::one();
            v.extend(id);
            IntVector(v)
        })
        .collect();
    // HNF over the first n columns only.
    let mut done = 0usize;
    for col in 0..n {
        let mut pivot_row = None;
        for r in done..aug.len() {
            if !aug[r].0[col].is_zero() {
                pivot_row = Some(r);
                break;
            }
        }
        let Some(pr) = pivot_row else { continue };
        aug.swap(done, pr);
        for r in done + 1..aug.len() {
            if aug[r].0[col].is_zero() {
                continue;
            }
            let a = aug[done].0[col].clone();
            let b = aug[r].0[col].clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            let width = n + m;
            let new_done: Vec<BigInt> = (0..width)
                .map(|c| &s * &aug[done].0[c] + &t * &aug[r].0[c])
                .collect();
            let new_r: Vec<BigInt> = (0..width)
                .map(|c| -&b_g * &aug[done].0[c] + &a_g * &aug[r].0[c])
                .collect();
            aug[done] = IntVector(new_done);
            aug[r] = IntVector(new_r);
        }
        done += 1;
        if done == aug.len() {
            break;
        }
    }
    aug[done..]
        .iter()
        .map(|row| IntVector(row.0[n..].to_vec()))
        .filter(|v| !v.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(e: &[i64]) -> IntVector {
        IntVector::from_i64(e)
    }

    #[test]
    fn hnf_already_diagonal() {
        let sub = canonical_basis(2, &[iv(&[2, 0]), iv(&[0, 3])]).unwrap();
        assert_eq!(sub.basis(), &[iv(&[2, 0]), iv(&[0, 3])]);
    }

    #[test]
    fn hnf_row_reduction_over_z() {
        // Hand row reduction: (1,1),(1,-1) -> (1,1),(0,2).
        let sub = canonical_basis(2, &[iv(&[1, 1]), iv(&[1, -1])]).unwrap();
        assert_eq!(sub.basis(), &[iv(&[1, 1]), iv(&[0, 2])]);
    }

    #[test]
    fn hnf_empty_span() {
        let sub = canonical_basis(2, &[]).unwrap();
        assert_eq!(sub.rank(), 0);
    }

    #[test]
    fn hnf_rejects_mismatched_lengths() {
        let err = canonical_basis(2, &[iv(&[1, 2, 3])]).unwrap_err();
        assert!(matches!(err, LatticeError::LengthMismatch { .. }));
    }

    #[test]
    fn hnf_idempotent() {
        let gens = [iv(&[4, 6, 2]), iv(&[2, 0, -2]), iv(&[0, 3, 3])];
        let sub = canonical_basis(3, &gens).unwrap();
        let again = canonical_basis(3, sub.basis()).unwrap();
        assert_eq!(sub, again);
    }

    #[test]
    fn divisors_identity() {
        let divs = elementary_divisors(2, &[iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        assert_eq!(divs, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn divisors_by_hand() {
        // SNF of [[1,1],[1,-1]] is diag(1,2).
        let divs = elementary_divisors(2, &[iv(&[1, 1]), iv(&[1, -1])]).unwrap();
        assert_eq!(divs, vec![BigInt::one(), BigInt::from(2)]);
    }

    #[test]
    fn divisors_scaled_identity() {
        let divs = elementary_divisors(2, &[iv(&[2, 0]), iv(&[0, 2])]).unwrap();
        assert_eq!(divs, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn saturation_tests() {
        let prim = canonical_basis(2, &[iv(&[1, 0])]).unwrap();
        assert!(is_saturated(&prim));
        let doubled = canonical_basis(2, &[iv(&[2, 0])]).unwrap();
        assert!(!is_saturated(&doubled));
        let skew = canonical_basis(2, &[iv(&[1, 1]), iv(&[1, -1])]).unwrap();
        assert!(!is_saturated(&skew));
    }

    #[test]
    fn zbasis_tests() {
        assert!(is_zbasis(&[iv(&[1, 0]), iv(&[0, 1])]).unwrap());
        assert!(!is_zbasis(&[iv(&[1, 1]), iv(&[1, -1])]).unwrap());
        // det of (e1, e1-e2, e2-e3) is 1 by expansion.
        assert!(is_zbasis(&[iv(&[1, 0, 0]), iv(&[1, -1, 0]), iv(&[0, 1, -1])]).unwrap());
        let err = is_zbasis(&[iv(&[1, 0])]).unwrap_err();
        assert!(matches!(err, LatticeError::CountMismatch { .. }));
    }

    #[test]
    fn divisor_product_matches_determinant() {
        let rows = [iv(&[3, 1, 4]), iv(&[1, 5, 9]), iv(&[2, 6, 5])];
        let det = determinant(&rows).abs();
        let divs = elementary_divisors(3, &rows).unwrap();
        let prod: BigInt = divs.iter().product();
        assert_eq!(det, prod);
    }

    #[test]
    fn saturation_of_skew_plane() {
        // span{(1,1,0),(1,-1,0)} has index 2 in span{e1,e2}.
        let sub = canonical_basis(3, &[iv(&[1, 1, 0]), iv(&[1, -1, 0])]).unwrap();
        let sat = sub.saturation();
        let expect = canonical_basis(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 0])]).unwrap();
        assert_eq!(sat, expect);
    }

    #[test]
    fn kernel_of_rows() {
        // Left kernel of rows (1,1),(1,1) is spanned by (1,-1).
        let ker = integer_kernel(&[iv(&[1, 1]), iv(&[1, 1])]);
        assert_eq!(ker.len(), 1);
        assert!(ker[0].eq_up_to_sign(&iv(&[1, -1])));
    }

    #[test]
    fn coordinates_roundtrip() {
        let sub = canonical_basis(3, &[iv(&[1, 2, 0]), iv(&[0, 0, 3])]).unwrap();
        let v = sub.embed(&iv(&[2, -1]));
        assert_eq!(sub.coordinates(&v).unwrap(), iv(&[2, -1]));
        assert!(sub.coordinates(&iv(&[0, 0, 1])).is_none());
    }

    #[test]
    fn primitive_part_sign_convention() {
        assert_eq!(iv(&[-2, 4]).primitive_part(), iv(&[1, -2]));
        assert_eq!(iv(&[0, -3, 6]).primitive_part(), iv(&[0, 1, -2]));
        assert!(iv(&[0, 0]).primitive_part().is_zero());
    }
}
