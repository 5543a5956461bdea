//! Small exact rational linear algebra helpers: parallelism tests, 2x2
//! solves, span intersection and kernels, and conversion back to primitive
//! integer vectors. Used by the label-model fitting code.

use crate::lattice::IntVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;
pub type RVec = Vec<Rat>;

pub fn from_int(v: &IntVector) -> RVec {
    v.0.iter()
        .map(|e| BigRational::from_integer(e.clone()))
        .collect()
}

pub fn zero(len: usize) -> RVec {
    vec![BigRational::zero(); len]
}

pub fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(|e| e.is_zero())
}

pub fn add(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> RVec {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Rat]) -> RVec {
    a.iter().map(|x| -x).collect()
}

/// All 2x2 minors vanish. The zero vector is parallel to everything.
pub fn parallel(a: &[Rat], b: &[Rat]) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// Row-reduced basis of the span, with deterministic pivoting.
pub fn row_reduce(rows: &[RVec]) -> Vec<RVec> {
    let mut out: Vec<RVec> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for b in &out {
            let p = b.iter().position(|e| !e.is_zero()).unwrap();
            if !v[p].is_zero() {
                let f = &v[p] / &b[p];
                v = sub(&v, &scale(b, &f));
            }
        }
        if !is_zero(&v) {
            out.push(v);
            out.sort_by_key(|b| b.iter().position(|e| !e.is_zero()).unwrap());
        }
    }
    // Normalize leading entries to 1 and clear above pivots.
    for i in 0..out.len() {
        let p = out[i].iter().position(|e| !e.is_zero()).unwrap();
        let lead = out[i][p].clone();
        out[i] = scale(&out[i], &lead.recip());
        for j in 0..out.len() {
            if j != i && !out[j][p].is_zero() {
                let f = out[j][p].clone();
                out[j] = sub(&out[j], &scale(&out[i], &f));
            }
        }
    }
    out.sort_by_key(|b| b.iter().position(|e| !e.is_zero()).unwrap());
    out
}

pub fn rank(rows: &[RVec]) -> usize {
    row_reduce(rows).len()
}

pub fn in_span(span: &[RVec], v: &[Rat]) -> bool {
    let mut rows: Vec<RVec> = span.to_vec();
    let before = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == before
}

/// Solves lambda * a + mu * b = target for linearly independent a, b.
pub fn solve_pair(a: &[Rat], b: &[Rat], target: &[Rat]) -> Option<(Rat, Rat)> {
    let n = a.len();
    // Find two coordinates where (a, b) has an invertible 2x2 block.
    for i in 0..n {
        for j in i + 1..n {
            let det = &a[i] * &b[j] - &a[j] * &b[i];
            if det.is_zero() {
                continue;
            }
            let lambda = (&target[i] * &b[j] - &target[j] * &b[i]) / &det;
            let mu = (&a[i] * &target[j] - &a[j] * &target[i]) / &det;
            // Verify the remaining coordinates.
            for k in 0..n {
                if &lambda * &a[k] + &mu * &b[k] != target[k] {
                    return None;
                }
            }
            return Some((lambda, mu));
        }
    }
    None
}

/// Basis of the intersection of two spans.
pub fn intersect_spans(s: &[RVec], t: &[RVec]) -> Vec<RVec> {
    if s.is_empty() || t.is_empty() {
        return Vec::new();
    }
    let n = s[0].len();
    // x = sum c_i s_i = sum d_j t_j: kernel of the (n x (|s|+|t|)) matrix
    // [s^T | -t^T] gives the coefficient space.
    let cols = s.len() + t.len();
    let rows: Vec<RVec> = (0..n)
        .map(|r| {
            let mut row = Vec::with_capacity(cols);
            for v in s {
                row.push(v[r].clone());
            }
            for v in t {
                row.push(-&v[r]);
            }
            row
        })
        .collect();
    let ker = kernel(&rows);
    let combos: Vec<RVec> = ker
        .iter()
        .map(|coef| {
            let mut x = zero(n);
            for (i, v) in s.iter().enumerate() {
                x = add(&x, &scale(v, &coef[i]));
            }
            x
        })
        .collect();
    row_reduce(&combos)
}

/// Basis of { x : rows * x = 0 } over the rationals.
pub fn kernel(rows: &[RVec]) -> Vec<RVec> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let reduced = row_reduce(rows);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| r.iter().position(|e| !e.is_zero()).unwrap())
        .collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = zero(ncols);
        v[free] = BigRational::one();
        for (r, &p) in reduced.iter().zip(&pivots) {
            v[p] = -&r[free];
        }
        out.push(v);
    }
    out
}

/// Clears denominators and content; canonical sign. Zero maps to zero.
pub fn to_primitive(v: &[Rat]) -> IntVector {
    let mut lcm = BigInt::one();
    for e in v {
        lcm = num_integer::lcm(lcm, e.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    IntVector(ints).primitive_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> RVec {
        v.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }

    #[test]
    fn parallel_and_solve() {
        assert!(parallel(&rv(&[2, 4]), &rv(&[1, 2])));
        assert!(!parallel(&rv(&[2, 4]), &rv(&[1, 3])));
        let (l, m) = solve_pair(&rv(&[1, 0]), &rv(&[1, 1]), &rv(&[3, 2])).unwrap();
        assert_eq!(l, BigRational::from_integer(BigInt::from(1)));
        assert_eq!(m, BigRational::from_integer(BigInt::from(2)));
        assert!(solve_pair(&rv(&[1, 0, 0]), &rv(&[0, 1, 0]), &rv(&[0, 0, 1])).is_none());
    }

    #[test]
    fn span_intersection() {
        let s = vec![rv(&[1, 0, 0]), rv(&[0, 1, 0])];
        let t = vec![rv(&[0, 1, 1]), rv(&[1, 0, 1])];
        let meet = intersect_spans(&s, &t);
        assert_eq!(meet.len(), 1);
        assert!(parallel(&meet[0], &rv(&[1, -1, 0])));
    }

    #[test]
    fn kernel_dimensions() {
        let rows = vec![rv(&[1, 1, 0]), rv(&[0, 1, 1])];
        let ker = kernel(&rows);
        assert_eq!(ker.len(), 1);
        assert!(parallel(&ker[0], &rv(&[1, -1, 1])));
    }

    #[test]
    fn primitive_of_rationals() {
        let v = vec![
            BigRational::new(BigInt::from(2), BigInt::from(3)),
            BigRational::new(BigInt::from(-4), BigInt::from(3)),
        ];
        assert_eq!(to_primitive(&v), IntVector::from_i64(&[1, -2]));
    }
}
