//! Sparse multivariate polynomials with exact big-integer coefficients, just
//! enough for symbolic determinants and identity checks: addition,
//! multiplication, exact division and evaluation.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector -> coefficient; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (expo, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in expo.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut expo = vec![0u32; nvars];
        expo[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(expo, BigInt::one());
        p
    }

    /// Monomial c * x_i^e.
    pub fn monomial(nvars: usize, i: usize, e: u32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            let mut expo = vec![0u32; nvars];
            expo[i] = e;
            p.terms.insert(expo, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(expo).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Exact division; `None` when the division leaves a remainder. Uses the
    /// leading term of `divisor` in the graded-lexicographic term order.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        assert!(!divisor.is_zero());
        let (de, dc) = divisor
            .terms
            .iter()
            .max_by(|a, b| grlex(a.0).cmp(&grlex(b.0)))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (re, rc) = rem
                .terms
                .iter()
                .max_by(|a, b| grlex(a.0).cmp(&grlex(b.0)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            if re.iter().zip(&de).any(|(r, d)| r < d) {
                return None;
            }
            let (q, r) = num_integer::Integer::div_rem(&rc, &dc);
            if !r.is_zero() {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&de).map(|(r, d)| r - d).collect();
            let mut qterm = Poly::zero(self.nvars);
            qterm.terms.insert(qe, q);
            rem = rem.sub(&qterm.mul(divisor));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (expo, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in expo.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[v];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Substitutes a linear form for each variable: x_i -> sum_j forms[i][j] y_j.
    pub fn substitute_linear(&self, forms: &[Vec<BigInt>], out_vars: usize) -> Poly {
        assert_eq!(forms.len(), self.nvars);
        let form_polys: Vec<Poly> = forms
            .iter()
            .map(|f| {
                assert_eq!(f.len(), out_vars);
                let mut p = Poly::zero(out_vars);
                for (j, c) in f.iter().enumerate() {
                    p = p.add(&Poly::monomial(out_vars, j, 1, c.clone()));
                }
                p
            })
            .collect();
        let mut acc = Poly::zero(out_vars);
        for (expo, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (v, &e) in expo.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&form_polys[v].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

fn grlex(e: &[u32]) -> (u32, Vec<u32>) {
    (e.iter().sum(), e.to_vec())
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination; all intermediate divisions are exact.
pub fn determinant(matrix: &[Vec<Poly>]) -> Poly {
    let n = matrix.len();
    assert!(n > 0);
    let nvars = matrix[0][0].nvars();
    let mut a: Vec<Vec<Poly>> = matrix.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero(nvars);
            };
            a.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss divisions are exact");
            }
        }
        for i in k + 1..n {
            a[i][k] = Poly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Determinant of a BigInt matrix by Bareiss elimination, for evaluations.
pub fn determinant_int(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sign helper: (-1)^k as BigInt.
pub fn neg_one_pow(k: u32) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Factorial as BigInt.
pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    acc
}

/// Binomial coefficient as BigInt.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
