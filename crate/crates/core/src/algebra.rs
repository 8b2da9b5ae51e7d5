//! Exact integer linear algebra: Smith normal form and first homology of
//! integer chain complexes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("boundary maps do not compose to zero")]
    NotAComplex,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Smith normal form certificate failed to verify")]
    Certificate,
}

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| x.into())).collect();
        IntegerMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }

    /// Rank over the field with `p` elements.
    pub fn rank_mod(&self, p: u64) -> Result<usize, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let modulus = BigInt::from(p);
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).mod_floor(&modulus).to_u64().expect("reduced mod p"))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, pivot);
            let inv = mod_inverse(m[rank][col], p);
            for c in col..self.cols {
                m[rank][c] = m[rank][c] * inv % p;
            }
            for r in 0..self.rows {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in col..self.cols {
                        m[r][c] = (m[r][c] + (p - f) * m[rank][c]) % p;
                    }
                }
            }
            rank += 1;
        }
        Ok(rank)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is small.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Smith normal form `U · M · V = D` with unimodular `U`, `V`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Non-zero diagonal entries of `D`, positive, each dividing the next.
    pub invariants: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Re-multiplies the certificate against `m`.
    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        let Ok(um) = self.u.mul(m) else { return false };
        let Ok(umv) = um.mul(&self.v) else { return false };
        if umv != self.d {
            return false;
        }
        for r in 0..self.d.rows() {
            for c in 0..self.d.cols() {
                let x = self.d.get(r, c);
                let on_diag = r == c && r < self.invariants.len();
                if on_diag != !x.is_zero() || (on_diag && x != &self.invariants[r]) {
                    return false;
                }
            }
        }
        let chain = self.invariants.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        chain
            && self.invariants.iter().all(|d| d.is_positive())
            && self.u.determinant().abs().is_one()
            && self.v.determinant().abs().is_one()
    }
}

/// Smith normal form by repeated pivoting on the smallest non-zero magnitude
/// (ties broken by row-major position).
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest non-zero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let x = d.get(r, c);
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.magnitude() < d.get(br, bc).magnitude()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        let mut clean = true;
        for r in t + 1..rows {
            if d.get(r, t).is_zero() {
                continue;
            }
            let q = -d.get(r, t).div_floor(d.get(t, t));
            d.add_row_multiple(r, t, &q);
            u.add_row_multiple(r, t, &q);
            clean &= d.get(r, t).is_zero();
        }
        for c in t + 1..cols {
            if d.get(t, c).is_zero() {
                continue;
            }
            let q = -d.get(t, c).div_floor(d.get(t, t));
            d.add_col_multiple(c, t, &q);
            v.add_col_multiple(c, t, &q);
            clean &= d.get(t, c).is_zero();
        }
        if !clean {
            // A smaller remainder appeared; pivot again.
            continue;
        }
        // The pivot must divide the rest of the block.
        let offending = (t + 1..rows)
            .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
            .find(|&(r, c)| !d.get(r, c).is_multiple_of(d.get(t, t)));
        if let Some((r, _)) = offending {
            let one = BigInt::one();
            d.add_row_multiple(t, r, &one);
            u.add_row_multiple(t, r, &one);
            continue;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariants = (0..rows.min(cols)).map(|i| d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect();
    SmithForm { invariants, u, v, d }
}

/// A finitely generated abelian group `Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with
/// `d1 | d2 | ... | dk` and every `di ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        let torsion: Vec<BigUint> = torsion.iter().map(|&d| BigUint::from(d)).collect();
        debug_assert!(torsion.iter().all(|d| *d >= BigUint::from(2u8)));
        debug_assert!(torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        AbelianInvariants { rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::new(0, &[])
    }

    /// Number of cyclic torsion factors of order divisible by `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.torsion.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    /// `dim H1(X; Z/p)` predicted by universal coefficients from this `H1(X; Z)`.
    pub fn mod_p_dimension(&self, p: u64) -> usize {
        self.rank + self.p_torsion_count(p)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn check_complex(d2: &IntegerMatrix, d1: &IntegerMatrix) -> Result<(), AlgebraError> {
    if d1.cols() != d2.rows() {
        return Err(AlgebraError::Shape(format!(
            "d1 has {} columns but d2 has {} rows",
            d1.cols(),
            d2.rows()
        )));
    }
    Ok(())
}

/// `ker d1 / im d2` where `d2: C2 -> C1` and `d1: C1 -> C0` act on column vectors.
pub fn h1_of_chain_complex(d2: &IntegerMatrix, d1: &IntegerMatrix) -> Result<AbelianInvariants, AlgebraError> {
    check_complex(d2, d1)?;
    if !d1.mul(d2)?.is_zero() {
        return Err(AlgebraError::NotAComplex);
    }
    let snf2 = smith_normal_form(d2);
    if !snf2.verify(d2) {
        return Err(AlgebraError::Certificate);
    }
    let rank1 = smith_normal_form(d1).rank();
    let n1 = d1.cols();
    let rank = n1 - rank1 - snf2.rank();
    let torsion = snf2
        .invariants
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| x.magnitude().clone())
        .collect();
    Ok(AbelianInvariants { rank, torsion })
}

/// `dim H1(C; Z/p)`, computed by elimination over the prime field.
pub fn h1_with_coefficients(d2: &IntegerMatrix, d1: &IntegerMatrix, p: u64) -> Result<usize, AlgebraError> {
    check_complex(d2, d1)?;
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    if d1.mul(d2)?.data.iter().any(|x| !x.is_multiple_of(&modulus)) {
        return Err(AlgebraError::NotAComplex);
    }
    Ok(d1.cols() - d1.rank_mod(p)? - d2.rank_mod(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Invariant factors by determinantal divisors: d_k = gcd of k x k minors
    /// divided by the gcd of (k-1) x (k-1) minors. Brute force, small matrices only.
    fn invariants_by_minors(m: &IntegerMatrix) -> Vec<BigInt> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut result = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let minor = IntegerMatrix::from_rows(
                        &rs.iter().map(|&r| cs.iter().map(|&c| m.get(r, c).to_i64().unwrap()).collect()).collect::<Vec<Vec<i64>>>(),
                    );
                    g = g.gcd(&minor.determinant());
                }
            }
            if g.is_zero() {
                break;
            }
            result.push(&g / &prev);
            prev = g;
        }
        result
    }

    #[test]
    fn identity_invariants() {
        let snf = smith_normal_form(&IntegerMatrix::identity(3));
        assert_eq!(snf.invariants, big(&[1, 1, 1]));
        assert!(snf.verify(&IntegerMatrix::identity(3)));
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.invariants, big(&[2, 4]));
        assert_eq!(invariants_by_minors(&m), big(&[2, 4]));
        assert!(snf.verify(&m));
    }

    #[test]
    fn zero_matrix_has_no_invariants() {
        let m = IntegerMatrix::zeros(3, 4);
        let snf = smith_normal_form(&m);
        assert!(snf.invariants.is_empty());
        assert!(snf.verify(&m));
        let empty = IntegerMatrix::zeros(0, 5);
        assert!(smith_normal_form(&empty).invariants.is_empty());
    }

    #[test]
    fn large_entries_stay_exact() {
        let big_entry = 1i64 << 62;
        let m = IntegerMatrix::from_rows(&[vec![big_entry, 3], vec![big_entry - 1, 5], vec![7, big_entry]]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify(&m));
        assert_eq!(snf.invariants, invariants_by_minors(&m));
    }

    #[test]
    fn determinant_small() {
        let m = IntegerMatrix::from_rows(&[vec![0i64, 2, 1], vec![1, 0, 0], vec![3, 1, 4]]);
        assert_eq!(m.determinant(), BigInt::from(-7));
    }

    #[test]
    fn h1_circle_and_rp2() {
        // Circle: one vertex, one edge, no faces.
        let d1 = IntegerMatrix::zeros(1, 1);
        let d2 = IntegerMatrix::zeros(1, 0);
        assert_eq!(h1_of_chain_complex(&d2, &d1).unwrap(), AbelianInvariants::new(1, &[]));
        // RP^2 with one vertex, one edge a, one face a·a.
        let d2 = IntegerMatrix::from_rows(&[vec![2i64]]);
        assert_eq!(h1_of_chain_complex(&d2, &d1).unwrap(), AbelianInvariants::new(0, &[2]));
        assert_eq!(h1_with_coefficients(&d2, &d1, 2).unwrap(), 1);
        assert_eq!(h1_with_coefficients(&d2, &d1, 3).unwrap(), 0);
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntegerMatrix::from_rows(&[vec![-1i64, 1], vec![1, -1]]);
        let d2 = IntegerMatrix::from_rows(&[vec![1i64], vec![0]]);
        assert_eq!(h1_of_chain_complex(&d2, &d1), Err(AlgebraError::NotAComplex));
        assert_eq!(h1_with_coefficients(&d2, &d1, 2), Err(AlgebraError::NotAComplex));
        let d2 = IntegerMatrix::zeros(2, 1);
        assert_eq!(h1_with_coefficients(&d2, &d1, 4), Err(AlgebraError::NotPrime(4)));
    }

    #[test]
    fn display_formats() {
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
        assert_eq!(AbelianInvariants::new(1, &[]).to_string(), "Z");
        assert_eq!(AbelianInvariants::new(2, &[2]).to_string(), "Z^2 + Z/2");
        assert_eq!(AbelianInvariants::new(0, &[2, 2]).to_string(), "Z/2 + Z/2");
    }

    fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-6i64..7, r * c).prop_map(move |v| {
                IntegerMatrix::from_rows(&v.chunks(c).map(|ch| ch.to_vec()).collect::<Vec<_>>())
            })
        })
    }

    proptest! {
        #[test]
        fn snf_certificate_and_minors(m in small_matrix()) {
            let snf = smith_normal_form(&m);
            prop_assert!(snf.verify(&m));
            prop_assert_eq!(&snf.invariants, &invariants_by_minors(&m));
        }

        #[test]
        fn snf_invariant_under_transpose_and_permutation(m in small_matrix(), seed in 0usize..24) {
            let base = smith_normal_form(&m).invariants;
            prop_assert_eq!(&smith_normal_form(&m.transpose()).invariants, &base);
            let mut p = m.clone();
            if p.rows() > 1 { p.swap_rows(0, seed % p.rows()); }
            if p.cols() > 1 { p.swap_cols(seed % p.cols(), p.cols() - 1); }
            prop_assert_eq!(&smith_normal_form(&p).invariants, &base);
        }

        #[test]
        fn rank_mod_bounded_by_integer_rank(m in small_matrix()) {
            let rank = smith_normal_form(&m).rank();
            for p in [2u64, 3, 5] {
                prop_assert!(m.rank_mod(p).unwrap() <= rank);
            }
        }
    }
}
