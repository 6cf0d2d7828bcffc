//! Exact linear algebra over the rationals.
//!
//! Rank and determinant go through fraction-free Bareiss elimination on
//! integer rows (denominators are cleared row by row first). Nullspaces are read
//! off the reduced row echelon form. A modular rank is provided as an
//! independent cross-check.

use std::fmt;

use rand::Rng;
use rug::integer::IsPrime;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::new(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from(1));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RationalMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix::from_fn(rows.len(), cols, |i, j| Rational::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `M v` for a vector of length `cols`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::new();
                for (a, b) in self.row(i).iter().zip(v) {
                    if *a != 0 && *b != 0 {
                        acc += Rational::from(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Rows scaled by the lcm of their denominators, so every entry is an integer.
    fn integer_rows(&self) -> Vec<Vec<Integer>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * Integer::from(&lcm / x.denom()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// In-place Bareiss elimination. Returns the rank and the number of row swaps.
/// Pivots are chosen by smallest bit length among the candidate rows.
fn bareiss(a: &mut [Vec<Integer>], cols: usize) -> (usize, usize) {
    let rows = a.len();
    let mut prev = Integer::from(1);
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&i| a[i][c] != 0)
            .min_by_key(|&i| a[i][c].significant_bits());
        let Some(p) = pivot else { continue };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                let mut v = Integer::from(&prow[c] * &row[j]);
                v -= Integer::from(&row[c] * &prow[j]);
                v.div_exact_mut(&prev);
                row[j] = v;
            }
            row[c] = Integer::new();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    (rank, swaps)
}

/// Exact rank over the rationals.
pub fn rank_exact(m: &RationalMatrix) -> usize {
    let mut a = m.integer_rows();
    bareiss(&mut a, m.cols).0
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &RationalMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::InvalidInput(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::from(1));
    }
    let mut scale = Integer::from(1);
    for i in 0..n {
        let lcm = m.row(i).iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
        scale *= lcm;
    }
    let mut a = m.integer_rows();
    let (rank, swaps) = bareiss(&mut a, n);
    if rank < n {
        return Ok(Rational::new());
    }
    let mut det = a[n - 1][n - 1].clone();
    if swaps % 2 == 1 {
        det = -det;
    }
    Ok(Rational::from((det, scale)))
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &RationalMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(p, r);
        let inv = Rational::from(a[r][c].recip_ref());
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if *p != 0 {
                    *x -= Rational::from(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Scales a nonzero rational vector to coprime integers with a positive first
/// nonzero entry.
pub fn normalize_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(Integer::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Integer> = v
        .iter()
        .map(|x| x.numer() * Integer::from(&lcm / x.denom()))
        .collect();
    let mut content = ints.iter().fold(Integer::new(), |acc, x| acc.gcd(x));
    if content == 0 {
        return v.to_vec();
    }
    if ints.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        content = -content;
    }
    ints.into_iter()
        .map(|x| Rational::from(x.div_exact(&content)))
        .collect()
}

/// Basis of the right nullspace, one vector per free column of the reduced echelon
/// form (in column order), each scaled to coprime integers with a positive leading
/// entry. Empty iff the matrix has full column rank.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (a, pivots) = rref(m);
    let mut basis = Vec::new();
    let mut next_pivot = 0;
    for free in 0..m.cols {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Rational::new(); m.cols];
        v[free] = Rational::from(1);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = Rational::from(-&a[r][free]);
        }
        basis.push(normalize_integer_vector(&v));
    }
    basis
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn reduce_mod(x: &Integer, p: u64) -> u64 {
    let mut r = Integer::from(x % p);
    if r < 0 {
        r += p;
    }
    r.to_u64().expect("residue fits in u64")
}

fn rank_mod_prime(m: &RationalMatrix, p: u64) -> Result<usize> {
    let mut a = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for x in m.row(i) {
            let den = reduce_mod(x.denom(), p);
            if den == 0 {
                return Err(Error::BadPrime(p));
            }
            let num = reduce_mod(x.numer(), p);
            row.push(mul_mod(num, pow_mod(den, p - 2, p), p));
        }
        a.push(row);
    }
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(piv) = (rank..m.rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let prow: Vec<u64> = a[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&prow) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Maximum over `primes` of the rank of `m` reduced modulo each prime.
pub fn rank_modular(m: &RationalMatrix, primes: &[u64]) -> Result<usize> {
    let mut best = 0;
    for &p in primes {
        if p < 2 || Integer::from(p).is_probably_prime(30) == IsPrime::No {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        best = best.max(rank_mod_prime(m, p)?);
    }
    Ok(best)
}

/// A random prime in `[2^62, 2^62 + 2^48)`.
pub fn random_prime_62<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    let start = (1u64 << 62) + rng.gen_range(0..(1u64 << 48));
    Integer::from(start)
        .next_prime()
        .to_u64()
        .expect("prime near 2^62 fits in u64")
}

/// Modular rank with two random primes near `2^62`, drawing a third when they
/// disagree. Primes that divide a denominator are redrawn.
pub fn rank_modular_checked<R: Rng + ?Sized>(m: &RationalMatrix, rng: &mut R) -> usize {
    let draw = |rng: &mut R| loop {
        let p = random_prime_62(rng);
        if let Ok(r) = rank_mod_prime(m, p) {
            return r;
        }
    };
    let r1 = draw(rng);
    let r2 = draw(rng);
    if r1 == r2 {
        r1
    } else {
        r1.max(r2).max(draw(rng))
    }
}
