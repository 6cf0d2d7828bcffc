//! Catalecticant matrices, border rank, apolar forms and exact squarefree tests.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::forms::{BinaryForm, DualCoordinates};
use crate::linalg::{determinant, nullspace, rank_exact, RationalMatrix};

/// Basis of `A_s`, the degree-`s` forms apolar to a given form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApolarBasis {
    pub s: usize,
    pub basis: Vec<BinaryForm>,
}

impl ApolarBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The `(d-s+1) x (s+1)` Hankel matrix with entry `(i, j) = Z_{i+j}`.
pub fn catalecticant(z: &DualCoordinates, s: usize) -> Result<RationalMatrix> {
    let d = z.degree();
    if s > d {
        return Err(Error::OutOfRange {
            what: "catalecticant index s",
            value: s,
            range: format!("0..={d}"),
        });
    }
    let v = z.values();
    Ok(RationalMatrix::from_fn(d - s + 1, s + 1, |i, j| v[i + j].clone()))
}

/// Rank of the middle catalecticant: square `(n+1) x (n+1)` for `d = 2n`,
/// `(n+2) x (n+1)` for `d = 2n+1`. This is the least `b` with the form on the
/// `(b-1)`-st secant variety of the rational normal curve.
pub fn border_rank(q: &BinaryForm) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    let m = catalecticant(&q.dual_coords(), q.degree() / 2)?;
    Ok(rank_exact(&m))
}

/// The unique (up to scale) `f` of degree `k+1` killed by `catalecticant(Z, k+1)`.
///
/// Requires `border_rank(q) = k + 1` outside the middle case `d = 2k`.
pub fn apolar_generator(q: &BinaryForm, k: usize) -> Result<BinaryForm> {
    let d = q.degree();
    if d == 0 || k + 1 > d {
        return Err(Error::Precondition(format!(
            "no apolar generator of degree {} for a form of degree {d}",
            k + 1
        )));
    }
    if d.is_multiple_of(2) && k == d / 2 {
        return Err(Error::Precondition(
            "the apolar generator is not unique in the middle case".into(),
        ));
    }
    let m = catalecticant(&q.dual_coords(), k + 1)?;
    let mut ns = nullspace(&m);
    if ns.len() != 1 {
        return Err(Error::InternalInvariant(format!(
            "catalecticant of size {}x{} has a {}-dimensional kernel, expected 1",
            m.rows(),
            m.cols(),
            ns.len()
        )));
    }
    Ok(BinaryForm::from_vec(ns.pop().expect("one kernel vector")))
}

/// Exact basis of `A_s`.
pub fn apolar_space(q: &BinaryForm, s: usize) -> Result<ApolarBasis> {
    let m = catalecticant(&q.dual_coords(), s)?;
    let basis = nullspace(&m).into_iter().map(BinaryForm::from_vec).collect();
    Ok(ApolarBasis { s, basis })
}

/// `phi(f * x^(e-i) y^i)` for every monomial of degree `e = d - deg f`, where `phi`
/// is the functional dual to `q`.
pub fn apolar_pairings(q: &BinaryForm, f: &BinaryForm) -> Result<Vec<Rational>> {
    let d = q.degree();
    let s = f.degree();
    if s > d {
        return Err(Error::InvalidInput(format!(
            "apolar form of degree {s} exceeds the form degree {d}"
        )));
    }
    let z = q.dual_coords();
    let z = z.values();
    Ok((0..=d - s)
        .map(|i| {
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| Rational::from(c * &z[i + j]))
                .sum()
        })
        .collect())
}

// Dense univariate polynomials over Q, ascending coefficients, no trailing zeros
// (the zero polynomial is the empty vector).

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rational::from(c * i as u32))
            .collect(),
    )
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = Rational::from(r.last().expect("nonempty") / lead);
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= Rational::from(&factor * c);
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn make_monic(p: Vec<Rational>) -> Vec<Rational> {
    let Some(lead) = p.last().cloned() else {
        return p;
    };
    p.into_iter().map(|c| c / &lead).collect()
}

/// Monic gcd of two univariate polynomials over Q.
fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = make_monic(trim(a.to_vec()));
    let mut b = make_monic(trim(b.to_vec()));
    while !b.is_empty() {
        let r = make_monic(rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Decides exactly whether `f` has a repeated root on the projective line.
///
/// The affine part `g(t) = f(t, 1)` is squarefree iff `gcd(g, g')` is constant;
/// the point `[1, 0]` is a root of multiplicity equal to the index of the first
/// nonzero coefficient.
pub fn is_squarefree(f: &BinaryForm) -> Result<bool> {
    if f.degree() == 0 {
        return Err(Error::InvalidInput(
            "squarefreeness needs a form of positive degree".into(),
        ));
    }
    let Some(at_infinity) = f.multiplicity_at_infinity() else {
        return Err(Error::InvalidInput("the zero form has no roots".into()));
    };
    if at_infinity > 1 {
        return Ok(false);
    }
    let g = f.affine_ascending();
    let dg = derivative(&g);
    if dg.is_empty() {
        return Ok(true);
    }
    Ok(gcd(&g, &dg).len() <= 1)
}

/// Resultant of two binary forms via the Sylvester matrix of their coefficient
/// vectors taken at their formal degrees.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Rational> {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    if size == 0 {
        return Ok(Rational::from(1));
    }
    let mut s = RationalMatrix::zeros(size, size);
    for r in 0..n {
        for (j, c) in f.coeffs().iter().enumerate() {
            s.set(r, r + j, c.clone());
        }
    }
    for r in 0..m {
        for (j, c) in g.coeffs().iter().enumerate() {
            s.set(n + r, r + j, c.clone());
        }
    }
    determinant(&s)
}

fn partial_x(f: &BinaryForm) -> BinaryForm {
    let m = f.degree();
    BinaryForm::from_vec(
        f.coeffs()[..m]
            .iter()
            .enumerate()
            .map(|(i, c)| Rational::from(c * (m - i) as u32))
            .collect(),
    )
}

fn partial_y(f: &BinaryForm) -> BinaryForm {
    BinaryForm::from_vec(
        f.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rational::from(c * i as u32))
            .collect(),
    )
}

/// Discriminant of a binary form of degree `m >= 2`:
/// `(-1)^(m(m-1)/2) Res(f_x, f_y) / m^(m-2)`. For `a_0 != 0` this agrees with the
/// classical discriminant of `f(t, 1)`; it vanishes iff `f` has a repeated
/// projective root.
pub fn discriminant(f: &BinaryForm) -> Result<Rational> {
    let m = f.degree();
    if m < 2 {
        return Err(Error::InvalidInput(format!(
            "discriminant needs degree >= 2, got {m}"
        )));
    }
    let res = resultant(&partial_x(f), &partial_y(f))?;
    let norm = Integer::from(Integer::u_pow_u(m as u32, (m - 2) as u32));
    let disc = res / norm;
    Ok(if (m * (m - 1) / 2) % 2 == 1 { -disc } else { disc })
}
