//! Binary forms, their dual coordinates and numeric points of the projective line.
//!
//! A form of degree `d` is stored as the coefficient vector `(a_0, ..., a_d)` of
//! `a_0 x^d + a_1 x^(d-1) y + ... + a_d y^d`. The dual functional `phi` attached to
//! the form has coordinates `Z_i = phi(x^(d-i) y^i) = a_i / C(d, i)`.

use std::fmt;

use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// A homogeneous polynomial in `x, y` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// Builds a form of degree `degree` from `degree + 1` coefficients.
    pub fn new(degree: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::InvalidInput(format!(
                "degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryForm { coeffs })
    }

    /// Builds a form from integer coefficients; the degree is `coeffs.len() - 1`.
    ///
    /// Panics on an empty slice.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm {
            coeffs: coeffs.iter().map(|&c| Rational::from(c)).collect(),
        }
    }

    pub(crate) fn from_vec(coeffs: Vec<Rational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![Rational::new(); degree + 1],
        }
    }

    /// The monomial `x^a y^b`.
    pub fn monomial(a: usize, b: usize) -> Self {
        let mut coeffs = vec![Rational::new(); a + b + 1];
        coeffs[b] = Rational::from(1);
        BinaryForm { coeffs }
    }

    /// The linear form `a x + b y`.
    pub fn linear(a: i64, b: i64) -> Self {
        BinaryForm::from_ints(&[a, b])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// Multiplicity of `[1, 0]` as a root, i.e. the index of the first nonzero
    /// coefficient. `None` for the zero form.
    pub fn multiplicity_at_infinity(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != 0)
    }

    pub fn dual_coords(&self) -> DualCoordinates {
        let d = self.degree();
        let z = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| Rational::from(a / binomial(d, i)))
            .collect();
        DualCoordinates { z }
    }

    /// Exact value `sum a_i t^(d-i) u^i`.
    pub fn evaluate(&self, t: &Rational, u: &Rational) -> Rational {
        // Horner in the homogeneous setting: acc = acc * t + a_i * u^i, carried as
        // acc_i = sum_{j<=i} a_j t^(i-j) u^j.
        let mut acc = Rational::new();
        let mut u_pow = Rational::from(1);
        for a in &self.coeffs {
            acc *= t;
            acc += Rational::from(a * &u_pow);
            u_pow *= u;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> BinaryForm {
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| Rational::from(a * c))
                .collect(),
        }
    }

    /// Product of two forms; degrees add.
    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut coeffs = vec![Rational::new(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += Rational::from(a * b);
            }
        }
        BinaryForm { coeffs }
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.degree() != other.degree() {
            return Err(Error::InvalidInput(format!(
                "cannot add forms of degree {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
        })
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut acc = BinaryForm::from_ints(&[1]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The substituted form `q(A (x, y)^T)`, i.e. `x -> a00 x + a01 y` and
    /// `y -> a10 x + a11 y`.
    pub fn apply_gl2(&self, a: &[[Rational; 2]; 2]) -> BinaryForm {
        let d = self.degree();
        let lx = BinaryForm::from_vec(vec![a[0][0].clone(), a[0][1].clone()]);
        let ly = BinaryForm::from_vec(vec![a[1][0].clone(), a[1][1].clone()]);
        let px: Vec<BinaryForm> = powers(&lx, d);
        let py: Vec<BinaryForm> = powers(&ly, d);
        let mut out = BinaryForm::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let term = px[d - i].mul(&py[i]);
            for (o, t) in out.coeffs.iter_mut().zip(term.coeffs) {
                *o += t * c;
            }
        }
        out
    }

    /// Dehomogenization `f(t, 1)` as ascending coefficients in `t`, trimmed of
    /// leading zeros.
    pub(crate) fn affine_ascending(&self) -> Vec<Rational> {
        let mut g: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        while g.len() > 1 && g.last().is_some_and(|c| *c == 0) {
            g.pop();
        }
        g
    }
}

fn powers(l: &BinaryForm, n: usize) -> Vec<BinaryForm> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BinaryForm::from_ints(&[1]));
    for k in 1..=n {
        let next = out[k - 1].mul(l);
        out.push(next);
    }
    out
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if *c.denom() == 1 {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: usize, b: usize) -> fmt::Result {
    let mut first = true;
    for (var, e) in [("x", a), ("y", b)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(var)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Prints the form in the expression grammar accepted by the command-line parser,
/// e.g. `x^3 - 3*x*y^2` or `1/2*x^2*y^2`. The zero form of positive degree prints
/// as `0*x^d` so the degree survives a round trip.
impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        if self.is_zero() {
            f.write_str("0")?;
            if d > 0 {
                f.write_str("*")?;
                write_monomial(f, d, 0)?;
            }
            return Ok(());
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let negative = *c < 0;
            let abs = Rational::from(c.abs_ref());
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if d == 0 {
                write_rational(f, &abs)?;
                continue;
            }
            if abs != 1 {
                write_rational(f, &abs)?;
                f.write_str("*")?;
            }
            write_monomial(f, d - i, i)?;
        }
        Ok(())
    }
}

/// The coordinates `Z_0, ..., Z_d` of the functional dual to a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCoordinates {
    z: Vec<Rational>,
}

impl DualCoordinates {
    pub fn new(z: Vec<Rational>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::InvalidInput("dual coordinates cannot be empty".into()));
        }
        Ok(DualCoordinates { z })
    }

    pub fn degree(&self) -> usize {
        self.z.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.z
    }

    /// Inverse of [`BinaryForm::dual_coords`]: `a_i = C(d, i) Z_i`.
    pub fn to_form(&self) -> BinaryForm {
        let d = self.degree();
        BinaryForm {
            coeffs: self
                .z
                .iter()
                .enumerate()
                .map(|(i, z)| Rational::from(z * binomial(d, i)))
                .collect(),
        }
    }
}

/// A point `[t, u]` of the complex projective line, normalized so that the
/// entry of larger modulus is exactly one (ties divide by `t`).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint {
    t: Complex,
    u: Complex,
}

impl ComplexPoint {
    pub fn new(t: Complex, u: Complex) -> Result<Self> {
        let prec = t.prec().0.max(u.prec().0);
        let nt = Float::with_val(prec, t.norm_ref());
        let nu = Float::with_val(prec, u.norm_ref());
        if nt.is_zero() && nu.is_zero() {
            return Err(Error::InvalidInput("[0, 0] is not a projective point".into()));
        }
        let one = Complex::with_val(prec, 1);
        let point = if nu > nt {
            ComplexPoint {
                t: Complex::with_val(prec, &t / &u),
                u: one,
            }
        } else {
            ComplexPoint {
                u: Complex::with_val(prec, &u / &t),
                t: one,
            }
        };
        Ok(point)
    }

    pub fn from_rationals(t: &Rational, u: &Rational, prec: u32) -> Result<Self> {
        ComplexPoint::new(Complex::with_val(prec, t), Complex::with_val(prec, u))
    }

    pub fn t(&self) -> &Complex {
        &self.t
    }

    pub fn u(&self) -> &Complex {
        &self.u
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.t.prec().0.max(self.u.prec().0)
    }

    pub fn normalized(&self) -> Result<Self> {
        ComplexPoint::new(self.t.clone(), self.u.clone())
    }

    /// Chordal distance `|t1 u2 - t2 u1| / (|p1| |p2|)`; zero iff the points coincide.
    pub fn chordal_distance(&self, other: &ComplexPoint) -> Float {
        let prec = self.prec().max(other.prec());
        let cross = Complex::with_val(prec, &self.t * &other.u)
            - Complex::with_val(prec, &other.t * &self.u);
        let num = Float::with_val(prec, cross.abs_ref());
        let n1 = Float::with_val(prec, self.t.norm_ref()) + Float::with_val(prec, self.u.norm_ref());
        let n2 = Float::with_val(prec, other.t.norm_ref()) + Float::with_val(prec, other.u.norm_ref());
        num / (n1 * n2).sqrt()
    }
}

/// Coefficients of `sum_j lambda_j (t_j x + u_j y)^d` in the monomial basis: entry
/// `i` is `sum_j lambda_j C(d, i) t_j^(d-i) u_j^i`.
pub fn expand_power_sum(d: usize, terms: &[(Complex, ComplexPoint)], prec: u32) -> Vec<Complex> {
    let mut out = vec![Complex::new(prec); d + 1];
    for (lambda, p) in terms {
        let tp = complex_powers(p.t(), d, prec);
        let up = complex_powers(p.u(), d, prec);
        for (i, o) in out.iter_mut().enumerate() {
            let mut term = Complex::with_val(prec, &tp[d - i] * &up[i]);
            term *= lambda;
            *o += term;
        }
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o *= binomial(d, i);
    }
    out
}

pub(crate) fn complex_powers(z: &Complex, n: usize, prec: u32) -> Vec<Complex> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex::with_val(prec, 1));
    for k in 1..=n {
        let next = Complex::with_val(prec, &out[k - 1] * z);
        out.push(next);
    }
    out
}
