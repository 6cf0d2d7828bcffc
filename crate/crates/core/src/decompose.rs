//! Explicit decompositions `q = sum_j lambda_j (t_j x + u_j y)^d`.
//!
//! The points `[t_j, u_j]` are the roots of a squarefree form apolar to `q`: the
//! apolar generator in the generic case, otherwise a random squarefree element
//! of the apolar space in the degree of the rank. The weights then solve a
//! consistent linear system in the dual coordinates.
//!
//! All numeric work runs at the requested precision plus [`GUARD_BITS`].

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Float, Rational};

use crate::apolarity::{apolar_space, is_squarefree};
use crate::error::{Error, Result};
use crate::forms::{complex_powers, expand_power_sum, BinaryForm, ComplexPoint, DualCoordinates};
use crate::sylvester::{waring_rank, CaseTag};

/// Extra bits carried internally on top of the requested precision.
pub const GUARD_BITS: u32 = 64;
/// Iteration cap for the simultaneous root iteration.
pub const ABERTH_MAX_ITER: usize = 200;
/// Attempts at drawing a squarefree apolar witness.
pub const WITNESS_RETRIES: usize = 64;

pub fn working_precision(precision_bits: u32) -> u32 {
    precision_bits.max(16) + GUARD_BITS
}

/// `2^(-bits)` at precision `prec`.
fn pow2_neg(bits: u32, prec: u32) -> Float {
    Float::with_val(prec, 1) >> bits
}

/// Minimum chordal distance the points of a decomposition must keep:
/// `2^(-precision_bits / 4)`.
pub fn separation_bound(precision_bits: u32) -> Float {
    pow2_neg(precision_bits / 4, working_precision(precision_bits))
}

fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

fn max_abs<'a>(zs: impl IntoIterator<Item = &'a Complex>, prec: u32) -> Float {
    zs.into_iter()
        .map(abs)
        .fold(Float::new(prec), |acc, x| if x > acc { x } else { acc })
}

/// Value and derivative of an ascending-coefficient polynomial at `z`.
fn horner(coeffs: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex) {
    let mut p = Complex::new(prec);
    let mut dp = Complex::new(prec);
    for c in coeffs.iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += c;
    }
    (p, dp)
}

/// Fujiwara's bound `2 max |a_(n-i) / a_n|^(1/i)` on the moduli of the roots.
fn root_bound(coeffs: &[Complex], prec: u32) -> Float {
    let n = coeffs.len() - 1;
    let lead = abs(&coeffs[n]);
    let mut bound = Float::new(prec);
    for i in 1..=n {
        let ratio = abs(&coeffs[n - i]) / &lead;
        let r = if i == n {
            ratio / 2u32
        } else {
            ratio
        };
        let r = r.root(i as u32);
        if r > bound {
            bound = r;
        }
    }
    bound * 2u32
}

/// Aberth–Ehrlich simultaneous iteration followed by Newton polishing.
fn aberth(coeffs: &[Complex], prec: u32, rng: &mut ChaCha8Rng) -> Vec<Complex> {
    let n = coeffs.len() - 1;
    let mut radius = root_bound(coeffs, prec);
    if radius.is_zero() {
        radius = Float::with_val(prec, 1);
    }
    let offset: f64 = rng.gen_range(0.0..2.0 * PI);
    let mut z: Vec<Complex> = (0..n)
        .map(|j| {
            let jitter: f64 = rng.gen_range(-0.1..0.1);
            let angle = offset + 2.0 * PI * (j as f64 + jitter) / n as f64;
            let scale: f64 = rng.gen_range(0.9..1.1);
            let unit = Complex::with_val(prec, (angle.cos() * scale, angle.sin() * scale));
            unit * &radius
        })
        .collect();

    let tol = pow2_neg(prec - 8, prec);
    for _ in 0..ABERTH_MAX_ITER {
        let mut worst = Float::new(prec);
        for j in 0..n {
            let (p, dp) = horner(coeffs, &z[j], prec);
            if p.is_zero() {
                continue;
            }
            let mut repulsion = Complex::new(prec);
            for k in 0..n {
                if k != j {
                    let diff = Complex::with_val(prec, &z[j] - &z[k]);
                    if !diff.is_zero() {
                        repulsion += diff.recip();
                    }
                }
            }
            let ratio = Complex::with_val(prec, &p / &dp);
            let denom = Complex::with_val(prec, 1) - Complex::with_val(prec, &ratio * &repulsion);
            let step = if ratio.real().is_finite() && !denom.is_zero() {
                ratio / denom
            } else {
                Complex::with_val(prec, (rng.gen_range(-1e-3..1e-3), rng.gen_range(-1e-3..1e-3)))
            };
            if !step.real().is_finite() || !step.imag().is_finite() {
                continue;
            }
            let mut scale = abs(&z[j]);
            if scale < 1 {
                scale = Float::with_val(prec, 1);
            }
            let rel = abs(&step) / scale;
            if rel > worst {
                worst = rel;
            }
            z[j] -= step;
        }
        if worst <= tol {
            break;
        }
    }
    for zj in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(coeffs, zj, prec);
            if p.is_zero() || dp.is_zero() {
                break;
            }
            *zj -= p / dp;
        }
    }
    z
}

/// `|f(t, u)|` at a normalized point, relative to the largest coefficient.
fn relative_value(f: &BinaryForm, p: &ComplexPoint, prec: u32) -> Float {
    let m = f.degree();
    let tp = complex_powers(p.t(), m, prec);
    let up = complex_powers(p.u(), m, prec);
    let mut acc = Complex::new(prec);
    let mut scale = Float::new(prec);
    for (i, a) in f.coeffs().iter().enumerate() {
        let fa = Float::with_val(prec, a);
        let fa_abs = Float::with_val(prec, fa.abs_ref());
        if fa_abs > scale {
            scale = fa_abs;
        }
        acc += Complex::with_val(prec, &tp[m - i] * &up[i]) * &fa;
    }
    abs(&acc) / scale
}

fn projective_roots_seeded(f: &BinaryForm, precision_bits: u32, seed: u64) -> Result<Vec<ComplexPoint>> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::Precondition(
            "roots need a nonzero form of positive degree".into(),
        ));
    }
    if !is_squarefree(f)? {
        return Err(Error::Precondition(format!("{f} has a repeated root")));
    }
    let prec = working_precision(precision_bits);
    let g: Vec<Complex> = f
        .affine_ascending()
        .iter()
        .map(|c| Complex::with_val(prec, c))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(f.degree());
    if g.len() > 1 {
        for z in aberth(&g, prec, &mut rng) {
            points.push(ComplexPoint::new(z, Complex::with_val(prec, 1))?);
        }
    }
    if f.multiplicity_at_infinity() == Some(1) {
        points.push(ComplexPoint::new(Complex::with_val(prec, 1), Complex::new(prec))?);
    }
    let bound = pow2_neg(precision_bits / 2, prec);
    for p in &points {
        let v = relative_value(f, p, prec);
        if !(v <= bound) {
            return Err(Error::NumericFailure(format!(
                "root iteration did not converge for {f} (|f| = {:e})",
                v.to_f64()
            )));
        }
    }
    let sep = separation_bound(precision_bits);
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if a.chordal_distance(b) <= sep {
                return Err(Error::NumericFailure(format!(
                    "root iteration produced coincident roots for {f}"
                )));
            }
        }
    }
    Ok(points)
}

/// The `m` distinct projective roots of a squarefree form of degree `m`.
///
/// Retries the iteration from fresh starting points a few times before giving
/// up with a numeric failure.
pub fn projective_roots(f: &BinaryForm, precision_bits: u32) -> Result<Vec<ComplexPoint>> {
    let mut last = None;
    for seed in 0..4 {
        match projective_roots_seeded(f, precision_bits, seed) {
            Err(e @ Error::NumericFailure(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Solves `sum_j lambda_j t_j^(d-i) u_j^i = Z_i` (`i = 0..=d`) in the least
/// squares sense by Gram–Schmidt QR with reorthogonalization. Returns the
/// weights and the residual `max_i |V lambda - Z|_i / max_i |Z_i|`.
pub fn solve_weights(
    z: &DualCoordinates,
    roots: &[ComplexPoint],
    precision_bits: u32,
) -> Result<(Vec<Complex>, Float)> {
    let d = z.degree();
    let r = roots.len();
    if r == 0 || r > d + 1 {
        return Err(Error::Precondition(format!(
            "{r} points cannot carry a degree-{d} decomposition"
        )));
    }
    let prec = working_precision(precision_bits);
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            if a.chordal_distance(b).is_zero() {
                return Err(Error::Precondition("points are not distinct".into()));
            }
        }
    }
    // Columns of the (d+1) x r evaluation matrix.
    let columns: Vec<Vec<Complex>> = roots
        .iter()
        .map(|p| {
            let tp = complex_powers(p.t(), d, prec);
            let up = complex_powers(p.u(), d, prec);
            (0..=d)
                .map(|i| Complex::with_val(prec, &tp[d - i] * &up[i]))
                .collect()
        })
        .collect();
    let rhs: Vec<Complex> = z.values().iter().map(|v| Complex::with_val(prec, v)).collect();

    let dot = |a: &[Complex], b: &[Complex]| -> Complex {
        let mut acc = Complex::new(prec);
        for (x, y) in a.iter().zip(b) {
            acc += Complex::with_val(prec, x.conj_ref()) * y;
        }
        acc
    };

    let mut q: Vec<Vec<Complex>> = Vec::with_capacity(r);
    let mut rmat = vec![vec![Complex::new(prec); r]; r];
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        for _pass in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let c = dot(qi, &v);
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= Complex::with_val(prec, &c * qk);
                }
                rmat[i][j] += c;
            }
        }
        let mut norm = Float::new(prec);
        for x in &v {
            norm += Float::with_val(prec, x.norm_ref());
        }
        let norm = norm.sqrt();
        if norm.is_zero() {
            return Err(Error::NumericFailure("evaluation matrix is rank deficient".into()));
        }
        for vk in v.iter_mut() {
            *vk /= &norm;
        }
        rmat[j][j] = Complex::with_val(prec, &norm);
        q.push(v);
    }
    let qtb: Vec<Complex> = q.iter().map(|qi| dot(qi, &rhs)).collect();
    let mut lambda = vec![Complex::new(prec); r];
    for j in (0..r).rev() {
        let mut acc = qtb[j].clone();
        for k in j + 1..r {
            acc -= Complex::with_val(prec, &rmat[j][k] * &lambda[k]);
        }
        lambda[j] = acc / &rmat[j][j];
    }

    let mut worst = Float::new(prec);
    for i in 0..=d {
        let mut acc = Complex::with_val(prec, -&rhs[i]);
        for (col, l) in columns.iter().zip(&lambda) {
            acc += Complex::with_val(prec, &col[i] * l);
        }
        let e = abs(&acc);
        if e > worst {
            worst = e;
        }
    }
    let scale = max_abs(&rhs, prec);
    let residual = worst / scale;
    if !(residual <= pow2_neg(precision_bits / 2, prec)) {
        return Err(Error::Inconsistent(residual.to_f64()));
    }
    Ok((lambda, residual))
}

/// How the points of a decomposition were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionMethod {
    /// Roots of the apolar generator.
    ApolarGenerator,
    /// Roots of a random squarefree element of the apolar space of degree `rank`.
    RandomApolarWitness,
    /// Degree-zero form; a single constant term.
    Constant,
}

impl DecompositionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionMethod::ApolarGenerator => "apolar-generator",
            DecompositionMethod::RandomApolarWitness => "random-apolar-witness",
            DecompositionMethod::Constant => "constant",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub degree: usize,
    pub rank: usize,
    pub case: CaseTag,
    pub terms: Vec<(Complex, ComplexPoint)>,
    /// Requested precision; entries carry `precision_bits + GUARD_BITS`.
    pub precision_bits: u32,
    /// Max coefficient error of the reconstruction relative to the largest input
    /// coefficient.
    pub residual: Float,
    pub method: DecompositionMethod,
    /// The squarefree apolar form whose roots are the points.
    pub witness: Option<BinaryForm>,
}

/// Max coefficient-wise error of `sum lambda_j L_j^d` against `q`, relative to
/// the largest coefficient of `q`.
pub fn reconstruction_error(q: &BinaryForm, terms: &[(Complex, ComplexPoint)], prec: u32) -> Float {
    let expanded = expand_power_sum(q.degree(), terms, prec);
    let mut worst = Float::new(prec);
    let mut scale = Float::new(prec);
    for (e, a) in expanded.iter().zip(q.coeffs()) {
        let fa = Float::with_val(prec, a);
        let diff = abs(&Complex::with_val(prec, e - &fa));
        if diff > worst {
            worst = diff;
        }
        let fa = fa.abs();
        if fa > scale {
            scale = fa;
        }
    }
    if scale.is_zero() {
        worst
    } else {
        worst / scale
    }
}

fn squarefree_witness(q: &BinaryForm, r: usize, seed: u64) -> Result<BinaryForm> {
    let space = apolar_space(q, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound: i64 = 1;
    for attempt in 0..WITNESS_RETRIES {
        if attempt > 0 && attempt % 8 == 0 {
            bound *= 2;
        }
        let mut f = BinaryForm::zero(r);
        for b in &space.basis {
            let c = Rational::from(rng.gen_range(-bound..=bound));
            f = f.add(&b.scale(&c))?;
        }
        if !f.is_zero() && is_squarefree(&f)? {
            return Ok(f);
        }
    }
    Err(Error::SamplingFailure {
        attempts: WITNESS_RETRIES,
        reason: format!("no squarefree element in the degree-{r} apolar space of {q}"),
    })
}

/// Decomposes a nonzero form into `rank` powers of linear forms and records the
/// verified reconstruction residual. `seed` drives the witness draw in the
/// degenerate and middle cases.
pub fn decompose(q: &BinaryForm, precision_bits: u32, seed: u64) -> Result<Decomposition> {
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    let prec = working_precision(precision_bits);
    let rank = waring_rank(q)?;
    let d = q.degree();
    if d == 0 {
        let lambda = Complex::with_val(prec, &q.coeffs()[0]);
        let point = ComplexPoint::new(Complex::with_val(prec, 1), Complex::new(prec))?;
        let terms = vec![(lambda, point)];
        let residual = reconstruction_error(q, &terms, prec);
        return Ok(Decomposition {
            degree: 0,
            rank: rank.rank,
            case: rank.case,
            terms,
            precision_bits,
            residual,
            method: DecompositionMethod::Constant,
            witness: None,
        });
    }
    let (witness, method) = match (rank.case, &rank.apolar) {
        (CaseTag::Generic | CaseTag::Power, Some(f)) => (f.clone(), DecompositionMethod::ApolarGenerator),
        _ => (
            squarefree_witness(q, rank.rank, seed)?,
            DecompositionMethod::RandomApolarWitness,
        ),
    };
    let points = projective_roots(&witness, precision_bits)?;
    if points.len() != rank.rank {
        return Err(Error::InternalInvariant(format!(
            "{} points for rank {}",
            points.len(),
            rank.rank
        )));
    }
    let (weights, _) = solve_weights(&q.dual_coords(), &points, precision_bits)?;
    let terms: Vec<(Complex, ComplexPoint)> = weights.into_iter().zip(points).collect();
    let residual = reconstruction_error(q, &terms, prec);
    Ok(Decomposition {
        degree: d,
        rank: rank.rank,
        case: rank.case,
        terms,
        precision_bits,
        residual,
        method,
        witness: Some(witness),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub max_relative_error: Float,
    pub tolerance: f64,
    pub residual_ok: bool,
    /// Smallest pairwise chordal distance; `None` with fewer than two terms.
    pub min_separation: Option<Float>,
    pub separation_bound: Float,
    pub separation_ok: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.residual_ok && self.separation_ok
    }
}

/// Re-expands the decomposition and compares it with `q`; also checks that the
/// points stay pairwise separated.
pub fn verify_decomposition(q: &BinaryForm, dec: &Decomposition, tol: f64) -> VerifyReport {
    let prec = working_precision(dec.precision_bits);
    let max_relative_error = if q.degree() == dec.degree {
        reconstruction_error(q, &dec.terms, prec)
    } else {
        Float::with_val(prec, f64::INFINITY)
    };
    let residual_ok = max_relative_error <= tol;
    let mut min_separation: Option<Float> = None;
    for (i, (_, a)) in dec.terms.iter().enumerate() {
        for (_, b) in &dec.terms[i + 1..] {
            let dist = a.chordal_distance(b);
            if min_separation.as_ref().is_none_or(|m| dist < *m) {
                min_separation = Some(dist);
            }
        }
    }
    let separation_bound = separation_bound(dec.precision_bits);
    let separation_ok = min_separation.as_ref().is_none_or(|m| *m > separation_bound);
    VerifyReport {
        max_relative_error,
        tolerance: tol,
        residual_ok,
        min_separation,
        separation_bound,
        separation_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 256;

    fn point(t: i64, u: i64) -> ComplexPoint {
        ComplexPoint::from_rationals(&Rational::from(t), &Rational::from(u), working_precision(BITS))
            .unwrap()
    }

    fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
        abs(&Complex::with_val(a.prec().0, a - b)) < tol
    }

    fn contains_point(points: &[ComplexPoint], p: &ComplexPoint) -> bool {
        points.iter().any(|x| x.chordal_distance(p) < 1e-60)
    }

    #[test]
    fn roots_of_simple_forms() {
        let roots = projective_roots(&BinaryForm::monomial(1, 1), BITS).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(contains_point(&roots, &point(1, 0)));
        assert!(contains_point(&roots, &point(0, 1)));

        let roots = projective_roots(&BinaryForm::from_ints(&[1, 0, -1]), BITS).unwrap();
        assert_eq!(roots.len(), 2);
        // x^2 - y^2 vanishes at [1, 1] and [1, -1]
        assert!(contains_point(&roots, &point(1, 1)));
        assert!(contains_point(&roots, &point(1, -1)));
    }

    #[test]
    fn cube_roots_of_unity() {
        let f = BinaryForm::from_ints(&[1, 0, 0, -1]);
        let roots = projective_roots(&f, BITS).unwrap();
        assert_eq!(roots.len(), 3);
        let prec = working_precision(BITS);
        let half_sqrt3 = Float::with_val(prec, 3).sqrt() / 2u32;
        let omega = Complex::with_val(prec, (Float::with_val(prec, -0.5), half_sqrt3.clone()));
        let omega_bar = Complex::with_val(prec, (Float::with_val(prec, -0.5), -half_sqrt3));
        for w in [Complex::with_val(prec, 1), omega, omega_bar] {
            let p = ComplexPoint::new(Complex::with_val(prec, 1), w).unwrap();
            assert!(contains_point(&roots, &p));
        }
        for p in &roots {
            assert!(relative_value(&f, p, prec) < pow2_neg(BITS / 2, prec));
        }
    }

    #[test]
    fn roots_reject_repeated_factors() {
        let f = BinaryForm::monomial(0, 2);
        assert!(matches!(projective_roots(&f, BITS), Err(Error::Precondition(_))));
        assert!(matches!(
            projective_roots(&BinaryForm::zero(2), BITS),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn weights_for_known_decompositions() {
        let prec = working_precision(BITS);
        let z = BinaryForm::from_ints(&[1, 0, 0, 1]).dual_coords();
        let (l, res) = solve_weights(&z, &[point(1, 0), point(0, 1)], BITS).unwrap();
        assert!(close(&l[0], &Complex::with_val(prec, 1), 1e-70));
        assert!(close(&l[1], &Complex::with_val(prec, 1), 1e-70));
        assert!(res < 1e-70);

        let z = BinaryForm::monomial(1, 1).dual_coords();
        let (l, _) = solve_weights(&z, &[point(1, 1), point(1, -1)], BITS).unwrap();
        assert!(close(&l[0], &Complex::with_val(prec, 0.25), 1e-70));
        assert!(close(&l[1], &Complex::with_val(prec, -0.25), 1e-70));

        let z = BinaryForm::monomial(5, 0).dual_coords();
        let (l, _) = solve_weights(&z, &[point(1, 0)], BITS).unwrap();
        assert!(close(&l[0], &Complex::with_val(prec, 1), 1e-70));

        // wrong points leave an inconsistent system
        let z = BinaryForm::from_ints(&[1, 0, 0, 1]).dual_coords();
        assert!(matches!(
            solve_weights(&z, &[point(1, 1), point(1, -1)], BITS),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn decompositions_of_small_forms() {
        let q = BinaryForm::from_ints(&[1, 0, 0, 1]);
        let dec = decompose(&q, BITS, 0).unwrap();
        assert_eq!(dec.terms.len(), 2);
        assert_eq!(dec.method, DecompositionMethod::ApolarGenerator);
        assert!(dec.residual < 1e-40);
        let prec = working_precision(BITS);
        for (l, p) in &dec.terms {
            assert!(close(l, &Complex::with_val(prec, 1), 1e-60));
            assert!(p.chordal_distance(&point(1, 0)) < 1e-60 || p.chordal_distance(&point(0, 1)) < 1e-60);
        }

        let q = BinaryForm::monomial(2, 1);
        let dec = decompose(&q, BITS, 0).unwrap();
        assert_eq!(dec.terms.len(), 3);
        assert_eq!(dec.method, DecompositionMethod::RandomApolarWitness);
        assert!(dec.residual < 1e-40);

        let q = BinaryForm::monomial(2, 2);
        let dec = decompose(&q, BITS, 0).unwrap();
        assert_eq!(dec.terms.len(), 3);
        assert!(dec.residual < 1e-40);

        let c = decompose(&BinaryForm::from_ints(&[7]), BITS, 0).unwrap();
        assert_eq!(c.terms.len(), 1);
        assert!(c.residual.is_zero());

        assert!(matches!(decompose(&BinaryForm::zero(3), BITS, 0), Err(Error::ZeroForm)));
    }

    #[test]
    fn verification_reports() {
        let q = BinaryForm::from_ints(&[1, 0, 0, 1]);
        let dec = decompose(&q, BITS, 0).unwrap();
        assert!(verify_decomposition(&q, &dec, 1e-30).passed());

        let mut doubled = dec.clone();
        for (l, _) in doubled.terms.iter_mut() {
            *l *= 2u32;
        }
        let report = verify_decomposition(&q, &doubled, 1e-30);
        assert!(!report.passed());
        assert!((report.max_relative_error.to_f64() - 1.0).abs() < 1e-12);

        for d in 1..8 {
            let q = BinaryForm::monomial(d, 0);
            let dec = decompose(&q, BITS, 0).unwrap();
            assert_eq!(dec.terms.len(), 1);
            assert!(verify_decomposition(&q, &dec, 1e-30).passed());
        }
    }

    #[test]
    fn witness_for_tangent_form_is_squarefree() {
        let f = squarefree_witness(&BinaryForm::monomial(2, 1), 3, 5).unwrap();
        assert!(is_squarefree(&f).unwrap());
        assert!(crate::apolarity::apolar_pairings(&BinaryForm::monomial(2, 1), &f)
            .unwrap()
            .iter()
            .all(|x| *x == 0));
    }
}
