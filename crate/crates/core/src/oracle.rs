//! Numeric rank evidence by fitting `sum_j (c_j x + e_j y)^d` to a form.
//!
//! Independent of the exact pipeline: double precision complex arithmetic,
//! Levenberg–Marquardt from seeded random starts. A small residual at `r` terms
//! is evidence that the rank is at most `r`; a large one proves nothing.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::forms::BinaryForm;

pub const DEFAULT_RESTARTS: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Levenberg–Marquardt iterations per restart.
pub const MAX_ITER: usize = 400;
/// Restarts stop early once the residual is this small.
pub const CONVERGED: f64 = 1e-13;
/// Bound on the size `(|c_j|^2 + |e_j|^2)^(d/2)` of every fitted term, for input
/// scaled to unit largest coefficient. Steps leaving it are rejected, so the fit
/// cannot approach a form through diverging terms.
pub const TERM_BOUND: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub r: usize,
    /// Max coefficient error relative to the largest coefficient of the input.
    pub best_residual: f64,
    /// `[c_1, e_1, c_2, e_2, ...]` for the best restart, fitted to the input
    /// scaled so its largest coefficient has modulus one.
    pub parameters: Vec<Complex64>,
    pub restarts_used: usize,
    /// Relative error between the analytic and finite-difference Jacobians at
    /// the first iterate of the first restart.
    pub gradient_check: f64,
}

fn binomials(d: usize) -> Vec<f64> {
    let mut row = vec![1.0; d + 1];
    for i in 1..d {
        row[i] = row[i - 1] * (d - i + 1) as f64 / i as f64;
    }
    row
}

/// Coefficients of `sum_j (c_j x + e_j y)^d`. Degree zero is read as `sum_j c_j`.
pub fn model_coeffs(d: usize, params: &[Complex64]) -> Vec<Complex64> {
    if d == 0 {
        return vec![params.chunks(2).map(|p| p[0]).sum()];
    }
    let binom = binomials(d);
    let mut out = vec![Complex64::new(0.0, 0.0); d + 1];
    for p in params.chunks(2) {
        let (c, e) = (p[0], p[1]);
        for (i, o) in out.iter_mut().enumerate() {
            *o += binom[i] * c.powu((d - i) as u32) * e.powu(i as u32);
        }
    }
    out
}

/// Analytic Jacobian, `(d+1) x 2r`, row-major. The model is holomorphic, so
/// this is also the derivative along real parameter directions.
pub fn model_jacobian(d: usize, params: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = params.len();
    let zero = Complex64::new(0.0, 0.0);
    if d == 0 {
        return vec![(0..n)
            .map(|k| if k % 2 == 0 { Complex64::new(1.0, 0.0) } else { zero })
            .collect()];
    }
    let binom = binomials(d);
    let mut jac = vec![vec![zero; n]; d + 1];
    for (j, p) in params.chunks(2).enumerate() {
        let (c, e) = (p[0], p[1]);
        for (i, row) in jac.iter_mut().enumerate() {
            let a = (d - i) as u32;
            let b = i as u32;
            if a > 0 {
                row[2 * j] = binom[i] * a as f64 * c.powu(a - 1) * e.powu(b);
            }
            if b > 0 {
                row[2 * j + 1] = binom[i] * b as f64 * c.powu(a) * e.powu(b - 1);
            }
        }
    }
    jac
}

/// Central differences of [`model_coeffs`] along each real parameter direction.
pub fn finite_difference_jacobian(d: usize, params: &[Complex64], h: f64) -> Vec<Vec<Complex64>> {
    let n = params.len();
    let mut jac = vec![vec![Complex64::new(0.0, 0.0); n]; d + 1];
    let mut p = params.to_vec();
    for k in 0..n {
        let orig = p[k];
        p[k] = orig + h;
        let plus = model_coeffs(d, &p);
        p[k] = orig - h;
        let minus = model_coeffs(d, &p);
        p[k] = orig;
        for i in 0..=d {
            jac[i][k] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    jac
}

/// `||J_analytic - J_fd||_F / ||J_analytic||_F`.
pub fn jacobian_check(d: usize, params: &[Complex64]) -> f64 {
    let a = model_jacobian(d, params);
    let f = finite_difference_jacobian(d, params, 1e-5);
    let mut diff = 0.0;
    let mut norm = 0.0;
    for (ra, rf) in a.iter().zip(&f) {
        for (x, y) in ra.iter().zip(rf) {
            diff += (x - y).norm_sqr();
            norm += x.norm_sqr();
        }
    }
    if norm == 0.0 {
        diff.sqrt()
    } else {
        (diff / norm).sqrt()
    }
}

fn normalized_target(q: &BinaryForm) -> Vec<Complex64> {
    let vals: Vec<f64> = q.coeffs().iter().map(|c| c.to_f64()).collect();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if scale == 0.0 { 1.0 } else { scale };
    vals.iter().map(|v| Complex64::new(v / scale, 0.0)).collect()
}

fn residual_vec(d: usize, params: &[Complex64], target: &[Complex64]) -> Vec<Complex64> {
    model_coeffs(d, params)
        .iter()
        .zip(target)
        .map(|(m, t)| m - t)
        .collect()
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.norm()))
}

fn sum_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

/// Gaussian elimination with partial pivoting; `None` if singular.
fn solve_dense(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for k in i + 1..n {
            acc -= a[i][k] * x[k];
        }
        x[i] = acc / a[i][i];
    }
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

/// One Levenberg–Marquardt run; returns the final parameters and max residual.
fn term_size(d: usize, c: Complex64, e: Complex64) -> f64 {
    (c.norm_sqr() + e.norm_sqr()).powf(d as f64 / 2.0)
}

fn within_bound(d: usize, params: &[Complex64], bound: f64) -> bool {
    params.chunks(2).all(|p| term_size(d, p[0], p[1]) <= bound)
}

fn levenberg_marquardt(
    d: usize,
    mut params: Vec<Complex64>,
    target: &[Complex64],
    bound: f64,
) -> (Vec<Complex64>, f64) {
    let n = params.len();
    let mut res = residual_vec(d, &params, target);
    let mut cost = sum_sq(&res);
    let mut mu = 1e-3;
    for _ in 0..MAX_ITER {
        if max_abs(&res) < CONVERGED {
            break;
        }
        let jac = model_jacobian(d, &params);
        let mut jhj = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut jhr = vec![Complex64::new(0.0, 0.0); n];
        for (row, r) in jac.iter().zip(&res) {
            for a in 0..n {
                let ca = row[a].conj();
                jhr[a] -= ca * r;
                for b in 0..n {
                    jhj[a][b] += ca * row[b];
                }
            }
        }
        let mut improved = false;
        while mu < 1e16 {
            let mut sys = jhj.clone();
            for (k, row) in sys.iter_mut().enumerate() {
                let diag = row[k].re;
                row[k] += mu * (1.0 + diag);
            }
            let Some(step) = solve_dense(sys, jhr.clone()) else {
                mu *= 10.0;
                continue;
            };
            let trial: Vec<Complex64> = params.iter().zip(&step).map(|(p, s)| p + s).collect();
            if !within_bound(d, &trial, bound) {
                mu *= 10.0;
                continue;
            }
            let trial_res = residual_vec(d, &trial, target);
            let trial_cost = sum_sq(&trial_res);
            if trial_cost < cost {
                params = trial;
                res = trial_res;
                cost = trial_cost;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    let r = max_abs(&res);
    (params, r)
}

/// Unit-Gaussian complex entries, with any term outside half the bound scaled
/// back onto it.
fn random_start(rng: &mut ChaCha8Rng, r: usize, d: usize, bound: f64) -> Vec<Complex64> {
    let mut params: Vec<Complex64> = (0..2 * r)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    if d > 0 {
        let cap = (bound / 2.0).powf(1.0 / d as f64);
        for p in params.chunks_mut(2) {
            let norm = (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
            if norm > cap {
                p[0] *= cap / norm;
                p[1] *= cap / norm;
            }
        }
    }
    params
}

fn fit_one(
    d: usize,
    target: &[Complex64],
    r: usize,
    restarts: usize,
    seed: u64,
    bound: f64,
    warm: Option<&[Complex64]>,
) -> FitResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    let mut best: Option<(Vec<Complex64>, f64)> = None;
    let mut gradient_check = 0.0;
    let mut used = 0;
    // The warm start extends the best (r-1)-term fit by a zero term, so the best
    // residual can only go down as r grows.
    if let Some(prev) = warm {
        let mut start = prev.to_vec();
        start.extend([Complex64::new(0.0, 0.0); 2]);
        best = Some(levenberg_marquardt(d, start, target, bound));
    }
    for attempt in 0..restarts {
        if best.as_ref().is_some_and(|(_, b)| *b < CONVERGED) {
            break;
        }
        let start = random_start(&mut rng, r, d, bound);
        if attempt == 0 {
            gradient_check = jacobian_check(d, &start);
        }
        let (params, resid) = levenberg_marquardt(d, start, target, bound);
        used += 1;
        if best.as_ref().is_none_or(|(_, b)| resid < *b) {
            best = Some((params, resid));
        }
    }
    let (parameters, best_residual) = best.expect("at least one start");
    FitResult {
        r,
        best_residual,
        parameters,
        restarts_used: used,
        gradient_check,
    }
}

/// Fits with `1..=max_r` terms in turn, stopping after the first fit below
/// `stop_below`. Each fit reuses the previous optimum as one of its starts.
fn fit_sequence(
    q: &BinaryForm,
    max_r: usize,
    restarts: usize,
    seed: u64,
    bound: f64,
    stop_below: f64,
) -> Vec<FitResult> {
    let d = q.degree();
    let target = normalized_target(q);
    let mut fits: Vec<FitResult> = Vec::with_capacity(max_r);
    for r in 1..=max_r {
        let warm = fits.last().map(|f| f.parameters.as_slice());
        let fit = fit_one(d, &target, r, restarts, seed, bound, warm);
        let done = fit.best_residual < stop_below;
        fits.push(fit);
        if done {
            break;
        }
    }
    fits
}

/// Best fit of `q` by `r` powers of linear forms over `restarts` seeded random
/// starts per term count.
///
/// Fits with fewer terms are run first and seed one extra start each, which
/// makes `best_residual` non-increasing in `r`. The first random start of the
/// final fit is used for the Jacobian check.
///
/// Panics if `r == 0` or `restarts == 0`.
pub fn numeric_fit(q: &BinaryForm, r: usize, restarts: usize, seed: u64) -> FitResult {
    numeric_fit_bounded(q, r, restarts, seed, TERM_BOUND)
}

#[doc(hidden)]
pub fn numeric_fit_bounded(q: &BinaryForm, r: usize, restarts: usize, seed: u64, bound: f64) -> FitResult {
    assert!(r >= 1, "at least one term is needed");
    assert!(restarts >= 1, "at least one restart is needed");
    let mut fits = fit_sequence(q, r, restarts, seed, bound, 0.0);
    let mut last = fits.pop().expect("r >= 1");
    if last.restarts_used == 0 {
        // converged from the warm start alone; still report the Jacobian check
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        last.gradient_check = jacobian_check(q.degree(), &random_start(&mut rng, r, q.degree(), bound));
    }
    last
}

/// Smallest `r <= max(d, 1)` whose fit reaches `tol` with [`DEFAULT_RESTARTS`]
/// restarts; `max(d, 1)` if none does.
pub fn oracle_rank_upper(q: &BinaryForm, tol: f64, seed: u64) -> usize {
    let top = q.degree().max(1);
    let fits = fit_sequence(q, top, DEFAULT_RESTARTS, seed, TERM_BOUND, tol);
    fits.iter()
        .find(|f| f.best_residual < tol)
        .map_or(top, |f| f.r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_matches_hand_expansion() {
        // (x + 2y)^2 = x^2 + 4xy + 4y^2
        let p = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        let m = model_coeffs(2, &p);
        assert_eq!(m, vec![Complex64::new(1.0, 0.0), Complex64::new(4.0, 0.0), Complex64::new(4.0, 0.0)]);
    }

    #[test]
    fn exact_powers_fit_with_one_term() {
        for d in 1..=6 {
            let fit = numeric_fit(&BinaryForm::monomial(d, 0), 1, 8, 1);
            assert!(fit.best_residual < 1e-10, "x^{d}: {}", fit.best_residual);
        }
    }

    #[test]
    fn tangent_cubic_needs_three_terms() {
        let q = BinaryForm::monomial(2, 1);
        let two = numeric_fit(&q, 2, 64, 7);
        assert!(two.best_residual > 1e-3, "{}", two.best_residual);
        let three = numeric_fit(&q, 3, 64, 7);
        assert!(three.best_residual < 1e-10);
        let re = model_coeffs(3, &three.parameters);
        let expect = [0.0, 1.0, 0.0, 0.0];
        for (m, e) in re.iter().zip(expect) {
            assert!((m - e).norm() <= three.best_residual * 1.0001 + 1e-15);
        }
    }

    #[test]
    fn upper_bounds_on_small_forms() {
        assert_eq!(oracle_rank_upper(&BinaryForm::from_ints(&[1, 0, 0, 1]), DEFAULT_TOL, 0), 2);
        assert_eq!(oracle_rank_upper(&BinaryForm::monomial(2, 2), DEFAULT_TOL, 0), 3);
        assert_eq!(oracle_rank_upper(&BinaryForm::monomial(4, 0), DEFAULT_TOL, 0), 1);
    }

    #[test]
    fn jacobian_agrees_with_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for d in 1..=6 {
            let p = random_start(&mut rng, 3, d, TERM_BOUND);
            assert!(jacobian_check(d, &p) < 1e-6);
        }
    }
}
