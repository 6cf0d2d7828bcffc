//! Exact Waring rank of binary forms, stratum classification and seeded samplers.
//!
//! The rank algorithm: the middle catalecticant gives the border rank `k + 1`.
//! For `d = 2k` every form of that border rank has rank `k + 1`. Otherwise the
//! catalecticant of order `k + 1` has a one-dimensional kernel spanned by some
//! `f`; the rank is `k + 1` when `f` has distinct roots and `d - k + 1` when it
//! does not.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rug::Rational;

use crate::apolarity::{apolar_generator, border_rank, is_squarefree};
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, DualCoordinates};
use crate::linalg::{nullspace, RationalMatrix};

/// Retry budget shared by the samplers.
pub const SAMPLER_RETRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Rank equals border rank; the apolar generator is squarefree.
    Generic,
    /// Rank is `d - k + 1`; the apolar generator has a repeated root.
    Degenerate,
    /// `d = 2n` with border rank `n + 1`.
    Middle,
    /// Nonzero `d`-th power of a linear form.
    Power,
    Zero,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Generic => "generic",
            CaseTag::Degenerate => "degenerate",
            CaseTag::Middle => "middle",
            CaseTag::Power => "power",
            CaseTag::Zero => "zero",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Certificate produced by [`waring_rank`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub degree: usize,
    pub rank: usize,
    /// `k + 1`; zero for the zero form.
    pub border_rank: usize,
    /// Kernel generator of degree `k + 1`; absent for the zero form and the
    /// middle case.
    pub apolar: Option<BinaryForm>,
    pub case: CaseTag,
}

impl RankResult {
    /// The secant index `k` with the form on the `k`-th secant variety but not
    /// the `(k-1)`-st.
    pub fn k(&self) -> Option<usize> {
        self.border_rank.checked_sub(1)
    }

    /// Whether the form lies on a secant `k`-plane (rank equals border rank).
    pub fn on_secant_plane(&self) -> bool {
        self.rank == self.border_rank
    }
}

/// Exact Waring rank with its certificate. The zero form has rank 0.
pub fn waring_rank(q: &BinaryForm) -> Result<RankResult> {
    let d = q.degree();
    if q.is_zero() {
        return Ok(RankResult {
            degree: d,
            rank: 0,
            border_rank: 0,
            apolar: None,
            case: CaseTag::Zero,
        });
    }
    let b = border_rank(q)?;
    let k = b - 1;
    if d == 0 {
        return Ok(RankResult {
            degree: 0,
            rank: 1,
            border_rank: b,
            apolar: None,
            case: CaseTag::Power,
        });
    }
    if d.is_multiple_of(2) && k == d / 2 {
        return Ok(RankResult {
            degree: d,
            rank: k + 1,
            border_rank: b,
            apolar: None,
            case: CaseTag::Middle,
        });
    }
    let f = apolar_generator(q, k)?;
    let (rank, case) = if is_squarefree(&f)? {
        (k + 1, CaseTag::Generic)
    } else {
        (d - k + 1, CaseTag::Degenerate)
    };
    let case = if rank <= 1 { CaseTag::Power } else { case };
    let result = RankResult {
        degree: d,
        rank,
        border_rank: b,
        apolar: Some(f),
        case,
    };
    check_dichotomy(&result)?;
    Ok(result)
}

fn check_dichotomy(r: &RankResult) -> Result<()> {
    let d = r.degree;
    let b = r.border_rank;
    if r.rank > d.max(1) || (r.rank != b && r.rank + b != d + 2) {
        return Err(Error::InternalInvariant(format!(
            "rank {} is not in {{{b}, {}}} for degree {d}",
            r.rank,
            (d + 2).saturating_sub(b)
        )));
    }
    if r.case == CaseTag::Degenerate
        && r
            .apolar
            .as_ref()
            .map_or(Ok(true), is_squarefree)?
    {
        return Err(Error::InternalInvariant(
            "degenerate case with a squarefree generator".into(),
        ));
    }
    Ok(())
}

/// `{1, ..., r} ∪ {d - r + 2, ..., d}`: the ranks occurring in the closure of the
/// rank-`r` stratum of degree-`d` forms.
pub fn closure_ranks(d: usize, r: usize) -> Result<BTreeSet<usize>> {
    if r == 0 || r > d.max(1) {
        return Err(Error::OutOfRange {
            what: "rank",
            value: r,
            range: format!("1..={}", d.max(1)),
        });
    }
    Ok((1..=r).chain((d + 2 - r)..=d).collect())
}

/// Rank certificate together with its stratum and the ranks in its closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub result: RankResult,
    pub closure_ranks: BTreeSet<usize>,
}

impl Classification {
    pub fn stratum(&self) -> (usize, usize) {
        (self.result.degree, self.result.rank)
    }

    /// Label `S_{d,r}`.
    pub fn stratum_label(&self) -> String {
        format!("S_{{{},{}}}", self.result.degree, self.result.rank)
    }
}

pub fn classify(q: &BinaryForm) -> Result<Classification> {
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    let result = waring_rank(q)?;
    let closure_ranks = closure_ranks(result.degree, result.rank)?;
    Ok(Classification {
        result,
        closure_ranks,
    })
}

/// Random pairwise non-proportional linear forms with entries in `[-9, 9]`.
pub fn random_linear_forms<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(count);
    while out.len() < count {
        let cand = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        if cand == (0, 0) {
            continue;
        }
        if out.iter().all(|&(a, b)| a * cand.1 - b * cand.0 != 0) {
            out.push(cand);
        }
    }
    out
}

/// A form `sum_j lambda_j L_j^d` of rank exactly `r`, with random small-integer
/// linear forms and weights `lambda_j` in `[1, 9]`.
pub fn sample_generic_rank<R: Rng + ?Sized>(d: usize, r: usize, rng: &mut R) -> Result<BinaryForm> {
    if r == 0 || r > d / 2 + 1 {
        return Err(Error::OutOfRange {
            what: "generic rank",
            value: r,
            range: format!("1..={}", d / 2 + 1),
        });
    }
    for _ in 0..SAMPLER_RETRIES {
        let mut q = BinaryForm::zero(d);
        for (a, b) in random_linear_forms(rng, r) {
            let lambda = Rational::from(rng.gen_range(1..=9));
            q = q.add(&BinaryForm::linear(a, b).pow(d).scale(&lambda))?;
        }
        if !q.is_zero() && waring_rank(&q)?.rank == r {
            return Ok(q);
        }
    }
    Err(Error::SamplingFailure {
        attempts: SAMPLER_RETRIES,
        reason: format!("no rank-{r} form of degree {d} found"),
    })
}

/// The `(d-s+1) x (d+1)` matrix of `Z -> (phi(f * g))_g` over the monomials `g`
/// of degree `d - s`, where `s = deg f`.
fn annihilator_conditions(d: usize, f: &BinaryForm) -> RationalMatrix {
    let s = f.degree();
    let mut m = RationalMatrix::zeros(d - s + 1, d + 1);
    for i in 0..=d - s {
        for (j, c) in f.coeffs().iter().enumerate() {
            m.set(i, i + j, c.clone());
        }
    }
    m
}

/// A random form of degree `d` whose dual functional kills `f * S_{d - deg f}`:
/// a random small-integer combination of the kernel of the condition matrix.
pub fn form_annihilated_by<R: Rng + ?Sized>(
    d: usize,
    f: &BinaryForm,
    rng: &mut R,
) -> Result<BinaryForm> {
    if f.degree() > d {
        return Err(Error::InvalidInput(format!(
            "apolar form of degree {} exceeds {d}",
            f.degree()
        )));
    }
    let kernel = nullspace(&annihilator_conditions(d, f));
    let mut z = vec![Rational::new(); d + 1];
    for v in &kernel {
        let c = Rational::from(rng.gen_range(-9..=9));
        for (zi, vi) in z.iter_mut().zip(v) {
            *zi += Rational::from(&c * vi);
        }
    }
    Ok(DualCoordinates::new(z)?.to_form())
}

/// A form of border rank `k + 1` and rank `d - k + 1`, built from an apolar form
/// `l_0^2 l_1 ... l_(k-1)` with a repeated factor.
pub fn sample_degenerate<R: Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> Result<BinaryForm> {
    if k == 0 || d == 0 || k > (d - 1) / 2 {
        return Err(Error::OutOfRange {
            what: "degenerate secant index k",
            value: k,
            range: format!("1..={}", d.saturating_sub(1) / 2),
        });
    }
    for _ in 0..SAMPLER_RETRIES {
        let lines = random_linear_forms(rng, k);
        let mut f = BinaryForm::linear(lines[0].0, lines[0].1).pow(2);
        for &(a, b) in &lines[1..] {
            f = f.mul(&BinaryForm::linear(a, b));
        }
        let q = form_annihilated_by(d, &f, rng)?;
        if q.is_zero() || border_rank(&q)? != k + 1 {
            continue;
        }
        if waring_rank(&q)?.rank == d - k + 1 {
            return Ok(q);
        }
    }
    Err(Error::SamplingFailure {
        attempts: SAMPLER_RETRIES,
        reason: format!("no degenerate form of degree {d} with k = {k} found"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_examples() {
        let r = waring_rank(&BinaryForm::monomial(2, 1)).unwrap();
        assert_eq!((r.rank, r.border_rank, r.case), (3, 2, CaseTag::Degenerate));
        assert_eq!(r.apolar, Some(BinaryForm::monomial(0, 2)));

        let r = waring_rank(&BinaryForm::from_ints(&[1, 0, 0, 1])).unwrap();
        assert_eq!((r.rank, r.border_rank, r.case), (2, 2, CaseTag::Generic));
        assert_eq!(r.apolar, Some(BinaryForm::monomial(1, 1)));

        let r = waring_rank(&BinaryForm::monomial(2, 2)).unwrap();
        assert_eq!((r.rank, r.border_rank, r.case), (3, 3, CaseTag::Middle));
        assert_eq!(r.apolar, None);

        for d in 0..=9 {
            let r = waring_rank(&BinaryForm::monomial(d, 0)).unwrap();
            assert_eq!((r.rank, r.case), (1, CaseTag::Power), "x^{d}");
        }

        let r = waring_rank(&BinaryForm::zero(5)).unwrap();
        assert_eq!((r.rank, r.case), (0, CaseTag::Zero));
    }

    #[test]
    fn low_degree_forms_are_powers() {
        let r = waring_rank(&BinaryForm::linear(3, -7)).unwrap();
        assert_eq!((r.rank, r.case), (1, CaseTag::Power));
        let r = waring_rank(&BinaryForm::from_ints(&[-4])).unwrap();
        assert_eq!((r.rank, r.case), (1, CaseTag::Power));
        let r = waring_rank(&BinaryForm::from_ints(&[1, 2, 1])).unwrap();
        assert_eq!((r.rank, r.case), (1, CaseTag::Power));
        let r = waring_rank(&BinaryForm::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!((r.rank, r.case), (2, CaseTag::Middle));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&BinaryForm::monomial(2, 1)).unwrap();
        assert_eq!(c.stratum_label(), "S_{3,3}");
        assert_eq!(c.closure_ranks, BTreeSet::from([1, 2, 3]));

        let c = classify(&BinaryForm::from_ints(&[1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(c.stratum_label(), "S_{5,2}");
        assert_eq!(c.closure_ranks, BTreeSet::from([1, 2, 5]));
        assert!(c.result.on_secant_plane());

        let c = classify(&BinaryForm::monomial(3, 0)).unwrap();
        assert_eq!(c.stratum_label(), "S_{3,1}");
        assert_eq!(c.closure_ranks, BTreeSet::from([1]));

        assert_eq!(classify(&BinaryForm::zero(2)), Err(Error::ZeroForm));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure_ranks(5, 2).unwrap(), BTreeSet::from([1, 2, 5]));
        for d in 1..10 {
            assert_eq!(closure_ranks(d, 1).unwrap(), BTreeSet::from([1]));
        }
        assert_eq!(closure_ranks(4, 3).unwrap(), BTreeSet::from([1, 2, 3, 4]));
        assert!(closure_ranks(4, 0).is_err());
        assert!(closure_ranks(4, 5).is_err());
    }

    #[test]
    fn degenerate_from_double_line() {
        // f = y^2 at d = 3 forces Z_2 = Z_3 = 0
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let q = form_annihilated_by(3, &BinaryForm::monomial(0, 2), &mut rng).unwrap();
            let z = q.dual_coords();
            assert_eq!(z.values()[2], 0);
            assert_eq!(z.values()[3], 0);
            if z.values()[1] != 0 {
                assert_eq!(waring_rank(&q).unwrap().rank, 3);
            }
        }
    }

    #[test]
    fn samplers_hit_requested_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = sample_generic_rank(3, 2, &mut rng).unwrap();
        assert_eq!(waring_rank(&q).unwrap().rank, 2);
        let q = sample_generic_rank(8, 5, &mut rng).unwrap();
        let r = waring_rank(&q).unwrap();
        assert_eq!((r.rank, r.case), (5, CaseTag::Middle));
        let q = sample_generic_rank(6, 1, &mut rng).unwrap();
        assert_eq!(waring_rank(&q).unwrap().case, CaseTag::Power);

        for (d, k) in [(3, 1), (5, 2), (7, 3)] {
            let q = sample_degenerate(d, k, &mut rng).unwrap();
            let r = waring_rank(&q).unwrap();
            assert_eq!((r.rank, r.border_rank, r.case), (d - k + 1, k + 1, CaseTag::Degenerate));
        }
        assert!(sample_generic_rank(4, 4, &mut rng).is_err());
        assert!(sample_degenerate(4, 2, &mut rng).is_err());
        assert!(sample_degenerate(4, 0, &mut rng).is_err());
    }
}
