//! Truncated power-series models of the distribution algebra at a p-adic
//! radius: PBW series with exact straightening, log-scale norms, principal
//! symbols, Mahler expansions, and the norm identities they satisfy.

use crate::lie::LieAlgebra;
use crate::ring::{format_q, q, qi, vp_rat, Rationals, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DistError {
    #[error("series live over different algebras or truncation degrees")]
    BasisMismatch,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid radius parameter: {0}")]
    InvalidParam(String),
}

/// Radius r = p^{-a}; the convergence exponent kappa is forced by p.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusParam {
    p: u64,
    kappa: u32,
    a: Q,
    small_radius: bool,
}

impl RadiusParam {
    pub fn new(p: u64, a: Q) -> Result<Self, DistError> {
        if !crate::ring::is_prime(p) {
            return Err(DistError::InvalidParam(format!("{p} is not prime")));
        }
        if a <= Q::zero() || a >= Q::one() {
            return Err(DistError::InvalidParam(format!(
                "exponent {} is not strictly between 0 and 1",
                format_q(&a)
            )));
        }
        let kappa = if p == 2 { 2 } else { 1 };
        // r^kappa < p^{-1/(p-1)}  <=>  kappa a > 1/(p-1)
        let small_radius = qi(kappa as i64) * &a > q(1, p as i64 - 1);
        Ok(RadiusParam {
            p,
            kappa,
            a,
            small_radius,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn kappa(&self) -> u32 {
        self.kappa
    }
    pub fn a(&self) -> &Q {
        &self.a
    }
    pub fn small_radius(&self) -> bool {
        self.small_radius
    }
}

/// Norms in log_p scale; negative infinity is reserved for zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LogNorm {
    NegInfinity,
    Finite(Q),
}

impl LogNorm {
    pub fn add(&self, other: &LogNorm) -> LogNorm {
        match (self, other) {
            (LogNorm::Finite(a), LogNorm::Finite(b)) => LogNorm::Finite(a + b),
            _ => LogNorm::NegInfinity,
        }
    }

    pub fn render(&self) -> String {
        match self {
            LogNorm::NegInfinity => "-inf".into(),
            LogNorm::Finite(v) => format_q(v),
        }
    }
}

struct CrDetails {
    log: Q,
    /// Prime powers attaining the maximum.
    attaining: Vec<u64>,
}

/// max over t >= 1 of v_p(t) - kappa a t. Only prime powers can attain it:
/// among all t with v_p(t) = m, the value is largest at t = p^m. Successive
/// prime-power values differ by 1 - kappa a p^m (p-1), so once that is
/// negative the sequence strictly decreases and the search may stop.
fn c_r_details(param: &RadiusParam) -> CrDetails {
    let ka = qi(param.kappa as i64) * &param.a;
    let mut best: Option<Q> = None;
    let mut attaining = Vec::new();
    let mut m = 0i64;
    let mut t = 1u64;
    loop {
        let value = qi(m) - &ka * qi(t as i64);
        match &best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => attaining.push(t),
            _ => {
                best = Some(value);
                attaining = vec![t];
            }
        }
        if &ka * qi(t as i64) * qi(param.p as i64 - 1) > Q::one() {
            break;
        }
        m += 1;
        t *= param.p;
    }
    CrDetails {
        log: best.expect("at least t = 1 is evaluated"),
        attaining,
    }
}

/// log_p of c_r = sup_t |1/t|_p r^{kappa t}.
pub fn c_r(param: &RadiusParam) -> LogNorm {
    LogNorm::Finite(c_r_details(param).log)
}

// ---------------------------------------------------------------------------
// PBW series
// ---------------------------------------------------------------------------

/// Element of the enveloping algebra written in the ordered PBW basis,
/// truncated at total degree `trunc` (exclusive).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedPBWSeries {
    alg: LieAlgebra<Rationals>,
    trunc: usize,
    coeffs: BTreeMap<Vec<u32>, Q>,
    exact: bool,
}

fn degree(beta: &[u32]) -> usize {
    beta.iter().map(|&e| e as usize).sum()
}

impl TruncatedPBWSeries {
    pub fn zero(alg: &LieAlgebra<Rationals>, trunc: usize) -> Self {
        TruncatedPBWSeries {
            alg: alg.clone(),
            trunc,
            coeffs: BTreeMap::new(),
            exact: true,
        }
    }

    pub fn one(alg: &LieAlgebra<Rationals>, trunc: usize) -> Self {
        Self::from_terms(alg, trunc, vec![(vec![0; alg.dim()], Q::one())])
    }

    pub fn generator(alg: &LieAlgebra<Rationals>, trunc: usize, i: usize) -> Self {
        let mut beta = vec![0u32; alg.dim()];
        beta[i] = 1;
        Self::from_terms(alg, trunc, vec![(beta, Q::one())])
    }

    /// Terms of degree >= trunc are discarded and flagged.
    pub fn from_terms(
        alg: &LieAlgebra<Rationals>,
        trunc: usize,
        terms: Vec<(Vec<u32>, Q)>,
    ) -> Self {
        let mut out = TruncatedPBWSeries::zero(alg, trunc);
        for (beta, c) in terms {
            assert_eq!(beta.len(), alg.dim(), "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            if degree(&beta) >= trunc {
                out.exact = false;
                continue;
            }
            accumulate(&mut out.coeffs, beta, c);
        }
        out
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }
    pub fn is_exact(&self) -> bool {
        self.exact
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.coeffs.iter()
    }
    pub fn coeff(&self, beta: &[u32]) -> Q {
        self.coeffs.get(beta).cloned().unwrap_or_else(Q::zero)
    }

    fn compatible(&self, other: &Self) -> Result<(), DistError> {
        if self.alg != other.alg || self.trunc != other.trunc {
            return Err(DistError::BasisMismatch);
        }
        Ok(())
    }
}

fn accumulate(map: &mut BTreeMap<Vec<u32>, Q>, key: Vec<u32>, c: Q) {
    let entry = map.entry(key.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

pub fn pbw_add(
    a: &TruncatedPBWSeries,
    b: &TruncatedPBWSeries,
) -> Result<TruncatedPBWSeries, DistError> {
    a.compatible(b)?;
    let mut out = a.clone();
    out.exact = a.exact && b.exact;
    for (beta, c) in &b.coeffs {
        accumulate(&mut out.coeffs, beta.clone(), c.clone());
    }
    Ok(out)
}

pub fn pbw_scale(c: &Q, a: &TruncatedPBWSeries) -> TruncatedPBWSeries {
    let mut out = TruncatedPBWSeries::zero(&a.alg, a.trunc);
    out.exact = a.exact;
    if c.is_zero() {
        return out;
    }
    for (beta, d) in &a.coeffs {
        out.coeffs.insert(beta.clone(), c * d);
    }
    out
}

/// Rewrites a product word into the ordered basis with the rule
/// x_a x_b = x_b x_a + [x_a, x_b] applied at the first descent. Sorted
/// words at or above the truncation degree are dropped and flagged.
fn straighten(
    alg: &LieAlgebra<Rationals>,
    trunc: usize,
    word: Vec<usize>,
    coeff: Q,
    out: &mut BTreeMap<Vec<u32>, Q>,
    exact: &mut bool,
) {
    match word.windows(2).position(|w| w[0] > w[1]) {
        None => {
            if word.len() >= trunc {
                *exact = false;
                return;
            }
            let mut beta = vec![0u32; alg.dim()];
            for &i in &word {
                beta[i] += 1;
            }
            accumulate(out, beta, coeff);
        }
        Some(i) => {
            let (a, b) = (word[i], word[i + 1]);
            let mut swapped = word.clone();
            swapped.swap(i, i + 1);
            straighten(alg, trunc, swapped, coeff.clone(), out, exact);
            for k in 0..alg.dim() {
                let c = alg.c(a, b, k);
                if c.is_zero() {
                    continue;
                }
                let mut shorter = word.clone();
                shorter.remove(i + 1);
                shorter[i] = k;
                straighten(alg, trunc, shorter, &coeff * c, out, exact);
            }
        }
    }
}

fn expand_word(beta: &[u32]) -> Vec<usize> {
    let mut word = Vec::with_capacity(degree(beta));
    for (i, &e) in beta.iter().enumerate() {
        word.extend(std::iter::repeat(i).take(e as usize));
    }
    word
}

pub fn pbw_multiply(
    a: &TruncatedPBWSeries,
    b: &TruncatedPBWSeries,
) -> Result<TruncatedPBWSeries, DistError> {
    a.compatible(b)?;
    let mut out = TruncatedPBWSeries::zero(&a.alg, a.trunc);
    out.exact = a.exact && b.exact;
    for (beta, c1) in &a.coeffs {
        for (gamma, c2) in &b.coeffs {
            let mut word = expand_word(beta);
            word.extend(expand_word(gamma));
            straighten(
                &a.alg,
                a.trunc,
                word,
                c1 * c2,
                &mut out.coeffs,
                &mut out.exact,
            );
        }
    }
    Ok(out)
}

/// sup over stored terms of |d_beta| c_r^{|beta|}, in log_p scale.
pub fn nu_norm(l: &TruncatedPBWSeries, param: &RadiusParam) -> LogNorm {
    let log_cr = c_r_details(param).log;
    let mut best: Option<Q> = None;
    for (beta, d) in &l.coeffs {
        let v = vp_rat(d, param.p).expect("stored coefficients are nonzero");
        let value = qi(-v) + qi(degree(beta) as i64) * &log_cr;
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    best.map_or(LogNorm::NegInfinity, LogNorm::Finite)
}

/// The stored terms whose individual log-norm attains nu_norm. Empty for
/// the zero series.
pub fn principal_symbol(l: &TruncatedPBWSeries, param: &RadiusParam) -> Vec<(Vec<u32>, Q)> {
    let top = match nu_norm(l, param) {
        LogNorm::NegInfinity => return Vec::new(),
        LogNorm::Finite(v) => v,
    };
    let log_cr = c_r_details(param).log;
    l.coeffs
        .iter()
        .filter(|(beta, d)| {
            let v = vp_rat(d, param.p).expect("stored coefficients are nonzero");
            qi(-v) + qi(degree(beta) as i64) * &log_cr == top
        })
        .map(|(beta, d)| (beta.clone(), d.clone()))
        .collect()
}

/// Smallest valuation among the nonzero structure constants; None when the
/// algebra is abelian.
fn constants_min_valuation(alg: &LieAlgebra<Rationals>, p: u64) -> Option<i64> {
    let mut min = None;
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for k in 0..alg.dim() {
                if let Some(v) = vp_rat(alg.c(i, j, k), p) {
                    if min.is_none_or(|m| v < m) {
                        min = Some(v);
                    }
                }
            }
        }
    }
    min
}

fn check_norm_preconditions(
    alg: &LieAlgebra<Rationals>,
    param: &RadiusParam,
) -> Result<(), DistError> {
    if !param.small_radius {
        return Err(DistError::PreconditionUnmet(format!(
            "radius is not small: kappa a = {} does not exceed 1/(p-1)",
            format_q(&(qi(param.kappa as i64) * &param.a))
        )));
    }
    if let Some(v) = constants_min_valuation(alg, param.p) {
        if v < param.kappa as i64 {
            return Err(DistError::PreconditionUnmet(format!(
                "structure constants have valuation {v}, need at least {}",
                param.kappa
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MultiplicativityReport {
    pub product_norm: LogNorm,
    pub factor_norm_sum: LogNorm,
    pub pass: bool,
}

/// Exact multiplicativity of nu_norm at small radius over an algebra with
/// p-divisible structure constants.
pub fn multiplicativity_check(
    a: &TruncatedPBWSeries,
    b: &TruncatedPBWSeries,
    param: &RadiusParam,
) -> Result<MultiplicativityReport, DistError> {
    a.compatible(b)?;
    check_norm_preconditions(&a.alg, param)?;
    let product = pbw_multiply(a, b)?;
    if !product.exact {
        return Err(DistError::PreconditionUnmet(
            "product is not exact at this truncation degree".into(),
        ));
    }
    let product_norm = nu_norm(&product, param);
    let factor_norm_sum = nu_norm(a, param).add(&nu_norm(b, param));
    let pass = product_norm == factor_norm_sum;
    Ok(MultiplicativityReport {
        product_norm,
        factor_norm_sum,
        pass,
    })
}

/// Multi-indices over `d` variables with total degree at most `max_total`,
/// in graded colex-friendly order.
fn multi_indices(d: usize, max_total: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max_total {
        for mut rest in multi_indices(d - 1, max_total - first) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct GradedReport {
    pub pairs_checked: usize,
    /// Commutator norms per generator pair, each required to sit strictly
    /// below twice log c_r.
    pub defects: Vec<(usize, usize, LogNorm)>,
    pub pass: bool,
}

/// The associated graded ring behaves like a polynomial ring: principal
/// symbols of monomial products multiply like commuting variables up to
/// total degree `d_max`, and commutator defects drop below the degree-two
/// norm line.
pub fn graded_polynomial_check(
    alg: &LieAlgebra<Rationals>,
    param: &RadiusParam,
    d_max: u32,
) -> Result<GradedReport, DistError> {
    check_norm_preconditions(alg, param)?;
    let trunc = d_max as usize + 1;
    let indices = multi_indices(alg.dim(), d_max);
    let mut pairs_checked = 0;
    let mut pass = true;
    for beta in &indices {
        for gamma in &indices {
            if degree(beta) + degree(gamma) > d_max as usize {
                continue;
            }
            pairs_checked += 1;
            let mb = TruncatedPBWSeries::from_terms(alg, trunc, vec![(beta.clone(), Q::one())]);
            let mg = TruncatedPBWSeries::from_terms(alg, trunc, vec![(gamma.clone(), Q::one())]);
            let prod = pbw_multiply(&mb, &mg)?;
            let symbol = principal_symbol(&prod, param);
            let expected: Vec<u32> = beta.iter().zip(gamma).map(|(x, y)| x + y).collect();
            if symbol != vec![(expected, Q::one())] {
                pass = false;
            }
        }
    }
    let two_log_cr = LogNorm::Finite(qi(2) * c_r_details(param).log);
    let mut defects = Vec::new();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let terms: Vec<(Vec<u32>, Q)> = (0..alg.dim())
                .map(|k| {
                    let mut beta = vec![0u32; alg.dim()];
                    beta[k] = 1;
                    (beta, alg.c(i, j, k).clone())
                })
                .collect();
            let bracket = TruncatedPBWSeries::from_terms(alg, trunc, terms);
            let norm = nu_norm(&bracket, param);
            if norm >= two_log_cr {
                pass = false;
            }
            defects.push((i, j, norm));
        }
    }
    Ok(GradedReport {
        pairs_checked,
        defects,
        pass,
    })
}

// ---------------------------------------------------------------------------
// Mahler series
// ---------------------------------------------------------------------------

/// Series in commuting coordinates b_1..b_d, truncated at total degree
/// `trunc` (exclusive).
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerSeries {
    vars: usize,
    trunc: usize,
    coeffs: BTreeMap<Vec<u32>, Q>,
    exact: bool,
}

impl MahlerSeries {
    pub fn zero(vars: usize, trunc: usize) -> Self {
        MahlerSeries {
            vars,
            trunc,
            coeffs: BTreeMap::new(),
            exact: true,
        }
    }

    pub fn one(vars: usize, trunc: usize) -> Self {
        let mut s = Self::zero(vars, trunc);
        if trunc > 0 {
            s.coeffs.insert(vec![0; vars], Q::one());
        } else {
            s.exact = false;
        }
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }
    pub fn trunc(&self) -> usize {
        self.trunc
    }
    pub fn is_exact(&self) -> bool {
        self.exact
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.coeffs.iter()
    }
    pub fn coeff(&self, alpha: &[u32]) -> Q {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Q::zero)
    }
}

pub fn mahler_multiply(a: &MahlerSeries, b: &MahlerSeries) -> Result<MahlerSeries, DistError> {
    if a.vars != b.vars || a.trunc != b.trunc {
        return Err(DistError::BasisMismatch);
    }
    let mut out = MahlerSeries::zero(a.vars, a.trunc);
    out.exact = a.exact && b.exact;
    for (alpha, c1) in &a.coeffs {
        for (beta, c2) in &b.coeffs {
            let sum: Vec<u32> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            if degree(&sum) >= a.trunc {
                out.exact = false;
                continue;
            }
            accumulate(&mut out.coeffs, sum, c1 * c2);
        }
    }
    Ok(out)
}

/// Generalized binomial coefficient: x (x-1) ... (x-k+1) / k!.
fn binom(x: i64, k: u32) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k as i64 {
        num *= BigInt::from(x - t);
        den *= BigInt::from(t + 1);
    }
    Q::new(num, den)
}

/// Dirac distribution at an integer point, in Mahler coordinates:
/// product of (1+b_i)^{x_i} expanded binomially.
pub fn mahler_dirac(x: &[i64], trunc: usize) -> MahlerSeries {
    let d = x.len();
    let mut out = MahlerSeries::one(d, trunc);
    for (i, &xi) in x.iter().enumerate() {
        let mut factor = MahlerSeries::zero(d, trunc);
        // for xi >= 0 the expansion stops at degree xi
        factor.exact = xi >= 0 && (xi as usize) < trunc;
        for k in 0..trunc as u32 {
            let c = binom(xi, k);
            if c.is_zero() {
                continue;
            }
            let mut alpha = vec![0u32; d];
            alpha[i] = k;
            factor.coeffs.insert(alpha, c);
        }
        out = mahler_multiply(&out, &factor).expect("factors share shape");
    }
    out
}

/// sup over stored terms of |d_alpha| r^{kappa |alpha|}, in log_p scale.
pub fn mahler_norm(s: &MahlerSeries, param: &RadiusParam) -> LogNorm {
    let ka = qi(param.kappa() as i64) * param.a();
    let mut best: Option<Q> = None;
    for (alpha, d) in &s.coeffs {
        let v = vp_rat(d, param.p).expect("stored coefficients are nonzero");
        let value = qi(-v) - qi(degree(alpha) as i64) * &ka;
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    best.map_or(LogNorm::NegInfinity, LogNorm::Finite)
}

#[derive(Clone, Debug)]
pub struct LogSeriesReport {
    pub series: MahlerSeries,
    pub norm: LogNorm,
    /// Whether the truncation already contains every term attaining c_r,
    /// so the norm equals c_r exactly.
    pub stable: bool,
}

/// The one-variable series log(1+b) truncated at degree `trunc`, with its
/// Mahler norm and a flag telling whether the norm has converged to c_r.
pub fn log_one_plus_b(param: &RadiusParam, trunc: usize) -> LogSeriesReport {
    assert!(trunc >= 2, "need at least the linear term");
    let mut series = MahlerSeries::zero(1, trunc);
    series.exact = false; // the true series is infinite
    for t in 1..trunc as u32 {
        let sign = if t % 2 == 1 { 1 } else { -1 };
        series.coeffs.insert(vec![t], q(sign, t as i64));
    }
    let norm = mahler_norm(&series, param);
    let details = c_r_details(param);
    let largest = *details.attaining.iter().max().expect("nonempty");
    let stable = (trunc as u64).saturating_sub(1) >= largest;
    if stable {
        debug_assert_eq!(norm, LogNorm::Finite(details.log));
    }
    LogSeriesReport {
        series,
        norm,
        stable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    fn param(p: u64, num: i64, den: i64) -> RadiusParam {
        RadiusParam::new(p, q(num, den)).unwrap()
    }

    #[test]
    fn radius_params() {
        let r = param(3, 3, 4);
        assert_eq!(r.kappa(), 1);
        assert!(r.small_radius()); // 3/4 > 1/2
        assert!(!param(3, 1, 2).small_radius()); // equality is not enough
        assert!(param(2, 7, 8).small_radius()); // 2 * 7/8 > 1
        assert!(!param(2, 1, 4).small_radius()); // 1/2 < 1
        assert!(param(5, 1, 2).small_radius()); // 1/2 > 1/4
        assert!(matches!(
            RadiusParam::new(4, q(1, 2)),
            Err(DistError::InvalidParam(_))
        ));
        assert!(matches!(
            RadiusParam::new(3, qi(1)),
            Err(DistError::InvalidParam(_))
        ));
    }

    #[test]
    fn c_r_frozen_values() {
        // t = 1 wins: -3/4 against 1 - 9/4
        assert_eq!(c_r(&param(3, 3, 4)), LogNorm::Finite(q(-3, 4)));
        // tie between t = 1 and t = 3
        let d = c_r_details(&param(3, 1, 2));
        assert_eq!(d.log, q(-1, 2));
        assert_eq!(d.attaining, vec![1, 3]);
        // p = 2: kappa = 2, a = 7/8: t=1: -7/4; t=2: 1-7/2; decreasing
        assert_eq!(c_r(&param(2, 7, 8)), LogNorm::Finite(q(-7, 4)));
    }

    #[test]
    fn small_radius_means_c_r_is_r_to_kappa() {
        for p in [2u64, 3, 5, 7] {
            for (n, d) in [(1i64, 4i64), (1, 2), (3, 4), (7, 8)] {
                let r = param(p, n, d);
                let expected = LogNorm::Finite(-qi(r.kappa() as i64) * r.a());
                if r.small_radius() {
                    assert_eq!(c_r(&r), expected, "p={p} a={n}/{d}");
                } else {
                    assert!(c_r(&r) >= expected, "p={p} a={n}/{d}");
                }
            }
        }
    }

    #[test]
    fn norms_of_simple_series() {
        let a = catalog("abelian(2)").unwrap().algebra;
        let r = param(3, 3, 4);
        let one = TruncatedPBWSeries::one(&a, 4);
        assert_eq!(nu_norm(&one, &r), LogNorm::Finite(qi(0)));
        let p_d1 = pbw_scale(&qi(3), &TruncatedPBWSeries::generator(&a, 4, 0));
        assert_eq!(nu_norm(&p_d1, &r), LogNorm::Finite(q(-7, 4)));
        let mixed =
            TruncatedPBWSeries::from_terms(&a, 4, vec![(vec![1, 0], qi(1)), (vec![0, 2], qi(1))]);
        assert_eq!(nu_norm(&mixed, &r), LogNorm::Finite(q(-3, 4)));
        assert_eq!(
            nu_norm(&TruncatedPBWSeries::zero(&a, 4), &r),
            LogNorm::NegInfinity
        );
    }

    #[test]
    fn straightening_matches_hand_computation() {
        let h = catalog("heisenberg_scaled(3)").unwrap().algebra;
        let x = TruncatedPBWSeries::generator(&h, 4, 0);
        let y = TruncatedPBWSeries::generator(&h, 4, 1);
        // y x = x y - 3 z
        let yx = pbw_multiply(&y, &x).unwrap();
        assert!(yx.is_exact());
        assert_eq!(yx.coeff(&[1, 1, 0]), qi(1));
        assert_eq!(yx.coeff(&[0, 0, 1]), qi(-3));
        assert_eq!(yx.terms().count(), 2);
        // x y stays put
        let xy = pbw_multiply(&x, &y).unwrap();
        assert_eq!(xy.coeff(&[1, 1, 0]), qi(1));
        assert_eq!(xy.terms().count(), 1);
    }

    #[test]
    fn truncation_clears_exactness() {
        let a = catalog("abelian(1)").unwrap().algebra;
        let d1 = TruncatedPBWSeries::generator(&a, 2, 0);
        let sq = pbw_multiply(&d1, &d1).unwrap();
        assert!(sq.is_zero());
        assert!(!sq.is_exact());
    }

    #[test]
    fn products_associate_when_exact() {
        let h = catalog("heisenberg_scaled(3)").unwrap().algebra;
        let x = TruncatedPBWSeries::generator(&h, 6, 0);
        let y = TruncatedPBWSeries::generator(&h, 6, 1);
        let z = TruncatedPBWSeries::generator(&h, 6, 2);
        let mix = pbw_add(&y, &pbw_scale(&qi(3), &z)).unwrap();
        let left = pbw_multiply(&pbw_multiply(&y, &x).unwrap(), &mix).unwrap();
        let right = pbw_multiply(&y, &pbw_multiply(&x, &mix).unwrap()).unwrap();
        assert!(left.is_exact() && right.is_exact());
        assert_eq!(left, right);
    }

    #[test]
    fn basis_mismatch_is_reported() {
        let a = catalog("abelian(2)").unwrap().algebra;
        let s4 = TruncatedPBWSeries::one(&a, 4);
        let s5 = TruncatedPBWSeries::one(&a, 5);
        assert_eq!(
            pbw_multiply(&s4, &s5).unwrap_err(),
            DistError::BasisMismatch
        );
    }

    #[test]
    fn multiplicativity_on_the_cross_term_example() {
        let h = catalog("heisenberg_scaled(3)").unwrap().algebra;
        let r = param(3, 3, 4);
        let x = TruncatedPBWSeries::generator(&h, 4, 0);
        let y = TruncatedPBWSeries::generator(&h, 4, 1);
        let rep = multiplicativity_check(&y, &x, &r).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.product_norm, LogNorm::Finite(q(-6, 4)));
    }

    #[test]
    fn multiplicativity_preconditions() {
        let scaled = catalog("heisenberg_scaled(3)").unwrap().algebra;
        let plain = catalog("heisenberg(3)").unwrap().algebra;
        let x = TruncatedPBWSeries::generator(&scaled, 4, 0);
        let y = TruncatedPBWSeries::generator(&scaled, 4, 1);
        // radius not small
        assert!(matches!(
            multiplicativity_check(&x, &y, &param(3, 1, 4)),
            Err(DistError::PreconditionUnmet(_))
        ));
        // constants not divisible enough
        let px = TruncatedPBWSeries::generator(&plain, 4, 0);
        let py = TruncatedPBWSeries::generator(&plain, 4, 1);
        assert!(matches!(
            multiplicativity_check(&px, &py, &param(3, 3, 4)),
            Err(DistError::PreconditionUnmet(_))
        ));
        // inexact product
        let deep = pbw_multiply(&x, &y).unwrap();
        let deeper = pbw_multiply(&deep, &deep).unwrap(); // degree 4 >= 4
        assert!(!deeper.is_exact());
        assert!(matches!(
            multiplicativity_check(&deeper, &x, &param(3, 3, 4)),
            Err(DistError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn ultrametric_addition() {
        let a = catalog("abelian(2)").unwrap().algebra;
        let r = param(5, 1, 2);
        let s = TruncatedPBWSeries::from_terms(&a, 4, vec![(vec![1, 0], qi(1))]);
        let t = TruncatedPBWSeries::from_terms(&a, 4, vec![(vec![0, 1], qi(5))]);
        let sum = pbw_add(&s, &t).unwrap();
        // maxima differ: equality
        assert_eq!(nu_norm(&sum, &r), nu_norm(&s, &r).max(nu_norm(&t, &r)));
        // cancellation only drops the norm
        let neg = pbw_scale(&qi(-1), &s);
        let cancel = pbw_add(&s, &neg).unwrap();
        assert_eq!(nu_norm(&cancel, &r), LogNorm::NegInfinity);
    }

    #[test]
    fn principal_symbols() {
        let a = catalog("abelian(2)").unwrap().algebra;
        let r = param(3, 3, 4);
        let s =
            TruncatedPBWSeries::from_terms(&a, 4, vec![(vec![0, 0], qi(1)), (vec![1, 0], qi(3))]);
        assert_eq!(principal_symbol(&s, &r), vec![(vec![0, 0], qi(1))]);
        let t =
            TruncatedPBWSeries::from_terms(&a, 4, vec![(vec![1, 0], qi(1)), (vec![0, 1], qi(1))]);
        assert_eq!(principal_symbol(&t, &r).len(), 2);
        assert!(principal_symbol(&TruncatedPBWSeries::zero(&a, 4), &r).is_empty());
    }

    #[test]
    fn graded_ring_is_polynomial_for_scaled_constants() {
        let r = param(3, 3, 4);
        let abelian = catalog("abelian(2)").unwrap().algebra;
        let rep = graded_polynomial_check(&abelian, &r, 3).unwrap();
        assert!(rep.pass);
        let h = catalog("heisenberg_scaled(3)").unwrap().algebra;
        let rep = graded_polynomial_check(&h, &r, 4).unwrap();
        assert!(rep.pass, "{:?}", rep.defects);
        // defect sits strictly below the degree-two line
        assert_eq!(rep.defects.len(), 3);
        assert_eq!(rep.defects[0], (0, 1, LogNorm::Finite(q(-7, 4))));
        let plain = catalog("heisenberg(3)").unwrap().algebra;
        assert!(matches!(
            graded_polynomial_check(&plain, &r, 4),
            Err(DistError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn log_series_norm_and_stability() {
        let rep = log_one_plus_b(&param(3, 3, 4), 10);
        assert_eq!(rep.norm, LogNorm::Finite(q(-3, 4)));
        assert!(rep.stable);
        // at a = 1/2 the tie partner t = 3 is missing from a short series
        let rep = log_one_plus_b(&param(3, 1, 2), 2);
        assert_eq!(rep.norm, LogNorm::Finite(q(-1, 2)));
        assert!(!rep.stable);
        let rep = log_one_plus_b(&param(3, 1, 2), 10);
        assert_eq!(rep.norm, LogNorm::Finite(q(-1, 2)));
        assert!(rep.stable);
        // doubling the degree once stable never changes the norm
        for p in [2u64, 3, 5, 7] {
            for (n, d) in [(1i64, 2i64), (3, 4), (7, 8)] {
                let r = param(p, n, d);
                let rep = log_one_plus_b(&r, 12);
                if rep.stable {
                    assert_eq!(log_one_plus_b(&r, 24).norm, rep.norm);
                }
            }
        }
    }

    #[test]
    fn dirac_distributions() {
        let one = mahler_dirac(&[0], 4);
        assert_eq!(one.coeff(&[0]), qi(1));
        assert_eq!(one.terms().count(), 1);
        assert!(one.is_exact());

        let d2 = mahler_dirac(&[2], 4);
        assert_eq!(d2.coeff(&[0]), qi(1));
        assert_eq!(d2.coeff(&[1]), qi(2));
        assert_eq!(d2.coeff(&[2]), qi(1));
        assert_eq!(d2.terms().count(), 3);
        assert!(d2.is_exact());
        assert_eq!(mahler_norm(&d2, &param(3, 1, 2)), LogNorm::Finite(qi(0)));

        // group law at small exponents
        let d1 = mahler_dirac(&[1], 4);
        assert_eq!(mahler_multiply(&d1, &d1).unwrap(), d2);
        let d3 = mahler_dirac(&[3], 8);
        let lhs = mahler_multiply(&mahler_dirac(&[1], 8), &mahler_dirac(&[2], 8)).unwrap();
        assert_eq!(lhs, d3);

        // negative points have infinite tails
        let dm1 = mahler_dirac(&[-1], 4);
        assert!(!dm1.is_exact());
        assert_eq!(dm1.coeff(&[3]), qi(-1));

        // norm stays 0 for nonnegative integer points: binomials are
        // integral and the constant term is 1
        for x in 0..6i64 {
            for p in [2u64, 3, 5] {
                let s = mahler_dirac(&[x], 8);
                assert_eq!(mahler_norm(&s, &param(p, 1, 2)), LogNorm::Finite(qi(0)));
            }
        }

        // two variables
        let d = mahler_dirac(&[1, 2], 4);
        assert_eq!(d.coeff(&[1, 2]), qi(1));
        assert_eq!(d.coeff(&[0, 1]), qi(2));
        assert!(d.is_exact());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), qi(6));
        assert_eq!(binom(2, 3), qi(0));
        assert_eq!(binom(-1, 3), qi(-1));
        assert_eq!(binom(0, 0), qi(1));
        assert_eq!(binom(-2, 2), qi(3));
    }
}
