//! Both sides of the two rational identities.
//!
//! Theorem 1 (six parameters, ΣN_k = 2, Σa_k = 0):
//!   (1/8πi) Σ_{N∈ℤ+ν} ∫_{C_N} (y²−N²) ∏_k (1 + (a_k−N_k±(y−N))/2)_{N_k−1±N} dy
//!     = ∏_{j<k} (1 + (a_j+a_k−N_j−N_k)/2)_{N_j+N_k−1}.
//!
//! Theorem 2 (eight parameters, ΣN_k = 4, Σa_k = 0) relates the same sum to
//! the sum over the transformed parameters (M, s) of [`e7_transform`].
//!
//! Bilateral sums are kept in units of 2πi, so Theorem 1's left side is the
//! sum divided by 4.

use std::collections::BTreeMap;

use serde::Serialize;

use super::term::{build_term, classify_contribution, integrate_term, Contribution};
use super::ParameterSet;
use crate::error::{Error, Result};
use crate::numeric::{pochhammer, HalfInteger, Mode, Scalar};
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Status {
    ExactPass,
    Pass { tol: f64 },
    Fail,
}

impl Status {
    pub fn is_pass(&self) -> bool {
        !matches!(self, Status::Fail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermRecord<S> {
    pub n: HalfInteger,
    pub contribution: Contribution,
    /// ∫_{C_N} / 2πi.
    pub value: S,
}

#[derive(Clone, Debug, Serialize)]
pub struct BilateralSum<S> {
    /// Σ_N ∫_{C_N} / 2πi.
    pub total: S,
    pub terms: Vec<TermRecord<S>>,
    /// Largest |N| examined.
    pub window: HalfInteger,
    /// Every examined term with |N| ≥ max|N_k| + 2 vanished.
    pub closed_beyond_max_plus_two: bool,
}

impl<S: Clone> BilateralSum<S> {
    pub fn contributing(&self) -> Vec<(HalfInteger, S)> {
        self.terms
            .iter()
            .filter(|t| t.contribution == Contribution::Contributing)
            .map(|t| (t.n, t.value.clone()))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport<S> {
    pub lhs: S,
    pub rhs: S,
    pub contributing_terms: Vec<(HalfInteger, S)>,
    /// Contributing terms of the transformed sum (Theorem 2 only).
    pub rhs_terms: Vec<(HalfInteger, S)>,
    pub max_window: HalfInteger,
    pub window_closed: bool,
    pub status: Status,
    pub mode: Mode,
    pub relative_error: f64,
    pub quadrature_error: Option<f64>,
}

/// Exact mode passes only on identity; float mode within `tol`.
pub fn judge<S: Scalar>(lhs: &S, rhs: &S, tol: f64) -> (Status, f64) {
    let err = lhs.relative_error(rhs);
    let status = match S::MODE {
        Mode::Exact if lhs.agrees_with(rhs, 0) => Status::ExactPass,
        Mode::Float if err <= tol => Status::Pass { tol },
        _ => Status::Fail,
    };
    (status, err)
}

/// Extra shells tried beyond the initial window max|N_k| + 3.
pub const WINDOW_RETRY_LIMIT: i64 = 10;

fn term_record<S: Scalar>(p: &ParameterSet<S>, n: HalfInteger) -> Result<TermRecord<S>> {
    let t = build_term(p, n)?;
    let contribution = classify_contribution(&t);
    let value = integrate_term(&t)?;
    Ok(TermRecord {
        n,
        contribution,
        value,
    })
}

/// Σ_N ∫_{C_N}/2πi over a window that grows until its two outer shells vanish.
pub fn bilateral_sum<S: Scalar>(p: &ParameterSet<S>, exec: Execution) -> Result<BilateralSum<S>> {
    let max_n = p.max_abs_n();
    let limit = max_n + WINDOW_RETRY_LIMIT;
    let mut window = max_n + 3;
    let mut memo: BTreeMap<HalfInteger, TermRecord<S>> = BTreeMap::new();
    loop {
        let points = HalfInteger::lattice_window(p.nu(), window);
        let missing: Vec<HalfInteger> = points.iter().copied().filter(|n| !memo.contains_key(n)).collect();
        for rec in exec.try_map(&missing, |&n| term_record(p, n))? {
            memo.insert(rec.n, rec);
        }
        let mut shells: Vec<HalfInteger> = points.iter().map(|n| n.abs()).collect();
        shells.sort();
        shells.dedup();
        let outer: Vec<HalfInteger> = shells.iter().rev().take(2).copied().collect();
        let closed = points
            .iter()
            .filter(|n| outer.contains(&n.abs()))
            .all(|n| memo[n].contribution == Contribution::Vanishing);
        if closed {
            break;
        }
        if window >= limit {
            return Err(Error::WindowNotClosed(format!(
                "terms up to |N| = {window} still contribute (max|N_k| = {max_n})"
            )));
        }
        window = window + 1;
    }
    let points = HalfInteger::lattice_window(p.nu(), window);
    let terms: Vec<TermRecord<S>> = points.iter().map(|n| memo[n].clone()).collect();
    let zero = p.a()[0].zero_like();
    let total = terms.iter().fold(zero, |acc, t| acc + &t.value);
    let closed_beyond_max_plus_two = terms
        .iter()
        .filter(|t| t.n.abs() >= max_n + 2)
        .all(|t| t.contribution == Contribution::Vanishing);
    Ok(BilateralSum {
        total,
        terms,
        window,
        closed_beyond_max_plus_two,
    })
}

/// ∏ over the given index pairs of (1 + (a_j+a_k−N_j−N_k)/2)_{N_j+N_k−1}.
fn pair_product<S: Scalar>(n: &[HalfInteger], a: &[S], pairs: &[(usize, usize)]) -> Result<S> {
    let mut acc = a[0].one_like();
    for &(j, k) in pairs {
        let shift = (n[j] + n[k] - 1).expect_integer("N_j + N_k − 1")?;
        let arg = a[j].clone() + &a[k] - &a[j].from_half_integer_like(n[j] + n[k]);
        let arg = arg * &a[j].from_ratio_like(1, 2) + &a[j].one_like();
        acc = acc * pochhammer(&arg, shift)?;
    }
    Ok(acc)
}

fn pairs_within(range: std::ops::Range<usize>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in range.clone() {
        for k in j + 1..range.end {
            out.push((j, k));
        }
    }
    out
}

fn require_size<S: Scalar>(p: &ParameterSet<S>, size: usize, what: &str) -> Result<()> {
    if p.size() != size {
        return Err(Error::InvalidParameters(format!(
            "{what} needs {size} parameters, got {}",
            p.size()
        )));
    }
    Ok(())
}

pub fn theorem1_lhs<S: Scalar>(p: &ParameterSet<S>) -> Result<S> {
    require_size(p, 6, "Theorem 1")?;
    let sum = bilateral_sum(p, Execution::default())?;
    Ok(sum.total * &p.a()[0].from_ratio_like(1, 4))
}

pub fn theorem1_rhs<S: Scalar>(p: &ParameterSet<S>) -> Result<S> {
    require_size(p, 6, "Theorem 1")?;
    pair_product(p.n(), p.a(), &pairs_within(0..6))
}

pub fn verify_theorem1<S: Scalar>(p: &ParameterSet<S>, tol: f64) -> Result<VerificationReport<S>> {
    verify_theorem1_with(p, tol, Execution::default())
}

pub fn verify_theorem1_with<S: Scalar>(p: &ParameterSet<S>, tol: f64, exec: Execution) -> Result<VerificationReport<S>> {
    require_size(p, 6, "Theorem 1")?;
    let sum = bilateral_sum(p, exec)?;
    let lhs = sum.total.clone() * &p.a()[0].from_ratio_like(1, 4);
    let rhs = theorem1_rhs(p)?;
    let (status, relative_error) = judge(&lhs, &rhs, tol);
    Ok(VerificationReport {
        contributing_terms: sum.contributing(),
        rhs_terms: Vec::new(),
        max_window: sum.window,
        window_closed: sum.closed_beyond_max_plus_two,
        status,
        mode: S::MODE,
        relative_error,
        quadrature_error: None,
        lhs,
        rhs,
    })
}

/// Parameters (M, s) of the right-hand sum of Theorem 2.
#[derive(Clone, Debug, Serialize)]
pub struct TransformedSet<S> {
    pub m: Vec<HalfInteger>,
    pub s: Vec<S>,
    pub mu: HalfInteger,
    /// Σ_{j≤4} N_j.
    pub l: i64,
    /// Σ_{j≤4} a_j.
    pub x: S,
}

impl<S: Scalar> TransformedSet<S> {
    pub fn to_parameters(&self) -> Result<ParameterSet<S>> {
        ParameterSet::new(self.m.clone(), self.s.clone())
    }
}

/// M_j = N_j + 1 − L/2, M_{j+4} = N_{j+4} − 1 + L/2,
/// s_j = a_j − X/2, s_{j+4} = a_{j+4} + X/2 (j = 1..4).
pub fn e7_transform<S: Scalar>(p: &ParameterSet<S>) -> Result<TransformedSet<S>> {
    require_size(p, 8, "the E7 transformation")?;
    let l_half: HalfInteger = p.n()[..4].iter().copied().sum();
    let l = l_half.expect_integer("Σ_{j≤4} N_j")?;
    let half_l = HalfInteger::from_twice(l);
    let x = p.a()[..4].iter().skip(1).fold(p.a()[0].clone(), |acc, v| acc + v);
    let half_x = x.clone() * &x.from_ratio_like(1, 2);
    let mut m = Vec::with_capacity(8);
    let mut s = Vec::with_capacity(8);
    for j in 0..4 {
        m.push(p.n()[j] + 1 - half_l);
        s.push(p.a()[j].clone() - &half_x);
    }
    for j in 4..8 {
        m.push(p.n()[j] - 1 + half_l);
        s.push(p.a()[j].clone() + &half_x);
    }
    let mu = m[0].offset();
    Ok(TransformedSet { m, s, mu, l, x })
}

/// Σ_N ∫ vs (−1)^L ∏_{j<k≤4} ∏_{5≤j<k} (…) Σ_M ∫, both in units of 2πi.
pub fn verify_theorem2<S: Scalar>(p: &ParameterSet<S>, tol: f64) -> Result<VerificationReport<S>> {
    verify_theorem2_with(p, tol, Execution::default())
}

pub fn verify_theorem2_with<S: Scalar>(p: &ParameterSet<S>, tol: f64, exec: Execution) -> Result<VerificationReport<S>> {
    require_size(p, 8, "Theorem 2")?;
    let left = bilateral_sum(p, exec)?;
    let t = e7_transform(p)?;
    let q = t.to_parameters()?;
    let right = bilateral_sum(&q, exec)?;
    let mut pairs = pairs_within(0..4);
    pairs.extend(pairs_within(4..8));
    let mut prefactor = pair_product(p.n(), p.a(), &pairs)?;
    if t.l.rem_euclid(2) == 1 {
        prefactor = -prefactor;
    }
    let lhs = left.total.clone();
    let rhs = prefactor * &right.total;
    let (status, relative_error) = judge(&lhs, &rhs, tol);
    Ok(VerificationReport {
        contributing_terms: left.contributing(),
        rhs_terms: right.contributing(),
        max_window: left.window.max(right.window),
        window_closed: left.closed_beyond_max_plus_two && right.closed_beyond_max_plus_two,
        status,
        mode: S::MODE,
        relative_error,
        quadrature_error: None,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussianRational as Q;

    fn h(v: &[i64]) -> Vec<HalfInteger> {
        v.iter().map(|&t| HalfInteger::from_twice(t)).collect()
    }

    fn balanced(parts: &[(i64, i64, i64)]) -> Vec<Q> {
        let mut a: Vec<Q> = parts.iter().map(|&(r, i, d)| Q::from_parts(r, i, d)).collect();
        let s: Q = a.iter().cloned().sum();
        a.push(-s);
        a
    }

    #[test]
    fn theorem1_fixed_points() {
        let a = balanced(&[(1, -2, 7), (-3, 1, 5), (2, 3, 11), (5, -1, 13), (-1, -4, 9)]);
        for n in [[0, 0, 0, 0, 2, 2], [4, -2, 0, 2, 0, 0], [1, 1, 1, 1, 1, -1], [3, -3, 1, 1, 1, 1], [-6, 4, 2, 2, 0, 2]] {
            let p = ParameterSet::new(h(&n), a.clone()).unwrap();
            let r = verify_theorem1(&p, 0.0).unwrap();
            assert_eq!(r.status, Status::ExactPass, "N = {n:?}: {:?} vs {:?}", r.lhs, r.rhs);
            assert!(r.window_closed);
        }
    }

    #[test]
    fn third_example_two_equal_terms() {
        let a = balanced(&[(1, -2, 7), (-3, 1, 5), (2, 3, 11), (5, -1, 13), (-1, -4, 9)]);
        let p = ParameterSet::new(h(&[1, 1, 1, 1, 1, -1]), a).unwrap();
        let s = bilateral_sum(&p, Execution::Sequential).unwrap();
        let c = s.contributing();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].0, HalfInteger::from_twice(-1));
        assert_eq!(c[1].0, HalfInteger::from_twice(1));
        assert_eq!(c[0].1, c[1].1);
    }

    #[test]
    fn e7_is_an_involution() {
        let a = balanced(&[(1, -2, 7), (-3, 1, 5), (2, 3, 11), (5, -1, 13), (-1, -4, 9), (2, 2, 3), (0, 1, 4)]);
        for n in [[2, 2, 0, 0, 0, 0, 2, 2], [2, 0, 0, 0, 2, 2, 2, 0], [1, 1, 1, 1, 1, 1, 1, 1]] {
            let p = ParameterSet::new(h(&n), a.clone()).unwrap();
            let t = e7_transform(&p).unwrap();
            assert_eq!(t.mu == p.nu(), t.l % 2 == 0);
            let back = e7_transform(&t.to_parameters().unwrap()).unwrap();
            assert_eq!(back.m, p.n());
            assert_eq!(back.s, p.a());
            assert_eq!(back.l, 4 - t.l);
        }
    }

    #[test]
    fn theorem2_fixed_points() {
        let a = balanced(&[(1, -2, 7), (-3, 1, 5), (2, 3, 11), (5, -1, 13), (-1, -4, 9), (2, 2, 3), (0, 1, 4)]);
        for n in [[2, 2, 0, 0, 0, 0, 2, 2], [2, 0, 0, 0, 2, 2, 2, 0], [1, 1, 1, 1, 1, 1, 1, 1], [4, -2, 2, 0, 0, 2, 2, 0]] {
            let p = ParameterSet::new(h(&n), a.clone()).unwrap();
            let r = verify_theorem2(&p, 0.0).unwrap();
            assert_eq!(r.status, Status::ExactPass, "N = {n:?}: {:?} vs {:?}", r.lhs, r.rhs);
        }
    }
}
