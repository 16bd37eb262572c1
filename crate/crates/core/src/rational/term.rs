//! One summand of the bilateral sum as a factored rational function of y,
//! and its contour integral by residues.
//!
//! The contour C_N is never built. Poles coming from the "+(y−N)" Pochhammer
//! symbols lie on one side of it and poles from the "−(y−N)" symbols on the
//! other, so ∫_{C_N} = 2πi·Σ Res(Plus) = −2πi·Σ Res(Minus). Values here are
//! reported in units of 2πi.

use serde::Serialize;

use super::ParameterSet;
use crate::error::{Error, Result};
use crate::numeric::{HalfInteger, Mode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Contribution {
    Vanishing,
    Contributing,
}

/// scalar · ∏(y − ρ)^mult / ∏(y − σ), with simple poles σ tagged by family.
#[derive(Clone, Debug)]
pub struct FactoredRational<S> {
    pub scalar: S,
    pub numerator_roots: Vec<(S, u32)>,
    pub denominator_roots: Vec<(S, Family)>,
}

impl<S: Scalar> FactoredRational<S> {
    pub fn numerator_degree(&self) -> u32 {
        self.numerator_roots.iter().map(|(_, m)| m).sum()
    }

    pub fn denominator_degree(&self) -> u32 {
        self.denominator_roots.len() as u32
    }

    pub fn poles(&self, family: Family) -> impl Iterator<Item = &S> {
        self.denominator_roots
            .iter()
            .filter(move |(_, f)| *f == family)
            .map(|(r, _)| r)
    }

    /// Value at `y`; `None` at a pole.
    pub fn evaluate(&self, y: &S) -> Option<S> {
        let mut acc = self.scalar.clone();
        for (r, m) in &self.numerator_roots {
            for _ in 0..*m {
                acc = acc * (y.clone() - r);
            }
        }
        let mut den = y.one_like();
        for (r, _) in &self.denominator_roots {
            den = den * (y.clone() - r);
        }
        acc.try_div(&den)
    }

    fn residue(&self, pole: usize) -> Result<S> {
        let rho = &self.denominator_roots[pole].0;
        let mut num = self.scalar.clone();
        for (r, m) in &self.numerator_roots {
            for _ in 0..*m {
                num = num * (rho.clone() - r);
            }
        }
        let mut den = rho.one_like();
        for (i, (r, _)) in self.denominator_roots.iter().enumerate() {
            if i != pole {
                den = den * (rho.clone() - r);
            }
        }
        num.try_div(&den).ok_or_else(|| {
            Error::DegenerateParameters(format!("double pole at y = {rho:?}"))
        })
    }

    /// Residue sums over the Plus and Minus poles.
    pub fn family_sums(&self) -> Result<(S, S)> {
        Ok((self.residue_sum(Family::Plus)?.0, self.residue_sum(Family::Minus)?.0))
    }

    fn residue_sum(&self, family: Family) -> Result<(S, f64)> {
        let mut sum = self.scalar.zero_like();
        let mut scale = 0.0f64;
        for (i, (_, f)) in self.denominator_roots.iter().enumerate() {
            if *f == family {
                let r = self.residue(i)?;
                scale += r.magnitude();
                sum = sum + &r;
            }
        }
        Ok((sum, scale))
    }
}

fn equal<S: Scalar>(x: &S, y: &S) -> bool {
    (x.clone() - y).is_negligible()
}

/// The N-th summand of the bilateral sum,
/// (y² − N²) ∏_k (1 + (a_k − N_k ± (y−N))/2)_{N_k − 1 ± N}, in factored form.
pub fn build_term<S: Scalar>(p: &ParameterSet<S>, n: HalfInteger) -> Result<FactoredRational<S>> {
    if !n.same_lattice(p.nu()) {
        return Err(Error::InvalidParameters(format!(
            "N = {n} is not on the lattice ℤ+{}",
            p.nu()
        )));
    }
    let like = &p.a()[0];
    let hi = |h: HalfInteger| like.from_half_integer_like(h);
    let int = |k: i64| like.from_ratio_like(k, 1);
    let mut scalar = like.one_like();
    let mut num: Vec<S> = vec![hi(n), -hi(n)];
    let mut plus: Vec<S> = Vec::new();
    let mut minus: Vec<S> = Vec::new();

    for (nk, ak) in p.n().iter().zip(p.a()) {
        // + branch: argument (y − ρ₀)/2, ρ₀ = N_k + N − 2 − a_k.
        let m_plus = (*nk + n - 1).expect_integer("N_k − 1 + N")?;
        let rho0 = hi(*nk + n - 2) - ak;
        if m_plus >= 0 {
            for j in 0..m_plus {
                num.push(rho0.clone() - &int(2 * j));
            }
            scalar = scalar * like.from_ratio_like(1, 1 << m_plus.min(62));
        } else {
            for j in 1..=-m_plus {
                plus.push(rho0.clone() + &int(2 * j));
            }
            scalar = scalar * int(1 << (-m_plus).min(62));
        }
        // − branch: argument −(y − σ₀)/2, σ₀ = 2 + a_k − N_k + N.
        let m_minus = (*nk - n - 1).expect_integer("N_k − 1 − N")?;
        let sigma0 = ak.clone() + &hi(n - *nk + 2);
        if m_minus >= 0 {
            for j in 0..m_minus {
                num.push(sigma0.clone() + &int(2 * j));
            }
            let sign = if m_minus % 2 == 0 { 1 } else { -1 };
            scalar = scalar * like.from_ratio_like(sign, 1 << m_minus.min(62));
        } else {
            for j in 1..=-m_minus {
                minus.push(sigma0.clone() - &int(2 * j));
            }
            let sign = if m_minus % 2 == 0 { 1 } else { -1 };
            scalar = scalar * int(sign * (1 << (-m_minus).min(62)));
        }
    }

    for x in &plus {
        if let Some(y) = minus.iter().find(|y| equal(x, y)) {
            return Err(Error::DegenerateParameters(format!(
                "N = {n}: Plus pole {x:?} coincides with Minus pole {y:?} (the contour is pinched)"
            )));
        }
    }
    for family in [&plus, &minus] {
        for (i, x) in family.iter().enumerate() {
            if family[i + 1..].iter().any(|y| equal(x, y)) {
                return Err(Error::DegenerateParameters(format!(
                    "N = {n}: repeated pole at {x:?}"
                )));
            }
        }
    }

    let mut denominator: Vec<(S, Family)> = Vec::new();
    for (x, f) in plus
        .into_iter()
        .map(|x| (x, Family::Plus))
        .chain(minus.into_iter().map(|x| (x, Family::Minus)))
    {
        if let Some(pos) = num.iter().position(|r| equal(r, &x)) {
            num.swap_remove(pos);
        } else {
            denominator.push((x, f));
        }
    }
    let mut numerator_roots: Vec<(S, u32)> = Vec::new();
    for r in num {
        match numerator_roots.iter_mut().find(|(s, _)| equal(s, &r)) {
            Some((_, m)) => *m += 1,
            None => numerator_roots.push((r, 1)),
        }
    }
    let term = FactoredRational {
        scalar,
        numerator_roots,
        denominator_roots: denominator,
    };
    if term.denominator_degree() < term.numerator_degree() + 2 {
        return Err(Error::InvalidTerm(format!(
            "N = {n}: degree gap {} < 2, the integral diverges",
            term.denominator_degree() as i64 - term.numerator_degree() as i64
        )));
    }
    Ok(term)
}

/// Vanishing when every pole sits on one side of the contour.
pub fn classify_contribution<S: Scalar>(t: &FactoredRational<S>) -> Contribution {
    if t.poles(Family::Plus).next().is_none() || t.poles(Family::Minus).next().is_none() {
        Contribution::Vanishing
    } else {
        Contribution::Contributing
    }
}

/// Digits of headroom allowed between the two residue sums in float mode.
pub const FLOAT_RESIDUE_SLACK: u32 = 18;

/// ∫_{C_N} t(y) dy / (2πi), from the Plus residues and checked against the
/// Minus residues.
pub fn integrate_term<S: Scalar>(t: &FactoredRational<S>) -> Result<S> {
    if t.denominator_degree() < t.numerator_degree() + 2 {
        return Err(Error::InvalidTerm("degree gap below 2".into()));
    }
    let (plus, plus_scale) = t.residue_sum(Family::Plus)?;
    let (minus, minus_scale) = t.residue_sum(Family::Minus)?;
    let total = plus.clone() + &minus;
    let consistent = if S::MODE == Mode::Exact {
        total.is_negligible()
    } else {
        let scale = plus_scale.max(minus_scale).max(f64::MIN_POSITIVE);
        total.magnitude() <= scale * 10f64.powf(FLOAT_RESIDUE_SLACK as f64 - plus.working_digits())
    };
    if !consistent {
        return Err(Error::ResidueMismatch {
            plus: format!("{plus:?}"),
            minus: format!("{:?}", -minus),
        });
    }
    Ok(plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussianRational as Q;

    fn h(v: &[i64]) -> Vec<HalfInteger> {
        v.iter().map(|&t| HalfInteger::from_twice(t)).collect()
    }

    #[test]
    fn hand_residue() {
        // 1/((y − i)(y + i)), −i on the Plus side.
        let t = FactoredRational {
            scalar: Q::one(),
            numerator_roots: vec![],
            denominator_roots: vec![(-Q::i(), Family::Plus), (Q::i(), Family::Minus)],
        };
        // 2πi · 1/(−2i) = −π, i.e. −1/(2i) = i/2 in units of 2πi.
        assert_eq!(integrate_term(&t).unwrap(), Q::from_parts(0, 1, 2));
    }

    #[test]
    fn first_example_structure() {
        let a: Vec<Q> = vec![
            Q::from_parts(1, -1, 3),
            Q::from_parts(-2, -1, 5),
            Q::from_parts(1, -3, 4),
            Q::from_parts(0, -2, 7),
            Q::from_parts(3, 5, 2),
        ];
        let s: Q = a.iter().cloned().sum();
        let mut a = a;
        a.push(-s);
        let p = ParameterSet::new(h(&[0, 0, 0, 0, 2, 2]), a.clone()).unwrap();
        let t = build_term(&p, HalfInteger::ZERO).unwrap();
        assert_eq!(t.scalar, Q::from_integer(256));
        let plus: Vec<Q> = t.poles(Family::Plus).cloned().collect();
        let minus: Vec<Q> = t.poles(Family::Minus).cloned().collect();
        assert_eq!(plus, a[..4].iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(minus, a[..4].to_vec());
        assert_eq!(t.numerator_roots, vec![(Q::zero(), 2)]);
        for n in [-1, 1] {
            let t = build_term(&p, HalfInteger::from_int(n)).unwrap();
            assert_eq!(classify_contribution(&t), Contribution::Vanishing);
        }
    }

    #[test]
    fn empty_pochhammer_adds_nothing() {
        let mut a: Vec<Q> = (1..6).map(|j| Q::from_parts(j, -j, 9)).collect();
        let s: Q = a.iter().cloned().sum();
        a.push(-s);
        // N_6 = 1 and N = 0 give m± = 0 for k = 6: a_6 must not appear.
        let p = ParameterSet::new(h(&[0, 0, 0, 2, 0, 2]), a.clone()).unwrap();
        let t = build_term(&p, HalfInteger::ZERO).unwrap();
        let a6 = &a[5];
        assert!(t.denominator_roots.iter().all(|(r, _)| r != a6 && r != &-a6));
        assert!(t.numerator_roots.iter().all(|(r, _)| r != a6 && r != &-a6));
    }

    #[test]
    fn pinching_detected() {
        // a_1 + a_2 = 0 makes the Plus pole −a_1 meet the Minus pole a_2 at N=0.
        let a = vec![
            Q::from_parts(-1, 1, 1),
            Q::from_parts(1, -1, 1),
            Q::from_parts(1, 1, 3),
            Q::from_parts(2, -1, 3),
            Q::from_parts(1, 0, 1),
            Q::zero(),
        ];
        let s: Q = a.iter().cloned().sum();
        let mut a = a;
        a[5] = -s;
        let p = ParameterSet::new(h(&[0, 0, 0, 0, 2, 2]), a).unwrap();
        let r = build_term(&p, HalfInteger::ZERO);
        assert!(matches!(r, Err(Error::DegenerateParameters(_))), "{r:?}");
    }
}
