use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{ComplexValue, GaussianRational, HalfInteger, Precision, Scalar};

/// Discrete shifts N_k and continuous parameters a_k of a 6- or 8-term
/// identity. All N_k lie on one lattice ℤ+ν.
#[derive(Clone, Debug, Serialize)]
pub struct ParameterSet<S> {
    n: Vec<HalfInteger>,
    a: Vec<S>,
    nu: HalfInteger,
}

impl<S: Scalar> ParameterSet<S> {
    /// Size 6 needs ΣN = 2, size 8 needs ΣN = 4; both need Σa = 0.
    pub fn new(n: Vec<HalfInteger>, a: Vec<S>) -> Result<Self> {
        let size = n.len();
        if size != a.len() {
            return Err(Error::InvalidParameters(format!(
                "{} shifts but {} continuous parameters",
                n.len(),
                a.len()
            )));
        }
        let target = match size {
            6 => 2,
            8 => 4,
            _ => {
                return Err(Error::InvalidParameters(format!(
                    "parameter sets have 6 or 8 entries, got {size}"
                )))
            }
        };
        let nu = n[0].offset();
        if let Some(bad) = n.iter().find(|x| !x.same_lattice(nu)) {
            return Err(Error::InvalidParameters(format!(
                "N_k must share one fractional part: {} vs {bad}",
                n[0]
            )));
        }
        let sum: HalfInteger = n.iter().copied().sum();
        if sum != HalfInteger::from_int(target) {
            return Err(Error::InvalidParameters(format!(
                "ΣN_k must be {target} for {size} parameters, got {sum}"
            )));
        }
        let total = a.iter().skip(1).fold(a[0].clone(), |acc, x| acc + x);
        if !total.is_negligible() {
            return Err(Error::InvalidParameters(format!("Σa_k must vanish, got {total:?}")));
        }
        Ok(ParameterSet { n, a, nu })
    }

    pub fn size(&self) -> usize {
        self.n.len()
    }

    pub fn n(&self) -> &[HalfInteger] {
        &self.n
    }

    pub fn a(&self) -> &[S] {
        &self.a
    }

    pub fn nu(&self) -> HalfInteger {
        self.nu
    }

    pub fn max_abs_n(&self) -> HalfInteger {
        self.n.iter().map(|x| x.abs()).max().expect("nonempty")
    }

    /// Reorders (N_k, a_k) jointly: entry k of the result is entry perm[k].
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.size()];
        if perm.len() != self.size() || perm.iter().any(|&i| i >= self.size() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidParameters("not a permutation".into()));
        }
        Ok(ParameterSet {
            n: perm.iter().map(|&i| self.n[i]).collect(),
            a: perm.iter().map(|&i| self.a[i].clone()).collect(),
            nu: self.nu,
        })
    }
}

impl ParameterSet<GaussianRational> {
    /// The same set in floating arithmetic.
    pub fn to_float(&self, prec: Precision) -> ParameterSet<ComplexValue> {
        ParameterSet {
            n: self.n.clone(),
            a: self.a.iter().map(|x| ComplexValue::from_gaussian(prec, x)).collect(),
            nu: self.nu,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GaussianRational as Q;

    fn h(v: &[i64]) -> Vec<HalfInteger> {
        v.iter().map(|&t| HalfInteger::from_twice(t)).collect()
    }

    fn balanced(k: usize) -> Vec<Q> {
        let mut a: Vec<Q> = (1..k as i64).map(|j| Q::from_parts(j, 2 - j, 7)).collect();
        let s: Q = a.iter().cloned().sum();
        a.push(-s);
        a
    }

    #[test]
    fn constraints() {
        assert!(ParameterSet::new(h(&[0, 0, 0, 0, 2, 2]), balanced(6)).is_ok());
        assert!(ParameterSet::new(h(&[0, 0, 0, 0, 2, 4]), balanced(6)).is_err());
        assert!(ParameterSet::new(h(&[1, 1, 1, 1, 1, -1]), balanced(6)).is_ok());
        assert!(ParameterSet::new(h(&[1, 1, 1, 1, 0, 0]), balanced(6)).is_err());
        let mut a = balanced(6);
        a[0] = &a[0] + &Q::one();
        assert!(ParameterSet::new(h(&[0, 0, 0, 0, 2, 2]), a).is_err());
        assert!(ParameterSet::new(h(&[2, 2, 0, 0, 0, 0, 2, 2]), balanced(8)).is_ok());
        assert!(ParameterSet::new(h(&[2, 2, 0, 0, 0]), balanced(5)).is_err());
    }

    #[test]
    fn permutation() {
        let p = ParameterSet::new(h(&[0, 0, 0, 0, 2, 2]), balanced(6)).unwrap();
        let q = p.permuted(&[5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(q.n()[0], HalfInteger::from_int(1));
        assert_eq!(q.a()[5], p.a()[0]);
        assert!(p.permuted(&[0, 0, 1, 2, 3, 4]).is_err());
    }
}
