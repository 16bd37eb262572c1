//! Gauss–Legendre rules at arbitrary precision and an adaptive bisection
//! driver for complex-valued integrands of one real parameter.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::ComplexValue;
use crate::par::Execution;

/// Nodes and weights on [−1, 1].
#[derive(Debug)]
pub struct GaussLegendre {
    nodes: Vec<Float>,
    weights: Vec<Float>,
}

impl GaussLegendre {
    /// Cached `n`-point rule at `bits` of precision.
    pub fn get(n: usize, bits: u32) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&(n, bits)) {
            return rule.clone();
        }
        let rule = Arc::new(GaussLegendre::compute(n, bits));
        cache
            .lock()
            .expect("rule cache poisoned")
            .entry((n, bits))
            .or_insert(rule)
            .clone()
    }

    fn compute(n: usize, bits: u32) -> GaussLegendre {
        assert!(n >= 2, "Gauss-Legendre needs at least two nodes");
        let work = bits + 32;
        let stop = Float::with_val(work, Float::i_exp(1, -(bits as i32) - 4));
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 1..=n {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut x = Float::with_val(work, guess);
            let mut deriv = Float::new(work);
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, &x);
                let dx = Float::with_val(work, &p / &dp);
                x -= &dx;
                deriv = dp;
                if dx.abs() < stop {
                    let (_, dp) = legendre_with_derivative(n, &x);
                    deriv = dp;
                    break;
                }
            }
            let one_minus = Float::with_val(work, 1) - Float::with_val(work, &x * &x);
            let w = Float::with_val(work, 2) / (one_minus * Float::with_val(work, &deriv * &deriv));
            nodes.push(Float::with_val(bits, &x));
            weights.push(Float::with_val(bits, &w));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Float] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Float] {
        &self.weights
    }
}

fn legendre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        // k P_k = (2k−1) x P_{k−1} − (k−1) P_{k−2}
        let a = Float::with_val(prec, x * &p1) * (2 * k - 1) as u32;
        let b = Float::with_val(prec, &p0 * (k - 1) as u32);
        let p2 = (a - b) / k as u32;
        p0 = p1;
        p1 = p2;
    }
    let x2m1 = Float::with_val(prec, x * x) - 1u32;
    let xp = Float::with_val(prec, x * &p1);
    let dp = (xp - &p0) * n as u32 / x2m1;
    (p1, dp)
}

/// Result of an integration: value and a nonnegative error estimate.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: ComplexValue,
    pub error: f64,
    pub evaluations: usize,
}

/// Adaptive Gauss–Legendre along a real parameter interval.
///
/// A segment is accepted when the `n`-point rule on it agrees with the sum of
/// the rules on its halves to within its share of `tol`; the halves' sum is
/// kept. Node evaluations inside one rule run through `exec`.
pub struct AdaptiveRule {
    pub order: usize,
    pub max_depth: u32,
    pub exec: Execution,
}

impl AdaptiveRule {
    pub fn new(order: usize) -> Self {
        AdaptiveRule {
            order,
            max_depth: 24,
            exec: Execution::default(),
        }
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    fn apply<F>(&self, f: &F, a: &Float, b: &Float) -> Result<ComplexValue>
    where
        F: Fn(&Float) -> Result<ComplexValue> + Sync + Send,
    {
        let bits = a.prec().max(b.prec());
        let rule = GaussLegendre::get(self.order, bits);
        let half = Float::with_val(bits, b - a) / 2u32;
        let mid = Float::with_val(bits, a + b) / 2u32;
        let idx: Vec<usize> = (0..rule.len()).collect();
        let terms = self.exec.try_map(&idx, |&i| {
            let t = Float::with_val(bits, &half * &rule.nodes()[i]) + &mid;
            Ok::<_, Error>(f(&t)?.mul_real(&rule.weights()[i]))
        })?;
        let mut acc = ComplexValue::zero_bits(bits);
        for t in &terms {
            acc = &acc + t;
        }
        Ok(acc.mul_real(&half))
    }

    /// ∫_a^b f(t) dt.
    pub fn integrate<F>(&self, f: &F, a: &Float, b: &Float, tol: f64) -> Result<Estimate>
    where
        F: Fn(&Float) -> Result<ComplexValue> + Sync + Send,
    {
        let whole = self.apply(f, a, b)?;
        let mut evaluations = self.order;
        let (value, error) = self.refine(f, a, b, whole, tol, 0, &mut evaluations)?;
        Ok(Estimate {
            value,
            error,
            evaluations,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn refine<F>(
        &self,
        f: &F,
        a: &Float,
        b: &Float,
        whole: ComplexValue,
        tol: f64,
        depth: u32,
        evaluations: &mut usize,
    ) -> Result<(ComplexValue, f64)>
    where
        F: Fn(&Float) -> Result<ComplexValue> + Sync + Send,
    {
        let bits = a.prec().max(b.prec());
        let mid = Float::with_val(bits, a + b) / 2u32;
        let left = self.apply(f, a, &mid)?;
        let right = self.apply(f, &mid, b)?;
        *evaluations += 2 * self.order;
        let halves = &left + &right;
        let diff = (&halves - &whole).abs_f64();
        // Rounding in the node sums sets a floor no subdivision can beat.
        let floor = halves.abs_f64() * 2f64.powi(-(bits as i32) + 8);
        if diff <= tol.max(floor) {
            return Ok((halves, diff));
        }
        if depth >= self.max_depth {
            return Err(Error::QuadratureFailure(format!(
                "segment [{}, {}] still off by {diff:e} at depth {depth}",
                a.to_f64(),
                b.to_f64()
            )));
        }
        let (l, el) = self.refine(f, a, &mid, left, tol / 2.0, depth + 1, evaluations)?;
        let (r, er) = self.refine(f, &mid, b, right, tol / 2.0, depth + 1, evaluations)?;
        Ok((&l + &r, el + er))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Precision;
    use rug::ops::Pow;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let bits = Precision::DEFAULT.bits();
        let rule = GaussLegendre::get(10, bits);
        let mut sum_w = Float::new(bits);
        let mut moment = Float::new(bits);
        for (x, w) in rule.nodes().iter().zip(rule.weights()) {
            sum_w += w;
            let x18 = Float::with_val(bits, x.pow(18u32));
            moment += x18 * w;
        }
        assert!((sum_w - 2u32).abs().to_f64() < 1e-38);
        // ∫ x^18 = 2/19
        let exact = Float::with_val(bits, 2) / 19u32;
        assert!((moment - exact).abs().to_f64() < 1e-38);
    }

    #[test]
    fn adaptive_exponential() {
        let p = Precision::DEFAULT;
        let rule = AdaptiveRule::new(20);
        let f = |t: &Float| -> Result<ComplexValue> {
            Ok(ComplexValue::from_floats(t.clone(), Float::new(t.prec())).mul_i().exp())
        };
        let a = Float::with_val(p.bits(), 0);
        let b = Float::with_val(p.bits(), 30);
        let est = rule.integrate(&f, &a, &b, 1e-36).unwrap();
        // ∫_0^30 e^{it} dt = (e^{30i} − 1)/i
        let end = ComplexValue::from_f64(p, 0.0, 30.0).exp();
        let exact = (&end - &ComplexValue::one(p)) / ComplexValue::i(p);
        assert!((&est.value - &exact).abs_f64() < 1e-34);
        assert!(est.error < 1e-34);
    }
}
