//! Closed-form and numerical predictors for `G(n, M = cn)`.
//!
//! Symbols: `L(c)` is the giant-component vertex fraction (the positive root of
//! `L = 1 - exp(-2cL)`), `R(c) = cL(1 + exp(-2cL))` the giant-component edge
//! fraction, and `R - L` the per-node number of edges that must go before every
//! component can be made small. With i.i.d. weights, Kruskal accepts the `i`-th
//! heaviest edge with probability `pi(i/n)`, which turns expected order
//! statistics into an expected maximum-spanning-forest weight.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::WeightModel;

const BISECTION_TOL: f64 = 1e-12;
const QUAD_RTOL: f64 = 1e-8;
const MAX_BISECTIONS: u32 = 10;
/// Largest `M` for which the exponential closed form is summed exactly.
pub const EXPONENTIAL_CLOSED_FORM_MAX_M: usize = 30;

/// Giant-component fraction `g(x)`: the positive solution of `g = 1 - exp(-2xg)`,
/// or 0 when `x <= 1/2`.
pub fn solve_giant_fraction(x: f64) -> f64 {
    if !(x > 0.5) {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    // h is concave with h(0) = 0 and h'(0) = 2x - 1 > 0: positive on (0, g), negative after
    let h = |g: f64| -(-2.0 * x * g).exp_m1() - g;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Giant-component edge fraction `R(c) = cL(1 + exp(-2cL))`.
pub fn compute_r(c: f64) -> Result<f64> {
    if !(c > 0.5) || !c.is_finite() {
        return Err(Error::invalid(format!("R(c) needs c > 1/2, got {c}")));
    }
    Ok(edge_fraction(c))
}

fn edge_fraction(c: f64) -> f64 {
    let l = solve_giant_fraction(c);
    c * l * (1.0 + (-2.0 * c * l).exp())
}

/// Probability that Kruskal accepts the edge of rank `x n`.
pub fn pi(x: f64) -> f64 {
    if x <= 0.5 {
        1.0
    } else {
        let g = solve_giant_fraction(x);
        1.0 - g * g
    }
}

/// Expected `i`-th largest of `m` i.i.d. draws (`i = 1` is the maximum).
pub fn expected_order_statistic(model: &WeightModel, m: usize, i: usize) -> Result<f64> {
    OrderStatistics::new(model, m)?.expected(i)
}

/// The exponential closed form, summed in exact rational arithmetic.
///
/// `E(w_i) = M C(M-1, i-1) / λ * Σ_{k=0}^{M-i} C(M-i, k) (-1)^k / (k+i)^2`
pub fn exponential_order_statistic_closed_form(rate: f64, m: usize, i: usize) -> Result<f64> {
    check_rank(m, i)?;
    if !(rate > 0.0) {
        return Err(Error::invalid(format!("rate must be positive, got {rate}")));
    }
    let mut sum = BigRational::zero();
    let mut binom = BigInt::one();
    let top = m - i;
    for k in 0..=top {
        let denom = BigInt::from((k + i) * (k + i));
        let term = BigRational::new(binom.clone(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * BigInt::from(top - k) / BigInt::from(k + 1);
    }
    let lead = BigInt::from(m) * binomial(m - 1, i - 1);
    let value = (sum * BigRational::from_integer(lead))
        .to_f64()
        .expect("finite rational");
    Ok(value / rate)
}

/// `E(w_i)` by quadrature over the tail probability `v = 1 - F(w)`, where
/// `w_i` becomes a `Beta(i, M - i + 1)` variable pushed through the quantile function.
pub fn order_statistic_by_quadrature(model: &WeightModel, m: usize, i: usize) -> Result<f64> {
    OrderStatistics::new(model, m)?.by_quadrature(i)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for j in 0..k {
        b = b * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    b
}

fn check_rank(m: usize, i: usize) -> Result<()> {
    if m == 0 || i == 0 || i > m {
        return Err(Error::invalid(format!("order statistic rank {i} outside 1..={m}")));
    }
    Ok(())
}

/// Order-statistic expectations for one `(model, M)` pair; caches `ln k!`.
struct OrderStatistics {
    model: WeightModel,
    m: usize,
    ln_fact: Vec<f64>,
}

impl OrderStatistics {
    fn new(model: &WeightModel, m: usize) -> Result<Self> {
        let model = model.validated()?;
        if m == 0 {
            return Err(Error::invalid("need at least one edge"));
        }
        let mut ln_fact = Vec::with_capacity(m + 1);
        ln_fact.push(0.0);
        let mut acc = 0.0;
        for k in 1..=m {
            acc += (k as f64).ln();
            ln_fact.push(acc);
        }
        Ok(Self { model, m, ln_fact })
    }

    fn expected(&self, i: usize) -> Result<f64> {
        check_rank(self.m, i)?;
        match self.model {
            WeightModel::Constant { w } => Ok(w),
            WeightModel::Uniform => Ok(1.0 - i as f64 / (self.m + 1) as f64),
            WeightModel::Exponential { rate } if self.m <= EXPONENTIAL_CLOSED_FORM_MAX_M => {
                exponential_order_statistic_closed_form(rate, self.m, i)
            }
            _ => self.by_quadrature(i),
        }
    }

    fn by_quadrature(&self, i: usize) -> Result<f64> {
        check_rank(self.m, i)?;
        let m = self.m;
        let model = self.model;
        if let WeightModel::Constant { w } = model {
            return Ok(w);
        }
        // v = 1 - F(w_i) ~ Beta(i, M - i + 1); working in v keeps the heavy tail near v = 0 exact
        let a = i as f64;
        let b = (m - i + 1) as f64;
        let ln_norm = (m as f64).ln() + self.ln_fact[m - 1] - self.ln_fact[i - 1] - self.ln_fact[m - i];
        let integrand = move |v: f64| {
            if v <= 0.0 || v >= 1.0 {
                return 0.0;
            }
            let ln_density = ln_norm + (a - 1.0) * v.ln() + (b - 1.0) * (-v).ln_1p();
            model.tail_quantile(v) * ln_density.exp()
        };

        let mode = if m == 1 { 0.5 } else { (a - 1.0) / (a + b - 2.0) };
        let sd = (a * b / ((a + b).powi(2) * (a + b + 1.0))).sqrt();
        let lo = (mode - 60.0 * sd).max(0.0);
        let hi = (mode + 60.0 * sd).min(1.0);
        let scale = model.tail_quantile(a / (a + b)).abs().max(1e-300);
        let tol = QUAD_RTOL * scale;
        // the quantile may blow up at v = 0; v = s^p flattens that end
        let p = match model {
            WeightModel::Pareto { exponent, .. } => (2.0 / (1.0 - 1.0 / (exponent - 1.0))).ceil().max(2.0),
            _ => 2.0,
        };
        let piece = |x: f64, y: f64| {
            if x > 0.0 {
                return adaptive(&integrand, x, y, 0.5 * tol, MAX_BISECTIONS);
            }
            let flat = |s: f64| p * s.powf(p - 1.0) * integrand(s.powf(p));
            adaptive(&flat, 0.0, y.powf(1.0 / p), 0.5 * tol, MAX_BISECTIONS)
        };
        let mut total = 0.0;
        if mode > lo {
            total += piece(lo, mode);
        }
        if hi > mode {
            total += piece(mode, hi);
        }
        Ok(total)
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let out = quadrature::integrate(f, a, b, tol);
    if out.error_estimate <= tol || depth == 0 {
        return out.integral;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, 0.5 * tol, depth - 1) + adaptive(f, mid, b, 0.5 * tol, depth - 1)
}

/// Expected total weight of the maximum spanning forest of `G(n, M)`,
/// `Σ_i E(w_i) pi(i/n)`, without the `o(n)` correction.
pub fn expected_maxsf(model: &WeightModel, n: usize, m: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if m == 0 {
        return Err(Error::invalid("M must be positive"));
    }
    let stats = OrderStatistics::new(model, m)?;
    let mut total = 0.0;
    for i in 1..=m {
        total += stats.expected(i)? * pi(i as f64 / n as f64);
    }
    Ok(total)
}

/// Expected weight of a maximum spanning tree of the giant component:
/// `E(MaxSF) - (c - R) mu n`.
pub fn expected_l_prime(model: &WeightModel, n: usize, m: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let c = m as f64 / n as f64;
    if !(c > 0.5) {
        return Err(Error::invalid(format!("no giant component for c = M/n = {c} <= 1/2")));
    }
    let r = compute_r(c)?;
    Ok(expected_maxsf(model, n, m)? - (c - r) * model.mean() * n as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoryReport {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub c: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub mu: f64,
    /// `R - L`: per-node edge removals at the unweighted threshold.
    pub threshold_unweighted: f64,
    /// Total over the graph, not per node.
    pub expected_maxsf: f64,
    /// Total; absent when there is no giant component.
    #[serde(rename = "expected_L_prime")]
    pub expected_l_prime: Option<f64>,
    /// `R' = R mu`, per node.
    #[serde(rename = "R_prime")]
    pub r_prime: f64,
    /// `R' - L'/n`, per node.
    pub threshold_weighted: Option<f64>,
}

/// All predictions for `G(n, M = round(c n))` with weights from `model`.
pub fn predict(c: f64, model: &WeightModel, n: usize) -> Result<TheoryReport> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::invalid(format!("c must be positive, got {c}")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let model = model.validated()?;
    let m = (c * n as f64).round() as usize;
    let l = solve_giant_fraction(c);
    let r = if c > 0.5 { edge_fraction(c) } else { 0.0 };
    let mu = model.mean();
    let expected_maxsf = if m == 0 { 0.0 } else { expected_maxsf(&model, n, m)? };
    let expected_l_prime = if m as f64 / n as f64 > 0.5 {
        Some(expected_l_prime(&model, n, m)?)
    } else {
        None
    };
    let r_prime = r * mu;
    Ok(TheoryReport {
        n,
        m,
        c,
        l,
        r,
        mu,
        threshold_unweighted: (r - l).max(0.0),
        expected_maxsf,
        expected_l_prime,
        r_prime,
        threshold_weighted: expected_l_prime.map(|lp| r_prime - lp / n as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent fixed-point oracle: plain iteration g <- 1 - exp(-2xg) from g = 1
    // converges monotonically to the positive root for x > 1/2.
    fn iterate_fixed_point(x: f64) -> f64 {
        let mut g = 1.0f64;
        for _ in 0..100_000 {
            g = 1.0 - (-2.0 * x * g).exp();
        }
        g
    }

    #[test]
    fn giant_fraction_examples() {
        assert_eq!(solve_giant_fraction(0.4), 0.0);
        assert_eq!(solve_giant_fraction(0.5), 0.0);
        let g1 = solve_giant_fraction(1.0);
        assert!((g1 - 0.796_812_130_020).abs() < 1e-10, "{g1}");
        assert!((g1 - iterate_fixed_point(1.0)).abs() < 1e-11);
        assert!(solve_giant_fraction(50.0) > 1.0 - 1e-12);
        assert!(solve_giant_fraction(10.0) > 0.999_999);
    }

    #[test]
    fn giant_fraction_residual() {
        for k in 0..200 {
            let x = 0.5 + 0.001 + k as f64 * 0.05;
            let g = solve_giant_fraction(x);
            assert!((1.0 - (-2.0 * x * g).exp() - g).abs() < 1e-10, "x = {x}");
            assert!(g > 0.0);
        }
    }

    #[test]
    fn r_examples() {
        let l = solve_giant_fraction(1.0);
        let r = compute_r(1.0).unwrap();
        assert!((r - 0.958_710).abs() < 1e-5, "{r}");
        assert!((r - l * (2.0 - l)).abs() < 1e-10);
        assert!((r - l - 0.161_898).abs() < 1e-5, "{}", r - l);
        assert!(compute_r(0.5).is_err());
        assert!(compute_r(0.500_001).unwrap() < 1e-4);
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi(0.0), 1.0);
        assert_eq!(pi(0.5), 1.0);
        assert!((pi(1.0) - 0.365_090_4).abs() < 1e-6, "{}", pi(1.0));
        assert!(pi(0.500_001) > 0.999_99);
        let mut prev = 1.0;
        for k in 0..300 {
            let p = pi(k as f64 * 0.01);
            assert!(p <= prev + 1e-15);
            prev = p;
        }
    }

    #[test]
    fn order_statistic_examples() {
        let unif = WeightModel::Uniform;
        assert_eq!(expected_order_statistic(&unif, 3, 2).unwrap(), 0.5);
        assert_eq!(expected_order_statistic(&unif, 1, 1).unwrap(), 0.5);
        let exp1 = WeightModel::Exponential { rate: 1.0 };
        assert!((expected_order_statistic(&exp1, 2, 1).unwrap() - 1.5).abs() < 1e-14);
        assert!((expected_order_statistic(&exp1, 2, 2).unwrap() - 0.5).abs() < 1e-14);
        assert!(expected_order_statistic(&unif, 3, 0).is_err());
        assert!(expected_order_statistic(&unif, 3, 4).is_err());
    }

    // Independent oracle for exponentials: the i-th largest of M is
    // (1/λ) Σ_{j=i}^{M} 1/j (spacings of exponential order statistics).
    fn exponential_spacings(rate: f64, m: usize, i: usize) -> f64 {
        (i..=m).map(|j| 1.0 / j as f64).sum::<f64>() / rate
    }

    // Independent oracle for Pareto(3, x_min): E = x_min Γ(i-1/2)Γ(M+1) / (Γ(i)Γ(M+1/2)).
    fn pareto3(x_min: f64, m: usize, i: usize) -> f64 {
        let mut lower = std::f64::consts::PI.sqrt(); // Γ(1/2)/Γ(1)
        for k in 1..i {
            lower *= (k as f64 - 0.5) / k as f64;
        }
        let mut upper = 1.0 / std::f64::consts::PI.sqrt(); // Γ(1)/Γ(1/2)
        for k in 1..=m {
            upper *= k as f64 / (k as f64 - 0.5);
        }
        x_min * lower * upper
    }

    #[test]
    fn exponential_closed_form_matches_spacings() {
        for m in 1..=30 {
            for i in 1..=m {
                let cf = exponential_order_statistic_closed_form(2.0, m, i).unwrap();
                let oracle = exponential_spacings(2.0, m, i);
                assert!(
                    (cf - oracle).abs() < 1e-12 * oracle.max(1.0),
                    "M={m} i={i}: {cf} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn quadrature_matches_oracles() {
        let exp = WeightModel::Exponential { rate: 2.0 };
        let par = WeightModel::Pareto {
            exponent: 3.0,
            x_min: 0.25,
        };
        for &m in &[1usize, 2, 5, 20, 31, 100, 1000, 5000] {
            let ranks: Vec<usize> = if m <= 40 {
                (1..=m).collect()
            } else {
                vec![1, 2, 3, m / 3, m / 2, m - 1, m]
            };
            for &i in &ranks {
                let q = order_statistic_by_quadrature(&exp, m, i).unwrap();
                let o = exponential_spacings(2.0, m, i);
                assert!((q - o).abs() <= 1e-8 * o, "exp M={m} i={i}: {q} vs {o}");
                let q = order_statistic_by_quadrature(&par, m, i).unwrap();
                let o = pareto3(0.25, m, i);
                assert!((q - o).abs() <= 1e-7 * o, "pareto M={m} i={i}: {q} vs {o}");
                let q = order_statistic_by_quadrature(&WeightModel::Uniform, m, i).unwrap();
                let o = 1.0 - i as f64 / (m + 1) as f64;
                assert!((q - o).abs() <= 1e-8 * o.max(1e-3), "unif M={m} i={i}: {q} vs {o}");
            }
        }
    }

    #[test]
    fn order_statistics_sum_and_monotonicity() {
        for model in ["unif", "exp:2", "pareto:3,0.25", "const:1.5", "exp:0.7"] {
            let model: WeightModel = model.parse().unwrap();
            for &m in &[1usize, 7, 30, 31, 200] {
                let stats = OrderStatistics::new(&model, m).unwrap();
                let values: Vec<f64> = (1..=m).map(|i| stats.expected(i).unwrap()).collect();
                let sum: f64 = values.iter().sum();
                let target = m as f64 * model.mean();
                assert!((sum - target).abs() < 1e-6 * target, "{model} M={m}: {sum} vs {target}");
                assert!(values.windows(2).all(|w| w[0] >= w[1] - 1e-12), "{model} M={m}");
            }
        }
    }

    #[test]
    fn maxsf_examples() {
        let one = WeightModel::Constant { w: 1.0 };
        assert_eq!(expected_maxsf(&one, 100, 50).unwrap(), 50.0);
        assert_eq!(expected_maxsf(&one, 100, 20).unwrap(), 20.0);
        for model in ["unif", "exp:2", "pareto:3,0.25"] {
            let model: WeightModel = model.parse().unwrap();
            let v = expected_maxsf(&model, 100, 1).unwrap();
            assert!((v - model.mean()).abs() < 1e-8);
        }
    }

    #[test]
    fn maxsf_bounded_by_total_weight() {
        for model in ["unif", "exp:2", "const:1"] {
            let model: WeightModel = model.parse().unwrap();
            for &(n, m) in &[(100usize, 30usize), (100, 50), (100, 51), (100, 120), (50, 100)] {
                let v = expected_maxsf(&model, n, m).unwrap();
                let cap = m as f64 * model.mean();
                if 2 * m <= n {
                    assert!((v - cap).abs() < 1e-6 * cap);
                } else {
                    assert!(v < cap);
                }
            }
        }
    }

    #[test]
    fn l_prime_unit_weights_tracks_giant_fraction() {
        // with unit weights the MaxST of the giant has about Ln edges
        let one = WeightModel::Constant { w: 1.0 };
        let n = 200_000;
        let lp = expected_l_prime(&one, n, n).unwrap() / n as f64;
        assert!((lp - solve_giant_fraction(1.0)).abs() < 1e-3, "{lp}");
        assert!(expected_l_prime(&one, 100, 50).is_err());
        let near = expected_l_prime(&one, 100_000, 50_100).unwrap() / 100_000.0;
        assert!(near.abs() < 1e-2, "{near}");
    }

    #[test]
    fn predict_examples() {
        let one = WeightModel::Constant { w: 1.0 };
        let rep = predict(1.0, &one, 1000).unwrap();
        assert!((rep.threshold_unweighted - 0.161_898).abs() < 1e-5);
        assert!(rep.expected_l_prime.is_some());
        let sub = predict(0.4, &one, 1000).unwrap();
        assert_eq!(sub.threshold_unweighted, 0.0);
        assert_eq!(sub.l, 0.0);
        assert_eq!(sub.expected_l_prime, None);
        assert_eq!(sub.expected_maxsf, 400.0);
        let unif = predict(1.0, &WeightModel::Uniform, 1000).unwrap();
        assert_eq!(unif.mu, 0.5);
        assert!(unif.expected_maxsf > 0.0);
        let json = serde_json::to_value(&unif).unwrap();
        for key in [
            "c",
            "L",
            "R",
            "mu",
            "threshold_unweighted",
            "expected_maxsf",
            "expected_L_prime",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(predict(0.0, &one, 10).is_err());
    }
}
