//! Exact finite-sample marginal likelihood ratios.
//!
//! For a sample `X₁..Xₙ` and mixture parameters `w = (a, b, c)`, the
//! likelihood ratio against the standard-normal null factorizes into
//! per-observation terms `(1-a) + a·exp(sᵢ)` with
//! `sᵢ = ln[√c · exp(-c(xᵢ-b)²/2 + xᵢ²/2)]`. The marginal likelihood
//! ratio of a prior `π` over `w` is the prior average
//!
//! ```text
//! L(Xⁿ) = ∫ ∏ᵢ [(1-a) + a e^{sᵢ(b,c)}] dπ(a, b, c),
//! ```
//!
//! computed here by tensor-product Gauss–Legendre quadrature over the
//! prior cube, with the product accumulated in log space and the outer
//! average max-shifted so that samples far into either hypothesis cannot
//! overflow. Each of the three priors matches its sampler in
//! [`crate::sampling`]:
//!
//! * `ratio` — `a ~ U(0,1)`, slope pinned at `β₀/√n`, unit precision;
//! * `ratio-mean` — `a ~ U(0,1)`, slope `b ~ U(0, B₀/√n)`, unit precision;
//! * `full` — `a ~ U(0,1)`, `(b, (c-1)/√2)` uniform on the disc of
//!   radius `R₀/√n`.
//!
//! Convergence is self-validating: the grid is doubled until the log of
//! the marginal moves by less than [`MarginalGrid::log_rel_tol`], and a
//! failure to settle within [`MarginalGrid::max_doublings`] doublings is
//! reported as an error carrying the best value rather than returned
//! silently. Cell evaluations are distributed with rayon and reduced in
//! a fixed order, so results are bit-identical for any worker count.

use rayon::prelude::*;

use crate::asymptotics::CaseSpec;
use crate::numerics::{gauss_legendre_on, CompensatedSum, SQRT_2};
use crate::sampling::Sample;
use crate::{Error, Result};

/// Exponent size above which per-term evaluation switches to the
/// overflow-proof branch, and the batched-product fast path is skipped.
const SMALL_EXPONENT: f64 = 30.0;

/// Per-term exponents this large need `exp` replaced by its logarithmic
/// expansion to avoid infinities.
const HUGE_EXPONENT: f64 = 700.0;

// ---------------------------------------------------------------------------
// Grid configuration
// ---------------------------------------------------------------------------

/// Quadrature resolution for the prior average, per axis, plus the
/// self-validation policy.
///
/// The node counts are the *starting* grid; every axis is doubled until
/// two successive grids agree in log to `log_rel_tol` (relative on the
/// scale of `max(1, |ln L|)`), up to `max_doublings` doublings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalGrid {
    /// Nodes on the mixing-weight axis `a ∈ (0, 1)`.
    pub mix_nodes: usize,
    /// Nodes on the slope axis (`ratio-mean` prior only).
    pub slope_nodes: usize,
    /// Nodes on the radial axis (`full` prior only).
    pub radial_nodes: usize,
    /// Midpoint nodes on the angular axis (`full` prior only).
    pub angular_nodes: usize,
    /// Agreement required between successive grids, on log scale.
    pub log_rel_tol: f64,
    /// Maximum number of grid doublings before giving up.
    pub max_doublings: u32,
}

impl Default for MarginalGrid {
    fn default() -> Self {
        MarginalGrid {
            mix_nodes: 64,
            slope_nodes: 64,
            radial_nodes: 16,
            angular_nodes: 32,
            log_rel_tol: 1e-6,
            max_doublings: 3,
        }
    }
}

impl MarginalGrid {
    /// Starting grid tuned per prior: the disc prior trades a thinner
    /// mixing axis for its two extra axes so a doubled grid stays
    /// affordable on one core.
    pub fn for_case(case: &CaseSpec) -> Self {
        match case {
            CaseSpec::Case1 { .. } | CaseSpec::Case2 { .. } => MarginalGrid::default(),
            CaseSpec::Case3 { .. } => MarginalGrid {
                mix_nodes: 32,
                ..MarginalGrid::default()
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mix_nodes < 4
            || self.slope_nodes < 4
            || self.radial_nodes < 2
            || self.angular_nodes < 4
        {
            return Err(Error::Domain(format!(
                "grid too coarse: need >= 4 mix/slope, >= 2 radial, >= 4 angular nodes, got {self:?}"
            )));
        }
        if !self.log_rel_tol.is_finite() || self.log_rel_tol <= 0.0 {
            return Err(Error::Domain(format!(
                "log_rel_tol must be positive, got {}",
                self.log_rel_tol
            )));
        }
        if self.max_doublings > 6 {
            return Err(Error::Domain(format!(
                "max_doublings capped at 6, got {}",
                self.max_doublings
            )));
        }
        Ok(())
    }

    fn doubled(&self) -> Self {
        MarginalGrid {
            mix_nodes: self.mix_nodes * 2,
            slope_nodes: self.slope_nodes * 2,
            radial_nodes: self.radial_nodes * 2,
            angular_nodes: self.angular_nodes * 2,
            ..*self
        }
    }
}

// ---------------------------------------------------------------------------
// Per-term kernel
// ---------------------------------------------------------------------------

/// Per-observation exponents `sᵢ` for one fixed parameter point, with
/// `tᵢ = expm1(sᵢ)` cached for the inner mixing-weight loop.
struct TermTable {
    s: Vec<f64>,
    t: Vec<f64>,
    /// All exponents small enough for the batched-product fast path.
    small: bool,
}

impl TermTable {
    fn new(sample: &Sample, exponent: impl Fn(f64) -> f64) -> TermTable {
        let s: Vec<f64> = sample.values().iter().map(|&x| exponent(x)).collect();
        let small = s.iter().all(|v| v.abs() <= SMALL_EXPONENT);
        let t = s
            .iter()
            .map(|&v| if v <= HUGE_EXPONENT { v.exp_m1() } else { f64::INFINITY })
            .collect();
        TermTable { s, t, small }
    }

    /// `H(a) = Σᵢ ln[(1-a) + a e^{sᵢ}] = Σᵢ ln(1 + a tᵢ)`.
    fn log_ratio_at(&self, a: f64) -> f64 {
        if self.small {
            // All factors lie in [e^{-30}, e^{30}]: accumulate plain
            // products in chunks and take one log per chunk. This is the
            // hot path — for null-scale data it replaces a transcendental
            // call per observation with a multiply.
            let mut acc = 0.0;
            let mut prod = 1.0;
            for chunk in self.t.chunks(16) {
                for &ti in chunk {
                    prod = ti.mul_add(a, 1.0) * prod;
                }
                acc += prod.ln();
                prod = 1.0;
            }
            acc
        } else {
            let mut acc = CompensatedSum::default();
            for (&si, &ti) in self.s.iter().zip(&self.t) {
                if si > HUGE_EXPONENT {
                    // ln[(1-a) + a e^s] = s + ln[a + (1-a) e^{-s}].
                    acc.add(si + (a + (1.0 - a) * (-si).exp()).ln());
                } else {
                    acc.add((a * ti).ln_1p());
                }
            }
            acc.value()
        }
    }
}

/// Log-likelihood ratio of the mixture `(1-a)N(0,1) + aN(beta, 1)`
/// against the null, at fixed mixing weight `a` and slope `beta`
/// (unscaled — callers working on the `β₀/√n` scale divide first).
pub fn log_likelihood_ratio_case1(sample: &Sample, a: f64, beta: f64) -> Result<f64> {
    if !a.is_finite() || !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!(
            "mixing weight must lie in [0, 1], got {a}"
        )));
    }
    if !beta.is_finite() {
        return Err(Error::Domain(format!("slope must be finite, got {beta}")));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let table = TermTable::new(sample, |x| beta * x - 0.5 * beta * beta);
    Ok(table.log_ratio_at(a))
}

// ---------------------------------------------------------------------------
// Prior averages
// ---------------------------------------------------------------------------

/// `ln Σ wₖ e^{Hₖ}` over quadrature cells, max-shifted, summed in cell
/// order with compensation so the reduction is deterministic.
fn log_weighted_sum(cells: &[(f64, f64)]) -> f64 {
    let mut shift = f64::NEG_INFINITY;
    for &(w, h) in cells {
        let lw = w.ln() + h;
        if lw > shift {
            shift = lw;
        }
    }
    if !shift.is_finite() {
        return shift;
    }
    let mut sum = CompensatedSum::default();
    for &(w, h) in cells {
        sum.add((w.ln() + h - shift).exp());
    }
    shift + sum.value().ln()
}

/// Runs the grid-doubling loop around a log-marginal evaluator.
fn converge_log_marginal(
    grid: &MarginalGrid,
    mut eval: impl FnMut(&MarginalGrid) -> Result<f64>,
) -> Result<f64> {
    grid.validate()?;
    let mut current = *grid;
    let mut prev: Option<f64> = None;
    let mut last_gap = f64::INFINITY;
    for pass in 0..=grid.max_doublings {
        let log_l = eval(&current)?;
        if !log_l.is_finite() {
            return Err(Error::Domain(format!(
                "marginal likelihood ratio left the representable range (log = {log_l})"
            )));
        }
        if let Some(p) = prev {
            last_gap = (log_l - p).abs();
            if last_gap <= grid.log_rel_tol * log_l.abs().max(1.0) {
                return Ok(log_l.exp());
            }
        }
        prev = Some(log_l);
        if pass < grid.max_doublings {
            current = current.doubled();
        }
    }
    Err(Error::Convergence {
        best: prev.expect("at least one evaluation ran").exp(),
        error: last_gap,
        iterations: grid.max_doublings,
    })
}

/// Marginal likelihood ratio under the `ratio` prior: `a ~ U(0,1)`,
/// slope fixed at `beta0/√n`, unit precision.
pub fn marginal_l_case1(sample: &Sample, beta0: f64) -> Result<f64> {
    marginal_l_case1_with_grid(sample, beta0, &MarginalGrid::for_case(&CaseSpec::Case1 { beta0 }))
}

pub fn marginal_l_case1_with_grid(
    sample: &Sample,
    beta0: f64,
    grid: &MarginalGrid,
) -> Result<f64> {
    CaseSpec::Case1 { beta0 }.validate()?;
    let b = beta0 / (sample.len() as f64).sqrt();
    converge_log_marginal(grid, |g| {
        let (nodes, weights) = gauss_legendre_on(0.0, 1.0, g.mix_nodes)?;
        let table = TermTable::new(sample, |x| b * x - 0.5 * b * b);
        let hs: Vec<f64> = nodes.par_iter().map(|&a| table.log_ratio_at(a)).collect();
        let cells: Vec<(f64, f64)> = weights.iter().copied().zip(hs).collect();
        Ok(log_weighted_sum(&cells))
    })
}

/// Marginal likelihood ratio under the `ratio-mean` prior: `a ~ U(0,1)`,
/// `b ~ U(0, b0/√n)`, unit precision.
pub fn marginal_l_case2(sample: &Sample, b0: f64) -> Result<f64> {
    marginal_l_case2_with_grid(sample, b0, &MarginalGrid::for_case(&CaseSpec::Case2 { b0 }))
}

pub fn marginal_l_case2_with_grid(sample: &Sample, b0: f64, grid: &MarginalGrid) -> Result<f64> {
    CaseSpec::Case2 { b0 }.validate()?;
    let width = b0 / (sample.len() as f64).sqrt();
    converge_log_marginal(grid, |g| {
        let (an, aw) = gauss_legendre_on(0.0, 1.0, g.mix_nodes)?;
        let (bn, bw) = gauss_legendre_on(0.0, width, g.slope_nodes)?;
        let rows: Vec<Vec<f64>> = bn
            .par_iter()
            .map(|&b| {
                let table = TermTable::new(sample, |x| b * x - 0.5 * b * b);
                an.iter().map(|&a| table.log_ratio_at(a)).collect()
            })
            .collect();
        let mut cells = Vec::with_capacity(g.mix_nodes * g.slope_nodes);
        for (row, wb) in rows.iter().zip(&bw) {
            for (h, wa) in row.iter().zip(&aw) {
                // wb integrates db over [0, width]; the prior density is
                // 1/width, hence the division.
                cells.push((wa * wb / width, *h));
            }
        }
        Ok(log_weighted_sum(&cells))
    })
}

/// Marginal likelihood ratio under the `full` prior: `a ~ U(0,1)` and
/// `(b, (c-1)/√2)` uniform on the disc of radius `r0/√n`.
///
/// Requires `√2·r0/√n < 1` so the precision `c` stays positive across
/// the whole prior disc.
pub fn marginal_l_case3(sample: &Sample, r0: f64) -> Result<f64> {
    marginal_l_case3_with_grid(sample, r0, &MarginalGrid::for_case(&CaseSpec::Case3 { r0 }))
}

pub fn marginal_l_case3_with_grid(sample: &Sample, r0: f64, grid: &MarginalGrid) -> Result<f64> {
    CaseSpec::Case3 { r0 }.validate()?;
    let radius = r0 / (sample.len() as f64).sqrt();
    if SQRT_2 * radius >= 1.0 {
        return Err(Error::Domain(format!(
            "disc prior radius {radius} reaches non-positive precisions; need sqrt(2)*r0/sqrt(n) < 1"
        )));
    }
    converge_log_marginal(grid, |g| {
        let (an, aw) = gauss_legendre_on(0.0, 1.0, g.mix_nodes)?;
        let (rn, rw) = gauss_legendre_on(0.0, radius, g.radial_nodes)?;
        let m_theta = g.angular_nodes;
        let polar: Vec<(f64, f64)> = rn
            .iter()
            .flat_map(|&r| {
                (0..m_theta).map(move |k| {
                    let theta =
                        2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m_theta as f64;
                    (r, theta)
                })
            })
            .collect();
        let rows: Vec<Vec<f64>> = polar
            .par_iter()
            .map(|&(r, theta)| {
                let b = r * theta.cos();
                let c = 1.0 + SQRT_2 * r * theta.sin();
                let half_log_c = 0.5 * c.ln();
                let table = TermTable::new(sample, |x| {
                    -0.5 * (c - 1.0) * x * x + b * c * x - 0.5 * b * b * c + half_log_c
                });
                an.iter().map(|&a| table.log_ratio_at(a)).collect()
            })
            .collect();
        let mut cells = Vec::with_capacity(g.mix_nodes * g.radial_nodes * m_theta);
        for (cell_idx, row) in rows.iter().enumerate() {
            let j = cell_idx / m_theta;
            let r = rn[j];
            // Radial density 2r/radius² times the GL dr weight, and the
            // uniform angular average.
            let w_polar = rw[j] * 2.0 * r / (radius * radius) / m_theta as f64;
            for (h, wa) in row.iter().zip(&aw) {
                cells.push((wa * w_polar, *h));
            }
        }
        Ok(log_weighted_sum(&cells))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::case1_l_closed;
    use crate::sampling::{sample_null, sufficient_stats, StreamKey};
    use approx::assert_relative_eq;

    fn alternating_sample(n: usize) -> Sample {
        Sample::new((0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect()).unwrap()
    }

    #[test]
    fn point_likelihood_ratio_matches_hand_values() {
        let s = Sample::new(vec![0.0]).unwrap();
        // Pure alternative with slope 2 at x = 0: ln e^{-2} = -2.
        assert_relative_eq!(
            log_likelihood_ratio_case1(&s, 1.0, 2.0).unwrap(),
            -2.0,
            max_relative = 1e-12
        );
        // Zero mixing weight or zero slope leave the null untouched.
        let s2 = Sample::new(vec![1.5, -0.3, 2.2]).unwrap();
        assert_eq!(log_likelihood_ratio_case1(&s2, 0.0, 3.0).unwrap(), 0.0);
        assert_eq!(log_likelihood_ratio_case1(&s2, 0.7, 0.0).unwrap(), 0.0);
        assert!(log_likelihood_ratio_case1(&s2, -0.1, 1.0).is_err());
        assert!(log_likelihood_ratio_case1(&s2, 1.1, 1.0).is_err());
        assert!(log_likelihood_ratio_case1(&s2, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn huge_exponents_use_the_stable_branch() {
        let s = Sample::new(vec![50.0, -50.0]).unwrap();
        // Slope 30: exponents 30*50 - 450 = 1050 and -1950.
        let h = log_likelihood_ratio_case1(&s, 0.5, 30.0).unwrap();
        assert!(h.is_finite());
        // ln(0.5 e^{1050}) + ln(0.5 + 0.5 e^{-1950}) = 1050 - 2 ln 2.
        assert_relative_eq!(h, 1050.0 - 2.0 * 2.0_f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn narrow_priors_leave_the_ratio_at_one() {
        let s = sample_null(100, StreamKey::new(7, 0)).unwrap();
        let l1 = marginal_l_case1(&s, 1e-6).unwrap();
        assert!((l1 - 1.0).abs() < 1e-6, "ratio prior: {l1}");
        let l2 = marginal_l_case2(&s, 1e-6).unwrap();
        assert!((l2 - 1.0).abs() < 1e-6, "ratio-mean prior: {l2}");
        let l3 = marginal_l_case3(&s, 1e-6).unwrap();
        assert!((l3 - 1.0).abs() < 1e-6, "full prior: {l3}");
    }

    #[test]
    fn zero_statistic_sample_sits_at_the_central_values() {
        // Alternating ±1 has Σx = 0 and Σx² = n exactly, so both
        // normalized statistics vanish and the marginals must sit near
        // their zero-statistic limits.
        let s = alternating_sample(10_000);
        let stats = sufficient_stats(&s);
        assert_eq!(stats.xi, 0.0);
        assert_eq!(stats.eta, 0.0);

        let l1 = marginal_l_case1(&s, 1.0).unwrap();
        assert!((l1 - 0.855_624_391_892).abs() < 0.01, "ratio: {l1}");

        // The one-sided slope prior keeps only the b > 0 half, so the
        // finite-n marginal tracks the one-sided integral J(0) — half the
        // symmetrized limit statistic.
        let l2 = marginal_l_case2(&s, 1.0).unwrap();
        assert!((l2 - 0.949_049_394_22).abs() < 0.01, "ratio-mean: {l2}");

        // The disc prior couples to the sample's fourth moment through
        // its precision axis, so the ±1 sample (fourth moment 1, not 3)
        // does not suit it. Studentizing a genuine null draw zeroes both
        // statistics exactly while keeping normal-like higher moments.
        let raw = sample_null(10_000, StreamKey::new(77, 0)).unwrap();
        let n = raw.len() as f64;
        let mean = raw.values().iter().sum::<f64>() / n;
        let sd =
            (raw.values().iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n).sqrt();
        let studentized =
            Sample::new(raw.values().iter().map(|x| (x - mean) / sd).collect()).unwrap();
        let zeroed = sufficient_stats(&studentized);
        assert!(zeroed.big_xi < 1e-10, "studentizing must zero the statistics");

        // The disc prior tracks the full disc average — twice the
        // tabulated limit statistic.
        let l3 = marginal_l_case3(&studentized, 1.0).unwrap();
        assert!((l3 - 0.924_310_103_2).abs() < 0.015, "full: {l3}");
    }

    #[test]
    fn null_sample_tracks_the_limit_statistic() {
        let s = sample_null(10_000, StreamKey::new(20_260_817, 5)).unwrap();
        let stats = sufficient_stats(&s);
        let exact = marginal_l_case1(&s, 1.0).unwrap();
        let limit = case1_l_closed(stats.xi, 1.0).unwrap();
        assert!(
            (exact - limit).abs() < 0.02,
            "exact {exact} vs limit {limit} at xi = {}",
            stats.xi
        );
    }

    #[test]
    fn extreme_observations_stay_finite() {
        let s = Sample::new(vec![50.0, -50.0]).unwrap();
        let l1 = marginal_l_case1(&s, 10.0).unwrap();
        assert!(l1.is_finite() && l1 > 0.0);
        let l2 = marginal_l_case2(&s, 10.0).unwrap();
        assert!(l2.is_finite() && l2 > 0.0);
    }

    #[test]
    fn disc_prior_guards_the_precision_cone() {
        let tiny = Sample::new(vec![0.1]).unwrap();
        assert!(matches!(
            marginal_l_case3(&tiny, 1.0),
            Err(Error::Domain(_))
        ));
        let s = sample_null(3, StreamKey::new(1, 0)).unwrap();
        assert!(marginal_l_case3(&s, 1.0).is_ok());
    }

    #[test]
    fn point_mass_slope_prior_reproduces_the_fixed_slope_marginal() {
        // Integrating exp(log_likelihood_ratio_case1) over the mixing
        // weight by hand must agree with marginal_l_case1: the marginal
        // is exactly that average when the slope prior is a point mass.
        let s = sample_null(200, StreamKey::new(11, 3)).unwrap();
        let beta0 = 1.5;
        let b = beta0 / (s.len() as f64).sqrt();
        let (nodes, weights) = gauss_legendre_on(0.0, 1.0, 128).unwrap();
        let mut by_hand = 0.0;
        for (a, w) in nodes.iter().zip(&weights) {
            by_hand += w * log_likelihood_ratio_case1(&s, *a, b).unwrap().exp();
        }
        let marginal = marginal_l_case1(&s, beta0).unwrap();
        assert_relative_eq!(marginal, by_hand, max_relative = 1e-9);
    }

    #[test]
    fn angular_symmetry_justifies_radial_statistics() {
        // The quadratic surrogate of the log-likelihood over the disc
        // prior depends on (ξ, η) only through Ξ = √(ξ²+η²): rotating
        // (ξ, η) must leave the surrogate average unchanged.
        let surrogate = |xi: f64, eta: f64| {
            let n = 100.0_f64;
            let radius = 1.0 / n.sqrt();
            let (an, aw) = gauss_legendre_on(0.0, 1.0, 32).unwrap();
            let (rn, rw) = gauss_legendre_on(0.0, radius, 24).unwrap();
            let m_theta = 64;
            let mut total = 0.0;
            for (a, wa) in an.iter().zip(&aw) {
                for (r, wr) in rn.iter().zip(&rw) {
                    for k in 0..m_theta {
                        let theta =
                            2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m_theta as f64;
                        let drift = xi * theta.cos() + eta * theta.sin();
                        let expo = -0.5 * n * a * a * r * r + n.sqrt() * a * r * drift;
                        total += wa * wr * (2.0 * r / (radius * radius)) / m_theta as f64
                            * expo.exp();
                    }
                }
            }
            total
        };
        let (xi, eta) = (1.2, -0.9);
        let phi = 37.0_f64.to_radians();
        let (xr, er) = (
            xi * phi.cos() - eta * phi.sin(),
            xi * phi.sin() + eta * phi.cos(),
        );
        let plain = surrogate(xi, eta);
        let rotated = surrogate(xr, er);
        assert!(
            (plain - rotated).abs() < 1e-8,
            "rotation moved the surrogate: {plain} vs {rotated}"
        );
    }

    #[test]
    fn repeated_evaluation_is_deterministic() {
        let s = sample_null(500, StreamKey::new(42, 9)).unwrap();
        let a = marginal_l_case2(&s, 1.0).unwrap();
        let b = marginal_l_case2(&s, 1.0).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        // A finer starting grid lands on the same converged value.
        let fine = MarginalGrid {
            mix_nodes: 128,
            slope_nodes: 128,
            ..MarginalGrid::default()
        };
        let c = marginal_l_case2_with_grid(&s, 1.0, &fine).unwrap();
        assert!((a - c).abs() <= 1e-5 * a.abs().max(1.0));
    }

    #[test]
    fn worker_count_does_not_change_bits() {
        let s = sample_null(400, StreamKey::new(3, 1)).unwrap();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| marginal_l_case3(&s, 1.0).unwrap());
        let three = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap()
            .install(|| marginal_l_case3(&s, 1.0).unwrap());
        assert_eq!(one.to_bits(), three.to_bits());
    }

    #[test]
    fn grids_validate_their_shape() {
        let bad = MarginalGrid {
            mix_nodes: 2,
            ..MarginalGrid::default()
        };
        let s = sample_null(50, StreamKey::new(5, 5)).unwrap();
        assert!(marginal_l_case1_with_grid(&s, 1.0, &bad).is_err());
        let bad_tol = MarginalGrid {
            log_rel_tol: 0.0,
            ..MarginalGrid::default()
        };
        assert!(marginal_l_case2_with_grid(&s, 1.0, &bad_tol).is_err());
    }

    #[test]
    fn marginals_are_positive_for_small_samples() {
        for seed in 0..5 {
            let s = sample_null(8, StreamKey::new(seed, 2)).unwrap();
            assert!(marginal_l_case1(&s, 2.0).unwrap() > 0.0);
            assert!(marginal_l_case2(&s, 2.0).unwrap() > 0.0);
            assert!(marginal_l_case3(&s, 1.0).unwrap() > 0.0);
        }
    }
}
