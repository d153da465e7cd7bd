//! Certified inequality checks: the Blichfeldt lower bound, the
//! Blichfeldt-van der Corput upper bound, the exact symmetric bound with
//! Laguerre constants, product and ratio bounds for polar pairs, Mahler's
//! planar bound, and the monotonicity/recurrence analysis behind them.
//!
//! Every check reports `holds == (lhs <= rhs)` under exact or certified
//! comparison; a `false` on admissible input refutes a theorem and is
//! treated as a build-breaking failure by the test suites.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::davenport::{self, ParallelepipedSpec};
use crate::exact::{
    ball_volume, factorial, nth_root_enclosure, pi_enclosure, pow2, rat_int, IntMatrix, PiScaled,
    Rational,
};
use crate::lattice;
use crate::polytope::VPolytope;
use crate::{Error, Result};

/// Exact scalar that is either rational or a rational multiple of a power
/// of pi.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Pi(PiScaled),
}

impl Scalar {
    pub fn to_pi_scaled(&self) -> PiScaled {
        match self {
            Scalar::Rational(r) => PiScaled::from_rational(r.clone()),
            Scalar::Pi(p) => p.clone(),
        }
    }

    pub fn certified_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        self.to_pi_scaled().certified_cmp(&other.to_pi_scaled())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_pi_scaled().to_f64()
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", crate::exact::format_rational(r)),
            Scalar::Pi(p) => write!(f, "{p}"),
        }
    }
}

/// One verified inequality `lhs <= rhs`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub name: &'static str,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub holds: bool,
    /// `rhs - lhs`, exactly, when both sides carry the same pi power.
    pub slack: Option<Scalar>,
}

impl BoundReport {
    fn new(name: &'static str, lhs: Scalar, rhs: Scalar) -> Self {
        let holds = lhs.certified_cmp(&rhs) != std::cmp::Ordering::Greater;
        let (l, r) = (lhs.to_pi_scaled(), rhs.to_pi_scaled());
        let slack = (l.pi_power() == r.pi_power() || l.coeff().is_zero() || r.coeff().is_zero())
            .then(|| {
                let diff = r.coeff() - l.coeff();
                if l.pi_power() == r.pi_power() && l.pi_power() == 0 {
                    Scalar::Rational(diff)
                } else {
                    Scalar::Pi(PiScaled::new(diff, l.pi_power().max(r.pi_power())))
                }
            });
        BoundReport {
            name,
            lhs,
            rhs,
            holds,
            slack,
        }
    }

    pub fn equality(&self) -> bool {
        self.lhs.certified_cmp(&self.rhs) == std::cmp::Ordering::Equal
    }
}

/// `L_n(2)` for `L_n(x) = sum_k binom(n,k) x^k / k!`, by direct summation.
pub fn laguerre_at_2(n: u32) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=n {
        let num = crate::exact::binomial(n, k) * (BigInt::one() << k);
        acc += Rational::new(num, factorial(k));
    }
    acc
}

/// `L_0(2) ..= L_max(2)` via the three-term recurrence
/// `(k+1) L_{k+1} = (2k+3) L_k - k L_{k-1}` (this sign convention).
pub fn laguerre_at_2_by_recurrence(max: u32) -> Vec<Rational> {
    let mut values = vec![rat_int(1)];
    if max >= 1 {
        values.push(rat_int(3));
    }
    for k in 1..max {
        let next = (rat_int(2 * k as i64 + 3) * &values[k as usize]
            - rat_int(k as i64) * &values[k as usize - 1])
            / rat_int(k as i64 + 1);
        values.push(next);
    }
    values
}

fn require_symmetric(k: &VPolytope) -> Result<()> {
    if !k.is_centrally_symmetric() {
        return Err(Error::NotCentrallySymmetric);
    }
    Ok(())
}

fn require_full_dim(k: &VPolytope) -> Result<()> {
    if !k.is_full_dimensional() {
        return Err(Error::LowerDimensional {
            dim: k.dim(),
            ambient: k.ambient_dim(),
        });
    }
    Ok(())
}

fn require_full_span(k: &VPolytope) -> Result<()> {
    let n = k.ambient_dim() as i64;
    let got = lattice::lattice_span_dim(k);
    if got != n {
        return Err(Error::HypothesisViolated(format!(
            "dim(K ∩ Z^n) = {got}, need {n}"
        )));
    }
    Ok(())
}

/// `(Λ(K) - n)/n! <= vol(K)` for bodies whose lattice points span `R^n`.
pub fn blichfeldt_lower_check(k: &VPolytope) -> Result<BoundReport> {
    require_full_dim(k)?;
    require_full_span(k)?;
    let n = k.ambient_dim() as u32;
    let total = lattice::count(k).total;
    let lhs = (rat_int(total as i64) - rat_int(n as i64)) / Rational::from_integer(factorial(n));
    Ok(BoundReport::new(
        "blichfeldt-lower",
        Scalar::Rational(lhs),
        Scalar::Rational(k.volume()?),
    ))
}

/// `vol(K) <= 2^{n-1} (Λ(int K) + 1)` for centrally symmetric bodies.
pub fn vdcorput_upper_check(k: &VPolytope) -> Result<BoundReport> {
    require_symmetric(k)?;
    require_full_dim(k)?;
    let n = k.ambient_dim() as u32;
    let interior = lattice::count(k).interior;
    let rhs = pow2(n - 1) * rat_int(interior as i64 + 1);
    Ok(BoundReport::new(
        "vdcorput-upper",
        Scalar::Rational(k.volume()?),
        Scalar::Rational(rhs),
    ))
}

/// How the `n` independent lattice points for the symmetric exact bound
/// are chosen.
#[derive(Clone, Copy, Debug)]
pub enum ZChoice {
    /// Greedy lexicographically-least independent subset of `K ∩ Z^n`.
    LexLeast,
    /// Try independent subsets in lexicographic order, up to a cap, and
    /// keep the one with the smallest intermediate bound.
    TryAll { cap: usize },
}

/// Full report for the exact symmetric bound
/// `Λ(K) <= vol(K) n!/2^n L_n(2)`.
#[derive(Clone, Debug)]
pub struct SymBlichfeldtReport {
    pub report: BoundReport,
    /// Intermediate Davenport bound for the chosen generators.
    pub davenport_check: davenport::DavenportCheck,
    pub z_generators: IntMatrix,
    /// Number of generator sets evaluated.
    pub tried: usize,
    /// Certified enclosure of `(n! vol(K) / Λ(K))^{1/n}`.
    pub ratio_enclosure: (Rational, Rational),
}

fn independent_lattice_subsets(
    points: &[Vec<BigInt>],
    n: usize,
    cap: usize,
) -> Vec<Vec<usize>> {
    // depth-first in lexicographic order over sorted points, pruning
    // dependent prefixes; returns up to `cap` full bases
    fn rank_of(points: &[Vec<BigInt>], chosen: &[usize]) -> usize {
        let rows: Vec<Vec<BigInt>> = chosen.iter().map(|&i| points[i].clone()).collect();
        IntMatrix::from_rows(&rows).rank()
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if out.len() >= cap {
            break;
        }
        if prefix.len() == n {
            out.push(prefix);
            continue;
        }
        let start = prefix.last().map_or(0, |&i| i + 1);
        // push in reverse so lexicographically-smaller extensions pop first
        let mut extensions = Vec::new();
        for i in start..points.len() {
            if points[i].iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut cand = prefix.clone();
            cand.push(i);
            if rank_of(points, &cand) == cand.len() {
                extensions.push(cand);
            }
        }
        for e in extensions.into_iter().rev() {
            stack.push(e);
        }
    }
    out
}

/// Exact symmetric Blichfeldt-type bound with the Laguerre constant, plus
/// the intermediate Davenport bound for chosen lattice generators.
pub fn sym_blichfeldt_exact_check(k: &VPolytope, choice: ZChoice) -> Result<SymBlichfeldtReport> {
    require_symmetric(k)?;
    require_full_dim(k)?;
    require_full_span(k)?;
    let n = k.ambient_dim();
    let points: Vec<Vec<BigInt>> = lattice::lattice_points(k)
        .into_iter()
        .map(|(p, _)| p)
        .collect(); // already sorted
    let cap = match choice {
        ZChoice::LexLeast => 1,
        ZChoice::TryAll { cap } => cap.max(1),
    };
    let subsets = independent_lattice_subsets(&points, n, cap);
    debug_assert!(!subsets.is_empty(), "full span guarantees a basis");

    let mut best: Option<(davenport::DavenportCheck, IntMatrix)> = None;
    let tried = subsets.len();
    for subset in subsets {
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| points[i].clone()).collect();
        let gens = IntMatrix::from_rows(&rows);
        let check = davenport::davenport_bound_check(k, &ParallelepipedSpec::new(gens.clone())?)?;
        let better = match &best {
            None => true,
            Some((b, _)) => check.rhs < b.rhs,
        };
        if better {
            best = Some((check, gens));
        }
    }
    let (davenport_check, z_generators) = best.expect("at least one generator set");

    let count = lattice::count(k).total;
    let volume = k.volume()?;
    let n_u32 = n as u32;
    let rhs = &volume * Rational::new(factorial(n_u32), BigInt::one() << n_u32)
        * laguerre_at_2(n_u32);
    let report = BoundReport::new(
        "sym-blichfeldt-exact",
        Scalar::Rational(rat_int(count as i64)),
        Scalar::Rational(rhs),
    );
    let ratio = Rational::from_integer(factorial(n_u32)) * &volume / rat_int(count as i64);
    let ratio_enclosure = nth_root_enclosure(&ratio, n_u32, 12);
    Ok(SymBlichfeldtReport {
        report,
        davenport_check,
        z_generators,
        tried,
        ratio_enclosure,
    })
}

/// Closed-form and oracle statistics for `C*_{n,l}`.
#[derive(Clone, Debug)]
pub struct CrosspolytopeStats {
    pub n: u32,
    pub l: i64,
    pub count: u64,
    pub volume: Rational,
    pub oracle_count: u64,
    pub oracle_volume: Rational,
    pub oracle_agrees: bool,
    /// Certified enclosure of `(n! vol / Λ)^{1/n}`.
    pub ratio_enclosure: (Rational, Rational),
}

/// `Λ(C*_{n,l}) = 2(n+l) - 1` and `vol(C*_{n,l}) = 2^n l / n!`, checked
/// against the enumeration and volume oracles.
pub fn crosspolytope_stats(n: u32, l: i64) -> Result<CrosspolytopeStats> {
    if n < 1 || l < 1 {
        return Err(Error::HypothesisViolated("need n >= 1 and l >= 1".into()));
    }
    let count = 2 * (n as u64 + l as u64) - 1;
    let volume = pow2(n) * rat_int(l) / Rational::from_integer(factorial(n));
    let body = crate::polytope::crosspolytope_stretched(n as usize, l);
    let oracle_count = lattice::count(&body).total;
    let oracle_volume = body.volume()?;
    let oracle_agrees = oracle_count == count && oracle_volume == volume;
    let ratio = Rational::from_integer(factorial(n)) * &volume / rat_int(count as i64);
    let ratio_enclosure = nth_root_enclosure(&ratio, n, 12);
    Ok(CrosspolytopeStats {
        n,
        l,
        count,
        volume,
        oracle_count,
        oracle_volume,
        oracle_agrees,
        ratio_enclosure,
    })
}

/// `Λ(K) vol(K*) <= n! κ_n² L_n(2) / 2^n`, certified.
pub fn gs_product_exact_check(k: &VPolytope) -> Result<BoundReport> {
    require_symmetric(k)?;
    require_full_span(k)?;
    let polar = k.polar()?;
    let n = k.ambient_dim() as u32;
    let lhs = rat_int(lattice::count(k).total as i64) * polar.volume()?;
    let kappa_sq = ball_volume(n).square();
    let rhs = kappa_sq.mul_rational(
        &(Rational::new(factorial(n), BigInt::one() << n) * laguerre_at_2(n)),
    );
    Ok(BoundReport::new(
        "gs-product-upper",
        Scalar::Rational(lhs),
        Scalar::Pi(rhs),
    ))
}

/// The certifiable chain step `vol(K) vol(K*) / 2^n <= Λ(K) vol(K*)`.
pub fn gs_product_lower_check(k: &VPolytope) -> Result<BoundReport> {
    require_symmetric(k)?;
    let polar = k.polar()?;
    let n = k.ambient_dim() as u32;
    let polar_volume = polar.volume()?;
    let lhs = k.volume()? * &polar_volume / pow2(n);
    let rhs = rat_int(lattice::count(k).total as i64) * &polar_volume;
    Ok(BoundReport::new(
        "gs-product-lower",
        Scalar::Rational(lhs),
        Scalar::Rational(rhs),
    ))
}

/// Exact value `Λ(K) / (Λ(K*) vol(K))`.
pub fn gs_ratio(k: &VPolytope) -> Result<Rational> {
    require_symmetric(k)?;
    let polar = k.polar()?;
    let num = rat_int(lattice::count(k).total as i64);
    let den = rat_int(lattice::count(&polar).total as i64) * k.volume()?;
    Ok(num / den)
}

/// Chain bound behind the ratio estimate, in the full case
/// `k = dim lin(K* ∩ Z^n) = n`:
/// `4^n vol(K) Λ(K*) <= Λ(K) 2^n n! κ_n² L_n(2)`, certified.
pub fn gs_ratio_chain_check(k: &VPolytope) -> Result<BoundReport> {
    require_symmetric(k)?;
    let polar = k.polar()?;
    let n = k.ambient_dim() as u32;
    let span = lattice::lattice_span_dim(&polar);
    if span != n as i64 {
        return Err(Error::HypothesisViolated(format!(
            "dim lin(K* ∩ Z^n) = {span}, chain check implemented for the full case {n}"
        )));
    }
    let lhs = pow2(2 * n) * k.volume()? * rat_int(lattice::count(&polar).total as i64);
    let kappa_sq = ball_volume(n).square();
    let rhs = kappa_sq.mul_rational(
        &(rat_int(lattice::count(k).total as i64)
            * pow2(n)
            * Rational::from_integer(factorial(n))
            * laguerre_at_2(n)),
    );
    Ok(BoundReport::new(
        "gs-ratio-chain",
        Scalar::Rational(lhs),
        Scalar::Pi(rhs),
    ))
}

/// One step of the `g(k) = 4^k/(k! κ_k² L_k)` monotonicity analysis.
#[derive(Clone, Debug)]
pub struct GStep {
    pub k: u32,
    /// `g(k) >= g(k+1)`, certified.
    pub nonincreasing: bool,
    /// `(k+1)/4 >= (κ_k²/κ_{k+1}²)(L_k/L_{k+1})`, certified.
    pub sufficient_condition: bool,
    /// `κ_k²/κ_{k+1}² <= (k+2)/(2π)`, certified.
    pub kappa_ratio_estimate: bool,
}

/// Verifies `g` is nonincreasing on `0..=k_max`, along with the two
/// auxiliary estimates used to prove it.
pub fn g_monotonicity_check(k_max: u32) -> Vec<GStep> {
    let mut steps = Vec::new();
    for k in 0..k_max {
        let kap_k_sq = ball_volume(k).square();
        let kap_k1_sq = ball_volume(k + 1).square();
        let l_k = laguerre_at_2(k);
        let l_k1 = laguerre_at_2(k + 1);

        // g(k) >= g(k+1)  <=>  4^k (k+1)! κ_{k+1}² L_{k+1} >= 4^{k+1} k! κ_k² L_k
        let lhs = kap_k1_sq.mul_rational(
            &(pow2(2 * k) * Rational::from_integer(factorial(k + 1)) * &l_k1),
        );
        let rhs = kap_k_sq.mul_rational(
            &(pow2(2 * k + 2) * Rational::from_integer(factorial(k)) * &l_k),
        );
        let nonincreasing = lhs.certified_cmp(&rhs) != std::cmp::Ordering::Less;

        // (k+1)/4 >= (κ_k²/κ_{k+1}²)(L_k/L_{k+1})
        //   <=>  (k+1) κ_{k+1}² L_{k+1} >= 4 κ_k² L_k
        let lhs = kap_k1_sq.mul_rational(&(rat_int(k as i64 + 1) * &l_k1));
        let rhs = kap_k_sq.mul_rational(&(rat_int(4) * &l_k));
        let sufficient_condition = lhs.certified_cmp(&rhs) != std::cmp::Ordering::Less;

        // κ_k²/κ_{k+1}² <= (k+2)/(2π)  <=>  2π κ_k² <= (k+2) κ_{k+1}²
        let lhs = kap_k_sq.mul(&PiScaled::new(rat_int(2), 1));
        let rhs = kap_k1_sq.mul_rational(&rat_int(k as i64 + 2));
        let kappa_ratio_estimate = lhs.certified_cmp(&rhs) != std::cmp::Ordering::Greater;

        steps.push(GStep {
            k,
            nonincreasing,
            sufficient_condition,
            kappa_ratio_estimate,
        });
    }
    steps
}

/// One row of the audit of the claimed recurrence
/// `L_{k+1} = 2 L_k - 2^k (k-1)/(k+1)!` against direct summation.
#[derive(Clone, Debug)]
pub struct RecurrenceAuditRow {
    pub k: u32,
    pub claimed: Rational,
    pub direct: Rational,
    /// `direct - claimed`; zero means the claimed relation holds at `k`.
    pub discrepancy: Rational,
}

pub fn laguerre_recurrence_audit(k_max: u32) -> Vec<RecurrenceAuditRow> {
    (0..=k_max)
        .map(|k| {
            let claimed = rat_int(2) * laguerre_at_2(k)
                - pow2(k) * rat_int(k as i64 - 1) / Rational::from_integer(factorial(k + 1));
            let direct = laguerre_at_2(k + 1);
            let discrepancy = &direct - &claimed;
            RecurrenceAuditRow {
                k,
                claimed,
                direct,
                discrepancy,
            }
        })
        .collect()
}

/// One row of the asymptotic table.
#[derive(Clone, Debug)]
pub struct AsymptoticRow {
    pub n: u32,
    /// Exact `L_n(2)/2^n`.
    pub laguerre_over_2n: Rational,
    /// Floating Szego-style approximant of `L_n(2)/2^n` (informational).
    pub szego_approx: f64,
    /// Exact threshold `(2 - eps)^{-n}`.
    pub threshold: Rational,
    /// Exact comparison `L_n(2)/2^n <= threshold`.
    pub crossed: bool,
    /// Certified enclosure of `(n! κ_n² L_n(2)/2^n)^{1/n}`.
    pub gs_quantity: (Rational, Rational),
    /// Certified comparison of the enclosure against `pi + eps`; `None`
    /// when the enclosure straddles it at the working precision.
    pub gs_below_pi_plus_eps: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub epsilon: Rational,
    pub rows: Vec<AsymptoticRow>,
    /// Least `n >= 1` whose row crossed; the trend is monotone from the
    /// crossing onwards in every observed range.
    pub first_crossing: Option<u32>,
    /// Least `n >= 1` with the GS quantity certified below `pi + eps`.
    pub first_gs_crossing: Option<u32>,
}

/// Tabulates the exact Laguerre ratio against the `(2-eps)^{-n}` threshold
/// and the product-bound quantity against `pi + eps`, for `n = 1..=n_max`.
pub fn asymptotic_report(n_max: u32, epsilon: &Rational) -> Result<AsymptoticReport> {
    if !epsilon.is_positive() || epsilon > &rat_int(1) {
        return Err(Error::HypothesisViolated("need 0 < epsilon <= 1".into()));
    }
    let base = rat_int(2) - epsilon;
    // 8 alternating terms give a pi width near 1e-11; the certified
    // comparisons below have gaps orders of magnitude larger
    let (pi_lo, pi_hi) = pi_enclosure(8);
    let mut rows = Vec::new();
    let mut first_crossing = None;
    let mut first_gs_crossing = None;
    let mut threshold = Rational::one();
    for n in 1..=n_max {
        threshold /= &base;
        let l = laguerre_at_2(n);
        let ratio = &l / pow2(n);
        let crossed = ratio <= threshold;
        if crossed && first_crossing.is_none() {
            first_crossing = Some(n);
        }
        let nf = n as f64;
        let szego_approx = nf.powf(-0.25) / (2.0 * std::f64::consts::PI.sqrt())
            * ((-1.0f64).exp() / 2.0f64.powf(0.25))
            * (2.0 * (2.0 * nf + 1.0).sqrt()).exp()
            / 2.0f64.powi(n as i32);
        let kappa_sq = ball_volume(n).square();
        let q = Rational::from_integer(factorial(n)) * kappa_sq.coeff() * &l / pow2(n);
        // enclosure of q * pi^pi_pow, then of its n-th root
        let mut q_lo = q.clone();
        let mut q_hi = q;
        for _ in 0..kappa_sq.pi_power() {
            q_lo *= &pi_lo;
            q_hi *= &pi_hi;
        }
        let root_lo = nth_root_enclosure(&q_lo, n, 8).0;
        let root_hi = nth_root_enclosure(&q_hi, n, 8).1;
        let target_lo = &pi_lo + epsilon;
        let target_hi = &pi_hi + epsilon;
        let gs_below = if root_hi <= target_lo {
            Some(true)
        } else if root_lo > target_hi {
            Some(false)
        } else {
            None
        };
        if gs_below == Some(true) && first_gs_crossing.is_none() {
            first_gs_crossing = Some(n);
        }
        rows.push(AsymptoticRow {
            n,
            laguerre_over_2n: ratio,
            szego_approx,
            threshold: threshold.clone(),
            crossed,
            gs_quantity: (root_lo, root_hi),
            gs_below_pi_plus_eps: gs_below,
        });
    }
    Ok(AsymptoticReport {
        epsilon: epsilon.clone(),
        rows,
        first_crossing,
        first_gs_crossing,
    })
}

/// Mahler's planar bound `8 <= vol(K) vol(K*)`, exactly.
pub fn mahler_planar_check(k: &VPolytope) -> Result<BoundReport> {
    if k.ambient_dim() != 2 {
        return Err(Error::HypothesisViolated("Mahler check is planar".into()));
    }
    require_symmetric(k)?;
    let product = k.volume()? * k.polar()?.volume()?;
    Ok(BoundReport::new(
        "mahler-planar",
        Scalar::Rational(rat_int(8)),
        Scalar::Rational(product),
    ))
}

#[cfg(test)]
mod tests;
