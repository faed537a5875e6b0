//! Grid evaluation over `(q, ν)` and aggregate checks on the result.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{abg_from_params, coherence_closed_form, coherence_numeric, ModelParams};

/// Rectangular `(q, ν)` grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub q_steps: usize,
    pub nu_min: f64,
    pub nu_max: f64,
    pub nu_steps: usize,
    /// When false, samples sit strictly inside each interval.
    pub include_endpoints: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self::square(101)
    }
}

impl SweepSpec {
    /// `n × n` grid over `[0, 1] × [0, 1]`, endpoints included.
    pub fn square(n: usize) -> Self {
        Self {
            q_min: 0.0,
            q_max: 1.0,
            q_steps: n,
            nu_min: 0.0,
            nu_max: 1.0,
            nu_steps: n,
            include_endpoints: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Domain(msg));
        if !(0.0 <= self.q_min && self.q_min <= self.q_max && self.q_max <= 1.0) {
            return fail(format!(
                "q range [{}, {}] must satisfy 0 <= q_min <= q_max <= 1",
                self.q_min, self.q_max
            ));
        }
        if !(0.0 <= self.nu_min && self.nu_min <= self.nu_max && self.nu_max.is_finite()) {
            return fail(format!(
                "nu range [{}, {}] must satisfy 0 <= nu_min <= nu_max < inf",
                self.nu_min, self.nu_max
            ));
        }
        if self.q_steps == 0 || self.nu_steps == 0 {
            return fail("step counts must be at least 1".into());
        }
        Ok(())
    }

    pub fn q_values(&self) -> Vec<f64> {
        axis(self.q_min, self.q_max, self.q_steps, self.include_endpoints)
    }

    pub fn nu_values(&self) -> Vec<f64> {
        axis(
            self.nu_min,
            self.nu_max,
            self.nu_steps,
            self.include_endpoints,
        )
    }
}

fn axis(lo: f64, hi: f64, steps: usize, include_endpoints: bool) -> Vec<f64> {
    if include_endpoints {
        if steps == 1 {
            return vec![lo];
        }
        let width = hi - lo;
        let last = (steps - 1) as f64;
        (0..steps)
            .map(|i| {
                if i + 1 == steps {
                    hi
                } else {
                    lo + width * i as f64 / last
                }
            })
            .collect()
    } else {
        let width = hi - lo;
        let cells = (steps + 1) as f64;
        (1..=steps).map(|i| lo + width * i as f64 / cells).collect()
    }
}

/// One evaluated grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub q: f64,
    pub nu: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c_total: f64,
    pub c_collective: f64,
    pub c_localized: f64,
    pub triangle_slack: f64,
    /// Largest disagreement between the closed-form and matrix paths.
    pub path_gap: f64,
}

/// Grid points skipped because the model has no unique value there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkippedPoint {
    pub q: f64,
    pub nu: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sweep {
    pub records: Vec<SweepRecord>,
    pub skipped: Vec<SkippedPoint>,
}

pub fn evaluate_point(q: f64, nu: f64) -> Result<SweepRecord> {
    let params = ModelParams::new(q, nu)?;
    let pop = abg_from_params(&params)?;
    let closed = coherence_closed_form(&params)?;
    let numeric = coherence_numeric(&params)?;
    Ok(SweepRecord {
        q,
        nu,
        alpha: pop.alpha,
        beta: pop.beta,
        gamma: pop.gamma,
        c_total: closed.c_total,
        c_collective: closed.c_collective,
        c_localized: closed.c_localized,
        triangle_slack: closed.triangle_slack,
        path_gap: closed.max_gap(&numeric),
    })
}

/// Evaluates the grid row-major, `q` outer and `ν` inner, both ascending.
/// Points run in parallel; the output order does not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Sweep> {
    spec.validate()?;
    let nus = spec.nu_values();
    let points: Vec<(f64, f64)> = spec
        .q_values()
        .into_iter()
        .flat_map(|q| nus.iter().map(move |&nu| (q, nu)))
        .collect();

    let evaluated: Vec<Result<Option<SweepRecord>>> = points
        .par_iter()
        .map(|&(q, nu)| match evaluate_point(q, nu) {
            Ok(r) => Ok(Some(r)),
            Err(Error::DegenerateLimit) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();

    let mut sweep = Sweep::default();
    for (&(q, nu), outcome) in points.iter().zip(evaluated) {
        match outcome? {
            Some(r) => sweep.records.push(r),
            None => sweep.skipped.push(SkippedPoint { q, nu }),
        }
    }
    Ok(sweep)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub points_checked: usize,
    pub points_skipped: usize,
    pub max_triangle_violation: f64,
    pub max_path_gap: f64,
    pub min_c_total: f64,
    /// `(q, ν)` where `min_c_total` occurs.
    pub argmin_c_total: (f64, f64),
    /// Fraction of `q` rows along which `C_T` is non-increasing in `ν`.
    pub monotonic_fraction_in_nu: f64,
    /// Fraction of `ν` columns along which `C_T` is non-increasing in `q`.
    pub monotonic_fraction_in_q: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Runs the sweep and aggregates it. `pass` requires both the triangle
/// inequality and path agreement to hold within `tol` everywhere.
pub fn verify_grid(spec: &SweepSpec, tol: f64) -> Result<VerificationReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let sweep = run_sweep(spec)?;
    Ok(summarize(spec, &sweep, tol))
}

pub fn summarize(spec: &SweepSpec, sweep: &Sweep, tol: f64) -> VerificationReport {
    let mut max_violation: f64 = 0.0;
    let mut max_gap: f64 = 0.0;
    let mut min_ct = f64::INFINITY;
    let mut argmin = (f64::NAN, f64::NAN);
    for r in &sweep.records {
        max_violation = max_violation.max(-r.triangle_slack);
        max_gap = max_gap.max(r.path_gap);
        if r.c_total < min_ct {
            min_ct = r.c_total;
            argmin = (r.q, r.nu);
        }
    }

    // records are row-major with q outer; rebuild the lattice, leaving holes
    // where points were skipped
    let (qs, nus) = (spec.q_values(), spec.nu_values());
    let mut lattice = vec![vec![None; nus.len()]; qs.len()];
    let mut it = sweep.records.iter().peekable();
    for (i, &q) in qs.iter().enumerate() {
        for (j, &nu) in nus.iter().enumerate() {
            if let Some(r) = it.next_if(|r| r.q == q && r.nu == nu) {
                lattice[i][j] = Some(r.c_total);
            }
        }
    }
    let rows: Vec<Vec<f64>> = lattice
        .iter()
        .map(|row| row.iter().flatten().copied().collect())
        .collect();
    let cols: Vec<Vec<f64>> = (0..nus.len())
        .map(|j| lattice.iter().filter_map(|row| row[j]).collect())
        .collect();

    VerificationReport {
        points_checked: sweep.records.len(),
        points_skipped: sweep.skipped.len(),
        max_triangle_violation: max_violation,
        max_path_gap: max_gap,
        min_c_total: min_ct,
        argmin_c_total: argmin,
        monotonic_fraction_in_nu: monotone_fraction(&rows, tol),
        monotonic_fraction_in_q: monotone_fraction(&cols, tol),
        tolerance: tol,
        pass: max_violation <= tol && max_gap <= tol,
    }
}

/// Fraction of sequences that never rise by more than `tol`.
fn monotone_fraction(lines: &[Vec<f64>], tol: f64) -> f64 {
    if lines.is_empty() {
        return f64::NAN;
    }
    let good = lines
        .iter()
        .filter(|l| l.windows(2).all(|w| w[1] <= w[0] + tol))
        .count();
    good as f64 / lines.len() as f64
}

/// Width below which the golden-section window is considered converged.
pub const GOLDEN_WINDOW: f64 = 1e-6;

/// Minimizer of `C_T(q)` at fixed `ν` on `[q_lo, q_hi]`, by golden-section
/// search. Returns `(q*, C_T(q*))`.
pub fn find_min_c_total(nu: f64, q_lo: f64, q_hi: f64) -> Result<(f64, f64)> {
    if !(0.0 <= q_lo && q_lo < q_hi && q_hi <= 1.0) {
        return Err(Error::Domain(format!(
            "bracket [{q_lo}, {q_hi}] must satisfy 0 <= q_lo < q_hi <= 1"
        )));
    }
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::Domain(format!(
            "nu = {nu} must be finite and non-negative"
        )));
    }
    let c_total =
        |q: f64| -> Result<f64> { Ok(coherence_closed_form(&ModelParams::new(q, nu)?)?.c_total) };

    if q_hi - q_lo < GOLDEN_WINDOW {
        let (f_lo, f_hi) = (c_total(q_lo)?, c_total(q_hi)?);
        return Ok(if f_hi < f_lo {
            (q_hi, f_hi)
        } else {
            (q_lo, f_lo)
        });
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (q_lo, q_hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = c_total(x1)?;
    let mut f2 = c_total(x2)?;
    while b - a >= GOLDEN_WINDOW {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = c_total(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = c_total(x2)?;
        }
    }
    let (q_best, f_best) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    Ok((q_best, f_best))
}
