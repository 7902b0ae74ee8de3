//! Independent floating-point oracles.  Everything here deliberately
//! avoids the exact-arithmetic code paths: positivity via numeric
//! eigenvalues, Taylor coefficients via Cauchy-integral quadrature,
//! Pick membership via imaginary-part sampling on an upper-half-plane
//! grid.

use crate::arith::{rat_to_f64, CRat};
use crate::mat::RatMat;
use crate::rational::RationalFunction;
use crate::series::ProblemData;
use crate::solver::{self, Solution, VerdictStatus};
use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug)]
pub struct ToleranceConfig {
    /// Relative eigenvalue floor for numeric positivity.
    pub psd_eig_tol: f64,
    /// Relative tolerance for quadrature-recovered Taylor coefficients.
    pub taylor_rel_tol: f64,
    /// Allowed numeric dip of im f below zero on the sample grid.
    pub im_floor: f64,
    /// Points per quadrature circle.
    pub quad_points: usize,
    /// Fallback quadrature radius when no pole information is available.
    pub fallback_radius: f64,
    /// Upper-half-plane sample count for Pick membership.
    pub pick_grid: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            psd_eig_tol: 1e-9,
            taylor_rel_tol: 1e-6,
            im_floor: -1e-9,
            quad_points: 2048,
            fallback_radius: 1e-2,
            pick_grid: 10_000,
        }
    }
}

/// Numeric PSD check: smallest eigenvalue of the float image of `h`
/// must be >= -tol * scale.
pub fn psd_oracle(h: &RatMat, tol: &ToleranceConfig) -> bool {
    if h.rows == 0 {
        return true;
    }
    let m = h.to_f64();
    let scale = matrix_scale(&m);
    min_eigenvalue(&m) >= -tol.psd_eig_tol * scale
}

/// Numeric positive-definiteness check.
pub fn pd_oracle(h: &RatMat, tol: &ToleranceConfig) -> bool {
    if h.rows == 0 {
        return true;
    }
    let m = h.to_f64();
    let scale = matrix_scale(&m);
    min_eigenvalue(&m) > tol.psd_eig_tol * scale
}

/// Numeric SE-minimality check: H is PSD but singular in a way that
/// pins the SE corner, i.e. the last basis vector is not in the range
/// of H.  Range membership is decided by the SVD least-squares
/// residual, which is independent of the exact eliminator.
pub fn se_minimal_oracle(h: &RatMat, tol: &ToleranceConfig) -> bool {
    if h.rows == 0 || !psd_oracle(h, tol) || pd_oracle(h, tol) {
        return false;
    }
    let m = h.to_f64();
    let scale = matrix_scale(&m);
    let last = h.rows - 1;
    let mut e_m = nalgebra::DVector::zeros(h.rows);
    e_m[last] = 1.0;
    let svd = nalgebra::SVD::new(m.clone(), true, true);
    let sol = svd.solve(&e_m, tol.psd_eig_tol * scale).unwrap();
    let residual = (&m * sol - e_m).norm();
    residual > 1e-6
}

/// Direct corner perturbation probe: is H - eps e_m e_m^T still PSD?
/// Used to demonstrate the SE-corner threshold on curated matrices.
pub fn corner_eps_probe(h: &RatMat, eps: f64, tol: &ToleranceConfig) -> bool {
    if h.rows == 0 {
        return true;
    }
    let mut m = h.to_f64();
    let scale = matrix_scale(&m);
    let last = h.rows - 1;
    m[(last, last)] -= eps;
    min_eigenvalue(&m) >= -tol.psd_eig_tol * scale
}

fn matrix_scale(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0)
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let sym = nalgebra::SymmetricEigen::new(m.clone());
    sym.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Recovers Laurent coefficients a^{-1}, a^0..a^n of `f` at `x` by
/// trapezoidal quadrature of the Cauchy integral on a circle of the
/// given radius.
pub fn laurent_oracle(
    f: &dyn Fn(Complex64) -> Complex64,
    x: f64,
    n: usize,
    radius: f64,
    points: usize,
) -> (Complex64, Vec<Complex64>) {
    let mut sums = vec![Complex64::ZERO; n + 2]; // index k holds a^{k-1}
    for j in 0..points {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (points as f64);
        let w = Complex64::from_polar(radius, theta);
        let fv = f(Complex64::new(x, 0.0) + w);
        let rot = Complex64::from_polar(1.0, -theta);
        // factor for k = -1 is w itself
        let mut factor = w;
        for s in sums.iter_mut() {
            *s += fv * factor;
            factor *= rot;
        }
    }
    let scale = 1.0 / points as f64;
    let residue = sums[0] * scale;
    let coeffs = sums[1..]
        .iter()
        .enumerate()
        .map(|(k, s)| s * scale / radius.powi(k as i32 + 1))
        .collect();
    (residue, coeffs)
}

/// Taylor coefficients a^0..a^n (no pole part).
pub fn taylor_oracle(
    f: &dyn Fn(Complex64) -> Complex64,
    x: f64,
    n: usize,
    radius: f64,
    points: usize,
) -> Vec<Complex64> {
    laurent_oracle(f, x, n, radius, points).1
}

/// Roots of a real polynomial via the companion matrix.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = match coeffs.iter().rposition(|c| *c != 0.0) {
        Some(d) if d >= 1 => d,
        _ => return vec![],
    };
    let lead = coeffs[deg];
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion.complex_eigenvalues().iter().cloned().collect()
}

/// Quadrature radius for a rational solution: half the distance from x
/// to the nearest denominator root (and to the pole node, if any),
/// with the configured fallback when there is nothing to avoid.
pub fn quadrature_radius(rf: &RationalFunction, x: f64, tol: &ToleranceConfig) -> f64 {
    let den: Vec<f64> = rf.den.coeffs.iter().map(rat_to_f64).collect();
    let mut nearest = f64::INFINITY;
    for r in poly_roots(&den) {
        let d = (r - Complex64::new(x, 0.0)).norm();
        if d > 1e-12 {
            nearest = nearest.min(d);
        }
    }
    if nearest.is_finite() {
        (nearest / 2.0).min(tol.fallback_radius)
    } else {
        tol.fallback_radius
    }
}

/// Deterministic log-spaced grid on the open upper half-plane around x.
pub fn upper_half_grid(x: f64, count: usize) -> Vec<Complex64> {
    let n_im = 50usize;
    let n_re = (count / n_im).max(1);
    let mut pts = Vec::with_capacity(n_re * n_im);
    for i in 0..n_re {
        // symmetric log-spaced real offsets in [-1e3, 1e3], plus 0
        let t = i as f64 / (n_re.saturating_sub(1).max(1)) as f64; // 0..1
        let off = if n_re == 1 {
            0.0
        } else {
            let u = 2.0 * t - 1.0; // -1..1
            u.signum() * (10f64.powf(7.0 * u.abs() - 4.0) - 1e-4)
        };
        for j in 0..n_im {
            let s = j as f64 / (n_im - 1) as f64;
            let im = 10f64.powf(6.0 * s - 3.0); // 1e-3 .. 1e3
            pts.push(Complex64::new(x + off, im));
        }
    }
    pts
}

/// Minimum of im f over the sample grid.
pub fn pick_min_im(f: &dyn Fn(Complex64) -> Complex64, x: f64, count: usize) -> f64 {
    upper_half_grid(x, count)
        .into_iter()
        .map(|z| f(z).im)
        .fold(f64::INFINITY, f64::min)
}

fn rel_err(approx: Complex64, exact: Complex64) -> f64 {
    (approx - exact).norm() / exact.norm().max(1.0)
}

/// Maximum relative error between quadrature-recovered coefficients of
/// `f` and the prescribed data (residue included when prescribed).
pub fn taylor_max_rel_err(
    f: &dyn Fn(Complex64) -> Complex64,
    p: &ProblemData,
    radius: f64,
    tol: &ToleranceConfig,
) -> f64 {
    let x = rat_to_f64(&p.x);
    let (residue, coeffs) = laurent_oracle(f, x, p.n(), radius, tol.quad_points);
    let mut worst = 0.0f64;
    if let Some(r) = &p.a_neg1 {
        worst = worst.max(rel_err(residue, Complex64::new(rat_to_f64(r), 0.0)));
    } else {
        worst = worst.max(residue.norm());
    }
    for (k, target) in p.a.iter().enumerate() {
        worst = worst.max(rel_err(coeffs[k], target.to_f64()));
    }
    worst
}

/// Cross-check report for a solved problem, serialized by the CLI.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Report {
    pub verdict_status: String,
    pub oracle_psd: Option<bool>,
    pub oracle_se_minimal: Option<bool>,
    pub classification_agrees: Option<bool>,
    pub taylor_max_rel_err: Option<f64>,
    pub taylor_ok: Option<bool>,
    pub min_im: Option<f64>,
    pub pick_ok: Option<bool>,
    pub ok: bool,
}

/// Runs the exact solver and every applicable oracle on the problem.
pub fn verify_problem(p: &ProblemData, tol: &ToleranceConfig) -> crate::Result<Report> {
    let verdict = solver::check_solvable(p)?;
    let status = format!("{:?}", verdict.status);
    let (mut oracle_psd, mut oracle_se, mut agrees) = (None, None, None);
    if verdict.m > 0 {
        let (_, analytic) = crate::series::split_pole(p);
        if let Ok(h) = crate::hankel::build_hankel(&analytic.a, verdict.m) {
            let psd = psd_oracle(&h.entries, tol);
            let se = se_minimal_oracle(&h.entries, tol);
            let pd = pd_oracle(&h.entries, tol);
            let expect = match verdict.classification.tag {
                crate::hankel::ClassTag::PositiveDefinite => pd,
                crate::hankel::ClassTag::SEMinimallyPositive => se,
                crate::hankel::ClassTag::PositiveSingularNotSEMinimal => psd && !pd && !se,
                crate::hankel::ClassTag::NotPositive => !psd,
            };
            oracle_psd = Some(psd);
            oracle_se = Some(se);
            agrees = Some(expect);
        }
    }

    let (mut taylor_err, mut taylor_ok, mut min_im, mut pick_ok) = (None, None, None, None);
    if verdict.status != VerdictStatus::Unsolvable {
        let solution = solver::solve(p, &solver::Tail::Constant(CRat::zero()))?;
        let x = rat_to_f64(&p.x);
        let radius = match &solution {
            Solution::Exact(rf) => quadrature_radius(rf, x, tol),
            Solution::Numeric { .. } => tol.fallback_radius,
        };
        let eval = |z: Complex64| solution.eval(z);
        let err = taylor_max_rel_err(&eval, p, radius, tol);
        taylor_ok = Some(err <= tol.taylor_rel_tol);
        taylor_err = Some(err);
        let im = pick_min_im(&eval, x, tol.pick_grid);
        pick_ok = Some(im >= tol.im_floor);
        min_im = Some(im);
    }

    let ok = agrees.unwrap_or(true) && taylor_ok.unwrap_or(true) && pick_ok.unwrap_or(true);
    Ok(Report {
        verdict_status: status,
        oracle_psd,
        oracle_se_minimal: oracle_se,
        classification_agrees: agrees,
        taylor_max_rel_err: taylor_err,
        taylor_ok,
        min_im,
        pick_ok,
        ok,
    })
}

/// Convenience: float image of exact targets.
pub fn targets_f64(a: &[CRat]) -> Vec<Complex64> {
    a.iter().map(CRat::to_f64).collect()
}
