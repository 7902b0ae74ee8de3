//! Boundary-to-interior construction: when im a^0 > 0 the problem is
//! transported to the Schur class on the disc, solved there by an
//! explicit polynomial interpolant, and transported back.
//!
//! The transport and all target jets are exact (coefficients in Q(i));
//! only the boundary-degree selection and the final evaluator are
//! numeric.

use crate::arith::{CRat, Rat};
use crate::series::{series_inv_trunc, series_mul_trunc, ProblemData};
use crate::solver::PickEval;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{One, Signed};
use std::sync::Arc;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Schur-class targets: a unimodular node tau and jet b^0..b^n with
/// |b^0| < 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurData {
    pub tau: CRat,
    pub b: Vec<CRat>,
}

/// The constructed Schur-class interpolant
/// phi = mb^{-1}( c_q (w - tau)^q Q(w) h_N(w) )
/// where mb is the disc automorphism moving b^0 to the origin.
#[derive(Clone, Debug)]
pub struct InteriorInterpolant {
    pub tau: CRat,
    pub b0: CRat,
    /// First nonzero reduced target index; 0 encodes the zero interpolant.
    pub q: usize,
    /// Leading reduced target c^q.
    pub c_q: CRat,
    /// Q coefficients in powers of (w - tau), lowest first.
    pub q_coeffs: Vec<CRat>,
    /// Exponent N in h_N.
    pub n_boundary: u32,
    /// Exponent m in h_N; set to n+1 so targets through order n survive.
    pub m_exp: u32,
    /// All reduced targets vanish: phi is the constant b^0.
    pub is_constant: bool,
}

/// Transports the half-plane problem to the disc: tau = (x-i)/(x+i)
/// and the jet of phi = M o f o Z at tau, where M(v) = (v-i)/(v+i) and
/// Z is the inverse Cayley map.  Exact in Q(i).
pub fn transport_to_disc(p: &ProblemData) -> Result<SchurData> {
    if !p.a[0].im.is_positive() {
        return Err(Error::NotInterior);
    }
    let n = p.n();
    let i = CRat::i();
    let x = CRat::from_real(p.x.clone());
    let tau = &(&x - &i) / &(&x + &i);

    // zeta(u) = Z(tau + u) - x as a series in u; Z(w) = i(1+w)/(1-w).
    // Numerator i(1+tau) + i u, denominator (1-tau) - u.
    let one_minus_tau = &CRat::one() - &tau;
    let inv_omt = one_minus_tau.inv();
    let mut zeta = vec![CRat::zero(); n + 1];
    // 1/((1-tau) - u) = sum_j u^j / (1-tau)^{j+1}
    let mut pw = inv_omt.clone();
    let a_const = &i * &(&CRat::one() + &tau);
    for j in 0..=n {
        // coefficient of u^j in (a_const + i u) * inv-series
        zeta[j] = &a_const * &pw;
        if j >= 1 {
            let mut pw_prev = inv_omt.clone();
            for _ in 0..j - 1 {
                pw_prev = &pw_prev * &inv_omt;
            }
            zeta[j] = &zeta[j] + &(&i * &pw_prev);
        }
        pw = &pw * &inv_omt;
    }
    zeta[0] = &zeta[0] - &x;
    if !zeta[0].is_zero() {
        return Err(Error::InternalInconsistency("Cayley transport misses the node".into()));
    }

    // F(u) = sum_k a^k zeta(u)^k by Horner.
    let mut f = vec![CRat::zero(); n + 1];
    f[0] = p.a[n].clone();
    for k in (0..n).rev() {
        f = series_mul_trunc(&f, &zeta, n);
        f[0] = &f[0] + &p.a[k];
    }

    // b = (F - i)/(F + i).
    let mut num = f.clone();
    num[0] = &num[0] - &i;
    let mut den = f;
    den[0] = &den[0] + &i;
    let b = series_mul_trunc(&num, &series_inv_trunc(&den, n), n);
    Ok(SchurData { tau, b })
}

/// Evaluates h_N(w) = 1 - (1 - ((tau + w)/(2 tau))^N)^m.
fn h_n_eval(tau: Complex64, w: Complex64, n_boundary: u32, m_exp: u32) -> Complex64 {
    let p = (tau + w) / (2.0 * tau);
    let one = Complex64::ONE;
    one - (one - p.powu(n_boundary)).powu(m_exp)
}

impl InteriorInterpolant {
    /// The raw (pre-Moebius) interpolant c_q (w-tau)^q Q(w) h_N(w).
    pub fn eval_raw(&self, w: Complex64) -> Complex64 {
        if self.is_constant {
            return Complex64::ZERO;
        }
        let tau = self.tau.to_f64();
        let u = w - tau;
        let mut q_val = Complex64::ZERO;
        for c in self.q_coeffs.iter().rev() {
            q_val = q_val * u + c.to_f64();
        }
        self.c_q.to_f64() * u.powu(self.q as u32) * q_val * h_n_eval(tau, w, self.n_boundary, self.m_exp)
    }

    /// The full Schur interpolant phi(w).
    pub fn eval(&self, w: Complex64) -> Complex64 {
        let v = self.eval_raw(w);
        let b0 = self.b0.to_f64();
        (v + b0) / (Complex64::ONE + b0.conj() * v)
    }

    /// Total polynomial degree of the raw interpolant.
    pub fn raw_degree(&self) -> usize {
        if self.is_constant {
            0
        } else {
            self.q
                + self.q_coeffs.len().saturating_sub(1)
                + (self.n_boundary as usize) * (self.m_exp as usize)
        }
    }
}

const N_MAX: u32 = 1 << 20;

/// Finds the smallest tested N for which the raw interpolant is
/// certified <= 1 in modulus on the unit circle: a grid scan padded by
/// the Bernstein derivative bound (|p'| <= deg(p) sup|p| on the circle).
pub fn select_n(
    tau: &CRat,
    c_q: &CRat,
    q: usize,
    q_coeffs: &[CRat],
    m_exp: u32,
) -> Result<u32> {
    let tau_f = tau.to_f64();
    let c_q_f = c_q.to_f64();
    let q_f: Vec<Complex64> = q_coeffs.iter().map(CRat::to_f64).collect();

    let mut n_boundary: u32 = 1;
    loop {
        let degree = q + q_f.len().saturating_sub(1) + (n_boundary as usize) * (m_exp as usize);
        // Enough grid points that the Bernstein pad is an eighth of the sup.
        let grid = 4096usize.max((8.0 * std::f64::consts::PI * degree as f64).ceil() as usize);
        let mut sup = 0.0f64;
        for k in 0..grid {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (grid as f64);
            let w = Complex64::from_polar(1.0, theta);
            let u = w - tau_f;
            let mut q_val = Complex64::ZERO;
            for c in q_f.iter().rev() {
                q_val = q_val * u + c;
            }
            let v = c_q_f * u.powu(q as u32) * q_val * h_n_eval(tau_f, w, n_boundary, m_exp);
            sup = sup.max(v.norm());
        }
        if sup * 8.0 / 7.0 <= 1.0 {
            return Ok(n_boundary);
        }
        if n_boundary >= N_MAX {
            return Err(Error::SelectionBudgetExceeded(N_MAX));
        }
        n_boundary = if n_boundary < 16 { n_boundary + 1 } else { n_boundary * 2 };
    }
}

/// Builds the Schur-class interpolant for the given disc data.
pub fn build_schur_interpolant(d: &SchurData) -> Result<InteriorInterpolant> {
    let n = d.b.len() - 1;
    let b0 = d.b[0].clone();
    if b0.norm_sqr() >= Rat::one() {
        return Err(Error::NotSchurData);
    }
    // Moebius jet reduction: c = (b - b0)/(1 - conj(b0) b), c^0 = 0.
    let mut num = d.b.clone();
    num[0] = &num[0] - &b0;
    let b0c = b0.conj();
    let mut den: Vec<CRat> = d.b.iter().map(|bk| -(&b0c * bk)).collect();
    den[0] = &den[0] + &CRat::one();
    let c = series_mul_trunc(&num, &series_inv_trunc(&den, n), n);

    let q = match c.iter().skip(1).position(|ck| !ck.is_zero()) {
        Some(pos) => pos + 1,
        None => {
            return Ok(InteriorInterpolant {
                tau: d.tau.clone(),
                b0,
                q: 0,
                c_q: CRat::zero(),
                q_coeffs: vec![],
                n_boundary: 1,
                m_exp: n as u32 + 1,
                is_constant: true,
            });
        }
    };
    let c_q = c[q].clone();
    let c_q_inv = c_q.inv();
    let q_coeffs: Vec<CRat> = (0..=n - q).map(|k| &c[q + k] * &c_q_inv).collect();
    let m_exp = n as u32 + 1;
    let n_boundary = select_n(&d.tau, &c_q, q, &q_coeffs, m_exp)?;
    Ok(InteriorInterpolant {
        tau: d.tau.clone(),
        b0,
        q,
        c_q,
        q_coeffs,
        n_boundary,
        m_exp,
        is_constant: false,
    })
}

/// Full pipeline: Pick-class evaluator interpolating the data of `p`
/// (which must have im a^0 > 0).
pub fn solve_interior(p: &ProblemData) -> Result<PickEval> {
    let sd = transport_to_disc(p)?;
    let interp = Arc::new(build_schur_interpolant(&sd)?);
    Ok(Arc::new(move |z: Complex64| {
        let w = (z - I) / (z + I);
        let v = interp.eval(w);
        I * (Complex64::ONE + v) / (Complex64::ONE - v)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn interior_problem(a0: CRat, rest: &[CRat]) -> ProblemData {
        let mut a = vec![a0];
        a.extend_from_slice(rest);
        ProblemData::new(rat(0), None, a)
    }

    #[test]
    fn cayley_center() {
        let p = interior_problem(CRat::i(), &[CRat::one()]);
        let sd = transport_to_disc(&p).unwrap();
        assert!(sd.b[0].is_zero());
        // tau = (0 - i)/(0 + i) = -1
        assert_eq!(sd.tau, CRat::from_int(-1));
    }

    #[test]
    fn cayley_value_map() {
        // a^0 = 2i maps to b^0 = (2i - i)/(2i + i) = 1/3.
        let p = interior_problem(CRat::new(rat(0), rat(2)), &[CRat::one()]);
        let sd = transport_to_disc(&p).unwrap();
        assert_eq!(sd.b[0], CRat::from_real(ratio(1, 3)));
    }

    #[test]
    fn rejects_boundary_value() {
        let p = interior_problem(CRat::one(), &[CRat::one()]);
        assert!(matches!(transport_to_disc(&p), Err(Error::NotInterior)));
    }

    #[test]
    fn zero_targets_constant_interpolant() {
        // f identically i transports to phi identically 0.
        let p = interior_problem(CRat::i(), &[CRat::zero(), CRat::zero()]);
        let sd = transport_to_disc(&p).unwrap();
        assert!(sd.b.iter().all(CRat::is_zero));
        let interp = build_schur_interpolant(&sd).unwrap();
        assert!(interp.is_constant);
        let w = Complex64::new(0.3, 0.2);
        assert!(interp.eval(w).norm() < 1e-15);
    }

    #[test]
    fn schur_bound_on_boundary_grid() {
        let p = interior_problem(CRat::i(), &[CRat::one(), CRat::from_real(ratio(1, 2))]);
        let sd = transport_to_disc(&p).unwrap();
        let interp = build_schur_interpolant(&sd).unwrap();
        for k in 0..4096 {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / 4096.0;
            let w = Complex64::from_polar(1.0, theta);
            assert!(interp.eval(w).norm() <= 1.0 + 1e-9, "|phi| > 1 at {theta}");
        }
    }

    #[test]
    fn h_n_properties() {
        // h_N(tau) = 1 and |h_N| <= 2^m + 1 on the circle.
        let tau = Complex64::from_polar(1.0, 0.7);
        for n_boundary in [1u32, 4, 32] {
            let m_exp = 3u32;
            assert!((h_n_eval(tau, tau, n_boundary, m_exp) - 1.0).norm() < 1e-12);
            let bound = 2f64.powi(m_exp as i32) + 1.0;
            let mut worst_far: f64 = 0.0;
            for k in 0..512 {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / 512.0;
                let w = tau * Complex64::from_polar(1.0, theta);
                let h = h_n_eval(tau, w, n_boundary, m_exp).norm();
                assert!(h <= bound + 1e-9);
                if theta > 1.0 && theta < 2.0 * std::f64::consts::PI - 1.0 {
                    worst_far = worst_far.max(h);
                }
            }
            // Decay away from tau as N grows: |p|^N <= cos(1/2)^32.
            if n_boundary == 32 {
                assert!(worst_far < 0.05, "h_N did not decay: {worst_far}");
            }
        }
    }
}
