//! Truncated power-series arithmetic at a real node: the index of the
//! first non-real target, coefficient-level Julia reduction and
//! augmentation, and splitting off a simple-pole term.
//!
//! Coefficients are complex rationals; a truncated series of order N
//! carries exactly N+1 coefficients and nothing is assumed about higher
//! ones.

use crate::arith::{CRat, Rat};
use crate::{Error, Result};
use num_traits::{Signed, Zero};

/// The data of the interpolation problem: node, optional residue and
/// Taylor targets a^0..a^n.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemData {
    pub x: Rat,
    /// Prescribed residue a^{-1}; `None` is equivalent to zero.
    pub a_neg1: Option<Rat>,
    pub a: Vec<CRat>,
}

impl ProblemData {
    pub fn new(x: Rat, a_neg1: Option<Rat>, a: Vec<CRat>) -> Self {
        assert!(!a.is_empty(), "need at least a^0");
        ProblemData { x, a_neg1, a }
    }

    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn residue(&self) -> Rat {
        self.a_neg1.clone().unwrap_or_else(Rat::zero)
    }

    /// True when every Taylor target (and the residue) is real.
    pub fn is_real(&self) -> bool {
        self.a.iter().all(CRat::is_real)
    }

    /// The real Taylor targets, or the index of the first non-real one.
    pub fn real_targets(&self) -> std::result::Result<Vec<Rat>, usize> {
        self.a
            .iter()
            .enumerate()
            .map(|(k, c)| c.as_real().cloned().ok_or(k))
            .collect()
    }
}

/// Least k >= 0 with im a^k != 0, or `None` when all targets are real.
pub fn rho(a: &[CRat]) -> Option<usize> {
    a.iter().position(|c| !c.im.is_zero())
}

/// Julia reduction at the coefficient level: given f_0..f_N with
/// f_1 != 0, returns the coefficients g_0..g_{N-2} of
/// g = -1/(f - f_0) + 1/(f_1 (z-x)), by forward substitution in the
/// triangular Toeplitz system relating the two series.
pub fn reduce_series(f: &[CRat]) -> Result<Vec<CRat>> {
    if f.len() < 3 {
        return Err(Error::InternalInconsistency(format!(
            "reduction needs order >= 2, got order {}",
            f.len() as isize - 1
        )));
    }
    let f1 = &f[1];
    if f1.is_zero() {
        return Err(Error::DegenerateDerivative);
    }
    let f1_inv = f1.inv();
    let mut g: Vec<CRat> = Vec::with_capacity(f.len() - 2);
    for i in 0..f.len() - 2 {
        // f_1 g_i = f_{i+2}/f_1 - sum_{k<i} f_{i+1-k} g_k
        let mut acc = &f[i + 2] * &f1_inv;
        for (k, gk) in g.iter().enumerate() {
            acc = &acc - &(&f[i + 1 - k] * gk);
        }
        g.push(&acc * &f1_inv);
    }
    Ok(g)
}

/// The inverse of reduction: Taylor coefficients through order
/// `g.len() + 1` of a0 + 1/(1/(a1 u) - g(u)) in u = z - x.
///
/// a1 > 0 is required; this is what keeps the Pick class closed under
/// augmentation.
pub fn augment_series(g: &[CRat], a0: &CRat, a1: &Rat) -> Result<Vec<CRat>> {
    if !a1.is_positive() {
        return Err(Error::InvalidAugmentation);
    }
    Ok(augment_series_unchecked(g, a0, &CRat::from_real(a1.clone())))
}

/// Augmentation without the sign check, used internally where a1 is an
/// arbitrary nonzero exact value.
pub fn augment_series_unchecked(g: &[CRat], a0: &CRat, a1: &CRat) -> Vec<CRat> {
    // 1/(1/(a1 u) - g(u)) = a1 u / (1 - a1 u g(u)): invert the series
    // 1 - a1 u g(u) and multiply by a1 u.  Input order N-2 restores
    // output order N, the round-trip contract with reduce_series.
    let order = g.len() + 1;
    // d(u) = 1 - a1 u g(u), needed through order-1 (a factor u follows).
    let mut d = vec![CRat::zero(); order];
    d[0] = CRat::one();
    for (j, gj) in g.iter().enumerate() {
        if j + 1 < order {
            d[j + 1] = -(a1 * gj);
        }
    }
    // e = 1/d by series inversion.
    let mut e = vec![CRat::zero(); order];
    e[0] = CRat::one();
    for j in 1..order {
        let mut acc = CRat::zero();
        for k in 1..=j {
            acc = &acc + &(&d[k] * &e[j - k]);
        }
        e[j] = -acc;
    }
    // f = a0 + a1 u e(u).
    let mut f = vec![CRat::zero(); order + 1];
    f[0] = a0.clone();
    for j in 0..order {
        f[j + 1] = a1 * &e[j];
    }
    f
}

/// Truncated product of two exact series.
pub fn series_mul_trunc(a: &[CRat], b: &[CRat], order: usize) -> Vec<CRat> {
    let mut out = vec![CRat::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

/// Truncated reciprocal of an exact series with nonzero constant term.
pub fn series_inv_trunc(a: &[CRat], order: usize) -> Vec<CRat> {
    assert!(!a[0].is_zero(), "series inversion needs a nonzero constant term");
    let a0_inv = a[0].inv();
    let mut out = vec![CRat::zero(); order + 1];
    out[0] = a0_inv.clone();
    for j in 1..=order {
        let mut acc = CRat::zero();
        for k in 1..=j {
            if let Some(ak) = a.get(k) {
                acc = &acc + &(ak * &out[j - k]);
            }
        }
        out[j] = -(&acc * &a0_inv);
    }
    out
}

/// Splits off the simple-pole term: returns the residue and the
/// pole-free remainder of the data.  Admissibility of the residue
/// (real, <= 0) is the caller's decision.
pub fn split_pole(p: &ProblemData) -> (Rat, ProblemData) {
    let residue = p.residue();
    let analytic = ProblemData { x: p.x.clone(), a_neg1: None, a: p.a.clone() };
    (residue, analytic)
}

pub fn real_series(v: &[Rat]) -> Vec<CRat> {
    v.iter().map(|r| CRat::from_real(r.clone())).collect()
}

/// Real-coefficient reduction; errors if a non-real coefficient appears.
pub fn reduce_series_real(f: &[Rat]) -> Result<Vec<Rat>> {
    let g = reduce_series(&real_series(f))?;
    g.iter()
        .map(|c| c.as_real().cloned().ok_or_else(|| {
            Error::InternalInconsistency("real reduction produced non-real coefficient".into())
        }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn cints(v: &[i64]) -> Vec<CRat> {
        v.iter().map(|&n| CRat::from_int(n)).collect()
    }

    #[test]
    fn rho_cases() {
        assert_eq!(rho(&cints(&[0, 1, 2, 3])), None);
        let mut a = cints(&[0, 1, 2]);
        a[0] = CRat::i();
        assert_eq!(rho(&a), Some(0));
        let mut a = cints(&[0, 1, 3]);
        a[2] = &a[2] + &CRat::i();
        assert_eq!(rho(&a), Some(2));
    }

    #[test]
    fn reduce_geometric() {
        // f(z) = z/(1-z) = z + z^2 + ... reduces to the constant 1.
        let g = reduce_series(&cints(&[0, 1, 1, 1, 1])).unwrap();
        assert_eq!(g, cints(&[1, 0, 0]));
    }

    #[test]
    fn reduce_identity_function() {
        let g = reduce_series(&cints(&[0, 1, 0, 0])).unwrap();
        assert_eq!(g, cints(&[0, 0]));
    }

    #[test]
    fn reduce_forward_substitution() {
        let g = reduce_series(&cints(&[0, 2, 4, 0])).unwrap();
        assert_eq!(g, vec![CRat::from_int(1), CRat::from_int(-2)]);
    }

    #[test]
    fn reduce_rejects_zero_derivative() {
        assert!(matches!(
            reduce_series(&cints(&[5, 0, 1, 2])),
            Err(Error::DegenerateDerivative)
        ));
    }

    #[test]
    fn augment_affine() {
        let f = augment_series(&cints(&[0, 0]), &CRat::from_int(5), &rat(2)).unwrap();
        assert_eq!(f, cints(&[5, 2, 0, 0]));
    }

    #[test]
    fn augment_inverse_of_reduce_example() {
        let f = augment_series(&cints(&[1, 0, 0]), &CRat::from_int(0), &rat(1)).unwrap();
        assert_eq!(f, cints(&[0, 1, 1, 1, 1]));
    }

    #[test]
    fn augment_rejects_nonpositive_derivative() {
        assert!(matches!(
            augment_series(&cints(&[0]), &CRat::zero(), &rat(0)),
            Err(Error::InvalidAugmentation)
        ));
        assert!(matches!(
            augment_series(&cints(&[0]), &CRat::zero(), &rat(-1)),
            Err(Error::InvalidAugmentation)
        ));
    }

    #[test]
    fn split_pole_passthrough() {
        let p = ProblemData::new(rat(0), Some(rat(-3)), cints(&[0, 1]));
        let (res, analytic) = split_pole(&p);
        assert_eq!(res, rat(-3));
        assert_eq!(analytic.a, p.a);
        assert_eq!(analytic.a_neg1, None);

        let p = ProblemData::new(rat(0), None, cints(&[0, 1]));
        assert_eq!(split_pole(&p).0, rat(0));
    }

    #[test]
    fn imaginary_part_transport() {
        // im g_{2m-2} = im a^{2m} / (a^1)^2 when rho(a) = 2m.
        // Take a = (0, 2, 1, 1, 3 + 5i): rho = 4, m = 2.
        let mut a = cints(&[0, 2, 1, 1, 3]);
        a[4] = &a[4] + &CRat::new(Rat::zero(), rat(5));
        let g = reduce_series(&a).unwrap();
        assert_eq!(g[2].im, ratio(5, 4));
        assert!(g[0].is_real() && g[1].is_real());
    }
}
