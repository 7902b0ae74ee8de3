//! Exact Hankel matrices H_m(a) = [a^{i+j-1}] and their tolerance-free
//! classification: positive definite, SE-minimally positive, positive
//! singular but not SE-minimal, or not positive.

use crate::arith::{CRat, Rat};
use crate::mat::RatMat;
use crate::{Error, Result};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix {
    pub m: usize,
    pub entries: RatMat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    PositiveDefinite,
    #[serde(rename = "se_minimally_positive")]
    SEMinimallyPositive,
    #[serde(rename = "positive_singular_not_se_minimal")]
    PositiveSingularNotSEMinimal,
    NotPositive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub tag: ClassTag,
    pub rank: usize,
    pub leading_minors: Vec<Rat>,
}

impl Classification {
    pub fn is_positive(&self) -> bool {
        !matches!(self.tag, ClassTag::NotPositive)
    }
}

/// Builds H_m(a) from the Taylor targets a^0..a^n; entries are
/// a^1..a^{2m-1}, all of which must be real.
pub fn build_hankel(a: &[CRat], m: usize) -> Result<HankelMatrix> {
    if m > 0 {
        assert!(a.len() > 2 * m - 1, "need targets through a^{}", 2 * m - 1);
    }
    let mut real = Vec::with_capacity(2 * m);
    for (k, c) in a.iter().enumerate().take(2 * m).skip(1) {
        match c.as_real() {
            Some(r) => real.push(r.clone()),
            None => return Err(Error::NonRealEntry(k)),
        }
    }
    let entries = RatMat::from_fn(m, m, |i, j| real[i + j].clone());
    Ok(HankelMatrix { m, entries })
}

/// Exact classification.  SE-minimality of a PSD singular matrix is
/// decided by range membership of the last basis vector: subtracting
/// eps from the SE corner preserves positivity for some eps > 0 iff
/// e_m lies in the column space of H.
pub fn classify(h: &HankelMatrix) -> Classification {
    let m = h.m;
    let minors = leading_minors(&h.entries);
    if m == 0 {
        // Empty matrix: positive definite by convention.
        return Classification { tag: ClassTag::PositiveDefinite, rank: 0, leading_minors: minors };
    }
    match h.entries.psd_rank() {
        None => Classification {
            tag: ClassTag::NotPositive,
            rank: h.entries.rank(),
            leading_minors: minors,
        },
        Some(rank) if rank == m => Classification {
            tag: ClassTag::PositiveDefinite,
            rank,
            leading_minors: minors,
        },
        Some(rank) => {
            let mut e_m = vec![Rat::zero(); m];
            e_m[m - 1] = Rat::one();
            let tag = if h.entries.contains_in_range(&e_m) {
                ClassTag::PositiveSingularNotSEMinimal
            } else {
                ClassTag::SEMinimallyPositive
            };
            Classification { tag, rank, leading_minors: minors }
        }
    }
}

/// Schur complement of the (1,1) entry: D - C a11^{-1} B.
pub fn schur_complement_11(h: &RatMat) -> Result<RatMat> {
    assert!(h.is_square() && h.rows >= 1);
    let a11 = h.at(0, 0);
    if a11.is_zero() {
        return Err(Error::SingularPivot);
    }
    let n = h.rows - 1;
    let inv = a11.recip();
    Ok(RatMat::from_fn(n, n, |i, j| {
        h.at(i + 1, j + 1) - &(h.at(i + 1, 0) * &inv * h.at(0, j + 1))
    }))
}

/// Exact rank over the rationals.
pub fn rank_exact(h: &RatMat) -> usize {
    h.rank()
}

/// Determinants D_1..D_m of the leading principal submatrices.
pub fn leading_minors(h: &RatMat) -> Vec<Rat> {
    (1..=h.rows).map(|k| h.leading(k).det()).collect()
}

/// The lower-triangular Toeplitz matrix with first column f_1..f_n,
/// as in the Hankel/Schur congruence identity.
pub fn toeplitz_lower(f: &[Rat], n: usize) -> RatMat {
    RatMat::from_fn(n, n, |i, j| {
        if i >= j {
            f[i - j].clone()
        } else {
            Rat::zero()
        }
    })
}

/// Hankel matrix directly from a real coefficient slice c_1..c_{2m-1}
/// (index 0 of the slice holds c_0, which is unused).
pub fn hankel_from_real(coeffs: &[Rat], m: usize) -> RatMat {
    RatMat::from_fn(m, m, |i, j| coeffs[i + j + 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cints(v: &[i64]) -> Vec<CRat> {
        v.iter().map(|&n| CRat::from_int(n)).collect()
    }

    fn m(rows: &[&[i64]]) -> RatMat {
        RatMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn build_from_targets() {
        // a^0 = 0, a^1..a^5 = (1,1,1,1,2): the Nevanlinna matrix.
        let h = build_hankel(&cints(&[0, 1, 1, 1, 1, 2]), 3).unwrap();
        assert_eq!(h.entries, m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 2]]));

        let h = build_hankel(&cints(&[0, 1, 0, 1]), 2).unwrap();
        assert_eq!(h.entries, m(&[&[1, 0], &[0, 1]]));

        let h = build_hankel(&cints(&[0, 7]), 1).unwrap();
        assert_eq!(h.entries, m(&[&[7]]));
    }

    #[test]
    fn build_rejects_non_real() {
        let mut a = cints(&[0, 1, 1]);
        a[1] = CRat::i();
        assert!(matches!(build_hankel(&a, 1), Err(Error::NonRealEntry(1))));
    }

    #[test]
    fn classify_cases() {
        let c = classify(&HankelMatrix { m: 3, entries: m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 2]]) });
        assert_eq!(c.tag, ClassTag::PositiveSingularNotSEMinimal);
        assert_eq!(c.rank, 2);
        assert_eq!(c.leading_minors, vec![rat(1), rat(0), rat(0)]);

        let c = classify(&HankelMatrix { m: 2, entries: m(&[&[1, 0], &[0, 0]]) });
        assert_eq!(c.tag, ClassTag::SEMinimallyPositive);
        assert_eq!(c.rank, 1);

        let c = classify(&HankelMatrix { m: 2, entries: m(&[&[1, 0], &[0, 1]]) });
        assert_eq!(c.tag, ClassTag::PositiveDefinite);
        assert_eq!(c.rank, 2);

        let c = classify(&HankelMatrix { m: 2, entries: m(&[&[0, 1], &[1, 0]]) });
        assert_eq!(c.tag, ClassTag::NotPositive);
    }

    #[test]
    fn empty_matrix_is_positive_definite() {
        let c = classify(&HankelMatrix { m: 0, entries: RatMat::zeros(0, 0) });
        assert_eq!(c.tag, ClassTag::PositiveDefinite);
        assert_eq!(c.rank, 0);
    }

    #[test]
    fn se_minimal_implies_singular() {
        let c = classify(&HankelMatrix { m: 2, entries: m(&[&[1, 0], &[0, 0]]) });
        assert_eq!(c.tag, ClassTag::SEMinimallyPositive);
        assert!(c.rank < 2);
    }

    #[test]
    fn schur_complement_examples() {
        assert_eq!(schur_complement_11(&m(&[&[1, 1], &[1, 2]])).unwrap(), m(&[&[1]]));
        assert_eq!(schur_complement_11(&m(&[&[2, 2], &[2, 2]])).unwrap(), m(&[&[0]]));
        assert_eq!(
            schur_complement_11(&m(&[&[1, 2, 3], &[2, 5, 8], &[3, 8, 14]])).unwrap(),
            m(&[&[1, 2], &[2, 5]])
        );
        assert!(matches!(
            schur_complement_11(&m(&[&[0, 1], &[1, 0]])),
            Err(Error::SingularPivot)
        ));
    }

    #[test]
    fn minors_examples() {
        assert_eq!(leading_minors(&m(&[&[1, 0], &[0, 1]])), vec![rat(1), rat(1)]);
        assert_eq!(leading_minors(&m(&[&[1, 1], &[1, 1]])), vec![rat(1), rat(0)]);
        assert_eq!(
            leading_minors(&m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 2]])),
            vec![rat(1), rat(0), rat(0)]
        );
    }
}
