//! The decision and construction engine: solvability and determinacy
//! verdicts, the explicit unique solution, the parameter recursion and
//! both parametrizations of the solution set, plus solution synthesis
//! for complex target data.

use crate::arith::{CRat, Rat};
use crate::hankel::{build_hankel, classify, ClassTag, Classification};
use crate::mat::RatMat;
use crate::rational::{
    build_continued_fraction, compose_lft_chain, CfTail, ContinuedFraction, LftMatrix,
    Poly, RationalFunction,
};
use crate::series::{reduce_series, rho, split_pole, ProblemData};
use crate::{interior, Error, Result};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Unsolvable,
    SolvableDeterminate,
    SolvableIndeterminate,
}

/// Structured verdict reasons; stable codes for machine consumption.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictReason {
    ResiduePositive,
    NegativeImA0,
    RhoOdd,
    ImTopNotPositive,
    HankelNotPd,
    HankelNotPositive,
    HankelNotPdNotSeMinimal,
    EvenRankConditionFails,
    HankelPd,
    SeMinimal,
    SeMinimalCornerMatch,
    ComplexEvenSolvable,
}

/// What the determinacy claim rests on: a cited statement, or a
/// consequence of the construction's visible freedom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeterminacyBasis {
    Cited,
    Derived,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub reason: VerdictReason,
    /// rho(a); `None` means all targets are real.
    pub rho: Option<usize>,
    /// Size of the Hankel matrix examined.
    pub m: usize,
    pub rank: usize,
    pub classification: Classification,
    pub determinacy_basis: DeterminacyBasis,
}

/// The reduction parameters s_j = a^0(j), t_j = a^1(j) together with
/// the intermediate sequences a(j).
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterTable {
    pub s: Vec<Rat>,
    pub t: Vec<Rat>,
    /// s_{m+1} = a^2(m)/(a^1(m))^2, present for even n with full depth.
    pub s_extra: Option<Rat>,
    /// Constant tail s_{r+1} when the recursion terminates (t_{r+1} = 0).
    pub tail_constant: Option<Rat>,
    /// a(j) for j = 1..depth reached.
    pub stages: Vec<Vec<Rat>>,
}

impl ParameterTable {
    pub fn depth(&self) -> usize {
        self.s.len()
    }
}

/// Both descriptions of an indeterminate solution set.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub params: ParameterTable,
    pub cf: ContinuedFraction,
    pub lft: LftMatrix,
    /// K in det = K (z-x)^{2m}: the product of the t_k^2.
    pub k_const: Rat,
    pub m: usize,
}

/// Closed-form Pick-class tails for instantiating parametrizations.
#[derive(Clone, Debug, PartialEq)]
pub enum Tail {
    /// Constant c with im c >= 0.
    Constant(CRat),
    /// slope*z + intercept with slope >= 0, both real.
    Affine { slope: Rat, intercept: Rat },
    /// -1/(z - pole) + offset with a real pole distinct from the node.
    Mobius { pole: Rat, offset: Rat },
}

pub type PickEval = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A concrete solution: exact rational when the data permit, otherwise
/// a numeric evaluator built by the reduce/interior/augment pipeline.
#[derive(Clone)]
pub enum Solution {
    Exact(RationalFunction),
    Numeric { eval: PickEval, description: String },
}

impl Solution {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Solution::Exact(f) => f.eval_c64(z),
            Solution::Numeric { eval, .. } => eval(z),
        }
    }
}

impl std::fmt::Debug for Solution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Solution::Exact(rf) => write!(f, "Exact({rf:?})"),
            Solution::Numeric { description, .. } => write!(f, "Numeric({description})"),
        }
    }
}

fn hankel_size(n: usize, rho: Option<usize>) -> usize {
    match rho {
        Some(k) => k / 2,
        None => (n + 1) / 2,
    }
}

/// The main solvability and determinacy dispatch.
pub fn check_solvable(p: &ProblemData) -> Result<Verdict> {
    let n = p.n();
    if n == 0 {
        return Err(Error::TrivialProblem);
    }
    let (residue, analytic) = split_pole(p);
    let a = &analytic.a;
    let rho_a = rho(a);
    let m = hankel_size(n, rho_a);

    let verdict = |status, reason, class: Classification, basis| Verdict {
        status,
        reason,
        rho: rho_a,
        m,
        rank: class.rank,
        classification: class,
        determinacy_basis: basis,
    };
    let empty_class = || Classification {
        tag: ClassTag::PositiveDefinite,
        rank: 0,
        leading_minors: vec![],
    };

    if residue.is_positive() {
        return Ok(verdict(
            VerdictStatus::Unsolvable,
            VerdictReason::ResiduePositive,
            empty_class(),
            DeterminacyBasis::Cited,
        ));
    }
    if a[0].im.is_negative() {
        return Ok(verdict(
            VerdictStatus::Unsolvable,
            VerdictReason::NegativeImA0,
            empty_class(),
            DeterminacyBasis::Cited,
        ));
    }

    match rho_a {
        Some(k) if k % 2 == 1 => Ok(verdict(
            VerdictStatus::Unsolvable,
            VerdictReason::RhoOdd,
            empty_class(),
            DeterminacyBasis::Cited,
        )),
        Some(k) => {
            // rho = 2m: solvable iff H_m(a) > 0 and im a^{2m} > 0.
            if !a[k].im.is_positive() {
                return Ok(verdict(
                    VerdictStatus::Unsolvable,
                    VerdictReason::ImTopNotPositive,
                    empty_class(),
                    DeterminacyBasis::Cited,
                ));
            }
            let class = classify(&build_hankel(a, m)?);
            if class.tag == ClassTag::PositiveDefinite {
                // The interior construction carries visible free
                // parameters, so the problem is reported indeterminate.
                Ok(verdict(
                    VerdictStatus::SolvableIndeterminate,
                    VerdictReason::ComplexEvenSolvable,
                    class,
                    DeterminacyBasis::Derived,
                ))
            } else {
                Ok(verdict(
                    VerdictStatus::Unsolvable,
                    VerdictReason::HankelNotPd,
                    class,
                    DeterminacyBasis::Cited,
                ))
            }
        }
        None => {
            let class = classify(&build_hankel(a, m)?);
            let targets = analytic.real_targets().expect("rho = infinity means real targets");
            if n % 2 == 1 {
                match class.tag {
                    ClassTag::PositiveDefinite => Ok(verdict(
                        VerdictStatus::SolvableIndeterminate,
                        VerdictReason::HankelPd,
                        class,
                        DeterminacyBasis::Cited,
                    )),
                    ClassTag::SEMinimallyPositive => Ok(verdict(
                        VerdictStatus::SolvableDeterminate,
                        VerdictReason::SeMinimal,
                        class,
                        DeterminacyBasis::Cited,
                    )),
                    _ => Ok(verdict(
                        VerdictStatus::Unsolvable,
                        VerdictReason::HankelNotPdNotSeMinimal,
                        class,
                        DeterminacyBasis::Cited,
                    )),
                }
            } else {
                match class.tag {
                    ClassTag::PositiveDefinite => Ok(verdict(
                        VerdictStatus::SolvableIndeterminate,
                        VerdictReason::HankelPd,
                        class,
                        DeterminacyBasis::Cited,
                    )),
                    ClassTag::SEMinimallyPositive => {
                        let ok = if class.rank == 0 {
                            // H_m = 0 forces a^1..a^{n-1} = 0; the constant
                            // a^0 solves iff the corner vanishes too.
                            targets[n].is_zero()
                        } else {
                            even_rank_condition(&targets, m, class.rank)?
                        };
                        if ok {
                            Ok(verdict(
                                VerdictStatus::SolvableDeterminate,
                                VerdictReason::SeMinimalCornerMatch,
                                class,
                                DeterminacyBasis::Cited,
                            ))
                        } else {
                            Ok(verdict(
                                VerdictStatus::Unsolvable,
                                VerdictReason::EvenRankConditionFails,
                                class,
                                DeterminacyBasis::Cited,
                            ))
                        }
                    }
                    _ => Ok(verdict(
                        VerdictStatus::Unsolvable,
                        VerdictReason::HankelNotPdNotSeMinimal,
                        class,
                        DeterminacyBasis::Cited,
                    )),
                }
            }
        }
    }
}

/// Relaxed problem: replace the top interpolation equation by an
/// inequality.  For odd n and real data, solvable iff H_m(a) >= 0.
pub fn check_relaxed(a: &[CRat]) -> Result<bool> {
    let n = a.len() - 1;
    assert!(n % 2 == 1, "the relaxed criterion applies to odd n");
    let m = (n + 1) / 2;
    if let Some(k) = a.iter().position(|c| !c.is_real()) {
        return Err(Error::NonRealEntry(k));
    }
    let class = classify(&build_hankel(a, m)?);
    Ok(class.is_positive())
}

/// Exact test of the even-n corner formula
/// a^{2m} = [a^m .. a^{m+r-1}] H_r(a)^{-1} [a^{m+1} .. a^{m+r}]^T.
pub fn even_rank_condition(a: &[Rat], m: usize, r: usize) -> Result<bool> {
    assert!(r >= 1);
    let h_r = RatMat::from_fn(r, r, |i, j| a[i + j + 1].clone());
    let col: Vec<Rat> = (0..r).map(|k| a[m + 1 + k].clone()).collect();
    let y = h_r.solve(&col).ok_or_else(|| {
        Error::InternalInconsistency("H_r singular inside the SE-minimal even case".into())
    })?;
    let value: Rat = (0..r).map(|k| &a[m + k] * &y[k]).sum();
    Ok(a[2 * m] == value)
}

/// The explicit unique solution in the determinate case.
pub fn unique_solution(p: &ProblemData) -> Result<RationalFunction> {
    let verdict = check_solvable(p)?;
    if verdict.status != VerdictStatus::SolvableDeterminate {
        return Err(Error::NotDeterminate);
    }
    let (residue, analytic) = split_pole(p);
    let a = analytic.real_targets().map_err(Error::NonRealEntry)?;
    let x = &analytic.x;
    let r = verdict.rank;

    let f = if r == 0 {
        RationalFunction::constant(a[0].clone())
    } else {
        // [c_r .. c_1] = [a^{r+1} .. a^{2r}] H_r(a)^{-1}; c_0 = -1.
        let h_r = RatMat::from_fn(r, r, |i, j| a[i + j + 1].clone());
        let rhs: Vec<Rat> = (0..r).map(|k| a[r + 1 + k].clone()).collect();
        let w = h_r.solve(&rhs).ok_or_else(|| {
            Error::InternalInconsistency("H_r singular in the determinate case".into())
        })?;
        let mut c = vec![-Rat::one()];
        // w = (c_r, c_{r-1}, ..., c_1)
        c.extend(w.iter().rev().cloned());
        let num_centered: Vec<Rat> = (0..=r)
            .map(|j| (0..=j).map(|k| &c[k] * &a[j - k]).sum())
            .collect();
        let minus_x = -x.clone();
        let num = Poly::new(num_centered).shift(&minus_x);
        let den = Poly::new(c).shift(&minus_x);
        RationalFunction::new(num, den)
    };
    Ok(f.with_pole(x.clone(), residue))
}

/// Runs the reduction recursion and collects s_j, t_j.
pub fn compute_parameters(p: &ProblemData) -> Result<ParameterTable> {
    let (_, analytic) = split_pole(p);
    let a = analytic.real_targets().map_err(Error::NonRealEntry)?;
    let n = analytic.n();
    let m = (n + 1) / 2;
    let mut table = ParameterTable {
        s: vec![],
        t: vec![],
        s_extra: None,
        tail_constant: None,
        stages: vec![],
    };
    let mut v = a;
    for j in 1..=m {
        if v.len() < 2 {
            return Err(Error::InternalInconsistency(format!(
                "stage {j} has too few coefficients"
            )));
        }
        let s_j = v[0].clone();
        let t_j = v[1].clone();
        if t_j.is_zero() {
            // Terminating fraction: v[0] is the constant tail s_{r+1}.
            table.tail_constant = Some(s_j);
            return Ok(table);
        }
        if t_j.is_negative() {
            return Err(Error::InternalInconsistency(format!(
                "negative derivative parameter t_{j}; data not positive"
            )));
        }
        table.s.push(s_j);
        table.t.push(t_j);
        table.stages.push(v.clone());
        if j < m {
            v = crate::series::reduce_series_real(&v)?;
        } else if n % 2 == 0 {
            // v is a(m) with three coefficients; s_{m+1} = a^2(m)/(a^1(m))^2.
            table.s_extra = Some(&v[2] / (&v[1] * &v[1]));
        }
    }
    Ok(table)
}

/// Exact check of the Hankel-determinant identities for the reduction
/// parameters: the product formula for det H_k, the two-term recursion
/// and the closed form for each t_l.
pub fn nevanlinna_t_formulas(minors: &[Rat], t: &[Rat]) -> bool {
    let r = t.len().min(minors.len());
    // det H_k = t_k t_{k-1}^3 ... t_1^{2k-1}
    for k in 1..=r {
        let mut prod = Rat::one();
        for (idx, tj) in t[..k].iter().enumerate() {
            let j = idx + 1; // parameter index
            let exp = 2 * (k - j) + 1;
            prod *= pow_rat(tj, exp as i64);
        }
        if minors[k - 1] != prod {
            return false;
        }
    }
    // D_{-1} = D_0 = 1 convention.
    let d = |l: isize| -> Rat {
        if l <= 0 {
            Rat::one()
        } else {
            minors[(l - 1) as usize].clone()
        }
    };
    // t_l t_{l+1} = D_{l-1} D_{l+1} / D_l^2
    for l in 1..r {
        let dl = d(l as isize);
        if dl.is_zero() {
            return false;
        }
        let lhs = &t[l - 1] * &t[l];
        let rhs = d(l as isize - 1) * d(l as isize + 1) / (&dl * &dl);
        if lhs != rhs {
            return false;
        }
    }
    // t_l = D_l / D_{l-1}^3 * (prod_{k=1}^{l-2} D_k^{(-1)^{k+l}})^4
    for l in 1..=r {
        let dl1 = d(l as isize - 1);
        if dl1.is_zero() {
            return false;
        }
        let mut prod = Rat::one();
        for k in 1..=l.saturating_sub(2) {
            let dk = d(k as isize);
            if dk.is_zero() {
                return false;
            }
            if (k + l) % 2 == 0 {
                prod *= dk;
            } else {
                prod /= dk;
            }
        }
        let closed = d(l as isize) / pow_rat(&dl1, 3) * pow_rat(&prod, 4);
        if t[l - 1] != closed {
            return false;
        }
    }
    true
}

fn pow_rat(x: &Rat, e: i64) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Continued-fraction and linear-fractional parametrization of the
/// solution set of an indeterminate problem with real data.
pub fn parametrize(p: &ProblemData) -> Result<Parametrization> {
    let verdict = check_solvable(p)?;
    if verdict.rho.is_some() {
        return Err(Error::ParametrizationUnsupported);
    }
    if verdict.status != VerdictStatus::SolvableIndeterminate {
        return Err(Error::NotIndeterminate);
    }
    let params = compute_parameters(p)?;
    let n = p.n();
    let m = (n + 1) / 2;
    let tail = match (&params.tail_constant, &params.s_extra) {
        (Some(c), _) => CfTail::Constant(c.clone()),
        (None, Some(s_extra)) => CfTail::AugmentedFree { s_extra: s_extra.clone() },
        (None, None) => CfTail::Free,
    };
    let cf = ContinuedFraction {
        x: p.x.clone(),
        s: params.s.clone(),
        t: params.t.clone(),
        tail,
    };
    let lft = compose_lft_chain(&params.s, &params.t, &p.x);
    let k_const = params.t.iter().map(|t| t * t).product();
    Ok(Parametrization { params, cf, lft, k_const, m })
}

impl Tail {
    /// The tail as a real rational function, when it is real.
    pub fn as_rational(&self, _x: &Rat) -> Option<RationalFunction> {
        match self {
            Tail::Constant(c) => c.as_real().map(|r| RationalFunction::constant(r.clone())),
            Tail::Affine { slope, intercept } => Some(RationalFunction::new(
                Poly::new(vec![intercept.clone(), slope.clone()]),
                Poly::one(),
            )),
            Tail::Mobius { pole, offset } => {
                // -1/(z - p) + q = (q(z - p) - 1)/(z - p)
                let zp = Poly::z_minus(pole);
                Some(RationalFunction::new(
                    zp.scale(offset).sub(&Poly::one()),
                    zp,
                ))
            }
        }
    }

    /// Pick-class and analyticity-at-x validity check.
    pub fn validate(&self, x: &Rat) -> Result<()> {
        let ok = match self {
            Tail::Constant(c) => !c.im.is_negative(),
            Tail::Affine { slope, .. } => !slope.is_negative(),
            Tail::Mobius { pole, .. } => pole != x,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidTail(format!("{self:?} is not Pick-class analytic at x")))
        }
    }

    fn eval_c64(&self, z: Complex64) -> Complex64 {
        use crate::arith::rat_to_f64;
        match self {
            Tail::Constant(c) => c.to_f64(),
            Tail::Affine { slope, intercept } => {
                Complex64::new(rat_to_f64(slope), 0.0) * z + rat_to_f64(intercept)
            }
            Tail::Mobius { pole, offset } => {
                -1.0 / (z - rat_to_f64(pole)) + rat_to_f64(offset)
            }
        }
    }
}

/// Produces a concrete solution: the unique one when determinate, a
/// tail-instantiated one when indeterminate, an error when unsolvable.
pub fn solve(p: &ProblemData, tail: &Tail) -> Result<Solution> {
    if p.n() == 0 {
        // Trivial problem: the constant a^0 (plus the pole term).
        let (residue, analytic) = split_pole(p);
        if residue.is_positive() || analytic.a[0].im.is_negative() {
            return Err(Error::Unsolvable(Verdict {
                status: VerdictStatus::Unsolvable,
                reason: if residue.is_positive() {
                    VerdictReason::ResiduePositive
                } else {
                    VerdictReason::NegativeImA0
                },
                rho: rho(&analytic.a),
                m: 0,
                rank: 0,
                classification: Classification {
                    tag: ClassTag::PositiveDefinite,
                    rank: 0,
                    leading_minors: vec![],
                },
                determinacy_basis: DeterminacyBasis::Cited,
            }));
        }
        return Ok(constant_solution(&analytic.a[0], &p.x, &residue));
    }
    let verdict = check_solvable(p)?;
    match verdict.status {
        VerdictStatus::Unsolvable => Err(Error::Unsolvable(verdict)),
        VerdictStatus::SolvableDeterminate => Ok(Solution::Exact(unique_solution(p)?)),
        VerdictStatus::SolvableIndeterminate => {
            tail.validate(&p.x)?;
            if verdict.rho.is_none() {
                solve_indeterminate_real(p, tail)
            } else {
                solve_complex(p, tail, verdict.rho.unwrap() / 2)
            }
        }
    }
}

fn constant_solution(a0: &CRat, x: &Rat, residue: &Rat) -> Solution {
    match a0.as_real() {
        Some(r) => Solution::Exact(
            RationalFunction::constant(r.clone()).with_pole(x.clone(), residue.clone()),
        ),
        None => {
            let c = a0.to_f64();
            let xf = crate::arith::rat_to_f64(x);
            let res = crate::arith::rat_to_f64(residue);
            Solution::Numeric {
                eval: Arc::new(move |z| c + res / (z - xf)),
                description: format!("constant {a0} plus pole term"),
            }
        }
    }
}

fn solve_indeterminate_real(p: &ProblemData, tail: &Tail) -> Result<Solution> {
    let (residue, _) = split_pole(p);
    let param = parametrize(p)?;
    match tail.as_rational(&p.x) {
        Some(h) => {
            let f = build_continued_fraction(&param.cf, Some(&h), None)?;
            Ok(Solution::Exact(f.with_pole(p.x.clone(), residue)))
        }
        None => {
            // Complex constant tail: instantiate the LFT numerically.
            let lft = param.lft.clone();
            let cf_tail = param.cf.tail.clone();
            let x = p.x.clone();
            let tail = tail.clone();
            let xf = crate::arith::rat_to_f64(&p.x);
            let resf = crate::arith::rat_to_f64(&residue);
            let eval: PickEval = Arc::new(move |z| {
                let mut h = tail.eval_c64(z);
                if let CfTail::AugmentedFree { s_extra } = &cf_tail {
                    let s = crate::arith::rat_to_f64(s_extra);
                    let t = 1.0;
                    let x0 = crate::arith::rat_to_f64(&x);
                    h = s + 1.0 / (1.0 / (t * (z - x0)) - h);
                }
                let num = lft.a.eval_c64(z) * h + lft.b.eval_c64(z);
                let den = lft.c.eval_c64(z) * h + lft.d.eval_c64(z);
                num / den + resf / (z - xf)
            });
            Ok(Solution::Numeric { eval, description: "LFT with complex constant tail".into() })
        }
    }
}

/// rho(a) = 2m: reduce m times exactly, solve the interior problem,
/// augment back numerically.
fn solve_complex(p: &ProblemData, _tail: &Tail, m: usize) -> Result<Solution> {
    let (residue, analytic) = split_pole(p);
    let mut seq = analytic.a.clone();
    let mut steps: Vec<(f64, f64)> = Vec::with_capacity(m);
    for _ in 0..m {
        let s = crate::arith::rat_to_f64(&seq[0].re);
        let t = crate::arith::rat_to_f64(&seq[1].re);
        steps.push((s, t));
        seq = reduce_series(&seq)?;
    }
    // seq now has im seq[0] > 0.
    let inner: PickEval = if seq.len() == 1 {
        let c = seq[0].to_f64();
        Arc::new(move |_| c)
    } else {
        let inner_problem = ProblemData::new(p.x.clone(), None, seq);
        interior::solve_interior(&inner_problem)?
    };
    let xf = crate::arith::rat_to_f64(&p.x);
    let resf = crate::arith::rat_to_f64(&residue);
    let eval: PickEval = Arc::new(move |z| {
        let mut v = inner(z);
        for (s, t) in steps.iter().rev() {
            v = s + 1.0 / (1.0 / (t * (z - xf)) - v);
        }
        v + resf / (z - xf)
    });
    Ok(Solution::Numeric {
        eval,
        description: format!("reduce x{m} / interior construction / augment x{m}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::rational::taylor_at;

    fn cints(v: &[i64]) -> Vec<CRat> {
        v.iter().map(|&n| CRat::from_int(n)).collect()
    }

    fn real_problem(a: &[i64]) -> ProblemData {
        ProblemData::new(rat(0), None, cints(a))
    }

    #[test]
    fn nevanlinna_counterexample_unsolvable() {
        let p = real_problem(&[0, 1, 1, 1, 1, 2]);
        let v = check_solvable(&p).unwrap();
        assert_eq!(v.status, VerdictStatus::Unsolvable);
        assert_eq!(v.reason, VerdictReason::HankelNotPdNotSeMinimal);
        assert_eq!(v.classification.tag, ClassTag::PositiveSingularNotSEMinimal);
        assert_eq!(v.rank, 2);
    }

    #[test]
    fn determinate_identity_function() {
        let p = real_problem(&[0, 1, 0, 0]);
        let v = check_solvable(&p).unwrap();
        assert_eq!(v.status, VerdictStatus::SolvableDeterminate);
        let f = unique_solution(&p).unwrap();
        assert_eq!(f, RationalFunction::new(Poly::new(vec![rat(0), rat(1)]), Poly::one()));
    }

    #[test]
    fn determinate_geometric() {
        let p = real_problem(&[0, 1, 1, 1]);
        let f = unique_solution(&p).unwrap();
        // z/(1-z)
        let expected = RationalFunction::new(
            Poly::new(vec![rat(0), rat(1)]),
            Poly::new(vec![rat(1), rat(-1)]),
        );
        assert_eq!(f, expected);
        assert_eq!(taylor_at(&f, &rat(0), 3).unwrap(), vec![rat(0), rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn determinate_with_pole() {
        let p = ProblemData::new(rat(0), Some(rat(-1)), cints(&[0, 1, 0, 0]));
        let f = unique_solution(&p).unwrap();
        assert_eq!(f.pole_residue, rat(-1));
        assert_eq!(f.num, Poly::new(vec![rat(0), rat(1)]));
        let z = Complex64::new(0.3, 0.4);
        let want = -1.0 / z + z;
        assert!((f.eval_c64(z) - want).norm() < 1e-12);
    }

    #[test]
    fn rho_odd_rejected() {
        let mut a = cints(&[0, 0]);
        a[1] = CRat::i();
        let p = ProblemData::new(rat(0), None, a);
        let v = check_solvable(&p).unwrap();
        assert_eq!(v.status, VerdictStatus::Unsolvable);
        assert_eq!(v.reason, VerdictReason::RhoOdd);
    }

    #[test]
    fn interior_target_solvable() {
        let mut a = cints(&[0, 1, 1]);
        a[0] = CRat::i();
        let p = ProblemData::new(rat(0), None, a);
        let v = check_solvable(&p).unwrap();
        assert_eq!(v.status, VerdictStatus::SolvableIndeterminate);
        assert_eq!(v.rho, Some(0));
        assert_eq!(v.determinacy_basis, DeterminacyBasis::Derived);
    }

    #[test]
    fn positive_residue_rejected() {
        let p = ProblemData::new(rat(0), Some(rat(1)), cints(&[0, 1]));
        let v = check_solvable(&p).unwrap();
        assert_eq!(v.reason, VerdictReason::ResiduePositive);
    }

    #[test]
    fn pd_indeterminate() {
        let p = real_problem(&[0, 1, 0, 1]);
        let v = check_solvable(&p).unwrap();
        assert_eq!(v.status, VerdictStatus::SolvableIndeterminate);
        assert_eq!(v.classification.tag, ClassTag::PositiveDefinite);
    }

    #[test]
    fn trivial_problem_errors() {
        let p = real_problem(&[5]);
        assert!(matches!(check_solvable(&p), Err(Error::TrivialProblem)));
    }

    #[test]
    fn relaxed_criterion() {
        assert!(check_relaxed(&cints(&[0, 0, 0, 1])).unwrap());
        assert!(!check_relaxed(&cints(&[0, 0, 0, -1])).unwrap());
        assert!(check_relaxed(&cints(&[0, 1, 0, 0])).unwrap());
    }

    #[test]
    fn even_corner_formula() {
        let a: Vec<Rat> = [0, 1, 1, 1, 1].iter().map(|&v| rat(v)).collect();
        assert!(even_rank_condition(&a, 2, 1).unwrap());
        let a: Vec<Rat> = [0, 1, 1, 1, 2].iter().map(|&v| rat(v)).collect();
        assert!(!even_rank_condition(&a, 2, 1).unwrap());
        let a: Vec<Rat> = [0, 1, 0, 0, 0].iter().map(|&v| rat(v)).collect();
        assert!(even_rank_condition(&a, 2, 1).unwrap());
    }

    #[test]
    fn even_case_verdicts() {
        let v = check_solvable(&real_problem(&[0, 1, 1, 1, 1])).unwrap();
        assert_eq!(v.status, VerdictStatus::SolvableDeterminate);
        let v = check_solvable(&real_problem(&[0, 1, 1, 1, 2])).unwrap();
        assert_eq!(v.status, VerdictStatus::Unsolvable);
        assert_eq!(v.reason, VerdictReason::EvenRankConditionFails);
    }

    #[test]
    fn even_rank_zero_case() {
        // a^1 = 0, all higher targets zero: the constant solves.
        let v = check_solvable(&real_problem(&[3, 0, 0, 0, 0])).unwrap();
        assert_eq!(v.status, VerdictStatus::SolvableDeterminate);
        let f = unique_solution(&real_problem(&[3, 0, 0, 0, 0])).unwrap();
        assert_eq!(f, RationalFunction::constant(rat(3)));
        // Nonzero corner: unsolvable.
        let v = check_solvable(&real_problem(&[3, 0, 0, 0, 1])).unwrap();
        assert_eq!(v.status, VerdictStatus::Unsolvable);
    }

    #[test]
    fn parameter_recursion() {
        let p = real_problem(&[0, 1, 0, 1]);
        let table = compute_parameters(&p).unwrap();
        assert_eq!(table.s, vec![rat(0), rat(0)]);
        assert_eq!(table.t, vec![rat(1), rat(1)]);
        assert_eq!(table.tail_constant, None);

        let p = real_problem(&[0, 1, 1, 1]);
        let table = compute_parameters(&p).unwrap();
        assert_eq!(table.s, vec![rat(0)]);
        assert_eq!(table.t, vec![rat(1)]);
        assert_eq!(table.tail_constant, Some(rat(1)));
    }

    #[test]
    fn t_formula_identities() {
        assert!(nevanlinna_t_formulas(&[rat(1), rat(1)], &[rat(1), rat(1)]));
        // t = (2, 3): D_1 = 2, D_2 = t_2 t_1^3 = 24.
        assert!(nevanlinna_t_formulas(&[rat(2), rat(24)], &[rat(2), rat(3)]));
        assert!(!nevanlinna_t_formulas(&[rat(2), rat(25)], &[rat(2), rat(3)]));
    }

    #[test]
    fn parametrization_reproduces_targets() {
        let p = real_problem(&[0, 1, 0, 1]);
        let param = parametrize(&p).unwrap();
        assert_eq!(param.lft.det(), Poly::new(vec![rat(0), rat(0), rat(0), rat(0), rat(1)]));
        for c in [0i64, 1, -1] {
            let f = build_continued_fraction(
                &param.cf,
                Some(&RationalFunction::constant(rat(c))),
                None,
            )
            .unwrap();
            assert_eq!(
                taylor_at(&f, &rat(0), 3).unwrap(),
                vec![rat(0), rat(1), rat(0), rat(1)],
                "tail {c}"
            );
        }
    }

    #[test]
    fn parametrize_rejects_complex_and_determinate() {
        let mut a = cints(&[0, 1, 1]);
        a[0] = CRat::i();
        let p = ProblemData::new(rat(0), None, a);
        assert!(matches!(parametrize(&p), Err(Error::ParametrizationUnsupported)));
        assert!(matches!(
            parametrize(&real_problem(&[0, 1, 0, 0])),
            Err(Error::NotIndeterminate)
        ));
    }

    #[test]
    fn solve_dispatch() {
        // Unsolvable propagates the verdict.
        let p = real_problem(&[0, 1, 1, 1, 1, 2]);
        assert!(matches!(
            solve(&p, &Tail::Constant(CRat::zero())),
            Err(Error::Unsolvable(_))
        ));
        // Determinate delegates to unique_solution.
        let p = real_problem(&[0, 1, 1, 1]);
        let s = solve(&p, &Tail::Constant(CRat::zero())).unwrap();
        match s {
            Solution::Exact(f) => assert_eq!(f, unique_solution(&p).unwrap()),
            _ => panic!("expected exact solution"),
        }
        // Indeterminate with a tail matches the targets exactly.
        let p = real_problem(&[0, 1, 0, 1]);
        let s = solve(&p, &Tail::Affine { slope: rat(1), intercept: rat(0) }).unwrap();
        match s {
            Solution::Exact(f) => {
                assert_eq!(
                    taylor_at(&f, &rat(0), 3).unwrap(),
                    vec![rat(0), rat(1), rat(0), rat(1)]
                );
            }
            _ => panic!("expected exact solution"),
        }
    }
}
