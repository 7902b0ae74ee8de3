//! Exact rational-function calculus: polynomials over the rationals,
//! rational functions with an optional simple-pole term at the node,
//! Taylor expansion, linear fractional transformations and
//! continued-fraction assembly.

use crate::arith::{rat_to_f64, Rat};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

/// Polynomial with exact rational coefficients, lowest degree first.
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The monomial z - x.
    pub fn z_minus(x: &Rat) -> Self {
        Poly::new(vec![-x.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rat_to_f64(c);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().unwrap().recip();
        if r.len() <= dd {
            return (Poly::zero(), Poly::new(r));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let factor = r.last().unwrap() * &lead_inv;
            if !factor.is_zero() {
                q[k] = factor.clone();
                for (j, c) in d.coeffs.iter().enumerate() {
                    let v = &r[k + j] - &(&factor * c);
                    r[k + j] = v;
                }
            }
            r.pop();
            while r.last().is_some_and(Rat::is_zero) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            // Monic normal form.
            let inv = a.leading().unwrap().recip();
            a.scale(&inv)
        }
    }

    /// Coefficients of p(x + u) as a polynomial in u (Taylor shift).
    pub fn shift(&self, x: &Rat) -> Poly {
        let mut out = self.coeffs.clone();
        let n = out.len();
        // Repeated synthetic division by (u - 0) after substitution:
        // classic in-place Horner-based shift.
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let v = &out[j] + &(x * &out[j + 1]);
                out[j] = v;
            }
        }
        Poly::new(out)
    }
}

/// A real rational function plus an optional simple pole at the node:
/// f(z) = pole_residue/(z - pole_node) + num(z)/den(z), with num/den in
/// lowest terms and den monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
    pub pole_node: Rat,
    pub pole_residue: Rat,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "denominator identically zero");
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.divmod(&g).0, den.divmod(&g).0)
        } else {
            (num, den)
        };
        let inv = den.leading().unwrap().recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
            pole_node: Rat::zero(),
            pole_residue: Rat::zero(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RationalFunction::new(Poly::constant(c), Poly::one())
    }

    pub fn with_pole(mut self, node: Rat, residue: Rat) -> Self {
        self.pole_node = node;
        self.pole_residue = residue;
        self
    }

    pub fn has_pole(&self) -> bool {
        !self.pole_residue.is_zero()
    }

    /// Folds the pole term into a single num/den pair.
    pub fn fold_pole(&self) -> RationalFunction {
        if !self.has_pole() {
            return self.clone();
        }
        let zx = Poly::z_minus(&self.pole_node);
        let num = Poly::constant(self.pole_residue.clone())
            .mul(&self.den)
            .add(&zx.mul(&self.num));
        RationalFunction::new(num, zx.mul(&self.den))
    }

    /// Degree after reduction; a pole term contributes one.
    pub fn degree(&self) -> usize {
        let d = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        if self.has_pole() {
            d + 1
        } else {
            d
        }
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut v = self.num.eval_c64(z) / self.den.eval_c64(z);
        if self.has_pole() {
            v += rat_to_f64(&self.pole_residue) / (z - rat_to_f64(&self.pole_node));
        }
        v
    }
}

/// Exact Taylor coefficients of the analytic part at x through order N,
/// by series long division in u = z - x.
pub fn taylor_at(f: &RationalFunction, x: &Rat, n: usize) -> Result<Vec<Rat>> {
    let p = f.num.shift(x);
    let q = f.den.shift(x);
    let q0 = q.coeffs.first().cloned().unwrap_or_else(Rat::zero);
    if q0.is_zero() {
        return Err(Error::PoleAtNode);
    }
    let q0_inv = q0.recip();
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = p.coeffs.get(j).cloned().unwrap_or_else(Rat::zero);
        for (k, prev) in out.iter().enumerate().take(j) {
            if let Some(qc) = q.coeffs.get(j - k) {
                acc -= qc * prev;
            }
        }
        out.push(acc * &q0_inv);
    }
    Ok(out)
}

/// A 2x2 matrix of polynomials acting as a linear fractional
/// transformation w -> (a w + b)/(c w + d).
#[derive(Clone, Debug, PartialEq)]
pub struct LftMatrix {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl LftMatrix {
    pub fn identity() -> Self {
        LftMatrix { a: Poly::one(), b: Poly::zero(), c: Poly::zero(), d: Poly::one() }
    }

    /// The single-step augmentation matrix A_k for parameters (s, t):
    /// [[s t (z-x), -t(z-x) - s], [t(z-x), -1]].
    pub fn augmentation_step(s: &Rat, t: &Rat, x: &Rat) -> Self {
        let zx = Poly::z_minus(x);
        let tzx = zx.scale(t);
        LftMatrix {
            a: tzx.scale(s),
            b: tzx.neg().sub(&Poly::constant(s.clone())),
            c: tzx,
            d: Poly::constant(-Rat::one()),
        }
    }

    pub fn mul(&self, other: &LftMatrix) -> LftMatrix {
        LftMatrix {
            a: self.a.mul(&other.a).add(&self.b.mul(&other.c)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.d)),
            c: self.c.mul(&other.a).add(&self.d.mul(&other.c)),
            d: self.c.mul(&other.b).add(&self.d.mul(&other.d)),
        }
    }

    pub fn det(&self) -> Poly {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }
}

/// Applies the transformation to a rational function, producing the
/// closed-form composite (a h + b)/(c h + d).
pub fn lft_apply(m: &LftMatrix, h: &RationalFunction) -> Result<RationalFunction> {
    let h = h.fold_pole();
    let num = m.a.mul(&h.num).add(&m.b.mul(&h.den));
    let den = m.c.mul(&h.num).add(&m.d.mul(&h.den));
    if den.is_zero() {
        return Err(Error::DegenerateLft);
    }
    Ok(RationalFunction::new(num, den))
}

/// Composes the full augmentation chain A_1 A_2 ... A_depth.
pub fn compose_lft_chain(s: &[Rat], t: &[Rat], x: &Rat) -> LftMatrix {
    assert_eq!(s.len(), t.len());
    let mut m = LftMatrix::identity();
    for (sk, tk) in s.iter().zip(t) {
        m = m.mul(&LftMatrix::augmentation_step(sk, tk, x));
    }
    m
}

/// Tail of a continued fraction.
#[derive(Clone, Debug, PartialEq)]
pub enum CfTail {
    /// Any Pick function analytic at the node (odd-n indeterminate case).
    Free,
    /// The fraction terminates: the tail is the constant s_{r+1}.
    Constant(Rat),
    /// Even-n indeterminate case: the tail is the augmentation of a free
    /// Pick function by (s_extra, t) for an arbitrary t > 0.
    AugmentedFree { s_extra: Rat },
}

/// Continued-fraction description of a solution set: node, the
/// parameters s_j, t_j and the tail contract.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedFraction {
    pub x: Rat,
    pub s: Vec<Rat>,
    pub t: Vec<Rat>,
    pub tail: CfTail,
}

impl ContinuedFraction {
    pub fn depth(&self) -> usize {
        self.s.len()
    }
}

/// Assembles the continued fraction into a closed-form rational
/// function.  `h` instantiates a free tail; `t_extra` is the extra
/// augmentation parameter for the even-n tail (default 1).
pub fn build_continued_fraction(
    cf: &ContinuedFraction,
    h: Option<&RationalFunction>,
    t_extra: Option<&Rat>,
) -> Result<RationalFunction> {
    if cf.s.len() != cf.t.len() {
        return Err(Error::InvalidTail("parameter sequences of unequal length".into()));
    }
    let tail = match (&cf.tail, h) {
        (CfTail::Constant(c), None) => RationalFunction::constant(c.clone()),
        (CfTail::Constant(_), Some(_)) => {
            return Err(Error::InvalidTail("terminating fraction takes no free tail".into()))
        }
        (CfTail::Free, Some(h)) => h.clone(),
        (CfTail::AugmentedFree { s_extra }, Some(h)) => {
            let one = Rat::one();
            let t = t_extra.unwrap_or(&one);
            if !t.is_positive() {
                return Err(Error::InvalidTail("tail augmentation parameter t must be > 0".into()));
            }
            let step = LftMatrix::augmentation_step(s_extra, t, &cf.x);
            lft_apply(&step, h)?
        }
        (_, None) => return Err(Error::InvalidTail("free tail requires a tail function".into())),
    };
    let m = compose_lft_chain(&cf.s, &cf.t, &cf.x);
    lft_apply(&m, &tail)
}
