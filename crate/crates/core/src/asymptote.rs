//! Generalized asymptotes: truncate each branch to its non-negative part and
//! reparametrize with `z = t^n`.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use crate::branches::{converge, infinity_branches, BranchOptions, CurveBranches, InfinityBranch, SpaceCurve};
use crate::error::{Error, Result};
use crate::field::{int, rational_to_f64, FieldElement, Rational, UPoly};
use crate::poly::{MultiPoly, Var};
use crate::puiseux::{Orientation, PuiseuxSeries, Truncation};

/// `Q(t) = (t^n, q2(t), q3(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoteParam {
    pub degree: u32,
    pub q2: UPoly<FieldElement>,
    pub q3: UPoly<FieldElement>,
}

impl AsymptoteParam {
    pub fn new(degree: u32, q2: UPoly<FieldElement>, q3: UPoly<FieldElement>) -> Result<AsymptoteParam> {
        if degree == 0 {
            return Err(Error::InvalidArgument("asymptote degree must be positive".into()));
        }
        Ok(AsymptoteParam { degree, q2, q3 })
    }

    pub fn q1(&self) -> UPoly<FieldElement> {
        UPoly::monomial(FieldElement::one(), self.degree as usize)
    }

    /// `(t^n, q2(t), q3(t))` through the complex embedding.
    pub fn eval_f64(&self, t: f64) -> [Complex64; 3] {
        let ev = |q: &UPoly<FieldElement>| q.coeffs().iter().rev().fold(Complex64::zero(), |acc, c| acc * t + c.to_complex64());
        [Complex64::new(t.powi(self.degree as i32), 0.0), ev(&self.q2), ev(&self.q3)]
    }

    pub fn is_real(&self) -> bool {
        self.q2.coeffs().iter().chain(self.q3.coeffs()).all(|c| c.is_real())
    }

    /// The unique infinity branch of the curve traced by `Q`, from
    /// `t = z^(1/n)`.
    pub fn to_branch(&self) -> Result<InfinityBranch> {
        let n = self.degree;
        let series = |q: &UPoly<FieldElement>| {
            let terms = q
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Rational::new((k as i64).into(), (n as i64).into()), c.clone()))
                .collect();
            PuiseuxSeries::new(Orientation::Branch, terms, Truncation::Exact, n)
        };
        InfinityBranch::from_series(series(&self.q2), series(&self.q3), n)
    }

    pub fn extension(&self) -> Option<std::sync::Arc<crate::field::ExtensionField>> {
        self.q2.coeffs().iter().chain(self.q3.coeffs()).find(|c| c.as_rational().is_none()).map(|c| c.context().clone())
    }
}

impl fmt::Display for AsymptoteParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |q: &UPoly<FieldElement>| MultiPoly::from_upoly(Var::T, q).to_string();
        let t1 = if self.degree == 1 { "t".to_string() } else { format!("t^{}", self.degree) };
        write!(f, "({}, {}, {})", t1, show(&self.q2), show(&self.q3))
    }
}

/// Non-negative parts `(r̃2, r̃3)` of the branch series.
pub fn truncate_branch(b: &InfinityBranch) -> Result<(PuiseuxSeries, PuiseuxSeries)> {
    Ok((b.r2.nonnegative_part()?, b.r3.nonnegative_part()?))
}

fn to_poly(s: &PuiseuxSeries, n: u32) -> Result<UPoly<FieldElement>> {
    let mut coeffs: Vec<FieldElement> = Vec::new();
    for (e, c) in s.terms() {
        let k = e * int(n as i64);
        if !k.is_integer() {
            return Err(Error::InternalExponentError(format!("{e} * {n} is not an integer")));
        }
        let k: usize = k.to_integer().try_into().map_err(|_| Error::InternalExponentError(e.to_string()))?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, FieldElement::zero());
        }
        coeffs[k] = c.clone();
    }
    Ok(UPoly::new(coeffs, FieldElement::zero()))
}

/// The proper parametrization of the asymptote of `b`.
pub fn asymptote_param(b: &InfinityBranch) -> Result<AsymptoteParam> {
    let (t2, t3) = truncate_branch(b)?;
    let n = crate::branches::branch_degree(b)?;
    AsymptoteParam::new(n, to_poly(&t2, n)?, to_poly(&t3, n)?)
}

/// `gcd(n, exponents of q2 and q3) = 1`.
pub fn is_proper(q: &AsymptoteParam) -> bool {
    let mut g = q.degree as usize;
    for p in [&q.q2, &q.q3] {
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&k);
            }
        }
    }
    g == 1
}

/// Whether the curve traced by `a` converges with the branch `b`.
pub fn approaches(a: &AsymptoteParam, b: &InfinityBranch) -> Result<bool> {
    Ok(converge(b, &a.to_branch()?)?.converges)
}

/// Branches of a curve with one asymptote per branch, in branch order.
#[derive(Clone, Debug)]
pub struct AsymptoteReport {
    pub curve: CurveBranches,
    pub asymptotes: Vec<AsymptoteParam>,
}

impl AsymptoteReport {
    pub fn pairs(&self) -> impl Iterator<Item = (&InfinityBranch, &AsymptoteParam)> {
        self.curve.branches.iter().zip(&self.asymptotes)
    }
}

/// Full implicit pipeline.
pub fn space_asymptotes(c: &SpaceCurve, opts: &BranchOptions) -> Result<AsymptoteReport> {
    let curve = infinity_branches(c, opts)?;
    let asymptotes = curve.branches.iter().map(asymptote_param).collect::<Result<Vec<_>>>()?;
    Ok(AsymptoteReport { curve, asymptotes })
}

fn leaf_value(terms: &[(Rational, Complex64)], z: f64) -> Complex64 {
    // principal branch of z^e, so negative z picks up exp(iπe)
    let (m, arg) = (z.abs(), if z < 0.0 { std::f64::consts::PI } else { 0.0 });
    terms
        .iter()
        .map(|(e, c)| {
            let e = rational_to_f64(e);
            c * Complex64::from_polar(m.powf(e), arg * e)
        })
        .sum()
}

/// The point `(z, r2(z), r3(z))` on leaf `j`, if it is real.
pub fn leaf_point(b: &InfinityBranch, j: u32, z: f64) -> Option<[f64; 3]> {
    let [l2, l3] = b.leaf_numeric(j);
    let (x2, x3) = (leaf_value(&l2, z), leaf_value(&l3, z));
    let tol = 1e-9 * (1.0 + x2.norm() + x3.norm());
    (x2.im.abs() <= tol && x3.im.abs() <= tol).then_some([z, x2.re, x3.re])
}

/// Leaves of `b` that are real for large positive `z`.
pub fn real_leaves(b: &InfinityBranch) -> Vec<u32> {
    (0..b.ramification).filter(|&j| leaf_point(b, j, 1e3).is_some() && leaf_point(b, j, 1e4).is_some()).collect()
}

fn dist2(a: &AsymptoteParam, t: f64, p: &[f64; 3]) -> f64 {
    let q = a.eval_f64(t);
    (0..3).map(|k| (q[k].re - p[k]).powi(2) + q[k].im.powi(2)).sum()
}

/// Euclidean distance from `p` to the real points of `a`: a grid around the
/// parameters with `t^n = p1`, refined by golden-section search.
pub fn distance_to_param(p: &[f64; 3], a: &AsymptoteParam) -> f64 {
    let n = a.degree as i32;
    let r = p[0].abs().powf(1.0 / n as f64);
    let mut guesses = vec![r, -r];
    guesses.retain(|t| (t.powi(n) - p[0]).abs() <= 1e-6 * (1.0 + p[0].abs()));
    if guesses.is_empty() {
        guesses = vec![r, -r, 0.0];
    }
    let mut best = (f64::INFINITY, 0.0);
    for g in guesses {
        let w = 1.0 + 0.1 * g.abs();
        let steps = 400;
        for i in 0..=steps {
            let t = g - w + 2.0 * w * i as f64 / steps as f64;
            let d = dist2(a, t, p);
            if d < best.0 {
                best = (d, t);
            }
        }
        let h = 2.0 * w / steps as f64;
        let (mut lo, mut hi) = (best.1 - h, best.1 + h);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..100 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if dist2(a, m1, p) < dist2(a, m2, p) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let t = (lo + hi) / 2.0;
        let d = dist2(a, t, p);
        if d < best.0 {
            best = (d, t);
        }
    }
    best.0.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, FieldElement};

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::from(rat(n, d))
    }

    #[test]
    fn properness_examples() {
        let z = FieldElement::zero();
        let p = |cs: Vec<FieldElement>| UPoly::new(cs, FieldElement::zero());
        let o = FieldElement::one();
        let bad = AsymptoteParam::new(
            2,
            p(vec![o.clone(), z.clone(), z.clone(), z.clone(), o.clone()]),
            p(vec![z.clone(); 6].into_iter().chain([o.clone()]).collect()),
        )
        .unwrap();
        assert!(!is_proper(&bad));
        let lin = AsymptoteParam::new(1, p(vec![o.clone(), z.clone(), o.clone()]), p(vec![])).unwrap();
        assert!(is_proper(&lin));
    }

    #[test]
    fn line_pair() {
        let curve = SpaceCurve::new(MultiPoly::var(Var::X2), MultiPoly::var(Var::X3)).unwrap();
        let rep = space_asymptotes(&curve, &BranchOptions::default()).unwrap();
        assert_eq!(rep.asymptotes.len(), 1);
        let a = &rep.asymptotes[0];
        assert_eq!(a.degree, 1);
        assert!(a.q2.is_zero() && a.q3.is_zero());
        assert_eq!(a.to_string(), "(t, 0, 0)");
    }

    #[test]
    fn to_branch_round_trip() {
        let q2 = UPoly::new(vec![fe(1, 3), FieldElement::zero(), fe(-1, 1)], FieldElement::zero());
        let q3 = UPoly::new(vec![FieldElement::zero(), fe(-1, 1)], FieldElement::zero());
        let a = AsymptoteParam::new(3, q2, q3).unwrap();
        let b = a.to_branch().unwrap();
        assert_eq!(b.r2.coefficient(&rat(2, 3)), fe(-1, 1));
        assert_eq!(asymptote_param(&b).unwrap(), a);
        assert!(approaches(&a, &b).unwrap());
    }

    #[test]
    fn distance_on_curve_is_zero() {
        let q2 = UPoly::new(vec![fe(1, 4), FieldElement::zero(), FieldElement::one()], FieldElement::zero());
        let a = AsymptoteParam::new(2, q2, UPoly::zero(&FieldElement::zero())).unwrap();
        let p = a.eval_f64(7.5);
        let d = distance_to_param(&[p[0].re, p[1].re, p[2].re], &a);
        assert!(d < 1e-9, "{d}");
    }
}
