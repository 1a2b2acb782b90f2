//! Infinity branches of an implicitly defined space curve.
//!
//! The curve is projected along `x3` onto the `(x1, x2)`-plane, the plane
//! branches at infinity are expanded with Newton polygons, and `x3` is lifted
//! back through the rational function read off the first subresultant.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{int, FieldElement, Rational};
use crate::poly::{exps, resultant, subresultant_first, MultiPoly, Var};
use crate::puiseux::{eval_series, newton_expand, ConjugacyClass, ExpansionTarget, Orientation, PuiseuxSeries, Truncation};

/// The curve `f1 = f2 = 0` in affine coordinates `x1, x2, x3`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceCurve {
    pub f1: MultiPoly,
    pub f2: MultiPoly,
}

impl SpaceCurve {
    pub fn new(f1: MultiPoly, f2: MultiPoly) -> Result<SpaceCurve> {
        for f in [&f1, &f2] {
            if f.is_constant() {
                return Err(Error::InvalidCurve("equations must be non-constant".into()));
            }
            if let Some(v) = f.vars().into_iter().find(|v| !matches!(v, Var::X1 | Var::X2 | Var::X3)) {
                return Err(Error::InvalidCurve(format!("unexpected variable {v}")));
            }
        }
        let (l1, l2) = (f1.leading().unwrap().1.clone(), f2.leading().unwrap().1.clone());
        if f1.scale(&l2) == f2.scale(&l1) {
            return Err(Error::InvalidCurve("equations are proportional".into()));
        }
        Ok(SpaceCurve { f1, f2 })
    }
}

/// Linear change of coordinates with `old = matrix * new`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeOfCoords {
    pub matrix: [[Rational; 3]; 3],
}

impl ChangeOfCoords {
    pub fn identity() -> Self {
        Self::shear(0, 0)
    }

    /// `x1_old = x1 + λ x2 + μ x3`.
    pub fn shear(lambda: i64, mu: i64) -> Self {
        let (z, o) = (int(0), int(1));
        ChangeOfCoords { matrix: [[o.clone(), int(lambda), int(mu)], [z.clone(), o.clone(), z.clone()], [z.clone(), z, o]] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `f(old)` written in the new coordinates.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let vars = [Var::X1, Var::X2, Var::X3];
        let map: Vec<(Var, MultiPoly)> = (0..3)
            .map(|i| {
                let mut row = MultiPoly::zero();
                for (j, v) in vars.iter().enumerate() {
                    row = &row + &MultiPoly::var(*v).scale(&FieldElement::from_rational(self.matrix[i][j].clone()));
                }
                (vars[i], row)
            })
            .collect();
        f.subst_all(&map)
    }
}

/// Curve after the admissible change of coordinates.
#[derive(Clone, Debug)]
pub struct PreparedCurve {
    pub original: SpaceCurve,
    pub curve: SpaceCurve,
    pub transform: ChangeOfCoords,
}

/// Projection `fp(x1, x2) = 0` and lift `x3 = h1 / h2`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub resultant: MultiPoly,
    pub fp: MultiPoly,
    pub h1: MultiPoly,
    pub h2: MultiPoly,
}

/// Resultant, squarefree projection and lift; fails if the lift does not
/// reproduce the curve.
pub fn project(c: &SpaceCurve) -> Result<Projection> {
    let res = resultant(&c.f1, &c.f2, Var::X3)?;
    if res.is_zero() {
        return Err(Error::DegenerateSubresultant);
    }
    // keep the scaling of the resultant when it is already squarefree
    let sq = res.squarefree_part();
    let fp = if sq.total_degree() == res.total_degree() { res.clone() } else { sq };
    let (s1, s0) = subresultant_first(&c.f1, &c.f2, Var::X3)?;
    let d = crate::poly::gcd(&s1, &s0);
    let mut h1 = (-&s0).div_exact(&d).expect("gcd divides");
    let mut h2 = s1.div_exact(&d).expect("gcd divides");
    if let Some(c2) = h2.constant_value() {
        let inv = c2.inv()?;
        h1 = h1.scale(&inv);
        h2 = MultiPoly::one();
    }
    let proj = Projection { resultant: res, fp, h1, h2 };
    check_lift(c, &proj)?;
    Ok(proj)
}

fn check_lift(c: &SpaceCurve, p: &Projection) -> Result<()> {
    if !p.h2.is_constant() && p.h2.div_exact(&p.fp).is_some() {
        return Err(Error::InvalidLift);
    }
    for f in [&c.f1, &c.f2] {
        let cs = f.coeffs_in(Var::X3);
        let d = cs.len().saturating_sub(1) as u32;
        let mut acc = MultiPoly::zero();
        for (k, ck) in cs.iter().enumerate() {
            let k = k as u32;
            acc = &acc + &(&(ck * &p.h1.pow(k)) * &p.h2.pow(d - k));
        }
        if !acc.is_zero() && acc.div_exact(&p.fp).is_none() {
            return Err(Error::InvalidLift);
        }
    }
    Ok(())
}

const SHEAR_VALUES: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

fn shear_candidates(seed: Option<(i64, i64)>) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if let Some(s) = seed {
        out.push(s);
    }
    for l in SHEAR_VALUES {
        for m in SHEAR_VALUES {
            if !out.contains(&(l, m)) {
                out.push((l, m));
            }
        }
    }
    out
}

/// Every infinity branch has `x1 -> ∞`: checked through the projection
/// having no point `(0:1:0)` and `x3` having no vertical asymptote.
fn admissible(c: &SpaceCurve, p: &Projection) -> Result<()> {
    let d = p.fp.total_degree().unwrap_or(0);
    if d == 0 || p.fp.coefficient(&exps(&[(Var::X2, d)])).is_zero() {
        return Err(Error::PreparationFailed("projection passes through (0:1:0)".into()));
    }
    if !p.h2.is_constant() {
        let r = resultant(&c.f1, &c.f2, Var::X2)?;
        if r.is_zero() || !r.lc_in(Var::X3).is_constant() || !r.has_var(Var::X3) {
            return Err(Error::PreparationFailed("x3 may diverge at finite x1".into()));
        }
    }
    Ok(())
}

/// Finds a small shear `x1 -> x1 + λ x2 + μ x3` after which the projection
/// method applies; `seed` is tried first.
pub fn prepare_curve(c: &SpaceCurve, seed: Option<(i64, i64)>) -> Result<(PreparedCurve, Projection)> {
    let mut last = String::from("no candidate");
    for (l, m) in shear_candidates(seed) {
        let t = ChangeOfCoords::shear(l, m);
        let curve = SpaceCurve { f1: t.apply(&c.f1), f2: t.apply(&c.f2) };
        match project(&curve).and_then(|p| admissible(&curve, &p).map(|_| p)) {
            Ok(p) => return Ok((PreparedCurve { original: c.clone(), curve, transform: t }, p)),
            Err(e) => last = format!("shear ({l}, {m}): {e}"),
        }
    }
    Err(Error::PreparationFailed(last))
}

/// Plane branch at infinity of `fp`, as the local series of `x2/x1` in
/// `t = 1/x1`.
#[derive(Clone, Debug)]
pub struct PlaneBranch {
    pub m2: FieldElement,
    pub class: ConjugacyClass,
}

impl PlaneBranch {
    /// `r2(z) = z φ2(1/z)`.
    pub fn r2(&self) -> PuiseuxSeries {
        self.class.representative.to_branch_form().expect("local series")
    }
}

/// Infinity branches of the plane curve `fp = 0`, one per conjugacy class.
pub fn plane_branches(fp: &MultiPoly, target: &ExpansionTarget) -> Result<Vec<PlaneBranch>> {
    let h = fp.homogenize(Var::X4)?;
    let g = h.eval_var(Var::X1, &FieldElement::one()).rename(Var::X2, Var::Y).rename(Var::X4, Var::T);
    let classes = newton_expand(&g, Var::Y, Var::T, target)?;
    Ok(classes
        .into_iter()
        .map(|class| {
            let m2 = class.representative.coefficient(&Rational::zero());
            PlaneBranch { m2, class }
        })
        .collect())
}

/// A point at infinity `(1 : m2 : m3 : 0)` of the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityPoint {
    pub m2: FieldElement,
    pub m3: FieldElement,
}

/// One branch, represented by a single member of its conjugacy class.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityBranch {
    pub point: InfinityPoint,
    pub r2: PuiseuxSeries,
    pub r3: PuiseuxSeries,
    /// Size of the conjugacy class.
    pub ramification: u32,
    pub degree: u32,
}

impl InfinityBranch {
    /// Assembles a branch from its two branch series.
    pub fn from_series(r2: PuiseuxSeries, r3: PuiseuxSeries, ramification: u32) -> Result<InfinityBranch> {
        if r2.orientation() != Orientation::Branch || r3.orientation() != Orientation::Branch {
            return Err(Error::OrientationMismatch);
        }
        let one = Rational::one();
        let point = InfinityPoint { m2: r2.coefficient(&one), m3: r3.coefficient(&one) };
        let mut b = InfinityBranch { point, r2, r3, ramification, degree: 1 };
        b.degree = branch_degree(&b)?;
        Ok(b)
    }

    /// Projective limit point `(x1 : x2 : x3 : x4)`.
    pub fn projective_point(&self) -> [FieldElement; 4] {
        let one = Rational::one();
        let top = [&self.r2, &self.r3].iter().filter_map(|s| s.leading_exponent().cloned()).filter(|e| *e > one).max();
        match top {
            None => [FieldElement::one(), self.point.m2.clone(), self.point.m3.clone(), FieldElement::zero()],
            Some(e) => {
                let (a2, a3) = (self.r2.coefficient(&e), self.r3.coefficient(&e));
                // scale so the first nonzero coordinate is 1
                let lead = if a2.is_zero() { a3.clone() } else { a2.clone() };
                let unit = |a: &FieldElement| a.try_div(&lead).expect("same field, nonzero lead");
                [FieldElement::zero(), unit(&a2), unit(&a3), FieldElement::zero()]
            }
        }
    }

    /// Series coefficients of the member `ε = exp(2πij/N)`, numerically.
    pub fn leaf_numeric(&self, j: u32) -> [Vec<(Rational, num_complex::Complex64)>; 2] {
        let n = self.ramification;
        let f = |s: &PuiseuxSeries| ConjugacyClass { representative: s.clone(), class_size: n }.leaf_numeric(j);
        [f(&self.r2), f(&self.r3)]
    }

    /// The representative has real coefficients.
    pub fn is_real(&self) -> bool {
        self.r2.terms().iter().chain(self.r3.terms()).all(|(_, c)| c.is_real())
    }

    pub fn extension(&self) -> Option<std::sync::Arc<crate::field::ExtensionField>> {
        self.r2.extension().or_else(|| self.r3.extension())
    }
}

impl fmt::Display for InfinityBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "point (1 : {} : {} : 0), ramification {}, degree {}", self.point.m2, self.point.m3, self.ramification, self.degree)?;
        writeln!(f, "  r2(z) = {}", self.r2)?;
        write!(f, "  r3(z) = {}", self.r3)
    }
}

/// Lifts a plane branch to the space curve. `order` is the local order to
/// which `φ3 = t r3(1/t)` must be certified.
pub fn lift_branch(proj: &Projection, pb: &PlaneBranch, order: &Rational) -> Result<InfinityBranch> {
    let phi2 = &pb.class.representative;
    let n = pb.class.class_size;
    let r2l = phi2.shift(&-Rational::one());
    let x1 = PuiseuxSeries::monomial(Orientation::Local, FieldElement::one(), -Rational::one());
    let need = order - Rational::one();
    let cap = &need + int(1);
    let asg = [(Var::X1, x1), (Var::X2, r2l)];
    let hn = eval_series(&proj.h1, &asg, &(&cap + int(4)))?;
    let hd = eval_series(&proj.h2, &asg, &(&cap + int(4)))?;
    let r3l = hn.try_div(&hd, &cap)?;
    let phi3 = r3l.shift(&Rational::one()).with_ramification(n);
    let ok = match phi3.truncation() {
        Truncation::Exact => true,
        Truncation::Order(o) => o >= order,
    };
    if !ok {
        return Err(Error::underflow(format!("local order {order}"), phi3.truncation()));
    }
    let phi3 = if phi3.is_exact() { phi3 } else { phi3.truncate_at(&cap.min(order.clone())) };
    let r2 = phi2.to_branch_form()?.with_ramification(n);
    let r3 = phi3.to_branch_form()?.with_ramification(n);
    InfinityBranch::from_series(r2, r3, n)
}

/// Expansion options for [`infinity_branches`].
#[derive(Clone, Debug)]
pub struct BranchOptions {
    /// Local order to which `φ2` and `φ3` are certified; branch series are
    /// then known for every exponent above `1 - order`.
    pub order: Rational,
    /// Minimum number of terms of `φ2`; `None` uses `2 deg + 1`.
    pub min_terms: Option<usize>,
    pub seed: Option<(i64, i64)>,
}

impl Default for BranchOptions {
    fn default() -> Self {
        BranchOptions { order: int(2), min_terms: None, seed: None }
    }
}

/// Branches of a curve together with the data used to find them.
#[derive(Clone, Debug)]
pub struct CurveBranches {
    pub prepared: PreparedCurve,
    pub projection: Projection,
    pub branches: Vec<InfinityBranch>,
}

/// Full implicit pipeline: preparation, projection, plane expansion, lift.
pub fn infinity_branches(c: &SpaceCurve, opts: &BranchOptions) -> Result<CurveBranches> {
    let (prepared, projection) = prepare_curve(c, opts.seed)?;
    let deg = projection.fp.total_degree().unwrap_or(1) as usize;
    let min_terms = opts.min_terms.unwrap_or(2 * deg + 1);
    let hdeg = projection.h1.total_degree().unwrap_or(0) + projection.h2.total_degree().unwrap_or(0);
    let mut order2 = &opts.order + int(hdeg as i64 + 2);
    for _ in 0..8 {
        let target = ExpansionTarget { order: order2.clone(), min_terms };
        let planes = plane_branches(&projection.fp, &target)?;
        let mut out = Vec::new();
        let mut short = false;
        for pb in &planes {
            match lift_branch(&projection, pb, &opts.order) {
                Ok(b) => out.push(b),
                Err(Error::TruncationUnderflow { .. }) => {
                    short = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !short {
            let mut out: Vec<InfinityBranch> = out.into_iter().map(|b| trim_to(b, &opts.order)).collect();
            // ascending limit point, the reverse of the canonical root order
            out.sort_by(|a, b| b.point.m2.cmp_canonical(&a.point.m2).then_with(|| b.point.m3.cmp_canonical(&a.point.m3)));
            return Ok(CurveBranches { prepared, projection, branches: out });
        }
        order2 = &order2 * int(2);
    }
    Err(Error::underflow(format!("local order {}", opts.order), "retry limit"))
}

/// Cuts both series at the common certified bound `1 - order`.
fn trim_to(b: InfinityBranch, order: &Rational) -> InfinityBranch {
    let bound = Rational::one() - order;
    let r2 = if b.r2.is_exact() { b.r2 } else { b.r2.truncate_at(&bound) };
    let r3 = if b.r3.is_exact() { b.r3 } else { b.r3.truncate_at(&bound) };
    InfinityBranch { r2, r3, ..b }
}

/// `n` such that the non-negative exponents of `r2, r3` lie in `(1/n)ℤ`.
pub fn branch_degree(b: &InfinityBranch) -> Result<u32> {
    let mut n = 1u32;
    for s in [&b.r2, &b.r3] {
        for (e, _) in s.nonnegative_part()?.terms() {
            let d: u32 = e.denom().try_into().map_err(|_| Error::InternalExponentError(e.to_string()))?;
            n = n.lcm(&d);
        }
    }
    Ok(n)
}

/// Outcome of a convergence test.
#[derive(Clone, Debug, PartialEq)]
pub struct Convergence {
    pub converges: bool,
    pub reason: String,
}

impl Convergence {
    fn no(reason: impl Into<String>) -> Self {
        Convergence { converges: false, reason: reason.into() }
    }
}

/// Whether some leaves of `b1` and `b2` agree in all terms of non-negative
/// exponent.
pub fn converge(b1: &InfinityBranch, b2: &InfinityBranch) -> Result<Convergence> {
    let p1 = [b1.r2.nonnegative_part()?, b1.r3.nonnegative_part()?];
    let p2 = [b2.r2.nonnegative_part()?, b2.r3.nonnegative_part()?];
    if !same_point(b1, b2) {
        return Ok(Convergence::no("distinct infinity points"));
    }
    let n = b2.ramification.max(1);
    let nr = Rational::from_integer(n.into());
    let mut ratios = Vec::new();
    for (k, (s1, s2)) in p1.iter().zip(&p2).enumerate() {
        let e1: Vec<&Rational> = s1.terms().iter().map(|t| &t.0).collect();
        let e2: Vec<&Rational> = s2.terms().iter().map(|t| &t.0).collect();
        if e1 != e2 {
            return Ok(Convergence::no(format!("r{} has different non-negative exponents", k + 2)));
        }
        for ((e, a1), (_, a2)) in s1.terms().iter().zip(s2.terms()) {
            let rho = match a1.try_div(a2) {
                Ok(r) => r,
                Err(_) => return Ok(Convergence::no("coefficients lie in different extension fields")),
            };
            let lambda_q = (Rational::one() - e) * &nr;
            if !lambda_q.is_integer() {
                return Ok(Convergence::no("exponent incompatible with the ramification"));
            }
            let lambda: i64 = lambda_q.to_integer().try_into().map_err(|_| Error::InternalExponentError(e.to_string()))?;
            ratios.push((lambda, rho));
        }
    }
    if ratios.iter().all(|(_, r)| r.is_one()) {
        return Ok(Convergence { converges: true, reason: "identical non-negative parts".into() });
    }
    let mut ks = Vec::new();
    for (lambda, rho) in &ratios {
        if !rho.pow(n as i64)?.is_one() {
            return Ok(Convergence::no("coefficients differ beyond a root of unity"));
        }
        let z = rho.to_complex64();
        let turns = z.arg() / std::f64::consts::TAU * n as f64;
        let k = (turns.round() as i64).rem_euclid(n as i64);
        let check = num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
        if (check - z).norm() > 1e-6 {
            return Err(Error::InternalExponentError("root of unity not identified".into()));
        }
        ks.push((*lambda, k));
    }
    for j in 0..n as i64 {
        if ks.iter().all(|(l, k)| (l * j - k).rem_euclid(n as i64) == 0) {
            return Ok(Convergence { converges: true, reason: format!("agrees with conjugate {j} of {n}") });
        }
    }
    Ok(Convergence::no("no conjugate matches"))
}

/// Compares projective limit points; coordinates from different fields
/// count as different.
fn same_point(b1: &InfinityBranch, b2: &InfinityBranch) -> bool {
    let (p, q) = (b1.projective_point(), b2.projective_point());
    let cross = |i: usize, j: usize| -> Option<bool> {
        let l = p[i].try_mul(&q[j]).ok()?;
        let r = p[j].try_mul(&q[i]).ok()?;
        Some(l == r)
    };
    (0..4).all(|i| (i + 1..4).all(|j| cross(i, j).unwrap_or(false))) && (0..4).all(|i| p[i].is_zero() == q[i].is_zero())
}

/// `f1, f2` evaluated along the branch, as branch series in `z`.
pub fn residuals(c: &SpaceCurve, b: &InfinityBranch) -> Result<[PuiseuxSeries; 2]> {
    let x1 = PuiseuxSeries::monomial(Orientation::Branch, FieldElement::one(), Rational::one());
    let asg = [(Var::X1, x1), (Var::X2, b.r2.clone()), (Var::X3, b.r3.clone())];
    let cap = int(64);
    Ok([eval_series(&c.f1, &asg, &cap)?, eval_series(&c.f2, &asg, &cap)?])
}

/// True if the residual has no certified nonzero term.
pub fn residual_vanishes(r: &PuiseuxSeries) -> bool {
    r.terms().is_empty() || r.terms().iter().all(|(e, _)| !r.knows(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn x(v: Var) -> MultiPoly {
        MultiPoly::var(v)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::int(n)
    }

    pub(crate) fn example1() -> SpaceCurve {
        let (x1, x2, x3) = (x(Var::X1), x(Var::X2), x(Var::X3));
        let f1 = &(&(&(&(-&x2.pow(2)) - &(&c(2) * &(&x1 * &x3))) + &(&c(2) * &(&x2 * &x3))) - &x1) + &c(3);
        let f2 = &(&x3 + &(&x1 * &x2)) - &x2.pow(2);
        SpaceCurve::new(f1, f2).unwrap()
    }

    #[test]
    fn example_projection_and_lift() {
        let curve = example1();
        let p = project(&curve).unwrap();
        let (x1, x2) = (x(Var::X1), x(Var::X2));
        // -2 x1^2 x2 + 4 x1 x2^2 + x1 - 2 x2^3 + x2^2 - 3
        let expect = &(&(&(&(&(&c(-2) * &(&x1.pow(2) * &x2)) + &(&c(4) * &(&x1 * &x2.pow(2)))) + &x1) - &(&c(2) * &x2.pow(3))) + &x2.pow(2)) - &c(3);
        assert_eq!(p.resultant, expect);
        assert_eq!(p.fp, expect);
        assert_eq!(p.h2, MultiPoly::one());
        assert_eq!(p.h1, &x2.pow(2) - &(&x1 * &x2));
        let (prep, _) = prepare_curve(&curve, None).unwrap();
        assert!(prep.transform.is_identity());
    }

    #[test]
    fn example_branches_vanish_on_curve() {
        let curve = example1();
        let opts = BranchOptions { order: int(4), ..Default::default() };
        let cb = infinity_branches(&curve, &opts).unwrap();
        assert_eq!(cb.branches.len(), 2);
        for b in &cb.branches {
            for r in residuals(&curve, b).unwrap() {
                assert!(residual_vanishes(&r), "residual {r}");
            }
        }
        let b1 = cb.branches.iter().find(|b| b.ramification == 1).unwrap();
        assert_eq!(b1.point.m2, FieldElement::zero());
        assert_eq!(b1.r3.coefficient(&int(0)), FieldElement::from(rat(-1, 2)));
        assert_eq!(b1.r3.coefficient(&int(-1)), FieldElement::from(rat(3, 2)));
        let b2 = cb.branches.iter().find(|b| b.ramification == 2).unwrap();
        assert_eq!(b2.point.m2, FieldElement::one());
        assert_eq!(b2.degree, 2);
        assert_eq!(b2.r2.coefficient(&int(0)), FieldElement::from(rat(1, 4)));
        assert_eq!(b2.r3.coefficient(&int(1)), FieldElement::from(rat(3, 4)));
    }

    #[test]
    fn parabola_needs_shear() {
        // x2 = x1^2, x3 = x1: the projection passes through (0:1:0)
        let (x1, x2, x3) = (x(Var::X1), x(Var::X2), x(Var::X3));
        let curve = SpaceCurve::new(&x2 - &x1.pow(2), &x3 - &x1).unwrap();
        let (prep, proj) = prepare_curve(&curve, None).unwrap();
        assert_eq!(prep.transform, ChangeOfCoords::shear(1, 0));
        let d = proj.fp.total_degree().unwrap();
        assert!(!proj.fp.coefficient(&exps(&[(Var::X2, d)])).is_zero());
    }

    #[test]
    fn proportional_equations_rejected() {
        let f = &x(Var::X1) - &x(Var::X2);
        assert!(matches!(SpaceCurve::new(f.clone(), f.scale(&FieldElement::from_int(3))), Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn line_branch() {
        let (x1, x2, x3) = (x(Var::X1), x(Var::X2), x(Var::X3));
        let curve = SpaceCurve::new(&x2 - &x1, &x3 - &c(1)).unwrap();
        let cb = infinity_branches(&curve, &BranchOptions::default()).unwrap();
        assert_eq!(cb.branches.len(), 1);
        let b = &cb.branches[0];
        assert_eq!(b.r2.terms(), &[(int(1), FieldElement::one())]);
        assert_eq!(b.r3.terms(), &[(int(0), FieldElement::one())]);
        assert!(b.r2.is_exact());
    }

    #[test]
    fn convergence_of_conjugates() {
        let curve = example1();
        let cb = infinity_branches(&curve, &BranchOptions::default()).unwrap();
        let b2 = cb.branches.iter().find(|b| b.ramification == 2).unwrap();
        assert!(converge(b2, b2).unwrap().converges);
        let flip = |s: &PuiseuxSeries| s.map_coeffs(|e, c| if !e.is_integer() { -c } else { c.clone() });
        let other = InfinityBranch { r2: flip(&b2.r2), r3: flip(&b2.r3), ..b2.clone() };
        let v = converge(&other, b2).unwrap();
        assert!(v.converges, "{}", v.reason);
        let b1 = cb.branches.iter().find(|b| b.ramification == 1).unwrap();
        assert!(!converge(b1, b2).unwrap().converges);
    }
}
