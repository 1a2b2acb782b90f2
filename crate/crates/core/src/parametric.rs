//! Branches and asymptotes straight from a rational parametrization
//! `P(s) = (p11, p21, p31) / p`, without implicitizing.
//!
//! Branches come from the Puiseux solutions `s = ℓ(t)` of
//! `p(s) - t p11(s) = 0`; parameter values escaping to infinity are handled
//! in the chart `s = 1/u`.

use num_traits::{One, Zero};

use crate::asymptote::{asymptote_param, AsymptoteParam};
use crate::branches::{ChangeOfCoords, InfinityBranch};
use crate::error::{Error, Result};
use crate::field::{int, FieldElement, Rational, UPoly};
use crate::poly::{MultiPoly, Var};
use crate::puiseux::{newton_expand, ConjugacyClass, ExpansionTarget, Orientation, PuiseuxSeries, Truncation};

pub type SPoly = UPoly<FieldElement>;

fn fzero() -> FieldElement {
    FieldElement::zero()
}

fn deg(p: &SPoly) -> usize {
    p.degree().unwrap_or(0)
}

/// Rational space curve with a common denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricSpaceCurve {
    pub numerators: [SPoly; 3],
    pub denominator: SPoly,
}

impl ParametricSpaceCurve {
    /// Normalizes to a monic denominator sharing no factor with all three
    /// numerators.
    pub fn new(numerators: [SPoly; 3], denominator: SPoly) -> Result<ParametricSpaceCurve> {
        if denominator.is_zero() {
            return Err(Error::InvalidCurve("zero denominator".into()));
        }
        let mut g = denominator.clone();
        for n in &numerators {
            g = g.gcd(n);
        }
        let div = |p: &SPoly| p.div_rem(&g).0;
        let mut den = div(&denominator);
        let mut nums = numerators.map(|n| div(&n));
        let lc = den.lc().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv()?;
            den = den.scale(&inv);
            nums = nums.map(|n| n.scale(&inv));
        }
        let c = ParametricSpaceCurve { numerators: nums, denominator: den };
        if (0..3).all(|i| c.is_constant(i)) {
            return Err(Error::InvalidCurve("all components are constant".into()));
        }
        Ok(c)
    }

    /// From three fractions `a_i / b_i`.
    pub fn from_components(parts: [(SPoly, SPoly); 3]) -> Result<ParametricSpaceCurve> {
        if parts.iter().any(|(_, b)| b.is_zero()) {
            return Err(Error::InvalidCurve("zero denominator".into()));
        }
        let mut den = SPoly::constant(FieldElement::one());
        for (_, b) in &parts {
            let g = den.gcd(b);
            den = den.mul(&b.div_rem(&g).0);
        }
        let nums = parts.map(|(a, b)| a.mul(&den.div_rem(&b).0));
        ParametricSpaceCurve::new(nums, den)
    }

    fn is_constant(&self, i: usize) -> bool {
        let (a, b) = self.component(i);
        deg(&a) == 0 && deg(&b) == 0
    }

    /// Component `i` (0-based) in lowest terms with monic denominator.
    pub fn component(&self, i: usize) -> (SPoly, SPoly) {
        let a = &self.numerators[i];
        let g = a.gcd(&self.denominator);
        let (a, b) = (a.div_rem(&g).0, self.denominator.div_rem(&g).0);
        let lc = b.lc().unwrap().inv().expect("nonzero");
        (a.scale(&lc), b.scale(&lc))
    }

    /// `max(deg p11, deg p)`.
    pub fn degree_p1(&self) -> usize {
        deg(&self.numerators[0]).max(deg(&self.denominator))
    }

    pub fn eval_f64(&self, s: f64) -> [num_complex::Complex64; 3] {
        let ev = |q: &SPoly| q.coeffs().iter().rev().fold(num_complex::Complex64::zero(), |acc, c| acc * s + c.to_complex64());
        let d = ev(&self.denominator);
        [ev(&self.numerators[0]) / d, ev(&self.numerators[1]) / d, ev(&self.numerators[2]) / d]
    }

    /// The same curve in the parameter `u = 1/s`.
    pub fn reciprocal(&self) -> ParametricSpaceCurve {
        let d = self.numerators.iter().chain([&self.denominator]).map(deg).max().unwrap_or(0);
        let rev = |p: &SPoly| {
            let mut cs = p.coeffs().to_vec();
            cs.resize(d + 1, fzero());
            cs.reverse();
            SPoly::new(cs, fzero())
        };
        ParametricSpaceCurve { numerators: self.numerators.clone().map(|n| rev(&n)), denominator: rev(&self.denominator) }
    }

    /// The curve in coordinates with `x1_old = x1 + λ x2 + μ x3`.
    pub fn sheared(&self, lambda: i64, mu: i64) -> ParametricSpaceCurve {
        let [a, b, c] = &self.numerators;
        let f = |k: i64| FieldElement::from_int(k);
        let a2 = a.sub(&b.scale(&f(lambda))).sub(&c.scale(&f(mu)));
        ParametricSpaceCurve { numerators: [a2, b.clone(), c.clone()], denominator: self.denominator.clone() }
    }
}

/// Whether `x1` has a pole wherever `x2` or `x3` has one, so that every
/// branch at infinity is reached by `t = 1/x1 -> 0`.
fn admissible(p: &ParametricSpaceCurve) -> bool {
    let (a1, b1) = p.component(0);
    if deg(&a1) == 0 && deg(&b1) == 0 {
        return false;
    }
    let p1_inf = deg(&a1) > deg(&b1);
    (1..3).all(|i| {
        let (a, b) = p.component(i);
        b1.rem(&b.squarefree_part()).is_zero() && (deg(&a) <= deg(&b) || p1_inf)
    })
}

/// A parametrization after the admissible change of coordinates.
#[derive(Clone, Debug)]
pub struct PreparedParametric {
    pub original: ParametricSpaceCurve,
    pub curve: ParametricSpaceCurve,
    pub transform: ChangeOfCoords,
}

impl PreparedParametric {
    /// Applies a fixed shear, failing if it is not admissible.
    pub fn with_shear(p: &ParametricSpaceCurve, lambda: i64, mu: i64) -> Result<PreparedParametric> {
        let c = p.sheared(lambda, mu);
        if !admissible(&c) {
            return Err(Error::PreparationFailed(format!("shear ({lambda}, {mu}) is not admissible")));
        }
        Ok(PreparedParametric { original: p.clone(), curve: c, transform: ChangeOfCoords::shear(lambda, mu) })
    }
}

/// Same shear search as the implicit preparation.
pub fn prepare_parametric(p: &ParametricSpaceCurve, seed: Option<(i64, i64)>) -> Result<PreparedParametric> {
    let vals = [0, 1, -1, 2, -2, 3, -3];
    let mut cands: Vec<(i64, i64)> = seed.into_iter().collect();
    for l in vals {
        for m in vals {
            if !cands.contains(&(l, m)) {
                cands.push((l, m));
            }
        }
    }
    for (l, m) in cands {
        let c = p.sheared(l, m);
        if admissible(&c) {
            return Ok(PreparedParametric { original: p.clone(), curve: c, transform: ChangeOfCoords::shear(l, m) });
        }
    }
    Err(Error::PreparationFailed("no shear puts every infinity point at x1 = 1".into()))
}

/// Number of terms of `ℓ` that certify all non-negative terms of the branch.
pub fn truncation_bound(p: &ParametricSpaceCurve) -> usize {
    2 * p.degree_p1() + 1
}

/// Which parameter chart a solution lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `s = ℓ(t)` tends to a root of the denominator.
    Finite,
    /// `s = 1/ℓ(t)` with `ℓ(0) = 0`.
    Reciprocal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamSolution {
    pub chart: Chart,
    pub class: ConjugacyClass,
}

fn chart_curve(p: &ParametricSpaceCurve, chart: Chart) -> ParametricSpaceCurve {
    match chart {
        Chart::Finite => p.clone(),
        Chart::Reciprocal => p.reciprocal(),
    }
}

/// `b(y) - t a(y)` where `a / b` is `p1` in lowest terms.
fn defining(p: &ParametricSpaceCurve) -> MultiPoly {
    let (a, b) = p.component(0);
    let b = MultiPoly::from_upoly(Var::Y, &b);
    let a = MultiPoly::from_upoly(Var::Y, &a);
    &b - &(&MultiPoly::var(Var::T) * &a)
}

/// Local solutions of `p(s) - t p11(s) = 0` with `x1 -> ∞`, one per
/// conjugacy class, each with at least `n_terms` terms.
pub fn param_solutions(p: &ParametricSpaceCurve, n_terms: usize) -> Result<Vec<ParamSolution>> {
    if p.is_constant(0) {
        return Err(Error::InvalidCurve("x1 is constant along the curve".into()));
    }
    let target = ExpansionTarget::terms(n_terms);
    let mut out = Vec::new();
    for chart in [Chart::Finite, Chart::Reciprocal] {
        let c = chart_curve(p, chart);
        let g = defining(&c);
        if !g.has_var(Var::Y) {
            continue;
        }
        for class in newton_expand(&g, Var::Y, Var::T, &target)? {
            let starts_at_zero = class.representative.coefficient(&Rational::zero()).is_zero();
            if chart == Chart::Finite || starts_at_zero {
                out.push(ParamSolution { chart, class });
            }
        }
    }
    Ok(out)
}

fn eval_at_series(q: &SPoly, l: &PuiseuxSeries, cap: &Rational) -> Result<PuiseuxSeries> {
    let mut acc = PuiseuxSeries::zero(Orientation::Local);
    for c in q.coeffs().iter().rev() {
        acc = acc.try_mul(l, Some(cap))?.try_add(&PuiseuxSeries::constant(Orientation::Local, c.clone()))?;
    }
    Ok(acc)
}

/// `r_j(z) = p_j(ℓ(1/z))`. `order` is the local order in `t` to which the
/// components must be certified; branch terms with exponent above `-order`
/// are then exact.
pub fn param_branch(p: &ParametricSpaceCurve, sol: &ParamSolution, order: &Rational) -> Result<InfinityBranch> {
    let c = chart_curve(p, sol.chart);
    let l = &sol.class.representative;
    let n = sol.class.class_size;
    let mut cap = order + int(c.denominator.degree().unwrap_or(0) as i64 + 2);
    let mut den = eval_at_series(&c.denominator, l, &cap)?;
    // the quotient loses twice the valuation of the denominator
    if let Some(v) = den.terms().first().map(|(e, _)| e.clone()) {
        let need = order + &v + &v + int(1);
        if need > cap {
            cap = need;
            den = eval_at_series(&c.denominator, l, &cap)?;
        }
    }
    let mut out = Vec::new();
    for k in 1..3 {
        let num = eval_at_series(&c.numerators[k], l, &cap)?;
        let r = num.try_div(&den, order)?;
        let ok = match r.truncation() {
            Truncation::Exact => true,
            Truncation::Order(o) => o >= order,
        };
        if !ok {
            return Err(Error::underflow(format!("local order {order}"), r.truncation()));
        }
        out.push(r.mirror().with_ramification(n));
    }
    let r3 = out.pop().unwrap();
    let r2 = out.pop().unwrap();
    InfinityBranch::from_series(r2, r3, n)
}

#[derive(Clone, Debug)]
pub struct ParamOptions {
    /// Local order of the components; the default certifies every
    /// non-negative branch exponent.
    pub order: Rational,
    /// Terms of `ℓ`; `None` uses [`truncation_bound`].
    pub terms: Option<usize>,
    pub seed: Option<(i64, i64)>,
}

impl Default for ParamOptions {
    fn default() -> Self {
        ParamOptions { order: Rational::one(), terms: None, seed: None }
    }
}

#[derive(Clone, Debug)]
pub struct ParamReport {
    pub prepared: PreparedParametric,
    pub solutions: Vec<ParamSolution>,
    pub branches: Vec<InfinityBranch>,
    pub asymptotes: Vec<AsymptoteParam>,
}

/// Full parametric pipeline. If the requested number of terms does not
/// certify the branches to `order`, the expansion is redone with twice as
/// many terms.
pub fn param_asymptotes(p: &ParametricSpaceCurve, opts: &ParamOptions) -> Result<ParamReport> {
    param_asymptotes_prepared(prepare_parametric(p, opts.seed)?, opts)
}

/// [`param_asymptotes`] for an already prepared curve.
pub fn param_asymptotes_prepared(prepared: PreparedParametric, opts: &ParamOptions) -> Result<ParamReport> {
    let c = &prepared.curve;
    let mut terms = opts.terms.unwrap_or_else(|| truncation_bound(c));
    for _ in 0..8 {
        let solutions = param_solutions(c, terms)?;
        let branches: Result<Vec<_>> = solutions.iter().map(|s| param_branch(c, s, &opts.order)).collect();
        match branches {
            Ok(branches) => {
                let asymptotes = branches.iter().map(asymptote_param).collect::<Result<Vec<_>>>()?;
                return Ok(ParamReport { prepared, solutions, branches, asymptotes });
            }
            Err(Error::TruncationUnderflow { .. }) => terms *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::underflow(format!("local order {}", opts.order), format!("{terms} terms")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn sp(cs: &[i64]) -> SPoly {
        SPoly::new(cs.iter().map(|&c| FieldElement::from_int(c)).collect(), fzero())
    }
    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::from(rat(n, d))
    }

    fn example() -> ParametricSpaceCurve {
        // ((-1 + s^2)/s^3, (-1 + s^2)/s^2, 1/s)
        ParametricSpaceCurve::from_components([(sp(&[-1, 0, 1]), sp(&[0, 0, 0, 1])), (sp(&[-1, 0, 1]), sp(&[0, 0, 1])), (sp(&[1]), sp(&[0, 1]))])
            .unwrap()
    }

    #[test]
    fn common_denominator() {
        let c = example();
        assert_eq!(c.denominator, sp(&[0, 0, 0, 1]));
        assert_eq!(c.numerators[1], sp(&[0, -1, 0, 1]));
        assert_eq!(truncation_bound(&c), 7);
    }

    #[test]
    fn example_solution_and_branch() {
        let c = example();
        let sols = param_solutions(&c, 7).unwrap();
        assert_eq!(sols.len(), 1);
        let l = &sols[0].class;
        assert_eq!(l.class_size, 3);
        let r = &l.representative;
        assert_eq!(r.coefficient(&rat(1, 3)), fe(-1, 1));
        assert_eq!(r.coefficient(&rat(1, 1)), fe(1, 3));
        assert_eq!(r.coefficient(&rat(5, 3)), fe(-1, 9));
        assert_eq!(r.coefficient(&rat(7, 3)), fe(2, 81));
        let b = param_branch(&c, &sols[0], &int(3)).unwrap();
        assert_eq!(b.r2.coefficient(&rat(2, 3)), fe(-1, 1));
        assert_eq!(b.r2.coefficient(&int(0)), fe(1, 3));
        assert_eq!(b.r2.coefficient(&rat(-2, 3)), fe(-1, 9));
        assert_eq!(b.r2.coefficient(&rat(-4, 3)), fe(2, 81));
        assert_eq!(b.r3.coefficient(&rat(-5, 3)), fe(1, 81));
        assert_eq!(b.r3.coefficient(&rat(-7, 3)), fe(-1, 243));
        assert_eq!(b.r3.coefficient(&rat(-1, 3)), fe(-1, 3));
    }

    #[test]
    fn example_asymptote() {
        let rep = param_asymptotes(&example(), &ParamOptions::default()).unwrap();
        assert_eq!(rep.asymptotes.len(), 1);
        assert_eq!(rep.asymptotes[0].to_string(), "(t^3, -t^2 + 1/3, -t)");
    }

    #[test]
    fn twisted_cubic_is_its_own_asymptote() {
        let one = sp(&[1]);
        let c = ParametricSpaceCurve::from_components([(sp(&[0, 1]), one.clone()), (sp(&[0, 0, 1]), one.clone()), (sp(&[0, 0, 0, 1]), one)]).unwrap();
        let rep = param_asymptotes(&c, &ParamOptions::default()).unwrap();
        assert_eq!(rep.solutions[0].chart, Chart::Reciprocal);
        assert_eq!(rep.asymptotes[0].to_string(), "(t, t^2, t^3)");
    }

    #[test]
    fn hyperbola_in_space() {
        let c = ParametricSpaceCurve::from_components([(sp(&[0, 1]), sp(&[1])), (sp(&[1]), sp(&[0, 1])), (sp(&[1]), sp(&[1]))]).unwrap();
        let rep = param_asymptotes(&c, &ParamOptions::default()).unwrap();
        let s: Vec<String> = rep.asymptotes.iter().map(|a| a.to_string()).collect();
        assert!(s.contains(&"(t, 0, 1)".to_string()), "{s:?}");
    }

    #[test]
    fn parabola_gets_sheared() {
        // (s, 1/s, 1): x2 has a pole where x1 does not
        let c = ParametricSpaceCurve::from_components([(sp(&[0, 1]), sp(&[1])), (sp(&[1]), sp(&[0, 1])), (sp(&[1]), sp(&[1]))]).unwrap();
        let p = prepare_parametric(&c, None).unwrap();
        assert_eq!(p.transform, ChangeOfCoords::shear(1, 0));
    }
}
