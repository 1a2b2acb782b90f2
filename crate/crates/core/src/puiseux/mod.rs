//! Truncated Puiseux series with certified precision, and Newton polygon
//! expansion of plane curve germs.
//!
//! A series in *local* orientation is written in increasing powers of `t`;
//! its truncation `Order(o)` means every term of exponent below `o` is known.
//! A *branch* series is written in decreasing powers of `z = 1/t`; its
//! truncation `Order(o)` means every term of exponent above `o` is known.

mod newton;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};
use crate::poly::{MultiPoly, Var};

pub use newton::{newton_expand, BiPoly, ConjugacyClass, ExpansionTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Local,
    Branch,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Truncation {
    Exact,
    Order(Rational),
}

impl Truncation {
    fn bound(&self) -> Option<&Rational> {
        match self {
            Truncation::Exact => None,
            Truncation::Order(o) => Some(o),
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Exact => write!(f, "exact"),
            Truncation::Order(o) => write!(f, "{o}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    orientation: Orientation,
    ramification: u32,
    /// Nonzero terms; ascending exponents when local, descending when branch.
    terms: Vec<(Rational, FieldElement)>,
    truncation: Truncation,
}

impl PartialEq for PuiseuxSeries {
    fn eq(&self, o: &Self) -> bool {
        self.orientation == o.orientation && self.truncation == o.truncation && self.terms == o.terms
    }
}

fn denom_u32(r: &Rational) -> u32 {
    r.denom().try_into().unwrap_or(u32::MAX)
}

/// Local-orientation working form.
#[derive(Clone, Debug)]
struct Loc {
    terms: Vec<(Rational, FieldElement)>,
    order: Option<Rational>,
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if a < b { a } else { b }),
    }
}

impl Loc {
    fn normalize(mut self) -> Loc {
        let mut map: BTreeMap<Rational, FieldElement> = BTreeMap::new();
        for (e, c) in self.terms.drain(..) {
            if let Some(o) = &self.order {
                if &e >= o {
                    continue;
                }
            }
            match map.get_mut(&e) {
                Some(old) => *old = &*old + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        self.terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self
    }

    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.order.is_none()
    }

    /// Lower bound on the valuation.
    fn val(&self) -> Option<Rational> {
        self.terms.first().map(|t| t.0.clone()).or_else(|| self.order.clone())
    }

    fn add(&self, o: &Loc) -> Loc {
        let order = min_opt(self.order.clone(), o.order.clone());
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Loc { terms, order }.normalize()
    }

    fn neg(&self) -> Loc {
        Loc { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(), order: self.order.clone() }
    }

    fn mul(&self, o: &Loc, cap: Option<&Rational>) -> Loc {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Loc { terms: Vec::new(), order: None };
        }
        let va = self.val().expect("nonzero");
        let vb = o.val().expect("nonzero");
        let natural = min_opt(self.order.as_ref().map(|x| x + &vb), o.order.as_ref().map(|x| x + &va));
        let mut order = natural.clone();
        let mut capped = false;
        if let Some(c) = cap {
            if natural.as_ref().is_none_or(|n| c < n) {
                order = Some(c.clone());
                capped = true;
            }
        }
        let mut dropped = false;
        let mut map: BTreeMap<Rational, FieldElement> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea + eb;
                if order.as_ref().is_some_and(|ord| &e >= ord) {
                    dropped = true;
                    break;
                }
                let p = ca * cb;
                match map.get_mut(&e) {
                    Some(old) => *old = &*old + &p,
                    None => {
                        map.insert(e, p);
                    }
                }
            }
        }
        if capped && !dropped {
            order = natural;
        }
        Loc { terms: map.into_iter().collect(), order }.normalize()
    }

    fn div(&self, d: &Loc, cap: &Rational) -> Result<Loc> {
        let (vd, d0) = match d.terms.first() {
            Some((e, c)) => (e.clone(), c.clone()),
            None if d.order.is_none() => return Err(Error::DivisionByZeroSeries),
            None => return Err(Error::underflow("a nonzero leading term", d.order.as_ref().unwrap())),
        };
        if self.is_exact_zero() {
            return Ok(Loc { terms: Vec::new(), order: None });
        }
        let va = self.val().expect("nonzero");
        let rel_d = d.order.as_ref().map(|o| o - &vd);
        let mut order = min_opt(self.order.as_ref().map(|o| o - &vd), rel_d.map(|r| &va - &vd + r));
        order = min_opt(order, Some(cap.clone()));
        let bound = order.clone().expect("capped");
        let inv = d0.inv()?;
        let mut rem: BTreeMap<Rational, FieldElement> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        let mut skipped = false;
        while let Some((e, c)) = rem.iter().next().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = &e - &vd;
            if qe >= bound {
                break;
            }
            let qc = &c * &inv;
            for (de, dc) in &d.terms {
                let ne = &qe + de;
                if &ne - &vd >= bound {
                    skipped = true;
                    break;
                }
                let sub = &qc * dc;
                let entry = rem.entry(ne.clone()).or_insert_with(|| dc.zero_value());
                *entry = &*entry - &sub;
                if entry.is_zero() {
                    rem.remove(&ne);
                }
            }
            q.push((qe, qc));
        }
        if rem.is_empty() && !skipped && self.order.is_none() && d.order.is_none() {
            order = None;
        }
        Ok(Loc { terms: q, order }.normalize())
    }
}

trait ZeroValue {
    fn zero_value(&self) -> FieldElement;
}

impl ZeroValue for FieldElement {
    fn zero_value(&self) -> FieldElement {
        crate::field::Scalar::zero_like(self)
    }
}

impl PuiseuxSeries {
    fn build(orientation: Orientation, ramification: u32, loc: Loc) -> PuiseuxSeries {
        let loc = loc.normalize();
        let mut n = ramification.max(1);
        for (e, _) in &loc.terms {
            n = n.lcm(&denom_u32(e));
        }
        let (terms, truncation) = match orientation {
            Orientation::Local => (loc.terms, loc.order.map_or(Truncation::Exact, Truncation::Order)),
            Orientation::Branch => {
                (loc.terms.into_iter().map(|(e, c)| (-e, c)).collect(), loc.order.map_or(Truncation::Exact, |o| Truncation::Order(-o)))
            }
        };
        PuiseuxSeries { orientation, ramification: n, terms, truncation }
    }

    /// Same function in local form, `t = 1/z` (no extra factor).
    fn loc(&self) -> Loc {
        match self.orientation {
            Orientation::Local => Loc { terms: self.terms.clone(), order: self.truncation.bound().cloned() },
            Orientation::Branch => {
                Loc { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(), order: self.truncation.bound().map(|o| -o) }
            }
        }
    }

    fn rebuild(&self, loc: Loc, ramification: u32) -> PuiseuxSeries {
        Self::build(self.orientation, ramification, loc)
    }

    pub fn new(orientation: Orientation, terms: Vec<(Rational, FieldElement)>, truncation: Truncation, ramification: u32) -> PuiseuxSeries {
        let order = truncation.bound().cloned();
        let loc = match orientation {
            Orientation::Local => Loc { terms, order },
            Orientation::Branch => Loc { terms: terms.into_iter().map(|(e, c)| (-e, c)).collect(), order: order.map(|o| -o) },
        };
        Self::build(orientation, ramification, loc)
    }

    pub fn local(terms: Vec<(Rational, FieldElement)>, truncation: Truncation) -> PuiseuxSeries {
        Self::new(Orientation::Local, terms, truncation, 1)
    }

    pub fn branch(terms: Vec<(Rational, FieldElement)>, truncation: Truncation) -> PuiseuxSeries {
        Self::new(Orientation::Branch, terms, truncation, 1)
    }

    pub fn zero(orientation: Orientation) -> PuiseuxSeries {
        Self::new(orientation, Vec::new(), Truncation::Exact, 1)
    }

    pub fn constant(orientation: Orientation, c: FieldElement) -> PuiseuxSeries {
        Self::new(orientation, vec![(Rational::zero(), c)], Truncation::Exact, 1)
    }

    pub fn monomial(orientation: Orientation, c: FieldElement, e: Rational) -> PuiseuxSeries {
        Self::new(orientation, vec![(e, c)], Truncation::Exact, 1)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn with_ramification(mut self, n: u32) -> PuiseuxSeries {
        self.ramification = self.ramification.lcm(&n.max(1));
        self
    }

    pub fn terms(&self) -> &[(Rational, FieldElement)] {
        &self.terms
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.truncation == Truncation::Exact
    }

    pub fn coefficient(&self, e: &Rational) -> FieldElement {
        self.terms.iter().find(|(x, _)| x == e).map(|t| t.1.clone()).unwrap_or_else(FieldElement::zero)
    }

    /// Whether the coefficient of `z^e` (or `t^e`) is certified.
    pub fn knows(&self, e: &Rational) -> bool {
        match (&self.truncation, self.orientation) {
            (Truncation::Exact, _) => true,
            (Truncation::Order(o), Orientation::Local) => e < o,
            (Truncation::Order(o), Orientation::Branch) => e > o,
        }
    }

    /// Known coefficient or a truncation error.
    pub fn certified_coefficient(&self, e: &Rational) -> Result<FieldElement> {
        if self.knows(e) {
            Ok(self.coefficient(e))
        } else {
            Err(Error::underflow(format!("exponent {e}"), &self.truncation))
        }
    }

    fn check_same(&self, o: &PuiseuxSeries) -> Result<()> {
        if self.orientation == o.orientation {
            Ok(())
        } else {
            Err(Error::OrientationMismatch)
        }
    }

    pub fn try_add(&self, o: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.check_same(o)?;
        Ok(self.rebuild(self.loc().add(&o.loc()), self.ramification.lcm(&o.ramification)))
    }

    pub fn try_sub(&self, o: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.check_same(o)?;
        Ok(self.rebuild(self.loc().add(&o.loc().neg()), self.ramification.lcm(&o.ramification)))
    }

    pub fn neg(&self) -> PuiseuxSeries {
        self.rebuild(self.loc().neg(), self.ramification)
    }

    /// Product; `cap` bounds the precision in local terms (`t`-exponent).
    pub fn try_mul(&self, o: &PuiseuxSeries, cap: Option<&Rational>) -> Result<PuiseuxSeries> {
        self.check_same(o)?;
        Ok(self.rebuild(self.loc().mul(&o.loc(), cap), self.ramification.lcm(&o.ramification)))
    }

    /// Quotient by long division, computed no further than `cap` (local
    /// `t`-exponent).
    pub fn try_div(&self, o: &PuiseuxSeries, cap: &Rational) -> Result<PuiseuxSeries> {
        self.check_same(o)?;
        Ok(self.rebuild(self.loc().div(&o.loc(), cap)?, self.ramification.lcm(&o.ramification)))
    }

    pub fn pow(&self, k: u32, cap: Option<&Rational>) -> PuiseuxSeries {
        let mut acc = Loc { terms: vec![(Rational::zero(), FieldElement::one())], order: None };
        let mut base = self.loc();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, cap);
            }
        }
        self.rebuild(acc, self.ramification)
    }

    pub fn scale(&self, c: &FieldElement) -> PuiseuxSeries {
        let mut l = self.loc();
        if c.is_zero() {
            l.terms.clear();
        }
        for t in l.terms.iter_mut() {
            t.1 = &t.1 * c;
        }
        self.rebuild(l, self.ramification)
    }

    /// Multiplies by `t^e` (local) or `z^e` (branch).
    pub fn shift(&self, e: &Rational) -> PuiseuxSeries {
        let d = match self.orientation {
            Orientation::Local => e.clone(),
            Orientation::Branch => -e,
        };
        let l = self.loc();
        let l = Loc { terms: l.terms.into_iter().map(|(x, c)| (x + &d, c)).collect(), order: l.order.map(|o| o + &d) };
        self.rebuild(l, self.ramification)
    }

    /// Same function read in the other orientation, `z = 1/t`.
    pub fn mirror(&self) -> PuiseuxSeries {
        let other = match self.orientation {
            Orientation::Local => Orientation::Branch,
            Orientation::Branch => Orientation::Local,
        };
        Self::build(other, self.ramification, self.loc())
    }

    /// `r(z) = z φ(1/z)` for a local `φ`.
    pub fn to_branch_form(&self) -> Result<PuiseuxSeries> {
        if self.orientation != Orientation::Local {
            return Err(Error::OrientationMismatch);
        }
        Ok(self.shift(&-Rational::one()).mirror())
    }

    /// `φ(t) = t r(1/t)` for a branch `r`.
    pub fn from_branch_form(&self) -> Result<PuiseuxSeries> {
        if self.orientation != Orientation::Branch {
            return Err(Error::OrientationMismatch);
        }
        Ok(self.shift(&-Rational::one()).mirror())
    }

    /// Drops all terms strictly beyond the given bound and marks the result
    /// as truncated there (local: exponents `>= o`; branch: `<= o`).
    pub fn truncate_at(&self, o: &Rational) -> PuiseuxSeries {
        let mut l = self.loc();
        let lo = match self.orientation {
            Orientation::Local => o.clone(),
            Orientation::Branch => -o,
        };
        l.order = min_opt(l.order, Some(lo));
        self.rebuild(l, self.ramification)
    }

    /// Terms of non-negative exponent as an exact series; needs a branch
    /// series certified through exponent zero.
    pub fn nonnegative_part(&self) -> Result<PuiseuxSeries> {
        if self.orientation != Orientation::Branch {
            return Err(Error::OrientationMismatch);
        }
        if !self.knows(&Rational::zero()) {
            return Err(Error::underflow("exponent 0", &self.truncation));
        }
        let terms = self.terms.iter().filter(|(e, _)| !e.is_negative()).cloned().collect();
        Ok(PuiseuxSeries::new(Orientation::Branch, terms, Truncation::Exact, self.ramification))
    }

    /// Number of certified nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading exponent (lowest for local, highest for branch).
    pub fn leading_exponent(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.0)
    }

    /// Evaluates at a positive real `z` (or `t`) using the embedding of the
    /// coefficients, principal real roots for fractional powers.
    pub fn eval_f64(&self, x: f64) -> num_complex::Complex64 {
        self.terms.iter().map(|(e, c)| c.to_complex64() * x.powf(crate::field::rational_to_f64(e))).sum()
    }

    /// Same exponents, coefficients mapped.
    pub fn map_coeffs(&self, f: impl Fn(&Rational, &FieldElement) -> FieldElement) -> PuiseuxSeries {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), f(e, c))).collect();
        PuiseuxSeries::new(self.orientation, terms, self.truncation.clone(), self.ramification)
    }

    /// All coefficients lie in ℚ.
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.as_rational().is_some())
    }

    pub fn extension(&self) -> Option<std::sync::Arc<crate::field::ExtensionField>> {
        self.terms.iter().find(|(_, c)| c.as_rational().is_none()).map(|(_, c)| c.context().clone())
    }
}

fn fmt_exp(e: &Rational) -> String {
    if e.is_integer() && !e.is_negative() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.orientation {
            Orientation::Local => "t",
            Orientation::Branch => "z",
        };
        let mut first = true;
        for (e, c) in &self.terms {
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                v.to_string()
            } else {
                format!("{v}^{}", fmt_exp(e))
            };
            let (neg, body) = crate::poly::fmt_signed_term(c, &mono);
            let body = if body.is_empty() { "1".to_string() } else { body };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if let Truncation::Order(o) = &self.truncation {
            write!(f, " + O({v}^{})", fmt_exp(o))?;
        }
        Ok(())
    }
}

/// Substitutes series for variables. `cap` limits the work: terms past it
/// (in local `t`-exponents) are not computed. All series must share an
/// orientation.
pub fn eval_series(f: &MultiPoly, assignment: &[(Var, PuiseuxSeries)], cap: &Rational) -> Result<PuiseuxSeries> {
    let orientation = assignment.first().map(|a| a.1.orientation).unwrap_or(Orientation::Local);
    if assignment.iter().any(|a| a.1.orientation != orientation) {
        return Err(Error::OrientationMismatch);
    }
    for v in f.vars() {
        if !assignment.iter().any(|a| a.0 == v) {
            return Err(Error::InvalidArgument(format!("no series given for {v}")));
        }
    }
    let mut ram = 1u32;
    for (_, s) in assignment {
        ram = ram.lcm(&s.ramification);
    }
    let mut powers: BTreeMap<(usize, u32), Loc> = BTreeMap::new();
    let mut acc = Loc { terms: Vec::new(), order: None };
    for (e, c) in f.terms() {
        let mut term = Loc { terms: vec![(Rational::zero(), c.clone())], order: None };
        for (vi, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let s = &assignment.iter().find(|a| a.0.index() == vi).expect("checked").1;
            let p = powers.entry((vi, k)).or_insert_with(|| s.pow(k, Some(cap)).loc()).clone();
            term = term.mul(&p, Some(cap));
        }
        acc = acc.add(&term);
    }
    Ok(PuiseuxSeries::build(orientation, ram, acc))
}

/// Like [`eval_series`] but fails unless the result is certified up to
/// `needed` (local `t`-exponent).
pub fn eval_series_to(f: &MultiPoly, assignment: &[(Var, PuiseuxSeries)], needed: &Rational) -> Result<PuiseuxSeries> {
    let s = eval_series(f, assignment, needed)?;
    let ok = match (&s.truncation, s.orientation) {
        (Truncation::Exact, _) => true,
        (Truncation::Order(o), Orientation::Local) => o >= needed,
        (Truncation::Order(o), Orientation::Branch) => -o >= *needed,
    };
    if ok {
        Ok(s)
    } else {
        Err(Error::underflow(needed, &s.truncation))
    }
}

/// Compares exponents in the direction of a series: earlier terms first.
pub fn exponent_order(o: Orientation, a: &Rational, b: &Rational) -> Ordering {
    match o {
        Orientation::Local => a.cmp(b),
        Orientation::Branch => b.cmp(a),
    }
}
