//! Sparse multivariate polynomials with coefficients in a field context.

mod resultant;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational, UPoly};

pub use resultant::{resultant, subresultant_first, subresultant_prs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X1,
    X2,
    X3,
    X4,
    Y,
    T,
    S,
}

pub const NVARS: usize = 7;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X1, Var::X2, Var::X3, Var::X4, Var::Y, Var::T, Var::S];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::X3 => "x3",
            Var::X4 => "x4",
            Var::Y => "y",
            Var::T => "t",
            Var::S => "s",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Exps = [u32; NVARS];

/// Polynomial with exact coefficients; all coefficients share one context
/// (up to rational values, which coerce freely).
#[derive(Clone)]
pub struct MultiPoly {
    terms: BTreeMap<Exps, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms.len() == o.terms.len() && self.terms.iter().zip(&o.terms).all(|(a, b)| a.0 == b.0 && a.1 == b.1)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn mono_of(v: Var, k: u32) -> Exps {
    let mut e = [0; NVARS];
    e[v.index()] = k;
    e
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NVARS], c);
        }
        MultiPoly { terms }
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(FieldElement::from_rational(r))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(FieldElement::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(FieldElement::one(), mono_of(v, 1))
    }

    pub fn monomial(c: FieldElement, e: Exps) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exps, FieldElement)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exps, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(FieldElement::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Variables that actually occur, in canonical order.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.terms.keys().any(|e| e[v.index()] > 0)).collect()
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lex-leading term (x1 most significant).
    pub fn leading(&self) -> Option<(&Exps, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, e: &Exps) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients of `v^k`, `k = 0..=deg`, as polynomials free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.degree(v).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(); d + 1];
        for (e, c) in &self.terms {
            let k = e[v.index()] as usize;
            let mut e2 = *e;
            e2[v.index()] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn from_coeffs_in(v: Var, cs: &[MultiPoly]) -> Self {
        let mut p = MultiPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = *e;
                e2[v.index()] += k as u32;
                p.add_term(e2, a.clone());
            }
        }
        p
    }

    /// Coefficient of the highest power of `v`.
    pub fn lc_in(&self, v: Var) -> MultiPoly {
        self.coeffs_in(v).pop().unwrap_or_else(MultiPoly::zero)
    }

    pub fn from_upoly(v: Var, p: &UPoly<FieldElement>) -> Self {
        MultiPoly::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (mono_of(v, k as u32), c.clone())))
    }

    /// Univariate view; `None` if another variable occurs.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly<FieldElement>> {
        if self.vars().iter().any(|&w| w != v) {
            return None;
        }
        let cs: Vec<FieldElement> = self.coeffs_in(v).into_iter().map(|c| c.constant_value().unwrap_or_else(FieldElement::zero)).collect();
        let proto = self.terms.values().next().map(crate::field::Scalar::zero_like).unwrap_or_else(FieldElement::zero);
        Some(UPoly::new(cs, proto))
    }

    /// Substitutes a polynomial for `v`.
    pub fn subst(&self, v: Var, q: &MultiPoly) -> MultiPoly {
        if !self.has_var(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero();
        for c in cs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    pub fn eval_var(&self, v: Var, x: &FieldElement) -> MultiPoly {
        self.subst(v, &MultiPoly::constant(x.clone()))
    }

    /// Substitutes in every variable simultaneously.
    pub fn subst_all(&self, map: &[(Var, MultiPoly)]) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        let mut cache: BTreeMap<(usize, u32), MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (vi, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let v = Var::ALL[vi];
                let factor = match map.iter().find(|(w, _)| *w == v) {
                    Some((_, q)) => cache.entry((vi, k)).or_insert_with(|| q.pow(k)).clone(),
                    None => MultiPoly::monomial(FieldElement::one(), mono_of(v, k)),
                };
                term = &term * &factor;
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().filter(|(e, _)| e[v.index()] > 0).map(|(e, c)| {
            let mut e2 = *e;
            let k = e2[v.index()];
            e2[v.index()] -= 1;
            (e2, c.scale(&Rational::from_integer(k.into())))
        }))
    }

    /// Homogenizes with the new variable `h` (total degree of the result is
    /// the total degree of `self`).
    pub fn homogenize(&self, h: Var) -> Result<MultiPoly> {
        if self.has_var(h) {
            return Err(Error::VariablePresent(h));
        }
        let d = self.total_degree().unwrap_or(0);
        Ok(MultiPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e2 = *e;
            e2[h.index()] = d - e.iter().sum::<u32>();
            (e2, c.clone())
        })))
    }

    /// Homogeneous part of top total degree.
    pub fn leading_form(&self) -> MultiPoly {
        let d = self.total_degree().unwrap_or(0);
        MultiPoly::from_terms(self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (*e, c.clone())))
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        let (de, dc) = d.leading().map(|(e, c)| (*e, c.clone()))?;
        let dinv = dc.inv().ok()?;
        let mut r = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((re, rc)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            let mut m = [0u32; NVARS];
            for i in 0..NVARS {
                if re[i] < de[i] {
                    return None;
                }
                m[i] = re[i] - de[i];
            }
            let c = &rc * &dinv;
            let t = MultiPoly::monomial(c, m);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Scalar multiple with lex-leading coefficient one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Pseudo-remainder in `v`: `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn prem(&self, b: &MultiPoly, v: Var) -> MultiPoly {
        let n = b.degree(v).unwrap_or(0);
        let m = self.degree(v).unwrap_or(0);
        if self.is_zero() || m < n {
            return self.clone();
        }
        let lb = b.lc_in(v);
        let mut r = self.clone();
        let mut e = m - n + 1;
        while !r.is_zero() && r.degree(v).unwrap_or(0) >= n {
            let dr = r.degree(v).unwrap();
            let lr = r.lc_in(v);
            let shift = MultiPoly::monomial(FieldElement::one(), mono_of(v, dr - n));
            r = &(&lb * &r) - &(&(&lr * &shift) * b);
            e -= 1;
        }
        &lb.pow(e) * &r
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    pub fn content_in(&self, v: Var) -> MultiPoly {
        let mut g = MultiPoly::zero();
        for c in self.coeffs_in(v) {
            g = gcd(&g, &c);
            if g.is_constant() && !g.is_zero() {
                return MultiPoly::one();
            }
        }
        g
    }

    pub fn primitive_in(&self, v: Var) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Squarefree part, normalized monic.
    pub fn squarefree_part(&self) -> MultiPoly {
        let mut g = self.clone();
        for v in self.vars() {
            g = gcd(&g, &self.derivative(v));
        }
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Some coefficient lies outside ℚ.
    pub fn extension_context(&self) -> Option<std::sync::Arc<crate::field::ExtensionField>> {
        self.terms.values().find(|c| c.as_rational().is_none()).map(|c| c.context().clone())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    pub fn rename(&self, from: Var, to: Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e2 = *e;
            let k = e2[from.index()];
            e2[from.index()] = 0;
            e2[to.index()] += k;
            (e2, c.clone())
        }))
    }
}

/// Greatest common divisor, monic; `gcd(0, 0) = 0`.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one();
    }
    let mut vars = f.vars();
    for v in g.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    let v = vars[0];
    if !f.has_var(v) {
        return gcd(f, &g.content_in(v));
    }
    if !g.has_var(v) {
        return gcd(&f.content_in(v), g);
    }
    let cf = f.content_in(v);
    let cg = g.content_in(v);
    let c = gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree(v) < b.degree(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() && b.degree(v).unwrap_or(0) > 0 {
        let r = a.prem(&b, v);
        a = b;
        b = if r.is_zero() { r } else { r.primitive_in(v) };
    }
    let core = if b.is_zero() { a.primitive_in(v) } else { MultiPoly::one() };
    (&c * &core).monic()
}

fn add_polys(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut p = a.clone();
    for (e, c) in &b.terms {
        p.add_term(*e, c.clone());
    }
    p
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        add_polys(self, o)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for i in 0..NVARS {
                    e[i] += eb[i];
                }
                p.add_term(e, ca * cb);
            }
        }
        p
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(Var::ALL[i].name().to_string()),
            _ => parts.push(format!("{}^{}", Var::ALL[i].name(), k)),
        }
    }
    parts.join("*")
}

/// Writes `c*m` with the sign split off and unit coefficients dropped.
pub(crate) fn fmt_signed_term(c: &FieldElement, mono: &str) -> (bool, String) {
    if let Some(r) = c.as_rational() {
        let neg = r < Rational::zero();
        let a = if neg { -r } else { r };
        let body = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono.to_string()
        } else {
            format!("{a}*{mono}")
        };
        return (neg, body);
    }
    let (neg, c) = if c.to_string().starts_with('-') { (true, -c) } else { (false, c.clone()) };
    let body = if mono.is_empty() { c.to_string() } else { format!("{c}*{mono}") };
    (neg, body)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ts: Vec<(&Exps, &FieldElement)> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (i, (e, c)) in ts.into_iter().enumerate() {
            let (neg, body) = fmt_signed_term(c, &fmt_monomial(e));
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Builds an exponent vector from `(var, power)` pairs.
pub fn exps(pairs: &[(Var, u32)]) -> Exps {
    let mut e = [0; NVARS];
    for &(v, k) in pairs {
        e[v.index()] += k;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> MultiPoly {
        MultiPoly::var(v)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::int(n)
    }

    #[test]
    fn display_is_graded() {
        let p = &(&x(Var::X2).pow(2) - &(&c(3) * &x(Var::X1))) + &c(-1);
        assert_eq!(p.to_string(), "x2^2 - 3*x1 - 1");
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = &x(Var::X1) + &x(Var::X2);
        let b = &x(Var::X1) - &c(2);
        let d = &(&x(Var::X2).pow(2) + &c(1)) * &x(Var::X1);
        let f = &(&a * &b) * &a;
        let g = &(&a * &d) * &b;
        assert_eq!(f.div_exact(&a), Some(&a * &b));
        assert!(f.div_exact(&d).is_none());
        assert_eq!(gcd(&f, &g), (&a * &b).monic());
    }

    #[test]
    fn squarefree_part_removes_repeats() {
        let a = &x(Var::X1) - &x(Var::X2).pow(2);
        let b = &x(Var::X2) + &c(1);
        let f = &(&a * &a) * &b;
        assert_eq!(f.squarefree_part(), (&a * &b).monic());
    }

    #[test]
    fn homogenize_then_dehomogenize() {
        let f = &(&x(Var::X2).pow(3) - &x(Var::X1)) + &c(3);
        let h = f.homogenize(Var::X4).unwrap();
        assert_eq!(h.total_degree(), Some(3));
        assert!(h.terms().all(|(e, _)| e.iter().sum::<u32>() == 3));
        assert_eq!(h.eval_var(Var::X4, &FieldElement::one()), f);
        assert_eq!(h.homogenize(Var::X4).unwrap_err(), Error::VariablePresent(Var::X4));
    }

    #[test]
    fn substitution_composes() {
        let f = &x(Var::X1).pow(2) + &x(Var::X2);
        let g = f.subst(Var::X1, &(&x(Var::X1) + &x(Var::X2)));
        let expect = &(&(&x(Var::X1).pow(2) + &(&c(2) * &(&x(Var::X1) * &x(Var::X2)))) + &x(Var::X2).pow(2)) + &x(Var::X2);
        assert_eq!(g, expect);
    }
}
