//! Exact arithmetic in ℚ and in simple algebraic extensions ℚ(γ).
//!
//! Every [`FieldElement`] carries a shared handle to its [`ExtensionField`].
//! Rational values coerce into any context; two distinct non-trivial
//! contexts never mix.

pub mod complex;
mod factor;
mod upoly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

pub use complex::{CRat, Disc, RootSet};
pub use factor::{factor_rational, roots_in_field, roots_over_field, select_root_of_power, RootClass};
pub use upoly::{QPoly, Scalar, UPoly};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// ℚ(γ) with γ a chosen complex root of an irreducible monic `minpoly`.
/// The plain rationals are the degree-one context with γ = 0.
pub struct ExtensionField {
    minpoly: QPoly,
    roots: RootSet,
    index: usize,
    /// For `γ² = d` this is `Some(d)`.
    square_of: Option<Rational>,
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "Q")
        } else {
            write!(f, "Q(g), g ~ {:?}, {}", self.embedding().to_f64(), self.minpoly)
        }
    }
}

static RATIONALS: OnceLock<Arc<ExtensionField>> = OnceLock::new();

impl ExtensionField {
    pub fn rationals() -> Arc<ExtensionField> {
        RATIONALS
            .get_or_init(|| {
                let x = QPoly::from_i64(&[0, 1]);
                let roots = RootSet::new(&x);
                Arc::new(ExtensionField { minpoly: x, roots, index: 0, square_of: None })
            })
            .clone()
    }

    /// Builds a context from an irreducible monic polynomial and the index of
    /// the chosen root within its isolation. Callers ensure irreducibility.
    pub(crate) fn from_irreducible(minpoly: QPoly, roots: RootSet, index: usize) -> Arc<ExtensionField> {
        let square_of = match minpoly.degree() {
            Some(2) if minpoly.coeff(1).is_zero() => Some(-minpoly.coeff(0)),
            _ => None,
        };
        Arc::new(ExtensionField { minpoly, roots, index, square_of })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    /// Isolating disc of γ, radius at most `2^-100`.
    pub fn embedding(&self) -> &Disc {
        &self.roots.discs()[self.index]
    }

    pub fn embedding_refined(&self, bits: u32) -> Disc {
        if self.embedding().radius.is_zero() {
            return self.embedding().clone();
        }
        self.roots.refined(bits).discs()[self.index].clone()
    }

    pub fn root_set(&self) -> &RootSet {
        &self.roots
    }

    pub fn root_index(&self) -> usize {
        self.index
    }

    pub fn square_of(&self) -> Option<&Rational> {
        self.square_of.as_ref()
    }

    pub fn is_real(&self) -> bool {
        self.roots.is_real(self.index)
    }

    /// Same minimal polynomial and the same embedding of γ.
    pub fn same_as(&self, other: &ExtensionField) -> bool {
        std::ptr::eq(self, other) || (self.minpoly == other.minpoly && self.embedding().intersects(other.embedding()))
    }

    /// The generator γ.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        let mut c = vec![Rational::zero(); self.degree()];
        if self.degree() == 1 {
            c[0] = -self.minpoly.coeff(0);
        } else {
            c[1] = Rational::one();
        }
        FieldElement { ctx: self.clone(), c }
    }

    fn reduce(&self, p: QPoly) -> Vec<Rational> {
        let r = if p.degree().unwrap_or(0) >= self.degree() { p.rem(&self.minpoly) } else { p };
        let mut c = r.into_coeffs();
        c.resize(self.degree(), Rational::zero());
        c
    }

    /// Human readable name of γ.
    pub fn generator_name(&self) -> String {
        match &self.square_of {
            Some(d) if *d == int(-1) => "i".to_string(),
            Some(d) => format!("sqrt({d})"),
            None => "g".to_string(),
        }
    }
}

/// Chooses one root of a squarefree polynomial.
#[derive(Clone, Debug)]
pub enum RootSelector {
    /// Position in the canonical order (larger real part first, then larger
    /// imaginary part).
    Index(usize),
    /// A disc that must contain exactly one root.
    Disc(Disc),
}

/// Adjoins a root of the squarefree polynomial `m`, returning the context and
/// the root as an element of it. Degree-one inputs give the rationals.
pub fn adjoin_root(m: &QPoly, selector: &RootSelector) -> Result<(Arc<ExtensionField>, FieldElement)> {
    let deg = m.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::AmbiguousRootSelector { found: 0 });
    }
    if m.gcd(&m.derivative()).degree().unwrap_or(0) > 0 {
        return Err(Error::NotSquarefree);
    }
    let mut candidates = Vec::new();
    for (f, _) in factor_rational(m) {
        for root in factor::all_roots_of_irreducible(&f) {
            candidates.push(root);
        }
    }
    sort_canonical(&mut candidates);
    let chosen = match selector {
        RootSelector::Index(k) => candidates.get(*k).cloned().ok_or(Error::AmbiguousRootSelector { found: 0 })?,
        RootSelector::Disc(d) => {
            let hits: Vec<_> = candidates.iter().filter(|r| d.intersects(&r.embed())).collect();
            if hits.len() != 1 {
                return Err(Error::AmbiguousRootSelector { found: hits.len() });
            }
            hits[0].clone()
        }
    };
    Ok((chosen.context().clone(), chosen))
}

/// The cyclotomic context ℚ(ζ_n) with ζ_n = exp(2πi/n).
pub fn cyclotomic(n: u32) -> Result<(Arc<ExtensionField>, FieldElement)> {
    let phi = cyclotomic_poly(n);
    let target = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
    let roots = factor::all_roots_of_irreducible(&phi);
    let best = roots
        .into_iter()
        .min_by(|a, b| {
            let da = (a.to_complex64() - target).norm();
            let db = (b.to_complex64() - target).norm();
            da.partial_cmp(&db).unwrap_or(Ordering::Equal)
        })
        .expect("cyclotomic polynomial has roots");
    Ok((best.context().clone(), best))
}

pub fn cyclotomic_poly(n: u32) -> QPoly {
    // x^n - 1 divided by Φ_d for proper divisors d
    let mut p = QPoly::monomial(int(1), n as usize).sub(&QPoly::from_i64(&[1]));
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic_poly(d)).0;
        }
    }
    p
}

#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<ExtensionField>,
    c: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElement {
    pub fn from_rational(r: Rational) -> Self {
        FieldElement { ctx: ExtensionField::rationals(), c: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Element with the given coordinates on the power basis of `ctx`.
    pub fn new(ctx: Arc<ExtensionField>, mut coords: Vec<Rational>) -> Self {
        let red = if coords.len() > ctx.degree() {
            ctx.reduce(QPoly::from_rationals(coords))
        } else {
            coords.resize(ctx.degree(), Rational::zero());
            coords
        };
        FieldElement { ctx, c: red }
    }

    pub fn context(&self) -> &Arc<ExtensionField> {
        &self.ctx
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.ctx.is_rational() {
            return Some(self.c[0].clone());
        }
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// Moves the element into `ctx`; fails unless it is rational or already there.
    pub fn coerce_to(&self, ctx: &Arc<ExtensionField>) -> Result<FieldElement> {
        if self.ctx.same_as(ctx) {
            return Ok(FieldElement { ctx: ctx.clone(), c: self.c.clone() });
        }
        match self.as_rational() {
            Some(r) => {
                let mut c = vec![Rational::zero(); ctx.degree()];
                c[0] = r;
                if ctx.is_rational() {
                    c[0] = self.c[0].clone();
                }
                Ok(FieldElement { ctx: ctx.clone(), c })
            }
            None => Err(Error::ContextMismatch),
        }
    }

    /// Common context of two elements.
    pub fn join_context(a: &Arc<ExtensionField>, b: &Arc<ExtensionField>) -> Result<Arc<ExtensionField>> {
        if a.same_as(b) || b.is_rational() {
            Ok(a.clone())
        } else if a.is_rational() {
            Ok(b.clone())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn unify(&self, o: &FieldElement) -> Result<(Arc<ExtensionField>, Vec<Rational>, Vec<Rational>)> {
        if self.ctx.same_as(&o.ctx) {
            return Ok((self.ctx.clone(), self.c.clone(), o.c.clone()));
        }
        let ctx = match Self::join_context(&self.ctx, &o.ctx) {
            Ok(c) => c,
            Err(_) if self.as_rational().is_some() => o.ctx.clone(),
            Err(_) if o.as_rational().is_some() => self.ctx.clone(),
            Err(e) => return Err(e),
        };
        Ok((ctx.clone(), self.coerce_to(&ctx)?.c, o.coerce_to(&ctx)?.c))
    }

    pub fn try_add(&self, o: &FieldElement) -> Result<FieldElement> {
        let (ctx, a, b) = self.unify(o)?;
        let c = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Ok(FieldElement { ctx, c })
    }

    pub fn try_sub(&self, o: &FieldElement) -> Result<FieldElement> {
        let (ctx, a, b) = self.unify(o)?;
        let c = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(FieldElement { ctx, c })
    }

    pub fn try_mul(&self, o: &FieldElement) -> Result<FieldElement> {
        let (ctx, a, b) = self.unify(o)?;
        if ctx.is_rational() {
            return Ok(FieldElement { ctx, c: vec![&a[0] * &b[0]] });
        }
        if let Some(d) = ctx.square_of() {
            let c0 = &a[0] * &b[0] + &a[1] * &b[1] * d;
            let c1 = &a[0] * &b[1] + &a[1] * &b[0];
            return Ok(FieldElement { ctx, c: vec![c0, c1] });
        }
        let p = QPoly::from_rationals(a).mul(&QPoly::from_rationals(b));
        let c = ctx.reduce(p);
        Ok(FieldElement { ctx, c })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.ctx.is_rational() {
            return Ok(FieldElement { ctx: self.ctx.clone(), c: vec![self.c[0].recip()] });
        }
        if let Some(d) = self.ctx.square_of() {
            // (a + bγ)^-1 = (a - bγ)/(a² - d b²)
            let n = &self.c[0] * &self.c[0] - &self.c[1] * &self.c[1] * d;
            let c = vec![&self.c[0] / &n, -&self.c[1] / &n];
            return Ok(FieldElement { ctx: self.ctx.clone(), c });
        }
        let (g, s, _) = QPoly::from_rationals(self.c.clone()).ext_gcd(self.ctx.minpoly());
        debug_assert_eq!(g.degree(), Some(0));
        Ok(FieldElement { ctx: self.ctx.clone(), c: self.ctx.reduce(s) })
    }

    pub fn try_div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.try_mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = FieldElement::one().coerce_to(&self.ctx)?;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.try_mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement { ctx: self.ctx.clone(), c: self.c.iter().map(|x| x * r).collect() }
    }

    /// Certified enclosure of the complex value.
    pub fn embed(&self) -> Disc {
        self.embed_with(self.ctx.embedding())
    }

    pub fn embed_refined(&self, bits: u32) -> Disc {
        self.embed_with(&self.ctx.embedding_refined(bits))
    }

    fn embed_with(&self, g: &Disc) -> Disc {
        if let Some(r) = self.as_rational() {
            return Disc::point(&r);
        }
        let mut acc = Disc::point(&Rational::zero());
        for c in self.c.iter().rev() {
            acc = acc.mul(g).add(&Disc::point(c));
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        self.embed().to_f64()
    }

    /// Real under the chosen embedding.
    pub fn is_real(&self) -> bool {
        if self.as_rational().is_some() || self.ctx.is_real() {
            return true;
        }
        let d = self.embed_refined(256);
        d.meets_real_axis() && d.radius < Rational::new(1.into(), BigInt::one() << 200)
    }

    /// Canonical order used to pick representatives: larger real part
    /// first, then larger imaginary part; equal values compare equal.
    pub fn cmp_canonical(&self, o: &FieldElement) -> Ordering {
        if self == o {
            return Ordering::Equal;
        }
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return b.cmp(&a);
        }
        for bits in [0u32, 200, 400, 800, 1600] {
            let (a, b) = if bits == 0 { (self.embed(), o.embed()) } else { (self.embed_refined(bits), o.embed_refined(bits)) };
            if let Some(ord) = complex::compare_discs_desc(&a, &b) {
                return ord;
            }
        }
        Ordering::Equal
    }

    pub fn try_from_poly_eval(p: &UPoly<FieldElement>, x: &FieldElement) -> FieldElement {
        p.eval(x)
    }
}

pub fn sort_canonical(v: &mut [FieldElement]) {
    v.sort_by(|a, b| a.cmp_canonical(b));
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        match self.unify(o) {
            Ok((_, a, b)) => a == b,
            Err(_) => false,
        }
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::from_rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let name = self.ctx.generator_name();
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = match k {
                0 => String::new(),
                1 => name.clone(),
                _ => format!("{name}^{k}"),
            };
            let s = if k == 0 {
                c.to_string()
            } else if c.is_one() {
                g
            } else if *c == -Rational::one() {
                format!("-{g}")
            } else {
                format!("{c}*{g}")
            };
            parts.push(s);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        if parts.len() > 1 {
            write!(f, "({out})")
        } else {
            write!(f, "{out}")
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics if the operands live in incompatible extensions
            /// (or on division by zero); use the `try_` form to handle it.
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.$try(o).unwrap_or_else(|e| panic!("field arithmetic: {e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { ctx: self.ctx.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement { ctx: self.ctx.clone(), c: vec![Rational::zero(); self.ctx.degree()] }
    }
    fn one_like(&self) -> Self {
        let mut c = vec![Rational::zero(); self.ctx.degree()];
        c[0] = Rational::one();
        FieldElement { ctx: self.ctx.clone(), c }
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Self {
        self.inv().expect("inverse of zero")
    }
    fn rational_like(&self, r: &Rational) -> Self {
        let mut c = vec![Rational::zero(); self.ctx.degree()];
        c[0] = r.clone();
        FieldElement { ctx: self.ctx.clone(), c }
    }
}

/// Operation tags for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(op: FieldOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
    }
}

/// Rational parsed from `n` or `n/d`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> (Arc<ExtensionField>, FieldElement) {
        adjoin_root(&QPoly::from_i64(&[-2, 0, 1]), &RootSelector::Index(0)).unwrap()
    }

    #[test]
    fn inverse_in_quadratic_field() {
        let (k, g) = sqrt2();
        let one = FieldElement::one();
        let x = &one + &g;
        let inv = x.inv().unwrap();
        assert_eq!(inv, FieldElement::new(k.clone(), vec![int(-1), int(1)]));
        assert!(inv.context().same_as(&k));
    }

    #[test]
    fn generator_squares_to_two() {
        let (_, g) = sqrt2();
        assert_eq!(&g * &g, FieldElement::from_int(2));
        assert!((g.to_complex64().re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degree_one_gives_rationals() {
        let (k, r) = adjoin_root(&QPoly::from_i64(&[-3, 1]), &RootSelector::Index(0)).unwrap();
        assert!(k.is_rational());
        assert_eq!(r, FieldElement::from_int(3));
    }

    #[test]
    fn non_squarefree_rejected() {
        let m = QPoly::from_i64(&[1, -2, 1]);
        assert_eq!(adjoin_root(&m, &RootSelector::Index(0)).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn selector_disc_must_isolate() {
        let m = QPoly::from_i64(&[-2, 0, 1]);
        let wide = Disc { center: CRat::zero(), radius: int(2) };
        assert_eq!(adjoin_root(&m, &RootSelector::Disc(wide)).unwrap_err(), Error::AmbiguousRootSelector { found: 2 });
        let neg = Disc { center: CRat::real(rat(-7, 5)), radius: rat(1, 10) };
        let (_, r) = adjoin_root(&m, &RootSelector::Disc(neg)).unwrap();
        assert!(r.to_complex64().re < 0.0);
    }

    #[test]
    fn distinct_extensions_do_not_mix() {
        let (_, a) = sqrt2();
        let (_, b) = adjoin_root(&QPoly::from_i64(&[-3, 0, 1]), &RootSelector::Index(0)).unwrap();
        assert_eq!(a.try_add(&b).unwrap_err(), Error::ContextMismatch);
        assert!(a.try_add(&FieldElement::from(rat(1, 2))).is_ok());
    }

    #[test]
    fn cubic_extension_inverse() {
        let (_, g) = adjoin_root(&QPoly::from_i64(&[-2, 0, 0, 1]), &RootSelector::Index(0)).unwrap();
        let x = &g + &FieldElement::from_int(1);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, FieldElement::one());
        assert_eq!(g.pow(3).unwrap(), FieldElement::from_int(2));
    }

    #[test]
    fn cyclotomic_generator() {
        let (_, z) = cyclotomic(3).unwrap();
        assert_eq!(z.pow(3).unwrap(), FieldElement::one());
        let c = z.to_complex64();
        assert!((c.arg() - std::f64::consts::TAU / 3.0).abs() < 1e-12);
        let (_, w) = cyclotomic(5).unwrap();
        assert_eq!(w.pow(5).unwrap(), FieldElement::one());
        assert!((w.to_complex64().arg() - std::f64::consts::TAU / 5.0).abs() < 1e-12);
    }

    #[test]
    fn display_quadratic() {
        let (_, g) = sqrt2();
        let x = &g.scale(&rat(9, 32)) + &FieldElement::from(rat(1, 4));
        assert_eq!(x.to_string(), "(1/4 + 9/32*sqrt(2))");
    }
}
