//! Dense univariate polynomials over an exact field.

use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Minimal exact field interface shared by `Rational` and `FieldElement`.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; callers guarantee a nonzero operand.
    fn inv_ref(&self) -> Self;
    fn rational_like(&self, r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
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
        self.recip()
    }
    fn rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
}

/// Coefficients are stored lowest degree first with no trailing zeros.
/// A `proto` value carries the coefficient context so the zero polynomial
/// still knows its field.
#[derive(Clone, Debug)]
pub struct UPoly<T: Scalar> {
    coeffs: Vec<T>,
    proto: T,
}

pub type QPoly = UPoly<Rational>;

impl<T: Scalar> PartialEq for UPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<T: Scalar> UPoly<T> {
    pub fn new(mut coeffs: Vec<T>, proto: T) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_value()) {
            coeffs.pop();
        }
        let proto = proto.zero_like();
        UPoly { coeffs, proto }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let proto = coeffs.first().expect("at least one coefficient").zero_like();
        Self::new(coeffs, proto)
    }

    pub fn zero(proto: &T) -> Self {
        UPoly { coeffs: Vec::new(), proto: proto.zero_like() }
    }

    pub fn constant(c: T) -> Self {
        let proto = c.zero_like();
        Self::new(vec![c], proto)
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let proto = c.zero_like();
        let mut v = vec![proto.clone(); k];
        v.push(c);
        Self::new(v, proto)
    }

    pub fn x(proto: &T) -> Self {
        Self::monomial(proto.one_like(), 1)
    }

    pub fn proto(&self) -> &T {
        &self.proto
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.proto.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = self.proto.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| self.coeff(k).add_ref(&o.coeff(k))).collect();
        Self::new(v, self.proto.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| self.coeff(k).sub_ref(&o.coeff(k))).collect();
        Self::new(v, self.proto.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg_ref()).collect(), self.proto.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.proto);
        }
        let mut v = vec![self.proto.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_value() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(v, self.proto.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect(), self.proto.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.proto.one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv_ref()),
        }
    }

    pub fn derivative(&self) -> Self {
        let v =
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_ref(&self.proto.rational_like(&Rational::from_integer(k.into())))).collect();
        Self::new(v, self.proto.clone())
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lc().unwrap().inv_ref();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(&self.proto), self.clone());
        }
        let mut q = vec![self.proto.clone(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].mul_ref(&inv);
            if c.is_zero_value() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = r[idx].sub_ref(&c.mul_ref(dc));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q, self.proto.clone()), Self::new(r, self.proto.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let one = Self::constant(self.proto.one_like());
        let zero = Self::zero(&self.proto);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv_ref();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// `self(x + a)`
    pub fn shift(&self, a: &T) -> Self {
        let lin = Self::new(vec![a.clone(), self.proto.one_like()], self.proto.clone());
        let mut acc = Self::zero(&self.proto);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Squarefree decomposition: `self = lc * prod_i s_i^i`, returned as `(s_i, i)`
    /// with the trivial factors omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        let mut acc = Self::constant(self.proto.one_like());
        for (s, _) in self.squarefree_decomposition() {
            acc = acc.mul(&s);
        }
        acc
    }

    pub fn map<U: Scalar>(&self, proto: U, f: impl Fn(&T) -> U) -> UPoly<U> {
        UPoly::new(self.coeffs.iter().map(f).collect(), proto)
    }
}

impl QPoly {
    pub fn from_i64(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect(), Rational::zero())
    }

    pub fn from_rationals(cs: Vec<Rational>) -> QPoly {
        QPoly::new(cs, Rational::zero())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for UPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_value() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = QPoly::from_i64(&[1, 2, 3, 4, 5]);
        let b = QPoly::from_i64(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = QPoly::from_i64(&[-1, 1]); // x - 1
        let a = f.mul(&QPoly::from_i64(&[2, 1]));
        let b = f.mul(&QPoly::from_i64(&[5, 0, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = QPoly::from_i64(&[1, 1, 0, 1]);
        let b = QPoly::from_i64(&[-2, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, QPoly::from_i64(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn squarefree_decomposition_of_cube_times_line() {
        let l = QPoly::from_i64(&[-1, 1]);
        let m = QPoly::from_i64(&[2, 1]);
        let f = l.pow(3).mul(&m);
        let sf = f.squarefree_decomposition();
        assert_eq!(sf, vec![(m.clone(), 1), (l.clone(), 3)]);
        assert_eq!(f.squarefree_part(), l.mul(&m));
    }

    #[test]
    fn shift_matches_composition() {
        let f = QPoly::from_i64(&[3, -1, 2]);
        let g = f.shift(&Rational::from_integer(2.into()));
        for x in -3i64..4 {
            let xr = Rational::from_integer(x.into());
            assert_eq!(g.eval(&xr), f.eval(&(xr.clone() + Rational::from_integer(2.into()))));
        }
    }
}
