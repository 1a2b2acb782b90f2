//! Exact complex rationals, certified discs and complex root isolation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct CRat {
    pub re: Rational,
    pub im: Rational,
}

impl CRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        CRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        CRat { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn add(&self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &CRat) -> CRat {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &CRat) -> CRat {
        CRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn scale(&self, r: &Rational) -> CRat {
        CRat::new(&self.re * r, &self.im * r)
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> CRat {
        CRat::new(self.re.clone(), -&self.im)
    }

    /// Panics on zero.
    pub fn div(&self, o: &CRat) -> CRat {
        let n = o.norm_sqr();
        let p = self.mul(&o.conj());
        CRat::new(p.re / &n, p.im / n)
    }

    pub fn abs_upper(&self) -> Rational {
        sqrt_upper(&self.norm_sqr())
    }

    pub fn round(&self, bits: u32) -> CRat {
        CRat::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }

    pub fn from_f64(z: Complex64) -> CRat {
        let cv = |x: f64| Rational::from_float(if x.is_finite() { x } else { 0.0 }).unwrap_or_default();
        CRat::new(cv(z.re), cv(z.im))
    }

    pub fn to_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

/// Nearest dyadic with `bits` fractional bits.
pub fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    let n = (scaled + Rational::new(1.into(), 2.into())).floor().to_integer();
    Rational::new(n, scale)
}

/// Dyadic upper bound for `x` with `bits` fractional bits.
pub fn ceil_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let n = (x * Rational::from_integer(scale.clone())).ceil().to_integer();
    Rational::new(n, scale)
}

fn bit_len(n: &BigInt) -> u64 {
    n.bits()
}

/// Rational upper bound of `sqrt(x)`, tight to roughly 64 significant bits.
pub fn sqrt_upper(x: &Rational) -> Rational {
    if !x.is_positive() {
        return Rational::zero();
    }
    let num = x.numer();
    let den = x.denom();
    let shift = (bit_len(den) as i64 - bit_len(num) as i64).max(0) as u64 / 2 + 70;
    let k = shift as usize;
    // floor(x * 4^k) then integer sqrt
    let scaled = (num << (2 * k)) / den;
    let s = scaled.sqrt() + BigInt::one();
    Rational::new(s, BigInt::one() << k)
}

/// Rational lower bound of `sqrt(x)`.
pub fn sqrt_lower(x: &Rational) -> Rational {
    if !x.is_positive() {
        return Rational::zero();
    }
    let num = x.numer();
    let den = x.denom();
    let shift = (bit_len(den) as i64 - bit_len(num) as i64).max(0) as u64 / 2 + 70;
    let k = shift as usize;
    let scaled = (num << (2 * k)) / den;
    Rational::new(scaled.sqrt(), BigInt::one() << k)
}

/// Closed disc `|z - center| <= radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct Disc {
    pub center: CRat,
    pub radius: Rational,
}

const WORK_BITS: u32 = 160;

impl Disc {
    pub fn exact(center: CRat) -> Self {
        Disc { center, radius: Rational::zero() }
    }

    pub fn point(r: &Rational) -> Self {
        Self::exact(CRat::real(r.clone()))
    }

    fn tidy(center: CRat, radius: Rational) -> Disc {
        let rounded = center.round(WORK_BITS);
        let err = if rounded == center { Rational::zero() } else { Rational::new(1.into(), BigInt::one() << WORK_BITS) };
        Disc { center: rounded, radius: ceil_dyadic(&(radius + err), WORK_BITS) }
    }

    pub fn add(&self, o: &Disc) -> Disc {
        Self::tidy(self.center.add(&o.center), &self.radius + &o.radius)
    }

    pub fn sub(&self, o: &Disc) -> Disc {
        Self::tidy(self.center.sub(&o.center), &self.radius + &o.radius)
    }

    pub fn mul(&self, o: &Disc) -> Disc {
        let r = self.center.abs_upper() * &o.radius + o.center.abs_upper() * &self.radius + &self.radius * &o.radius;
        Self::tidy(self.center.mul(&o.center), r)
    }

    pub fn scale(&self, c: &Rational) -> Disc {
        Self::tidy(self.center.scale(c), &self.radius * c.abs())
    }

    pub fn contains_zero(&self) -> bool {
        self.center.norm_sqr() <= &self.radius * &self.radius
    }

    pub fn meets_real_axis(&self) -> bool {
        self.center.im.abs() <= self.radius
    }

    pub fn intersects(&self, o: &Disc) -> bool {
        let d = self.center.sub(&o.center).norm_sqr();
        let s = &self.radius + &o.radius;
        d <= &s * &s
    }

    pub fn contains_disc(&self, o: &Disc) -> bool {
        // |c1 - c2| + r2 <= r1
        if o.radius > self.radius {
            return false;
        }
        let gap = &self.radius - &o.radius;
        self.center.sub(&o.center).norm_sqr() <= &gap * &gap
    }

    pub fn re_interval(&self) -> (Rational, Rational) {
        (&self.center.re - &self.radius, &self.center.re + &self.radius)
    }

    pub fn im_interval(&self) -> (Rational, Rational) {
        (&self.center.im - &self.radius, &self.center.im + &self.radius)
    }

    pub fn to_f64(&self) -> Complex64 {
        self.center.to_f64()
    }
}

/// Certified isolating discs for all complex roots of a squarefree rational
/// polynomial, indexed consistently across refinements.
#[derive(Clone, Debug)]
pub struct RootSet {
    poly: Vec<CRat>,
    approx: Vec<CRat>,
    discs: Vec<Disc>,
    bits: u32,
}

fn eval_c(p: &[CRat], z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in p.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

fn aberth_f64(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let bound = 1.0 + p[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(bound.min(1e6), 0.4 + std::f64::consts::TAU * k as f64 / n as f64)).collect();
    let dp: Vec<Complex64> = (1..=n).map(|k| p[k] * k as f64).collect();
    let ev = |c: &[Complex64], x: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &b| a * x + b);
    for _ in 0..800 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pv = ev(p, z[i]);
            let dv = ev(&dp, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

impl RootSet {
    /// Isolates the roots of `p`, which must be squarefree of positive degree.
    pub fn new(p: &QPoly) -> RootSet {
        let m = p.monic();
        let n = m.degree().expect("nonzero polynomial");
        assert!(n >= 1, "root isolation needs positive degree");
        let poly: Vec<CRat> = m.coeffs().iter().map(|c| CRat::real(c.clone())).collect();
        if n == 1 {
            let root = CRat::real(-m.coeff(0));
            return RootSet { poly, approx: vec![root.clone()], discs: vec![Disc::exact(root)], bits: 64 };
        }
        let pf: Vec<Complex64> = m.coeffs().iter().map(|c| Complex64::new(c.to_f64().unwrap_or(0.0), 0.0)).collect();
        let approx = aberth_f64(&pf).into_iter().map(CRat::from_f64).collect();
        let mut rs = RootSet { poly, approx, discs: Vec::new(), bits: 64 };
        rs.certify_to(100);
        rs
    }

    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn len(&self) -> usize {
        self.approx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.approx.is_empty()
    }

    fn weierstrass_step(&mut self) {
        let n = self.approx.len();
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let num = eval_c(&self.poly, &self.approx[i]);
            let mut den = CRat::one();
            for j in 0..n {
                if j != i {
                    den = den.mul(&self.approx[i].sub(&self.approx[j]));
                }
            }
            if den.norm_sqr().is_zero() {
                next.push(self.approx[i].add(&CRat::new(Rational::new(1.into(), 1000.into()), Rational::new(1.into(), 777.into()))));
            } else {
                next.push(self.approx[i].sub(&num.div(&den)).round(self.bits));
            }
        }
        self.approx = next;
    }

    /// Smith bound radii squared for the current approximations.
    fn smith_radii(&self) -> Option<Vec<Rational>> {
        let n = self.approx.len();
        let nn = Rational::from_integer(((n * n) as i64).into());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let num = eval_c(&self.poly, &self.approx[i]).norm_sqr();
            let mut den = Rational::one();
            for j in 0..n {
                if j != i {
                    den *= self.approx[i].sub(&self.approx[j]).norm_sqr();
                }
            }
            if den.is_zero() {
                return None;
            }
            out.push(sqrt_upper(&(num * &nn / den)));
        }
        Some(out)
    }

    fn try_certify(&self, target: &Rational) -> Option<Vec<Disc>> {
        let radii = self.smith_radii()?;
        if radii.iter().any(|r| r > target) {
            return None;
        }
        let discs: Vec<Disc> =
            self.approx.iter().zip(radii).map(|(c, r)| Disc { center: c.clone(), radius: ceil_dyadic(&r, self.bits + 8) }).collect();
        for i in 0..discs.len() {
            for j in i + 1..discs.len() {
                if discs[i].intersects(&discs[j]) {
                    return None;
                }
            }
        }
        Some(discs)
    }

    /// Refine until every disc has radius at most `2^-target_bits`.
    pub fn certify_to(&mut self, target_bits: u32) {
        let target = Rational::new(1.into(), BigInt::one() << target_bits);
        self.bits = self.bits.max(target_bits + 32);
        for _round in 0..64 {
            for _ in 0..6 {
                self.weierstrass_step();
            }
            if let Some(discs) = self.try_certify(&target) {
                // snap real-axis discs onto the axis; then the disc is
                // conjugation-symmetric and its unique root is real
                let mut snapped = self.clone();
                let mut changed = false;
                for (k, d) in discs.iter().enumerate() {
                    if d.meets_real_axis() && !d.center.im.is_zero() {
                        snapped.approx[k].im = Rational::zero();
                        changed = true;
                    }
                }
                if !changed {
                    self.discs = discs;
                    return;
                }
                if let Some(d2) = snapped.try_certify(&target) {
                    *self = snapped;
                    self.discs = d2;
                    return;
                }
            }
            self.bits = (self.bits * 3 / 2).min(1 << 14);
        }
        panic!("root isolation did not converge");
    }

    /// A copy refined to radius `2^-target_bits`, same indexing.
    pub fn refined(&self, target_bits: u32) -> RootSet {
        let mut r = self.clone();
        r.certify_to(target_bits);
        for (new, old) in r.discs.iter().zip(&self.discs) {
            debug_assert!(old.intersects(new));
        }
        r
    }

    pub fn is_real(&self, k: usize) -> bool {
        self.discs[k].center.im.is_zero() && self.discs[k].meets_real_axis()
    }
}

/// Orders complex numbers given by isolating discs: larger real part first,
/// then larger imaginary part. `None` if undecidable at this width.
pub fn compare_discs_desc(a: &Disc, b: &Disc) -> Option<Ordering> {
    let (alo, ahi) = a.re_interval();
    let (blo, bhi) = b.re_interval();
    if alo > bhi {
        return Some(Ordering::Less);
    }
    if blo > ahi {
        return Some(Ordering::Greater);
    }
    let (ailo, aihi) = a.im_interval();
    let (bilo, bihi) = b.im_interval();
    if ailo > bihi {
        return Some(Ordering::Less);
    }
    if bilo > aihi {
        return Some(Ordering::Greater);
    }
    if a == b {
        return Some(Ordering::Equal);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_bounds_bracket() {
        let x = Rational::new(2.into(), 1.into());
        let lo = sqrt_lower(&x);
        let hi = sqrt_upper(&x);
        assert!(&lo * &lo <= x && x <= &hi * &hi);
        assert!(hi - lo < Rational::new(1.into(), BigInt::one() << 60));
    }

    #[test]
    fn isolates_sqrt_two() {
        let rs = RootSet::new(&QPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(rs.len(), 2);
        let mut reals: Vec<f64> = rs.discs().iter().map(|d| d.to_f64().re).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((reals[1] - 2f64.sqrt()).abs() < 1e-15);
        assert!(rs.is_real(0) && rs.is_real(1));
    }

    #[test]
    fn isolates_cyclotomic_roots() {
        // x^4 + x^3 + x^2 + x + 1
        let rs = RootSet::new(&QPoly::from_i64(&[1, 1, 1, 1, 1]));
        for d in rs.discs() {
            let z = d.to_f64();
            assert!((z.norm() - 1.0).abs() < 1e-14);
            assert!(!d.meets_real_axis());
        }
    }

    #[test]
    fn refinement_keeps_indexing() {
        let rs = RootSet::new(&QPoly::from_i64(&[-1, -1, 0, 1]));
        let fine = rs.refined(300);
        for (a, b) in rs.discs().iter().zip(fine.discs()) {
            assert!(a.intersects(b));
            assert!(b.radius <= Rational::new(1.into(), BigInt::one() << 300));
        }
    }
}
