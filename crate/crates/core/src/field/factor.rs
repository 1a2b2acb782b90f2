//! Factorization over ℚ and root finding over ℚ(γ).
//!
//! Linear and quadratic factors (and, within a budget, any factor) over ℚ
//! are found from certified complex roots by recombination and then checked
//! by exact division.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::complex::{CRat, RootSet};
use super::{int, ExtensionField, FieldElement, QPoly, Rational, Scalar, UPoly};
use crate::error::{Error, Result};

/// Roots of a squarefree factor that form one Galois class over the base.
#[derive(Clone, Debug)]
pub struct RootClass {
    pub representative: FieldElement,
    pub members: Vec<FieldElement>,
    pub multiplicity: usize,
    /// Degree of the irreducible factor (1 if the root lies in the base).
    pub class_size: usize,
}

fn primitive_integer(p: &QPoly) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

fn qpoly_from_ints(v: &[BigInt]) -> QPoly {
    QPoly::from_rationals(v.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn round_int(x: &Rational) -> BigInt {
    (x + Rational::new(1.into(), 2.into())).floor().to_integer()
}

fn near_integer(x: &Rational) -> Option<BigInt> {
    let k = round_int(x);
    if (x - Rational::from_integer(k.clone())).abs() < Rational::new(1.into(), 4.into()) {
        Some(k)
    } else {
        None
    }
}

const COMBINATION_BUDGET: usize = 200_000;

/// Factors of a squarefree monic integer polynomial `m`.
fn factor_monic_integer(m: &[BigInt]) -> Vec<QPoly> {
    let mq = qpoly_from_ints(m);
    let n = m.len() - 1;
    if n <= 1 {
        return vec![mq];
    }
    let bound_bits = m.iter().map(|c| c.bits()).max().unwrap_or(1) as u32 + 1;
    let prec = 40 + n as u32 * (bound_bits + 2);
    let rs = RootSet::new(&mq).refined(prec);
    let centers: Vec<CRat> = rs.discs().iter().map(|d| d.center.clone()).collect();

    let mut factors = Vec::new();
    let mut rest = mq.clone();
    let mut used = vec![false; n];
    for (k, d) in rs.discs().iter().enumerate() {
        if !d.meets_real_axis() {
            continue;
        }
        let r = Rational::from_integer(round_int(&d.center.re));
        if mq.eval(&r).is_zero() {
            let lin = QPoly::from_rationals(vec![-r, int(1)]);
            rest = rest.div_rem(&lin).0;
            factors.push(lin);
            used[k] = true;
        }
    }

    let mut budget = COMBINATION_BUDGET;
    let mut size = 2;
    loop {
        let free: Vec<usize> = (0..n).filter(|&k| !used[k]).collect();
        if size * 2 > free.len() || budget == 0 {
            break;
        }
        match find_factor_of_size(&free, size, &centers, &rest, &mut budget) {
            Some((subset, f)) => {
                rest = rest.div_rem(&f).0;
                factors.push(f);
                for k in subset {
                    used[k] = true;
                }
            }
            None => size += 1,
        }
    }
    if rest.degree().unwrap_or(0) >= 1 {
        factors.push(rest);
    }
    factors
}

fn find_factor_of_size(free: &[usize], size: usize, centers: &[CRat], target: &QPoly, budget: &mut usize) -> Option<(Vec<usize>, QPoly)> {
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let subset: Vec<usize> = idx.iter().map(|&i| free[i]).collect();
        let trace = subset.iter().fold(CRat::zero(), |a, &k| a.add(&centers[k]));
        if trace.im.abs() < Rational::new(1.into(), 4.into()) && near_integer(&trace.re).is_some() {
            let mut prod = vec![CRat::one()];
            for &k in &subset {
                let mut next = vec![CRat::zero(); prod.len() + 1];
                for (i, c) in prod.iter().enumerate() {
                    next[i + 1] = next[i + 1].add(c);
                    next[i] = next[i].sub(&c.mul(&centers[k]));
                }
                prod = next;
            }
            let ints: Option<Vec<BigInt>> =
                prod.iter().map(|c| if c.im.abs() < Rational::new(1.into(), 4.into()) { near_integer(&c.re) } else { None }).collect();
            if let Some(ints) = ints {
                let f = qpoly_from_ints(&ints);
                if target.rem(&f).is_zero() {
                    return Some((subset, f));
                }
            }
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < free.len() - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Monic irreducible factors over ℚ with multiplicities, ordered by degree.
pub fn factor_rational(p: &QPoly) -> Vec<(QPoly, usize)> {
    let mut out = Vec::new();
    for (s, mult) in p.squarefree_decomposition() {
        let prim = primitive_integer(&s);
        let n = prim.len() - 1;
        let a = prim[n].clone();
        // monic transform: M(x) = a^(n-1) P(x/a)
        let mut m = Vec::with_capacity(n + 1);
        for (i, c) in prim.iter().enumerate() {
            if i == n {
                m.push(BigInt::one());
            } else {
                m.push(c * num_traits::pow(a.clone(), n - 1 - i));
            }
        }
        for f in factor_monic_integer(&m) {
            // back to P: G(y) = F(a y)
            let ar = Rational::from_integer(a.clone());
            let mut pw = Rational::one();
            let mut cs = Vec::new();
            for c in f.coeffs() {
                cs.push(c * &pw);
                pw *= &ar;
            }
            out.push((QPoly::from_rationals(cs).monic(), mult));
        }
    }
    out.sort_by_key(|(f, m)| (f.degree(), *m));
    out
}

/// Splits `n = k² d` with `d` free of small square factors.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut d = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while p <= limit && &p * &p <= d.abs() {
        let pp = &p * &p;
        while (&d % &pp).is_zero() {
            d /= &pp;
            k *= &p;
        }
        p += 1;
    }
    (k, d)
}

/// All roots of an irreducible monic polynomial, each as an element of its
/// own context. Quadratic factors share one context `γ² = d`.
pub(crate) fn all_roots_of_irreducible(f: &QPoly) -> Vec<FieldElement> {
    match f.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![FieldElement::from_rational(-f.coeff(0) / f.coeff(1))],
        Some(2) => {
            let f = f.monic();
            let b = f.coeff(1);
            let disc = &b * &b - f.coeff(0) * int(4);
            let dd = disc.denom().clone();
            let (k, d) = extract_square(&(disc.numer() * &dd));
            let minpoly = QPoly::from_rationals(vec![-Rational::from_integer(d.clone()), int(0), int(1)]);
            let rs = RootSet::new(&minpoly);
            // principal square root: positive real, or positive imaginary
            let idx = (0..2)
                .find(|&i| {
                    let c = &rs.discs()[i].center;
                    if d.is_positive() {
                        c.re.is_positive()
                    } else {
                        c.im.is_positive()
                    }
                })
                .unwrap_or(0);
            let ctx = ExtensionField::from_irreducible(minpoly, rs, idx);
            let g = ctx.generator();
            let scale = Rational::new(k, dd) / int(2);
            let base = FieldElement::from_rational(-b / int(2));
            vec![&base + &g.scale(&scale), &base - &g.scale(&scale)]
        }
        Some(_) => {
            let m = f.monic();
            let rs = RootSet::new(&m);
            (0..rs.len()).map(|i| ExtensionField::from_irreducible(m.clone(), rs.clone(), i).generator()).collect()
        }
    }
}

fn to_qpoly(p: &UPoly<FieldElement>) -> Option<QPoly> {
    let cs: Option<Vec<Rational>> = p.coeffs().iter().map(|c| c.as_rational()).collect();
    cs.map(QPoly::from_rationals)
}

/// The context of the zero prototype joined with every irrational coefficient.
fn common_context(p: &UPoly<FieldElement>) -> Result<Arc<ExtensionField>> {
    let mut ctx = p.proto().context().clone();
    for c in p.coeffs() {
        if c.as_rational().is_some() {
            continue;
        }
        ctx = FieldElement::join_context(&ctx, c.context())?;
    }
    Ok(ctx)
}

fn in_context(p: &UPoly<FieldElement>, ctx: &Arc<ExtensionField>) -> Result<UPoly<FieldElement>> {
    let proto = FieldElement::zero().coerce_to(ctx)?;
    let cs: Result<Vec<FieldElement>> = p.coeffs().iter().map(|c| c.coerce_to(ctx)).collect();
    Ok(UPoly::new(cs?, proto))
}

fn mult_matrix(a: &FieldElement, k: &Arc<ExtensionField>) -> Vec<Vec<Rational>> {
    let d = k.degree();
    let g = k.generator();
    let mut cols = Vec::with_capacity(d);
    let mut basis = FieldElement::one().coerce_to(k).expect("rational coerces");
    for _ in 0..d {
        cols.push((a * &basis).coords().to_vec());
        basis = &basis * &g;
    }
    // entry (i, j) = coordinate i of a * γ^j
    (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
}

fn det_qpoly(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    let mut prev = QPoly::from_i64(&[1]);
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return QPoly::from_i64(&[]),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Norm of `s ∈ K[x]` down to ℚ[x].
fn norm(s: &UPoly<FieldElement>, k: &Arc<ExtensionField>) -> QPoly {
    let d = k.degree();
    let mats: Vec<Vec<Vec<Rational>>> = s.coeffs().iter().map(|c| mult_matrix(c, k)).collect();
    let m: Vec<Vec<QPoly>> =
        (0..d).map(|i| (0..d).map(|j| QPoly::from_rationals(mats.iter().map(|mm| mm[i][j].clone()).collect())).collect()).collect();
    det_qpoly(m)
}

/// Roots of `s` lying in the context of its coefficients, without multiplicity.
pub fn roots_in_field(s: &UPoly<FieldElement>) -> Result<Vec<FieldElement>> {
    if s.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = common_context(s)?;
    let s = in_context(s, &k)?.squarefree_part();
    match s.degree() {
        Some(0) | None => return Ok(Vec::new()),
        Some(1) => return Ok(vec![-(&s.coeff(0) / &s.coeff(1))]),
        _ => {}
    }
    if k.is_rational() {
        let q = to_qpoly(&s).expect("rational coefficients");
        return Ok(factor_rational(&q)
            .into_iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, _)| FieldElement::from_rational(-f.coeff(0)))
            .collect());
    }
    let g = k.generator();
    for shift in 0..24i64 {
        let delta = g.scale(&int(shift));
        let sk = s.shift(&-&delta);
        let n = norm(&sk, &k);
        if n.gcd(&n.derivative()).degree().unwrap_or(0) > 0 {
            continue;
        }
        let mut roots = Vec::new();
        for (phi, _) in factor_rational(&n) {
            if phi.degree().unwrap_or(0) > k.degree() {
                continue;
            }
            let phik = phi.map(sk.proto().clone(), |c| sk.proto().rational_like(c));
            let h = sk.gcd(&phik);
            if h.degree() == Some(1) {
                let beta = -(&h.coeff(0) / &h.coeff(1));
                roots.push(&beta - &delta);
            }
        }
        return Ok(roots);
    }
    Err(Error::ExtensionTowerTooDeep)
}

/// All roots of `q`, grouped into classes; a root outside the coefficient
/// context of `q` opens a new extension only when that context is ℚ.
pub fn roots_over_field(q: &UPoly<FieldElement>) -> Result<Vec<RootClass>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = common_context(q)?;
    let q = in_context(q, &k)?;
    let mut out = Vec::new();
    for (s, mult) in q.squarefree_decomposition() {
        if k.is_rational() {
            let sq = to_qpoly(&s).expect("rational coefficients");
            for (f, _) in factor_rational(&sq) {
                let mut members = all_roots_of_irreducible(&f);
                super::sort_canonical(&mut members);
                out.push(RootClass { representative: members[0].clone(), class_size: members.len(), members, multiplicity: mult });
            }
        } else {
            let roots = roots_in_field(&s)?;
            if roots.len() < s.degree().unwrap_or(0) {
                return Err(Error::ExtensionTowerTooDeep);
            }
            for r in roots {
                out.push(RootClass { representative: r.clone(), members: vec![r], multiplicity: mult, class_size: 1 });
            }
        }
    }
    out.sort_by(|a, b| a.representative.cmp_canonical(&b.representative));
    Ok(out)
}

/// A solution `c` of `c^q = w`: a root already in the context of `w` when one
/// exists, otherwise a root generating the smallest extension of ℚ; ties go to
/// the root with the largest real part, then the largest imaginary part.
pub fn select_root_of_power(w: &FieldElement, q: u32, base: &Arc<ExtensionField>) -> Result<FieldElement> {
    if q == 1 {
        return Ok(w.clone());
    }
    if w.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ctx = FieldElement::join_context(base, w.context()).map_err(|_| Error::ExtensionTowerTooDeep)?;
    let w = &w.coerce_to(&ctx)?;
    let proto = w.zero_like();
    let mut cs = vec![proto.clone(); q as usize + 1];
    cs[0] = -w;
    cs[q as usize] = proto.one_like();
    let p = UPoly::new(cs, proto);
    let mut inside = roots_in_field(&p)?;
    if !inside.is_empty() {
        super::sort_canonical(&mut inside);
        return Ok(inside.swap_remove(0));
    }
    if !ctx.is_rational() {
        return Err(Error::ExtensionTowerTooDeep);
    }
    let wq = w.as_rational().expect("rational");
    let mut poly = vec![int(0); q as usize + 1];
    poly[0] = -wq;
    poly[q as usize] = int(1);
    let factors = factor_rational(&QPoly::from_rationals(poly));
    let min_deg = factors.iter().filter_map(|(f, _)| f.degree()).min().unwrap_or(1);
    let mut cands: Vec<FieldElement> =
        factors.iter().filter(|(f, _)| f.degree() == Some(min_deg)).flat_map(|(f, _)| all_roots_of_irreducible(f)).collect();
    super::sort_canonical(&mut cands);
    cands.into_iter().next().ok_or(Error::ExtensionTowerTooDeep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{adjoin_root, RootSelector};

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_i64(cs)
    }

    #[test]
    fn factors_product_of_known_pieces() {
        // (x/2 - 1)(x^2 - 2)(x^3 - x - 1)
        let p = QPoly::from_rationals(vec![int(-1), Rational::new(1.into(), 2.into())]).mul(&qp(&[-2, 0, 1])).mul(&qp(&[-1, -1, 0, 1]));
        let f = factor_rational(&p);
        assert_eq!(f.len(), 3);
        assert_eq!(f[0].0, qp(&[-2, 1]));
        assert_eq!(f[1].0, qp(&[-2, 0, 1]));
        assert_eq!(f[2].0, qp(&[-1, -1, 0, 1]));
    }

    #[test]
    fn factors_quartic_into_quadratics() {
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        let f = factor_rational(&qp(&[4, 0, 0, 0, 1]));
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, _)| g.degree() == Some(2)));
    }

    #[test]
    fn factors_with_multiplicity() {
        let p = qp(&[1, 1]).pow(3).mul(&qp(&[1, 0, 1]));
        let f = factor_rational(&p);
        assert_eq!(f, vec![(qp(&[1, 1]), 3), (qp(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn roots_of_sqrt_two_polynomial_in_its_field() {
        let (k, g) = adjoin_root(&qp(&[-2, 0, 1]), &RootSelector::Index(0)).unwrap();
        // (x - g)(x - 1) over Q(g)
        let one = FieldElement::one().coerce_to(&k).unwrap();
        let p = UPoly::from_coeffs(vec![-&g, one.clone()]).mul(&UPoly::from_coeffs(vec![-&one, one.clone()]));
        let mut r = roots_in_field(&p).unwrap();
        crate::field::sort_canonical(&mut r);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], g);
        assert_eq!(r[1], FieldElement::one());
        // x^2 - 2 splits over Q(sqrt 2), x^2 - 3 does not
        let two = UPoly::from_coeffs(vec![one.scale(&int(-2)), one.zero_like(), one.clone()]);
        assert_eq!(roots_in_field(&two).unwrap().len(), 2);
        let three = UPoly::from_coeffs(vec![one.scale(&int(-3)), one.zero_like(), one.clone()]);
        assert!(roots_in_field(&three).unwrap().is_empty());
        assert_eq!(roots_over_field(&three).unwrap_err(), Error::ExtensionTowerTooDeep);
    }

    #[test]
    fn roots_over_rationals_classes() {
        let p = qp(&[-2, 0, 1]).mul(&qp(&[1, 1]).pow(2));
        let q = p.map(FieldElement::zero(), |c| FieldElement::from_rational(c.clone()));
        let classes = roots_over_field(&q).unwrap();
        assert_eq!(classes.len(), 2);
        let quad = classes.iter().find(|c| c.class_size == 2).unwrap();
        assert_eq!(quad.multiplicity, 1);
        assert!((quad.representative.to_complex64().re - 2f64.sqrt()).abs() < 1e-15);
        let lin = classes.iter().find(|c| c.class_size == 1).unwrap();
        assert_eq!(lin.multiplicity, 2);
        assert_eq!(lin.representative, FieldElement::from_int(-1));
    }

    #[test]
    fn cube_root_prefers_rational() {
        let c = select_root_of_power(&FieldElement::from_int(-1), 3, &ExtensionField::rationals()).unwrap();
        assert_eq!(c, FieldElement::from_int(-1));
        let c = select_root_of_power(&FieldElement::from(Rational::new(1.into(), 2.into())), 2, &ExtensionField::rationals()).unwrap();
        assert!((c.to_complex64().re - 0.5f64.sqrt()).abs() < 1e-15);
        let c = select_root_of_power(&FieldElement::from_int(-4), 4, &ExtensionField::rationals()).unwrap();
        // x^4 + 4: the root 1 + i
        let z = c.to_complex64();
        assert!((z.re - 1.0).abs() < 1e-14 && (z.im - 1.0).abs() < 1e-14);
    }

    #[test]
    fn norm_of_linear_shift() {
        let (k, g) = adjoin_root(&qp(&[-2, 0, 1]), &RootSelector::Index(0)).unwrap();
        let one = FieldElement::one().coerce_to(&k).unwrap();
        let p = UPoly::from_coeffs(vec![-&g, one]);
        assert_eq!(norm(&p, &k), qp(&[-2, 0, 1]));
    }
}
