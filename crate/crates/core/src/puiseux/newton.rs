//! Newton–Puiseux expansion of the roots `y(t)` of `g(y, t) = 0` near `t = 0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use super::{Orientation, PuiseuxSeries, Truncation};
use crate::error::{Error, Result};
use crate::field::{self, roots_over_field, select_root_of_power, ExtensionField, FieldElement, Rational, UPoly};
use crate::poly::{MultiPoly, Var};

/// Polynomial in `(Y, T)` keyed by `(deg_Y, deg_T)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BiPoly {
    pub fn from_multi(g: &MultiPoly, y: Var, t: Var) -> Result<BiPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in g.terms() {
            for v in Var::ALL {
                if v != y && v != t && e[v.index()] > 0 {
                    return Err(Error::InvalidArgument(format!("unexpected variable {v}")));
                }
            }
            terms.insert((e[y.index()], e[t.index()]), c.clone());
        }
        Ok(BiPoly { terms })
    }

    fn add_term(&mut self, k: (u32, u32), c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    fn min_t(&self) -> u32 {
        self.terms.keys().map(|k| k.1).min().unwrap_or(0)
    }

    fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// `G(T^p (c + Y), T^q) / T^beta` with `beta` the least resulting `T`-degree.
    fn substitute(&self, c: &FieldElement, p: u32, q: u32) -> BiPoly {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let mut cpow = vec![FieldElement::one()];
        for k in 1..=max_i as usize {
            cpow.push(&cpow[k - 1] * c);
        }
        let mut binom = vec![vec![Rational::from_integer(1.into())]];
        for n in 1..=max_i as usize {
            let prev = &binom[n - 1];
            let mut row = vec![Rational::from_integer(1.into()); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            binom.push(row);
        }
        let mut out = BiPoly { terms: BTreeMap::new() };
        for (&(i, j), a) in &self.terms {
            let base = q * j + p * i;
            for k in 0..=i {
                let coef = (a * &cpow[(i - k) as usize]).scale(&binom[i as usize][k as usize]);
                out.add_term((k, base), coef);
            }
        }
        let beta = out.min_t();
        if beta > 0 {
            out.terms = out.terms.into_iter().map(|((i, j), c)| ((i, j - beta), c)).collect();
        }
        out
    }

    /// `G(Y, 0)` as a univariate polynomial over `ctx`.
    fn at_t_zero(&self, ctx: &Arc<ExtensionField>) -> UPoly<FieldElement> {
        let proto = FieldElement::zero().coerce_to(ctx).expect("rational coerces");
        let max_i = self.terms.keys().filter(|k| k.1 == 0).map(|k| k.0).max();
        match max_i {
            None => UPoly::zero(&proto),
            Some(d) => UPoly::new((0..=d).map(|i| self.coeff(i, 0)).collect(), proto),
        }
    }

    /// Least `T`-degree for each `Y`-degree.
    fn profile(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &(i, j) in self.terms.keys() {
            let e = m.entry(i).or_insert(j);
            if j < *e {
                *e = j;
            }
        }
        m
    }
}

/// How far to expand each root.
#[derive(Clone, Debug)]
pub struct ExpansionTarget {
    /// Every exponent below this is certified.
    pub order: Rational,
    /// At least this many nonzero terms (unless the root is exact).
    pub min_terms: usize,
}

impl ExpansionTarget {
    pub fn order(order: Rational) -> Self {
        ExpansionTarget { order, min_terms: 0 }
    }

    pub fn terms(n: usize) -> Self {
        ExpansionTarget { order: Rational::zero(), min_terms: n }
    }
}

/// One representative of a class of conjugate roots; the class has
/// `class_size` members obtained by `t^(1/N) -> ε t^(1/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugacyClass {
    pub representative: PuiseuxSeries,
    pub class_size: u32,
}

impl ConjugacyClass {
    /// All members of the class, exactly. Needs a root of unity of order
    /// `class_size`, which is only available when the representative is rational
    /// or already lives in the matching cyclotomic field.
    pub fn conjugates(&self) -> Result<Vec<PuiseuxSeries>> {
        let n = self.class_size;
        match n {
            1 => Ok(vec![self.representative.clone()]),
            2 => {
                let eps = FieldElement::from_int(-1);
                Ok((0..2).map(|j| self.leaf(&eps, j)).collect())
            }
            _ => {
                let (ctx, zeta) = field::cyclotomic(n)?;
                if let Some(k) = self.representative.extension() {
                    if !k.same_as(&ctx) {
                        return Err(Error::ExtensionTowerTooDeep);
                    }
                }
                Ok((0..n).map(|j| self.leaf(&zeta, j)).collect())
            }
        }
    }

    /// The member for `ε^j`.
    fn leaf(&self, eps: &FieldElement, j: u32) -> PuiseuxSeries {
        let n = Rational::from_integer(self.class_size.into());
        let o = self.representative.orientation();
        self.representative.map_coeffs(|e, c| {
            let lambda = lambda_of(o, e, &n);
            let k = (lambda * j as i64).rem_euclid(self.class_size as i64);
            c * &eps.pow(k).expect("root of unity")
        })
    }

    /// Coefficients of the member for `exp(2πij/N)`, evaluated numerically.
    pub fn leaf_numeric(&self, j: u32) -> Vec<(Rational, Complex64)> {
        let nr = Rational::from_integer(self.class_size.into());
        let o = self.representative.orientation();
        self.representative
            .terms()
            .iter()
            .map(|(e, c)| {
                let lambda = lambda_of(o, e, &nr);
                let ang = std::f64::consts::TAU * (lambda * j as i64) as f64 / self.class_size as f64;
                (e.clone(), c.to_complex64() * Complex64::from_polar(1.0, ang))
            })
            .collect()
    }
}

/// Power of `t^(1/N)` in a term: `e N` for local series, `(1 - e) N` for
/// branch series.
pub(crate) fn lambda_of(o: Orientation, e: &Rational, n: &Rational) -> i64 {
    let f = match o {
        Orientation::Local => e.clone(),
        Orientation::Branch => Rational::from_integer(1.into()) - e,
    };
    let l = f * n;
    debug_assert!(l.is_integer());
    l.to_integer().try_into().expect("small exponent")
}

struct Node {
    g: BiPoly,
    ctx: Arc<ExtensionField>,
    prefix: Vec<(Rational, FieldElement)>,
    /// Exponent carried by `Y`.
    e: Rational,
    /// `T = t^(1/n)`.
    n: u32,
}

const MAX_STEPS: usize = 20_000;

/// Expands every root `y(t)` of `g(y, t)` with `y(0)` finite, one
/// representative per conjugacy class.
pub fn newton_expand(g: &MultiPoly, y: Var, t: Var, target: &ExpansionTarget) -> Result<Vec<ConjugacyClass>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = if g.has_var(y) { g.squarefree_part() } else { g.clone() };
    let mut b = BiPoly::from_multi(&g, y, t)?;
    let j0 = b.min_t();
    if j0 > 0 {
        b.terms = b.terms.into_iter().map(|((i, j), c)| ((i, j - j0), c)).collect();
    }
    let base = g.extension_context().unwrap_or_else(ExtensionField::rationals);
    let g0 = b.at_t_zero(&base);
    if g0.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut stack = Vec::new();
    for class in roots_over_field(&g0)? {
        for m in class.members {
            let ctx = join(&base, m.context())?;
            if m.is_zero() {
                stack.push(Node { g: b.clone(), ctx, prefix: Vec::new(), e: Rational::zero(), n: 1 });
            } else {
                let shifted = b.substitute(&m, 0, 1);
                stack.push(Node { g: shifted, ctx, prefix: vec![(Rational::zero(), m)], e: Rational::zero(), n: 1 });
            }
        }
    }
    let mut out = Vec::new();
    let mut steps = 0;
    while let Some(node) = stack.pop() {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::NotSquarefree);
        }
        expand_node(node, target, &mut stack, &mut out, &mut steps)?;
    }
    out.sort_by(compare_classes);
    Ok(out)
}

fn compare_classes(a: &ConjugacyClass, b: &ConjugacyClass) -> std::cmp::Ordering {
    let (ta, tb) = (a.representative.terms(), b.representative.terms());
    let zero = Rational::zero();
    let c0 = |t: &[(Rational, FieldElement)]| t.iter().find(|x| x.0 == zero).map(|x| x.1.clone()).unwrap_or_default();
    c0(ta)
        .cmp_canonical(&c0(tb))
        .then_with(|| {
            for (x, y) in ta.iter().zip(tb) {
                let o = x.0.cmp(&y.0).then_with(|| x.1.cmp_canonical(&y.1));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            ta.len().cmp(&tb.len())
        })
        .then(a.class_size.cmp(&b.class_size))
}

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement::zero()
    }
}

fn finish(node: &Node, truncation: Truncation) -> ConjugacyClass {
    let s = PuiseuxSeries::new(Orientation::Local, node.prefix.clone(), truncation, node.n);
    ConjugacyClass { representative: s, class_size: node.n }
}

fn expand_node(mut node: Node, target: &ExpansionTarget, stack: &mut Vec<Node>, out: &mut Vec<ConjugacyClass>, steps: &mut usize) -> Result<()> {
    loop {
        let prof = node.g.profile();
        let i_min = *prof.keys().next().expect("nonzero");
        let i_star = prof.iter().find(|(_, &j)| j == 0).map(|(&i, _)| i).ok_or(Error::NotSquarefree)?;
        if i_min >= 2 {
            return Err(Error::NotSquarefree);
        }
        if i_star == 0 {
            return Ok(());
        }
        if i_star == 1 {
            if i_min == 1 {
                out.push(finish(&node, Truncation::Exact));
                return Ok(());
            }
            // regular: one solution continuing with slope j0
            let j0 = prof[&0];
            let next = &node.e + Rational::new(j0.into(), node.n.into());
            if next >= target.order && node.prefix.len() >= target.min_terms {
                out.push(finish(&node, Truncation::Order(next)));
                return Ok(());
            }
            let c = -(&node.g.coeff(0, j0) / &node.g.coeff(1, 0));
            node.g = node.g.substitute(&c, j0, 1);
            node.prefix.push((next.clone(), c));
            node.e = next;
            *steps += 1;
            if *steps > MAX_STEPS {
                return Err(Error::NotSquarefree);
            }
            continue;
        }
        // several solutions still together: split along the polygon
        if i_min == 1 {
            out.push(finish(&node, Truncation::Exact));
        }
        let pts: Vec<(u32, u32)> = prof.iter().filter(|(&i, _)| i <= i_star).map(|(&i, &j)| (i, j)).collect();
        for (a, b) in lower_hull(&pts) {
            let (ia, ja) = a;
            let (ib, jb) = b;
            let num = ja - jb;
            let den = ib - ia;
            let gd = num.gcd(&den);
            let (p, q) = (num / gd, den / gd);
            let beta = q * ja + p * ia;
            // Ψ(w) = Σ a_ij w^((i - ia)/q) over points on the edge
            let proto = FieldElement::zero().coerce_to(&node.ctx)?;
            let deg = ((ib - ia) / q) as usize;
            let mut psi = vec![proto.clone(); deg + 1];
            for (&(i, j), c) in &node.g.terms {
                if i >= ia && i <= ib && q * j + p * i == beta {
                    psi[((i - ia) / q) as usize] = c.clone();
                }
            }
            let psi = UPoly::new(psi, proto);
            for class in roots_over_field(&psi)? {
                for w in class.members {
                    let c = select_root_of_power(&w, q, &node.ctx)?;
                    let ctx = join(&join(&node.ctx, w.context())?, c.context())?;
                    let g2 = node.g.substitute(&c, p, q);
                    let n2 = node.n * q;
                    let e2 = &node.e + Rational::new(p.into(), n2.into());
                    let mut prefix = node.prefix.clone();
                    prefix.push((e2.clone(), c));
                    stack.push(Node { g: g2, ctx, prefix, e: e2, n: n2 });
                }
            }
        }
        return Ok(());
    }
}

fn join(a: &Arc<ExtensionField>, b: &Arc<ExtensionField>) -> Result<Arc<ExtensionField>> {
    FieldElement::join_context(a, b).map_err(|_| Error::ExtensionTowerTooDeep)
}

/// Lower convex hull edges from the leftmost point to the last point.
fn lower_hull(pts: &[(u32, u32)]) -> Vec<((u32, u32), (u32, u32))> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &(i, j) in pts {
        let p = (i as i64, j as i64);
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2).filter(|w| w[1].1 < w[0].1).map(|w| ((w[0].0 as u32, w[0].1 as u32), (w[1].0 as u32, w[1].1 as u32))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn t() -> MultiPoly {
        MultiPoly::var(Var::T)
    }

    #[test]
    fn square_root_class() {
        let g = &y().pow(2) - &t();
        let cs = newton_expand(&g, Var::Y, Var::T, &ExpansionTarget::order(int(3))).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].class_size, 2);
        assert_eq!(cs[0].representative.terms(), &[(rat(1, 2), FieldElement::one())]);
        assert!(cs[0].representative.is_exact());
        let conj = cs[0].conjugates().unwrap();
        assert_eq!(conj[1].terms(), &[(rat(1, 2), FieldElement::from_int(-1))]);
    }

    #[test]
    fn regular_root_series() {
        // y = t/(1 - t) = t + t^2 + ...
        let g = &(&y() - &(&t() * &y())) - &t();
        let cs = newton_expand(&g, Var::Y, Var::T, &ExpansionTarget::order(int(6))).unwrap();
        assert_eq!(cs.len(), 1);
        let r = &cs[0].representative;
        assert_eq!(r.truncation(), &Truncation::Order(int(6)));
        for k in 1..6 {
            assert_eq!(r.coefficient(&int(k)), FieldElement::one());
        }
    }

    #[test]
    fn cusp_with_two_slopes() {
        // (y^2 - t^3)(y - t) has a class of size 2 and a class of size 1
        let g = &(&y().pow(2) - &t().pow(3)) * &(&y() - &t());
        let cs = newton_expand(&g, Var::Y, Var::T, &ExpansionTarget::order(int(3))).unwrap();
        let mut sizes: Vec<u32> = cs.iter().map(|c| c.class_size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn cube_root_of_minus_one() {
        // y^3 + t: y = -t^(1/3)
        let g = &y().pow(3) + &t();
        let cs = newton_expand(&g, Var::Y, Var::T, &ExpansionTarget::order(int(1))).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].class_size, 3);
        assert_eq!(cs[0].representative.terms(), &[(rat(1, 3), FieldElement::from_int(-1))]);
        let conj = cs[0].conjugates().unwrap();
        assert_eq!(conj.len(), 3);
        for s in &conj {
            let c = &s.terms()[0].1;
            assert_eq!(c.pow(3).unwrap(), FieldElement::from_int(-1));
        }
    }

    #[test]
    fn nonzero_constant_needs_extension() {
        // y^2 - 2 + t
        let g = &(&y().pow(2) - &MultiPoly::int(2)) + &t();
        let cs = newton_expand(&g, Var::Y, Var::T, &ExpansionTarget::order(int(3))).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.class_size == 1));
        let c0 = cs[0].representative.coefficient(&int(0));
        assert_eq!(&c0 * &c0, FieldElement::from_int(2));
    }

    #[test]
    fn hull_edges() {
        let e = lower_hull(&[(0, 3), (1, 1), (2, 1), (3, 0)]);
        assert_eq!(e, vec![((0, 3), (1, 1)), ((1, 1), (3, 0))]);
    }
}
