//! Resultants by the subresultant pseudo-remainder sequence.

use super::{MultiPoly, Var};
use crate::error::{Error, Result};

/// The polynomial remainder sequence together with the resultant.
#[derive(Clone, Debug)]
pub struct Prs {
    pub members: Vec<MultiPoly>,
    pub resultant: MultiPoly,
}

fn deg(p: &MultiPoly, v: Var) -> u32 {
    p.degree(v).unwrap_or(0)
}

pub fn subresultant_prs(f: &MultiPoly, g: &MultiPoly, v: Var) -> Result<Prs> {
    if !f.has_var(v) && !g.has_var(v) {
        return Err(Error::VariableAbsent(v));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Prs { members: vec![f.clone(), g.clone()], resultant: MultiPoly::zero() });
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut negate = false;
    if deg(&a, v) < deg(&b, v) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a, v) % 2 == 1 && deg(&b, v) % 2 == 1 {
            negate = true;
        }
    }
    let mut members = vec![a.clone(), b.clone()];
    if deg(&b, v) == 0 {
        return Ok(Prs { members, resultant: b.pow(deg(&a, v)) });
    }
    let mut gg = MultiPoly::one();
    let mut h = MultiPoly::one();
    loop {
        let (da, db) = (deg(&a, v), deg(&b, v));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.prem(&b, v);
        a = b;
        if r.is_zero() {
            return Ok(Prs { members, resultant: MultiPoly::zero() });
        }
        let den = &gg * &h.pow(delta);
        b = r.div_exact(&den).expect("subresultant division is exact");
        members.push(b.clone());
        gg = a.lc_in(v);
        h = match delta {
            0 => h,
            1 => gg.clone(),
            _ => gg.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact"),
        };
        if deg(&b, v) == 0 {
            break;
        }
    }
    let da = deg(&a, v);
    let res = if da == 0 { b } else { b.pow(da).div_exact(&h.pow(da - 1)).expect("exact") };
    let resultant = if negate { -&res } else { res };
    Ok(Prs { members, resultant })
}

/// `Res_v(f, g)`; one argument may be free of `v`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, v: Var) -> Result<MultiPoly> {
    Ok(subresultant_prs(f, g, v)?.resultant)
}

/// Coefficients `(s1, s0)` of the degree-one member `s1*v + s0` of the
/// remainder sequence, which agrees with the first subresultant up to a
/// factor free of `v`.
pub fn subresultant_first(f: &MultiPoly, g: &MultiPoly, v: Var) -> Result<(MultiPoly, MultiPoly)> {
    let prs = subresultant_prs(f, g, v)?;
    if prs.resultant.is_zero() {
        return Err(Error::DegenerateSubresultant);
    }
    let m = prs.members.iter().rev().find(|p| deg(p, v) == 1).ok_or(Error::DegenerateSubresultant)?;
    let cs = m.coeffs_in(v);
    Ok((cs[1].clone(), cs[0].clone()))
}
