//! Seeded random curves checked against the pipeline invariants.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gasymp::asymptote::{asymptote_param, is_proper, space_asymptotes};
use gasymp::branches::{branch_degree, converge, residual_vanishes, residuals, BranchOptions, SpaceCurve};
use gasymp::field::{int, FieldElement};
use gasymp::parametric::{param_asymptotes, truncation_bound, ParamOptions, ParametricSpaceCurve, SPoly};
use gasymp::poly::{exps, MultiPoly, Var};
use gasymp::Error;

fn small(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-3..=3)
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    [-2, -1, 1, 2][rng.gen_range(0..4)]
}

/// A conic or cubic in `(x1, x2)` with a nonzero top `x2` power, paired
/// with `x3` as a polynomial in `(x1, x2)`.
fn implicit_instance(rng: &mut ChaCha8Rng) -> SpaceCurve {
    let d = rng.gen_range(2..=3u32);
    let mut f1 = MultiPoly::monomial(FieldElement::from_int(nonzero(rng)), exps(&[(Var::X2, d)]));
    for i in 0..=d {
        for j in 0..=(d - i) {
            if (i, j) != (0, d) && rng.gen_bool(0.6) {
                f1.add_term(exps(&[(Var::X1, i), (Var::X2, j)]), FieldElement::from_int(small(rng)));
            }
        }
    }
    let mut f2 = MultiPoly::var(Var::X3);
    for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        f2.add_term(exps(&[(Var::X1, i), (Var::X2, j)]), FieldElement::from_int(small(rng)));
    }
    SpaceCurve::new(f1, f2).unwrap()
}

fn spoly(cs: &[i64]) -> SPoly {
    SPoly::new(cs.iter().map(|&c| FieldElement::from_int(c)).collect(), FieldElement::zero())
}

/// Polynomial components, or components over `s - a` where `p1` keeps the pole.
fn parametric_instance(rng: &mut ChaCha8Rng) -> ParametricSpaceCurve {
    let poly = |rng: &mut ChaCha8Rng, lead: bool| {
        let d = rng.gen_range(1..=3);
        let mut cs: Vec<i64> = (0..d).map(|_| small(rng)).collect();
        cs.push(if lead { nonzero(rng) } else { small(rng) });
        spoly(&cs)
    };
    let nums = [poly(rng, true), poly(rng, false), poly(rng, false)];
    let den = if rng.gen_bool(0.5) { spoly(&[1]) } else { spoly(&[-small(rng), 1]) };
    ParametricSpaceCurve::new(nums, den.clone())
        .unwrap_or_else(|_| ParametricSpaceCurve::new([spoly(&[0, 1]), spoly(&[1]), spoly(&[0, 0, 1])], den).unwrap())
}

fn check_implicit(c: &SpaceCurve) -> Result<(), Error> {
    let opts = BranchOptions { order: int(3), ..Default::default() };
    let rep = space_asymptotes(c, &opts)?;
    let curve = &rep.curve.prepared.curve;
    for (b, a) in rep.pairs() {
        for r in residuals(curve, b)? {
            assert!(residual_vanishes(&r), "{c:?}: residual {r}");
        }
        assert!(is_proper(a), "{c:?}: {a} not proper");
        assert_eq!(a.degree, branch_degree(b)?, "{c:?}");
        assert_eq!(&asymptote_param(&a.to_branch()?)?, a, "{c:?}: not idempotent");
        assert!(converge(b, &a.to_branch()?)?.converges, "{c:?}: {a} does not approach");
        assert!(converge(b, b)?.converges);
    }
    for b1 in &rep.curve.branches {
        for b2 in &rep.curve.branches {
            let (x, y) = (converge(b1, b2)?, converge(b2, b1)?);
            assert_eq!(x.converges, y.converges);
            if x.converges {
                assert_eq!(b1.point, b2.point);
            }
        }
    }
    Ok(())
}

fn check_parametric(p: &ParametricSpaceCurve) -> Result<(), Error> {
    let n = truncation_bound(p);
    let a = param_asymptotes(p, &ParamOptions { terms: Some(n), ..Default::default() })?;
    let b = param_asymptotes(p, &ParamOptions { terms: Some(n + 5), ..Default::default() })?;
    assert_eq!(a.branches.len(), b.branches.len());
    let leaves: u32 = a.solutions.iter().map(|s| s.class.class_size).sum();
    assert_eq!(leaves as usize, a.prepared.curve.degree_p1(), "{p:?}");
    for (x, y) in a.branches.iter().zip(&b.branches) {
        assert_eq!(x.r2.nonnegative_part()?, y.r2.nonnegative_part()?, "{p:?}");
        assert_eq!(x.r3.nonnegative_part()?, y.r3.nonnegative_part()?, "{p:?}");
    }
    for (br, q) in a.branches.iter().zip(&a.asymptotes) {
        assert!(is_proper(q));
        assert_eq!(q.degree, branch_degree(br)?);
        assert!(converge(br, &q.to_branch()?)?.converges);
    }
    Ok(())
}

#[test]
fn random_implicit_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut ok, mut skipped) = (0, Vec::new());
    for _ in 0..400 {
        let c = implicit_instance(&mut rng);
        match check_implicit(&c) {
            Ok(()) => ok += 1,
            Err(e @ (Error::PreparationFailed(_) | Error::InvalidCurve(_))) => skipped.push(e.code()),
            Err(e) => panic!("{c:?}: {e}"),
        }
        if ok == 200 {
            break;
        }
    }
    assert_eq!(ok, 200, "only {ok} instances succeeded; skipped {skipped:?}");
}

#[test]
fn random_parametric_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xca11);
    let mut ok = 0;
    for _ in 0..400 {
        let p = parametric_instance(&mut rng);
        match check_parametric(&p) {
            Ok(()) => ok += 1,
            Err(Error::PreparationFailed(_)) => {}
            Err(e) => panic!("{p:?}: {e}"),
        }
        if ok == 200 {
            break;
        }
    }
    assert_eq!(ok, 200);
}
