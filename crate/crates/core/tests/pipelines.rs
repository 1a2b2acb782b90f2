mod common;

use gasymp::asymptote::{approaches, space_asymptotes};
use gasymp::branches::{converge, infinity_branches, BranchOptions, SpaceCurve};
use gasymp::field::{int, rat};
use gasymp::parametric::{param_asymptotes, param_solutions, truncation_bound, ParamOptions, ParametricSpaceCurve};

use common::{poly, q};

fn texts(p: &ParametricSpaceCurve) -> Vec<String> {
    param_asymptotes(p, &ParamOptions::default()).unwrap().asymptotes.iter().map(|a| a.to_string()).collect()
}

fn curve(text: &str) -> ParametricSpaceCurve {
    gasymp::cli::parametric_curve(&gasymp::cli::parse_input(text).unwrap()).unwrap()
}

#[test]
fn implicit_and_parametric_pipelines_agree() {
    // s = 1/x3 turns the parametric example into x2 = 1 - x3^2, x1 = x3 - x3^3
    let c = SpaceCurve::new(poly("x2 - 1 + x3^2"), poly("x1 - x3 + x3^3")).unwrap();
    let imp = infinity_branches(&c, &BranchOptions::default()).unwrap();
    let par = param_asymptotes(&common::parametric("parametric"), &ParamOptions::default()).unwrap();
    assert!(imp.prepared.transform.is_identity() && par.prepared.transform.is_identity());
    assert_eq!(imp.branches.len(), 1);
    assert_eq!(par.branches.len(), 1);
    let (a, b) = (&imp.branches[0], &par.branches[0]);
    assert_eq!(a.ramification, 3);
    assert!(converge(a, b).unwrap().converges);
    let asy = space_asymptotes(&c, &BranchOptions::default()).unwrap();
    assert!(approaches(&par.asymptotes[0], a).unwrap());
    assert!(approaches(&asy.asymptotes[0], b).unwrap());
}

#[test]
fn asymptote_curve_is_its_own_asymptote() {
    let ex = space_asymptotes(&common::implicit("example1"), &BranchOptions::default()).unwrap();
    let own = space_asymptotes(&common::implicit("q2_curve"), &BranchOptions::default()).unwrap();
    assert_eq!(own.asymptotes.len(), 1);
    assert_eq!(own.asymptotes[0].to_string(), ex.asymptotes[1].to_string());
    assert!(own.curve.branches[0].r2.is_exact() && own.curve.branches[0].r3.is_exact());
}

#[test]
fn line_pair() {
    let rep = space_asymptotes(&common::implicit("line_pair"), &BranchOptions::default()).unwrap();
    let got: Vec<String> = rep.asymptotes.iter().map(|a| a.to_string()).collect();
    assert_eq!(got, ["(t, 0, 0)"]);
}

#[test]
fn first_asymptote_does_not_approach_the_second_branch() {
    let rep = space_asymptotes(&common::implicit("example1"), &BranchOptions::default()).unwrap();
    let (b, a) = (&rep.curve.branches, &rep.asymptotes);
    assert!(approaches(&a[1], &b[1]).unwrap());
    assert!(!approaches(&a[0], &b[1]).unwrap());
    assert_eq!(converge(&b[0], &b[1]).unwrap().reason, "distinct infinity points");
}

#[test]
fn binomial_solutions() {
    // s^2 - t (s^2 + 1) = 0 gives s = ±t^(1/2) (1 + t/2 + ...)
    let p = curve("p1: (s^2 + 1)/s^2\np2: s\np3: 0\n");
    let sols = param_solutions(&p, 5).unwrap();
    assert_eq!(sols.len(), 1);
    let l = &sols[0].class;
    assert_eq!(l.class_size, 2);
    let c = l.representative.coefficient(&rat(1, 2));
    assert_eq!(c.try_mul(&c).unwrap(), q(1, 1));
    assert_eq!(l.representative.coefficient(&rat(3, 2)), c.scale(&rat(1, 2)));
    assert_eq!(l.representative.coefficient(&rat(5, 2)), c.scale(&rat(3, 8)));
}

#[test]
fn polynomial_parametrizations() {
    assert_eq!(texts(&curve("p1: s\np2: s\np3: s\n")), ["(t, t, t)"]);
    assert_eq!(texts(&curve("p1: s\np2: s^2\np3: 0\n")), ["(t, t^2, 0)"]);
    assert_eq!(texts(&common::parametric("twisted_cubic")), ["(t, t^2, t^3)"]);
    let rep = param_asymptotes(&curve("p1: s\np2: s\np3: s\n"), &ParamOptions::default()).unwrap();
    assert_eq!(rep.branches[0].r2.coefficient(&int(1)), q(1, 1));
    assert_eq!(truncation_bound(&curve("p1: 2*s + 1\np2: s\np3: 1\n")), 3);
}

#[test]
fn hyperbola_in_space() {
    let rep = param_asymptotes(&common::parametric("hyperbola"), &ParamOptions::default()).unwrap();
    let got: Vec<String> = rep.asymptotes.iter().map(|a| a.to_string()).collect();
    assert!(got.iter().any(|s| s == "(t, 0, 1)"), "{got:?}");
}

#[test]
fn leaf_count_matches_degree() {
    for text in ["p1: (-1+s^2)/s^3\np2: s\np3: 1\n", "p1: (s^3 + 1)/(s - 1)\np2: s\np3: 1/(s - 1)\n", "p1: s^4 - s\np2: s^2\np3: s\n"] {
        let p = curve(text);
        let sols = param_solutions(&p, truncation_bound(&p)).unwrap();
        let leaves: u32 = sols.iter().map(|s| s.class.class_size).sum();
        assert_eq!(leaves as usize, p.degree_p1(), "{text}");
    }
}
