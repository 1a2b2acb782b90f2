// Generalized asymptotes of an implicit space curve, one per branch.

use gasymp::asymptote::{is_proper, space_asymptotes};
use gasymp::branches::{BranchOptions, SpaceCurve};
use gasymp::cli::parse::parse_polynomial;
use gasymp::poly::Var;

pub fn run_example() -> String {
    let vars = [Var::X1, Var::X2, Var::X3];
    let f1 = parse_polynomial("-x2^2 - 2*x1*x3 + 2*x2*x3 - x1 + 3", &vars, 1, 1).unwrap();
    let f2 = parse_polynomial("x3 + x1*x2 - x2^2", &vars, 1, 1).unwrap();
    let rep = space_asymptotes(&SpaceCurve::new(f1, f2).unwrap(), &BranchOptions::default()).unwrap();
    rep.pairs().map(|(b, a)| format!("degree {}: {a}, proper {}\n", b.degree, is_proper(a))).collect()
}

fn main() {
    print!("{}", run_example());
}
