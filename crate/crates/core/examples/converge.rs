// Convergence of branches and of an asymptote with the branch it came from.

use gasymp::asymptote::{approaches, space_asymptotes};
use gasymp::branches::{converge, BranchOptions, SpaceCurve};
use gasymp::cli::parse::parse_polynomial;
use gasymp::poly::Var;

pub fn run_example() -> String {
    let vars = [Var::X1, Var::X2, Var::X3];
    let f1 = parse_polynomial("-x2^2 - 2*x1*x3 + 2*x2*x3 - x1 + 3", &vars, 1, 1).unwrap();
    let f2 = parse_polynomial("x3 + x1*x2 - x2^2", &vars, 1, 1).unwrap();
    let rep = space_asymptotes(&SpaceCurve::new(f1, f2).unwrap(), &BranchOptions::default()).unwrap();
    let (b, a) = (&rep.curve.branches, &rep.asymptotes);
    let c = converge(&b[0], &b[1]).unwrap();
    format!(
        "B1 vs B2: {} ({})\nQ2 approaches B2: {}\nQ1 approaches B2: {}\n",
        c.converges,
        c.reason,
        approaches(&a[1], &b[1]).unwrap(),
        approaches(&a[0], &b[1]).unwrap()
    )
}

fn main() {
    print!("{}", run_example());
}
