// Infinity branches of the intersection of two quadrics.

use gasymp::branches::{infinity_branches, BranchOptions, SpaceCurve};
use gasymp::cli::parse::parse_polynomial;
use gasymp::field::int;
use gasymp::poly::Var;

pub fn run_example() -> String {
    let vars = [Var::X1, Var::X2, Var::X3];
    let f1 = parse_polynomial("-x2^2 - 2*x1*x3 + 2*x2*x3 - x1 + 3", &vars, 1, 1).unwrap();
    let f2 = parse_polynomial("x3 + x1*x2 - x2^2", &vars, 1, 1).unwrap();
    let opts = BranchOptions { order: int(3), ..Default::default() };
    let cb = infinity_branches(&SpaceCurve::new(f1, f2).unwrap(), &opts).unwrap();
    let mut out = String::new();
    for b in &cb.branches {
        let p = b.projective_point();
        out += &format!("({} : {} : {} : 0), {} leaves\n  r2 = {}\n  r3 = {}\n", p[0], p[1], p[2], b.ramification, b.r2, b.r3);
    }
    out
}

fn main() {
    print!("{}", run_example());
}
