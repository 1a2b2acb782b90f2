// Samples of a branch and its asymptote, and how fast they close in.

use gasymp::asymptote::{distance_to_param, leaf_point, real_leaves, space_asymptotes};
use gasymp::branches::{BranchOptions, SpaceCurve};
use gasymp::cli::emit_plot_samples;
use gasymp::cli::parse::parse_polynomial;
use gasymp::poly::Var;

pub fn run_example() -> String {
    let vars = [Var::X1, Var::X2, Var::X3];
    let f1 = parse_polynomial("-x2^2 - 2*x1*x3 + 2*x2*x3 - x1 + 3", &vars, 1, 1).unwrap();
    let f2 = parse_polynomial("x3 + x1*x2 - x2^2", &vars, 1, 1).unwrap();
    let rep = space_asymptotes(&SpaceCurve::new(f1, f2).unwrap(), &BranchOptions::default()).unwrap();
    let table = emit_plot_samples(&rep.curve.branches, &rep.asymptotes, (1.0, 100.0), 5).unwrap();
    let mut out = table.to_csv();
    let (b, a) = (&rep.curve.branches[1], &rep.asymptotes[1]);
    for leaf in real_leaves(b) {
        for z in [1e2, 1e3, 1e4] {
            let p = leaf_point(b, leaf, z).unwrap();
            out += &format!("leaf {leaf}, z = {z:e}: distance {:.3e}\n", distance_to_param(&p, a));
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
