// Projection of a space curve onto the (x1, x2)-plane and its lift.

use gasymp::branches::{project, SpaceCurve};
use gasymp::cli::parse::parse_polynomial;
use gasymp::poly::{resultant, Var};

pub fn run_example() -> String {
    let vars = [Var::X1, Var::X2, Var::X3];
    let f1 = parse_polynomial("-x2^2 - 2*x1*x3 + 2*x2*x3 - x1 + 3", &vars, 1, 1).unwrap();
    let f2 = parse_polynomial("x3 + x1*x2 - x2^2", &vars, 1, 1).unwrap();
    let r = resultant(&f1, &f2, Var::X3).unwrap();
    let p = project(&SpaceCurve::new(f1, f2).unwrap()).unwrap();
    format!("Res_x3 = {r}\nlift x3 = ({}) / ({})\n", p.h1, p.h2)
}

fn main() {
    print!("{}", run_example());
}
