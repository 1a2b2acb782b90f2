// Newton–Puiseux roots of y^3 - t^2 (1 + y) = 0 near t = 0.

use gasymp::cli::parse::parse_polynomial;
use gasymp::poly::Var;
use gasymp::puiseux::{newton_expand, ExpansionTarget};

pub fn run_example() -> String {
    let g = parse_polynomial("y^3 - t^2 - t^2*y", &[Var::Y, Var::T], 1, 1).unwrap();
    let mut out = String::new();
    for class in newton_expand(&g, Var::Y, Var::T, &ExpansionTarget::terms(4)).unwrap() {
        out += &format!("{} conjugates: y = {}\n", class.class_size, class.representative);
    }
    out
}

fn main() {
    print!("{}", run_example());
}
