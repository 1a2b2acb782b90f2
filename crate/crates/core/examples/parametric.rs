// Asymptotes straight from a rational parametrization.

use gasymp::cli::{parametric_curve, parse_input};
use gasymp::parametric::{param_asymptotes, truncation_bound, ParamOptions};

pub fn run_example() -> String {
    let text = "p1: (-1+s^2)/s^3\np2: (-1+s^2)/s^2\np3: 1/s\n";
    let p = parametric_curve(&parse_input(text).unwrap()).unwrap();
    let rep = param_asymptotes(&p, &ParamOptions::default()).unwrap();
    let mut out = format!("{} terms of l(t) suffice\n", truncation_bound(&p));
    for (s, a) in rep.solutions.iter().zip(&rep.asymptotes) {
        out += &format!("l(t) = {}\nasymptote {a}\n", s.class.representative);
    }
    out
}

fn main() {
    print!("{}", run_example());
}
