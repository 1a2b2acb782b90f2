#![allow(dead_code)]

use gasymp::branches::SpaceCurve;
use gasymp::cli::{self, parse::parse_polynomial};
use gasymp::field::{rat, FieldElement};
use gasymp::parametric::ParametricSpaceCurve;
use gasymp::poly::{MultiPoly, Var};

pub const IMPLICIT: &[&str] = &["example1", "line_pair", "parabola", "q2_curve", "circle"];
pub const PARAMETRIC: &[&str] = &["parametric", "twisted_cubic", "hyperbola"];

pub fn data_path(name: &str) -> String {
    format!("{}/data/{name}.txt", env!("CARGO_MANIFEST_DIR"))
}

pub fn data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

pub fn implicit(name: &str) -> SpaceCurve {
    cli::implicit_curve(&cli::parse_input(&data(name)).unwrap()).unwrap()
}

pub fn parametric(name: &str) -> ParametricSpaceCurve {
    cli::parametric_curve(&cli::parse_input(&data(name)).unwrap()).unwrap()
}

pub fn poly(text: &str) -> MultiPoly {
    parse_polynomial(text, &[Var::X1, Var::X2, Var::X3], 1, 1).unwrap()
}

pub fn q(n: i64, d: i64) -> FieldElement {
    FieldElement::from(rat(n, d))
}
