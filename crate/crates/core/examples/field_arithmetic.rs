// Arithmetic in Q(sqrt 2) and a certified embedding of the generator.

use gasymp::field::{adjoin_root, factor_rational, rat, FieldElement, QPoly, RootSelector};

pub fn run_example() -> String {
    let m = QPoly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)], rat(0, 1));
    let (k, g) = adjoin_root(&m, &RootSelector::Index(0)).unwrap();
    let a = &g + &FieldElement::from(rat(1, 2));
    let inv = a.inv().unwrap();
    assert_eq!(a.try_mul(&inv).unwrap(), FieldElement::one());
    let disc = k.embedding_refined(60);
    let radius = gasymp::field::rational_to_f64(&disc.radius);
    // x^4 - 1 = (x - 1)(x + 1)(x^2 + 1)
    let quartic = QPoly::new(vec![rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)], rat(0, 1));
    let factors = factor_rational(&quartic).len();
    format!("generator {g} ~ {:.12} (radius {radius:.1e})\n1/({a}) = {inv}\nx^4 - 1 has {factors} factors over Q\n", disc.center.to_f64().re)
}

fn main() {
    print!("{}", run_example());
}
