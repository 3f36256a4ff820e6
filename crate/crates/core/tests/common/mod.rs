#![allow(dead_code)]

pub mod oracle;

use bihom_poisson::algebra::BiHomPoissonAlgebra;
use bihom_poisson::constructions::{
    build_example_e1, build_sl2, polarize_minus, sl2_twisting_pair, upper_triangular_algebra, yau_twist,
};
use bihom_poisson::linalg::{frac, int, Rational, Vector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn e1_23() -> BiHomPoissonAlgebra {
    build_example_e1(&int(2), &int(3)).unwrap()
}

pub fn sl2(deg: u32) -> BiHomPoissonAlgebra {
    build_sl2(deg).unwrap()
}

pub fn twisted_sl2(deg: u32, lambda: i64, gamma: i64) -> BiHomPoissonAlgebra {
    let tp = sl2_twisting_pair(&int(lambda), &int(gamma), deg).unwrap();
    yau_twist(&sl2(deg), &tp).unwrap()
}

pub fn upper_triangular_poisson() -> BiHomPoissonAlgebra {
    polarize_minus(&upper_triangular_algebra()).unwrap()
}

/// Named fixtures that satisfy every BiHom-Poisson identity.
pub fn passing_fixtures() -> Vec<(&'static str, BiHomPoissonAlgebra)> {
    vec![
        ("e1(2,3)", e1_23()),
        ("sl2 deg 1", sl2(1)),
        ("sl2 deg 2 twisted (2,5)", twisted_sl2(2, 2, 5)),
    ]
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small rational with numerator in [-5, 5] and denominator in [1, 4].
pub fn small_rational(r: &mut StdRng) -> Rational {
    frac(r.gen_range(-5..=5), r.gen_range(1..=4))
}

pub fn random_vector(r: &mut StdRng, n: usize) -> Vector {
    (0..n).map(|_| small_rational(r)).collect()
}

/// Index of a basis element by name.
pub fn basis_index(a: &BiHomPoissonAlgebra, name: &str) -> usize {
    a.basis_names
        .iter()
        .position(|n| n == name)
        .unwrap_or_else(|| panic!("no basis element {name}"))
}
