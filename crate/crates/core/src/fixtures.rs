//! Bundled example algebras, including deliberately broken mutants.

use crate::algebra::{yau_twist, HomAlgebra, SymmetricStructure};
use crate::io::AlgebraSpec;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

const BUNDLED: &[(&str, &str)] = &[
    ("dual_numbers", include_str!("../fixtures/dual_numbers.json")),
    ("dual_numbers_twist_2", include_str!("../fixtures/dual_numbers_twist_2.json")),
    ("dual_numbers_twist_half", include_str!("../fixtures/dual_numbers_twist_half.json")),
    ("dual_numbers_twist_neg1", include_str!("../fixtures/dual_numbers_twist_neg1.json")),
    ("k_times_k", include_str!("../fixtures/k_times_k.json")),
    ("k_times_k_swap", include_str!("../fixtures/k_times_k_swap.json")),
    ("ground_field", include_str!("../fixtures/ground_field.json")),
    ("nilpotent_twist", include_str!("../fixtures/nilpotent_twist.json")),
    ("upper_triangular_twist", include_str!("../fixtures/upper_triangular_twist.json")),
    ("broken_hom_assoc", include_str!("../fixtures/broken_hom_assoc.json")),
    ("broken_multiplicativity", include_str!("../fixtures/broken_multiplicativity.json")),
    ("corrupted_theta", include_str!("../fixtures/corrupted_theta.json")),
];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub spec: AlgebraSpec,
    pub algebra: HomAlgebra,
    pub theta: Option<SymmetricStructure>,
}

impl Fixture {
    pub fn from_spec(spec: AlgebraSpec) -> crate::Result<Self> {
        Ok(Fixture {
            name: spec.name.clone(),
            algebra: spec.algebra()?,
            theta: spec.symmetric_structure()?,
            spec,
        })
    }

    pub fn is_mutant(&self) -> bool {
        self.spec.mutant
    }
}

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn get(name: &str) -> Option<Fixture> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| {
        let spec = AlgebraSpec::from_json(text).expect("bundled fixture parses");
        Fixture::from_spec(spec).expect("bundled fixture builds")
    })
}

pub fn all() -> Vec<Fixture> {
    names().map(|n| get(n).expect("listed")).collect()
}

/// Fixtures that satisfy every axiom.
pub fn valid() -> Vec<Fixture> {
    all().into_iter().filter(|f| !f.is_mutant()).collect()
}

pub fn mutants() -> Vec<Fixture> {
    all().into_iter().filter(Fixture::is_mutant).collect()
}

fn algebra(name: &str) -> HomAlgebra {
    get(name).expect("bundled fixture").algebra
}

pub fn dual_numbers() -> HomAlgebra {
    algebra("dual_numbers")
}

/// Yau twist of the dual numbers by `x -> lambda x`.
pub fn dual_numbers_twist(lambda: Scalar) -> HomAlgebra {
    let hom = Matrix::from_rows(
        &[
            crate::linalg::Vector(vec![Scalar::one(), Scalar::zero()]),
            crate::linalg::Vector(vec![Scalar::zero(), lambda.clone()]),
        ],
        2,
    );
    yau_twist(&dual_numbers(), &hom)
        .expect("x -> lambda x is an endomorphism")
        .with_name(format!("dual_numbers_twist({lambda})"))
}

pub fn k_times_k() -> HomAlgebra {
    algebra("k_times_k")
}

pub fn k_times_k_swap() -> HomAlgebra {
    algebra("k_times_k_swap")
}

pub fn ground_field() -> HomAlgebra {
    algebra("ground_field")
}

pub fn nilpotent_twist() -> HomAlgebra {
    algebra("nilpotent_twist")
}

pub fn upper_triangular_twist() -> HomAlgebra {
    algebra("upper_triangular_twist")
}

/// Every valid regular unital fixture.
pub fn regular_unital() -> Vec<HomAlgebra> {
    valid()
        .into_iter()
        .map(|f| f.algebra)
        .filter(|a| a.is_regular() && a.is_unital())
        .collect()
}
