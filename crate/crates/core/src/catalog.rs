//! Named algebras used throughout the tests and the fixture corpus.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{OrderPresentation, StructureAlgebra};
use crate::exactring::BaseRing;

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn presentation(minpoly: &[i64], basis: &[&[(i64, i64)]], label: &str) -> OrderPresentation {
    OrderPresentation::new(
        minpoly.iter().map(|&c| BigInt::from(c)).collect(),
        basis.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect(),
        label,
    )
}

fn build(p: OrderPresentation) -> StructureAlgebra {
    p.to_algebra().expect("catalog presentation is an order")
}

/// Ring of integers of `Q(eta)`, `eta^3 - eta^2 - 2 eta - 8 = 0`, with basis
/// `{1, (eta + eta^2)/2, eta^2}`.
pub fn dedekind_presentation() -> OrderPresentation {
    presentation(
        &[-8, -2, -1, 1],
        &[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 2), (1, 2)], &[(0, 1), (0, 1), (1, 1)]],
        "dedekind cubic",
    )
}

pub fn dedekind() -> StructureAlgebra {
    build(dedekind_presentation())
}

/// `Z[i]` with basis `{1, i}`.
pub fn gaussian() -> StructureAlgebra {
    build(presentation(&[1, 0, 1], &[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]], "gaussian integers"))
}

/// `Z[sqrt 2]` with basis `{1, sqrt 2}`.
pub fn sqrt2() -> StructureAlgebra {
    build(presentation(&[-2, 0, 1], &[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]], "Z[sqrt2]"))
}

/// `Z[(1 + sqrt 5)/2]` with basis `{1, (1 + sqrt 5)/2}`.
pub fn golden() -> StructureAlgebra {
    build(presentation(&[-5, 0, 1], &[&[(1, 1), (0, 1)], &[(1, 2), (1, 2)]], "Z[golden ratio]"))
}

/// `Z[sqrt 2, sqrt 3]` with basis `{1, sqrt 2, sqrt 3, sqrt 6}`.
pub fn biquadratic() -> StructureAlgebra {
    // Products of basis elements: each e_i e_j is (scalar) * e_k.
    let table: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (2, 0), (1, 3), (2, 2)],
        [(1, 2), (1, 3), (3, 0), (3, 1)],
        [(1, 3), (2, 2), (3, 1), (6, 0)],
    ];
    let c: Vec<Vec<Vec<i64>>> = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(s, k)| (0..4).map(|m| if m == k { s } else { 0 }).collect())
                .collect()
        })
        .collect();
    StructureAlgebra::from_ints(BaseRing::Z, &c, &[1, 0, 0, 0], "Z[sqrt2, sqrt3]").unwrap()
}

/// Ring of integers of `Q(cbrt(175))` with basis `{1, alpha, beta}`,
/// `alpha = cbrt(5^2 7)`, `beta = cbrt(5 7^2) = alpha^2/5`.
pub fn pure_cubic_175() -> StructureAlgebra {
    build(presentation(
        &[-175, 0, 0, 1],
        &[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 1), (0, 1)], &[(0, 1), (0, 1), (1, 5)]],
        "Z[cbrt175, cbrt245]",
    ))
}

/// The non-maximal order `Z + 5 Z[cbrt 2]`, basis `{1, 5 eta, 5 eta^2}`.
pub fn cubic_conductor_5() -> StructureAlgebra {
    build(presentation(
        &[-2, 0, 0, 1],
        &[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (5, 1), (0, 1)], &[(0, 1), (0, 1), (5, 1)]],
        "Z + 5Z[cbrt2]",
    ))
}

/// Ring of integers of the quartic field `eta^4 - eta^3 + 2 eta^2 + 4 eta + 3`
/// with basis `{1, eta^2, eta^3, (2 eta^3 + eta)/3}`; 3 splits completely.
pub fn quartic_cid3() -> StructureAlgebra {
    build(presentation(
        &[3, 4, 2, -1, 1],
        &[
            &[(1, 1), (0, 1), (0, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (0, 1), (1, 1)],
            &[(0, 1), (1, 3), (0, 1), (2, 3)],
        ],
        "quartic with common index divisor 3",
    ))
}

/// Chart `Z[t] -> Z[t][a]/(a^2 - t)` of the squaring map on the projective line.
pub fn squaring_chart() -> StructureAlgebra {
    let zx = BaseRing::PolyOverZ;
    let f = vec![zx.neg(&zx.parameter()), zx.zero(), zx.one()];
    StructureAlgebra::power_basis(zx, &f, "squaring map chart").unwrap()
}

/// Chart `Z[t] -> Z[t][z]/(z^3 - (t^3 + 1))` of the projection of the Fermat
/// cubic to the projective line, basis `{1, z, z^2}`.
pub fn fermat_chart() -> StructureAlgebra {
    let zx = BaseRing::PolyOverZ;
    let t3 = zx.pow(&zx.parameter(), 3);
    let c0 = zx.neg(&zx.add(&t3, &zx.one()));
    let f = vec![c0, zx.zero(), zx.zero(), zx.one()];
    StructureAlgebra::power_basis(zx, &f, "fermat cubic chart").unwrap()
}

/// Every integer algebra in the catalog.
pub fn integer_algebras() -> Vec<StructureAlgebra> {
    vec![
        dedekind(),
        biquadratic(),
        pure_cubic_175(),
        gaussian(),
        golden(),
        sqrt2(),
        cubic_conductor_5(),
        quartic_cid3(),
        StructureAlgebra::split(BaseRing::Z, 1).unwrap().with_label("Z"),
        StructureAlgebra::split(BaseRing::Z, 2).unwrap(),
        StructureAlgebra::split(BaseRing::Z, 3).unwrap(),
    ]
}
