#![allow(dead_code)]

use monogen_core::{BaseRing, Scalar, StructureAlgebra};
use proptest::prelude::*;

pub const MAX_RANK: usize = 4;

pub fn z(v: i64) -> Scalar {
    BaseRing::Z.from_int(v)
}

pub fn zvec(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| z(x)).collect()
}

/// Recipe for a random valid integer algebra: a product of monogenic
/// algebras `Z[x]/(f)` (monic `f` with small coefficients) followed by a
/// unimodular change of basis built from elementary row operations.
#[derive(Debug, Clone)]
pub struct Recipe {
    pub factors: Vec<Vec<i64>>,
    pub ops: Vec<(usize, usize, i64)>,
}

impl Recipe {
    pub fn build(&self) -> StructureAlgebra {
        let mut alg: Option<StructureAlgebra> = None;
        let mut rank = 0;
        for low in &self.factors {
            if rank + low.len() > MAX_RANK {
                break;
            }
            rank += low.len();
            let mut f: Vec<Scalar> = low.iter().map(|&c| z(c)).collect();
            f.push(z(1));
            let part = StructureAlgebra::power_basis(BaseRing::Z, &f, "part").unwrap();
            alg = Some(match alg {
                None => part,
                Some(a) => a.product(&part).unwrap(),
            });
        }
        let alg = alg.expect("first factor always fits");
        let n = alg.rank();
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for &(i, j, k) in &self.ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            for c in 0..n {
                u[i][c] += k * u[j][c];
            }
        }
        let u: Vec<Vec<Scalar>> = u.iter().map(|r| zvec(r)).collect();
        alg.change_basis(&u).unwrap().with_label("random")
    }
}

pub fn recipe() -> impl Strategy<Value = Recipe> {
    let factor = (1usize..=MAX_RANK).prop_flat_map(|d| prop::collection::vec(-3i64..=3, d));
    (
        prop::collection::vec(factor, 1..=3),
        prop::collection::vec((0usize..MAX_RANK, 0usize..MAX_RANK, -2i64..=2), 0..4),
    )
        .prop_map(|(factors, ops)| Recipe { factors, ops })
}

pub fn algebra() -> impl Strategy<Value = StructureAlgebra> {
    recipe().prop_map(|r| r.build())
}
