use super::SparsePoly;
use crate::error::{Error, Result};

/// Largest size handled by cofactor expansion; larger matrices go through
/// fraction-free elimination.
const COFACTOR_MAX: usize = 4;

fn check_square(rows: &[Vec<SparsePoly>]) -> Result<()> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::NonSquare);
    }
    let (base, nvars) = (rows[0][0].base(), rows[0][0].nvars());
    for p in rows.iter().flatten() {
        if p.nvars() != nvars {
            return Err(Error::ArityMismatch { left: nvars, right: p.nvars() });
        }
        if p.base() != base {
            return Err(Error::BaseRingMismatch { left: base.to_string(), right: p.base().to_string() });
        }
    }
    Ok(())
}

/// Exact determinant of a square polynomial matrix.
pub fn determinant(rows: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    check_square(rows)?;
    if rows.len() <= COFACTOR_MAX {
        Ok(cofactor(rows))
    } else {
        bareiss(rows)
    }
}

pub fn determinant_cofactor(rows: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    check_square(rows)?;
    Ok(cofactor(rows))
}

pub fn determinant_bareiss(rows: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    check_square(rows)?;
    bareiss(rows)
}

fn cofactor(rows: &[Vec<SparsePoly>]) -> SparsePoly {
    let cols: Vec<usize> = (0..rows.len()).collect();
    expand(rows, 0, &cols)
}

// Laplace expansion along row `r` using the remaining column set.
fn expand(rows: &[Vec<SparsePoly>], r: usize, cols: &[usize]) -> SparsePoly {
    if cols.len() == 1 {
        return rows[r][cols[0]].clone();
    }
    let proto = &rows[0][0];
    let mut acc = SparsePoly::zero(proto.base(), proto.nvars());
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = entry * &expand(rows, r + 1, &rest);
        acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
    }
    acc
}

fn bareiss(rows: &[Vec<SparsePoly>]) -> Result<SparsePoly> {
    let n = rows.len();
    let mut m: Vec<Vec<SparsePoly>> = rows.to_vec();
    let proto = &rows[0][0];
    let mut prev = SparsePoly::one(proto.base(), proto.nvars());
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // Pivot on the sparsest nonzero entry below.
            let pivot = (k + 1..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| m[i][k].len());
            match pivot {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(SparsePoly::zero(proto.base(), proto.nvars())),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::BaseRing;
    use proptest::prelude::*;

    fn constant_matrix(v: &[Vec<i64>]) -> Vec<Vec<SparsePoly>> {
        v.iter()
            .map(|r| r.iter().map(|&c| SparsePoly::from_int(BaseRing::Z, 2, c)).collect())
            .collect()
    }

    #[test]
    fn identity_is_one() {
        let m = constant_matrix(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(determinant(&m).unwrap(), SparsePoly::one(BaseRing::Z, 2));
    }

    #[test]
    fn upper_triangular_chart() {
        let z = BaseRing::Z;
        let a = SparsePoly::var(z, 2, 0);
        let b = SparsePoly::var(z, 2, 1);
        let m = vec![vec![SparsePoly::one(z, 2), a], vec![SparsePoly::zero(z, 2), b.clone()]];
        assert_eq!(determinant(&m).unwrap(), b);
    }

    #[test]
    fn vandermonde_three() {
        let z = BaseRing::Z;
        let x: Vec<_> = (0..3).map(|i| SparsePoly::var(z, 3, i)).collect();
        let m: Vec<Vec<_>> = (0..3u32).map(|r| x.iter().map(|xi| xi.pow(r)).collect()).collect();
        let expected = (&x[1] - &x[0]) * (&x[2] - &x[0]) * (&x[2] - &x[1]);
        assert_eq!(determinant_cofactor(&m).unwrap(), expected);
        assert_eq!(determinant_bareiss(&m).unwrap(), expected);
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = constant_matrix(&[vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 0]]);
        assert_eq!(determinant_bareiss(&m).unwrap(), determinant_cofactor(&m).unwrap());
        let singular = constant_matrix(&[vec![0, 1], vec![0, 3]]);
        assert!(determinant_bareiss(&singular).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_square() {
        let m = constant_matrix(&[vec![1, 2]]);
        assert_eq!(determinant(&m), Err(Error::NonSquare));
        assert_eq!(determinant(&[]), Err(Error::NonSquare));
    }

    fn arb_entry() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((prop::collection::vec(0u32..2, 2), -3i64..=3), 0..3).prop_map(|terms| {
            let z = BaseRing::Z;
            SparsePoly::from_terms(z, 2, terms.into_iter().map(|(e, c)| (e, z.from_int(c)))).unwrap()
        })
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<SparsePoly>>> {
        (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(arb_entry(), n), n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn bareiss_agrees_with_cofactor(m in arb_matrix()) {
            prop_assert_eq!(determinant_bareiss(&m).unwrap(), determinant_cofactor(&m).unwrap());
        }
    }
}
