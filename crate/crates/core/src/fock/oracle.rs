//! Combinatorial inner product of wedge states, independent of any Fock
//! operator: `delta_{NM} sum_{P in S_N} (+-1)^{|P|} prod_j (f_j, g_{P j})`.

use itertools::Itertools;

use super::Statistics;
use crate::error::{Error, Result};
use crate::linalg::{inner, CVector, C64};

fn parity(perm: &[usize]) -> f64 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn wedge_inner_oracle(fs: &[CVector], gs: &[CVector], statistics: Statistics) -> Result<C64> {
    if let Some(dim) = fs.iter().chain(gs).map(|v| v.len()).next() {
        if let Some(bad) = fs.iter().chain(gs).find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
    }
    if fs.len() != gs.len() {
        return Ok(C64::new(0.0, 0.0));
    }
    let n = fs.len();
    let gram: Vec<Vec<C64>> = fs.iter().map(|f| gs.iter().map(|g| inner(f, g)).collect()).collect();
    let total = (0..n)
        .permutations(n)
        .map(|perm| {
            let sign = match statistics {
                Statistics::Fermion => parity(&perm),
                Statistics::Boson => 1.0,
            };
            let product: C64 = perm.iter().enumerate().map(|(j, &pj)| gram[j][pj]).product();
            product * sign
        })
        .sum();
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn e(n: usize, k: usize) -> CVector {
        let mut v = CVector::zeros(n);
        v[k] = c(1.0, 0.0);
        v
    }

    #[test]
    fn particle_number_mismatch_is_zero() {
        let z = wedge_inner_oracle(&[e(3, 0)], &[e(3, 0), e(3, 1)], Statistics::Boson).unwrap();
        assert_eq!(z, c(0.0, 0.0));
    }

    #[test]
    fn pauli_and_permanent() {
        let f = e(2, 0);
        let fermi = wedge_inner_oracle(&[f.clone(), f.clone()], &[e(2, 0), e(2, 1)], Statistics::Fermion).unwrap();
        assert_eq!(fermi, c(0.0, 0.0));
        let bose = wedge_inner_oracle(&[f.clone(), f.clone()], &[f.clone(), f], Statistics::Boson).unwrap();
        assert_eq!(bose, c(2.0, 0.0));
    }

    #[test]
    fn empty_wedge_is_the_vacuum() {
        assert_eq!(wedge_inner_oracle(&[], &[], Statistics::Fermion).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn rejects_mixed_dimensions() {
        assert!(wedge_inner_oracle(&[e(2, 0)], &[e(3, 0)], Statistics::Fermion).is_err());
    }
}
