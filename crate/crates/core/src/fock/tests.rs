use std::sync::Arc;

use super::*;
use crate::linalg::{c, inner, operator_norm, CMatrix, CVector};
use crate::sampling::{random_vector, rng};

fn e(n: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[k] = c(1.0, 0.0);
    v
}

fn compressed_norm(x: &FockOperator, indices: &[usize]) -> f64 {
    operator_norm(&x.compress(indices))
}

#[test]
fn annihilators_kill_the_vacuum() {
    let mut r = rng(1);
    for fock in [FockSpace::fermions(4).unwrap(), FockSpace::bosons(3, 2).unwrap()] {
        let f = random_vector(fock.modes(), &mut r);
        let pair = field_op(&fock, &f).unwrap();
        let out = pair.annihilator.apply(&FockVector::vacuum(fock.clone())).unwrap();
        assert_eq!(out.norm(), 0.0);
    }
}

#[test]
fn car_for_random_smearings() {
    let mut r = rng(2);
    for n in 1..=6 {
        let fock = FockSpace::fermions(n).unwrap();
        let f = random_vector(n, &mut r);
        let g = random_vector(n, &mut r);
        let pf = field_op(&fock, &f).unwrap();
        let pg = field_op(&fock, &g).unwrap();
        let mixed = pf.annihilator.anticommutator(&pg.creator).unwrap();
        assert!(distance_to_scalar(&mixed, inner(&f, &g)) <= 1e-12);
        let same = pf.annihilator.anticommutator(&pg.annihilator).unwrap();
        assert!(same.operator_norm() <= 1e-12);
    }
}

#[test]
fn pauli_exclusion_is_exact() {
    let mut r = rng(3);
    let fock = FockSpace::fermions(4).unwrap();
    let f = random_vector(4, &mut r);
    let cr = field_op(&fock, &f).unwrap().creator;
    let square = cr.mul(&cr).unwrap().to_dense();
    // individual products cancel pairwise, up to round-off in the amplitudes
    assert!(square.iter().all(|z| z.norm() <= 1e-15));
    let single = mode_op(&fock, 2).unwrap().creator;
    assert_eq!(single.mul(&single).unwrap().to_dense(), CMatrix::zeros(16, 16));
}

#[test]
fn creator_adjoint_is_annihilator_exactly() {
    let mut r = rng(4);
    for fock in [FockSpace::fermions(5).unwrap(), FockSpace::bosons(2, 4).unwrap()] {
        let f = random_vector(fock.modes(), &mut r);
        let pair = field_op(&fock, &f).unwrap();
        assert!(pair.creator.adjoint().exactly_equals(&pair.annihilator));
    }
}

#[test]
fn fields_shift_particle_number_by_one() {
    let mut r = rng(5);
    for fock in [FockSpace::fermions(4).unwrap(), FockSpace::bosons(2, 3).unwrap()] {
        let f = random_vector(fock.modes(), &mut r);
        let pair = field_op(&fock, &f).unwrap();
        for (row, col) in pair.creator.support() {
            assert_eq!(fock.particle_number(row), fock.particle_number(col) + 1);
        }
        for (row, col) in pair.annihilator.support() {
            assert_eq!(fock.particle_number(row) + 1, fock.particle_number(col));
        }
    }
}

#[test]
fn truncated_ccr_holds_below_the_cap() {
    let mut r = rng(6);
    let fock = FockSpace::bosons(3, 4).unwrap();
    let protected = fock.protected_indices(1);
    for _ in 0..5 {
        let f = random_vector(3, &mut r);
        let g = random_vector(3, &mut r);
        let pf = field_op(&fock, &f).unwrap();
        let pg = field_op(&fock, &g).unwrap();
        let shifted = pf.annihilator.commutator(&pg.creator).unwrap().shift(-inner(&f, &g));
        assert!(compressed_norm(&shifted, &protected) <= 1e-12);
        let same = pf.annihilator.commutator(&pg.annihilator).unwrap();
        assert!(compressed_norm(&same, &protected) <= 1e-12);
    }
}

#[test]
fn wedge_single_particle_inner_product() {
    let mut r = rng(7);
    let fock = FockSpace::fermions(4).unwrap();
    let f = random_vector(4, &mut r);
    let g = random_vector(4, &mut r);
    let wf = wedge_state(&fock, std::slice::from_ref(&f)).unwrap();
    let wg = wedge_state(&fock, std::slice::from_ref(&g)).unwrap();
    assert!((wf.inner(&wg) - inner(&f, &g)).norm() <= 1e-14);
}

#[test]
fn wedge_antisymmetry_and_orthonormal_norm() {
    let mut r = rng(8);
    let fock = FockSpace::fermions(5).unwrap();
    let f1 = random_vector(5, &mut r);
    let f2 = random_vector(5, &mut r);
    let a = wedge_state(&fock, &[f1.clone(), f2.clone()]).unwrap();
    let b = wedge_state(&fock, &[f2, f1]).unwrap();
    assert!((a.coeffs() + b.coeffs()).norm() <= 1e-14);

    let ortho = wedge_state(&fock, &[e(5, 0), e(5, 3), e(5, 1)]).unwrap();
    assert!((ortho.norm() - 1.0).abs() <= 1e-15);
}

#[test]
fn wedge_rejects_cap_overflow() {
    let fock = FockSpace::bosons(2, 2).unwrap();
    let f = e(2, 0);
    assert!(wedge_state(&fock, &[f.clone(), f.clone()]).is_ok());
    assert!(matches!(
        wedge_state(&fock, &[f.clone(), f.clone(), f]),
        Err(crate::Error::CapOverflow { mode: 0, cap: 2 })
    ));
    let fermi = FockSpace::fermions(2).unwrap();
    assert!(wedge_state(&fermi, &[e(2, 0), e(2, 1), e(2, 0)]).is_err());
}

#[test]
fn wedge_matches_oracle_small() {
    let mut r = rng(9);
    for stats in [Statistics::Fermion, Statistics::Boson] {
        let fock = Arc::new(FockSpace::new(4, stats, 4, Budget::default()).unwrap());
        let fs: Vec<CVector> = (0..3).map(|_| random_vector(4, &mut r)).collect();
        let gs: Vec<CVector> = (0..3).map(|_| random_vector(4, &mut r)).collect();
        let lhs = wedge_state(&fock, &fs).unwrap().inner(&wedge_state(&fock, &gs).unwrap());
        let rhs = wedge_inner_oracle(&fs, &gs, stats).unwrap();
        assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
    }
}

#[test]
fn field_op_dimension_mismatch() {
    let fock = FockSpace::fermions(3).unwrap();
    assert!(field_op(&fock, &CVector::zeros(2)).is_err());
    assert!(mode_op(&fock, 3).is_err());
}

#[test]
fn boson_creator_is_truncated_at_cap() {
    let fock = FockSpace::bosons(1, 2).unwrap();
    let cr = mode_op(&fock, 0).unwrap().creator.to_dense();
    assert_eq!(cr[(1, 0)], c(1.0, 0.0));
    assert!((cr[(2, 1)] - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
    assert_eq!(cr.column(2).norm(), 0.0);
}
