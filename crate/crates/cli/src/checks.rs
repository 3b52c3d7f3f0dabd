//! The named invariant checks run by `verify`.

use std::sync::Arc;

use fockforge::fock::{field_op, wedge_inner_oracle, wedge_state, Budget, FockOperator, FockSpace, FockVector, Statistics};
use fockforge::linalg::{c, commutator, eigvalsh, expi_hermitian, inner, operator_norm, CMatrix};
use fockforge::oneparticle::{
    bogoliubov_transform, build_dirac_1d, build_klein_gordon_1d, kg_grading, spectral_split, OperatorMatrix,
    DEFAULT_ZERO_TOL,
};
use fockforge::physics::dirac_dispersion_deviation;
use fockforge::sampling::{random_hermitian, random_projection, random_unitary, random_vector, stream_rng, SuiteRng};
use fockforge::secondquant::{
    big_q_of, commutator_anomaly_check, cocycle_check, kg_rep_zero, normal_ordered_q, projective_phase, q_of,
    schwinger_term, QuasiFreeRep,
};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::{ModelName, RunConfig};
use crate::error::CliError;
use crate::record::ResultRecord;

/// Largest Fock dimension a check is allowed to densify.
pub const DENSE_LIMIT: usize = 4096;

/// Largest lattice for `dirac_ground`, whose Fock space has `4^sites` states.
pub const MAX_GROUND_SITES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Car,
    Ccr,
    Wedge,
    Qq,
    Group,
    Exp,
    Anomaly,
    Cocycle,
    Phase,
    JAdjoint,
    Bogoliubov,
    DiracGround,
    Dispersion,
}

/// Tolerance keys that are not check names.
const EXTRA_TOLERANCES: [&str; 2] = ["free_energy", "symmetry"];

impl Check {
    pub const ALL: [Check; 13] = [
        Check::Car,
        Check::Ccr,
        Check::Wedge,
        Check::Qq,
        Check::Group,
        Check::Exp,
        Check::Anomaly,
        Check::Cocycle,
        Check::Phase,
        Check::JAdjoint,
        Check::Bogoliubov,
        Check::DiracGround,
        Check::Dispersion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Car => "car",
            Check::Ccr => "ccr",
            Check::Wedge => "wedge",
            Check::Qq => "qq",
            Check::Group => "group",
            Check::Exp => "exp",
            Check::Anomaly => "anomaly",
            Check::Cocycle => "cocycle",
            Check::Phase => "phase",
            Check::JAdjoint => "j_adjoint",
            Check::Bogoliubov => "bogoliubov",
            Check::DiracGround => "dirac_ground",
            Check::Dispersion => "dispersion",
        }
    }

    pub fn is_known_tolerance(name: &str) -> bool {
        Check::ALL.iter().any(|c| c.name() == name) || EXTRA_TOLERANCES.contains(&name)
    }

    fn default_tolerance(self) -> f64 {
        match self {
            Check::Car | Check::Ccr => 1e-12,
            Check::Exp => 1e-9,
            Check::Phase => 1e-8,
            _ => 1e-10,
        }
    }

    /// Each check draws from its own counter stream of the run seed.
    fn stream(self) -> u64 {
        Check::ALL.iter().position(|&c| c == self).expect("listed") as u64
    }

    pub fn validate(self, cfg: &RunConfig) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(format!("check {}: {msg}", self.name())));
        let boson_dim = (cfg.boson_cap as usize + 1).checked_pow(cfg.modes as u32);
        let config_dim = match cfg.statistics() {
            Statistics::Fermion => Some(1usize << cfg.modes),
            Statistics::Boson => boson_dim,
        };
        let too_big = |d: Option<usize>| d.is_none_or(|d| d > DENSE_LIMIT);
        match self {
            Check::Ccr if too_big(boson_dim) => bad(format!("(boson_cap+1)^modes exceeds {DENSE_LIMIT}")),
            Check::Wedge | Check::Qq | Check::Group | Check::Exp if too_big(config_dim) => {
                bad(format!("Fock dimension exceeds {DENSE_LIMIT}"))
            }
            Check::JAdjoint if cfg.modes < 2 => bad("needs modes >= 2".into()),
            Check::JAdjoint if too_big((cfg.boson_cap as usize + 1).checked_pow((cfg.modes / 2 * 2) as u32)) => {
                bad(format!("(boson_cap+1)^modes exceeds {DENSE_LIMIT}"))
            }
            Check::Bogoliubov => match &cfg.model {
                Some(m) if m.model == ModelName::KleinGordon1d => Ok(()),
                _ => bad("needs model kleingordon1d".into()),
            },
            Check::DiracGround => match &cfg.model {
                Some(m) if m.model == ModelName::Dirac1d && m.sites <= MAX_GROUND_SITES => Ok(()),
                Some(m) if m.model == ModelName::Dirac1d => bad(format!("needs sites <= {MAX_GROUND_SITES}")),
                _ => bad("needs model dirac1d".into()),
            },
            Check::Dispersion => match &cfg.model {
                Some(m) if m.model == ModelName::Dirac1d => {
                    let l = m.lattice();
                    if l.phi.iter().chain(&l.vec_a).any(|&x| x != 0.0) {
                        bad("needs phi = vecA = 0".into())
                    } else {
                        Ok(())
                    }
                }
                _ => bad("needs model dirac1d".into()),
            },
            _ => Ok(()),
        }
    }

    pub fn run(self, cfg: &RunConfig, digest: &str, budget: Budget) -> Result<ResultRecord, CliError> {
        let mut rng = stream_rng(cfg.seed, self.stream());
        let tol = cfg.tolerance(self.name(), self.default_tolerance());
        let record = ResultRecord::new(self.name(), digest);
        let n = cfg.modes;
        let record = match self {
            Check::Car => {
                let fock = Arc::new(FockSpace::new(n, Statistics::Fermion, 1, budget)?);
                let worst = canonical_relations(&fock, cfg.cases, &mut rng, &(0..fock.dim()).collect::<Vec<_>>())?;
                record.measure("relations", worst).gate(tol, &["relations"])
            }
            Check::Ccr => {
                let fock = Arc::new(FockSpace::new(n, Statistics::Boson, cfg.boson_cap, budget)?);
                let protected = fock.protected_indices(1);
                let worst = canonical_relations(&fock, cfg.cases, &mut rng, &protected)?;
                record.measure("relations", worst).gate(tol, &["relations"])
            }
            Check::Wedge => {
                let stats = cfg.statistics();
                let fock = Arc::new(FockSpace::new(n, stats, cfg.boson_cap, budget)?);
                let max_n = n.min(4).min(match stats {
                    Statistics::Fermion => n,
                    Statistics::Boson => cfg.boson_cap as usize,
                });
                let mut worst: f64 = 0.0;
                for _ in 0..cfg.cases {
                    let k = rng.random_range(0..=max_n);
                    let fs: Vec<_> = (0..k).map(|_| random_vector(n, &mut rng)).collect();
                    let gs: Vec<_> = (0..k).map(|_| random_vector(n, &mut rng)).collect();
                    let built = wedge_state(&fock, &fs)?.inner(&wedge_state(&fock, &gs)?);
                    let oracle = wedge_inner_oracle(&fs, &gs, stats)?;
                    worst = worst.max((built - oracle).norm());
                }
                record.measure("inner_product", worst).gate(tol, &["inner_product"])
            }
            Check::Qq | Check::Group | Check::Exp => {
                let fock = Arc::new(FockSpace::new(n, cfg.statistics(), cfg.boson_cap, budget)?);
                // below the cap the lifts are exact
                let exact: Vec<usize> = (0..fock.dim())
                    .filter(|&s| fock.is_fermionic() || fock.particle_number(s) <= fock.cap())
                    .collect();
                let worst = functoriality(self, &fock, cfg.cases, &mut rng, &exact)?;
                record.measure("residual", worst).gate(tol, &["residual"])
            }
            Check::Anomaly => {
                let fock = Arc::new(FockSpace::new(n, Statistics::Fermion, 1, budget)?);
                let (mut worst, mut real_part): (f64, f64) = (0.0, 0.0);
                for _ in 0..cfg.cases {
                    let rank = rng.random_range(0..=n);
                    let pm = op(random_projection(n, rank, &mut rng))?;
                    let rep = QuasiFreeRep::new(fock.clone(), pm.clone())?;
                    let a = op(random_hermitian(n, &mut rng))?;
                    let b = op(random_hermitian(n, &mut rng))?;
                    worst = worst.max(commutator_anomaly_check(&a, &b, &rep)?);
                    real_part = real_part.max(schwinger_term(&a, &b, &pm)?.value.re.abs());
                }
                record
                    .measure("anomaly", worst)
                    .measure("schwinger_real_part", real_part)
                    .gate(tol, &["anomaly", "schwinger_real_part"])
            }
            Check::Cocycle => {
                let mut worst: f64 = 0.0;
                for _ in 0..cfg.cases {
                    let rank = rng.random_range(0..=n);
                    let pm = op(random_projection(n, rank, &mut rng))?;
                    let a = op(random_hermitian(n, &mut rng))?;
                    let b = op(random_hermitian(n, &mut rng))?;
                    let cc = op(random_hermitian(n, &mut rng))?;
                    worst = worst.max(cocycle_check(&a, &b, &cc, &pm)?);
                }
                record.measure("cocycle", worst).gate(tol, &["cocycle"])
            }
            Check::Phase => {
                let fock = Arc::new(FockSpace::new(n, Statistics::Fermion, 1, budget)?);
                let (mut proportional, mut modulus, mut trivial): (f64, f64, f64) = (0.0, 0.0, 0.0);
                for _ in 0..cfg.cases {
                    let rank = rng.random_range(0..=n);
                    let rep = QuasiFreeRep::new(fock.clone(), op(random_projection(n, rank, &mut rng))?)?;
                    let a = op(random_hermitian(n, &mut rng) * c(0.3, 0.0))?;
                    let b = op(random_hermitian(n, &mut rng) * c(0.3, 0.0))?;
                    let phase = projective_phase(&a, &b, &rep)?;
                    proportional = proportional.max(phase.proportionality_residual);
                    modulus = modulus.max((phase.chi.norm() - 1.0).abs());
                    let plain = projective_phase(&a, &b, &QuasiFreeRep::defining(fock.clone())?)?;
                    trivial = trivial.max((plain.chi - c(1.0, 0.0)).norm());
                }
                record
                    .measure("proportionality", proportional)
                    .measure("chi_modulus", modulus)
                    .measure("chi_without_sea", trivial)
                    .gate(tol, &["proportionality", "chi_modulus", "chi_without_sea"])
            }
            Check::JAdjoint => {
                let half = n / 2;
                let fock = Arc::new(FockSpace::new(2 * half, Statistics::Boson, cfg.boson_cap, budget)?);
                let j = op(kg_grading(half))?;
                let rep0 = kg_rep_zero(&j, &fock)?;
                let mut worst: f64 = 0.0;
                for _ in 0..cfg.cases {
                    let a = op(random_hermitian(2 * half, &mut rng))?;
                    worst = worst.max(rep0.q_adjoint_residual(&a)?);
                }
                record.measure("adjoint", worst).gate(tol, &["adjoint"])
            }
            Check::Bogoliubov => {
                let lattice = cfg.require_model("bogoliubov")?.lattice();
                let kg = build_klein_gordon_1d(&lattice)?;
                let bog = bogoliubov_transform(&kg.b2)?;
                record
                    .measure("diagonalization", bog.diagonalization_residual)
                    .measure("inverse", bog.sigma_residual)
                    .measure("sigma", bog.sigma as f64)
                    .gate(tol, &["diagonalization", "inverse"])
            }
            Check::DiracGround => {
                let lattice = cfg.require_model("dirac_ground")?.lattice();
                let d = build_dirac_1d(&lattice)?;
                let split = spectral_split(&d, DEFAULT_ZERO_TOL)?;
                let fock = Arc::new(FockSpace::new(d.dim(), Statistics::Fermion, 1, budget)?);
                let rep = QuasiFreeRep::dirac_sea(fock.clone(), &split)?;
                let hat = normal_ordered_q(&d, &rep)?;
                let min_eig = eigvalsh(&hat.to_dense())[0];
                let vacuum_image = hat.apply(&FockVector::vacuum(fock.clone()))?.norm();
                let naive_min = eigvalsh(&q_of(&d, &fock)?.to_dense())[0];
                record
                    .measure("ground_energy", min_eig.abs())
                    .measure("vacuum_image", vacuum_image)
                    .measure("unordered_min_eig", naive_min)
                    .gate(tol, &["ground_energy", "vacuum_image"])
            }
            Check::Dispersion => {
                let lattice = cfg.require_model("dispersion")?.lattice();
                let dev = dirac_dispersion_deviation(&lattice)?;
                record.measure("max_deviation", dev).gate(tol, &["max_deviation"])
            }
        };
        Ok(record)
    }
}

fn op(m: CMatrix) -> Result<OperatorMatrix, CliError> {
    Ok(OperatorMatrix::from_matrix(m)?)
}

/// Largest column norm of `x` over the listed basis states.
fn column_residual(x: &FockOperator, columns: &[usize]) -> f64 {
    let dense = x.to_dense();
    columns.iter().map(|&j| dense.column(j).norm()).fold(0.0, f64::max)
}

/// Canonical (anti)commutation relations on the listed basis states.
fn canonical_relations(fock: &Arc<FockSpace>, cases: usize, rng: &mut SuiteRng, columns: &[usize]) -> Result<f64, CliError> {
    let n = fock.modes();
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let f = random_vector(n, rng);
        let g = random_vector(n, rng);
        let pf = field_op(fock, &f)?;
        let pg = field_op(fock, &g)?;
        let bracket = |x: &FockOperator, y: &FockOperator| match fock.statistics() {
            Statistics::Fermion => x.anticommutator(y),
            Statistics::Boson => x.commutator(y),
        };
        let mixed = bracket(&pf.annihilator, &pg.creator)?.shift(-inner(&f, &g));
        let down = bracket(&pf.annihilator, &pg.annihilator)?;
        let up = bracket(&pf.creator, &pg.creator)?;
        for x in [mixed, down, up] {
            worst = worst.max(column_residual(&x, columns));
        }
    }
    Ok(worst)
}

fn functoriality(
    check: Check,
    fock: &Arc<FockSpace>,
    cases: usize,
    rng: &mut SuiteRng,
    columns: &[usize],
) -> Result<f64, CliError> {
    let n = fock.modes();
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let residual = match check {
            Check::Qq => {
                let a = random_hermitian(n, rng);
                let b = random_hermitian(n, rng);
                let qa = q_of(&op(a.clone())?, fock)?;
                let qb = q_of(&op(b.clone())?, fock)?;
                let qab = q_of(&op(commutator(&a, &b))?, fock)?;
                column_residual(&qa.commutator(&qb)?.sub(&qab)?, columns)
            }
            Check::Group => {
                let u = random_unitary(n, rng);
                let v = random_unitary(n, rng);
                let qu = big_q_of(&op(u.clone())?, fock)?;
                let qv = big_q_of(&op(v.clone())?, fock)?;
                let quv = big_q_of(&op(&u * &v)?, fock)?;
                let qu_inv = big_q_of(&op(u.adjoint())?, fock)?;
                let product = column_residual(&qu.mul(&qv)?.sub(&quv)?, columns);
                let inverse = column_residual(&qu.mul(&qu_inv)?.shift(c(-1.0, 0.0)), columns);
                product.max(inverse)
            }
            _ => {
                let a = random_hermitian(n, rng);
                let lhs = big_q_of(&op(expi_hermitian(&a))?, fock)?.to_dense();
                let rhs = expi_hermitian(&q_of(&op(a)?, fock)?.to_dense());
                let diff = lhs - rhs;
                let cols = CMatrix::from_fn(diff.nrows(), columns.len(), |i, k| diff[(i, columns[k])]);
                operator_norm(&cols)
            }
        };
        worst = worst.max(residual);
    }
    Ok(worst)
}
