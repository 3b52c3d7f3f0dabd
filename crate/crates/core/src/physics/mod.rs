//! Derived physical quantities: free energies by two independent routes,
//! stability reports, Schatten norms, lattice dispersion and the
//! Hilbert–Schmidt equivalence sweep.

mod diagnostics;
mod sweep;
mod thermo;

pub use diagnostics::{
    continuum_dispersion_deviation, dirac_dispersion_deviation, dirac_momentum_levels, schatten_norm,
    stability_report, stability_report_fock, MomentumLevels, StabilityReport, DENSE_FOCK_LIMIT,
};
pub use sweep::{dirac_sea_projection, equivalence_sweep, Refusal, SweepMember, SweepTable};
pub use thermo::{
    free_energy_formula, free_energy_report, free_energy_trace, FreeEnergyReport, ThermoParams, TraceOptions,
    TraceValue, MAX_TRACE_FERMION_MODES,
};
