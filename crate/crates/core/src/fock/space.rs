use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oneparticle::OneParticleSpace;

/// Default cap on stored complex entries (Fock dimension or operator nonzeros).
pub const DEFAULT_BUDGET: usize = 1 << 24;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "FOCKFORGE_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistics {
    Fermion,
    Boson,
}

impl Statistics {
    pub fn name(self) -> &'static str {
        match self {
            Statistics::Fermion => "fermion",
            Statistics::Boson => "boson",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// Reads [`BUDGET_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&b| b > 0)
                .map(Budget)
                .ok_or_else(|| Error::InvalidConfig(format!("{BUDGET_ENV}={raw:?} is not a positive integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn check(self, required: usize) -> Result<()> {
        if required > self.0 {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            });
        }
        Ok(())
    }
}

/// Outcome of moving one particle into or out of a mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Step {
    /// Lands on basis state `index` with the given amplitude (sign included).
    To(usize, f64),
    /// The operator annihilates the state (empty mode, or Pauli blocking).
    Vanishes,
    /// A boson mode is already at the cap.
    Overflow,
}

/// Occupation-number basis over `modes` one-particle modes.
///
/// Basis states are ordered lexicographically in the occupation vector
/// `(n_0, ..., n_{modes-1})`, so index 0 is the vacuum. For fermions mode `j`
/// sits on bit `modes - 1 - j`, and the basis state for an occupied set
/// `j_1 < j_2 < ...` is `psi+_{j_1} psi+_{j_2} ... Omega`. Bosonic basis
/// states are `prod_j (a+_j)^{n_j} / sqrt(n_j!) Omega` with `n_j <= cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockSpace {
    modes: usize,
    statistics: Statistics,
    cap: u32,
    dim: usize,
    budget: Budget,
}

pub fn make_fock(space: &OneParticleSpace, statistics: Statistics, cap: u32, budget: Budget) -> Result<Arc<FockSpace>> {
    FockSpace::new(space.dim(), statistics, cap, budget).map(Arc::new)
}

impl FockSpace {
    /// `cap` is ignored for fermions and must be at least 1 for bosons.
    pub fn new(modes: usize, statistics: Statistics, cap: u32, budget: Budget) -> Result<Self> {
        let cap = match statistics {
            Statistics::Fermion => 1,
            Statistics::Boson if cap == 0 => {
                return Err(Error::InvalidConfig("boson cap must be at least 1".into()));
            }
            Statistics::Boson => cap,
        };
        let dim = (cap as usize + 1)
            .checked_pow(modes as u32)
            .filter(|&d| d <= usize::MAX / 2)
            .ok_or(Error::BudgetExceeded {
                required: usize::MAX,
                budget: budget.0,
            })?;
        budget.check(dim)?;
        Ok(Self {
            modes,
            statistics,
            cap,
            dim,
            budget,
        })
    }

    pub fn fermions(modes: usize) -> Result<Arc<Self>> {
        Self::new(modes, Statistics::Fermion, 1, Budget::default()).map(Arc::new)
    }

    pub fn bosons(modes: usize, cap: u32) -> Result<Arc<Self>> {
        Self::new(modes, Statistics::Boson, cap, Budget::default()).map(Arc::new)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn is_fermionic(&self) -> bool {
        self.statistics == Statistics::Fermion
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    fn radix(&self) -> usize {
        self.cap as usize + 1
    }

    fn stride(&self, mode: usize) -> usize {
        self.radix().pow((self.modes - 1 - mode) as u32)
    }

    pub fn occupation(&self, index: usize, mode: usize) -> u32 {
        ((index / self.stride(mode)) % self.radix()) as u32
    }

    pub fn occupations(&self, index: usize) -> Vec<u32> {
        (0..self.modes).map(|j| self.occupation(index, j)).collect()
    }

    pub fn index_of(&self, occupations: &[u32]) -> Result<usize> {
        if occupations.len() != self.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                found: occupations.len(),
            });
        }
        let mut index = 0;
        for (mode, &n) in occupations.iter().enumerate() {
            if n > self.cap {
                return Err(Error::CapOverflow { mode, cap: self.cap });
            }
            index = index * self.radix() + n as usize;
        }
        Ok(index)
    }

    pub fn particle_number(&self, index: usize) -> u32 {
        match self.statistics {
            Statistics::Fermion => index.count_ones(),
            Statistics::Boson => (0..self.modes).map(|j| self.occupation(index, j)).sum(),
        }
    }

    /// Basis indices of the `n`-particle sector, ascending.
    pub fn sector(&self, n: u32) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.particle_number(i) == n).collect()
    }

    pub fn max_particles(&self) -> u32 {
        self.cap * self.modes as u32
    }

    /// True when every mode has at least `margin` free slots below the cap.
    /// Always true for fermions, where there is no truncation.
    pub fn is_protected(&self, index: usize, margin: u32) -> bool {
        match self.statistics {
            Statistics::Fermion => true,
            Statistics::Boson => {
                let top = self.cap.saturating_sub(margin);
                margin <= self.cap && (0..self.modes).all(|j| self.occupation(index, j) <= top)
            }
        }
    }

    /// Basis indices on which operators of degree `margin` act without
    /// touching the cap.
    pub fn protected_indices(&self, margin: u32) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.is_protected(i, margin)).collect()
    }

    pub(crate) fn raise(&self, index: usize, mode: usize) -> Step {
        match self.statistics {
            Statistics::Fermion => {
                let bit = 1usize << (self.modes - 1 - mode);
                if index & bit != 0 {
                    Step::Vanishes
                } else {
                    Step::To(index | bit, self.string_sign(index, mode))
                }
            }
            Statistics::Boson => {
                let n = self.occupation(index, mode);
                if n == self.cap {
                    Step::Overflow
                } else {
                    Step::To(index + self.stride(mode), ((n + 1) as f64).sqrt())
                }
            }
        }
    }

    pub(crate) fn lower(&self, index: usize, mode: usize) -> Step {
        match self.statistics {
            Statistics::Fermion => {
                let bit = 1usize << (self.modes - 1 - mode);
                if index & bit == 0 {
                    Step::Vanishes
                } else {
                    Step::To(index & !bit, self.string_sign(index, mode))
                }
            }
            Statistics::Boson => {
                let n = self.occupation(index, mode);
                if n == 0 {
                    Step::Vanishes
                } else {
                    Step::To(index - self.stride(mode), (n as f64).sqrt())
                }
            }
        }
    }

    /// Jordan–Wigner string: parity of the occupied modes preceding `mode`.
    fn string_sign(&self, index: usize, mode: usize) -> f64 {
        let before = index >> (self.modes - mode);
        if before.count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}
