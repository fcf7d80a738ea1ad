//! Three-site XXZ ring with a z-axis Dzyaloshinskii–Moriya term.
//!
//! `H = J/2 Σ_n [σˣσˣ + σʸσʸ + Δ σᶻσᶻ + D(σˣ_n σʸ_{n+1} − σʸ_n σˣ_{n+1})] + B Σ_n σᶻ_n`
//! with periodic closure. Basis states are `|q1 q2 q3⟩` with `|0⟩` the
//! `σᶻ = +1` eigenstate and qubit 1 most significant.

mod crossing;
mod spectrum;
mod xstate;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{kron_all, pauli_x, pauli_y, pauli_z, ComplexMatrix};

pub use crossing::{find_crossing, ground_levels, Crossing};
pub use spectrum::{analytic_energies, analytic_spectrum, eigenstates, Spectrum};
pub use xstate::{reduced_pair_state, XState};

/// Absolute energy window that groups levels into one ground manifold.
pub const GROUND_DEGENERACY_TOL: f64 = 1e-9;

/// Physical knobs of the ring; energies in units of `|J|`, `k_B = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub j: f64,
    pub delta: f64,
    pub dm: f64,
    pub field: f64,
    pub temp: f64,
}

impl ModelParams {
    pub fn new(j: f64, delta: f64, dm: f64, field: f64, temp: f64) -> Self {
        Self {
            j,
            delta,
            dm,
            field,
            temp,
        }
    }

    /// Inverse temperature; fails for `T ≤ 0` (or NaN).
    pub fn beta(&self) -> Result<f64> {
        if self.temp > 0.0 {
            Ok(1.0 / self.temp)
        } else {
            Err(Error::NonPositiveTemperature(self.temp))
        }
    }

    pub fn with(self, knob: Knob, value: f64) -> Self {
        let mut p = self;
        match knob {
            Knob::Dm => p.dm = value,
            Knob::Delta => p.delta = value,
            Knob::Field => p.field = value,
        }
        p
    }

    pub fn get(&self, knob: Knob) -> f64 {
        match knob {
            Knob::Dm => self.dm,
            Knob::Delta => self.delta,
            Knob::Field => self.field,
        }
    }
}

/// Hamiltonian parameter that can be scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Knob {
    Dm,
    Delta,
    Field,
}

impl Knob {
    pub fn name(self) -> &'static str {
        match self {
            Knob::Dm => "D",
            Knob::Delta => "Delta",
            Knob::Field => "B",
        }
    }
}

impl fmt::Display for Knob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Knob {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" | "dm" => Ok(Knob::Dm),
            "delta" => Ok(Knob::Delta),
            "b" | "field" => Ok(Knob::Field),
            other => Err(Error::InvalidArgument(format!("unknown knob '{other}'"))),
        }
    }
}

/// Pauli operator `sigma` acting on `site` (0-based) of the three-qubit ring.
fn site_operator(sigma: &ComplexMatrix, site: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let mut factors = [&id, &id, &id];
    factors[site] = sigma;
    kron_all(&factors)
}

/// Dense 8×8 Hamiltonian assembled from Pauli products.
pub fn build_hamiltonian(p: &ModelParams) -> ComplexMatrix {
    let (sx, sy, sz) = (pauli_x(), pauli_y(), pauli_z());
    let x: Vec<_> = (0..3).map(|n| site_operator(&sx, n)).collect();
    let y: Vec<_> = (0..3).map(|n| site_operator(&sy, n)).collect();
    let z: Vec<_> = (0..3).map(|n| site_operator(&sz, n)).collect();

    let mut h = ComplexMatrix::zeros(8);
    for n in 0..3 {
        let m = (n + 1) % 3;
        let bond = &(&(&x[n] * &x[m]) + &(&y[n] * &y[m])) + &(&z[n] * &z[m]).scale_real(p.delta);
        let dm = &(&x[n] * &y[m]) - &(&y[n] * &x[m]);
        let term = &bond + &dm.scale_real(p.dm);
        h = &h + &term.scale_real(p.j / 2.0);
        h = &h + &z[n].scale_real(p.field);
    }
    h
}

/// Equal-weight mixture of the projectors in `levels`.
pub fn level_mixture(levels: &[usize]) -> ComplexMatrix {
    let states = eigenstates();
    let weight = 1.0 / levels.len() as f64;
    levels.iter().fold(ComplexMatrix::zeros(8), |acc, &k| {
        &acc + &ComplexMatrix::outer(&states[k]).scale_real(weight)
    })
}

/// Gibbs state `Σ_i e^{−E_i/T} |φ_i⟩⟨φ_i| / Z` built from the closed-form
/// spectrum. Energies are shifted by their minimum before exponentiation.
pub fn thermal_state(p: &ModelParams) -> Result<ComplexMatrix> {
    let beta = p.beta()?;
    let spectrum = analytic_spectrum(p);
    let e_min = spectrum.energies.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = spectrum
        .energies
        .iter()
        .map(|&e| (-(e - e_min) * beta).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let mut rho = ComplexMatrix::zeros(8);
    for (w, state) in weights.iter().zip(&spectrum.states) {
        rho = &rho + &ComplexMatrix::outer(state).scale_real(w / z);
    }
    Ok(rho)
}

/// Zero-temperature state: uniform mixture over the degenerate ground
/// manifold (levels within `1e-9` of the minimum). `p.temp` is ignored.
pub fn ground_state_mixture(p: &ModelParams) -> ComplexMatrix {
    level_mixture(&ground_levels(p))
}
