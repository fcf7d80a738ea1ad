//! Local Markovian noise on each qubit of the ring.
//!
//! A single-qubit channel is a Kraus set `{E_α}`; three independent copies act
//! on the ring as `ρ ↦ Σ (E_α⊗E_β⊗E_τ) ρ (E_α⊗E_β⊗E_τ)†`. The strength `γ`
//! relates to time through `γ = 1 − e^{−χt}`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::correlations::{concurrence_xstate, discord_xstate};
use crate::error::{Error, Result};
use crate::model::{reduced_pair_state, thermal_state, ModelParams, XState};
use crate::numerics::{binary_entropy, kron_all, partial_trace, pauli_x, pauli_y, pauli_z, ComplexMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    Dephasing,
    Depolarizing,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::Depolarizing => "depolarizing",
        }
    }

    pub fn build(self, gamma: f64) -> Result<KrausChannel> {
        match self {
            ChannelKind::Dephasing => dephasing(gamma),
            ChannelKind::Depolarizing => depolarizing(gamma),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dephasing" => Ok(ChannelKind::Dephasing),
            "depolarizing" => Ok(ChannelKind::Depolarizing),
            other => Err(Error::InvalidArgument(format!("unknown channel '{other}'"))),
        }
    }
}

/// Single-qubit channel in Kraus form.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    pub kind: ChannelKind,
    pub gamma: f64,
    pub operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// `Σ_α E_α† E_α`, the identity for a trace-preserving channel.
    pub fn completeness(&self) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(2), |acc, e| &acc + &(&e.dagger() * e))
    }

    /// Applies the channel to a single-qubit operator.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(rho.dim()), |acc, e| &acc + &(&(e * rho) * &e.dagger()))
    }
}

/// Decay rate and elapsed time, mapped to a channel strength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayClock {
    pub chi: f64,
    pub t: f64,
}

impl DecayClock {
    pub fn new(chi: f64, t: f64) -> Result<Self> {
        if !(chi > 0.0 && chi.is_finite()) {
            return Err(Error::InvalidArgument(format!("decay rate must be positive, got {chi}")));
        }
        if t.is_nan() || t < 0.0 {
            return Err(Error::InvalidArgument(format!("time must be nonnegative, got {t}")));
        }
        Ok(Self { chi, t })
    }

    /// `γ = 1 − e^{−χt}`.
    pub fn gamma(&self) -> f64 {
        -(-self.chi * self.t).exp_m1()
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange(gamma))
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Phase damping: `E₀ = diag(1, √(1−γ))`, `E₁ = diag(0, √γ)`.
pub fn dephasing(gamma: f64) -> Result<KrausChannel> {
    check_gamma(gamma)?;
    let zero = real(0.0);
    Ok(KrausChannel {
        kind: ChannelKind::Dephasing,
        gamma,
        operators: vec![
            ComplexMatrix::from_rows([[real(1.0), zero], [zero, real((1.0 - gamma).sqrt())]]),
            ComplexMatrix::from_rows([[zero, zero], [zero, real(gamma.sqrt())]]),
        ],
    })
}

/// Depolarizing: `√(1−3γ/4)·I` and `√(γ/4)·σ^{x,y,z}`.
pub fn depolarizing(gamma: f64) -> Result<KrausChannel> {
    check_gamma(gamma)?;
    let pauli_weight = (gamma / 4.0).sqrt();
    Ok(KrausChannel {
        kind: ChannelKind::Depolarizing,
        gamma,
        operators: vec![
            ComplexMatrix::identity(2).scale_real((1.0 - 0.75 * gamma).sqrt()),
            pauli_x().scale_real(pauli_weight),
            pauli_y().scale_real(pauli_weight),
            pauli_z().scale_real(pauli_weight),
        ],
    })
}

/// The same channel acting independently on each of the three qubits.
pub fn apply_independent(channel: &KrausChannel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 8 {
        return Err(Error::Dimension(format!(
            "expected a three-qubit (8x8) state, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    rho.validate_density()?;
    let ops = &channel.operators;
    let mut out = ComplexMatrix::zeros(8);
    for a in ops {
        for b in ops {
            for c in ops {
                let e = kron_all(&[a, b, c]);
                if e.max_abs() == 0.0 {
                    continue;
                }
                out = &out + &(&(&e * rho) * &e.dagger());
            }
        }
    }
    Ok(out)
}

/// Numerically evolved pair state: thermal state, local channel on all three
/// sites, trace out site 3. The result must keep the restricted X shape.
pub fn evolved_pair_state(p: &ModelParams, channel: &KrausChannel) -> Result<XState> {
    let evolved = apply_independent(channel, &thermal_state(p)?)?;
    XState::from_matrix(&partial_trace(&evolved, (1, 2))?)
}

/// Closed-form pair state under local dephasing: the coherence shrinks to
/// `(1−γ)y` while the populations stay put.
pub fn dephased_pair_state(p: &ModelParams, gamma: f64) -> Result<XState> {
    check_gamma(gamma)?;
    Ok(reduced_pair_state(p)?.with_scaled_coherence(1.0 - gamma))
}

fn zero_field_state(p: &ModelParams, gamma: f64) -> Result<XState> {
    check_gamma(gamma)?;
    if p.field != 0.0 {
        return Err(Error::NonzeroField(p.field));
    }
    reduced_pair_state(p)
}

/// Pair discord under dephasing at `B = 0`, written out for `u₀ = v₀`.
///
/// With `3Z′₀ = norm/2` the populations give a unit marginal entropy and the
/// conditional term reduces to `h(θ)` with
/// `θ = max{|u₀−w₀|, (1−γ)|y₀|} / 3Z′₀`.
pub fn dephased_discord(p: &ModelParams, gamma: f64) -> Result<f64> {
    let x = zero_field_state(p, gamma)?;
    let six_z = x.norm;
    let three_z = 0.5 * six_z;
    let xlog = |num: f64| {
        let r = num / six_z;
        if r > 0.0 {
            r * r.log2()
        } else {
            0.0
        }
    };
    let coherence = (1.0 - gamma) * x.y.norm();
    let theta = ((x.u - x.w).abs() / three_z).max(coherence / three_z);

    let marginal = -((x.u + x.w) / three_z) * ((x.u + x.w) / six_z).log2();
    let populations = 2.0 * xlog(x.u);
    let inner: f64 = [1.0, -1.0]
        .iter()
        .map(|&l| xlog(x.w + l * coherence))
        .sum();
    let q = marginal + populations + inner + binary_entropy(theta);
    if !q.is_finite() {
        return Err(Error::Numerical(format!("dephased discord evaluated to {q}")));
    }
    Ok(q)
}

/// Pair concurrence under dephasing at `B = 0`:
/// `max{0, (1−γ)|y₀| − √(u₀v₀)} / 3Z′₀`.
pub fn dephased_concurrence(p: &ModelParams, gamma: f64) -> Result<f64> {
    let x = zero_field_state(p, gamma)?;
    let c = ((1.0 - gamma) * x.y.norm() - (x.u * x.v).sqrt()).max(0.0) / (0.5 * x.norm);
    Ok(c.clamp(0.0, 1.0))
}

/// Dephasing strength at which the pair concurrence first vanishes,
/// `γ* = 1 − √(u₀v₀)/|y₀|`; `None` if the static state is already unentangled.
pub fn sudden_death_gamma(p: &ModelParams) -> Result<Option<f64>> {
    let x = reduced_pair_state(p)?;
    let m = x.y.norm();
    let floor = (x.u * x.v).sqrt();
    if m <= floor {
        Ok(None)
    } else {
        Ok(Some(1.0 - floor / m))
    }
}

/// Discord and concurrence of the pair after local depolarizing noise,
/// computed fully numerically.
pub fn depolarized_pair_discord(p: &ModelParams, gamma: f64) -> Result<(f64, f64)> {
    let x = evolved_pair_state(p, &depolarizing(gamma)?)?;
    Ok((discord_xstate(&x)?.discord, concurrence_xstate(&x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{concurrence, thermal_discord};
    use crate::numerics::ONE;

    fn plus_state() -> ComplexMatrix {
        ComplexMatrix::from_rows([[real(0.5), real(0.5)], [real(0.5), real(0.5)]])
    }

    #[test]
    fn completeness_both_channels() {
        for k in 0..=100 {
            let g = k as f64 / 100.0;
            for ch in [dephasing(g).unwrap(), depolarizing(g).unwrap()] {
                assert!(ch.completeness().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
            }
        }
    }

    #[test]
    fn zero_gamma_is_identity() {
        let rho = ComplexMatrix::from_rows([[real(0.7), Complex64::new(0.1, 0.2)], [Complex64::new(0.1, -0.2), real(0.3)]]);
        for ch in [dephasing(0.0).unwrap(), depolarizing(0.0).unwrap()] {
            assert!(ch.apply(&rho).max_abs_diff(&rho) < 1e-12);
        }
    }

    #[test]
    fn dephasing_examples() {
        let full = dephasing(1.0).unwrap().apply(&plus_state());
        assert!(full.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
        let half = dephasing(0.5).unwrap().apply(&plus_state());
        assert!((half[(0, 1)].re - 0.5 * 0.5f64.sqrt()).abs() < 1e-15);
        assert!((half[(0, 0)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn depolarizing_examples() {
        let up = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let full = depolarizing(1.0).unwrap().apply(&up);
        assert!(full.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
        let partial = depolarizing(0.4).unwrap().apply(&up);
        assert!(partial.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.8, 0.2])) < 1e-15);
    }

    #[test]
    fn gamma_range_is_checked() {
        assert!(matches!(dephasing(-0.1), Err(Error::GammaOutOfRange(_))));
        assert!(matches!(depolarizing(1.5), Err(Error::GammaOutOfRange(_))));
        assert!(dephasing(f64::NAN).is_err());
    }

    #[test]
    fn decay_clock() {
        assert_eq!(DecayClock::new(2.0, 0.0).unwrap().gamma(), 0.0);
        let g = DecayClock::new(0.5, 3.0).unwrap().gamma();
        assert!((g - (1.0 - (-1.5f64).exp())).abs() < 1e-15);
        assert!(DecayClock::new(0.0, 1.0).is_err());
        assert!(DecayClock::new(1.0, -1.0).is_err());
    }

    #[test]
    fn independent_channel_limits() {
        let p = ModelParams::new(1.0, 0.5, 1.0, 0.2, 0.5);
        let rho = thermal_state(&p).unwrap();
        let same = apply_independent(&dephasing(0.0).unwrap(), &rho).unwrap();
        assert!(same.max_abs_diff(&rho) < 1e-15);
        let mixed = apply_independent(&depolarizing(1.0).unwrap(), &rho).unwrap();
        assert!(mixed.max_abs_diff(&ComplexMatrix::identity(8).scale_real(0.125)) < 1e-12);
    }

    #[test]
    fn apply_independent_rejects_invalid_state() {
        let ch = dephasing(0.3).unwrap();
        assert!(apply_independent(&ch, &ComplexMatrix::identity(8)).is_err());
        assert!(apply_independent(&ch, &ComplexMatrix::identity(4).scale_real(0.25)).is_err());
    }

    #[test]
    fn dephased_state_matches_numerics() {
        let p = ModelParams::new(1.0, 0.5, 1.0, 0.0, 0.5);
        for g in [0.0, 0.3, 0.5, 1.0] {
            let closed = dephased_pair_state(&p, g).unwrap().to_matrix();
            let numeric = evolved_pair_state(&p, &dephasing(g).unwrap()).unwrap().to_matrix();
            assert!(closed.max_abs_diff(&numeric) < 1e-10);
        }
        let half = dephased_pair_state(&p, 0.5).unwrap();
        let none = dephased_pair_state(&p, 0.0).unwrap();
        assert!((half.y - none.y * 0.5).norm() == 0.0);
    }

    #[test]
    fn dephased_discord_limits() {
        let p = ModelParams::new(-1.0, 1.0, 3.0, 0.0, 0.5);
        assert!(dephased_discord(&p, 1.0).unwrap().abs() < 1e-12);
        assert!((dephased_discord(&p, 0.0).unwrap() - thermal_discord(&p).unwrap()).abs() < 1e-10);
        let x = dephased_pair_state(&p, 1.0).unwrap();
        assert!(discord_xstate(&x).unwrap().discord.abs() < 1e-12);
    }

    #[test]
    fn dephased_closed_forms_require_zero_field() {
        let p = ModelParams::new(1.0, 1.0, 1.0, 0.1, 0.5);
        assert!(matches!(dephased_discord(&p, 0.2), Err(Error::NonzeroField(_))));
        assert!(matches!(dephased_concurrence(&p, 0.2), Err(Error::NonzeroField(_))));
    }

    #[test]
    fn dephased_concurrence_matches_wootters() {
        let p = ModelParams::new(1.0, 0.5, 1.0, 0.0, 0.5);
        for g in [0.0, 0.1, 0.4] {
            let x = dephased_pair_state(&p, g).unwrap();
            let c = dephased_concurrence(&p, g).unwrap();
            assert!((c - concurrence(&x.to_matrix()).unwrap()).abs() < 1e-10);
        }
        let static_c = concurrence_xstate(&reduced_pair_state(&p).unwrap()).unwrap();
        assert!((dephased_concurrence(&p, 0.0).unwrap() - static_c).abs() < 1e-15);
    }

    #[test]
    fn concurrence_dies_at_threshold() {
        let p = ModelParams::new(1.0, 0.5, 1.0, 0.0, 0.5);
        let g_star = sudden_death_gamma(&p).unwrap().expect("entangled at gamma = 0");
        assert!(g_star > 0.0 && g_star < 1.0);
        assert_eq!(dephased_concurrence(&p, (g_star + 1e-9).min(1.0)).unwrap(), 0.0);
        assert!(dephased_concurrence(&p, g_star - 1e-3).unwrap() > 0.0);
        assert!(dephased_discord(&p, g_star + 1e-3).unwrap() > 0.0);
    }

    #[test]
    fn discord_survives_until_full_dephasing() {
        for j in [-1.0, 1.0] {
            let p = ModelParams::new(j, 0.5, 1.0, 0.0, 0.5);
            for k in 0..1000 {
                let g = k as f64 * 1e-3;
                assert!(dephased_discord(&p, g).unwrap() > 0.0, "J={j} gamma={g}");
            }
            // the surviving discord is quadratic in the remaining coherence
            let (q1, q2) = (dephased_discord(&p, 0.99).unwrap(), dephased_discord(&p, 0.999).unwrap());
            assert!((q1 / q2 - 100.0).abs() < 0.1, "{q1} {q2}");
        }
    }

    #[test]
    fn depolarized_limits() {
        let p = ModelParams::new(1.0, 1.0, 3.0, 0.0, 0.5);
        let (q1, c1) = depolarized_pair_discord(&p, 1.0).unwrap();
        assert!(q1.abs() < 1e-12 && c1 == 0.0);
        let (q0, c0) = depolarized_pair_discord(&p, 0.0).unwrap();
        let x = reduced_pair_state(&p).unwrap();
        assert!((q0 - thermal_discord(&p).unwrap()).abs() < 1e-10);
        assert!((c0 - concurrence_xstate(&x).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn depolarizing_is_harsher_than_dephasing() {
        let p = ModelParams::new(1.0, 1.0, 3.0, 0.0, 0.5);
        let (depol, _) = depolarized_pair_discord(&p, 0.5).unwrap();
        assert!(depol < dephased_discord(&p, 0.5).unwrap());
    }

    #[test]
    fn kraus_apply_on_pure_state() {
        let mut up = ComplexMatrix::zeros(2);
        up[(0, 0)] = ONE;
        assert_eq!(dephasing(0.7).unwrap().apply(&up), up);
    }
}
