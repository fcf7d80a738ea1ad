//! Brute-force classical correlation: optimize the conditional entropy over
//! every projective measurement `Π_± = ½(I ± n·σ)` on one qubit.
//!
//! The search is a fixed `64 × 128` grid over the Bloch sphere followed by a
//! Nelder–Mead polish of the best grid point. It shares nothing with the
//! closed-form X-state expressions and serves as their cross-check.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{check_two_qubit, marginals, DiscordBreakdown};
use crate::error::Result;
use crate::numerics::{entropy_bits, ComplexMatrix};

/// Polar grid points, poles included.
pub const GRID_THETA: usize = 64;
/// Azimuthal grid points over `[0, 2π)`.
pub const GRID_PHI: usize = 128;
const REFINE_ITERATIONS: usize = 500;
const OBJECTIVE_TOL: f64 = 1e-10;
/// Flat directions can leave equal values on a wide simplex, so its size
/// must shrink as well before the polish stops.
const SIMPLEX_TOL: f64 = 1e-7;

/// Which qubit of the pair is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Bloch-sphere direction of a projective measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementAxis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementAxis {
    pub const Z: Self = Self { theta: 0.0, phi: 0.0 };
    pub const X: Self = Self {
        theta: PI / 2.0,
        phi: 0.0,
    };

    /// Canonical axis (θ ∈ [0, π], φ ∈ [0, 2π)) for arbitrary real angles.
    pub fn normalized(theta: f64, phi: f64) -> Self {
        let [x, y, z] = Self { theta, phi }.bloch();
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = if theta.sin().abs() < 1e-15 {
            0.0
        } else {
            y.atan2(x).rem_euclid(2.0 * PI)
        };
        Self { theta, phi }
    }

    pub fn bloch(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// The projectors `(Π₊, Π₋)`; they sum to the identity.
    pub fn projectors(&self) -> (ComplexMatrix, ComplexMatrix) {
        let [x, y, z] = self.bloch();
        let proj = |s: f64| {
            ComplexMatrix::from_rows([
                [Complex64::new(0.5 * (1.0 + s * z), 0.0), Complex64::new(0.5 * s * x, -0.5 * s * y)],
                [Complex64::new(0.5 * s * x, 0.5 * s * y), Complex64::new(0.5 * (1.0 - s * z), 0.0)],
            ])
        };
        (proj(1.0), proj(-1.0))
    }
}

/// Entropy in bits of a 2×2 Hermitian `[[a, b], [b*, d]]` scaled to unit trace.
fn qubit_entropy(a: f64, d: f64, b: Complex64) -> f64 {
    let tr = a + d;
    let radius = ((0.5 * (a - d)).powi(2) + b.norm_sqr()).sqrt();
    let lo = ((0.5 * tr - radius) / tr).max(0.0);
    let hi = ((0.5 * tr + radius) / tr).min(1.0);
    [lo, hi].iter().filter(|&&p| p > 0.0).map(|p| -p * p.log2()).sum()
}

/// `Σ_± p_± S(ρ_A^±)` after measuring qubit B along `axis`. No validation.
pub fn conditional_entropy(rho: &ComplexMatrix, axis: MeasurementAxis) -> f64 {
    let (plus, minus) = axis.projectors();
    [plus, minus]
        .iter()
        .map(|proj| {
            // unnormalized post-measurement state of A: Tr_B[(I ⊗ Π) ρ]
            let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    for k in 0..2 {
                        for l in 0..2 {
                            *entry += proj[(l, k)] * rho[(2 * i + k, 2 * j + l)];
                        }
                    }
                }
            }
            let p = m[0][0].re + m[1][1].re;
            if p <= 1e-15 {
                0.0
            } else {
                p * qubit_entropy(m[0][0].re, m[1][1].re, m[0][1])
            }
        })
        .sum()
}

fn swap_qubits(rho: &ComplexMatrix) -> ComplexMatrix {
    let perm = |k: usize| ((k & 1) << 1) | (k >> 1);
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(perm(i), perm(j))] = rho[(i, j)];
        }
    }
    out
}

/// Deterministic grid scan: smallest objective wins, ties go to the smallest
/// `(θ, φ)` in lexicographic order.
fn grid_minimum(rho: &ComplexMatrix) -> (f64, MeasurementAxis) {
    let rows: Vec<(f64, MeasurementAxis)> = (0..GRID_THETA)
        .into_par_iter()
        .map(|i| {
            let theta = PI * i as f64 / (GRID_THETA - 1) as f64;
            let mut best = (f64::INFINITY, MeasurementAxis::Z);
            for k in 0..GRID_PHI {
                let axis = MeasurementAxis {
                    theta,
                    phi: 2.0 * PI * k as f64 / GRID_PHI as f64,
                };
                let f = conditional_entropy(rho, axis);
                if f < best.0 {
                    best = (f, axis);
                }
            }
            best
        })
        .collect();
    rows.into_iter()
        .fold((f64::INFINITY, MeasurementAxis::Z), |best, row| {
            if row.0 < best.0 {
                row
            } else {
                best
            }
        })
}

/// Nelder–Mead on `(θ, φ)` starting from a grid point.
fn refine(rho: &ComplexMatrix, start: MeasurementAxis) -> (f64, MeasurementAxis) {
    let f = |p: [f64; 2]| conditional_entropy(rho, MeasurementAxis { theta: p[0], phi: p[1] });
    let d_theta = PI / (GRID_THETA - 1) as f64;
    let d_phi = 2.0 * PI / GRID_PHI as f64;
    let mut simplex = [
        [start.theta, start.phi],
        [start.theta + d_theta, start.phi],
        [start.theta, start.phi + d_phi],
    ];
    let mut values = simplex.map(f);

    for _ in 0..REFINE_ITERATIONS {
        let mut order = [0, 1, 2];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.map(|k| simplex[k]);
        values = order.map(|k| values[k]);
        let width = (1..3)
            .map(|k| (simplex[k][0] - simplex[0][0]).abs().max((simplex[k][1] - simplex[0][1]).abs()))
            .fold(0.0, f64::max);
        if values[2] - values[0] <= OBJECTIVE_TOL && width <= SIMPLEX_TOL {
            break;
        }
        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };
        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (candidate, fc) = if fr < values[2] {
                let c = along(-0.5);
                (c, f(c))
            } else {
                let c = along(0.5);
                (c, f(c))
            };
            if fc < values[2].min(fr) {
                simplex[2] = candidate;
                values[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = [
                        simplex[0][0] + 0.5 * (simplex[k][0] - simplex[0][0]),
                        simplex[0][1] + 0.5 * (simplex[k][1] - simplex[0][1]),
                    ];
                    values[k] = f(simplex[k]);
                }
            }
        }
    }
    let best = (0..3).fold(0, |b, k| if values[k] < values[b] { k } else { b });
    (values[best], MeasurementAxis::normalized(simplex[best][0], simplex[best][1]))
}

/// Largest information about the unmeasured qubit obtainable by a projective
/// measurement on `measured_side`, with the maximizing axis.
pub fn classical_correlation_oracle(rho: &ComplexMatrix, measured_side: Side) -> Result<(f64, MeasurementAxis)> {
    check_two_qubit(rho)?;
    let oriented = match measured_side {
        Side::B => rho.clone(),
        Side::A => swap_qubits(rho),
    };
    let (unmeasured, _) = marginals(&oriented)?;
    let (grid_value, grid_axis) = grid_minimum(&oriented);
    let (refined_value, refined_axis) = refine(&oriented, grid_axis);
    let (min_conditional, axis) = if refined_value < grid_value {
        (refined_value, refined_axis)
    } else {
        (grid_value, grid_axis)
    };
    Ok((entropy_bits(&unmeasured)? - min_conditional, axis))
}

/// Discord `I(A:B) − J(A|B)` with the measurement on qubit B.
pub fn discord_oracle(rho: &ComplexMatrix) -> Result<DiscordBreakdown> {
    let (classical, _) = classical_correlation_oracle(rho, Side::B)?;
    let mutual = super::mutual_information(rho)?;
    Ok(DiscordBreakdown {
        mutual_information: mutual,
        classical_correlation: classical,
        discord: mutual - classical,
        s1: conditional_entropy(rho, MeasurementAxis::Z),
        s2: conditional_entropy(rho, MeasurementAxis::X),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::XState;
    use crate::numerics::{ONE, ZERO};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell() -> ComplexMatrix {
        let s = 0.5f64.sqrt();
        ComplexMatrix::outer(&[ZERO, c(s, 0.0), c(s, 0.0), ZERO])
    }

    #[test]
    fn projectors_resolve_identity() {
        let axis = MeasurementAxis { theta: 1.1, phi: 4.0 };
        let (p, m) = axis.projectors();
        assert!((&p + &m).max_abs_diff(&ComplexMatrix::identity(2)) == 0.0);
        assert!((&p * &p).max_abs_diff(&p) < 1e-15);
    }

    #[test]
    fn product_state_has_no_classical_correlation() {
        let mut rho = ComplexMatrix::zeros(4);
        rho[(0, 0)] = ONE;
        let (j, _) = classical_correlation_oracle(&rho, Side::B).unwrap();
        assert!(j.abs() < 1e-12);
    }

    #[test]
    fn bell_state_correlations() {
        let (j, _) = classical_correlation_oracle(&bell(), Side::B).unwrap();
        assert!((j - 1.0).abs() < 1e-8);
        let d = discord_oracle(&bell()).unwrap();
        assert!((d.discord - 1.0).abs() < 1e-8);
    }

    #[test]
    fn classical_bit_is_found_along_z() {
        let rho = ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        let (j, axis) = classical_correlation_oracle(&rho, Side::B).unwrap();
        assert!((j - 1.0).abs() < 1e-10);
        assert!(axis.theta.sin().abs() < 1e-4, "{axis:?}");
        assert!(discord_oracle(&rho).unwrap().discord.abs() < 1e-10);
    }

    #[test]
    fn maximally_mixed_has_zero_discord() {
        let d = discord_oracle(&ComplexMatrix::identity(4).scale_real(0.25)).unwrap();
        assert!(d.discord.abs() < 1e-12 && d.mutual_information.abs() < 1e-12);
    }

    #[test]
    fn plateau_state() {
        let x = XState::new(1.0 / 6.0, 1.0 / 3.0, c(1.0 / 3.0, 0.0), 1.0 / 6.0, 1.0).unwrap();
        let d = discord_oracle(&x.to_matrix()).unwrap();
        assert!((d.discord - 0.3984).abs() < 5e-4, "{}", d.discord);
    }

    #[test]
    fn polish_reaches_equator_off_grid() {
        // φ-independent objective with its minimum on θ = π/2, which the
        // odd-sized θ grid straddles
        let x = XState::new(0.1, 0.35, c(0.2, 0.25), 0.2, 1.0).unwrap();
        let closed = super::super::discord_xstate(&x).unwrap();
        let d = discord_oracle(&x.to_matrix()).unwrap();
        assert!(closed.s2 < closed.s1);
        assert!((d.discord - closed.discord).abs() < 1e-8, "{} vs {}", d.discord, closed.discord);
    }

    #[test]
    fn either_side_on_symmetric_state() {
        let x = XState::new(0.2, 0.3, c(0.1, -0.15), 0.2, 1.0).unwrap();
        let rho = x.to_matrix();
        let (ja, _) = classical_correlation_oracle(&rho, Side::A).unwrap();
        let (jb, _) = classical_correlation_oracle(&rho, Side::B).unwrap();
        assert!((ja - jb).abs() < 1e-8);
    }

    #[test]
    fn swap_moves_excitation() {
        let mut rho = ComplexMatrix::zeros(4);
        rho[(1, 1)] = ONE; // |01⟩
        assert_eq!(swap_qubits(&rho)[(2, 2)], ONE);
    }

    #[test]
    fn axis_normalization() {
        let a = MeasurementAxis::normalized(-0.3, 0.0);
        assert!((a.theta - 0.3).abs() < 1e-12 && (a.phi - PI).abs() < 1e-12);
    }
}
