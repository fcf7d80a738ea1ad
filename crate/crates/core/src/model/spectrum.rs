use num_complex::Complex64;

use super::ModelParams;

/// Closed-form eigensystem of the ring.
///
/// `energies[i]` belongs to `states[i]`. The eigenvectors do not depend on the
/// parameters; only the energies do.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub energies: [f64; 8],
    pub states: [[Complex64; 8]; 8],
}

/// The eight level energies `E₀..E₇` in closed form.
pub fn analytic_energies(p: &ModelParams) -> [f64; 8] {
    let ModelParams {
        j,
        delta,
        dm,
        field: b,
        ..
    } = *p;
    let chiral = 3f64.sqrt() * j * dm;
    let base = -j - 0.5 * j * delta;
    [
        1.5 * j * delta + 3.0 * b,
        2.0 * j - 0.5 * j * delta - b,
        2.0 * j - 0.5 * j * delta + b,
        base - b - chiral,
        base - b + chiral,
        base + b - chiral,
        base + b + chiral,
        1.5 * j * delta - 3.0 * b,
    ]
}

/// The eight fixed eigenvectors `|φ₀⟩..|φ₇⟩`.
///
/// `|φ₁⟩, |φ₂⟩` are the symmetric single-flip (W-type) states, `|φ₃⟩..|φ₆⟩`
/// their chiral partners carrying the `±√3 J D` splitting.
pub fn eigenstates() -> [[Complex64; 8]; 8] {
    let r3 = 3f64.sqrt();
    let zero = Complex64::new(0.0, 0.0);
    let w = Complex64::new(1.0 / r3, 0.0);
    let norm = 1.0 / (2.0 * r3);
    let plus = Complex64::new(r3, 1.0) * norm; // (i + √3)
    let minus = Complex64::new(-r3, 1.0) * norm; // (i − √3)
    let last = Complex64::new(0.0, -2.0) * norm; // −2i

    // basis indices |q1 q2 q3⟩
    const S011: usize = 0b011;
    const S101: usize = 0b101;
    const S110: usize = 0b110;
    const S001: usize = 0b001;
    const S010: usize = 0b010;
    const S100: usize = 0b100;

    let mut states = [[zero; 8]; 8];
    states[0][0b000] = Complex64::new(1.0, 0.0);
    for k in [S011, S101, S110] {
        states[1][k] = w;
    }
    for k in [S001, S010, S100] {
        states[2][k] = w;
    }
    states[3][S011] = plus;
    states[3][S101] = minus;
    states[3][S110] = last;
    states[4][S011] = minus;
    states[4][S101] = plus;
    states[4][S110] = last;
    states[5][S001] = plus;
    states[5][S010] = minus;
    states[5][S100] = last;
    states[6][S001] = minus;
    states[6][S010] = plus;
    states[6][S100] = last;
    states[7][0b111] = Complex64::new(1.0, 0.0);
    states
}

pub fn analytic_spectrum(p: &ModelParams) -> Spectrum {
    Spectrum {
        energies: analytic_energies(p),
        states: eigenstates(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_hamiltonian;

    fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    #[test]
    fn states_are_orthonormal() {
        let s = eigenstates();
        for i in 0..8 {
            for k in 0..8 {
                let expected = if i == k { 1.0 } else { 0.0 };
                assert!((inner(&s[i], &s[k]) - expected).norm() < 1e-12, "({i},{k})");
            }
        }
    }

    #[test]
    fn energies_are_expectation_values() {
        let p = ModelParams::new(-1.0, 0.37, 1.9, -0.6, 1.0);
        let h = build_hamiltonian(&p);
        let spec = analytic_spectrum(&p);
        for (e, state) in spec.energies.iter().zip(&spec.states) {
            let expectation = inner(state, &h.apply(state));
            assert!((expectation.re - e).abs() < 1e-10);
            assert!(expectation.im.abs() < 1e-12);
        }
    }

    #[test]
    fn ferromagnetic_gap_at_dm_one_and_a_half() {
        let e = analytic_energies(&ModelParams::new(-1.0, 1.0, 1.5, 0.0, 1.0));
        // E₄ − E₀ = (1 + 1/2 − 3√3/2) − (−3/2) = 3 − 3√3/2
        let gap = e[4] - e[0];
        assert!((gap - (3.0 - 1.5 * 3f64.sqrt())).abs() < 1e-14);
        assert!((gap - 0.401_924).abs() < 1e-6);
    }

    #[test]
    fn antiferromagnetic_crossing_at_root_three() {
        let e = analytic_energies(&ModelParams::new(1.0, -2.0, 3f64.sqrt(), 0.0, 1.0));
        assert!((e[3] - e[0]).abs() < 1e-14);
    }
}
