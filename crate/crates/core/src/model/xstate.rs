use num_complex::Complex64;

use super::ModelParams;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

const TRACE_REL_TOL: f64 = 1e-12;
const X_FORM_TOL: f64 = 1e-12;

/// Two-qubit state of the form
///
/// ```text
///          ⎛ u  0  0  0 ⎞
/// 1/norm · ⎜ 0  w  y  0 ⎟
///          ⎜ 0  y* w  0 ⎟
///          ⎝ 0  0  0  v ⎠
/// ```
///
/// in the basis `|00⟩, |01⟩, |10⟩, |11⟩`. The raw elements are kept
/// unnormalized; any common positive factor is allowed since only ratios to
/// `norm` enter physical quantities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    pub u: f64,
    pub w: f64,
    pub y: Complex64,
    pub v: f64,
    pub norm: f64,
}

impl XState {
    /// Validated constructor: unit trace (`u + 2w + v = norm`), nonnegative
    /// diagonal and `|y| ≤ w`.
    pub fn new(u: f64, w: f64, y: Complex64, v: f64, norm: f64) -> Result<Self> {
        let x = Self { u, w, y, v, norm };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { u, w, y, v, norm } = *self;
        if ![u, w, v, y.re, y.im, norm].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidXState("non-finite element".into()));
        }
        if norm <= 0.0 {
            return Err(Error::InvalidXState(format!("normalizer {norm} must be positive")));
        }
        let slack = TRACE_REL_TOL * norm;
        if u < -slack || w < -slack || v < -slack {
            return Err(Error::InvalidXState(format!(
                "negative diagonal element (u={u}, w={w}, v={v})"
            )));
        }
        if (u + 2.0 * w + v - norm).abs() > slack {
            return Err(Error::InvalidXState(format!(
                "u + 2w + v = {} differs from norm {norm}",
                u + 2.0 * w + v
            )));
        }
        if y.norm() > w + slack {
            return Err(Error::InvalidXState(format!("|y| = {} exceeds w = {w}", y.norm())));
        }
        Ok(())
    }

    /// Copy with the coherence `y` multiplied by `factor`.
    pub fn with_scaled_coherence(&self, factor: f64) -> Self {
        Self {
            y: self.y * factor,
            ..*self
        }
    }

    /// Normalized eigenvalues `u, v, w + |y|, w − |y|` (rounding below zero clipped).
    pub fn eigenvalues(&self) -> [f64; 4] {
        let m = self.y.norm();
        [self.u, self.v, self.w + m, self.w - m].map(|x| (x / self.norm).max(0.0))
    }

    /// Dense normalized 4×4 density matrix.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let s = 1.0 / self.norm;
        let mut m = ComplexMatrix::zeros(4);
        m[(0, 0)] = Complex64::new(self.u * s, 0.0);
        m[(1, 1)] = Complex64::new(self.w * s, 0.0);
        m[(2, 2)] = Complex64::new(self.w * s, 0.0);
        m[(3, 3)] = Complex64::new(self.v * s, 0.0);
        m[(1, 2)] = self.y * s;
        m[(2, 1)] = self.y.conj() * s;
        m
    }

    /// Reads a dense two-qubit density matrix that has this restricted X
    /// shape (equal middle diagonal, no outer coherence); everything outside
    /// the pattern must vanish within `1e-12`.
    pub fn from_matrix(rho: &ComplexMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::Dimension(format!(
                "expected a 4x4 state, got {}x{}",
                rho.dim(),
                rho.dim()
            )));
        }
        for i in 0..4 {
            for j in 0..4 {
                let allowed = i == j || (i, j) == (1, 2) || (i, j) == (2, 1);
                if !allowed && rho[(i, j)].norm() > X_FORM_TOL {
                    return Err(Error::NotXForm(format!(
                        "entry ({i},{j}) = {} is nonzero",
                        rho[(i, j)]
                    )));
                }
            }
        }
        let (w1, w2) = (rho[(1, 1)].re, rho[(2, 2)].re);
        if (w1 - w2).abs() > X_FORM_TOL {
            return Err(Error::NotXForm(format!("middle diagonal differs: {w1} vs {w2}")));
        }
        let y = rho[(1, 2)];
        if (y - rho[(2, 1)].conj()).norm() > X_FORM_TOL {
            return Err(Error::NotXForm("inner block is not Hermitian".into()));
        }
        let w = 0.5 * (w1 + w2);
        let (u, v) = (rho[(0, 0)].re, rho[(3, 3)].re);
        Self::new(u, w, y, v, u + 2.0 * w + v)
    }
}

/// Closed-form two-site reduced Gibbs state of the ring.
///
/// Every element is a sum of exponentials `exp(β·x)`; all of them are shifted
/// by the largest exponent so low temperatures do not overflow. The shift is a
/// common factor of `u, w, y, v` and the normalizer.
pub fn reduced_pair_state(p: &ModelParams) -> Result<XState> {
    let beta = p.beta()?;
    let ModelParams {
        j,
        delta,
        dm,
        field: b,
        ..
    } = *p;
    let r3 = 3f64.sqrt();
    let chiral = r3 * beta * j * dm;
    let aniso = 2.0 * beta * j * delta;
    let bracket = [-2.0 * beta * j, beta * j + chiral, beta * j - chiral];
    let zeeman = [beta * b, -beta * b];

    let mut exponents = vec![3.0 * beta * b, -3.0 * beta * b];
    for s in zeeman {
        exponents.extend(bracket.iter().map(|e| s + aniso + e));
    }
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ex = |x: f64| (x - shift).exp();
    let br = |offset: f64| bracket.iter().map(|e| ex(offset + e)).sum::<f64>();

    let u = 3.0 * ex(-3.0 * beta * b) + br(aniso - beta * b);
    let v = 3.0 * ex(3.0 * beta * b) + br(aniso + beta * b);
    let w: f64 = zeeman.iter().map(|&s| br(s + aniso)).sum();
    let y: Complex64 = zeeman
        .iter()
        .map(|&s| {
            let o = s + aniso;
            let (up, down) = (ex(o + bracket[1]), ex(o + bracket[2]));
            Complex64::new(ex(o + bracket[0]) - 0.5 * (up + down), -0.5 * r3 * (up - down))
        })
        .sum();
    let z_prime = 0.5 * (ex(3.0 * beta * b) + ex(-3.0 * beta * b)) + 0.5 * w;
    XState::new(u, w, y, v, 6.0 * z_prime)
}
