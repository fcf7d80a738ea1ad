use super::{analytic_energies, Knob, ModelParams, GROUND_DEGENERACY_TOL};
use crate::error::{Error, Result};

const SCAN_CELLS: usize = 4096;
const MAX_BISECTIONS: usize = 200;

/// A change of ground-level identity along a knob.
#[derive(Clone, Debug, PartialEq)]
pub struct Crossing {
    pub knob: Knob,
    pub value: f64,
    /// Ground levels just below `value`.
    pub below: Vec<usize>,
    /// Ground levels just above `value`.
    pub above: Vec<usize>,
}

/// Indices of the analytic levels within `1e-9` of the lowest energy, ascending.
pub fn ground_levels(p: &ModelParams) -> Vec<usize> {
    let e = analytic_energies(p);
    let min = e.iter().copied().fold(f64::INFINITY, f64::min);
    (0..8).filter(|&k| e[k] - min <= GROUND_DEGENERACY_TOL).collect()
}

/// Locates every point in `range` where the set of ground levels changes.
///
/// The range is scanned at cell midpoints (so degeneracies that occur exactly
/// at an endpoint, such as the chiral multiplet at `D = 0`, are not reported)
/// and each change is bisected to floating-point resolution.
pub fn find_crossing(p: &ModelParams, knob: Knob, range: (f64, f64)) -> Result<Vec<Crossing>> {
    let (start, stop) = range;
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(Error::InvalidArgument(format!(
            "crossing range must be finite with start < stop, got [{start}, {stop}]"
        )));
    }
    let ground_at = |x: f64| ground_levels(&p.with(knob, x));
    let cell = (stop - start) / SCAN_CELLS as f64;
    let probe_step = cell * 1e-4;

    let mut crossings = Vec::new();
    let mut left = start + 0.5 * cell;
    let mut left_ground = ground_at(left);
    for k in 1..SCAN_CELLS {
        let right = start + (k as f64 + 0.5) * cell;
        let right_ground = ground_at(right);
        let mut seg_start = left;
        let mut seg_ground = left_ground;
        // one cell may hide several changes; walk them left to right
        for _ in 0..8 {
            if seg_ground == right_ground {
                break;
            }
            let (mut lo, mut hi) = (seg_start, right);
            for _ in 0..MAX_BISECTIONS {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if ground_at(mid) == seg_ground {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            // `hi` may sit on the degenerate point itself, so probe past it
            let probe = (hi + probe_step).min(right);
            let above = ground_at(probe);
            crossings.push(Crossing {
                knob,
                value: snap_to_intersection(p, knob, 0.5 * (lo + hi), cell, &seg_ground, &above),
                below: seg_ground,
                above: above.clone(),
            });
            seg_start = probe;
            seg_ground = above;
        }
        left = right;
        left_ground = right_ground;
    }
    Ok(crossings)
}

/// The bisection stops where the `1e-9` degeneracy window opens, not at the
/// level intersection. Energies are affine in every knob, so the secant
/// through `x ± cell` gives the intersection exactly.
fn snap_to_intersection(p: &ModelParams, knob: Knob, x: f64, cell: f64, below: &[usize], above: &[usize]) -> f64 {
    let pick = |set: &[usize], other: &[usize]| set.iter().copied().find(|k| !other.contains(k)).or(set.first().copied());
    let (Some(i), Some(k)) = (pick(below, above), pick(above, below)) else {
        return x;
    };
    if i == k {
        return x;
    }
    let gap = |t: f64| {
        let e = analytic_energies(&p.with(knob, t));
        e[i] - e[k]
    };
    let (a, b) = (x - cell, x + cell);
    let (fa, fb) = (gap(a), gap(b));
    if fa == fb {
        return x;
    }
    let root = a - fa * (b - a) / (fb - fa);
    if (root - x).abs() <= cell {
        root
    } else {
        x
    }
}
