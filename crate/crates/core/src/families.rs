//! Closed-form three-tangle, reduced concurrence and MPC for two mixed-state
//! families: GHZ/W mixtures and GHZ/W/W̃ mixtures with `q = (1 − p)/n`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, PureState3};
use crate::states;

/// Default number of grid points on `[0, 1]` for the sweeps.
pub const DEFAULT_STEPS: usize = 1001;
/// Default family parameter `n` of the rank-3 family.
pub const DEFAULT_N: u32 = 2;

/// Which piece of the piecewise formulas a point falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    BelowP0,
    P0ToP1,
    P1ToP2,
    AboveP2,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::BelowP0 => "below_p0",
            Branch::P0ToP1 => "p0_to_p1",
            Branch::P1ToP2 => "p1_to_p2",
            Branch::AboveP2 => "above_p2",
        }
    }
}

/// Branch points of a family: `C_AB` vanishes from `p0`, the tangle is
/// nonzero from `p1`, and the tangle is linear from `p2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl Thresholds {
    pub fn ghz_w() -> Self {
        let cbrt2 = 2f64.cbrt();
        Thresholds {
            p0: 7.0 - 3.0 * 5f64.sqrt(),
            p1: 4.0 * cbrt2 / (3.0 + 4.0 * cbrt2),
            p2: 0.5 + 3.0 / 310.0 * 465f64.sqrt(),
        }
    }

    /// Thresholds of the rank-3 family. `n = 1` and `n = 2` use closed forms;
    /// otherwise `p1` is the root of `α_I` and `p2` the point where the chord
    /// to `(1, 1)` is tangent to `α_I`.
    pub fn ghz_w_wt(n: u32) -> Result<Self> {
        check_n(n)?;
        match n {
            1 => Ok(Self::ghz_w()),
            2 => Ok(Thresholds {
                p0: 0.25,
                p1: 0.75,
                p2: (2.0 + 3f64.sqrt()) / 4.0,
            }),
            _ => {
                let p0 = xi_root(n);
                let p1 = bisect(|p| alpha_i(p, n), 0.3, 1.0 - 1e-9);
                let chord = |p: f64| alpha_i_deriv(p, n) * (1.0 - p) - (1.0 - alpha_i(p, n));
                let p2 = bisect(chord, p1 + 1e-9, 1.0 - 1e-6);
                Ok(Thresholds { p0, p1, p2 })
            }
        }
    }

    pub fn branch(&self, p: f64) -> Branch {
        if p < self.p0 {
            Branch::BelowP0
        } else if p <= self.p1 {
            Branch::P0ToP1
        } else if p < self.p2 {
            Branch::P1ToP2
        } else {
            Branch::AboveP2
        }
    }
}

/// Root of a function with a sign change on `[lo, hi]`, to machine precision.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == (f_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Smallest root in `[0, 1]` of `ξ(p, n)`, from the squared equation
/// `4n²(1−p)² = (2 + (3n−2)p)((n+2)p + 2n − 2)`.
fn xi_root(n: u32) -> f64 {
    let n = n as f64;
    let a = 4.0 * n * n - (3.0 * n - 2.0) * (n + 2.0);
    let b = -8.0 * n * n - 2.0 * (n + 2.0) - (3.0 * n - 2.0) * (2.0 * n - 2.0);
    let c = 4.0 * n * n - 4.0 * n + 4.0;
    if a.abs() < 1e-12 {
        return -c / b;
    }
    let q = -0.5 * (b + b.signum() * (b * b - 4.0 * a * c).max(0.0).sqrt());
    let mut roots = [q / a, c / q];
    roots.sort_by(f64::total_cmp);
    roots
        .into_iter()
        .find(|r| (0.0..=1.0).contains(r))
        .unwrap_or(roots[0])
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "p", value: p })
    }
}

fn check_n(n: u32) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "n", value: 0.0 })
    }
}

pub fn g_i(p: f64) -> f64 {
    p * p - 8.0 * 6f64.sqrt() / 9.0 * (p * (1.0 - p).powi(3)).sqrt()
}

pub fn g_ii(p: f64) -> f64 {
    1.0 - (1.0 - p) * (1.5 + 465f64.sqrt() / 18.0)
}

fn alpha_coeffs(n: u32) -> (f64, f64, f64) {
    let n = n as f64;
    let k1 = 4.0 * (n - 1.0).sqrt() / n;
    let k2 = 4.0 * (n - 1.0) / (3.0 * n * n);
    let k3 = 8.0 * (6.0 * n).sqrt() * (1.0 + (n - 1.0).powf(1.5)) / (9.0 * n * n);
    (k1, k2, k3)
}

pub fn alpha_i(p: f64, n: u32) -> f64 {
    let (k1, k2, k3) = alpha_coeffs(n);
    let r = 1.0 - p;
    p * p - k1 * p * r - k2 * r * r - k3 * (p * r * r * r).sqrt()
}

fn alpha_i_deriv(p: f64, n: u32) -> f64 {
    let (k1, k2, k3) = alpha_coeffs(n);
    let r = 1.0 - p;
    let s = (p * r * r * r).sqrt();
    2.0 * p - k1 * (1.0 - 2.0 * p) + 2.0 * k2 * r - k3 * r * r * (1.0 - 4.0 * p) / (2.0 * s)
}

pub fn alpha_ii(p: f64, n: u32) -> Result<f64> {
    let t = Thresholds::ghz_w_wt(n)?;
    Ok(alpha_ii_with(p, n, t.p2))
}

fn alpha_ii_with(p: f64, n: u32, p2: f64) -> f64 {
    (p - p2) / (1.0 - p2) + (1.0 - p) / (1.0 - p2) * alpha_i(p2, n)
}

/// `ξ(p)`; for `n = 1` it reduces to the GHZ/W `C_AB` formula.
pub fn xi(p: f64, n: u32) -> f64 {
    let nf = n as f64;
    let radicand = (2.0 + p * (3.0 * nf - 2.0)) * (2.0 * (p - 1.0) + nf * (p + 2.0));
    2.0 / 3.0 * (1.0 - p) - radicand.max(0.0).sqrt() / (3.0 * nf)
}

fn mixture(terms: &[(f64, PureState3)]) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(8, 8);
    for (w, psi) in terms {
        m = &m + &ComplexMatrix::outer(psi.amplitudes()).scale_real(*w);
    }
    DensityMatrix::new(m).expect("convex mixture of pure states")
}

/// `p|GHZ⟩⟨GHZ| + (1−p)|W⟩⟨W|`.
pub fn ghz_w_state(p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    Ok(mixture(&[(p, states::ghz()), (1.0 - p, states::w())]))
}

pub fn ghz_w_tangle(p: f64) -> Result<f64> {
    check_p(p)?;
    let t = Thresholds::ghz_w();
    Ok(match t.branch(p) {
        Branch::BelowP0 | Branch::P0ToP1 => 0.0,
        Branch::P1ToP2 => g_i(p).max(0.0),
        Branch::AboveP2 => g_ii(p).max(0.0),
    })
}

pub fn ghz_w_cab(p: f64) -> Result<f64> {
    check_p(p)?;
    if p >= Thresholds::ghz_w().p0 {
        return Ok(0.0);
    }
    Ok((2.0 / 3.0 * (1.0 - p) - (p * (2.0 + p) / 3.0).sqrt()).max(0.0))
}

pub fn ghz_w_mpc(p: f64) -> Result<f64> {
    Ok(ghz_w_point(p)?.mpc)
}

/// One point of the GHZ/W curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzWPoint {
    pub p: f64,
    pub tau: f64,
    pub c_ab: f64,
    pub mpc: f64,
    pub branch: Branch,
}

pub fn ghz_w_point(p: f64) -> Result<GhzWPoint> {
    let tau = ghz_w_tangle(p)?;
    let c_ab = ghz_w_cab(p)?;
    let branch = Thresholds::ghz_w().branch(p);
    let mpc = match branch {
        Branch::BelowP0 => c_ab,
        Branch::P0ToP1 => 0.0,
        _ => tau.sqrt(),
    };
    Ok(GhzWPoint { p, tau, c_ab, mpc, branch })
}

/// `ρ(p, q) = p|GHZ⟩⟨GHZ| + q|W⟩⟨W| + (1−p−q)|W̃⟩⟨W̃|` with `q = (1−p)/n`.
pub fn ghz_w_wt_state(p: f64, n: u32) -> Result<DensityMatrix> {
    check_p(p)?;
    check_n(n)?;
    let q = (1.0 - p) / n as f64;
    Ok(mixture(&[
        (p, states::ghz()),
        (q, states::w()),
        ((1.0 - p - q).max(0.0), states::w_tilde()),
    ]))
}

pub fn ghz_w_wt_tangle(p: f64, n: u32) -> Result<f64> {
    Ok(ghz_w_wt_point(p, n)?.tau)
}

/// Common value of `C_AB = C_AC = C_BC` for the rank-3 family.
pub fn ghz_w_wt_cab(p: f64, n: u32) -> Result<f64> {
    Ok(ghz_w_wt_point(p, n)?.c_ab)
}

pub fn ghz_w_wt_mpc(p: f64, n: u32) -> Result<f64> {
    Ok(ghz_w_wt_point(p, n)?.mpc)
}

/// One point of the rank-3 curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhzWWtPoint {
    pub p: f64,
    pub n: u32,
    pub tau: f64,
    pub c_ab: f64,
    pub mpc: f64,
    pub branch: Branch,
}

pub fn ghz_w_wt_point(p: f64, n: u32) -> Result<GhzWWtPoint> {
    check_p(p)?;
    let t = Thresholds::ghz_w_wt(n)?;
    Ok(wt_point_with(p, n, &t))
}

fn wt_point_with(p: f64, n: u32, t: &Thresholds) -> GhzWWtPoint {
    let branch = t.branch(p);
    let c_ab = if branch == Branch::BelowP0 {
        xi(p, n).max(0.0)
    } else {
        0.0
    };
    let tau = match branch {
        Branch::BelowP0 | Branch::P0ToP1 => 0.0,
        Branch::P1ToP2 => alpha_i(p, n).max(0.0),
        Branch::AboveP2 => alpha_ii_with(p, n, t.p2).max(0.0),
    };
    let mpc = match branch {
        Branch::BelowP0 => c_ab,
        Branch::P0ToP1 => 0.0,
        _ => tau.sqrt(),
    };
    GhzWWtPoint { p, n, tau, c_ab, mpc, branch }
}

/// `√(c_min² + τ)`. With a numerically optimized `τ` (an upper bound on the
/// convex roof) the result is an upper estimate.
pub fn mixed_mpc(c_min: f64, tau: f64) -> Result<f64> {
    if c_min.is_nan() || c_min < 0.0 {
        return Err(Error::OutOfRange { name: "c_min", value: c_min });
    }
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::OutOfRange { name: "tau", value: tau });
    }
    Ok((c_min * c_min + tau).sqrt())
}

/// Grid `p_i = i/(steps − 1)`.
pub fn grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::OutOfRange { name: "steps", value: steps as f64 });
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| i as f64 / last).collect())
}

pub fn ghz_w_sweep(steps: usize) -> Result<Vec<GhzWPoint>> {
    grid(steps)?.into_par_iter().map(ghz_w_point).collect()
}

pub fn ghz_w_wt_sweep(n: u32, steps: usize) -> Result<Vec<GhzWWtPoint>> {
    let t = Thresholds::ghz_w_wt(n)?;
    Ok(grid(steps)?
        .into_par_iter()
        .map(|p| wt_point_with(p, n, &t))
        .collect())
}
