//! Reduction-criterion decisions: negativity checks, the closed-form
//! two-qutrit cubic, and the minimum noise parameter `p*` at which the RC
//! matrix first acquires a negative eigenvalue.

use std::fmt;
use std::str::FromStr;

use crate::charpoly::{full_spectrum_from_poly, nontrivial_roots_unit, sym_coeffs_recursive};
use crate::error::{Error, Result};
use crate::linalg::eigen_sym_default;
use crate::state::{check_p, f_d, DepolarizedState, SchmidtVector};

/// Default negativity tolerance for [`rc_check`].
pub const DEFAULT_RC_TOL: f64 = 1e-10;

/// Nontrivial roots at `p = 1` at or below this value count as zero: the
/// state never becomes RC-negative for `p ∈ (0, 1]`.
pub const ROOT_ZERO_TOL: f64 = 1e-12;

/// Iteration count of [`bisection_threshold_oracle`].
pub const BISECTION_STEPS: usize = 60;

/// How the minimum RC eigenvalue is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Jacobi on the assembled RC matrix.
    Oracle,
    /// Nontrivial roots plus trivial eigenvalues.
    Charpoly,
    /// Trigonometric cubic; `d = 3` only.
    Cubic3x3,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Charpoly => "charpoly",
            Method::Cubic3x3 => "cubic3x3",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "charpoly" => Ok(Method::Charpoly),
            "cubic3x3" => Ok(Method::Cubic3x3),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// Outcome of a reduction-criterion test. `false` means "not detected",
/// never "undistillable".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RcVerdict {
    pub min_eigenvalue: f64,
    pub distillable_by_rc: bool,
    pub method: Method,
}

/// Smallest eigenvalue of `ρ_A ⊗ I - ρ` and whether it is below `-tol`.
pub fn rc_check(s: &DepolarizedState, tol: f64, method: Method) -> Result<RcVerdict> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let min_eigenvalue = match method {
        Method::Oracle => eigen_sym_default(&s.rc_matrix_blocks())?.min(),
        Method::Charpoly => full_spectrum_from_poly(s.schmidt(), s.p())?[0],
        Method::Cubic3x3 => {
            let roots = cubic3x3_roots(s.schmidt(), s.p())?;
            let trivial = s
                .schmidt()
                .squares()
                .into_iter()
                .map(|sq| f_d(3, s.p()) + s.p() * sq)
                .fold(f64::INFINITY, f64::min);
            roots.min_lambda().min(trivial)
        }
    };
    Ok(RcVerdict {
        min_eigenvalue,
        distillable_by_rc: min_eigenvalue < -tol,
        method,
    })
}

/// Labels for the three nontrivial eigenvalue families of the `d = 3` cubic.
/// `Lambda1` is the largest root `x₁`; for general `d` it names the largest
/// nontrivial root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootFamily {
    Lambda1,
    LambdaPlus,
    LambdaMinus,
}

impl RootFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            RootFamily::Lambda1 => "lambda1",
            RootFamily::LambdaPlus => "lambda+",
            RootFamily::LambdaMinus => "lambda-",
        }
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Roots of `x³ - p²B₂x - 2p³B₃` and the eigenvalues `λ_i = (2/9)(1-p) - x_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic3x3Roots {
    pub x1: f64,
    pub x_plus: f64,
    pub x_minus: f64,
    pub lambda1: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl Cubic3x3Roots {
    pub fn roots(&self) -> [(RootFamily, f64); 3] {
        [
            (RootFamily::Lambda1, self.x1),
            (RootFamily::LambdaPlus, self.x_plus),
            (RootFamily::LambdaMinus, self.x_minus),
        ]
    }

    pub fn lambdas(&self) -> [f64; 3] {
        [self.lambda1, self.lambda_plus, self.lambda_minus]
    }

    pub fn min_lambda(&self) -> f64 {
        self.lambdas().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Trigonometric solution of the depressed cubic for `d = 3`.
///
/// With `B₂ = e₂(a²)`, `B₃ = e₃(a²)` and `ψ = atan2(√(B₂³ - 27B₃²), √27·B₃)/3`:
///
/// ```text
/// x₁  = 2p√(B₂/3)·cos ψ
/// x_± = -p√(B₂/3)·(cos ψ ± √3·sin ψ)
/// ```
///
/// The two-argument arctangent covers `B₃ = 0`, where `ψ = π/6`.
pub fn cubic3x3_roots(a: &SchmidtVector, p: f64) -> Result<Cubic3x3Roots> {
    if a.d() != 3 {
        return Err(Error::CubicRequiresThree(a.d()));
    }
    check_p(p)?;
    let sym = sym_coeffs_recursive(a);
    let (b2, b3) = (sym.get(2), sym.get(3));
    // real spectrum => nonnegative discriminant; clamp rounding noise
    let disc = (b2 * b2 * b2 - 27.0 * b3 * b3).max(0.0);
    let psi = disc.sqrt().atan2(27f64.sqrt() * b3.abs()) / 3.0;
    let half = p * (b2 / 3.0).sqrt();
    let (sin, cos) = psi.sin_cos();
    let x1 = 2.0 * half * cos;
    let x_plus = -half * (cos + 3f64.sqrt() * sin);
    let x_minus = -half * (cos - 3f64.sqrt() * sin);
    let shift = f_d(3, p);
    Ok(Cubic3x3Roots {
        x1,
        x_plus,
        x_minus,
        lambda1: shift - x1,
        lambda_plus: shift - x_plus,
        lambda_minus: shift - x_minus,
    })
}

/// Minimum `p` guaranteeing RC negativity, or `None` when no `p ∈ (0, 1]` works.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub p_star: Option<f64>,
    /// Root family whose eigenvalue crosses zero first; `None` when absent or
    /// when the method cannot tell (bisection).
    pub family: Option<RootFamily>,
}

impl ThresholdResult {
    pub const ABSENT: ThresholdResult = ThresholdResult {
        p_star: None,
        family: None,
    };
}

/// Which route [`threshold`] takes to the largest nontrivial root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMethod {
    Generic,
    Cubic3x3,
}

/// Threshold contributed by a single nontrivial root `x` (taken at `p = 1`).
///
/// The eigenvalue is `f̂(1-p) - x·p` with `f̂ = (d-1)/d²`; it vanishes at
/// `p = f̂/(f̂ + x)` and only does so inside `(0, 1]` when `x > 0`.
pub fn root_threshold(d: usize, x_unit: f64) -> Option<f64> {
    if x_unit > ROOT_ZERO_TOL {
        let f_hat = f_d(d, 0.0);
        Some(f_hat / (f_hat + x_unit))
    } else {
        None
    }
}

/// Minimum `p` at which `ρ_A ⊗ I - ρ` becomes negative.
pub fn threshold(a: &SchmidtVector, method: ThresholdMethod) -> Result<ThresholdResult> {
    match method {
        ThresholdMethod::Generic => {
            let x_hat = nontrivial_roots_unit(a)?[0];
            Ok(match root_threshold(a.d(), x_hat) {
                Some(p) => ThresholdResult {
                    p_star: Some(p),
                    family: Some(RootFamily::Lambda1),
                },
                None => ThresholdResult::ABSENT,
            })
        }
        ThresholdMethod::Cubic3x3 => cubic_threshold(a),
    }
}

/// Per-family thresholds from the cubic; the smallest wins, ties going to
/// the earlier family in `λ₁, λ₊, λ₋` order.
pub fn cubic_threshold(a: &SchmidtVector) -> Result<ThresholdResult> {
    let roots = cubic3x3_roots(a, 1.0)?;
    let mut best = ThresholdResult::ABSENT;
    for (family, x) in roots.roots() {
        if let Some(p) = root_threshold(3, x) {
            if best.p_star.is_none_or(|b| p < b) {
                best = ThresholdResult {
                    p_star: Some(p),
                    family: Some(family),
                };
            }
        }
    }
    Ok(best)
}

/// Referee for [`threshold`]: bisects `p ∈ [0, 1]` on the sign of the
/// Jacobi minimum eigenvalue of the RC matrix.
pub fn bisection_threshold_oracle(a: &SchmidtVector) -> Result<ThresholdResult> {
    let min_eig = |p: f64| -> Result<f64> {
        let s = DepolarizedState::new(a.clone(), p)?;
        Ok(eigen_sym_default(&s.rc_matrix_blocks())?.min())
    };
    // at p = 1 the minimum eigenvalue is -x̂
    if min_eig(1.0)? >= -ROOT_ZERO_TOL {
        return Ok(ThresholdResult::ABSENT);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if min_eig(mid)? < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdResult {
        p_star: Some(0.5 * (lo + hi)),
        family: None,
    })
}
