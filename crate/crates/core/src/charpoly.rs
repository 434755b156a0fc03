//! Characteristic polynomial of the RC matrix.
//!
//! With `x = f_d(p) - λ` the characteristic polynomial of `ρ_A ⊗ I - ρ`
//! factors into a degree-`d` nontrivial part
//!
//! ```text
//! P_d(x) = x^d - Σ_{i=0}^{d-2} (d-i-1) p^{d-i} A_{d-i} x^i
//! ```
//!
//! and trivial eigenvalues `f_d(p) + p·a_i²`, each with multiplicity `d-1`.
//! `A_k` is the degree-`k` elementary symmetric polynomial of `a_1², …, a_d²`.

use crate::error::{Error, Result};
use crate::linalg::eigen_sym_default;
use crate::state::{check_p, f_d, rc_block_matrix, SchmidtVector};

/// Distance within which a block eigenvalue is matched to a trivial value `a_i²`.
pub const TRIVIAL_MATCH_TOL: f64 = 1e-8;

/// Elementary symmetric coefficients `A[k] = A_k^d`, `k = 0..=d`, with `A[0] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymCoeffs {
    pub d: usize,
    pub values: Vec<f64>,
}

impl SymCoeffs {
    pub fn get(&self, k: usize) -> f64 {
        self.values[k]
    }
}

/// Coefficients via the prefix recursion
/// `A_k^m = Σ_{j=0}^{m-k} A_{k-1}^{m-j-1} (A_1^{m-j} - A_1^{m-j-1})`,
/// where superscript `m` restricts to the first `m` coefficients.
///
/// Boundary values: `A_0^m = 1`, and `A_k^m = 0` for `k > m`.
pub fn sym_coeffs_recursive(a: &SchmidtVector) -> SymCoeffs {
    let d = a.d();
    let squares = a.squares();
    // table[k][m] = A_k^m
    let mut table = vec![vec![0.0; d + 1]; d + 1];
    table[0].iter_mut().for_each(|v| *v = 1.0);
    for m in 1..=d {
        table[1][m] = table[1][m - 1] + squares[m - 1];
    }
    for k in 2..=d {
        for m in k..=d {
            table[k][m] = (0..=m - k)
                .map(|j| table[k - 1][m - j - 1] * (table[1][m - j] - table[1][m - j - 1]))
                .sum();
        }
    }
    SymCoeffs {
        d,
        values: (0..=d).map(|k| table[k][d]).collect(),
    }
}

/// Coefficients of `∏ (1 + a_i² t)`, expanded one factor at a time.
pub fn sym_coeffs_oracle(a: &SchmidtVector) -> SymCoeffs {
    let d = a.d();
    let mut e = vec![0.0; d + 1];
    e[0] = 1.0;
    for (n, s) in a.squares().into_iter().enumerate() {
        for k in (1..=n + 1).rev() {
            e[k] += s * e[k - 1];
        }
    }
    SymCoeffs { d, values: e }
}

/// The nontrivial factor together with the trivial eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    pub d: usize,
    pub p: f64,
    /// Ascending powers of `x`; `coeffs[d] == 1` and `coeffs[d-1] == 0`.
    pub coeffs: Vec<f64>,
    /// `(f_d(p) + p·a_i², d-1)` for each `i`.
    pub trivial_roots: Vec<(f64, usize)>,
}

impl CharPoly {
    pub fn eval(&self, x: f64) -> f64 {
        eval_poly(self, x)
    }
}

/// Horner evaluation of the nontrivial factor.
pub fn eval_poly(cp: &CharPoly, x: f64) -> f64 {
    cp.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn trivial_roots(a: &SchmidtVector, p: f64) -> Vec<(f64, usize)> {
    let shift = f_d(a.d(), p);
    a.squares()
        .into_iter()
        .map(|s| (shift + p * s, a.d() - 1))
        .collect()
}

/// Builds `P_d(x)` for the Schmidt vector `a` at noise parameter `p`.
pub fn nontrivial_poly(a: &SchmidtVector, p: f64) -> Result<CharPoly> {
    check_p(p)?;
    let d = a.d();
    let sym = sym_coeffs_recursive(a);
    let mut coeffs = vec![0.0; d + 1];
    coeffs[d] = 1.0;
    for (i, c) in coeffs.iter_mut().enumerate().take(d - 1) {
        let k = d - i;
        *c = -((k - 1) as f64) * p.powi(k as i32) * sym.get(k);
    }
    Ok(CharPoly {
        d,
        p,
        coeffs,
        trivial_roots: trivial_roots(a, p),
    })
}

/// Expanded form of `-(1/d^d)(p + d·x)^{d-1}((d-1)p - d·x)`, the nontrivial
/// factor at `a_i = d^{-1/2}`.
pub fn maxent_poly(d: usize, p: f64) -> Result<CharPoly> {
    if d < 2 {
        return Err(Error::InvalidLocalDimension(d));
    }
    check_p(p)?;
    let df = d as f64;
    // start from the linear factor (d-1)p - d·x
    let mut coeffs = vec![(df - 1.0) * p, -df];
    for _ in 0..d - 1 {
        // multiply by (p + d·x)
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += p * c;
            next[i + 1] += df * c;
        }
        coeffs = next;
    }
    let scale = -df.powi(-(d as i32));
    coeffs.iter_mut().for_each(|c| *c *= scale);
    let trivial = f_d(d, p) + p / df;
    Ok(CharPoly {
        d,
        p,
        coeffs,
        trivial_roots: vec![(trivial, d - 1); d],
    })
}

/// Roots of the nontrivial factor at `p = 1`, in descending order.
///
/// Every coefficient of `x^i` carries `p^{d-i}`, so the roots at general `p`
/// are these values times `p`. They are read off the spectrum of the bare
/// block matrix after removing each trivial eigenvalue `a_i²` (multiplicity
/// `d-1`) by nearest match.
pub fn nontrivial_roots_unit(a: &SchmidtVector) -> Result<Vec<f64>> {
    let d = a.d();
    let spectrum = eigen_sym_default(&rc_block_matrix(a, 1.0, 0.0))?;
    let mut remaining = spectrum.eigenvalues;
    for s in a.squares() {
        for _ in 0..d - 1 {
            let (idx, distance) = remaining
                .iter()
                .enumerate()
                .map(|(i, v)| (i, (v - s).abs()))
                .fold((usize::MAX, f64::INFINITY), |best, cur| {
                    if cur.1 < best.1 {
                        cur
                    } else {
                        best
                    }
                });
            if distance > TRIVIAL_MATCH_TOL {
                return Err(Error::RootExtraction { value: s, distance });
            }
            remaining.remove(idx);
        }
    }
    debug_assert_eq!(remaining.len(), d);
    // block eigenvalue λ' = -x
    Ok(remaining.into_iter().map(|v| -v).collect())
}

/// All `d²` eigenvalues of the RC matrix, ascending, assembled from the
/// nontrivial roots (`λ = f_d(p) - x`) and the trivial eigenvalues.
pub fn full_spectrum_from_poly(a: &SchmidtVector, p: f64) -> Result<Vec<f64>> {
    check_p(p)?;
    let shift = f_d(a.d(), p);
    let mut out: Vec<f64> = nontrivial_roots_unit(a)?
        .into_iter()
        .map(|x| shift - p * x)
        .collect();
    for (value, mult) in trivial_roots(a, p) {
        out.extend(std::iter::repeat_n(value, mult));
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// RC threshold for the maximally entangled state, `1/(d+1)`.
pub fn maxent_threshold(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidLocalDimension(d));
    }
    Ok(1.0 / (d as f64 + 1.0))
}

/// RC threshold for a `(d-j)`-dimensional maximally entangled state embedded
/// in dimension `d`: `(d-1)(d-j) / ((d²-1)(d-j) - d·j)`.
pub fn rank_deficient_threshold(d: usize, j: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidLocalDimension(d));
    }
    if j + 2 > d {
        return Err(Error::InvalidRank { d, j });
    }
    let (df, jf) = (d as f64, j as f64);
    Ok((df - 1.0) * (df - jf) / ((df * df - 1.0) * (df - jf) - df * jf))
}
