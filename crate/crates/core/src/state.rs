//! Depolarized bipartite states `ρ = p|ψ⟩⟨ψ| + (1-p)/d² I` with
//! `|ψ⟩ = Σ a_i |ii⟩`, and their reduction-criterion matrix `ρ_A ⊗ I - ρ`.
//!
//! Basis ordering is row-major: `|ij⟩` is index `i·d + j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, SymMatrix};

/// Normalization drift accepted (and corrected) by [`SchmidtVector::new`].
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Real Schmidt coefficients `a_1..a_d` with `Σ a_i² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector {
    a: Vec<f64>,
}

impl SchmidtVector {
    /// Accepts coefficients whose squares sum to one within [`NORMALIZATION_TOL`],
    /// renormalizing away the drift.
    pub fn new(a: Vec<f64>) -> Result<Self> {
        let norm2 = Self::validate(&a)?;
        if (norm2 - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(Self::scaled(a, norm2))
    }

    /// Accepts any nonzero coefficient vector and scales it to unit norm.
    pub fn normalized(a: Vec<f64>) -> Result<Self> {
        let norm2 = Self::validate(&a)?;
        if norm2 == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self::scaled(a, norm2))
    }

    /// `a_i = d^{-1/2}` for all `i`.
    pub fn maximally_entangled(d: usize) -> Result<Self> {
        Self::normalized(vec![1.0; d])
    }

    /// `(d-j)`-dimensional maximally entangled state embedded in dimension `d`:
    /// the first `d-j` coefficients equal, the last `j` zero.
    pub fn embedded_maximally_entangled(d: usize, j: usize) -> Result<Self> {
        if j + 1 > d {
            return Err(Error::InvalidRank { d, j });
        }
        let mut a = vec![1.0; d - j];
        a.resize(d, 0.0);
        Self::normalized(a)
    }

    fn validate(a: &[f64]) -> Result<f64> {
        if a.len() < 2 {
            return Err(Error::InvalidLocalDimension(a.len()));
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(a.iter().map(|v| v * v).sum())
    }

    fn scaled(mut a: Vec<f64>, norm2: f64) -> Self {
        if norm2 != 1.0 {
            let inv = norm2.sqrt().recip();
            a.iter_mut().for_each(|v| *v *= inv);
        }
        Self { a }
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.a
    }

    /// `a_i²` for each coefficient.
    pub fn squares(&self) -> Vec<f64> {
        self.a.iter().map(|v| v * v).collect()
    }
}

/// `f_d(p) = (d-1)(1-p)/d²`, the isotropic shift on the diagonal of the RC matrix.
pub fn f_d(d: usize, p: f64) -> f64 {
    let d = d as f64;
    (d - 1.0) * (1.0 - p) / (d * d)
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

/// A Schmidt vector mixed with white noise at weight `1 - p`.
#[derive(Debug, Clone, PartialEq)]
pub struct DepolarizedState {
    schmidt: SchmidtVector,
    p: f64,
}

impl DepolarizedState {
    pub fn new(schmidt: SchmidtVector, p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(Self { schmidt, p })
    }

    pub fn schmidt(&self) -> &SchmidtVector {
        &self.schmidt
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.schmidt.d()
    }

    /// The `d² × d²` density matrix.
    pub fn density_matrix(&self) -> SymMatrix {
        let d = self.d();
        let a = self.schmidt.coeffs();
        let noise = (1.0 - self.p) / (d * d) as f64;
        let mut m = &SymMatrix::identity(d * d) * noise;
        let mut pure = vec![0.0; d * d * d * d];
        for i in 0..d {
            for j in 0..d {
                pure[(i * d + i) * d * d + (j * d + j)] = self.p * a[i] * a[j];
            }
        }
        m = &m + &SymMatrix::from_row_major(d * d, pure).expect("outer product is symmetric");
        m
    }

    /// `ρ_A = p·diag(a_i²) + (1-p)/d · I`.
    pub fn reduced_state(&self) -> SymMatrix {
        let d = self.d() as f64;
        let noise = (1.0 - self.p) / d;
        let diag: Vec<f64> = self
            .schmidt
            .squares()
            .into_iter()
            .map(|s| self.p * s + noise)
            .collect();
        SymMatrix::diag(&diag)
    }

    /// RC matrix assembled block by block: `p·[A_ij] + f_d(p)·I`, with
    /// `A_ii = a_i²(I - D[i,i])` and `A_ij = -a_i a_j D[i,j]`.
    pub fn rc_matrix_blocks(&self) -> SymMatrix {
        rc_block_matrix(&self.schmidt, self.p, f_d(self.d(), self.p))
    }

    /// RC matrix from its definition, `ρ_A ⊗ I - ρ`.
    pub fn rc_matrix_direct(&self) -> SymMatrix {
        let d = self.d();
        &kron(&self.reduced_state(), &SymMatrix::identity(d)) - &self.density_matrix()
    }
}

/// `scale·[A_ij] + shift·I`. With `scale = 1, shift = 0` this is the bare block
/// matrix whose spectrum carries every root of the nontrivial factor.
pub(crate) fn rc_block_matrix(schmidt: &SchmidtVector, scale: f64, shift: f64) -> SymMatrix {
    let d = schmidt.d();
    let n = d * d;
    let a = schmidt.coeffs();
    let mut e = vec![0.0; n * n];
    for i in 0..d {
        for j in 0..d {
            let (row0, col0) = (i * d, j * d);
            if i == j {
                // a_i² on the block diagonal except at the (i, i) slot
                for k in 0..d {
                    if k != i {
                        e[(row0 + k) * n + col0 + k] = scale * a[i] * a[i];
                    }
                }
            } else {
                e[(row0 + i) * n + col0 + j] = -scale * a[i] * a[j];
            }
        }
    }
    for k in 0..n {
        e[k * n + k] += shift;
    }
    SymMatrix::from_row_major(n, e).expect("block matrix is symmetric")
}

/// On-disk state description: `{"d": int, "p": float?, "a": [float, ...]}`.
///
/// `a` holds raw coefficients; they are normalized on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub a: Vec<f64>,
}

impl StateFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::StateFormat(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }

    pub fn schmidt(&self) -> Result<SchmidtVector> {
        if self.a.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: self.a.len(),
            });
        }
        SchmidtVector::normalized(self.a.clone())
    }

    /// Builds the state, requiring `p` to be present.
    pub fn state(&self) -> Result<DepolarizedState> {
        let p = self
            .p
            .ok_or_else(|| Error::StateFormat("missing field `p`".into()))?;
        DepolarizedState::new(self.schmidt()?, p)
    }

    pub fn from_state(schmidt: &SchmidtVector, p: Option<f64>) -> Self {
        Self {
            d: schmidt.d(),
            p,
            a: schmidt.coeffs().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigen_sym_default, partial_trace_b};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_state(rng: &mut StdRng, d: usize) -> DepolarizedState {
        let a: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        DepolarizedState::new(SchmidtVector::normalized(a).unwrap(), rng.gen()).unwrap()
    }

    fn sorted_spectrum(m: &SymMatrix) -> Vec<f64> {
        eigen_sym_default(m).unwrap().eigenvalues
    }

    #[test]
    fn schmidt_validation() {
        assert!(SchmidtVector::new(vec![1.0, 0.0]).is_ok());
        assert!(SchmidtVector::new(vec![0.6, 0.8 + 1e-14]).is_ok());
        assert!(matches!(
            SchmidtVector::new(vec![1.0, 1.0]),
            Err(Error::NotNormalized(_))
        ));
        assert_eq!(
            SchmidtVector::normalized(vec![0.0, 0.0]),
            Err(Error::ZeroVector)
        );
        assert_eq!(
            SchmidtVector::normalized(vec![1.0]),
            Err(Error::InvalidLocalDimension(1))
        );
        assert_eq!(
            SchmidtVector::normalized(vec![1.0, f64::NAN]),
            Err(Error::NonFinite)
        );
        let s = SchmidtVector::new(vec![0.6, 0.8 + 1e-13]).unwrap();
        let n: f64 = s.squares().iter().sum();
        assert!((n - 1.0).abs() < 1e-15);
    }

    #[test]
    fn p_out_of_range() {
        let s = SchmidtVector::maximally_entangled(2).unwrap();
        assert_eq!(
            DepolarizedState::new(s.clone(), 1.5),
            Err(Error::ProbabilityOutOfRange(1.5))
        );
        assert!(DepolarizedState::new(s, -0.1).is_err());
    }

    #[test]
    fn f_d_values() {
        assert_eq!(f_d(3, 1.0), 0.0);
        assert!((f_d(3, 0.0) - 2.0 / 9.0).abs() < 1e-16);
        assert!((f_d(2, 1.0 / 3.0) - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn density_matrix_examples() {
        let s = DepolarizedState::new(SchmidtVector::normalized(vec![0.3, -2.0]).unwrap(), 0.0)
            .unwrap();
        assert!(
            s.density_matrix()
                .max_abs_diff(&(&SymMatrix::identity(4) * 0.25))
                < 1e-16
        );

        let s = DepolarizedState::new(SchmidtVector::new(vec![1.0, 0.0]).unwrap(), 1.0).unwrap();
        let mut expected = [0.0; 16];
        expected[0] = 1.0;
        assert_eq!(s.density_matrix().entries(), &expected[..]);

        let s = DepolarizedState::new(SchmidtVector::maximally_entangled(3).unwrap(), 0.5).unwrap();
        let rho = s.density_matrix();
        let diag_pairs = [0usize, 4, 8];
        for r in 0..9 {
            for c in 0..9 {
                let want = match (diag_pairs.contains(&r), diag_pairs.contains(&c)) {
                    (true, true) if r == c => 2.0 / 9.0,
                    (true, true) => 1.0 / 6.0,
                    _ if r == c => 1.0 / 18.0,
                    _ => 0.0,
                };
                assert!((rho.get(r, c) - want).abs() < 1e-15, "({r},{c})");
            }
        }
    }

    #[test]
    fn density_matrix_is_a_state() {
        let mut rng = StdRng::seed_from_u64(3);
        for d in 2..=5 {
            let s = random_state(&mut rng, d);
            let rho = s.density_matrix();
            assert!((rho.trace() - 1.0).abs() < 1e-12);
            assert!(sorted_spectrum(&rho)[0] >= -1e-10);
        }
    }

    #[test]
    fn reduced_state_examples() {
        let s =
            DepolarizedState::new(SchmidtVector::new(vec![0.6, 0.8, 0.0]).unwrap(), 0.0).unwrap();
        assert!(
            s.reduced_state()
                .max_abs_diff(&(&SymMatrix::identity(3) * (1.0 / 3.0)))
                < 1e-16
        );
        let s =
            DepolarizedState::new(SchmidtVector::new(vec![1.0, 0.0, 0.0]).unwrap(), 1.0).unwrap();
        assert_eq!(s.reduced_state(), SymMatrix::diag(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn reduced_state_matches_partial_trace() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let s = random_state(&mut rng, 4);
            let oracle = partial_trace_b(&s.density_matrix(), 4).unwrap();
            assert!(s.reduced_state().max_abs_diff(&oracle) < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_d3_state_by_direct_summation() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..20 {
            let s = random_state(&mut rng, 3);
            let rho = s.density_matrix();
            let got = partial_trace_b(&rho, 3).unwrap();
            let a = s.schmidt().coeffs();
            for (i, ai) in a.iter().enumerate() {
                for j in 0..3 {
                    let want = if i == j {
                        s.p() * ai * ai + (1.0 - s.p()) / 3.0
                    } else {
                        0.0
                    };
                    assert!((got.get(i, j) - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn partial_trace_of_maximally_entangled_pure_state() {
        let s = DepolarizedState::new(SchmidtVector::maximally_entangled(2).unwrap(), 1.0).unwrap();
        let r = partial_trace_b(&s.density_matrix(), 2).unwrap();
        assert!(r.max_abs_diff(&SymMatrix::diag(&[0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn rc_blocks_examples() {
        let s = DepolarizedState::new(SchmidtVector::new(vec![1.0, 0.0]).unwrap(), 1.0).unwrap();
        assert_eq!(s.rc_matrix_blocks(), SymMatrix::diag(&[0.0, 1.0, 0.0, 0.0]));

        let a = SchmidtVector::normalized(vec![0.3, -0.5, 0.7]).unwrap();
        let p = 0.37;
        let m = DepolarizedState::new(a.clone(), p)
            .unwrap()
            .rc_matrix_blocks();
        let c = a.coeffs();
        assert!((m.get(0, 4) + p * c[0] * c[1]).abs() < 1e-16);

        for d in 2..=5 {
            let s =
                DepolarizedState::new(SchmidtVector::maximally_entangled(d).unwrap(), 0.0).unwrap();
            let want = &SymMatrix::identity(d * d) * f_d(d, 0.0);
            assert_eq!(s.rc_matrix_blocks(), want);
            assert!(s.rc_matrix_direct().max_abs_diff(&want) < 1e-15);
        }
    }

    /// Entry-for-entry comparison with the explicit 9×9 layout.
    #[test]
    fn rc_blocks_match_explicit_nine_by_nine() {
        let a = SchmidtVector::normalized(vec![0.2, 0.9, -0.4]).unwrap();
        let p = 0.61;
        let [a1, a2, a3] = [a.coeffs()[0], a.coeffs()[1], a.coeffs()[2]];
        let (s1, s2, s3) = (a1 * a1, a2 * a2, a3 * a3);
        #[rustfmt::skip]
        let explicit = [
            0.0,      0.0, 0.0, 0.0, -a1 * a2, 0.0, 0.0, 0.0, -a1 * a3,
            0.0,      s1,  0.0, 0.0, 0.0,      0.0, 0.0, 0.0, 0.0,
            0.0,      0.0, s1,  0.0, 0.0,      0.0, 0.0, 0.0, 0.0,
            0.0,      0.0, 0.0, s2,  0.0,      0.0, 0.0, 0.0, 0.0,
            -a1 * a2, 0.0, 0.0, 0.0, 0.0,      0.0, 0.0, 0.0, -a2 * a3,
            0.0,      0.0, 0.0, 0.0, 0.0,      s2,  0.0, 0.0, 0.0,
            0.0,      0.0, 0.0, 0.0, 0.0,      0.0, s3,  0.0, 0.0,
            0.0,      0.0, 0.0, 0.0, 0.0,      0.0, 0.0, s3,  0.0,
            -a1 * a3, 0.0, 0.0, 0.0, -a2 * a3, 0.0, 0.0, 0.0, 0.0,
        ];
        let shift = 2.0 / 9.0 * (1.0 - p);
        let want = SymMatrix::from_fn(9, |i, j| {
            p * explicit[i * 9 + j] + if i == j { shift } else { 0.0 }
        })
        .unwrap();
        let got = DepolarizedState::new(a, p).unwrap().rc_matrix_blocks();
        assert!(got.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn rc_direct_matches_blocks() {
        let mut rng = StdRng::seed_from_u64(13);
        for trial in 0..200 {
            let d = 2 + trial % 5;
            let s = random_state(&mut rng, d);
            assert!(s.rc_matrix_direct().max_abs_diff(&s.rc_matrix_blocks()) < 1e-12);
        }
    }

    #[test]
    fn rc_trace_is_d_minus_one() {
        let mut rng = StdRng::seed_from_u64(17);
        for d in 2..=6 {
            let s = random_state(&mut rng, d);
            let rc = s.rc_matrix_blocks();
            assert!((rc.trace() - (d as f64 * s.reduced_state().trace() - 1.0)).abs() < 1e-10);
            assert!((rc.trace() - (d as f64 - 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn rc_two_qubit_threshold_point() {
        let s = DepolarizedState::new(SchmidtVector::maximally_entangled(2).unwrap(), 1.0 / 3.0)
            .unwrap();
        let min = sorted_spectrum(&s.rc_matrix_direct())[0];
        assert!(min.abs() < 1e-10, "{min}");
    }

    #[test]
    fn spectrum_invariant_under_permutation_and_sign_flips() {
        let mut rng = StdRng::seed_from_u64(19);
        for d in 2..=5 {
            let s = random_state(&mut rng, d);
            let base = sorted_spectrum(&s.rc_matrix_blocks());
            let mut a = s.schmidt().coeffs().to_vec();
            a.reverse();
            a.rotate_left(1);
            a[0] = -a[0];
            let moved = DepolarizedState::new(SchmidtVector::new(a).unwrap(), s.p()).unwrap();
            let other = sorted_spectrum(&moved.rc_matrix_blocks());
            for (x, y) in base.iter().zip(&other) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn state_file_round_trip() {
        let f = StateFile::from_json(r#"{"d": 3, "p": 0.3, "a": [1, 1, 1]}"#).unwrap();
        let s = f.state().unwrap();
        assert!((s.schmidt().coeffs()[0] - 3f64.sqrt().recip()).abs() < 1e-15);
        let written = StateFile::from_state(s.schmidt(), Some(s.p())).to_json();
        let back = StateFile::from_json(&written).unwrap().state().unwrap();
        for (x, y) in back.schmidt().coeffs().iter().zip(s.schmidt().coeffs()) {
            assert!((x - y).abs() <= 1e-15);
        }
        assert_eq!(back.p(), s.p());
    }

    #[test]
    fn state_file_errors() {
        let f = StateFile::from_json(r#"{"d": 2, "a": [1, 1, 1]}"#).unwrap();
        assert!(matches!(f.schmidt(), Err(Error::DimensionMismatch { .. })));
        let f = StateFile::from_json(r#"{"d": 2, "a": [1, 1]}"#).unwrap();
        assert!(matches!(f.state(), Err(Error::StateFormat(_))));
        assert!(matches!(
            StateFile::from_json("{\"d\": 2}"),
            Err(Error::StateFormat(_))
        ));
    }
}
