//! State-vector engine with two interchangeable backends.
//!
//! [`PureState`] stores all `2^N` amplitudes. [`FactoredState`] stores a
//! weighted sum of two across-block products, `c₀ ⊗_b v₀⁽ᵇ⁾ + c₁ ⊗_b v₁⁽ᵇ⁾`,
//! which is exact for encoded states evolved under single-qubit unitaries and
//! needs only `2·n·2^n` amplitudes.
//!
//! Basis indexing is little-endian: qubit `q` contributes `2^q` to the basis
//! index. Qubits are numbered block-major, `q = block·n + position`, so block
//! `b` occupies bits `b·n .. (b+1)·n` of the index.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};

/// Default largest block size `n` for the dense backend (16 qubits).
pub const DENSE_MAX_N: usize = 4;
/// Hard ceiling for a configured dense limit (25 qubits, 512 MiB of amplitudes).
pub const DENSE_HARD_MAX_N: usize = 5;
/// Largest block size `n` for the factored backend.
pub const FACTORED_MAX_N: usize = 16;

const NORM_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Dense,
    Factored,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Backend::Dense),
            "factored" => Ok(Backend::Factored),
            other => arg(format!("unknown backend `{other}` (expected dense|factored)")),
        }
    }
}

/// A 2×2 complex matrix acting on one qubit, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, ONE]]);
    pub const X: Matrix2 = Matrix2([[ZERO, ONE], [ONE, ZERO]]);
    pub const Y: Matrix2 = Matrix2([
        [ZERO, Complex64 { re: 0.0, im: -1.0 }],
        [Complex64 { re: 0.0, im: 1.0 }, ZERO],
    ]);
    pub const Z: Matrix2 = Matrix2([[ONE, ZERO], [ZERO, Complex64 { re: -1.0, im: 0.0 }]]);

    /// The basis rotation |0⟩ → (|0⟩+|1⟩)/√2, |1⟩ → (|0⟩−|1⟩)/√2.
    pub fn hadamard() -> Matrix2 {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Matrix2([[h, h], [h, -h]])
    }

    pub fn adjoint(&self) -> Matrix2 {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }

    /// Largest entry-wise deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((p.0[i][j] - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    #[inline]
    fn act(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0][0] * a0 + m[0][1] * a1, m[1][0] * a0 + m[1][1] * a1)
    }
}

/// Apply `m` to qubit `qubit` of a little-endian amplitude slice.
fn apply_to_slice(amps: &mut [Complex64], m: &Matrix2, qubit: usize) {
    let stride = 1usize << qubit;
    let len = amps.len();
    let mut base = 0;
    while base < len {
        for i in base..base + stride {
            let (a0, a1) = m.act(amps[i], amps[i + stride]);
            amps[i] = a0;
            amps[i + stride] = a1;
        }
        base += stride << 1;
    }
}

fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A normalized pure state on `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Largest register the dense engine will allocate.
    pub const MAX_QUBITS: usize = DENSE_HARD_MAX_N * DENSE_HARD_MAX_N;

    /// The computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        Self::check_size(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return arg(format!("basis index {index} out of range for {num_qubits} qubits"));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(PureState { num_qubits, amps })
    }

    /// Wraps an amplitude vector, which must already be normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let num_qubits = Self::qubits_for_len(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return arg("amplitudes must be finite");
        }
        let n2 = norm_sqr(&amps);
        if (n2 - 1.0).abs() > NORM_TOL {
            return arg(format!("state norm² is {n2}, expected 1"));
        }
        Ok(PureState { num_qubits, amps })
    }

    /// Wraps an amplitude vector and rescales it to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        Self::qubits_for_len(amps.len())?;
        let n2 = norm_sqr(&amps);
        if !(n2.is_finite() && n2 > 0.0) {
            return arg("cannot normalize a zero or non-finite vector");
        }
        let scale = 1.0 / n2.sqrt();
        amps.iter_mut().for_each(|a| *a *= scale);
        Self::from_amplitudes(amps)
    }

    fn check_size(num_qubits: usize) -> Result<()> {
        if num_qubits > Self::MAX_QUBITS {
            return Err(Error::Resource(format!(
                "{num_qubits} qubits exceeds the dense engine ceiling of {}",
                Self::MAX_QUBITS
            )));
        }
        Ok(())
    }

    fn qubits_for_len(len: usize) -> Result<usize> {
        if len == 0 || !len.is_power_of_two() {
            return arg(format!("amplitude count {len} is not a power of two"));
        }
        let n = len.trailing_zeros() as usize;
        Self::check_size(n)?;
        Ok(n)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps)
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Applies a single-qubit matrix in place.
    pub fn apply_1q(&mut self, u: &Matrix2, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return arg(format!(
                "qubit {qubit} out of range for a {}-qubit state",
                self.num_qubits
            ));
        }
        apply_to_slice(&mut self.amps, u, qubit);
        Ok(())
    }

    /// Functional form of [`PureState::apply_1q`].
    pub fn with_1q(mut self, u: &Matrix2, qubit: usize) -> Result<Self> {
        self.apply_1q(u, qubit)?;
        Ok(self)
    }

    /// `|⟨self|other⟩|`, the overlap modulo global phase.
    pub fn overlap(&self, other: &PureState) -> Result<f64> {
        inner(self, other).map(|z| z.norm())
    }
}

/// `⟨a|b⟩`.
pub fn inner(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.num_qubits != b.num_qubits {
        return arg(format!(
            "inner product of {}-qubit and {}-qubit states",
            a.num_qubits, b.num_qubits
        ));
    }
    Ok(dot(&a.amps, &b.amps))
}

/// `c₀ ⊗_b v₀⁽ᵇ⁾ + c₁ ⊗_b v₁⁽ᵇ⁾` over `n` blocks of `n` qubits.
///
/// Block vectors are kept at unit norm and the magnitude lives in the
/// coefficients. Single-qubit unitaries act on the same block of both terms,
/// so the two terms stay mutually orthogonal whenever they start that way.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredState {
    n: usize,
    coeffs: [Complex64; 2],
    blocks: [Vec<Vec<Complex64>>; 2],
}

impl FactoredState {
    pub fn new(n: usize, coeffs: [Complex64; 2], blocks: [Vec<Vec<Complex64>>; 2]) -> Result<Self> {
        if n == 0 || n > FACTORED_MAX_N {
            return Err(Error::Resource(format!(
                "block size {n} outside the factored backend range 1..={FACTORED_MAX_N}"
            )));
        }
        let dim = 1usize << n;
        for term in &blocks {
            if term.len() != n {
                return arg(format!("expected {n} block vectors per term, got {}", term.len()));
            }
            for v in term {
                if v.len() != dim {
                    return arg(format!("block vector has {} amplitudes, expected {dim}", v.len()));
                }
                if v.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
                    return arg("block amplitudes must be finite");
                }
                let n2 = norm_sqr(v);
                if (n2 - 1.0).abs() > NORM_TOL {
                    return arg(format!("block vector norm² is {n2}, expected 1"));
                }
            }
        }
        let state = FactoredState { n, coeffs, blocks };
        let total = state.norm_sqr();
        if (total - 1.0).abs() > NORM_TOL {
            return arg(format!("factored state norm² is {total}, expected 1"));
        }
        Ok(state)
    }

    pub fn block_size(&self) -> usize {
        self.n
    }

    pub fn num_qubits(&self) -> usize {
        self.n * self.n
    }

    pub fn coeffs(&self) -> [Complex64; 2] {
        self.coeffs
    }

    /// Block vector `block` of product term `term`.
    pub fn block(&self, term: usize, block: usize) -> &[Complex64] {
        &self.blocks[term][block]
    }

    /// `Π_b ⟨v_k⁽ᵇ⁾|v_l⁽ᵇ⁾⟩`.
    fn term_overlap(&self, k: usize, l: usize) -> Complex64 {
        self.blocks[k]
            .iter()
            .zip(&self.blocks[l])
            .map(|(a, b)| dot(a, b))
            .product()
    }

    /// Squared norm of the dense expansion, computed without expanding.
    pub fn norm_sqr(&self) -> f64 {
        let [c0, c1] = self.coeffs;
        let cross = c0.conj() * c1 * self.term_overlap(0, 1);
        c0.norm_sqr() + c1.norm_sqr() + 2.0 * cross.re
    }

    /// Applies `u` to qubit `position` of block `block` in both product terms.
    pub fn apply_1q(&mut self, u: &Matrix2, block: usize, position: usize) -> Result<()> {
        if block >= self.n || position >= self.n {
            return arg(format!(
                "block {block}, position {position} out of range for block size {}",
                self.n
            ));
        }
        for term in &mut self.blocks {
            apply_to_slice(&mut term[block], u, position);
        }
        Ok(())
    }

    /// Applies `u` to the block-major global qubit index `qubit`.
    pub fn apply_1q_global(&mut self, u: &Matrix2, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits() {
            return arg(format!(
                "qubit {qubit} out of range for a {}-qubit state",
                self.num_qubits()
            ));
        }
        self.apply_1q(u, qubit / self.n, qubit % self.n)
    }

    /// Dense expansion, refused above `max_n`.
    pub fn expand_with_limit(&self, max_n: usize) -> Result<PureState> {
        if self.n > max_n.min(DENSE_HARD_MAX_N) {
            return Err(Error::Resource(format!(
                "cannot expand block size {} densely (limit {})",
                self.n,
                max_n.min(DENSE_HARD_MAX_N)
            )));
        }
        let mut total = vec![ZERO; 1usize << self.num_qubits()];
        for (term, &c) in self.blocks.iter().zip(&self.coeffs) {
            // Block 0 is least significant, so each new block is the high factor.
            let mut acc = vec![c];
            for v in term {
                let mut next = Vec::with_capacity(acc.len() * v.len());
                for &hi in v {
                    next.extend(acc.iter().map(|&lo| hi * lo));
                }
                acc = next;
            }
            total.iter_mut().zip(acc).for_each(|(t, a)| *t += a);
        }
        PureState::normalized(total)
    }

    pub fn expand(&self) -> Result<PureState> {
        self.expand_with_limit(DENSE_MAX_N)
    }
}

/// A register held by either backend.
#[derive(Debug, Clone, PartialEq)]
pub enum Register {
    Dense(PureState),
    Factored(FactoredState),
}

impl Register {
    pub fn backend(&self) -> Backend {
        match self {
            Register::Dense(_) => Backend::Dense,
            Register::Factored(_) => Backend::Factored,
        }
    }

    pub fn num_qubits(&self) -> usize {
        match self {
            Register::Dense(s) => s.num_qubits(),
            Register::Factored(s) => s.num_qubits(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match self {
            Register::Dense(s) => s.norm_sqr(),
            Register::Factored(s) => s.norm_sqr(),
        }
    }

    pub fn apply_1q(&mut self, u: &Matrix2, qubit: usize) -> Result<()> {
        match self {
            Register::Dense(s) => s.apply_1q(u, qubit),
            Register::Factored(s) => s.apply_1q_global(u, qubit),
        }
    }

    /// Dense view of the register; expands factored states up to `max_n`.
    pub fn to_dense(&self, max_n: usize) -> Result<PureState> {
        match self {
            Register::Dense(s) => Ok(s.clone()),
            Register::Factored(s) => s.expand_with_limit(max_n),
        }
    }

    pub fn as_dense(&self) -> Option<&PureState> {
        match self {
            Register::Dense(s) => Some(s),
            Register::Factored(_) => None,
        }
    }

    pub fn as_factored(&self) -> Option<&FactoredState> {
        match self {
            Register::Factored(s) => Some(s),
            Register::Dense(_) => None,
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_amps<R: Rng>(len: usize, rng: &mut R) -> Vec<Complex64> {
        (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    pub(crate) fn random_state<R: Rng>(num_qubits: usize, rng: &mut R) -> PureState {
        PureState::normalized(random_amps(1 << num_qubits, rng)).unwrap()
    }

    /// Random 2×2 unitary from the general U(2) parameterization.
    pub(crate) fn random_unitary<R: Rng>(rng: &mut R) -> Matrix2 {
        use std::f64::consts::PI;
        let t: f64 = rng.gen_range(0.0..PI / 2.0);
        let (a, b, g, d): (f64, f64, f64, f64) = (
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..2.0 * PI),
        );
        let e = |x: f64| Complex64::from_polar(1.0, x);
        Matrix2([
            [e(a) * t.cos(), e(b) * t.sin()],
            [-e(g + d - b) * t.sin(), e(g + d - a) * t.cos()],
        ])
    }

    fn random_block<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
        let v = random_amps(1 << n, rng);
        let s = norm_sqr(&v).sqrt();
        v.into_iter().map(|a| a / s).collect()
    }

    /// Two product terms with orthogonal first blocks, so the total norm is exact.
    pub(crate) fn random_factored<R: Rng>(n: usize, rng: &mut R) -> FactoredState {
        let mut t0: Vec<_> = (0..n).map(|_| random_block(n, rng)).collect();
        let t1: Vec<_> = (0..n).map(|_| random_block(n, rng)).collect();
        // Gram-Schmidt block 0 of term 0 against block 0 of term 1.
        let proj = dot(&t1[0], &t0[0]);
        let mut v: Vec<Complex64> = t0[0].iter().zip(&t1[0]).map(|(a, b)| a - proj * b).collect();
        let s = norm_sqr(&v).sqrt();
        v.iter_mut().for_each(|a| *a /= s);
        t0[0] = v;
        let c = random_amps(2, rng);
        let s = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt();
        FactoredState::new(n, [c[0] / s, c[1] / s], [t0, t1]).unwrap()
    }

    fn naive_apply(state: &PureState, u: &Matrix2, q: usize) -> Vec<Complex64> {
        // Oracle: out[i] = Σ_j <bit_q(i)|u|bit_q(j)> ψ[j] over j differing from i only at q.
        let amps = state.amplitudes();
        (0..amps.len())
            .map(|i| {
                let bi = (i >> q) & 1;
                let j0 = i & !(1 << q);
                let j1 = i | (1 << q);
                u.0[bi][0] * amps[j0] + u.0[bi][1] * amps[j1]
            })
            .collect()
    }

    #[test]
    fn identity_is_noop() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_state(3, &mut rng);
        let t = s.clone().with_1q(&Matrix2::IDENTITY, 2).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn x_flips_single_qubit() {
        let s = PureState::basis(1, 0).unwrap().with_1q(&Matrix2::X, 0).unwrap();
        let one = PureState::basis(1, 1).unwrap();
        assert!((s.overlap(&one).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn apply_matches_naive_matrix_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_state(4, &mut rng);
        for q in 0..4 {
            let u = random_unitary(&mut rng);
            let expect = naive_apply(&s, &u, q);
            let got = s.clone().with_1q(&u, q).unwrap();
            for (a, b) in got.amplitudes().iter().zip(&expect) {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn random_unitary_preserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_state(3, &mut rng);
        let u = random_unitary(&mut rng);
        assert!(u.is_unitary(1e-12));
        let t = s.with_1q(&u, 1).unwrap();
        assert!((t.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qubit_out_of_range() {
        let mut s = PureState::basis(2, 0).unwrap();
        assert!(matches!(s.apply_1q(&Matrix2::X, 2), Err(Error::Argument(_))));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut f = random_factored(2, &mut rng);
        assert!(matches!(f.apply_1q(&Matrix2::X, 2, 0), Err(Error::Argument(_))));
        assert!(matches!(f.apply_1q(&Matrix2::X, 0, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn inner_basics() {
        let a = PureState::basis(2, 0).unwrap();
        let b = PureState::basis(2, 3).unwrap();
        assert_eq!(inner(&a, &b).unwrap(), ZERO);
        assert!((inner(&a, &a).unwrap() - ONE).norm() < 1e-15);
        let c = PureState::basis(3, 0).unwrap();
        assert!(matches!(inner(&a, &c), Err(Error::Argument(_))));
    }

    #[test]
    fn rejects_bad_amplitudes() {
        assert!(PureState::from_amplitudes(vec![ONE, ONE]).is_err());
        assert!(PureState::from_amplitudes(vec![ONE, ZERO, ZERO]).is_err());
        assert!(PureState::from_amplitudes(vec![Complex64::new(f64::NAN, 0.0), ZERO]).is_err());
        assert!(PureState::normalized(vec![ZERO, ZERO]).is_err());
    }

    #[test]
    fn factored_identity_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_factored(2, &mut rng);
        let mut g = f.clone();
        g.apply_1q(&Matrix2::IDENTITY, 1, 1).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn factored_single_unitary_matches_dense_n2() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_factored(2, &mut rng);
        let u = random_unitary(&mut rng);
        let mut g = f.clone();
        g.apply_1q(&u, 1, 0).unwrap();
        let dense = f.expand().unwrap().with_1q(&u, 2).unwrap();
        let got = g.expand().unwrap();
        for (a, b) in got.amplitudes().iter().zip(dense.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn factored_nine_unitaries_match_dense_n3() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_factored(3, &mut rng);
        let mut g = f.clone();
        let mut dense = f.expand().unwrap();
        for q in 0..9 {
            let u = random_unitary(&mut rng);
            g.apply_1q_global(&u, q).unwrap();
            dense.apply_1q(&u, q).unwrap();
        }
        let got = g.expand().unwrap();
        for (a, b) in got.amplitudes().iter().zip(dense.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn factored_expansion_is_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = random_factored(2, &mut rng);
        assert!((f.norm_sqr() - 1.0).abs() < 1e-12);
        let d = f.expand().unwrap();
        assert!((d.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expand_refuses_large_blocks() {
        let n = 5;
        let mut plus = vec![ZERO; 1 << n];
        plus[0] = ONE;
        let blocks = vec![plus; n];
        let f = FactoredState::new(n, [ONE, ZERO], [blocks.clone(), blocks]).unwrap();
        assert!(matches!(f.expand(), Err(Error::Resource(_))));
        assert!(FactoredState::new(17, [ONE, ZERO], [vec![], vec![]]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn unitary_sequences_preserve_norm(seed in any::<u64>(), steps in 1usize..40) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = random_state(4, &mut rng);
            for _ in 0..steps {
                let u = random_unitary(&mut rng);
                let q = rng.gen_range(0..4);
                s.apply_1q(&u, q).unwrap();
            }
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn backends_agree_on_random_sequences(seed in any::<u64>(), n in 2usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f0 = random_factored(n, &mut rng);
            let mut f = f0.clone();
            let mut d = f0.expand().unwrap();
            for _ in 0..12 {
                let u = random_unitary(&mut rng);
                let q = rng.gen_range(0..n * n);
                f.apply_1q_global(&u, q).unwrap();
                d.apply_1q(&u, q).unwrap();
            }
            let ov = f.expand().unwrap().overlap(&d).unwrap();
            prop_assert!((ov - 1.0).abs() < 1e-10);
        }

        #[test]
        fn inner_is_conjugate_symmetric_and_linear(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_state(3, &mut rng);
            let b = random_state(3, &mut rng);
            let c = random_state(3, &mut rng);
            let ab = inner(&a, &b).unwrap();
            let ba = inner(&b, &a).unwrap();
            prop_assert!((ab - ba.conj()).norm() < 1e-14);
            // ⟨a| (x b + y c)⟩ = x⟨a|b⟩ + y⟨a|c⟩, checked on raw amplitude vectors.
            let (x, y) = (Complex64::new(0.3, -1.2), Complex64::new(-0.7, 0.4));
            let mix: Vec<Complex64> = b.amplitudes().iter().zip(c.amplitudes())
                .map(|(p, q)| x * p + y * q).collect();
            let lhs = dot(a.amplitudes(), &mix);
            let rhs = x * ab + y * inner(&a, &c).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-13);
        }
    }
}
