//! Repetition encodings and the `R_n U R_n` codewords.
//!
//! `|0_RUR⟩ = 2^{-n/2} ⊗_b (|0…0⟩ + |1…1⟩)` and
//! `|1_RUR⟩ = 2^{-n/2} ⊗_b (|0…0⟩ − |1…1⟩)`, with `n` blocks of `n` qubits.
//! Codewords are built straight from that product formula; [`encode_staged`]
//! rebuilds them through the repetition / rotation / repetition circuit and is
//! kept as a cross-check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::statevec::{
    Backend, FactoredState, Matrix2, PureState, Register, DENSE_HARD_MAX_N, DENSE_MAX_N,
    FACTORED_MAX_N,
};

const LOGICAL_NORM_TOL: f64 = 1e-12;

/// The protected qubit `α|0⟩ + β|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogicalQubit {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl LogicalQubit {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n2 = alpha.norm_sqr() + beta.norm_sqr();
        if !n2.is_finite() || (n2 - 1.0).abs() > LOGICAL_NORM_TOL {
            return arg(format!("logical qubit norm² is {n2}, expected 1"));
        }
        Ok(LogicalQubit { alpha, beta })
    }

    /// Rescales `(alpha, beta)` to unit norm.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n2 = alpha.norm_sqr() + beta.norm_sqr();
        if !(n2.is_finite() && n2 > 0.0) {
            return arg("cannot normalize a zero logical qubit");
        }
        let s = n2.sqrt();
        Ok(LogicalQubit { alpha: alpha / s, beta: beta / s })
    }

    pub fn zero() -> Self {
        LogicalQubit { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    pub fn one() -> Self {
        LogicalQubit { alpha: Complex64::new(0.0, 0.0), beta: Complex64::new(1.0, 0.0) }
    }

    /// `(|0⟩ + |1⟩)/√2`, the default sweep input.
    pub fn plus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        LogicalQubit { alpha: h, beta: h }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &LogicalQubit) -> Complex64 {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }

    /// `1 − |⟨self|other⟩|²`, clamped to `[0, 1]`.
    pub fn infidelity(&self, other: &LogicalQubit) -> f64 {
        (1.0 - self.inner(other).norm_sqr()).clamp(0.0, 1.0)
    }
}

impl Default for LogicalQubit {
    fn default() -> Self {
        Self::plus()
    }
}

/// Block size `n` of an `R_n U R_n` code, plus the dense-backend limit in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    n: usize,
    dense_limit: usize,
}

impl CodeParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return arg(format!("block size n must be at least 2, got {n}"));
        }
        if n > FACTORED_MAX_N {
            return Err(Error::Resource(format!(
                "block size n={n} exceeds the factored backend limit {FACTORED_MAX_N}"
            )));
        }
        Ok(CodeParams { n, dense_limit: DENSE_MAX_N })
    }

    /// Raises or lowers the dense-backend limit (at most `DENSE_HARD_MAX_N`).
    pub fn with_dense_limit(mut self, limit: usize) -> Result<Self> {
        if limit > DENSE_HARD_MAX_N {
            return Err(Error::Resource(format!(
                "dense limit {limit} exceeds the hard ceiling {DENSE_HARD_MAX_N}"
            )));
        }
        self.dense_limit = limit;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_qubits(&self) -> usize {
        self.n * self.n
    }

    pub fn dense_limit(&self) -> usize {
        self.dense_limit
    }

    /// Bit mask of one block's qubits, before shifting.
    pub fn block_mask(&self) -> usize {
        (1usize << self.n) - 1
    }

    pub fn require_dense(&self) -> Result<()> {
        if self.n > self.dense_limit {
            return Err(Error::Resource(format!(
                "n={} needs 2^{} amplitudes; dense backend is limited to n ≤ {}",
                self.n,
                self.num_qubits(),
                self.dense_limit
            )));
        }
        Ok(())
    }

    pub fn require_backend(&self, backend: Backend) -> Result<()> {
        match backend {
            Backend::Dense => self.require_dense(),
            Backend::Factored => Ok(()),
        }
    }
}

/// Basis states in the support of both codewords.
///
/// Yields `(index, ones)` for each of the `2^n` choices of all-zeros or
/// all-ones per block; `ones` counts the all-ones blocks and fixes the sign of
/// the `|1_RUR⟩` amplitude, `(−1)^ones`.
pub fn codeword_support(params: &CodeParams) -> impl Iterator<Item = (usize, u32)> + '_ {
    let n = params.n;
    let mask = params.block_mask();
    (0..1usize << n).map(move |choice| {
        let index = (0..n)
            .filter(|b| choice >> b & 1 == 1)
            .fold(0usize, |acc, b| acc | mask << (b * n));
        (index, choice.count_ones())
    })
}

/// `|0_RUR⟩` (bit 0) or `|1_RUR⟩` (bit 1) as a dense state.
pub fn codeword_rur(bit: u8, params: &CodeParams) -> Result<PureState> {
    match bit {
        0 => encode_dense(&LogicalQubit::zero(), params),
        1 => encode_dense(&LogicalQubit::one(), params),
        other => arg(format!("codeword bit must be 0 or 1, got {other}")),
    }
}

pub fn encode_dense(q: &LogicalQubit, params: &CodeParams) -> Result<PureState> {
    params.require_dense()?;
    let scale = 0.5f64.powf(params.n as f64 / 2.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << params.num_qubits()];
    for (index, ones) in codeword_support(params) {
        let sign = if ones % 2 == 0 { 1.0 } else { -1.0 };
        amps[index] = (q.alpha + q.beta * sign) * scale;
    }
    PureState::from_amplitudes(amps)
}

/// `(|0…0⟩ ± |1…1⟩)/√2` on one block of `n` qubits.
pub fn block_vector(n: usize, minus: bool) -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![Complex64::new(0.0, 0.0); 1usize << n];
    v[0] = Complex64::new(h, 0.0);
    let last = v.len() - 1;
    v[last] = Complex64::new(if minus { -h } else { h }, 0.0);
    v
}

pub fn encode_factored(q: &LogicalQubit, params: &CodeParams) -> Result<FactoredState> {
    let n = params.n;
    let plus = vec![block_vector(n, false); n];
    let minus = vec![block_vector(n, true); n];
    FactoredState::new(n, [q.alpha, q.beta], [plus, minus])
}

/// `α|0_RUR⟩ + β|1_RUR⟩` on the requested backend.
pub fn encode(q: &LogicalQubit, params: &CodeParams, backend: Backend) -> Result<Register> {
    match backend {
        Backend::Dense => encode_dense(q, params).map(Register::Dense),
        Backend::Factored => encode_factored(q, params).map(Register::Factored),
    }
}

/// `α|0…0⟩ + β|1…1⟩` on `n` qubits.
pub fn encode_repetition(q: &LogicalQubit, n: usize) -> Result<PureState> {
    if n == 0 {
        return arg("repetition length must be at least 1");
    }
    if n > PureState::MAX_QUBITS {
        return Err(Error::Resource(format!("repetition length {n} too large for a dense state")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
    amps[0] = q.alpha;
    amps[(1usize << n) - 1] = q.beta;
    PureState::from_amplitudes(amps)
}

/// Builds the encoding as an explicit three-stage circuit: repeat the logical
/// qubit onto `n` carriers, rotate each carrier to the x basis, then repeat
/// each carrier across its block.
pub fn encode_staged(q: &LogicalQubit, params: &CodeParams) -> Result<PureState> {
    params.require_dense()?;
    let n = params.n;
    let mut outer = encode_repetition(q, n)?;
    let h = Matrix2::hadamard();
    for carrier in 0..n {
        outer.apply_1q(&h, carrier)?;
    }
    // Fan-out isometry: carrier bit b → all n qubits of block b.
    let mask = params.block_mask();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << params.num_qubits()];
    for (word, &amp) in outer.amplitudes().iter().enumerate() {
        let index = (0..n)
            .filter(|b| word >> b & 1 == 1)
            .fold(0usize, |acc, b| acc | mask << (b * n));
        amps[index] = amp;
    }
    PureState::from_amplitudes(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::inner;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Builds `(1/√8)(|000⟩ ± |111⟩)^⊗3` by listing its eight basis words.
    fn shor_line(minus: bool) -> Vec<Complex64> {
        let mut v = vec![c(0.0, 0.0); 512];
        let words = [0usize, 0b111];
        for &a in &words {
            for &b in &words {
                for &d in &words {
                    let idx = a | b << 3 | d << 6;
                    let flips = [a, b, d].iter().filter(|&&w| w != 0).count();
                    let sign = if minus && flips % 2 == 1 { -1.0 } else { 1.0 };
                    v[idx] = c(sign / 8f64.sqrt(), 0.0);
                }
            }
        }
        v
    }

    fn assert_amps_close(a: &[Complex64], b: &[Complex64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (i, (x, y)) in a.iter().zip(b).enumerate() {
            assert!((x - y).norm() < tol, "index {i}: {x} vs {y}");
        }
    }

    #[test]
    fn n3_codewords_match_nine_qubit_lines() {
        let p = CodeParams::new(3).unwrap();
        assert_amps_close(codeword_rur(0, &p).unwrap().amplitudes(), &shor_line(false), 1e-15);
        assert_amps_close(codeword_rur(1, &p).unwrap().amplitudes(), &shor_line(true), 1e-15);
    }

    #[test]
    fn codewords_are_orthogonal() {
        for n in 2..=4 {
            let p = CodeParams::new(n).unwrap();
            let z = codeword_rur(0, &p).unwrap();
            let o = codeword_rur(1, &p).unwrap();
            assert!(inner(&z, &o).unwrap().norm() < 1e-15);
        }
        assert!(codeword_rur(2, &CodeParams::new(2).unwrap()).is_err());
    }

    #[test]
    fn n2_encoding_has_four_nonzero_entries() {
        let p = CodeParams::new(2).unwrap();
        let q = LogicalQubit::normalized(c(0.6, 0.1), c(-0.3, 0.7)).unwrap();
        let s = encode_dense(&q, &p).unwrap();
        let amps = s.amplitudes();
        let expected = [
            (0b0000, q.alpha + q.beta),
            (0b0011, q.alpha - q.beta),
            (0b1100, q.alpha - q.beta),
            (0b1111, q.alpha + q.beta),
        ];
        let nonzero = amps.iter().filter(|a| a.norm() > 0.0).count();
        assert_eq!(nonzero, 4);
        for (idx, v) in expected {
            assert!((amps[idx] - v / 2.0).norm() < 1e-15);
        }
    }

    #[test]
    fn basis_inputs_give_codewords() {
        let p = CodeParams::new(2).unwrap();
        let e0 = encode(&LogicalQubit::zero(), &p, Backend::Dense).unwrap();
        assert_eq!(e0.as_dense().unwrap(), &codeword_rur(0, &p).unwrap());
        let staged = encode_staged(&LogicalQubit::one(), &p).unwrap();
        let c1 = codeword_rur(1, &p).unwrap();
        assert!((staged.overlap(&c1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn staged_n3_matches_nine_qubit_line() {
        let p = CodeParams::new(3).unwrap();
        let s = encode_staged(&LogicalQubit::zero(), &p).unwrap();
        assert_amps_close(s.amplitudes(), &shor_line(false), 1e-15);
    }

    #[test]
    fn factored_expands_to_dense_encoding() {
        let p = CodeParams::new(3).unwrap();
        let f = encode_factored(&LogicalQubit::zero(), &p).unwrap();
        assert_amps_close(f.expand().unwrap().amplitudes(), &shor_line(false), 1e-15);
        let f = encode_factored(&LogicalQubit::one(), &p).unwrap();
        assert_amps_close(f.expand().unwrap().amplitudes(), &shor_line(true), 1e-15);
    }

    #[test]
    fn repetition_examples() {
        let s = encode_repetition(&LogicalQubit::zero(), 3).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
        let s = encode_repetition(&LogicalQubit::one(), 3).unwrap();
        assert_eq!(s.amplitudes()[7], c(1.0, 0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let q = LogicalQubit::new(c(h, 0.0), c(-h, 0.0)).unwrap();
        let s = encode_repetition(&q, 2).unwrap();
        assert_eq!(s.amplitudes(), &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-h, 0.0)]);
        assert!(encode_repetition(&q, 0).is_err());
    }

    #[test]
    fn dense_limit_enforced() {
        let p = CodeParams::new(5).unwrap();
        assert!(matches!(encode_dense(&LogicalQubit::zero(), &p), Err(Error::Resource(_))));
        assert!(encode_factored(&LogicalQubit::zero(), &p).is_ok());
        assert!(matches!(CodeParams::new(17), Err(Error::Resource(_))));
        assert!(matches!(CodeParams::new(1), Err(Error::Argument(_))));
        assert!(p.with_dense_limit(6).is_err());
    }

    #[test]
    fn logical_qubit_validation() {
        assert!(LogicalQubit::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        let q = LogicalQubit::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        assert!(q.infidelity(&q) < 1e-15);
        assert!((LogicalQubit::zero().infidelity(&LogicalQubit::one()) - 1.0).abs() < 1e-15);
    }

    /// Expands both codewords in the x basis (H on every qubit) and returns the
    /// basis words carrying weight in each.
    fn x_basis_words(bit: u8, params: &CodeParams) -> Vec<usize> {
        let mut s = codeword_rur(bit, params).unwrap();
        for q in 0..params.num_qubits() {
            s.apply_1q(&Matrix2::hadamard(), q).unwrap();
        }
        s.amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-12)
            .map(|(i, _)| i)
            .collect()
    }

    #[test]
    fn x_basis_words_differ_in_at_least_n_positions() {
        for n in 2..=3 {
            let p = CodeParams::new(n).unwrap();
            let zeros = x_basis_words(0, &p);
            let ones = x_basis_words(1, &p);
            let min = zeros
                .iter()
                .flat_map(|a| ones.iter().map(move |b| (a ^ b).count_ones()))
                .min()
                .unwrap();
            assert!(min as usize >= n, "n={n}: min distance {min}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn staged_matches_direct(n in 2usize..=3, ar in -1.0f64..1.0, ai in -1.0f64..1.0,
                                 br in -1.0f64..1.0, bi in -1.0f64..1.0) {
            prop_assume!(ar * ar + ai * ai + br * br + bi * bi > 1e-6);
            let q = LogicalQubit::normalized(c(ar, ai), c(br, bi)).unwrap();
            let p = CodeParams::new(n).unwrap();
            let direct = encode_dense(&q, &p).unwrap();
            let staged = encode_staged(&q, &p).unwrap();
            prop_assert!((direct.overlap(&staged).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
