//! Pure N-qubit states.
//!
//! Amplitude index `i` encodes the basis ket whose qubit 0 is the most
//! significant bit of `i`. Every constructor and mutating operation leaves
//! the state normalized to within [`NORM_TOLERANCE`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::Path;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

/// Largest supported register size.
pub const MAX_QUBITS: usize = 12;

/// Norm deviation tolerated after any constructing or mutating operation.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Norm deviation tolerated when reading a state file.
pub const FILE_NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex>,
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::input(format!(
            "number of qubits must be in 1..={MAX_QUBITS}, got {n}"
        )));
    }
    Ok(())
}

fn norm_sqr(amps: &[Complex]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

impl PureState {
    /// Builds a state from raw amplitudes, normalizing them.
    ///
    /// Fails if the length is not `2^n` or the vector is (numerically) zero.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex>) -> Result<Self> {
        check_qubits(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::input(format!(
                "expected {} amplitudes for {} qubits, got {}",
                1usize << n_qubits,
                n_qubits,
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::input("amplitudes must be finite"));
        }
        let mut state = PureState {
            n_qubits,
            amplitudes,
        };
        state.normalize()?;
        Ok(state)
    }

    /// Like [`PureState::new`], but rejects input whose norm is off by more
    /// than `tolerance` instead of silently rescaling it.
    pub fn from_nearly_normalized(
        n_qubits: usize,
        amplitudes: Vec<Complex>,
        tolerance: f64,
    ) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if !((norm - 1.0).abs() <= tolerance) {
            return Err(Error::input(format!(
                "state norm {norm} deviates from 1 by more than {tolerance:e}"
            )));
        }
        Self::new(n_qubits, amplitudes)
    }

    fn normalize(&mut self) -> Result<()> {
        let norm = norm_sqr(&self.amplitudes).sqrt();
        if !(norm > 1e-150) || !norm.is_finite() {
            return Err(Error::input("cannot normalize a zero or non-finite vector"));
        }
        let inv = 1.0 / norm;
        for a in &mut self.amplitudes {
            *a *= inv;
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amplitudes).sqrt()
    }

    /// The basis state `|bits⟩`, with `bits[0]` the value of qubit 0.
    pub fn computational_basis_state(n: usize, bits: &str) -> Result<Self> {
        check_qubits(n)?;
        if bits.chars().count() != n {
            return Err(Error::input(format!(
                "bitstring {bits:?} has length {}, expected {n}",
                bits.chars().count()
            )));
        }
        let mut index = 0usize;
        for c in bits.chars() {
            index <<= 1;
            match c {
                '0' => {}
                '1' => index |= 1,
                other => {
                    return Err(Error::input(format!("invalid bit {other:?} in {bits:?}")))
                }
            }
        }
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 1 << n];
        amplitudes[index] = Complex::new(1.0, 0.0);
        Ok(PureState {
            n_qubits: n,
            amplitudes,
        })
    }

    /// `|0...0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex::new(1.0, 0.0);
        Ok(PureState {
            n_qubits: n,
            amplitudes,
        })
    }

    /// `(|0...0⟩ + |1...1⟩)/√2`.
    pub fn ghz(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::input(format!("GHZ needs at least 2 qubits, got {n}")));
        }
        check_qubits(n)?;
        let dim = 1usize << n;
        let mut amplitudes = vec![Complex::new(0.0, 0.0); dim];
        amplitudes[0] = Complex::new(FRAC_1_SQRT_2, 0.0);
        amplitudes[dim - 1] = Complex::new(FRAC_1_SQRT_2, 0.0);
        Ok(PureState {
            n_qubits: n,
            amplitudes,
        })
    }

    /// The 4-qubit Higuchi–Sudbery state
    ///
    /// `(|1100⟩ + |0011⟩ + ω(|1001⟩ + |0110⟩) + ω²(|1010⟩ + |0101⟩))/√6`
    ///
    /// with `ω = exp(2πi/3)`.
    pub fn hs4() -> Self {
        let omega = Complex::from_polar(1.0, 2.0 * PI / 3.0);
        let omega2 = omega * omega;
        let one = Complex::new(1.0, 0.0);
        let terms = [
            (0b1100, one),
            (0b0011, one),
            (0b1001, omega),
            (0b0110, omega),
            (0b1010, omega2),
            (0b0101, omega2),
        ];
        let scale = 1.0 / 6f64.sqrt();
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 16];
        for (index, coeff) in terms {
            amplitudes[index] = coeff * scale;
        }
        PureState {
            n_qubits: 4,
            amplitudes,
        }
    }

    /// `(|0000⟩ + |+011⟩ + |1101⟩ + |−110⟩)/2`, the `|±⟩` factor sitting on
    /// qubit 0.
    pub fn bssb4() -> Self {
        let half = 0.5;
        let q = 0.5 * FRAC_1_SQRT_2;
        let terms = [
            (0b0000, half),
            (0b0011, q),
            (0b1011, q),
            (0b1101, half),
            (0b0110, q),
            (0b1110, -q),
        ];
        let mut amplitudes = vec![Complex::new(0.0, 0.0); 16];
        for (index, coeff) in terms {
            amplitudes[index] = Complex::new(coeff, 0.0);
        }
        PureState {
            n_qubits: 4,
            amplitudes,
        }
    }

    /// A Haar-distributed random state: i.i.d. standard normal real and
    /// imaginary parts, normalized.
    pub fn random_haar<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n)?;
        loop {
            let amplitudes: Vec<Complex> = (0..1usize << n)
                .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            // A zero draw has probability zero; retry rather than fail.
            if let Ok(state) = PureState::new(n, amplitudes) {
                return Ok(state);
            }
        }
    }

    /// Adds complex Gaussian noise with standard deviation `sigma` per real
    /// component to every amplitude and renormalizes. `self` is unchanged.
    pub fn perturb<R: Rng + ?Sized>(&self, sigma: f64, rng: &mut R) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::input(format!("sigma must be positive, got {sigma}")));
        }
        loop {
            let amplitudes: Vec<Complex> = self
                .amplitudes
                .iter()
                .map(|a| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    a + Complex::new(sigma * re, sigma * im)
                })
                .collect();
            if let Ok(state) = PureState::new(self.n_qubits, amplitudes) {
                return Ok(state);
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Complex> {
        inner_product(self, other)
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &PureState) -> Result<f64> {
        Ok(inner_product(self, other)?.norm())
    }

    /// Applies a 2×2 unitary `u` (row-major) to `qubit`.
    pub fn apply_single_qubit(&self, qubit: usize, u: &[[Complex; 2]; 2]) -> Result<Self> {
        if qubit >= self.n_qubits {
            return Err(Error::input(format!(
                "qubit {qubit} out of range for {} qubits",
                self.n_qubits
            )));
        }
        let mask = 1usize << (self.n_qubits - 1 - qubit);
        let mut out = self.amplitudes.clone();
        for i in 0..self.dim() {
            if i & mask != 0 {
                continue;
            }
            let a0 = self.amplitudes[i];
            let a1 = self.amplitudes[i | mask];
            out[i] = u[0][0] * a0 + u[0][1] * a1;
            out[i | mask] = u[1][0] * a0 + u[1][1] * a1;
        }
        PureState::new(self.n_qubits, out)
    }

    /// Relabels qubits: qubit `q` of the result carries what qubit `perm[q]`
    /// carried in `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::input(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let mut out = vec![Complex::new(0.0, 0.0); self.dim()];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            let mut j = 0usize;
            for &src in perm {
                j = (j << 1) | ((i >> (n - 1 - src)) & 1);
            }
            out[j] = a;
        }
        Ok(PureState {
            n_qubits: n,
            amplitudes: out,
        })
    }

    pub fn to_file(&self) -> StateFile {
        StateFile {
            n: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("state serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        file.into_state()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// On-disk state format: `{ "n": 3, "amplitudes": [[re, im], ...] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn into_state(self) -> Result<PureState> {
        let amps = self
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex::new(re, im))
            .collect();
        PureState::from_nearly_normalized(self.n, amps, FILE_NORM_TOLERANCE)
    }
}

/// `⟨a|b⟩`, conjugating `a`.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::input(format!(
            "inner product of {}-qubit and {}-qubit states",
            a.n_qubits, b.n_qubits
        )));
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}
