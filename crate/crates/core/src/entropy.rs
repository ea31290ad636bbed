//! Reduced density matrices and their entropies.

use crate::error::{Error, Result};
use crate::partitions::Bipartition;
use crate::qstate::PureState;
use crate::Complex;

/// Tolerance on `|ρ_ij − conj(ρ_ji)|` for a matrix to count as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Tolerance on `Tr ρ = 1`.
pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Eigenvalues in `[-NEGATIVE_EIGENVALUE_TOLERANCE, 0)` are clamped to zero.
pub const NEGATIVE_EIGENVALUE_TOLERANCE: f64 = 1e-10;
/// Eigenvalues below this contribute nothing to `-λ log λ`.
pub const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-12;

const JACOBI_OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// A `2^m × 2^m` density matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl DensityMatrix {
    /// Checks the Hermitian, unit-trace and power-of-two-dimension
    /// invariants. Positivity is checked lazily by the entropy functions.
    pub fn new(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::input(format!(
                "density matrix dimension must be a power of two ≥ 2, got {dim}"
            )));
        }
        if entries.len() != dim * dim {
            return Err(Error::input(format!(
                "expected {} entries for a {dim}×{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        check_hermitian(dim, &entries)?;
        let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::input(format!("trace {trace} is not 1")));
        }
        Ok(DensityMatrix { dim, entries })
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let mut entries = vec![Complex::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex::new(1.0 / dim as f64, 0.0);
        }
        Self::new(dim, entries)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(state: &PureState) -> Self {
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in amps {
            for b in amps {
                entries.push(a * b.conj());
            }
        }
        DensityMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits `m` with `dim = 2^m`.
    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    /// `U ρ U†` for a `dim × dim` row-major `u`. No unitarity check.
    pub fn conjugate_by(&self, u: &[Complex]) -> Result<Self> {
        let d = self.dim;
        if u.len() != d * d {
            return Err(Error::input("unitary has the wrong shape"));
        }
        let mut tmp = vec![Complex::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                tmp[i * d + j] = (0..d).map(|k| u[i * d + k] * self.entries[k * d + j]).sum();
            }
        }
        let mut out = vec![Complex::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).map(|k| tmp[i * d + k] * u[j * d + k].conj()).sum();
            }
        }
        // re-symmetrize rounding noise
        for i in 0..d {
            out[i * d + i].im = 0.0;
            for j in i + 1..d {
                let avg = (out[i * d + j] + out[j * d + i].conj()) * 0.5;
                out[i * d + j] = avg;
                out[j * d + i] = avg.conj();
            }
        }
        Self::new(d, out)
    }
}

fn check_hermitian(dim: usize, a: &[Complex]) -> Result<()> {
    for i in 0..dim {
        for j in i..dim {
            let diff = (a[i * dim + j] - a[j * dim + i].conj()).norm();
            if !(diff <= HERMITIAN_TOLERANCE) {
                return Err(Error::input(format!(
                    "matrix is not Hermitian: entry ({i},{j}) differs from its mirror by {diff:e}"
                )));
            }
        }
    }
    Ok(())
}

/// Precomputed index maps for tracing out the complement of one bipartition.
///
/// Builds the `2^m × 2^(N−m)` coefficient matrix `M` with
/// `ψ = Σ M[a,e] |a⟩|e⟩` and returns `ρ = M M†`.
#[derive(Debug, Clone)]
pub struct PartialTracer {
    n_qubits: usize,
    sub_dim: usize,
    env_dim: usize,
    /// Position in `M` (row-major) of every full amplitude index.
    scatter: Vec<u32>,
}

impl PartialTracer {
    pub fn new(p: &Bipartition) -> Self {
        let n = p.n_qubits();
        let subset = p.subset();
        let complement = p.complement();
        let sub_dim = 1usize << subset.len();
        let env_dim = 1usize << complement.len();
        let gather = |i: usize, qubits: &[usize]| {
            qubits
                .iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((i >> (n - 1 - q)) & 1))
        };
        let scatter = (0..1usize << n)
            .map(|i| (gather(i, subset) * env_dim + gather(i, &complement)) as u32)
            .collect();
        PartialTracer {
            n_qubits: n,
            sub_dim,
            env_dim,
            scatter,
        }
    }

    pub fn subset_dim(&self) -> usize {
        self.sub_dim
    }

    pub fn trace(&self, state: &PureState) -> Result<DensityMatrix> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::input(format!(
                "bipartition is over {} qubits but the state has {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        let (sd, ed) = (self.sub_dim, self.env_dim);
        let mut m = vec![Complex::new(0.0, 0.0); sd * ed];
        for (&pos, &a) in self.scatter.iter().zip(state.amplitudes()) {
            m[pos as usize] = a;
        }
        let mut rho = vec![Complex::new(0.0, 0.0); sd * sd];
        for a in 0..sd {
            let row_a = &m[a * ed..(a + 1) * ed];
            for b in a..sd {
                let row_b = &m[b * ed..(b + 1) * ed];
                let v: Complex = row_a.iter().zip(row_b).map(|(x, y)| x * y.conj()).sum();
                rho[a * sd + b] = v;
                rho[b * sd + a] = v.conj();
            }
            rho[a * sd + a].im = 0.0;
        }
        Ok(DensityMatrix {
            dim: sd,
            entries: rho,
        })
    }
}

/// Reduced density matrix of the subset side of `p`. Rows and columns index
/// the subset qubits in ascending order, most significant first.
pub fn partial_trace(state: &PureState, p: &Bipartition) -> Result<DensityMatrix> {
    PartialTracer::new(p).trace(state)
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // ρ is Hermitian, so Tr ρ² = Σ |ρ_ij|².
    rho.entries.iter().map(|z| z.norm_sqr()).sum()
}

/// `(d/(d−1))(1 − Tr ρ²)`, in `[0, 1]`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    let d = rho.dim as f64;
    (d / (d - 1.0) * (1.0 - purity(rho))).clamp(0.0, 1.0)
}

/// Eigenvalues of a density matrix, descending.
pub fn hermitian_eigenvalues(rho: &DensityMatrix) -> Result<Vec<f64>> {
    jacobi_eigenvalues(rho.dim, &rho.entries)
}

/// Eigenvalues of an arbitrary Hermitian `dim × dim` row-major matrix by
/// cyclic complex Jacobi rotations, sorted descending.
pub fn jacobi_eigenvalues(dim: usize, matrix: &[Complex]) -> Result<Vec<f64>> {
    if matrix.len() != dim * dim {
        return Err(Error::input(format!(
            "expected {} entries for a {dim}×{dim} matrix, got {}",
            dim * dim,
            matrix.len()
        )));
    }
    let scale = matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    for i in 0..dim {
        for j in i..dim {
            let diff = (matrix[i * dim + j] - matrix[j * dim + i].conj()).norm();
            if !(diff <= HERMITIAN_TOLERANCE * scale) {
                return Err(Error::input(format!(
                    "matrix is not Hermitian: entry ({i},{j}) differs from its mirror by {diff:e}"
                )));
            }
        }
    }

    let mut a = matrix.to_vec();
    let idx = |r: usize, c: usize| r * dim + c;
    let threshold = JACOBI_OFF_DIAGONAL_THRESHOLD * scale;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..dim)
            .flat_map(|r| (0..dim).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[idx(r, c)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..dim {
            for q in p + 1..dim {
                let apq = a[idx(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                // Phase e^{iφ} = apq / |apq| makes the (p,q) block real
                // symmetric; then a plain Jacobi rotation zeroes it.
                let phase = apq / r;
                let app = a[idx(p, p)].re;
                let aqq = a[idx(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let phase_conj = phase.conj();

                // A ← A U with U = [[c, s], [−s e^{−iφ}, c e^{−iφ}]] on (p, q).
                for k in 0..dim {
                    let xp = a[idx(k, p)];
                    let xq = a[idx(k, q)];
                    a[idx(k, p)] = xp * c - xq * phase_conj * s;
                    a[idx(k, q)] = xp * s + xq * phase_conj * c;
                }
                // A ← U† A.
                for k in 0..dim {
                    let xp = a[idx(p, k)];
                    let xq = a[idx(q, k)];
                    a[idx(p, k)] = xp * c - xq * phase * s;
                    a[idx(q, k)] = xp * s + xq * phase * c;
                }
                a[idx(p, q)] = Complex::new(0.0, 0.0);
                a[idx(q, p)] = Complex::new(0.0, 0.0);
                a[idx(p, p)].im = 0.0;
                a[idx(q, q)].im = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..dim).map(|i| a[idx(i, i)].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Shannon entropy in bits of a spectrum, after clamping tiny negatives.
pub(crate) fn spectrum_entropy_bits(eigenvalues: &[f64]) -> Result<f64> {
    let mut h = 0.0;
    for &lambda in eigenvalues {
        if lambda < -NEGATIVE_EIGENVALUE_TOLERANCE {
            return Err(Error::Invariant(format!(
                "density matrix has eigenvalue {lambda:e}"
            )));
        }
        if lambda > ZERO_EIGENVALUE_THRESHOLD {
            h -= lambda * lambda.log2();
        }
    }
    Ok(h)
}

/// `−Tr ρ log₂ ρ / m` for a `2^m`-dimensional ρ, in `[0, 1]`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let bits = spectrum_entropy_bits(&hermitian_eigenvalues(rho)?)?;
    Ok((bits / rho.n_qubits() as f64).clamp(0.0, 1.0))
}
