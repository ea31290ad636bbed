//! Test-only oracles, independent of the library's fast paths.
#![allow(dead_code)]

use entangle_core::{Complex, PureState};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn gaussian<R: Rng>(rng: &mut R) -> Complex {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar unitary: Gram–Schmidt on the columns of a complex Gaussian matrix.
/// Row-major output.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> Vec<Complex> {
    let mut cols: Vec<Vec<Complex>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex> = (0..dim).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let proj: Complex = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut out = vec![c(0., 0.); dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out[i * dim + j] = z;
        }
    }
    out
}

pub fn random_2x2_unitary<R: Rng>(rng: &mut R) -> [[Complex; 2]; 2] {
    let u = random_unitary(2, rng);
    [[u[0], u[1]], [u[2], u[3]]]
}

/// Reduced matrix by forming the full projector |ψ⟩⟨ψ| and summing over the
/// complement's basis explicitly.
pub fn brute_partial_trace(state: &PureState, subset: &[usize]) -> Vec<Complex> {
    let n = state.n_qubits();
    let complement: Vec<usize> = (0..n).filter(|q| !subset.contains(q)).collect();
    let full = state.dim();
    let proj: Vec<Complex> = (0..full * full)
        .map(|k| state.amplitude(k / full) * state.amplitude(k % full).conj())
        .collect();
    // full index from (subset bits, complement bits), each MSB-first
    let compose = |a: usize, e: usize| {
        let mut bits = vec![0usize; n];
        for (k, &q) in subset.iter().enumerate() {
            bits[q] = (a >> (subset.len() - 1 - k)) & 1;
        }
        for (k, &q) in complement.iter().enumerate() {
            bits[q] = (e >> (complement.len() - 1 - k)) & 1;
        }
        bits.iter().fold(0usize, |acc, &b| (acc << 1) | b)
    };
    let sd = 1usize << subset.len();
    let ed = 1usize << complement.len();
    let mut rho = vec![c(0., 0.); sd * sd];
    for a in 0..sd {
        for b in 0..sd {
            let mut sum = c(0., 0.);
            for e in 0..ed {
                sum += proj[compose(a, e) * full + compose(b, e)];
            }
            rho[a * sd + b] = sum;
        }
    }
    rho
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> Vec<Complex> {
    let mut m = vec![c(0., 0.); dim * dim];
    for i in 0..dim {
        m[i * dim + i] = c(rng.sample(StandardNormal), 0.0);
        for j in i + 1..dim {
            let z = gaussian(rng);
            m[i * dim + j] = z;
            m[j * dim + i] = z.conj();
        }
    }
    m
}

pub fn matmul(a: &[Complex], b: &[Complex], d: usize) -> Vec<Complex> {
    let mut out = vec![c(0., 0.); d * d];
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = (0..d).map(|k| a[i * d + k] * b[k * d + j]).sum();
        }
    }
    out
}

/// Characteristic polynomial coefficients `c_k` of `det(λI − A) =
/// λ^d + c_1 λ^{d−1} + … + c_d` by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &[Complex], d: usize) -> Vec<Complex> {
    let mut coeffs = vec![c(1., 0.)];
    let mut m = vec![c(0., 0.); d * d];
    for k in 1..=d {
        // M_k = A M_{k−1} + c_{k−1} I
        let mut next = matmul(a, &m, d);
        for i in 0..d {
            next[i * d + i] += coeffs[k - 1];
        }
        m = next;
        let am = matmul(a, &m, d);
        let tr: Complex = (0..d).map(|i| am[i * d + i]).sum();
        coeffs.push(-tr / k as f64);
    }
    coeffs
}

/// Coefficients of `Π (λ − r_i)` in the same layout.
pub fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut p = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; p.len() + 1];
        for (i, &v) in p.iter().enumerate() {
            next[i] += v;
            next[i + 1] -= r * v;
        }
        p = next;
    }
    p
}

/// Kolmogorov–Smirnov statistic of a sample against a continuous CDF.
pub fn ks_statistic(mut sample: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// A random product of single-qubit states.
pub fn random_product_state<R: Rng>(n: usize, rng: &mut R) -> PureState {
    let mut amps = vec![c(1., 0.)];
    for _ in 0..n {
        let (a, b) = (gaussian(rng), gaussian(rng));
        amps = amps.iter().flat_map(|&x| [x * a, x * b]).collect();
    }
    PureState::new(n, amps).unwrap()
}
