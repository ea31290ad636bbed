//! Entanglement landscape experiments.
//!
//! Two experiments live here: mean entanglement of random neighbors of an
//! anchor state as a function of their overlap with it, and the spread of
//! `E_vN` over independently found maximizers of `E_L`.

use std::f64::consts::PI;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{MeasureEngine, MeasureKind};
use crate::qstate::{inner_product, PureState};
use crate::search::{mix_seed, multi_start, Scope, SearchConfig, SearchResult, StartState};
use crate::Complex;

/// Maximum `E_L` gap to the best run for a state to count as an `E_L`
/// maximizer.
pub const PLATEAU_TOLERANCE: f64 = 1e-4;

/// Width of the single bin used when all kept `E_vN` values coincide to
/// within this span.
pub const DEGENERATE_SPAN: f64 = 1e-4;

/// Header line of the overlap-curve CSV.
pub const CURVE_CSV_HEADER: &str = "overlap_bin_center,count,mean_EL,std_EL,mean_EvN,std_EvN";
/// Header line of the histogram CSV.
pub const HISTOGRAM_CSV_HEADER: &str = "bin_center,density";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodSample {
    pub overlap: f64,
    pub e_linear: f64,
    pub e_von_neumann: f64,
}

/// Draws `c·|anchor⟩ + √(1−c²)·e^{iφ}·|χ⟩` with `c` uniform on `[lo, hi]`,
/// `φ` uniform on `[0, 2π)` and `|χ⟩` Haar-random orthogonal to the anchor.
pub fn sample_with_overlap<R: Rng + ?Sized>(
    anchor: &PureState,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> Result<PureState> {
    if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
        return Err(Error::input(format!(
            "overlap window must satisfy 0 ≤ lo ≤ hi ≤ 1, got [{lo}, {hi}]"
        )));
    }
    let n = anchor.n_qubits();
    let c = if lo == hi { lo } else { rng.random_range(lo..=hi) };
    let phi = rng.random_range(0.0..2.0 * PI);
    let chi = loop {
        let raw = PureState::random_haar(n, rng)?;
        let proj = inner_product(anchor, &raw)?;
        let orth: Vec<Complex> = raw
            .amplitudes()
            .iter()
            .zip(anchor.amplitudes())
            .map(|(r, a)| r - proj * a)
            .collect();
        let norm: f64 = orth.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            break orth;
        }
    };
    let norm: f64 = chi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let s = Complex::from_polar((1.0 - c * c).max(0.0).sqrt() / norm, phi);
    let amps = anchor
        .amplitudes()
        .iter()
        .zip(&chi)
        .map(|(a, x)| a * c + x * s)
        .collect();
    PureState::new(n, amps)
}

/// `samples` neighbors of `anchor` scored with both measures. Sample `i`
/// uses its own stream seeded by `mix_seed(seed, i)`, so the output does not
/// depend on the thread count.
pub fn neighborhood_samples(
    anchor: &PureState,
    lo: f64,
    hi: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<NeighborhoodSample>> {
    let engine = MeasureEngine::new(anchor.n_qubits())?;
    (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, i));
            let s = sample_with_overlap(anchor, lo, hi, &mut rng)?;
            Ok(NeighborhoodSample {
                overlap: anchor.overlap(&s)?,
                e_linear: engine.total(&s, MeasureKind::Linear)?,
                e_von_neumann: engine.total(&s, MeasureKind::VonNeumann)?,
            })
        })
        .collect()
}

/// Per-bin statistics; `None` for empty bins, standard deviations are the
/// sample (n − 1) estimate and `None` below two members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub mean_e_linear: Option<f64>,
    pub std_e_linear: Option<f64>,
    pub mean_e_von_neumann: Option<f64>,
    pub std_e_von_neumann: Option<f64>,
}

impl CurveBin {
    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedCurve {
    pub bin_edges: Vec<f64>,
    pub bins: Vec<CurveBin>,
}

fn mean_std(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (Some(mean), None);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (Some(mean), Some(var.sqrt()))
}

impl BinnedCurve {
    /// Bins samples by overlap into `bins` equal-width bins over `[lo, hi]`.
    /// Samples at exactly `hi` go to the last bin.
    pub fn from_samples(
        samples: &[NeighborhoodSample],
        lo: f64,
        hi: f64,
        bins: usize,
    ) -> Result<Self> {
        if bins == 0 || !(lo < hi) {
            return Err(Error::input(format!(
                "need bins ≥ 1 and lo < hi, got {bins} bins over [{lo}, {hi}]"
            )));
        }
        let width = (hi - lo) / bins as f64;
        let bin_edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut members: Vec<Vec<&NeighborhoodSample>> = vec![Vec::new(); bins];
        for s in samples {
            if !(lo - 1e-12..=hi + 1e-12).contains(&s.overlap) {
                return Err(Error::input(format!(
                    "sample overlap {} outside [{lo}, {hi}]",
                    s.overlap
                )));
            }
            let i = (((s.overlap - lo) / width).floor().max(0.0) as usize).min(bins - 1);
            members[i].push(s);
        }
        let bins = members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let el: Vec<f64> = m.iter().map(|s| s.e_linear).collect();
                let evn: Vec<f64> = m.iter().map(|s| s.e_von_neumann).collect();
                let (mean_e_linear, std_e_linear) = mean_std(&el);
                let (mean_e_von_neumann, std_e_von_neumann) = mean_std(&evn);
                CurveBin {
                    lo: bin_edges[i],
                    hi: bin_edges[i + 1],
                    count: m.len(),
                    mean_e_linear,
                    std_e_linear,
                    mean_e_von_neumann,
                    std_e_von_neumann,
                }
            })
            .collect();
        Ok(BinnedCurve { bin_edges, bins })
    }

    pub fn total_count(&self) -> usize {
        self.bins.iter().map(|b| b.count).sum()
    }

    /// Writes `overlap_bin_center,count,mean_EL,std_EL,mean_EvN,std_EvN`.
    /// Missing statistics are left as empty fields.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let field = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        writeln!(out, "{CURVE_CSV_HEADER}")?;
        for b in &self.bins {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                b.center(),
                b.count,
                field(b.mean_e_linear),
                field(b.std_e_linear),
                field(b.mean_e_von_neumann),
                field(b.std_e_von_neumann)
            )?;
        }
        Ok(())
    }
}

/// Samples neighbors of `anchor` and bins both measures by overlap.
pub fn neighborhood_curve(
    anchor: &PureState,
    lo: f64,
    hi: f64,
    samples: usize,
    bins: usize,
    seed: u64,
) -> Result<BinnedCurve> {
    if bins == 0 || samples < bins {
        return Err(Error::input(format!(
            "need samples ≥ bins ≥ 1, got {samples} samples and {bins} bins"
        )));
    }
    if !(0.0 <= lo && lo < hi && hi <= 1.0) {
        return Err(Error::input(format!(
            "overlap window must satisfy 0 ≤ lo < hi ≤ 1, got [{lo}, {hi}]"
        )));
    }
    let drawn = neighborhood_samples(anchor, lo, hi, samples, seed)?;
    BinnedCurve::from_samples(&drawn, lo, hi, bins)
}

/// Density histogram over `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<usize>,
    pub densities: Vec<f64>,
}

impl Histogram {
    pub fn new(values: &[f64], bins: usize) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::DegenerateHistogram(format!(
                "need at least 2 values, got {}",
                values.len()
            )));
        }
        if bins == 0 {
            return Err(Error::input("histogram needs at least one bin"));
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let total = values.len() as f64;
        if max - min < DEGENERATE_SPAN {
            let mid = 0.5 * (min + max);
            let (lo, hi) = (mid - 0.5 * DEGENERATE_SPAN, mid + 0.5 * DEGENERATE_SPAN);
            return Ok(Histogram {
                lo,
                hi,
                counts: vec![values.len()],
                densities: vec![1.0 / DEGENERATE_SPAN],
            });
        }
        let width = (max - min) / bins as f64;
        let mut counts = vec![0usize; bins];
        for &v in values {
            let i = (((v - min) / width).floor() as usize).min(bins - 1);
            counts[i] += 1;
        }
        let densities = counts.iter().map(|&c| c as f64 / (total * width)).collect();
        Ok(Histogram {
            lo: min,
            hi: max,
            counts,
            densities,
        })
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        let w = self.bin_width();
        (0..self.counts.len())
            .map(|i| self.lo + w * (i as f64 + 0.5))
            .collect()
    }

    /// Center of the most populated bin (first one on ties).
    pub fn mode(&self) -> f64 {
        let best = self
            .counts
            .iter()
            .enumerate()
            .fold(0, |best, (i, &c)| if c > self.counts[best] { i } else { best });
        self.bin_centers()[best]
    }

    pub fn populated_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Writes `bin_center,density`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{HISTOGRAM_CSV_HEADER}")?;
        for (c, d) in self.bin_centers().iter().zip(&self.densities) {
            writeln!(out, "{c},{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MaximizerDistribution {
    /// Every run, in run order.
    pub runs: Vec<SearchResult>,
    /// `(E_L, E_vN)` of the runs that reached the `E_L` plateau.
    pub kept: Vec<(f64, f64)>,
    pub best_e_linear: f64,
    pub histogram: Histogram,
}

/// Runs `runs` Haar-started `E_L` hill climbs, keeps the results within
/// [`PLATEAU_TOLERANCE`] of the best `E_L`, and histograms their `E_vN`.
pub fn maximizer_distribution(
    runs: usize,
    bins: usize,
    search_cfg: &SearchConfig,
) -> Result<MaximizerDistribution> {
    if search_cfg.objective.kind != MeasureKind::Linear
        || search_cfg.objective.scope != Scope::Full
    {
        return Err(Error::input("maximizer distribution needs the full E_L objective"));
    }
    if search_cfg.start != StartState::HaarRandom {
        return Err(Error::input(
            "maximizer distribution needs Haar-random starts to reach distinct maximizers",
        ));
    }
    let results = multi_start(search_cfg, runs)?;
    let engine = MeasureEngine::new(search_cfg.n_qubits)?;
    let best_e_linear = results
        .iter()
        .map(|r| r.best_value)
        .fold(f64::NEG_INFINITY, f64::max);
    let kept = results
        .iter()
        .filter(|r| best_e_linear - r.best_value <= PLATEAU_TOLERANCE)
        .map(|r| {
            Ok((
                r.best_value,
                engine.total(&r.best_state, MeasureKind::VonNeumann)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let evn: Vec<f64> = kept.iter().map(|&(_, v)| v).collect();
    let histogram = Histogram::new(&evn, bins)?;
    Ok(MaximizerDistribution {
        runs: results,
        kept,
        best_e_linear,
        histogram,
    })
}
