//! Bipartition-averaged entanglement.
//!
//! For a pure state of `N` qubits, `E^(m)` is the mean normalized entropy
//! of the size-`m` side over all nonequivalent bipartitions of that size,
//! and the global measure is the mean of `E^(1) .. E^(⌊N/2⌋)`.
//! With the linear entropy, `E^(1)` is the Meyer–Wallach measure and the
//! global average is the Scott generalization over all cut sizes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::entropy::{linear_entropy, von_neumann_entropy, PartialTracer};
use crate::error::{Error, Result};
use crate::partitions::enumerate_bipartitions;
use crate::qstate::PureState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    /// Normalized linear entropy, `E_L`.
    Linear,
    /// Normalized von Neumann entropy, `E_vN`.
    VonNeumann,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 2] = [MeasureKind::Linear, MeasureKind::VonNeumann];

    pub fn label(self) -> &'static str {
        match self {
            MeasureKind::Linear => "E_L",
            MeasureKind::VonNeumann => "E_vN",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub n_qubits: usize,
    pub kind: MeasureKind,
    /// `(m, E^(m))` for `m = 1..=⌊N/2⌋`.
    pub per_m: Vec<(usize, f64)>,
    pub total: f64,
}

/// Partial-trace plans for every bipartition of an `N`-qubit register,
/// grouped by subset size. Build once and reuse across evaluations.
#[derive(Debug, Clone)]
pub struct MeasureEngine {
    n_qubits: usize,
    by_size: Vec<Vec<PartialTracer>>,
}

impl MeasureEngine {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::input(format!(
                "entanglement measures need at least 2 qubits, got {n_qubits}"
            )));
        }
        let by_size = (1..=n_qubits / 2)
            .map(|m| {
                enumerate_bipartitions(n_qubits, m)
                    .map(|ps| ps.iter().map(PartialTracer::new).collect())
            })
            .collect::<Result<_>>()?;
        Ok(MeasureEngine { n_qubits, by_size })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `⌊N/2⌋`.
    pub fn max_subset_size(&self) -> usize {
        self.n_qubits / 2
    }

    /// Number of reduced matrices `E^(m)` evaluates.
    pub fn bipartition_count(&self, m: usize) -> usize {
        self.by_size.get(m.wrapping_sub(1)).map_or(0, Vec::len)
    }

    /// Number of reduced matrices the global measure evaluates.
    pub fn total_bipartition_count(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    fn check_state(&self, s: &PureState) -> Result<()> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::input(format!(
                "engine built for {} qubits, state has {}",
                self.n_qubits,
                s.n_qubits()
            )));
        }
        Ok(())
    }

    pub fn e_m(&self, s: &PureState, m: usize, kind: MeasureKind) -> Result<f64> {
        self.check_state(s)?;
        let tracers = (m >= 1)
            .then(|| self.by_size.get(m - 1))
            .flatten()
            .ok_or_else(|| {
                Error::input(format!(
                    "subset size {m} outside 1..={} for {} qubits",
                    self.max_subset_size(),
                    self.n_qubits
                ))
            })?;
        // ordered summation keeps the result independent of evaluation order
        let mut sum = 0.0;
        for tracer in tracers {
            let rho = tracer.trace(s)?;
            sum += match kind {
                MeasureKind::Linear => linear_entropy(&rho),
                MeasureKind::VonNeumann => von_neumann_entropy(&rho)?,
            };
        }
        Ok(sum / tracers.len() as f64)
    }

    pub fn report(&self, s: &PureState, kind: MeasureKind) -> Result<EntanglementReport> {
        let per_m = (1..=self.max_subset_size())
            .map(|m| Ok((m, self.e_m(s, m, kind)?)))
            .collect::<Result<Vec<_>>>()?;
        let total = per_m.iter().map(|&(_, v)| v).sum::<f64>() / per_m.len() as f64;
        Ok(EntanglementReport {
            n_qubits: self.n_qubits,
            kind,
            per_m,
            total,
        })
    }

    pub fn total(&self, s: &PureState, kind: MeasureKind) -> Result<f64> {
        Ok(self.report(s, kind)?.total)
    }

    /// `E^(⌊N/2⌋)`.
    pub fn balanced(&self, s: &PureState, kind: MeasureKind) -> Result<f64> {
        self.e_m(s, self.max_subset_size(), kind)
    }
}

/// `E^(m)` of `s`.
pub fn e_m(s: &PureState, m: usize, kind: MeasureKind) -> Result<f64> {
    MeasureEngine::new(s.n_qubits())?.e_m(s, m, kind)
}

/// Per-size breakdown and global measure of `s`.
pub fn e_total(s: &PureState, kind: MeasureKind) -> Result<EntanglementReport> {
    MeasureEngine::new(s.n_qubits())?.report(s, kind)
}

/// `E^(⌊N/2⌋)` of `s`.
pub fn e_balanced(s: &PureState, kind: MeasureKind) -> Result<f64> {
    MeasureEngine::new(s.n_qubits())?.balanced(s, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use MeasureKind::*;

    #[test]
    fn ghz3_is_maximal() {
        let s = PureState::ghz(3).unwrap();
        for kind in MeasureKind::ALL {
            assert!((e_m(&s, 1, kind).unwrap() - 1.0).abs() < 1e-12);
            let r = e_total(&s, kind).unwrap();
            assert_eq!(r.per_m.len(), 1);
            assert!((r.total - 1.0).abs() < 1e-12);
            assert!((e_balanced(&s, kind).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn product_states_are_zero() {
        let s = PureState::zero(4).unwrap();
        assert_eq!(e_m(&s, 1, Linear).unwrap(), 0.0);
        let s = PureState::zero(6).unwrap();
        for kind in MeasureKind::ALL {
            assert_eq!(e_total(&s, kind).unwrap().total, 0.0);
        }
    }

    #[test]
    fn hs_values() {
        let hs = PureState::hs4();
        let vn = e_total(&hs, VonNeumann).unwrap();
        let l = e_total(&hs, Linear).unwrap();
        assert!((vn.per_m[1].1 - 0.896_24).abs() < 1e-4);
        assert!((e_balanced(&hs, Linear).unwrap() - 8.0 / 9.0).abs() < 1e-10);
        assert!((l.total - 0.9445).abs() < 5e-4);
        assert!((vn.total - 0.9481).abs() < 5e-4);
    }

    #[test]
    fn out_of_range_size() {
        let s = PureState::hs4();
        assert!(e_m(&s, 0, Linear).is_err());
        assert!(e_m(&s, 3, Linear).is_err());
        assert!(e_total(&PureState::zero(1).unwrap(), Linear).is_err());
        let engine = MeasureEngine::new(5).unwrap();
        assert!(engine.total(&s, Linear).is_err());
    }

    #[test]
    fn bipartition_counts() {
        let engine = MeasureEngine::new(6).unwrap();
        assert_eq!(engine.bipartition_count(3), 10);
        assert_eq!(engine.total_bipartition_count(), 6 + 15 + 10);
        assert_eq!(engine.bipartition_count(4), 0);
    }
}
