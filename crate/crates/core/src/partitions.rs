//! Nonequivalent bipartitions of an N-qubit register.
//!
//! A bipartition is identified by its smaller side, a subset of `m` qubits
//! with `1 ≤ m ≤ ⌊N/2⌋`. When `m = N/2` both sides have the same size and
//! only the side containing qubit 0 is listed.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    n_qubits: usize,
    subset: Vec<usize>,
}

impl Bipartition {
    /// Validates and canonicalizes `subset`. A balanced subset that lacks
    /// qubit 0 is replaced by its complement.
    pub fn new(n_qubits: usize, mut subset: Vec<usize>) -> Result<Self> {
        subset.sort_unstable();
        subset.dedup();
        let m = subset.len();
        if m == 0 || 2 * m > n_qubits {
            return Err(Error::input(format!(
                "subset size {m} outside 1..={} for {n_qubits} qubits",
                n_qubits / 2
            )));
        }
        if subset.iter().any(|&q| q >= n_qubits) {
            return Err(Error::input(format!(
                "subset {subset:?} has qubits outside 0..{n_qubits}"
            )));
        }
        let mut p = Bipartition { n_qubits, subset };
        if 2 * m == n_qubits && p.subset[0] != 0 {
            p.subset = p.complement();
        }
        Ok(p)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// Subset size `m`.
    pub fn size(&self) -> usize {
        self.subset.len()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|q| self.subset.binary_search(q).is_err())
            .collect()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_size(n: usize, m: usize) -> Result<()> {
    if m == 0 || 2 * m > n {
        return Err(Error::input(format!(
            "subset size {m} outside 1..={} for {n} qubits",
            n / 2
        )));
    }
    Ok(())
}

/// `C(n, m)`, halved when `m = n/2`.
pub fn count_bipartitions(n: usize, m: usize) -> Result<usize> {
    check_size(n, m)?;
    let c = binomial(n, m);
    Ok(if 2 * m == n { c / 2 } else { c })
}

/// All canonical bipartitions with subset size `m`, in lexicographic order.
pub fn enumerate_bipartitions(n: usize, m: usize) -> Result<Vec<Bipartition>> {
    check_size(n, m)?;
    let balanced = 2 * m == n;
    let mut out = Vec::with_capacity(count_bipartitions(n, m)?);
    let mut combo: Vec<usize> = (0..m).collect();
    loop {
        if !balanced || combo[0] == 0 {
            out.push(Bipartition {
                n_qubits: n,
                subset: combo.clone(),
            });
        }
        // advance to the next combination in lexicographic order
        let Some(i) = (0..m).rev().find(|&i| combo[i] < n - m + i) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..m {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok(out)
}
