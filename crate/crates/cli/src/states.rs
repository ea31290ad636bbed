use std::path::Path;

use entangle_core::PureState;

use crate::{CliError, CliResult};

/// Resolves a named state (`ghz<N>`, `hs4`, `bssb4`, `basis:<bits>`) or a
/// JSON state file.
pub fn resolve(source: &str) -> CliResult<PureState> {
    if let Some(bits) = source.strip_prefix("basis:") {
        return PureState::computational_basis_state(bits.len(), bits)
            .map_err(|e| CliError::Usage(e.to_string()));
    }
    match source {
        "hs4" | "hs" => return Ok(PureState::hs4()),
        "bssb4" | "bssb" => return Ok(PureState::bssb4()),
        _ => {}
    }
    if let Some(n) = source.strip_prefix("ghz").and_then(|n| n.parse::<usize>().ok()) {
        return PureState::ghz(n).map_err(|e| CliError::Usage(e.to_string()));
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(CliError::Data(format!(
            "{source:?} is neither a named state (ghz<N>, hs4, bssb4, basis:<bits>) nor a file"
        )));
    }
    PureState::load(path).map_err(|e| CliError::Data(format!("{source}: {e}")))
}
