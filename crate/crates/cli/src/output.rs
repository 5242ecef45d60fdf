use std::io::Write;
use std::path::PathBuf;

use crate::cli::Common;
use crate::error::CliResult;

pub const OUTPUT_DIR_VAR: &str = "HLB_OUTPUT_DIR";

/// Where `--output` lands: absolute paths as given, relative ones under
/// `$HLB_OUTPUT_DIR` when it is set.
pub fn resolve_path(common: &Common) -> Option<PathBuf> {
    let p = common.output.as_ref()?;
    if p.is_absolute() {
        return Some(p.clone());
    }
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir).join(p)),
        _ => Some(p.clone()),
    }
}

pub fn emit(common: &Common, body: &str) -> CliResult<()> {
    match resolve_path(common) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&path, body)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
