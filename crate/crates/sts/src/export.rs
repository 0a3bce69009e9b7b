use std::fs;
use std::path::Path;

use crate::StsError;

/// Copies the ciphertext corpus verbatim (no header) for use as a raw
/// binary input stream by dieharder (`-g 201 -f <file>`). Returns the byte
/// count written.
pub fn export_dieharder(ct_file: &Path, out_path: &Path) -> Result<u64, StsError> {
    let len = fs::metadata(ct_file)
        .map_err(|e| StsError::Io(format!("{}: {e}", ct_file.display())))?
        .len();
    if len == 0 {
        return Err(StsError::Io(format!("{}: input is empty", ct_file.display())));
    }
    fs::copy(ct_file, out_path).map_err(|e| StsError::Io(format!("{}: {e}", out_path.display())))
}
