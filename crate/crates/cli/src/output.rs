use std::fs;
use std::path::{Path, PathBuf};

use mvbandit_core::io::{write_csv, CsvRecord};

use crate::error::{CliError, CliResult};

/// Result files staged in memory and written together, so a refused
/// overwrite leaves the output directory untouched.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(String, Vec<u8>)>,
}

impl Outputs {
    pub fn add_csv<T: CsvRecord>(&mut self, name: String, rows: &[T]) -> CliResult<()> {
        let mut buf = Vec::new();
        write_csv(&mut buf, rows)?;
        self.files.push((name, buf));
        Ok(())
    }

    pub fn add_text(&mut self, name: String, text: String) {
        self.files.push((name, text.into_bytes()));
    }

    /// Writes every staged file into `dir`, refusing to replace existing
    /// files unless `force` is set.
    pub fn commit(self, dir: &Path, force: bool) -> CliResult<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let paths: Vec<PathBuf> = self.files.iter().map(|(n, _)| dir.join(n)).collect();
        if !force {
            if let Some(p) = paths.iter().find(|p| p.exists()) {
                return Err(CliError::Config(format!(
                    "{} already exists; pass --force to overwrite",
                    p.display()
                )));
            }
        }
        for (path, (_, bytes)) in paths.iter().zip(&self.files) {
            fs::write(path, bytes)?;
        }
        Ok(paths)
    }
}
