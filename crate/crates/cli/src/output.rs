use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Files written by one run. Unless [`Outputs::commit`] is called, every
/// file created through it is removed again when it is dropped.
#[derive(Default)]
pub struct Outputs {
    created: Vec<PathBuf>,
    committed: bool,
}

impl Outputs {
    /// Writes `contents` to `path`, or to stdout when `path` is `None`.
    pub fn write(&mut self, path: Option<&Path>, contents: &str) -> Result<()> {
        match path {
            None => {
                let mut out = io::stdout().lock();
                out.write_all(contents.as_bytes())?;
                if !contents.ends_with('\n') {
                    out.write_all(b"\n")?;
                }
                Ok(())
            }
            Some(path) => {
                self.created.push(path.to_owned());
                fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
            }
        }
    }

    pub fn create_dir(&mut self, dir: &Path) -> Result<()> {
        if !dir.exists() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            self.created.push(dir.to_owned());
        }
        Ok(())
    }

    pub fn commit(mut self) {
        self.committed = true;
    }
}

impl Drop for Outputs {
    fn drop(&mut self) {
        if self.committed {
            return;
        }
        for path in self.created.iter().rev() {
            if path.is_dir() {
                let _ = fs::remove_dir(path);
            } else {
                let _ = fs::remove_file(path);
            }
        }
    }
}
