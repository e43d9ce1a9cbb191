//! Named fixture files shipped with the repository.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use bianchi_core::{parse_problem, CayleyTable, ResonantDecomposition, TemplateProblem};

/// Overrides the fixture directory.
pub const FIXTURES_ENV: &str = "BIANCHI_FIXTURES";

#[derive(Debug, Clone)]
pub struct Fixtures {
    dir: PathBuf,
}

/// A complete table plus the `zero=` / `S0=` / `S1=` headers it declares.
#[derive(Debug, Clone)]
pub struct FixtureTable {
    pub table: CayleyTable,
    pub zero: Option<usize>,
    pub decomposition: Option<ResonantDecomposition>,
}

impl Fixtures {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Fixtures { dir: dir.into() }
    }

    /// `$BIANCHI_FIXTURES`, else the `fixtures/` directory of the source tree.
    pub fn from_env() -> Self {
        match std::env::var_os(FIXTURES_ENV) {
            Some(dir) => Fixtures::new(dir),
            None => Fixtures::new(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn read(&self, name: &str) -> Result<String> {
        let path = self.path(name);
        fs::read_to_string(&path).with_context(|| format!("reading fixture {}", path.display()))
    }

    pub fn problem(&self, name: &str) -> Result<TemplateProblem> {
        parse_problem(&self.read(name)?).with_context(|| format!("fixture {name}"))
    }

    pub fn table(&self, name: &str) -> Result<FixtureTable> {
        let p = self.problem(name)?;
        let table = p
            .template
            .to_table()
            .with_context(|| format!("fixture {name} has unfilled cells"))?;
        Ok(FixtureTable {
            table,
            zero: p.required_zero,
            decomposition: p.required_decomposition,
        })
    }
}
