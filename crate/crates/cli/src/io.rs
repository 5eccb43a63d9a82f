//! Input files and output sinks.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use turing_flow::gluing::BuildDescriptor;
use turing_flow::tm::{MachineSpec, Tape, TapeSpec, TuringMachine};
use turing_flow::HamiltonianIsotopy;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn machine(path: &Path) -> Result<TuringMachine> {
    let spec: MachineSpec = read_json(path)?;
    TuringMachine::from_spec(&spec).with_context(|| format!("invalid machine in {}", path.display()))
}

pub fn tape(path: Option<&Path>) -> Result<Tape> {
    match path {
        Some(p) => Ok(read_json::<TapeSpec>(p)?.into()),
        None => Ok(Tape::empty()),
    }
}

fn one() -> f64 {
    1.0
}

/// Isotopy file: the isotopy fields plus the suspension constant `c`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsotopyFile {
    #[serde(flatten)]
    pub isotopy: HamiltonianIsotopy,
    #[serde(default = "one")]
    pub c: f64,
}

pub fn isotopy(path: &Path) -> Result<IsotopyFile> {
    let file: IsotopyFile = read_json(path)?;
    file.isotopy.validate().with_context(|| format!("invalid isotopy in {}", path.display()))?;
    if !(file.c > 0.0 && file.c.is_finite()) {
        bail!("c must be positive in {}, got {}", path.display(), file.c);
    }
    Ok(file)
}

/// Build descriptor; `"isotopy"` may be inline or a path relative to the
/// descriptor's directory.
pub fn descriptor(path: &Path) -> Result<BuildDescriptor> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(Value::String(rel)) = value.get("isotopy") {
        let iso_path = path.parent().unwrap_or(Path::new(".")).join(rel);
        let iso = isotopy(&iso_path)?;
        value["isotopy"] = serde_json::to_value(iso.isotopy)?;
    }
    serde_json::from_value(value).with_context(|| format!("invalid build descriptor {}", path.display()))
}

/// Where results go: stdout, or files under `--out`.
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
        }
        Ok(Sink { dir })
    }

    /// The primary JSON result: `<dir>/<name>.json`, or stdout.
    pub fn json<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        match &self.dir {
            Some(d) => {
                let p = d.join(format!("{name}.json"));
                fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
            }
            None => {
                std::io::stdout().lock().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    /// CSV rows to `<dir>/<name>.csv`. Without `--out` they go to stdout
    /// only when `primary`, and are dropped otherwise.
    pub fn csv<T: Serialize>(&self, name: &str, rows: &[T], primary: bool) -> Result<()> {
        let out: Box<dyn Write> = match &self.dir {
            Some(d) => {
                let p = d.join(format!("{name}.csv"));
                Box::new(fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?)
            }
            None if primary => Box::new(std::io::stdout().lock()),
            None => return Ok(()),
        };
        let mut w = csv::Writer::from_writer(out);
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}
