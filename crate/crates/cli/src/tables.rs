use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use elemsub::chevgroups::{group_table, maxsets_table, primes_table, spectrum_table, stabilizers_table, Table};
use elemsub::rootsys::TypeLabel;
use elemsub::Error;

use crate::{Format, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Primes,
    Maxsets,
    Stabilizers,
    Groups,
    Spectrum,
}

const ALL: [Which; 5] = [Which::Primes, Which::Maxsets, Which::Stabilizers, Which::Groups, Which::Spectrum];

impl Which {
    fn file(self) -> &'static str {
        match self {
            Which::Primes => "primes.csv",
            Which::Maxsets => "maxsets.csv",
            Which::Stabilizers => "stabilizers.csv",
            Which::Groups => "groups.csv",
            Which::Spectrum => "spectrum.csv",
        }
    }

    fn golden(self) -> &'static str {
        match self {
            Which::Primes => include_str!("../golden/primes.csv"),
            Which::Maxsets => include_str!("../golden/maxsets.csv"),
            Which::Stabilizers => include_str!("../golden/stabilizers.csv"),
            Which::Groups => include_str!("../golden/groups.csv"),
            Which::Spectrum => include_str!("../golden/spectrum.csv"),
        }
    }

    fn compute(self) -> Result<Table, Error> {
        match self {
            Which::Primes => primes_table(),
            Which::Maxsets => Ok(maxsets_table()),
            Which::Stabilizers => Ok(stabilizers_table()),
            Which::Groups => group_table(),
            Which::Spectrum => spectrum_table(),
        }
    }
}

/// `golden` is `None` for no comparison, `Some(None)` for the embedded table, `Some(Some(path))` for a file.
pub fn run(which: Which, format: Format, golden: Option<Option<PathBuf>>, type_label: Option<String>) -> Result<Status, Error> {
    let mut table = which.compute()?;
    let filter = match type_label {
        Some(t) => {
            let l = t.parse::<TypeLabel>()?.to_string();
            table.rows.retain(|r| r[0] == l);
            if table.rows.is_empty() {
                return Err(Error::InvalidType(format!("{l} is not among the rows of this table")));
            }
            Some(l)
        }
        None => None,
    };
    match format {
        Format::Text => print!("{}", table.to_text()),
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&table.to_json()).expect("json")),
    }
    let expected = match golden {
        None => return Ok(Status::Pass),
        Some(None) => which.golden().to_string(),
        Some(Some(path)) => {
            fs::read_to_string(&path).map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?
        }
    };
    let lines: Vec<&str> = expected
        .lines()
        .enumerate()
        .filter(|(k, l)| *k == 0 || filter.as_ref().is_none_or(|t| l.split(',').next() == Some(t)))
        .map(|(_, l)| l)
        .collect();
    let csv = table.to_csv();
    let got: Vec<&str> = csv.lines().collect();
    let mut mismatches = 0;
    for (k, (g, e)) in got.iter().zip(&lines).enumerate() {
        if g != e {
            eprintln!("line {}: expected\n  {e}\ngot\n  {g}", k + 1);
            mismatches += 1;
        }
    }
    if got.len() != lines.len() {
        eprintln!("expected {} lines, got {}", lines.len(), got.len());
        mismatches += 1;
    }
    if mismatches == 0 {
        eprintln!("golden: {} matches", which.file());
        Ok(Status::Pass)
    } else {
        eprintln!("golden: {} differs", which.file());
        Ok(Status::Mismatch)
    }
}

pub fn regenerate(dir: &Path) -> Result<Status, Error> {
    fs::create_dir_all(dir).map_err(|e| Error::Unsupported(format!("{}: {e}", dir.display())))?;
    for w in ALL {
        let path = dir.join(w.file());
        fs::write(&path, w.compute()?.to_csv()).map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(Status::Pass)
}
