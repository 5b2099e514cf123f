//! CSV emission. Every series file carries `#`-prefixed metadata comments
//! (an optional timestamp and the resolved spec), then a header, then one
//! row per grid point with full-precision values.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::spec::Spec;

/// One CSV row of a series.
#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub time: f64,
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

/// Where a document goes; `None` means stdout.
pub fn open_dest(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(io::stdout().lock())),
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn now_rfc3339() -> String {
    chrono::Utc::now()
        .to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn write_preamble(
    w: &mut dyn Write,
    spec: &Spec,
    no_timestamp: bool,
    extra: &[String],
) -> io::Result<()> {
    if !no_timestamp {
        writeln!(w, "# generated: {}", now_rfc3339())?;
    }
    writeln!(w, "# spec: {}", spec.json_line())?;
    for line in extra {
        writeln!(w, "# {line}")?;
    }
    Ok(())
}

/// Write a full series CSV: comments, `<time_label>,mean,stderr,n` header,
/// then the rows at full precision.
pub fn write_series_csv(
    dest: Option<&PathBuf>,
    spec: &Spec,
    no_timestamp: bool,
    time_label: &str,
    rows: &[Row],
) -> Result<(), CliError> {
    let mut w = open_dest(dest.map(|p| p.as_path()))?;
    let mut run = || -> io::Result<()> {
        write_preamble(&mut w, spec, no_timestamp, &[])?;
        writeln!(w, "{time_label},mean,stderr,n")?;
        for r in rows {
            writeln!(w, "{:.16e},{:.16e},{:.16e},{}", r.time, r.mean, r.stderr, r.n)?;
        }
        w.flush()
    };
    run().map_err(CliError::from)
}

/// The single data row of the Haar baseline: the sampled observable, its
/// ensemble estimate, and the closed-form mean when one is known.
#[derive(Debug, Clone, Copy)]
pub struct BaselineRow<'a> {
    pub observable: &'a str,
    pub expected: Option<f64>,
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

/// Write the single-row CSV of the Haar baseline, with an `# expected:`
/// comment when the ensemble mean has a known closed form.
pub fn write_baseline_csv(
    dest: Option<&PathBuf>,
    spec: &Spec,
    no_timestamp: bool,
    row: &BaselineRow<'_>,
) -> Result<(), CliError> {
    let mut w = open_dest(dest.map(|p| p.as_path()))?;
    let extra: Vec<String> = row
        .expected
        .into_iter()
        .map(|e| format!("expected: {e:.16e}"))
        .collect();
    let mut run = || -> io::Result<()> {
        write_preamble(&mut w, spec, no_timestamp, &extra)?;
        writeln!(w, "observable,mean,stderr,n")?;
        writeln!(
            w,
            "{},{:.16e},{:.16e},{}",
            row.observable, row.mean, row.stderr, row.n
        )?;
        w.flush()
    };
    run().map_err(CliError::from)
}

/// Write a pretty-printed JSON document (the geometry report).
pub fn write_json_doc<T: serde::Serialize>(
    dest: Option<&PathBuf>,
    doc: &T,
) -> Result<(), CliError> {
    let mut w = open_dest(dest.map(|p| p.as_path()))?;
    let body = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
    writeln!(w, "{body}").map_err(CliError::from)?;
    w.flush().map_err(CliError::from)
}
