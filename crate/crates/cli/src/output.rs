use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anderson_core::experiments::ExperimentReport;

/// Replaces every non-ASCII character so that outputs stay plain ASCII.
fn ascii(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii() { c } else { '?' }).collect()
}

/// Writes `contents` to `path` through a temporary sibling and a rename, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(ascii(contents).as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// JSON report plus one CSV per table (and plot files on request), named
/// `<experiment>-<config hash>[-<table>].<ext>`.
pub fn write_report(report: &ExperimentReport, out_dir: &Path, plot_data: bool) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let stem = format!("{}-{}", report.experiment, report.config_hash);
    let mut paths = Vec::new();
    let json = out_dir.join(format!("{stem}.json"));
    write_atomic(&json, &report.to_json())?;
    paths.push(json);
    for t in &report.tables {
        let csv = out_dir.join(format!("{stem}-{}.csv", t.name));
        write_atomic(&csv, &t.to_csv())?;
        paths.push(csv);
    }
    if plot_data {
        for (table, x, y) in &report.plots {
            if let Some(data) = report.table(table).and_then(|t| t.plot_data(x, y)) {
                let dat = out_dir.join(format!("{stem}-{table}-{x}-{y}.dat"));
                write_atomic(&dat, &data)?;
                paths.push(dat);
            }
        }
    }
    Ok(paths)
}
