use std::path::PathBuf;
use std::process::ExitCode;

use charsum::charsums::{bound_table, BoundRow};

use crate::{CmdResult, Failure};

#[derive(clap::Args)]
pub struct Args {
    #[arg(long, default_value_t = 2)]
    nmin: u32,
    #[arg(long, default_value_t = 4)]
    nmax: u32,
    /// Comma-separated field orders.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    qset: Vec<u64>,
    /// Output file; `.csv` or `.json` (JSON lines).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn render(rows: &[BoundRow], path: &std::path::Path) -> Result<String, Failure> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => {
            let mut s = String::from(BoundRow::CSV_HEADER);
            s.push('\n');
            for r in rows {
                s.push_str(&r.to_csv());
                s.push('\n');
            }
            Ok(s)
        }
        Some("json") => {
            let mut s = String::new();
            for r in rows {
                s.push_str(&serde_json::to_string(r).map_err(|e| Failure::Io(e.to_string()))?);
                s.push('\n');
            }
            Ok(s)
        }
        _ => Err(Failure::Usage(format!("{}: output must end in .csv or .json", path.display()))),
    }
}

pub fn run(a: Args) -> CmdResult {
    if a.qset.is_empty() {
        return Err(Failure::Usage("--qset is empty".into()));
    }
    if a.nmin < 2 || a.nmax < a.nmin {
        return Err(Failure::Usage(format!("need 2 <= nmin <= nmax, got {}..{}", a.nmin, a.nmax)));
    }
    let n_set: Vec<u32> = (a.nmin..=a.nmax).collect();
    let rows = bound_table(&n_set, &a.qset)?;
    if let Some(path) = &a.out {
        let text = render(&rows, path)?;
        std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    println!("{:>3} {:>4} {:>12} {:>12} {:>12}  sharper", "n", "q", "deligne", "fulman", "max");
    for r in &rows {
        let mark = if r.fulman_sharper() {
            "fulman < deligne"
        } else if r.deligne < r.fulman {
            "deligne < fulman"
        } else {
            "equal"
        };
        println!(
            "{:>3} {:>4} {:>12.6} {:>12.6} {:>12.6}  {mark}",
            r.n, r.q, r.deligne, r.fulman, r.max_actual
        );
    }
    Ok(ExitCode::SUCCESS)
}
