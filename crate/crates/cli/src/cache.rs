use std::process::ExitCode;

use charsum::cache::{Cache, CACHE_ENV};
use charsum::ffield::prime_power;
use clap::Subcommand;

use crate::{CmdResult, Failure};

#[derive(clap::Args)]
pub struct Args {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Print the cache directory.
    Info,
    /// Build and store the field of order `q` and its irreducibles.
    Warm {
        #[arg(long)]
        q: u64,
        #[arg(long = "max-degree", default_value_t = 4)]
        max_degree: usize,
    },
    /// Remove all cache files.
    Clear,
}

pub fn run(a: Args) -> CmdResult {
    let cache = Cache::from_env()?.ok_or_else(|| Failure::Usage(format!("{CACHE_ENV} is not set")))?;
    match a.action {
        Action::Info => println!("{}", cache.dir().display()),
        Action::Warm { q, max_degree } => {
            let (p, k) = prime_power(q).ok_or_else(|| Failure::Usage(format!("{q} is not a prime power")))?;
            let f = cache.field(p, k)?;
            let table = cache.irreducibles(&f, max_degree)?;
            let counts: Vec<String> = (1..=max_degree).map(|d| table.degree(d).len().to_string()).collect();
            println!("q={q} irreducibles by degree: {}", counts.join(" "));
        }
        Action::Clear => println!("removed {} files", cache.clear()?),
    }
    Ok(ExitCode::SUCCESS)
}
