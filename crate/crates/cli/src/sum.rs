use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;

use charsum::charsums::{g1, g2, gauss_sum, hyper_kloosterman, kloosterman};
use charsum::cyclotomic::{norm_squared, CycNum};
use charsum::matgroups::{u_char_sum, u_histogram, unitary_field, GlHistograms};
use charsum::{AddChar, Field, MultChar};
use clap::ValueEnum;
use serde::Serialize;

use crate::{CmdResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Gauss,
    Kloosterman,
    Hyper,
    G1,
    G2,
    Glsum,
    Usum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(value_enum)]
    kind: Kind,
    /// Field order; for g1, g2 and usum the sums live over `F_{q^2}`.
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    chi: i64,
    /// Additive character parameter `a`, as an index or `c0:c1:...`.
    #[arg(long, default_value = "1")]
    lam: String,
    #[arg(long, default_value = "1")]
    x: String,
    #[arg(long, default_value = "1")]
    y: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Serialize)]
struct Output {
    kind: String,
    params: BTreeMap<String, String>,
    value: String,
    re: f64,
    im: f64,
    abs_squared: String,
}

fn kind_name(k: Kind) -> String {
    k.to_possible_value().expect("no skipped variants").get_name().to_string()
}

pub fn run(a: Args) -> CmdResult {
    let unitary = matches!(a.kind, Kind::G1 | Kind::G2 | Kind::Usum);
    let f: Arc<Field> = if unitary { unitary_field(a.q)? } else { Field::with_order(a.q)? };
    let lam = AddChar::new(&f, f.parse(&a.lam)?)?;
    let chi = MultChar::new(&f, a.chi);
    let x = f.parse(&a.x)?;
    let y = f.parse(&a.y)?;

    let mut params = BTreeMap::new();
    params.insert("q".to_string(), a.q.to_string());
    let mut put = |k: &str, v: String| params.insert(k.to_string(), v);
    let value: CycNum = match a.kind {
        Kind::Gauss => {
            put("chi", chi.index().to_string());
            put("lam", f.format(lam.parameter()));
            gauss_sum(&chi, &lam)?
        }
        Kind::Kloosterman => {
            put("lam", f.format(lam.parameter()));
            put("x", f.format(x));
            put("y", f.format(y));
            kloosterman(&lam, x, y)?
        }
        Kind::Hyper => {
            put("n", a.n.to_string());
            put("lam", f.format(lam.parameter()));
            put("x", f.format(x));
            hyper_kloosterman(&lam, x, a.n as u32)?
        }
        Kind::G1 | Kind::G2 => {
            put("chi", chi.index().to_string());
            put("lam", f.format(lam.parameter()));
            if a.kind == Kind::G1 {
                g1(&chi, &lam)?
            } else {
                g2(&chi, &lam)?
            }
        }
        Kind::Glsum => {
            put("n", a.n.to_string());
            put("chi", chi.index().to_string());
            put("lam", f.format(lam.parameter()));
            GlHistograms::compute(&f, a.n)?.char_sum(&chi, &lam)?
        }
        Kind::Usum => {
            put("n", a.n.to_string());
            put("chi", chi.index().to_string());
            put("lam", f.format(lam.parameter()));
            u_char_sum(&u_histogram(&f, a.n, None)?, &chi, &lam)?
        }
    };

    let z = value.to_complex();
    let abs_squared = norm_squared(&value).map_or_else(|| format!("{:.9}", z.norm_sqr()), |r| r.to_string());
    let out = Output {
        kind: kind_name(a.kind),
        params,
        value: value.canonical_string(),
        re: z.re,
        im: z.im,
        abs_squared,
    };
    match a.format {
        Format::Json => {
            println!("{}", serde_json::to_string(&out).map_err(|e| Failure::Io(e.to_string()))?);
        }
        Format::Text => {
            let params: Vec<String> = out.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("{} {}", out.kind, params.join(" "));
            println!("value      {}", out.value);
            println!("approx     {:.9} {:+.9}i", out.re, out.im);
            println!("|value|^2  {}", out.abs_squared);
        }
    }
    Ok(ExitCode::SUCCESS)
}
