use std::io::Write;
use std::process::ExitCode;

use charsum::polyseries::{self as ps, Selection};
use charsum::report::VerificationReport;
use clap::ValueEnum;

use crate::{CmdResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    All,
    Gl,
    Kloosterman,
    Unitary,
    Lemmas,
    Euler,
}

#[derive(clap::Args)]
pub struct Args {
    #[arg(value_enum)]
    scope: Scope,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    /// Truncation degree for Euler factors and identities.
    #[arg(long = "max-degree")]
    max_degree: Option<usize>,
    /// Multiplicative character index `j`.
    #[arg(long)]
    chi: Option<i64>,
    /// Additive character parameter, as an element index.
    #[arg(long)]
    lam: Option<u64>,
    #[arg(long)]
    x: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    /// Emit JSON lines instead of text.
    #[arg(long)]
    json: bool,
    /// Report elapsed times as zero, for byte-identical reruns.
    #[arg(long)]
    no_timing: bool,
}

const GL_GRID: [(usize, u64); 12] =
    [(1, 2), (1, 3), (1, 5), (1, 7), (2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (3, 2), (3, 3), (3, 5)];
const KLOOSTERMAN_GRID: [(usize, u64); 8] = [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (2, 5), (3, 2), (3, 3)];
const UNITARY_GRID: [(usize, u64); 5] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)];
const GAUSS_QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Default grid restricted to the requested `n` and `q`.
fn grid(default: &[(usize, u64)], n: Option<usize>, q: Option<u64>) -> Vec<(usize, u64)> {
    if let (Some(n), Some(q)) = (n, q) {
        return vec![(n, q)];
    }
    let g: Vec<_> = default
        .iter()
        .copied()
        .filter(|&(a, b)| n.map_or(true, |n| n == a) && q.map_or(true, |q| q == b))
        .collect();
    if g.is_empty() {
        vec![(n.unwrap_or(2), q.unwrap_or(3))]
    } else {
        g
    }
}

fn qs(default: &[u64], q: Option<u64>) -> Vec<u64> {
    q.map_or_else(|| default.to_vec(), |q| vec![q])
}

struct Sink {
    json: bool,
    no_timing: bool,
    passed: usize,
    failed: usize,
}

impl Sink {
    fn emit(&mut self, reports: Vec<VerificationReport>) -> Result<(), Failure> {
        let mut out = std::io::stdout().lock();
        for r in reports {
            let r = if self.no_timing { r.without_timing() } else { r };
            if r.passed() {
                self.passed += 1;
            } else {
                self.failed += 1;
            }
            let line = if self.json { r.to_json() } else { r.to_string() };
            writeln!(out, "{line}").map_err(|e| Failure::Io(e.to_string()))?;
        }
        Ok(())
    }

    fn one(&mut self, r: charsum::Result<VerificationReport>) -> Result<(), Failure> {
        self.emit(vec![r?])
    }

    fn many(&mut self, r: charsum::Result<Vec<VerificationReport>>) -> Result<(), Failure> {
        self.emit(r?)
    }
}

fn run_gl(a: &Args, sel: &Selection, sink: &mut Sink) -> Result<(), Failure> {
    for (n, q) in grid(&GL_GRID, a.n, a.q) {
        sink.many(ps::check_gl(n, q, sel))?;
        sink.one(ps::check_gl_order(n, q))?;
        if n >= 2 {
            sink.many(ps::check_kim(n, q, sel))?;
            sink.many(ps::check_fourier(n, q, sel))?;
            sink.one(ps::check_bound(n, q))?;
        }
    }
    for q in qs(&GAUSS_QS, a.q) {
        sink.many(ps::check_gauss_modulus(q))?;
    }
    Ok(())
}

fn run_kloosterman(a: &Args, sel: &Selection, sink: &mut Sink) -> Result<(), Failure> {
    for (n, q) in grid(&KLOOSTERMAN_GRID, a.n, a.q) {
        sink.many(ps::check_kloosterman(n, q, sel))?;
    }
    Ok(())
}

fn run_unitary(a: &Args, sel: &Selection, sink: &mut Sink) -> Result<(), Failure> {
    let pairs = grid(&UNITARY_GRID, a.n, a.q);
    for &(n, q) in &pairs {
        sink.many(ps::check_unitary(n, q, sel))?;
        sink.one(ps::check_u_order(n, q))?;
    }
    let mut sub_orders: Vec<u64> = pairs.iter().map(|p| p.1).collect();
    sub_orders.sort_unstable();
    sub_orders.dedup();
    for q in sub_orders {
        for m in 1..=4 {
            sink.one(ps::check_invariant_count(q, m))?;
        }
        sink.one(ps::check_odd_degrees(q, a.max_degree.unwrap_or(4)))?;
    }
    Ok(())
}

fn run_lemmas(a: &Args, sink: &mut Sink) -> Result<(), Failure> {
    let big_n = a.max_degree.unwrap_or(5);
    for q in qs(&[2, 3, 4, 5], a.q) {
        for i in [1, 2, 3] {
            sink.many(ps::check_lemma_gl(q, i, big_n))?;
        }
    }
    for q in qs(&[3, 5], a.q) {
        for i in [1, 2] {
            sink.many(ps::check_lemma_kloost(q, i, big_n))?;
        }
    }
    for q in qs(&[2, 3], a.q) {
        for i in [1, 2] {
            sink.many(ps::check_lemma_unitary(q, i, big_n))?;
        }
    }
    Ok(())
}

fn run_euler(a: &Args, sink: &mut Sink) -> Result<(), Failure> {
    for q in qs(&[2, 3, 4, 5], a.q) {
        sink.many(ps::check_euler(q, a.max_degree.unwrap_or(8)))?;
    }
    Ok(())
}

pub fn run(a: Args) -> CmdResult {
    let sel = Selection { chi: a.chi, lam: a.lam, x: a.x, y: a.y };
    let mut sink = Sink { json: a.json, no_timing: a.no_timing, passed: 0, failed: 0 };
    let s = &mut sink;
    match a.scope {
        Scope::Gl => run_gl(&a, &sel, s)?,
        Scope::Kloosterman => run_kloosterman(&a, &sel, s)?,
        Scope::Unitary => run_unitary(&a, &sel, s)?,
        Scope::Lemmas => run_lemmas(&a, s)?,
        Scope::Euler => run_euler(&a, s)?,
        Scope::All => {
            run_gl(&a, &sel, s)?;
            run_kloosterman(&a, &sel, s)?;
            run_unitary(&a, &sel, s)?;
            run_lemmas(&a, s)?;
            run_euler(&a, s)?;
        }
    }
    let summary = format!("{} passed, {} failed", sink.passed, sink.failed);
    if sink.json {
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    Ok(if sink.failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
