//! The acceptance suite over three independent parameter draws: one line per criterion.

use std::process::ExitCode;

use qde_lab::accept::{run_all, suite_ok};

const SEEDS: [u64; 3] = [1, 2, 3];

fn main() -> ExitCode {
    println!("acceptance: seeds {SEEDS:?}");
    let checks = run_all(&SEEDS, |c| {
        println!("{}", c.line());
        if !c.pass {
            for d in &c.detail {
                println!("    {d}");
            }
        }
    });
    let ok = suite_ok(&checks, false);
    println!("acceptance: {}", if ok { "ok" } else { "FAILED" });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
