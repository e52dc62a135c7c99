//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;

use causalreg_verify::{run_one, CRITERIA};

const SEED: u64 = 1;

fn main() -> ExitCode {
    // `cargo test -- <n>` runs only criterion n.
    let only: Option<u8> = std::env::args().skip(1).find(|a| !a.starts_with('-')).and_then(|a| a.parse().ok());
    let mut failed = 0;
    let mut ran = 0;
    for id in (1..=CRITERIA).filter(|id| only.is_none_or(|o| o == *id)) {
        let outcome = run_one(id, SEED).expect("criterion ids are contiguous");
        println!("{outcome}");
        ran += 1;
        if !outcome.ok() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
