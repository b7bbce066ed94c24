//! Runs every registered law and prints one line per law.
//!
//! `cargo run --release --example lawcheck -- [V E O B] [seed]`

use std::time::Instant;

use surface_dpo::lawcheck::{check_all, GenBudget};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric argument"))
        .collect();
    let mut budget = match args.as_slice() {
        [v, e, o, b, ..] => GenBudget::new(*v, *e, *o, *b),
        _ => GenBudget::default(),
    };
    if let Some(seed) = args.get(4) {
        budget = budget.with_seed(*seed as u64);
    }
    let start = Instant::now();
    for report in check_all(&budget) {
        let verdict = if report.passed() { "ok" } else { "FAILED" };
        println!(
            "{:<32} {:<10} {:>8} {verdict}",
            report.law,
            report.mode.name(),
            report.instances
        );
        if let Some(cx) = &report.counterexample {
            println!("    {}", cx.description);
        }
    }
    println!("{:.1?}", start.elapsed());
}
