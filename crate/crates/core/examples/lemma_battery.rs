//! Runs the full lemma battery on the square and join fixtures and prints one
//! line per check.
//!
//! ```text
//! cargo run --release --example lemma_battery -- [radius_b] [radius_d]
//! ```

use std::time::Instant;

use evencox::davis::BallComplex;
use evencox::fixtures;
use evencox::ruins::run_battery;

fn main() -> evencox::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("radius"));
    let rb = args.next().unwrap_or(5);
    let rd = args.next().unwrap_or(3);
    for (name, text, radius) in [("SYS-B", fixtures::SYS_B, rb), ("SYS-D", fixtures::SYS_D, rd)] {
        let start = Instant::now();
        let b = BallComplex::new(&fixtures::load(text), radius);
        println!("{name}, radius {radius}: {} cells", b.len());
        for r in run_battery(&b, None)? {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            println!("  {:<16} {verdict}  {:>9} instances", r.lemma, r.instances_checked);
            for f in r.failures.iter().take(3) {
                println!("      {f}");
            }
        }
        println!("  {:.2?}", start.elapsed());
    }
    Ok(())
}
