//! Performance smoke check: scan the whole embedded corpus for primitive
//! exceptions up to 10 000 and report the wall time.
//!
//!     cargo run --release -p qform-core --example bench_scan

use qform_core::enumerate::exception_scan;
use qform_core::forms::embedded_corpus;

fn main() {
    let started = std::time::Instant::now();
    let mut total_missing = 0usize;
    for record in embedded_corpus() {
        let scan = exception_scan(&record.lattice(), 10_000).expect("scan runs");
        total_missing += scan.missing.len();
    }
    println!(
        "{} forms scanned to 10^4 in {:?}, {} missing integers in total",
        embedded_corpus().len(),
        started.elapsed(),
        total_missing
    );
}
