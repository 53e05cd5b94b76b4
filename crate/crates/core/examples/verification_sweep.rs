// Run every identity check over all valid (p, r) with p <= 8 and print a
// one-line summary per cell.
//
// ```bash
// cargo run --release -p fine-arith --example verification_sweep
// ```

use fine_arith::verify::{sweep, Subject};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = sweep(8, 200)?;
    for cell in &report.reports {
        let subject = match cell.subject {
            Subject::Params(p) => p.to_string(),
            Subject::Bivariate => "bivariate".to_string(),
        };
        println!(
            "{:8} {:18} {:?} checked {}",
            cell.identity.as_str(),
            subject,
            cell.status,
            cell.checked_count
        );
    }
    println!("{} cells, {} failed", report.cells, report.failed_cells);
    assert_eq!(report.failed_cells, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
