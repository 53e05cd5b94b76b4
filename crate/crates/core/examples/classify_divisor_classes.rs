// Decide, for each n, whether divisors of 2pn + r(p - r) favour the class
// r or -r mod 2p, reading the answer off the cone parity counts.
//
// ```bash
// cargo run -p fine-arith --example classify_divisor_classes
// ```

use fine_arith::verify::{classify, Verdict};
use fine_arith::FineParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = FineParams::strong(5, 1)?;
    let mut tally = [0usize; 3];
    for n in 0..=40 {
        let c = classify(&params, n)?;
        let slot = match c.verdict {
            Verdict::Balanced => 0,
            Verdict::Positive => 1,
            Verdict::Negative => 2,
        };
        tally[slot] += 1;
        if c.verdict == Verdict::Negative {
            println!(
                "n = {n}: even {} odd {} excess {} -> {:?}",
                c.parity.even, c.parity.odd, c.excess_value, c.verdict
            );
        }
    }
    println!("balanced {} positive {} negative {}", tally[0], tally[1], tally[2]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
