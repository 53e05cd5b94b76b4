// Signed counts of quadruples on two copies of the cone, computed as a
// series square and by direct pairing, and compared with the divisor sum.
//
// ```bash
// cargo run -p fine-arith --example quadruple_counts
// ```

use fine_arith::divisor::fine2_coefficient;
use fine_arith::quad_form::{quaternary_series, quaternary_signed_count_direct};
use fine_arith::FineParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = FineParams::weak(7, 4)?;
    let series = quaternary_series(&params, 30)?;
    for n in 1..=30u64 {
        let via_series = series.coeff(n as usize).unwrap();
        let direct = quaternary_signed_count_direct(&params, n);
        let divisor = fine2_coefficient(&params, n)?;
        assert_eq!(via_series, direct);
        assert_eq!(via_series, divisor);
        assert!(via_series >= 0);
        println!("n = {n:2}: {via_series}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
