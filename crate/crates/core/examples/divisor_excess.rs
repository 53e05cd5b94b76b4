// Divisor-class counts, the excess function, and the divisor-side
// coefficients of both product identities.
//
// ```bash
// cargo run -p fine-arith --example divisor_excess
// ```

use fine_arith::divisor::{
    class_count, divisors, excess, fine1_argument, fine1_coefficient, fine2_coefficient, fine2_terms,
    DivisorClassQuery,
};
use fine_arith::FineParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("divisors(14) = {:?}", divisors(14)?);
    let q = DivisorClassQuery::new(14, 1, 6)?;
    println!("D_{{1,6}}(14) = {}", class_count(&q));
    println!("E_1(20; 6)   = {}", excess(20, 1, 6)?);

    let params = FineParams::strong(3, 1)?;
    for n in 0..6 {
        println!(
            "n = {n}: E_1({}; 6) = {}",
            fine1_argument(&params, n),
            fine1_coefficient(&params, n)?
        );
    }

    let weak = FineParams::weak(5, 3)?;
    for n in 1..6 {
        let terms: Vec<i64> = fine2_terms(&weak, n)?.iter().map(|t| t.value()).collect();
        println!("(p, r) = (5, 3), n = {n}: summands {terms:?} -> {}", fine2_coefficient(&weak, n)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
