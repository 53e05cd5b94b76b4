// Enumerate the cone points representing n by the indefinite form, and
// build the signed series from them in one pass.
//
// ```bash
// cargo run -p fine-arith --example cone_representations
// ```

use fine_arith::quad_form::{parity_counts, q_value, representations, signed_series};
use fine_arith::series::fine_product;
use fine_arith::FineParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = FineParams::new(3, 1)?;
    for n in 0..=6 {
        let reps = representations(&params, n);
        let shown: Vec<String> = reps
            .iter()
            .map(|r| format!("({},{}){}", r.k, r.l, if r.sign > 0 { "+" } else { "-" }))
            .collect();
        let counts = parity_counts(&params, n);
        println!("n = {n}: {} | even {} odd {}", shown.join(" "), counts.even, counts.odd);
        for r in &reps {
            assert_eq!(q_value(&params, r.k, r.l)?, n as i64);
        }
    }

    let cone = signed_series(&params, 30)?;
    let product = fine_product(&params, 30)?;
    println!("signed series: {:?}", cone.coeffs());
    assert_eq!(cone, product);
    println!("matches the product expansion to q^30");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
