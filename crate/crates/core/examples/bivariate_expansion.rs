// Expand the two-variable product and the signed double sum over the cone,
// and compare them on the certified part of the z-window.
//
// ```bash
// cargo run -p fine-arith --example bivariate_expansion
// ```

use fine_arith::quad_form::{andrews_product, andrews_sum};
use fine_arith::verify::verify_andrews;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (order, width) = (4, 10);
    let product = andrews_product(order, width)?;
    let sum = andrews_sum(order, width)?;
    let t = product.trusted_half_width() as i64;
    for q in 0..=order {
        let row: Vec<i64> = (-t..=t).map(|e| product.coeff(q, e).unwrap()).collect();
        println!("q^{q}, z^{}..z^{}: {row:?}", -t, t);
        assert!((-t..=t).all(|e| product.coeff(q, e) == sum.coeff(q, e)));
    }

    let report = verify_andrews(20, 42)?;
    println!("order 20, window 42: {:?}, {} coefficients", report.status, report.checked_count);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
