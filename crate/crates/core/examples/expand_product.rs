// Expand the Fine product and q^r times its square as truncated series.
//
// ```bash
// cargo run -p fine-arith --example expand_product
// ```

use fine_arith::series::{fine_factors, fine_product, fine_product_squared_shifted};
use fine_arith::{FineParams, PowerSeries, ProductFactor};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = FineParams::new(3, 1)?;
    let order = 12;

    let factors = fine_factors(params.p(), params.r(), order);
    let listed: Vec<String> = factors
        .iter()
        .map(|f| format!("(1-q^{})^{}", f.stride(), f.exponent()))
        .collect();
    println!("factors up to q^{order}: {}", listed.join(" "));

    let f = fine_product(&params, order)?;
    println!("F(q)       = {:?}", f.coeffs());
    assert_eq!(&f.coeffs()[..5], &[1, 1, 2, 0, 2]);

    let g = fine_product_squared_shifted(&params, order)?;
    println!("q^r F(q)^2 = {:?}", g.coeffs());

    // The kernel pieces compose the same way by hand.
    let geometric = PowerSeries::constant(1, 6).apply_factor(ProductFactor::new(2, -1)?)?;
    println!("1/(1-q^2)  = {:?}", geometric.coeffs());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
