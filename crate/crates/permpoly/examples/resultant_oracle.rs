//! Sylvester resultants cross-checked against the root-product formula
//! res(f, g) = lc(f)^deg(g) · Π g(αᵢ) over the roots of f in a splitting
//! extension.
//!
//! Run with: `cargo run -p permpoly --example resultant_oracle`

use permpoly::gf::FieldSpec;
use permpoly::poly::{resultant_product_check, sylvester_resultant, DensePoly, ProductCheck};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> permpoly::Result<()> {
    let spec = FieldSpec::new(5, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // Random pairs: determinant and product formula must agree.
    println!("random pairs over GF(25):");
    for _ in 0..5 {
        let f = random_poly(&spec, &mut rng, 3);
        let g = random_poly(&spec, &mut rng, 2);
        let det = sylvester_resultant(&spec, &f, &g)?;
        match resultant_product_check(&spec, &f, &g)? {
            ProductCheck::Agrees { resultant } => {
                assert_eq!(det, resultant);
                println!("  res({f}, {g}) = {det}  [matches the root product]");
            }
            ProductCheck::Disagrees { details } => panic!("oracle mismatch: {details}"),
            ProductCheck::Unaffordable => println!("  (no affordable splitting extension)"),
        }
    }

    // A designed common root forces the resultant to vanish.
    let shared = spec.from_index(7);
    let f = DensePoly::from_roots(&spec, &[shared, spec.from_index(2)]);
    let g = DensePoly::from_roots(&spec, &[shared, spec.from_index(11), spec.from_index(3)]);
    let det = sylvester_resultant(&spec, &f, &g)?;
    println!("\nshared root {shared}: res(f, g) = {det}");
    assert!(det.is_zero());

    // Degree-0 inputs are rejected rather than silently accepted.
    let constant = DensePoly::new(vec![spec.one()]);
    let err = sylvester_resultant(&spec, &constant, &g).unwrap_err();
    println!("constant input is rejected: {err}");
    Ok(())
}

fn random_poly(spec: &FieldSpec, rng: &mut ChaCha8Rng, degree: usize) -> DensePoly {
    loop {
        let coeffs: Vec<_> = (0..=degree)
            .map(|_| spec.from_index(rng.gen_range(0..spec.order())))
            .collect();
        let p = DensePoly::new(coeffs);
        if p.degree() == Some(degree) {
            return p;
        }
    }
}
