//! The factored resultants behind the inverse derivations: eliminating the
//! auxiliary unknown from each family's defining equations leaves a
//! resultant that factors into explicit linear and power terms.
//!
//! Run with: `cargo run -p permpoly --example factored_resultant`

use permpoly::families::{Family, FamilyParams, ResultantIdentity};
use permpoly::poly::sylvester_resultant;
use permpoly::tower::TowerParams;

fn main() -> permpoly::Result<()> {
    // f1 over GF(8): for projections (a, b, c) of y and a candidate value
    // v, the elimination pair is two quartics whose resultant factors as
    //   v⁴ · (v + a)⁸ · (α·v + β)
    // with α, β explicit in (a, b, c, A). The library checks the Sylvester
    // determinant against that product at every requested point.
    let tower = TowerParams::new(2, 1)?;
    let a = tower.field().one();
    let fp = FamilyParams::new(Family::F1, tower, a)?;
    let spec = fp.field();

    let y = spec.from_index(3);
    let proj = fp.projections(y);
    let (alpha, beta) = fp.preimage_line(&proj)?;
    println!(
        "f1 over GF(8), y = {y}: projections (a, b, c) = ({}, {}, {})",
        proj[0], proj[1], proj[2]
    );
    println!("linear factor α·v + β with α = {alpha}, β = {beta}");

    let mut equal = 0;
    for v in spec.elements() {
        let (f, g) = fp.elimination_pair(&proj, v);
        let det = sylvester_resultant(spec, &f, &g)?;
        match fp.resultant_factorization_check(&proj, v)? {
            ResultantIdentity::Equal => {
                assert_eq!(det, fp.factored_resultant(&proj, v)?);
                equal += 1;
            }
            ResultantIdentity::Unequal {
                determinant,
                factored,
            } => panic!("factorization failed at v = {v}: {determinant} vs {factored}"),
            ResultantIdentity::Degenerate => println!("  degree drop at v = {v} (skipped)"),
        }
    }
    println!("determinant == factored form at {equal}/{} points v", spec.order());

    // When the permutation holds, the linear factor pins down the unique
    // preimage: α·x + β = 0 at x = f⁻¹(y).
    let x = fp.inverse_eval(y)?.value;
    let at_x = spec.add(spec.mul(alpha, x), beta);
    println!("at x = f⁻¹(y) = {x}: α·x + β = {at_x}");
    assert!(at_x.is_zero());

    // f3's elimination pair is (linear, quadratic) with resultant
    //   A·c·v² · (A²·v - b) · ((A³-1)·v - b·A) · ((a·A² + c·A + b)·v - a·b)
    // — checked here over GF(27) at every v for a sample y.
    let tower = TowerParams::new(3, 1)?;
    let a3 = tower.field().from_coeffs(&[2])?;
    let fp3 = FamilyParams::new(Family::F3, tower, a3)?;
    let spec3 = fp3.field();
    let y3 = spec3.from_index(5);
    let proj3 = fp3.projections(y3);
    let (mut equal, mut degenerate) = (0, 0);
    for v in spec3.elements() {
        match fp3.resultant_factorization_check(&proj3, v)? {
            ResultantIdentity::Equal => equal += 1,
            ResultantIdentity::Degenerate => degenerate += 1,
            ResultantIdentity::Unequal { .. } => panic!("factorization failed at v = {v}"),
        }
    }
    println!(
        "\nf3 over GF(27), y = {y3}: determinant == factored form at {equal} points, {degenerate} degenerate (degree-dropping) points skipped"
    );
    Ok(())
}
