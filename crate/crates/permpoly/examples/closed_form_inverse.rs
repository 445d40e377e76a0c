//! The piecewise and single-fraction inverse formulas, cross-checked
//! against brute force.
//!
//! Run with: `cargo run -p permpoly --example closed_form_inverse`

use permpoly::families::{Family, FamilyParams, InverseBranch};
use permpoly::poly::brute_inverse_table;
use permpoly::tower::TowerParams;

fn main() -> permpoly::Result<()> {
    // f1 over GF(8) (q = 2, A = 1). The piecewise inverse recovers x from
    // the three projections (y, y^q, y^(q²)) of y = f(x), choosing a branch
    // by whether the linear form a + A·b + A²·c vanishes.
    let tower = TowerParams::new(2, 1)?;
    let a = tower.field().one();
    let fp = FamilyParams::new(Family::F1, tower, a)?;
    let spec = fp.field();

    println!("f1 over GF(8), A = 1: f = {}", fp.polynomial());
    println!("\n y = f(x)            x = f⁻¹(y)          branch");
    let brute = brute_inverse_table(spec, &fp.polynomial())?;
    for y in spec.elements() {
        let inv = fp.inverse_eval(y)?;
        assert_eq!(inv.value, brute.image(spec, y), "closed form vs brute");
        println!(
            " {:<19} {:<19} {}",
            y.to_string(),
            inv.value.to_string(),
            branch_name(inv.branch)
        );
    }

    // The same inverse collapses to one rational expression num/den whose
    // denominator is nonzero wherever it is needed.
    let (num, den) = fp.rational_inverse().expect("f1 has a rational form");
    println!("\nsingle-fraction form: f⁻¹(y) = N(y)/D(y) with");
    println!("  N = {num}");
    println!("  D = {den}");
    for y in spec.elements() {
        assert_eq!(fp.rational_inverse_eval(y)?, brute.image(spec, y));
    }
    println!("  checked N/D against brute force on all {} points", spec.order());

    // f3 (any characteristic) has a total one-line inverse: here over
    // GF(27) with q = 3, A = 2.
    let tower = TowerParams::new(3, 1)?;
    let a = tower.field().from_coeffs(&[2])?;
    let fp3 = FamilyParams::new(Family::F3, tower, a)?;
    let spec3 = fp3.field();
    let brute3 = brute_inverse_table(spec3, &fp3.polynomial())?;
    for y in spec3.elements() {
        assert_eq!(fp3.inverse_eval(y)?.value, brute3.image(spec3, y));
    }
    println!(
        "\nf3 over GF(27), A = 2: single-formula inverse verified on all {} points",
        spec3.order()
    );
    Ok(())
}

fn branch_name(b: InverseBranch) -> &'static str {
    match b {
        InverseBranch::Linear => "linear form ≠ 0",
        InverseBranch::Kernel => "linear form = 0, y ≠ 0",
        InverseBranch::Origin => "y = 0",
        InverseBranch::Total => "total formula",
    }
}
