//! Lagrange interpolation of an inverse map: tabulate f⁻¹ by brute force,
//! interpolate the table into the unique polynomial of degree < field
//! order, and confirm it matches the closed forms.
//!
//! Run with: `cargo run -p permpoly --example interpolated_inverse`

use permpoly::families::{Family, FamilyParams};
use permpoly::poly::{brute_inverse_table, lagrange_interpolate};
use permpoly::tower::TowerParams;

fn main() -> permpoly::Result<()> {
    let tower = TowerParams::new(2, 1)?;
    let a = tower.field().one();
    let fp = FamilyParams::new(Family::F1, tower, a)?;
    let spec = fp.field();

    println!("f1 over GF(8), A = 1: f = {}", fp.polynomial());

    // Interpolate the brute-force inverse table.
    let inverse = brute_inverse_table(spec, &fp.polynomial())?;
    let points: Vec<_> = spec
        .elements()
        .map(|y| (y, inverse.image(spec, y)))
        .collect();
    let g = lagrange_interpolate(spec, &points, spec.order())?;
    println!(
        "interpolated inverse: g = {g} (degree {})",
        g.degree().expect("nonzero")
    );

    // The interpolant must agree with the piecewise and rational closed
    // forms at every point, and undo f from either side.
    for x in spec.elements() {
        let y = fp.polynomial().eval(spec, x);
        assert_eq!(g.eval(spec, y), x, "g(f(x)) = x");
        assert_eq!(fp.polynomial().eval(spec, g.eval(spec, x)), x, "f(g(x)) = x");
    }
    for y in spec.elements() {
        assert_eq!(g.eval(spec, y), fp.inverse_eval(y)?.value);
        assert_eq!(g.eval(spec, y), fp.rational_inverse_eval(y)?);
    }
    println!("g matches the piecewise and single-fraction forms on all {} points", spec.order());

    // Degree < order: over GF(8) any function is a polynomial of degree
    // at most 7, and this inverse lands at degree 5.
    assert!(g.degree().unwrap() < spec.order() as usize);
    println!("coefficients (constant first): {:?}", g.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    Ok(())
}
