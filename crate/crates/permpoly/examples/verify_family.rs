//! Exhaustive permutation checks for the three trinomial families.
//!
//! Run with: `cargo run -p permpoly --example verify_family`

use permpoly::families::{Family, FamilyParams};
use permpoly::poly::is_permutation;
use permpoly::tower::TowerParams;

fn main() -> permpoly::Result<()> {
    // Family f1 over the cubic tower GF(2^(3m))/GF(2^m):
    //   f1 = x + A·x^(q²-q+1) + x^(q²+q-1),  A³ = 1.
    // It permutes the big field exactly when m ≢ 2 (mod 3), and the
    // criterion is sharp: m = 2 genuinely fails.
    for m in [1u32, 2, 3, 4] {
        let tower = TowerParams::new(2, m)?;
        let a = tower.field().one();
        let fp = FamilyParams::new(Family::F1, tower, a)?;
        let report = is_permutation(fp.field(), &fp.polynomial());
        println!(
            "f1, m = {m} (GF(2^{}), {} elements): predicted {} / observed {}",
            3 * m,
            fp.field().order(),
            verdict(fp.predicted_permutation()),
            verdict(report.is_permutation),
        );
        if let Some((x1, x2)) = report.collision {
            println!(
                "    collision: f({x1}) = f({x2}); f has {} roots",
                report.root_count
            );
        }
    }

    // Family f3 works in any characteristic:
    //   f3 = x + A·x^(q²-q+1) + A²·x^(q²),  A ∈ GF(q)*,
    // and permutes iff A³ ≠ 1. Over GF(3) both units have A³ = ±1, so
    // A = 2 (with A³ = 8 = 2 ≠ 1) permutes while A = 1 does not.
    println!();
    let tower = TowerParams::new(3, 1)?;
    for a in tower.subfield_units() {
        let fp = FamilyParams::new(Family::F3, tower.clone(), a)?;
        let report = is_permutation(fp.field(), &fp.polynomial());
        println!(
            "f3 over GF(27), A = {a}: predicted {} / observed {} (f = {})",
            verdict(fp.predicted_permutation()),
            verdict(report.is_permutation),
            fp.polynomial(),
        );
    }
    Ok(())
}

fn verdict(b: bool) -> &'static str {
    if b {
        "permutation"
    } else {
        "not a permutation"
    }
}
