//! Parameter sweeps: every admissible coefficient A in every tower within
//! caps, cross-tabulating the predicted permutation criterion against an
//! exhaustive scan.
//!
//! Run with: `cargo run -p permpoly --example enumerate_families`

use permpoly::families::{Family, FamilyParams};
use permpoly::poly::is_permutation;
use permpoly::tower::TowerParams;

fn main() -> permpoly::Result<()> {
    // f1/f2 live in characteristic 2 with A³ = 1; the admissible A are the
    // cube roots of unity in GF(2^m)* (three when m is even, one otherwise).
    println!("family  m  q   order  A                predicted  verified  roots");
    for family in [Family::F1, Family::F2] {
        for m in 1..=4u32 {
            let tower = TowerParams::new(2, m)?;
            for a in tower.cube_roots_of_unity() {
                let fp = FamilyParams::new(family, tower.clone(), a)?;
                let report = is_permutation(fp.field(), &fp.polynomial());
                assert_eq!(fp.predicted_permutation(), report.is_permutation);
                println!(
                    "{:<6} {:>2} {:>2} {:>7}  {:<16} {:<10} {:<9} {}",
                    fp.family().to_string(),
                    m,
                    tower.q(),
                    fp.field().order(),
                    a.to_string(),
                    fp.predicted_permutation(),
                    report.is_permutation,
                    report.root_count
                );
            }
        }
        println!();
    }

    // f3 admits any nonzero base-field A in any characteristic, permuting
    // exactly when A³ ≠ 1: sweep the prime powers q ≤ 9.
    println!("family  p  m  q   order  A     A³≠1   verified");
    for q in 2u64..=9 {
        let Some((p, m)) = decompose(q) else { continue };
        let tower = TowerParams::new(p, m)?;
        for a in tower.subfield_units() {
            let fp = FamilyParams::new(Family::F3, tower.clone(), a)?;
            let report = is_permutation(fp.field(), &fp.polynomial());
            assert_eq!(fp.predicted_permutation(), report.is_permutation);
            println!(
                "f3     {p:>2} {m:>2} {q:>2} {:>6}  {:<5} {:<6} {}",
                fp.field().order(),
                a.to_string(),
                fp.predicted_permutation(),
                report.is_permutation
            );
        }
    }
    println!("\nevery row: predicted == verified");
    Ok(())
}

/// `q = p^m` with `p` prime, if `q` is a prime power.
fn decompose(q: u64) -> Option<(u64, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut m = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return (rest == 1).then_some((p, m));
        }
    }
    None
}
