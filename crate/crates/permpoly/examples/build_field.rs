//! Constructing fields, the element enumeration order, and generators.
//!
//! Run with: `cargo run -p permpoly --example build_field`

use permpoly::gf::{FieldSpec, ModulusCache};

fn main() -> permpoly::Result<()> {
    // A field is GF(p)[t] modulo a deterministically chosen irreducible:
    // the first monic irreducible of degree k in the ascending element
    // encoding, so every run of the library agrees on the representation.
    for (p, k) in [(2, 3), (3, 3), (2, 12), (7, 4)] {
        let f = FieldSpec::new(p, k)?;
        println!(
            "GF({p}^{k}): {} elements, modulus coefficients (constant first) {:?}",
            f.order(),
            f.modulus()
        );
    }

    // Elements are indexed 0..order by their coefficient vectors read as a
    // base-p integer, constant term least significant. Index 0 is zero,
    // index 1 is one, index p is t.
    let f8 = FieldSpec::new(2, 3)?;
    println!("\nGF(8) in enumeration order:");
    for x in f8.elements() {
        println!("  index {} = {x}", f8.index_of(x));
    }

    // The generator is the least-index element whose order is `order - 1`;
    // its powers sweep the whole unit group.
    let g = f8.generator();
    println!("\ngenerator of GF(8)*: g = {g}");
    for j in 0..7 {
        println!("  g^{j} = {}", f8.pow(g, j));
    }

    // Moduli can be persisted so separate processes (and the CLI, via
    // --modulus-cache or PERMPOLY_MODULUS_CACHE) agree without re-searching.
    let dir = std::env::temp_dir().join("permpoly-example-cache.txt");
    let mut cache = ModulusCache::open(&dir)?;
    let f27 = cache.field_spec(3, 3)?;
    println!(
        "\ncached modulus for GF(27) in {}: {:?}",
        dir.display(),
        f27.modulus()
    );
    Ok(())
}
