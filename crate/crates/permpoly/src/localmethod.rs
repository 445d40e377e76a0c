//! Certifying inverses through Frobenius projections.
//!
//! The engine behind every closed-form inverse here is *local*: a combiner
//! `F` of the three projection values such that
//!
//! ```text
//! F(f(x), f(x)^q, f(x)^(q²)) = x   for every x
//! ```
//!
//! Checking this identity pointwise simultaneously proves that `f` is a
//! bijection (two colliding inputs would need the same combiner output)
//! and tabulates the inverse as `y ↦ F(y, y^q, y^(q²))` —
//! [`lemma_certify`] does exactly that and returns the induced table.
//!
//! The module also packages the numeric identities the derivations lean
//! on: a linear-form invariance for F1 ([`identity_abc_check`]), the
//! nonvanishing of the branch discriminants ([`discriminant_nonvanishing`]),
//! and integer gcd facts about the exponents ([`gcd_sanity`]).

use crate::families::{Family, FamilyParams};
use crate::gf::FieldElement;
use crate::poly::{EvalTable, SparsePoly};
use crate::tower::TowerParams;
use crate::{Error, Result};

/// How to combine the three projection values into a preimage candidate.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // one scheme per run; never stored in bulk
pub enum Combiner {
    /// `(a, _, _) ↦ a` — certifies exactly the identity map.
    FirstProjection,
    /// The closed-form inverse combiner of a trinomial family.
    Family(FamilyParams),
}

/// A candidate inverse scheme: a polynomial, the tower whose Frobenius
/// supplies the projections `x ↦ x^(q^i)` for `i = 0, 1, 2`, and a
/// combiner to certify against it.
#[derive(Debug, Clone)]
pub struct LocalScheme {
    tower: TowerParams,
    f: SparsePoly,
    combiner: Combiner,
}

impl LocalScheme {
    pub fn new(tower: TowerParams, f: SparsePoly, combiner: Combiner) -> Result<Self> {
        if let Combiner::Family(fp) = &combiner {
            if fp.field() != tower.field() || fp.tower().m() != tower.m() {
                return Err(Error::InvalidParams(
                    "combiner family lives in a different tower".into(),
                ));
            }
        }
        Ok(Self { tower, f, combiner })
    }

    /// The scheme for a family instance: its trinomial against its own
    /// closed-form inverse combiner.
    pub fn for_family(params: &FamilyParams) -> Self {
        Self {
            tower: params.tower().clone(),
            f: params.polynomial(),
            combiner: Combiner::Family(params.clone()),
        }
    }

    pub fn tower(&self) -> &TowerParams {
        &self.tower
    }

    pub fn polynomial(&self) -> &SparsePoly {
        &self.f
    }

    /// The three projection values `[v, v^q, v^(q²)]`.
    pub fn project(&self, v: FieldElement) -> [FieldElement; 3] {
        let vq = self.tower.frob(v);
        [v, vq, self.tower.frob(vq)]
    }

    /// Apply the combiner; `None` when it is undefined at this triple
    /// (a branch denominator vanished).
    pub fn combine(&self, proj: [FieldElement; 3]) -> Option<FieldElement> {
        match &self.combiner {
            Combiner::FirstProjection => Some(proj[0]),
            Combiner::Family(fp) => fp.combine(proj).ok().map(|iv| iv.value),
        }
    }
}

/// The projections of `f` at `x`: `a = f(x)`, `b = a^q`, `c = a^(q²)`.
pub fn frob_projections(
    tower: &TowerParams,
    f: &SparsePoly,
    x: FieldElement,
) -> [FieldElement; 3] {
    let a = f.eval(tower.field(), x);
    let b = tower.frob(a);
    let c = tower.frob(b);
    debug_assert_eq!(c, tower.frob_pow(a, 2));
    [a, b, c]
}

/// The first input where certification failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyCounterexample {
    /// The input whose recovery failed.
    pub x: FieldElement,
    /// Its image `f(x)`.
    pub image: FieldElement,
    /// What the combiner produced (`None` if it was undefined there).
    pub recovered: Option<FieldElement>,
}

/// Outcome of [`lemma_certify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyReport {
    /// Whether `F(f(x), f(x)^q, f(x)^(q²)) = x` held for every `x`.
    pub certified: bool,
    /// First failure in enumeration order, if any.
    pub counterexample: Option<CertifyCounterexample>,
    /// On success, the induced inverse `y ↦ F(y, y^q, y^(q²))` tabulated
    /// on the whole field (it equals the brute-force inverse of `f`).
    pub induced_inverse: Option<EvalTable>,
}

/// Check the combiner identity on every field element. Success proves the
/// scheme's polynomial is a bijection *and* delivers its inverse table;
/// any collision in `f` forces a counterexample, so a non-permutation can
/// never certify, whatever the combiner.
pub fn lemma_certify(scheme: &LocalScheme) -> CertifyReport {
    let spec = scheme.tower().field();
    let table = EvalTable::of_sparse(spec, scheme.polynomial());
    let order = spec.order();
    // induced[index of y] = index of the combiner's output at y; when every
    // x passes, f is onto and this fills completely.
    let mut induced = vec![0u64; order as usize];
    for x in spec.elements() {
        let xi = spec.index_of(x);
        let y = spec.from_index(table.image_index(xi));
        let recovered = scheme.combine(scheme.project(y));
        if recovered != Some(x) {
            return CertifyReport {
                certified: false,
                counterexample: Some(CertifyCounterexample {
                    x,
                    image: y,
                    recovered,
                }),
                induced_inverse: None,
            };
        }
        induced[spec.index_of(y) as usize] = xi;
    }
    let inverse =
        EvalTable::of_fn(spec, |y| spec.from_index(induced[spec.index_of(y) as usize]));
    CertifyReport {
        certified: true,
        counterexample: None,
        induced_inverse: Some(inverse),
    }
}

/// F1's linear-form invariance: with `L(v) = v + A·v^q + A²·v^(q²)`,
/// verify `L(x) = L(f₁(x))` for every `x`. This is an algebraic identity —
/// it holds whether or not the instance is a permutation (in particular at
/// excluded `m`).
pub fn identity_abc_check(fp: &FamilyParams) -> Result<bool> {
    if fp.family() != Family::F1 {
        return Err(Error::InvalidParams(format!(
            "the linear-form identity is specific to f1, got {}",
            fp.family()
        )));
    }
    let spec = fp.field();
    let tower = fp.tower();
    let a = fp.coeff_a();
    let coeffs = [spec.one(), a, spec.mul(a, a)];
    let table = EvalTable::of_sparse(spec, &fp.polynomial());
    for x in spec.elements() {
        let y = spec.from_index(table.image_index(spec.index_of(x)));
        if tower.linearized(&coeffs, x) != tower.linearized(&coeffs, y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`discriminant_nonvanishing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscriminantReport {
    /// Whether the discriminant was nonzero at every nonzero input.
    pub holds: bool,
    /// A nonzero `x` where it vanished, when `holds` is false.
    pub witness: Option<FieldElement>,
}

/// The main-branch discriminant of F1/F2, evaluated over projections
/// `(a, b, c)` of `f(x)`: F1 uses `A·a·c + c² + A·b²`, F2 uses
/// `a² + A·a·c + A·b²`. For a permutation instance it is nonzero for all
/// `x ≠ 0` (that is what makes the main inverse branch well-defined); at
/// excluded `m` a vanishing witness exists and is reported.
pub fn discriminant_nonvanishing(fp: &FamilyParams) -> Result<DiscriminantReport> {
    let family = fp.family();
    if family == Family::F3 {
        return Err(Error::InvalidParams(
            "the branch discriminant is specific to f1/f2".into(),
        ));
    }
    let spec = fp.field();
    let tower = fp.tower();
    let big_a = fp.coeff_a();
    let table = EvalTable::of_sparse(spec, &fp.polynomial());
    for x in spec.elements() {
        if x.is_zero() {
            continue;
        }
        let a = spec.from_index(table.image_index(spec.index_of(x)));
        let b = tower.frob(a);
        let c = tower.frob(b);
        let disc = match family {
            Family::F1 => spec.add(
                spec.mul(big_a, spec.mul(a, c)),
                spec.add(spec.mul(c, c), spec.mul(big_a, spec.mul(b, b))),
            ),
            Family::F2 => spec.add(
                spec.mul(a, a),
                spec.add(
                    spec.mul(big_a, spec.mul(a, c)),
                    spec.mul(big_a, spec.mul(b, b)),
                ),
            ),
            Family::F3 => unreachable!(),
        };
        if disc.is_zero() {
            return Ok(DiscriminantReport {
                holds: false,
                witness: Some(x),
            });
        }
    }
    Ok(DiscriminantReport {
        holds: true,
        witness: None,
    })
}

/// Integer gcd facts underpinning the F1/F2 exponent manipulations, with
/// `q = 2^m`: for F1, `gcd(2q−1, q³−1) = 1` exactly when `m ≢ 2 (mod 3)`;
/// for F2, `gcd(q−2, q³−1) = 1` exactly when `m ≢ 1 (mod 3)` (at excluded
/// `m` both gcds are 7; note `gcd(0, 7) = 7` covers F2's `m = 1`).
/// Returns whether the gcd is 1 for the given `m`, computed in `u128`.
pub fn gcd_sanity(m: u32, family: Family) -> Result<bool> {
    if m == 0 || m > 42 {
        return Err(Error::InvalidParams(format!(
            "gcd check needs 1 <= m <= 42 to fit q³ in u128, got {m}"
        )));
    }
    let q: u128 = 1u128 << m;
    let q3m1 = q * q * q - 1;
    let lhs = match family {
        Family::F1 => 2 * q - 1,
        Family::F2 => q - 2,
        Family::F3 => {
            return Err(Error::InvalidParams(
                "the gcd identity is specific to f1/f2".into(),
            ))
        }
    };
    Ok(num_integer::gcd(lhs, q3m1) == 1)
}
