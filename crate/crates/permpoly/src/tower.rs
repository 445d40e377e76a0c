//! The cubic-extension view `F_{q^3} / F_q` with `q = p^m`.
//!
//! The big field is built as a single extension `GF(p^{3m})`; the
//! intermediate field `F_q` is the fixed set of the Frobenius power
//! `x ↦ x^q`. [`TowerParams`] precomputes the images of the power basis
//! under that map, so applying Frobenius costs one linear combination
//! instead of a full exponentiation — the workhorse behind every
//! full-field scan in this crate.

use crate::gf::{FieldElement, FieldSpec};
use crate::{Error, Result};

/// A cubic extension `F_{q^3} / F_q`, `q = p^m`, realised inside
/// `GF(p^{3m})`.
#[derive(Debug, Clone)]
pub struct TowerParams {
    p: u64,
    m: u32,
    q: u64,
    spec: FieldSpec,
    /// Images of the power basis under `x ↦ x^q`: `frob_basis[i] = (t^i)^q`.
    frob_basis: Vec<FieldElement>,
}

impl TowerParams {
    /// Build the tower with the deterministic modulus for `GF(p^{3m})`.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        let spec = FieldSpec::new(p, 3 * m)?;
        Self::from_spec(spec, m)
    }

    /// Build the tower on an already-constructed field (e.g. one loaded
    /// from a modulus cache). The field degree must be exactly `3m`.
    pub fn from_spec(spec: FieldSpec, m: u32) -> Result<Self> {
        if m == 0 || spec.degree() != 3 * m {
            return Err(Error::InvalidParams(format!(
                "field of degree {} does not hold a cubic extension of p^{}",
                spec.degree(),
                m
            )));
        }
        let p = spec.p();
        let q = p.pow(m);
        let mut frob_basis = Vec::with_capacity(spec.degree() as usize);
        for i in 0..spec.degree() as u64 {
            let mut coeffs = vec![0u32; i as usize + 1];
            coeffs[i as usize] = 1;
            let ti = spec.from_coeffs(&coeffs)?;
            frob_basis.push(spec.pow(ti, q));
        }
        Ok(Self {
            p,
            m,
            q,
            spec,
            frob_basis,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Order of the base field, `q = p^m`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// The big field `F_{q^3} = GF(p^{3m})`.
    pub fn field(&self) -> &FieldSpec {
        &self.spec
    }

    /// `x^q` via precomputed basis images: Frobenius is `GF(p)`-linear and
    /// fixes prime-field coefficients, so `(Σ cᵢ tⁱ)^q = Σ cᵢ (tⁱ)^q`.
    pub fn frob(&self, a: FieldElement) -> FieldElement {
        let f = &self.spec;
        let mut acc = f.zero();
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c != 0 {
                acc = f.add(acc, f.scalar_mul(c as u64, self.frob_basis[i]));
            }
        }
        acc
    }

    /// `x^(q^i)` by iterating [`Self::frob`].
    pub fn frob_pow(&self, a: FieldElement, i: u32) -> FieldElement {
        let mut out = a;
        for _ in 0..i {
            out = self.frob(out);
        }
        out
    }

    /// Evaluate the linearized map `c[0]·x + c[1]·x^q + c[2]·x^(q²)`.
    pub fn linearized(&self, c: &[FieldElement; 3], x: FieldElement) -> FieldElement {
        let f = &self.spec;
        let xq = self.frob(x);
        let xq2 = self.frob(xq);
        let mut acc = f.mul(c[0], x);
        acc = f.add(acc, f.mul(c[1], xq));
        f.add(acc, f.mul(c[2], xq2))
    }

    /// Whether `a` lies in the base field `F_q`.
    pub fn in_base_field(&self, a: FieldElement) -> bool {
        self.frob(a) == a
    }

    /// The cube roots of unity in `F_{q^3}`, starting with `1`. There are
    /// three exactly when `q ≡ 1 (mod 3)` (then `ω = g^((q³-1)/3)` and both
    /// nontrivial roots already lie in `F_q`, since `3 | q - 1`); otherwise
    /// `x³ = 1` has only the trivial solution.
    pub fn cube_roots_of_unity(&self) -> Vec<FieldElement> {
        let f = &self.spec;
        if self.q % 3 != 1 {
            return vec![f.one()];
        }
        let omega = f.pow(f.generator(), (f.order() - 1) / 3);
        vec![f.one(), omega, f.mul(omega, omega)]
    }

    /// The `q - 1` units of the base field `F_q`, sorted by enumeration
    /// index in the big field.
    pub fn subfield_units(&self) -> Vec<FieldElement> {
        let f = &self.spec;
        let h = f.pow(f.generator(), (f.order() - 1) / (self.q - 1).max(1));
        let mut units = Vec::with_capacity(self.q as usize - 1);
        let mut cur = f.one();
        for _ in 0..self.q - 1 {
            units.push(cur);
            cur = f.mul(cur, h);
        }
        units.sort_by_key(|&u| f.index_of(u));
        units
    }
}
