//! Prime-power finite fields `GF(p^k)` with deterministic construction.
//!
//! A field is represented as `GF(p)[t]` modulo a monic irreducible polynomial
//! of degree `k`. Elements are residues, stored as coefficient vectors with
//! the **constant term first**. Every choice here is deterministic:
//!
//! * The modulus returned by [`find_irreducible`] is the irreducible monic
//!   polynomial of degree `k` whose lower coefficient vector, read as a
//!   base-`p` integer (constant term = least significant digit), is smallest.
//! * Elements are enumerated in ascending order of that same integer
//!   encoding ([`FieldSpec::from_index`] / [`FieldSpec::index_of`]), so
//!   "first element such that …" is well-defined and stable across runs.
//! * [`FieldSpec::generator`] is the first element in enumeration order that
//!   generates the multiplicative group.
//!
//! Orders are capped at `2^24` so that full-field scans stay cheap and all
//! index arithmetic fits comfortably in `u64`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: usize = 24;

/// Largest supported field order (`2^24`).
pub const MAX_ORDER: u64 = 1 << 24;

/// An element of `GF(p^k)`: a residue with coefficients constant-term first.
///
/// Elements are plain `Copy` data tied to a `(p, k)` pair; all arithmetic
/// lives on [`FieldSpec`]. Mixing elements built under different moduli for
/// the same `(p, k)` is not detected and must be avoided by the caller —
/// in practice all moduli come from the same deterministic rule, so this
/// only matters when loading custom moduli from a cache file.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    p: u32,
    k: u8,
    coeffs: [u32; MAX_DEGREE],
}

impl FieldElement {
    /// Coefficients `c_0, c_1, …, c_{k-1}` (constant term first).
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.k as usize]
    }

    /// True if this is the additive identity.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True if this is the multiplicative identity.
    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial notation in `t`, highest power first: `t^2 + 2*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.k as usize).rev() {
            let c = self.coeffs[d];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (d, 1) => write!(f, "t^{d}")?,
                (d, c) => write!(f, "{c}*t^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A concrete field `GF(p^k)` with its modulus fixed.
///
/// Construction validates that `p` is prime and `p^k <= 2^24`. All element
/// operations are methods here; operands must belong to this field's
/// `(p, k)` (checked by assertion, since passing a foreign element is a
/// programming error rather than an input error).
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    order: u64,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    /// Bit-packed modulus for the characteristic-2 fast path (bit `i` =
    /// coefficient of `t^i`). Zero when `p != 2`.
    modulus_mask: u64,
    generator: OnceLock<FieldElement>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Build `GF(p^k)` with the deterministic minimal modulus.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let modulus = find_irreducible(p, k)?;
        Self::assemble(p, k, modulus)
    }

    /// Build `GF(p^k)` from an explicit modulus (constant term first,
    /// monic, irreducible). Degree is inferred from the coefficient count.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidParams(
                "modulus must have degree at least 1".into(),
            ));
        }
        let k = (modulus.len() - 1) as u32;
        validate_field_params(p, k)?;
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidParams("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidParams(format!(
                "modulus coefficients must lie in 0..{p}"
            )));
        }
        if !poly_is_irreducible(p, &modulus) {
            return Err(Error::NotIrreducible { p, coeffs: modulus });
        }
        Self::assemble(p, k, modulus)
    }

    fn assemble(p: u64, k: u32, modulus: Vec<u32>) -> Result<Self> {
        let order = p.pow(k);
        let modulus_mask = if p == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, &c)| m | ((c as u64) << i))
        } else {
            0
        };
        Ok(Self {
            p,
            k,
            order,
            modulus,
            modulus_mask,
            generator: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree `k` over the prime field.
    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Number of elements, `p^k`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The modulus polynomial, constant term first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            p: self.p as u32,
            k: self.k as u8,
            coeffs: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_index(1)
    }

    /// The element whose base-`p` digit expansion (constant term = least
    /// significant digit) equals `idx`. Panics if `idx >= order`.
    pub fn from_index(&self, idx: u64) -> FieldElement {
        assert!(idx < self.order, "index {idx} out of range for this field");
        let mut e = self.zero();
        let mut v = idx;
        for i in 0..self.k as usize {
            e.coeffs[i] = (v % self.p) as u32;
            v /= self.p;
        }
        e
    }

    /// Inverse of [`Self::from_index`].
    pub fn index_of(&self, a: FieldElement) -> u64 {
        self.check(&a);
        let mut idx = 0u64;
        for i in (0..self.k as usize).rev() {
            idx = idx * self.p + a.coeffs[i] as u64;
        }
        idx
    }

    /// Element from explicit coefficients (constant term first, at most `k`
    /// of them); entries are reduced mod `p`.
    pub fn from_coeffs(&self, cs: &[u32]) -> Result<FieldElement> {
        if cs.len() > self.k as usize {
            return Err(Error::InvalidParams(format!(
                "{} coefficients given but the field has degree {}",
                cs.len(),
                self.k
            )));
        }
        let mut e = self.zero();
        for (i, &c) in cs.iter().enumerate() {
            e.coeffs[i] = (c as u64 % self.p) as u32;
        }
        Ok(e)
    }

    /// A scalar from the prime field, reduced mod `p`.
    pub fn scalar(&self, c: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = (c % self.p) as u32;
        e
    }

    /// All `p^k` elements in ascending index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.from_index(i))
    }

    fn check(&self, a: &FieldElement) {
        assert!(
            a.p as u64 == self.p && a.k as u32 == self.k,
            "element of GF({}^{}) used with GF({}^{})",
            a.p,
            a.k,
            self.p,
            self.k
        );
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(&a);
        self.check(&b);
        let mut out = a;
        for i in 0..self.k as usize {
            let s = out.coeffs[i] + b.coeffs[i];
            out.coeffs[i] = if s as u64 >= self.p {
                (s as u64 - self.p) as u32
            } else {
                s
            };
        }
        out
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(&a);
        let mut out = a;
        for c in out.coeffs[..self.k as usize].iter_mut() {
            if *c != 0 {
                *c = (self.p - *c as u64) as u32;
            }
        }
        out
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Multiply by a prime-field scalar in `O(k)` (no polynomial reduction
    /// needed, since scalars commute coefficient-wise).
    pub fn scalar_mul(&self, c: u64, a: FieldElement) -> FieldElement {
        self.check(&a);
        let c = c % self.p;
        let mut out = a;
        for v in out.coeffs[..self.k as usize].iter_mut() {
            *v = (*v as u64 * c % self.p) as u32;
        }
        out
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(&a);
        self.check(&b);
        if self.p == 2 {
            return self.mul_char2(a, b);
        }
        let k = self.k as usize;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            let ai = a.coeffs[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] += ai * b.coeffs[j] as u64;
            }
        }
        for v in prod[..2 * k - 1].iter_mut() {
            *v %= self.p;
        }
        // Fold each power t^d (d >= k) down using t^k = -(m_{k-1} t^{k-1} + … + m_0).
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let mi = self.modulus[i] as u64;
                if mi != 0 {
                    prod[d - k + i] = (prod[d - k + i] + c * (self.p - mi)) % self.p;
                }
            }
        }
        let mut out = self.zero();
        for (o, &v) in out.coeffs[..k].iter_mut().zip(&prod[..k]) {
            *o = v as u32;
        }
        out
    }

    /// Characteristic-2 multiplication on bit-packed coefficients: a
    /// carry-less multiply followed by modulus folding. With `k <= 24` the
    /// product degree is at most 46, so everything fits in one `u64`.
    fn mul_char2(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let k = self.k as usize;
        let mut abits = 0u64;
        let mut bbits = 0u64;
        for i in 0..k {
            abits |= (a.coeffs[i] as u64) << i;
            bbits |= (b.coeffs[i] as u64) << i;
        }
        let mut acc = 0u64;
        let mut rem = abits;
        let mut shifted = bbits;
        while rem != 0 {
            if rem & 1 == 1 {
                acc ^= shifted;
            }
            rem >>= 1;
            shifted <<= 1;
        }
        for d in (k..=2 * k.saturating_sub(1)).rev() {
            if (acc >> d) & 1 == 1 {
                acc ^= self.modulus_mask << (d - k);
            }
        }
        let mut out = self.zero();
        for i in 0..k {
            out.coeffs[i] = ((acc >> i) & 1) as u32;
        }
        out
    }

    /// `a^e` by square-and-multiply. `a^0 = 1` for every `a` (including
    /// zero), and `0^e = 0` for `e >= 1` — so `x ↦ x^(order-2)` is the
    /// inverse-or-zero power map, never a division.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        self.check(&a);
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Invert a slice of nonzero elements with one field inversion total
    /// (prefix-product trick). Errors if any input is zero.
    pub fn batch_invert(&self, xs: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = self.one();
        for &x in xs {
            if x.is_zero() {
                return Err(Error::ZeroInverse);
            }
            acc = self.mul(acc, x);
            prefix.push(acc);
        }
        let mut out = vec![self.zero(); xs.len()];
        let mut suffix_inv = self.inv(acc)?;
        for i in (0..xs.len()).rev() {
            out[i] = if i == 0 {
                suffix_inv
            } else {
                self.mul(suffix_inv, prefix[i - 1])
            };
            suffix_inv = self.mul(suffix_inv, xs[i]);
        }
        Ok(out)
    }

    /// The first multiplicative generator in enumeration order. Cached after
    /// the first call. For `GF(2)` this is `1` (the group is trivial).
    pub fn generator(&self) -> FieldElement {
        *self.generator.get_or_init(|| {
            let radicals = distinct_prime_factors(self.order - 1);
            for i in 1..self.order {
                let g = self.from_index(i);
                if radicals
                    .iter()
                    .all(|&r| !self.pow(g, (self.order - 1) / r).is_one())
                {
                    return g;
                }
            }
            unreachable!("the multiplicative group of a finite field is cyclic")
        })
    }

    /// Whether `a` lies in the subfield of order `q`. Errors unless
    /// `q = p^d` with `d >= 1` dividing `k`.
    pub fn is_in_subfield(&self, q: u64, a: FieldElement) -> Result<bool> {
        self.check(&a);
        let mut d = 0u32;
        let mut v = 1u64;
        while v < q {
            v = v.saturating_mul(self.p);
            d += 1;
        }
        if v != q || d == 0 || !self.k.is_multiple_of(d) {
            return Err(Error::InvalidParams(format!(
                "{} is not the order of a subfield of GF({}^{})",
                q, self.p, self.k
            )));
        }
        Ok(self.pow(a, q) == a)
    }
}

fn validate_field_params(p: u64, k: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidParams("degree must be at least 1".into()));
    }
    match p.checked_pow(k) {
        Some(order) if order <= MAX_ORDER => Ok(()),
        _ => Err(Error::OrderTooLarge { p, k }),
    }
}

/// The monic irreducible of degree `k` over `GF(p)` whose lower-coefficient
/// vector encodes the smallest base-`p` integer (constant term = least
/// significant digit). Constant term first in the result. For `k = 1` this
/// is `t` itself.
pub fn find_irreducible(p: u64, k: u32) -> Result<Vec<u32>> {
    validate_field_params(p, k)?;
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    let total = p.pow(k);
    for idx in 1..total {
        let mut digits = Vec::with_capacity(k as usize + 1);
        let mut v = idx;
        for _ in 0..k {
            digits.push((v % p) as u32);
            v /= p;
        }
        if digits[0] == 0 {
            // Divisible by t, hence reducible for k >= 2.
            continue;
        }
        digits.push(1);
        if poly_is_irreducible(p, &digits) {
            return Ok(digits);
        }
    }
    unreachable!("irreducible polynomials exist for every degree")
}

/// Irreducibility of a monic `f` over `GF(p)`: `f` of degree `k >= 2` is
/// irreducible iff `gcd(f, t^(p^i) - t) = 1` for `1 <= i <= k/2`, since any
/// nontrivial factorization contains an irreducible factor of degree at most
/// `k/2` and the degree-`d` irreducibles are exactly the divisors of
/// `t^(p^d) - t` new at level `d`.
pub(crate) fn poly_is_irreducible(p: u64, f: &[u32]) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let fz: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let mut r = vec![0u64, 1]; // t
    for _ in 1..=k / 2 {
        r = pf_powmod(&r, p, &fz, p);
        let mut diff = r.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        pf_trim(&mut diff);
        if diff.is_empty() {
            // f divides t^(p^i) - t outright, so all its factors have
            // degree dividing i < k.
            return false;
        }
        if pf_gcd(fz.clone(), diff, p).len() > 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// GF(p)[t] helpers on plain coefficient vectors (constant term first).
// ---------------------------------------------------------------------------

fn pf_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo `m` (in place). `m` need not be monic.
fn pf_rem(a: &mut Vec<u64>, m: &[u64], p: u64) {
    pf_trim(a);
    let dm = m.len() - 1;
    let lead_inv = mod_pow_u64(m[dm], p - 2, p);
    while a.len() > dm {
        let da = a.len() - 1;
        let c = (a[da] * lead_inv) % p;
        if c != 0 {
            for i in 0..=dm {
                let sub = (c * m[i]) % p;
                a[da - dm + i] = (a[da - dm + i] + p - sub) % p;
            }
        }
        a.pop();
        pf_trim(a);
    }
}

fn pf_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    pf_rem(&mut prod, m, p);
    prod
}

fn pf_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = base.to_vec();
    pf_rem(&mut b, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = pf_mulmod(&result, &b, m, p);
        }
        b = pf_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Monic gcd; the zero polynomial is the empty vector.
fn pf_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    pf_trim(&mut a);
    pf_trim(&mut b);
    while !b.is_empty() {
        pf_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let inv = mod_pow_u64(lead, p - 2, p);
        for c in a.iter_mut() {
            *c = (*c * inv) % p;
        }
    }
    a
}

fn mod_pow_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Modulus cache
// ---------------------------------------------------------------------------

/// A persistent map `(p, k) -> modulus` so repeated runs skip the
/// irreducible search and — more importantly — stay pinned to the same
/// modulus even if the search rule ever changes.
///
/// File format: one entry per line, `p k: c0 c1 … ck` with the constant
/// term first. Lines starting with `#` and blank lines are ignored. Every
/// entry is re-validated on load (monic, in-range, irreducible); a bad
/// entry fails the whole load rather than being silently dropped.
#[derive(Debug)]
pub struct ModulusCache {
    path: Option<PathBuf>,
    entries: BTreeMap<(u64, u32), Vec<u32>>,
}

impl ModulusCache {
    /// A cache with no backing file.
    pub fn in_memory() -> Self {
        Self {
            path: None,
            entries: BTreeMap::new(),
        }
    }

    /// Open (or prepare to create) a cache at `path`. An existing file is
    /// parsed and validated eagerly.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            for (n, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (head, tail) = line
                    .split_once(':')
                    .ok_or_else(|| Error::Cache(format!("line {}: missing ':'", n + 1)))?;
                let head: Vec<u64> = head
                    .split_whitespace()
                    .map(|w| w.parse::<u64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Cache(format!("line {}: {}", n + 1, e)))?;
                let [p, k] = head[..] else {
                    return Err(Error::Cache(format!(
                        "line {}: expected 'p k' before ':'",
                        n + 1
                    )));
                };
                let coeffs: Vec<u32> = tail
                    .split_whitespace()
                    .map(|w| w.parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Cache(format!("line {}: {}", n + 1, e)))?;
                if coeffs.len() as u64 != k + 1 {
                    return Err(Error::Cache(format!(
                        "line {}: degree-{} entry needs {} coefficients, got {}",
                        n + 1,
                        k,
                        k + 1,
                        coeffs.len()
                    )));
                }
                FieldSpec::with_modulus(p, coeffs.clone())
                    .map_err(|e| Error::Cache(format!("line {}: {}", n + 1, e)))?;
                entries.insert((p, k as u32), coeffs);
            }
        }
        Ok(Self {
            path: Some(path),
            entries,
        })
    }

    /// The field for `(p, k)`, using the cached modulus when present;
    /// otherwise the modulus is computed and appended to the backing file.
    pub fn field_spec(&mut self, p: u64, k: u32) -> Result<FieldSpec> {
        if let Some(m) = self.entries.get(&(p, k)) {
            return FieldSpec::with_modulus(p, m.clone());
        }
        let spec = FieldSpec::new(p, k)?;
        let modulus = spec.modulus().to_vec();
        if let Some(path) = &self.path {
            use std::io::Write as _;
            let mut line = format!("{p} {k}:");
            for c in &modulus {
                line.push(' ');
                line.push_str(&c.to_string());
            }
            line.push('\n');
            let mut fh = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)?;
            fh.write_all(line.as_bytes())?;
        }
        self.entries.insert((p, k), modulus);
        Ok(spec)
    }

    /// Number of cached entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn f4096() -> &'static FieldSpec {
        static F: OnceLock<FieldSpec> = OnceLock::new();
        F.get_or_init(|| FieldSpec::new(2, 12).unwrap())
    }

    fn f243() -> &'static FieldSpec {
        static F: OnceLock<FieldSpec> = OnceLock::new();
        F.get_or_init(|| FieldSpec::new(3, 5).unwrap())
    }

    proptest! {
        #[test]
        fn char2_ring_laws(a in 0u64..4096, b in 0u64..4096, c in 0u64..4096) {
            let f = f4096();
            let (a, b, c) = (f.from_index(a), f.from_index(b), f.from_index(c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.pow(a, f.order()), a);
        }

        #[test]
        fn char3_ring_laws(a in 0u64..243, b in 0u64..243, c in 0u64..243) {
            let f = f243();
            let (a, b, c) = (f.from_index(a), f.from_index(b), f.from_index(c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.pow(a, f.order()), a);
        }

        #[test]
        fn index_roundtrip(i in 0u64..4096) {
            let f = f4096();
            prop_assert_eq!(f.index_of(f.from_index(i)), i);
        }
    }
}
