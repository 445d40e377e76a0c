//! Three families of permutation trinomials over `F_{q^3}` and their
//! closed-form compositional inverses.
//!
//! With `q = p^m` and coefficient `A`:
//!
//! * **F1** (char 2, `A³ = 1`): `x + A·x^(q²-q+1) + x^(q²+q-1)`,
//!   a permutation iff `m ≢ 2 (mod 3)`.
//! * **F2** (char 2, `A³ = 1`): `x + A·x^(q³-q²+q) + x^(q²+q-1)`,
//!   a permutation iff `m ≢ 1 (mod 3)`.
//! * **F3** (any char, `A ∈ F_q*`): `x + A·x^(q²-q+1) + A²·x^(q²)`,
//!   a permutation iff `A³ ≠ 1`.
//!
//! Each family's inverse is computable pointwise from the Frobenius
//! projections `(y, y^q, y^(q²))` of the target value — a *combiner*
//! evaluation ([`FamilyParams::combine`]) that never touches the whole
//! field. F1 and F2 are piecewise (two branches plus the origin); F3 is a
//! single total formula. F1 and F2 additionally admit one global rational
//! expression `num(y) / den(y)` in sparse-exponent form
//! ([`FamilyParams::rational_inverse`]).
//!
//! The derivation route is also checkable numerically: eliminating the
//! auxiliary unknown from the two defining equations yields a pair of
//! polynomials whose Sylvester resultant factors with a single linear
//! factor carrying the preimage ([`FamilyParams::resultant_factorization_check`]).

use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{sylvester_resultant, DensePoly, EvalTable, SparsePoly};
use crate::tower::TowerParams;
use crate::{Error, Result};

/// Which trinomial family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F1,
    F2,
    F3,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::F1 => "f1",
            Family::F2 => "f2",
            Family::F3 => "f3",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which branch of the piecewise inverse produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InverseBranch {
    /// The associated linear form was nonzero (main branch).
    Linear,
    /// The linear form vanished on a nonzero input.
    Kernel,
    /// The input was zero.
    Origin,
    /// Single-formula families have no branching.
    Total,
}

/// The result of one combiner evaluation: the recovered preimage and the
/// branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InverseValue {
    pub value: FieldElement,
    pub branch: InverseBranch,
}

/// Outcome of comparing the Sylvester determinant of the eliminating pair
/// against its displayed factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // Unequal is a cold diagnostic payload
pub enum ResultantIdentity {
    Equal,
    Unequal {
        determinant: FieldElement,
        factored: FieldElement,
    },
    /// The pair dropped degree, so the fixed-degree factorization does not
    /// apply (F3 only; the F1/F2 pairs have unit-like leading coefficients).
    Degenerate,
}

/// A fully-specified family instance: the tower, the family, and the
/// coefficient `A` (validated on construction).
#[derive(Debug, Clone)]
pub struct FamilyParams {
    family: Family,
    tower: TowerParams,
    a: FieldElement,
}

impl FamilyParams {
    /// Validate and build. F1/F2 require characteristic 2 and `A³ = 1`;
    /// F3 requires `A` to be a nonzero base-field element (and permits
    /// `A³ = 1`, which simply predicts a non-permutation).
    pub fn new(family: Family, tower: TowerParams, a: FieldElement) -> Result<Self> {
        let f = tower.field();
        match family {
            Family::F1 | Family::F2 => {
                if tower.p() != 2 {
                    return Err(Error::InvalidParams(format!(
                        "{family} is defined in characteristic 2, got p = {}",
                        tower.p()
                    )));
                }
                if !f.pow(a, 3).is_one() {
                    return Err(Error::InvalidParams(format!(
                        "{family} needs A with A³ = 1, got A = {a}"
                    )));
                }
            }
            Family::F3 => {
                if a.is_zero() || !tower.in_base_field(a) {
                    return Err(Error::InvalidParams(format!(
                        "f3 needs a nonzero base-field coefficient, got A = {a}"
                    )));
                }
            }
        }
        Ok(Self { family, tower, a })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn tower(&self) -> &TowerParams {
        &self.tower
    }

    pub fn field(&self) -> &FieldSpec {
        self.tower.field()
    }

    /// The coefficient `A`.
    pub fn coeff_a(&self) -> FieldElement {
        self.a
    }

    /// The trinomial itself, with raw (unnormalized) exponents.
    pub fn polynomial(&self) -> SparsePoly {
        let f = self.field();
        let q = self.tower.q();
        let one = f.one();
        let a = self.a;
        match self.family {
            Family::F1 => SparsePoly::new(
                f,
                [(1, one), (q * q - q + 1, a), (q * q + q - 1, one)],
            ),
            Family::F2 => SparsePoly::new(
                f,
                [(1, one), (q * q * q - q * q + q, a), (q * q + q - 1, one)],
            ),
            Family::F3 => SparsePoly::new(
                f,
                [(1, one), (q * q - q + 1, a), (q * q, f.mul(a, a))],
            ),
        }
    }

    /// Whether this instance is a permutation, by the family criterion
    /// (no scan): F1 iff `m ≢ 2 (mod 3)`, F2 iff `m ≢ 1 (mod 3)`,
    /// F3 iff `A³ ≠ 1`.
    pub fn predicted_permutation(&self) -> bool {
        match self.family {
            Family::F1 => self.tower.m() % 3 != 2,
            Family::F2 => self.tower.m() % 3 != 1,
            Family::F3 => !self.field().pow(self.a, 3).is_one(),
        }
    }

    /// Frobenius projections `[y, y^q, y^(q²)]`.
    pub fn projections(&self, y: FieldElement) -> [FieldElement; 3] {
        let yq = self.tower.frob(y);
        [y, yq, self.tower.frob(yq)]
    }

    /// The inverse combiner: recover the unique preimage of a value from
    /// its Frobenius projections `proj = [y, y^q, y^(q²)]`. Errors with
    /// [`Error::Contract`] if a branch denominator vanishes, which the
    /// underlying theory rules out whenever the instance is a permutation.
    pub fn combine(&self, proj: [FieldElement; 3]) -> Result<InverseValue> {
        match self.family {
            Family::F1 => self.combine_f1(proj),
            Family::F2 => self.combine_f2(proj),
            Family::F3 => Ok(self.combine_f3(proj)),
        }
    }

    /// Evaluate the piecewise (F1/F2) or total (F3) inverse at one point.
    pub fn inverse_eval(&self, y: FieldElement) -> Result<InverseValue> {
        self.combine(self.projections(y))
    }

    fn combine_f1(&self, [v0, v1, v2]: [FieldElement; 3]) -> Result<InverseValue> {
        let f = self.field();
        let tw = &self.tower;
        let a = self.a;
        let a2 = f.mul(a, a);
        // Linear form v0 + A·v1 + A²·v2.
        let lin = f.add(v0, f.add(f.mul(a, v1), f.mul(a2, v2)));
        if !lin.is_zero() {
            // w = A·v0·v2 + v2² + A·v1²; the preimage is
            // w^(q+1)·lin / (w^(q+1) + A·w^(q(q+1)) + A²·w^(q²(q+1))).
            let w = f.add(
                f.mul(a, f.mul(v0, v2)),
                f.add(f.mul(v2, v2), f.mul(a, f.mul(v1, v1))),
            );
            let n0 = f.mul(w, tw.frob(w));
            let n0q = tw.frob(n0);
            let n0q2 = tw.frob(n0q);
            let den = f.add(n0, f.add(f.mul(a, n0q), f.mul(a2, n0q2)));
            if den.is_zero() {
                return Err(Error::Contract(
                    "f1 linear-branch denominator vanished".into(),
                ));
            }
            let value = f.mul(f.mul(n0, lin), f.inv(den)?);
            return Ok(InverseValue {
                value,
                branch: InverseBranch::Linear,
            });
        }
        if !v0.is_zero() {
            let b2 = f.mul(v1, v1);
            let num = f.mul(f.mul(v0, b2), v2);
            let den = f.add(
                f.mul(b2, v2),
                f.add(f.mul(a, f.mul(v0, b2)), f.mul(v0, f.mul(v2, v2))),
            );
            if den.is_zero() {
                return Err(Error::Contract(
                    "f1 kernel-branch denominator vanished".into(),
                ));
            }
            return Ok(InverseValue {
                value: f.mul(num, f.inv(den)?),
                branch: InverseBranch::Kernel,
            });
        }
        Ok(InverseValue {
            value: f.zero(),
            branch: InverseBranch::Origin,
        })
    }

    fn combine_f2(&self, [v0, v1, v2]: [FieldElement; 3]) -> Result<InverseValue> {
        let f = self.field();
        let tw = &self.tower;
        let a = self.a;
        let a2 = f.mul(a, a);
        // Linear form v0 + A²·v1 + A·v2 (coefficients swapped vs. F1).
        let lin = f.add(v0, f.add(f.mul(a2, v1), f.mul(a, v2)));
        if !lin.is_zero() {
            // w = v0² + A·v0·v2 + A·v1².
            let w = f.add(
                f.mul(v0, v0),
                f.add(f.mul(a, f.mul(v0, v2)), f.mul(a, f.mul(v1, v1))),
            );
            let n0 = f.mul(w, tw.frob(w));
            let n0q = tw.frob(n0);
            let n0q2 = tw.frob(n0q);
            let den = f.add(n0, f.add(f.mul(a2, n0q), f.mul(a, n0q2)));
            if den.is_zero() {
                return Err(Error::Contract(
                    "f2 linear-branch denominator vanished".into(),
                ));
            }
            let value = f.mul(f.mul(n0, lin), f.inv(den)?);
            return Ok(InverseValue {
                value,
                branch: InverseBranch::Linear,
            });
        }
        if !v0.is_zero() {
            // The F1 kernel expression under the inverse-Frobenius symmetry
            // (v1 and v2 trade places): v0·v1·v2² / (v1·v2² + A·v0·v2² + v0·v1²).
            let c2 = f.mul(v2, v2);
            let num = f.mul(f.mul(v0, v1), c2);
            let den = f.add(
                f.mul(v1, c2),
                f.add(f.mul(a, f.mul(v0, c2)), f.mul(v0, f.mul(v1, v1))),
            );
            if den.is_zero() {
                return Err(Error::Contract(
                    "f2 kernel-branch denominator vanished".into(),
                ));
            }
            return Ok(InverseValue {
                value: f.mul(num, f.inv(den)?),
                branch: InverseBranch::Kernel,
            });
        }
        Ok(InverseValue {
            value: f.zero(),
            branch: InverseBranch::Origin,
        })
    }

    fn combine_f3(&self, [v0, v1, v2]: [FieldElement; 3]) -> InverseValue {
        let f = self.field();
        let a = self.a;
        let a2 = f.mul(a, a);
        // (A²·v0 + v1 + A·v2)^(Q-2) · v0 · v1 — the power map sends zero
        // to zero, so this is total.
        let s = f.add(f.mul(a2, v0), f.add(v1, f.mul(a, v2)));
        let s_inv_or_zero = f.pow(s, f.order() - 2);
        InverseValue {
            value: f.mul(s_inv_or_zero, f.mul(v0, v1)),
            branch: InverseBranch::Total,
        }
    }

    /// The global rational inverse `num(y)/den(y)` for F1/F2 (`None` for
    /// F3, whose single formula is already total). Exponents are written
    /// in terms of `q`; coinciding exponents (small `q`) merge — and may
    /// cancel — in the [`SparsePoly`] constructor.
    pub fn rational_inverse(&self) -> Option<(SparsePoly, SparsePoly)> {
        let f = self.field();
        let q = self.tower.q();
        let one = f.one();
        let a = self.a;
        let a2 = f.mul(a, a);
        match self.family {
            Family::F1 => {
                let num = SparsePoly::new(
                    f,
                    [
                        (2 * q + 2, a2),
                        (q * q + 3, a2),
                        (2 * q * q + q + 1, a2),
                        (4 * q * q, a2),
                        (2 * q * q + 2, a),
                        (3 * q + 1, one),
                        (q * q + q + 2, one),
                        (2 * q * q + 2 * q, one),
                        (3 * q * q + 1, one),
                    ],
                );
                let den = SparsePoly::new(
                    f,
                    [
                        (2 * q + 1, a2),
                        (2 * q * q + q, a2),
                        (q * q + 2, a2),
                        (3, one),
                        (3 * q, one),
                        (3 * q * q, one),
                        (q * q + q + 1, one),
                    ],
                );
                Some((num, den))
            }
            Family::F2 => {
                let num = SparsePoly::new(
                    f,
                    [
                        (2 * q * q + 2, a2),
                        (q + 3, a2),
                        (q * q + 2 * q + 1, a2),
                        (4 * q, a2),
                        (2 * q + 2, a),
                        (3 * q * q + 1, one),
                        (q * q + q + 2, one),
                        (2 * q * q + 2 * q, one),
                        (3 * q + 1, one),
                    ],
                );
                let den = SparsePoly::new(
                    f,
                    [
                        (2 + q, a2),
                        (2 * q + q * q, a2),
                        (2 * q * q + 1, a2),
                        (3, one),
                        (3 * q, one),
                        (3 * q * q, one),
                        (q * q + q + 1, one),
                    ],
                );
                Some((num, den))
            }
            Family::F3 => None,
        }
    }

    /// Evaluate the rational inverse at one point (`0 ↦ 0`; both sides of
    /// the fraction vanish there). Errors if the family has no rational
    /// form or the denominator vanishes at a nonzero point.
    pub fn rational_inverse_eval(&self, y: FieldElement) -> Result<FieldElement> {
        let (num, den) = self.rational_inverse().ok_or_else(|| {
            Error::InvalidParams("f3 has no separate rational inverse form".into())
        })?;
        let f = self.field();
        if y.is_zero() {
            return Ok(f.zero());
        }
        let d = den.eval(f, y);
        if d.is_zero() {
            return Err(Error::Contract(format!(
                "rational inverse denominator vanished at y = {y}"
            )));
        }
        Ok(f.mul(num.eval(f, y), f.inv(d)?))
    }

    /// Whole-field table of the rational inverse, using ladder tabulation
    /// and one batched inversion. Errors if the denominator vanishes at
    /// any nonzero point.
    pub fn rational_inverse_table(&self) -> Result<EvalTable> {
        let (num, den) = self.rational_inverse().ok_or_else(|| {
            Error::InvalidParams("f3 has no separate rational inverse form".into())
        })?;
        let f = self.field();
        let num_t = EvalTable::of_sparse(f, &num);
        let den_t = EvalTable::of_sparse(f, &den);
        let den_vals: Vec<FieldElement> = (1..f.order())
            .map(|i| f.from_index(den_t.image_index(i)))
            .collect();
        let den_inv = f.batch_invert(&den_vals).map_err(|_| {
            Error::Contract("rational inverse denominator vanished on a nonzero point".into())
        })?;
        Ok(EvalTable::of_fn(f, |y| {
            let i = f.index_of(y);
            if i == 0 {
                return f.zero();
            }
            let n = f.from_index(num_t.image_index(i));
            f.mul(n, den_inv[(i - 1) as usize])
        }))
    }

    /// Whole-field table of the piecewise/total inverse.
    pub fn inverse_table(&self) -> Result<EvalTable> {
        let f = self.field();
        let mut values = Vec::with_capacity(f.order() as usize);
        for y in f.elements() {
            values.push(self.inverse_eval(y)?.value);
        }
        Ok(EvalTable::of_fn(f, |y| values[f.index_of(y) as usize]))
    }

    /// The polynomial pair whose resultant eliminates the auxiliary
    /// unknown in the inverse derivation, instantiated at projections
    /// `proj = [a, b, c]` of the known value and at `v`, the candidate
    /// value of the remaining variable. For F1/F2 both are quartics; for
    /// F3 a (linear, quadratic) pair.
    pub fn elimination_pair(
        &self,
        proj: &[FieldElement; 3],
        v: FieldElement,
    ) -> (DensePoly, DensePoly) {
        let f = self.field();
        let &[a, b, c] = proj;
        let big_a = self.a;
        let a2 = f.mul(big_a, big_a);
        let v2 = f.mul(v, v);
        let v3 = f.mul(v2, v);
        let v4 = f.mul(v2, v2);
        match self.family {
            Family::F1 => {
                let p = DensePoly::new(vec![
                    // A·a·b·v² + A·b·v³ + a²·v²
                    f.add(
                        f.mul(big_a, f.mul(f.mul(a, b), v2)),
                        f.add(f.mul(big_a, f.mul(b, v3)), f.mul(f.mul(a, a), v2)),
                    ),
                    // a·A·v² + A·v³
                    f.add(f.mul(f.mul(a, big_a), v2), f.mul(big_a, v3)),
                    // b·v + a·b
                    f.add(f.mul(b, v), f.mul(a, b)),
                    // a + v
                    f.add(a, v),
                    big_a,
                ]);
                let g = DensePoly::new(vec![
                    // A²·v⁴ + c·A·v³ + a·c·A·v²
                    f.add(
                        f.mul(a2, v4),
                        f.add(f.mul(f.mul(c, big_a), v3), f.mul(f.mul(a, c), f.mul(big_a, v2))),
                    ),
                    // v³ + a²·v
                    f.add(v3, f.mul(f.mul(a, a), v)),
                    // a²·A + A·v² + a·c + c·v
                    f.add(
                        f.add(f.mul(f.mul(a, a), big_a), f.mul(big_a, v2)),
                        f.add(f.mul(a, c), f.mul(c, v)),
                    ),
                    f.zero(),
                    f.one(),
                ]);
                (p, g)
            }
            Family::F2 => {
                let p = DensePoly::new(vec![
                    // A·a·b·v² + A·a·v³ + b²·v²
                    f.add(
                        f.mul(big_a, f.mul(f.mul(a, b), v2)),
                        f.add(f.mul(big_a, f.mul(a, v3)), f.mul(f.mul(b, b), v2)),
                    ),
                    // b·A·v² + A·v³
                    f.add(f.mul(f.mul(b, big_a), v2), f.mul(big_a, v3)),
                    // a·v + a·b
                    f.add(f.mul(a, v), f.mul(a, b)),
                    // b + v
                    f.add(b, v),
                    big_a,
                ]);
                let g = DensePoly::new(vec![
                    // A²·v⁴ + c·A·v³ + b·c·A·v²
                    f.add(
                        f.mul(a2, v4),
                        f.add(f.mul(f.mul(c, big_a), v3), f.mul(f.mul(b, c), f.mul(big_a, v2))),
                    ),
                    // v³ + b²·v
                    f.add(v3, f.mul(f.mul(b, b), v)),
                    // b²·A + A·v² + b·c + c·v
                    f.add(
                        f.add(f.mul(f.mul(b, b), big_a), f.mul(big_a, v2)),
                        f.add(f.mul(b, c), f.mul(c, v)),
                    ),
                    f.zero(),
                    f.one(),
                ]);
                (p, g)
            }
            Family::F3 => {
                let a4 = f.mul(a2, a2);
                // linear: (A·v² + A²·b·v - A⁴·v² + c·v)·y + (A²·c·v² - b·c·v)
                let lin1 = f.add(
                    f.sub(f.mul(big_a, v2), f.mul(a4, v2)),
                    f.add(f.mul(f.mul(a2, b), v), f.mul(c, v)),
                );
                let lin0 = f.sub(f.mul(a2, f.mul(c, v2)), f.mul(f.mul(b, c), v));
                let p = DensePoly::new(vec![lin0, lin1]);
                // quadratic: (A³·v - v + a)·y² + (v·b - a·b + A²·a·v)·y
                let a3 = f.mul(a2, big_a);
                let g2 = f.add(f.sub(f.mul(a3, v), v), a);
                let g1 = f.add(f.sub(f.mul(v, b), f.mul(a, b)), f.mul(f.mul(a2, a), v));
                let g = DensePoly::new(vec![f.zero(), g1, g2]);
                (p, g)
            }
        }
    }

    /// The coefficients `(α, β)` of the linear factor `α·v + β` that
    /// carries the preimage in the factored resultant (F1/F2 only).
    pub fn preimage_line(&self, proj: &[FieldElement; 3]) -> Result<(FieldElement, FieldElement)> {
        let f = self.field();
        let &[a, b, c] = proj;
        let a2big = f.mul(self.a, self.a);
        let cube = |x: FieldElement| f.mul(f.mul(x, x), x);
        match self.family {
            Family::F1 => {
                // α = A²(ab² + bc² + ca²) + a³ + b³ + c³ + abc
                let alpha = f.add(
                    f.mul(
                        a2big,
                        f.add(
                            f.mul(a, f.mul(b, b)),
                            f.add(f.mul(b, f.mul(c, c)), f.mul(c, f.mul(a, a))),
                        ),
                    ),
                    f.add(
                        f.add(cube(a), cube(b)),
                        f.add(cube(c), f.mul(a, f.mul(b, c))),
                    ),
                );
                // β = A²(a²b² + a³c + abc² + c⁴) + A·a²c² + ab³ + a²bc + b²c² + ac³
                let beta = f.add(
                    f.add(
                        f.mul(
                            a2big,
                            f.add(
                                f.add(f.mul(f.mul(a, a), f.mul(b, b)), f.mul(cube(a), c)),
                                f.add(f.mul(a, f.mul(b, f.mul(c, c))), f.mul(f.mul(c, c), f.mul(c, c))),
                            ),
                        ),
                        f.mul(self.a, f.mul(f.mul(a, a), f.mul(c, c))),
                    ),
                    f.add(
                        f.add(f.mul(a, cube(b)), f.mul(f.mul(a, a), f.mul(b, c))),
                        f.add(f.mul(f.mul(b, b), f.mul(c, c)), f.mul(a, cube(c))),
                    ),
                );
                Ok((alpha, beta))
            }
            Family::F2 => {
                // α = A²(ba² + b²c + c²a) + a³ + b³ + c³ + abc
                let alpha = f.add(
                    f.mul(
                        a2big,
                        f.add(
                            f.mul(b, f.mul(a, a)),
                            f.add(f.mul(f.mul(b, b), c), f.mul(f.mul(c, c), a)),
                        ),
                    ),
                    f.add(
                        f.add(cube(a), cube(b)),
                        f.add(cube(c), f.mul(a, f.mul(b, c))),
                    ),
                );
                // β = A²(a²b² + b³c + abc² + c⁴) + A·b²c² + ba³ + b²ac + a²c² + bc³
                let beta = f.add(
                    f.add(
                        f.mul(
                            a2big,
                            f.add(
                                f.add(f.mul(f.mul(a, a), f.mul(b, b)), f.mul(cube(b), c)),
                                f.add(f.mul(a, f.mul(b, f.mul(c, c))), f.mul(f.mul(c, c), f.mul(c, c))),
                            ),
                        ),
                        f.mul(self.a, f.mul(f.mul(b, b), f.mul(c, c))),
                    ),
                    f.add(
                        f.add(f.mul(b, cube(a)), f.mul(f.mul(b, b), f.mul(a, c))),
                        f.add(f.mul(f.mul(a, a), f.mul(c, c)), f.mul(b, cube(c))),
                    ),
                );
                Ok((alpha, beta))
            }
            Family::F3 => Err(Error::InvalidParams(
                "f3's factored resultant is not of the α·v + β shape".into(),
            )),
        }
    }

    /// Evaluate the displayed factorization of the eliminating resultant
    /// at `(proj, v)`.
    pub fn factored_resultant(
        &self,
        proj: &[FieldElement; 3],
        v: FieldElement,
    ) -> Result<FieldElement> {
        let f = self.field();
        let &[a, b, c] = proj;
        match self.family {
            Family::F1 | Family::F2 => {
                // v⁴·(v + r)⁸·(α·v + β), with r = a for F1, r = b for F2.
                let r = if self.family == Family::F1 { a } else { b };
                let (alpha, beta) = self.preimage_line(proj)?;
                let v4 = f.pow(v, 4);
                let vr8 = f.pow(f.add(v, r), 8);
                Ok(f.mul(
                    f.mul(v4, vr8),
                    f.add(f.mul(alpha, v), beta),
                ))
            }
            Family::F3 => {
                // A·c·v²·(A²v - b)·((A³-1)v - bA)·((aA²+cA+b)v - ab)
                let big_a = self.a;
                let a2big = f.mul(big_a, big_a);
                let a3big = f.mul(a2big, big_a);
                let t1 = f.mul(f.mul(big_a, c), f.mul(v, v));
                let t2 = f.sub(f.mul(a2big, v), b);
                let t3 = f.sub(
                    f.mul(f.sub(a3big, f.one()), v),
                    f.mul(b, big_a),
                );
                let coef = f.add(f.mul(a, a2big), f.add(f.mul(c, big_a), b));
                let t4 = f.sub(f.mul(coef, v), f.mul(a, b));
                Ok(f.mul(f.mul(t1, t2), f.mul(t3, t4)))
            }
        }
    }

    /// Compare the Sylvester determinant of the eliminating pair with its
    /// displayed factorization at a concrete `(proj, v)`.
    pub fn resultant_factorization_check(
        &self,
        proj: &[FieldElement; 3],
        v: FieldElement,
    ) -> Result<ResultantIdentity> {
        let f = self.field();
        let (p, g) = self.elimination_pair(proj, v);
        if self.family == Family::F3 {
            let full_degrees = p.degree() == Some(1) && g.degree() == Some(2);
            if !full_degrees {
                return Ok(ResultantIdentity::Degenerate);
            }
        }
        let determinant = sylvester_resultant(f, &p, &g)?;
        let factored = self.factored_resultant(proj, v)?;
        Ok(if determinant == factored {
            ResultantIdentity::Equal
        } else {
            ResultantIdentity::Unequal {
                determinant,
                factored,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{brute_inverse_table, is_permutation, EvalTable};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(family: Family, p: u64, m: u32, a_index: u64) -> FamilyParams {
        let tw = TowerParams::new(p, m).unwrap();
        let a = tw.field().from_index(a_index);
        FamilyParams::new(family, tw, a).unwrap()
    }

    /// All valid `A` values for a family over a given tower.
    fn valid_a(family: Family, tw: &TowerParams) -> Vec<FieldElement> {
        match family {
            Family::F1 | Family::F2 => tw.cube_roots_of_unity(),
            Family::F3 => tw.subfield_units(),
        }
    }

    #[test]
    fn family_polynomials_match_fixed_displays() {
        let p = params(Family::F1, 2, 1, 1);
        assert_eq!(p.polynomial().to_string(), "x^5 + x^3 + x");
        let p = params(Family::F2, 2, 1, 1);
        assert_eq!(p.polynomial().to_string(), "x^6 + x^5 + x");
        let p = params(Family::F3, 3, 1, 2);
        // A = 2: A² = 4 = 1 in characteristic 3.
        assert_eq!(p.polynomial().to_string(), "x^9 + 2*x^7 + x");
    }

    #[test]
    fn parameter_validation() {
        // F1 needs characteristic 2.
        let tw = TowerParams::new(3, 1).unwrap();
        let one = tw.field().one();
        assert!(FamilyParams::new(Family::F1, tw.clone(), one).is_err());
        // F1 needs A³ = 1: t ∈ GF(2^6) has order 63 ≠ 3 | it.
        let tw2 = TowerParams::new(2, 2).unwrap();
        let t = tw2.field().from_index(2);
        assert!(FamilyParams::new(Family::F1, tw2.clone(), t).is_err());
        let omega = tw2.cube_roots_of_unity()[1];
        assert!(FamilyParams::new(Family::F1, tw2.clone(), omega).is_ok());
        // F3 needs nonzero base-field A.
        let zero = tw2.field().zero();
        assert!(FamilyParams::new(Family::F3, tw2.clone(), zero).is_err());
        assert!(FamilyParams::new(Family::F3, tw2.clone(), t).is_err()); // not in F_4
        let u = tw2.subfield_units()[1];
        assert!(FamilyParams::new(Family::F3, tw2, u).is_ok());
    }

    #[test]
    fn permutation_criterion_is_exact_f1_f2() {
        for m in 1..=4u32 {
            let tw = TowerParams::new(2, m).unwrap();
            for family in [Family::F1, Family::F2] {
                for a in valid_a(family, &tw) {
                    let fp = FamilyParams::new(family, tw.clone(), a).unwrap();
                    let report = is_permutation(fp.field(), &fp.polynomial());
                    assert_eq!(
                        report.is_permutation,
                        fp.predicted_permutation(),
                        "{family} m={m} A={a}"
                    );
                    if !report.is_permutation {
                        assert!(report.collision.is_some());
                        // Excluded cases pick up extra roots; counts frozen
                        // from an independent scan (F1 m=2: 10 for every A;
                        // F2 m=1: 4; both A-independent).
                        let expected_roots = match (family, m) {
                            (Family::F1, 2) => 10,
                            (Family::F2, 1) => 4,
                            (Family::F2, 4) => 46,
                            _ => panic!("unexpected non-permutation {family} m={m}"),
                        };
                        assert_eq!(report.root_count, expected_roots, "{family} m={m} A={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_criterion_is_exact_f3() {
        for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1)] {
            let tw = TowerParams::new(p, m).unwrap();
            for a in valid_a(Family::F3, &tw) {
                let fp = FamilyParams::new(Family::F3, tw.clone(), a).unwrap();
                let report = is_permutation(fp.field(), &fp.polynomial());
                assert_eq!(
                    report.is_permutation,
                    fp.predicted_permutation(),
                    "f3 q={} A={a}",
                    tw.q()
                );
            }
        }
    }

    #[test]
    fn f1_inverse_table_over_gf8_matches_reference() {
        // Independent reference values for f1 = x^5 + x^3 + x over GF(8).
        let fp = params(Family::F1, 2, 1, 1);
        let f = fp.field();
        let value_table: Vec<u64> = f
            .elements()
            .map(|x| f.index_of(fp.polynomial().eval(f, x)))
            .collect();
        assert_eq!(value_table, [0, 1, 6, 5, 2, 7, 4, 3]);
        let inverse = fp.inverse_table().unwrap();
        let expect = [0u64, 1, 4, 7, 6, 3, 2, 5];
        for (i, &want) in expect.iter().enumerate() {
            assert_eq!(inverse.image_index(i as u64), want, "inverse at index {i}");
        }
        // And it really is the brute-force inverse.
        let brute = brute_inverse_table(f, &fp.polynomial()).unwrap();
        assert_eq!(inverse, brute);
    }

    #[test]
    fn f3_inverse_table_over_gf27_matches_reference() {
        let fp = params(Family::F3, 3, 1, 2);
        let f = fp.field();
        assert_eq!(f.modulus(), &[1, 2, 0, 1]);
        // f3(t) has index 20; the inverse must send it back to t (index 3).
        let t = f.from_index(3);
        let y = fp.polynomial().eval(f, t);
        assert_eq!(f.index_of(y), 20);
        assert_eq!(fp.inverse_eval(y).unwrap().value, t);
        let expect: [u64; 27] = [
            0, 1, 2, 10, 17, 14, 20, 25, 22, 15, 6, 18, 26, 11, 7, 23, 12, 8, 21, 9, 3, 16, 4,
            24, 13, 5, 19,
        ];
        let inverse = fp.inverse_table().unwrap();
        for (i, &want) in expect.iter().enumerate() {
            assert_eq!(inverse.image_index(i as u64), want, "inverse at index {i}");
        }
        assert_eq!(inverse, brute_inverse_table(f, &fp.polynomial()).unwrap());
    }

    #[test]
    fn all_inverse_forms_agree_f1() {
        // Positive cases at m = 1 and m = 3, every valid A.
        for m in [1u32, 3] {
            let tw = TowerParams::new(2, m).unwrap();
            for a in tw.cube_roots_of_unity() {
                let fp = FamilyParams::new(Family::F1, tw.clone(), a).unwrap();
                let brute = brute_inverse_table(fp.field(), &fp.polynomial()).unwrap();
                assert_eq!(fp.inverse_table().unwrap(), brute, "piecewise m={m} A={a}");
                assert_eq!(
                    fp.rational_inverse_table().unwrap(),
                    brute,
                    "rational m={m} A={a}"
                );
            }
        }
    }

    #[test]
    fn all_inverse_forms_agree_f2() {
        for m in [2u32, 3] {
            let tw = TowerParams::new(2, m).unwrap();
            for a in tw.cube_roots_of_unity() {
                let fp = FamilyParams::new(Family::F2, tw.clone(), a).unwrap();
                let brute = brute_inverse_table(fp.field(), &fp.polynomial()).unwrap();
                assert_eq!(fp.inverse_table().unwrap(), brute, "piecewise m={m} A={a}");
                assert_eq!(
                    fp.rational_inverse_table().unwrap(),
                    brute,
                    "rational m={m} A={a}"
                );
            }
        }
    }

    #[test]
    fn f3_inverse_agrees_with_brute_force() {
        for (p, m) in [(2u64, 1u32), (3, 1), (5, 1), (2, 2)] {
            let tw = TowerParams::new(p, m).unwrap();
            for a in tw.subfield_units() {
                let fp = FamilyParams::new(Family::F3, tw.clone(), a).unwrap();
                if !fp.predicted_permutation() {
                    continue;
                }
                let brute = brute_inverse_table(fp.field(), &fp.polynomial()).unwrap();
                assert_eq!(fp.inverse_table().unwrap(), brute, "f3 q={} A={a}", tw.q());
            }
        }
    }

    #[test]
    fn inverse_branches_are_exercised() {
        // Over GF(8) with A = 1 the F1 linear form is the q-trace, whose
        // kernel has q² = 4 elements; a nonzero kernel point must appear.
        let fp = params(Family::F1, 2, 1, 1);
        let f = fp.field();
        let mut seen_linear = false;
        let mut seen_kernel = false;
        for y in f.elements() {
            match fp.inverse_eval(y).unwrap().branch {
                InverseBranch::Linear => seen_linear = true,
                InverseBranch::Kernel => seen_kernel = true,
                InverseBranch::Origin => assert!(y.is_zero()),
                InverseBranch::Total => panic!("f1 is piecewise"),
            }
        }
        assert!(seen_linear && seen_kernel);
        // F3 always reports the total branch.
        let fp3 = params(Family::F3, 3, 1, 2);
        for y in fp3.field().elements() {
            assert_eq!(fp3.inverse_eval(y).unwrap().branch, InverseBranch::Total);
        }
    }

    #[test]
    fn rational_exponent_collisions_cancel_at_q2() {
        // At q = 2 the displayed exponents collide: 3q+1 = q²+3 = 7 in the
        // numerator and q²+2 = 3q = 6 in the denominator, with coefficient
        // sum A² + 1 = 0 at A = 1. The constructor must cancel them.
        let fp = params(Family::F1, 2, 1, 1);
        let (num, den) = fp.rational_inverse().unwrap();
        assert!(
            num.terms().iter().all(|&(e, _)| e != 7),
            "colliding numerator terms at exponent 7 must cancel: {num}"
        );
        assert!(
            den.terms().iter().all(|&(e, _)| e != 6),
            "colliding denominator terms at exponent 6 must cancel: {den}"
        );
        // The cancelled form still inverts the permutation (checked in
        // all_inverse_forms_agree_f1, but assert the pointwise path too).
        let f = fp.field();
        for y in f.elements() {
            assert_eq!(
                fp.rational_inverse_eval(y).unwrap(),
                fp.inverse_eval(y).unwrap().value
            );
        }
    }

    #[test]
    fn f2_raw_exponents_already_normalized() {
        // The F2 middle exponent q³-q²+q stays below q³-1, so raw and
        // normalized forms coincide as written — and induce the same map.
        for m in [1u32, 2] {
            let tw = TowerParams::new(2, m).unwrap();
            let fp = FamilyParams::new(Family::F2, tw, tw_one(2, m)).unwrap();
            let raw = fp.polynomial();
            let norm = raw.normalize(fp.field());
            assert_eq!(raw, norm);
            assert_eq!(
                EvalTable::of_sparse(fp.field(), &raw),
                EvalTable::of_sparse(fp.field(), &norm)
            );
        }
    }

    fn tw_one(p: u64, m: u32) -> FieldElement {
        TowerParams::new(p, m).unwrap().field().one()
    }

    #[test]
    fn preimage_line_fixed_point_values() {
        // A = 1 and projections (1,1,1): α and β both collapse to 1 in
        // characteristic 2 (7 and 9 odd-count sums).
        let fp = params(Family::F1, 2, 1, 1);
        let one = fp.field().one();
        let (alpha, beta) = fp.preimage_line(&[one, one, one]).unwrap();
        assert!(alpha.is_one());
        assert!(beta.is_one());
        let fp2 = params(Family::F2, 2, 1, 1);
        let (alpha, beta) = fp2.preimage_line(&[one, one, one]).unwrap();
        assert!(alpha.is_one());
        assert!(beta.is_one());
    }

    #[test]
    fn resultant_factorization_holds_f1_f2() {
        // The determinant of the eliminating quartic pair equals the
        // displayed factorization at every (projection triple, v) — here
        // exhaustively over GF(8) and sampled over GF(64).
        let fp = params(Family::F1, 2, 1, 1);
        let f = fp.field();
        for y in f.elements() {
            let proj = fp.projections(y);
            for v in f.elements() {
                assert_eq!(
                    fp.resultant_factorization_check(&proj, v).unwrap(),
                    ResultantIdentity::Equal,
                    "f1 y={y} v={v}"
                );
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let tw = TowerParams::new(2, 2).unwrap();
        for family in [Family::F1, Family::F2] {
            for a in tw.cube_roots_of_unity() {
                let fp = FamilyParams::new(family, tw.clone(), a).unwrap();
                let f = fp.field();
                for _ in 0..40 {
                    let y = f.from_index(rng.gen_range(0..f.order()));
                    let v = f.from_index(rng.gen_range(0..f.order()));
                    assert_eq!(
                        fp.resultant_factorization_check(&fp.projections(y), v)
                            .unwrap(),
                        ResultantIdentity::Equal,
                        "{family} A={a} y={y} v={v}"
                    );
                }
            }
        }
    }

    #[test]
    fn resultant_factorization_holds_f3() {
        // Any characteristic; v = 0 degenerates (the linear member of the
        // pair collapses to the zero polynomial).
        for (p, m, a_idx) in [(3u64, 1u32, 2u64), (2, 1, 1), (5, 1, 3)] {
            let fp = params(Family::F3, p, m, a_idx);
            let f = fp.field();
            let mut equal = 0;
            for y in f.elements() {
                let proj = fp.projections(y);
                for v in f.elements() {
                    match fp.resultant_factorization_check(&proj, v).unwrap() {
                        ResultantIdentity::Equal => equal += 1,
                        ResultantIdentity::Degenerate => {
                            assert!(
                                v.is_zero() || {
                                    let (pp, gg) = fp.elimination_pair(&proj, v);
                                    pp.degree() != Some(1) || gg.degree() != Some(2)
                                }
                            );
                        }
                        ResultantIdentity::Unequal {
                            determinant,
                            factored,
                        } => panic!(
                            "f3 identity failed at q={} y={y} v={v}: {determinant} vs {factored}",
                            fp.tower().q()
                        ),
                    }
                }
            }
            assert!(equal > 0, "no non-degenerate cases at q={}", fp.tower().q());
        }
    }

    #[test]
    fn contract_errors_never_fire_on_permutations() {
        // For every predicted-permutation instance in a small sweep, every
        // branch denominator is nonzero on the whole field.
        for m in 1..=3u32 {
            let tw = TowerParams::new(2, m).unwrap();
            for family in [Family::F1, Family::F2] {
                for a in tw.cube_roots_of_unity() {
                    let fp = FamilyParams::new(family, tw.clone(), a).unwrap();
                    if !fp.predicted_permutation() {
                        continue;
                    }
                    for y in fp.field().elements() {
                        fp.inverse_eval(y)
                            .unwrap_or_else(|e| panic!("{family} m={m} A={a} y={y}: {e}"));
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_draws_agree_across_forms() {
        // 500 seeded draws per instance, comparing piecewise, rational,
        // and brute-force inverses pointwise.
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        let tw = TowerParams::new(2, 1).unwrap();
        let fp = FamilyParams::new(Family::F1, tw, tw_one(2, 1)).unwrap();
        let brute = brute_inverse_table(fp.field(), &fp.polynomial()).unwrap();
        for _ in 0..500 {
            let y = fp.field().from_index(rng.gen_range(0..fp.field().order()));
            let piecewise = fp.inverse_eval(y).unwrap().value;
            let rational = fp.rational_inverse_eval(y).unwrap();
            let brute_val = fp.field().from_index(brute.image_index(fp.field().index_of(y)));
            assert_eq!(piecewise, rational);
            assert_eq!(piecewise, brute_val);
        }
        let tw = TowerParams::new(2, 2).unwrap();
        for a in tw.cube_roots_of_unity() {
            let fp = FamilyParams::new(Family::F2, tw.clone(), a).unwrap();
            let brute = brute_inverse_table(fp.field(), &fp.polynomial()).unwrap();
            for _ in 0..500 {
                let y = fp.field().from_index(rng.gen_range(0..fp.field().order()));
                let piecewise = fp.inverse_eval(y).unwrap().value;
                let rational = fp.rational_inverse_eval(y).unwrap();
                let brute_val =
                    fp.field().from_index(brute.image_index(fp.field().index_of(y)));
                assert_eq!(piecewise, rational);
                assert_eq!(piecewise, brute_val);
            }
        }
    }

    #[test]
    fn non_permutation_instances_have_collisions() {
        // F1 at m = 2 is the first excluded case.
        let tw = TowerParams::new(2, 2).unwrap();
        for a in tw.cube_roots_of_unity() {
            let fp = FamilyParams::new(Family::F1, tw.clone(), a).unwrap();
            assert!(!fp.predicted_permutation());
            let report = is_permutation(fp.field(), &fp.polynomial());
            assert!(!report.is_permutation);
            let (x1, x2) = report.collision.unwrap();
            let f = fp.field();
            assert_eq!(
                fp.polynomial().eval(f, x1),
                fp.polynomial().eval(f, x2),
                "collision witnesses must collide"
            );
            assert_ne!(x1, x2);
        }
        // F3 with A³ = 1: every A over q = 4 qualifies.
        let tw = TowerParams::new(2, 2).unwrap();
        for a in tw.subfield_units() {
            let fp = FamilyParams::new(Family::F3, tw.clone(), a).unwrap();
            assert!(!fp.predicted_permutation(), "all of F_4* has A³ = 1");
            assert!(!is_permutation(fp.field(), &fp.polynomial()).is_permutation);
        }
    }

    #[test]
    fn f3_rational_form_absent() {
        let fp = params(Family::F3, 3, 1, 2);
        assert!(fp.rational_inverse().is_none());
        assert!(fp.rational_inverse_eval(fp.field().one()).is_err());
        assert!(fp.rational_inverse_table().is_err());
    }
}
