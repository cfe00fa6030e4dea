//! Reduced polynomials (degree `< q^m`) over `F_{q^m}` and their value tables.
//!
//! Every map `F_{q^m} -> F_{q^m}` is a unique reduced polynomial, so tables
//! and polynomials are interchangeable; canonicity and subfield preservation
//! are each decided by two independent routes.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{ElemIndex, FieldCtx};
use crate::func::FuncTable;
use crate::orbits::OrbitTable;

/// Coefficients ascending, length exactly `q^m`, as element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyRep {
    coeffs: Vec<ElemIndex>,
}

impl PolyRep {
    /// Reduces an arbitrary coefficient list mod `x^(q^m) - x`.
    pub fn reduce(ctx: &FieldCtx, coeffs: &[ElemIndex]) -> Result<Self> {
        let n = ctx.order() as usize;
        if let Some(&c) = coeffs.iter().find(|&&c| c as u64 >= ctx.order()) {
            return Err(Error::InvalidCoefficient { value: c as u64, p: ctx.characteristic() });
        }
        let mut out = vec![0; n];
        for (d, &c) in coeffs.iter().enumerate() {
            // x^d = x^(((d - 1) mod (n - 1)) + 1) for d >= 1
            let slot = if d < n { d } else { (d - 1) % (n - 1) + 1 };
            out[slot] = ctx.add_idx(out[slot], c);
        }
        Ok(PolyRep { coeffs: out })
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        PolyRep { coeffs: vec![0; ctx.order() as usize] }
    }

    /// The polynomial `x`.
    pub fn x(ctx: &FieldCtx) -> Self {
        let mut p = Self::zero(ctx);
        if p.coeffs.len() > 1 {
            p.coeffs[1] = ctx.one_idx();
        } else {
            p.coeffs[0] = ctx.one_idx();
        }
        p
    }

    pub fn coeffs(&self) -> &[ElemIndex] {
        &self.coeffs
    }

    /// Coefficients with trailing zeros removed (empty for the zero polynomial).
    pub fn trimmed(&self) -> &[ElemIndex] {
        let end = self.coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        &self.coeffs[..end]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }
}

/// Horner evaluation.
pub fn evaluate(ctx: &FieldCtx, p: &PolyRep, x: ElemIndex) -> ElemIndex {
    p.trimmed().iter().rev().fold(0, |acc, &c| ctx.add_idx(ctx.mul_idx(acc, x), c))
}

pub fn func_from_poly(ctx: &FieldCtx, p: &PolyRep) -> FuncTable {
    FuncTable::from_fn(ctx.order() as usize, |x| evaluate(ctx, p, x))
}

/// Lagrange interpolation over the whole field, using the basis
/// `L_a(x) = 1 - (x - a)^(n-1)` (`n = q^m`). Expanding gives `c_0 = f(0)` and
/// `c_d = -Σ_a f(a) a^(n-1-d)` for `1 <= d <= n-1`, with `0^0 = 1`.
pub fn interpolate(ctx: &FieldCtx, f: &FuncTable) -> PolyRep {
    let n = ctx.order() as usize;
    assert_eq!(f.len(), n, "table size must match the field");
    let mut coeffs = vec![0; n];
    coeffs[0] = f.apply(0);
    if n == 1 {
        return PolyRep { coeffs };
    }
    // a = 0 only reaches d = n - 1 via 0^0.
    let mut sums = vec![0; n];
    sums[n - 1] = f.apply(0);
    for a in 1..n as ElemIndex {
        let fa = f.apply(a);
        if fa == 0 {
            continue;
        }
        let a_inv = ctx.inv_idx(a).expect("nonzero");
        // a^(n-1-d) = a^(-d) for a != 0
        let mut term = fa;
        for sum in sums.iter_mut().skip(1) {
            term = ctx.mul_idx(term, a_inv);
            *sum = ctx.add_idx(*sum, term);
        }
    }
    for d in 1..n {
        coeffs[d] = ctx.neg_idx(sums[d]);
    }
    PolyRep { coeffs }
}

/// Coefficient route: every coefficient satisfies `c^q = c`.
pub fn is_canonical(ctx: &FieldCtx, p: &PolyRep) -> bool {
    p.coeffs.iter().all(|&c| ctx.in_base_field_idx(c))
}

/// Commutation route: the value table commutes with `x -> x^q`.
pub fn commutes_with_frobenius(ctx: &FieldCtx, f: &FuncTable) -> bool {
    (0..f.len() as ElemIndex).all(|x| f.apply(ctx.frobenius_q_idx(x)) == ctx.frobenius_q_idx(f.apply(x)))
}

/// Stratum route: `f(S_k) ⊆ S_k` for every exact-degree stratum.
pub fn is_subfield_preserving(table: &OrbitTable, f: &FuncTable) -> bool {
    f.stratum_defect(table).is_none()
}

/// Literal route: `f(F_q) ⊆ F_q` and `f(F_{q^d} \ F_{q^s}) ⊆ F_{q^d} \ F_{q^s}`
/// for all `d, s | m`, with membership decided by `a^(q^d) = a`.
pub fn is_subfield_preserving_literal(ctx: &FieldCtx, f: &FuncTable) -> bool {
    let degrees: Vec<u32> = (0..f.len() as ElemIndex).map(|x| ctx.subfield_degree_idx(x)).collect();
    let in_subfield = |x: ElemIndex, d: u64| d.is_multiple_of(degrees[x as usize] as u64);
    let all = 0..f.len() as ElemIndex;
    if all.clone().any(|x| in_subfield(x, 1) && !in_subfield(f.apply(x), 1)) {
        return false;
    }
    let divs = arith::divisors(ctx.m() as u64);
    for &d in &divs {
        for &s in &divs {
            for x in all.clone() {
                if in_subfield(x, d) && !in_subfield(x, s) {
                    let y = f.apply(x);
                    if !in_subfield(y, d) || in_subfield(y, s) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Membership in `T_q^m`: canonical and subfield preserving.
pub fn is_member_t(ctx: &FieldCtx, table: &OrbitTable, p: &PolyRep) -> bool {
    is_canonical(ctx, p) && is_subfield_preserving(table, &func_from_poly(ctx, p))
}

/// Reduced representative of `f ∘ g`, via value tables.
pub fn compose_polys(ctx: &FieldCtx, f: &PolyRep, g: &PolyRep) -> PolyRep {
    let composed = func_from_poly(ctx, f).compose(&func_from_poly(ctx, g));
    interpolate(ctx, &composed)
}
