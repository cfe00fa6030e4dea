//! Decomposition of `F_{q^m}` into cycles of the Frobenius `x -> x^q`.
//!
//! Orbits of length `k` are listed per divisor `k` of `m`. Within an orbit,
//! position `j + 1` is the Frobenius image of position `j` (1-based, wrapping
//! mod `k`), and position 1 holds the basis-order minimum of the orbit.
//! Orbits of equal length are sorted by that representative.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{ElemIndex, FieldCtx};

/// 1-based label `a_{i,j}^{(k)}`: `j`-th element of the `i`-th `k`-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    pub k: u32,
    pub i: u32,
    pub j: u32,
}

/// All orbits of one length `k`, stored flat: orbit `i` (0-based) occupies
/// `elements[i*k .. (i+1)*k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    k: u32,
    elements: Vec<ElemIndex>,
}

impl Stratum {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn orbit_count(&self) -> usize {
        self.elements.len() / self.k as usize
    }

    /// Orbit `i`, 1-based.
    pub fn orbit(&self, i: usize) -> &[ElemIndex] {
        let k = self.k as usize;
        &self.elements[(i - 1) * k..i * k]
    }

    pub fn orbits(&self) -> impl Iterator<Item = &[ElemIndex]> {
        self.elements.chunks(self.k as usize)
    }

    /// Union of the orbits, i.e. the elements of exact degree `k` over `F_q`.
    pub fn elements(&self) -> &[ElemIndex] {
        &self.elements
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    m: u32,
    q: u64,
    strata: Vec<Stratum>,
    coords: Vec<Coord>,
    frobenius: Vec<ElemIndex>,
}

impl OrbitTable {
    pub fn new(ctx: &FieldCtx) -> Self {
        let n = ctx.order() as usize;
        let frobenius: Vec<ElemIndex> = (0..n as u64).map(|x| ctx.frobenius_q_idx(x as ElemIndex)).collect();
        let divisors: Vec<u32> = arith::divisors(ctx.m() as u64).into_iter().map(|d| d as u32).collect();
        let mut strata: Vec<Stratum> = divisors.iter().map(|&k| Stratum { k, elements: Vec::new() }).collect();
        let mut coords = vec![Coord { k: 0, i: 0, j: 0 }; n];
        for start in 0..n {
            if coords[start].k != 0 {
                continue;
            }
            // `start` is the least unvisited index, hence the minimum of its orbit.
            let mut orbit = vec![start as ElemIndex];
            let mut x = frobenius[start];
            while x as usize != start {
                orbit.push(x);
                x = frobenius[x as usize];
            }
            let k = orbit.len() as u32;
            let stratum = strata.iter_mut().find(|s| s.k == k).expect("Frobenius cycle length divides m");
            let i = stratum.orbit_count() as u32 + 1;
            for (pos, &x) in orbit.iter().enumerate() {
                coords[x as usize] = Coord { k, i, j: pos as u32 + 1 };
            }
            stratum.elements.extend_from_slice(&orbit);
        }
        let table = OrbitTable { m: ctx.m(), q: ctx.q(), strata, coords, frobenius };
        debug_assert!(table.strata.iter().all(|s| BigUint::from(s.orbit_count()) == pi_count(table.q, s.k as u64)));
        table
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Strata in ascending order of `k`, one for each divisor of `m`.
    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, k: u32) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.k == k)
    }

    pub fn locate(&self, a: ElemIndex) -> Coord {
        self.coords[a as usize]
    }

    pub fn element_at(&self, k: u32, i: u64, j: u64) -> Result<ElemIndex> {
        let out_of_range = Error::IndexOutOfRange { k, i, j };
        let stratum = self.stratum(k).ok_or(out_of_range.clone())?;
        if i == 0 || i > stratum.orbit_count() as u64 || j == 0 || j > k as u64 {
            return Err(out_of_range);
        }
        Ok(stratum.orbit(i as usize)[j as usize - 1])
    }

    /// Frobenius image, read from the table.
    pub fn frobenius(&self, a: ElemIndex) -> ElemIndex {
        self.frobenius[a as usize]
    }

    /// Exact degree of `a` over `F_q` (its orbit length).
    pub fn degree(&self, a: ElemIndex) -> u32 {
        self.coords[a as usize].k
    }

    /// `∏ (x - a^(q^i))` over the orbit of `a`: monic, coefficients ascending
    /// as element indices, all lying in `F_q`.
    pub fn minimal_polynomial(&self, ctx: &FieldCtx, a: ElemIndex) -> Vec<ElemIndex> {
        let c = self.locate(a);
        let orbit = self.stratum(c.k).expect("located stratum").orbit(c.i as usize);
        let mut poly = vec![ctx.one_idx()];
        for &root in orbit {
            // poly * (x - root)
            let neg_root = ctx.neg_idx(root);
            let mut next = vec![0; poly.len() + 1];
            for (d, &coef) in poly.iter().enumerate() {
                next[d + 1] = ctx.add_idx(next[d + 1], coef);
                next[d] = ctx.add_idx(next[d], ctx.mul_idx(coef, neg_root));
            }
            poly = next;
        }
        poly
    }
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`,
/// `(1/d) Σ_{j | d} μ(d/j) q^j`, in exact integer arithmetic.
pub fn pi_count(q: u64, d: u64) -> BigUint {
    assert!(d >= 1, "degree must be positive");
    let q = BigInt::from(q);
    let mut sum = BigInt::zero();
    for j in arith::divisors(d) {
        let mu = arith::mobius(d / j);
        if mu != 0 {
            let term = num_traits::pow(q.clone(), j as usize);
            sum += term * BigInt::from(mu);
        }
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(d));
    assert!(rem.is_zero() && !quot.is_negative(), "Möbius sum not divisible by {d}");
    quot.to_biguint().expect("non-negative")
}
