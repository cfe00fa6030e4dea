//! The monoid `⨉_{k|m} M_[n_k] ⋉ C_k^{n_k}` with `n_k = π_q(k)`, and the
//! isomorphism `Δ` onto the canonical subfield-preserving maps of `F_{q^m}`.
//!
//! A component `(σ, s)` for cycle length `k` acts on the labelled elements
//! `a_{i,j}` of that stratum by `a_{i,j} -> a_{σ(i), j + s_i mod k}`.
//! Composition follows function composition: `compose(a, b)` is "apply `b`,
//! then `a`", so `Δ(compose(a, b)) = Δ(a) ∘ Δ(b)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::func::FuncTable;
use crate::orbits::{pi_count, OrbitTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShapePart {
    /// Cycle length (a divisor of `m`).
    pub k: u32,
    /// Number of `k`-cycles, `π_q(k)`.
    pub n: usize,
}

impl ShapePart {
    /// `k^n * n^n`
    pub fn cardinality(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.k), self.n) * num_traits::pow(BigUint::from(self.n), self.n)
    }

    /// `k^n * n!`
    pub fn unit_count(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.k), self.n) * factorial(self.n as u64)
    }
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidShape {
    parts: Vec<ShapePart>,
}

impl MonoidShape {
    pub fn new(q: u64, m: u32) -> Result<Self> {
        let parts = arith::divisors(m as u64)
            .into_iter()
            .map(|k| {
                let pi = pi_count(q, k);
                let n = pi.to_usize().ok_or(Error::TooLarge { size: pi, bound: usize::MAX as u64 })?;
                Ok(ShapePart { k: k as u32, n })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonoidShape { parts })
    }

    pub fn from_parts(parts: Vec<ShapePart>) -> Self {
        MonoidShape { parts }
    }

    pub fn from_table(table: &OrbitTable) -> Self {
        MonoidShape { parts: table.strata().iter().map(|s| ShapePart { k: s.k(), n: s.orbit_count() }).collect() }
    }

    pub fn parts(&self) -> &[ShapePart] {
        &self.parts
    }

    /// Number of elements, `∏ k^n n^n`.
    pub fn cardinality(&self) -> BigUint {
        self.parts.iter().map(ShapePart::cardinality).product()
    }

    /// Number of invertible elements, `∏ k^n n!`.
    pub fn unit_count(&self) -> BigUint {
        self.parts.iter().map(ShapePart::unit_count).product()
    }
}

/// A self-map of `[n]`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexMap(Vec<u32>);

impl IndexMap {
    pub fn identity(n: usize) -> Self {
        IndexMap((0..n as u32).collect())
    }

    pub fn from_one_based(values: &[u32]) -> Result<Self> {
        let n = values.len() as u32;
        if values.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::MalformedComponent { k: 0 });
        }
        Ok(IndexMap(values.iter().map(|&v| v - 1).collect()))
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.0.iter().map(|&v| v + 1).collect()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&v| !core::mem::replace(&mut seen[v as usize], true))
    }

    fn inverse(&self) -> Option<IndexMap> {
        let mut inv = vec![u32::MAX; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            if inv[v as usize] != u32::MAX {
                return None;
            }
            inv[v as usize] = i as u32;
        }
        Some(IndexMap(inv))
    }
}

/// Shift amounts `s_i ∈ [0, k)`; the cyclic shift is `j -> ((j - 1 + s_i) mod k) + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftVector(Vec<u32>);

impl ShiftVector {
    pub fn zero(n: usize) -> Self {
        ShiftVector(vec![0; n])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    k: u32,
    sigma: IndexMap,
    shifts: ShiftVector,
}

impl Component {
    /// `sigma` is 0-based; every shift must be below `k`.
    pub fn new(k: u32, sigma: Vec<u32>, shifts: Vec<u32>) -> Result<Self> {
        let n = sigma.len();
        if k == 0 || shifts.len() != n || sigma.iter().any(|&v| v as usize >= n) || shifts.iter().any(|&s| s >= k) {
            return Err(Error::MalformedComponent { k });
        }
        Ok(Component { k, sigma: IndexMap(sigma), shifts: ShiftVector(shifts) })
    }

    pub fn identity(part: ShapePart) -> Self {
        Component { k: part.k, sigma: IndexMap::identity(part.n), shifts: ShiftVector::zero(part.n) }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn sigma(&self) -> &IndexMap {
        &self.sigma
    }

    pub fn shifts(&self) -> &ShiftVector {
        &self.shifts
    }

    fn part(&self) -> ShapePart {
        ShapePart { k: self.k, n: self.sigma.len() }
    }

    fn compose(&self, inner: &Component) -> Component {
        let k = self.k;
        let (outer_sigma, outer_shift) = (&self.sigma.0, &self.shifts.0);
        let mut sigma = Vec::with_capacity(inner.sigma.len());
        let mut shifts = Vec::with_capacity(inner.sigma.len());
        for (&s, &shift) in inner.sigma.0.iter().zip(&inner.shifts.0) {
            sigma.push(outer_sigma[s as usize]);
            shifts.push((outer_shift[s as usize] + shift) % k);
        }
        Component { k, sigma: IndexMap(sigma), shifts: ShiftVector(shifts) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElem {
    components: Vec<Component>,
}

impl MonoidElem {
    pub fn new(components: Vec<Component>) -> Self {
        MonoidElem { components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, k: u32) -> Option<&Component> {
        self.components.iter().find(|c| c.k == k)
    }

    pub fn shape(&self) -> MonoidShape {
        MonoidShape { parts: self.components.iter().map(Component::part).collect() }
    }

    pub fn identity(shape: &MonoidShape) -> Self {
        MonoidElem { components: shape.parts.iter().map(|&p| Component::identity(p)).collect() }
    }

    /// `self * other`, meaning apply `other` first.
    pub fn compose(&self, other: &MonoidElem) -> Result<MonoidElem> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch);
        }
        Ok(MonoidElem {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.compose(b)).collect(),
        })
    }

    /// Units are exactly the elements whose every `σ_k` is a bijection.
    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|c| c.sigma.is_bijective())
    }

    /// `(σ^{-1}, s'_i = -s_{σ^{-1}(i)} mod k)` per component.
    pub fn invert(&self) -> Result<MonoidElem> {
        let components = self
            .components
            .iter()
            .map(|c| {
                let inv = c.sigma.inverse().ok_or(Error::NotInvertible)?;
                let shifts = inv.0.iter().map(|&i| (c.k - c.shifts.0[i as usize]) % c.k).collect();
                Ok(Component { k: c.k, sigma: inv, shifts: ShiftVector(shifts) })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonoidElem { components })
    }

    /// The induced map on the field, `a_{i,j}^{(k)} -> a_{σ_k(i), γ_{k,i}(j)}^{(k)}`.
    pub fn delta(&self, table: &OrbitTable) -> Result<FuncTable> {
        if self.shape() != MonoidShape::from_table(table) {
            return Err(Error::ShapeMismatch);
        }
        let mut images = vec![0; table.len()];
        for (stratum, comp) in table.strata().iter().zip(&self.components) {
            let k = comp.k as usize;
            for (i, orbit) in stratum.orbits().enumerate() {
                let target = stratum.orbit(comp.sigma.0[i] as usize + 1);
                let shift = comp.shifts.0[i] as usize;
                for (j, &x) in orbit.iter().enumerate() {
                    images[x as usize] = target[(j + shift) % k];
                }
            }
        }
        Ok(FuncTable::new(images))
    }

    /// Recovers `(σ, γ)` from a map that preserves every stratum and commutes
    /// with the Frobenius: `σ(i)` and `γ_i(1)` are read off the image of `a_{i,1}`.
    pub fn delta_inv(f: &FuncTable, table: &OrbitTable) -> Result<MonoidElem> {
        if f.len() != table.len() {
            return Err(Error::TableSize { expected: table.len() as u64, found: f.len() });
        }
        if let Some(x) = f.stratum_defect(table) {
            return Err(Error::NotPreserving(x));
        }
        if let Some(x) = f.frobenius_defect(table) {
            return Err(Error::NotEquivariant(x));
        }
        let components = table
            .strata()
            .iter()
            .map(|stratum| {
                let (sigma, shifts) = stratum
                    .orbits()
                    .map(|orbit| {
                        let c = table.locate(f.apply(orbit[0]));
                        (c.i - 1, c.j - 1)
                    })
                    .unzip();
                Component { k: stratum.k(), sigma: IndexMap(sigma), shifts: ShiftVector(shifts) }
            })
            .collect();
        Ok(MonoidElem { components })
    }

    /// Uniform element: independent uniform `σ_k` entries and shifts.
    pub fn random<R: Rng + ?Sized>(shape: &MonoidShape, rng: &mut R) -> Self {
        let components = shape
            .parts
            .iter()
            .map(|part| {
                let n = part.n as u32;
                let sigma = (0..n).map(|_| rng.gen_range(0..n)).collect();
                let shifts = (0..n).map(|_| rng.gen_range(0..part.k)).collect();
                Component { k: part.k, sigma: IndexMap(sigma), shifts: ShiftVector(shifts) }
            })
            .collect();
        MonoidElem { components }
    }

    pub fn random_seeded(shape: &MonoidShape, seed: u64) -> Self {
        Self::random(shape, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform unit: uniform permutations and shifts.
    pub fn random_unit<R: Rng + ?Sized>(shape: &MonoidShape, rng: &mut R) -> Self {
        let components = shape
            .parts
            .iter()
            .map(|part| {
                let mut sigma: Vec<u32> = (0..part.n as u32).collect();
                for i in (1..sigma.len()).rev() {
                    sigma.swap(i, rng.gen_range(0..=i));
                }
                let shifts = (0..part.n).map(|_| rng.gen_range(0..part.k)).collect();
                Component { k: part.k, sigma: IndexMap(sigma), shifts: ShiftVector(shifts) }
            })
            .collect();
        MonoidElem { components }
    }

    /// Splits a unit `u` into `s ∘ Δ(h)`: `s` permutes `F_q` and fixes
    /// everything else, `h` is a unit fixing `F_q` pointwise.
    pub fn factor_unit(&self, table: &OrbitTable) -> Result<(FuncTable, MonoidElem)> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let shape = self.shape();
        let mut base_part = MonoidElem::identity(&shape);
        let mut h = self.clone();
        for (idx, comp) in self.components.iter().enumerate() {
            if comp.k == 1 {
                base_part.components[idx] = comp.clone();
                h.components[idx] = Component::identity(comp.part());
            }
        }
        Ok((base_part.delta(table)?, h))
    }
}

/// All elements of a shape in lexicographic order of their coordinates
/// (`σ_k` then shifts, divisors ascending, last coordinate fastest).
#[derive(Debug, Clone)]
pub struct MonoidIter {
    parts: Vec<ShapePart>,
    radices: Vec<u32>,
    digits: Option<Vec<u32>>,
}

impl MonoidIter {
    fn build(&self, digits: &[u32]) -> MonoidElem {
        let mut pos = 0;
        let components = self
            .parts
            .iter()
            .map(|part| {
                let sigma = digits[pos..pos + part.n].to_vec();
                let shifts = digits[pos + part.n..pos + 2 * part.n].to_vec();
                pos += 2 * part.n;
                Component { k: part.k, sigma: IndexMap(sigma), shifts: ShiftVector(shifts) }
            })
            .collect();
        MonoidElem { components }
    }
}

impl Iterator for MonoidIter {
    type Item = MonoidElem;

    fn next(&mut self) -> Option<MonoidElem> {
        let digits = self.digits.as_mut()?;
        let current = digits.clone();
        let mut done = true;
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < self.radices[i] {
                done = false;
                break;
            }
            digits[i] = 0;
        }
        if done {
            self.digits = None;
        }
        Some(self.build(&current))
    }
}

pub const DEFAULT_BOUND: u64 = 1 << 20;

pub fn enumerate_monoid(shape: &MonoidShape, bound: u64) -> Result<MonoidIter> {
    let size = shape.cardinality();
    if size > BigUint::from(bound) {
        return Err(Error::TooLarge { size, bound });
    }
    let mut radices = Vec::new();
    for part in &shape.parts {
        radices.extend(core::iter::repeat_n(part.n as u32, part.n));
        radices.extend(core::iter::repeat_n(part.k, part.n));
    }
    let digits = vec![0; radices.len()];
    Ok(MonoidIter { parts: shape.parts.clone(), radices, digits: Some(digits) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn t22() -> (FieldCtx, OrbitTable, MonoidShape) {
        let ctx = FieldCtx::new(2, 1, 2, None).unwrap();
        let table = OrbitTable::new(&ctx);
        let shape = MonoidShape::from_table(&table);
        (ctx, table, shape)
    }

    fn frob_elem() -> MonoidElem {
        MonoidElem::new(vec![
            Component::new(1, vec![0, 1], vec![0, 0]).unwrap(),
            Component::new(2, vec![0], vec![1]).unwrap(),
        ])
    }

    #[test]
    fn shape_of_t22() {
        let (_, _, shape) = t22();
        assert_eq!(shape.parts(), [ShapePart { k: 1, n: 2 }, ShapePart { k: 2, n: 1 }]);
        assert_eq!(shape, MonoidShape::new(2, 2).unwrap());
        assert_eq!(shape.cardinality(), BigUint::from(8u32));
        assert_eq!(shape.unit_count(), BigUint::from(4u32));
    }

    #[test]
    fn frobenius_element_is_an_involution() {
        let (_, table, shape) = t22();
        let f = frob_elem();
        let id = MonoidElem::identity(&shape);
        assert_eq!(f.compose(&f).unwrap(), id);
        assert_eq!(f.invert().unwrap(), f);
        // x^2 on F_4: 0, 1 fixed; α <-> α+1
        assert_eq!(f.delta(&table).unwrap().images(), [0, 1, 3, 2]);
        assert_eq!(id.delta(&table).unwrap(), FuncTable::identity(4));
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn constant_sigma_gives_x3_plus_x_plus_1() {
        let (_, table, _) = t22();
        let a = MonoidElem::new(vec![
            Component::new(1, vec![1, 1], vec![0, 0]).unwrap(),
            Component::new(2, vec![0], vec![0]).unwrap(),
        ]);
        assert!(!a.is_invertible());
        assert_eq!(a.invert().unwrap_err(), Error::NotInvertible);
        assert_eq!(a.delta(&table).unwrap().images(), [1, 1, 2, 3]);
    }

    #[test]
    fn delta_inv_examples() {
        let (_, table, shape) = t22();
        assert_eq!(MonoidElem::delta_inv(&FuncTable::identity(4), &table).unwrap(), MonoidElem::identity(&shape));
        assert_eq!(MonoidElem::delta_inv(&FuncTable::new(vec![0, 1, 3, 2]), &table).unwrap(), frob_elem());
        // x^3: 0 -> 0, everything else -> 1
        assert_eq!(
            MonoidElem::delta_inv(&FuncTable::new(vec![0, 1, 1, 1]), &table).unwrap_err(),
            Error::NotPreserving(2)
        );
        // α -> α, α+1 -> α preserves strata but does not commute with x^2
        assert_eq!(
            MonoidElem::delta_inv(&FuncTable::new(vec![0, 1, 2, 2]), &table).unwrap_err(),
            Error::NotEquivariant(2)
        );
        assert!(matches!(MonoidElem::delta_inv(&FuncTable::identity(3), &table), Err(Error::TableSize { .. })));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let (_, _, shape) = t22();
        let all: Vec<_> = enumerate_monoid(&shape, DEFAULT_BOUND).unwrap().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].components()[0].sigma().values(), [0, 0]);
        assert!(all.contains(&MonoidElem::identity(&shape)));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
        assert_eq!(all.iter().filter(|a| a.is_invertible()).count(), 4);
        assert_eq!(enumerate_monoid(&MonoidShape::new(2, 3).unwrap(), DEFAULT_BOUND).unwrap().count(), 144);
        assert_eq!(enumerate_monoid(&MonoidShape::new(3, 2).unwrap(), DEFAULT_BOUND).unwrap().count(), 5832);
        assert!(matches!(
            enumerate_monoid(&MonoidShape::new(5, 2).unwrap(), DEFAULT_BOUND),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn shape_mismatch() {
        let a = MonoidElem::identity(&MonoidShape::new(2, 2).unwrap());
        let b = MonoidElem::identity(&MonoidShape::new(2, 3).unwrap());
        assert_eq!(a.compose(&b).unwrap_err(), Error::ShapeMismatch);
        let ctx = FieldCtx::new(2, 1, 3, None).unwrap();
        assert_eq!(a.delta(&OrbitTable::new(&ctx)).unwrap_err(), Error::ShapeMismatch);
    }

    #[test]
    fn malformed_components_rejected() {
        assert!(Component::new(2, vec![0, 2], vec![0, 0]).is_err());
        assert!(Component::new(2, vec![0, 1], vec![0, 2]).is_err());
        assert!(Component::new(2, vec![0, 1], vec![0]).is_err());
        assert!(IndexMap::from_one_based(&[1, 3]).is_err());
        assert_eq!(IndexMap::from_one_based(&[2, 1]).unwrap().to_one_based(), [2, 1]);
    }

    #[test]
    fn empty_component_is_harmless() {
        let shape = MonoidShape::from_parts(vec![ShapePart { k: 1, n: 2 }, ShapePart { k: 3, n: 0 }]);
        let id = MonoidElem::identity(&shape);
        assert_eq!(id.compose(&id).unwrap(), id);
        assert!(id.is_invertible());
        assert_eq!(enumerate_monoid(&shape, 100).unwrap().count(), 4);
    }

    #[test]
    fn factor_unit_of_frobenius() {
        let (_, table, shape) = t22();
        let (s, h) = frob_elem().factor_unit(&table).unwrap();
        assert_eq!(s, FuncTable::identity(4));
        assert_eq!(h, frob_elem());
        let (s, h) = MonoidElem::identity(&shape).factor_unit(&table).unwrap();
        assert_eq!((s, h), (FuncTable::identity(4), MonoidElem::identity(&shape)));
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let shape = MonoidShape::new(3, 2).unwrap();
        assert_eq!(MonoidElem::random_seeded(&shape, 7), MonoidElem::random_seeded(&shape, 7));
    }
}
