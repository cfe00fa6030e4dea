use alloc::vec;
use alloc::vec::Vec;

use crate::field::{ElemIndex, FieldCtx};
use crate::orbits::OrbitTable;

/// A total map `F_{q^m} -> F_{q^m}` stored as images indexed by basis order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncTable {
    images: Vec<ElemIndex>,
}

impl FuncTable {
    pub fn new(images: Vec<ElemIndex>) -> Self {
        FuncTable { images }
    }

    pub fn identity(len: usize) -> Self {
        FuncTable { images: (0..len as ElemIndex).collect() }
    }

    pub fn constant(len: usize, value: ElemIndex) -> Self {
        FuncTable { images: vec![value; len] }
    }

    pub fn from_fn(len: usize, f: impl FnMut(ElemIndex) -> ElemIndex) -> Self {
        FuncTable { images: (0..len as ElemIndex).map(f).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[ElemIndex] {
        &self.images
    }

    pub fn apply(&self, x: ElemIndex) -> ElemIndex {
        self.images[x as usize]
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &FuncTable) -> FuncTable {
        FuncTable { images: inner.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn is_valid_for(&self, ctx: &FieldCtx) -> bool {
        self.images.len() as u64 == ctx.order() && self.images.iter().all(|&y| (y as u64) < ctx.order())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&y| !core::mem::replace(&mut seen[y as usize], true))
    }

    /// First `x` with `f(φ_q(x)) ≠ φ_q(f(x))`, if any.
    pub fn frobenius_defect(&self, table: &OrbitTable) -> Option<ElemIndex> {
        (0..self.images.len() as ElemIndex).find(|&x| self.apply(table.frobenius(x)) != table.frobenius(self.apply(x)))
    }

    /// First `x` whose image has a different degree over `F_q`, if any.
    pub fn stratum_defect(&self, table: &OrbitTable) -> Option<ElemIndex> {
        (0..self.images.len() as ElemIndex).find(|&x| table.degree(self.apply(x)) != table.degree(x))
    }
}
