//! Finite fields `GF(p^(e*m))` with the subfield `F_q`, `q = p^e`.
//!
//! Elements are dense coefficient vectors over `F_p` with respect to the
//! power basis of the modulus. Every element also has a *basis-order index*
//! `c0 + c1*p + c2*p^2 + ...`, so the least significant coefficient varies
//! fastest when elements are listed by index. Hot loops work on indices;
//! [`FFElem`] is the value type handed across the public API.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::{self, checked_pow};
use crate::error::{Error, Result};

/// Position of an element in basis order.
pub type ElemIndex = u32;

/// Largest supported ambient degree `e*m` (reached only for `p = 2`).
pub const MAX_DEGREE: usize = 32;

/// Largest supported number of field elements, so every index fits a `u32`.
pub const MAX_ORDER: u64 = 1 << 32;

type Digits = [u32; MAX_DEGREE];

/// Monic polynomial over a prime field, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePoly {
    coeffs: Vec<u32>,
}

impl PrimePoly {
    /// Trailing zeros are stripped; the remaining leading coefficient must be 1.
    pub fn new(mut coeffs: Vec<u32>) -> Result<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        match coeffs.last() {
            Some(1) => Ok(PrimePoly { coeffs }),
            _ => Err(Error::NotMonic),
        }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn check_residues(&self, p: u32) -> Result<()> {
        match self.coeffs.iter().find(|&&c| c >= p) {
            Some(&c) => Err(Error::InvalidCoefficient { value: c as u64, p }),
            None => Ok(()),
        }
    }
}

/// Dense polynomial helpers over `F_p`, coefficients ascending and trimmed.
mod fp_poly {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn mul_mod_p(a: u32, b: u32, p: u32) -> u32 {
        ((a as u64 * b as u64) % p as u64) as u32
    }

    pub fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut result = 1u32;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod_p(result, base, p);
            }
            base = mul_mod_p(base, base, p);
            e >>= 1;
        }
        result
    }

    /// `a mod b`, with `b` nonzero (not necessarily monic).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod_p(b[db], p);
        while r.len() > db {
            let top = r.len() - 1;
            let c = mul_mod_p(r[top], lead_inv, p);
            if c != 0 {
                let shift = top - db;
                for (j, &bj) in b.iter().enumerate() {
                    let sub = mul_mod_p(c, bj, p);
                    r[shift + j] = ((r[shift + j] as u64 + p as u64 - sub as u64) % p as u64) as u32;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&prod, f, p)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut result = rem(&[1], f, p);
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0) as u64;
                let y = b.get(i).copied().unwrap_or(0) as u64;
                ((x + p as u64 - y) % p as u64) as u32
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }
}

/// Rabin's test: `f` of degree `d` is irreducible over `F_p` iff
/// `x^(p^d) = x mod f` and `gcd(x^(p^(d/r)) - x, f) = 1` for each prime `r | d`.
pub fn is_irreducible(p: u32, f: &PrimePoly) -> bool {
    let d = f.degree();
    if d == 0 || f.check_residues(p).is_err() {
        return false;
    }
    let modulus = f.coeffs();
    let x = fp_poly::rem(&[0, 1], modulus, p);
    // frob[i] = x^(p^i) mod f
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(x.clone());
    for i in 0..d {
        let next = fp_poly::pow_mod(&frob[i], p as u64, modulus, p);
        frob.push(next);
    }
    if frob[d] != x {
        return false;
    }
    arith::prime_factors(d as u64).into_iter().all(|r| {
        let h = fp_poly::sub(&frob[d / r as usize], &x, p);
        fp_poly::gcd(&h, modulus, p).len() == 1
    })
}

/// Least monic irreducible polynomial of degree `d` over `F_p`, scanning
/// candidates in basis order (constant coefficient varying fastest).
pub fn find_irreducible(p: u32, d: usize) -> Result<PrimePoly> {
    if !arith::is_prime(p as u64) {
        return Err(Error::NonPrimeCharacteristic(p as u64));
    }
    assert!(d >= 1, "irreducible polynomials have positive degree");
    let mut coeffs = vec![0u32; d + 1];
    coeffs[d] = 1;
    loop {
        let f = PrimePoly { coeffs: coeffs.clone() };
        if is_irreducible(p, &f) {
            return Ok(f);
        }
        // odometer over the d lower coefficients; an irreducible always exists
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < d, "no irreducible polynomial of degree {d} over F_{p}");
        }
    }
}

/// A field element as coordinates over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    coeffs: Vec<u32>,
}

impl FFElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

/// Immutable description of `GF(q^m)`, `q = p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    m: u32,
    degree: usize,
    q: u64,
    order: u64,
    modulus: PrimePoly,
}

impl FieldCtx {
    /// Builds the field, choosing the least irreducible modulus when none is given.
    pub fn new(p: u32, e: u32, m: u32, modulus: Option<PrimePoly>) -> Result<Self> {
        if !arith::is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if e == 0 || m == 0 {
            return Err(Error::ZeroDegree { e, m });
        }
        let degree = e as u64 * m as u64;
        let too_large = Error::FieldTooLarge { p: p as u64, degree };
        let order = checked_pow(p as u64, degree).ok_or(too_large.clone())?;
        if order > MAX_ORDER {
            return Err(too_large);
        }
        let degree = degree as usize;
        let q = (p as u64).pow(e);
        let modulus = match modulus {
            Some(f) => {
                if f.degree() != degree {
                    return Err(Error::WrongModulusDegree { expected: degree, found: f.degree() });
                }
                f.check_residues(p)?;
                if !is_irreducible(p, &f) {
                    return Err(Error::ReducibleModulus(p));
                }
                f
            }
            None => find_irreducible(p, degree)?,
        };
        Ok(FieldCtx { p, e, m, degree, q, order, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Order of the base field `F_q`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree `e*m` of the field over `F_p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements, `q^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &PrimePoly {
        &self.modulus
    }

    fn decode(&self, idx: ElemIndex) -> Digits {
        let mut d = [0u32; MAX_DEGREE];
        let mut v = idx as u64;
        for slot in d.iter_mut().take(self.degree) {
            *slot = (v % self.p as u64) as u32;
            v /= self.p as u64;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> ElemIndex {
        d[..self.degree].iter().rev().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64) as ElemIndex
    }

    // ---- index-level arithmetic ----

    pub fn zero_idx(&self) -> ElemIndex {
        0
    }

    pub fn one_idx(&self) -> ElemIndex {
        1
    }

    pub fn add_idx(&self, a: ElemIndex, b: ElemIndex) -> ElemIndex {
        if self.p == 2 {
            return a ^ b;
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.degree {
            out[i] = ((x[i] as u64 + y[i] as u64) % self.p as u64) as u32;
        }
        self.encode(&out)
    }

    pub fn neg_idx(&self, a: ElemIndex) -> ElemIndex {
        if self.p == 2 {
            return a;
        }
        let x = self.decode(a);
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.degree {
            out[i] = if x[i] == 0 { 0 } else { self.p - x[i] };
        }
        self.encode(&out)
    }

    pub fn sub_idx(&self, a: ElemIndex, b: ElemIndex) -> ElemIndex {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, a: ElemIndex, b: ElemIndex) -> ElemIndex {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as ElemIndex;
        }
        let p = self.p as u64;
        let n = self.degree;
        let (x, y) = (self.decode(a), self.decode(b));
        let mut buf = [0u64; 2 * MAX_DEGREE];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                buf[i + j] = (buf[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        let f = self.modulus.coeffs();
        for top in (n..2 * n - 1).rev() {
            let c = buf[top];
            if c == 0 {
                continue;
            }
            // x^top = x^(top-n) * x^n and x^n = -(f_0 + ... + f_{n-1} x^{n-1})
            let neg = p - c;
            for (j, &fj) in f[..n].iter().enumerate() {
                buf[top - n + j] = (buf[top - n + j] + neg * fj as u64) % p;
            }
            buf[top] = 0;
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..n {
            out[i] = buf[i] as u32;
        }
        self.encode(&out)
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale_idx(&self, c: u32, a: ElemIndex) -> ElemIndex {
        let x = self.decode(a);
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.degree {
            out[i] = ((x[i] as u64 * c as u64) % self.p as u64) as u32;
        }
        self.encode(&out)
    }

    pub fn pow_idx(&self, a: ElemIndex, mut exp: u64) -> ElemIndex {
        let mut result = 1;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul_idx(result, base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_idx(base, base);
            }
        }
        result
    }

    pub fn pow_big_idx(&self, a: ElemIndex, exp: &BigUint) -> ElemIndex {
        let mut result = 1;
        for limb in exp.to_u64_digits().iter().rev() {
            for bit in (0..64).rev() {
                result = self.mul_idx(result, result);
                if (limb >> bit) & 1 == 1 {
                    result = self.mul_idx(result, a);
                }
            }
        }
        result
    }

    pub fn inv_idx(&self, a: ElemIndex) -> Result<ElemIndex> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow_idx(a, self.order - 2))
    }

    /// `a^q`, the Frobenius over `F_q`: the `p`-power map applied `e` times.
    pub fn frobenius_q_idx(&self, a: ElemIndex) -> ElemIndex {
        (0..self.e).fold(a, |x, _| self.pow_idx(x, self.p as u64))
    }

    /// Least `d >= 1` with `a^(q^d) = a`.
    pub fn subfield_degree_idx(&self, a: ElemIndex) -> u32 {
        let mut x = self.frobenius_q_idx(a);
        let mut d = 1;
        while x != a {
            x = self.frobenius_q_idx(x);
            d += 1;
        }
        d
    }

    /// Whether `a` lies in the base field `F_q`.
    pub fn in_base_field_idx(&self, a: ElemIndex) -> bool {
        self.frobenius_q_idx(a) == a
    }

    // ---- value-level API ----

    pub fn element(&self, idx: ElemIndex) -> FFElem {
        debug_assert!((idx as u64) < self.order);
        FFElem { coeffs: self.decode(idx)[..self.degree].to_vec() }
    }

    pub fn index_of(&self, a: &FFElem) -> ElemIndex {
        debug_assert!(self.contains(a));
        self.encode(&a.coeffs)
    }

    pub fn contains(&self, a: &FFElem) -> bool {
        a.coeffs.len() == self.degree && a.coeffs.iter().all(|&c| c < self.p)
    }

    /// Builds an element from coordinates; missing high coordinates are zero.
    pub fn elem(&self, coeffs: &[u32]) -> Result<FFElem> {
        if coeffs.len() > self.degree && coeffs[self.degree..].iter().any(|&c| c != 0) {
            return Err(Error::ForeignElement);
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidCoefficient { value: c as u64, p: self.p });
        }
        let mut v = coeffs[..coeffs.len().min(self.degree)].to_vec();
        v.resize(self.degree, 0);
        Ok(FFElem { coeffs: v })
    }

    pub fn zero(&self) -> FFElem {
        self.element(0)
    }

    pub fn one(&self) -> FFElem {
        self.element(1)
    }

    /// The generator of the power basis (the class of `x`), or `x` reduced when `e*m = 1`.
    pub fn generator(&self) -> FFElem {
        let mut coeffs = [0u32; MAX_DEGREE + 1];
        coeffs[1] = 1;
        let reduced = fp_poly::rem(&coeffs[..2], self.modulus.coeffs(), self.p);
        let mut v = reduced;
        v.resize(self.degree, 0);
        FFElem { coeffs: v }
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.element(self.add_idx(self.index_of(a), self.index_of(b)))
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.element(self.sub_idx(self.index_of(a), self.index_of(b)))
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        self.element(self.neg_idx(self.index_of(a)))
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.element(self.mul_idx(self.index_of(a), self.index_of(b)))
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        self.inv_idx(self.index_of(a)).map(|i| self.element(i))
    }

    pub fn pow(&self, a: &FFElem, exp: &BigUint) -> FFElem {
        self.element(self.pow_big_idx(self.index_of(a), exp))
    }

    pub fn frobenius_q(&self, a: &FFElem) -> FFElem {
        self.element(self.frobenius_q_idx(self.index_of(a)))
    }

    pub fn subfield_degree(&self, a: &FFElem) -> u32 {
        self.subfield_degree_idx(self.index_of(a))
    }

    /// All elements in basis order.
    pub fn enumerate(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.order).map(move |i| self.element(i as ElemIndex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[u32]) -> PrimePoly {
        PrimePoly::new(c.to_vec()).unwrap()
    }

    fn f4() -> FieldCtx {
        FieldCtx::new(2, 1, 2, Some(poly(&[1, 1, 1]))).unwrap()
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(find_irreducible(2, 1).unwrap().coeffs(), [0, 1]);
        assert_eq!(find_irreducible(2, 2).unwrap().coeffs(), [1, 1, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap().coeffs(), [1, 0, 1]);
        assert_eq!(find_irreducible(2, 3).unwrap().coeffs(), [1, 1, 0, 1]);
        assert_eq!(find_irreducible(2, 4).unwrap().coeffs(), [1, 1, 0, 0, 1]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(FieldCtx::new(2, 1, 2, Some(poly(&[1, 0, 1]))).unwrap_err(), Error::ReducibleModulus(2));
        assert_eq!(FieldCtx::new(4, 1, 2, None).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert_eq!(
            FieldCtx::new(2, 1, 3, Some(poly(&[1, 1, 1]))).unwrap_err(),
            Error::WrongModulusDegree { expected: 3, found: 2 }
        );
        assert!(matches!(FieldCtx::new(2, 1, 33, None), Err(Error::FieldTooLarge { .. })));
        assert_eq!(PrimePoly::new(vec![1, 2]).unwrap_err(), Error::NotMonic);
        assert!(matches!(
            FieldCtx::new(3, 1, 2, Some(poly(&[5, 0, 1]))),
            Err(Error::InvalidCoefficient { value: 5, p: 3 })
        ));
    }

    #[test]
    fn trivial_extension() {
        let f2 = FieldCtx::new(2, 1, 1, None).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.modulus().coeffs(), [0, 1]);
        let all: Vec<_> = f2.enumerate().map(|a| a.coeffs().to_vec()).collect();
        assert_eq!(all, [vec![0], vec![1]]);
    }

    #[test]
    fn f4_arithmetic() {
        let f = f4();
        let alpha = f.elem(&[0, 1]).unwrap();
        let alpha1 = f.elem(&[1, 1]).unwrap();
        assert_eq!(f.generator(), alpha);
        assert_eq!(f.mul(&alpha, &alpha), alpha1);
        assert_eq!(f.inv(&alpha).unwrap(), alpha1);
        assert_eq!(f.frobenius_q(&alpha), alpha1);
        assert_eq!(f.subfield_degree(&alpha), 2);
        assert_eq!(f.subfield_degree(&f.one()), 1);
        assert_eq!(f.inv(&f.zero()).unwrap_err(), Error::ZeroInverse);
        for a in f.enumerate() {
            assert_eq!(f.add(&a, &f.zero()), a);
        }
        let order: Vec<_> = f.enumerate().map(|a| a.coeffs().to_vec()).collect();
        assert_eq!(order, [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn frobenius_order_divides_m() {
        let f8 = FieldCtx::new(2, 1, 3, None).unwrap();
        assert_eq!(f8.enumerate().count(), 8);
        for a in f8.enumerate() {
            let b = f8.frobenius_q(&f8.frobenius_q(&f8.frobenius_q(&a)));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn prime_power_base_field() {
        // GF(16) over F_4: the base field has four elements fixed by x -> x^4.
        let f = FieldCtx::new(2, 2, 2, None).unwrap();
        assert_eq!(f.q(), 4);
        let fixed = (0..16).filter(|&i| f.in_base_field_idx(i)).count();
        assert_eq!(fixed, 4);
        let deg2 = (0..16).filter(|&i| f.subfield_degree_idx(i) == 2).count();
        assert_eq!(deg2, 12);
    }

    #[test]
    fn stratum_sizes_f16() {
        let f = FieldCtx::new(2, 1, 4, None).unwrap();
        let deg4 = (0..16).filter(|&i| f.subfield_degree_idx(i) == 4).count();
        assert_eq!(deg4, 12);
    }

    #[test]
    fn rabin_matches_exhaustive_root_and_factor_search() {
        // Oracle: f of degree <= 3 is irreducible iff it has no root in F_p.
        for p in [2u32, 3, 5] {
            for d in 2..=3usize {
                let total = (p as u64).pow(d as u32);
                for code in 0..total {
                    let mut c: Vec<u32> =
                        (0..d).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
                    c.push(1);
                    let f = PrimePoly::new(c.clone()).unwrap();
                    let has_root = (0..p)
                        .any(|x| c.iter().rev().fold(0u64, |acc, &ci| (acc * x as u64 + ci as u64) % p as u64) == 0);
                    assert_eq!(is_irreducible(p, &f), !has_root, "p={p} f={c:?}");
                }
            }
        }
    }
}
