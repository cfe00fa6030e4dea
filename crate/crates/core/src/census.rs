//! Exact cardinalities and densities of `T_q^m`, its unit group and the
//! subfield-preserving maps `L`, plus an exhaustive oracle that classifies
//! every canonical polynomial directly.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{ElemIndex, FieldCtx};
use crate::monoid::factorial;
use crate::orbits::pi_count;

/// Exact rationals are produced only while `q^(q^m)` has at most this many bits.
pub const MAX_EXACT_BITS: u64 = 1 << 16;

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::DegenerateField(q));
    }
    arith::prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

/// Per-divisor data: `π_q(k)` and the three per-stratum factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCount {
    pub k: u64,
    pub pi: BigUint,
}

impl DivisorCount {
    fn pi_usize(&self) -> usize {
        self.pi.to_usize().expect("π(k) too large to use as an exponent")
    }

    /// `k^π π^π`
    pub fn t_factor(&self) -> BigUint {
        let n = self.pi_usize();
        num_traits::pow(BigUint::from(self.k), n) * num_traits::pow(self.pi.clone(), n)
    }

    /// `k^π π!`
    pub fn unit_factor(&self) -> BigUint {
        let n = self.pi_usize();
        num_traits::pow(BigUint::from(self.k), n) * factorial(n as u64)
    }

    /// `(kπ)^(kπ)`
    pub fn l_factor(&self) -> BigUint {
        let size = BigUint::from(self.k) * &self.pi;
        let e = size.to_usize().expect("stratum too large");
        num_traits::pow(size, e)
    }

    fn pi_f64(&self) -> f64 {
        self.pi.to_f64().unwrap_or(f64::INFINITY)
    }
}

pub fn divisor_counts(q: u64, m: u32) -> Result<Vec<DivisorCount>> {
    check_q(q)?;
    if m == 0 {
        return Err(Error::ZeroDegree { e: 1, m });
    }
    Ok(arith::divisors(m as u64).into_iter().map(|k| DivisorCount { k, pi: pi_count(q, k) }).collect())
}

/// `|T_q^m| = ∏_{k|m} k^π(k) π(k)^π(k)`
pub fn count_t(q: u64, m: u32) -> Result<BigUint> {
    Ok(divisor_counts(q, m)?.iter().map(DivisorCount::t_factor).product())
}

/// `|(T_q^m)^*| = ∏_{k|m} k^π(k) π(k)!`
pub fn count_units(q: u64, m: u32) -> Result<BigUint> {
    Ok(divisor_counts(q, m)?.iter().map(DivisorCount::unit_factor).product())
}

/// `|L| = ∏_{k|m} (kπ(k))^(kπ(k))`, all subfield-preserving maps.
pub fn count_l(q: u64, m: u32) -> Result<BigUint> {
    Ok(divisor_counts(q, m)?.iter().map(DivisorCount::l_factor).product())
}

/// `q^(q^m)`, the number of canonical polynomial functions.
fn canonical_total(q: u64, m: u32) -> Result<BigUint> {
    let too_large = || Error::TooLarge { size: BigUint::from(q).pow(m), bound: MAX_EXACT_BITS };
    let qm = arith::checked_pow(q, m as u64).ok_or_else(too_large)?;
    let bits = qm.checked_mul(64 - q.leading_zeros() as u64).ok_or_else(too_large)?;
    if bits > MAX_EXACT_BITS {
        return Err(too_large());
    }
    Ok(num_traits::pow(BigUint::from(q), qm as usize))
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact `|T_q^m| / q^(q^m)`.
pub fn density_t(q: u64, m: u32) -> Result<BigRational> {
    let total = canonical_total(q, m)?;
    let general = ratio(count_t(q, m)?, total);
    if arith::is_prime(m as u64) {
        assert_eq!(general, density_t_prime(q, m as u64)?, "closed form disagrees with the product formula");
    }
    Ok(general)
}

/// Prime-degree closed form `q^q (q^p - q)^((q^p - q)/p) / q^(q^p)`.
pub fn density_t_prime(q: u64, p: u64) -> Result<BigRational> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let total = canonical_total(q, p as u32)?;
    let qp = BigUint::from(q).pow(p as u32);
    let moved = qp - q;
    let exp = (&moved / p).to_usize().expect("exponent fits");
    let num = num_traits::pow(BigUint::from(q), q as usize) * num_traits::pow(moved, exp);
    Ok(ratio(num, total))
}

/// `ln(|T_q^p| / q^(q^p))` for prime `p`, evaluated as
/// `((q^p - q)/p) ln(1 - q^(1-p))` without forming `q^p`.
pub fn log_density_t_stable(q: u64, p: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::DegenerateField(q));
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let qf = q as f64;
    // t = q^(1-p);  (q^p - q)/p = q (1 - t) / (p t)
    let t = libm::pow(qf, 1.0 - p as f64);
    let log_ratio = if t < 1e-300 { -1.0 } else { libm::log1p(-t) / t };
    Ok(qf * (1.0 - t) * log_ratio / p as f64)
}

pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().expect("finite"));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("finite");
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

pub fn ln_rational(r: &BigRational) -> f64 {
    let num = r.numer().to_biguint().expect("non-negative");
    let den = r.denom().to_biguint().expect("positive");
    ln_biguint(&num) - ln_biguint(&den)
}

/// Density of the unit group among canonical polynomial functions.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitsDensity {
    /// `None` when `q^(q^m)` is too large to materialize.
    pub exact: Option<BigRational>,
    /// Natural log, via log-gamma for the factorials.
    pub ln: f64,
}

pub fn density_units(q: u64, m: u32) -> Result<UnitsDensity> {
    let counts = divisor_counts(q, m)?;
    let ln_units: f64 = counts
        .iter()
        .map(|c| {
            let n = c.pi_f64();
            n * libm::log(c.k as f64) + libm::lgamma(n + 1.0)
        })
        .sum();
    let ln = ln_units - libm::pow(q as f64, m as f64) * libm::log(q as f64);
    let exact = match canonical_total(q, m) {
        Ok(total) => Some(ratio(counts.iter().map(DivisorCount::unit_factor).product(), total)),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(UnitsDensity { exact, ln })
}

fn ln_count_t(counts: &[DivisorCount]) -> f64 {
    counts
        .iter()
        .map(|c| {
            let n = c.pi_f64();
            n * (libm::log(c.k as f64) + libm::log(n))
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub q: u64,
    pub m: u32,
    pub divisors: Vec<DivisorCount>,
    pub count_t: BigUint,
    pub count_units: BigUint,
    pub count_l: BigUint,
    pub density_t: Option<BigRational>,
    pub density_t_float: f64,
    pub density_units: Option<BigRational>,
    pub density_units_float: f64,
    /// Stable log density, prime `m` only.
    pub log_density_t: Option<f64>,
}

impl CensusReport {
    pub fn compute(q: u64, m: u32) -> Result<Self> {
        let divisors = divisor_counts(q, m)?;
        let count_t: BigUint = divisors.iter().map(DivisorCount::t_factor).product();
        let count_units: BigUint = divisors.iter().map(DivisorCount::unit_factor).product();
        let count_l: BigUint = divisors.iter().map(DivisorCount::l_factor).product();
        let density_t = match density_t(q, m) {
            Ok(r) => Some(r),
            Err(Error::TooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        let units = density_units(q, m)?;
        let density_t_float = match &density_t {
            Some(r) => r.to_f64().unwrap_or(0.0),
            None => libm::exp(ln_count_t(&divisors) - libm::pow(q as f64, m as f64) * libm::log(q as f64)),
        };
        let density_units_float = match &units.exact {
            Some(r) => r.to_f64().unwrap_or(0.0),
            None => libm::exp(units.ln),
        };
        let log_density_t = if arith::is_prime(m as u64) { Some(log_density_t_stable(q, m as u64)?) } else { None };
        Ok(CensusReport {
            q,
            m,
            divisors,
            count_t,
            count_units,
            count_l,
            density_t,
            density_t_float,
            density_units: units.exact,
            density_units_float,
            log_density_t,
        })
    }
}

/// Observed counts from exhaustive classification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BruteForceCounts {
    pub candidates: u64,
    pub members: u64,
    pub units: u64,
}

impl core::ops::Add for BruteForceCounts {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        BruteForceCounts {
            candidates: self.candidates + o.candidates,
            members: self.members + o.members,
            units: self.units + o.units,
        }
    }
}

/// Exhaustive walk over every reduced polynomial with coefficients in `F_q`.
///
/// Candidates are visited depth-first over coefficients `c_0, c_1, ...`, each
/// ranging over `F_q` in basis order; value tables are accumulated one
/// monomial at a time. Strata are computed from `a^(q^d) = a` directly, so
/// this shares nothing with the orbit labelling or the monoid.
#[derive(Debug, Clone)]
pub struct CanonicalSearch {
    n: usize,
    base: Vec<ElemIndex>,
    degree: Vec<u32>,
    add: Vec<ElemIndex>,
    /// `scaled[(d * q + c) * n + x] = base[c] * x^d`
    scaled: Vec<ElemIndex>,
}

impl CanonicalSearch {
    pub fn new(ctx: &FieldCtx, bound: u64) -> Result<Self> {
        let n = ctx.order() as usize;
        let size = num_traits::pow(BigUint::from(ctx.q()), n);
        if size > BigUint::from(bound) {
            return Err(Error::TooLarge { size, bound });
        }
        let all = 0..n as ElemIndex;
        let base: Vec<ElemIndex> = all.clone().filter(|&x| ctx.in_base_field_idx(x)).collect();
        let degree: Vec<u32> = all.clone().map(|x| ctx.subfield_degree_idx(x)).collect();
        let mut add = vec![0; n * n];
        for a in all.clone() {
            for b in all.clone() {
                add[a as usize * n + b as usize] = ctx.add_idx(a, b);
            }
        }
        let q = base.len();
        let mut scaled = vec![0; n * q * n];
        for d in 0..n {
            for (ci, &c) in base.iter().enumerate() {
                for x in all.clone() {
                    let xd = ctx.pow_idx(x, d as u64);
                    scaled[(d * q + ci) * n + x as usize] = ctx.mul_idx(c, xd);
                }
            }
        }
        Ok(CanonicalSearch { n, base, degree, add, scaled })
    }

    /// Elements of `F_q` in basis order; digit `c` selects `base()[c]`.
    pub fn base(&self) -> &[ElemIndex] {
        &self.base
    }

    /// All digit prefixes of the given length.
    pub fn prefixes(&self, depth: usize) -> Vec<Vec<u32>> {
        let depth = depth.min(self.n);
        let q = self.base.len() as u32;
        let mut out = vec![Vec::new()];
        for _ in 0..depth {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..q).map(move |c| {
                        let mut v = p.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Visits every candidate extending `prefix` with its coefficient digits
    /// and its value table.
    pub fn visit(&self, prefix: &[u32], mut f: impl FnMut(&[u32], &[ElemIndex])) {
        let mut digits = prefix.to_vec();
        let mut acc = vec![0; self.n];
        for (d, &c) in prefix.iter().enumerate() {
            self.accumulate(&mut acc, d, c);
        }
        self.descend(prefix.len(), &mut digits, &acc, &mut f);
    }

    fn accumulate(&self, acc: &mut [ElemIndex], d: usize, c: u32) {
        let q = self.base.len();
        let row = &self.scaled[(d * q + c as usize) * self.n..][..self.n];
        for (a, &s) in acc.iter_mut().zip(row) {
            *a = self.add[*a as usize * self.n + s as usize];
        }
    }

    fn descend(&self, d: usize, digits: &mut Vec<u32>, acc: &[ElemIndex], f: &mut impl FnMut(&[u32], &[ElemIndex])) {
        if d == self.n {
            f(digits, acc);
            return;
        }
        let mut next = acc.to_vec();
        for c in 0..self.base.len() as u32 {
            next.copy_from_slice(acc);
            self.accumulate(&mut next, d, c);
            digits.push(c);
            self.descend(d + 1, digits, &next, f);
            digits.pop();
        }
    }

    /// Whether a value table keeps every element in its stratum.
    pub fn preserves_strata(&self, values: &[ElemIndex]) -> bool {
        values.iter().enumerate().all(|(x, &y)| self.degree[y as usize] == self.degree[x])
    }

    pub fn count(&self, prefix: &[u32]) -> BruteForceCounts {
        let mut counts = BruteForceCounts::default();
        let mut seen = vec![false; self.n];
        self.visit(prefix, |_, values| {
            counts.candidates += 1;
            if self.preserves_strata(values) {
                counts.members += 1;
                seen.iter_mut().for_each(|s| *s = false);
                if values.iter().all(|&y| !core::mem::replace(&mut seen[y as usize], true)) {
                    counts.units += 1;
                }
            }
        });
        counts
    }
}

/// Exhaustive counts of `T_q^m` and its units.
pub fn brute_force_census(ctx: &FieldCtx, bound: u64) -> Result<BruteForceCounts> {
    Ok(CanonicalSearch::new(ctx, bound)?.count(&[]))
}

/// Coefficient vectors (as element indices) of every member of `T_q^m`,
/// found by exhaustive search.
pub fn brute_force_members(ctx: &FieldCtx, bound: u64) -> Result<Vec<Vec<ElemIndex>>> {
    let search = CanonicalSearch::new(ctx, bound)?;
    let mut out = Vec::new();
    search.visit(&[], |digits, values| {
        if search.preserves_strata(values) {
            out.push(digits.iter().map(|&c| search.base[c as usize]).collect());
        }
    });
    Ok(out)
}

/// Counts subfield-preserving maps by enumerating all `(q^m)^(q^m)` maps.
pub fn brute_force_count_l(ctx: &FieldCtx, bound: u64) -> Result<u64> {
    let n = ctx.order() as usize;
    let size = num_traits::pow(BigUint::from(n), n);
    if size > BigUint::from(bound) {
        return Err(Error::TooLarge { size, bound });
    }
    let degree: Vec<u32> = (0..n as ElemIndex).map(|x| ctx.subfield_degree_idx(x)).collect();
    let mut images = vec![0usize; n];
    let mut count = 0;
    loop {
        if images.iter().enumerate().all(|(x, &y)| degree[y] == degree[x]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceMode {
    /// `q` fixed, `p` over the primes of the range.
    FixedQ(u64),
    /// `p` fixed, `q` over the prime powers of the range.
    FixedP(u64),
    /// `q = p` over the primes of the range.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub q: u64,
    pub p: u64,
    pub log_density: f64,
}

/// Tabulates the stable log density along one direction, range inclusive.
pub fn convergence_table(mode: ConvergenceMode, lo: u64, hi: u64) -> Result<Vec<ConvergenceRow>> {
    let range = lo..=hi;
    let pairs: Vec<(u64, u64)> = match mode {
        ConvergenceMode::FixedQ(q) => {
            check_q(q)?;
            range.filter(|&p| arith::is_prime(p)).map(|p| (q, p)).collect()
        }
        ConvergenceMode::FixedP(p) => {
            if !arith::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            range.filter(|&q| arith::prime_power(q).is_some()).map(|q| (q, p)).collect()
        }
        ConvergenceMode::Diagonal => range.filter(|&p| arith::is_prime(p)).map(|p| (p, p)).collect(),
    };
    pairs.into_iter().map(|(q, p)| Ok(ConvergenceRow { q, p, log_density: log_density_t_stable(q, p)? })).collect()
}
