//! The `verify` suite: formula vs oracle counts plus the structural
//! properties of `Δ`, each run exhaustively when it fits under the bound and
//! on seeded samples otherwise.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use subfield_core::census::{count_t, count_units};
use subfield_core::monoid::enumerate_monoid;
use subfield_core::poly::{
    commutes_with_frobenius, func_from_poly, interpolate, is_canonical, is_member_t, is_subfield_preserving,
    is_subfield_preserving_literal,
};
use subfield_core::{Error, FieldCtx, FuncTable, MonoidElem, MonoidShape, OrbitTable, PolyRep};

use crate::parallel::{brute_force_census_par, brute_force_member_tables_par};

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest search space walked exhaustively.
    pub bound: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { bound: subfield_core::monoid::DEFAULT_BOUND, samples: 10_000, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive(u64),
    Sampled(u64),
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub mode: Mode,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn sampled(&self) -> bool {
        self.checks.iter().any(|c| matches!(c.mode, Mode::Sampled(_)))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let (mode, cases) = match c.mode {
                    Mode::Exhaustive(n) => ("exhaustive", n),
                    Mode::Sampled(n) => ("sampled", n),
                };
                json!({ "name": c.name, "mode": mode, "cases": cases, "passed": c.passed, "detail": c.detail })
            })
            .collect();
        json!({ "passed": self.passed(), "sampled": self.sampled(), "checks": checks })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mode = match c.mode {
                Mode::Exhaustive(n) => format!("exhaustive, {n} cases"),
                Mode::Sampled(n) => format!("sampled, {n} cases"),
            };
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{verdict} {} ({mode}): {}\n", c.name, c.detail));
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        let scope = if self.sampled() { " (sampled)" } else { "" };
        out.push_str(&format!("{overall}{scope}\n"));
        out
    }
}

struct Suite<'a> {
    ctx: &'a FieldCtx,
    table: OrbitTable,
    shape: MonoidShape,
    opts: VerifyOptions,
    rng: ChaCha8Rng,
    /// The whole monoid, when it fits under the bound.
    all: Option<Vec<MonoidElem>>,
}

pub fn verify(ctx: &FieldCtx, opts: VerifyOptions) -> VerifyReport {
    let table = OrbitTable::new(ctx);
    let shape = MonoidShape::from_table(&table);
    let all = enumerate_monoid(&shape, opts.bound).ok().map(Iterator::collect);
    let mut suite = Suite { ctx, table, shape, opts, rng: ChaCha8Rng::seed_from_u64(opts.seed), all };
    let checks = vec![
        suite.census(),
        suite.member_set(),
        suite.homomorphism(),
        suite.round_trip(),
        suite.canonicity(),
        suite.preservation(),
        suite.unit_law(),
        suite.factorization(),
    ];
    VerifyReport { checks }
}

fn count_failures<T>(items: impl Iterator<Item = T>, mut ok: impl FnMut(T) -> bool) -> (u64, u64) {
    let mut cases = 0;
    let mut failures = 0;
    for item in items {
        cases += 1;
        failures += !ok(item) as u64;
    }
    (cases, failures)
}

fn outcome(name: &'static str, exhaustive: bool, (cases, failures): (u64, u64), what: &str) -> Check {
    let mode = if exhaustive { Mode::Exhaustive(cases) } else { Mode::Sampled(cases) };
    Check { name, mode, passed: failures == 0, detail: format!("{failures} failures, {what}") }
}

impl Suite<'_> {
    fn random_elem(&mut self) -> MonoidElem {
        MonoidElem::random(&self.shape, &mut self.rng)
    }

    /// Elements to test: everything when enumerable, else fresh samples.
    fn elements(&mut self, units_only: bool) -> (bool, Vec<MonoidElem>) {
        match &self.all {
            Some(all) => (true, all.iter().filter(|a| !units_only || a.is_invertible()).cloned().collect()),
            None => {
                let n = self.opts.samples;
                let out = (0..n)
                    .map(|_| {
                        if units_only {
                            MonoidElem::random_unit(&self.shape, &mut self.rng)
                        } else {
                            self.random_elem()
                        }
                    })
                    .collect();
                (false, out)
            }
        }
    }

    fn census(&mut self) -> Check {
        let (q, m) = (self.ctx.q(), self.ctx.m());
        let want_t = count_t(q, m).expect("valid field");
        let want_u = count_units(q, m).expect("valid field");
        match brute_force_census_par(self.ctx, self.opts.bound) {
            Ok(got) => {
                let ok = BigUint::from(got.members) == want_t && BigUint::from(got.units) == want_u;
                Check {
                    name: "census",
                    mode: Mode::Exhaustive(got.candidates),
                    passed: ok,
                    detail: format!("|T| {} = {want_t}, units {} = {want_u}", got.members, got.units),
                }
            }
            Err(Error::TooLarge { size, .. }) => {
                // Random canonical candidates: membership must agree with Δ⁻¹.
                let base = self.table.stratum(1).expect("k = 1 always present").elements().to_vec();
                let n = self.ctx.order() as usize;
                let mut members = 0u64;
                let samples = self.opts.samples;
                let mut failures = 0;
                for _ in 0..samples {
                    let coeffs: Vec<u32> = (0..n).map(|_| base[self.rng.gen_range(0..base.len())]).collect();
                    let p = PolyRep::reduce(self.ctx, &coeffs).expect("valid coefficients");
                    let member = is_member_t(self.ctx, &self.table, &p);
                    let decoded = MonoidElem::delta_inv(&func_from_poly(self.ctx, &p), &self.table).is_ok();
                    members += member as u64;
                    failures += (member != decoded) as u64;
                }
                Check {
                    name: "census",
                    mode: Mode::Sampled(samples),
                    passed: failures == 0,
                    detail: format!(
                        "exhaustive search TooLarge ({size} candidates); {failures} failures, {members} sampled members, formula |T| = {want_t}, units = {want_u}"
                    ),
                }
            }
            Err(e) => Check { name: "census", mode: Mode::Exhaustive(0), passed: false, detail: e.to_string() },
        }
    }

    /// `Δ(T)` equals the set found by the exhaustive search.
    fn member_set(&mut self) -> Check {
        let oracle = brute_force_member_tables_par(self.ctx, self.opts.bound);
        match (&self.all, oracle) {
            (Some(all), Ok(members)) => {
                let images: BTreeSet<FuncTable> = all.iter().map(|a| a.delta(&self.table).expect("shape")).collect();
                let members: BTreeSet<FuncTable> = members.into_iter().collect();
                let ok = images == members && images.len() == all.len();
                Check {
                    name: "member-set",
                    mode: Mode::Exhaustive(all.len() as u64),
                    passed: ok,
                    detail: format!("{} images of Δ, {} oracle members", images.len(), members.len()),
                }
            }
            _ => {
                let samples: Vec<_> = (0..self.opts.samples).map(|_| self.random_elem()).collect();
                let result = count_failures(samples.iter(), |a| {
                    let p = interpolate(self.ctx, &a.delta(&self.table).expect("shape"));
                    is_member_t(self.ctx, &self.table, &p)
                });
                outcome("member-set", false, result, "Δ(a) is a canonical subfield-preserving polynomial")
            }
        }
    }

    fn homomorphism(&mut self) -> Check {
        let check = |table: &OrbitTable, a: &MonoidElem, b: &MonoidElem| {
            let (fa, fb) = (a.delta(table).expect("shape"), b.delta(table).expect("shape"));
            a.compose(b).and_then(|ab| ab.delta(table)).is_ok_and(|f| f == fa.compose(&fb))
        };
        let fits = self.all.as_ref().is_some_and(|all| (all.len() as u64).saturating_pow(2) <= self.opts.bound);
        if fits {
            let all = self.all.as_ref().expect("enumerated");
            let tables: Vec<FuncTable> = all.iter().map(|a| a.delta(&self.table).expect("shape")).collect();
            let mut cases = 0;
            let mut failures = 0;
            for (a, fa) in all.iter().zip(&tables) {
                for (b, fb) in all.iter().zip(&tables) {
                    cases += 1;
                    let ok = a.compose(b).and_then(|ab| ab.delta(&self.table)).is_ok_and(|f| f == fa.compose(fb));
                    failures += !ok as u64;
                }
            }
            outcome("homomorphism", true, (cases, failures), "Δ(a*b) = Δ(a)∘Δ(b)")
        } else {
            let pairs: Vec<_> = (0..self.opts.samples).map(|_| (self.random_elem(), self.random_elem())).collect();
            let result = count_failures(pairs.iter(), |(a, b)| check(&self.table, a, b));
            outcome("homomorphism", false, result, "Δ(a*b) = Δ(a)∘Δ(b)")
        }
    }

    fn round_trip(&mut self) -> Check {
        let (exhaustive, elems) = self.elements(false);
        let result = count_failures(elems.iter(), |a| {
            let f = a.delta(&self.table).expect("shape");
            let p = interpolate(self.ctx, &f);
            func_from_poly(self.ctx, &p) == f && MonoidElem::delta_inv(&f, &self.table).is_ok_and(|b| &b == a)
        });
        outcome("round-trip", exhaustive, result, "Δ⁻¹(Δ(a)) = a through the polynomial form")
    }

    /// Every self-map of the field, when there are at most `bound` of them.
    fn all_tables(&self) -> Option<Vec<FuncTable>> {
        let n = self.ctx.order();
        if !n.checked_pow(n as u32).is_some_and(|all| all <= self.opts.bound) {
            return None;
        }
        let mut out = Vec::new();
        let mut digits = vec![0u32; n as usize];
        loop {
            out.push(FuncTable::new(digits.clone()));
            let Some(i) = digits.iter().position(|&d| (d as u64) < n - 1) else { break };
            digits[i] += 1;
            digits[..i].iter_mut().for_each(|d| *d = 0);
        }
        Some(out)
    }

    /// `count` tables, half drawn from `Δ(T)` so both answers are exercised.
    fn sample_tables(&mut self, count: u64) -> Vec<FuncTable> {
        let n = self.ctx.order() as u32;
        (0..count)
            .map(|i| {
                if i % 2 == 0 {
                    self.random_elem().delta(&self.table).expect("shape")
                } else {
                    FuncTable::from_fn(n as usize, |_| self.rng.gen_range(0..n))
                }
            })
            .collect()
    }

    /// Coefficient test vs Frobenius commutation.
    fn canonicity(&mut self) -> Check {
        let (exhaustive, tables) = match self.all_tables() {
            Some(all) => (true, all),
            None => (false, self.sample_tables(self.opts.samples)),
        };
        let result = count_failures(tables.iter(), |f| {
            is_canonical(self.ctx, &interpolate(self.ctx, f)) == commutes_with_frobenius(self.ctx, f)
        });
        outcome("canonicity", exhaustive, result, "c^q = c for all coefficients iff f∘φ_q = φ_q∘f")
    }

    fn preservation(&mut self) -> Check {
        let (exhaustive, tables) = match self.all_tables() {
            Some(all) => (true, all),
            // the literal test is O(n · d(m)^2) per table, so cap the samples
            None => (false, self.sample_tables(self.opts.samples.min(2_000))),
        };
        let result = count_failures(tables.iter(), |f| {
            is_subfield_preserving(&self.table, f) == is_subfield_preserving_literal(self.ctx, f)
        });
        outcome("preservation", exhaustive, result, "stratum test agrees with the literal subfield test")
    }

    fn unit_law(&mut self) -> Check {
        let (exhaustive, elems) = self.elements(false);
        let id = MonoidElem::identity(&self.shape);
        let result = count_failures(elems.iter(), |a| match a.invert() {
            Ok(inv) => {
                a.compose(&inv).is_ok_and(|x| x == id)
                    && inv.compose(a).is_ok_and(|x| x == id)
                    && a.delta(&self.table).is_ok_and(|f| f.is_injective())
            }
            Err(_) => !a.is_invertible() && a.delta(&self.table).is_ok_and(|f| !f.is_injective()),
        });
        outcome("unit-law", exhaustive, result, "units invert two-sided, non-units give non-injective maps")
    }

    fn factorization(&mut self) -> Check {
        let (exhaustive, units) = self.elements(true);
        let base = self.table.stratum(1).expect("k = 1 always present").elements().to_vec();
        let result = count_failures(units.iter(), |u| {
            let Ok((s, h)) = u.factor_unit(&self.table) else { return false };
            let Ok(hf) = h.delta(&self.table) else { return false };
            let fixes_outside = (0..s.len() as u32).all(|x| base.contains(&x) || s.apply(x) == x);
            let fixes_base = base.iter().all(|&x| hf.apply(x) == x);
            h.is_invertible()
                && s.is_injective()
                && fixes_outside
                && fixes_base
                && u.delta(&self.table).is_ok_and(|f| f == s.compose(&hf))
        });
        outcome("factorization", exhaustive, result, "u = s∘Δ(h) with s on F_q and h fixing F_q")
    }
}
