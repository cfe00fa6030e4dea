//! Rayon fan-out of the exhaustive canonical-polynomial search.
//!
//! The digit space is split by coefficient prefix; partial results are
//! gathered in prefix order, so totals and member lists are deterministic.

use rayon::prelude::*;
use subfield_core::census::CanonicalSearch;
use subfield_core::{BruteForceCounts, FieldCtx, FuncTable, Result};

/// Prefix length giving at least `4 * threads` independent jobs.
fn split_depth(search: &CanonicalSearch, n: usize) -> usize {
    let q = search.base().len().max(2);
    let target = 4 * rayon::current_num_threads().max(1);
    let mut depth = 0;
    let mut jobs = 1;
    while jobs < target && depth < n {
        jobs *= q;
        depth += 1;
    }
    depth
}

pub fn brute_force_census_par(ctx: &FieldCtx, bound: u64) -> Result<BruteForceCounts> {
    let search = CanonicalSearch::new(ctx, bound)?;
    let prefixes = search.prefixes(split_depth(&search, ctx.order() as usize));
    let parts: Vec<BruteForceCounts> = prefixes.par_iter().map(|p| search.count(p)).collect();
    Ok(parts.into_iter().fold(BruteForceCounts::default(), |a, b| a + b))
}

/// Value tables of every member of `T_q^m`, in candidate order.
pub fn brute_force_member_tables_par(ctx: &FieldCtx, bound: u64) -> Result<Vec<FuncTable>> {
    let search = CanonicalSearch::new(ctx, bound)?;
    let prefixes = search.prefixes(split_depth(&search, ctx.order() as usize));
    let parts: Vec<Vec<FuncTable>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut found = Vec::new();
            search.visit(prefix, |_, values| {
                if search.preserves_strata(values) {
                    found.push(FuncTable::new(values.to_vec()));
                }
            });
            found
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}
