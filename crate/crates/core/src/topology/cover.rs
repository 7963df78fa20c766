use itertools::Itertools;

use super::NormSelection;
use crate::error::{Error, Result};
use crate::quotient::{class_collection, IndexSet};

/// Largest `n` accepted by the exhaustive searches.
pub const COVER_SEARCH_LIMIT: usize = 7;

/// Whether the union of the selected subsets is all of `{1, …, n}`.
pub fn covering_check(selection: &NormSelection) -> bool {
    let mut seen = vec![false; selection.n()];
    for s in selection.subsets() {
        for &i in s.indices() {
            seen[i - 1] = true;
        }
    }
    seen.into_iter().all(|b| b)
}

/// `⌈n/m⌉`, the fewest size-m subsets whose union is `{1, …, n}`.
pub fn minimal_cover_size(n: usize, m: usize) -> Result<usize> {
    if m == 0 || m > n {
        return Err(Error::ClassOutOfRange { n, m });
    }
    Ok(n.div_ceil(m))
}

fn guard(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::ClassOutOfRange { n, m });
    }
    if n > COVER_SEARCH_LIMIT {
        return Err(Error::SizeGuard {
            n,
            limit: COVER_SEARCH_LIMIT,
        });
    }
    Ok(())
}

/// Smallest family size that covers, found by trying every family of each
/// size in turn.
pub fn search_min_cover_size(n: usize, m: usize) -> Result<usize> {
    guard(n, m)?;
    let masks: Vec<u64> = class_collection(n, m)?
        .members
        .iter()
        .filter_map(IndexSet::mask)
        .collect();
    let full = (1u64 << n) - 1;
    for size in 1..=masks.len() {
        if masks
            .iter()
            .combinations(size)
            .any(|fam| fam.into_iter().fold(0, |acc, m| acc | m) == full)
        {
            return Ok(size);
        }
    }
    unreachable!("the whole class-m collection covers")
}

/// Every covering family of exactly `⌈n/m⌉` subsets, each listed once with
/// its members in lexicographic order.
pub fn enumerate_minimal_covers(n: usize, m: usize) -> Result<Vec<NormSelection>> {
    guard(n, m)?;
    let size = minimal_cover_size(n, m)?;
    let members = class_collection(n, m)?.members;
    let full = (1u64 << n) - 1;
    Ok(members
        .into_iter()
        .combinations(size)
        .filter(|fam| {
            fam.iter()
                .filter_map(IndexSet::mask)
                .fold(0, |acc, b| acc | b)
                == full
        })
        .map(|fam| NormSelection::new(n, fam).expect("members of one class collection"))
        .collect())
}
