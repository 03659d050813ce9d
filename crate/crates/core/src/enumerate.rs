//! Exhaustive enumeration of small labelled semigroups.

use crate::semigroup::{FiniteSemigroup, SemigroupError};

/// Largest order accepted by [`all_semigroups`]; order 4 already has 4^16
/// candidate tables.
pub const MAX_ENUMERATION_ORDER: usize = 3;

/// Every associative table on `{a, b, c, ...}` of the given order, in
/// lexicographic order of the flattened table.
pub fn all_semigroups(order: usize) -> Vec<FiniteSemigroup> {
    assert!((1..=MAX_ENUMERATION_ORDER).contains(&order), "order must be 1..={MAX_ENUMERATION_ORDER}");
    let names: Vec<String> = (0..order).map(|i| char::from(b'a' + i as u8).to_string()).collect();
    let cells = order * order;
    let candidates = order.pow(cells as u32);
    let mut out = Vec::new();
    for mut code in 0..candidates {
        let mut flat = vec![0; cells];
        for slot in flat.iter_mut().rev() {
            *slot = code % order;
            code /= order;
        }
        let rows = flat.chunks(order).map(<[usize]>::to_vec).collect();
        match FiniteSemigroup::from_indices(names.clone(), rows) {
            Ok(s) => out.push(s),
            Err(SemigroupError::NotAssociative { .. }) => {}
            Err(e) => unreachable!("enumerated table is well formed: {e}"),
        }
    }
    out
}

/// Every semigroup of order `1..=max_order`.
pub fn all_semigroups_up_to(max_order: usize) -> Vec<FiniteSemigroup> {
    (1..=max_order).flat_map(all_semigroups).collect()
}
