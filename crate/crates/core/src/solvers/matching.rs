//! Minimum-cost rectangular assignment with forbidden entries.

use crate::scalar::Scalar;

/// Cost of the cheapest matching that gives every row a distinct column, or
/// `None` when no such matching exists. `cost(r, c)` returns `None` for a
/// forbidden pair. Requires `rows <= cols`.
///
/// Shortest-augmenting-path Hungarian method with potentials, O(rows² · cols).
pub(crate) fn min_cost_assignment<T: Scalar>(
    rows: usize,
    cols: usize,
    cost: impl Fn(usize, usize) -> Option<T>,
) -> Option<T> {
    if rows == 0 {
        return Some(T::zero());
    }
    if rows > cols {
        return None;
    }
    // 1-based with index 0 as the virtual root, following the classic layout.
    let mut u = vec![T::zero(); rows + 1];
    let mut v = vec![T::zero(); cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    let mut min_slack: Vec<Option<T>> = vec![None; cols + 1];
    let mut used = vec![false; cols + 1];

    for row in 1..=rows {
        owner[0] = row;
        let mut col0 = 0usize;
        min_slack.iter_mut().for_each(|m| *m = None);
        used.iter_mut().for_each(|x| *x = false);
        loop {
            used[col0] = true;
            let r0 = owner[col0];
            let mut delta: Option<T> = None;
            let mut col1 = 0usize;
            for col in 1..=cols {
                if used[col] {
                    continue;
                }
                if let Some(c) = cost(r0 - 1, col - 1) {
                    let reduced = c - u[r0] - v[col];
                    if min_slack[col].is_none_or(|m| reduced < m) {
                        min_slack[col] = Some(reduced);
                        way[col] = col0;
                    }
                }
                if let Some(m) = min_slack[col] {
                    if delta.is_none_or(|d| m < d) {
                        delta = Some(m);
                        col1 = col;
                    }
                }
            }
            let delta = delta?;
            for col in 0..=cols {
                if used[col] {
                    u[owner[col]] = u[owner[col]] + delta;
                    v[col] = v[col] - delta;
                } else if let Some(m) = min_slack[col] {
                    min_slack[col] = Some(m - delta);
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    Some(T::zero() - v[0])
}
