//! Exact rank of integer matrices.

use std::collections::BTreeMap;

use num_integer::Integer;

/// Rank over ℚ, by fraction-free elimination on sparse rows kept primitive.
///
/// Panics on `i128` overflow rather than returning a wrong rank.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    rank_sparse(rows.iter().map(|r| r.iter().enumerate().map(|(j, &x)| (j, x)).collect()))
}

/// [`rank`] for rows given as `(column, value)` entries; repeated columns add up.
pub fn rank_sparse(rows: impl IntoIterator<Item = Vec<(usize, i64)>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, i128>> = BTreeMap::new();
    for r in rows {
        let mut row: BTreeMap<usize, i128> = BTreeMap::new();
        for (j, x) in r {
            *row.entry(j).or_insert(0) += x as i128;
        }
        row.retain(|_, x| *x != 0);
        while let Some((&lead, &f)) = row.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let g = p[&lead].gcd(&f);
            let (mp, mf) = (p[&lead] / g, f / g);
            for x in row.values_mut() {
                *x = x.checked_mul(mp).expect("overflow in exact elimination");
            }
            for (&j, &y) in p {
                let e = row.entry(j).or_insert(0);
                *e = y.checked_mul(mf).and_then(|y| e.checked_sub(y)).expect("overflow in exact elimination");
            }
            row.retain(|_, x| *x != 0);
            let g = row.values().fold(0i128, |acc, x| acc.gcd(x));
            if g > 1 {
                row.values_mut().for_each(|x| *x /= g);
            }
        }
    }
    pivots.len()
}

/// Dimension of the solution space of `rows · x = 0` in `unknowns` variables.
pub fn nullity(rows: &[Vec<i64>], unknowns: usize) -> usize {
    unknowns - rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2], vec![3, 4]]), 2);
        assert_eq!(rank(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(nullity(&[vec![1, -1, 0], vec![0, 1, -1]], 3), 1);
    }

    #[test]
    fn rank_is_not_reduced_mod_two() {
        // singular mod 2, regular over ℚ
        assert_eq!(rank(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), 3);
    }
}
