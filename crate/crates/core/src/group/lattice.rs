use crate::error::{Error, Result};

/// Returns true iff the integer row vectors generate all of `Z^d`.
///
/// Runs a row-style Hermite reduction: for each column the gcd of the
/// remaining entries is brought to the pivot row by Euclidean row
/// operations. The rows span `Z^d` exactly when every pivot is ±1.
#[allow(clippy::needless_range_loop)]
pub fn is_unit_lattice(rows: &[Vec<i64>], d: usize) -> Result<bool> {
    if rows.len() < d {
        return Ok(false);
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), d);
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    for col in 0..d {
        loop {
            // smallest nonzero |entry| in this column among rows col..
            let pivot = (col..m.len())
                .filter(|&r| m[r][col] != 0)
                .min_by_key(|&r| m[r][col].unsigned_abs());
            let Some(p) = pivot else {
                return Ok(false);
            };
            m.swap(col, p);
            let mut done = true;
            for r in col + 1..m.len() {
                if m[r][col] == 0 {
                    continue;
                }
                let q = m[r][col] / m[col][col];
                for c in col..d {
                    let sub = q
                        .checked_mul(m[col][c])
                        .and_then(|s| m[r][c].checked_sub(s))
                        .ok_or(Error::Overflow("lattice reduction"))?;
                    m[r][c] = sub;
                }
                if m[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[col][col].abs() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis_spans() {
        assert!(is_unit_lattice(&[vec![1, 0], vec![0, 1]], 2).unwrap());
        assert!(is_unit_lattice(&[vec![2, 1], vec![1, 1]], 2).unwrap());
    }

    #[test]
    fn index_two_sublattice_fails() {
        assert!(!is_unit_lattice(&[vec![2, 0], vec![0, 1]], 2).unwrap());
        assert!(!is_unit_lattice(&[vec![1, 1], vec![1, -1]], 2).unwrap());
    }

    #[test]
    fn redundant_rows() {
        assert!(is_unit_lattice(&[vec![2, 0], vec![3, 0], vec![0, 5], vec![0, 7]], 2).unwrap());
        assert!(!is_unit_lattice(&[vec![2, 0], vec![4, 0], vec![0, 1]], 2).unwrap());
        assert!(!is_unit_lattice(&[vec![1, 0]], 2).unwrap());
    }
}
