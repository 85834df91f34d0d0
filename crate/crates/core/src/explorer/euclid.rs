use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::Element;
use crate::nielsen::{MoveWord, NielsenMove, Sign, Tuple};

/// Move word carrying a gcd-1 integer tuple to `(1, 0, ..., 0)`.
///
/// Division-style Euclid: the entry of least nonzero absolute value
/// reduces every other entry to its remainder, until a single `±1` is left,
/// which is then moved to the first slot and made positive. The word length
/// is the sum of the quotients plus at most three.
pub fn euclid_reduce(t: &Tuple) -> Result<MoveWord> {
    let mut xs: Vec<i64> = t
        .entries
        .iter()
        .map(|e| match e {
            Element::Int(x) => Ok(*x),
            _ => Err(Error::usage("euclid_reduce needs an integer tuple")),
        })
        .collect::<Result<_>>()?;
    if xs.is_empty() {
        return Err(Error::usage("tuple length must be at least 1"));
    }
    let g = xs.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g != 1 {
        return Err(Error::usage(format!("tuple {t} has gcd {g}, not 1")));
    }

    let mut word = MoveWord::empty();
    loop {
        let nonzero: Vec<usize> = (0..xs.len()).filter(|&i| xs[i] != 0).collect();
        if nonzero.len() == 1 {
            let p = nonzero[0];
            if p != 0 {
                // x_0 = 0: copy x_p into slot 0 and clear slot p
                word.push(NielsenMove::R { i: 0, j: p, sign: Sign::Plus });
                word.push(NielsenMove::R { i: p, j: 0, sign: Sign::Minus });
                xs[0] = xs[p];
                xs[p] = 0;
            }
            if xs[0] == -1 {
                word.push(NielsenMove::I { j: 0 });
                xs[0] = 1;
            }
            return Ok(word);
        }
        let p = *nonzero.iter().min_by_key(|&&i| (xs[i].unsigned_abs(), i)).unwrap();
        for &i in &nonzero {
            if i == p {
                continue;
            }
            let q = xs[i] / xs[p];
            let sign = if q > 0 { Sign::Minus } else { Sign::Plus };
            for _ in 0..q.unsigned_abs() {
                word.push(NielsenMove::R { i, j: p, sign });
            }
            xs[i] -= q * xs[p];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, GroupSpec};
    use crate::nielsen::{eval_word, int_tuple};

    fn check(xs: &[i64]) -> MoveWord {
        let z = Group::new(GroupSpec::Integers).unwrap();
        let t = int_tuple(xs);
        let w = euclid_reduce(&t).unwrap();
        let mut target = vec![0; xs.len()];
        target[0] = 1;
        assert_eq!(eval_word(&z, &t, &w).unwrap(), int_tuple(&target), "{xs:?} via {w}");
        w
    }

    #[test]
    fn examples() {
        assert!(check(&[1]).is_empty());
        check(&[2, 3]);
        check(&[6, 10, 15]);
        check(&[-1]);
        check(&[0, -1, 0]);
        check(&[0, 0, 7, 5]);
    }

    #[test]
    fn rejects_non_generating() {
        assert!(matches!(euclid_reduce(&int_tuple(&[2, 4])), Err(Error::Usage(_))));
        assert!(matches!(euclid_reduce(&int_tuple(&[0, 0])), Err(Error::Usage(_))));
    }
}
