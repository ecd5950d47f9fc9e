use super::field::FieldSpec;
use super::matrix::Matrix;
use crate::error::{KronError, Result};

/// Every subspace of `F_p^n`, each given by an `n × k` basis matrix whose
/// transpose is in reduced row echelon form. Ordered by dimension, then pivot
/// set, then free entries. Fails with `Overflow(limit)` once more than `limit`
/// subspaces would be produced.
pub fn all_subspaces(field: FieldSpec, n: usize, limit: usize) -> Result<Vec<Matrix>> {
    let elems = field.elements().ok_or(KronError::FieldNotFinite)?;
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free positions: (row i of the echelon form, column j > pivot_i, j not a pivot)
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    (pivots[i] + 1..n).filter(move |j| !pv.contains(j)).map(move |j| (i, j))
                })
                .collect();
            let mut digits = vec![0usize; free.len()];
            loop {
                let mut m = Matrix::zeros(field, n, k);
                for (i, &p) in pivots.iter().enumerate() {
                    m.set(p, i, field.one());
                }
                for (idx, &(i, j)) in free.iter().enumerate() {
                    m.set(j, i, elems[digits[idx]].clone());
                }
                out.push(m);
                if out.len() > limit {
                    return Err(KronError::Overflow(limit));
                }
                // odometer increment
                let mut pos = 0;
                while pos < digits.len() {
                    digits[pos] += 1;
                    if digits[pos] < elems.len() {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                if pos == digits.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_gaussian_binomials() {
        let f2 = FieldSpec::PrimeField(2);
        // 1 + 7 + 7 + 1 subspaces of F_2^3
        assert_eq!(all_subspaces(f2, 3, 100).unwrap().len(), 16);
        // 1 + 4 + 1 subspaces of F_3^2
        assert_eq!(all_subspaces(FieldSpec::PrimeField(3), 2, 100).unwrap().len(), 6);
        assert_eq!(all_subspaces(f2, 0, 10).unwrap().len(), 1);
        assert_eq!(all_subspaces(f2, 3, 5), Err(KronError::Overflow(5)));
        assert!(all_subspaces(FieldSpec::Rationals, 1, 5).is_err());
    }

    #[test]
    fn subspaces_are_distinct() {
        let f2 = FieldSpec::PrimeField(2);
        let subs = all_subspaces(f2, 4, 1000).unwrap();
        for (i, s) in subs.iter().enumerate() {
            assert_eq!(s.rank(), s.cols());
            for t in &subs[i + 1..] {
                assert!(!(s.cols() == t.cols() && s.spans(t)));
            }
        }
    }
}
