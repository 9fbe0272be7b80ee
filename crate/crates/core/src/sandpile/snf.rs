//! Integer Smith normal form with arbitrary-precision entries.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `left * a * right = diag(diagonal)` with `left`, `right` unimodular.
/// Only `left` is tracked; that is all linear solvability needs.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub left: Vec<Vec<BigInt>>,
    pub rows: usize,
    pub cols: usize,
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut left: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let rank_bound = rows.min(cols);
    for t in 0..rank_bound {
        // smallest nonzero entry of the trailing block
        let Some((pi, pj)) = min_entry(&m, t) else { break };
        m.swap(t, pi);
        left.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                sub_row(&mut m, i, t, &q);
                sub_row(&mut left, i, t, &q);
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    left.swap(t, i);
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                for row in m.iter_mut() {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    add_row(&mut m, t, i);
                    add_row(&mut left, t, i);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diagonal = (0..rank_bound).map(|i| m[i][i].clone()).collect();
    SmithForm {
        diagonal,
        left,
        rows,
        cols,
    }
}

fn min_entry(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

// row[i] -= q * row[t]
fn sub_row(m: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let pivot_row = m[t].clone();
    for (x, p) in m[i].iter_mut().zip(pivot_row.iter()) {
        *x -= q * p;
    }
}

// row[t] += row[i]
fn add_row(m: &mut [Vec<BigInt>], t: usize, i: usize) {
    let other = m[i].clone();
    for (x, o) in m[t].iter_mut().zip(other.iter()) {
        *x += o;
    }
}

impl SmithForm {
    /// Whether `a x = b` has an integer solution.
    pub fn solvable(&self, b: &[i64]) -> bool {
        assert_eq!(b.len(), self.rows);
        for (i, row) in self.left.iter().enumerate() {
            let ub: BigInt = row.iter().zip(b).map(|(u, &x)| u * BigInt::from(x)).sum();
            let d = self.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !ub.is_zero() {
                    return false;
                }
            } else if !(&ub % &d).is_zero() {
                return false;
            }
        }
        true
    }

    /// Nontrivial invariant factors (entries other than 1), in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        a.iter()
            .map(|row| {
                (0..b[0].len())
                    .map(|j| row.iter().zip(b).map(|(x, brow)| x * BigInt::from(brow[j])).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_cases() {
        let s = smith_normal_form(&[vec![3]]);
        assert_eq!(s.diagonal, big(&[3]));
        let k4 = vec![vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]];
        let s = smith_normal_form(&k4);
        assert_eq!(s.diagonal, big(&[1, 4, 4]));
        assert_eq!(s.invariant_factors(), big(&[4, 4]));
        let s = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(s.diagonal, big(&[2, 6, 12]));
    }

    #[test]
    fn solvability() {
        let s = smith_normal_form(&[vec![3]]);
        assert!(s.solvable(&[6]));
        assert!(!s.solvable(&[1]));
        let s = smith_normal_form(&[vec![2, 0], vec![0, 0]]);
        assert!(s.solvable(&[4, 0]));
        assert!(!s.solvable(&[4, 1]));
    }

    proptest! {
        #[test]
        fn divisibility_chain_and_left_is_consistent(entries in prop::collection::vec(-6i64..=6, 9)) {
            let a: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
            let s = smith_normal_form(&a);
            let nonzero: Vec<&BigInt> = s.diagonal.iter().filter(|d| !d.is_zero()).collect();
            for w in nonzero.windows(2) {
                prop_assert!((w[1] % w[0]).is_zero());
            }
            for d in &s.diagonal {
                prop_assert!(!d.is_negative());
            }
            // every column of a is in the image, so a x = a e_j is solvable
            for j in 0..3 {
                let col: Vec<i64> = a.iter().map(|r| r[j]).collect();
                prop_assert!(s.solvable(&col));
            }
            let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
            let prod: BigInt = s.diagonal.iter().product();
            prop_assert_eq!(prod, BigInt::from(det.abs()));
            // left * a has the same row lattice as a: left is unimodular
            let la = mat_mul(&s.left, &a);
            let back = smith_normal_form(&la.iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect::<Vec<_>>());
            prop_assert_eq!(back.diagonal, s.diagonal.clone());
        }
    }
}
