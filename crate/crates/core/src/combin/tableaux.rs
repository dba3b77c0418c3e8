use super::{prime, MultiIndex, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Position of a value in the order `m < m' < m-1 < (m-1)' < ... < 1 < 1'`.
fn key(m: usize, v: usize) -> usize {
    if v <= m {
        2 * (m - v)
    } else {
        2 * (m - prime(m, v)) + 1
    }
}

/// The unprimed letter `b` with `v` in `{b, b'}`.
fn base(m: usize, v: usize) -> usize {
    if v <= m {
        v
    } else {
        prime(m, v)
    }
}

/// Cells of `lambda` in column-major reading order, as `(row, col)` from 0.
pub fn column_cells(lambda: &Partition) -> Vec<(usize, usize)> {
    let t = lambda.transpose();
    t.parts()
        .iter()
        .enumerate()
        .flat_map(|(c, &h)| (0..h).map(move |r| (r, c)))
        .collect()
}

/// Fillings of `lambda` by `1..=2m` that weakly increase along rows and strictly
/// increase down columns in the symplectic order, with `b` and `b'` confined
/// to the first `m - b + 1` rows. Each filling is read column by column.
pub fn mys_tableaux(lambda: &Partition, m: usize) -> Vec<MultiIndex> {
    let cells = column_cells(lambda);
    let rows = lambda.len();
    let width = lambda.parts().first().copied().unwrap_or(0);
    let mut grid = vec![vec![0usize; width]; rows];
    let mut out = Vec::new();
    // Candidate values sorted by key so the output is in a fixed order.
    let mut vals: Vec<usize> = (1..=2 * m).collect();
    vals.sort_by_key(|&v| key(m, v));
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        vals: &[usize],
        m: usize,
        out: &mut Vec<MultiIndex>,
    ) {
        if k == cells.len() {
            let e = cells.iter().map(|&(r, c)| grid[r][c]).collect();
            out.push(MultiIndex::new(m, e).expect("entries in range"));
            return;
        }
        let (r, c) = cells[k];
        for &v in vals {
            if r + 1 > m + 1 - base(m, v) {
                continue;
            }
            if c > 0 && key(m, grid[r][c - 1]) > key(m, v) {
                continue;
            }
            if r > 0 && key(m, grid[r - 1][c]) >= key(m, v) {
                continue;
            }
            grid[r][c] = v;
            go(k + 1, cells, grid, vals, m, out);
        }
        grid[r][c] = 0;
    }
    go(0, &cells, &mut grid, &vals, m, &mut out);
    out
}

/// Row `j` filled with `j`, read column by column.
pub fn i_lambda(lambda: &Partition, m: usize) -> MultiIndex {
    let e = column_cells(lambda).iter().map(|&(r, _)| r + 1).collect();
    MultiIndex::new(m, e).expect("length of lambda exceeds m")
}

/// `i_lambda` with every column reversed.
pub fn hat_i_lambda(lambda: &Partition, m: usize) -> MultiIndex {
    let t = lambda.transpose();
    let e = t.parts().iter().flat_map(|&h| (1..=h).rev()).collect();
    MultiIndex::new(m, e).expect("length of lambda exceeds m")
}

/// Dimension of the simple `sp_{2m}` module of highest weight `lambda` (Weyl's formula).
pub fn weyl_dim_sp(lambda: &Partition, m: usize) -> u128 {
    assert!(lambda.len() <= m, "{lambda} has more than {m} parts");
    let lam: Vec<i64> = (0..m).map(|i| *lambda.parts().get(i).unwrap_or(&0) as i64).collect();
    let rho: Vec<i64> = (0..m).map(|i| (m - i) as i64).collect();
    let l: Vec<i64> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..m {
        num *= l[i];
        den *= rho[i];
        for j in i + 1..m {
            num *= (l[i] - l[j]) * (l[i] + l[j]);
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
        }
    }
    let v = BigRational::new(num, den);
    assert!(v.is_integer());
    v.to_integer().to_u128().expect("dimension fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::{lambda_n, partitions_bounded};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_counts() {
        let two = mys_tableaux(&p(&[2]), 1);
        let txt: Vec<String> = two.iter().map(|i| i.to_string()).collect();
        assert_eq!(txt, vec!["1 1", "1 1'", "1' 1'"]);
        assert_eq!(mys_tableaux(&p(&[1, 1]), 1).len(), 0);
        assert_eq!(mys_tableaux(&p(&[1, 1]), 2).len(), 5);
        assert_eq!(mys_tableaux(&p(&[2]), 2).len(), 10);
        assert_eq!(mys_tableaux(&Partition::empty(), 3).len(), 1);
    }

    #[test]
    fn counts_equal_weyl_dimension() {
        for m in 1..=3 {
            for k in 0..=4 {
                for l in partitions_bounded(k, m) {
                    assert_eq!(mys_tableaux(&l, m).len() as u128, weyl_dim_sp(&l, m), "{l} m={m}");
                }
            }
        }
    }

    #[test]
    fn lambda_n_totals() {
        let total = |m, n| -> usize {
            lambda_n(m, n).iter().map(|(l, _)| mys_tableaux(l, m).len().pow(2)).sum()
        };
        assert_eq!(total(1, 2), 10);
        assert_eq!(total(1, 3), 20);
        assert_eq!(total(2, 2), 126);
    }

    #[test]
    fn weyl_examples() {
        for m in 1..=4 {
            assert_eq!(weyl_dim_sp(&p(&[1]), m), 2 * m as u128);
        }
        assert_eq!(weyl_dim_sp(&p(&[1, 1]), 2), 5);
        assert_eq!(weyl_dim_sp(&p(&[2]), 2), 10);
        assert_eq!(weyl_dim_sp(&Partition::empty(), 2), 1);
    }

    #[test]
    fn exterior_square_oracle() {
        // Lambda^2(C^{2m}) = Delta(1,1) + trivial.
        for m in 2..=4usize {
            let ext = (2 * m) * (2 * m - 1) / 2;
            assert_eq!(weyl_dim_sp(&p(&[1, 1]), m) as usize, ext - 1);
        }
    }

    #[test]
    fn highest_fillings() {
        assert_eq!(i_lambda(&p(&[2, 1]), 2).entries(), &[1, 2, 1]);
        assert_eq!(hat_i_lambda(&p(&[2, 1]), 2).entries(), &[2, 1, 1]);
        let h = hat_i_lambda(&p(&[3, 3, 2, 1]), 4);
        assert_eq!(h.entries(), &[4, 3, 2, 1, 3, 2, 1, 2, 1]);
    }

    #[test]
    fn hat_filling_is_admissible() {
        for m in 1..=3 {
            for k in 0..=6 {
                for l in partitions_bounded(k, m) {
                    let h = hat_i_lambda(&l, m);
                    assert!(mys_tableaux(&l, m).contains(&h), "{l} m={m}");
                }
            }
        }
    }
}
