//! Gaussian elimination over `Q` or `F_p`.

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Field;

pub type Row = Vec<BigRational>;

/// Reduced row echelon form of `rows` (each of length `ncols`), with the
/// pivot column of every nonzero row.
pub fn rref(field: &Field, mut rows: Vec<Row>, ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = field.normalize(&*v * &inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &k * &rows[r][j];
                    rows[i][j] = field.normalize(&rows[i][j] - d);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(field: &Field, rows: Vec<Row>, ncols: usize) -> usize {
    rref(field, rows, ncols).1.len()
}

/// A basis of `{v : rows · v = 0}`.
pub fn nullspace(field: &Field, rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let (rows, pivots) = rref(field, rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = field.from_int(1);
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = field.normalize(-row[f].clone());
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let f = Field::Rational;
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&f, m.clone(), 3), 2);
        let k = nullspace(&f, m.clone(), 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot: BigRational = row.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn prime_field_rank() {
        // [[1, 1], [1, 3]] is singular mod 2 only
        let m = q(&[&[1, 1], &[1, 3]]);
        assert_eq!(rank(&Field::Rational, m.clone(), 2), 2);
        let f2 = Field::prime(2).unwrap();
        let m2: Vec<Row> = m
            .into_iter()
            .map(|r| r.into_iter().map(|c| f2.normalize(c)).collect())
            .collect();
        assert_eq!(rank(&f2, m2, 2), 1);
    }
}
