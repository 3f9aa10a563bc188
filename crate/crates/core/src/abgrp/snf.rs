//! Smith normal form over the integers.
//!
//! Pivoting always picks the nonzero entry of smallest absolute value in the
//! active submatrix, ties broken by lowest `(row, col)`, so the output is a
//! deterministic function of the input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal with
/// `d_1 | d_2 | ... | d_rank`, all positive; `u_inv`, `v_inv` are the exact
/// inverses, tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_row_multiple(target, source, c);
        self.u.add_row_multiple(target, source, c);
        self.u_inv.add_col_multiple(source, target, &-c);
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_col_multiple(target, source, c);
        self.v.add_col_multiple(target, source, c);
        self.v_inv.add_row_multiple(source, target, &-c);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                    best = Some((i, j, abs));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        if r.pivot(t).is_none() {
            break;
        }
        loop {
            let (pi, pj) = r.pivot(t).expect("active submatrix is nonzero");
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let p = r.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if r.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &r.a[(i, t)] / &p;
                r.add_row(i, t, &-q);
                clean &= r.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if r.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &r.a[(t, j)] / &p;
                r.add_col(j, t, &-q);
                clean &= r.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&r.a[(i, j)] % &p).is_zero())
            });
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        rank = t + 1;
    }
    SmithForm {
        s: r.a,
        u: r.u,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(&(&f.u * m) * &f.v, f.s);
        assert!((&f.u * &f.u_inv).is_identity());
        assert!((&f.v * &f.v_inv).is_identity());
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j || i >= f.rank {
                    assert!(f.s[(i, j)].is_zero());
                }
            }
        }
        let d = f.divisors();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        f
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4)
        let f = check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(f.divisors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let f = check(&IntMatrix::identity(3));
        assert!(f.s.is_identity());
        assert!(f.u.is_identity() && f.v.is_identity());
    }

    #[test]
    fn zero_and_empty() {
        let f = check(&IntMatrix::zeros(1, 1));
        assert_eq!(f.s, IntMatrix::zeros(1, 1));
        assert_eq!(f.rank, 0);
        let e = check(&IntMatrix::zeros(0, 3));
        assert_eq!(e.rank, 0);
        assert_eq!(e.v, IntMatrix::identity(3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) needs the row-combination step to become diag(1, 6)
        let f = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(f.divisors(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
