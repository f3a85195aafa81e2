use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solves `a · x = b` exactly by Gauss–Jordan elimination. Returns `None`
/// when `a` is singular.
#[allow(clippy::needless_range_loop)]
pub fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = BigRational::one() / &a[col][col];
        for v in &mut a[col][col..] {
            *v *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn two_by_two() {
        // 3x - y = 1, -x + 3y = 1  =>  x = y = 1/2
        let a = vec![vec![q(3, 1), q(-1, 1)], vec![q(-1, 1), q(3, 1)]];
        let x = solve(a, vec![q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn needs_row_swap() {
        let a = vec![vec![q(0, 1), q(2, 1)], vec![q(3, 1), q(0, 1)]];
        assert_eq!(solve(a, vec![q(1, 1), q(1, 1)]).unwrap(), vec![q(1, 3), q(1, 2)]);
    }

    #[test]
    fn singular() {
        let a = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(solve(a, vec![q(1, 1), q(1, 1)]).is_none());
    }
}
