//! Exact rational linear algebra used by the polytope and topology layers.
//!
//! Everything here works over `BigRational`; there is no floating point in
//! any hull or face computation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn dot(x: &[Rat], y: &[Rat]) -> Rat {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn dot_int(x: &[Rat], y: &[i64]) -> Rat {
    x.iter().zip(y).map(|(a, &b)| a * rat(b)).sum()
}

pub fn sub(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn int_to_rat(x: &[i64]) -> Vec<Rat> {
    x.iter().map(|&v| rat(v)).collect()
}

pub fn norm2_sq(x: &[Rat]) -> Rat {
    x.iter().map(|a| a * a).sum()
}

/// Reduce a rational direction to a primitive integer vector (gcd 1),
/// preserving orientation.
pub fn primitive_integer_direction(v: &[Rat]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::gcd(g, x.abs());
    }
    if g.is_zero() {
        return vec![0; v.len()];
    }
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("direction exceeds i64"))
        .collect()
}

/// Row-reduce `m` in place; returns the rank and pivot column indices.
pub fn row_reduce(m: &mut [Vec<Rat>]) -> (usize, Vec<usize>) {
    let rows = m.len();
    if rows == 0 {
        return (0, vec![]);
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, pivots)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    row_reduce(&mut m).0
}

/// Basis of the nullspace `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let (_, pivots) = row_reduce(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve the square system `a x = b` if uniquely solvable.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (rank, pivots) = row_reduce(&mut m);
    if rank < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_direction_reduces() {
        let v = vec![rat_frac(2, 3), rat_frac(-4, 3)];
        assert_eq!(primitive_integer_direction(&v), vec![1, -2]);
        assert_eq!(primitive_integer_direction(&[rat(0), rat(0)]), vec![0, 0]);
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_square_system() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let b = vec![rat(5), rat(10)];
        let x = solve_square(&a, &b).unwrap();
        assert_eq!(x, vec![rat(1), rat(3)]);
    }
}
