//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Vector = Vec<BigRational>;

pub fn to_rational(v: &[BigInt]) -> Vector {
    v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Row echelon form computed in place. Returns the pivot column of each
/// nonzero row; rows past the pivots are left zero.
fn echelon(rows: &mut Vec<Vector>, reduced: bool) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for c in &mut rows[r][col..] {
            *c *= &inv;
        }
        let pivot_row = rows[r].clone();
        let targets: Vec<usize> = if reduced {
            (0..rows.len()).filter(|&i| i != r).collect()
        } else {
            (r + 1..rows.len()).collect()
        };
        for i in targets {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for (c, pc) in rows[i][col..].iter_mut().zip(&pivot_row[col..]) {
                if !pc.is_zero() {
                    *c -= &f * pc;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m, false).len()
}

/// Basis of `{x : A x = 0}` where `rows` are the rows of `A` over `ncols`
/// unknowns.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let pivots = echelon(&mut m, true);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_span(rows: &[Vector], v: &[BigRational]) -> bool {
    let base = rank(rows);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == base
}

/// A basis of the row space.
pub fn row_space(rows: &[Vector]) -> Vec<Vector> {
    let mut m = rows.to_vec();
    echelon(&mut m, true);
    m
}

/// A basis of the intersection of two row spaces in the same ambient space.
pub fn intersection(a: &[Vector], b: &[Vector], ncols: usize) -> Vec<Vector> {
    let a = row_space(a);
    let b = row_space(b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum s_i a_i = sum t_k b_k; the columns of the system are the
    // basis vectors of both spaces.
    let unknowns = a.len() + b.len();
    let system: Vec<Vector> = (0..ncols)
        .map(|c| {
            a.iter()
                .map(|r| r[c].clone())
                .chain(b.iter().map(|r| -r[c].clone()))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for sol in nullspace(&system, unknowns) {
        let mut v = vec![BigRational::zero(); ncols];
        for (s, r) in sol.iter().take(a.len()).zip(&a) {
            if s.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(r) {
                *x += s * y;
            }
        }
        out.push(v);
    }
    row_space(&out)
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let negative = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    let g = if negative { -g } else { g };
    for c in &mut ints {
        *c = &*c / &g;
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vector {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])];
        assert_eq!(rank(&a), 2);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: BigRational = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(
            clear_denominators(&k[0]),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]
        );
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn spans_and_intersections() {
        let a = vec![q(&[1, 0, 0]), q(&[0, 1, 0])];
        let b = vec![q(&[1, 1, 0]), q(&[0, 0, 1])];
        assert!(in_span(&a, &q(&[3, -2, 0])));
        assert!(!in_span(&a, &q(&[0, 0, 1])));
        let i = intersection(&a, &b, 3);
        assert_eq!(i.len(), 1);
        assert!(in_span(&i, &q(&[2, 2, 0])));
        assert!(intersection(&a, &[], 3).is_empty());
    }
}
