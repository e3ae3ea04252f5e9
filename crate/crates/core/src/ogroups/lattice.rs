//! Integer lattices: Hermite and Smith normal forms with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{QMatrix, Rational};

pub type ZMat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Converts an integral rational matrix; panics on a non-integral entry.
pub fn from_qmatrix(m: &QMatrix) -> ZMat {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| {
                    assert!(x.is_integer(), "non-integral entry in integer matrix");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

pub fn to_qmatrix(m: &ZMat, cols: usize) -> QMatrix {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    QMatrix::from_rows(rows, cols).expect("integer matrix shape")
}

pub fn transpose(m: &ZMat, cols: usize) -> ZMat {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn row_axpy(m: &mut ZMat, target: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (t, x) in m[target].iter_mut().zip(s) {
        *t -= k * x;
    }
}

fn col_axpy(m: &mut ZMat, target: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let x = row[src].clone();
        row[target] -= k * x;
    }
}

fn swap_cols(m: &mut ZMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub struct Hermite {
    /// Row-style reduced echelon form; zero rows last.
    pub h: ZMat,
    /// Unimodular with `t * a = h`.
    pub t: ZMat,
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form: positive pivots, entries above a pivot reduced into `[0, pivot)`.
pub fn hermite_rows(a: &ZMat, cols: usize) -> Hermite {
    let m = a.len();
    let mut h = a.clone();
    let mut t = identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(p) = best else { break };
            h.swap(p, r);
            t.swap(p, r);
            let mut clean = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let k = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &k);
                row_axpy(&mut t, i, r, &k);
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(t[r].iter_mut()) {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let k = h[i][c].div_floor(&h[r][c]);
            row_axpy(&mut h, i, r, &k);
            row_axpy(&mut t, i, r, &k);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, t, pivots }
}

pub struct Smith {
    /// Diagonal, `d[i][i] | d[i+1][i+1]`, nonnegative.
    pub d: ZMat,
    /// Unimodular, `u * a * v = d`.
    pub u: ZMat,
    pub v: ZMat,
    pub rank: usize,
}

pub fn smith(a: &ZMat, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { d, u, v, rank };
            };
            d.swap(pi, t);
            u.swap(pi, t);
            swap_cols(&mut d, pj, t);
            swap_cols(&mut v, pj, t);
            let mut clean = true;
            for i in t + 1..m {
                let k = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &k);
                row_axpy(&mut u, i, t, &k);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                let k = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &k);
                col_axpy(&mut v, j, t, &k);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, &BigInt::from(-1));
                    row_axpy(&mut u, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -x.clone();
            }
        }
        rank = t + 1;
    }
    Smith { d, u, v, rank }
}

/// Basis (as vectors) of the integer kernel `{x in Z^cols : a x = 0}`.
pub fn integer_kernel(a: &ZMat, cols: usize) -> Vec<Vec<BigInt>> {
    let at = transpose(a, cols);
    let herm = hermite_rows(&at, a.len());
    let r = herm.pivots.len();
    herm.t[r..].to_vec()
}

/// Hermite basis (rows) of the lattice spanned by the given vectors.
pub fn lattice_basis(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let herm = hermite_rows(&gens.to_vec(), dim);
    herm.h[..herm.pivots.len()].to_vec()
}

/// Membership of `x` in the lattice spanned by `gens`, by reduction against the Hermite basis.
pub fn lattice_contains(gens: &[Vec<BigInt>], dim: usize, x: &[BigInt]) -> bool {
    let herm = hermite_rows(&gens.to_vec(), dim);
    let mut rest = x.to_vec();
    for (i, &p) in herm.pivots.iter().enumerate() {
        let (k, rem) = rest[p].div_rem(&herm.h[i][p]);
        if !rem.is_zero() {
            return false;
        }
        for (r, h) in rest.iter_mut().zip(&herm.h[i]) {
            *r -= &k * h;
        }
    }
    rest.iter().all(Zero::is_zero)
}

pub fn mat_mul(a: &ZMat, b: &ZMat, b_cols: usize) -> ZMat {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMat {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_transform_is_consistent() {
        let a = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let h = hermite_rows(&a, 3);
        assert_eq!(mat_mul(&h.t, &a, 3), h.h);
        for (i, &p) in h.pivots.iter().enumerate() {
            assert!(h.h[i][p].is_positive());
            for k in 0..i {
                assert!(!h.h[k][p].is_negative() && h.h[k][p] < h.h[i][p]);
            }
        }
    }

    #[test]
    fn smith_of_known_matrix() {
        let a = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a, 3);
        let uav = mat_mul(&mat_mul(&s.u, &a, 3), &s.v, 3);
        assert_eq!(uav, s.d);
        let diag: Vec<i64> = (0..3).map(|i| i64::try_from(&s.d[i][i]).unwrap()).collect();
        assert_eq!(diag, vec![2, 6, 12]);
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn kernel_and_membership() {
        let a = z(&[&[1, 1, 0]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1]).is_zero());
        }
        let gens = z(&[&[2, 0], &[0, 3]]);
        assert!(lattice_contains(&gens, 2, &[BigInt::from(4), BigInt::from(-3)]));
        assert!(!lattice_contains(&gens, 2, &[BigInt::from(1), BigInt::from(0)]));
    }
}
