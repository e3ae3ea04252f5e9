//! Search for a lexicographic total order on `Z^n` that makes a family of
//! homomorphisms order preserving.
//!
//! Rows of the functional matrix are chosen one at a time. At each step the
//! columns `c_k = M F_s^-1 e_k` of every constraint that are still unresolved
//! must be handled in sequence: the first may be made positive, the later ones
//! must be killed. Candidate rows are small integer combinations of the
//! admissible functionals, tried greedily with bounded backtracking; every
//! result is re-verified with the column-dominance test.

use std::cmp::Reverse;

use num_traits::{Signed, Zero};

use super::group::{OGroup, OGroupHom};
use super::matrix::{primitive_integer, vec_is_zero, QMatrix, Rational};

#[derive(Clone, Debug)]
pub struct OrderConstraint {
    pub source: OGroup,
    /// `n x source.rank()` integer matrix into `Z^n`.
    pub matrix: QMatrix,
}

impl OrderConstraint {
    pub fn new(source: OGroup, matrix: QMatrix) -> Self {
        OrderConstraint { source, matrix }
    }

    pub fn from_hom(h: &OGroupHom) -> Self {
        OrderConstraint { source: h.source().clone(), matrix: h.matrix().clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSearch {
    Found(QMatrix),
    Failure(String),
}

const NODE_BUDGET: usize = 4000;
const BRANCH: usize = 3;

/// First verified order, or a diagnostic.
pub fn order_extension_search(n: usize, constraints: &[OrderConstraint]) -> OrderSearch {
    let mut found = order_extension_candidates(n, constraints, 1);
    match found.pop() {
        Some(f) => OrderSearch::Found(f),
        None => OrderSearch::Failure(diagnose(n, constraints)),
    }
}

/// Up to `limit` distinct verified functional matrices, identity first when it works.
pub fn order_extension_candidates(n: usize, constraints: &[OrderConstraint], limit: usize) -> Vec<QMatrix> {
    let mut out: Vec<QMatrix> = Vec::new();
    if limit == 0 {
        return out;
    }
    let id = QMatrix::identity(n);
    if verify(n, &id, constraints) {
        out.push(id);
        if out.len() >= limit {
            return out;
        }
    }
    let Some(columns) = prepare(constraints) else { return out };
    let mut search = Search { n, columns, budget: NODE_BUDGET, limit, out: &mut out, constraints };
    let ptr = vec![0; search.columns.len()];
    search.dfs(Vec::new(), QMatrix::identity(n), ptr);
    out
}

/// `F` is invertible and each constraint is order preserving into `Lex(F)`.
pub fn verify(n: usize, f: &QMatrix, constraints: &[OrderConstraint]) -> bool {
    let Ok(target) = OGroup::int_lex(f.clone()) else { return false };
    if target.rank() != n {
        return false;
    }
    constraints.iter().all(|c| match OGroupHom::new(c.source.clone(), target.clone(), c.matrix.clone()) {
        Ok(h) => h.is_order_preserving(),
        Err(_) => false,
    })
}

/// Nonzero column prefix of each `M F_s^-1`; `None` if a zero column precedes a nonzero one.
fn prepare(constraints: &[OrderConstraint]) -> Option<Vec<Vec<Vec<Rational>>>> {
    let mut all = Vec::new();
    for c in constraints {
        if c.source.rank() == 0 {
            continue;
        }
        let cm = c.matrix.mul(c.source.inverse_functionals());
        let cols = cm.col_vecs();
        let z = cols.iter().position(|v| vec_is_zero(v)).unwrap_or(cols.len());
        if cols[z..].iter().any(|v| !vec_is_zero(v)) {
            return None;
        }
        all.push(cols[..z].to_vec());
    }
    Some(all)
}

fn diagnose(n: usize, constraints: &[OrderConstraint]) -> String {
    if prepare(constraints).is_none() {
        return "some constraint kills a positive element while keeping a smaller one".into();
    }
    format!("no lexicographic order on Z^{n} found that makes all {} constraints order preserving", constraints.len())
}

struct Search<'a> {
    n: usize,
    columns: Vec<Vec<Vec<Rational>>>,
    budget: usize,
    limit: usize,
    out: &'a mut Vec<QMatrix>,
    constraints: &'a [OrderConstraint],
}

impl Search<'_> {
    fn dfs(&mut self, rows: Vec<Vec<Rational>>, basis: QMatrix, ptr: Vec<usize>) {
        if self.out.len() >= self.limit || self.budget == 0 {
            return;
        }
        self.budget -= 1;
        let i = rows.len();
        if i == self.n {
            let f = QMatrix::from_rows(rows, self.n).expect("square");
            if !self.out.contains(&f) && verify(self.n, &f, self.constraints) {
                self.out.push(f);
            }
            return;
        }
        let d = basis.cols();
        // Coordinates of the live columns in the current basis of the common kernel.
        let mut firsts = Vec::new();
        let mut rest = Vec::new();
        for (c, cols) in self.columns.iter().enumerate() {
            for (k, v) in cols.iter().enumerate().skip(ptr[c]) {
                let Some(z) = basis.solve(v) else { return };
                if k == ptr[c] {
                    firsts.push((c, z));
                } else {
                    rest.push(z);
                }
            }
        }
        let annihilator = if rest.is_empty() {
            QMatrix::identity(d).row_vecs()
        } else {
            QMatrix::from_rows(rest, d).expect("shape").nullspace()
        };
        if annihilator.is_empty() {
            return;
        }
        let cands = candidates(&annihilator, &firsts, d);
        let left = left_inverse(&basis);
        for g in cands.into_iter().take(BRANCH) {
            let f_row = QMatrix::from_rows(vec![g.clone()], d).expect("row").mul(&left);
            let f_row: Vec<Rational> =
                primitive_integer(f_row.row(0)).into_iter().map(Rational::from_integer).collect();
            let mut next_ptr = ptr.clone();
            for (c, z) in &firsts {
                if dot(&g, z).is_positive() {
                    next_ptr[*c] += 1;
                }
            }
            let kernel = QMatrix::from_rows(vec![g], d).expect("row").nullspace();
            let next_basis = if kernel.is_empty() {
                QMatrix::zeros(self.n, 0)
            } else {
                basis.mul(&QMatrix::from_columns(&kernel, d).expect("shape"))
            };
            let mut next_rows = rows.clone();
            next_rows.push(f_row);
            self.dfs(next_rows, next_basis, next_ptr);
            if self.out.len() >= self.limit || self.budget == 0 {
                return;
            }
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Admissible rows: nonnegative on every leading column, ranked by how many they make positive.
fn candidates(annihilator: &[Vec<Rational>], firsts: &[(usize, Vec<Rational>)], d: usize) -> Vec<Vec<Rational>> {
    let k = annihilator.len();
    let bound: i64 = if k <= 4 { 2 } else { 1 };
    let mut scored: Vec<(usize, i64, Vec<i64>, Vec<Rational>)> = Vec::new();
    let mut lambda = vec![-bound; k];
    loop {
        if lambda.iter().any(|&x| x != 0) {
            let mut g = vec![Rational::zero(); d];
            for (l, a) in lambda.iter().zip(annihilator) {
                if *l != 0 {
                    for (gi, ai) in g.iter_mut().zip(a) {
                        *gi += ai * Rational::from_integer((*l).into());
                    }
                }
            }
            let vals: Vec<Rational> = firsts.iter().map(|(_, z)| dot(&g, z)).collect();
            if !vec_is_zero(&g) && vals.iter().all(|v| !v.is_negative()) {
                let score = vals.iter().filter(|v| v.is_positive()).count();
                let norm = lambda.iter().map(|x| x.abs()).sum();
                scored.push((score, norm, lambda.clone(), g));
            }
        }
        let mut j = 0;
        while j < k && lambda[j] == bound {
            lambda[j] = -bound;
            j += 1;
        }
        if j == k {
            break;
        }
        lambda[j] += 1;
    }
    scored.sort_by(|a, b| (Reverse(a.0), a.1, &a.2).cmp(&(Reverse(b.0), b.1, &b.2)));
    let mut seen: Vec<Vec<num_bigint::BigInt>> = Vec::new();
    let mut out = Vec::new();
    for (_, _, _, g) in scored {
        let p = primitive_integer(&g);
        if !seen.contains(&p) {
            seen.push(p);
            out.push(g);
        }
    }
    out
}

/// `L` with `L · basis = I` for a full-column-rank `basis`.
fn left_inverse(basis: &QMatrix) -> QMatrix {
    let n = basis.rows();
    let d = basis.cols();
    let (_, piv) = basis.transpose().rref();
    let sub = basis.select_rows(piv.iter().copied());
    let inv = sub.inverse().expect("independent rows");
    let mut out = QMatrix::zeros(d, n);
    for (j, &p) in piv.iter().enumerate() {
        for i in 0..d {
            out.set(i, p, inv.get(i, j).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_gives_identity() {
        assert_eq!(order_extension_search(2, &[]), OrderSearch::Found(QMatrix::identity(2)));
    }

    #[test]
    fn opposite_constraints_fail() {
        let z1 = OGroup::z(1);
        let cs = vec![
            OrderConstraint::new(z1.clone(), QMatrix::from_i64(&[&[1]])),
            OrderConstraint::new(z1, QMatrix::from_i64(&[&[-1]])),
        ];
        assert!(matches!(order_extension_search(1, &cs), OrderSearch::Failure(_)));
    }

    #[test]
    fn needs_non_identity_order() {
        let z1 = OGroup::z(1);
        let z2 = OGroup::z(2);
        let cs = vec![
            OrderConstraint::new(z1, QMatrix::from_i64(&[&[1], &[0]])),
            OrderConstraint::new(z2, QMatrix::from_i64(&[&[0, 1], &[1, 0]])),
        ];
        match order_extension_search(2, &cs) {
            OrderSearch::Found(f) => {
                assert!(verify(2, &f, &cs));
                assert_eq!(f, QMatrix::from_i64(&[&[0, 1], &[1, 0]]));
            }
            OrderSearch::Failure(e) => panic!("{e}"),
        }
    }
}
