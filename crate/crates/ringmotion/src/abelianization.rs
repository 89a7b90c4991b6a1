//! Integer Smith normal form and abelianization invariants of finitely
//! presented groups.
//!
//! All arithmetic is exact (arbitrary-precision integers). The pivot rule is
//! fixed (minimal nonzero absolute value, ties row-major) so results are
//! deterministic across platforms.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::presentation::Presentation;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || self[(i, j)].is_zero())
        })
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let term = q * &self[(j, c)];
            self[(i, c)] -= term;
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let term = q * &self[(r, j)];
            self[(r, i)] -= term;
        }
    }

    /// row_i += row_j
    fn row_add(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            let term = self[(j, c)].clone();
            self[(i, c)] += term;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let neg = -self[(i, c)].clone();
            self[(i, c)] = neg;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `u * m * v = d` with `u`, `v`
/// unimodular and `d` diagonal satisfying the divisibility chain.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let steps = m.rows().min(m.cols());
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..a.rows() {
                if !a[(i, t)].is_zero() {
                    let q = &a[(i, t)] / &a[(t, t)];
                    a.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    dirty |= !a[(i, t)].is_zero();
                }
            }
            for j in t + 1..a.cols() {
                if !a[(t, j)].is_zero() {
                    let q = &a[(t, j)] / &a[(t, t)];
                    a.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    dirty |= !a[(t, j)].is_zero();
                }
            }
            if dirty {
                continue;
            }
            // Row and column t are clear; enforce that the pivot divides the
            // remaining submatrix before moving on.
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..a.rows()).find_map(|i| {
                (t + 1..a.cols())
                    .find(|&j| !(&a[(i, j)] % &pivot).is_zero())
                    .map(|_| i)
            });
            match offender {
                Some(i) => {
                    a.row_add(t, i);
                    u.row_add(t, i);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { d: a, u, v }
}

/// Minimal nonzero absolute value in the submatrix starting at `(t, t)`,
/// ties row-major.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => a[(i, j)].magnitude() < a[(bi, bj)].magnitude(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Invariant factors of a finitely generated abelian group: the torsion
/// chain `d1 | d2 | ...` (each > 1) and the free rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigUint>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Exponent-sum matrix of the relators: one row per relator, one column per
/// generator in declaration order.
pub fn relator_matrix(p: &Presentation) -> IntMatrix {
    let spec = p.free_spec();
    let mut m = IntMatrix::zero(p.relators().len(), p.generators().len());
    for (i, r) in p.relators().iter().enumerate() {
        let row = spec.abelianize_word(r).expect("relators use declared generators");
        for (j, e) in row.into_iter().enumerate() {
            m[(i, j)] = e;
        }
    }
    m
}

/// Invariant factors of the abelianization: the quotient of Z^generators by
/// the rows of the relator matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = relator_matrix(p);
    let snf = smith_normal_form(&m);
    let diag = snf.d.diagonal();
    let rank_nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .iter()
        .filter(|d| !d.is_zero() && !d.magnitude().is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    AbelianInvariants {
        torsion,
        free_rank: p.generators().len() - rank_nonzero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(rows: &[Vec<i64>]) -> Vec<BigInt> {
        let m = IntMatrix::from_rows(rows);
        let snf = smith_normal_form(&m);
        assert!(snf.d.is_diagonal());
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d, "u m v = d");
        assert!(snf.u.determinant().magnitude().is_one(), "u unimodular");
        assert!(snf.v.determinant().magnitude().is_one(), "v unimodular");
        let diag = snf.d.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            } else {
                assert!(w[1].is_zero(), "zeros come last");
            }
        }
        diag
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_inputs_stay_put() {
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 2]]), ints(&[2, 2]));
        assert_eq!(snf_diag(&[vec![0]]), ints(&[0]));
    }

    #[test]
    fn classic_small_cases() {
        assert_eq!(snf_diag(&[vec![2, 4], vec![6, 8]]), ints(&[2, 4]));
        assert_eq!(
            snf_diag(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]),
            ints(&[2, 2, 156])
        );
        assert_eq!(snf_diag(&[vec![1, 2], vec![3, 4], vec![5, 6]]), ints(&[1, 2]));
        assert_eq!(snf_diag(&[vec![3, 0], vec![0, 5]]), ints(&[1, 15]));
    }

    #[test]
    fn invariant_under_permutation() {
        let base = [vec![2i64, 4, 0], vec![0, 6, 8]];
        let permuted = [vec![8i64, 6, 0], vec![0, 4, 2]];
        assert_eq!(snf_diag(&base), snf_diag(&permuted));
    }

    #[test]
    fn quaternion_relators_give_two_twos() {
        // < t, s | t^2 s^-2, t s t s t^-2 > abelianized.
        let p = Presentation::parse("group Q8\ngens t s\nrel t^2 s^-2\nrel t s t s t^-2\n")
            .unwrap();
        let inv = abelianization(&p);
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![BigUint::from(2u32), BigUint::from(2u32)]);
    }

    #[test]
    fn cyclic_groups() {
        let z2 = Presentation::parse("group Z2\ngens t\nrel t^2\n").unwrap();
        let inv = abelianization(&z2);
        assert_eq!((inv.free_rank, inv.torsion), (0, vec![BigUint::from(2u32)]));

        let z4 = Presentation::parse("group Z4\ngens t\nrel t^4\n").unwrap();
        let inv = abelianization(&z4);
        assert_eq!((inv.free_rank, inv.torsion), (0, vec![BigUint::from(4u32)]));
    }

    #[test]
    fn free_and_trivial_groups() {
        let f2 = Presentation::parse("group F2\ngens a b\n").unwrap();
        assert_eq!(abelianization(&f2), AbelianInvariants::free(2));
        assert_eq!(abelianization(&f2).to_string(), "Z^2");

        let t = Presentation::parse("group T\ngens a\nrel a\n").unwrap();
        assert!(abelianization(&t).is_trivial());
        assert_eq!(abelianization(&t).to_string(), "trivial");
    }

    #[test]
    fn display_format() {
        let p = Presentation::parse("group G\ngens a b c\nrel a^2\nrel b^6\n").unwrap();
        assert_eq!(abelianization(&p).to_string(), "Z^1 + Z/2 + Z/6");
    }

    #[test]
    fn determinant_is_exact() {
        let m = IntMatrix::from_rows(&[vec![2i64, 0, 1], vec![1, 3, 2], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), BigInt::from(21));
        let singular = IntMatrix::from_rows(&[vec![1i64, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), BigInt::zero());
    }
}
