//! Dense integer matrices over arbitrary-precision integers, with Smith
//! normal form, exact linear solving, and kernel bases. Entry growth during
//! elimination is the classical failure mode, so everything runs on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> IntMat {
        let mut m = IntMat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(f(i, j)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect()
    }

    /// Stack columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> IntMat {
        let mut out = IntMat::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                out.set(r, c, x.clone());
            }
        }
        out
    }

    /// Kronecker (tensor) product.
    pub fn kronecker(&self, other: &IntMat) -> IntMat {
        let mut out = IntMat::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a * other.get(k, l),
                        );
                    }
                }
            }
        }
        out
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` in Smith normal form.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub rank: usize,
    /// The nontrivial part of the diagonal: `factors[0] | factors[1] | ...`
    pub factors: Vec<BigInt>,
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    // machine-word fast path with checked arithmetic; any overflow falls
    // back to the arbitrary-precision elimination
    if let Some(snf) = snf_i64(a) {
        return snf;
    }
    snf_bigint(a)
}

fn snf_i64(a: &IntMat) -> Option<Snf> {
    let rows = a.rows();
    let cols = a.cols();
    let mut d: Vec<i64> = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            d.push(i64::try_from(a.get(r, c)).ok()?);
        }
    }
    let mut u: Vec<i64> = vec![0; rows * rows];
    let mut v: Vec<i64> = vec![0; cols * cols];
    for i in 0..rows {
        u[i * rows + i] = 1;
    }
    for i in 0..cols {
        v[i * cols + i] = 1;
    }

    fn swap_rows(m: &mut [i64], width: usize, i: usize, j: usize) {
        for c in 0..width {
            m.swap(i * width + c, j * width + c);
        }
    }
    fn swap_cols(m: &mut [i64], width: usize, height: usize, i: usize, j: usize) {
        for r in 0..height {
            m.swap(r * width + i, r * width + j);
        }
    }
    fn row_sub(m: &mut [i64], width: usize, i: usize, j: usize, q: i64) -> Option<()> {
        for c in 0..width {
            let x = m[i * width + c].checked_sub(q.checked_mul(m[j * width + c])?)?;
            m[i * width + c] = x;
        }
        Some(())
    }
    fn col_sub(m: &mut [i64], width: usize, height: usize, i: usize, j: usize, q: i64) -> Option<()> {
        for r in 0..height {
            let x = m[r * width + i].checked_sub(q.checked_mul(m[r * width + j])?)?;
            m[r * width + i] = x;
        }
        Some(())
    }
    fn negate_row(m: &mut [i64], width: usize, i: usize) -> Option<()> {
        for c in 0..width {
            m[i * width + c] = m[i * width + c].checked_neg()?;
        }
        Some(())
    }

    let mut k = 0usize;
    while k < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let x = d[i * cols + j];
                if x == 0 {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if x.unsigned_abs() < d[pi * cols + pj].unsigned_abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            swap_rows(&mut d, cols, pi, k);
            swap_rows(&mut u, rows, pi, k);
        }
        if pj != k {
            swap_cols(&mut d, cols, rows, pj, k);
            swap_cols(&mut v, cols, cols, pj, k);
        }
        if d[k * cols + k] < 0 {
            negate_row(&mut d, cols, k)?;
            negate_row(&mut u, rows, k)?;
        }

        let pv = d[k * cols + k];
        for i in k + 1..rows {
            let x = d[i * cols + k];
            if x == 0 {
                continue;
            }
            let q = x.div_euclid(pv);
            row_sub(&mut d, cols, i, k, q)?;
            row_sub(&mut u, rows, i, k, q)?;
        }
        for j in k + 1..cols {
            let x = d[k * cols + j];
            if x == 0 {
                continue;
            }
            let q = x.div_euclid(pv);
            col_sub(&mut d, cols, rows, j, k, q)?;
            col_sub(&mut v, cols, cols, j, k, q)?;
        }
        let col_clear = (k + 1..rows).all(|i| d[i * cols + k] == 0);
        let row_clear = (k + 1..cols).all(|j| d[k * cols + j] == 0);
        if !col_clear || !row_clear {
            continue;
        }

        let mut retry = false;
        'outer: for i in k + 1..rows {
            for j in k + 1..cols {
                if d[i * cols + j].rem_euclid(pv) != 0 {
                    row_sub(&mut d, cols, k, i, -1)?;
                    row_sub(&mut u, rows, k, i, -1)?;
                    retry = true;
                    break 'outer;
                }
            }
        }
        if retry {
            continue;
        }
        k += 1;
    }

    let rank = k;
    let to_mat = |data: &[i64], r: usize, c: usize| {
        let mut m = IntMat::zero(r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, BigInt::from(data[i * c + j]));
            }
        }
        m
    };
    let dm = to_mat(&d, rows, cols);
    let factors: Vec<BigInt> = (0..rank).map(|i| dm.get(i, i).clone()).collect();
    Some(Snf { d: dm, u: to_mat(&u, rows, rows), v: to_mat(&v, cols, cols), rank, factors })
}

fn snf_bigint(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows());
    let mut v = IntMat::identity(a.cols());
    let (rows, cols) = (a.rows(), a.cols());

    let swap_rows = |m: &mut IntMat, i: usize, j: usize| {
        for c in 0..m.cols() {
            let x = m.get(i, c).clone();
            let y = m.get(j, c).clone();
            m.set(i, c, y);
            m.set(j, c, x);
        }
    };
    let swap_cols = |m: &mut IntMat, i: usize, j: usize| {
        for r in 0..m.rows() {
            let x = m.get(r, i).clone();
            let y = m.get(r, j).clone();
            m.set(r, i, y);
            m.set(r, j, x);
        }
    };
    // row_i -= q * row_j
    let row_sub = |m: &mut IntMat, i: usize, j: usize, q: &BigInt| {
        for c in 0..m.cols() {
            let x = m.get(i, c) - q * m.get(j, c);
            m.set(i, c, x);
        }
    };
    let col_sub = |m: &mut IntMat, i: usize, j: usize, q: &BigInt| {
        for r in 0..m.rows() {
            let x = m.get(r, i) - q * m.get(r, j);
            m.set(r, i, x);
        }
    };
    let negate_row = |m: &mut IntMat, i: usize| {
        for c in 0..m.cols() {
            let x = -m.get(i, c);
            m.set(i, c, x);
        }
    };

    let mut k = 0usize;
    while k < rows.min(cols) {
        // the pivot is re-selected as the global minimum of the trailing
        // block after every reduction pass, which keeps quotients small and
        // tames entry growth
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d.get(i, j).abs() < d.get(*pi, *pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            swap_rows(&mut d, pi, k);
            swap_rows(&mut u, pi, k);
        }
        if pj != k {
            swap_cols(&mut d, pj, k);
            swap_cols(&mut v, pj, k);
        }
        if d.get(k, k).is_negative() {
            negate_row(&mut d, k);
            negate_row(&mut u, k);
        }

        // one reduction pass; remainders are strictly smaller than the
        // pivot, so looping back to pivot selection terminates
        for i in k + 1..rows {
            if d.get(i, k).is_zero() {
                continue;
            }
            let q = d.get(i, k).div_floor(d.get(k, k));
            row_sub(&mut d, i, k, &q);
            row_sub(&mut u, i, k, &q);
        }
        for j in k + 1..cols {
            if d.get(k, j).is_zero() {
                continue;
            }
            let q = d.get(k, j).div_floor(d.get(k, k));
            col_sub(&mut d, j, k, &q);
            col_sub(&mut v, j, k, &q);
        }
        let col_clear = (k + 1..rows).all(|i| d.get(i, k).is_zero());
        let row_clear = (k + 1..cols).all(|j| d.get(k, j).is_zero());
        if !col_clear || !row_clear {
            continue;
        }

        // divisibility: the pivot must divide the trailing block
        let mut retry = false;
        'outer: for i in k + 1..rows {
            for j in k + 1..cols {
                if !d.get(i, j).mod_floor(d.get(k, k)).is_zero() {
                    // fold that row in and redo the elimination at k
                    let minus_one = -BigInt::one();
                    row_sub(&mut d, k, i, &minus_one);
                    row_sub(&mut u, k, i, &minus_one);
                    retry = true;
                    break 'outer;
                }
            }
        }
        if retry {
            continue;
        }
        k += 1;
    }

    let rank = k;
    let factors: Vec<BigInt> = (0..rank).map(|i| d.get(i, i).clone()).collect();
    Snf { d, u, v, rank, factors }
}

/// A factored matrix for solving many right-hand sides.
pub struct Solver {
    rows: usize,
    cols: usize,
    snf: Snf,
}

impl Solver {
    pub fn new(a: &IntMat) -> Solver {
        Solver { rows: a.rows(), cols: a.cols(), snf: smith_normal_form(a) }
    }

    /// Exact solution of `a x = b` over the integers, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(self.rows, b.len());
        let ub = self.snf.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            if i < self.snf.rank {
                let (q, r) = ub[i].div_rem(self.snf.d.get(i, i));
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ub[i].is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    /// Columns generating the integer kernel.
    pub fn kernel_basis(&self) -> IntMat {
        let cols: Vec<Vec<BigInt>> =
            (self.snf.rank..self.cols).map(|c| self.snf.v.column(c)).collect();
        IntMat::from_columns(self.cols, &cols)
    }
}

/// Exact solution of `a x = b` over the integers, if one exists.
pub fn solve(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    Solver::new(a).solve(b)
}

/// Columns generating the integer kernel of `a`.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    Solver::new(a).kernel_basis()
}

pub fn rank(a: &IntMat) -> usize {
    smith_normal_form(a).rank
}
