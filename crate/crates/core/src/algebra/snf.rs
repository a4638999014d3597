//! Smith normal form with explicit unimodular transforms.
//!
//! Every row operation is mirrored on `U` and (inverted) on `U⁻¹`, and likewise for
//! columns, so `U·M·V = D` and both inverses come without a separate inversion step.
//!
//! Over the integers the elimination runs in arbitrary precision. When the plain
//! pivoting pass leaves large transforms, the matrix is redone through its Hermite
//! form and the kernel parts of `U` and `V` are LLL-reduced before converting back.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::ring::Pid;

#[derive(Debug, Clone)]
pub struct SmithForm<R> {
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
    /// Non-zero diagonal entries `d_0 | d_1 | ...`, normalized.
    pub diagonal: Vec<R>,
    rows: usize,
    cols: usize,
}

impl<R: Pid> SmithForm<R> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal matrix `D` with the shape of the input.
    pub fn d(&self) -> Matrix<R> {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, &x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x);
        }
        d
    }
}

pub fn smith_normal_form<R: Pid>(m: &Matrix<R>) -> SmithForm<R> {
    R::smith(m)
}

/// Ring elements as the elimination sees them.
trait Num: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Strictly smaller Euclidean size.
    fn smaller(&self, other: &Self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_rem(&self, d: &Self) -> (Self, Self);
    fn normalizing_unit(&self) -> Self;
    fn unit_inverse(&self) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn quot(&self, d: &Self) -> Self {
        self.div_rem(d).0
    }
}

impl<R: Pid> Num for R {
    fn zero() -> Self {
        R::zero()
    }
    fn one() -> Self {
        R::one()
    }
    fn is_zero(&self) -> bool {
        Pid::is_zero(*self)
    }
    fn is_unit(&self) -> bool {
        Pid::is_unit(*self)
    }
    fn smaller(&self, other: &Self) -> bool {
        self.size() < other.size()
    }
    fn add(&self, o: &Self) -> Self {
        Pid::add(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Pid::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        Pid::neg(*self)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        Pid::div_rem(*self, *d)
    }
    fn normalizing_unit(&self) -> Self {
        Pid::normalizing_unit(*self)
    }
    fn unit_inverse(&self) -> Self {
        Pid::unit_inverse(*self)
    }
}

impl Num for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn smaller(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let (q, r) = self.div_mod_floor(d);
        if r.is_negative() {
            (q + 1, r - d)
        } else {
            (q, r)
        }
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::from(1)
        } else {
            BigInt::from(1)
        }
    }
    fn unit_inverse(&self) -> Self {
        self.clone()
    }
}

/// Dense row-major storage for the elimination.
#[derive(Clone, Debug, PartialEq)]
struct Grid<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Num> Grid<T> {
    fn identity(n: usize) -> Self {
        let mut g = Grid {
            rows: n,
            cols: n,
            data: vec![T::zero(); n * n],
        };
        for i in 0..n {
            g.data[i * n + i] = T::one();
        }
        g
    }

    fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    fn combine_rows(&mut self, a: usize, b: usize, [p, q, r, s]: &[T; 4]) {
        for c in 0..self.cols {
            let (x, y) = (self.at(a, c).clone(), self.at(b, c).clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.data[a * self.cols + c] = p.mul(&x).add(&q.mul(&y));
            self.data[b * self.cols + c] = r.mul(&x).add(&s.mul(&y));
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, [p, q, r, s]: &[T; 4]) {
        let n = self.cols;
        for row in 0..self.rows {
            let (x, y) = (self.at(row, a).clone(), self.at(row, b).clone());
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.data[row * n + a] = p.mul(&x).add(&q.mul(&y));
            self.data[row * n + b] = r.mul(&x).add(&s.mul(&y));
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        for c in 0..self.cols {
            let s = self.at(src, c);
            if !s.is_zero() {
                let v = self.at(dst, c).add(&k.mul(s));
                self.data[dst * self.cols + c] = v;
            }
        }
    }

    /// `col[dst] += k * col[src]`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        let n = self.cols;
        for r in 0..self.rows {
            let s = self.at(r, src);
            if !s.is_zero() {
                let v = self.at(r, dst).add(&k.mul(s));
                self.data[r * n + dst] = v;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, r: usize, k: &T) {
        for c in 0..self.cols {
            let v = self.at(r, c).mul(k);
            self.data[r * self.cols + c] = v;
        }
    }

    fn scale_col(&mut self, c: usize, k: &T) {
        for r in 0..self.rows {
            let v = self.at(r, c).mul(k);
            self.data[r * self.cols + c] = v;
        }
    }
}

/// `(g, s, t)` with `s*a + t*b = g` a gcd of `a` and `b`; `a` is non-zero.
/// When `a | b` this is `(a, 1, 0)`.
fn xgcd<T: Num>(a: &T, b: &T) -> (T, T, T) {
    if b.div_rem(a).1.is_zero() {
        return (a.clone(), T::one(), T::zero());
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    (r0, s0, t0)
}

/// The determinant-one transform taking `(a, b)` to `(gcd, 0)`.
fn bezout<T: Num>(a: &T, b: &T) -> [T; 4] {
    let (g, s, t) = xgcd(a, b);
    [s, t, b.quot(&g).neg(), a.quot(&g)]
}

struct Work<T> {
    a: Grid<T>,
    u: Grid<T>,
    u_inv: Grid<T>,
    v: Grid<T>,
    v_inv: Grid<T>,
}

impl<T: Num> Work<T> {
    fn new(a: Grid<T>) -> Self {
        let (rows, cols) = (a.rows, a.cols);
        Work {
            a,
            u: Grid::identity(rows),
            u_inv: Grid::identity(rows),
            v: Grid::identity(cols),
            v_inv: Grid::identity(cols),
        }
    }

    /// Determinant-one 2x2 transform of rows `i`, `j`.
    fn rows2(&mut self, i: usize, j: usize, m: [T; 4]) {
        let [p, q, r, s] = &m;
        let inv = [s.clone(), r.neg(), q.neg(), p.clone()];
        self.a.combine_rows(i, j, &m);
        self.u.combine_rows(i, j, &m);
        self.u_inv.combine_cols(i, j, &inv);
    }

    /// Determinant-one 2x2 transform of columns `i`, `j`.
    fn cols2(&mut self, i: usize, j: usize, m: [T; 4]) {
        let [p, q, r, s] = &m;
        let inv = [s.clone(), r.neg(), q.neg(), p.clone()];
        self.a.combine_cols(i, j, &m);
        self.v.combine_cols(i, j, &m);
        self.v_inv.combine_rows(i, j, &inv);
    }

    fn row_op(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &k.neg());
    }

    fn col_op(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &k.neg());
    }

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

    fn scale_row(&mut self, r: usize, unit: &T) {
        self.a.scale_row(r, unit);
        self.u.scale_row(r, unit);
        self.u_inv.scale_col(r, &unit.unit_inverse());
    }

    /// Smallest non-zero entry of the block from `(t, t)`, ties in row-major order.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let x = self.a.at(r, c);
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.smaller(self.a.at(br, bc))) {
                    if x.is_unit() {
                        return Some((r, c));
                    }
                    best = Some((r, c));
                }
            }
        }
        best
    }

    /// Clears row and column `t` against the pivot at `(t, t)`, replacing the pivot
    /// by a gcd whenever it fails to divide an entry.
    fn settle_pivot(&mut self, t: usize) {
        let (rows, cols) = (self.a.rows, self.a.cols);
        loop {
            for i in t + 1..rows {
                if !self.a.at(i, t).is_zero() {
                    let m = bezout(self.a.at(t, t), self.a.at(i, t));
                    self.rows2(t, i, m);
                }
            }
            for j in t + 1..cols {
                if !self.a.at(t, j).is_zero() {
                    let m = bezout(self.a.at(t, t), self.a.at(t, j));
                    self.cols2(t, j, m);
                }
            }
            if (t + 1..rows).all(|i| self.a.at(i, t).is_zero()) {
                return;
            }
        }
    }

    /// Diagonalizes by full pivoting; returns the rank.
    fn eliminate(&mut self) -> usize {
        let mut rank = 0;
        for t in 0..self.a.rows.min(self.a.cols) {
            let Some((r, c)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            self.settle_pivot(t);
            rank += 1;
        }
        rank
    }

    /// Turns `diag(a, b)` at positions `i < j` into `diag(gcd, lcm)`.
    fn fix_pair(&mut self, i: usize, j: usize) {
        let (a, b) = (self.a.at(i, i).clone(), self.a.at(j, j).clone());
        if b.div_rem(&a).1.is_zero() {
            return;
        }
        let (g, s, x) = xgcd(&a, &b);
        let (bg, ag) = (b.quot(&g), a.quot(&g));
        self.rows2(i, j, [s.clone(), x.clone(), bg.neg(), ag.clone()]);
        self.cols2(i, j, [T::one(), T::one(), x.mul(&bg).neg(), s.mul(&ag)]);
    }

    /// Divisibility chain and normalized signs on a diagonal of the given rank.
    fn finish(&mut self, rank: usize) -> Vec<T> {
        for i in 0..rank {
            for j in i + 1..rank {
                self.fix_pair(i, j);
            }
            let unit = self.a.at(i, i).normalizing_unit();
            if unit != T::one() {
                self.scale_row(i, &unit);
            }
        }
        (0..rank).map(|i| self.a.at(i, i).clone()).collect()
    }
}

pub(crate) fn generic_smith<R: Pid>(m: &Matrix<R>) -> SmithForm<R> {
    let (rows, cols) = (m.rows(), m.cols());
    let grid = Grid {
        rows,
        cols,
        data: (0..rows).flat_map(|r| m.row(r).to_vec()).collect(),
    };
    let mut w = Work::new(grid);
    let rank = w.eliminate();
    let diagonal = w.finish(rank);
    let back = |g: Grid<R>| Matrix::from_rows(g.cols, &(0..g.rows).map(|r| g.row(r).to_vec()).collect::<Vec<_>>());
    SmithForm {
        u: back(w.u),
        u_inv: back(w.u_inv),
        v: back(w.v),
        v_inv: back(w.v_inv),
        diagonal,
        rows,
        cols,
    }
}

/// Bit length allowed in the transforms of the plain pass.
const SMALL_BITS: u64 = 40;

/// Integer Smith form in arbitrary precision, converted back with overflow checked.
pub(crate) fn integer_smith(m: &Matrix<i64>) -> SmithForm<i64> {
    let (rows, cols) = (m.rows(), m.cols());
    let grid = Grid {
        rows,
        cols,
        data: (0..rows).flat_map(|r| m.row(r).iter().map(|&x| BigInt::from(x))).collect(),
    };
    let mut w = Work::new(grid.clone());
    let rank = w.eliminate();
    let mut diagonal = w.finish(rank);
    let small = [&w.u, &w.u_inv, &w.v, &w.v_inv]
        .iter()
        .all(|g| g.data.iter().all(|x| x.bits() <= SMALL_BITS));
    if !small {
        w = Work::new(grid);
        let rank = w.echelon();
        for t in 0..rank {
            w.settle_pivot(t);
        }
        diagonal = w.finish(rank);
        w.reduce_kernels(rank);
    }
    let back = |g: Grid<BigInt>| {
        let data: Vec<Vec<i64>> = (0..g.rows)
            .map(|r| g.row(r).iter().map(|x| x.to_i64().expect("integer overflow")).collect())
            .collect();
        Matrix::from_rows(g.cols, &data)
    };
    SmithForm {
        u: back(w.u),
        u_inv: back(w.u_inv),
        v: back(w.v),
        v_inv: back(w.v_inv),
        diagonal: diagonal.iter().map(|x| x.to_i64().expect("integer overflow")).collect(),
        rows,
        cols,
    }
}

impl Work<BigInt> {
    /// Echelon form by row operations with the pivots on the diagonal. Each pivot
    /// column is chosen (or made by one small column combination) to have the gcd of
    /// the whole remaining block, so every pivot divides all later entries. Entries
    /// above a pivot are reduced modulo it. Returns the rank.
    fn echelon(&mut self) -> usize {
        const REACH: i64 = 8;
        let (rows, cols) = (self.a.rows, self.a.cols);
        let column_gcd = |w: &Self, t: usize, c: usize| -> BigInt {
            (t..rows).fold(BigInt::from(0), |g, r| g.gcd(w.a.at(r, c)))
        };
        let mut t = 0;
        while t < rows.min(cols) {
            let gcds: Vec<BigInt> = (t..cols).map(|c| column_gcd(self, t, c)).collect();
            let g = gcds.iter().fold(BigInt::from(0), |g, x| g.gcd(x));
            if Num::is_zero(&g) {
                break;
            }
            let mut chosen = gcds.iter().position(|x| *x == g).map(|i| t + i);
            'search: for k in 1..=REACH {
                if chosen.is_some() {
                    break;
                }
                for k in [BigInt::from(k), BigInt::from(-k)] {
                    for a in t..cols {
                        for b in t..cols {
                            if a == b || Num::is_zero(&gcds[b - t]) {
                                continue;
                            }
                            let h = (t..rows).fold(BigInt::from(0), |h, r| h.gcd(&(self.a.at(r, a) + &k * self.a.at(r, b))));
                            if h == g {
                                self.col_op(a, b, &k);
                                chosen = Some(a);
                                break 'search;
                            }
                        }
                    }
                }
            }
            let c = chosen.unwrap_or_else(|| {
                (t..cols)
                    .filter(|&c| !Num::is_zero(&gcds[c - t]))
                    .min_by(|&x, &y| gcds[x - t].cmp(&gcds[y - t]))
                    .expect("non-zero block")
            });
            self.swap_cols(t, c);
            let mut p = t;
            for i in t..rows {
                let x = self.a.at(i, t);
                if !Num::is_zero(x) && (Num::is_zero(self.a.at(p, t)) || x.smaller(self.a.at(p, t))) {
                    p = i;
                }
            }
            self.swap_rows(t, p);
            for i in t + 1..rows {
                if !Num::is_zero(self.a.at(i, t)) {
                    let m = bezout(self.a.at(t, t), self.a.at(i, t));
                    self.rows2(t, i, m);
                }
            }
            let unit = self.a.at(t, t).normalizing_unit();
            if unit != BigInt::from(1) {
                self.scale_row(t, &unit);
            }
            for k in 0..t {
                let q = self.a.at(k, t).quot(self.a.at(t, t));
                self.row_op(k, t, &q.neg());
            }
            t += 1;
        }
        t
    }

    /// LLL-reduces the rows of `U` past the rank and the columns of `V` past the rank,
    /// then size-reduces the remaining rows and columns against them. `A = D` is kept.
    fn reduce_kernels(&mut self, rank: usize) {
        let left: Vec<Vec<BigInt>> = (rank..self.u.rows).map(|r| self.u.row(r).to_vec()).collect();
        let (basis, ops) = Lll::reduce(left);
        for op in ops {
            match op {
                LllOp::Add { dst, src, k } => self.row_op(rank + dst, rank + src, &k),
                LllOp::Swap(a, b) => self.swap_rows(rank + a, rank + b),
            }
        }
        for i in 0..rank {
            for (l, q) in basis.size_reduce(self.u.row(i)) {
                self.row_op(i, rank + l, &-q);
            }
        }
        let right: Vec<Vec<BigInt>> = (rank..self.v.cols).map(|c| self.v.column(c)).collect();
        let (basis, ops) = Lll::reduce(right);
        for op in ops {
            match op {
                LllOp::Add { dst, src, k } => self.col_op(rank + dst, rank + src, &k),
                LllOp::Swap(a, b) => self.swap_cols(rank + a, rank + b),
            }
        }
        for j in 0..rank {
            for (l, q) in basis.size_reduce(&self.v.column(j)) {
                self.col_op(j, rank + l, &-q);
            }
        }
    }
}

enum LllOp {
    /// `b[dst] += k * b[src]`.
    Add { dst: usize, src: usize, k: BigInt },
    Swap(usize, usize),
}

/// Integral LLL (parameter 3/4) on linearly independent vectors, keeping the
/// Gram-Schmidt data as integers: `d[i]` is the Gram determinant of the first `i`
/// vectors and `lam[k][j] = d[j+1] * mu[k][j]`.
struct Lll {
    b: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

fn dot(x: &[BigInt], y: &[BigInt]) -> BigInt {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Nearest integer to `a / b` for positive `b`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (BigInt::from(2) * a + b).div_floor(&(BigInt::from(2) * b))
}

impl Lll {
    fn new(b: Vec<Vec<BigInt>>) -> Self {
        let n = b.len();
        let mut d = vec![BigInt::from(1); n + 1];
        let mut lam = vec![vec![BigInt::from(0); n]; n];
        for k in 0..n {
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(u.is_positive(), "LLL input must be linearly independent");
                    d[k + 1] = u;
                }
            }
        }
        Lll { b, d, lam }
    }

    fn reduce(b: Vec<Vec<BigInt>>) -> (Lll, Vec<LllOp>) {
        let mut s = Lll::new(b);
        let mut ops = Vec::new();
        let n = s.b.len();
        let mut k = 1;
        while k < n {
            s.red(k, k - 1, &mut ops);
            let lhs = BigInt::from(4) * &s.d[k + 1] * &s.d[k - 1];
            let rhs = BigInt::from(3) * &s.d[k] * &s.d[k] - BigInt::from(4) * &s.lam[k][k - 1] * &s.lam[k][k - 1];
            if lhs < rhs {
                s.swap(k, &mut ops);
                k = (k - 1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    s.red(k, l, &mut ops);
                }
                k += 1;
            }
        }
        (s, ops)
    }

    fn red(&mut self, k: usize, l: usize, ops: &mut Vec<LllOp>) {
        if BigInt::from(2) * self.lam[k][l].abs() <= self.d[l + 1] {
            return;
        }
        let q = round_div(&self.lam[k][l], &self.d[l + 1]);
        let bl = self.b[l].clone();
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lam[k][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
        ops.push(LllOp::Add { dst: k, src: l, k: -q });
    }

    fn swap(&mut self, k: usize, ops: &mut Vec<LllOp>) {
        self.b.swap(k, k - 1);
        ops.push(LllOp::Swap(k - 1, k));
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..self.b.len() {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k + 1] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k];
            self.lam[i][k - 1] = (&b * &t + &lam * &self.lam[i][k]) / &self.d[k + 1];
        }
        self.d[k] = b;
    }

    /// Coefficients `q_l` with `x - sum q_l b_l` size-reduced against the basis.
    fn size_reduce(&self, x: &[BigInt]) -> Vec<(usize, BigInt)> {
        let n = self.b.len();
        let mut lx = vec![BigInt::from(0); n];
        for j in 0..n {
            let mut u = dot(x, &self.b[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &lx[i] * &self.lam[j][i]) / &self.d[i];
            }
            lx[j] = u;
        }
        let mut out = Vec::new();
        for l in (0..n).rev() {
            if BigInt::from(2) * lx[l].abs() > self.d[l + 1] {
                let q = round_div(&lx[l], &self.d[l + 1]);
                lx[l] -= &q * &self.d[l + 1];
                for i in 0..l {
                    let t = &q * &self.lam[l][i];
                    lx[i] -= t;
                }
                out.push((l, q));
            }
        }
        out
    }
}

/// Inverse of a square matrix, if it exists over `R`.
pub fn inverse<R: Pid>(m: &Matrix<R>) -> Option<Matrix<R>> {
    assert_eq!(m.rows(), m.cols());
    let snf = smith_normal_form(m);
    if snf.rank() != m.rows() || !snf.diagonal.iter().all(|d| *d == R::one()) {
        return None;
    }
    // U M V = I  =>  M^{-1} = V U
    Some(snf.v.mul(&snf.u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Gf2;

    fn wide(m: &Matrix<i64>) -> Vec<Vec<i128>> {
        m.to_i64_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
    }

    fn product(a: &[Vec<i128>], b: &[Vec<i128>], inner: usize, cols: usize) -> Vec<Vec<i128>> {
        a.iter()
            .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
            .collect()
    }

    fn check_contract(m: &Matrix<i64>) -> SmithForm<i64> {
        let s = smith_normal_form(m);
        let (r, c) = (m.rows(), m.cols());
        let um = product(&wide(&s.u), &wide(m), r, c);
        assert_eq!(product(&um, &wide(&s.v), c, c), wide(&s.d()));
        assert_eq!(product(&wide(&s.u), &wide(&s.u_inv), r, r), wide(&Matrix::identity(r)));
        assert_eq!(product(&wide(&s.v), &wide(&s.v_inv), c, c), wide(&Matrix::identity(c)));
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {:?}", s.diagonal);
        }
        assert!(s.diagonal.iter().all(|&d| d > 0));
        s
    }

    #[test]
    fn diag_2_3() {
        let m = Matrix::<i64>::from_i64_rows(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(check_contract(&m).diagonal, vec![1, 6]);
    }

    #[test]
    fn gcd_two_det_eight() {
        let m = Matrix::<i64>::from_i64_rows(2, &[vec![2, 4], vec![6, 8]]);
        assert_eq!(check_contract(&m).diagonal, vec![2, 4]);
    }

    #[test]
    fn zero_matrix() {
        let m = Matrix::<i64>::zeros(3, 2);
        let s = check_contract(&m);
        assert!(s.diagonal.is_empty());
        assert_eq!(s.u, Matrix::identity(3));
        assert_eq!(s.v, Matrix::identity(2));
    }

    #[test]
    fn empty_shapes() {
        check_contract(&Matrix::<i64>::zeros(0, 4));
        check_contract(&Matrix::<i64>::zeros(4, 0));
    }

    #[test]
    fn dense_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..=9), rng.gen_range(1..=9));
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let s = check_contract(&Matrix::from_i64_rows(c, &rows));
            assert_eq!(s.u.determinant().abs(), 1);
            assert_eq!(s.v.determinant().abs(), 1);
        }
    }

    #[test]
    fn tall_rank_deficient_has_small_left_kernel() {
        // Rows 2 and 3 are combinations of rows 0 and 1.
        let m = Matrix::<i64>::from_i64_rows(
            3,
            &[vec![4, 7, -9], vec![8, -3, 5], vec![12, 4, -4], vec![-4, 10, -14], vec![6, 0, 1]],
        );
        let s = check_contract(&m);
        assert_eq!(s.rank(), 3);
        for r in 3..5 {
            assert!(s.u.row(r).iter().all(|x| x.abs() <= 2), "{:?}", s.u.row(r));
        }
    }

    #[test]
    fn lll_textbook_basis() {
        let b: Vec<Vec<BigInt>> = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let (s, ops) = Lll::reduce(b.clone());
        let want: Vec<Vec<BigInt>> = [[0, 1, 0], [1, 0, 1], [-1, 0, 2]]
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(s.b, want);
        let mut replay = b;
        for op in ops {
            match op {
                LllOp::Add { dst, src, k } => {
                    let add: Vec<BigInt> = replay[src].iter().map(|x| &k * x).collect();
                    for (x, y) in replay[dst].iter_mut().zip(add) {
                        *x += y;
                    }
                }
                LllOp::Swap(a, b) => replay.swap(a, b),
            }
        }
        assert_eq!(replay, want);
    }

    #[test]
    fn gf2_is_rank() {
        let m = Matrix::<Gf2>::from_i64_rows(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d());
    }

    #[test]
    fn integer_inverse() {
        let m = Matrix::<i64>::from_i64_rows(2, &[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let m = Matrix::<i64>::from_i64_rows(2, &[vec![2, 0], vec![0, 1]]);
        assert!(inverse(&m).is_none());
    }
}
