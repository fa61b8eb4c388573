//! Integer skew-symmetric linear algebra for the defining matrix `J` of the
//! associated quasipolynomial algebra, where `x_a x_b = q^{J_ab} x_b x_a` for
//! generators `a < b` in PBW order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minors::ExponentMatrix;
use crate::ncalgebra::AlgebraDescriptor;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::serde_big::vec")]
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, actual: bad.len() });
        }
        Ok(Self { rows: r, cols: c, data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.data.len(), actual: other.data.len() });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `H_k`: `+1` strictly below the diagonal, `-1` strictly above.
pub fn h_matrix(k: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            if i > j {
                m.set(i, j, BigInt::one());
            } else if i < j {
                m.set(i, j, -BigInt::one());
            }
        }
    }
    m
}

/// `S_k = -E_{1,k} + sum_{i=2}^k E_{i,i-1}`.
pub fn s_matrix(k: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(k, k);
    if k == 0 {
        return m;
    }
    m.set(0, k - 1, -BigInt::one());
    for i in 1..k {
        m.set(i, i - 1, BigInt::one());
    }
    m
}

/// The matrix of `A -> H_n A - A H_r` on `n x r` matrices, under row-major
/// vectorisation.
pub fn h_map_matrix(n: usize, r: usize) -> IntMatrix {
    let (hn, hr) = (h_matrix(n), h_matrix(r));
    let mut out = IntMatrix::zeros(n * r, n * r);
    for i in 0..n {
        for j in 0..r {
            let row = i * r + j;
            // (H_n A)_{ij} = sum_k H_n[i][k] A_{kj}
            for k in 0..n {
                let v = out.get(row, k * r + j) + hn.get(i, k);
                out.set(row, k * r + j, v);
            }
            // (A H_r)_{ij} = sum_l A_{il} H_r[l][j]
            for l in 0..r {
                let v = out.get(row, i * r + l) - hr.get(l, j);
                out.set(row, i * r + l, v);
            }
        }
    }
    out
}

/// A square integer matrix with `J^T = -J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SkewMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for SkewMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<SkewMatrix> for Vec<Vec<i64>> {
    fn from(m: SkewMatrix) -> Self {
        m.to_rows()
    }
}

impl SkewMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
        }
        for i in 0..n {
            for j in i..n {
                if rows[i][j] != -rows[j][i] {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(Self { dim: n, data: rows.into_iter().flatten().collect() })
    }

    pub fn zero(n: usize) -> Self {
        Self { dim: n, data: vec![0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim.max(1)).take(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.to_rows()).unwrap_or_else(|_| IntMatrix::zeros(0, 0))
    }

    /// `J w`, exactly.
    pub fn apply(&self, w: &[i64]) -> Vec<i64> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * w[j]).sum()).collect()
    }

    /// Parses `N` on the first line followed by `N` rows of `N` integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing dimension line".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad dimension: {e}")))?;
        let mut rows = Vec::with_capacity(n);
        for k in 0..n {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {}", k + 1)))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("row {}: {e}", k + 1))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse(format!("more than {n} rows")));
        }
        Self::new(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.dim);
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `J_ab = 1` for `a < b` sharing a row or a column, read off the defining
/// relations once the correction terms are dropped.
pub fn defining_matrix(alg: &AlgebraDescriptor) -> SkewMatrix {
    let gens = alg.generators();
    let n = gens.len();
    let mut data = vec![0; n * n];
    for a in 0..n {
        for b in a + 1..n {
            if gens[a].row == gens[b].row || gens[a].col == gens[b].col {
                data[a * n + b] = 1;
                data[b * n + a] = -1;
            }
        }
    }
    SkewMatrix { dim: n, data }
}

/// `U J U^T = diag([[0, d_1], [-d_1, 0]], ..., 0)` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewNormalForm {
    pub u: IntMatrix,
    #[serde(with = "crate::serde_big::vec")]
    pub divisors: Vec<BigInt>,
    pub zero_rank: usize,
}

impl SkewNormalForm {
    /// The block-diagonal matrix this normal form describes.
    pub fn block_form(&self) -> IntMatrix {
        let n = self.u.rows();
        let mut out = IntMatrix::zeros(n, n);
        for (k, d) in self.divisors.iter().enumerate() {
            out.set(2 * k, 2 * k + 1, d.clone());
            out.set(2 * k + 1, 2 * k, -d);
        }
        out
    }
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
}

impl Reducer {
    /// Row and column `dst += c * src`, tracked in `U`.
    fn add(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let n = self.a.len();
        for k in 0..n {
            let v = &self.a[src][k] * c;
            self.a[dst][k] += v;
        }
        for k in 0..n {
            let v = &self.a[k][src] * c;
            self.a[k][dst] += v;
        }
        for k in 0..n {
            let v = &self.u[src][k] * c;
            self.u[dst][k] += v;
        }
    }

    fn swap(&mut self, x: usize, y: usize) {
        if x == y {
            return;
        }
        self.a.swap(x, y);
        for row in &mut self.a {
            row.swap(x, y);
        }
        self.u.swap(x, y);
    }

    fn negate(&mut self, x: usize) {
        for v in &mut self.a[x] {
            *v = -&*v;
        }
        for row in &mut self.a {
            row[x] = -&row[x];
        }
        for v in &mut self.u[x] {
            *v = -&*v;
        }
    }

    /// Smallest nonzero `|entry|` in the trailing block, ties broken by row
    /// then column.
    fn pivot(&self, from: usize) -> Option<(usize, usize)> {
        let n = self.a.len();
        let mut best: Option<(usize, usize)> = None;
        for i in from..n {
            for j in from..n {
                let v = &self.a[i][j];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn skew_normal_form(j: &SkewMatrix) -> SkewNormalForm {
    let n = j.dim();
    let mut r = Reducer {
        a: j.to_rows().into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect(),
        u: (0..n).map(|i| (0..n).map(|k| BigInt::from(u8::from(i == k))).collect()).collect(),
    };
    let mut divisors = Vec::new();
    let mut k = 0;
    while k + 1 < n {
        let Some(mut piv) = r.pivot(k) else { break };
        let d = loop {
            let (i, jj) = if piv.0 < piv.1 { piv } else { (piv.1, piv.0) };
            r.swap(k, i);
            r.swap(k + 1, jj);
            if r.a[k][k + 1].is_negative() {
                r.negate(k + 1);
            }
            let d = r.a[k][k + 1].clone();
            let mut redo = None;
            for l in k + 2..n {
                let c = r.a[k][l].div_floor(&d);
                r.add(l, k + 1, &-c);
                let c = r.a[k + 1][l].div_floor(&d);
                r.add(l, k, &c);
                if !r.a[k][l].is_zero() {
                    redo = Some((k, l));
                } else if !r.a[k + 1][l].is_zero() {
                    redo = Some((k + 1, l));
                }
                if redo.is_some() {
                    break;
                }
            }
            if let Some(p) = redo {
                piv = p;
                continue;
            }
            // Fold in a row the pivot does not divide; the next pass then
            // finds a smaller remainder.
            let offender = (k + 2..n).find(|&x| (k + 2..n).any(|y| !r.a[x][y].is_multiple_of(&d)));
            if let Some(x) = offender {
                r.add(k, x, &BigInt::one());
                piv = (k, k + 1);
                continue;
            }
            break d;
        };
        divisors.push(d);
        k += 2;
    }
    let mut u = IntMatrix::zeros(n, n);
    for (i, row) in r.u.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            u.set(i, c, v);
        }
    }
    let zero_rank = n - 2 * divisors.len();
    SkewNormalForm { u, divisors, zero_rank }
}

/// Dimension of the rational kernel of `J`.
pub fn corank(j: &SkewMatrix) -> usize {
    skew_normal_form(j).zero_rank
}

fn image_from_divisors(divisors: &[BigInt], m: u64) -> BigInt {
    let m = BigInt::from(m);
    divisors
        .iter()
        .map(|d| {
            let f = &m / d.gcd(&m);
            &f * &f
        })
        .product()
}

/// `|{J w mod m}|`, from the normal form.
pub fn image_cardinality(j: &SkewMatrix, m: u64) -> BigInt {
    assert!(m >= 1, "modulus must be positive");
    image_from_divisors(&skew_normal_form(j).divisors, m)
}

pub fn image_cardinality_from_form(nf: &SkewNormalForm, m: u64) -> BigInt {
    assert!(m >= 1, "modulus must be positive");
    image_from_divisors(&nf.divisors, m)
}

/// Largest modulus accepted by the mod-`m` lattice routines; keeps every
/// intermediate product inside `i128`.
pub const MAX_LATTICE_MODULUS: u64 = 1 << 31;

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 || m > MAX_LATTICE_MODULUS {
        Err(Error::Precondition(format!("modulus must lie in 1..={MAX_LATTICE_MODULUS}, got {m}")))
    } else {
        Ok(())
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// A subgroup of `(Z/m)^N` given by generators, with a canonical Hermite
/// form of the lattice `span(generators) + m Z^N` for comparisons.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct LatticeBasisModM {
    modulus: u64,
    dim: usize,
    generators: Vec<Vec<u64>>,
    hnf: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    modulus: u64,
    dim: usize,
    generators: Vec<Vec<u64>>,
}

impl From<LatticeBasisModM> for LatticeRepr {
    fn from(l: LatticeBasisModM) -> Self {
        LatticeRepr { modulus: l.modulus, dim: l.dim, generators: l.generators }
    }
}

impl TryFrom<LatticeRepr> for LatticeBasisModM {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        let gens: Vec<Vec<i64>> = r.generators.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
        Self::from_generators(r.modulus, r.dim, &gens)
    }
}

impl PartialEq for LatticeBasisModM {
    /// Equality of the generated subgroups.
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.dim == other.dim && self.hnf == other.hnf
    }
}

impl Eq for LatticeBasisModM {}

impl LatticeBasisModM {
    pub fn from_generators(m: u64, dim: usize, gens: &[Vec<i64>]) -> Result<Self> {
        check_modulus(m)?;
        let mm = i128::from(m);
        let mut reduced = Vec::with_capacity(gens.len());
        let mut hnf: Vec<Vec<i128>> = (0..dim)
            .map(|c| (0..dim).map(|k| if k == c { mm } else { 0 }).collect())
            .collect();
        for g in gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: g.len() });
            }
            let v: Vec<i128> = g.iter().map(|&x| i128::from(x).rem_euclid(mm)).collect();
            if v.iter().any(|&x| x != 0) {
                reduced.push(v.iter().map(|&x| x as u64).collect());
            }
            insert(&mut hnf, v, 0, mm);
        }
        // Reduce entries above each pivot into [0, pivot).
        for c in 0..dim {
            let p = hnf[c][c];
            for i in 0..c {
                let t = hnf[i][c] / p;
                if t != 0 {
                    for k in c..dim {
                        hnf[i][k] = (hnf[i][k] - t * hnf[c][k]).rem_euclid(mm);
                    }
                }
            }
        }
        let hnf = hnf
            .into_iter()
            .enumerate()
            .map(|(c, row)| {
                row.into_iter().enumerate().map(|(k, x)| if k == c { x as u64 } else { (x % mm) as u64 }).collect()
            })
            .collect();
        Ok(Self { modulus: m, dim, generators: reduced, hnf })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The nonzero generators supplied at construction, reduced mod `m`.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Pivots of the Hermite form; each divides `m`, and `m` marks a
    /// coordinate with no generator beyond `m Z^N`.
    pub fn pivots(&self) -> Vec<u64> {
        (0..self.dim).map(|c| self.hnf[c][c]).collect()
    }

    /// Number of elements of the subgroup of `(Z/m)^N`.
    pub fn cardinality(&self) -> BigInt {
        self.pivots().into_iter().map(|p| BigInt::from(self.modulus / p)).product()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mm = i128::from(self.modulus);
        let mut v: Vec<i128> = v.iter().map(|&x| i128::from(x).rem_euclid(mm)).collect();
        for c in 0..self.dim {
            let p = i128::from(self.hnf[c][c]);
            if v[c] % p != 0 {
                return false;
            }
            let t = v[c] / p;
            if t != 0 {
                for k in c..self.dim {
                    v[k] = (v[k] - t * i128::from(self.hnf[c][k])).rem_euclid(mm);
                }
            }
        }
        true
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.dim == other.dim
            && self.hnf.iter().all(|row| other.contains(&row.iter().map(|&x| x as i64).collect::<Vec<_>>()))
    }
}

/// Adds `v` (entries in `[0, m)`, zero before `start`) to the triangular
/// rows, re-inserting `(m / g) * row` whenever a pivot shrinks to `g`.
fn insert(hnf: &mut [Vec<i128>], v: Vec<i128>, start: usize, m: i128) {
    let dim = hnf.len();
    let mut stack = vec![(v, start)];
    while let Some((mut v, start)) = stack.pop() {
        for c in start..dim {
            if v[c] == 0 {
                continue;
            }
            let p = hnf[c][c];
            if v[c] % p == 0 {
                let t = v[c] / p;
                for k in c..dim {
                    v[k] = (v[k] - t * hnf[c][k]).rem_euclid(m);
                }
                continue;
            }
            let (g, a, b) = egcd(p, v[c]);
            let (pg, vg) = (p / g, v[c] / g);
            let mut row = vec![0; dim];
            let mut rest = vec![0; dim];
            for k in c + 1..dim {
                row[k] = (a * hnf[c][k] + b * v[k]).rem_euclid(m);
                rest[k] = (pg * v[k] - vg * hnf[c][k]).rem_euclid(m);
            }
            row[c] = g;
            let saturate: Vec<i128> =
                (0..dim).map(|k| if k > c { ((m / g) * row[k]).rem_euclid(m) } else { 0 }).collect();
            hnf[c] = row;
            stack.push((saturate, c + 1));
            v = rest;
        }
    }
}

/// `{w : J w = 0 mod m}`, read off the normal form: block `d` contributes
/// `(m / gcd(d, m))` times the two matching rows of `U`, and every zero
/// coordinate contributes its row of `U`.
pub fn kernel_mod_m(j: &SkewMatrix, m: u64) -> Result<LatticeBasisModM> {
    kernel_from_form(&skew_normal_form(j), m)
}

pub fn kernel_from_form(nf: &SkewNormalForm, m: u64) -> Result<LatticeBasisModM> {
    check_modulus(m)?;
    let n = nf.u.rows();
    let big_m = BigInt::from(m);
    let row_mod = |i: usize, factor: &BigInt| -> Vec<i64> {
        nf.u.row(i).iter().map(|x| (x * factor).mod_floor(&big_m).to_i64().expect("below m")).collect()
    };
    let mut gens = Vec::new();
    for (k, d) in nf.divisors.iter().enumerate() {
        let factor = &big_m / d.gcd(&big_m);
        gens.push(row_mod(2 * k, &factor));
        gens.push(row_mod(2 * k + 1, &factor));
    }
    for i in 2 * nf.divisors.len()..n {
        gens.push(row_mod(i, &BigInt::one()));
    }
    let lattice = LatticeBasisModM::from_generators(m, n, &gens)?;
    let expected: BigInt = nf
        .divisors
        .iter()
        .map(|d| {
            let g = d.gcd(&big_m);
            &g * &g
        })
        .product::<BigInt>()
        * big_m.pow(nf.zero_rank as u32);
    assert_eq!(lattice.cardinality(), expected, "kernel size disagrees with the normal form");
    Ok(lattice)
}

/// `vec(A)^T J vec(B)` with dense row-major vectorisation of both matrices.
pub fn pairing(a: &ExponentMatrix, b: &ExponentMatrix, j: &SkewMatrix) -> Result<i64> {
    for x in [a, b] {
        if x.rows() * x.cols() != j.dim() {
            return Err(Error::DimensionMismatch { expected: j.dim(), actual: x.rows() * x.cols() });
        }
    }
    Ok(pairing_vec(a.entries(), b.entries(), j))
}

pub fn pairing_vec(u: &[i64], v: &[i64], j: &SkewMatrix) -> i64 {
    u.iter().zip(j.apply(v)).map(|(x, y)| x * y).sum()
}

/// `S_n^i A S_r^j` for an `n x r` exponent matrix; negative powers use
/// `S_k^{-1} = S_k^{2k-1}`.
pub fn s_symmetry_orbit(a: &ExponentMatrix, i: i64, j: i64) -> ExponentMatrix {
    let (n, r) = (a.rows(), a.cols());
    let pw = |k: usize, e: i64| s_matrix(k).pow(e.rem_euclid(2 * k.max(1) as i64) as u32);
    let am = IntMatrix::from_rows(&a.to_rows()).expect("rectangular");
    let prod = pw(n, i).mul(&am).and_then(|x| x.mul(&pw(r, j))).expect("shapes agree");
    let rows = prod.to_i64_rows().expect("entries stay small");
    let out = ExponentMatrix::from_rows(rows).expect("rectangular");
    match a.modulus() {
        Some(m) => out.with_modulus(m),
        None => out,
    }
}
