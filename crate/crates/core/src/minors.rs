//! Quantum minors, the sliding and corner minor families, and candidate
//! central elements written as formal products of minor powers.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncalgebra::poly::minus_q_pow;
use crate::ncalgebra::{AlgebraDescriptor, GeneratorId, NcPolynomial, PbwMonomial};

/// Row set `I` and column set `J` of a quantum minor `D(I, J)`. The empty
/// minor stands for the scalar 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorDescriptor {
    rows: Vec<u32>,
    cols: Vec<u32>,
}

fn strictly_increasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1]) && v.first().is_none_or(|&x| x >= 1)
}

impl MinorDescriptor {
    pub fn new(rows: Vec<u32>, cols: Vec<u32>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidMinor(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if !strictly_increasing(&rows) || !strictly_increasing(&cols) {
            return Err(Error::InvalidMinor("indices must be positive and strictly increasing".into()));
        }
        Ok(Self { rows, cols })
    }

    pub fn empty() -> Self {
        Self { rows: vec![], cols: vec![] }
    }

    /// Rows `r0..=r1` and columns `c0..=c1` (equal lengths).
    pub fn block(r0: u32, r1: u32, c0: u32, c1: u32) -> Self {
        debug_assert_eq!(r1 + 1 - r0, c1 + 1 - c0);
        Self { rows: (r0..=r1).collect(), cols: (c0..=c1).collect() }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self { rows: self.cols.clone(), cols: self.rows.clone() }
    }

    /// Generators on the diagonal, whose product is the leading monomial.
    pub fn diagonal(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.rows.iter().zip(&self.cols).map(|(&i, &j)| GeneratorId::new(i, j))
    }

    fn contiguous(&self) -> bool {
        let run = |v: &[u32]| v.windows(2).all(|w| w[1] == w[0] + 1);
        run(&self.rows) && run(&self.cols)
    }

    fn check_inside(&self, alg: &AlgebraDescriptor) -> Result<()> {
        for &i in &self.rows {
            for &j in &self.cols {
                if !alg.contains(GeneratorId::new(i, j)) {
                    return Err(Error::InvalidMinor(format!("{self} needs {} outside {alg}", GeneratorId::new(i, j))));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for MinorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "D({{{}}},{{{}}})", list(&self.rows), list(&self.cols))
    }
}

/// All permutations of `0..k` with their inversion counts.
fn permutations(k: usize) -> Vec<(Vec<usize>, u32)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, u32)>) {
        let k = used.len();
        if prefix.len() == k {
            let mut inv = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if prefix[a] > prefix[b] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), inv));
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// `sum_sigma (-q)^{l(sigma)} Z_{i_1, sigma(i_1)} ... Z_{i_k, sigma(i_k)}`.
/// Row-ordered products are already PBW monomials.
pub fn quantum_minor(d: &MinorDescriptor, alg: &Arc<AlgebraDescriptor>) -> Result<NcPolynomial> {
    d.check_inside(alg)?;
    let mut out = NcPolynomial::zero(alg);
    for (sigma, inv) in permutations(d.size()) {
        let mut exps = vec![0u32; alg.len()];
        for (p, &s) in sigma.iter().enumerate() {
            let g = GeneratorId::new(d.rows[p], d.cols[s]);
            exps[alg.require(g)?] += 1;
        }
        out = out.try_add(&NcPolynomial::monomial(alg, PbwMonomial::new(exps), minus_q_pow(inv)))?;
    }
    Ok(out)
}

fn check_nr(n: u32, r: u32) -> Result<()> {
    if r == 0 || r > n {
        Err(Error::Precondition(format!("need 1 <= r <= n, got n={n}, r={r}")))
    } else {
        Ok(())
    }
}

fn in_range(k: i64, min: i64, max: i64) -> Result<()> {
    if k < min || k > max {
        Err(Error::IndexOutOfRange { index: k, min, max })
    } else {
        Ok(())
    }
}

/// `theta_k`: the `r x r` minor on rows `1..r` starting at column `k` while it
/// fits, then the shrinking top-right corner on rows `1..n-k+1`, columns
/// `k..n`.
pub fn theta(k: u32, n: u32, r: u32) -> Result<MinorDescriptor> {
    check_nr(n, r)?;
    in_range(i64::from(k), 1, i64::from(n))?;
    Ok(if k > n + 1 - r {
        MinorDescriptor::block(1, n - k + 1, k, n)
    } else {
        MinorDescriptor::block(1, r, k, k + r - 1)
    })
}

/// `theta` with rows and columns interchanged.
pub fn theta_tilde(t: u32, n: u32, r: u32) -> Result<MinorDescriptor> {
    Ok(theta(t, n, r)?.transpose())
}

/// `Psi_t` for the `n x r` rectangle, `1 - r <= t <= n`: shrinking top-right
/// minors for `t <= 0` (empty at `t = 1 - r`), `r x r` row windows for
/// `1 <= t <= n - r + 1`, shrinking bottom-left minors after that.
pub fn psi(t: i64, n: u32, r: u32) -> Result<MinorDescriptor> {
    check_nr(n, r)?;
    let (n64, r64) = (i64::from(n), i64::from(r));
    in_range(t, 1 - r64, n64)?;
    if t == 1 - r64 {
        return Ok(MinorDescriptor::empty());
    }
    let d = if t <= 0 {
        let j = (2 - t) as u32;
        MinorDescriptor::block(1, r - j + 1, j, r)
    } else if t <= n64 - r64 + 1 {
        let t = t as u32;
        MinorDescriptor::block(t, t + r - 1, 1, r)
    } else {
        let k = (n64 - t + 1) as u32;
        MinorDescriptor::block(n - k + 1, n, 1, k)
    };
    Ok(d)
}

/// Integer matrix of exponents on the generator grid, 1-based access.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
    modulus: Option<u64>,
}

impl ExponentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols], modulus: None }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, actual: bad.len() });
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect(), modulus: None })
    }

    /// Attaches `m` and reduces every entry into `0..m`.
    pub fn with_modulus(mut self, m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        for e in &mut self.entries {
            *e = e.rem_euclid(m as i64);
        }
        self.modulus = Some(m);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        self.entries[(i - 1) * self.cols + (j - 1)] += v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                out.add_at(j, i, self.get(i, j));
            }
        }
        out.modulus = self.modulus;
        out
    }

    /// Entries at the algebra's generators, in PBW order. Fails if a nonzero
    /// entry sits outside the generator set.
    pub fn vectorize(&self, alg: &AlgebraDescriptor) -> Result<Vec<i64>> {
        let (rows, cols) = alg.shape();
        if (rows, cols) != (self.rows, self.cols) {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: self.rows * self.cols });
        }
        for i in 1..=rows {
            for j in 1..=cols {
                let g = GeneratorId::new(i as u32, j as u32);
                if self.get(i, j) != 0 && !alg.contains(g) {
                    return Err(Error::GeneratorOutsideAlgebra(g));
                }
            }
        }
        Ok(alg.generators().iter().map(|g| self.get(g.row as usize, g.col as usize)).collect())
    }

    pub fn from_vector(alg: &AlgebraDescriptor, v: &[i64]) -> Result<Self> {
        if v.len() != alg.len() {
            return Err(Error::DimensionMismatch { expected: alg.len(), actual: v.len() });
        }
        let (rows, cols) = alg.shape();
        let mut out = Self::zeros(rows, cols);
        for (g, &x) in alg.generators().iter().zip(v) {
            out.add_at(g.row as usize, g.col as usize, x);
        }
        Ok(out)
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A formal product of minor powers. Exponents may be negative; at a root
/// of unity of order `m` the power `-k` is realised as `(m - 1) * k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCandidate {
    pub label: String,
    /// Shape of the ambient generator grid.
    pub shape: (usize, usize),
    pub factors: Vec<(MinorDescriptor, i64)>,
}

impl CentralCandidate {
    pub fn realized_power(exponent: i64, m: u64) -> u64 {
        if exponent >= 0 {
            exponent as u64
        } else {
            (m - 1) * exponent.unsigned_abs()
        }
    }

    pub fn has_negative_powers(&self) -> bool {
        self.factors.iter().any(|(_, e)| *e < 0)
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(d, e)| if *e == 1 { d.to_string() } else { format!("{d}^{e}") })
            .collect::<Vec<_>>()
            .join(" * ")
    }

    fn from_entries(label: String, shape: (usize, usize), entries: &ExponentMatrix) -> Self {
        let mut factors = Vec::new();
        for i in 1..=entries.rows() {
            for j in 1..=entries.cols() {
                let e = entries.get(i, j);
                if e != 0 {
                    factors.push((MinorDescriptor::block(i as u32, i as u32, j as u32, j as u32), e));
                }
            }
        }
        Self { label, shape, factors }
    }
}

/// Sum of the diagonal exponent matrices weighted by the factor exponents,
/// reduced mod `m` when one is given.
pub fn leading_exponent(c: &CentralCandidate, m: Option<u64>) -> ExponentMatrix {
    let mut out = ExponentMatrix::zeros(c.shape.0, c.shape.1);
    for (d, e) in &c.factors {
        let e = match m {
            Some(m) => CentralCandidate::realized_power(*e, m) as i64,
            None => *e,
        };
        for g in d.diagonal() {
            out.add_at(g.row as usize, g.col as usize, e);
        }
    }
    match m {
        Some(m) => out.with_modulus(m),
        None => out,
    }
}

/// Exponent `e` with `Z_{a,b} D = q^e D Z_{a,b}` for a minor on contiguous
/// rows and columns, per generator:
/// a shared row contributes `+1` if `b` lies left of `J`, `-1` if right;
/// a shared column contributes `+1` if `a` lies above `I`, `-1` if below.
pub fn covariance_exponents_structural(d: &MinorDescriptor, alg: &AlgebraDescriptor) -> Result<ExponentMatrix> {
    d.check_inside(alg)?;
    if !d.contiguous() {
        return Err(Error::InvalidMinor(format!("{d} is not a contiguous block")));
    }
    let (rows, cols) = alg.shape();
    let mut out = ExponentMatrix::zeros(rows, cols);
    if d.is_empty() {
        return Ok(out);
    }
    let (i0, i1) = (d.rows[0], *d.rows.last().unwrap());
    let (j0, j1) = (d.cols[0], *d.cols.last().unwrap());
    for g in alg.generators() {
        let (a, b) = (g.row, g.col);
        let in_i = (i0..=i1).contains(&a);
        let in_j = (j0..=j1).contains(&b);
        let side = |x: u32, lo: u32| if x < lo { 1 } else { -1 };
        let e = match (in_i, in_j) {
            (true, false) => side(b, j0),
            (false, true) => side(a, i0),
            _ => 0,
        };
        out.add_at(a as usize, b as usize, e);
    }
    Ok(out)
}

/// First generator against which the structural exponents of the factors do
/// not cancel (mod `m` when given).
pub fn structural_balance(c: &CentralCandidate, alg: &AlgebraDescriptor, m: Option<u64>) -> Result<Option<GeneratorId>> {
    let (rows, cols) = alg.shape();
    let mut total = ExponentMatrix::zeros(rows, cols);
    for (d, e) in &c.factors {
        let s = covariance_exponents_structural(d, alg)?;
        for g in alg.generators() {
            let (i, j) = (g.row as usize, g.col as usize);
            total.add_at(i, j, e * s.get(i, j));
        }
    }
    Ok(alg.generators().iter().copied().find(|g| {
        let v = total.get(g.row as usize, g.col as usize);
        match m {
            Some(m) => v.rem_euclid(m as i64) != 0,
            None => v != 0,
        }
    }))
}

/// The product itself, with negative powers realised at order `m`.
pub fn expand_candidate(c: &CentralCandidate, alg: &Arc<AlgebraDescriptor>, m: Option<u64>) -> Result<NcPolynomial> {
    if m.is_none() && c.has_negative_powers() {
        return Err(Error::Precondition("negative powers need a modulus".into()));
    }
    let mut acc = NcPolynomial::one(alg);
    for (d, e) in &c.factors {
        let power = match m {
            Some(m) => CentralCandidate::realized_power(*e, m),
            None => *e as u64,
        };
        acc = acc.multiply(&quantum_minor(d, alg)?.pow(power))?;
    }
    Ok(acc)
}

/// `gcd(n, r)` together with the quotients `n / s` and `r / s`.
pub fn gcd_quotients(n: u32, r: u32) -> (u32, u32, u32) {
    let s = n.gcd(&r);
    (s, n / s, r / s)
}

/// `Z_a = prod_{l = -r/s}^{n/s - 1} Psi_{a + l s}^{(-1)^l}` on the `n x r`
/// rectangle.
pub fn candidate_za(a: u32, n: u32, r: u32) -> Result<CentralCandidate> {
    check_nr(n, r)?;
    let (s, quotient_n, quotient_r) = gcd_quotients(n, r);
    if quotient_n % 2 == 0 || quotient_r % 2 == 0 {
        return Err(Error::Precondition(format!(
            "n/s = {quotient_n} and r/s = {quotient_r} must both be odd"
        )));
    }
    in_range(i64::from(a), 1, i64::from(s))?;
    let mut factors = Vec::new();
    for l in -i64::from(quotient_r)..i64::from(quotient_n) {
        let d = psi(i64::from(a) + l * i64::from(s), n, r)?;
        if !d.is_empty() {
            factors.push((d, if l.rem_euclid(2) == 0 { 1 } else { -1 }));
        }
    }
    Ok(CentralCandidate { label: format!("Z_{a}"), shape: (n as usize, r as usize), factors })
}

/// Every `Z_a`, or nothing when a quotient is even.
pub fn candidates_za(n: u32, r: u32) -> Result<Vec<CentralCandidate>> {
    check_nr(n, r)?;
    let (s, quotient_n, quotient_r) = gcd_quotients(n, r);
    if quotient_n % 2 == 0 || quotient_r % 2 == 0 {
        return Ok(Vec::new());
    }
    (1..=s).map(|a| candidate_za(a, n, r)).collect()
}

/// `theta_u` for `u >= 1` and `theta~_{2-u}` for `u <= 1`.
fn phi(u: i64, n: u32, r: u32) -> Result<MinorDescriptor> {
    if u >= 1 {
        theta(u as u32, n, r)
    } else {
        theta_tilde((2 - u) as u32, n, r)
    }
}

/// `r` candidates for the hook `A(n, r)`, one family per range of `n`:
/// `n = r`, `r < n <= 2r`, `2r < n <= 3r`, and the alternating recipe beyond.
pub fn candidates_theta_chain(n: u32, r: u32) -> Result<Vec<CentralCandidate>> {
    check_nr(n, r)?;
    let shape = (n as usize, n as usize);
    let t = |k: u32| theta(k, n, r);
    let tt = |k: u32| theta_tilde(k, n, r);
    let mk = |label: String, factors: Vec<(MinorDescriptor, i64)>| CentralCandidate { label, shape, factors };
    let mut out = Vec::new();
    if n == r {
        out.push(mk("c_1".into(), vec![(t(1)?, 1)]));
        for i in 1..n {
            out.push(mk(format!("c_{}", i + 1), vec![(tt(n + 1 - i)?, 1), (t(i + 1)?, -1)]));
        }
    } else if n <= 2 * r {
        for j in n - r - 1..r {
            out.push(mk(format!("c_{}", j + 1), vec![(t(n - j)?, 1), (tt(j + 2)?, -1)]));
        }
        for j in r + 2..=n {
            out.push(mk(
                format!("c_{j}"),
                vec![(t(1)?, 1), (t(j)?, 1), (tt(n - j + 2)?, -1), (t(j - r)?, -1), (tt(n - j + r + 2)?, 1)],
            ));
        }
    } else if n <= 3 * r {
        for j in n - r + 1..=2 * r + 1 {
            out.push(mk(
                format!("c_{j}"),
                vec![(t(j)?, 1), (t(j - r)?, -1), (t(1)?, 1), (tt(n - j + 2)?, -1), (tt(n - j + 2 + r)?, 1)],
            ));
        }
        for j in (2 * r + 2).max(n - r + 1)..=n {
            out.push(mk(
                format!("c_{j}"),
                vec![
                    (t(j)?, 1),
                    (t(j - r)?, -1),
                    (t(j - 2 * r)?, 1),
                    (tt(n - j + 2)?, -1),
                    (tt(n - j + 2 + r)?, 1),
                    (tt(n - j + 2 + 2 * r)?, -1),
                ],
            ));
        }
    } else {
        let (n64, r64) = (i64::from(n), i64::from(r));
        for j in n - r + 1..=n {
            let j64 = i64::from(j);
            let layers = (j64 - 2).div_euclid(r64) + 1;
            let mut factors = Vec::new();
            for k in 0..layers {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                factors.push((phi(j64 - k * r64, n, r)?, sign));
                factors.push((phi(j64 - n64 - k * r64, n, r)?, -sign));
            }
            if layers % 2 == 0 {
                factors.push((t(1)?, 1));
            }
            out.push(mk(format!("c_{j}"), factors));
        }
    }
    Ok(out)
}

/// Monomials with all exponents `m/2`: the four corners of every
/// sub-rectangle, and, when `n + r` is even, the hook through row 1 and
/// column 1 (with `Z_{1,1}` exactly when `n` is odd).
pub fn candidates_even_m(n: u32, r: u32, m: u64) -> Result<Vec<CentralCandidate>> {
    if n == 0 || r == 0 {
        return Err(Error::Precondition("need n, r >= 1".into()));
    }
    if !m.is_multiple_of(2) || m == 0 {
        return Err(Error::Precondition(format!("m must be even, got {m}")));
    }
    let half = (m / 2) as i64;
    let shape = (n as usize, r as usize);
    let mut out = Vec::new();
    for k in 1..=n {
        for l in k + 1..=n {
            for i in 1..=r {
                for j in i + 1..=r {
                    let mut a = ExponentMatrix::zeros(n as usize, r as usize);
                    for (x, y) in [(k, i), (k, j), (l, i), (l, j)] {
                        a.add_at(x as usize, y as usize, half);
                    }
                    out.push(CentralCandidate::from_entries(format!("corners({k},{l};{i},{j})"), shape, &a));
                }
            }
        }
    }
    if (n + r).is_multiple_of(2) {
        let mut a = ExponentMatrix::zeros(n as usize, r as usize);
        for i in 2..=n {
            a.add_at(i as usize, 1, half);
        }
        for j in 2..=r {
            a.add_at(1, j as usize, half);
        }
        if n % 2 == 1 {
            a.add_at(1, 1, half);
        }
        out.push(CentralCandidate::from_entries("hook".into(), shape, &a));
    }
    Ok(out)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn quarter_pre(n: u32, r: u32, m: u64) -> Result<u32> {
    if r.is_multiple_of(2) || !is_prime(r) {
        return Err(Error::Precondition(format!("r must be an odd prime, got {r}")));
    }
    if !n.is_multiple_of(r) || !(n / r).is_multiple_of(2) || n == 0 {
        return Err(Error::Precondition(format!("n must be an even multiple of r, got n={n}, r={r}")));
    }
    if !m.is_multiple_of(4) || m == 0 {
        return Err(Error::Precondition(format!("m must be divisible by 4, got {m}")));
    }
    Ok(n / r)
}

/// `A_1 + A_2` on the `r x n` grid with a single extra `m/4` at `corner`.
pub(crate) fn quarter_with_corner(n: u32, r: u32, m: u64, corner: (u32, u32)) -> Result<ExponentMatrix> {
    let z = quarter_pre(n, r, m)?;
    let (quarter, half) = ((m / 4) as i64, (m / 2) as i64);
    let mut a = ExponentMatrix::zeros(r as usize, n as usize);
    a.add_at(corner.0 as usize, corner.1 as usize, quarter);
    for i in 1..=r {
        for j in 0..z {
            for e in 0..=1 {
                let c = i + j * r + e;
                if c <= z * r {
                    a.add_at(i as usize, c as usize, quarter);
                }
            }
        }
    }
    for i in 1..=r {
        a.add_at(i as usize, 1, half);
    }
    for j in 1..z {
        a.add_at(r as usize, (1 + j * r) as usize, half);
    }
    Ok(a.with_modulus(m))
}

/// The quarter-exponent central monomial for `r` an odd prime, `n = z r`
/// with `z` even and `4 | m`, laid out on the `r x n` grid: `m/4` on the
/// two staircase diagonals `(i, i + j r)`, `(i, i + j r + 1)` and at
/// `(r, 1)`, plus `m/2` down column 1 and at `(r, 1 + j r)`.
pub fn quarter_exponents(n: u32, r: u32, m: u64) -> Result<ExponentMatrix> {
    quarter_with_corner(n, r, m, (r, 1))
}

/// [`quarter_exponents`] transposed onto `M_q(n, r)`; transposition maps
/// `M_q(r, n)` onto `M_q(n, r)` and preserves the defining matrix.
pub fn candidate_quarter(n: u32, r: u32, m: u64) -> Result<CentralCandidate> {
    let a = quarter_exponents(n, r, m)?.transpose();
    Ok(CentralCandidate::from_entries("quarter".into(), (n as usize, r as usize), &a))
}
