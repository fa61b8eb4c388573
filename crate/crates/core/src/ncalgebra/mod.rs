//! Presentation of `M_q(n)` and of the subalgebras generated by a subset of
//! the generators `Z_{i,j}`, with PBW normal forms over Laurent coefficients.
//!
//! Generators are ordered row-major lexicographically and that order is also
//! the index order inside every [`AlgebraDescriptor`], so exponent vectors and
//! words of generator indices share one convention.

mod covariance;
pub(crate) mod poly;
mod rewrite;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use covariance::{central_witness, covariance_profile, is_central, Covariance};
pub use poly::{NcPolynomial, PbwMonomial};
pub use rewrite::{normal_form, normal_form_with, relation, rewrite_measure, Measure, Strategy};

/// The generator `Z_{row,col}`, 1-based. The derived order is the PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId {
    pub row: u32,
    pub col: u32,
}

impl GeneratorId {
    pub const fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }
}

/// `Z12` for single-digit indices, `Z10,3` otherwise.
impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row < 10 && self.col < 10 {
            write!(f, "Z{}{}", self.row, self.col)
        } else {
            write!(f, "Z{},{}", self.row, self.col)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AlgebraKind {
    /// The full `n x n` grid.
    Square { n: u32 },
    /// `{1..rows} x {1..cols}`.
    Rectangle { rows: u32, cols: u32 },
    /// The `n x n` grid minus the lower-right block `{r+1..n} x {r+1..n}`.
    Hook { n: u32, r: u32 },
    /// First column of height `n` together with first row of width `r`.
    Cross { n: u32, r: u32 },
    Custom,
}

/// A closed generator subset of the `grid x grid` square.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "DescriptorRepr", try_from = "DescriptorRepr")]
pub struct AlgebraDescriptor {
    grid: u32,
    kind: AlgebraKind,
    gens: Vec<GeneratorId>,
    index: HashMap<GeneratorId, usize>,
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    grid: u32,
    kind: AlgebraKind,
    generators: Vec<GeneratorId>,
}

impl From<AlgebraDescriptor> for DescriptorRepr {
    fn from(a: AlgebraDescriptor) -> Self {
        DescriptorRepr { grid: a.grid, kind: a.kind, generators: a.gens }
    }
}

impl TryFrom<DescriptorRepr> for AlgebraDescriptor {
    type Error = Error;
    fn try_from(r: DescriptorRepr) -> Result<Self> {
        let built = match r.kind {
            AlgebraKind::Square { n } => Self::square(n)?,
            AlgebraKind::Rectangle { rows, cols } => Self::rectangle(rows, cols)?,
            AlgebraKind::Hook { n, r } => Self::hook(n, r)?,
            AlgebraKind::Cross { n, r } => Self::cross(n, r)?,
            AlgebraKind::Custom => Self::custom(r.grid, r.generators.clone())?,
        };
        if built.grid != r.grid || built.gens != r.generators {
            return Err(Error::InvalidAlgebra(
                "generator list does not match the algebra kind".into(),
            ));
        }
        Ok(built)
    }
}

impl PartialEq for AlgebraDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid && self.kind == other.kind && self.gens == other.gens
    }
}

impl Eq for AlgebraDescriptor {}

fn positive(name: &str, v: u32) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidAlgebra(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

impl AlgebraDescriptor {
    fn build(grid: u32, kind: AlgebraKind, mut gens: Vec<GeneratorId>) -> Self {
        gens.sort();
        gens.dedup();
        let index = gens.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        Self { grid, kind, gens, index }
    }

    /// `M_q(n)`.
    pub fn square(n: u32) -> Result<Self> {
        positive("n", n)?;
        let gens = (1..=n).flat_map(|i| (1..=n).map(move |j| GeneratorId::new(i, j))).collect();
        Ok(Self::build(n, AlgebraKind::Square { n }, gens))
    }

    /// `M_q(rows, cols)`: the first `cols` columns of a `rows`-row grid.
    pub fn rectangle(rows: u32, cols: u32) -> Result<Self> {
        positive("rows", rows)?;
        positive("cols", cols)?;
        let gens = (1..=rows)
            .flat_map(|i| (1..=cols).map(move |j| GeneratorId::new(i, j)))
            .collect();
        Ok(Self::build(rows.max(cols), AlgebraKind::Rectangle { rows, cols }, gens))
    }

    /// `A_{n,r}`.
    pub fn hook(n: u32, r: u32) -> Result<Self> {
        positive("n", n)?;
        positive("r", r)?;
        if r > n {
            return Err(Error::InvalidAlgebra(format!("hook needs r <= n, got n={n}, r={r}")));
        }
        let gens = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| GeneratorId::new(i, j)))
            .filter(|g| g.row <= r || g.col <= r)
            .collect();
        Ok(Self::build(n, AlgebraKind::Hook { n, r }, gens))
    }

    /// `S_{n,r}`: `Z_{i,1}` for `i <= n` and `Z_{1,j}` for `j <= r`.
    pub fn cross(n: u32, r: u32) -> Result<Self> {
        positive("n", n)?;
        positive("r", r)?;
        let gens = (1..=n)
            .map(|i| GeneratorId::new(i, 1))
            .chain((2..=r).map(|j| GeneratorId::new(1, j)))
            .collect();
        Ok(Self::build(n.max(r), AlgebraKind::Cross { n, r }, gens))
    }

    /// A user-supplied generator set; rejected unless closed under the
    /// correction term of the diagonal relation.
    pub fn custom(grid: u32, gens: Vec<GeneratorId>) -> Result<Self> {
        positive("grid", grid)?;
        if gens.is_empty() {
            return Err(Error::InvalidAlgebra("empty generator set".into()));
        }
        for g in &gens {
            if g.row == 0 || g.col == 0 || g.row > grid || g.col > grid {
                return Err(Error::GeneratorOutsideAlgebra(*g));
            }
        }
        let alg = Self::build(grid, AlgebraKind::Custom, gens);
        alg.check_closure()?;
        Ok(alg)
    }

    fn check_closure(&self) -> Result<()> {
        for a in &self.gens {
            for b in &self.gens {
                if a.row < b.row && a.col < b.col {
                    for missing in [GeneratorId::new(a.row, b.col), GeneratorId::new(b.row, a.col)] {
                        if !self.contains(missing) {
                            return Err(Error::ClosureViolation { first: *a, second: *b, missing });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> u32 {
        self.grid
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// Generators in PBW order.
    pub fn generators(&self) -> &[GeneratorId] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, g: GeneratorId) -> Option<usize> {
        self.index.get(&g).copied()
    }

    pub fn require(&self, g: GeneratorId) -> Result<usize> {
        self.index_of(g).ok_or(Error::GeneratorOutsideAlgebra(g))
    }

    pub fn contains(&self, g: GeneratorId) -> bool {
        self.index.contains_key(&g)
    }

    /// Rows and columns of the smallest grid holding every generator; the
    /// shape used for exponent matrices.
    pub fn shape(&self) -> (usize, usize) {
        match self.kind {
            AlgebraKind::Rectangle { rows, cols } => (rows as usize, cols as usize),
            AlgebraKind::Cross { n, r } => (n as usize, r as usize),
            _ => (self.grid as usize, self.grid as usize),
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            AlgebraKind::Square { n } => format!("M_q({n})"),
            AlgebraKind::Rectangle { rows, cols } => format!("M_q({rows},{cols})"),
            AlgebraKind::Hook { n, r } => format!("A({n},{r})"),
            AlgebraKind::Cross { n, r } => format!("S({n},{r})"),
            AlgebraKind::Custom => format!("custom[{} of {}x{}]", self.len(), self.grid, self.grid),
        }
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
