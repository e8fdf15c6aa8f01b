//! Rook placements, South-West rank matrices and the orders they define on
//! involutions, compared against the Bruhat order.
//!
//! Rows and columns use display positions: `1, …, n, −n, …, −1` in type C
//! and `1, …, n` in type A. Row 0 is the top row and column 0 the left one,
//! so "South-West of (p, q)" means rows `p..` and columns `..=q`.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{index_at, position_of, Matrix};
use crate::perm::{enumerate_involutions, BruhatPoset, Involution, SignedPermutation, WeylType};
use crate::scalar::{int, Rational};

/// A permutation matrix drawn as rooks, stored as the column of the rook in
/// each row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RookPlacement {
    ty: WeylType,
    n: usize,
    cols: Vec<usize>,
}

impl RookPlacement {
    /// A placement from an explicit 0–1 grid.
    pub fn from_grid(ty: WeylType, n: usize, grid: &[Vec<u8>]) -> Result<Self> {
        let size = grid_size(ty, n);
        if grid.len() != size || grid.iter().any(|r| r.len() != size) {
            return Err(Error::SizeMismatch(grid.len(), size));
        }
        let mut cols = Vec::with_capacity(size);
        for (p, row) in grid.iter().enumerate() {
            if row.iter().any(|&x| x > 1) {
                return Err(Error::InvalidPlacement(format!("row {p} has an entry other than 0 or 1")));
            }
            let ones: Vec<usize> = (0..size).filter(|&q| row[q] == 1).collect();
            match ones.as_slice() {
                [q] => cols.push(*q),
                _ => return Err(Error::InvalidPlacement(format!("row {p} has {} rooks", ones.len()))),
            }
        }
        let mut seen = vec![false; size];
        for &q in &cols {
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidPlacement(format!("column {q} has several rooks")));
            }
        }
        if ty == WeylType::C && (0..size).any(|p| cols[size - 1 - p] != size - 1 - cols[p]) {
            return Err(Error::InvalidPlacement("not centrally symmetric".into()));
        }
        Ok(Self { ty, n, cols })
    }

    pub fn weyl_type(&self) -> WeylType {
        self.ty
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    /// Column position of the rook in row position `p`.
    pub fn col_of(&self, p: usize) -> usize {
        self.cols[p]
    }

    pub fn grid(&self) -> Vec<Vec<u8>> {
        let m = self.size();
        (0..m).map(|p| (0..m).map(|q| u8::from(self.cols[p] == q)).collect()).collect()
    }

    /// Row label of a display position.
    pub fn label(&self, p: usize) -> i32 {
        match self.ty {
            WeylType::C => index_at(self.n, p),
            WeylType::A => p as i32 + 1,
        }
    }

    /// Rooks as `(row, column)` in signed labels, top to bottom.
    pub fn rooks(&self) -> Vec<(i32, i32)> {
        (0..self.size()).map(|p| (self.label(p), self.label(self.cols[p]))).collect()
    }
}

fn grid_size(ty: WeylType, n: usize) -> usize {
    match ty {
        WeylType::C => 2 * n,
        WeylType::A => n,
    }
}

/// `X_σ` with `(X_σ)_{i,j} = 1` iff `σ(i) = j`. In type A the element must
/// be unsigned.
pub fn rook_placement(sigma: &SignedPermutation, ty: WeylType) -> Result<RookPlacement> {
    let n = sigma.n();
    let cols = match ty {
        WeylType::C => (0..2 * n).map(|p| position_of(n, sigma.apply(index_at(n, p)))).collect(),
        WeylType::A => {
            if !sigma.is_unsigned() {
                return Err(Error::UnsupportedType(format!("{sigma} is not in S_{n}")));
            }
            sigma.images().iter().map(|&x| x as usize - 1).collect()
        }
    };
    Ok(RookPlacement { ty, n, cols })
}

/// `R_{p,q}` = rooks weakly South-West of box `(p, q)`, and `R*` its
/// strictly lower part (entries with `p ≤ q` set to zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankMatrix {
    pub r: Vec<Vec<u32>>,
    pub rstar: Vec<Vec<u32>>,
}

impl RankMatrix {
    pub fn size(&self) -> usize {
        self.r.len()
    }
}

fn sw_counts(p: &RookPlacement) -> Vec<Vec<u32>> {
    let m = p.size();
    let mut r = vec![vec![0u32; m]; m + 1];
    for row in (0..m).rev() {
        for col in 0..m {
            let left = if col > 0 { r[row][col - 1] } else { 0 };
            let below = r[row + 1][col];
            let below_left = if col > 0 { r[row + 1][col - 1] } else { 0 };
            r[row][col] = below + left - below_left + u32::from(p.cols[row] == col);
        }
    }
    r.truncate(m);
    r
}

fn strictly_lower(r: &[Vec<u32>]) -> Vec<Vec<u32>> {
    r.iter()
        .enumerate()
        .map(|(p, row)| row.iter().enumerate().map(|(q, &x)| if p > q { x } else { 0 }).collect())
        .collect()
}

/// Computes R twice, as the rank of each South-West submatrix and as a
/// direct rook count, and fails if the two disagree anywhere.
pub fn rank_matrix(p: &RookPlacement) -> Result<RankMatrix> {
    let r = sw_counts(p);
    let grid = Matrix::from_rows(
        p.grid().into_iter().map(|row| row.into_iter().map(|x| int(x as i64)).collect()).collect(),
    )?;
    check_against_ranks(&grid, &r)?;
    Ok(RankMatrix { rstar: strictly_lower(&r), r })
}

fn check_against_ranks(grid: &Matrix<Rational>, r: &[Vec<u32>]) -> Result<()> {
    let m = r.len();
    for row in 0..m {
        for col in 0..m {
            let rank = grid.lower_left(row, col + 1).rank();
            let count = r[row][col] as usize;
            if rank != count {
                return Err(Error::RankDefinitionMismatch { row, col, rank, count });
            }
        }
    }
    Ok(())
}

/// R from the rook count alone, for bulk comparisons once the two
/// definitions have been checked to agree.
pub fn rank_matrix_counted(p: &RookPlacement) -> RankMatrix {
    let r = sw_counts(p);
    RankMatrix { rstar: strictly_lower(&r), r }
}

fn entrywise_leq(a: &[Vec<u32>], b: &[Vec<u32>]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).all(|(x, y)| x.iter().zip(y).all(|(u, v)| u <= v)))
}

/// `R_σ ≤ R_τ` entrywise.
pub fn leq_r(sigma: &RankMatrix, tau: &RankMatrix) -> Result<bool> {
    entrywise_leq(&sigma.r, &tau.r)
}

/// `R*_σ ≤ R*_τ` entrywise.
pub fn leq_rstar(sigma: &RankMatrix, tau: &RankMatrix) -> Result<bool> {
    entrywise_leq(&sigma.rstar, &tau.rstar)
}

/// One row of the all-pairs table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRow {
    pub sigma: Involution,
    pub tau: Involution,
    pub bruhat: bool,
    pub leq_r: bool,
    pub leq_rstar: bool,
}

impl PairRow {
    pub fn agrees(&self) -> bool {
        self.bruhat == self.leq_r && self.bruhat == self.leq_rstar
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub mode: WeylType,
    pub involutions: usize,
    pub pairs: usize,
    /// Both definitions of R agree on every involution.
    pub rank_definitions_agree: bool,
    /// Distinct involutions have distinct R*.
    pub rstar_injective: bool,
    pub counterexamples: Vec<PairRow>,
    #[serde(skip)]
    pub rows: Vec<PairRow>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.rank_definitions_agree && self.rstar_injective && self.counterexamples.is_empty()
    }

    /// `sigma,tau,bruhat,leq_r,leq_rstar`, one line per pair.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sigma,tau,bruhat,leq_r,leq_rstar\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "\"{}\",\"{}\",{},{},{}",
                row.sigma, row.tau, row.bruhat, row.leq_r, row.leq_rstar
            );
        }
        out
    }
}

/// Compare the Bruhat order with `≤_R` and `≤*` on every pair of involutions.
pub fn verify_equivalences(n: usize, mode: WeylType, max_n: usize) -> Result<EquivalenceReport> {
    let poset = InvolutionPoset::build(n, mode, max_n)?;
    let placements = poset
        .elements
        .iter()
        .map(|s| rook_placement(s, mode))
        .collect::<Result<Vec<_>>>()?;
    let checked: Vec<Result<RankMatrix>> = placements.par_iter().map(rank_matrix).collect();
    let rank_definitions_agree = checked.iter().all(|r| r.is_ok());
    let mats: Vec<RankMatrix> = placements.iter().map(rank_matrix_counted).collect();

    let mut stars: Vec<&Vec<Vec<u32>>> = mats.iter().map(|m| &m.rstar).collect();
    stars.sort();
    stars.dedup();
    let rstar_injective = stars.len() == mats.len();

    let k = poset.len();
    let rows: Vec<PairRow> = (0..k * k)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (idx / k, idx % k);
            PairRow {
                sigma: poset.elements[a].clone(),
                tau: poset.elements[b].clone(),
                bruhat: poset.leq_idx(a, b),
                leq_r: leq_r(&mats[a], &mats[b]).expect("same size"),
                leq_rstar: leq_rstar(&mats[a], &mats[b]).expect("same size"),
            }
        })
        .collect();
    let counterexamples = rows.iter().filter(|r| !r.agrees()).cloned().collect();
    Ok(EquivalenceReport {
        n,
        mode,
        involutions: k,
        pairs: rows.len(),
        rank_definitions_agree,
        rstar_injective,
        counterexamples,
        rows,
    })
}

/// Involutions with the Bruhat order restricted from the whole group, and
/// the covers of that subposet.
#[derive(Clone, Debug)]
pub struct InvolutionPoset {
    n: usize,
    mode: WeylType,
    elements: Vec<Involution>,
    lengths: Vec<usize>,
    /// `below[b]` has bit `a` set iff `elements[a] ≤ elements[b]`.
    below: Vec<Vec<u64>>,
    covers: Vec<(usize, usize)>,
}

fn bit(set: &[u64], a: usize) -> bool {
    set[a / 64] >> (a % 64) & 1 == 1
}

impl InvolutionPoset {
    pub fn build(n: usize, mode: WeylType, max_n: usize) -> Result<Self> {
        let full = BruhatPoset::build(n, mode, max_n)?;
        Self::from_bruhat(&full, max_n)
    }

    pub fn from_bruhat(full: &BruhatPoset, max_n: usize) -> Result<Self> {
        let (n, mode) = (full.n(), full.weyl_type());
        let elements = enumerate_involutions(n, mode, max_n)?;
        let idx = elements.iter().map(|s| full.index_of(s)).collect::<Result<Vec<_>>>()?;
        let lengths = idx.iter().map(|&i| full.length_at(i)).collect();
        let below = full.downsets_within(&idx);
        let k = elements.len();
        let covers = (0..k)
            .into_par_iter()
            .flat_map_iter(|b| {
                let below = &below;
                (0..k).filter_map(move |a| {
                    let strictly = a != b && bit(&below[b], a);
                    let between = (0..k).any(|c| c != a && c != b && bit(&below[c], a) && bit(&below[b], c));
                    (strictly && !between).then_some((a, b))
                })
            })
            .collect::<Vec<_>>();
        let mut covers = covers;
        covers.sort_unstable();
        Ok(Self { n, mode, elements, lengths, below, covers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> WeylType {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Involution] {
        &self.elements
    }

    pub fn length_at(&self, a: usize) -> usize {
        self.lengths[a]
    }

    pub fn index_of(&self, s: &SignedPermutation) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.perm() == s)
            .ok_or_else(|| Error::NotInPoset(s.window()))
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        bit(&self.below[b], a)
    }

    pub fn leq(&self, sigma: &SignedPermutation, tau: &SignedPermutation) -> Result<bool> {
        Ok(self.leq_idx(self.index_of(sigma)?, self.index_of(tau)?))
    }

    /// Pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Whether `a` reaches `b` along upward cover edges.
    pub fn has_saturated_chain(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            if x == b {
                return true;
            }
            for &(lo, hi) in &self.covers {
                if lo == x && !std::mem::replace(&mut seen[hi], true) {
                    stack.push(hi);
                }
            }
        }
        false
    }

    pub fn export_hasse(&self, format: HasseFormat) -> String {
        match format {
            HasseFormat::Dot => self.to_dot(),
            HasseFormat::Json => {
                let doc = HasseJson {
                    n: self.n,
                    mode: self.mode,
                    elements: self
                        .elements
                        .iter()
                        .zip(&self.lengths)
                        .map(|(e, &length)| HasseNode { window: e.window(), length })
                        .collect(),
                    covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
                };
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            }
        }
    }

    fn to_dot(&self) -> String {
        let mut out = format!("digraph hasse_{}{} {{\n  rankdir=BT;\n", self.mode, self.n);
        for (a, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{a} [label=\"{} ({})\"];", e.window(), self.lengths[a]);
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize)]
struct HasseNode {
    window: String,
    length: usize,
}

#[derive(Serialize)]
struct HasseJson {
    n: usize,
    mode: WeylType,
    elements: Vec<HasseNode>,
    covers: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HasseFormat {
    Dot,
    Json,
}

impl FromStr for HasseFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(HasseFormat::Dot),
            "json" => Ok(HasseFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: &str) -> Involution {
        s.parse().unwrap()
    }

    #[test]
    fn identity_placement_n1() {
        let p = rook_placement(&SignedPermutation::identity(1), WeylType::C).unwrap();
        assert_eq!(p.grid(), vec![vec![1, 0], vec![0, 1]]);
        let r = rank_matrix(&p).unwrap();
        // row 1 (top): both rooks are weakly SW of (1, −1)
        assert_eq!(r.r, vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(r.rstar, vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn figure_placement_type_c() {
        let s = inv("[4,-2,3,1]");
        let p = rook_placement(&s, WeylType::C).unwrap();
        assert_eq!(
            p.rooks(),
            vec![(1, 4), (2, -2), (3, 3), (4, 1), (-4, -1), (-3, -3), (-2, 2), (-1, -4)]
        );
        let r = rank_matrix(&p).unwrap();
        assert_eq!(r.r[7][0], 0);
        assert_eq!(r.r[4][3], 1);
    }

    #[test]
    fn grid_validation() {
        let good = vec![vec![0, 1], vec![1, 0]];
        assert!(RookPlacement::from_grid(WeylType::C, 1, &good).is_ok());
        let two = vec![vec![1, 1], vec![0, 0]];
        assert!(RookPlacement::from_grid(WeylType::C, 1, &two).is_err());
        let asym = vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]];
        assert!(RookPlacement::from_grid(WeylType::A, 4, &asym).is_ok());
        assert!(RookPlacement::from_grid(WeylType::C, 2, &asym).is_err());
    }

    #[test]
    fn type_a_requires_unsigned() {
        assert!(rook_placement(&inv("[-1,2]"), WeylType::A).is_err());
    }

    #[test]
    fn identity_is_minimum_and_reflexive() {
        let poset = InvolutionPoset::build(2, WeylType::C, 6).unwrap();
        for a in 0..poset.len() {
            assert!(poset.leq_idx(0, a));
            assert!(poset.leq_idx(a, a));
        }
    }

    #[test]
    fn n1_is_a_chain() {
        let poset = InvolutionPoset::build(1, WeylType::C, 6).unwrap();
        assert_eq!(poset.len(), 2);
        assert_eq!(poset.covers(), &[(0, 1)]);
        let report = verify_equivalences(1, WeylType::C, 6).unwrap();
        assert!(report.passed());
        assert_eq!(report.pairs, 4);
    }

    #[test]
    fn unknown_format() {
        assert_eq!("svg".parse::<HasseFormat>().unwrap_err(), Error::UnknownFormat("svg".into()));
    }

    #[test]
    fn size_mismatch() {
        let a = rank_matrix_counted(&rook_placement(&SignedPermutation::identity(1), WeylType::C).unwrap());
        let b = rank_matrix_counted(&rook_placement(&SignedPermutation::identity(2), WeylType::C).unwrap());
        assert_eq!(leq_r(&a, &b), Err(Error::SizeMismatch(2, 4)));
    }
}
