//! Positive roots of C_n, orthogonal subsets and the support of an involution.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{reflection, Involution, SignedPermutation};

/// A positive root of C_n. Indices are 1-based and `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Root {
    /// ε_i − ε_j
    Diff(usize, usize),
    /// ε_i + ε_j
    Sum(usize, usize),
    /// 2ε_i
    Long(usize),
}

impl Root {
    pub fn diff(i: usize, j: usize) -> Result<Self> {
        let r = Root::Diff(i, j);
        r.check_shape()?;
        Ok(r)
    }

    pub fn sum(i: usize, j: usize) -> Result<Self> {
        let r = Root::Sum(i, j);
        r.check_shape()?;
        Ok(r)
    }

    pub fn long(i: usize) -> Result<Self> {
        let r = Root::Long(i);
        r.check_shape()?;
        Ok(r)
    }

    fn check_shape(&self) -> Result<()> {
        let ok = match *self {
            Root::Diff(i, j) | Root::Sum(i, j) => i >= 1 && i < j,
            Root::Long(i) => i >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRoot(self.to_string()))
        }
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        self.check_shape()?;
        if self.max_index() > n {
            return Err(Error::InvalidRoot(format!("{self} in rank {n}")));
        }
        Ok(())
    }

    pub fn max_index(&self) -> usize {
        match *self {
            Root::Diff(_, j) | Root::Sum(_, j) => j,
            Root::Long(i) => i,
        }
    }

    /// The index `i` such that this root involves ε_i with the smallest index.
    pub fn first_index(&self) -> usize {
        match *self {
            Root::Diff(i, _) | Root::Sum(i, _) | Root::Long(i) => i,
        }
    }

    pub fn is_long(&self) -> bool {
        matches!(self, Root::Long(_))
    }

    /// All n² positive roots, in the derived order (differences, sums, long).
    pub fn positive_roots(n: usize) -> Vec<Root> {
        let mut roots = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in i + 1..=n {
                roots.push(Root::Diff(i, j));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                roots.push(Root::Sum(i, j));
            }
        }
        roots.extend((1..=n).map(Root::Long));
        roots
    }

    fn coords(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match *self {
            Root::Diff(i, j) => {
                v[i - 1] += 1;
                v[j - 1] -= 1;
            }
            Root::Sum(i, j) => {
                v[i - 1] += 1;
                v[j - 1] += 1;
            }
            Root::Long(i) => v[i - 1] += 2,
        }
        v
    }

    fn from_coords(v: &[i64]) -> Option<Root> {
        let nz: Vec<(usize, i64)> =
            v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k + 1, c)).collect();
        match nz.as_slice() {
            [(i, 2)] => Some(Root::Long(*i)),
            [(i, 1), (j, -1)] => Some(Root::Diff(*i, *j)),
            [(i, 1), (j, 1)] => Some(Root::Sum(*i, *j)),
            _ => None,
        }
    }
}

/// Standard inner product of the ε-coordinates.
pub fn inner(alpha: Root, beta: Root) -> i64 {
    let n = alpha.max_index().max(beta.max_index());
    alpha.coords(n).iter().zip(beta.coords(n)).map(|(a, b)| a * b).sum()
}

/// `α − β` when it is again a positive root.
pub fn positive_difference(alpha: Root, beta: Root) -> Option<Root> {
    let n = alpha.max_index().max(beta.max_index());
    let d: Vec<i64> = alpha.coords(n).iter().zip(beta.coords(n)).map(|(a, b)| a - b).collect();
    Root::from_coords(&d)
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Root::Diff(i, j) => write!(f, "e{i}-e{j}"),
            Root::Sum(i, j) => write!(f, "e{i}+e{j}"),
            Root::Long(i) => write!(f, "2e{i}"),
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRoot(s.to_string());
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("2e") {
            return Root::long(rest.parse().map_err(|_| bad())?);
        }
        let rest = s.strip_prefix('e').ok_or_else(bad)?;
        let (sep, pos) = rest.char_indices().find(|(_, c)| *c == '-' || *c == '+').ok_or_else(bad)?;
        let i: usize = rest[..sep].parse().map_err(|_| bad())?;
        let j: usize = rest[sep + 1..].strip_prefix('e').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        match pos {
            '-' => Root::diff(i, j),
            _ => Root::sum(i, j),
        }
    }
}

impl TryFrom<String> for Root {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Root> for String {
    fn from(r: Root) -> String {
        r.to_string()
    }
}

/// A set of pairwise orthogonal positive roots.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Root>", into = "Vec<Root>")]
pub struct OrthogonalSet(BTreeSet<Root>);

impl OrthogonalSet {
    pub fn new(roots: impl IntoIterator<Item = Root>) -> Result<Self> {
        let set: BTreeSet<Root> = roots.into_iter().collect();
        for a in &set {
            a.check_shape()?;
            for b in &set {
                if a < b && inner(*a, *b) != 0 {
                    return Err(Error::NotOrthogonal(*a, *b));
                }
            }
        }
        Ok(Self(set))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Root> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.0.contains(r)
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(Root::max_index).max().unwrap_or(0)
    }

    /// No two members differ by a positive root.
    pub fn is_difference_free(&self) -> bool {
        self.0.iter().all(|&a| self.0.iter().all(|&b| positive_difference(a, b).is_none()))
    }

    /// Replace every pair {ε_i−ε_j, ε_i+ε_j} by {2ε_i, 2ε_j}.
    pub fn normalized(&self) -> Self {
        let mut out = BTreeSet::new();
        for &r in &self.0 {
            match r {
                Root::Diff(i, j) if self.0.contains(&Root::Sum(i, j)) => {
                    out.insert(Root::Long(i));
                    out.insert(Root::Long(j));
                }
                Root::Sum(i, j) if self.0.contains(&Root::Diff(i, j)) => {}
                other => {
                    out.insert(other);
                }
            }
        }
        Self(out)
    }
}

impl TryFrom<Vec<Root>> for OrthogonalSet {
    type Error = Error;

    fn try_from(v: Vec<Root>) -> Result<Self> {
        OrthogonalSet::new(v)
    }
}

impl From<OrthogonalSet> for Vec<Root> {
    fn from(s: OrthogonalSet) -> Vec<Root> {
        s.0.into_iter().collect()
    }
}

impl fmt::Display for OrthogonalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Root::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The support of an involution with the involution it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub set: OrthogonalSet,
    pub owner: Involution,
}

impl Support {
    /// Both defining properties: the product of reflections is the owner and
    /// no two roots differ by a positive root.
    pub fn is_valid(&self) -> bool {
        self.set.is_difference_free()
            && involution_from_orthogonal_set(self.owner.n(), &self.set)
                .map(|s| s == self.owner)
                .unwrap_or(false)
    }
}

/// Read the support off the cycles of σ on {±1..±n}.
pub fn support(sigma: &SignedPermutation) -> Result<Support> {
    let owner = Involution::try_from(sigma.clone())?;
    let n = sigma.n();
    let mut roots = BTreeSet::new();
    for i in 1..=n {
        let v = sigma.apply(i as i32);
        if v == -(i as i32) {
            roots.insert(Root::Long(i));
        } else if v > i as i32 {
            roots.insert(Root::Diff(i, v as usize));
        } else if v < 0 && (-v) as usize > i {
            roots.insert(Root::Sum(i, (-v) as usize));
        }
    }
    Ok(Support { set: OrthogonalSet(roots), owner })
}

/// The product of the reflections in `set`, as an involution of rank `n`.
pub fn involution_from_orthogonal_set(n: usize, set: &OrthogonalSet) -> Result<Involution> {
    let mut forward = SignedPermutation::identity(n);
    for &r in set.iter() {
        forward = forward.compose(&reflection(r, n)?)?;
    }
    let mut reversed = SignedPermutation::identity(n);
    for &r in set.iter().rev() {
        reversed = reversed.compose(&reflection(r, n)?)?;
    }
    assert_eq!(forward, reversed, "orthogonal reflections must commute");
    Involution::try_from(forward)
}
