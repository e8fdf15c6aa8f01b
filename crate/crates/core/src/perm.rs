//! Signed permutations, the hyperoctahedral group W(C_n) and its S_n subgroup,
//! lengths, reflections and an independent Bruhat-order oracle.
//!
//! An element `w` is stored through its window `[w(1), ..., w(n)]`; the value
//! on negative letters is always `w(-i) = -w(i)` and is never stored.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::Root;

/// Largest rank accepted by enumeration unless overridden.
pub const DEFAULT_MAX_N: usize = 6;

/// Which Weyl group an element or poset lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylType {
    /// Hyperoctahedral group W(C_n) acting on {±1..±n}.
    C,
    /// Symmetric group S_n (type A_{n-1}), windows with positive entries only.
    A,
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylType::C => write!(f, "C"),
            WeylType::A => write!(f, "A"),
        }
    }
}

impl FromStr for WeylType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(WeylType::C),
            "A" | "a" => Ok(WeylType::A),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PermRepr", into = "PermRepr")]
pub struct SignedPermutation {
    images: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    n: usize,
    images: Vec<i32>,
}

impl TryFrom<PermRepr> for SignedPermutation {
    type Error = Error;

    fn try_from(r: PermRepr) -> Result<Self> {
        if r.images.len() != r.n {
            return Err(Error::InvalidPermutation {
                images: r.images,
                reason: format!("expected {} images", r.n),
            });
        }
        SignedPermutation::new(r.images)
    }
}

impl From<SignedPermutation> for PermRepr {
    fn from(p: SignedPermutation) -> Self {
        PermRepr { n: p.n(), images: p.images }
    }
}

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n {
                return Err(Error::InvalidPermutation {
                    images,
                    reason: format!("image {v} outside ±1..±{n}"),
                });
            }
            if seen[a - 1] {
                return Err(Error::InvalidPermutation {
                    images,
                    reason: format!("|{v}| repeated"),
                });
            }
            seen[a - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n as i32).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// `w(i)` for a signed letter `i ∈ {±1..±n}`.
    pub fn apply(&self, i: i32) -> i32 {
        debug_assert!(i != 0 && i.unsigned_abs() as usize <= self.n());
        if i > 0 {
            self.images[i as usize - 1]
        } else {
            -self.images[(-i) as usize - 1]
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch { left: self.n(), right: other.n() });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&v| self.apply(v)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            let src = i as i32 + 1;
            if v > 0 {
                images[v as usize - 1] = src;
            } else {
                images[(-v) as usize - 1] = -src;
            }
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.compose_unchecked(self).is_identity()
    }

    /// True if the element lies in the S_n subgroup (no sign changes).
    pub fn is_unsigned(&self) -> bool {
        self.images.iter().all(|&v| v > 0)
    }

    pub fn belongs_to(&self, ty: WeylType) -> bool {
        match ty {
            WeylType::C => true,
            WeylType::A => self.is_unsigned(),
        }
    }

    /// Coxeter length with respect to the simple system
    /// {ε1−ε2, …, ε_{n−1}−ε_n, 2ε_n}: the number of positive roots sent to
    /// negative roots.
    ///
    /// A root is encoded by a pair of signed letters `(a, b)` with `a` before
    /// `b` in the order 1 < … < n < −n < … < −1; it is negative under `w`
    /// exactly when `w(a)` comes after `w(b)`.
    pub fn length(&self) -> usize {
        let n = self.n();
        let key = |x: i32| if x > 0 { x } else { 2 * n as i32 + 1 + x };
        let mut count = 0;
        for i in 1..=n as i32 {
            if self.apply(i) < 0 {
                count += 1;
            }
            for j in i + 1..=n as i32 {
                if key(self.apply(i)) > key(self.apply(j)) {
                    count += 1;
                }
                if key(self.apply(i)) > key(self.apply(-j)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Length in S_n: ordinary inversions of the window.
    pub fn length_in(&self, ty: WeylType) -> usize {
        match ty {
            WeylType::C => self.length(),
            WeylType::A => {
                let w = &self.images;
                let mut count = 0;
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[i] > w[j] {
                            count += 1;
                        }
                    }
                }
                count
            }
        }
    }

    /// Window notation, e.g. `[2,-1,3]`.
    pub fn window(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.window())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.window())
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected window notation like [2,-1,3], got {s:?}")))?;
        let images = body
            .split(',')
            .map(|t| t.trim().parse::<i32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }
}

/// The reflection `r_α` as a signed permutation of rank `n`.
pub fn reflection(alpha: Root, n: usize) -> Result<SignedPermutation> {
    alpha.check_rank(n)?;
    let mut images: Vec<i32> = (1..=n as i32).collect();
    match alpha {
        Root::Diff(i, j) => {
            images[i - 1] = j as i32;
            images[j - 1] = i as i32;
        }
        Root::Sum(i, j) => {
            images[i - 1] = -(j as i32);
            images[j - 1] = -(i as i32);
        }
        Root::Long(i) => images[i - 1] = -(i as i32),
    }
    Ok(SignedPermutation { images })
}

/// Simple reflections generating the group, in the order
/// ε1−ε2, …, ε_{n−1}−ε_n and then 2ε_n for type C.
pub fn simple_reflections(n: usize, ty: WeylType) -> Vec<SignedPermutation> {
    simple_roots(n, ty).into_iter().map(|a| reflection(a, n).expect("simple root in range")).collect()
}

pub fn simple_roots(n: usize, ty: WeylType) -> Vec<Root> {
    let mut roots: Vec<Root> = (1..n).map(|i| Root::Diff(i, i + 1)).collect();
    if ty == WeylType::C {
        roots.push(Root::Long(n));
    }
    roots
}

/// All reflections of the group (one per positive root).
pub fn reflections(n: usize, ty: WeylType) -> Vec<SignedPermutation> {
    Root::positive_roots(n)
        .into_iter()
        .filter(|r| ty == WeylType::C || matches!(r, Root::Diff(..)))
        .map(|a| reflection(a, n).expect("positive root in range"))
        .collect()
}

pub fn check_bound(n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if n > max_n {
        return Err(Error::RankBound { n, max_n });
    }
    Ok(())
}

/// Every element of the group, by brute force over permutations and sign
/// vectors. Order: permutations lexicographic, then sign masks ascending.
pub fn all_elements(n: usize, ty: WeylType) -> Vec<SignedPermutation> {
    let mut perms = Vec::new();
    let mut current: Vec<i32> = (1..=n as i32).collect();
    heap_permutations(&mut current, n, &mut perms);
    perms.sort();
    let masks = match ty {
        WeylType::C => 1u32 << n,
        WeylType::A => 1,
    };
    let mut out = Vec::with_capacity(perms.len() * masks as usize);
    for p in &perms {
        for mask in 0..masks {
            let images = p
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                .collect();
            out.push(SignedPermutation { images });
        }
    }
    out
}

fn heap_permutations(a: &mut Vec<i32>, k: usize, out: &mut Vec<Vec<i32>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(a, k - 1, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

/// An element of order at most two. The identity is admitted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SignedPermutation", into = "SignedPermutation")]
pub struct Involution(SignedPermutation);

impl TryFrom<SignedPermutation> for Involution {
    type Error = Error;

    fn try_from(p: SignedPermutation) -> Result<Self> {
        if p.is_involution() {
            Ok(Involution(p))
        } else {
            Err(Error::NotAnInvolution(p.window()))
        }
    }
}

impl From<Involution> for SignedPermutation {
    fn from(s: Involution) -> Self {
        s.0
    }
}

impl std::ops::Deref for Involution {
    type Target = SignedPermutation;

    fn deref(&self) -> &SignedPermutation {
        &self.0
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Involution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<SignedPermutation>()?.try_into()
    }
}

impl Involution {
    pub fn identity(n: usize) -> Self {
        Involution(SignedPermutation::identity(n))
    }

    pub fn perm(&self) -> &SignedPermutation {
        &self.0
    }
}

/// Involutions of the group sorted by `(length, window)`.
pub fn enumerate_involutions(n: usize, ty: WeylType, max_n: usize) -> Result<Vec<Involution>> {
    check_bound(n, max_n)?;
    let mut invs: Vec<Involution> = all_elements(n, ty)
        .into_iter()
        .filter(|w| w.is_involution())
        .map(Involution)
        .collect();
    invs.sort_by(|a, b| {
        (a.length_in(ty), a.images()).cmp(&(b.length_in(ty), b.images()))
    });
    Ok(invs)
}

/// The Bruhat order on the whole group.
///
/// Lengths are BFS distances from the identity in the Cayley graph over the
/// simple reflections. Covers are the pairs `u ⋖ u·r` with `r` any reflection
/// and `l(u·r) = l(u) + 1`; the order is their reflexive-transitive closure.
#[derive(Debug, Clone)]
pub struct BruhatPoset {
    n: usize,
    ty: WeylType,
    elements: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, usize>,
    lengths: Vec<usize>,
    lower: Vec<Vec<u32>>,
    upper: Vec<Vec<u32>>,
}

impl BruhatPoset {
    pub fn build(n: usize, ty: WeylType, max_n: usize) -> Result<Self> {
        check_bound(n, max_n)?;
        let gens = simple_reflections(n, ty);
        let mut elements = vec![SignedPermutation::identity(n)];
        let mut lengths = vec![0usize];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for s in &gens {
                let w = elements[u].compose_unchecked(s);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), elements.len());
                    lengths.push(lengths[u] + 1);
                    queue.push_back(elements.len());
                    elements.push(w);
                }
            }
        }

        let refl = reflections(n, ty);
        let mut lower = vec![Vec::new(); elements.len()];
        let mut upper = vec![Vec::new(); elements.len()];
        for (u, x) in elements.iter().enumerate() {
            for r in &refl {
                let w = index[&x.compose_unchecked(r)];
                if lengths[w] == lengths[u] + 1 {
                    upper[u].push(w as u32);
                    lower[w].push(u as u32);
                }
            }
        }
        for list in lower.iter_mut().chain(upper.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Self { n, ty, elements, index, lengths, lower, upper })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weyl_type(&self) -> WeylType {
        self.ty
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in BFS order, hence sorted by nondecreasing length.
    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn index_of(&self, w: &SignedPermutation) -> Result<usize> {
        self.index.get(w).copied().ok_or_else(|| Error::NotInPoset(w.window()))
    }

    /// BFS distance from the identity.
    pub fn length(&self, w: &SignedPermutation) -> Result<usize> {
        Ok(self.lengths[self.index_of(w)?])
    }

    pub fn length_at(&self, idx: usize) -> usize {
        self.lengths[idx]
    }

    /// Indices of the elements covered by `idx`.
    pub fn lower_covers(&self, idx: usize) -> &[u32] {
        &self.lower[idx]
    }

    pub fn upper_covers(&self, idx: usize) -> &[u32] {
        &self.upper[idx]
    }

    pub fn cover_count(&self) -> usize {
        self.lower.iter().map(Vec::len).sum()
    }

    /// `u ≤_B w`, by downward search from `w` through the cover graph.
    pub fn leq(&self, u: &SignedPermutation, w: &SignedPermutation) -> Result<bool> {
        let (u, w) = (self.index_of(u)?, self.index_of(w)?);
        Ok(self.leq_idx(u, w))
    }

    pub fn leq_idx(&self, u: usize, w: usize) -> bool {
        let target_len = self.lengths[u];
        if self.lengths[w] < target_len {
            return false;
        }
        let mut seen = vec![false; self.elements.len()];
        let mut stack = vec![w];
        seen[w] = true;
        while let Some(x) = stack.pop() {
            if x == u {
                return true;
            }
            if self.lengths[x] == target_len {
                continue;
            }
            for &y in &self.lower[x] {
                let y = y as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// For each target `t`, the bitset (over positions in `targets`) of
    /// targets lying weakly below `t`.
    ///
    /// Down-sets are propagated upward through the whole cover graph, so
    /// memory is `len() × targets.len()` bits.
    pub fn downsets_within(&self, targets: &[usize]) -> Vec<Vec<u64>> {
        let words = targets.len().div_ceil(64);
        let mut slot = vec![usize::MAX; self.elements.len()];
        for (k, &t) in targets.iter().enumerate() {
            slot[t] = k;
        }
        let mut down = vec![vec![0u64; words]; self.elements.len()];
        // elements are in nondecreasing length order, so lower covers come first
        for x in 0..self.elements.len() {
            let mut acc = vec![0u64; words];
            for &y in &self.lower[x] {
                for (a, b) in acc.iter_mut().zip(&down[y as usize]) {
                    *a |= *b;
                }
            }
            if slot[x] != usize::MAX {
                acc[slot[x] / 64] |= 1 << (slot[x] % 64);
            }
            down[x] = acc;
        }
        targets.iter().map(|&t| std::mem::take(&mut down[t])).collect()
    }
}
