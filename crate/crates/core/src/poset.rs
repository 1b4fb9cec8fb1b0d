//! Finite bounded graded posets.
//!
//! Elements are dense indices `0..len`. The order is stored as the cover
//! relation together with a rank function; reachability bitsets and Möbius
//! rows are computed lazily and cached on the poset, which is otherwise
//! immutable.
//!
//! Every transformation (`truncate`, `dual_truncate`, `augment`, `dual`,
//! `interval`) keeps the relative index order of surviving elements, so
//! built-in families stay in their canonical labeling and identities such as
//! `σ(P) = dual(τ(dual(P)))` hold as plain equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the ground set size of Boolean and uniform lattices.
pub const DEFAULT_BOOLEAN_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("empty poset")]
    Empty,
    #[error("not bounded: {minimal} minimal and {maximal} maximal elements")]
    NotBounded { minimal: usize, maximal: usize },
    #[error("not graded: cover ({lower}, {upper}) does not raise the rank by one")]
    NotGraded { lower: usize, upper: usize },
    #[error("not graded: least element {0} has nonzero rank")]
    BottomRank(usize),
    #[error("element {index} out of range for a poset with {len} elements")]
    OutOfRange { index: usize, len: usize },
    #[error("duplicate cover ({0}, {1})")]
    DuplicateCover(usize, usize),
    #[error("rank array has {got} entries, expected {expected}")]
    RankLength { expected: usize, got: usize },
    #[error("levels hint {hint:?} disagrees with the rank levels {actual:?}")]
    LevelsMismatch { hint: Vec<usize>, actual: Vec<usize> },
    #[error("{op} needs rank at least {needed}, poset has rank {rank}")]
    RankTooSmall { op: &'static str, needed: usize, rank: usize },
    #[error("elements {0} and {1} are not comparable as lower <= upper")]
    Incomparable(usize, usize),
    #[error("ground set size {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed poset JSON: {0}")]
    Json(String),
}

/// Built-in family a poset was constructed as, if any. Enables the
/// closed-form and rank-collapsed computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Boolean { n: usize },
    /// Uniform lattice of rank `k` on `n` elements, `1 <= k < n`.
    Uniform { k: usize, n: usize },
    MaxRanked { levels: Vec<usize> },
    Chain { rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalHandle {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[derive(Debug)]
struct Reachability {
    /// `up[x]` = { y : x <= y }.
    up: Vec<BitSet>,
    /// `down[y]` = { x : x <= y }.
    down: Vec<BitSet>,
}

/// Sparse Möbius row `y ↦ μ(x, y)` over the up-set of `x`, sorted by `y`.
pub type MobiusRow = Vec<(usize, i64)>;

pub struct GradedPoset {
    rank: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    levels: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    family: Option<Family>,
    reach: OnceLock<Reachability>,
    mobius_rows: RwLock<HashMap<usize, Arc<MobiusRow>>>,
}

impl Clone for GradedPoset {
    fn clone(&self) -> Self {
        GradedPoset {
            rank: self.rank.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            levels: self.levels.clone(),
            bottom: self.bottom,
            top: self.top,
            family: self.family.clone(),
            reach: OnceLock::new(),
            mobius_rows: RwLock::new(HashMap::new()),
        }
    }
}

/// Structural equality: same ranks and covers under the same labels.
/// The family tag is metadata and does not take part.
impl PartialEq for GradedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.up == other.up
    }
}

impl Eq for GradedPoset {}

impl fmt::Debug for GradedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedPoset")
            .field("elements", &self.len())
            .field("rank", &self.rank)
            .field("covers", &self.covers().collect::<Vec<_>>())
            .field("family", &self.family)
            .finish()
    }
}

impl GradedPoset {
    /// Validates and builds a poset from a rank array and cover list.
    pub fn from_parts(rank: Vec<usize>, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let m = rank.len();
        if m == 0 {
            return Err(PosetError::Empty);
        }
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        for &(a, b) in covers {
            for index in [a, b] {
                if index >= m {
                    return Err(PosetError::OutOfRange { index, len: m });
                }
            }
            if rank[b] != rank[a] + 1 {
                return Err(PosetError::NotGraded { lower: a, upper: b });
            }
            up[a].push(b);
            down[b].push(a);
        }
        for (a, list) in up.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(PosetError::DuplicateCover(a, w[0]));
            }
        }
        for list in &mut down {
            list.sort_unstable();
        }
        let minimal: Vec<usize> = (0..m).filter(|&x| down[x].is_empty()).collect();
        let maximal: Vec<usize> = (0..m).filter(|&x| up[x].is_empty()).collect();
        if minimal.len() != 1 || maximal.len() != 1 {
            return Err(PosetError::NotBounded { minimal: minimal.len(), maximal: maximal.len() });
        }
        let (bottom, top) = (minimal[0], maximal[0]);
        if rank[bottom] != 0 {
            return Err(PosetError::BottomRank(bottom));
        }
        // With a unique minimum of rank 0 and rank-raising covers, every
        // element's rank is its distance from the bottom and the top has the
        // largest rank.
        let mut levels = vec![Vec::new(); rank[top] + 1];
        for (x, &r) in rank.iter().enumerate() {
            levels[r].push(x);
        }
        Ok(GradedPoset {
            rank,
            up,
            down,
            levels,
            bottom,
            top,
            family: None,
            reach: OnceLock::new(),
            mobius_rows: RwLock::new(HashMap::new()),
        })
    }

    fn tagged(mut self, family: Option<Family>) -> Self {
        self.family = family;
        self
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Rank `ρ(P)` of the poset, i.e. the rank of the top element.
    pub fn rank(&self) -> usize {
        self.rank[self.top]
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    /// Elements of rank `r`, in index order.
    pub fn level(&self, r: usize) -> &[usize] {
        self.levels.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Sizes of rank levels `1..ρ`, i.e. without bottom and top.
    pub fn level_sizes(&self) -> Vec<usize> {
        let r = self.rank();
        (1..r).map(|i| self.levels[i].len()).collect()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    fn reach(&self) -> &Reachability {
        self.reach.get_or_init(|| {
            let m = self.len();
            let mut up: Vec<BitSet> = (0..m).map(|_| BitSet::new(m)).collect();
            for r in (0..self.levels.len()).rev() {
                for &x in &self.levels[r] {
                    let mut set = BitSet::new(m);
                    set.insert(x);
                    for &c in &self.up[x] {
                        set.union_with(&up[c]);
                    }
                    up[x] = set;
                }
            }
            let mut down: Vec<BitSet> = (0..m).map(|_| BitSet::new(m)).collect();
            for r in 0..self.levels.len() {
                for &x in &self.levels[r] {
                    let mut set = BitSet::new(m);
                    set.insert(x);
                    for &c in &self.down[x] {
                        set.union_with(&down[c]);
                    }
                    down[x] = set;
                }
            }
            Reachability { up, down }
        })
    }

    pub(crate) fn up_set(&self, x: usize) -> &BitSet {
        &self.reach().up[x]
    }

    pub(crate) fn down_set(&self, x: usize) -> &BitSet {
        &self.reach().down[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.reach().up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Elements `z` with `x <= z <= y`, in index order.
    pub fn interval_elements(&self, x: usize, y: usize) -> Vec<usize> {
        let down = self.down_set(y);
        self.up_set(x).iter().filter(|&z| down.contains(z)).collect()
    }

    /// Möbius values `μ(x, ·)` on the up-set of `x`, from the defining
    /// recursion. Cached per poset.
    pub fn mobius_row(&self, x: usize) -> Arc<MobiusRow> {
        if let Some(row) = self.mobius_rows.read().expect("mobius cache poisoned").get(&x) {
            return Arc::clone(row);
        }
        let mut ups: Vec<usize> = self.up_set(x).iter().collect();
        ups.sort_by_key(|&y| self.rank[y]);
        let mut values: HashMap<usize, i64> = HashMap::with_capacity(ups.len());
        for &y in &ups {
            let mu = if y == x {
                1
            } else {
                let down = self.down_set(y);
                let s = ups
                    .iter()
                    .take_while(|&&z| self.rank[z] < self.rank[y])
                    .filter(|&&z| down.contains(z))
                    .map(|z| values[z])
                    .try_fold(0i64, |acc, v| acc.checked_add(v))
                    .expect("Möbius value overflows i64");
                -s
            };
            values.insert(y, mu);
        }
        let mut row: MobiusRow = values.into_iter().collect();
        row.sort_unstable();
        let row = Arc::new(row);
        self.mobius_rows
            .write()
            .expect("mobius cache poisoned")
            .entry(x)
            .or_insert_with(|| Arc::clone(&row));
        row
    }

    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, PosetError> {
        self.check_index(x)?;
        self.check_index(y)?;
        if !self.leq(x, y) {
            return Err(PosetError::Incomparable(x, y));
        }
        let row = self.mobius_row(x);
        let i = row.binary_search_by_key(&y, |&(z, _)| z).expect("y in up-set");
        Ok(row[i].1)
    }

    fn check_index(&self, x: usize) -> Result<(), PosetError> {
        if x >= self.len() {
            return Err(PosetError::OutOfRange { index: x, len: self.len() });
        }
        Ok(())
    }

    /// Keeps the elements flagged in `keep` (index order preserved), remaps
    /// surviving covers, then adds `extra` covers given in old labels.
    fn restrict(
        &self,
        keep: &[bool],
        new_rank: impl Fn(usize) -> usize,
        extra: &[(usize, usize)],
    ) -> Result<GradedPoset, PosetError> {
        let mut map = vec![usize::MAX; self.len()];
        let mut rank = Vec::new();
        for x in 0..self.len() {
            if keep[x] {
                map[x] = rank.len();
                rank.push(new_rank(x));
            }
        }
        let mut covers: Vec<(usize, usize)> = self
            .covers()
            .filter(|&(a, b)| keep[a] && keep[b])
            .map(|(a, b)| (map[a], map[b]))
            .collect();
        covers.extend(extra.iter().map(|&(a, b)| (map[a], map[b])));
        GradedPoset::from_parts(rank, &covers)
    }

    fn require_rank(&self, op: &'static str, needed: usize) -> Result<(), PosetError> {
        if self.rank() < needed {
            return Err(PosetError::RankTooSmall { op, needed, rank: self.rank() });
        }
        Ok(())
    }

    /// `τ(P)`: removes all coatoms.
    pub fn truncate(&self) -> Result<GradedPoset, PosetError> {
        self.require_rank("truncate", 2)?;
        let r = self.rank();
        let keep: Vec<bool> = self.rank.iter().map(|&x| x != r - 1).collect();
        let extra: Vec<_> = self.level(r - 2).iter().map(|&x| (x, self.top)).collect();
        let top = self.top;
        let family = match &self.family {
            Some(Family::Boolean { n }) => Some(Family::Uniform { k: n - 1, n: *n }),
            Some(Family::Uniform { k, n }) => Some(Family::Uniform { k: k - 1, n: *n }),
            Some(Family::MaxRanked { levels }) => {
                Some(Family::MaxRanked { levels: levels[..levels.len() - 1].to_vec() })
            }
            Some(Family::Chain { rank }) => Some(Family::Chain { rank: rank - 1 }),
            None => None,
        };
        Ok(self
            .restrict(&keep, |x| if x == top { r - 1 } else { self.rank[x] }, &extra)?
            .tagged(family))
    }

    /// `σ(P)`: removes all atoms.
    pub fn dual_truncate(&self) -> Result<GradedPoset, PosetError> {
        self.require_rank("dual_truncate", 2)?;
        let keep: Vec<bool> = self.rank.iter().map(|&x| x != 1).collect();
        let extra: Vec<_> = self.level(2).iter().map(|&x| (self.bottom, x)).collect();
        let family = match &self.family {
            Some(Family::MaxRanked { levels }) => Some(Family::MaxRanked { levels: levels[1..].to_vec() }),
            Some(Family::Chain { rank }) => Some(Family::Chain { rank: rank - 1 }),
            _ => None,
        };
        Ok(self
            .restrict(&keep, |x| self.rank[x].saturating_sub(1), &extra)?
            .tagged(family))
    }

    /// `aug(P)`: adjoins a new least element, placed at index 0.
    pub fn augment(&self) -> GradedPoset {
        let mut rank = Vec::with_capacity(self.len() + 1);
        rank.push(0);
        rank.extend(self.rank.iter().map(|r| r + 1));
        let mut covers: Vec<(usize, usize)> = vec![(0, self.bottom + 1)];
        covers.extend(self.covers().map(|(a, b)| (a + 1, b + 1)));
        let family = match &self.family {
            Some(Family::MaxRanked { levels }) => {
                let mut l = vec![1];
                l.extend_from_slice(levels);
                Some(Family::MaxRanked { levels: l })
            }
            Some(Family::Chain { rank }) => Some(Family::Chain { rank: rank + 1 }),
            _ => None,
        };
        GradedPoset::from_parts(rank, &covers)
            .expect("augmentation preserves boundedness and gradedness")
            .tagged(family)
    }

    /// `P*`: reversed order, element `x` relabeled `len - 1 - x`.
    pub fn dual(&self) -> GradedPoset {
        let m = self.len();
        let r = self.rank();
        let rank: Vec<usize> = (0..m).map(|x| r - self.rank[m - 1 - x]).collect();
        let covers: Vec<_> = self.covers().map(|(a, b)| (m - 1 - b, m - 1 - a)).collect();
        let family = match &self.family {
            Some(Family::Boolean { n }) => Some(Family::Boolean { n: *n }),
            Some(Family::MaxRanked { levels }) => {
                Some(Family::MaxRanked { levels: levels.iter().rev().copied().collect() })
            }
            Some(Family::Chain { rank }) => Some(Family::Chain { rank: *rank }),
            _ => None,
        };
        GradedPoset::from_parts(rank, &covers)
            .expect("duality preserves boundedness and gradedness")
            .tagged(family)
    }

    /// The closed interval `[lower, upper]` as a poset, re-ranked from 0.
    pub fn interval(&self, h: IntervalHandle) -> Result<GradedPoset, PosetError> {
        self.check_index(h.lower)?;
        self.check_index(h.upper)?;
        if !self.leq(h.lower, h.upper) {
            return Err(PosetError::Incomparable(h.lower, h.upper));
        }
        if h == (IntervalHandle { lower: self.bottom, upper: self.top }) {
            return Ok(self.clone());
        }
        let (up, down) = (self.up_set(h.lower), self.down_set(h.upper));
        let keep: Vec<bool> = (0..self.len()).map(|z| up.contains(z) && down.contains(z)).collect();
        let base = self.rank[h.lower];
        self.restrict(&keep, |x| self.rank[x] - base, &[])
    }

    /// Same poset relabeled so that indices increase with rank (stable in
    /// the old index within a level).
    pub fn canonical(&self) -> GradedPoset {
        let order: Vec<usize> = self.levels.iter().flatten().copied().collect();
        let mut map = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        let rank: Vec<usize> = order.iter().map(|&x| self.rank[x]).collect();
        let covers: Vec<_> = self.covers().map(|(a, b)| (map[a], map[b])).collect();
        GradedPoset::from_parts(rank, &covers)
            .expect("relabeling preserves validity")
            .tagged(self.family.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PosetFile::from(self)).expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<GradedPoset, PosetError> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| PosetError::Json(e.to_string()))?;
        file.into_poset()
    }
}

/// On-disk JSON form of a poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<usize>>,
    pub elements: usize,
    pub rank: Vec<usize>,
    pub covers: Vec<[usize; 2]>,
}

impl From<&GradedPoset> for PosetFile {
    fn from(p: &GradedPoset) -> Self {
        PosetFile {
            levels: Some(p.level_sizes()),
            elements: p.len(),
            rank: p.rank.clone(),
            covers: p.covers().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl PosetFile {
    pub fn into_poset(self) -> Result<GradedPoset, PosetError> {
        if self.rank.len() != self.elements {
            return Err(PosetError::RankLength { expected: self.elements, got: self.rank.len() });
        }
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        let poset = GradedPoset::from_parts(self.rank, &covers)?;
        if let Some(hint) = self.levels {
            let actual = poset.level_sizes();
            if hint != actual {
                return Err(PosetError::LevelsMismatch { hint, actual });
            }
        }
        Ok(poset)
    }
}

/// Subsets of `[n]` with fewer than `limit` elements (or all, if `limit >
/// n`), ordered by cardinality then by bitmask.
fn subsets_by_size(n: usize, limit: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0u32..1 << n).filter(|m| (m.count_ones() as usize) < limit).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

fn check_cap(n: usize, cap: usize) -> Result<(), PosetError> {
    if n > cap || n > 30 {
        return Err(PosetError::CapExceeded { n, cap: cap.min(30) });
    }
    Ok(())
}

/// Boolean lattice `B_n` with the default cap.
pub fn build_boolean(n: usize) -> Result<GradedPoset, PosetError> {
    build_boolean_with_cap(n, DEFAULT_BOOLEAN_CAP)
}

pub fn build_boolean_with_cap(n: usize, cap: usize) -> Result<GradedPoset, PosetError> {
    check_cap(n, cap)?;
    let masks = subsets_by_size(n, n + 1);
    let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let rank: Vec<usize> = masks.iter().map(|m| m.count_ones() as usize).collect();
    let mut covers = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        for b in 0..n {
            if m & (1 << b) == 0 {
                covers.push((i, index[&(m | 1 << b)]));
            }
        }
    }
    Ok(GradedPoset::from_parts(rank, &covers)?.tagged(Some(Family::Boolean { n })))
}

/// Uniform lattice `U_{k,n}`: subsets of size `< k` plus a top element.
pub fn build_uniform(k: usize, n: usize) -> Result<GradedPoset, PosetError> {
    build_uniform_with_cap(k, n, DEFAULT_BOOLEAN_CAP)
}

pub fn build_uniform_with_cap(k: usize, n: usize, cap: usize) -> Result<GradedPoset, PosetError> {
    if k < 1 || k > n {
        return Err(PosetError::InvalidParameters(format!("uniform lattice needs 1 <= k <= n, got k={k}, n={n}")));
    }
    if k == n {
        return build_boolean_with_cap(n, cap);
    }
    check_cap(n, cap)?;
    let masks = subsets_by_size(n, k);
    let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let top = masks.len();
    let mut rank: Vec<usize> = masks.iter().map(|m| m.count_ones() as usize).collect();
    rank.push(k);
    let mut covers = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        if m.count_ones() as usize == k - 1 {
            covers.push((i, top));
            continue;
        }
        for b in 0..n {
            if m & (1 << b) == 0 {
                covers.push((i, index[&(m | 1 << b)]));
            }
        }
    }
    Ok(GradedPoset::from_parts(rank, &covers)?.tagged(Some(Family::Uniform { k, n })))
}

/// Maximal ranked poset `P^c_n`: level `i` has `levels[i-1]` elements and
/// every element of a level lies below every element of the next.
pub fn build_max_ranked(levels: &[usize]) -> Result<GradedPoset, PosetError> {
    if levels.contains(&0) {
        return Err(PosetError::InvalidParameters(format!("level sizes must be positive, got {levels:?}")));
    }
    Ok(full_levels(levels).tagged(Some(Family::MaxRanked { levels: levels.to_vec() })))
}

fn full_levels(levels: &[usize]) -> GradedPoset {
    let mut sizes = vec![1];
    sizes.extend_from_slice(levels);
    sizes.push(1);
    let mut rank = Vec::new();
    let mut starts = Vec::new();
    for (r, &c) in sizes.iter().enumerate() {
        starts.push(rank.len());
        rank.extend(std::iter::repeat_n(r, c));
    }
    let mut covers = Vec::new();
    for r in 0..sizes.len() - 1 {
        for a in starts[r]..starts[r] + sizes[r] {
            for b in starts[r + 1]..starts[r + 1] + sizes[r + 1] {
                covers.push((a, b));
            }
        }
    }
    GradedPoset::from_parts(rank, &covers).expect("level construction is bounded and graded")
}

/// Chain `0 < 1 < ... < rank`.
pub fn build_chain(rank: usize) -> GradedPoset {
    let covers: Vec<_> = (0..rank).map(|i| (i, i + 1)).collect();
    GradedPoset::from_parts((0..=rank).collect(), &covers)
        .expect("chains are bounded and graded")
        .tagged(Some(Family::Chain { rank }))
}

/// Random poset with the given middle level sizes. Each cover between
/// consecutive middle levels is kept with probability `density`; elements
/// left without an upper (lower) cover then receive one uniformly chosen
/// cover to the next (previous) level, in index order. Bottom and top are
/// joined to the first and last level.
pub fn random_level_poset(levels: &[usize], density: Ratio<u64>, seed: u64) -> Result<GradedPoset, PosetError> {
    if levels.is_empty() || levels.contains(&0) {
        return Err(PosetError::InvalidParameters(format!("need at least one nonempty level, got {levels:?}")));
    }
    if *density.numer() == 0 || density > Ratio::from_integer(1) {
        return Err(PosetError::InvalidParameters(format!("density must lie in (0, 1], got {density}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = levels.len();
    // element indices: 0 bottom, then levels, then top
    let mut starts = Vec::with_capacity(n);
    let mut next = 1;
    for &c in levels {
        starts.push(next);
        next += c;
    }
    let top = next;
    let members = |i: usize| starts[i]..starts[i] + levels[i];

    let mut has_up = vec![false; top + 1];
    let mut has_down = vec![false; top + 1];
    let mut covers = Vec::new();
    for i in 0..n - 1 {
        for a in members(i) {
            for b in members(i + 1) {
                if rng.gen_range(0..*density.denom()) < *density.numer() {
                    covers.push((a, b));
                    has_up[a] = true;
                    has_down[b] = true;
                }
            }
        }
    }
    for i in 0..n {
        for x in members(i) {
            if i + 1 < n && !has_up[x] {
                let b = starts[i + 1] + rng.gen_range(0..levels[i + 1]);
                covers.push((x, b));
                has_up[x] = true;
                has_down[b] = true;
            }
            if i > 0 && !has_down[x] {
                let a = starts[i - 1] + rng.gen_range(0..levels[i - 1]);
                covers.push((a, x));
                has_up[a] = true;
                has_down[x] = true;
            }
        }
    }
    covers.extend(members(0).map(|a| (0, a)));
    covers.extend(members(n - 1).map(|b| (b, top)));
    covers.sort_unstable();

    let mut rank = vec![0];
    for (i, &c) in levels.iter().enumerate() {
        rank.extend(std::iter::repeat_n(i + 1, c));
    }
    rank.push(n + 1);
    let poset = GradedPoset::from_parts(rank, &covers)?;
    let family = (density == Ratio::from_integer(1)).then(|| Family::MaxRanked { levels: levels.to_vec() });
    Ok(poset.tagged(family))
}
