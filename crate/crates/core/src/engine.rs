//! Characteristic, Chow and augmented Chow polynomials of bounded graded
//! posets.
//!
//! Four routes to `H_P` are implemented and are expected to agree exactly:
//!
//! * [`ChowMethod::Definition`]: `H = (-χ̄)^{-1}` in the incidence algebra,
//!   i.e. `H_{[x,y]} = Σ_{x<z<=y} χ̄_{[x,z]} H_{[z,y]}`, memoized per
//!   interval in an [`IntervalTable`].
//! * [`ChowMethod::Truncation`]: `H_P = 1 + t Σ_{ρ(x)>=2} H_{τ([0̂,x])}`,
//!   where the sum includes the top element.
//! * [`ChowMethod::Ncd`]: `H_P = [ρ(P)]_t + t Σ_{0̂<x<1̂} [ρ(x)-1]_t H_{[x,1̂]}`
//!   with `[m]_t = 1 + t + ... + t^(m-1)`.
//! * [`ChowMethod::ClosedForm`]: the family recursions of
//!   [`crate::sequences`], for posets carrying a [`Family`] tag.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::polynomial::{IntPolynomial, PolyError};
use crate::poset::{Family, GradedPoset, IntervalHandle, PosetError};
use crate::sequences::{self, binomial, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("characteristic polynomial of [{x}, {y}] is not divisible by t - 1: {source}")]
    NonExactDivision { x: usize, y: usize, source: PolyError },
    #[error("closed-form method needs a built-in family poset")]
    ClosedFormUnavailable,
    #[error("identity {identity} needs rank at least {needed}, poset has rank {rank}")]
    RankTooSmall { identity: Identity, needed: usize, rank: usize },
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChowMethod {
    Definition,
    Truncation,
    Ncd,
    ClosedForm,
}

impl ChowMethod {
    pub const ALL: [ChowMethod; 4] =
        [ChowMethod::Definition, ChowMethod::Truncation, ChowMethod::Ncd, ChowMethod::ClosedForm];

    pub fn name(self) -> &'static str {
        match self {
            ChowMethod::Definition => "definition",
            ChowMethod::Truncation => "truncation",
            ChowMethod::Ncd => "ncd",
            ChowMethod::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for ChowMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChowMethod {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ChowMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| EngineError::Unknown { kind: "method", name: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AugmentedMethod {
    /// `G_P = Σ_z t^{ρ(z)} H_{[z,1̂]}`.
    SumDefinition,
    /// `G_P = H_{aug(P)}`.
    AugmentThenChow,
}

impl FromStr for AugmentedMethod {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum-definition" => Ok(AugmentedMethod::SumDefinition),
            "augment-then-chow" => Ok(AugmentedMethod::AugmentThenChow),
            _ => Err(EngineError::Unknown { kind: "augmented method", name: s.to_string() }),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineConfig {
    /// Collapse the definitional recursion by rank on Boolean and uniform
    /// lattices, where `[x,1̂]` depends only on `ρ(x)`.
    pub family_shortcuts: bool,
}

impl EngineConfig {
    pub fn with_shortcuts() -> Self {
        EngineConfig { family_shortcuts: true }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ChowStats {
    pub memo_entries: usize,
    pub coeff_bits_peak: u64,
}

fn bits_peak<'a>(polys: impl Iterator<Item = &'a IntPolynomial>) -> u64 {
    polys.map(IntPolynomial::max_coeff_bits).max().unwrap_or(0)
}

#[derive(Debug, Clone, Default)]
pub struct IntervalEntry {
    pub characteristic: Option<IntPolynomial>,
    pub reduced: Option<IntPolynomial>,
    pub chow: Option<IntPolynomial>,
}

/// Per-poset memo of interval polynomials keyed by `(x, y)`.
pub struct IntervalTable<'p> {
    poset: &'p GradedPoset,
    entries: HashMap<(usize, usize), IntervalEntry>,
}

impl<'p> IntervalTable<'p> {
    pub fn new(poset: &'p GradedPoset) -> Self {
        IntervalTable { poset, entries: HashMap::new() }
    }

    pub fn poset(&self) -> &'p GradedPoset {
        self.poset
    }

    /// Number of intervals with at least one cached polynomial.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<&IntervalEntry> {
        self.entries.get(&(x, y))
    }

    pub fn coeff_bits_peak(&self) -> u64 {
        bits_peak(
            self.entries
                .values()
                .flat_map(|e| [&e.characteristic, &e.reduced, &e.chow])
                .flatten(),
        )
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<(), EngineError> {
        let len = self.poset.len();
        for index in [x, y] {
            if index >= len {
                return Err(PosetError::OutOfRange { index, len }.into());
            }
        }
        if !self.poset.leq(x, y) {
            return Err(PosetError::Incomparable(x, y).into());
        }
        Ok(())
    }

    fn compute_characteristic(&self, x: usize, y: usize) -> IntPolynomial {
        let p = self.poset;
        let down = p.down_set(y);
        let ry = p.rank_of(y);
        let mut coeffs = vec![BigInt::default(); ry - p.rank_of(x) + 1];
        for &(z, mu) in p.mobius_row(x).iter() {
            if down.contains(z) {
                coeffs[ry - p.rank_of(z)] += mu;
            }
        }
        IntPolynomial::new(coeffs)
    }

    /// `χ_{[x,y]}(t) = Σ_{x<=z<=y} μ(x,z) t^{ρ(y)-ρ(z)}`.
    pub fn characteristic(&mut self, x: usize, y: usize) -> Result<IntPolynomial, EngineError> {
        self.check_pair(x, y)?;
        if let Some(c) = self.entries.get(&(x, y)).and_then(|e| e.characteristic.clone()) {
            return Ok(c);
        }
        let c = self.compute_characteristic(x, y);
        self.entries.entry((x, y)).or_default().characteristic = Some(c.clone());
        Ok(c)
    }

    /// `χ̄_{[x,y]}`: `-1` on trivial intervals, otherwise `χ_{[x,y]} / (t-1)`.
    pub fn reduced_characteristic(&mut self, x: usize, y: usize) -> Result<IntPolynomial, EngineError> {
        self.check_pair(x, y)?;
        self.reduced_unchecked(x, y)
    }

    fn reduced_unchecked(&mut self, x: usize, y: usize) -> Result<IntPolynomial, EngineError> {
        if x == y {
            return Ok(IntPolynomial::from_i64s(&[-1]));
        }
        if let Some(r) = self.entries.get(&(x, y)).and_then(|e| e.reduced.clone()) {
            return Ok(r);
        }
        let r = self
            .compute_characteristic(x, y)
            .div_t_minus_one()
            .map_err(|source| EngineError::NonExactDivision { x, y, source })?;
        self.entries.entry((x, y)).or_default().reduced = Some(r.clone());
        Ok(r)
    }

    /// `H_{[x,y]}` by the definitional recursion.
    pub fn chow(&mut self, x: usize, y: usize) -> Result<IntPolynomial, EngineError> {
        self.check_pair(x, y)?;
        if x == y {
            return Ok(IntPolynomial::one());
        }
        if let Some(h) = self.entries.get(&(x, y)).and_then(|e| e.chow.clone()) {
            return Ok(h);
        }
        let p = self.poset;
        let mut members = p.interval_elements(x, y);
        members.sort_by_key(|&z| std::cmp::Reverse(p.rank_of(z)));
        for (i, &z) in members.iter().enumerate() {
            if z == y || self.entries.get(&(z, y)).is_some_and(|e| e.chow.is_some()) {
                continue;
            }
            let up = p.up_set(z);
            let mut h = IntPolynomial::zero();
            // members[..i] are the elements of [x,y] of rank >= ρ(z)
            for &w in &members[..i] {
                if w == z || !up.contains(w) {
                    continue;
                }
                let red = self.reduced_unchecked(z, w)?;
                let hw = if w == y {
                    IntPolynomial::one()
                } else {
                    self.entries[&(w, y)].chow.clone().expect("computed in rank order")
                };
                h = &h + &(&red * &hw);
            }
            self.entries.entry((z, y)).or_default().chow = Some(h);
        }
        Ok(self.entries[&(x, y)].chow.clone().expect("just computed"))
    }

    /// `Σ_{x<=z<=y} (-χ̄_{[x,z]}) H_{[z,y]}`, which must be the delta
    /// function (1 on trivial intervals, 0 otherwise).
    pub fn inverse_residual(&mut self, x: usize, y: usize) -> Result<IntPolynomial, EngineError> {
        self.check_pair(x, y)?;
        let mut acc = IntPolynomial::zero();
        for z in self.poset.interval_elements(x, y) {
            let red = self.reduced_unchecked(x, z)?;
            let h = self.chow(z, y)?;
            acc = &acc - &(&red * &h);
        }
        Ok(acc)
    }
}

/// `H_{[x,y]}` of a poset, via a fresh [`IntervalTable`].
pub fn chow_interval(p: &GradedPoset, x: usize, y: usize) -> Result<IntPolynomial, EngineError> {
    IntervalTable::new(p).chow(x, y)
}

/// `(ranks, n)` if the poset is tagged as `U_{k,n}` (Boolean is `k = n`).
fn uniform_params(p: &GradedPoset) -> Option<(usize, usize)> {
    match p.family()? {
        Family::Boolean { n } => Some((*n, *n)),
        Family::Uniform { k, n } => Some((*k, *n)),
        _ => None,
    }
}

/// Definitional recursion for `U_{k,n}` collapsed by rank.
///
/// `upper[i]` is `H_{[x,1̂]}` for any `x` of rank `i`: the interval `[x,z]`
/// for `z` of rank `j < k` is `B_{j-i}`, and `[x,1̂]` is `U_{k-i,n-i}`.
struct UniformRankTable {
    upper: Vec<IntPolynomial>,
}

impl UniformRankTable {
    fn new(k: usize, n: usize) -> Result<Self, EngineError> {
        let reduced = |chi: IntPolynomial| {
            chi.div_t_minus_one()
                .map_err(|source| EngineError::NonExactDivision { x: 0, y: 0, source })
        };
        // χ of U_{r,m} from its Möbius values: rank j < r has C(m,j) elements
        // with μ = (-1)^j, and μ(top) makes the values sum to zero.
        let uniform_chi = |r: usize, m: usize| {
            let mut coeffs = vec![BigInt::default(); r + 1];
            let mut sum = BigInt::default();
            for j in 0..r {
                let c = if j % 2 == 0 { binomial(m, j) } else { -binomial(m, j) };
                sum += &c;
                coeffs[r - j] = c;
            }
            coeffs[0] = -sum;
            IntPolynomial::new(coeffs)
        };
        let mut upper = vec![IntPolynomial::zero(); k + 1];
        upper[k] = IntPolynomial::one();
        for i in (0..k).rev() {
            let mut h = &reduced(uniform_chi(k - i, n - i))? * &upper[k];
            for (j, hj) in upper.iter().enumerate().take(k).skip(i + 1) {
                let chi_b = uniform_chi(j - i, j - i);
                h = &h + &(&reduced(chi_b)? * hj).scale(&binomial(n - i, j - i));
            }
            upper[i] = h;
        }
        Ok(UniformRankTable { upper })
    }

    fn augmented(&self, k: usize, n: usize) -> IntPolynomial {
        (0..=k)
            .map(|i| {
                let count = if i == k { BigInt::one() } else { binomial(n, i) };
                self.upper[i].shift(i).scale(&count)
            })
            .sum()
    }

    fn stats(&self) -> ChowStats {
        ChowStats { memo_entries: self.upper.len(), coeff_bits_peak: bits_peak(self.upper.iter()) }
    }
}

pub fn chow(p: &GradedPoset, method: ChowMethod) -> Result<IntPolynomial, EngineError> {
    chow_with_config(p, method, EngineConfig::default())
}

pub fn chow_with_config(p: &GradedPoset, method: ChowMethod, config: EngineConfig) -> Result<IntPolynomial, EngineError> {
    chow_with_stats(p, method, config).map(|(h, _)| h)
}

/// `H_P` by the chosen method, with memo-table statistics.
pub fn chow_with_stats(
    p: &GradedPoset,
    method: ChowMethod,
    config: EngineConfig,
) -> Result<(IntPolynomial, ChowStats), EngineError> {
    match method {
        ChowMethod::Definition => {
            if config.family_shortcuts {
                if let Some((k, n)) = uniform_params(p) {
                    let table = UniformRankTable::new(k, n)?;
                    return Ok((table.upper[0].clone(), table.stats()));
                }
            }
            let mut table = IntervalTable::new(p);
            let h = table.chow(p.bottom(), p.top())?;
            let stats = ChowStats { memo_entries: table.len(), coeff_bits_peak: table.coeff_bits_peak() };
            Ok((h, stats))
        }
        ChowMethod::Truncation => Ok(truncation_method(p)),
        ChowMethod::Ncd => Ok(ncd_method(p)),
        ChowMethod::ClosedForm => {
            let h = closed_form(p)?;
            let stats = ChowStats { memo_entries: 0, coeff_bits_peak: h.max_coeff_bits() };
            Ok((h, stats))
        }
    }
}

/// `T(x, j) = H_{τ^j([0̂,x])}`. The lower intervals of `τ^j([0̂,x])` below
/// `x` are untouched intervals of `P`, so the truncation formula closes over
/// this two-parameter family.
fn truncation_method(p: &GradedPoset) -> (IntPolynomial, ChowStats) {
    fn go(p: &GradedPoset, x: usize, j: usize, memo: &mut HashMap<(usize, usize), IntPolynomial>) -> IntPolynomial {
        let r = p.rank_of(x) - j;
        if r <= 1 {
            return IntPolynomial::one();
        }
        if let Some(h) = memo.get(&(x, j)) {
            return h.clone();
        }
        let mut sum = go(p, x, j + 1, memo);
        let lower: Vec<usize> = p
            .down_set(x)
            .iter()
            .filter(|&w| (2..r).contains(&p.rank_of(w)))
            .collect();
        for w in lower {
            sum = &sum + &go(p, w, 1, memo);
        }
        let h = &IntPolynomial::one() + &sum.shift(1);
        memo.insert((x, j), h.clone());
        h
    }
    let mut memo = HashMap::new();
    let h = go(p, p.top(), 0, &mut memo);
    let stats = ChowStats { memo_entries: memo.len(), coeff_bits_peak: bits_peak(memo.values()) };
    (h, stats)
}

/// `N(x) = H_{[x,1̂]}` from the numerical canonical decomposition, by
/// decreasing rank.
fn ncd_method(p: &GradedPoset) -> (IntPolynomial, ChowStats) {
    let top = p.top();
    let rt = p.rank();
    let mut upper: HashMap<usize, IntPolynomial> = HashMap::new();
    for r in (0..rt).rev() {
        for &x in p.level(r) {
            let rx = p.rank_of(x);
            let mut sum = IntPolynomial::zero();
            for w in p.up_set(x).iter() {
                if w == x || w == top {
                    continue;
                }
                let bracket = IntPolynomial::geometric(p.rank_of(w) - rx - 1);
                if !bracket.is_zero() {
                    sum = &sum + &(&bracket * &upper[&w]);
                }
            }
            upper.insert(x, &IntPolynomial::geometric(rt - rx) + &sum.shift(1));
        }
    }
    let h = if rt == 0 { IntPolynomial::one() } else { upper[&p.bottom()].clone() };
    let stats = ChowStats { memo_entries: upper.len(), coeff_bits_peak: bits_peak(upper.values()) };
    (h, stats)
}

fn closed_form(p: &GradedPoset) -> Result<IntPolynomial, EngineError> {
    let h = match p.family().ok_or(EngineError::ClosedFormUnavailable)? {
        Family::Boolean { n } => sequences::eulerian(*n),
        Family::Uniform { k, n } => sequences::uniform_chow(*n, k - 1)?,
        Family::MaxRanked { levels } => sequences::maxrank_chow(levels, levels.len())?,
        Family::Chain { rank: 0 } => IntPolynomial::one(),
        Family::Chain { rank } => IntPolynomial::one_plus_t_pow(rank - 1),
    };
    Ok(h)
}

pub fn augmented_chow(p: &GradedPoset, method: AugmentedMethod) -> Result<IntPolynomial, EngineError> {
    augmented_chow_with_config(p, method, EngineConfig::default())
}

/// `G_P` by either route. With shortcuts enabled, uniform lattices use the
/// rank-collapsed upper intervals in the sum definition.
pub fn augmented_chow_with_config(
    p: &GradedPoset,
    method: AugmentedMethod,
    config: EngineConfig,
) -> Result<IntPolynomial, EngineError> {
    match method {
        AugmentedMethod::SumDefinition => {
            if config.family_shortcuts {
                if let Some((k, n)) = uniform_params(p) {
                    return Ok(UniformRankTable::new(k, n)?.augmented(k, n));
                }
            }
            let mut table = IntervalTable::new(p);
            augmented_sum(&mut table)
        }
        AugmentedMethod::AugmentThenChow => chow(&p.augment(), ChowMethod::Definition),
    }
}

fn augmented_sum(table: &mut IntervalTable<'_>) -> Result<IntPolynomial, EngineError> {
    let p = table.poset();
    let mut g = IntPolynomial::zero();
    for z in 0..p.len() {
        g = &g + &table.chow(z, p.top())?.shift(p.rank_of(z));
    }
    Ok(g)
}

/// Identities checked by [`verify_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `H_P = (1+t) H_{τP} - t H_{τ²P} + t Σ_{coatoms x} H_{τ([0̂,x])}`.
    LemmaTruncation,
    /// `H_P = 1 + t Σ_{2<=ρ(x)<=ρ-1} H_{[x,1̂]} + t H_{σP}`.
    DualTruncation1,
    /// `H_P = (1+t) H_{σP} - t H_{σ²P} + t Σ_{ρ(x)=2} H_{[x,1̂]}`.
    DualTruncation2,
    /// `H_P = G_{σP}`.
    HEqualsGSigma,
    /// `H_P = G_{τ(P*)}`.
    HEqualsGTauDual,
    /// `G_P = G_{P*}`.
    GDual,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::LemmaTruncation,
        Identity::DualTruncation1,
        Identity::DualTruncation2,
        Identity::HEqualsGSigma,
        Identity::HEqualsGTauDual,
        Identity::GDual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::LemmaTruncation => "lemma-truncation",
            Identity::DualTruncation1 => "dual-truncation-1",
            Identity::DualTruncation2 => "dual-truncation-2",
            Identity::HEqualsGSigma => "H-equals-G-sigma",
            Identity::HEqualsGTauDual => "H-equals-G-tau-dual",
            Identity::GDual => "G-dual",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Identity::LemmaTruncation | Identity::DualTruncation2 => 3,
            Identity::DualTruncation1 | Identity::HEqualsGSigma | Identity::HEqualsGTauDual => 2,
            Identity::GDual => 0,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Identity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| EngineError::Unknown { kind: "identity", name: s.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
    pub pass: bool,
}

fn h_def(p: &GradedPoset) -> Result<IntPolynomial, EngineError> {
    chow(p, ChowMethod::Definition)
}

fn g_def(p: &GradedPoset) -> Result<IntPolynomial, EngineError> {
    augmented_chow(p, AugmentedMethod::SumDefinition)
}

/// Computes both sides of `identity` on `p` with the definitional engine.
pub fn verify_identity(p: &GradedPoset, identity: Identity) -> Result<IdentityReport, EngineError> {
    let rank = p.rank();
    if rank < identity.min_rank() {
        return Err(EngineError::RankTooSmall { identity, needed: identity.min_rank(), rank });
    }
    let one_plus_t = IntPolynomial::from_i64s(&[1, 1]);
    let (lhs, rhs) = match identity {
        Identity::LemmaTruncation => {
            let tp = p.truncate()?;
            let mut sum = IntPolynomial::zero();
            for &x in p.level(rank - 1) {
                let lower = p.interval(IntervalHandle { lower: p.bottom(), upper: x })?;
                sum = &sum + &h_def(&lower.truncate()?)?;
            }
            let rhs = &(&(&one_plus_t * &h_def(&tp)?) - &h_def(&tp.truncate()?)?.shift(1)) + &sum.shift(1);
            (h_def(p)?, rhs)
        }
        Identity::DualTruncation1 => {
            let mut table = IntervalTable::new(p);
            let mut sum = h_def(&p.dual_truncate()?)?;
            for r in 2..rank {
                for &x in p.level(r) {
                    sum = &sum + &table.chow(x, p.top())?;
                }
            }
            let lhs = table.chow(p.bottom(), p.top())?;
            (lhs, &IntPolynomial::one() + &sum.shift(1))
        }
        Identity::DualTruncation2 => {
            let mut table = IntervalTable::new(p);
            let sp = p.dual_truncate()?;
            let mut sum = IntPolynomial::zero();
            for &x in p.level(2) {
                sum = &sum + &table.chow(x, p.top())?;
            }
            let rhs = &(&(&one_plus_t * &h_def(&sp)?) - &h_def(&sp.dual_truncate()?)?.shift(1)) + &sum.shift(1);
            (table.chow(p.bottom(), p.top())?, rhs)
        }
        Identity::HEqualsGSigma => (h_def(p)?, g_def(&p.dual_truncate()?)?),
        Identity::HEqualsGTauDual => (h_def(p)?, g_def(&p.dual().truncate()?)?),
        Identity::GDual => (g_def(p)?, g_def(&p.dual())?),
    };
    let pass = lhs == rhs;
    Ok(IdentityReport { identity, lhs, rhs, pass })
}
