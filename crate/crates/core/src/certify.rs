//! Exact real-rootedness and interlacing certificates.
//!
//! Everything here is rational arithmetic: Sturm chains count distinct real
//! roots, bisection isolates them, and interlacing is decided on the
//! isolated roots of `sqfree(f g)` with multiplicities recovered from the
//! squarefree factorizations of `f` and `g`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::polynomial::{IntPolynomial, RatPolynomial};

/// Default bound on bisection halvings before giving up.
pub const DEFAULT_MAX_DEPTH: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("the zero polynomial has no certificate")]
    ZeroPolynomial,
    #[error("{which} has a negative leading coefficient")]
    NegativeLeading { which: &'static str },
    #[error("{which} is not real-rooted")]
    NotRealRooted { which: &'static str },
    #[error("degree gap deg g - deg f = {gap} is outside {{0, 1}}")]
    DegreeGap { gap: i64 },
    #[error("root isolation unresolved after {depth} halvings")]
    Unresolved { depth: usize },
}

fn ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio(r))
}

/// A real root located either exactly or strictly inside `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RootEnclosure {
    Exact {
        #[serde(serialize_with = "ser_ratio")]
        value: BigRational,
    },
    Interval {
        #[serde(serialize_with = "ser_ratio")]
        lo: BigRational,
        #[serde(serialize_with = "ser_ratio")]
        hi: BigRational,
    },
}

impl RootEnclosure {
    pub fn lo(&self) -> &BigRational {
        match self {
            RootEnclosure::Exact { value } => value,
            RootEnclosure::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            RootEnclosure::Exact { value } => value,
            RootEnclosure::Interval { hi, .. } => hi,
        }
    }

    /// Whether the enclosure lies inside the open interval `(a, b)`.
    pub fn inside(&self, a: &BigRational, b: &BigRational) -> bool {
        a < self.lo() && self.hi() < b
    }

    /// Midpoint as a float, for display and cross-checks only.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let mid = (self.lo() + self.hi()) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RootEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootEnclosure::Exact { value } => write!(f, "{}", ratio(value)),
            RootEnclosure::Interval { lo, hi } => write!(f, "({}, {})", ratio(lo), ratio(hi)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolatedRoot {
    pub enclosure: RootEnclosure,
    pub multiplicity: usize,
}

/// Signed remainder chain of `(p, p')` with each remainder rescaled by a
/// positive factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<RatPolynomial>,
}

fn sign(r: &BigRational) -> Ordering {
    r.cmp(&BigRational::zero())
}

/// Sign at `+∞` (`positive`) or `-∞` of a nonzero polynomial.
fn sign_at_infinity(p: &RatPolynomial, positive: bool) -> Ordering {
    let lc = sign(p.leading_coeff().expect("nonzero"));
    let d = p.degree().unwrap_or(0);
    if positive || d.is_multiple_of(2) {
        lc
    } else {
        lc.reverse()
    }
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Result<Self, CertifyError> {
        if p.is_zero() {
            return Err(CertifyError::ZeroPolynomial);
        }
        let p0 = p.to_rational();
        let p1 = p0.derivative().to_primitive_rational();
        let mut chain = vec![p0];
        if !p1.is_zero() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let rem = chain[n - 2].div_rem(&chain[n - 1]).1;
            if rem.is_zero() {
                break;
            }
            chain.push(rem.scale(&-BigRational::one()).to_primitive_rational());
        }
        Ok(SturmChain { chain })
    }

    pub fn polynomials(&self) -> &[RatPolynomial] {
        &self.chain
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.chain.iter().map(|q| sign(&q.eval(x))))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.chain.iter().map(|q| sign_at_infinity(q, positive)))
    }

    /// Distinct real roots in `(a, b]`, for `a < b`.
    pub fn count_between(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots on the whole line.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }
}

/// Signed remainder chain of `(p, p')`; see [`SturmChain`].
pub fn sturm_chain(p: &IntPolynomial) -> Result<Vec<RatPolynomial>, CertifyError> {
    Ok(SturmChain::new(p)?.chain)
}

/// `p / gcd(p, p')` as a primitive integer polynomial with positive leading
/// coefficient.
pub fn squarefree_part(p: &IntPolynomial) -> Result<IntPolynomial, CertifyError> {
    if p.is_zero() {
        return Err(CertifyError::ZeroPolynomial);
    }
    let r = p.to_rational();
    let g = r.gcd(&r.derivative());
    Ok(r.div_rem(&g).0.to_primitive_int().primitive())
}

/// Yun's squarefree factorization: `p = c · Π_i s_i^i` with the `s_i`
/// squarefree and pairwise coprime. Entry `i - 1` of the result is `s_i`.
fn squarefree_factors(p: &IntPolynomial) -> Vec<RatPolynomial> {
    let a = p.to_rational();
    let da = a.derivative();
    let b = a.gcd(&da);
    let mut c = a.div_rem(&b).0;
    let mut d = sub(&da.div_rem(&b).0, &c.derivative());
    let mut out = Vec::new();
    while c.degree().unwrap_or(0) > 0 {
        let s = c.gcd(&d);
        c = c.div_rem(&s).0;
        d = sub(&d.div_rem(&s).0, &c.derivative());
        out.push(s);
    }
    out
}

fn sub(a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
    let n = a.coeffs().len().max(b.coeffs().len());
    let zero = BigRational::zero();
    RatPolynomial::new(
        (0..n)
            .map(|i| a.coeffs().get(i).unwrap_or(&zero) - b.coeffs().get(i).unwrap_or(&zero))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealRootCertificate {
    pub input: IntPolynomial,
    pub squarefree_part: IntPolynomial,
    pub real_root_count: usize,
    pub verdict: bool,
}

/// Certifies real-rootedness: the Sturm count of distinct real roots must
/// equal the degree of the squarefree part. Nonzero constants are
/// real-rooted.
pub fn is_real_rooted(p: &IntPolynomial) -> Result<RealRootCertificate, CertifyError> {
    let sqf = squarefree_part(p)?;
    let count = SturmChain::new(&sqf)?.count_real();
    Ok(RealRootCertificate {
        input: p.clone(),
        verdict: Some(count) == sqf.degree(),
        squarefree_part: sqf,
        real_root_count: count,
    })
}

/// `1 + max |c_i / lead|`: every complex root has modulus below this.
pub fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.leading_coeff().expect("nonzero").abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::one() + BigRational::new(max, lead)
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Isolates the distinct real roots of a squarefree `sqf` in increasing
/// order. Intervals are refined to width at most `width`.
fn isolate_squarefree(
    sqf: &IntPolynomial,
    width: &BigRational,
    max_depth: usize,
) -> Result<Vec<RootEnclosure>, CertifyError> {
    let rp = sqf.to_rational();
    if sqf.degree() == Some(1) {
        let value = -BigRational::new(sqf.coeff(0), sqf.coeff(1));
        return Ok(vec![RootEnclosure::Exact { value }]);
    }
    let chain = SturmChain::new(sqf)?;
    let b = cauchy_bound(sqf);
    let mut out = Vec::new();
    // intervals (lo, hi] with their root counts, processed left to right
    let mut stack = vec![(-b.clone(), b, chain.count_real(), 0usize)];
    while let Some((lo, hi, count, depth)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            if rp.eval(&hi).is_zero() {
                out.push(RootEnclosure::Exact { value: hi });
            } else {
                out.push(refine(&rp, lo, hi, width, max_depth)?);
            }
            continue;
        }
        if depth >= max_depth {
            return Err(CertifyError::Unresolved { depth });
        }
        let mid = (&lo + &hi) * half();
        let left = chain.count_between(&lo, &mid);
        stack.push((mid.clone(), hi, count - left, depth + 1));
        stack.push((lo, mid, left, depth + 1));
    }
    Ok(out)
}

/// Shrinks `(lo, hi)` around its single simple root by sign bisection.
fn refine(
    p: &RatPolynomial,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
    max_depth: usize,
) -> Result<RootEnclosure, CertifyError> {
    let s_hi = sign(&p.eval(&hi));
    for _ in 0..max_depth {
        if &(&hi - &lo) <= width {
            return Ok(RootEnclosure::Interval { lo, hi });
        }
        let mid = (&lo + &hi) * half();
        match sign(&p.eval(&mid)) {
            Ordering::Equal => return Ok(RootEnclosure::Exact { value: mid }),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    Err(CertifyError::Unresolved { depth: max_depth })
}

/// Disjoint enclosures of the distinct real roots of `p`, in increasing
/// order, each refined to width at most 1/16.
pub fn isolate_roots(p: &IntPolynomial) -> Result<Vec<RootEnclosure>, CertifyError> {
    isolate_roots_with(p, &BigRational::new(BigInt::one(), BigInt::from(16)), DEFAULT_MAX_DEPTH)
}

pub fn isolate_roots_with(
    p: &IntPolynomial,
    width: &BigRational,
    max_depth: usize,
) -> Result<Vec<RootEnclosure>, CertifyError> {
    isolate_squarefree(&squarefree_part(p)?, width, max_depth)
}

/// Whether the squarefree `s` vanishes at the root enclosed by `e`, given
/// that `e` isolates a root of a multiple of `s`.
fn vanishes_at(s: &RatPolynomial, e: &RootEnclosure) -> bool {
    if s.degree().unwrap_or(0) == 0 {
        return false;
    }
    match e {
        RootEnclosure::Exact { value } => s.eval(value).is_zero(),
        RootEnclosure::Interval { lo, hi } => {
            let chain = SturmChain::new(&s.to_primitive_int()).expect("nonzero");
            chain.count_between(lo, hi) > 0
        }
    }
}

fn multiplicity(factors: &[RatPolynomial], e: &RootEnclosure) -> usize {
    factors
        .iter()
        .position(|s| vanishes_at(s, e))
        .map_or(0, |i| i + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterlaceCertificate {
    pub f: IntPolynomial,
    pub g: IntPolynomial,
    /// Roots of `f` (the α's), increasing.
    pub f_roots: Vec<IsolatedRoot>,
    /// Roots of `g` (the β's), increasing.
    pub g_roots: Vec<IsolatedRoot>,
    pub shared_roots: Vec<RootEnclosure>,
    /// Merged order, smallest first, e.g. `α2 <= β2 <= α1 <= β1`.
    pub pattern: String,
    pub verdict: bool,
}

/// Decides `f ≺ g`: the zeros of `f` and `g` weakly alternate with `g`
/// holding the largest zero, `... <= α2 <= β2 <= α1 <= β1`.
pub fn interlaces(f: &IntPolynomial, g: &IntPolynomial) -> Result<InterlaceCertificate, CertifyError> {
    for (which, p) in [("f", f), ("g", g)] {
        match p.leading_coeff() {
            None => return Err(CertifyError::ZeroPolynomial),
            Some(lc) if lc.is_negative() => return Err(CertifyError::NegativeLeading { which }),
            _ => {}
        }
        if !is_real_rooted(p)?.verdict {
            return Err(CertifyError::NotRealRooted { which });
        }
    }
    let (df, dg) = (f.degree().unwrap_or(0) as i64, g.degree().unwrap_or(0) as i64);
    if !(0..=1).contains(&(dg - df)) {
        return Err(CertifyError::DegreeGap { gap: dg - df });
    }

    let fg = f * g;
    let width = BigRational::new(BigInt::one(), BigInt::from(16));
    let roots = isolate_squarefree(&squarefree_part(&fg)?, &width, DEFAULT_MAX_DEPTH)?;
    let (ff, gf) = (squarefree_factors(f), squarefree_factors(g));

    let mut f_roots = Vec::new();
    let mut g_roots = Vec::new();
    let mut shared = Vec::new();
    let mut labels = Vec::new();
    let mut verdict = true;
    // Walk from the largest root down; the next label must be β first.
    let mut expect_beta = true;
    let (mut na, mut nb) = (0usize, 0usize);
    for e in roots.iter().rev() {
        let (a, b) = (multiplicity(&ff, e), multiplicity(&gf, e));
        if a > 0 {
            f_roots.push(IsolatedRoot { enclosure: e.clone(), multiplicity: a });
        }
        if b > 0 {
            g_roots.push(IsolatedRoot { enclosure: e.clone(), multiplicity: b });
        }
        if a > 0 && b > 0 {
            shared.push(e.clone());
        }
        let start_beta = match (a as i64 - b as i64, expect_beta) {
            (0, x) => x,
            (-1, true) => true,
            (1, false) => false,
            _ => {
                verdict = false;
                b >= a
            }
        };
        let mut beta = start_beta;
        for _ in 0..a + b {
            if beta {
                nb += 1;
                labels.push(format!("β{nb}"));
            } else {
                na += 1;
                labels.push(format!("α{na}"));
            }
            beta = !beta;
        }
        if a != b {
            expect_beta = !expect_beta;
        }
    }
    f_roots.reverse();
    g_roots.reverse();
    shared.reverse();
    labels.reverse();
    Ok(InterlaceCertificate {
        f: f.clone(),
        g: g.clone(),
        f_roots,
        g_roots,
        shared_roots: shared,
        pattern: labels.join(" <= "),
        verdict,
    })
}

/// Real-rootedness certificate for `μ f + λ g`, cleared to integer
/// coefficients. Interlacing `f ≺ g` implies the verdict is true.
pub fn check_obreshkoff_combination(
    f: &IntPolynomial,
    g: &IntPolynomial,
    lambda: &BigRational,
    mu: &BigRational,
) -> Result<RealRootCertificate, CertifyError> {
    let combo = RatPolynomial::new(
        (0..f.coeffs().len().max(g.coeffs().len()))
            .map(|i| {
                mu * BigRational::from_integer(f.coeff(i)) + lambda * BigRational::from_integer(g.coeff(i))
            })
            .collect(),
    );
    is_real_rooted(&combo.to_integer_multiple())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{derangement, eulerian};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(SturmChain::new(&p(&[-1, 0, 1])).unwrap().count_real(), 2);
        assert_eq!(SturmChain::new(&p(&[1, 1, 1])).unwrap().count_real(), 0);
        assert_eq!(SturmChain::new(&eulerian(4)).unwrap().count_real(), 3);
        let chain = SturmChain::new(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(chain.count_between(&q(-1, 1), &q(1, 1)), 1);
        assert_eq!(chain.count_between(&q(-2, 1), &q(1, 1)), 2);
        assert!(matches!(sturm_chain(&p(&[])), Err(CertifyError::ZeroPolynomial)));
    }

    #[test]
    fn real_rooted_examples() {
        let c = is_real_rooted(&p(&[1, 3, 3, 1])).unwrap();
        assert!(c.verdict);
        assert_eq!(c.squarefree_part, p(&[1, 1]));
        assert!(is_real_rooted(&p(&[1, 4, 1])).unwrap().verdict);
        assert!(!is_real_rooted(&p(&[1, 0, 1])).unwrap().verdict);
        assert!(is_real_rooted(&p(&[5])).unwrap().verdict);
        assert!(is_real_rooted(&p(&[0, 0, -3])).unwrap().verdict);
        assert_eq!(is_real_rooted(&p(&[])), Err(CertifyError::ZeroPolynomial));
    }

    #[test]
    fn isolation_examples() {
        let r = isolate_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].inside(&q(-2, 1), &q(-1, 1)));
        assert!(r[1].inside(&q(1, 1), &q(2, 1)));
        assert_eq!(isolate_roots(&p(&[1, 1])).unwrap(), vec![RootEnclosure::Exact { value: q(-1, 1) }]);
        let d4 = derangement(4);
        let reduced = IntPolynomial::new(d4.coeffs()[1..].to_vec());
        assert_eq!(reduced, p(&[1, 7, 1]));
        let r = isolate_roots(&reduced).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|e| e.hi() < &BigRational::zero()));
        // (t - 1)(t + 3): bisection from the bound 4 lands on 1
        let r = isolate_roots(&p(&[-3, 2, 1])).unwrap();
        assert!(r.contains(&RootEnclosure::Exact { value: q(1, 1) }));
    }

    #[test]
    fn squarefree_factorization_multiplicities() {
        // (t+1)^3 (t-2)^2 t
        let f = &(&p(&[1, 1]).pow(3) * &p(&[-2, 1]).pow(2)) * &p(&[0, 1]);
        let factors = squarefree_factors(&f);
        assert_eq!(factors.len(), 3);
        assert_eq!(multiplicity(&factors, &RootEnclosure::Exact { value: q(-1, 1) }), 3);
        assert_eq!(multiplicity(&factors, &RootEnclosure::Exact { value: q(2, 1) }), 2);
        assert_eq!(multiplicity(&factors, &RootEnclosure::Exact { value: q(0, 1) }), 1);
        assert_eq!(multiplicity(&factors, &RootEnclosure::Exact { value: q(5, 1) }), 0);
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[1, 1]), &p(&[1, 4, 1])).unwrap().verdict);
        assert!(!interlaces(&p(&[1, 4, 1]), &p(&[1, 1])).is_ok_and(|c| c.verdict));
        let same = interlaces(&p(&[1, 1]), &p(&[1, 1])).unwrap();
        assert!(same.verdict);
        assert_eq!(same.shared_roots.len(), 1);
        assert_eq!(same.pattern, "α1 <= β1");
        // constants interlace anything real-rooted of degree <= 1
        assert!(interlaces(&p(&[3]), &p(&[2, 1])).unwrap().verdict);
        assert!(interlaces(&p(&[3]), &p(&[2])).unwrap().verdict);
        // g must hold the largest root
        assert!(!interlaces(&p(&[1, 1]), &p(&[2, 1])).unwrap().verdict);
        assert!(interlaces(&p(&[2, 1]), &p(&[1, 1])).unwrap().verdict);
        let c = interlaces(&p(&[1, 1]), &p(&[1, 4, 1])).unwrap();
        assert_eq!(c.pattern, "β2 <= α1 <= β1");
    }

    #[test]
    fn interlacing_errors() {
        assert_eq!(interlaces(&p(&[1, 0, 1]), &p(&[1, 0, 1])), Err(CertifyError::NotRealRooted { which: "f" }));
        assert_eq!(interlaces(&p(&[1]), &p(&[1, 4, 1])), Err(CertifyError::DegreeGap { gap: 2 }));
        assert_eq!(interlaces(&p(&[-1, -1]), &p(&[1, 1])), Err(CertifyError::NegativeLeading { which: "f" }));
        assert_eq!(interlaces(&p(&[]), &p(&[1])), Err(CertifyError::ZeroPolynomial));
    }

    #[test]
    fn interlacing_with_multiplicities() {
        // f = (t+1)^2, g = (t+1)^2 (t+2): -2 <= -1 = -1 = -1
        let f = p(&[1, 2, 1]);
        let g = &f * &p(&[2, 1]);
        assert!(interlaces(&f, &g).unwrap().verdict);
        // f = (t+1)^2, g = (t+1)(t+3): β=-1 then α,α twice in a row
        assert!(!interlaces(&f, &p(&[3, 4, 1])).unwrap().verdict);
        // f = (t+1)^2, g = (t+1)^3
        assert!(interlaces(&f, &p(&[1, 3, 3, 1])).unwrap().verdict);
    }

    #[test]
    fn obreshkoff_examples() {
        let (f, g) = (p(&[1, 1]), p(&[1, 4, 1]));
        let one = q(1, 1);
        assert!(check_obreshkoff_combination(&f, &g, &one, &-one.clone()).unwrap().verdict);
        assert!(check_obreshkoff_combination(&f, &g, &q(0, 1), &q(-3, 7)).unwrap().verdict);
        let c = check_obreshkoff_combination(&f, &g, &one, &q(0, 1)).unwrap();
        assert!(c.verdict);
        assert_eq!(c.input, g);
        for l in -3..=3 {
            for m in -3..=3 {
                if l != 0 || m != 0 {
                    assert!(check_obreshkoff_combination(&f, &g, &q(l, 2), &q(m, 3)).unwrap().verdict);
                }
            }
        }
    }

    #[test]
    fn certificates_serialize() {
        let c = interlaces(&p(&[1, 1]), &p(&[1, 4, 1])).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"], true);
        assert_eq!(v["g_roots"].as_array().unwrap().len(), 2);
        assert_eq!(v["f_roots"][0]["enclosure"]["kind"], "interval");
        let e = serde_json::to_value(isolate_roots(&p(&[1, 1])).unwrap()).unwrap();
        assert_eq!(e[0], serde_json::json!({"kind": "exact", "value": "-1"}));
    }
}
