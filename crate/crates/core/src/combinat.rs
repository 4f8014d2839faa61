//! Overpartitions, overpartition pairs and three rank statistics.
//!
//! Two independent engines count pairs by rank: explicit enumeration (small
//! `n`) and the bivariate generating functions expanded over `Z[z, 1/z]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{LaurentIntPoly, LaurentPoly, Ring, SeriesError, TruncatedSeries};

pub const DEFAULT_OVERPARTITION_BUDGET: usize = 30;
pub const DEFAULT_PAIR_BUDGET: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("n = {n} exceeds the enumeration budget {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("invalid overpartition: {0}")]
    Invalid(String),
    #[error("residue modulus must be at least 1")]
    ZeroModulus,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Part {
    pub value: u32,
    pub overlined: bool,
}

/// A partition in which the first occurrence of each part size may be
/// overlined. Parts are stored in non-increasing order with the overlined
/// copy, if any, first among equal values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Overpartition {
    parts: Vec<Part>,
}

impl Overpartition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(parts: Vec<Part>) -> Result<Self, CombinatError> {
        for (i, p) in parts.iter().enumerate() {
            if p.value == 0 {
                return Err(CombinatError::Invalid("parts must be positive".into()));
            }
            if let Some(prev) = i.checked_sub(1).map(|j| parts[j]) {
                if prev.value < p.value {
                    return Err(CombinatError::Invalid("parts must be non-increasing".into()));
                }
                if prev.value == p.value && p.overlined {
                    return Err(CombinatError::Invalid(format!(
                        "only the first occurrence of {} may be overlined",
                        p.value
                    )));
                }
            }
        }
        Ok(Overpartition { parts })
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().map(|p| p.value as usize).sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn num_overlined(&self) -> usize {
        self.parts.iter().filter(|p| p.overlined).count()
    }

    pub fn num_plain(&self) -> usize {
        self.num_parts() - self.num_overlined()
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if p.overlined {
                write!(f, "~{}", p.value)?;
            } else {
                write!(f, "{}", p.value)?;
            }
        }
        Ok(())
    }
}

/// All overpartitions of `n`.
///
/// Order: an overpartition is a sequence of blocks (value, multiplicity,
/// overlined), values decreasing. Sequences are listed lexicographically with
/// blocks compared by larger value first, then larger multiplicity, then
/// overlined before plain. For `n = 2` this gives `~2, 2, ~1+1, 1+1`.
pub fn enumerate_overpartitions(n: usize) -> Result<Vec<Overpartition>, CombinatError> {
    enumerate_overpartitions_with_budget(n, DEFAULT_OVERPARTITION_BUDGET)
}

pub fn enumerate_overpartitions_with_budget(n: usize, budget: usize) -> Result<Vec<Overpartition>, CombinatError> {
    if n > budget {
        return Err(CombinatError::BudgetExceeded { n, budget });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_overpartitions(n, n, &mut current, &mut out);
    Ok(out)
}

fn extend_overpartitions(remaining: usize, max_value: usize, current: &mut Vec<Part>, out: &mut Vec<Overpartition>) {
    if remaining == 0 {
        out.push(Overpartition { parts: current.clone() });
        return;
    }
    for v in (1..=max_value.min(remaining)).rev() {
        for mult in (1..=remaining / v).rev() {
            for overlined in [true, false] {
                let mark = current.len();
                current.push(Part { value: v as u32, overlined });
                current.extend(std::iter::repeat_n(Part { value: v as u32, overlined: false }, mult - 1));
                extend_overpartitions(remaining - mult * v, v - 1, current, out);
                current.truncate(mark);
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OverpartitionPair {
    pub first: Overpartition,
    pub second: Overpartition,
}

impl OverpartitionPair {
    pub fn weight(&self) -> usize {
        self.first.weight() + self.second.weight()
    }
}

impl fmt::Display for OverpartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// All overpartition pairs of `n`, ordered by the weight of the first
/// component, then by the overpartition order of each component.
pub fn enumerate_pairs(n: usize) -> Result<Vec<OverpartitionPair>, CombinatError> {
    enumerate_pairs_with_budget(n, DEFAULT_PAIR_BUDGET)
}

pub fn enumerate_pairs_with_budget(n: usize, budget: usize) -> Result<Vec<OverpartitionPair>, CombinatError> {
    if n > budget {
        return Err(CombinatError::BudgetExceeded { n, budget });
    }
    let by_weight: Vec<Vec<Overpartition>> = (0..=n)
        .map(|k| enumerate_overpartitions_with_budget(k, n))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for k in 0..=n {
        for first in &by_weight[k] {
            for second in &by_weight[n - k] {
                out.push(OverpartitionPair {
                    first: first.clone(),
                    second: second.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RankKind {
    /// number of parts
    R1,
    /// number of overlined parts
    R2,
    /// number of non-overlined parts
    R3,
}

impl RankKind {
    pub const ALL: [RankKind; 3] = [RankKind::R1, RankKind::R2, RankKind::R3];

    fn statistic(self, p: &Overpartition) -> i64 {
        (match self {
            RankKind::R1 => p.num_parts(),
            RankKind::R2 => p.num_overlined(),
            RankKind::R3 => p.num_plain(),
        }) as i64
    }
}

impl fmt::Display for RankKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankKind::R1 => "r1",
            RankKind::R2 => "r2",
            RankKind::R3 => "r3",
        })
    }
}

impl FromStr for RankKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "r1" | "1" => Ok(RankKind::R1),
            "r2" | "2" => Ok(RankKind::R2),
            "r3" | "3" => Ok(RankKind::R3),
            _ => Err(format!("unknown rank kind `{s}` (expected r1, r2 or r3)")),
        }
    }
}

/// `n_i(first) - n_i(second)`. The empty pair has rank 0 for every kind.
pub fn rank(pair: &OverpartitionPair, kind: RankKind) -> i64 {
    kind.statistic(&pair.first) - kind.statistic(&pair.second)
}

/// Exhaustive tally `m -> R_i(m, n)` over explicitly enumerated pairs.
pub fn rank_counts_brute(n: usize, kind: RankKind) -> Result<BTreeMap<i64, u64>, CombinatError> {
    let mut counts = BTreeMap::new();
    for pair in enumerate_pairs(n)? {
        *counts.entry(rank(&pair, kind)).or_insert(0) += 1;
    }
    Ok(counts)
}

/// The bivariate generating function `sum R_i(m, n) z^m q^n` to order `order`,
/// with a z-window of `order`.
///
/// - R1: `prod (1 + z q^k)(1 + q^k / z) / ((1 - z q^k)(1 - q^k / z))`
/// - R2: `prod (1 + z q^k)(1 + q^k / z) / (1 - q^k)^2`
/// - R3: `prod (1 + q^k)^2 / ((1 - z q^k)(1 - q^k / z))`
pub fn rank_series(kind: RankKind, order: usize) -> Result<TruncatedSeries<LaurentIntPoly>, CombinatError> {
    let ring = LaurentIntPoly::new(order);
    let int = |c: i64| LaurentPoly::constant(BigInt::from(c));
    let z_sym = |c: i64| LaurentPoly::from_terms([(1, BigInt::from(c)), (-1, BigInt::from(c))]);
    // Each factor pair is 1 + middle q^k + q^{2k}.
    let (num_mid, den_mid) = match kind {
        RankKind::R1 => (z_sym(1), z_sym(-1)),
        RankKind::R2 => (z_sym(1), int(-2)),
        RankKind::R3 => (int(2), z_sym(-1)),
    };
    let mut acc = TruncatedSeries::one(ring, order)?;
    for k in 1..order {
        let factor = |mid: &LaurentPoly| -> Result<TruncatedSeries<LaurentIntPoly>, SeriesError> {
            let mut c = vec![ring.zero(); (2 * k + 1).min(order)];
            c[0] = ring.one();
            c[k] = mid.clone();
            if 2 * k < order {
                c[2 * k] = ring.one();
            }
            TruncatedSeries::make(ring, c, order)
        };
        acc = acc.mul(&factor(&num_mid)?)?.div(&factor(&den_mid)?)?;
    }
    Ok(acc)
}

/// `m -> R_i(m, n)` read off the rank series.
pub fn rank_counts_series(n: usize, kind: RankKind) -> Result<BTreeMap<i64, BigInt>, CombinatError> {
    let s = rank_series(kind, n + 1)?;
    Ok(s.coeff_at(n)?.terms().map(|(m, c)| (m, c.clone())).collect())
}

/// Folds a Laurent coefficient by the residue of the z-exponent mod `t`.
pub fn fold_residues(poly: &LaurentPoly, t: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); t];
    for (m, c) in poly.terms() {
        out[m.mod_floor(&(t as i64)) as usize] += c;
    }
    out
}

/// `[R_i(0, t, n), ..., R_i(t-1, t, n)]`.
pub fn rank_counts_mod(n: usize, kind: RankKind, t: usize) -> Result<Vec<BigInt>, CombinatError> {
    if t == 0 {
        return Err(CombinatError::ZeroModulus);
    }
    let s = rank_series(kind, n + 1)?;
    Ok(fold_residues(s.coeff_at(n)?, t))
}

/// Residue tables for every `n < order` from a single series expansion.
pub fn rank_residue_table(kind: RankKind, t: usize, order: usize) -> Result<Vec<Vec<BigInt>>, CombinatError> {
    if t == 0 {
        return Err(CombinatError::ZeroModulus);
    }
    let s = rank_series(kind, order)?;
    Ok(s.coeffs().iter().map(|p| fold_residues(p, t)).collect())
}
