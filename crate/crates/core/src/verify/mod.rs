//! A registry of named checks, one per identity or congruence family.
//!
//! Every check is a pure function of its id and integer parameters and
//! returns a [`CheckReport`] with the number of individual comparisons made
//! and the smallest failing index, if any. Ranges are explicit: a check whose
//! parameters select no arguments is an error, never a vacuous pass.

mod checks;
mod scan;

pub use scan::{known_families, scan_indicator, scan_progressions, Candidate, MIN_EVIDENCE};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::combinat::CombinatError;
use crate::series::SeriesError;

/// Named integer parameters of a check, e.g. `N`, `p`, `k_max`.
pub type Params = BTreeMap<String, i64>;

/// Budget at which every default range equals its full documented size.
pub const REFERENCE_BUDGET: i64 = 500;
pub const MIN_BUDGET: i64 = 64;
/// Largest series order any check may request.
pub const MAX_ORDER: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("check `{check}` has no parameter `{name}`")]
    UnknownParam { check: CheckId, name: String },
    #[error("parameter `{name}` = {value} is invalid: {reason}")]
    InvalidParam {
        name: String,
        value: i64,
        reason: &'static str,
    },
    #[error("check `{0}` selects no arguments with the given parameters")]
    VacuousRange(CheckId),
    #[error("budget {0} is below the minimum {MIN_BUDGET}")]
    BudgetTooSmall(i64),
    #[error("requested series order {requested} exceeds the cap {MAX_ORDER}")]
    RangeTooLarge { requested: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
}

macro_rules! check_ids {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId {
            $($variant),+
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $name),+
                }
            }
        }
    };
}

check_ids! {
    GaussIdentities => "gauss_identities",
    HsDissection => "hs_dissection",
    Identity3n2 => "identity_3n2",
    Identity4n3 => "identity_4n3",
    Cor23Mod64 => "cor23_mod64",
    Cor23Mod5 => "cor23_mod5",
    Mod4All => "mod4_all",
    KsvMod8 => "ksv_mod8",
    RamanathanPminus2 => "ramanathan_pminus2",
    RankR1Thirds => "rank_r1_thirds",
    RankR2Mod3 => "rank_r2_mod3",
    RankR3Thirds => "rank_r3_thirds",
    RankDiffSeriesR1 => "rank_diff_series_r1",
    RankDiffSeriesR2 => "rank_diff_series_r2",
    RankDiffSeriesR3 => "rank_diff_series_r3",
    Cor34Series => "cor34_series",
    ChanAIdentity => "chan_a_identity",
    Thm41Pp3n => "thm41_pp3n",
    Thm42FamilyMod3 => "thm42_family_mod3",
    Thm43Pp5n => "thm43_pp5n",
    Lemma44Lambert => "lemma44_lambert",
    Thm46FamilyMod5 => "thm46_family_mod5",
    NewmanB => "newman_b",
    Thm51MultMod9 => "thm51_mult_mod9",
    Strange2_13k => "strange_2_13k",
    NewmanC => "newman_c",
    Thm55Mod5Vanish => "thm55_mod5_vanish",
    Thm56Strange5pk => "thm56_strange_5pk",
    Rank3ProgressionScan => "rank3_progression_scan",
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The first (smallest-index) disagreement found by a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: i64,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one check. Serializes with keys in the order
/// `id, params, pass, checked, first_failure`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: CheckId,
    pub params: Params,
    pub pass: bool,
    pub checked: u64,
    pub first_failure: Option<Failure>,
}

/// Default parameters of a check at a given budget.
///
/// Range parameters scale linearly with `budget / 500` (with small floors);
/// at budget 500 they are:
///
/// | check | parameters |
/// |---|---|
/// | gauss_identities | N = 1000 |
/// | hs_dissection | N = 300 |
/// | identity_3n2, identity_4n3 | N = 500 |
/// | cor23_mod64, cor23_mod5, mod4_all, ksv_mod8, ramanathan_pminus2 | N = 5001 |
/// | rank_r1_thirds, rank_r2_mod3, rank_r3_thirds | N = 51 |
/// | rank_diff_series_r1/r2/r3 | N = 100 |
/// | cor34_series | N = 60 |
/// | chan_a_identity | N = 200 |
/// | thm41_pp3n, thm43_pp5n | N = 3001 |
/// | thm42_family_mod3 | max_arg = 60000, p_max = 11, alpha_max = 2 |
/// | lemma44_lambert | N = 2001 |
/// | thm46_family_mod5 | max_arg = 60000, alpha_max = 2 |
/// | newman_b, thm51_mult_mod9 | N = 101, p = 13 |
/// | strange_2_13k | k_max = 3 |
/// | newman_c | N = 151, p_max = 29 |
/// | thm55_mod5_vanish | N = 61, p_max = 17 |
/// | thm56_strange_5pk | k_max = 2, p_max = 41 |
/// | rank3_progression_scan | N = 61, a_max = 12, modulus = 3 |
///
/// `N` is always an exclusive bound on the index it ranges over. The
/// exponents `k_max` shrink with the budget so that the largest argument
/// stays within `10 * budget` (mod 9) or `20 * budget` (mod 5).
pub fn default_params(id: CheckId, budget: i64) -> Params {
    let scaled = |full: i64, floor: i64| (full * budget / REFERENCE_BUDGET).max(floor);
    let largest_k = |base: i64, p: i64, limit: i64| {
        let mut k = 0;
        while base * p.pow(k + 1) <= limit {
            k += 1;
        }
        k as i64
    };
    let entries: Vec<(&str, i64)> = match id {
        CheckId::GaussIdentities => vec![("N", scaled(1000, 16))],
        CheckId::HsDissection => vec![("N", scaled(300, 16))],
        CheckId::Identity3n2 | CheckId::Identity4n3 => vec![("N", scaled(500, 16))],
        CheckId::Cor23Mod64
        | CheckId::Cor23Mod5
        | CheckId::Mod4All
        | CheckId::KsvMod8
        | CheckId::RamanathanPminus2 => vec![("N", scaled(5001, 64))],
        CheckId::RankR1Thirds | CheckId::RankR2Mod3 | CheckId::RankR3Thirds => vec![("N", scaled(51, 12))],
        CheckId::RankDiffSeriesR1 | CheckId::RankDiffSeriesR2 | CheckId::RankDiffSeriesR3 => {
            vec![("N", scaled(100, 12))]
        }
        CheckId::Cor34Series => vec![("N", scaled(60, 8))],
        CheckId::ChanAIdentity => vec![("N", scaled(200, 16))],
        CheckId::Thm41Pp3n | CheckId::Thm43Pp5n => vec![("N", scaled(3001, 32))],
        CheckId::Thm42FamilyMod3 => vec![("max_arg", scaled(60000, 1000)), ("p_max", 11), ("alpha_max", 2)],
        CheckId::Lemma44Lambert => vec![("N", scaled(2001, 32))],
        CheckId::Thm46FamilyMod5 => vec![("max_arg", scaled(60000, 1000)), ("alpha_max", 2)],
        CheckId::NewmanB | CheckId::Thm51MultMod9 => vec![("N", scaled(101, 8)), ("p", 13)],
        CheckId::Strange2_13k => vec![("k_max", largest_k(2, 13, 10 * budget))],
        CheckId::NewmanC => vec![("N", scaled(151, 8)), ("p_max", 29)],
        CheckId::Thm55Mod5Vanish => vec![("N", scaled(61, 4)), ("p_max", 17)],
        CheckId::Thm56Strange5pk => vec![("k_max", largest_k(5, 29, 20 * budget)), ("p_max", 41)],
        CheckId::Rank3ProgressionScan => vec![("N", scaled(61, 24)), ("a_max", 12), ("modulus", 3)],
    };
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Runs one check. Parameters absent from `params` take their defaults at
/// [`REFERENCE_BUDGET`]; unknown parameter names are rejected.
pub fn run_check(id: CheckId, params: &Params) -> Result<CheckReport, VerifyError> {
    let mut effective = default_params(id, REFERENCE_BUDGET);
    for (name, value) in params {
        match effective.get_mut(name) {
            Some(slot) => *slot = *value,
            None => {
                return Err(VerifyError::UnknownParam {
                    check: id,
                    name: name.clone(),
                })
            }
        }
    }
    let tally = checks::run(id, &effective)?;
    if tally.checked == 0 {
        return Err(VerifyError::VacuousRange(id));
    }
    Ok(CheckReport {
        id,
        params: effective,
        pass: tally.first_failure.is_none(),
        checked: tally.checked,
        first_failure: tally.first_failure,
    })
}

/// Runs every check at defaults scaled to `budget`, in [`CheckId`] order.
pub fn run_all(budget: i64) -> Result<Vec<CheckReport>, VerifyError> {
    if budget < MIN_BUDGET {
        return Err(VerifyError::BudgetTooSmall(budget));
    }
    CheckId::ALL
        .par_iter()
        .map(|&id| run_check(id, &default_params(id, budget)))
        .collect()
}

/// Accumulates comparisons for one check.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub first_failure: Option<Failure>,
}

impl Tally {
    pub fn record(&mut self, index: i64, expected: impl fmt::Display, actual: impl fmt::Display, ok: bool) {
        self.checked += 1;
        if ok {
            return;
        }
        if self.first_failure.as_ref().is_none_or(|f| index < f.index) {
            self.first_failure = Some(Failure {
                index,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    pub fn expect_eq<T: PartialEq + fmt::Display>(&mut self, index: i64, expected: T, actual: T) {
        let ok = expected == actual;
        self.record(index, expected, actual, ok);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_29_unique_names() {
        assert_eq!(CheckId::ALL.len(), 29);
        let names: std::collections::HashSet<_> = CheckId::ALL.iter().map(|c| c.name()).collect();
        assert_eq!(names.len(), 29);
        for &id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!(matches!("bogus".parse::<CheckId>(), Err(VerifyError::UnknownCheck(_))));
    }

    #[test]
    fn tally_keeps_smallest_failure() {
        let mut t = Tally::default();
        t.expect_eq(5, 1, 2);
        t.expect_eq(3, 1, 1);
        t.expect_eq(2, 0, 7);
        t.expect_eq(9, 0, 7);
        assert_eq!(t.checked, 4);
        assert_eq!(t.first_failure.unwrap().index, 2);
    }

    #[test]
    fn unknown_parameter_is_rejected() {
        let params: Params = [("bogus".to_string(), 1)].into_iter().collect();
        assert!(matches!(run_check(CheckId::Mod4All, &params), Err(VerifyError::UnknownParam { .. })));
    }

    #[test]
    fn vacuous_range_is_an_error() {
        let params: Params = [("N".to_string(), 1)].into_iter().collect();
        assert_eq!(run_check(CheckId::Mod4All, &params), Err(VerifyError::VacuousRange(CheckId::Mod4All)));
    }

    #[test]
    fn budget_floor() {
        assert_eq!(run_all(8), Err(VerifyError::BudgetTooSmall(8)));
    }

    #[test]
    fn minimum_budget_suite_passes() {
        let reports = run_all(MIN_BUDGET).unwrap();
        assert_eq!(reports.len(), CheckId::ALL.len());
        for r in reports {
            assert!(r.pass && r.checked > 0, "{r:?}");
        }
    }

    #[test]
    fn reference_defaults() {
        assert_eq!(default_params(CheckId::Strange2_13k, 500)["k_max"], 3);
        assert_eq!(default_params(CheckId::Thm56Strange5pk, 500)["k_max"], 2);
        assert_eq!(default_params(CheckId::Mod4All, 500)["N"], 5001);
        assert_eq!(default_params(CheckId::Strange2_13k, 64)["k_max"], 2);
    }
}
