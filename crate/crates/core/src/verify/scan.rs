//! Heuristic search for arithmetic progressions on which a sequence vanishes
//! modulo `M`. Candidates are evidence over a finite window, never proofs.

use serde::Serialize;

use crate::series::IntegersMod;
use crate::special::{named_series_in, NamedSeriesId};

use super::VerifyError;

/// Fewer sampled terms than this and a progression is not reported.
pub const MIN_EVIDENCE: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
    /// Number of sampled arguments `A n + B` below the window.
    pub evidence: usize,
    /// A smaller candidate progression containing this one, if any.
    pub nested_in: Option<(usize, usize)>,
}

/// Scans `A n + B` for `2 <= A <= a_max`, `0 <= B < A`, keeping the
/// progressions on which `vanishes` holds at every sampled index below `n`.
pub fn scan_indicator(vanishes: &[bool], a_max: usize) -> Vec<Candidate> {
    let n = vanishes.len();
    let mut out: Vec<Candidate> = Vec::new();
    for a in 2..=a_max {
        for b in 0..a {
            let evidence = (b..n).step_by(a).count();
            if evidence < MIN_EVIDENCE || !(b..n).step_by(a).all(|i| vanishes[i]) {
                continue;
            }
            let nested_in = out
                .iter()
                .find(|c| a % c.a == 0 && b % c.a == c.b)
                .map(|c| (c.a, c.b));
            out.push(Candidate { a, b, evidence, nested_in });
        }
    }
    out
}

/// Progressions `A n + B` with `pp(A n + B) = 0 (mod modulus)` for every
/// argument below `n`, sorted by `(A, B)`.
pub fn scan_progressions(modulus: u64, a_max: usize, n: usize) -> Result<Vec<Candidate>, VerifyError> {
    if a_max < 2 {
        return Err(VerifyError::InvalidParam {
            name: "a_max".into(),
            value: a_max as i64,
            reason: "must be at least 2",
        });
    }
    if n <= a_max {
        return Err(VerifyError::InvalidParam {
            name: "N".into(),
            value: n as i64,
            reason: "window must exceed a_max",
        });
    }
    let ring = IntegersMod::new(modulus)?;
    let pp = named_series_in(&ring, NamedSeriesId::Pp, n)?;
    let vanishes: Vec<bool> = pp.coeffs().iter().map(|&c| c == 0).collect();
    Ok(scan_indicator(&vanishes, a_max))
}

/// Progressions established for `pp` modulo small moduli.
pub fn known_families(modulus: u64) -> &'static [(usize, usize)] {
    match modulus {
        3 => &[(3, 2)],
        5 => &[(20, 11), (20, 15), (20, 19)],
        64 => &[(8, 7)],
        _ => &[],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_scan_marks_nesting() {
        // vanishes exactly at odd indices
        let v: Vec<bool> = (0..40).map(|i| i % 2 == 1).collect();
        let c = scan_indicator(&v, 4);
        let pairs: Vec<_> = c.iter().map(|c| (c.a, c.b, c.nested_in)).collect();
        assert_eq!(pairs, vec![(2, 1, None), (4, 1, Some((2, 1))), (4, 3, Some((2, 1)))]);
    }

    #[test]
    fn range_errors() {
        assert!(scan_progressions(2, 1, 10).is_err());
        assert!(scan_progressions(3, 4, 4).is_err());
        assert!(scan_progressions(1, 4, 100).is_err());
    }

    #[test]
    fn mod3_scan_finds_three_n_plus_two() {
        let c = scan_progressions(3, 4, 500).unwrap();
        assert!(c.iter().any(|c| (c.a, c.b) == (3, 2)));
    }
}
