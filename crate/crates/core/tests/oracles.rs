use num_bigint::BigInt;
use oppairs_core::arith::{r2_brute, r2_closed, rep_x2p5y2_brute, rep_x2p5y2_closed};
use oppairs_core::combinat::{enumerate_pairs, rank_counts_brute, rank_counts_series, RankKind};
use oppairs_core::special::{named_series, theta_phi, NamedSeriesId};
use oppairs_core::verify::{run_check, CheckId, Params};
use oppairs_core::Integers;

/// Coefficients of prod (1+q^k)^2 / (1-q^k)^2 by repeated naive multiplication.
fn pp_naive(n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); n];
    c[0] = BigInt::from(1);
    for k in 1..n {
        for _ in 0..2 {
            // times (1 + q^k)
            for i in (k..n).rev() {
                let t = c[i - k].clone();
                c[i] += t;
            }
            // divided by (1 - q^k)
            for i in k..n {
                let t = c[i - k].clone();
                c[i] += t;
            }
        }
    }
    c
}

#[test]
fn pp_matches_naive_product() {
    let naive = pp_naive(200);
    assert_eq!(named_series(NamedSeriesId::Pp, 200).unwrap().coeffs(), &naive[..]);
}

#[test]
fn pair_enumeration_counts_pp() {
    let pp = pp_naive(13);
    for n in 0..=12 {
        assert_eq!(BigInt::from(enumerate_pairs(n).unwrap().len()), pp[n], "n = {n}");
    }
}

#[test]
fn brute_ranks_match_series() {
    for kind in RankKind::ALL {
        for n in 0..=12 {
            let brute = rank_counts_brute(n, kind).unwrap();
            let series = rank_counts_series(n, kind).unwrap();
            let brute: Vec<(i64, BigInt)> = brute.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect();
            let series: Vec<(i64, BigInt)> = series.into_iter().collect();
            assert_eq!(brute, series, "{kind} n = {n}");
        }
    }
}

#[test]
fn rank_distributions_are_symmetric() {
    for kind in RankKind::ALL {
        for n in 0..=40 {
            let counts = rank_counts_series(n, kind).unwrap();
            for (m, c) in &counts {
                assert_eq!(counts.get(&-m), Some(c), "{kind} n = {n} m = {m}");
            }
        }
    }
}

#[test]
fn representation_counts_closed_vs_brute() {
    for n in 0..=10_000 {
        assert_eq!(r2_closed(n), r2_brute(n), "r2({n})");
        assert_eq!(rep_x2p5y2_closed(n), rep_x2p5y2_brute(n), "R({n})");
    }
}

#[test]
fn representation_counts_match_theta_coefficients() {
    let n = 2001;
    let r2 = named_series(NamedSeriesId::R2, n).unwrap();
    let phi = theta_phi(&Integers, 1, n).unwrap();
    let phi5 = theta_phi(&Integers, 1, n.div_ceil(5)).unwrap().inflate(5, n).unwrap();
    let form = phi.mul(&phi5).unwrap();
    for k in 0..n {
        assert_eq!(r2.coeffs()[k], BigInt::from(r2_closed(k as u64)), "r2({k})");
        assert_eq!(form.coeffs()[k], BigInt::from(rep_x2p5y2_closed(k as u64)), "R({k})");
    }
}

#[test]
fn report_json_has_stable_key_order() {
    let params: Params = [("N".to_string(), 40)].into_iter().collect();
    let report = run_check(CheckId::Identity3n2, &params).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    assert_eq!(
        text,
        r#"{"id":"identity_3n2","params":{"N":40},"pass":true,"checked":40,"first_failure":null}"#
    );
    assert_eq!(text, serde_json::to_string(&run_check(CheckId::Identity3n2, &params).unwrap()).unwrap());
}
