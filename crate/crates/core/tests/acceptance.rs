//! Acceptance gate: every criterion at its full range, exact comparison.
//! One test per criterion, each printing a PASS/FAIL line with details
//! (visible with `--nocapture`).

use num_bigint::BigInt;
use oppairs_core::arith::{r2_brute, r2_closed, rep_x2p5y2_brute, rep_x2p5y2_closed};
use oppairs_core::combinat::{rank_counts_brute, rank_counts_series, RankKind};
use oppairs_core::special::{named_series, named_series_in, NamedSeriesId};
use oppairs_core::verify::{known_families, run_check, scan_progressions, CheckId};
use oppairs_core::IntegersMod;

type Outcome = Result<String, String>;

fn check(id: CheckId, params: &[(&str, i64)]) -> Outcome {
    let params = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    let r = run_check(id, &params).map_err(|e| format!("{id}: {e}"))?;
    match r.first_failure {
        None if r.pass => Ok(format!("{id} ({} comparisons)", r.checked)),
        _ => Err(format!("{id}: {:?}", r.first_failure)),
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn ensure(cond: bool, what: &str) -> Outcome {
    if cond {
        Ok(what.to_string())
    } else {
        Err(what.to_string())
    }
}

fn identities() -> Outcome {
    all(vec![
        check(CheckId::Identity3n2, &[("N", 500)]),
        check(CheckId::Identity4n3, &[("N", 500)]),
        check(CheckId::HsDissection, &[("N", 300)]),
        check(CheckId::GaussIdentities, &[("N", 1000)]),
        check(CheckId::Cor34Series, &[("N", 60)]),
        check(CheckId::ChanAIdentity, &[("N", 200)]),
    ])
}

fn anchored_constants() -> Outcome {
    let pp = named_series(NamedSeriesId::Pp, 27).map_err(|e| e.to_string())?;
    let c = pp.coeffs();
    all(vec![
        ensure(c[2] == BigInt::from(12), "pp(2) = 12"),
        ensure(c[3] == BigInt::from(32), "pp(3) = 32"),
        ensure(&c[26] % 9u32 == BigInt::from(6), "pp(26) = 6 mod 9"),
        ensure(&c[5] % 5u32 == BigInt::from(3), "pp(5) = 3 mod 5"),
    ])
}

fn congruence_families() -> Outcome {
    let pp3 = named_series_in(&IntegersMod::new(3).unwrap(), NamedSeriesId::Pp, 20_001).map_err(|e| e.to_string())?;
    let bad = (2..=20_000).step_by(3).find(|&a| pp3.coeffs()[a] != 0);
    all(vec![
        check(CheckId::Mod4All, &[("N", 5001)]),
        check(CheckId::KsvMod8, &[("N", 5001)]),
        check(CheckId::Cor23Mod64, &[("N", 5001)]),
        check(CheckId::Cor23Mod5, &[("N", 5001)]),
        match bad {
            None => Ok("pp(3n+2) = 0 mod 3 to 20000".into()),
            Some(a) => Err(format!("pp({a}) != 0 mod 3")),
        },
    ])
}

fn rank_gate() -> Outcome {
    for kind in RankKind::ALL {
        for n in 0..=12 {
            let brute = rank_counts_brute(n, kind).map_err(|e| e.to_string())?;
            let series = rank_counts_series(n, kind).map_err(|e| e.to_string())?;
            let same = brute.len() == series.len()
                && brute.iter().all(|(m, c)| series.get(m) == Some(&BigInt::from(*c)));
            if !same {
                return Err(format!("{kind} tallies differ at n = {n}"));
            }
        }
    }
    all(vec![
        Ok("brute = series for n <= 12".into()),
        check(CheckId::RankR1Thirds, &[("N", 51)]),
        check(CheckId::RankR3Thirds, &[("N", 51)]),
        check(CheckId::RankR2Mod3, &[("N", 51)]),
    ])
}

fn arithmetic_formulas() -> Outcome {
    let bad = (0..=10_000u64).find(|&n| r2_closed(n) != r2_brute(n) || rep_x2p5y2_closed(n) != rep_x2p5y2_brute(n));
    all(vec![
        check(CheckId::Thm41Pp3n, &[("N", 3001)]),
        check(CheckId::Thm43Pp5n, &[("N", 3001)]),
        match bad {
            None => Ok("closed = brute to 10000".into()),
            Some(n) => Err(format!("representation count mismatch at {n}")),
        },
        check(CheckId::Lemma44Lambert, &[("N", 2001)]),
    ])
}

fn families() -> Outcome {
    all(vec![
        check(CheckId::Thm42FamilyMod3, &[("max_arg", 60_000), ("p_max", 11), ("alpha_max", 2)]),
        check(CheckId::Thm46FamilyMod5, &[("max_arg", 60_000), ("alpha_max", 2)]),
    ])
}

fn newman_and_strange() -> Outcome {
    all(vec![
        check(CheckId::NewmanB, &[("p", 13), ("N", 101)]),
        check(CheckId::NewmanC, &[("p_max", 29), ("N", 151)]),
        check(CheckId::Thm51MultMod9, &[("p", 13), ("N", 101)]),
        check(CheckId::Strange2_13k, &[("k_max", 3)]),
        check(CheckId::Thm56Strange5pk, &[("p_max", 29), ("k_max", 2)]),
        check(CheckId::Thm55Mod5Vanish, &[("p_max", 17), ("N", 61)]),
    ])
}

fn scanner() -> Outcome {
    let mut found = Vec::new();
    for (modulus, a_max) in [(3u64, 4usize), (5, 20), (64, 8)] {
        let cands = scan_progressions(modulus, a_max, 2000).map_err(|e| e.to_string())?;
        for &(a, b) in known_families(modulus) {
            if !cands.iter().any(|c| (c.a, c.b) == (a, b)) {
                return Err(format!("missed {a}n+{b} mod {modulus}"));
            }
            found.push(format!("{a}n+{b} mod {modulus}"));
        }
    }
    Ok(found.join(", "))
}

fn gate(name: &str, f: fn() -> Outcome) {
    match f() {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(detail) => {
            println!("FAIL {name}: {detail}");
            panic!("criterion {name} failed: {detail}");
        }
    }
}

macro_rules! criteria {
    ($($test:ident => $f:ident),+ $(,)?) => {
        $(
            #[test]
            fn $test() {
                gate(stringify!($test), $f);
            }
        )+
    };
}

criteria! {
    criterion_1_identities => identities,
    criterion_2_anchored_constants => anchored_constants,
    criterion_3_congruence_families => congruence_families,
    criterion_4_ranks => rank_gate,
    criterion_5_arithmetic_formulas => arithmetic_formulas,
    criterion_6_families => families,
    criterion_7_newman_and_strange => newman_and_strange,
    criterion_8_scanner => scanner,
}
