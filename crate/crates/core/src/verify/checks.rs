//! Implementations of the registered checks.
//!
//! Failure indices are the natural index of each check: the coefficient
//! index for series identities, the argument of `pp` for congruence
//! families, and `k` for the geometric-progression congruences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith;
use crate::combinat::{rank_residue_table, RankKind};
use crate::series::{Integers, IntegersMod, Ring, TruncatedSeries};
use crate::special::{
    euler_product, eta_quotient, lambert_a, named_series, named_series_in, r8_lambert, theta_phi, theta_psi,
    EtaQuotientSpec, NamedSeriesId,
};

use super::scan::{known_families, scan_indicator};
use super::{CheckId, Params, Tally, VerifyError, MAX_ORDER};

type Res<T> = Result<T, VerifyError>;
type IntSeries = TruncatedSeries<Integers>;

pub(crate) fn run(id: CheckId, p: &Params) -> Res<Tally> {
    match id {
        CheckId::GaussIdentities => gauss_identities(p),
        CheckId::HsDissection => hs_dissection(p),
        CheckId::Identity3n2 => identity_3n2(p),
        CheckId::Identity4n3 => identity_4n3(p),
        CheckId::Cor23Mod64 => cor23_mod64(p),
        CheckId::Cor23Mod5 => cor23_mod5(p),
        CheckId::Mod4All => mod4_all(p),
        CheckId::KsvMod8 => ksv_mod8(p),
        CheckId::RamanathanPminus2 => ramanathan(p),
        CheckId::RankR1Thirds => rank_thirds(p, RankKind::R1),
        CheckId::RankR2Mod3 => rank_r2_mod3(p),
        CheckId::RankR3Thirds => rank_thirds(p, RankKind::R3),
        CheckId::RankDiffSeriesR1 => rank_diff_series(p, RankKind::R1),
        CheckId::RankDiffSeriesR2 => rank_diff_series(p, RankKind::R2),
        CheckId::RankDiffSeriesR3 => rank_diff_series(p, RankKind::R3),
        CheckId::Cor34Series => cor34_series(p),
        CheckId::ChanAIdentity => chan_a_identity(p),
        CheckId::Thm41Pp3n => thm41(p),
        CheckId::Thm42FamilyMod3 => thm42(p),
        CheckId::Thm43Pp5n => thm43(p),
        CheckId::Lemma44Lambert => lemma44(p),
        CheckId::Thm46FamilyMod5 => thm46(p),
        CheckId::NewmanB => newman_b(p),
        CheckId::Thm51MultMod9 => thm51(p),
        CheckId::Strange2_13k => strange_2_13k(p),
        CheckId::NewmanC => newman_c(p),
        CheckId::Thm55Mod5Vanish => thm55(p),
        CheckId::Thm56Strange5pk => thm56(p),
        CheckId::Rank3ProgressionScan => rank3_scan(p),
    }
}

fn int_param(p: &Params, name: &str, min: i64) -> Res<i64> {
    let value = p[name];
    if value < min {
        return Err(VerifyError::InvalidParam {
            name: name.into(),
            value,
            reason: "below the minimum for this check",
        });
    }
    Ok(value)
}

fn usize_param(p: &Params, name: &str, min: i64) -> Res<usize> {
    int_param(p, name, min).map(|v| v as usize)
}

/// Validates a series order computed from parameters.
fn order(requested: u128) -> Res<usize> {
    if requested > MAX_ORDER as u128 {
        return Err(VerifyError::RangeTooLarge {
            requested: usize::try_from(requested).unwrap_or(usize::MAX),
        });
    }
    Ok((requested as usize).max(1))
}

fn residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

fn eta(prefactor: i64, terms: &[(usize, i64)], n: usize) -> Res<IntSeries> {
    Ok(eta_quotient(&Integers, &EtaQuotientSpec::new(prefactor, 0, terms)?, n)?)
}

fn pp_exact(n: usize) -> Res<IntSeries> {
    Ok(named_series(NamedSeriesId::Pp, n)?)
}

fn pp_mod(m: u64, n: usize) -> Res<TruncatedSeries<IntegersMod>> {
    Ok(named_series_in(&IntegersMod::new(m)?, NamedSeriesId::Pp, n)?)
}

fn primes_where(lo: u64, hi: u64, pred: impl Fn(u64) -> bool) -> Vec<u64> {
    (lo..=hi).filter(|&q| arith::is_prime(q) && pred(q)).collect()
}

fn compare_series<R: Ring>(t: &mut Tally, expected: &TruncatedSeries<R>, actual: &TruncatedSeries<R>, n: usize) -> Res<()> {
    let ring = expected.ring();
    for i in 0..n {
        let (e, a) = (expected.coeff_at(i)?, actual.coeff_at(i)?);
        if e == a {
            t.record(i as i64, "", "", true);
        } else {
            t.record(i as i64, ring.display(e), ring.display(a), false);
        }
    }
    Ok(())
}

/// `phi(sign q^k)` to order `n`.
fn phi_at(sign: i64, k: usize, n: usize) -> Res<IntSeries> {
    Ok(theta_phi(&Integers, sign, n.div_ceil(k))?.inflate(k, n)?)
}

fn gauss_identities(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let mut t = Tally::default();
    let e1 = euler_product(&Integers, 1, n)?;
    let e2 = euler_product(&Integers, 2, n)?;
    // phi(-q) = (q;q)^2 / (q^2;q^2), psi(q) = (q^2;q^2)^2 / (q;q)
    compare_series(&mut t, &theta_phi(&Integers, -1, n)?, &e1.mul(&e1)?.div(&e2)?, n)?;
    compare_series(&mut t, &theta_psi(&Integers, n)?, &e2.mul(&e2)?.div(&e1)?, n)?;
    Ok(t)
}

fn hs_dissection(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let mut t = Tally::default();
    let lhs = TruncatedSeries::one(Integers, n)?.div(&theta_phi(&Integers, -1, n)?)?;

    // 3-dissection with A(q^3)
    let phi9 = phi_at(-1, 9, n)?;
    let phi3 = phi_at(-1, 3, n)?;
    let a3 = named_series(NamedSeriesId::A, n.div_ceil(3))?.inflate(3, n)?;
    let inner = phi9
        .mul(&phi9)?
        .add(&phi9.mul(&a3)?.scale_int(2)?.shift(1))?
        .add(&a3.mul(&a3)?.scale_int(4)?.shift(2))?;
    let mut rhs = phi9.mul(&inner)?;
    for _ in 0..4 {
        rhs = rhs.div(&phi3)?;
    }
    compare_series(&mut t, &rhs, &lhs, n)?;

    // 4-dissection with phi(q^4), psi(q^8)
    let ph = phi_at(1, 4, n)?;
    let ps = theta_psi(&Integers, n.div_ceil(8))?.inflate(8, n)?;
    let ph2 = ph.mul(&ph)?;
    let ps2 = ps.mul(&ps)?;
    let inner = ph2
        .mul(&ph)?
        .add(&ph2.mul(&ps)?.scale_int(2)?.shift(1))?
        .add(&ph.mul(&ps2)?.scale_int(4)?.shift(2))?
        .add(&ps2.mul(&ps)?.scale_int(8)?.shift(3))?;
    let den = phi_at(-1, 4, n)?;
    let mut rhs = inner;
    for _ in 0..4 {
        rhs = rhs.div(&den)?;
    }
    compare_series(&mut t, &rhs, &lhs, n)?;
    Ok(t)
}

fn identity_3n2(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let mut t = Tally::default();
    let lhs = pp_exact(order(3 * n as u128)?)?.dissect(3, 2)?;
    let rhs = eta(12, &[(1, -14), (2, 6), (3, 6)], n)?;
    compare_series(&mut t, &rhs, &lhs, n)?;
    Ok(t)
}

fn identity_4n3(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let mut t = Tally::default();
    let lhs = pp_exact(order(4 * n as u128)?)?.dissect(4, 3)?;
    let rhs = eta(32, &[(1, -22), (2, 20)], n)?;
    compare_series(&mut t, &rhs, &lhs, n)?;
    // 32 phi(q)^3 psi(q^2)^3 / phi(-q)^8
    let phi = theta_phi(&Integers, 1, n)?;
    let psi2 = theta_psi(&Integers, n.div_ceil(2))?.inflate(2, n)?;
    let num = phi.pow(3)?.mul(&psi2.pow(3)?)?.scale_int(32)?;
    let den = theta_phi(&Integers, -1, n)?;
    let mut theta_form = num;
    for _ in 0..8 {
        theta_form = theta_form.div(&den)?;
    }
    compare_series(&mut t, &theta_form, &lhs, n)?;
    Ok(t)
}

/// Records `pp(arg) = 0 (mod m)` for each argument.
fn expect_vanishing(t: &mut Tally, pp: &IntSeries, m: u64, args: impl Iterator<Item = usize>) -> Res<()> {
    for a in args {
        t.expect_eq(a as i64, 0, residue(pp.coeff_at(a)?, m));
    }
    Ok(())
}

fn cor23_mod64(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let pp = pp_exact(n)?;
    let mut t = Tally::default();
    expect_vanishing(&mut t, &pp, 64, (7..n).step_by(8))?;
    Ok(t)
}

fn cor23_mod5(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let pp = pp_exact(n)?;
    let mut t = Tally::default();
    for b in [11, 15, 19] {
        expect_vanishing(&mut t, &pp, 5, (b..n).step_by(20))?;
    }
    // sum pp(4n+3) q^n = 2 (q^10;q^10)^4 / ((q^5;q^5)^4 (q;q)^2)  (mod 5)
    let m = n.saturating_sub(3).div_ceil(4);
    if m > 0 {
        let lhs = pp.dissect(4, 3)?.reduce_mod(5)?;
        let rhs = eta(2, &[(1, -2), (5, -4), (10, 4)], m)?.reduce_mod(5)?;
        for i in 0..m {
            t.expect_eq((4 * i + 3) as i64, *rhs.coeff_at(i)?, *lhs.coeff_at(i)?);
        }
    }
    Ok(t)
}

fn mod4_all(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let pp = pp_exact(n)?;
    let mut t = Tally::default();
    expect_vanishing(&mut t, &pp, 4, 1..n)?;
    Ok(t)
}

fn ksv_mod8(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let pp = pp_exact(n)?;
    let mut t = Tally::default();
    for k in 1..n {
        let special = arith::is_square(k as u64) || (k % 2 == 0 && arith::is_square(k as u64 / 2));
        t.expect_eq(k as i64, if special { 4 } else { 0 }, residue(pp.coeff_at(k)?, 8));
    }
    Ok(t)
}

fn ramanathan(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let pm2 = named_series(NamedSeriesId::PMinus2, n)?;
    let mut t = Tally::default();
    for b in [2, 3, 4] {
        expect_vanishing(&mut t, &pm2, 5, (b..n).step_by(5))?;
    }
    Ok(t)
}

fn rank_thirds(p: &Params, kind: RankKind) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let table = rank_residue_table(kind, 3, n)?;
    let pp = pp_exact(n)?;
    let mut t = Tally::default();
    for arg in (2..n).step_by(3) {
        let row = &table[arg];
        let total = pp.coeff_at(arg)?;
        let third = total / 3;
        let ok = row.iter().all(|c| c * 3u32 == *total);
        t.record(arg as i64, format!("[{third}, {third}, {third}]"), fmt_row(row), ok);
    }
    Ok(t)
}

fn fmt_row(row: &[BigInt]) -> String {
    let parts: Vec<String> = row.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn rank_r2_mod3(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let table = rank_residue_table(RankKind::R2, 3, n)?;
    let pp = pp_exact(n)?;
    let mut t = Tally::default();
    for arg in (2..n).step_by(3) {
        let row = &table[arg];
        let sum: BigInt = row.iter().sum();
        let r0 = residue(&row[0], 3);
        let ok = &sum == pp.coeff_at(arg)? && row.iter().all(|c| residue(c, 3) == r0);
        t.record(arg as i64, format!("three counts congruent mod 3 summing to {}", pp.coeff_at(arg)?), fmt_row(row), ok);
    }
    Ok(t)
}

/// `sum (R_i(0,3,n) - R_i(1,3,n)) q^n` from the rank series.
fn rank_difference(kind: RankKind, n: usize) -> Res<IntSeries> {
    let table = rank_residue_table(kind, 3, n)?;
    let diffs = table.iter().map(|row| &row[0] - &row[1]).collect();
    Ok(TruncatedSeries::make(Integers, diffs, n)?)
}

fn rank_diff_series(p: &Params, kind: RankKind) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let lhs = rank_difference(kind, n)?;
    let mut t = Tally::default();
    match kind {
        RankKind::R1 => {
            // (-q^3;q^3)/(q^3;q^3) * phi(-q), with (-q^3;q^3) = (q^6;q^6)/(q^3;q^3)
            let rhs = eta(1, &[(3, -2), (6, 1)], n)?.mul(&theta_phi(&Integers, -1, n)?)?;
            compare_series(&mut t, &rhs, &lhs, n)?;
        }
        RankKind::R2 => {
            compare_series(&mut t, &named_series(NamedSeriesId::Pd, n)?, &lhs, n)?;
            let rhs = eta(1, &[(1, -3), (3, -1), (6, 1)], n)?.mul(&theta_phi(&Integers, -1, n)?)?;
            compare_series(&mut t, &rhs, &lhs, n)?;
        }
        RankKind::R3 => {
            let rhs = theta_psi(&Integers, n)?.div(&euler_product(&Integers, 3, n)?)?;
            compare_series(&mut t, &rhs, &lhs, n)?;
        }
    }
    Ok(t)
}

fn cor34_series(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let lhs = rank_difference(RankKind::R2, order(3 * n as u128)?)?.dissect(3, 2)?;
    let rhs = eta(3, &[(1, -5), (2, -3), (3, 3), (6, 3)], n)?;
    let mut t = Tally::default();
    compare_series(&mut t, &rhs, &lhs, n)?;
    Ok(t)
}

fn chan_a_identity(p: &Params) -> Res<Tally> {
    let n = order(usize_param(p, "N", 1)? as u128)?;
    let lhs = named_series(NamedSeriesId::ChanA, order(3 * n as u128)?)?.dissect(3, 2)?;
    let rhs = eta(3, &[(1, -4), (2, -4), (3, 3), (6, 3)], n)?;
    let mut t = Tally::default();
    compare_series(&mut t, &rhs, &lhs, n)?;
    Ok(t)
}

fn thm41(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 1)?;
    let pp = pp_mod(3, order(3 * (n as u128 - 1) + 1)?)?;
    let mut t = Tally::default();
    for k in 0..n {
        t.expect_eq(k as i64, arith::pp3n_mod3(k as u64), *pp.coeff_at(3 * k)?);
    }
    Ok(t)
}

fn thm42(p: &Params) -> Res<Tally> {
    let max_arg = usize_param(p, "max_arg", 0)?;
    let p_max = int_param(p, "p_max", 3)? as u64;
    let alpha_max = int_param(p, "alpha_max", 0)? as u32;
    let pp = pp_mod(3, order(max_arg as u128 + 1)?)?;
    let mut t = Tally::default();
    for q in primes_where(3, p_max, |q| q % 4 == 3) {
        for alpha in 0..=alpha_max {
            let Some(base) = q.checked_pow(2 * alpha + 1).and_then(|x| x.checked_mul(3)) else {
                break;
            };
            for s in 1..q {
                for k in 0.. {
                    let arg = base as u128 * (q as u128 * k + s as u128);
                    if arg > max_arg as u128 {
                        break;
                    }
                    t.expect_eq(arg as i64, 0, *pp.coeff_at(arg as usize)?);
                }
            }
        }
    }
    Ok(t)
}

fn thm43(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 1)?;
    let pp = pp_mod(5, order(5 * (n as u128 - 1) + 1)?)?;
    let mut t = Tally::default();
    for k in 0..n {
        let series = *pp.coeff_at(5 * k)?;
        t.expect_eq(k as i64, arith::pp5n_mod5(k as u64), series);
        let reps = arith::rep_x2p5y2_brute(k as u64) % 5;
        let signed = if k % 2 == 1 { (5 - reps) % 5 } else { reps };
        t.expect_eq(k as i64, signed, series);
    }
    Ok(t)
}

fn lemma44(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 1)?;
    let big = order(5 * (n as u128 - 1) + 1)?;
    let mut t = Tally::default();
    let mut lamberts = Vec::new();
    for r in 1..=4 {
        let a = lambert_a(r, big)?;
        for k in 1..n {
            t.expect_eq(k as i64, a.coeff_at(k)?, a.coeff_at(5 * k)?);
        }
        lamberts.push(a.truncate(n)?);
    }
    // phi(q)^8 = 1 + a_1 + 3 a_2 + 2 a_3 + 4 a_4  (mod 5)
    let r8 = r8_lambert(n)?.reduce_mod(5)?;
    let mut combo = TruncatedSeries::one(Integers, n)?;
    for (a, c) in lamberts.iter().zip([1, 3, 2, 4]) {
        combo = combo.add(&a.scale_int(c)?)?;
    }
    compare_series(&mut t, &r8, &combo.reduce_mod(5)?, n)?;
    Ok(t)
}

fn thm46(p: &Params) -> Res<Tally> {
    let max_arg = usize_param(p, "max_arg", 0)?;
    let alpha_max = int_param(p, "alpha_max", 1)? as u32;
    let pp = pp_mod(5, order(max_arg as u128 + 1)?)?;
    let mut t = Tally::default();
    for alpha in 1..=alpha_max {
        let Some(f) = 5usize.checked_pow(alpha) else { break };
        for s in [2, 3] {
            for k in 0.. {
                let arg = f as u128 * (5 * k + s);
                if arg > max_arg as u128 {
                    break;
                }
                t.expect_eq(arg as i64, 0, *pp.coeff_at(arg as usize)?);
            }
        }
        // pp(5n) = pp(5^alpha n)  (mod 5)
        if alpha >= 2 {
            for k in 1..=max_arg / f {
                t.expect_eq((f * k) as i64, *pp.coeff_at(5 * k)?, *pp.coeff_at(f * k)?);
            }
        }
    }
    Ok(t)
}

fn newman_prime(p: &Params, modulus: u64, residue: u64) -> Res<u64> {
    let q = int_param(p, "p", 2)?;
    if !arith::is_prime(q as u64) || q as u64 % modulus != residue {
        return Err(VerifyError::InvalidParam {
            name: "p".into(),
            value: q,
            reason: "must be a prime congruent to 1 mod 12",
        });
    }
    Ok(q as u64)
}

fn newman_b(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 1)?;
    let q = newman_prime(p, 12, 1)? as usize;
    let offset = (2 * q - 2) / 3;
    let b = named_series(NamedSeriesId::SmallB, order(((n as u128).saturating_sub(1)) * q as u128 + offset as u128 + 1)?)?;
    let q4 = BigInt::from(q).pow(4);
    let mut t = Tally::default();
    for k in 1..n {
        let mut lhs = b.coeff_at(k * q + offset)?.clone();
        // b(k/p - 2(p-1)/(3p)) vanishes off the nonnegative integers
        let num = 3 * k as i64 - 2 * (q as i64 - 1);
        if num >= 0 && num % (3 * q as i64) == 0 {
            lhs += &q4 * b.coeff_at((num / (3 * q as i64)) as usize)?;
        }
        let rhs = b.coeff_at(offset)? * b.coeff_at(k)?;
        t.expect_eq(k as i64, rhs, lhs);
    }
    Ok(t)
}

fn thm51(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 1)?;
    let q = newman_prime(p, 12, 1)? as usize;
    let top = (3 * (n as u128).saturating_sub(1) + 2) * q as u128;
    let pp = pp_exact(order(top.max(2 * q as u128) + 1)?)?;
    let mut t = Tally::default();
    let base = pp.coeff_at(2 * q)?;
    if !(base % 3u32).is_zero() {
        t.record((2 * q) as i64, "a multiple of 3", base, false);
        return Ok(t);
    }
    let third = base / 3u32;
    for k in 1..n {
        let arg = 3 * k + 2;
        if arg % q == 0 {
            continue;
        }
        let expected = residue(&(&third * pp.coeff_at(arg)?), 9);
        t.expect_eq((arg * q) as i64, expected, residue(pp.coeff_at(arg * q)?, 9));
    }
    Ok(t)
}

fn strange_2_13k(p: &Params) -> Res<Tally> {
    let k_max = int_param(p, "k_max", 0)? as u32;
    let top = 13u128.checked_pow(k_max).map_or(u128::MAX, |x| 2 * x);
    let pp = pp_mod(9, order(top.saturating_add(1))?)?;
    let mut t = Tally::default();
    for k in 0..=k_max {
        let arg = 2 * 13usize.pow(k);
        t.expect_eq(k as i64, (3 * (k as u64 + 1)) % 9, *pp.coeff_at(arg)?);
    }
    Ok(t)
}

fn newman_c(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 1)?;
    let p_max = int_param(p, "p_max", 5)? as u64;
    let primes = primes_where(5, p_max, |q| q % 4 == 1);
    let c = named_series(
        NamedSeriesId::SmallC,
        order((n as u128).saturating_sub(1) * p_max as u128 + 1)?,
    )?;
    let mut t = Tally::default();
    for &q in &primes {
        let q = q as usize;
        let q2 = BigInt::from(q * q);
        for k in 1..n {
            let mut lhs = c.coeff_at(k * q)?.clone();
            if k % q == 0 {
                lhs += &q2 * c.coeff_at(k / q)?;
            }
            let rhs = (&q2 + 1u32) * c.coeff_at(k)?;
            t.expect_eq(k as i64, rhs, lhs);
        }
    }
    Ok(t)
}

fn thm55(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 1)?;
    let p_max = int_param(p, "p_max", 13)? as u64;
    let primes = primes_where(13, p_max, |q| q % 20 == 13 || q % 20 == 17);
    let pp = pp_mod(5, order(5 * p_max as u128 * (n as u128).saturating_sub(1) + 1)?)?;
    let mut t = Tally::default();
    for &q in &primes {
        let q = q as usize;
        for k in (1..n).filter(|k| k % q != 0) {
            t.expect_eq((5 * q * k) as i64, 0, *pp.coeff_at(5 * q * k)?);
        }
    }
    Ok(t)
}

fn thm56(p: &Params) -> Res<Tally> {
    let k_max = int_param(p, "k_max", 0)? as u32;
    let p_max = int_param(p, "p_max", 29)? as u64;
    let primes = primes_where(2, p_max, |q| q % 20 == 1 || q % 20 == 9);
    let top = (p_max as u128).checked_pow(k_max).map_or(u128::MAX, |x| 5 * x);
    let pp = pp_mod(5, order(top.saturating_add(1))?)?;
    let mut t = Tally::default();
    for &q in &primes {
        for k in 0..=k_max {
            let arg = 5 * (q as usize).pow(k);
            t.expect_eq(k as i64, (3 * (k as u64 + 1)) % 5, *pp.coeff_at(arg)?);
        }
    }
    Ok(t)
}

fn rank3_scan(p: &Params) -> Res<Tally> {
    let n = usize_param(p, "N", 3)?;
    let a_max = usize_param(p, "a_max", 2)?;
    let modulus = int_param(p, "modulus", 2)? as u64;
    if n <= a_max {
        return Err(VerifyError::InvalidParam {
            name: "N".into(),
            value: n as i64,
            reason: "window must exceed a_max",
        });
    }
    let n = order(n as u128)?;
    let table = rank_residue_table(RankKind::R3, 3, n)?;
    let pp = pp_exact(n)?;
    let mut t = Tally::default();
    let mut vanishes = Vec::with_capacity(n);
    for (k, row) in table.iter().enumerate() {
        let total: BigInt = row.iter().sum();
        vanishes.push(residue(&total, modulus) == 0);
        t.expect_eq(k as i64, pp.coeff_at(k)?, &total);
    }
    // R_3(0, 1, n) = pp(n): the known families must resurface.
    let found = scan_indicator(&vanishes, a_max);
    for &(a, b) in known_families(modulus).iter().filter(|f| f.0 <= a_max) {
        let hit = found.iter().any(|c| (c.a, c.b) == (a, b));
        t.record(a as i64, format!("progression {a}n+{b}"), if hit { "found" } else { "missing" }, hit);
    }
    Ok(t)
}
