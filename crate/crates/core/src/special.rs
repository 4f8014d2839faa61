//! Named q-series: Euler products, eta quotients, theta functions, Lambert
//! series and the generating functions assembled from them.
//!
//! Every generator is written against the [`Ring`] trait and performs the same
//! exact construction in whichever ring it is handed. Over [`Integers`] the
//! result is the exact expansion; over `Z/MZ` it is the image of that
//! expansion, because every step (sparse products, divisions by series with
//! constant term 1) commutes with reduction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::series::{Integers, Ring, SeriesError, TruncatedSeries};

type Result<T> = std::result::Result<T, SeriesError>;

/// `(q^k; q^k)_inf` to order `order`, from the pentagonal number theorem.
///
/// Nonzero terms sit at `k * j(3j-1)/2` with sign `(-1)^j`, `j` ranging over
/// all integers.
pub fn euler_product<R: Ring>(ring: &R, k: usize, order: usize) -> Result<TruncatedSeries<R>> {
    if k == 0 {
        return Err(SeriesError::InvalidArgument("Euler product scale must be >= 1".into()));
    }
    let mut s = TruncatedSeries::one(ring.clone(), order)?.coeffs().to_vec();
    let minus_one = ring.from_i64(-1);
    let one = ring.one();
    for j in 1usize.. {
        let lo = k * (j * (3 * j - 1) / 2);
        if lo >= order {
            break;
        }
        let sign = if j % 2 == 1 { &minus_one } else { &one };
        s[lo] = sign.clone();
        let hi = k * (j * (3 * j + 1) / 2);
        if hi < order {
            s[hi] = sign.clone();
        }
    }
    TruncatedSeries::make(ring.clone(), s, order)
}

/// The symbolic product `prefactor * q^qshift * prod (q^k; q^k)_inf^e`.
///
/// Terms are kept in canonical form: scales strictly increasing, exponents
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    prefactor: i64,
    qshift: usize,
    terms: Vec<(usize, i64)>,
}

impl EtaQuotientSpec {
    /// Canonicalizes the term list: merges repeated scales and drops zero
    /// exponents.
    pub fn new(prefactor: i64, qshift: usize, terms: &[(usize, i64)]) -> Result<Self> {
        let mut merged: Vec<(usize, i64)> = Vec::new();
        let mut sorted = terms.to_vec();
        sorted.sort_by_key(|t| t.0);
        for (k, e) in sorted {
            if k == 0 {
                return Err(SeriesError::InvalidArgument("eta factor scale must be >= 1".into()));
            }
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += e,
                _ => merged.push((k, e)),
            }
        }
        merged.retain(|t| t.1 != 0);
        Ok(EtaQuotientSpec {
            prefactor,
            qshift,
            terms: merged,
        })
    }

    pub fn prefactor(&self) -> i64 {
        self.prefactor
    }

    pub fn qshift(&self) -> usize {
        self.qshift
    }

    pub fn terms(&self) -> &[(usize, i64)] {
        &self.terms
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * q^{}", self.prefactor, self.qshift)?;
        if !self.terms.is_empty() {
            write!(f, " *")?;
        }
        for (k, e) in &self.terms {
            write!(f, " ({k})^{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("bad eta-quotient spec near `{token}`: {reason}")]
pub struct SpecParseError {
    pub token: String,
    pub reason: &'static str,
}

impl FromStr for EtaQuotientSpec {
    type Err = SpecParseError;

    /// Grammar: `c * q^d * (k1)^e1 (k2)^e2 ...`. Every piece is optional;
    /// `*` and whitespace both separate tokens, `q` alone means `q^1` and
    /// `(k)` alone means `(k)^1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = |token: &str, reason| SpecParseError {
            token: token.to_string(),
            reason,
        };
        let mut prefactor: Option<i64> = None;
        let mut qshift: Option<usize> = None;
        let mut terms = Vec::new();
        for tok in s.split(|c: char| c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            if let Some(rest) = tok.strip_prefix('(') {
                let (scale, tail) = rest.split_once(')').ok_or_else(|| err(tok, "unclosed '('"))?;
                let k: usize = scale.trim().parse().map_err(|_| err(tok, "scale is not a positive integer"))?;
                if k == 0 {
                    return Err(err(tok, "scale must be >= 1"));
                }
                let e = match tail {
                    "" => 1,
                    t => {
                        let t = t.strip_prefix('^').ok_or_else(|| err(tok, "expected '^' after factor"))?;
                        let t = t.trim_start_matches('(').trim_end_matches(')');
                        t.parse::<i64>().map_err(|_| err(tok, "exponent is not an integer"))?
                    }
                };
                terms.push((k, e));
            } else if let Some(rest) = tok.strip_prefix('q') {
                if qshift.is_some() {
                    return Err(err(tok, "repeated q power"));
                }
                qshift = Some(match rest {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| err(tok, "q power must be a nonnegative integer"))?,
                });
            } else {
                if prefactor.is_some() || qshift.is_some() || !terms.is_empty() {
                    return Err(err(tok, "the integer prefactor must come first"));
                }
                prefactor = Some(tok.parse().map_err(|_| err(tok, "unrecognized token"))?);
            }
        }
        EtaQuotientSpec::new(prefactor.unwrap_or(1), qshift.unwrap_or(0), &terms)
            .map_err(|_| err(s, "invalid term"))
    }
}

/// Expands an eta quotient.
///
/// Each factor `(q^k; q^k)_inf^e` is applied as `|e|` sparse products (or
/// sparse divisions for `e < 0`) by the pentagonal expansion, so the cost is
/// `O(sum |e| * N^{3/2} / sqrt k)`.
pub fn eta_quotient<R: Ring>(ring: &R, spec: &EtaQuotientSpec, order: usize) -> Result<TruncatedSeries<R>> {
    let mut acc = TruncatedSeries::monomial(ring.clone(), ring.from_i64(spec.prefactor), spec.qshift, order)?;
    for &(k, e) in &spec.terms {
        let f = euler_product(ring, k, order)?;
        for _ in 0..e.unsigned_abs() {
            acc = if e > 0 { acc.mul(&f)? } else { acc.div(&f)? };
        }
    }
    Ok(acc)
}

/// `phi(sign * q) = sum_{n in Z} (sign q)^{n^2}`.
pub fn theta_phi<R: Ring>(ring: &R, sign: i64, order: usize) -> Result<TruncatedSeries<R>> {
    if sign != 1 && sign != -1 {
        return Err(SeriesError::InvalidArgument("theta sign must be +1 or -1".into()));
    }
    let mut c = vec![ring.zero(); order.max(1)];
    c[0] = ring.one();
    for n in 1usize.. {
        if n * n >= order {
            break;
        }
        let v = if sign < 0 && n % 2 == 1 { -2 } else { 2 };
        c[n * n] = ring.from_i64(v);
    }
    TruncatedSeries::make(ring.clone(), c, order)
}

/// `psi(q) = sum_{n >= 0} q^{n(n+1)/2}`.
pub fn theta_psi<R: Ring>(ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
    let mut c = vec![ring.zero(); order.max(1)];
    for n in 0usize.. {
        let t = n * (n + 1) / 2;
        if t >= order {
            break;
        }
        c[t] = ring.one();
    }
    TruncatedSeries::make(ring.clone(), c, order)
}

/// Identifiers of the generating functions the crate knows by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedSeriesId {
    /// overpartition pairs, `1/phi(-q)^2`
    Pp,
    /// overpartitions, `1/phi(-q)`
    Op,
    /// `(q;q)(q^6;q^6)^2 / ((q^2;q^2)(q^3;q^3))`
    A,
    /// residue-1 part of the 3-dissection of `phi(-q)`
    B,
    /// `(q;q)^4 (q^2;q^2)^6`
    SmallB,
    /// `phi(-q)^6`
    SmallC,
    /// `1/(q;q)^2`
    PMinus2,
    /// `1/((q;q)(q^2;q^2))`
    ChanA,
    /// partitions with designated summands
    Pd,
    PhiPlus,
    PhiMinus,
    Psi,
    /// sums of two squares, `phi(q)^2`
    R2,
    /// sums of eight squares, `phi(q)^8`
    R8,
}

impl NamedSeriesId {
    pub const ALL: [NamedSeriesId; 14] = [
        NamedSeriesId::Pp,
        NamedSeriesId::Op,
        NamedSeriesId::A,
        NamedSeriesId::B,
        NamedSeriesId::SmallB,
        NamedSeriesId::SmallC,
        NamedSeriesId::PMinus2,
        NamedSeriesId::ChanA,
        NamedSeriesId::Pd,
        NamedSeriesId::PhiPlus,
        NamedSeriesId::PhiMinus,
        NamedSeriesId::Psi,
        NamedSeriesId::R2,
        NamedSeriesId::R8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedSeriesId::Pp => "pp",
            NamedSeriesId::Op => "op",
            NamedSeriesId::A => "A",
            NamedSeriesId::B => "B",
            NamedSeriesId::SmallB => "b",
            NamedSeriesId::SmallC => "c",
            NamedSeriesId::PMinus2 => "p_minus2",
            NamedSeriesId::ChanA => "chan_a",
            NamedSeriesId::Pd => "PD",
            NamedSeriesId::PhiPlus => "phi_plus",
            NamedSeriesId::PhiMinus => "phi_minus",
            NamedSeriesId::Psi => "psi",
            NamedSeriesId::R2 => "r2",
            NamedSeriesId::R8 => "r8",
        }
    }
}

impl fmt::Display for NamedSeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown series `{0}`")]
pub struct UnknownSeries(pub String);

impl FromStr for NamedSeriesId {
    type Err = UnknownSeries;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        NamedSeriesId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownSeries(s.to_string()))
    }
}

fn eta<R: Ring>(ring: &R, prefactor: i64, terms: &[(usize, i64)], order: usize) -> Result<TruncatedSeries<R>> {
    eta_quotient(ring, &EtaQuotientSpec::new(prefactor, 0, terms)?, order)
}

/// Expands a named series over an arbitrary ring.
pub fn named_series_in<R: Ring>(ring: &R, id: NamedSeriesId, order: usize) -> Result<TruncatedSeries<R>> {
    let one = || TruncatedSeries::one(ring.clone(), order);
    match id {
        NamedSeriesId::Pp => {
            let phi = theta_phi(ring, -1, order)?;
            one()?.div(&phi)?.div(&phi)
        }
        NamedSeriesId::Op => one()?.div(&theta_phi(ring, -1, order)?),
        NamedSeriesId::A => eta(ring, 1, &[(1, 1), (2, -1), (3, -1), (6, 2)], order),
        NamedSeriesId::B => theta_phi(ring, -1, 3 * order + 1)?.dissect(3, 1),
        NamedSeriesId::SmallB => eta(ring, 1, &[(1, 4), (2, 6)], order),
        NamedSeriesId::SmallC => theta_phi(ring, -1, order)?.pow(6),
        NamedSeriesId::PMinus2 => eta(ring, 1, &[(1, -2)], order),
        NamedSeriesId::ChanA => eta(ring, 1, &[(1, -1), (2, -1)], order),
        NamedSeriesId::Pd => eta(ring, 1, &[(1, -1), (2, -1), (3, -1), (6, 1)], order),
        NamedSeriesId::PhiPlus => theta_phi(ring, 1, order),
        NamedSeriesId::PhiMinus => theta_phi(ring, -1, order),
        NamedSeriesId::Psi => theta_psi(ring, order),
        NamedSeriesId::R2 => theta_phi(ring, 1, order)?.pow(2),
        NamedSeriesId::R8 => theta_phi(ring, 1, order)?.pow(8),
    }
}

/// Exact integer expansion of a named series.
pub fn named_series(id: NamedSeriesId, order: usize) -> Result<TruncatedSeries<Integers>> {
    named_series_in(&Integers, id, order)
}

/// `sum_{k >= 0} q^{5k+r} / (1 - (-q)^{5k+r})`, for `1 <= r <= 4`.
pub fn lambert_a(r: usize, order: usize) -> Result<TruncatedSeries<Integers>> {
    if !(1..=4).contains(&r) {
        return Err(SeriesError::InvalidArgument(format!("Lambert residue must be in 1..=4, got {r}")));
    }
    let mut c = vec![0i64; order.max(1)];
    for m in (r..order).step_by(5) {
        // q^m / (1 - (-q)^m) = sum_{j >= 0} (-1)^{mj} q^{m(j+1)}
        for (j, pos) in (m..order).step_by(m).enumerate() {
            c[pos] += if m % 2 == 1 && j % 2 == 1 { -1 } else { 1 };
        }
    }
    TruncatedSeries::from_ints(Integers, &c, order)
}

/// `1 + 16 sum_{n >= 1} n^3 q^n / (1 - (-q)^n)`, the Lambert form of
/// `phi(q)^8`.
pub fn r8_lambert(order: usize) -> Result<TruncatedSeries<Integers>> {
    let mut c = vec![BigInt::from(0); order.max(1)];
    c[0] = BigInt::from(1);
    for n in 1..order {
        let cube = BigInt::from(n as u64).pow(3) * 16;
        for (j, pos) in (n..order).step_by(n).enumerate() {
            if n % 2 == 1 && j % 2 == 1 {
                c[pos] -= &cube;
            } else {
                c[pos] += &cube;
            }
        }
    }
    TruncatedSeries::make(Integers, c, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::IntegersMod;

    fn ints(s: &TruncatedSeries<Integers>) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    /// Naive `prod_{j >= 1} (1 - q^{jk})`, one binomial factor at a time.
    fn naive_euler(k: usize, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order];
        c[0] = 1;
        let mut step = k;
        while step < order {
            for i in (step..order).rev() {
                c[i] -= c[i - step];
            }
            step += k;
        }
        c
    }

    #[test]
    fn euler_product_examples() {
        assert_eq!(ints(&euler_product(&Integers, 1, 8).unwrap()), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        assert_eq!(ints(&euler_product(&Integers, 2, 5).unwrap()), vec![1, 0, -1, 0, -1]);
        assert_eq!(ints(&euler_product(&Integers, 9, 6).unwrap()), vec![1, 0, 0, 0, 0, 0]);
        assert!(euler_product(&Integers, 0, 6).is_err());
    }

    #[test]
    fn euler_product_matches_naive_product() {
        for k in 1..=6 {
            for order in [1, 2, 17, 200] {
                assert_eq!(ints(&euler_product(&Integers, k, order).unwrap()), naive_euler(k, order), "k={k} N={order}");
            }
        }
    }

    #[test]
    fn eta_quotient_constants() {
        let s = EtaQuotientSpec::new(12, 0, &[(2, 6), (3, 6), (1, -14)]).unwrap();
        assert_eq!(eta_quotient(&Integers, &s, 5).unwrap().coeff_at(0).unwrap(), &BigInt::from(12));
        let s = EtaQuotientSpec::new(32, 0, &[(2, 20), (1, -22)]).unwrap();
        assert_eq!(eta_quotient(&Integers, &s, 5).unwrap().coeff_at(0).unwrap(), &BigInt::from(32));
        let s = EtaQuotientSpec::new(5, 2, &[]).unwrap();
        assert_eq!(ints(&eta_quotient(&Integers, &s, 4).unwrap()), vec![0, 0, 5, 0]);
    }

    #[test]
    fn eta_spec_canonical_form() {
        let s = EtaQuotientSpec::new(1, 0, &[(3, 2), (1, 1), (3, -2), (2, 4), (1, 1)]).unwrap();
        assert_eq!(s.terms(), &[(1, 2), (2, 4)]);
        assert!(EtaQuotientSpec::new(1, 0, &[(0, 1)]).is_err());
    }

    #[test]
    fn eta_spec_parsing() {
        let s: EtaQuotientSpec = "12 * (2)^6 (3)^6 (1)^-14".parse().unwrap();
        assert_eq!(s, EtaQuotientSpec::new(12, 0, &[(1, -14), (2, 6), (3, 6)]).unwrap());
        let s: EtaQuotientSpec = "3*q^2*(1)^(-1) (6)".parse().unwrap();
        assert_eq!(s, EtaQuotientSpec::new(3, 2, &[(1, -1), (6, 1)]).unwrap());
        let s: EtaQuotientSpec = "q (1)^2".parse().unwrap();
        assert_eq!((s.prefactor(), s.qshift()), (1, 1));
        assert_eq!(s.to_string().parse::<EtaQuotientSpec>().unwrap(), s);
        for bad in ["(0)^1", "(1", "(1)^x", "q^-1", "x", "(1) 3", "q q"] {
            assert!(bad.parse::<EtaQuotientSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn theta_definitions() {
        assert_eq!(ints(&theta_phi(&Integers, 1, 10).unwrap()), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        assert_eq!(ints(&theta_phi(&Integers, -1, 10).unwrap()), vec![1, -2, 0, 0, 2, 0, 0, 0, 0, -2]);
        assert_eq!(ints(&theta_psi(&Integers, 11).unwrap()), vec![1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]);
        assert!(theta_phi(&Integers, 2, 10).is_err());
    }

    #[test]
    fn named_series_prefixes() {
        let pp = named_series(NamedSeriesId::Pp, 6).unwrap();
        assert_eq!(ints(&pp), vec![1, 4, 12, 32, 76, 168]);
        assert_eq!(ints(&named_series(NamedSeriesId::SmallC, 4).unwrap()), vec![1, -12, 60, -160]);
        assert_eq!(ints(&named_series(NamedSeriesId::SmallB, 2).unwrap()), vec![1, -4]);
        assert_eq!(ints(&named_series(NamedSeriesId::R2, 3).unwrap()), vec![1, 4, 4]);
        assert_eq!(ints(&named_series(NamedSeriesId::Op, 4).unwrap()), vec![1, 2, 4, 8]);
    }

    #[test]
    fn b_series_is_the_residue_one_dissection() {
        // phi(-q) = phi(-q^9) + q B(q^3)
        let n = 40;
        let b = named_series(NamedSeriesId::B, n).unwrap();
        let phi = theta_phi(&Integers, -1, 3 * n).unwrap();
        let phi9 = theta_phi(&Integers, -1, n).unwrap().inflate(9, 3 * n).unwrap();
        let rhs = phi9.add(&b.inflate(3, 3 * n).unwrap().shift(1)).unwrap();
        assert_eq!(phi, rhs);
    }

    #[test]
    fn named_ids_round_trip() {
        for id in NamedSeriesId::ALL {
            assert_eq!(id.name().parse::<NamedSeriesId>().unwrap(), id);
        }
        assert!("bogus".parse::<NamedSeriesId>().is_err());
    }

    #[test]
    fn gauss_product_identities() {
        let n = 400;
        let e1 = euler_product(&Integers, 1, n).unwrap();
        let e2 = euler_product(&Integers, 2, n).unwrap();
        let phi = e1.mul(&e1).unwrap().div(&e2).unwrap();
        assert_eq!(phi, theta_phi(&Integers, -1, n).unwrap());
        let psi = e2.mul(&e2).unwrap().div(&e1).unwrap();
        assert_eq!(psi, theta_psi(&Integers, n).unwrap());
    }

    #[test]
    fn pp_is_the_square_of_op() {
        let n = 201;
        let op = named_series(NamedSeriesId::Op, n).unwrap();
        let pp = named_series(NamedSeriesId::Pp, n).unwrap();
        for m in 0..n {
            let conv: BigInt = (0..=m).map(|k| &op.coeffs()[k] * &op.coeffs()[m - k]).sum();
            assert_eq!(conv, pp.coeffs()[m], "n={m}");
        }
    }

    #[test]
    fn pp_product_forms_agree() {
        // (-q;q)^2/(q;q)^2 = (q^2;q^2)^2 / (q;q)^4
        let n = 500;
        let pp = named_series(NamedSeriesId::Pp, n).unwrap();
        let eta = eta_quotient(&Integers, &EtaQuotientSpec::new(1, 0, &[(1, -4), (2, 2)]).unwrap(), n).unwrap();
        assert_eq!(pp, eta);
    }

    #[test]
    fn modular_construction_is_the_reduction() {
        let n = 300;
        let r = IntegersMod::new(9).unwrap();
        for id in NamedSeriesId::ALL {
            let exact = named_series(id, n).unwrap().reduce_mod(9).unwrap();
            assert_eq!(named_series_in(&r, id, n).unwrap(), exact, "{id}");
        }
    }

    #[test]
    fn lambert_examples() {
        assert_eq!(ints(&lambert_a(1, 6).unwrap()), vec![0, 1, -1, 1, -1, 1]);
        let a = lambert_a(1, 6).unwrap();
        assert_eq!(a.coeff_at(5).unwrap(), a.coeff_at(1).unwrap());
        assert_eq!(ints(&lambert_a(4, 4).unwrap()), vec![0, 0, 0, 0]);
        assert!(lambert_a(0, 5).is_err());
        assert!(lambert_a(5, 5).is_err());
    }

    #[test]
    fn r8_lambert_matches_theta_power() {
        let l = r8_lambert(50).unwrap();
        assert_eq!(l.coeff_at(0).unwrap(), &BigInt::from(1));
        assert_eq!(l.coeff_at(1).unwrap(), &BigInt::from(16));
        assert_eq!(l, theta_phi(&Integers, 1, 50).unwrap().pow(8).unwrap());
    }
}
