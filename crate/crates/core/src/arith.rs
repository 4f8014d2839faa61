//! Factorization and closed-form representation counts.
//!
//! Counts use the signed, ordered lattice-point convention: `r2(0) = 1` and
//! `R(0, x^2 + 5y^2) = 1`, matching the theta-series coefficients.

use thiserror::Error;

/// Largest accepted input, `2^63 - 1`.
pub const MAX_INPUT: u64 = i64::MAX as u64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot factor zero")]
    Zero,
    #[error("{0} exceeds the supported input range")]
    TooLarge(u64),
}

/// Canonical prime factorization, primes strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of `p` (0 if absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|f| f.0 == p)
            .map_or(0, |f| f.1)
    }

    pub fn value(&self) -> u128 {
        self.factors.iter().map(|&(p, e)| (p as u128).pow(e)).product()
    }
}

/// Trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    if n > MAX_INPUT {
        return Err(ArithError::TooLarge(n));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { factors })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).is_ok_and(|f| f.factors == [(n, 1)])
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r.checked_mul(r) == Some(n)
}

fn even_exponent_indicator(w: u32) -> u64 {
    u64::from(w.is_multiple_of(2))
}

/// Number of `(x, y)` in `Z^2` with `x^2 + y^2 = n`, from the factorization:
/// `4 prod_{p = 1 mod 4} (1 + v) prod_{q = 3 mod 4} [w even]`.
pub fn r2_closed(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let f = factorize(n).expect("positive input");
    4 * f
        .factors
        .iter()
        .map(|&(p, e)| match p % 4 {
            1 => 1 + e as u64,
            3 => even_exponent_indicator(e),
            _ => 1,
        })
        .product::<u64>()
}

/// Lattice-point count for `x^2 + y^2 = n` by direct search.
pub fn r2_brute(n: u64) -> u64 {
    count_form(n, 1)
}

/// Lattice-point count for `x^2 + k y^2 = n` by direct search.
fn count_form(n: u64, k: u64) -> u64 {
    let mut count = 0;
    let mut y = 0u64;
    while k * y * y <= n {
        let rest = n - k * y * y;
        if is_square(rest) {
            let xs = if rest == 0 { 1 } else { 2 };
            let ys = if y == 0 { 1 } else { 2 };
            count += xs * ys;
        }
        y += 1;
    }
    count
}

/// Number of representations of `n` by `x^2 + 5y^2`:
/// `(1 + (-1)^{a+t}) prod (1 + v_i) prod [w_j even]`, where `a` is the
/// exponent of 2, the `v_i` are exponents of primes `= 1, 3, 7, 9 (mod 20)`,
/// the `w_j` of primes `= 11, 13, 17, 19 (mod 20)`, and `t` counts prime
/// factors `= 3, 7 (mod 20)` with multiplicity. The power of 5 is irrelevant.
pub fn rep_x2p5y2_closed(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let f = factorize(n).expect("positive input");
    let a = f.exponent(2);
    let mut t = 0u32;
    let mut product = 1u64;
    for &(p, e) in &f.factors {
        match p % 20 {
            1 | 9 => product *= 1 + e as u64,
            3 | 7 => {
                product *= 1 + e as u64;
                t += e;
            }
            11 | 13 | 17 | 19 => product *= even_exponent_indicator(e),
            _ => {}
        }
    }
    if (a + t).is_multiple_of(2) {
        2 * product
    } else {
        0
    }
}

pub fn rep_x2p5y2_brute(n: u64) -> u64 {
    count_form(n, 5)
}

fn signed_residue(value: u64, negate: bool, m: u64) -> u64 {
    let v = value % m;
    if negate && v != 0 {
        m - v
    } else {
        v
    }
}

/// `pp(3n) mod 3` from the factorization of `n`:
/// `(-1)^n prod_{p = 1 mod 4} (1 + v) prod_{q = 3 mod 4} [w even]`.
pub fn pp3n_mod3(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let f = factorize(n).expect("positive input");
    let product = f.factors.iter().fold(1u64, |acc, &(p, e)| {
        let term = match p % 4 {
            1 => (1 + e as u64) % 3,
            3 => even_exponent_indicator(e),
            _ => 1,
        };
        acc * term % 3
    });
    signed_residue(product, n % 2 == 1, 3)
}

/// `pp(5n) mod 5`, i.e. `(-1)^n R(n, x^2 + 5y^2) mod 5` with `R` from its
/// factored form.
pub fn pp5n_mod5(n: u64) -> u64 {
    signed_residue(rep_x2p5y2_closed(n), n % 2 == 1, 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(4394).unwrap().factors(), &[(2, 1), (13, 3)]);
        assert_eq!(factorize(0), Err(ArithError::Zero));
        assert_eq!(factorize(u64::MAX), Err(ArithError::TooLarge(u64::MAX)));
        let big = 1_000_003u64 * 999_983;
        assert_eq!(factorize(big).unwrap().factors(), &[(999_983, 1), (1_000_003, 1)]);
    }

    #[test]
    fn factorization_reconstructs_input() {
        for n in 1..3000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n as u128);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors().iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn r2_examples() {
        assert_eq!((r2_closed(0), r2_brute(0)), (1, 1));
        assert_eq!((r2_closed(1), r2_brute(1)), (4, 4));
        assert_eq!((r2_closed(3), r2_brute(3)), (0, 0));
        assert_eq!((r2_closed(25), r2_brute(25)), (12, 12));
    }

    #[test]
    fn x2p5y2_examples() {
        assert_eq!((rep_x2p5y2_closed(6), rep_x2p5y2_brute(6)), (4, 4));
        assert_eq!((rep_x2p5y2_closed(21), rep_x2p5y2_brute(21)), (8, 8));
        assert_eq!((rep_x2p5y2_closed(2), rep_x2p5y2_brute(2)), (0, 0));
        assert_eq!((rep_x2p5y2_closed(0), rep_x2p5y2_brute(0)), (1, 1));
    }

    #[test]
    fn closed_forms_match_brute_force() {
        for n in 0..2000 {
            assert_eq!(r2_closed(n), r2_brute(n), "r2({n})");
            assert_eq!(rep_x2p5y2_closed(n), rep_x2p5y2_brute(n), "R({n})");
        }
    }

    #[test]
    fn residue_formula_examples() {
        assert_eq!(pp3n_mod3(0), 1);
        assert_eq!(pp3n_mod3(1), 2);
        assert_eq!(pp3n_mod3(2), 1);
        assert_eq!(pp3n_mod3(3), 0);
        assert_eq!(pp5n_mod5(0), 1);
        assert_eq!(pp5n_mod5(1), 3);
        assert_eq!(pp5n_mod5(2), 0);
        assert_eq!(pp5n_mod5(6), 4);
    }

    #[test]
    fn r2_vanishes_on_odd_powers_of_3_mod_4_primes() {
        for p in [3u64, 7, 11] {
            for alpha in 0..=2u32 {
                for m in (1..=50u64).filter(|m| m % p != 0) {
                    let n = p.pow(2 * alpha + 1) * m;
                    assert_eq!(r2_closed(n), 0, "{p}^{} * {m}", 2 * alpha + 1);
                    assert_eq!(r2_brute(n), 0);
                }
            }
        }
    }

    #[test]
    fn isqrt_edges() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, (1 << 52) + 1, u32::MAX as u64 * u32::MAX as u64] {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1).checked_mul(r + 1).is_none_or(|s| s > n));
        }
    }
}
