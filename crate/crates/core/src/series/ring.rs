//! Coefficient rings for truncated series.
//!
//! Three rings are provided: exact integers, integers modulo `M`, and Laurent
//! polynomials in a single auxiliary variable `z` with integer coefficients
//! and a bounded exponent window.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SeriesError;

/// Descriptor of a coefficient ring, used for diagnostics and ring-equality
/// checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    ExactInteger,
    IntegersMod(u64),
    LaurentIntPoly(usize),
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::ExactInteger => write!(f, "Z"),
            CoefficientRing::IntegersMod(m) => write!(f, "Z/{m}Z"),
            CoefficientRing::LaurentIntPoly(w) => write!(f, "Z[z, 1/z] (window {w})"),
        }
    }
}

/// A commutative ring with unity, as seen by the series engine.
///
/// Ring descriptors are values (a modulus, a window size); two series may only
/// be combined when their descriptors compare equal.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    /// Whether elements produced by ring operations can leave the ring's
    /// admissible set and so need [`Ring::check`] after each series operation.
    const NEEDS_CHECK: bool = false;

    fn kind(&self) -> CoefficientRing;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map `Z -> R`.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
    /// Brings a caller-supplied element into canonical form, or rejects it.
    fn normalize(&self, e: Self::Elem) -> Result<Self::Elem, SeriesError>;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn is_one(&self, e: &Self::Elem) -> bool {
        *e == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem) {
        *acc = self.add(acc, a);
    }
    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The element as an exact integer, when the ring is `Z`.
    fn to_exact_integer(&self, _a: &Self::Elem) -> Option<BigInt> {
        None
    }
    fn check(&self, _a: &Self::Elem) -> Result<(), SeriesError> {
        Ok(())
    }
    fn display(&self, a: &Self::Elem) -> String;
}

/// The integers, with arbitrary-precision elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn kind(&self) -> CoefficientRing {
        CoefficientRing::ExactInteger
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn normalize(&self, e: BigInt) -> Result<BigInt, SeriesError> {
        Ok(e)
    }
    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }
    fn is_one(&self, e: &BigInt) -> bool {
        e.is_one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn add_assign(&self, acc: &mut BigInt, a: &BigInt) {
        *acc += a;
    }
    fn mul_add_assign(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        if a.is_one() {
            *acc += b;
        } else if b.is_one() {
            *acc += a;
        } else {
            *acc += a * b;
        }
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn to_exact_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
    fn display(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// The residue ring `Z/MZ`, elements stored as canonical representatives in
/// `[0, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: u64,
}

impl IntegersMod {
    pub fn new(modulus: u64) -> Result<Self, SeriesError> {
        if modulus < 2 {
            return Err(SeriesError::InvalidModulus(modulus));
        }
        Ok(IntegersMod { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical residue of a machine integer.
    pub fn residue(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.modulus as i128) as u64
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn kind(&self) -> CoefficientRing {
        CoefficientRing::IntegersMod(self.modulus)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue below a u64 modulus")
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.residue(n)
    }
    fn normalize(&self, e: u64) -> Result<u64, SeriesError> {
        Ok(e % self.modulus)
    }
    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }
    fn is_one(&self, e: &u64) -> bool {
        *e == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn add_assign(&self, acc: &mut u64, a: &u64) {
        *acc = self.add(acc, a);
    }
    fn mul_add_assign(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = ((*acc as u128 + *a as u128 * *b as u128) % self.modulus as u128) as u64;
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        let m = self.modulus as i128;
        let g = (*a as i128).extended_gcd(&m);
        g.gcd.is_one().then(|| g.x.rem_euclid(m) as u64)
    }
    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// A Laurent polynomial `sum c_m z^m` with integer coefficients.
///
/// Stored trimmed: `coeffs[i]` is the coefficient of `z^(low + i)` and neither
/// end of `coeffs` is zero. The zero polynomial has empty `coeffs`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * z^exp`
    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms; repeated
    /// exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Smallest and largest exponent with a nonzero coefficient.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.low, self.low + self.coeffs.len() as i64 - 1))
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Substitutes `z -> 1/z`.
    pub fn reflect(&self) -> Self {
        match self.exponent_range() {
            None => Self::zero(),
            Some((_, hi)) => LaurentPoly {
                low: -hi,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    fn ensure_span(&mut self, lo: i64, hi: i64) {
        if self.coeffs.is_empty() {
            self.low = lo;
            self.coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
            return;
        }
        if lo < self.low {
            let extra = (self.low - lo) as usize;
            let mut v = vec![BigInt::zero(); extra];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = lo;
        }
        let cur_hi = self.low + self.coeffs.len() as i64 - 1;
        if hi > cur_hi {
            self.coeffs
                .resize(self.coeffs.len() + (hi - cur_hi) as usize, BigInt::zero());
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        self.ensure_span(exp, exp);
        self.coeffs[(exp - self.low) as usize] += c;
        self.trim();
    }

    fn add_assign_poly(&mut self, other: &LaurentPoly) {
        let Some((lo, hi)) = other.exponent_range() else {
            return;
        };
        self.ensure_span(lo, hi);
        let off = (lo - self.low) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i] += c;
        }
        self.trim();
    }

    fn mul_add_assign_poly(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        let (Some((alo, ahi)), Some((blo, bhi))) = (a.exponent_range(), b.exponent_range()) else {
            return;
        };
        self.ensure_span(alo + blo, ahi + bhi);
        let base = (alo + blo - self.low) as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let slot = &mut self.coeffs[base + i + j];
                if x.is_one() {
                    *slot += y;
                } else if y.is_one() {
                    *slot += x;
                } else {
                    *slot += x * y;
                }
            }
        }
        self.trim();
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{mag}z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Laurent polynomials in `z` whose exponents must stay within
/// `[-window, window]`. Leaving the window is an error, never a silent drop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentIntPoly {
    window: usize,
}

impl LaurentIntPoly {
    pub fn new(window: usize) -> Self {
        LaurentIntPoly { window }
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

impl Ring for LaurentIntPoly {
    type Elem = LaurentPoly;
    const NEEDS_CHECK: bool = true;

    fn kind(&self) -> CoefficientRing {
        CoefficientRing::LaurentIntPoly(self.window)
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(BigInt::one())
    }
    fn from_bigint(&self, n: &BigInt) -> LaurentPoly {
        LaurentPoly::constant(n.clone())
    }
    fn normalize(&self, mut e: LaurentPoly) -> Result<LaurentPoly, SeriesError> {
        e.trim();
        self.check(&e)?;
        Ok(e)
    }
    fn is_zero(&self, e: &LaurentPoly) -> bool {
        e.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut r = a.clone();
        r.add_assign_poly(b);
        r
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            low: a.low,
            coeffs: a.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        r.mul_add_assign_poly(a, b);
        r
    }
    fn add_assign(&self, acc: &mut LaurentPoly, a: &LaurentPoly) {
        acc.add_assign_poly(a);
    }
    fn mul_add_assign(&self, acc: &mut LaurentPoly, a: &LaurentPoly, b: &LaurentPoly) {
        acc.mul_add_assign_poly(a, b);
    }
    fn unit_inverse(&self, a: &LaurentPoly) -> Option<LaurentPoly> {
        // Units of Z[z, 1/z] are +-z^k.
        match a.coeffs.as_slice() {
            [c] if c.abs().is_one() => Some(LaurentPoly::monomial(c.clone(), -a.low)),
            _ => None,
        }
    }
    fn check(&self, a: &LaurentPoly) -> Result<(), SeriesError> {
        if let Some((lo, hi)) = a.exponent_range() {
            let w = self.window as i64;
            for e in [lo, hi] {
                if e.abs() > w {
                    return Err(SeriesError::WindowOverflow {
                        exponent: e,
                        window: self.window,
                    });
                }
            }
        }
        Ok(())
    }
    fn display(&self, a: &LaurentPoly) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_ring_canonical_residues() {
        let r = IntegersMod::new(5).unwrap();
        assert_eq!(r.from_i64(7), 2);
        assert_eq!(r.from_i64(-1), 4);
        assert_eq!(r.from_bigint(&BigInt::from(-26)), 4);
        assert_eq!(r.neg(&0), 0);
        assert_eq!(r.unit_inverse(&2), Some(3));
        assert!(IntegersMod::new(1).is_err());
        let r9 = IntegersMod::new(9).unwrap();
        assert_eq!(r9.unit_inverse(&3), None);
        assert_eq!(r9.unit_inverse(&2), Some(5));
    }

    #[test]
    fn integer_units() {
        assert_eq!(Integers.unit_inverse(&BigInt::from(-1)), Some(BigInt::from(-1)));
        assert_eq!(Integers.unit_inverse(&BigInt::from(2)), None);
    }

    #[test]
    fn laurent_square_of_z_plus_inverse() {
        let ring = LaurentIntPoly::new(4);
        let p = LaurentPoly::from_terms([(1, BigInt::one()), (-1, BigInt::one())]);
        let sq = ring.mul(&p, &p);
        assert_eq!(sq.coeff(2), BigInt::from(1));
        assert_eq!(sq.coeff(0), BigInt::from(2));
        assert_eq!(sq.coeff(-2), BigInt::from(1));
        assert_eq!(sq.coeff(1), BigInt::zero());
        assert_eq!(sq.to_string(), "z^2 + 2 + z^-2");
    }

    #[test]
    fn laurent_cancellation_trims() {
        let ring = LaurentIntPoly::new(3);
        let p = LaurentPoly::monomial(BigInt::from(3), 2);
        let s = ring.add(&p, &ring.neg(&p));
        assert!(s.is_zero());
        assert_eq!(s, LaurentPoly::zero());
    }

    #[test]
    fn laurent_window_is_enforced() {
        let ring = LaurentIntPoly::new(2);
        let p = LaurentPoly::monomial(BigInt::one(), 3);
        assert_eq!(
            ring.normalize(p),
            Err(SeriesError::WindowOverflow { exponent: 3, window: 2 })
        );
        assert!(ring.normalize(LaurentPoly::monomial(BigInt::one(), -2)).is_ok());
    }

    #[test]
    fn laurent_units() {
        let ring = LaurentIntPoly::new(3);
        let u = LaurentPoly::monomial(BigInt::from(-1), 2);
        let inv = ring.unit_inverse(&u).unwrap();
        assert!(ring.is_one(&ring.mul(&u, &inv)));
        let non = LaurentPoly::from_terms([(0, BigInt::one()), (1, BigInt::one())]);
        assert_eq!(ring.unit_inverse(&non), None);
    }
}
