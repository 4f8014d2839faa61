//! Exact truncated power series in `q`.
//!
//! A [`TruncatedSeries`] is known modulo `q^N`, where `N` is its order. All
//! operations are pure; binary operations require equal rings and truncate to
//! the smaller order. Multiplication and division iterate only over the
//! nonzero terms of the sparser operand, which keeps products with theta
//! series and Euler products at `O(N * nnz)`.

mod ring;

pub use ring::{CoefficientRing, Integers, IntegersMod, LaurentIntPoly, LaurentPoly, Ring};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch {
        left: CoefficientRing,
        right: CoefficientRing,
    },
    #[error("constant term {0} is not a unit")]
    NonUnit(String),
    #[error("coefficient index {index} is beyond truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("requested order {requested} exceeds the known order {available}")]
    InsufficientOrder { requested: usize, available: usize },
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),
    #[error("z-exponent {exponent} outside the Laurent window [-{window}, {window}]")]
    WindowOverflow { exponent: i64, window: usize },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("operation requires exact integer coefficients, found {0}")]
    NotExactInteger(CoefficientRing),
    #[error("{0}")]
    InvalidArgument(String),
}

/// A power series `a_0 + a_1 q + ... + a_{N-1} q^{N-1} + O(q^N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Builds a series of the given order. Missing trailing coefficients are
    /// zero; surplus ones are dropped.
    pub fn make(ring: R, coeffs: Vec<R::Elem>, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        let mut out = Vec::with_capacity(order);
        for c in coeffs.into_iter().take(order) {
            out.push(ring.normalize(c)?);
        }
        out.resize(order, ring.zero());
        Ok(TruncatedSeries { ring, coeffs: out })
    }

    /// Builds a series from machine integers reduced into the ring.
    pub fn from_ints(ring: R, coeffs: &[i64], order: usize) -> Result<Self, SeriesError> {
        let elems = coeffs.iter().map(|&c| ring.from_i64(c)).collect();
        Self::make(ring, elems, order)
    }

    pub fn zero(ring: R, order: usize) -> Result<Self, SeriesError> {
        Self::make(ring, Vec::new(), order)
    }

    pub fn one(ring: R, order: usize) -> Result<Self, SeriesError> {
        let one = ring.one();
        Self::make(ring, vec![one], order)
    }

    /// `c * q^exp` to the given order (zero if `exp >= order`).
    pub fn monomial(ring: R, c: R::Elem, exp: usize, order: usize) -> Result<Self, SeriesError> {
        let mut s = Self::zero(ring, order)?;
        if exp < order {
            s.coeffs[exp] = s.ring.normalize(c)?;
        }
        Ok(s)
    }

    /// Wraps coefficients produced internally, validating them when the ring
    /// can overflow.
    fn from_parts(ring: R, coeffs: Vec<R::Elem>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::ZeroOrder);
        }
        if R::NEEDS_CHECK {
            for c in &coeffs {
                ring.check(c)?;
            }
        }
        Ok(TruncatedSeries { ring, coeffs })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// Exact coefficient of `q^n`. Indices at or past the order are an error.
    pub fn coeff_at(&self, n: usize) -> Result<&R::Elem, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::IndexOutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// Whether the first `n` coefficients of both series agree.
    pub fn equal_upto(&self, other: &Self, n: usize) -> Result<bool, SeriesError> {
        Ok(self.first_difference(other, n)?.is_none())
    }

    /// Smallest index below `n` where the two series differ.
    pub fn first_difference(&self, other: &Self, n: usize) -> Result<Option<usize>, SeriesError> {
        self.same_ring(other)?;
        let avail = self.order().min(other.order());
        if n > avail {
            return Err(SeriesError::InsufficientOrder {
                requested: n,
                available: avail,
            });
        }
        Ok((0..n).find(|&i| self.coeffs[i] != other.coeffs[i]))
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !self.ring.is_zero(c)).count()
    }

    fn nonzero_terms(&self) -> Vec<(usize, &R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .collect()
    }

    fn same_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(SeriesError::RingMismatch {
                left: self.ring.kind(),
                right: other.ring.kind(),
            });
        }
        Ok(())
    }

    /// Drops coefficients at and beyond `order`.
    pub fn truncate(&self, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        if order > self.order() {
            return Err(SeriesError::InsufficientOrder {
                requested: order,
                available: self.order(),
            });
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..order].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|i| self.ring.add(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        Self::from_parts(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|i| self.ring.sub(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        Self::from_parts(self.ring.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, c: &R::Elem) -> Result<Self, SeriesError> {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect();
        Self::from_parts(self.ring.clone(), coeffs)
    }

    pub fn scale_int(&self, c: i64) -> Result<Self, SeriesError> {
        self.scale(&self.ring.from_i64(c))
    }

    /// Cauchy product to order `min(Na, Nb)`.
    ///
    /// The outer loop runs over the nonzero terms of whichever operand has
    /// fewer of them, so a product with an `O(sqrt N)`-sparse series costs
    /// `O(N sqrt N)`.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_ring(other)?;
        let n = self.order().min(other.order());
        let (sparse, dense) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let ring = &self.ring;
        let mut out = vec![ring.zero(); n];
        for (i, a) in sparse.nonzero_terms() {
            if i >= n {
                break;
            }
            for (j, b) in dense.coeffs[..n - i].iter().enumerate() {
                if !ring.is_zero(b) {
                    ring.mul_add_assign(&mut out[i + j], a, b);
                }
            }
        }
        Self::from_parts(ring.clone(), out)
    }

    /// `self / den` to order `min(Na, Nb)`, solving `den * c = self` term by
    /// term. Only the nonzero terms of `den` are visited.
    pub fn div(&self, den: &Self) -> Result<Self, SeriesError> {
        self.same_ring(den)?;
        let ring = &self.ring;
        let lead_inv = ring
            .unit_inverse(&den.coeffs[0])
            .ok_or_else(|| SeriesError::NonUnit(ring.display(&den.coeffs[0])))?;
        let n = self.order().min(den.order());
        let tail: Vec<(usize, R::Elem)> = den
            .nonzero_terms()
            .into_iter()
            .filter(|&(k, _)| k >= 1 && k < n)
            .map(|(k, d)| (k, ring.neg(d)))
            .collect();
        let unit_lead = ring.is_one(&lead_inv);
        let mut out: Vec<R::Elem> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = self.coeffs[m].clone();
            for (k, neg_d) in &tail {
                if *k > m {
                    break;
                }
                let prev = &out[m - k];
                if !ring.is_zero(prev) {
                    ring.mul_add_assign(&mut acc, neg_d, prev);
                }
            }
            if !unit_lead {
                acc = ring.mul(&lead_inv, &acc);
            }
            if R::NEEDS_CHECK {
                ring.check(&acc)?;
            }
            out.push(acc);
        }
        Ok(TruncatedSeries {
            ring: ring.clone(),
            coeffs: out,
        })
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        Self::one(self.ring.clone(), self.order())?.div(self)
    }

    /// `self^e` by repeated squaring; negative powers invert first.
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.ring.clone(), self.order())?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Extracts `n -> a(m n + r)`. The result has order `ceil((N - r) / m)`.
    pub fn dissect(&self, m: usize, r: usize) -> Result<Self, SeriesError> {
        if m == 0 || r >= m {
            return Err(SeriesError::InvalidArgument(format!(
                "dissection needs m >= 1 and 0 <= r < m, got m = {m}, r = {r}"
            )));
        }
        if r >= self.order() {
            return Err(SeriesError::InsufficientOrder {
                requested: r + 1,
                available: self.order(),
            });
        }
        let coeffs = self.coeffs[r..].iter().step_by(m).cloned().collect();
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Substitutes `q -> q^k`, producing a series of the requested order.
    ///
    /// The input determines the result only below `k * N`; asking for more is
    /// an error.
    pub fn inflate(&self, k: usize, order: usize) -> Result<Self, SeriesError> {
        if k == 0 {
            return Err(SeriesError::InvalidArgument("inflation factor must be >= 1".into()));
        }
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        let available = k.saturating_mul(self.order());
        if order > available {
            return Err(SeriesError::InsufficientOrder {
                requested: order,
                available,
            });
        }
        let mut out = vec![self.ring.zero(); order];
        for (i, c) in self.coeffs.iter().enumerate() {
            let pos = i * k;
            if pos >= order {
                break;
            }
            out[pos] = c.clone();
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    /// Multiplies by `q^d`, keeping the order.
    pub fn shift(&self, d: usize) -> Self {
        let n = self.order();
        let mut out = vec![self.ring.zero(); n];
        if d < n {
            out[d..].clone_from_slice(&self.coeffs[..n - d]);
        }
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    /// Substitutes `q -> -q`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { self.ring.neg(c) } else { c.clone() })
            .collect();
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Reduces exact integer coefficients into `Z/MZ`.
    pub fn reduce_mod(&self, modulus: u64) -> Result<TruncatedSeries<IntegersMod>, SeriesError> {
        let target = IntegersMod::new(modulus)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                self.ring
                    .to_exact_integer(c)
                    .map(|z| target.from_bigint(&z))
                    .ok_or(SeriesError::NotExactInteger(self.ring.kind()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries {
            ring: target,
            coeffs,
        })
    }
}

impl TruncatedSeries<Integers> {
    /// Maps an integer series into another ring through `Z -> R`.
    pub fn lift_into<S: Ring>(&self, ring: S) -> Result<TruncatedSeries<S>, SeriesError> {
        let coeffs = self.coeffs.iter().map(|c| ring.from_bigint(c)).collect();
        TruncatedSeries::from_parts(ring, coeffs)
    }
}
