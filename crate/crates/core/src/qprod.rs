//! q-shifted factorials and products of them.
//!
//! `(s·q^e; q^b)_n = (1 - s q^e)(1 - s q^{e+b})...(1 - s q^{e+(n-1)b})`, with
//! every exponent measured in lattice units `1/D`. Finite products of negative
//! length are only meaningful as reciprocals, where `1/(x;q)_{-m} = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::QError;
use crate::series::{QSeries, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(i64),
    Infinite,
}

/// `(sign·q^{expo}; q^{base})_length` on the lattice of the series it is
/// evaluated into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PochSpec {
    pub sign: Sign,
    pub expo: usize,
    pub base: usize,
    pub length: Length,
}

impl PochSpec {
    pub fn new(sign: Sign, expo: usize, base: usize, length: Length) -> Result<Self, QError> {
        if base == 0 {
            return Err(QError::InvalidBase);
        }
        Ok(PochSpec {
            sign,
            expo,
            base,
            length,
        })
    }

    /// Finite product; panics on a zero base, which is a programming error at
    /// every call site in this crate.
    pub fn finite(sign: Sign, expo: usize, base: usize, n: i64) -> Self {
        Self::new(sign, expo, base, Length::Finite(n)).expect("positive base")
    }

    pub fn infinite(sign: Sign, expo: usize, base: usize) -> Self {
        Self::new(sign, expo, base, Length::Infinite).expect("positive base")
    }

    /// `(q;q)_n` on the integer lattice.
    pub fn q(n: i64) -> Self {
        Self::finite(Sign::Plus, 1, 1, n)
    }

    /// `(q;q)_∞` on the integer lattice.
    pub fn q_inf() -> Self {
        Self::infinite(Sign::Plus, 1, 1)
    }
}

pub fn poch(spec: PochSpec, denom: u32, trunc: usize) -> Result<QSeries, QError> {
    Term::one().num(spec).eval(denom, trunc)
}

pub fn poch_reciprocal(spec: PochSpec, denom: u32, trunc: usize) -> Result<QSeries, QError> {
    Term::one().den(spec).eval(denom, trunc)
}

/// `(q^{e1}, q^{e2}, q^{e3}; q^{base})_∞`
pub fn triple_poch_infinite(
    exponents: [usize; 3],
    base: usize,
    denom: u32,
    trunc: usize,
) -> Result<QSeries, QError> {
    let mut term = Term::one();
    for e in exponents {
        term = term.num(PochSpec::new(Sign::Plus, e, base, Length::Infinite)?);
    }
    term.eval(denom, trunc)
}

/// One q-shifted factorial inside a [`Term`]. The start exponent may be
/// negative here; normalization pulls those factors out as monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Factor {
    sign: Sign,
    start: i64,
    base: usize,
    length: Length,
    reciprocal: bool,
}

/// A product term `scalar · q^{offset} · Π num / Π den`.
///
/// Evaluation rules:
/// - a reciprocal of negative finite length makes the whole term zero, and
///   this is decided before any numerator is looked at;
/// - numerator factors `(1 - q^0)` make the term zero;
/// - factors with negative exponent are rewritten as
///   `1 - s q^{-k} = -s q^{-k} (1 - s q^{k})`;
/// - the combined offset must end up nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    scalar: BigInt,
    offset: i64,
    factors: Vec<Factor>,
}

struct Normalized {
    scalar: BigInt,
    offset: i64,
    // (sign, first exponent, step, count or None for infinite, reciprocal)
    factors: Vec<(Sign, usize, usize, Option<usize>, bool)>,
}

impl Term {
    pub fn one() -> Self {
        Term {
            scalar: BigInt::one(),
            offset: 0,
            factors: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Term {
            scalar: BigInt::zero(),
            offset: 0,
            factors: Vec::new(),
        }
    }

    pub fn mul(&self, other: &Term) -> Term {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Term {
            scalar: &self.scalar * &other.scalar,
            offset: self.offset + other.offset,
            factors,
        }
    }

    /// `sign · q^{offset}`; the offset may be negative until combined.
    pub fn monomial(sign: Sign, offset: i64) -> Self {
        Term {
            scalar: BigInt::from(sign.as_i64()),
            offset,
            factors: Vec::new(),
        }
    }

    pub fn times_monomial(mut self, sign: Sign, offset: i64) -> Self {
        if sign == Sign::Minus {
            self.scalar = -self.scalar;
        }
        self.offset += offset;
        self
    }

    pub fn times_scalar(mut self, factor: &BigInt) -> Self {
        self.scalar *= factor;
        self
    }

    pub fn num(self, spec: PochSpec) -> Self {
        self.push(spec.sign, spec.expo as i64, spec.base, spec.length, false)
    }

    pub fn den(self, spec: PochSpec) -> Self {
        self.push(spec.sign, spec.expo as i64, spec.base, spec.length, true)
    }

    /// Numerator `(sign·q^{start}; q^{base})_length` with a possibly negative
    /// start exponent.
    pub fn num_shifted(self, sign: Sign, start: i64, base: usize, length: Length) -> Self {
        self.push(sign, start, base, length, false)
    }

    pub fn den_shifted(self, sign: Sign, start: i64, base: usize, length: Length) -> Self {
        self.push(sign, start, base, length, true)
    }

    fn push(
        mut self,
        sign: Sign,
        start: i64,
        base: usize,
        length: Length,
        reciprocal: bool,
    ) -> Self {
        assert!(base > 0, "q-Pochhammer base must be positive");
        self.factors.push(Factor {
            sign,
            start,
            base,
            length,
            reciprocal,
        });
        self
    }

    fn annihilated(&self) -> bool {
        self.scalar.is_zero()
            || self
                .factors
                .iter()
                .any(|f| f.reciprocal && matches!(f.length, Length::Finite(n) if n < 0))
    }

    fn normalize(&self) -> Result<Option<Normalized>, QError> {
        if self.annihilated() {
            return Ok(None);
        }
        let mut scalar = self.scalar.clone();
        let mut offset = self.offset;
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let count = match f.length {
                Length::Finite(n) if n < 0 => return Err(QError::NegativeLength(n)),
                Length::Finite(n) => Some(n as usize),
                Length::Infinite => None,
            };
            let base = f.base as i64;
            let mut k = 0usize;
            while f.start + (k as i64) * base <= 0 && count.is_none_or(|c| k < c) {
                let e = f.start + (k as i64) * base;
                if e == 0 {
                    match (f.sign, f.reciprocal) {
                        (Sign::Plus, false) => return Ok(None),
                        (Sign::Plus, true) => return Err(QError::VanishingFactor),
                        (Sign::Minus, false) => scalar *= 2,
                        (Sign::Minus, true) => return Err(QError::NonUnitConstant("2".into())),
                    }
                } else {
                    // 1 - s q^e = -s q^e (1 - s q^{-e}); the reciprocal inverts
                    // both the unit and the monomial.
                    if f.sign == Sign::Plus {
                        scalar = -scalar;
                    }
                    offset += if f.reciprocal { -e } else { e };
                    factors.push((f.sign, (-e) as usize, 1, Some(1), f.reciprocal));
                }
                k += 1;
            }
            let first = f.start + (k as i64) * base;
            let remaining = count.map(|c| c.saturating_sub(k));
            if remaining != Some(0) {
                factors.push((f.sign, first as usize, f.base, remaining, f.reciprocal));
            }
        }
        if scalar.is_zero() {
            return Ok(None);
        }
        Ok(Some(Normalized {
            scalar,
            offset,
            factors,
        }))
    }

    /// Exponent numerator of the leading monomial after normalization, or
    /// `None` when the term vanishes identically.
    pub fn leading_offset(&self) -> Result<Option<i64>, QError> {
        Ok(self.normalize()?.map(|n| n.offset))
    }

    pub fn eval(&self, denom: u32, trunc: usize) -> Result<QSeries, QError> {
        let one = QSeries::one(denom, trunc)?;
        self.eval_times(&one, trunc)
    }

    /// `self · value`, truncated at `trunc`. `value` must be known at least
    /// up to `trunc - offset`.
    pub fn eval_times(&self, value: &QSeries, trunc: usize) -> Result<QSeries, QError> {
        let denom = value.denom();
        let Some(norm) = self.normalize()? else {
            return QSeries::zero(denom, trunc);
        };
        if norm.offset < 0 {
            return Err(QError::NegativeExponent(norm.offset));
        }
        let offset = norm.offset as usize;
        if offset >= trunc {
            return QSeries::zero(denom, trunc);
        }
        let width = trunc - offset;
        let mut body = value.truncate(width)?;
        for &(sign, first, step, count, reciprocal) in &norm.factors {
            let mut e = first;
            let mut k = 0usize;
            while e < width && count.is_none_or(|c| k < c) {
                if reciprocal {
                    body.div_binomial(sign, e)?;
                } else {
                    body.mul_binomial(sign, e);
                }
                e += step;
                k += 1;
            }
        }
        if !norm.scalar.is_one() {
            body = body.scale(&norm.scalar);
        }
        body.shift_into(offset, trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(series: &QSeries) -> Vec<i64> {
        series
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    /// Partitions of n into parts of size at most `max`.
    fn partitions(n: usize, max: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n))
            .map(|part| partitions(n - part, part))
            .sum()
    }

    #[test]
    fn finite_by_hand() {
        assert_eq!(
            ints(&poch(PochSpec::q(2), 1, 6).unwrap()),
            [1, -1, -1, 1, 0, 0]
        );
        let x = PochSpec::finite(Sign::Minus, 3, 2, 0);
        assert_eq!(poch(x, 1, 5).unwrap(), QSeries::one(1, 5).unwrap());
        assert!(matches!(
            poch(PochSpec::q(-1), 1, 5),
            Err(QError::NegativeLength(-1))
        ));
    }

    #[test]
    fn euler_product_pentagonal_low_order() {
        assert_eq!(
            ints(&poch(PochSpec::q_inf(), 1, 6).unwrap()),
            [1, -1, -1, 0, 0, 1]
        );
    }

    #[test]
    fn reciprocal_cases() {
        assert_eq!(
            ints(&poch_reciprocal(PochSpec::q(1), 1, 5).unwrap()),
            [1, 1, 1, 1, 1]
        );
        assert!(poch_reciprocal(PochSpec::q(-1), 1, 5).unwrap().is_zero());
        let expected: Vec<i64> = (0..12).map(|n| partitions(n, n) as i64).collect();
        assert_eq!(
            ints(&poch_reciprocal(PochSpec::q_inf(), 1, 12).unwrap()),
            expected
        );
        let vanishing = PochSpec::finite(Sign::Plus, 0, 1, 2);
        assert!(matches!(
            poch_reciprocal(vanishing, 1, 5),
            Err(QError::VanishingFactor)
        ));
        assert!(poch(vanishing, 1, 5).unwrap().is_zero());
    }

    #[test]
    fn triple_product_slots() {
        let p = triple_poch_infinite([1, 8, 9], 9, 1, 2).unwrap();
        assert_eq!(ints(&p), [1, -1]);
        let p = triple_poch_infinite([20, 30, 40], 9, 1, 10).unwrap();
        assert_eq!(p, QSeries::one(1, 10).unwrap());
        let p = triple_poch_infinite([1, 8, 9], 9, 1, 10).unwrap();
        let mut expected = QSeries::one(1, 10).unwrap();
        for e in [1, 8, 9] {
            expected = expected
                .mul(&poch(PochSpec::infinite(Sign::Plus, e, 9), 1, 10).unwrap())
                .unwrap();
        }
        assert_eq!(p, expected);
    }

    #[test]
    fn recurrence_in_length() {
        let trunc = 30;
        for (sign, expo, base) in [
            (Sign::Plus, 1, 1),
            (Sign::Minus, 1, 2),
            (Sign::Plus, 2, 4),
            (Sign::Minus, 3, 1),
        ] {
            for n in 0..12i64 {
                let lhs = poch(PochSpec::finite(sign, expo, base, n + 1), 1, trunc).unwrap();
                let mut rhs = poch(PochSpec::finite(sign, expo, base, n), 1, trunc).unwrap();
                rhs.mul_binomial(sign, expo + n as usize * base);
                assert_eq!(lhs, rhs, "sign {sign:?} expo {expo} base {base} n {n}");
            }
        }
    }

    #[test]
    fn product_times_reciprocal_is_one() {
        let trunc = 25;
        let one = QSeries::one(2, trunc).unwrap();
        for length in [
            Length::Finite(0),
            Length::Finite(3),
            Length::Finite(9),
            Length::Infinite,
        ] {
            for (sign, expo, base) in [(Sign::Plus, 2, 2), (Sign::Minus, 1, 2), (Sign::Plus, 3, 4)]
            {
                let spec = PochSpec::new(sign, expo, base, length).unwrap();
                let p = poch(spec, 2, trunc).unwrap();
                let r = poch_reciprocal(spec, 2, trunc).unwrap();
                assert_eq!(p.mul(&r).unwrap(), one);
            }
        }
    }

    #[test]
    fn negative_starts_are_pulled_out() {
        // (q^{-2};q)_3 = (1-q^{-2})(1-q^{-1})(1-1) = 0
        let t = Term::one().num_shifted(Sign::Plus, -2, 1, Length::Finite(3));
        assert!(t.eval(1, 10).unwrap().is_zero());
        // (q^{-2};q)_2 q^{3} = (1-q^{-2})(1-q^{-1}) q^3 = q^0 - q - q^2 + q^3
        let t = Term::monomial(Sign::Plus, 3).num_shifted(Sign::Plus, -2, 1, Length::Finite(2));
        assert_eq!(ints(&t.eval(1, 6).unwrap()), [1, -1, -1, 1, 0, 0]);
        assert_eq!(t.leading_offset().unwrap(), Some(0));
        // (-1;q)_2 = 2(1+q)
        let t = Term::one().num_shifted(Sign::Minus, 0, 1, Length::Finite(2));
        assert_eq!(ints(&t.eval(1, 4).unwrap()), [2, 2, 0, 0]);
        // 1/(q^{-1};q)_1 = 1/(1-q^{-1}) = -q/(1-q)
        let t = Term::monomial(Sign::Plus, 0).den_shifted(Sign::Plus, -1, 1, Length::Finite(1));
        assert_eq!(ints(&t.eval(1, 4).unwrap()), [0, -1, -1, -1]);
        let t = Term::monomial(Sign::Plus, -1).den(PochSpec::q(1));
        assert!(matches!(t.eval(1, 4), Err(QError::NegativeExponent(-1))));
    }

    #[test]
    fn zero_reciprocal_short_circuits_numerator() {
        let t = Term::one()
            .num(PochSpec::finite(Sign::Plus, 2, 4, -1))
            .den(PochSpec::finite(Sign::Plus, 2, 2, -1));
        assert!(t.eval(1, 10).unwrap().is_zero());
        let t = Term::one().num(PochSpec::finite(Sign::Plus, 2, 4, -1));
        assert!(t.eval(1, 10).is_err());
    }
}
