//! Truncated power series in `q^{1/D}` with exact integer coefficients.
//!
//! A [`QSeries`] stores a dense coefficient vector indexed by exponent
//! numerator: entry `k` is the coefficient of `q^{k/D}`. The vector length is
//! the truncation `T`, so the series is known modulo `q^{T/D}`. Zero
//! coefficients are stored explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::QError;

/// Sign of a unit `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(value: i64) -> Result<Self, QError> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(QError::InvalidSign(other)),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^n`
    pub fn parity(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pow(self, n: u64) -> Self {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus if n.is_multiple_of(2) => Sign::Plus,
            Sign::Minus => Sign::Minus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Outcome of [`QSeries::equal_up_to`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Match,
    FirstMismatch {
        expo_num: usize,
        lhs_coeff: BigInt,
        rhs_coeff: BigInt,
    },
}

impl Comparison {
    pub fn is_match(&self) -> bool {
        matches!(self, Comparison::Match)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    denom: u32,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    fn check_shape(denom: u32, trunc: usize) -> Result<(), QError> {
        if denom == 0 {
            return Err(QError::ZeroDenominator);
        }
        if trunc == 0 {
            return Err(QError::ZeroTruncation);
        }
        Ok(())
    }

    pub fn zero(denom: u32, trunc: usize) -> Result<Self, QError> {
        Self::check_shape(denom, trunc)?;
        Ok(QSeries {
            denom,
            coeffs: vec![BigInt::zero(); trunc],
        })
    }

    pub fn one(denom: u32, trunc: usize) -> Result<Self, QError> {
        Self::monomial(BigInt::one(), 0, denom, trunc)
    }

    /// `coeff * q^{expo_num/denom}`; zero when the term lies at or beyond the
    /// truncation.
    pub fn monomial(
        coeff: impl Into<BigInt>,
        expo_num: i64,
        denom: u32,
        trunc: usize,
    ) -> Result<Self, QError> {
        if expo_num < 0 {
            return Err(QError::NegativeExponent(expo_num));
        }
        let mut out = Self::zero(denom, trunc)?;
        let k = expo_num as usize;
        if k < trunc {
            out.coeffs[k] = coeff.into();
        }
        Ok(out)
    }

    /// Builds a series from a coefficient list; the list length is the
    /// truncation.
    pub fn from_coeffs<I, C>(coeffs: I, denom: u32) -> Result<Self, QError>
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        Self::check_shape(denom, coeffs.len())?;
        Ok(QSeries { denom, coeffs })
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^{k/D}`. Panics when `k` is not below the truncation.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Smallest exponent numerator with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonzero terms as `(expo_num, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn same_denom(&self, other: &QSeries) -> Result<(), QError> {
        if self.denom != other.denom {
            return Err(QError::DenomMismatch {
                left: self.denom,
                right: other.denom,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries, QError> {
        self.same_denom(other)?;
        let trunc = self.trunc().min(other.trunc());
        let coeffs = self.coeffs[..trunc]
            .iter()
            .zip(&other.coeffs[..trunc])
            .map(|(a, b)| a + b)
            .collect();
        Ok(QSeries {
            denom: self.denom,
            coeffs,
        })
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries, QError> {
        self.same_denom(other)?;
        let trunc = self.trunc().min(other.trunc());
        let coeffs = self.coeffs[..trunc]
            .iter()
            .zip(&other.coeffs[..trunc])
            .map(|(a, b)| a - b)
            .collect();
        Ok(QSeries {
            denom: self.denom,
            coeffs,
        })
    }

    pub fn negate(&self) -> QSeries {
        QSeries {
            denom: self.denom,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> QSeries {
        QSeries {
            denom: self.denom,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product truncated at the smaller truncation.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries, QError> {
        self.same_denom(other)?;
        let trunc = self.trunc().min(other.trunc());
        let mut coeffs = vec![BigInt::zero(); trunc];
        for (i, a) in self.coeffs[..trunc].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..trunc - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(QSeries {
            denom: self.denom,
            coeffs,
        })
    }

    pub fn pow(&self, exponent: u32) -> Result<QSeries, QError> {
        let mut acc = QSeries::one(self.denom, self.trunc())?;
        for _ in 0..exponent {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn invert(&self) -> Result<QSeries, QError> {
        let c0 = &self.coeffs[0];
        let unit = if c0.is_one() {
            BigInt::one()
        } else if (-c0).is_one() {
            -BigInt::one()
        } else {
            return Err(QError::NonUnitConstant(c0.to_string()));
        };
        let trunc = self.trunc();
        let mut out: Vec<BigInt> = Vec::with_capacity(trunc);
        out.push(unit.clone());
        for i in 1..trunc {
            let mut acc = BigInt::zero();
            for k in 1..=i {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out[i - k];
                }
            }
            out.push(-(acc * &unit));
        }
        Ok(QSeries {
            denom: self.denom,
            coeffs: out,
        })
    }

    /// Moves the series onto the lattice `(1/new_denom)·ℤ`. Refinement always
    /// succeeds; coarsening fails if an exponent is not on the coarse lattice.
    pub fn rescale(&self, new_denom: u32) -> Result<QSeries, QError> {
        if new_denom == 0 {
            return Err(QError::ZeroDenominator);
        }
        let old = self.denom;
        if new_denom.is_multiple_of(old) {
            let r = (new_denom / old) as usize;
            let mut coeffs = vec![BigInt::zero(); self.trunc() * r];
            for (k, c) in self.terms() {
                coeffs[k * r] = c.clone();
            }
            Ok(QSeries {
                denom: new_denom,
                coeffs,
            })
        } else if old.is_multiple_of(new_denom) {
            let r = (old / new_denom) as usize;
            if let Some((k, _)) = self.terms().find(|(k, _)| k % r != 0) {
                return Err(QError::LossyRescale {
                    expo_num: k,
                    from: old,
                    to: new_denom,
                });
            }
            let trunc = self.trunc().div_ceil(r);
            let coeffs = (0..trunc).map(|k| self.coeffs[k * r].clone()).collect();
            Ok(QSeries {
                denom: new_denom,
                coeffs,
            })
        } else {
            Err(QError::IncompatibleDenom {
                from: old,
                to: new_denom,
            })
        }
    }

    /// Substitutes `q -> q^factor`, keeping the denominator.
    pub fn substitute_power(&self, factor: usize) -> Result<QSeries, QError> {
        if factor == 0 {
            return Err(QError::ZeroTruncation);
        }
        let mut coeffs = vec![BigInt::zero(); self.trunc() * factor];
        for (k, c) in self.terms() {
            coeffs[k * factor] = c.clone();
        }
        Ok(QSeries {
            denom: self.denom,
            coeffs,
        })
    }

    /// Drops every coefficient at or above `trunc`.
    pub fn truncate(&self, trunc: usize) -> Result<QSeries, QError> {
        if trunc > self.trunc() {
            return Err(QError::OrderExceedsTrunc {
                order: trunc,
                trunc: self.trunc(),
            });
        }
        Self::check_shape(self.denom, trunc)?;
        Ok(QSeries {
            denom: self.denom,
            coeffs: self.coeffs[..trunc].to_vec(),
        })
    }

    /// Multiplies by `q^{offset/D}` and re-truncates at `trunc`. Coefficients
    /// that were unknown in `self` but land below `trunc` are an error.
    pub fn shift_into(&self, offset: usize, trunc: usize) -> Result<QSeries, QError> {
        let mut out = QSeries::zero(self.denom, trunc)?;
        if offset >= trunc {
            return Ok(out);
        }
        if self.trunc() + offset < trunc {
            return Err(QError::OrderExceedsTrunc {
                order: trunc - offset,
                trunc: self.trunc(),
            });
        }
        for k in offset..trunc {
            out.coeffs[k] = self.coeffs[k - offset].clone();
        }
        Ok(out)
    }

    /// In place: multiply by `(1 - s·q^{e/D})`.
    pub fn mul_binomial(&mut self, sign: Sign, e: usize) {
        let trunc = self.trunc();
        if e == 0 {
            match sign {
                Sign::Plus => self.coeffs.iter_mut().for_each(|c| c.set_zero()),
                Sign::Minus => self.coeffs.iter_mut().for_each(|c| *c *= 2),
            }
            return;
        }
        for i in (e..trunc).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = &lo[i - e];
            if src.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => hi[0] -= src,
                Sign::Minus => hi[0] += src,
            }
        }
    }

    /// In place: divide by `(1 - s·q^{e/D})`, which needs `e > 0`.
    pub fn div_binomial(&mut self, sign: Sign, e: usize) -> Result<(), QError> {
        if e == 0 {
            return Err(match sign {
                Sign::Plus => QError::VanishingFactor,
                Sign::Minus => QError::NonUnitConstant("2".into()),
            });
        }
        for i in e..self.trunc() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = &lo[i - e];
            if src.is_zero() {
                continue;
            }
            match sign {
                Sign::Plus => hi[0] += src,
                Sign::Minus => hi[0] -= src,
            }
        }
        Ok(())
    }

    /// Compares coefficients `0..order`. Fails rather than comparing fewer
    /// coefficients than requested.
    pub fn equal_up_to(&self, other: &QSeries, order: usize) -> Result<Comparison, QError> {
        self.same_denom(other)?;
        for s in [self, other] {
            if order > s.trunc() {
                return Err(QError::OrderExceedsTrunc {
                    order,
                    trunc: s.trunc(),
                });
            }
        }
        for k in 0..order {
            if self.coeffs[k] != other.coeffs[k] {
                return Ok(Comparison::FirstMismatch {
                    expo_num: k,
                    lhs_coeff: self.coeffs[k].clone(),
                    rhs_coeff: other.coeffs[k].clone(),
                });
            }
        }
        Ok(Comparison::Match)
    }

    /// CSV rows `expo_num,denom,coeff` for the nonzero terms, with header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("expo_num,denom,coeff\n");
        for (k, c) in self.terms() {
            out.push_str(&format!("{},{},{}\n", k, self.denom, c));
        }
        out
    }

    fn render_power(&self, k: usize) -> String {
        let d = self.denom as usize;
        let g = gcd(k, d);
        let (num, den) = (k / g, d / g);
        match (num, den) {
            (0, _) => String::new(),
            (1, 1) => "q".into(),
            (n, 1) => format!("q^{n}"),
            (n, m) => format!("q^({n}/{m})"),
        }
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for QSeries {
    /// `c0 + c1*q + c2*q^2 + ... + O(q^T)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let power = self.render_power(k);
            let magnitude = c.abs();
            let body = match (power.is_empty(), magnitude.is_one()) {
                (true, _) => magnitude.to_string(),
                (false, true) => power,
                (false, false) => format!("{magnitude}*{power}"),
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        let tail = self.render_power(self.trunc());
        write!(f, " + O({tail})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[i64]) -> QSeries {
        QSeries::from_coeffs(coeffs.iter().copied(), 1).unwrap()
    }

    fn ints(series: &QSeries) -> Vec<i64> {
        series
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn monomials() {
        let one = QSeries::monomial(1, 0, 1, 10).unwrap();
        assert_eq!(ints(&one), [1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let m = QSeries::monomial(-1, 3, 1, 10).unwrap();
        assert_eq!(ints(&m)[3], -1);
        assert_eq!(m.terms().count(), 1);
        assert!(QSeries::monomial(5, 12, 1, 10).unwrap().is_zero());
        assert!(matches!(
            QSeries::monomial(1, -1, 1, 10),
            Err(QError::NegativeExponent(-1))
        ));
        assert!(QSeries::monomial(1, 0, 1, 0).is_err());
    }

    #[test]
    fn products_by_hand() {
        let a = s(&[1, -1, 0, 0, 0, 0, 0, 0]);
        let b = s(&[1, 0, -1, 0, 0, 0, 0, 0]);
        assert_eq!(ints(&a.mul(&b).unwrap()), [1, -1, -1, 1, 0, 0, 0, 0]);

        let f1 = s(&[1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let f2 = s(&[1, 0, 1, 0, 0, 0, 0, 0, 0]);
        let f3 = s(&[1, 0, 0, 1, 0, 0, 0, 0, 0]);
        let p = f1.mul(&f2).unwrap().mul(&f3).unwrap();
        assert_eq!(ints(&p), [1, 1, 1, 2, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn additive_inverse() {
        let a = s(&[3, -2, 7, 0, 1]);
        assert!(a.add(&a.negate()).unwrap().is_zero());
    }

    #[test]
    fn truncation_is_minimum() {
        let a = s(&[1, 1, 1, 1, 1, 1]);
        let b = s(&[1, 1, 1]);
        assert_eq!(a.mul(&b).unwrap().trunc(), 3);
        assert_eq!(a.add(&b).unwrap().trunc(), 3);
    }

    #[test]
    fn denom_mismatch() {
        let a = QSeries::one(1, 5).unwrap();
        let b = QSeries::one(2, 10).unwrap();
        assert!(matches!(a.add(&b), Err(QError::DenomMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(QError::DenomMismatch { .. })));
    }

    #[test]
    fn geometric_inverse() {
        let a = s(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(ints(&a.invert().unwrap()), [1, 1, 1, 1, 1, 1]);
        let one = QSeries::one(1, 4).unwrap();
        assert_eq!(one.invert().unwrap(), one);
        let minus = s(&[-1, 1, 0]);
        assert_eq!(ints(&minus.invert().unwrap()), [-1, -1, -1]);
        assert!(matches!(
            s(&[2, 1]).invert(),
            Err(QError::NonUnitConstant(_))
        ));
    }

    #[test]
    fn rescale_cases() {
        let a = s(&[1, 1, 0]);
        let r = a.rescale(2).unwrap();
        assert_eq!(r.denom(), 2);
        assert_eq!(r.trunc(), 6);
        assert_eq!(r.terms().map(|(k, _)| k).collect::<Vec<_>>(), [0, 2]);
        assert_eq!(r.rescale(1).unwrap(), a);

        let half = QSeries::from_coeffs([1, 1, 0, 0], 2).unwrap();
        assert!(matches!(
            half.rescale(1),
            Err(QError::LossyRescale { expo_num: 1, .. })
        ));
        assert!(matches!(
            a.rescale(3).unwrap().rescale(2),
            Err(QError::IncompatibleDenom { .. })
        ));
    }

    #[test]
    fn odd_truncation_coarsens_to_ceiling() {
        // known below q^{5/2}: coarse lattice points 0, 1, 2 are all known
        let a = QSeries::from_coeffs([1, 0, 3, 0, 5], 2).unwrap();
        let c = a.rescale(1).unwrap();
        assert_eq!(ints(&c), [1, 3, 5]);
    }

    #[test]
    fn equal_up_to_reports_first_mismatch() {
        let a = s(&[1, 1, 0, 0, 0, 0, 0]);
        let b = s(&[1, 1, 0, 0, 0, 1, 0]);
        assert_eq!(a.equal_up_to(&a, 7).unwrap(), Comparison::Match);
        assert_eq!(a.equal_up_to(&b, 5).unwrap(), Comparison::Match);
        assert_eq!(
            a.equal_up_to(&b, 6).unwrap(),
            Comparison::FirstMismatch {
                expo_num: 5,
                lhs_coeff: BigInt::zero(),
                rhs_coeff: BigInt::one()
            }
        );
        assert!(matches!(
            a.equal_up_to(&b, 8),
            Err(QError::OrderExceedsTrunc { order: 8, trunc: 7 })
        ));
    }

    #[test]
    fn in_place_binomials() {
        let mut a = QSeries::one(1, 6).unwrap();
        a.mul_binomial(Sign::Plus, 1);
        a.mul_binomial(Sign::Minus, 2);
        // (1-q)(1+q^2)
        assert_eq!(ints(&a), [1, -1, 1, -1, 0, 0]);
        a.div_binomial(Sign::Minus, 2).unwrap();
        a.div_binomial(Sign::Plus, 1).unwrap();
        assert_eq!(a, QSeries::one(1, 6).unwrap());
        assert!(matches!(
            a.div_binomial(Sign::Plus, 0),
            Err(QError::VanishingFactor)
        ));
    }

    #[test]
    fn shift_into_checks_known_range() {
        let a = s(&[1, 2, 3]);
        assert_eq!(ints(&a.shift_into(2, 5).unwrap()), [0, 0, 1, 2, 3]);
        assert!(a.shift_into(1, 5).is_err());
        assert!(a.shift_into(9, 5).unwrap().is_zero());
    }

    #[test]
    fn rendering() {
        let a = s(&[1, -1, 0, 2, 0]);
        assert_eq!(a.to_string(), "1 - q + 2*q^3 + O(q^5)");
        let h = QSeries::from_coeffs([0, -1, 3, 0], 2).unwrap();
        assert_eq!(h.to_string(), "-q^(1/2) + 3*q + O(q^2)");
        assert_eq!(QSeries::zero(1, 3).unwrap().to_string(), "0 + O(q^3)");
        assert_eq!(h.to_csv(), "expo_num,denom,coeff\n1,2,-1\n2,2,3\n");
    }
}
