//! Mock theta series and indefinite theta blocks.

use std::str::FromStr;

use crate::error::QError;
use crate::qprod::{PochSpec, Term};
use crate::series::{QSeries, Sign};

use super::Built;

/// Running sum of product terms that counts the nonvanishing ones.
pub(crate) struct Acc {
    series: QSeries,
    terms: usize,
}

impl Acc {
    pub(crate) fn new(denom: u32, trunc: usize) -> Result<Self, QError> {
        Ok(Acc {
            series: QSeries::zero(denom, trunc)?,
            terms: 0,
        })
    }

    pub(crate) fn push(&mut self, term: &Term) -> Result<(), QError> {
        let value = term.eval(self.series.denom(), self.series.trunc())?;
        if !value.is_zero() {
            self.terms += 1;
            self.series = self.series.add(&value)?;
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> Built {
        Built {
            series: self.series,
            terms: self.terms,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MockTheta {
    /// `Σ_{n≥1} q^{n(n+1)/2} / (q;q²)_n`
    Psi,
    /// `Σ_{n≥0} q^{2n²+2n} / (-q;q)_{2n+1}`
    OmegaLike,
    /// `Σ_{n≥0} q^{n²+n} / (-q;q²)_{n+1}`
    NuLike,
}

impl MockTheta {
    pub const ALL: [MockTheta; 3] = [MockTheta::Psi, MockTheta::OmegaLike, MockTheta::NuLike];

    pub fn id(self) -> &'static str {
        match self {
            MockTheta::Psi => "psi",
            MockTheta::OmegaLike => "omega-like",
            MockTheta::NuLike => "nu-like",
        }
    }

    pub fn build(self, trunc: usize) -> Result<QSeries, QError> {
        Ok(self.build_counted(trunc)?.series)
    }

    pub(crate) fn build_counted(self, trunc: usize) -> Result<Built, QError> {
        let mut acc = Acc::new(1, trunc)?;
        let mut n = 0usize;
        loop {
            let (expo, den) = match self {
                MockTheta::Psi => {
                    if n == 0 {
                        n += 1;
                        continue;
                    }
                    (
                        n * (n + 1) / 2,
                        PochSpec::finite(Sign::Plus, 1, 2, n as i64),
                    )
                }
                MockTheta::OmegaLike => (
                    2 * n * n + 2 * n,
                    PochSpec::finite(Sign::Minus, 1, 1, 2 * n as i64 + 1),
                ),
                MockTheta::NuLike => (n * n + n, PochSpec::finite(Sign::Minus, 1, 2, n as i64 + 1)),
            };
            if expo >= trunc {
                break;
            }
            acc.push(&Term::monomial(Sign::Plus, expo as i64).den(den))?;
            n += 1;
        }
        Ok(acc.finish())
    }
}

impl FromStr for MockTheta {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self, QError> {
        MockTheta::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| QError::InvalidParams(format!("unknown mock theta series `{s}`")))
    }
}

/// One block `Σ_{n≥start} q^{A(n)} (1 - q^{G(n)}) Σ_{j=lo(n)}^{hi(n)} ε_j q^{-B(j)}`
/// of an indefinite theta series, with exponents in units of `q`.
/// The minimal combined exponent `A(n) - max_j B(j)` must grow with `n`.
pub(crate) struct ThetaBlock {
    pub sign: Sign,
    pub start: i64,
    pub outer: fn(i64) -> i64,
    pub gap: fn(i64) -> i64,
    pub range: fn(i64) -> (i64, i64),
    pub inner: fn(i64) -> i64,
    pub alternating: bool,
}

/// Sums theta blocks onto the lattice with `scale` lattice units per `q`.
/// Exponents are combined before anything touches the series; a negative
/// combined exponent is an error.
pub(crate) fn theta_sum(blocks: &[ThetaBlock], denom: u32, trunc: usize) -> Result<Built, QError> {
    let scale = denom as i64;
    let mut out = QSeries::zero(denom, trunc)?.coeffs().to_vec();
    let mut terms = 0;
    for block in blocks {
        let mut n = block.start;
        loop {
            let (lo, hi) = (block.range)(n);
            let base = (block.outer)(n);
            let lowest = (lo..=hi)
                .map(|j| base - (block.inner)(j))
                .min()
                .unwrap_or(base);
            if lowest < 0 {
                return Err(QError::NegativeExponent(lowest * scale));
            }
            if lowest * scale >= trunc as i64 {
                break;
            }
            let gap = (block.gap)(n);
            for j in lo..=hi {
                let sign = block.sign
                    * if block.alternating {
                        Sign::parity(j)
                    } else {
                        Sign::Plus
                    };
                let expo = (base - (block.inner)(j)) * scale;
                for (e, s) in [(expo, sign), (expo + gap * scale, -sign)] {
                    if e < trunc as i64 {
                        out[e as usize] += s.as_i64();
                        terms += 1;
                    }
                }
            }
            n += 1;
        }
    }
    Ok(Built {
        series: QSeries::from_coeffs(out, denom)?,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_low_order() {
        let psi = MockTheta::Psi.build(7).unwrap();
        let got: Vec<i64> = psi
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(got, [0, 1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn names_round_trip() {
        for m in MockTheta::ALL {
            assert_eq!(m.id().parse::<MockTheta>().unwrap(), m);
        }
        assert!("chi".parse::<MockTheta>().is_err());
    }

    #[test]
    fn theta_block_rejects_negative_exponents() {
        let block = ThetaBlock {
            sign: Sign::Plus,
            start: 1,
            outer: |n| n,
            gap: |_| 1,
            range: |n| (-n, n),
            inner: |j| j * j,
            alternating: false,
        };
        assert!(matches!(
            theta_sum(&[block], 1, 10),
            Err(QError::NegativeExponent(_))
        ));
    }
}
