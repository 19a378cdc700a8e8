//! The Bailey lemma, slot by slot.
//!
//! For each slot `i` with parameters `(x, y)` the left side carries the
//! weight `(x)_n (y)_n (aq/xy)^n` on `β`, and the right side carries
//!
//! ```text
//! (aq/x)_∞ (aq/y)_∞ / ((aq)_∞ (aq/xy)_∞)
//!     · (x)_n (y)_n (aq/xy)^n / ((aq/x)_n (aq/y)_n)
//! ```
//!
//! on `α`. The factor `(aq/xy)^n` is split as `(aq)^n x^{-n} y^{-n}` so each
//! parameter contributes `(ρ)_n ρ^{-n}` on its own:
//!
//! - a monomial `ρ = s q^e` contributes `(s q^e; q)_n · s^n q^{-en}`;
//! - `ρ = q^{-N}` contributes `(-1)^n q^{n(n-1)/2} (q^{N-n+1}; q)_n`, which
//!   vanishes for `n > N`;
//! - `ρ → ∞` contributes `(-1)^n q^{n(n-1)/2}`, and every `(aq/ρ)` factor
//!   becomes 1.

use crate::error::QError;
use crate::qprod::{Length, PochSpec, Term};
use crate::series::{QSeries, Sign};

use super::{BaseParam, MultifoldPair, OnefoldPair};

/// A specialization of one Bailey-lemma parameter. Exponents are lattice
/// numerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhoSpec {
    FiniteMonomial { sign: Sign, expo: i64 },
    InverseQPower(u64),
    InfinityLimit,
}

impl RhoSpec {
    /// `(sign, expo)` of `ρ` itself, unless it is the limit.
    fn as_monomial(self, d: i64) -> Option<(Sign, i64)> {
        match self {
            RhoSpec::FiniteMonomial { sign, expo } => Some((sign, expo)),
            RhoSpec::InverseQPower(n) => Some((Sign::Plus, -d * n as i64)),
            RhoSpec::InfinityLimit => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LemmaSides {
    pub lhs: QSeries,
    pub rhs: QSeries,
    pub term_count: usize,
}

/// `lim_{ρ→∞} (ρ)_n (c/ρ)^n = (-1)^n c^n q^{n(n-1)/2}` with `c = sign·q^{expo}`.
pub fn limit_weight(c_sign: Sign, c_expo: i64, n: usize, denom: u32) -> Term {
    let n64 = n as i64;
    Term::monomial(Sign::parity(n64) * c_sign.pow(n as u64), c_expo * n64)
        .times_monomial(Sign::Plus, denom as i64 * n64 * (n64 - 1) / 2)
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    a: BaseParam,
    d: i64,
    x: RhoSpec,
    y: RhoSpec,
}

impl Slot {
    /// `(s_a·s_ρ⁻¹, e_a + d - e_ρ)` for `aq/ρ`.
    fn aq_over(&self, rho: RhoSpec) -> Option<(Sign, i64)> {
        rho.as_monomial(self.d)
            .map(|(s, e)| (self.a.sign * s, self.a.expo + self.d - e))
    }

    fn weight(&self, n: usize, rhs: bool) -> Term {
        let d = self.d;
        let n64 = n as i64;
        let (sign, expo) = self.a.pow(n as u64);
        let mut term = Term::monomial(sign, expo + d * n64);
        for rho in [self.x, self.y] {
            term = match rho {
                RhoSpec::InfinityLimit => term.mul(&limit_weight(Sign::Plus, 0, n, d as u32)),
                RhoSpec::InverseQPower(big_n) => {
                    if n as u64 > big_n {
                        return Term::zero();
                    }
                    term.mul(&limit_weight(Sign::Plus, 0, n, d as u32))
                        .num(PochSpec::finite(
                            Sign::Plus,
                            (d * (big_n as i64 - n64 + 1)) as usize,
                            d as usize,
                            n64,
                        ))
                }
                RhoSpec::FiniteMonomial { sign, expo } => term
                    .num_shifted(sign, expo, d as usize, Length::Finite(n64))
                    .times_monomial(sign.pow(n as u64), -expo * n64),
            };
            if rhs {
                if let Some((s, e)) = self.aq_over(rho) {
                    term = term.den_shifted(s, e, d as usize, Length::Finite(n64));
                }
            }
        }
        term
    }

    fn prefactor(&self) -> Term {
        let d = self.d as usize;
        let mut term =
            Term::one().den_shifted(self.a.sign, self.a.expo + self.d, d, Length::Infinite);
        for rho in [self.x, self.y] {
            if let Some((s, e)) = self.aq_over(rho) {
                term = term.num_shifted(s, e, d, Length::Infinite);
            }
        }
        if let (Some((sx, ex)), Some((sy, ey))) =
            (self.x.as_monomial(self.d), self.y.as_monomial(self.d))
        {
            term = term.den_shifted(
                self.a.sign * sx * sy,
                self.a.expo + self.d - ex - ey,
                d,
                Length::Infinite,
            );
        }
        term
    }

    /// Index beyond which every weight vanishes, if any.
    fn terminates_after(&self) -> Option<usize> {
        [self.x, self.y]
            .iter()
            .filter_map(|rho| match *rho {
                RhoSpec::InverseQPower(n) => Some(n as usize),
                RhoSpec::FiniteMonomial {
                    sign: Sign::Plus,
                    expo,
                } if expo <= 0 && expo % self.d == 0 => Some((-expo / self.d) as usize),
                _ => None,
            })
            .min()
    }

    /// Index from which no factor has a nonpositive exponent left to pull
    /// out, so the weight offset grows with nondecreasing increments.
    fn regular_from(&self) -> usize {
        let mut starts = vec![self.a.expo + self.d];
        for rho in [self.x, self.y] {
            if let RhoSpec::FiniteMonomial { expo, .. } = rho {
                starts.push(expo);
            }
            if let Some((_, e)) = self.aq_over(rho) {
                starts.push(e);
            }
        }
        starts
            .into_iter()
            .filter(|&s| s <= 0)
            .map(|s| (-s / self.d) as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Nonvanishing weights with offset below `trunc`.
    fn candidates(&self, trunc: usize, rhs: bool) -> Result<Vec<(usize, Term, i64)>, QError> {
        let limit = self.terminates_after();
        let regular = self.regular_from();
        let cap = regular + trunc + 2;
        let mut out = Vec::new();
        let mut previous: Option<i64> = None;
        let mut n = 0usize;
        loop {
            if limit.is_some_and(|l| n > l) {
                break;
            }
            if n > cap {
                return Err(QError::Divergent(format!(
                    "weights of slot {:?}/{:?} do not leave the truncation window",
                    self.x, self.y
                )));
            }
            let term = self.weight(n, rhs);
            let offset = term.leading_offset()?;
            if let Some(o) = offset {
                if o < 0 {
                    return Err(QError::NegativeExponent(o));
                }
                if o < trunc as i64 {
                    out.push((n, term, o));
                } else if n > regular && previous.is_some_and(|p| o > p) {
                    break;
                }
            }
            previous = offset;
            n += 1;
        }
        Ok(out)
    }
}

/// Both sides of the `l`-fold Bailey lemma with one `(ρ, ρ')` pair per slot.
pub fn bailey_lemma(
    pair: &MultifoldPair,
    slots: &[(RhoSpec, RhoSpec)],
    trunc: usize,
) -> Result<LemmaSides, QError> {
    if slots.len() != pair.folds {
        return Err(QError::FoldMismatch {
            expected: pair.folds,
            found: slots.len(),
        });
    }
    let d = pair.denom as i64;
    let slots: Vec<Slot> = slots
        .iter()
        .map(|&(x, y)| Slot { a: pair.a, d, x, y })
        .collect();

    let mut term_count = 0;
    let mut side = |rhs: bool| -> Result<QSeries, QError> {
        let lists = slots
            .iter()
            .map(|s| s.candidates(trunc, rhs))
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = QSeries::zero(pair.denom, trunc)?;
        let mut index = Vec::with_capacity(slots.len());
        accumulate(
            pair,
            rhs,
            &lists,
            trunc,
            &mut index,
            Term::one(),
            0,
            &mut acc,
            &mut term_count,
        )?;
        if rhs {
            let prefactor = slots.iter().fold(Term::one(), |t, s| t.mul(&s.prefactor()));
            acc = prefactor.eval_times(&acc, trunc)?;
        }
        Ok(acc)
    };
    let lhs = side(false)?;
    let rhs = side(true)?;
    Ok(LemmaSides {
        lhs,
        rhs,
        term_count,
    })
}

#[allow(clippy::too_many_arguments)]
fn accumulate(
    pair: &MultifoldPair,
    rhs: bool,
    lists: &[Vec<(usize, Term, i64)>],
    trunc: usize,
    index: &mut Vec<usize>,
    term: Term,
    offset: i64,
    acc: &mut QSeries,
    count: &mut usize,
) -> Result<(), QError> {
    let depth = index.len();
    if depth == lists.len() {
        let value = if rhs {
            pair.alpha.get(index, trunc)?
        } else {
            pair.beta.get(index, trunc)?
        };
        if !value.is_zero() {
            *acc = acc.add(&term.eval_times(&value, trunc)?)?;
            *count += 1;
        }
        return Ok(());
    }
    for (n, weight, o) in &lists[depth] {
        if offset + o >= trunc as i64 {
            continue;
        }
        index.push(*n);
        accumulate(
            pair,
            rhs,
            lists,
            trunc,
            index,
            term.mul(weight),
            offset + o,
            acc,
            count,
        )?;
        index.pop();
    }
    Ok(())
}

/// Both sides of the 1-fold lemma.
pub fn lemma_eval(
    pair: &OnefoldPair,
    rho1: RhoSpec,
    rho2: RhoSpec,
    trunc: usize,
) -> Result<LemmaSides, QError> {
    bailey_lemma(pair.as_multifold(), &[(rho1, rho2)], trunc)
}

/// Both sides of the 2-fold lemma with slot parameters `(x, y)` and `(z, w)`.
/// The slot bases must both equal the pair's base.
#[allow(clippy::too_many_arguments)]
pub fn twofold_lemma_eval(
    pair: &MultifoldPair,
    x: RhoSpec,
    y: RhoSpec,
    z: RhoSpec,
    w: RhoSpec,
    a1: BaseParam,
    a2: BaseParam,
    trunc: usize,
) -> Result<LemmaSides, QError> {
    if pair.folds != 2 {
        return Err(QError::FoldMismatch {
            expected: 2,
            found: pair.folds,
        });
    }
    if a1 != pair.a || a2 != pair.a {
        return Err(QError::BaseMismatch);
    }
    bailey_lemma(pair, &[(x, y), (z, w)], trunc)
}

/// Every parameter sent to infinity: `Σ Π_i a^{n_i} q^{n_i²} β_n` against
/// `1/(aq)_∞^l · Σ Π_i a^{n_i} q^{n_i²} α_n`.
pub fn multifold_limit_sum(pair: &MultifoldPair, trunc: usize) -> Result<LemmaSides, QError> {
    let slots = vec![(RhoSpec::InfinityLimit, RhoSpec::InfinityLimit); pair.folds];
    bailey_lemma(pair, &slots, trunc)
}
