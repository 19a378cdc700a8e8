//! Hand-coded sides of every registered identity.
//!
//! Each multi-sum is written out from its closed form: exponent polynomial,
//! sign and factor list, with loop bounds taken from the quadratic part of
//! the exponent. None of this goes through the Bailey machinery, which is
//! used separately as a cross-check.

use crate::error::QError;
use crate::qprod::{triple_poch_infinite, Length, PochSpec, Term};
use crate::series::Sign;

use super::mock::{theta_sum, Acc, MockTheta, ThetaBlock};
use super::Built;

fn q(n: i64) -> PochSpec {
    PochSpec::q(n)
}

fn inf(sign: Sign, expo: usize, base: usize) -> PochSpec {
    PochSpec::infinite(sign, expo, base)
}

/// `prefactor · inner`, with the counted terms of `inner`.
fn times(prefactor: Term, inner: Built, trunc: usize) -> Result<Built, QError> {
    Ok(Built {
        series: prefactor.eval_times(&inner.series, trunc)?,
        terms: inner.terms,
    })
}

/// Smallest `n ≥ 0` with `quad·n² + lin·n ≥ trunc`, or `trunc` when the
/// exponent does not grow.
fn cap(quad: i64, lin: i64, trunc: usize) -> i64 {
    if quad <= 0 && lin <= 0 {
        return trunc as i64;
    }
    (0..)
        .find(|&n| quad * n * n + lin * n >= trunc as i64)
        .unwrap()
}

/// A q-Pochhammer `(s q^e; q^b)` whose length is supplied per term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorShape {
    pub sign: Sign,
    pub expo: usize,
    pub base: usize,
}

impl FactorShape {
    const Q: FactorShape = FactorShape {
        sign: Sign::Plus,
        expo: 1,
        base: 1,
    };

    fn with_len(self, n: i64) -> PochSpec {
        PochSpec::finite(self.sign, self.expo, self.base, n)
    }
}

/// Every constant of the triple sum
///
/// ```text
/// Σ_{j,n1,n2≥0} ε^j q^{Q·(j²,n1²,n2²) + L·(j,n1,n2)}
///     / ((q)_{n1-j} (q)_{n2-j} (q)_{n1+n2+s} (q²;q²)_j)
/// ```
///
/// exposed so that mutated copies can be built and shown to fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSumShape {
    pub quad: [i64; 3],
    pub lin: [i64; 3],
    pub j_sign: Sign,
    pub total_shift: i64,
    /// Factors for `n1-j`, `n2-j`, `n1+n2+s`, `j`.
    pub factors: [FactorShape; 4],
}

impl TripleSumShape {
    /// The left side of thm2-3.1.
    pub fn thm2_3_1() -> Self {
        TripleSumShape {
            quad: [1, 1, 1],
            lin: [1, 1, 1],
            j_sign: Sign::Minus,
            total_shift: 1,
            factors: [
                FactorShape::Q,
                FactorShape::Q,
                FactorShape::Q,
                FactorShape {
                    sign: Sign::Plus,
                    expo: 2,
                    base: 2,
                },
            ],
        }
    }

    /// Single-constant perturbations: each sign flipped, each exponent
    /// constant moved by one.
    pub fn mutations(&self) -> Vec<(String, TripleSumShape)> {
        let mut out = Vec::new();
        let mut push = |label: String, f: &dyn Fn(&mut TripleSumShape)| {
            let mut shape = self.clone();
            f(&mut shape);
            out.push((label, shape));
        };
        for i in 0..3 {
            push(format!("quad[{i}]+1"), &|s| s.quad[i] += 1);
            push(format!("lin[{i}]+1"), &|s| s.lin[i] += 1);
            push(format!("lin[{i}]-1"), &|s| s.lin[i] -= 1);
        }
        push("j_sign flipped".into(), &|s| s.j_sign = -s.j_sign);
        push("total_shift+1".into(), &|s| s.total_shift += 1);
        push("total_shift-1".into(), &|s| s.total_shift -= 1);
        for k in 0..4 {
            push(format!("factor[{k}].sign flipped"), &|s| {
                s.factors[k].sign = -s.factors[k].sign
            });
            push(format!("factor[{k}].expo+1"), &|s| s.factors[k].expo += 1);
        }
        out
    }

    /// Perturbations of the Pochhammer steps `b` in `(x; q^b)`.
    pub fn step_mutations(&self) -> Vec<(String, TripleSumShape)> {
        (0..4)
            .map(|k| {
                let mut shape = self.clone();
                shape.factors[k].base += 1;
                (format!("factor[{k}].base+1"), shape)
            })
            .collect()
    }

    pub fn build(&self, trunc: usize) -> Result<Built, QError> {
        let mut acc = Acc::new(1, trunc)?;
        let [qj, q1, q2] = self.quad;
        let [lj, l1, l2] = self.lin;
        for n1 in 0..cap(q1, l1, trunc) {
            for n2 in 0..cap(q2, l2, trunc) {
                for j in 0..=n1.min(n2) {
                    let expo =
                        qj * j * j + q1 * n1 * n1 + q2 * n2 * n2 + lj * j + l1 * n1 + l2 * n2;
                    if expo >= trunc as i64 {
                        continue;
                    }
                    let [f1, f2, f3, f4] = self.factors;
                    let term = Term::monomial(self.j_sign.pow(j as u64), expo)
                        .den(f1.with_len(n1 - j))
                        .den(f2.with_len(n2 - j))
                        .den(f3.with_len(n1 + n2 + self.total_shift))
                        .den(f4.with_len(j));
                    acc.push(&term)?;
                }
            }
        }
        Ok(acc.finish())
    }
}

pub(crate) fn thm2_3_1_lhs(trunc: usize) -> Result<Built, QError> {
    TripleSumShape::thm2_3_1().build(trunc)
}

pub(crate) fn thm2_3_1_rhs(trunc: usize) -> Result<Built, QError> {
    let prefactor = Term::one().num(inf(Sign::Minus, 1, 1)).den(q_inf());
    times(prefactor, MockTheta::OmegaLike.build_counted(trunc)?, trunc)
}

fn q_inf() -> PochSpec {
    PochSpec::q_inf()
}

pub(crate) fn thm2_3_2_lhs(trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(1, trunc)?;
    let tri = |n: i64| n * (n + 1) / 2;
    let bound = cap(1, 1, 2 * trunc);
    for n1 in 0..bound {
        for n2 in 0..bound {
            for j in 0..=n1.min(n2) {
                let expo = j * j + j + tri(n1) + tri(n2);
                if expo >= trunc as i64 {
                    continue;
                }
                let term = Term::monomial(Sign::parity(j), expo)
                    .num(PochSpec::finite(Sign::Minus, 1, 1, n1))
                    .num(PochSpec::finite(Sign::Minus, 1, 1, n2))
                    .den(q(n1 - j))
                    .den(q(n2 - j))
                    .den(q(n1 + n2 + 1))
                    .den(PochSpec::finite(Sign::Plus, 2, 2, j));
                acc.push(&term)?;
            }
        }
    }
    Ok(acc.finish())
}

pub(crate) fn thm2_3_2_rhs(trunc: usize) -> Result<Built, QError> {
    let prefactor = Term::one()
        .num(inf(Sign::Minus, 1, 1))
        .num(inf(Sign::Minus, 1, 2))
        .den(q_inf())
        .den(inf(Sign::Plus, 1, 2));
    times(prefactor, MockTheta::NuLike.build_counted(trunc)?, trunc)
}

/// Summand of the thm2-3.3 left side. The `j = 0` summand vanishes through
/// `1/(q²;q²)_{-1} = 0` before `(q²;q⁴)_{-1}` is ever looked at.
pub(crate) fn thm2_3_3_term(j: i64, n1: i64, n2: i64) -> Term {
    let q2 = |n: i64| PochSpec::finite(Sign::Plus, 2, 2, n);
    Term::monomial(Sign::parity(n1 + n2 + j - 1), 2 * j * j + n1 * n1 + n2 * n2)
        .num(PochSpec::finite(Sign::Plus, 1, 2, n1))
        .num(PochSpec::finite(Sign::Plus, 1, 2, n2))
        .num(PochSpec::finite(Sign::Plus, 2, 4, j - 1))
        .den(q2(n1 - j))
        .den(q2(n2 - j))
        .den(q2(n1 + n2))
        .den(q2(2 * j - 1))
}

pub(crate) fn thm2_3_3_lhs(trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(1, trunc)?;
    let bound = cap(1, 0, trunc);
    for n1 in 0..bound {
        for n2 in 0..bound {
            for j in 0..=n1.min(n2) {
                if 2 * j * j + n1 * n1 + n2 * n2 >= trunc as i64 {
                    continue;
                }
                acc.push(&thm2_3_3_term(j, n1, n2))?;
            }
        }
    }
    Ok(acc.finish())
}

pub(crate) fn thm2_3_3_rhs(trunc: usize) -> Result<Built, QError> {
    let psi = MockTheta::Psi.build_counted(trunc.div_ceil(4))?;
    let psi4 = psi.series.substitute_power(4)?.truncate(trunc)?;
    let prefactor = Term::one()
        .num(inf(Sign::Plus, 1, 2))
        .num(inf(Sign::Plus, 1, 2))
        .num(inf(Sign::Plus, 4, 4))
        .den(inf(Sign::Plus, 2, 2))
        .den(inf(Sign::Plus, 2, 2))
        .den(inf(Sign::Minus, 4, 4));
    times(
        prefactor,
        Built {
            series: psi4,
            terms: psi.terms,
        },
        trunc,
    )
}

pub(crate) fn eq_3_9_rhs(trunc: usize) -> Result<Built, QError> {
    let theta = theta_sum(
        &[ThetaBlock {
            sign: Sign::Plus,
            start: 0,
            outer: |n| 4 * n * n + 3 * n,
            gap: |n| 2 * n + 1,
            range: |n| (-n, n),
            inner: |j| j * j,
            alternating: true,
        }],
        1,
        trunc,
    )?;
    times(Term::one().den(q_inf()).den(q_inf()), theta, trunc)
}

pub(crate) fn eq_3_10_lhs(trunc: usize) -> Result<Built, QError> {
    MockTheta::NuLike.build_counted(trunc)
}

pub(crate) fn eq_3_10_rhs(trunc: usize) -> Result<Built, QError> {
    let theta = theta_sum(
        &[ThetaBlock {
            sign: Sign::Plus,
            start: 0,
            outer: |n| 3 * n * n + 2 * n,
            gap: |n| 2 * n + 1,
            range: |n| (-n, n),
            inner: |j| j * j,
            alternating: true,
        }],
        1,
        trunc,
    )?;
    let prefactor = Term::one()
        .num(inf(Sign::Minus, 2, 2))
        .den(inf(Sign::Plus, 2, 2));
    times(prefactor, theta, trunc)
}

/// Summand of the eq-3.11 left side on the half-integer lattice (D = 2).
pub(crate) fn eq_3_11_term(j: i64, n1: i64, n2: i64) -> Term {
    let qq = |n: i64| PochSpec::finite(Sign::Plus, 2, 2, n);
    Term::monomial(Sign::parity(j), 2 * j * j + n1 * n1 + n2 * n2)
        .num(PochSpec::finite(Sign::Minus, 1, 2, n1))
        .num(PochSpec::finite(Sign::Minus, 1, 2, n2))
        .num(PochSpec::finite(Sign::Plus, 2, 4, j - 1))
        .den(qq(n1 - j))
        .den(qq(n2 - j))
        .den(qq(n1 + n2))
        .den(qq(2 * j - 1))
}

pub(crate) fn eq_3_11_lhs(trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(2, trunc)?;
    let bound = cap(1, 0, trunc);
    for n1 in 0..bound {
        for n2 in 0..bound {
            for j in 0..=n1.min(n2) {
                if 2 * j * j + n1 * n1 + n2 * n2 >= trunc as i64 {
                    continue;
                }
                acc.push(&eq_3_11_term(j, n1, n2))?;
            }
        }
    }
    Ok(acc.finish())
}

pub(crate) fn eq_3_11_rhs(trunc: usize) -> Result<Built, QError> {
    let theta = theta_sum(
        &[
            ThetaBlock {
                sign: Sign::Plus,
                start: 1,
                outer: |n| 10 * n * n - 2 * n,
                gap: |n| 4 * n,
                range: |n| (-n, n - 1),
                inner: |j| 2 * j * j + 2 * j,
                alternating: false,
            },
            ThetaBlock {
                sign: Sign::Minus,
                start: 0,
                outer: |n| 10 * n * n + 8 * n + 2,
                gap: |n| 4 * n + 2,
                range: |n| (-n, n),
                inner: |j| 2 * j * j,
                alternating: false,
            },
        ],
        2,
        trunc,
    )?;
    let half = PochSpec::infinite(Sign::Minus, 1, 2);
    let full = PochSpec::infinite(Sign::Plus, 2, 2);
    let prefactor = Term::one().num(half).num(half).den(full).den(full);
    times(prefactor, theta, trunc)
}

pub(crate) fn eq_3_12_lhs(trunc: usize) -> Result<Built, QError> {
    MockTheta::Psi.build_counted(trunc)
}

pub(crate) fn eq_3_12_rhs(trunc: usize) -> Result<Built, QError> {
    let theta = theta_sum(
        &[
            ThetaBlock {
                sign: Sign::Plus,
                start: 0,
                outer: |n| 5 * n * n + 4 * n + 1,
                gap: |n| 2 * n + 1,
                range: |n| (-n, n),
                inner: |j| j * j,
                alternating: false,
            },
            ThetaBlock {
                sign: Sign::Minus,
                start: 1,
                outer: |n| 5 * n * n - n,
                gap: |n| 2 * n,
                range: |n| (-n, n - 1),
                inner: |j| j * j + j,
                alternating: false,
            },
        ],
        1,
        trunc,
    )?;
    let prefactor = Term::one().num(inf(Sign::Minus, 1, 1)).den(q_inf());
    times(prefactor, theta, trunc)
}

pub(crate) fn eq_4_1_lhs(trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(1, trunc)?;
    let bound = cap(1, 0, trunc);
    for n1 in 0..bound {
        for n2 in 0..bound {
            for j in 0..=n1.min(n2) {
                let expo = j * j + n1 * n1 + n2 * n2;
                if expo >= trunc as i64 {
                    continue;
                }
                let term = Term::monomial(Sign::Plus, expo)
                    .den(q(n1 + n2))
                    .den(q(n1 - j))
                    .den(q(n2 - j))
                    .den(q(j));
                acc.push(&term)?;
            }
        }
    }
    Ok(acc.finish())
}

/// `(q^{e1}, q^{e2}, q^9; q^9)_∞ / (q)_∞²`
pub(crate) fn eq_4_1_rhs(exponents: [usize; 2], trunc: usize) -> Result<Built, QError> {
    let product = triple_poch_infinite([exponents[0], exponents[1], 9], 9, 1, trunc)?;
    times(
        Term::one().den(q_inf()).den(q_inf()),
        Built {
            series: product,
            terms: 1,
        },
        trunc,
    )
}

pub(crate) fn eq_4_2_lhs(n1: i64, n2: i64, trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(1, trunc)?;
    acc.push(&Term::one().den(q(n1)).den(q(n1)).den(q(n2)).den(q(n2)))?;
    Ok(acc.finish())
}

pub(crate) fn eq_4_2_rhs(n1: i64, n2: i64, trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(1, trunc)?;
    for j in 0..=n1.min(n2) {
        if j * j >= trunc as i64 {
            break;
        }
        let term = Term::monomial(Sign::Plus, j * j)
            .den(q(n1 + n2))
            .den(q(n1 - j))
            .den(q(n2 - j))
            .den(q(j))
            .den(q(j));
        acc.push(&term)?;
    }
    Ok(acc.finish())
}

pub(crate) fn eq_4_7_lhs(trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(1, trunc)?;
    let bound = cap(1, 0, trunc);
    for n1 in 0..bound {
        for n2 in 0..bound {
            for j in 0..=n1.min(n2) {
                let expo = j * j + n1 * n1 + n2 * n2;
                if expo >= trunc as i64 {
                    continue;
                }
                let term = Term::monomial(Sign::Plus, expo)
                    .den(q(n1 + n2))
                    .den(q(n1 - j))
                    .den(q(n2 - j))
                    .den(q(j))
                    .den(q(j));
                acc.push(&term)?;
            }
        }
    }
    Ok(acc.finish())
}

pub(crate) fn eq_4_8_lhs(trunc: usize) -> Result<Built, QError> {
    let mut acc = Acc::new(1, trunc)?;
    let t = trunc as i64;
    let bound = cap(1, 0, trunc);
    for n1 in 0..bound {
        for n2 in 0..bound {
            let e12 = n1 * n1 + n2 * n2;
            if e12 >= t {
                continue;
            }
            for n3 in 0..bound {
                for n4 in 0..bound {
                    let e1234 = e12 + n3 * n3 + n4 * n4;
                    if e1234 >= t {
                        continue;
                    }
                    for i1 in 0..=n1.min(n2) {
                        for i2 in 0..=n3.min(n4) {
                            for j in 0..=i1.min(i2) {
                                let expo = e1234 + i1 * i1 + i2 * i2 + j * j;
                                if expo >= t {
                                    continue;
                                }
                                let term = Term::monomial(Sign::Plus, expo)
                                    .den(q(n1 + n2))
                                    .den(q(n3 + n4))
                                    .den(q(n1 - i1))
                                    .den(q(n2 - i1))
                                    .den(q(n3 - i2))
                                    .den(q(n4 - i2))
                                    .den(q(i1 + i2))
                                    .den(q(i1 - j))
                                    .den(q(i2 - j))
                                    .den(q(j))
                                    .den(q(j));
                                acc.push(&term)?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(acc.finish())
}

/// `1/(q)_∞^power`
pub(crate) fn euler_power_reciprocal(power: usize, trunc: usize) -> Result<Built, QError> {
    let term = (0..power).fold(Term::one(), |t, _| {
        t.den_shifted(Sign::Plus, 1, 1, Length::Infinite)
    });
    Ok(Built {
        series: term.eval(1, trunc)?,
        terms: 1,
    })
}
