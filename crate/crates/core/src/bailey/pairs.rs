//! Named Bailey pairs, hand-coded from their closed forms.
//!
//! | name                | folds | a | α, β |
//! |---------------------|-------|---|------|
//! | `unit1`             | 1 | 1 | `α = δ_0`, `β_n = 1/(q)_n²` |
//! | `remark`            | 1 | 1 | `α_0 = 1`, `α_n = (-1)^n q^{n(3n-1)/2}(1+q^n)`, `β_n = 1/(q)_n` |
//! | `pair-3.5`          | 1 | q | `α_n = q^{n²}(1-q^{2n+1})/(1-q) Σ_{|j|≤n} (-1)^j q^{-j²}`, `β_n = (-1)^n/(q²;q²)_n` |
//! | `pair-3.7`          | 2 | q | diagonal α with `1/(1-q)²`, β with `1/(q)_{N1+N2+1}` |
//! | `pair-3.7-literal`  | 2 | q | as above but α with a single `1/(1-q)`; not a pair |
//! | `unit2`             | 2 | 1 | `α = δ_0`, β the single-sum closed form |
//! | `unit4`             | 4 | 1 | `α = δ_0`, β the triple-sum closed form |
//!
//! `pair-3.7` is normalized so that it is a pair and feeds the thm2-3.1
//! multi-sum verbatim: its β carries `1/(q)_{N1+N2+1} = 1/((1-q)(q²;q)_{N1+N2})`,
//! which is `1/(1-q)` times the β produced by [`twofold_from_onefold`] from
//! `pair-3.5`. The α has to carry the same `1/(1-q)`. The variant with the
//! single `1/(1-q)` in α is kept as `pair-3.7-literal`; its defining relation
//! already fails at `n = (0,0)`.
//!
//! [`twofold_from_onefold`]: super::twofold_from_onefold

use crate::error::QError;
use crate::qprod::{PochSpec, Term};
use crate::series::{QSeries, Sign};

use super::construct::{scalar_sequence, theorem1_lift, twofold_from_onefold};
use super::{BaseParam, MultifoldPair, OnefoldPair, Sequence};

pub const PAIR_NAMES: &[&str] = &[
    "unit1",
    "remark",
    "pair-3.5",
    "pair-3.7",
    "pair-3.7-literal",
    "unit2",
    "unit4",
    "unit2-machine",
    "unit4-machine",
    "pair-3.7-machine",
];

/// Looks a pair up by name; 1-fold pairs come back in their multifold form.
pub fn by_name(name: &str) -> Result<MultifoldPair, QError> {
    Ok(match name {
        "unit1" => unit1().as_multifold().clone(),
        "remark" => remark_pair().as_multifold().clone(),
        "pair-3.5" => pair_3_5().as_multifold().clone(),
        "pair-3.7" => pair_3_7(),
        "pair-3.7-literal" => pair_3_7_literal(),
        "unit2" => unit2(),
        "unit4" => unit4(),
        "unit2-machine" => twofold_from_onefold(&unit1()),
        "unit4-machine" => theorem1_lift(&twofold_from_onefold(&unit1())),
        "pair-3.7-machine" => twofold_from_onefold(&pair_3_5()),
        other => return Err(QError::UnknownPair(other.to_string())),
    })
}

fn q(n: usize) -> PochSpec {
    PochSpec::q(n as i64)
}

fn delta(folds: usize) -> Sequence {
    Sequence::new(move |index, trunc| {
        debug_assert_eq!(index.len(), folds);
        if index.iter().all(|&n| n == 0) {
            QSeries::one(1, trunc)
        } else {
            QSeries::zero(1, trunc)
        }
    })
}

pub fn unit1() -> OnefoldPair {
    let beta = scalar_sequence(|n, trunc| Term::one().den(q(n)).den(q(n)).eval(1, trunc));
    OnefoldPair::new("unit1", BaseParam::ONE, 1, delta(1), beta)
}

/// The pair behind the nonic Rogers-Ramanujan type identity `eq-4.1`.
pub fn remark_pair() -> OnefoldPair {
    let alpha = scalar_sequence(|n, trunc| {
        if n == 0 {
            return QSeries::one(1, trunc);
        }
        let n = n as i64;
        Term::monomial(Sign::parity(n), n * (3 * n - 1) / 2)
            .num(PochSpec::finite(Sign::Minus, n as usize, 1, 1))
            .eval(1, trunc)
    });
    let beta = scalar_sequence(|n, trunc| Term::one().den(q(n)).eval(1, trunc));
    OnefoldPair::new("remark", BaseParam::ONE, 1, alpha, beta)
}

/// `q^{c·n²} (1 - q^{2n+1}) / (1-q)^k Σ_{|j|≤n} (-1)^j q^{-j²}` on D = 1,
/// times `q^{lin·n}`.
fn theta_alpha(
    n: usize,
    quad: i64,
    lin: i64,
    unit_powers: usize,
    trunc: usize,
) -> Result<QSeries, QError> {
    let n = n as i64;
    let mut acc = QSeries::zero(1, trunc)?;
    for j in -n..=n {
        let mut term = Term::monomial(Sign::parity(j), quad * n * n + lin * n - j * j)
            .num(PochSpec::finite(Sign::Plus, (2 * n + 1) as usize, 1, 1));
        for _ in 0..unit_powers {
            term = term.den(q(1));
        }
        acc = acc.add(&term.eval(1, trunc)?)?;
    }
    Ok(acc)
}

pub fn pair_3_5() -> OnefoldPair {
    let alpha = scalar_sequence(|n, trunc| theta_alpha(n, 1, 0, 1, trunc));
    let beta = scalar_sequence(|n, trunc| {
        Term::monomial(Sign::parity(n as i64), 0)
            .den(PochSpec::finite(Sign::Plus, 2, 2, n as i64))
            .eval(1, trunc)
    });
    OnefoldPair::new("pair-3.5", BaseParam::q(1), 1, alpha, beta)
}

/// `1/(q)_{N1+N2+1} Σ_j q^{j²+j} (-1)^j / ((q)_{N1-j} (q)_{N2-j} (q²;q²)_j)`
fn beta_3_8() -> Sequence {
    Sequence::new(|index, trunc| {
        let (n1, n2) = (index[0], index[1]);
        let mut acc = QSeries::zero(1, trunc)?;
        for j in 0..=n1.min(n2) {
            let term = Term::monomial(Sign::parity(j as i64), (j * j + j) as i64)
                .den(q(n1 - j))
                .den(q(n2 - j))
                .den(q(n1 + n2 + 1))
                .den(PochSpec::finite(Sign::Plus, 2, 2, j as i64));
            acc = acc.add(&term.eval(1, trunc)?)?;
        }
        Ok(acc)
    })
}

fn diagonal_alpha_3_7(unit_powers: usize) -> Sequence {
    Sequence::new(move |index, trunc| {
        if index[0] != index[1] {
            return QSeries::zero(1, trunc);
        }
        theta_alpha(index[0], 2, 1, unit_powers, trunc)
    })
}

pub fn pair_3_7() -> MultifoldPair {
    MultifoldPair::new(
        "pair-3.7",
        2,
        BaseParam::q(1),
        1,
        diagonal_alpha_3_7(2),
        beta_3_8(),
    )
}

pub fn pair_3_7_literal() -> MultifoldPair {
    MultifoldPair::new(
        "pair-3.7-literal",
        2,
        BaseParam::q(1),
        1,
        diagonal_alpha_3_7(1),
        beta_3_8(),
    )
}

/// `1/(q)_{n1+n2} Σ_j q^{j²} / ((q)_{n1-j} (q)_{n2-j} (q)_j²)`
pub(crate) fn beta_unit2(n1: usize, n2: usize, trunc: usize) -> Result<QSeries, QError> {
    let mut acc = QSeries::zero(1, trunc)?;
    for j in 0..=n1.min(n2) {
        if j * j >= trunc {
            break;
        }
        let term = Term::monomial(Sign::Plus, (j * j) as i64)
            .den(q(n1 + n2))
            .den(q(n1 - j))
            .den(q(n2 - j))
            .den(q(j))
            .den(q(j));
        acc = acc.add(&term.eval(1, trunc)?)?;
    }
    Ok(acc)
}

pub fn unit2() -> MultifoldPair {
    let beta = Sequence::new(|index, trunc| beta_unit2(index[0], index[1], trunc));
    MultifoldPair::new("unit2", 2, BaseParam::ONE, 1, delta(2), beta)
}

pub fn unit4() -> MultifoldPair {
    let beta = Sequence::new(|index, trunc| {
        let [n1, n2, n3, n4] = [index[0], index[1], index[2], index[3]];
        let mut acc = QSeries::zero(1, trunc)?;
        for i1 in 0..=n1.min(n2) {
            for i2 in 0..=n3.min(n4) {
                for j in 0..=i1.min(i2) {
                    let expo = i1 * i1 + i2 * i2 + j * j;
                    if expo >= trunc {
                        continue;
                    }
                    let term = Term::monomial(Sign::Plus, expo as i64)
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
                    acc = acc.add(&term.eval(1, trunc)?)?;
                }
            }
        }
        Ok(acc)
    });
    MultifoldPair::new("unit4", 4, BaseParam::ONE, 1, delta(4), beta)
}

#[cfg(test)]
mod tests {
    use super::super::{check_multifold, check_onefold, index_box};
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in PAIR_NAMES {
            assert!(by_name(name).is_ok(), "{name}");
        }
        assert!(matches!(by_name("nope"), Err(QError::UnknownPair(_))));
    }

    #[test]
    fn remark_pair_is_a_pair() {
        assert!(check_onefold(&remark_pair(), 6, 30).is_match());
    }

    #[test]
    fn literal_3_7_fails_at_origin_by_a_unit_factor() {
        let report = check_multifold(&pair_3_7_literal(), 1, 10);
        let m = report.first_mismatch.expect("literal form is not a pair");
        assert_eq!(m.instance.as_deref(), Some("n=(0,0)"));
        // β_{0,0} = 1/(1-q) against α_{0,0} = 1
        assert_eq!(m.expo_num, 1);
    }

    #[test]
    fn machine_3_7_is_normalized_pair_times_one_minus_q() {
        let machine = twofold_from_onefold(&pair_3_5());
        let hand = pair_3_7();
        let literal = pair_3_7_literal();
        for n in index_box(&[4, 4]) {
            let mut beta = hand.beta(&n, 30).unwrap();
            beta.mul_binomial(Sign::Plus, 1);
            assert_eq!(machine.beta(&n, 30).unwrap(), beta, "{n:?}");
            assert_eq!(
                machine.alpha(&n, 30).unwrap(),
                literal.alpha(&n, 30).unwrap(),
                "{n:?}"
            );
        }
    }

    #[test]
    fn unit2_matches_product_form() {
        // 1/((q)_{n1}² (q)_{n2}²)
        let pair = unit2();
        for n in index_box(&[4, 4]) {
            let product = Term::one()
                .den(q(n[0]))
                .den(q(n[0]))
                .den(q(n[1]))
                .den(q(n[1]))
                .eval(1, 25)
                .unwrap();
            assert_eq!(pair.beta(&n, 25).unwrap(), product);
        }
    }
}
