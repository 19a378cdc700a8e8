use crate::error::QError;
use crate::qprod::{Length, PochSpec, Term};
use crate::series::{QSeries, Sign};

use super::{index_box, BaseParam, MultifoldPair, OnefoldPair, Sequence};

/// `q^{D·Σr²} · a^{Σr}` as a term.
fn quadratic_weight(a: BaseParam, denom: u32, r: &[usize]) -> Term {
    let sq: usize = r.iter().map(|x| x * x).sum();
    let lin: usize = r.iter().sum();
    let (sign, expo) = a.pow(lin as u64);
    Term::monomial(sign, denom as i64 * sq as i64 + expo)
}

/// `1/(aq;q)_m`
fn aq_reciprocal(term: Term, a: BaseParam, denom: u32, m: usize) -> Term {
    let d = denom as usize;
    term.den_shifted(a.sign, a.expo + d as i64, d, Length::Finite(m as i64))
}

/// The 2-fold pair obtained by specializing both lemma parameters to
/// `q^{-N_1}`, `q^{-N_2}`:
///
/// ```text
/// α_{N,N} = q^{N²} a^N α_N,   α_{N1,N2} = 0 otherwise,
/// β_{N1,N2} = 1/(aq)_{N1+N2} Σ_j q^{j²} a^j β_j / ((q)_{N1-j} (q)_{N2-j})
/// ```
pub fn twofold_from_onefold(pair: &OnefoldPair) -> MultifoldPair {
    let a = pair.a();
    let denom = pair.denom();
    let d = denom as usize;
    let inner = pair.as_multifold().clone();

    let inner_alpha = inner.alpha.clone();
    let alpha = Sequence::new(move |index, trunc| {
        let (n1, n2) = (index[0], index[1]);
        if n1 != n2 {
            return QSeries::zero(denom, trunc);
        }
        let value = inner_alpha.get(&[n1], trunc)?;
        quadratic_weight(a, denom, &[n1]).eval_times(&value, trunc)
    });

    let inner_beta = inner.beta.clone();
    let beta = Sequence::new(move |index, trunc| {
        let (n1, n2) = (index[0], index[1]);
        let mut acc = QSeries::zero(denom, trunc)?;
        for j in 0..=n1.min(n2) {
            let term = aq_reciprocal(quadratic_weight(a, denom, &[j]), a, denom, n1 + n2)
                .den(PochSpec::finite(Sign::Plus, d, d, (n1 - j) as i64))
                .den(PochSpec::finite(Sign::Plus, d, d, (n2 - j) as i64));
            if term.leading_offset()?.is_some_and(|o| o >= trunc as i64) {
                continue;
            }
            let value = inner_beta.get(&[j], trunc)?;
            acc = acc.add(&term.eval_times(&value, trunc)?)?;
        }
        Ok(acc)
    });

    MultifoldPair::new(format!("{}^(2)", pair.name()), 2, a, denom, alpha, beta)
}

/// Lifts an `l`-fold pair with common base `a` to a `2l`-fold pair:
/// α is carried onto the pairing diagonal `n_{2i-1} = n_{2i} = r_i` with
/// weight `q^{Σr²} a^{Σr}`, and
///
/// ```text
/// β_n = 1/Π_i (aq)_{n_{2i-1}+n_{2i}}
///       Σ_i q^{Σ i_k²} a^{Σ i_k} β_i / Π_k (q)_{n_{2k-1}-i_k} (q)_{n_{2k}-i_k}
/// ```
pub fn theorem1_lift(pair: &MultifoldPair) -> MultifoldPair {
    let a = pair.a;
    let denom = pair.denom;
    let d = denom as usize;
    let folds = pair.folds;

    let inner_alpha = pair.alpha.clone();
    let alpha = Sequence::new(move |index, trunc| {
        let mut r = Vec::with_capacity(folds);
        for chunk in index.chunks(2) {
            if chunk[0] != chunk[1] {
                return QSeries::zero(denom, trunc);
            }
            r.push(chunk[0]);
        }
        let value = inner_alpha.get(&r, trunc)?;
        if value.is_zero() {
            return Ok(value);
        }
        quadratic_weight(a, denom, &r).eval_times(&value, trunc)
    });

    let inner_beta = pair.beta.clone();
    let beta = Sequence::new(move |index, trunc| {
        let mut prefactor = Term::one();
        let mut bounds = Vec::with_capacity(folds);
        for chunk in index.chunks(2) {
            prefactor = aq_reciprocal(prefactor, a, denom, chunk[0] + chunk[1]);
            bounds.push(chunk[0].min(chunk[1]));
        }
        let mut acc = QSeries::zero(denom, trunc)?;
        for i in index_box(&bounds) {
            let mut term = prefactor.mul(&quadratic_weight(a, denom, &i));
            if term.leading_offset()?.is_some_and(|o| o >= trunc as i64) {
                continue;
            }
            for (k, chunk) in index.chunks(2).enumerate() {
                for &n in chunk {
                    term = term.den(PochSpec::finite(Sign::Plus, d, d, (n - i[k]) as i64));
                }
            }
            let value = inner_beta.get(&i, trunc)?;
            if value.is_zero() {
                continue;
            }
            acc = acc.add(&term.eval_times(&value, trunc)?)?;
        }
        Ok(acc)
    });

    MultifoldPair::new(
        format!("lift({})", pair.name),
        2 * folds,
        a,
        denom,
        alpha,
        beta,
    )
}

/// Convenience for building sequences that only depend on a scalar index.
pub(crate) fn scalar_sequence<F>(f: F) -> Sequence
where
    F: Fn(usize, usize) -> Result<QSeries, QError> + Send + Sync + 'static,
{
    Sequence::new(move |index, trunc| f(index[0], trunc))
}

#[cfg(test)]
mod tests {
    use super::super::{check_multifold, pairs};
    use super::*;

    #[test]
    fn lift_of_onefold_agrees_with_twofold_constructor() {
        for pair in [pairs::unit1(), pairs::pair_3_5(), pairs::remark_pair()] {
            let direct = twofold_from_onefold(&pair);
            let lifted = theorem1_lift(pair.as_multifold());
            for n in index_box(&[3, 3]) {
                assert_eq!(direct.alpha(&n, 25).unwrap(), lifted.alpha(&n, 25).unwrap());
                assert_eq!(direct.beta(&n, 25).unwrap(), lifted.beta(&n, 25).unwrap());
            }
        }
    }

    #[test]
    fn lifted_alpha_vanishes_off_diagonal() {
        let lifted = theorem1_lift(&pairs::unit2());
        for n in index_box(&[2, 2, 2, 2]) {
            let on = n[0] == n[1] && n[2] == n[3];
            let value = lifted.alpha(&n, 10).unwrap();
            if !on {
                assert!(value.is_zero(), "{n:?}");
            }
        }
        assert!(!lifted.alpha(&[0, 0, 0, 0], 10).unwrap().is_zero());
    }

    #[test]
    fn twofold_of_remark_pair_is_a_pair() {
        let built = twofold_from_onefold(&pairs::remark_pair());
        assert!(check_multifold(&built, 4, 30).is_match());
    }
}
