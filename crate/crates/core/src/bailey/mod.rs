//! Bailey pairs, their defining relation, the Bailey lemma and the two pair
//! constructions (the 1-fold to 2-fold step and the general `l -> 2l` lift).
//!
//! A pair relative to `a` is a couple of sequences `(α, β)` indexed by
//! `l`-tuples with
//!
//! ```text
//! β_n = Σ_{r ≤ n} α_r / Π_i (aq;q)_{n_i + r_i} (q;q)_{n_i - r_i}
//! ```
//!
//! Only a common base `a = ±q^e` for every slot is supported.
//!
//! Sequences are memoized. The cache sits behind a mutex and may be read and
//! filled from several threads at once; a value is computed outside the lock,
//! so two threads racing on the same index both compute it and the second
//! insert is a no-op with an identical value.

mod construct;
mod lemma;
pub mod pairs;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use parking_lot::Mutex;

use crate::error::QError;
use crate::qprod::{Length, PochSpec, Term};
use crate::report::{Mismatch, Status, VerifyReport};
use crate::series::{Comparison, QSeries, Sign};

pub use construct::{theorem1_lift, twofold_from_onefold};
pub use lemma::{
    bailey_lemma, lemma_eval, limit_weight, multifold_limit_sum, twofold_lemma_eval, LemmaSides,
    RhoSpec,
};

/// Base parameter `a = sign · q^{expo/D}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseParam {
    pub sign: Sign,
    pub expo: i64,
}

impl BaseParam {
    pub const ONE: BaseParam = BaseParam {
        sign: Sign::Plus,
        expo: 0,
    };

    /// `a = q` on the lattice with denominator `denom`.
    pub fn q(denom: u32) -> Self {
        BaseParam {
            sign: Sign::Plus,
            expo: denom as i64,
        }
    }

    /// `a^k` as `(sign, exponent numerator)`.
    pub fn pow(self, k: u64) -> (Sign, i64) {
        (self.sign.pow(k), self.expo * k as i64)
    }
}

type SeqFn = dyn Fn(&[usize], usize) -> Result<QSeries, QError> + Send + Sync;

struct SeqInner {
    f: Box<SeqFn>,
    cache: Mutex<HashMap<(Vec<usize>, usize), QSeries>>,
}

/// Memoized map from a multi-index and a truncation to a series.
#[derive(Clone)]
pub struct Sequence {
    inner: Arc<SeqInner>,
}

impl Sequence {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&[usize], usize) -> Result<QSeries, QError> + Send + Sync + 'static,
    {
        Sequence {
            inner: Arc::new(SeqInner {
                f: Box::new(f),
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn get(&self, index: &[usize], trunc: usize) -> Result<QSeries, QError> {
        let key = (index.to_vec(), trunc);
        if let Some(hit) = self.inner.cache.lock().get(&key) {
            return Ok(hit.clone());
        }
        let value = (self.inner.f)(index, trunc)?;
        self.inner
            .cache
            .lock()
            .entry(key)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    pub fn cached_len(&self) -> usize {
        self.inner.cache.lock().len()
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sequence")
            .field("cached", &self.cached_len())
            .finish()
    }
}

/// An `l`-fold Bailey pair relative to a common base `a`.
#[derive(Debug, Clone)]
pub struct MultifoldPair {
    pub name: String,
    pub folds: usize,
    pub a: BaseParam,
    pub denom: u32,
    pub alpha: Sequence,
    pub beta: Sequence,
}

impl MultifoldPair {
    pub fn new(
        name: impl Into<String>,
        folds: usize,
        a: BaseParam,
        denom: u32,
        alpha: Sequence,
        beta: Sequence,
    ) -> Self {
        MultifoldPair {
            name: name.into(),
            folds,
            a,
            denom,
            alpha,
            beta,
        }
    }

    fn check_index(&self, index: &[usize]) -> Result<(), QError> {
        if index.len() != self.folds {
            return Err(QError::FoldMismatch {
                expected: self.folds,
                found: index.len(),
            });
        }
        Ok(())
    }

    pub fn alpha(&self, index: &[usize], trunc: usize) -> Result<QSeries, QError> {
        self.check_index(index)?;
        self.alpha.get(index, trunc)
    }

    pub fn beta(&self, index: &[usize], trunc: usize) -> Result<QSeries, QError> {
        self.check_index(index)?;
        self.beta.get(index, trunc)
    }

    /// Right-hand side of the defining relation at `n`: the α-sum.
    pub fn relation_sum(&self, n: &[usize], trunc: usize) -> Result<(QSeries, usize), QError> {
        self.check_index(n)?;
        let mut acc = QSeries::zero(self.denom, trunc)?;
        let mut terms = 0;
        for r in index_box(n) {
            let alpha = self.alpha.get(&r, trunc)?;
            if alpha.is_zero() {
                continue;
            }
            let term = relation_weight(self.a, self.denom, n, &r);
            acc = acc.add(&term.eval_times(&alpha, trunc)?)?;
            terms += 1;
        }
        Ok((acc, terms))
    }

    /// The tensor product: an `(l + l')`-fold pair whose α and β are the
    /// products of the factors' values.
    pub fn product(&self, other: &MultifoldPair) -> Result<MultifoldPair, QError> {
        if self.a != other.a || self.denom != other.denom {
            return Err(QError::BaseMismatch);
        }
        let split = self.folds;
        let combine = |left: Sequence, right: Sequence| {
            Sequence::new(move |index, trunc| {
                let l = left.get(&index[..split], trunc)?;
                if l.is_zero() {
                    return Ok(l);
                }
                l.mul(&right.get(&index[split..], trunc)?)
            })
        };
        Ok(MultifoldPair::new(
            format!("{}*{}", self.name, other.name),
            self.folds + other.folds,
            self.a,
            self.denom,
            combine(self.alpha.clone(), other.alpha.clone()),
            combine(self.beta.clone(), other.beta.clone()),
        ))
    }
}

/// A 1-fold (ordinary) Bailey pair.
#[derive(Debug, Clone)]
pub struct OnefoldPair {
    inner: MultifoldPair,
}

impl OnefoldPair {
    pub fn new(
        name: impl Into<String>,
        a: BaseParam,
        denom: u32,
        alpha: Sequence,
        beta: Sequence,
    ) -> Self {
        OnefoldPair {
            inner: MultifoldPair::new(name, 1, a, denom, alpha, beta),
        }
    }

    /// Pair whose β is generated from α through the defining relation.
    pub fn from_alpha(name: impl Into<String>, a: BaseParam, denom: u32, alpha: Sequence) -> Self {
        let alpha_for_beta = alpha.clone();
        let beta = Sequence::new(move |index, trunc| {
            let n = index[0];
            let mut acc = QSeries::zero(denom, trunc)?;
            for r in 0..=n {
                let value = alpha_for_beta.get(&[r], trunc)?;
                if value.is_zero() {
                    continue;
                }
                let term = relation_weight(a, denom, &[n], &[r]);
                acc = acc.add(&term.eval_times(&value, trunc)?)?;
            }
            Ok(acc)
        });
        OnefoldPair::new(name, a, denom, alpha, beta)
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn a(&self) -> BaseParam {
        self.inner.a
    }

    pub fn denom(&self) -> u32 {
        self.inner.denom
    }

    pub fn alpha(&self, n: usize, trunc: usize) -> Result<QSeries, QError> {
        self.inner.alpha.get(&[n], trunc)
    }

    pub fn beta(&self, n: usize, trunc: usize) -> Result<QSeries, QError> {
        self.inner.beta.get(&[n], trunc)
    }

    pub fn as_multifold(&self) -> &MultifoldPair {
        &self.inner
    }
}

/// `1 / Π_i (aq;q)_{n_i + r_i} (q;q)_{n_i - r_i}`
fn relation_weight(a: BaseParam, denom: u32, n: &[usize], r: &[usize]) -> Term {
    let d = denom as usize;
    n.iter().zip(r).fold(Term::one(), |term, (&ni, &ri)| {
        term.den_shifted(
            a.sign,
            a.expo + d as i64,
            d,
            Length::Finite((ni + ri) as i64),
        )
        .den(PochSpec::finite(Sign::Plus, d, d, ni as i64 - ri as i64))
    })
}

/// All multi-indices `r` with `0 <= r_i <= bound_i`, in lexicographic order.
pub fn index_box(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(bound.len())];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

fn format_index(index: &[usize]) -> String {
    let parts: Vec<String> = index.iter().map(ToString::to_string).collect();
    format!("n=({})", parts.join(","))
}

/// Checks the defining relation for every index in `[0, n_max]^l`.
pub fn check_multifold(pair: &MultifoldPair, n_max: usize, trunc: usize) -> VerifyReport {
    let start = Instant::now();
    let mut report = VerifyReport::new(&pair.name, trunc, pair.denom);
    let outcome = (|| -> Result<Option<Mismatch>, QError> {
        for n in index_box(&vec![n_max; pair.folds]) {
            let beta = pair.beta(&n, trunc)?;
            let (sum, terms) = pair.relation_sum(&n, trunc)?;
            report.term_count += terms as u64;
            if let Comparison::FirstMismatch {
                expo_num,
                lhs_coeff,
                rhs_coeff,
            } = beta.equal_up_to(&sum, trunc)?
            {
                return Ok(Some(Mismatch {
                    expo_num,
                    denom: pair.denom,
                    lhs_coeff,
                    rhs_coeff,
                    instance: Some(format_index(&n)),
                }));
            }
        }
        Ok(None)
    })();
    report.finish(outcome, start);
    report
}

pub fn check_onefold(pair: &OnefoldPair, n_max: usize, trunc: usize) -> VerifyReport {
    check_multifold(pair.as_multifold(), n_max, trunc)
}

impl VerifyReport {
    pub(crate) fn finish(&mut self, outcome: Result<Option<Mismatch>, QError>, start: Instant) {
        match outcome {
            Ok(None) => self.status = Status::Match,
            Ok(Some(m)) => {
                self.status = Status::Mismatch;
                self.first_mismatch = Some(m);
            }
            Err(e) => {
                self.status = Status::Error;
                self.error = Some(e.to_string());
            }
        }
        self.wall_ms = start.elapsed().as_millis() as u64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_box_enumerates_lexicographically() {
        assert_eq!(index_box(&[1, 2]).len(), 6);
        assert_eq!(index_box(&[1, 2])[1], vec![0, 1]);
        assert_eq!(index_box(&[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn fold_count_is_enforced() {
        let pair = pairs::unit1();
        assert!(matches!(
            pair.as_multifold().beta(&[1, 2], 5),
            Err(QError::FoldMismatch {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn single_term_relation_at_zero() {
        let pair = pairs::pair_3_5();
        let report = check_onefold(&pair, 0, 20);
        assert!(report.is_match(), "{report:?}");
        assert_eq!(report.term_count, 1);
    }

    #[test]
    fn memo_is_shared_across_threads() {
        let pair = pairs::unit4();
        std::thread::scope(|scope| {
            for t in 0..4 {
                let pair = &pair;
                scope.spawn(move || {
                    for n in index_box(&[1, 1, 1, 1]) {
                        let mut idx = n.clone();
                        idx[t] += 1;
                        pair.beta(&idx, 12).unwrap();
                    }
                });
            }
        });
        let serial = pairs::unit4();
        for n in index_box(&[2, 1, 1, 1]) {
            assert_eq!(pair.beta(&n, 12).unwrap(), serial.beta(&n, 12).unwrap());
        }
    }

    #[test]
    fn product_pair_satisfies_relation() {
        let prod = pairs::unit1()
            .as_multifold()
            .product(pairs::remark_pair().as_multifold())
            .unwrap();
        assert_eq!(prod.folds, 2);
        assert!(check_multifold(&prod, 3, 20).is_match());
        let err = pairs::unit1()
            .as_multifold()
            .product(pairs::pair_3_5().as_multifold())
            .unwrap_err();
        assert_eq!(err, QError::BaseMismatch);
    }
}
