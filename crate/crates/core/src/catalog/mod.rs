//! Registry of identities, each a pair of independently built sides.
//!
//! Every side is hand-coded from its closed form in [`identities`]; the
//! Bailey machinery is only used to cross-check them and to produce the
//! higher members of the `1/(q)_∞^{2M}` family.

mod identities;
mod mock;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use crate::bailey::{index_box, multifold_limit_sum, pairs, theorem1_lift, MultifoldPair};
use crate::error::QError;
use crate::report::{Mismatch, VerifyReport};
use crate::series::QSeries;

pub use identities::{FactorShape, TripleSumShape};
pub use mock::MockTheta;

/// A built side together with the number of nonvanishing summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Built {
    pub series: QSeries,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lhs,
    Rhs,
}

impl FromStr for Side {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self, QError> {
        match s.to_ascii_lowercase().as_str() {
            "lhs" => Ok(Side::Lhs),
            "rhs" => Ok(Side::Rhs),
            _ => Err(QError::InvalidParams(format!(
                "side must be lhs or rhs, got `{s}`"
            ))),
        }
    }
}

/// Builds one side at a family index (empty for plain identities).
pub type Builder = Arc<dyn Fn(&[usize], usize) -> Result<Built, QError> + Send + Sync>;

#[derive(Clone)]
pub struct IdentityEntry {
    pub id: String,
    pub description: String,
    pub denom: u32,
    /// Default comparison order in lattice units.
    pub default_order: usize,
    /// Family members to verify; a single empty index for plain identities.
    pub instances: Vec<Vec<usize>>,
    pub annotation: Option<String>,
    lhs: Builder,
    rhs: Builder,
}

impl fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .field("denom", &self.denom)
            .field("default_order", &self.default_order)
            .field("instances", &self.instances.len())
            .finish_non_exhaustive()
    }
}

impl IdentityEntry {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        denom: u32,
        default_order: usize,
        lhs: Builder,
        rhs: Builder,
    ) -> Self {
        IdentityEntry {
            id: id.into(),
            description: description.into(),
            denom,
            default_order,
            instances: vec![Vec::new()],
            annotation: None,
            lhs,
            rhs,
        }
    }

    /// Single-instance entry from plain `trunc ↦ Built` functions.
    fn plain<L, R>(
        id: &str,
        description: &str,
        denom: u32,
        default_order: usize,
        lhs: L,
        rhs: R,
    ) -> Self
    where
        L: Fn(usize) -> Result<Built, QError> + Send + Sync + 'static,
        R: Fn(usize) -> Result<Built, QError> + Send + Sync + 'static,
    {
        Self::new(
            id,
            description,
            denom,
            default_order,
            Arc::new(move |_, t| lhs(t)),
            Arc::new(move |_, t| rhs(t)),
        )
    }

    pub fn with_instances(mut self, instances: Vec<Vec<usize>>) -> Self {
        self.instances = instances;
        self
    }

    pub fn with_annotation(mut self, annotation: impl Into<String>) -> Self {
        self.annotation = Some(annotation.into());
        self
    }

    /// The numbered display an entry id refers to, when it has one.
    pub fn equation(&self) -> Option<&str> {
        let rest = self
            .id
            .strip_prefix("eq-")
            .or_else(|| self.id.strip_prefix("thm2-"))?;
        Some(rest.split_once('-').map_or(rest, |(num, _)| num))
    }

    pub fn index_arity(&self) -> usize {
        self.instances.first().map_or(0, Vec::len)
    }

    pub fn build_at(&self, side: Side, index: &[usize], trunc: usize) -> Result<Built, QError> {
        if trunc == 0 {
            return Err(QError::ZeroTruncation);
        }
        if index.len() != self.index_arity() {
            return Err(QError::InvalidParams(format!(
                "{} takes {} indices, got {}",
                self.id,
                self.index_arity(),
                index.len()
            )));
        }
        match side {
            Side::Lhs => (self.lhs)(index, trunc),
            Side::Rhs => (self.rhs)(index, trunc),
        }
    }

    /// Builds a side of a plain identity.
    pub fn build(&self, side: Side, trunc: usize) -> Result<QSeries, QError> {
        Ok(self.build_at(side, &[], trunc)?.series)
    }

    /// Compares both sides below `order` for every instance.
    pub fn verify(&self, order: usize) -> VerifyReport {
        let start = Instant::now();
        let mut report = VerifyReport::new(&self.id, order, self.denom);
        report.annotation = self.annotation.clone();
        let family = self.index_arity() > 0;
        let outcome = (|| -> Result<Option<Mismatch>, QError> {
            for index in &self.instances {
                let lhs = self.build_at(Side::Lhs, index, order)?;
                let rhs = self.build_at(Side::Rhs, index, order)?;
                report.term_count += (lhs.terms + rhs.terms) as u64;
                let cmp = lhs.series.equal_up_to(&rhs.series, order)?;
                let label = family.then(|| {
                    let parts: Vec<String> = index.iter().map(ToString::to_string).collect();
                    format!("n=({})", parts.join(","))
                });
                if let Some(m) = Mismatch::from_comparison(cmp, self.denom, label) {
                    return Ok(Some(m));
                }
            }
            Ok(None)
        })();
        report.finish(outcome, start);
        report
    }
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<IdentityEntry>,
}

impl Catalog {
    pub fn empty() -> Self {
        Catalog::default()
    }

    /// Every registered identity in registry order.
    pub fn standard() -> Self {
        use identities::*;
        let mut entries = vec![
            IdentityEntry::plain(
                "thm2-3.1",
                "triple sum = (-q)_inf/(q)_inf times the omega-like third-order mock theta series",
                1,
                50,
                thm2_3_1_lhs,
                thm2_3_1_rhs,
            ),
            IdentityEntry::plain(
                "thm2-3.2",
                "triple sum with (-q)_n1 (-q)_n2 = four-product prefactor times the nu-like series",
                1,
                50,
                thm2_3_2_lhs,
                thm2_3_2_rhs,
            ),
            IdentityEntry::plain(
                "thm2-3.3",
                "triple sum in base q^2 = modular prefactor times psi(q^4)",
                1,
                50,
                thm2_3_3_lhs,
                thm2_3_3_rhs,
            ),
            IdentityEntry::plain(
                "eq-3.9",
                "thm2-3.1 triple sum = indefinite theta series over (q)_inf^2",
                1,
                50,
                thm2_3_1_lhs,
                eq_3_9_rhs,
            ),
            IdentityEntry::plain(
                "eq-3.10",
                "nu-like third-order mock theta series as an indefinite theta quotient",
                1,
                50,
                eq_3_10_lhs,
                eq_3_10_rhs,
            ),
            IdentityEntry::plain(
                "eq-3.11",
                "half-integer triple sum = (-q^(1/2);q)_inf^2/(q)_inf^2 times indefinite theta series",
                2,
                100,
                eq_3_11_lhs,
                eq_3_11_rhs,
            ),
            IdentityEntry::plain(
                "eq-3.12",
                "psi(q) = (-q)_inf/(q)_inf times indefinite theta series",
                1,
                50,
                eq_3_12_lhs,
                eq_3_12_rhs,
            ),
            IdentityEntry::plain(
                "eq-4.1",
                "triple sum = (q,q^8,q^9;q^9)_inf/(q)_inf^2 as displayed",
                1,
                50,
                eq_4_1_lhs,
                |t| eq_4_1_rhs([1, 8], t),
            )
            .with_annotation(
                "the displayed product (q,q^8,q^9;q^9)_inf does not match the triple sum \
                 (first difference at q^1); eq-4.1-variant with (q^4,q^5,q^9;q^9)_inf verifies",
            ),
            IdentityEntry::plain(
                "eq-4.1-variant",
                "triple sum = (q^4,q^5,q^9;q^9)_inf/(q)_inf^2",
                1,
                50,
                eq_4_1_lhs,
                |t| eq_4_1_rhs([4, 5], t),
            )
            .with_annotation("minimal correction of eq-4.1: residues 1,8 mod 9 replaced by 4,5"),
            IdentityEntry::new(
                "eq-4.2",
                "1/((q)_n1^2 (q)_n2^2) as a single finite sum, n1,n2 in [0,5]",
                1,
                40,
                Arc::new(|n: &[usize], t| eq_4_2_lhs(n[0] as i64, n[1] as i64, t)),
                Arc::new(|n: &[usize], t| eq_4_2_rhs(n[0] as i64, n[1] as i64, t)),
            )
            .with_instances(index_box(&[5, 5])),
            IdentityEntry::plain(
                "eq-4.7",
                "triple sum = 1/(q)_inf^2",
                1,
                50,
                eq_4_7_lhs,
                |t| euler_power_reciprocal(2, t),
            ),
            IdentityEntry::plain(
                "eq-4.8",
                "seven-fold sum = 1/(q)_inf^4",
                1,
                30,
                eq_4_8_lhs,
                |t| euler_power_reciprocal(4, t),
            ),
        ];
        entries.push(even_power_machine_entry(3));
        Catalog { entries }
    }

    pub fn entries(&self) -> &[IdentityEntry] {
        &self.entries
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.id.as_str())
    }

    pub fn get(&self, id: &str) -> Result<&IdentityEntry, QError> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| QError::UnknownIdentity(id.to_string()))
    }

    /// Adds an entry, replacing any entry with the same id in place.
    pub fn push(&mut self, entry: IdentityEntry) {
        match self.entries.iter_mut().find(|e| e.id == entry.id) {
            Some(slot) => *slot = entry,
            None => self.entries.push(entry),
        }
    }

    pub fn verify(&self, id: &str, order: usize) -> Result<VerifyReport, QError> {
        Ok(self.get(id)?.verify(order))
    }
}

/// Builds a side of a registered identity, or a mock theta series by name
/// (the side is ignored for those).
pub fn build(id: &str, side: Side, trunc: usize) -> Result<QSeries, QError> {
    if let Ok(mock) = id.parse::<MockTheta>() {
        if trunc == 0 {
            return Err(QError::ZeroTruncation);
        }
        return mock.build(trunc);
    }
    Catalog::standard().get(id)?.build(side, trunc)
}

pub fn verify(id: &str, trunc: usize) -> Result<VerifyReport, QError> {
    Catalog::standard().verify(id, trunc)
}

/// Largest fold count the even-power family will enumerate.
pub const MAX_EVEN_POWER_FOLDS: usize = 6;

/// The `M`-fold base pair: `unit1` for `M = 1`, its lift for `M = 2`, and
/// the tensor product with `unit1` above that.
fn even_power_base(m: usize) -> MultifoldPair {
    let unit1 = pairs::unit1().as_multifold().clone();
    match m {
        1 => unit1,
        2 => theorem1_lift(&unit1),
        _ => even_power_base(m - 1)
            .product(&unit1)
            .expect("every factor is relative to a = 1"),
    }
}

/// The lifted `2M`-fold pair whose all-infinite lemma limit expands
/// `1/(q)_∞^{2M}`.
pub fn even_power_pair(m: usize) -> Result<MultifoldPair, QError> {
    if m == 0 {
        return Err(QError::InvalidParams("M must be at least 1".into()));
    }
    if 2 * m > MAX_EVEN_POWER_FOLDS {
        return Err(QError::TooLarge(format!(
            "M = {m} needs a {}-fold pair and sums over {}-tuples with n_1²+…+n_{} < T; \
             the configured limit is {MAX_EVEN_POWER_FOLDS} folds (M ≤ {})",
            2 * m,
            2 * m,
            2 * m,
            MAX_EVEN_POWER_FOLDS / 2
        )));
    }
    Ok(theorem1_lift(&even_power_base(m)))
}

/// The machine-generated side `Σ q^{Σ n_i²} β_n` of the even-power family.
pub fn even_power_machine_lhs(m: usize, trunc: usize) -> Result<Built, QError> {
    let pair = even_power_pair(m)?;
    let sides = multifold_limit_sum(&pair, trunc)?;
    Ok(Built {
        series: sides.lhs,
        terms: sides.term_count,
    })
}

fn even_power_machine_entry(m: usize) -> IdentityEntry {
    IdentityEntry::plain(
        &format!("even-power-m{m}"),
        &format!("{}-fold lifted sum = 1/(q)_inf^{}", 2 * m, 2 * m),
        1,
        12,
        move |t| even_power_machine_lhs(m, t),
        move |t| identities::euler_power_reciprocal(2 * m, t),
    )
}

/// The entry expanding `1/(q)_∞^{2M}`: the hand-coded entries for `M ≤ 2`,
/// the lifted construction for `M = 3`.
pub fn gen_even_power_identity(m: usize) -> Result<IdentityEntry, QError> {
    even_power_pair(m)?;
    match m {
        1 => Catalog::standard().get("eq-4.7").cloned(),
        2 => Catalog::standard().get("eq-4.8").cloned(),
        _ => Ok(even_power_machine_entry(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(coeffs: &QSeries) -> Vec<i64> {
        coeffs
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn ids_are_unique() {
        let catalog = Catalog::standard();
        let mut ids: Vec<&str> = catalog.ids().collect();
        let before = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), before);
        assert_eq!(catalog.get("eq-3.11").unwrap().denom, 2);
    }

    #[test]
    fn equation_labels() {
        let catalog = Catalog::standard();
        assert_eq!(catalog.get("thm2-3.1").unwrap().equation(), Some("3.1"));
        assert_eq!(
            catalog.get("eq-4.1-variant").unwrap().equation(),
            Some("4.1")
        );
        assert_eq!(catalog.get("even-power-m3").unwrap().equation(), None);
    }

    #[test]
    fn build_examples() {
        assert_eq!(small(&build("thm2-3.1", Side::Lhs, 1).unwrap()), [1]);
        assert_eq!(small(&build("thm2-3.1", Side::Rhs, 1).unwrap()), [1]);
        assert_eq!(
            small(&build("psi", Side::Lhs, 7).unwrap()),
            [0, 1, 1, 2, 2, 2, 4]
        );
        assert_eq!(
            small(&build("eq-4.7", Side::Rhs, 8).unwrap()),
            [1, 2, 5, 10, 20, 36, 65, 110]
        );
    }

    #[test]
    fn unknown_ids_and_bad_arguments() {
        assert!(matches!(
            build("eq-9.9", Side::Lhs, 5),
            Err(QError::UnknownIdentity(_))
        ));
        assert!(matches!(
            build("eq-4.7", Side::Lhs, 0),
            Err(QError::ZeroTruncation)
        ));
        let family = Catalog::standard();
        let entry = family.get("eq-4.2").unwrap();
        assert!(entry.build(Side::Lhs, 10).is_err());
        assert!(entry.build_at(Side::Lhs, &[1, 2], 10).is_ok());
        assert!("middle".parse::<Side>().is_err());
    }

    #[test]
    fn short_orders_verify() {
        for id in ["thm2-3.1", "eq-3.10", "eq-3.12", "eq-4.7", "eq-4.1-variant"] {
            let report = verify(id, 15).unwrap();
            assert!(report.is_match(), "{}", report.summary());
        }
    }

    #[test]
    fn literal_nonic_product_mismatches_at_q1() {
        let report = verify("eq-4.1", 10).unwrap();
        let m = report.first_mismatch.expect("mismatch");
        assert_eq!(
            (m.expo_num, m.lhs_coeff.clone(), m.rhs_coeff.clone()),
            (1, 2.into(), 1.into())
        );
        assert!(report.annotation.is_some());
    }

    #[test]
    fn even_power_family_bounds() {
        assert_eq!(gen_even_power_identity(1).unwrap().id, "eq-4.7");
        assert_eq!(gen_even_power_identity(2).unwrap().id, "eq-4.8");
        assert_eq!(gen_even_power_identity(3).unwrap().id, "even-power-m3");
        assert!(matches!(
            gen_even_power_identity(4),
            Err(QError::TooLarge(_))
        ));
        assert!(matches!(
            gen_even_power_identity(0),
            Err(QError::InvalidParams(_))
        ));
    }

    #[test]
    fn machine_even_power_sides_agree_with_hand_sums() {
        let hand = Catalog::standard();
        for (m, id, t) in [(1, "eq-4.7", 20), (2, "eq-4.8", 10)] {
            let machine = even_power_machine_lhs(m, t).unwrap().series;
            assert_eq!(
                machine,
                hand.get(id).unwrap().build(Side::Lhs, t).unwrap(),
                "M={m}"
            );
        }
    }

    #[test]
    fn push_replaces_by_id() {
        let mut catalog = Catalog::standard();
        let n = catalog.entries().len();
        let entry = catalog.get("eq-4.7").unwrap().clone().with_annotation("x");
        catalog.push(entry);
        assert_eq!(catalog.entries().len(), n);
        assert_eq!(
            catalog.get("eq-4.7").unwrap().annotation.as_deref(),
            Some("x")
        );
        let mut empty = Catalog::empty();
        empty.push(catalog.get("eq-4.7").unwrap().clone());
        assert_eq!(empty.ids().collect::<Vec<_>>(), ["eq-4.7"]);
    }
}
