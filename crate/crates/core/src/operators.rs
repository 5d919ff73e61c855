//! Lattice functions with finite support and the difference operators `H_l`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeffs::{coeff_u, coeff_w, u_potential, w_minus, w_plus, CoeffVariant};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_shift_pairs, shift_partition, Partition, ShiftPair};
use crate::params::ParamSet;
use crate::rational::Rational;

/// A finitely supported function `Λ → Q` on partitions of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFunction {
    n: usize,
    values: BTreeMap<Partition, Rational>,
}

/// Wire form of one support point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEntry {
    pub partition: Partition,
    #[serde(with = "crate::rational::serde_rational")]
    pub value: Rational,
}

impl LatticeFunction {
    pub fn zero(n: usize) -> Self {
        LatticeFunction { n, values: BTreeMap::new() }
    }

    /// The indicator `δ_μ`.
    pub fn delta(mu: &Partition) -> Self {
        let mut f = Self::zero(mu.n());
        f.values.insert(mu.clone(), Rational::from_integer(1.into()));
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: &Partition) -> Rational {
        self.values.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `value` at `lambda`.
    pub fn add_at(&mut self, lambda: Partition, value: Rational) -> Result<()> {
        if lambda.n() != self.n {
            return Err(Error::ArityMismatch(self.n, lambda.n()));
        }
        if value.is_zero() {
            return Ok(());
        }
        let slot = self.values.entry(lambda).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.values.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.values.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        LatticeFunction {
            n: self.n,
            values: self.values.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (k, v) in &other.values {
            out.add_at(k.clone(), v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn to_entries(&self) -> Vec<LatticeEntry> {
        self.values
            .iter()
            .map(|(k, v)| LatticeEntry { partition: k.clone(), value: v.clone() })
            .collect()
    }

    pub fn from_entries(n: usize, entries: Vec<LatticeEntry>) -> Result<Self> {
        let mut f = Self::zero(n);
        for e in entries {
            f.add_at(e.partition, e.value)?;
        }
        Ok(f)
    }
}

impl Serialize for LatticeFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_entries().serialize(s)
    }
}

/// Every `λ ∈ Λ` with `λ + e_{J+} - e_{J-} = μ` for some pair in `pairs` and
/// some `μ` in the support of `f`.
fn preimages(f: &LatticeFunction, pairs: &[ShiftPair]) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    for mu in f.support() {
        for pair in pairs {
            if let Some(lambda) = shift_partition(mu, &pair.swapped()) {
                out.insert(lambda);
            }
        }
    }
    out
}

/// `(H_l f)(λ) = Σ U_{J+^c∩J-^c, l-|J+|-|J-|}(λ) W_{J+,J-}(λ) f(λ + e_{J+} - e_{J-})`.
pub fn apply_h(
    l: usize,
    f: &LatticeFunction,
    p: &ParamSet,
    variant: CoeffVariant,
) -> Result<LatticeFunction> {
    let n = f.n();
    let pairs = enumerate_shift_pairs(n, l)?;
    let mut g = LatticeFunction::zero(n);
    for lambda in preimages(f, &pairs) {
        let mut acc = Rational::zero();
        for pair in &pairs {
            let Some(mu) = shift_partition(&lambda, pair) else { continue };
            let fv = f.get(&mu);
            if fv.is_zero() {
                continue;
            }
            let u = coeff_u(&lambda, &pair.complement(n), l - pair.size(), p, variant)?;
            if u.is_zero() {
                continue;
            }
            acc += u * coeff_w(&lambda, pair, p)? * fv;
        }
        g.add_at(lambda, acc)?;
    }
    Ok(g)
}

/// The second-order operator
/// `(H_1 f)(λ) = u(λ) f(λ) + Σ_j w^+_j(λ) f(λ+e_j) + Σ_j w^-_j(λ) f(λ-e_j)`.
pub fn apply_h1_explicit(f: &LatticeFunction, p: &ParamSet) -> Result<LatticeFunction> {
    let n = f.n();
    let steps: Vec<(usize, ShiftPair, ShiftPair)> = (1..=n)
        .map(|j| {
            (j, ShiftPair { plus: vec![j], minus: vec![] }, ShiftPair { plus: vec![], minus: vec![j] })
        })
        .collect();
    let mut candidates = BTreeSet::new();
    for mu in f.support() {
        candidates.insert(mu.clone());
        for (_, up, down) in &steps {
            candidates.extend(shift_partition(mu, up));
            candidates.extend(shift_partition(mu, down));
        }
    }
    let mut g = LatticeFunction::zero(n);
    for lambda in candidates {
        let mut acc = Rational::zero();
        let here = f.get(&lambda);
        if !here.is_zero() {
            acc += u_potential(&lambda, p)? * here;
        }
        for (j, up, down) in &steps {
            if let Some(mu) = shift_partition(&lambda, up) {
                let fv = f.get(&mu);
                if !fv.is_zero() {
                    acc += w_plus(&lambda, *j, p)? * fv;
                }
            }
            if let Some(mu) = shift_partition(&lambda, down) {
                let fv = f.get(&mu);
                if !fv.is_zero() {
                    acc += w_minus(&lambda, *j, p)? * fv;
                }
            }
        }
        g.add_at(lambda, acc)?;
    }
    Ok(g)
}

/// `H_k (H_l f) - H_l (H_k f)`.
pub fn commutator(
    k: usize,
    l: usize,
    f: &LatticeFunction,
    p: &ParamSet,
    variant: CoeffVariant,
) -> Result<LatticeFunction> {
    let kl = apply_h(k, &apply_h(l, f, p, variant)?, p, variant)?;
    let lk = apply_h(l, &apply_h(k, f, p, variant)?, p, variant)?;
    kl.sub(&lk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_partitions;
    use crate::params::Mode;
    use crate::rational::{int, rat};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn three() -> ParamSet {
        ParamSet::new(Mode::ThreeParam, rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), int(0)).unwrap()
    }

    fn four() -> ParamSet {
        ParamSet::new(Mode::FourParam, rat(-2, 3), rat(3, 5), rat(-1, 7), rat(5, 11), rat(7, 4))
            .unwrap()
    }

    fn om(x: Rational) -> Rational {
        Rational::from_integer(1.into()) - x
    }

    #[test]
    fn zero_maps_to_zero() {
        for l in 1..=2 {
            assert!(apply_h(l, &LatticeFunction::zero(2), &three(), CoeffVariant::default())
                .unwrap()
                .is_zero());
        }
        assert!(matches!(
            apply_h(3, &LatticeFunction::zero(2), &three(), CoeffVariant::default()),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    fn single_site_action() {
        let p = three();
        let (t0, t1, t2) = (&p.t0, &p.t1, &p.t2);
        let g = apply_h(1, &LatticeFunction::delta(&part(&[1])), &p, CoeffVariant::default()).unwrap();
        assert_eq!(g.get(&part(&[0])), om(t0 * t1) * om(t0 * t2) * om(t1 * t2));
        assert_eq!(g.get(&part(&[2])), int(1));
        assert_eq!(g.get(&part(&[1])), -t0.recip() - t0 * om(t1 * t2));
        assert_eq!(g.support().count(), 3);

        let g = apply_h1_explicit(&LatticeFunction::delta(&part(&[0])), &p).unwrap();
        assert_eq!(g.get(&part(&[0])), -(t0.recip() * om(t0 * t1) * om(t0 * t2)));
        assert_eq!(g.get(&part(&[1])), int(1));
    }

    #[test]
    fn self_commutator_vanishes() {
        let f = LatticeFunction::delta(&part(&[2, 1, 0]));
        for l in 1..=3 {
            assert!(commutator(l, l, &f, &four(), CoeffVariant::default()).unwrap().is_zero());
        }
    }

    #[test]
    fn two_site_commutator_example() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for mode in [Mode::ThreeParam, Mode::FourParam] {
            let (p, _) = ParamSet::random(mode, 2, 13, &mut rng).unwrap();
            let f = LatticeFunction::delta(&part(&[1, 0]));
            assert!(commutator(1, 2, &f, &p, CoeffVariant::RestrictedInnerSum).unwrap().is_zero());
        }
    }

    #[test]
    fn explicit_h1_matches_general_formula() {
        for p in [three(), four()] {
            for n in 1..=3 {
                for mu in enumerate_partitions(n, 3) {
                    let f = LatticeFunction::delta(&mu);
                    let a = apply_h(1, &f, &p, CoeffVariant::RestrictedInnerSum).unwrap();
                    let b = apply_h1_explicit(&f, &p).unwrap();
                    assert_eq!(a, b, "{mu} {:?}", p.mode);
                }
            }
        }
    }

    #[test]
    fn four_param_at_t3_zero_matches_three_param() {
        let p3 = three();
        let p4 = p3.with_mode(Mode::FourParam).unwrap();
        for mu in enumerate_partitions(2, 3) {
            let f = LatticeFunction::delta(&mu);
            assert_eq!(apply_h1_explicit(&f, &p3).unwrap(), apply_h1_explicit(&f, &p4).unwrap());
        }
    }

    fn arb_function(n: usize) -> impl Strategy<Value = LatticeFunction> {
        prop::collection::vec((prop::collection::vec(0u32..=3, n), -6i64..=6, 1i64..=4), 0..=4)
            .prop_map(move |entries| {
                let mut f = LatticeFunction::zero(n);
                for (mut parts, a, b) in entries {
                    parts.sort_unstable_by(|x, y| y.cmp(x));
                    f.add_at(Partition::new(parts).unwrap(), rat(a, b)).unwrap();
                }
                f
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn linearity(f in arb_function(2), g in arb_function(2), a in -5i64..=5, b in 1i64..=5, l in 1usize..=2) {
            let p = four();
            let (a, b) = (rat(a, 1), rat(1, b));
            let v = CoeffVariant::default();
            let lhs = apply_h(l, &f.scale(&a).add(&g.scale(&b)).unwrap(), &p, v).unwrap();
            let rhs = apply_h(l, &f, &p, v).unwrap().scale(&a)
                .add(&apply_h(l, &g, &p, v).unwrap().scale(&b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn locality(f in arb_function(3), l in 1usize..=3) {
            let g = apply_h(l, &f, &three(), CoeffVariant::default()).unwrap();
            for lambda in g.support() {
                let near = f.support().any(|mu| {
                    mu.parts().iter().zip(lambda.parts()).all(|(a, b)| a.abs_diff(*b) <= 1)
                });
                prop_assert!(near, "{} far from support", lambda);
            }
        }

        #[test]
        fn entries_round_trip(f in arb_function(3)) {
            let json = serde_json::to_string(&f).unwrap();
            let back: Vec<LatticeEntry> = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(LatticeFunction::from_entries(3, back).unwrap(), f);
        }
    }
}
