//! Hyperoctahedral Hall–Littlewood polynomials and the Pieri verifier.
//!
//! The spectral variables are `x_j = e^{iξ_j}`. A polynomial `P_λ` is built by
//! summing the signed-permutation orbit of `C_λ(x) x^{-λ}`. Every orbit term
//! has, up to a unit monomial, a sub-product of the same binomial denominator
//!
//! ```text
//! D = ∏_{j<k} (1 - x_j/x_k)(1 - x_j x_k) · ∏_j (1 - x_j²)
//! ```
//!
//! so the terms are brought over `D` and the numerator is divided by `D` once.
//! That final division must be exact; a remainder means the orbit sum is not a
//! Laurent polynomial.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeffs::{coeff_u, coeff_v, CoeffVariant};
use crate::error::{Error, Result};
use crate::lattice::{combinations, enumerate_shift_pairs, shift_partition, Partition};
use crate::laurent::{Exponents, LaurentPoly};
use crate::params::{Mode, ParamSet};
use crate::ratfunc::RationalFunction;
use crate::rational::{self, Rational};

/// Element of `S_n ⋉ {±1}^n`: `x_j ↦ x_{perm[j]}^{signs[j]}` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i32>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
        }
        if signs.len() != n || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::Invalid(format!("bad sign vector {signs:?}")));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn images(&self) -> Vec<(usize, i32)> {
        self.perm.iter().copied().zip(self.signs.iter().copied()).collect()
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        SignedPermutation { perm, signs }
    }

    /// Image of the exponent vector of a monomial.
    pub fn act_exponents(&self, e: &[i32]) -> Exponents {
        let mut out = vec![0; e.len()];
        for (j, &a) in e.iter().enumerate() {
            out[self.perm[j]] += self.signs[j] * a;
        }
        out
    }

    /// The generators: adjacent transpositions and the sign flip of `x_1`.
    pub fn generators(n: usize) -> Vec<Self> {
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            gens.push(SignedPermutation { perm, signs: vec![1; n] });
        }
        let mut flip = Self::identity(n);
        flip.signs[0] = -1;
        gens.push(flip);
        gens
    }

    /// All `2^n n!` elements: permutations in lexicographic order, and for each
    /// the sign patterns in binary order (bit set = `-1`, first index most
    /// significant).
    pub fn all(n: usize) -> Vec<Self> {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        let mut out = Vec::with_capacity(perms.len() << n);
        for perm in perms {
            for mask in 0u32..(1 << n) {
                let signs = (0..n)
                    .map(|j| if mask >> (n - 1 - j) & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(SignedPermutation { perm: perm.clone(), signs });
            }
        }
        out
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

pub fn signed_permutation_action(p: &LaurentPoly, w: &SignedPermutation) -> LaurentPoly {
    p.substitute_signed(&w.images())
}

pub fn signed_permutation_action_rf(f: &RationalFunction, w: &SignedPermutation) -> RationalFunction {
    f.substitute_signed(&w.images())
}

/// A Laurent polynomial in the spectral variables, invariant under signed
/// permutations by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SpectralPolynomial(LaurentPoly);

impl SpectralPolynomial {
    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    pub fn is_hyperoctahedral_invariant(&self) -> bool {
        let n = self.0.nvars();
        SignedPermutation::generators(n)
            .iter()
            .all(|g| signed_permutation_action(&self.0, g) == self.0)
    }
}

fn degenerate(what: &str) -> Error {
    Error::ParameterDegeneracy(format!("vanishing factor in {what}"))
}

/// Normalisation constant `c_λ`.
pub fn c_norm(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
    let n = lambda.n();
    let mut v = Rational::one();
    for j in 1..=n {
        let lj = lambda.part(j) as i64;
        let nj = (n - j) as i64;
        let mut num = rational::pow(&p.t0, lj)? * p.tpow(nj * lj) * (Rational::one() - &p.t);
        let mut den = Rational::one() - p.tpow(j as i64);
        if lj == 0 {
            den *= Rational::one() + p.tpow(nj);
        } else {
            for r in 1..=3 {
                den *= Rational::one() - &p.t0 * p.tr(r) * p.tpow(nj);
            }
        }
        if den.is_zero() {
            return Err(degenerate("c_λ"));
        }
        num /= den;
        v *= num;
    }
    Ok(v)
}

/// `1 - c x^e`.
fn one_minus_mono(n: usize, e: Exponents, c: Rational) -> LaurentPoly {
    &LaurentPoly::one(n) - &LaurentPoly::monomial(e, c)
}

fn unit_vec(n: usize, j: usize, a: i32) -> Exponents {
    let mut e = vec![0; n];
    e[j] = a;
    e
}

fn pair_vec(n: usize, j: usize, a: i32, k: usize, b: i32) -> Exponents {
    let mut e = vec![0; n];
    e[j] = a;
    e[k] = b;
    e
}

/// Monomials `M` of the denominator factors `1 - x^M` of `C_λ`.
fn c_denominator_monomials(lambda: &Partition) -> Vec<Exponents> {
    let n = lambda.n();
    let mut out = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            out.push(pair_vec(n, j, 1, k, -1));
            out.push(pair_vec(n, j, 1, k, 1));
        }
    }
    for j in 0..n {
        if lambda.parts()[j] > 0 {
            out.push(unit_vec(n, j, 2));
        }
    }
    out
}

fn c_numerator(lambda: &Partition, p: &ParamSet) -> LaurentPoly {
    let n = lambda.n();
    let mut num = LaurentPoly::one(n);
    for j in 0..n {
        for k in j + 1..n {
            num = &num * &one_minus_mono(n, pair_vec(n, j, 1, k, -1), p.t.clone());
            num = &num * &one_minus_mono(n, pair_vec(n, j, 1, k, 1), p.t.clone());
        }
    }
    for j in 0..n {
        if lambda.parts()[j] > 0 {
            for r in 0..=3 {
                num = &num * &one_minus_mono(n, unit_vec(n, j, 1), p.tr(r).clone());
            }
        }
    }
    num
}

fn expand_binomials(n: usize, monos: &[Exponents]) -> LaurentPoly {
    monos
        .iter()
        .fold(LaurentPoly::one(n), |acc, m| &acc * &one_minus_mono(n, m.clone(), Rational::one()))
}

/// `C_λ` as an unreduced quotient in the spectral variables.
pub fn c_factor(lambda: &Partition, p: &ParamSet) -> RationalFunction {
    let n = lambda.n();
    let den = expand_binomials(n, &c_denominator_monomials(lambda));
    RationalFunction::new(c_numerator(lambda, p), den).expect("denominator is a nonzero product")
}

/// First nonzero exponent positive.
fn is_canonical(e: &[i32]) -> bool {
    e.iter().find(|&&a| a != 0).is_some_and(|&a| a > 0)
}

/// `P_λ`, assembled over the common denominator `D` and resolved by one exact
/// division.
pub fn hall_littlewood(lambda: &Partition, p: &ParamSet) -> Result<SpectralPolynomial> {
    let n = lambda.n();
    let mut common: Vec<Exponents> = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            common.push(pair_vec(n, j, 1, k, -1));
            common.push(pair_vec(n, j, 1, k, 1));
        }
    }
    for j in 0..n {
        common.push(unit_vec(n, j, 2));
    }

    let neg_lambda: Exponents = lambda.parts().iter().map(|&a| -(a as i32)).collect();
    let base = c_numerator(lambda, p).shift(&neg_lambda);
    let den_monos = c_denominator_monomials(lambda);

    // Completing factor ∏_{a ∉ A} (1 - x_a²), keyed by the missing set.
    let mut completions: HashMap<Vec<usize>, LaurentPoly> = HashMap::new();
    let mut total = LaurentPoly::zero(n);
    for w in SignedPermutation::all(n) {
        let mut unit_sign = 1i32;
        let mut unit_exp = vec![0i32; n];
        let mut squares_hit = vec![false; n];
        for m in &den_monos {
            let img = w.act_exponents(m);
            let canon = if is_canonical(&img) {
                img
            } else {
                // 1 - x^M = -x^M (1 - x^{-M})
                unit_sign = -unit_sign;
                for (u, a) in unit_exp.iter_mut().zip(&img) {
                    *u += a;
                }
                img.iter().map(|a| -a).collect()
            };
            if canon.iter().filter(|&&a| a != 0).count() == 1 {
                let a = canon.iter().position(|&a| a != 0).expect("one nonzero");
                squares_hit[a] = true;
            }
        }
        let missing: Vec<usize> = (0..n).filter(|&a| !squares_hit[a]).collect();
        let completion = completions
            .entry(missing.clone())
            .or_insert_with(|| {
                let monos: Vec<Exponents> = missing.iter().map(|&a| unit_vec(n, a, 2)).collect();
                expand_binomials(n, &monos)
            })
            .clone();
        let inv_unit: Exponents = unit_exp.iter().map(|a| -a).collect();
        let term = &signed_permutation_action(&base, &w) * &completion;
        let term = term.shift(&inv_unit);
        total = if unit_sign == 1 { &total + &term } else { &total - &term };
    }

    let numerator = total.scale(&c_norm(lambda, p)?);
    let quotient = RationalFunction::new(numerator, expand_binomials(n, &common))?.into_poly()?;
    Ok(SpectralPolynomial(quotient))
}

/// Pieri multiplier `E_l`.
pub fn e_poly(n: usize, l: usize, p: &ParamSet) -> Result<SpectralPolynomial> {
    if l < 1 || l > n {
        return Err(Error::InvalidOrder { l, n });
    }
    let t0_inv = p.t0.recip();
    let mut total = LaurentPoly::zero(n);
    for subset in combinations(&(1..=n).collect::<Vec<_>>(), l) {
        let mut term = LaurentPoly::one(n);
        for (k0, &j) in subset.iter().enumerate() {
            let shift = j as i64 - (k0 as i64 + 1);
            let c = &p.t0 * p.tpow(shift) + &t0_inv * p.tpow(-shift);
            let factor = &(&LaurentPoly::var_pow(n, j - 1, 1) + &LaurentPoly::var_pow(n, j - 1, -1))
                - &LaurentPoly::constant(n, c);
            term = &term * &factor;
        }
        total = &total + &term;
    }
    Ok(SpectralPolynomial(total))
}

/// The principal specialisation point `x_j = (t0 t^{n-j})^{-1}`.
pub fn principal_point(n: usize, p: &ParamSet) -> Vec<Rational> {
    (1..=n).map(|j| (&p.t0 * p.tpow((n - j) as i64)).recip()).collect()
}

/// `P_λ` at the principal specialisation point.
pub fn principal_specialize(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
    hall_littlewood(lambda, p)?.poly().evaluate(&principal_point(lambda.n(), p))
}

/// Memo of `P_λ` for one parameter tuple, shareable across worker threads.
pub struct HlCache {
    params: ParamSet,
    memo: Mutex<HashMap<Partition, Arc<SpectralPolynomial>>>,
}

impl HlCache {
    pub fn new(params: ParamSet) -> Self {
        HlCache { params, memo: Mutex::new(HashMap::new()) }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn get(&self, lambda: &Partition) -> Result<Arc<SpectralPolynomial>> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(lambda) {
            return Ok(Arc::clone(hit));
        }
        let built = Arc::new(hall_littlewood(lambda, &self.params)?);
        let mut memo = self.memo.lock().expect("memo lock");
        Ok(Arc::clone(memo.entry(lambda.clone()).or_insert(built)))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionTerm {
    pub mu: Partition,
    #[serde(with = "crate::rational::serde_rational")]
    pub coeff: Rational,
}

/// Outcome of one Pieri check; `pass` iff the residual is zero.
#[derive(Debug, Clone, Serialize)]
pub struct PieriReport {
    pub lambda: Partition,
    pub l: usize,
    pub mode: Mode,
    pub variant: CoeffVariant,
    pub pass: bool,
    pub residual: LaurentPoly,
    pub expansion: Vec<ExpansionTerm>,
}

/// Checks `E_l P_λ = Σ U_{J+^c∩J-^c, l-|J+|-|J-|}(λ) V_{J+,J-}(λ) P_{λ+e_{J+}-e_{J-}}`
/// exactly. The residual is the left side minus the right side.
pub fn verify_pieri(
    lambda: &Partition,
    l: usize,
    cache: &HlCache,
    variant: CoeffVariant,
) -> Result<PieriReport> {
    let p = cache.params();
    let n = lambda.n();
    let lhs = e_poly(n, l, p)?.poly() * cache.get(lambda)?.poly();
    let mut by_mu: BTreeMap<Partition, Rational> = BTreeMap::new();
    for pair in enumerate_shift_pairs(n, l)? {
        let Some(mu) = shift_partition(lambda, &pair) else { continue };
        let u = coeff_u(lambda, &pair.complement(n), l - pair.size(), p, variant)?;
        if u.is_zero() {
            by_mu.entry(mu).or_insert_with(Rational::zero);
            continue;
        }
        let c = u * coeff_v(lambda, &pair, p)?;
        *by_mu.entry(mu).or_insert_with(Rational::zero) += c;
    }
    let mut rhs = LaurentPoly::zero(n);
    for (mu, c) in &by_mu {
        if !c.is_zero() {
            rhs = &rhs + &cache.get(mu)?.poly().scale(c);
        }
    }
    let residual = &lhs - &rhs;
    Ok(PieriReport {
        lambda: lambda.clone(),
        l,
        mode: p.mode,
        variant,
        pass: residual.is_zero(),
        residual,
        expansion: by_mu.into_iter().map(|(mu, coeff)| ExpansionTerm { mu, coeff }).collect(),
    })
}
