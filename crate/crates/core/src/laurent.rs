//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Variables are indexed `0..nvars`; the variable `x_j` of the spectral side is
//! stored at index `j - 1`. Terms live in a `BTreeMap` keyed by the exponent
//! vector, so iteration order is lexicographic and equality is structural.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Neg,
    Scale,
}

/// Right operand of [`poly_arith`].
pub enum Operand<'a> {
    Poly(&'a LaurentPoly),
    Scalar(&'a Rational),
}

/// Dispatching wrapper over the ring operations. `Neg` ignores the operand,
/// `Scale` requires a scalar, everything else a polynomial of the same arity.
pub fn poly_arith(op: PolyOp, p: &LaurentPoly, q: Operand<'_>) -> Result<LaurentPoly> {
    match (op, q) {
        (PolyOp::Neg, _) => Ok(-p),
        (PolyOp::Scale, Operand::Scalar(c)) => Ok(p.scale(c)),
        (PolyOp::Scale, Operand::Poly(_)) => Err(Error::Invalid("scale expects a scalar".into())),
        (_, Operand::Scalar(_)) => Err(Error::Invalid("ring operation expects a polynomial".into())),
        (PolyOp::Add, Operand::Poly(q)) => p.try_add(q),
        (PolyOp::Sub, Operand::Poly(q)) => p.try_sub(q),
        (PolyOp::Mul, Operand::Poly(q)) => p.try_mul(q),
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(exponents: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// `x_i^e` with the 0-based variable index `i`.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::monomial(exps, Rational::one())
    }

    /// Builds a polynomial from arbitrary `(exponents, coeff)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch(nvars, e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[i32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the constant if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut acc: HashMap<Exponents, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = c1 * c2;
                match acc.get_mut(&e) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        debug_assert_eq!(shift.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent; `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        Some(m)
    }

    /// Largest `|exponent|` over all terms and variables.
    pub fn max_abs_exponent(&self) -> i32 {
        self.terms.keys().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Applies `x_i -> x_{images[i].0}^{images[i].1}` (0-based targets, sign ±1).
    pub fn substitute_signed(&self, images: &[(usize, i32)]) -> Self {
        debug_assert_eq!(images.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = vec![0; self.nvars];
                    for (i, &a) in e.iter().enumerate() {
                        let (target, sign) = images[i];
                        out[target] += sign * a;
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    /// Exact substitution of nonzero rationals for every variable.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, point.len()));
        }
        if point.iter().any(Zero::is_zero) {
            return Err(Error::ZeroSubstitution);
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &a) in point.iter().zip(e) {
                v *= rational::pow(x, a as i64)?;
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact quotient `r` with `r * q = self`.
    ///
    /// Monomial content is stripped from both sides so they become ordinary
    /// polynomials with no monomial factor, then a single-divisor division in
    /// graded lexicographic order is run. Any nonzero remainder (equivalently, a
    /// leading monomial of the divisor that fails to divide the running leading
    /// monomial) is reported as `NonDivisible`.
    pub fn divide_exact(&self, q: &Self) -> Result<Self> {
        self.check_arity(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let pmin = self.min_exponents().expect("nonzero");
        let qmin = q.min_exponents().expect("nonzero");
        let neg = |v: &[i32]| v.iter().map(|a| -a).collect::<Vec<_>>();
        let p = self.shift(&neg(&pmin));
        let q = q.shift(&neg(&qmin));

        let (q_lead_exp, q_lead_coeff) = q
            .terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero");
        let q_lead_inv = q_lead_coeff.recip();

        let mut rem: BTreeMap<GrLex, Rational> =
            p.terms.into_iter().map(|(e, c)| (GrLex(e), c)).collect();
        let mut quotient = Self::zero(self.nvars);
        while let Some((GrLex(lead), c)) = rem.pop_last() {
            if lead.iter().zip(&q_lead_exp).any(|(a, b)| a < b) {
                return Err(Error::NonDivisible);
            }
            let qe: Exponents = lead.iter().zip(&q_lead_exp).map(|(a, b)| a - b).collect();
            let qc = &c * &q_lead_inv;
            for (e, v) in &q.terms {
                if *e == q_lead_exp {
                    continue;
                }
                let key = GrLex(e.iter().zip(&qe).map(|(a, b)| a + b).collect());
                let delta = -(v * &qc);
                match rem.get_mut(&key) {
                    Some(x) => {
                        *x += delta;
                        if x.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, delta);
                    }
                }
            }
            quotient.terms.insert(qe, qc);
        }
        let back: Vec<i32> = pmin.iter().zip(&qmin).map(|(a, b)| a - b).collect();
        Ok(quotient.shift(&back))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord { exponents: e.clone(), coeff: c.clone() })
            .collect()
    }

    pub fn from_records(nvars: usize, records: Vec<TermRecord>) -> Result<Self> {
        Self::from_terms(nvars, records.into_iter().map(|r| (r.exponents, r.coeff)))
    }
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&x| x as i64).sum();
    let db: i64 = b.iter().map(|&x| x as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq)]
struct GrLex(Exponents);

impl Ord for GrLex {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for GrLex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One serialized term: `{exponents: [..], coeff: "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Exponents,
    #[serde(with = "crate::rational::serde_rational")]
    pub coeff: Rational,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", rational::format_rational(c))?;
            for (j, &a) in e.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*x{}", j + 1)?,
                    _ => write!(f, "*x{}^{}", j + 1, a)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("arity mismatch in +")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("arity mismatch in -")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("arity mismatch in *")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
