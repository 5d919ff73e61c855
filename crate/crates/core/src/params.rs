//! Exact parameter tuples `(t, t0, t1, t2, t3)` and the genericity guard.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Which family of coefficient formulas is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    /// Boundary parameters `t0, t1, t2` with `t3 = 0`.
    ThreeParam,
    /// All four boundary parameters, `τ = t0 t1 t2 t3`.
    FourParam,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ThreeParam => "three",
            Mode::FourParam => "four",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSet {
    pub t: Rational,
    pub t0: Rational,
    pub t1: Rational,
    pub t2: Rational,
    pub t3: Rational,
    pub tau: Rational,
    pub mode: Mode,
}

impl ParamSet {
    pub fn new(
        mode: Mode,
        t: Rational,
        t0: Rational,
        t1: Rational,
        t2: Rational,
        t3: Rational,
    ) -> Result<Self> {
        if t.is_zero() || t0.is_zero() {
            return Err(Error::ParameterDegeneracy("t and t0 must be nonzero".into()));
        }
        if mode == Mode::ThreeParam && !t3.is_zero() {
            return Err(Error::ParameterDegeneracy("three-parameter mode requires t3 = 0".into()));
        }
        let tau = &t0 * &t1 * &t2 * &t3;
        Ok(ParamSet { t, t0, t1, t2, t3, tau, mode })
    }

    /// Same values, different formula family. Switching to `ThreeParam`
    /// requires `t3 = 0`.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Self::new(
            mode,
            self.t.clone(),
            self.t0.clone(),
            self.t1.clone(),
            self.t2.clone(),
            self.t3.clone(),
        )
    }

    /// `t_r` for `r = 0..=3`.
    pub fn tr(&self, r: usize) -> &Rational {
        match r {
            0 => &self.t0,
            1 => &self.t1,
            2 => &self.t2,
            3 => &self.t3,
            _ => panic!("boundary parameter index {r} out of range"),
        }
    }

    /// `t^e`; `t != 0` is a construction invariant.
    pub fn tpow(&self, e: i64) -> Rational {
        rational::pow(&self.t, e).expect("t is nonzero")
    }

    /// `1 - τ t^e`.
    pub fn one_minus_tau(&self, e: i64) -> Rational {
        Rational::one() - &self.tau * self.tpow(e)
    }

    /// Rejects tuples for which any denominator occurring at lattice size `n`
    /// vanishes:
    /// - `1 - t^m` for `1 <= m <= n`;
    /// - `1 - τ t^m` for `-1 <= m <= 2n+1` (four-parameter mode);
    /// - `1 + t^m` for `0 <= m < n` and `1 - t0 t_r t^m` for `r = 1..=3`,
    ///   `0 <= m < n` (the normalisation of the spectral polynomials).
    pub fn check_generic(&self, n: usize) -> Result<()> {
        let n = n as i64;
        let degenerate = |what: String| Err(Error::ParameterDegeneracy(what));
        for m in 1..=n {
            if self.tpow(m).is_one() {
                return degenerate(format!("1 - t^{m} = 0"));
            }
        }
        if self.mode == Mode::FourParam {
            for m in -1..=2 * n + 1 {
                if self.one_minus_tau(m).is_zero() {
                    return degenerate(format!("1 - tau t^{m} = 0"));
                }
            }
        }
        for m in 0..n {
            if (Rational::one() + self.tpow(m)).is_zero() {
                return degenerate(format!("1 + t^{m} = 0"));
            }
            for r in 1..=3 {
                if (Rational::one() - &self.t0 * self.tr(r) * self.tpow(m)).is_zero() {
                    return degenerate(format!("1 - t0 t{r} t^{m} = 0"));
                }
            }
        }
        Ok(())
    }

    /// Draws a tuple passing [`ParamSet::check_generic`] for size `n`.
    ///
    /// Each parameter is `p/q` with `p ∈ [-bound, bound] \ {0}` and
    /// `q ∈ [2, bound]`; `t3` is forced to zero in three-parameter mode.
    /// Returns the tuple and the number of rejected draws.
    pub fn random<R: Rng>(mode: Mode, n: usize, bound: i64, rng: &mut R) -> Result<(Self, usize)> {
        if bound < 2 {
            return Err(Error::Config(format!("bound must be at least 2, got {bound}")));
        }
        let draw = |rng: &mut R| {
            let p = loop {
                let p = rng.gen_range(-bound..=bound);
                if p != 0 {
                    break p;
                }
            };
            rational::rat(p, rng.gen_range(2..=bound))
        };
        for redraws in 0..10_000 {
            let vals: Vec<Rational> = (0..5).map(|_| draw(rng)).collect();
            let t3 = match mode {
                Mode::ThreeParam => Rational::zero(),
                Mode::FourParam => vals[4].clone(),
            };
            let cand = Self::new(
                mode,
                vals[0].clone(),
                vals[1].clone(),
                vals[2].clone(),
                vals[3].clone(),
                t3,
            )?;
            if cand.check_generic(n).is_ok() {
                return Ok((cand, redraws));
            }
        }
        Err(Error::ParameterDegeneracy("no generic tuple found after 10000 draws".into()))
    }

    pub fn to_json(&self) -> ParamJson {
        ParamJson {
            t: self.t.clone(),
            t0: self.t0.clone(),
            t1: self.t1.clone(),
            t2: self.t2.clone(),
            t3: self.t3.clone(),
        }
    }
}

/// Wire form `{"t":"p/q","t0":..,"t1":..,"t2":..,"t3":..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamJson {
    #[serde(with = "rational::serde_rational")]
    pub t: Rational,
    #[serde(with = "rational::serde_rational")]
    pub t0: Rational,
    #[serde(with = "rational::serde_rational")]
    pub t1: Rational,
    #[serde(with = "rational::serde_rational")]
    pub t2: Rational,
    #[serde(with = "rational::serde_rational", default = "Rational::zero")]
    pub t3: Rational,
}

impl ParamJson {
    pub fn into_params(self, mode: Mode) -> Result<ParamSet> {
        ParamSet::new(mode, self.t, self.t0, self.t1, self.t2, self.t3)
    }
}

impl Serialize for ParamSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
