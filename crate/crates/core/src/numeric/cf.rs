//! Continued fractions of quadratic irrationals, their convergents, and the
//! approximation constants `λ_n(x)` and `L(x)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::real::Real;
use super::surd::{squarefree_decompose, QuadraticSurd};
use crate::error::{Error, Result};

/// Default cap on the number of partial quotients examined while looking
/// for the period.
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

/// Eventually periodic simple continued fraction `[a_0; a_1, a_2, …]`.
///
/// `preperiod` always holds at least `a_0`; the period is searched among
/// `a_1, a_2, …`, so `φ = [1; (1)]` and `1+√2 = [2; (2)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
    radicand: BigInt,
    // complete quotients x_k for k < preperiod.len() + period.len()
    quotients: Vec<QuadraticSurd>,
}

/// The `n`-th classical convergent `p/q = [a_0; a_1, …, a_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Convergent {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn to_surd(&self) -> QuadraticSurd {
        QuadraticSurd::reduced(self.p.clone(), BigInt::zero(), self.q.clone(), BigInt::zero())
    }
}

/// Value of the purely periodic fraction `[b_0; b_1, …, b_{k-1}, b_0, …]`.
///
/// With `[[p, p'], [q, q']]` the product of the period's matrices, the value
/// is the root above 1 of `q·ρ² + (q' − p)·ρ − p' = 0`.
fn purely_periodic_value(period: &[BigInt], radicand: Option<&BigInt>) -> QuadraticSurd {
    let (mut p, mut pp, mut q, mut qp) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for b in period {
        let np = b * &p + &pp;
        let nq = b * &q + &qp;
        pp = std::mem::replace(&mut p, np);
        qp = std::mem::replace(&mut q, nq);
    }
    let disc = (&p - &qp) * (&p - &qp) + BigInt::from(4) * &q * &pp;
    let (square, core) = match radicand {
        Some(d)
            if (&disc % d).is_zero() && {
                let s = (&disc / d).sqrt();
                &s * &s * d == disc
            } =>
        {
            ((&disc / d).sqrt(), d.clone())
        }
        _ => squarefree_decompose(&disc),
    };
    QuadraticSurd::reduced(&p - &qp, square, BigInt::from(2) * q, core)
}

impl ContinuedFraction {
    /// Builds `[pre_0; pre_1, …, (period)]` and evaluates its complete quotients.
    pub fn from_parts(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        Self::from_parts_in(preperiod, period, None)
    }

    fn from_parts_in(preperiod: Vec<BigInt>, period: Vec<BigInt>, radicand: Option<&BigInt>) -> Result<Self> {
        if preperiod.is_empty() {
            return Err(Error::invalid("preperiod must contain a_0"));
        }
        if period.is_empty() {
            return Err(Error::RationalInput);
        }
        if preperiod[1..].iter().chain(&period).any(|a| a < &BigInt::one()) {
            return Err(Error::invalid("partial quotients after a_0 must be >= 1"));
        }
        let rho = purely_periodic_value(&period, radicand);
        let radicand = rho.radicand().clone();
        let pre = preperiod.len();
        let mut quotients = vec![QuadraticSurd::zero(); pre + period.len()];
        quotients[pre] = rho;
        for j in 1..period.len() {
            let prev = &quotients[pre + j - 1];
            quotients[pre + j] = (prev - &QuadraticSurd::from_int(period[j - 1].clone())).recip()?;
        }
        for k in (0..pre).rev() {
            let next = quotients[k + 1].recip()?;
            quotients[k] = &QuadraticSurd::from_int(preperiod[k].clone()) + &next;
        }
        Ok(ContinuedFraction { preperiod, period, radicand, quotients })
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// Radicand of the quadratic field the value lives in.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    fn wrap(&self, k: usize) -> usize {
        let pre = self.preperiod.len();
        if k < pre {
            k
        } else {
            pre + (k - pre) % self.period.len()
        }
    }

    /// Partial quotient `a_k`.
    pub fn term(&self, k: usize) -> &BigInt {
        let j = self.wrap(k);
        let pre = self.preperiod.len();
        if j < pre {
            &self.preperiod[j]
        } else {
            &self.period[j - pre]
        }
    }

    /// Complete quotient `x_k = [a_k; a_{k+1}, …]`; `x_0` is the value itself.
    pub fn complete_quotient(&self, k: usize) -> &QuadraticSurd {
        &self.quotients[self.wrap(k)]
    }

    pub fn value(&self) -> &QuadraticSurd {
        &self.quotients[0]
    }

    /// `true` when the expansion ends in all ones, i.e. the value is
    /// equivalent to the golden ratio.
    pub fn is_golden_class(&self) -> bool {
        self.period.iter().all(|a| a.is_one())
    }

    /// `true` when the expansion ends in all twos (the class of `1+√2`).
    pub fn is_silver_class(&self) -> bool {
        self.period.iter().all(|a| a == &BigInt::from(2))
    }

    /// The first `count` convergents `p_0/q_0, …`.
    pub fn convergents(&self, count: usize) -> Vec<Convergent> {
        self.convergent_iter().take(count).collect()
    }

    pub fn convergent_iter(&self) -> impl Iterator<Item = Convergent> + '_ {
        let mut state = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
        (0..).map(move |n| {
            let a = self.term(n);
            let (p2, q2, p1, q1) = &state;
            let p = a * p1 + p2;
            let q = a * q1 + q2;
            state = (p1.clone(), q1.clone(), p.clone(), q.clone());
            Convergent { n, p, q }
        })
    }

    /// `λ_n = [a_n, …, a_1]⁻¹ + [a_{n+1}, a_{n+2}, …]`, exact.
    ///
    /// Satisfies `|q_n (q_n x − p_n)| · λ_n = 1`.
    pub fn lambda(&self, n: usize) -> Result<QuadraticSurd> {
        Ok(self.lambdas(n)?.pop().expect("n >= 1"))
    }

    /// `λ_1, …, λ_n`.
    pub fn lambdas(&self, n: usize) -> Result<Vec<QuadraticSurd>> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let conv = self.convergents(n + 1);
        Ok((1..=n)
            .map(|k| {
                let ratio =
                    QuadraticSurd::reduced(conv[k - 1].q.clone(), BigInt::zero(), conv[k].q.clone(), BigInt::zero());
                self.complete_quotient(k + 1) + &ratio
            })
            .collect())
    }

    /// `lim sup λ_n`: the largest `x_k − x̄_k` over the complete quotients of
    /// one period.
    pub fn lagrange_number(&self) -> QuadraticSurd {
        let pre = self.preperiod.len();
        (pre..pre + self.period.len())
            .map(|k| {
                let x = &self.quotients[k];
                x - &x.conjugate()
            })
            .reduce(|a, b| if b > a { b } else { a })
            .expect("period is nonempty")
    }
}

/// Expands an irrational surd with the integer `(P, Q)` recurrence, stopping
/// at the first repeated state.
pub fn cf_expand(x: &QuadraticSurd) -> Result<ContinuedFraction> {
    cf_expand_capped(x, DEFAULT_ITERATION_CAP)
}

pub fn cf_expand_capped(x: &QuadraticSurd, cap: usize) -> Result<ContinuedFraction> {
    if x.is_rational() {
        return Err(Error::RationalInput);
    }
    // x = (P + √D)/Q with D = b²d
    let d = x.radicand().clone();
    let (mut p, mut q) = if x.b().is_positive() { (x.a().clone(), x.c().clone()) } else { (-x.a(), -x.c()) };
    let mut big_d = x.b() * x.b() * &d;
    if !((&big_d - &p * &p) % &q).is_zero() {
        let m = q.abs();
        p *= &m;
        big_d *= &m * &m;
        q *= &m;
    }
    let root = big_d.sqrt();
    let mut terms = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    for k in 0..cap {
        if k >= 1 {
            if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                let period = terms.split_off(start);
                let cf = ContinuedFraction::from_parts_in(terms, period, Some(&d))?;
                debug_assert_eq!(cf.value(), x);
                return Ok(cf);
            }
            seen.insert((p.clone(), q.clone()), k);
        }
        let a = if q.is_positive() { (&p + &root).div_floor(&q) } else { (&p + &root + BigInt::one()).div_floor(&q) };
        p = &a * &q - &p;
        q = (&big_d - &p * &p) / &q;
        terms.push(a);
    }
    Err(Error::IterationCap(cap))
}

/// `λ_n(x)` for `n ≥ 1`.
pub fn lambda_n(x: &QuadraticSurd, n: usize) -> Result<QuadraticSurd> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    cf_expand(x)?.lambda(n)
}

/// Lagrange number of a quadratic irrational, exactly and as sampled from
/// the last period of `λ_n` values up to `depth`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangeEstimate {
    pub exact: QuadraticSurd,
    pub sampled: Real,
    pub depth: usize,
}

pub fn lagrange_number_estimate(x: &QuadraticSurd, depth: usize, precision: usize) -> Result<LagrangeEstimate> {
    let cf = cf_expand(x)?;
    let depth = depth.max(cf.preperiod.len() + cf.period.len()).max(1);
    let lambdas = cf.lambdas(depth)?;
    let from = depth.saturating_sub(cf.period.len()).max(1);
    let sampled =
        lambdas[from - 1..].iter().map(|l| l.to_real(precision)).reduce(Real::max).expect("window is nonempty");
    Ok(LagrangeEstimate { exact: cf.lagrange_number(), sampled, depth })
}
