use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Sparse polynomial with exact rational coefficients in named formal
/// variables. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

/// Graded order: total degree ascending, then exponent vectors
/// lexicographically descending (`a²` before `ab` before `b²`).
pub fn graded_cmp(x: &[u32], y: &[u32]) -> Ordering {
    let dx: u32 = x.iter().sum();
    let dy: u32 = y.iter().sum();
    dx.cmp(&dy).then_with(|| y.cmp(x))
}

impl CoeffPolynomial {
    pub fn zero(vars: &[&str]) -> Self {
        Self { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn with_vars(vars: Vec<String>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The polynomial consisting of the single variable `vars[i]`.
    pub fn variable(vars: &[&str], i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(exps, Scalar::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `coeff · x^exps`, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Scalar) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector arity");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    /// Terms sorted by [`graded_cmp`].
    pub fn graded_terms(&self) -> Vec<(&Vec<u32>, &Scalar)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|x, y| graded_cmp(x.0, y.0));
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::with_vars(self.vars.clone());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::with_vars(self.vars.clone());
        acc.add_term(vec![0; self.vars.len()], Scalar::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: self.vars.len(), found: point.len() });
        }
        Ok(self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(c.clone(), |t, (&k, x)| t * x.powi(k as usize));
            acc + mono
        }))
    }

    /// Re-expresses the polynomial over a larger variable list; every
    /// current variable must appear in `vars`.
    pub fn embed(&self, vars: &[&str]) -> Result<Self> {
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter().position(|w| w == v).ok_or_else(|| {
                    Error::LabelMismatch(format!("variable {v:?} missing from {vars:?}"))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut exps = vec![0; vars.len()];
            for (&p, &k) in positions.iter().zip(e) {
                exps[p] = k;
            }
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    /// True if no monomial involves two or more variables.
    pub fn is_separable(&self) -> bool {
        self.terms.keys().all(|e| e.iter().filter(|&&k| k > 0).count() <= 1)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }
}

/// Human-readable monomial, e.g. `a^2*b` or `1` for the constant.
pub fn format_monomial(vars: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for CoeffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let mono = format_monomial(&self.vars, e);
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (mag.is_one(), mono.as_str()) {
                (_, "1") => write!(f, "{mag}")?,
                (true, _) => write!(f, "{mono}")?,
                (false, _) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl Add for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn add(self, rhs: &CoeffPolynomial) -> CoeffPolynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn sub(self, rhs: &CoeffPolynomial) -> CoeffPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn neg(self) -> CoeffPolynomial {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &CoeffPolynomial {
    type Output = CoeffPolynomial;
    fn mul(self, rhs: &CoeffPolynomial) -> CoeffPolynomial {
        self.check_vars(rhs);
        let mut out = CoeffPolynomial::with_vars(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }
}
