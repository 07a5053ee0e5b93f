//! Deciding whether `p(a, b) = Q(a² + b²)` for some univariate `Q`.
//!
//! Degree by degree: odd total degrees must vanish; in degree `2d` the
//! coefficient of `a^{2d}` fixes `q_d`, and every monomial of that degree
//! must then match `q_d · C(d, j)` on `a^{2(d-j)} b^{2j}` and zero
//! elsewhere. The first mismatch in graded order is the witness.
//!
//! The weighted form tests `p = Q(w_a a² + w_b b²)`, which is what a
//! radial law looks like in the coordinates of unnormalized combinations.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::CoeffPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{binomial, serde_rational, serde_rational_vec, Field, Scalar};

/// A monomial whose coefficient cannot be matched by any `Q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub exponents: Vec<u32>,
    #[serde(with = "serde_rational")]
    pub coefficient: Scalar,
    /// The value the monomial would need for membership.
    #[serde(with = "serde_rational")]
    pub expected: Scalar,
}

impl Witness {
    pub fn residual(&self) -> Scalar {
        &self.coefficient - &self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialDecision {
    /// Coefficients `q_0, q_1, ..` of `Q(u) = Σ q_d u^d`.
    Radial(#[serde(with = "serde_rational_vec")] Vec<Scalar>),
    NotRadial(Witness),
}

impl RadialDecision {
    pub fn is_radial(&self) -> bool {
        matches!(self, RadialDecision::Radial(_))
    }
}

pub fn is_radial(p: &CoeffPolynomial) -> Result<RadialDecision> {
    is_radial_weighted(p, &Scalar::one(), &Scalar::one())
}

pub fn is_radial_weighted(p: &CoeffPolynomial, wa: &Scalar, wb: &Scalar) -> Result<RadialDecision> {
    if p.vars().len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.vars().len() });
    }
    if wa.is_zero() || wb.is_zero() {
        return Err(Error::InvalidInput("radial weights must be nonzero".into()));
    }
    let top = p.total_degree();
    let mut q = Vec::with_capacity(top as usize / 2 + 1);
    for degree in 0..=top {
        let half = degree / 2;
        let qd = if degree % 2 == 0 {
            p.coefficient(&[degree, 0]) / wa.powi(half as usize)
        } else {
            Scalar::zero()
        };
        for i in (0..=degree).rev() {
            let exps = [i, degree - i];
            let expected = if degree % 2 == 0 && i % 2 == 0 {
                let j = (degree - i) / 2;
                &qd * Scalar::from_u64(binomial(half as usize, j as usize))
                    * wa.powi((half - j) as usize)
                    * wb.powi(j as usize)
            } else {
                Scalar::zero()
            };
            let coefficient = p.coefficient(&exps);
            if coefficient != expected {
                return Ok(RadialDecision::NotRadial(Witness {
                    exponents: exps.to_vec(),
                    coefficient,
                    expected,
                }));
            }
        }
        if degree % 2 == 0 {
            q.push(qd);
        }
    }
    Ok(RadialDecision::Radial(q))
}

/// `Q(w_a a² + w_b b²)` expanded over `vars`.
pub fn radial_expand(q: &[Scalar], vars: &[&str], wa: &Scalar, wb: &Scalar) -> CoeffPolynomial {
    let a = CoeffPolynomial::variable(vars, 0);
    let b = CoeffPolynomial::variable(vars, 1);
    let u = &(&a * &a).scale(wa) + &(&b * &b).scale(wb);
    let mut out = CoeffPolynomial::zero(vars);
    for (d, qd) in q.iter().enumerate() {
        out = &out + &u.pow(d as u32).scale(qd);
    }
    out
}
