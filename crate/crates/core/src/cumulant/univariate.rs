//! Univariate moment ↔ cumulant conversion by the binomial recurrence
//! `m_n = Σ_{k=1}^{n} C(n-1, k-1) r_k m_{n-k}`.

use crate::error::{Error, Result};
use crate::scalar::{binomial, Field};

/// Raw moments `m_0 = 1, m_1, .., m_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<T> {
    m: Vec<T>,
}

/// Cumulants `r_1, .., r_K`. `r_2` is the variance.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantSequence<T> {
    r: Vec<T>,
}

impl<T: Field> MomentSequence<T> {
    /// From `m_1, .., m_K`; `m_0 = 1` is implied.
    pub fn new(raw: Vec<T>) -> Self {
        let mut m = Vec::with_capacity(raw.len() + 1);
        m.push(T::one());
        m.extend(raw);
        Self { m }
    }

    /// From `m_0, .., m_K`; rejects `m_0 != 1`.
    pub fn with_m0(m: Vec<T>) -> Result<Self> {
        match m.first() {
            Some(m0) if *m0 == T::one() => Ok(Self { m }),
            _ => Err(Error::InvalidInput("moment sequence must start with m_0 = 1".into())),
        }
    }

    pub fn order(&self) -> usize {
        self.m.len() - 1
    }

    /// `m_i` for `0 <= i <= K`.
    pub fn get(&self, i: usize) -> &T {
        &self.m[i]
    }

    /// `m_1, .., m_K`.
    pub fn raw(&self) -> &[T] {
        &self.m[1..]
    }

    pub fn to_cumulants(&self) -> CumulantSequence<T> {
        moments_to_cumulants(self)
    }
}

impl<T: Field> CumulantSequence<T> {
    pub fn new(r: Vec<T>) -> Self {
        Self { r }
    }

    pub fn order(&self) -> usize {
        self.r.len()
    }

    /// `r_i` for `1 <= i <= K`.
    pub fn get(&self, i: usize) -> &T {
        &self.r[i - 1]
    }

    pub fn values(&self) -> &[T] {
        &self.r
    }

    pub fn to_moments(&self) -> MomentSequence<T> {
        cumulants_to_moments(self)
    }

    /// Cumulants of `N(mean, variance)` up to `order`.
    pub fn gaussian(mean: T, variance: T, order: usize) -> Self {
        let mut r = vec![T::zero(); order];
        if order >= 1 {
            r[0] = mean;
        }
        if order >= 2 {
            r[1] = variance;
        }
        Self { r }
    }

    /// Cumulants of `Poisson(lambda)`: all equal to `lambda`.
    pub fn poisson(lambda: T, order: usize) -> Self {
        Self { r: vec![lambda; order] }
    }
}

pub fn moments_to_cumulants<T: Field>(m: &MomentSequence<T>) -> CumulantSequence<T> {
    let order = m.order();
    let mut r: Vec<T> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = m.m[n].clone();
        for k in 1..n {
            let c = T::from_u64(binomial(n - 1, k - 1));
            acc = acc - c * r[k - 1].clone() * m.m[n - k].clone();
        }
        r.push(acc);
    }
    CumulantSequence { r }
}

pub fn cumulants_to_moments<T: Field>(r: &CumulantSequence<T>) -> MomentSequence<T> {
    let order = r.order();
    let mut m: Vec<T> = Vec::with_capacity(order + 1);
    m.push(T::one());
    for n in 1..=order {
        let mut acc = T::zero();
        for k in 1..=n {
            let c = T::from_u64(binomial(n - 1, k - 1));
            acc = acc + c * r.r[k - 1].clone() * m[n - k].clone();
        }
        m.push(acc);
    }
    MomentSequence { m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, Scalar};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn standard_normal_moments() {
        let r = moments_to_cumulants(&MomentSequence::new(ints(&[0, 1, 0, 3])));
        assert_eq!(r.values(), ints(&[0, 1, 0, 0]).as_slice());
        let m = cumulants_to_moments(&CumulantSequence::gaussian(int(0), int(1), 4));
        assert_eq!(m.raw(), ints(&[0, 1, 0, 3]).as_slice());
    }

    #[test]
    fn point_mass() {
        let c = ratio(-7, 3);
        let m = MomentSequence::new(vec![c.clone(), c.clone() * c.clone(), c.powi(3)]);
        assert_eq!(m.to_cumulants().values(), &[c, int(0), int(0)]);
        let zero = CumulantSequence::new(ints(&[0, 0, 0, 0]));
        assert_eq!(zero.to_moments().raw(), ints(&[0, 0, 0, 0]).as_slice());
        assert_eq!(*zero.to_moments().get(0), int(1));
    }

    #[test]
    fn poisson_one_has_bell_moments() {
        let m = CumulantSequence::poisson(int(1), 4).to_moments();
        assert_eq!(m.raw(), ints(&[1, 2, 5, 15]).as_slice());
        let r = MomentSequence::new(ints(&[1, 2, 5, 15])).to_cumulants();
        assert_eq!(r.values(), ints(&[1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn rejects_bad_m0() {
        assert!(MomentSequence::with_m0(ints(&[2, 1])).is_err());
        assert!(MomentSequence::<Scalar>::with_m0(vec![]).is_err());
        assert_eq!(MomentSequence::with_m0(ints(&[1, 4])).unwrap().order(), 1);
    }

    #[test]
    fn third_cumulant_formula() {
        let (m1, m2, m3) = (ratio(1, 2), ratio(3, 7), ratio(-5, 11));
        let r = MomentSequence::new(vec![m1.clone(), m2.clone(), m3.clone()]).to_cumulants();
        assert_eq!(*r.get(1), m1);
        assert_eq!(*r.get(2), m2.clone() - m1.clone() * m1.clone());
        let expected = m3 - int(3) * m2 * m1.clone() + int(2) * m1.powi(3);
        assert_eq!(*r.get(3), expected);
    }

    #[test]
    fn float_variant() {
        let r = MomentSequence::new(vec![1.0, 2.0, 6.0]).to_cumulants();
        assert_eq!(r.values(), &[1.0, 1.0, 2.0]);
    }
}
