use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::poly::CoeffPolynomial;
use crate::cumulant::JointCumulantTable;
use crate::error::{Error, Result};
use crate::scalar::{binomial, Field, Scalar};

/// One independent half of the statistic: a joint cumulant table together
/// with the variable playing the `S` role and the one playing the `Y` role.
///
/// `weight` is `1` for a plain variable. For a normalized combination it is
/// the squared norm `Σ aᵢ²` of the coefficients, and the table stores the
/// cumulants of the unnormalized sum `U = Σ aᵢXᵢ`; then `S = U / √weight`
/// and the formal coefficient of `U` satisfies `a² = weight · t²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Side {
    table: JointCumulantTable<Scalar>,
    s: usize,
    y: usize,
    weight: Scalar,
}

impl Side {
    pub fn new(table: JointCumulantTable<Scalar>, s_label: &str, y_label: &str) -> Result<Self> {
        Self::weighted(table, s_label, y_label, Scalar::one())
    }

    pub fn weighted(
        table: JointCumulantTable<Scalar>,
        s_label: &str,
        y_label: &str,
        weight: Scalar,
    ) -> Result<Self> {
        let s = table.label_index(s_label)?;
        let y = table.label_index(y_label)?;
        if s == y {
            return Err(Error::LabelMismatch(format!("{s_label:?} cannot play both roles")));
        }
        if weight <= Scalar::zero() {
            return Err(Error::InvalidInput("side weight must be positive".into()));
        }
        Ok(Self { table, s, y, weight })
    }

    /// A two-variable table read as `(S, Y)`.
    pub fn pair(table: JointCumulantTable<Scalar>) -> Result<Self> {
        if table.dim() != 2 {
            return Err(Error::LabelMismatch(format!(
                "expected a table over (S, Y), found labels {:?}",
                table.labels()
            )));
        }
        let labels = table.labels().to_vec();
        Self::new(table, &labels[0], &labels[1])
    }

    pub fn table(&self) -> &JointCumulantTable<Scalar> {
        &self.table
    }

    pub fn s_label(&self) -> &str {
        &self.table.labels()[self.s]
    }

    pub fn y_label(&self) -> &str {
        &self.table.labels()[self.y]
    }

    pub fn weight(&self) -> &Scalar {
        &self.weight
    }

    /// `r(S^i, Y^l)` as stored (unnormalized when `weight != 1`).
    pub fn mixed(&self, s_count: usize, y_count: usize) -> Result<&Scalar> {
        let mut counts = vec![0u8; self.table.dim()];
        counts[self.s] = s_count as u8;
        counts[self.y] = y_count as u8;
        self.table.value(&counts)
    }

    /// `r(S^i, Y^l)` for the normalized `S`, as an exact surd.
    pub fn normalized_mixed(&self, s_count: usize, y_count: usize) -> Result<RootScaled> {
        Ok(RootScaled::normalize(self.mixed(s_count, y_count)?, s_count, &self.weight))
    }

    /// Variance of the normalized `S`.
    pub fn variance(&self) -> Result<Scalar> {
        Ok(self.mixed(2, 0)? / &self.weight)
    }

    /// Same side with every pure-`S` cumulant replaced by the given list.
    pub fn with_s_cumulants(&self, r: &[Scalar]) -> Result<Self> {
        let mut out = self.clone();
        for (k, v) in r.iter().enumerate() {
            let idx = crate::cumulant::MultiIndex::unit(self.table.dim(), self.s, (k + 1) as u8);
            out.table.table_mut().set(idx, v.clone())?;
        }
        Ok(out)
    }
}

/// `c / √root` when `root` is present, otherwise just `c`.
///
/// Normalized cumulants with an odd number of `S` arguments carry one
/// factor `1/√weight`; all others are rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootScaled {
    pub coefficient: Scalar,
    pub root: Option<Scalar>,
}

impl RootScaled {
    pub fn rational(c: Scalar) -> Self {
        Self { coefficient: c, root: None }
    }

    /// `value / weight^{s_count / 2}` kept exact.
    pub fn normalize(value: &Scalar, s_count: usize, weight: &Scalar) -> Self {
        let coefficient = value / weight.powi(s_count / 2);
        let root = (s_count % 2 == 1 && !weight.is_one() && !coefficient.is_zero())
            .then(|| weight.clone());
        Self { coefficient, root }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }
}

impl std::fmt::Display for RootScaled {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.root {
            None => write!(f, "{}", self.coefficient),
            Some(r) => write!(f, "{}/sqrt({})", self.coefficient, r),
        }
    }
}

impl std::str::FromStr for RootScaled {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use crate::scalar::parse_rational;
        match s.split_once("/sqrt(") {
            Some((c, r)) => {
                let r = r.strip_suffix(')').ok_or_else(|| Error::InvalidInput(s.to_string()))?;
                Ok(Self { coefficient: parse_rational(c)?, root: Some(parse_rational(r)?) })
            }
            None => Ok(Self::rational(parse_rational(s)?)),
        }
    }
}

impl serde::Serialize for RootScaled {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RootScaled {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The statistic `aS₁ + Y + bS₂ + Z` with `(S₁, Y)` independent of
/// `(S₂, Z)`. Independence is structural: the sides are separate tables.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub left: Side,
    pub right: Side,
    pub order: usize,
    pub coeff_vars: [String; 2],
}

impl ScenarioSpec {
    pub fn new(left: Side, right: Side, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::OutOfRange { what: "order", requested: 0, min: 1, max: usize::MAX });
        }
        for side in [&left, &right] {
            if side.table.order() < order {
                return Err(Error::InvalidTable(format!(
                    "table over {:?} has order {} < requested {order}",
                    side.table.labels(),
                    side.table.order()
                )));
            }
        }
        let l: BTreeSet<&String> = left.table.labels().iter().collect();
        if let Some(shared) = right.table.labels().iter().find(|x| l.contains(x)) {
            return Err(Error::LabelMismatch(format!("label {shared:?} appears on both sides")));
        }
        Ok(Self { left, right, order, coeff_vars: ["a".into(), "b".into()] })
    }

    pub fn with_coeff_vars(mut self, a: &str, b: &str) -> Result<Self> {
        if a == b || a.is_empty() || b.is_empty() {
            return Err(Error::InvalidInput("coefficient variables must be distinct names".into()));
        }
        self.coeff_vars = [a.to_string(), b.to_string()];
        Ok(self)
    }

    fn var_names(&self) -> [&str; 2] {
        [&self.coeff_vars[0], &self.coeff_vars[1]]
    }
}

/// `Σ_{i=1}^{k} C(k, i) r(S^i, Y^{k-i}) · var^i`, i.e. `r_k(aS + Y) − r_k(Y)`
/// as a polynomial in the single formal variable `var`.
pub fn expand_side(k: usize, side: &Side, var: &str) -> Result<CoeffPolynomial> {
    if k == 0 || k > side.table.order() {
        return Err(Error::OutOfRange {
            what: "cumulant order",
            requested: k,
            min: 1,
            max: side.table.order(),
        });
    }
    let mut p = CoeffPolynomial::zero(&[var]);
    for i in 1..=k {
        let c = Scalar::from_u64(binomial(k, i)) * side.mixed(i, k - i)?;
        p.add_term(vec![i as u32], c);
    }
    Ok(p)
}

/// [`expand_side`] in the variable `a`.
pub fn expand_hk_single(k: usize, side: &Side) -> Result<CoeffPolynomial> {
    expand_side(k, side, "a")
}

/// `r_k(aS₁ + Y + bS₂ + Z) − r_k(Y + Z)` in `(a, b)`: the two one-sided
/// expansions added, since cross-side cumulants vanish.
pub fn expand_statistic(spec: &ScenarioSpec, k: usize) -> Result<CoeffPolynomial> {
    if k > spec.order {
        return Err(Error::OutOfRange { what: "cumulant order", requested: k, min: 1, max: spec.order });
    }
    let vars = spec.var_names();
    let left = expand_side(k, &spec.left, vars[0])?.embed(&vars)?;
    let right = expand_side(k, &spec.right, vars[1])?.embed(&vars)?;
    Ok(&left + &right)
}
