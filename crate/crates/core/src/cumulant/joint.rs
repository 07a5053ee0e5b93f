//! Joint moment and cumulant tables of a random vector, and the
//! set-partition Möbius inversion between them.
//!
//! For a multi-index `α` expanded to the argument list `(j_1, .., j_k)`:
//!
//! ```text
//! r(α) = Σ_π (-1)^(|π|-1) (|π|-1)! Π_{B ∈ π} m(B)
//! m(α) = Σ_π Π_{B ∈ π} r(B)
//! ```
//!
//! Partitions that induce the same multiset of block multi-indices are
//! merged before any arithmetic, so each distinct product is formed once.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Deref;


use super::index::{compositions, graded_indices, MultiIndex};
use super::univariate::{cumulants_to_moments, CumulantSequence, MomentSequence};
use crate::error::{Error, Result};
use crate::partitions::{for_each_rgs, moebius_weight_for_blocks, MAX_PARTITION_SIZE};
use crate::scalar::{multinomial, Field};

/// Largest number of variables the partition conversion packs into a key.
pub const MAX_CONVERSION_DIM: usize = 16;

/// Entries indexed by multi-index, with variable labels and an order bound.
///
/// Invariant: every key has `dim` components and total order in `1..=order`,
/// and if some key has total order `k`, every multi-index of total order
/// below `k` is present.
#[derive(Debug, Clone, PartialEq)]
pub struct Table<T> {
    labels: Vec<String>,
    order: usize,
    entries: BTreeMap<MultiIndex, T>,
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::InvalidTable("a table needs at least one variable".into()));
    }
    let unique: BTreeSet<&String> = labels.iter().collect();
    if unique.len() != labels.len() {
        return Err(Error::LabelMismatch(format!("duplicate labels in {labels:?}")));
    }
    Ok(())
}

impl<T: Field> Table<T> {
    /// Complete table with every multi-index up to `order`.
    pub fn from_fn<F>(labels: Vec<String>, order: usize, mut value: F) -> Result<Self>
    where
        F: FnMut(&MultiIndex) -> T,
    {
        check_labels(&labels)?;
        let entries = graded_indices(labels.len(), order)
            .into_iter()
            .map(|idx| {
                let v = value(&idx);
                (idx, v)
            })
            .collect();
        Ok(Self { labels, order, entries })
    }

    /// Validating constructor for possibly partial tables.
    pub fn from_entries(
        labels: Vec<String>,
        order: usize,
        entries: BTreeMap<MultiIndex, T>,
    ) -> Result<Self> {
        check_labels(&labels)?;
        let dim = labels.len();
        let mut top = 0;
        for idx in entries.keys() {
            if idx.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: idx.dim() });
            }
            let k = idx.total();
            if k == 0 || k > order {
                return Err(Error::InvalidTable(format!(
                    "entry {idx} has total order {k}, outside 1..={order}"
                )));
            }
            top = top.max(k);
        }
        if let Some(missing) = graded_indices(dim, top.saturating_sub(1))
            .into_iter()
            .find(|idx| !entries.contains_key(idx))
        {
            return Err(Error::NotClosed(missing.to_string()));
        }
        Ok(Self { labels, order, entries })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, idx: &MultiIndex) -> Option<&T> {
        self.entries.get(idx)
    }

    /// Entry at the given per-variable counts.
    pub fn value(&self, counts: &[u8]) -> Result<&T> {
        let idx = MultiIndex::new(counts.to_vec());
        self.entries.get(&idx).ok_or_else(|| Error::NotClosed(idx.to_string()))
    }

    /// Entry for `count` copies of one variable.
    pub fn marginal_value(&self, var: usize, count: u8) -> Result<&T> {
        self.value(MultiIndex::unit(self.dim(), var, count).counts())
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::LabelMismatch(format!("no variable {label:?} in {:?}", self.labels)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Overwrites an entry; the index must be within the order bound.
    pub fn set(&mut self, idx: MultiIndex, value: T) -> Result<()> {
        if idx.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: idx.dim() });
        }
        if idx.total() == 0 || idx.total() > self.order {
            return Err(Error::InvalidTable(format!("entry {idx} outside order bound")));
        }
        self.entries.insert(idx, value);
        Ok(())
    }

    /// Restriction to a subset of variables, in the given label order.
    pub fn marginal(&self, labels: &[&str]) -> Result<Self> {
        let vars: Vec<usize> = labels.iter().map(|l| self.label_index(l)).collect::<Result<_>>()?;
        let entries = self
            .entries
            .iter()
            .filter_map(|(idx, v)| {
                let kept: u8 = vars.iter().map(|&j| idx.get(j)).sum();
                if kept as usize != idx.total() {
                    return None;
                }
                Some((MultiIndex::new(vars.iter().map(|&j| idx.get(j)).collect()), v.clone()))
            })
            .collect();
        Self::from_entries(labels.iter().map(|s| s.to_string()).collect(), self.order, entries)
    }

    /// Drops entries above `order`.
    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            labels: self.labels.clone(),
            order,
            entries: self
                .entries
                .iter()
                .filter(|(idx, _)| idx.total() <= order)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn map<U: Field, F: Fn(&T) -> U>(&self, f: F) -> Table<U> {
        Table {
            labels: self.labels.clone(),
            order: self.order,
            entries: self.entries.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    fn packed_values(&self) -> Result<HashMap<u64, T>> {
        if self.dim() > MAX_CONVERSION_DIM {
            return Err(Error::OutOfRange {
                what: "table dimension",
                requested: self.dim(),
                min: 1,
                max: MAX_CONVERSION_DIM,
            });
        }
        Ok(self.entries.iter().map(|(k, v)| (pack(k), v.clone())).collect())
    }
}

fn pack(idx: &MultiIndex) -> u64 {
    idx.counts()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, &c)| acc | (u64::from(c) << (4 * j)))
}

fn unpack(key: u64, dim: usize) -> MultiIndex {
    MultiIndex::new((0..dim).map(|j| ((key >> (4 * j)) & 0xf) as u8).collect())
}

/// One merged class of partitions: the sorted block keys, how many
/// partitions induce them, and the sum of their Möbius weights.
struct BlockTerm {
    blocks: Vec<u64>,
    count: i64,
    moebius: i64,
}

fn partition_terms(alpha: &MultiIndex) -> Result<Vec<BlockTerm>> {
    let k = alpha.total();
    if k > MAX_PARTITION_SIZE {
        return Err(Error::OutOfRange {
            what: "total order",
            requested: k,
            min: 1,
            max: MAX_PARTITION_SIZE,
        });
    }
    let vars = alpha.expand();
    let mut merged: BTreeMap<Vec<u64>, (i64, i64)> = BTreeMap::new();
    for_each_rgs(k, |rgs, blocks| {
        let mut keys = vec![0u64; blocks];
        for (pos, &b) in rgs.iter().enumerate() {
            keys[b as usize] += 1u64 << (4 * vars[pos]);
        }
        keys.sort_unstable();
        let slot = merged.entry(keys).or_insert((0, 0));
        slot.0 += 1;
        slot.1 += moebius_weight_for_blocks(blocks);
    })?;
    Ok(merged
        .into_iter()
        .map(|(blocks, (count, moebius))| BlockTerm { blocks, count, moebius })
        .collect())
}

fn block_product<T: Field>(blocks: &[u64], values: &HashMap<u64, T>, dim: usize) -> Result<T> {
    blocks.iter().try_fold(T::one(), |acc, key| {
        values
            .get(key)
            .map(|v| acc * v.clone())
            .ok_or_else(|| Error::NotClosed(unpack(*key, dim).to_string()))
    })
}

/// Raw mixed moments `E[Π X_j^{i_j}]`; the order-0 moment is fixed to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct JointMomentTable<T>(Table<T>);

/// Joint cumulants `r(X_1^{i_1}, .., X_d^{i_d})`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointCumulantTable<T>(Table<T>);

impl<T> Deref for JointMomentTable<T> {
    type Target = Table<T>;
    fn deref(&self) -> &Table<T> {
        &self.0
    }
}

impl<T> Deref for JointCumulantTable<T> {
    type Target = Table<T>;
    fn deref(&self) -> &Table<T> {
        &self.0
    }
}

impl<T: Field> JointMomentTable<T> {
    pub fn new(table: Table<T>) -> Self {
        Self(table)
    }

    pub fn table(&self) -> &Table<T> {
        &self.0
    }

    pub fn into_table(self) -> Table<T> {
        self.0
    }

    /// Moments of an exact discrete law given as `(point, probability)`
    /// atoms. Probabilities must sum to one.
    pub fn from_atoms(labels: Vec<String>, order: usize, atoms: &[(Vec<T>, T)]) -> Result<Self> {
        let dim = labels.len();
        let total = atoms.iter().fold(T::zero(), |acc, (_, p)| acc + p.clone());
        if total != T::one() {
            return Err(Error::InvalidInput(format!("probabilities sum to {total:?}, not 1")));
        }
        for (point, _) in atoms {
            if point.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: point.len() });
            }
        }
        // powers[a][j][e] = x_{a,j}^e
        let powers: Vec<Vec<Vec<T>>> = atoms
            .iter()
            .map(|(point, _)| {
                point
                    .iter()
                    .map(|x| {
                        let mut row = vec![T::one()];
                        for e in 1..=order {
                            let next = row[e - 1].clone() * x.clone();
                            row.push(next);
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        let table = Table::from_fn(labels, order, |idx| {
            atoms.iter().zip(&powers).fold(T::zero(), |acc, ((_, p), pw)| {
                let term = idx
                    .counts()
                    .iter()
                    .enumerate()
                    .fold(p.clone(), |t, (j, &c)| t * pw[j][c as usize].clone());
                acc + term
            })
        })?;
        Ok(Self(table))
    }

    /// Moments of a single variable from its moment sequence.
    pub fn from_sequence(label: &str, m: &MomentSequence<T>) -> Result<Self> {
        Table::from_fn(vec![label.to_string()], m.order(), |idx| m.get(idx.get(0) as usize).clone())
            .map(Self)
    }

    pub fn to_cumulants(&self) -> Result<JointCumulantTable<T>> {
        joint_moments_to_joint_cumulants(self)
    }
}

impl<T: Field> JointCumulantTable<T> {
    pub fn new(table: Table<T>) -> Self {
        Self(table)
    }

    pub fn table(&self) -> &Table<T> {
        &self.0
    }

    pub fn table_mut(&mut self) -> &mut Table<T> {
        &mut self.0
    }

    pub fn into_table(self) -> Table<T> {
        self.0
    }

    /// Single-variable table from a cumulant sequence.
    pub fn from_sequence(label: &str, r: &CumulantSequence<T>) -> Result<Self> {
        Table::from_fn(vec![label.to_string()], r.order(), |idx| r.get(idx.get(0) as usize).clone())
            .map(Self)
    }

    /// Cumulant sequence of a one-variable table.
    pub fn to_sequence(&self) -> Result<CumulantSequence<T>> {
        if self.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.dim() });
        }
        (1..=self.order())
            .map(|k| self.value(&[k as u8]).cloned())
            .collect::<Result<Vec<_>>>()
            .map(CumulantSequence::new)
    }

    /// Joint table of mutually independent blocks: every mixed cumulant
    /// across blocks is zero. The order is the smallest block order.
    pub fn independent(parts: &[&JointCumulantTable<T>]) -> Result<Self> {
        let labels: Vec<String> = parts.iter().flat_map(|p| p.labels().iter().cloned()).collect();
        let order = parts.iter().map(|p| p.order()).min().unwrap_or(0);
        let mut offsets = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for p in parts {
            offsets.push(offset);
            offset += p.dim();
        }
        let mut out = BTreeMap::new();
        for idx in graded_indices(labels.len(), order) {
            let owner = parts.iter().zip(&offsets).find(|(p, &off)| {
                let inside: usize = (off..off + p.dim()).map(|j| idx.get(j) as usize).sum();
                inside == idx.total()
            });
            let value = match owner {
                Some((p, &off)) => {
                    let local = MultiIndex::new(idx.counts()[off..off + p.dim()].to_vec());
                    p.get(&local).cloned().ok_or_else(|| Error::NotClosed(local.to_string()))?
                }
                None => T::zero(),
            };
            out.insert(idx, value);
        }
        Table::from_entries(labels, order, out).map(Self)
    }

    pub fn to_moments(&self) -> Result<JointMomentTable<T>> {
        joint_cumulants_to_joint_moments(self)
    }

    /// Restriction to a subset of variables.
    pub fn marginal(&self, labels: &[&str]) -> Result<Self> {
        self.0.marginal(labels).map(Self)
    }

    pub fn truncated(&self, order: usize) -> Self {
        Self(self.0.truncated(order))
    }

    /// Adjoins `W = Σ c_j X_j` as a new last variable named `label`. Its
    /// joint cumulants follow from multilinearity:
    /// `r(W^w, β) = Σ_{|γ| = w} multinomial(γ) c^γ r(β + γ)`.
    pub fn adjoin_combination(&self, label: &str, coeffs: &[T]) -> Result<Self> {
        let dim = self.dim();
        if coeffs.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: coeffs.len() });
        }
        let mut labels = self.labels().to_vec();
        labels.push(label.to_string());
        check_labels(&labels)?;
        let order = self.order();
        let mut weighted: Vec<Vec<(MultiIndex, T)>> = Vec::with_capacity(order + 1);
        for w in 0..=order {
            weighted.push(
                compositions(dim, w)
                    .into_iter()
                    .map(|gamma| {
                        let weight = gamma
                            .counts()
                            .iter()
                            .zip(coeffs)
                            .fold(T::from_u64(multinomial(gamma.counts())), |acc, (&e, c)| {
                                acc * c.powi(e as usize)
                            });
                        (gamma, weight)
                    })
                    .collect(),
            );
        }
        let mut entries = BTreeMap::new();
        for idx in graded_indices(dim + 1, order) {
            let w = idx.get(dim) as usize;
            let beta = MultiIndex::new(idx.counts()[..dim].to_vec());
            let value = if w == 0 {
                self.get(&beta).cloned().ok_or_else(|| Error::NotClosed(beta.to_string()))?
            } else {
                let mut acc = T::zero();
                for (gamma, weight) in &weighted[w] {
                    let target = beta.add(gamma);
                    let v = self.get(&target).ok_or_else(|| Error::NotClosed(target.to_string()))?;
                    acc = acc + weight.clone() * v.clone();
                }
                acc
            };
            entries.insert(idx, value);
        }
        Table::from_entries(labels, order, entries).map(Self)
    }
}

/// Joint cumulants by Möbius inversion over set partitions.
pub fn joint_moments_to_joint_cumulants<T: Field>(
    jm: &JointMomentTable<T>,
) -> Result<JointCumulantTable<T>> {
    let values = jm.packed_values()?;
    let dim = jm.dim();
    let mut out = BTreeMap::new();
    for (alpha, _) in jm.iter() {
        let mut acc = T::zero();
        for term in partition_terms(alpha)? {
            if term.moebius != 0 {
                acc = acc + T::from_i64(term.moebius) * block_product(&term.blocks, &values, dim)?;
            }
        }
        out.insert(alpha.clone(), acc);
    }
    Table::from_entries(jm.labels().to_vec(), jm.order(), out).map(JointCumulantTable)
}

/// Inverse of [`joint_moments_to_joint_cumulants`].
pub fn joint_cumulants_to_joint_moments<T: Field>(
    jc: &JointCumulantTable<T>,
) -> Result<JointMomentTable<T>> {
    let values = jc.packed_values()?;
    let dim = jc.dim();
    let mut out = BTreeMap::new();
    for (alpha, _) in jc.iter() {
        let mut acc = T::zero();
        for term in partition_terms(alpha)? {
            acc = acc + T::from_i64(term.count) * block_product(&term.blocks, &values, dim)?;
        }
        out.insert(alpha.clone(), acc);
    }
    Table::from_entries(jc.labels().to_vec(), jc.order(), out).map(JointMomentTable)
}

/// `r_k(Σ_j c_j X_j) = Σ_{|i| = k} multinomial(k; i) Π c_j^{i_j} r(i)`.
pub fn cumulant_of_combination<T: Field>(
    coeffs: &[T],
    jc: &JointCumulantTable<T>,
    k: usize,
) -> Result<T> {
    if coeffs.len() != jc.dim() {
        return Err(Error::DimensionMismatch { expected: jc.dim(), found: coeffs.len() });
    }
    if k == 0 || k > jc.order() {
        return Err(Error::OutOfRange { what: "cumulant order", requested: k, min: 1, max: jc.order() });
    }
    let mut acc = T::zero();
    for idx in compositions(jc.dim(), k) {
        let value = jc.get(&idx).ok_or_else(|| Error::NotClosed(idx.to_string()))?;
        if value.is_zero() {
            continue;
        }
        let weight = idx
            .counts()
            .iter()
            .zip(coeffs)
            .fold(T::from_u64(multinomial(idx.counts())), |acc, (&e, c)| acc * c.powi(e as usize));
        acc = acc + weight * value.clone();
    }
    Ok(acc)
}

/// Mixed entries (touching two or more groups) of total order `<= order`
/// that are nonzero, in graded order. An empty result certifies
/// independence of the groups up to that order.
pub fn independence_violations<T: Field>(
    jc: &JointCumulantTable<T>,
    grouping: &[Vec<String>],
    order: usize,
) -> Result<Vec<(MultiIndex, T)>> {
    let mut group_of = vec![usize::MAX; jc.dim()];
    for (g, group) in grouping.iter().enumerate() {
        for label in group {
            let j = jc.label_index(label)?;
            if group_of[j] != usize::MAX {
                return Err(Error::LabelMismatch(format!("{label:?} appears in two groups")));
            }
            group_of[j] = g;
        }
    }
    if let Some(j) = group_of.iter().position(|&g| g == usize::MAX) {
        return Err(Error::LabelMismatch(format!("{:?} is not in any group", jc.labels()[j])));
    }
    let mut found: Vec<(MultiIndex, T)> = jc
        .iter()
        .filter(|(idx, v)| {
            if idx.total() > order || v.is_zero() {
                return false;
            }
            let touched: BTreeSet<usize> = idx
                .counts()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(j, _)| group_of[j])
                .collect();
            touched.len() >= 2
        })
        .map(|(idx, v)| (idx.clone(), v.clone()))
        .collect();
    found.sort_by(|(x, _), (y, _)| x.total().cmp(&y.total()).then_with(|| y.cmp(x)));
    Ok(found)
}

/// Univariate conversion through the partition path, for consistency checks
/// against the binomial recurrence.
pub fn univariate_via_partitions<T: Field>(m: &MomentSequence<T>) -> Result<CumulantSequence<T>> {
    JointMomentTable::from_sequence("X", m)?.to_cumulants()?.to_sequence()
}

/// Moments of a single variable from its cumulants, via the recurrence.
pub fn moments_table_from_cumulants<T: Field>(
    label: &str,
    r: &CumulantSequence<T>,
) -> Result<JointMomentTable<T>> {
    JointMomentTable::from_sequence(label, &cumulants_to_moments(r))
}
