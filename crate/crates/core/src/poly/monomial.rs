use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::var::VarId;

/// A power product of variables, stored as a sorted sparse exponent vector.
///
/// No zero exponents are stored; the empty vector is the unit monomial.
/// The order is lexicographic on the dense exponent vector induced by the
/// total order on [`VarId`], so that e.g. `d_0_1^2 > d_0_1*d_0_2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    /// The unit monomial (empty power product).
    pub fn unit() -> Monomial {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial::power(v, 1)
    }

    pub fn power(v: VarId, e: u32) -> Monomial {
        if e == 0 {
            Monomial::unit()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from (variable, exponent) pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_exponents<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Monomial {
        let mut exps: Vec<(VarId, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match exps.binary_search_by_key(&v, |&(w, _)| w) {
                Ok(idx) => exps[idx].1 += e,
                Err(idx) => exps.insert(idx, (v, e)),
            }
        }
        Monomial { exps }
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn exponent_of(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|idx| self.exps[idx].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of the exponents of the variables in `vars`.
    pub fn group_degree(&self, vars: &BTreeSet<VarId>) -> u32 {
        self.exps
            .iter()
            .filter(|(v, _)| vars.contains(v))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    exps.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((self.exps[i].0, self.exps[i].1 + other.exps[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::unit();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, k)| (v, k * e)).collect(),
        }
    }

    /// Whether `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .all(|&(v, e)| other.exponent_of(v) >= e)
    }

    /// `self / divisor`, or `None` when the division is not exact.
    pub fn quotient(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .filter_map(|&(v, e)| {
                let q = e - divisor.exponent_of(v);
                (q > 0).then_some((v, q))
            })
            .collect();
        Some(Monomial { exps })
    }

    /// Splits off the variables selected by `pred`: returns the monomial of
    /// the remaining variables and the selected (variable, exponent) pairs.
    pub fn partition<F: Fn(VarId) -> bool>(&self, pred: F) -> (Monomial, Vec<(VarId, u32)>) {
        let mut kept = Vec::new();
        let mut taken = Vec::new();
        for &(v, e) in &self.exps {
            if pred(v) {
                taken.push((v, e));
            } else {
                kept.push((v, e));
            }
        }
        (Monomial { exps: kept }, taken)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        // Walk the sparse vectors in variable order; the earlier variable
        // present is the first coordinate where the dense vectors differ.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
