//! Compositions, the refinement order, and the coefficient functionals built
//! on top of them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, q_big, sign, Q};

/// An ordered tuple of positive integers.
///
/// The derived order is lexicographic on parts, so that
/// `(1,1,1) < (1,2) < (2,1) < (3)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl TryFrom<Vec<usize>> for Composition {
    type Error = String;

    fn try_from(parts: Vec<usize>) -> std::result::Result<Self, String> {
        if parts.contains(&0) {
            return Err(format!("composition parts must be positive: {parts:?}"));
        }
        Ok(Self(parts))
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Builds a composition from a slice; panics on a zero part.
#[macro_export]
macro_rules! comp {
    ($($p:expr),* $(,)?) => {
        $crate::compositions::Composition::new(vec![$($p),*])
    };
}

impl Composition {
    /// # Panics
    /// If any part is zero.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(!parts.contains(&0), "composition parts must be positive");
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(m: usize) -> Self {
        Self::new(vec![m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Everything after the first part.
    pub fn tail(&self) -> Composition {
        Self(self.0.get(1..).unwrap_or_default().to_vec())
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Self(parts)
    }

    /// The reversed composition `Ī`.
    pub fn mirror(&self) -> Composition {
        Self(self.0.iter().rev().copied().collect())
    }

    /// Partial sums `d_1 < d_2 < ... < d_k = |I|`.
    pub fn partial_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    pub fn stats(&self) -> Result<CompositionStats> {
        if self.is_empty() {
            return Err(Error::EmptyComposition);
        }
        let pi = product(self.0.iter().copied());
        let pi_u = product(self.partial_sums());
        Ok(CompositionStats {
            length: self.len(),
            weight: self.weight(),
            sp: factorial(self.len()) * &pi,
            pi,
            pi_u,
            fp: self.0[0],
            lp: self.0[self.len() - 1],
        })
    }

    /// `π(I)`; equals 1 on the empty composition.
    pub fn pi(&self) -> BigInt {
        product(self.0.iter().copied())
    }

    /// `π_u(I)`, the product of partial sums; 1 on the empty composition.
    pub fn pi_u(&self) -> BigInt {
        product(self.partial_sums())
    }

    /// `sp(I) = ℓ(I)! π(I)`.
    pub fn sp(&self) -> BigInt {
        factorial(self.len()) * self.pi()
    }
}

fn product(it: impl IntoIterator<Item = usize>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, p| acc * BigInt::from(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionStats {
    pub length: usize,
    pub weight: usize,
    #[serde(with = "crate::rational::serde_bigint")]
    pub pi: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub pi_u: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub sp: BigInt,
    pub fp: usize,
    pub lp: usize,
}

/// All compositions of `m` in lexicographic order.
pub fn enumerate(m: usize) -> Vec<Composition> {
    let mut out = Vec::with_capacity(if m == 0 { 1 } else { 1 << (m - 1) });
    let mut current = Vec::new();
    enumerate_into(m, &mut current, &mut out);
    out
}

fn enumerate_into(rest: usize, current: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if rest == 0 {
        out.push(Composition(current.clone()));
        return;
    }
    for first in 1..=rest {
        current.push(first);
        enumerate_into(rest - first, current, out);
        current.pop();
    }
}

/// All compositions of weight `1..=max_weight`, grouped by weight.
pub fn enumerate_up_to(max_weight: usize) -> Vec<Composition> {
    (1..=max_weight).flat_map(enumerate).collect()
}

/// `fine ≽ coarse`: every partial sum of `coarse` is a partial sum of `fine`.
pub fn is_refinement(fine: &Composition, coarse: &Composition) -> bool {
    if fine.weight() != coarse.weight() {
        return false;
    }
    let fine_sums = fine.partial_sums();
    let mut it = fine_sums.iter();
    coarse
        .partial_sums()
        .iter()
        .all(|d| it.by_ref().any(|x| x == d))
}

/// The unique splitting of a refinement into consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementDecomposition {
    pub coarse: Composition,
    pub fine: Composition,
    pub blocks: Vec<Composition>,
}

pub fn refinement_blocks(fine: &Composition, coarse: &Composition) -> Result<RefinementDecomposition> {
    let not_refinement = || Error::NotARefinement {
        fine: fine.clone(),
        coarse: coarse.clone(),
    };
    if fine.weight() != coarse.weight() {
        return Err(not_refinement());
    }
    let mut blocks = Vec::with_capacity(coarse.len());
    let mut parts = fine.parts().iter();
    for &target in coarse.parts() {
        let mut block = Vec::new();
        let mut sum = 0;
        while sum < target {
            let &p = parts.next().ok_or_else(not_refinement)?;
            sum += p;
            block.push(p);
        }
        if sum != target {
            return Err(not_refinement());
        }
        blocks.push(Composition(block));
    }
    Ok(RefinementDecomposition {
        coarse: coarse.clone(),
        fine: fine.clone(),
        blocks,
    })
}

/// Products over blocks of the per-block functionals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeStats {
    #[serde(with = "crate::rational::serde_bigint")]
    pub length: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub pi_u: BigInt,
    /// `π_u(J̄, Ī)`: the product of `π_u` of each reversed block.
    #[serde(with = "crate::rational::serde_bigint")]
    pub pi_u_mirror: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub sp: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub lp: BigInt,
    #[serde(with = "crate::rational::serde_bigint")]
    pub fp: BigInt,
}

impl RefinementDecomposition {
    pub fn stats(&self) -> RelativeStats {
        let mut out = RelativeStats {
            length: BigInt::one(),
            pi_u: BigInt::one(),
            pi_u_mirror: BigInt::one(),
            sp: BigInt::one(),
            lp: BigInt::one(),
            fp: BigInt::one(),
        };
        for b in &self.blocks {
            out.length *= BigInt::from(b.len());
            out.pi_u *= b.pi_u();
            out.pi_u_mirror *= b.mirror().pi_u();
            out.sp *= b.sp();
            out.lp *= BigInt::from(b.last().unwrap_or(1));
            out.fp *= BigInt::from(b.first().unwrap_or(1));
        }
        out
    }
}

pub fn relative_stats(fine: &Composition, coarse: &Composition) -> Result<RelativeStats> {
    Ok(refinement_blocks(fine, coarse)?.stats())
}

/// All refinements of `coarse`, lexicographic.
///
/// Built as the Cartesian product of the compositions of each part, which
/// already comes out in lexicographic order.
pub fn refinements(coarse: &Composition) -> Vec<Composition> {
    let mut out = vec![Vec::new()];
    for &p in coarse.parts() {
        let pieces = enumerate(p);
        let mut next = Vec::with_capacity(out.len() * pieces.len());
        for prefix in &out {
            for piece in &pieces {
                let mut parts: Vec<usize> = prefix.clone();
                parts.extend_from_slice(piece.parts());
                next.push(parts);
            }
        }
        out = next;
    }
    out.into_iter().map(Composition).collect()
}

/// All coarsenings of `fine` (compositions `J` with `fine ≽ J`), lexicographic.
pub fn coarsenings(fine: &Composition) -> Vec<Composition> {
    let k = fine.len();
    if k == 0 {
        return vec![Composition::empty()];
    }
    // Bit i of `mask` says whether part i+1 is merged into part i.
    let mut out: Vec<Composition> = (0..1u64 << (k - 1))
        .map(|mask| {
            let mut parts = vec![fine.0[0]];
            for i in 1..k {
                if mask >> (i - 1) & 1 == 1 {
                    *parts.last_mut().unwrap() += fine.0[i];
                } else {
                    parts.push(fine.0[i]);
                }
            }
            Composition(parts)
        })
        .collect();
    out.sort();
    out
}

/// Compositions `J` with `fine ≽ J ≽ coarse`, lexicographic.
pub fn interval(fine: &Composition, coarse: &Composition) -> Vec<Composition> {
    coarsenings(fine)
        .into_iter()
        .filter(|j| is_refinement(j, coarse))
        .collect()
}

/// `c_{I,K} = Σ_{K≽J≽I} (−1)^{ℓ(J)−ℓ(I)} fp(J,I) / π_u(K,J)`, defined for `K ≽ I`.
pub fn c_coefficient(i: &Composition, k: &Composition) -> Result<Q> {
    if !is_refinement(k, i) {
        return Err(Error::NotARefinement {
            fine: k.clone(),
            coarse: i.clone(),
        });
    }
    let mut total = Q::zero();
    for j in interval(k, i) {
        let fp = relative_stats(&j, i)?.fp;
        let pi_u = relative_stats(k, &j)?.pi_u;
        total += sign(j.len() as i64 - i.len() as i64) * Q::new(fp, pi_u);
    }
    Ok(total)
}

/// `c_I = Σ_{I≽J} (−1)^{ℓ(J)−1} fp(J) / π_u(I,J)`, computed directly from its own sum.
pub fn c_single(i: &Composition) -> Result<Q> {
    if i.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let mut total = Q::zero();
    for j in coarsenings(i) {
        let pi_u = relative_stats(i, &j)?.pi_u;
        total += sign(j.len() as i64 - 1) * Q::new(BigInt::from(j.0[0]), pi_u);
    }
    Ok(total)
}

/// Checks `c_{Ī,K̄} = (−1)^{ℓ(I)−ℓ(K)} c_{I,K}` for all `K ≽ I` with `|I| ≤ max_weight`.
/// Returns the first failing pair.
pub fn check_c_symmetry(max_weight: usize) -> Option<(Composition, Composition)> {
    for i in enumerate_up_to(max_weight) {
        for k in refinements(&i) {
            let lhs = c_coefficient(&i.mirror(), &k.mirror()).expect("mirror keeps refinement");
            let rhs = sign(i.len() as i64 - k.len() as i64)
                * c_coefficient(&i, &k).expect("k refines i");
            if lhs != rhs {
                return Some((i, k));
            }
        }
    }
    None
}

/// Integer-valued functionals as rationals, for the coefficient formulas.
pub(crate) fn qb(n: &BigInt) -> Q {
    q_big(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(enumerate(0), vec![Composition::empty()]);
        assert_eq!(enumerate(1), vec![comp![1]]);
        assert_eq!(enumerate(3), vec![comp![1, 1, 1], comp![1, 2], comp![2, 1], comp![3]]);
        for m in 1..=12 {
            assert_eq!(enumerate(m).len(), 1 << (m - 1));
        }
    }

    #[test]
    fn refinement_examples() {
        assert!(is_refinement(&comp![4, 2, 5, 2, 1], &comp![6, 5, 3]));
        assert!(is_refinement(&comp![3, 1, 1, 5, 2], &comp![4, 1, 7]));
        assert!(!is_refinement(&comp![6, 5, 3], &comp![4, 2, 5, 2, 1]));
        assert!(!is_refinement(&comp![1, 2], &comp![2, 1]));
        let d = refinement_blocks(&comp![4, 2, 5, 2, 1], &comp![6, 5, 3]).unwrap();
        assert_eq!(d.blocks, vec![comp![4, 2], comp![5], comp![2, 1]]);
        assert_eq!(d.stats().length, BigInt::from(4));
        let d = refinement_blocks(&comp![1, 1, 1], &comp![3]).unwrap();
        assert_eq!(d.blocks, vec![comp![1, 1, 1]]);
        assert!(matches!(
            refinement_blocks(&comp![1, 2], &comp![2, 1]),
            Err(Error::NotARefinement { .. })
        ));
    }

    #[test]
    fn stats_examples() {
        let s = comp![2, 1].stats().unwrap();
        assert_eq!((s.pi.clone(), s.pi_u.clone(), s.sp.clone()), (2.into(), 6.into(), 4.into()));
        assert_eq!((s.fp, s.lp), (2, 1));
        let s = comp![1].stats().unwrap();
        assert_eq!((s.pi, s.pi_u, s.sp, s.fp, s.lp), (1.into(), 1.into(), 1.into(), 1, 1));
        assert_eq!(Composition::empty().stats(), Err(Error::EmptyComposition));
        assert_eq!(comp![3, 2, 4].mirror(), comp![4, 2, 3]);
        let r = relative_stats(&comp![1, 1], &comp![2]).unwrap();
        assert_eq!((r.pi_u, r.sp), (2.into(), 2.into()));
        assert_eq!(comp![3, 2, 4].concat(&comp![5, 7]), comp![3, 2, 4, 5, 7]);
    }

    #[test]
    fn relative_stats_on_diagonal() {
        for i in enumerate_up_to(6) {
            let r = relative_stats(&i, &i).unwrap();
            assert_eq!(r.length, BigInt::one());
            assert_eq!(r.pi_u, i.pi());
            assert_eq!(r.fp, i.pi());
            assert_eq!(r.lp, i.pi());
        }
    }

    #[test]
    fn refinements_match_filtering() {
        for m in 1..=7 {
            let all = enumerate(m);
            for i in &all {
                let brute: Vec<_> = all.iter().filter(|j| is_refinement(j, i)).cloned().collect();
                assert_eq!(refinements(i), brute);
                let brute: Vec<_> = all.iter().filter(|j| is_refinement(i, j)).cloned().collect();
                assert_eq!(coarsenings(i), brute);
            }
        }
    }

    #[test]
    fn refinement_is_a_partial_order() {
        let all = enumerate_up_to(6);
        for a in &all {
            assert!(is_refinement(a, a));
            for b in &all {
                if is_refinement(a, b) && is_refinement(b, a) {
                    assert_eq!(a, b);
                }
                assert_eq!(is_refinement(a, b), is_refinement(&a.mirror(), &b.mirror()));
                if !is_refinement(a, b) {
                    continue;
                }
                for c in refinements(a) {
                    assert!(is_refinement(&c, b));
                }
                let lp_mirror = relative_stats(&a.mirror(), &b.mirror()).unwrap().lp;
                assert_eq!(lp_mirror, relative_stats(a, b).unwrap().fp);
            }
            let s = a.stats().unwrap();
            assert_eq!(s.sp, factorial(a.len()) * &s.pi);
            assert!(s.pi_u >= s.pi);
        }
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_coefficient(&comp![1], &comp![1]).unwrap(), qi(1));
        assert_eq!(c_coefficient(&comp![2], &comp![1, 1]).unwrap(), qi(0));
        assert!(c_coefficient(&comp![1, 1], &comp![2]).is_err());
        for i in enumerate_up_to(6) {
            let m = Composition::single(i.weight());
            assert_eq!(c_single(&i).unwrap(), c_coefficient(&m, &i).unwrap());
        }
        assert_eq!(check_c_symmetry(6), None);
    }
}
