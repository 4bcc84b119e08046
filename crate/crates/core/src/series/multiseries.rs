use std::fmt;

use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};

use crate::rational::{Coeff, Q, UPoly};

/// Truncated series `Σ_{s ≤ T} t^s P_s(z)`.
#[derive(Clone, PartialEq)]
pub struct MultiSeries<C: Coeff = Q> {
    n: usize,
    slices: Vec<Poly<C>>,
}

impl<C: Coeff> MultiSeries<C> {
    pub fn zero(n: usize, t_cap: usize) -> Self {
        Self {
            n,
            slices: vec![Poly::zero(); t_cap + 1],
        }
    }

    /// A `t`-free series.
    pub fn from_poly(n: usize, t_cap: usize, p: Poly<C>) -> Self {
        let mut s = Self::zero(n, t_cap);
        s.slices[0] = p;
        s
    }

    pub fn from_slices(n: usize, slices: Vec<Poly<C>>) -> Self {
        assert!(!slices.is_empty(), "a series keeps at least the t^0 slice");
        Self { n, slices }
    }

    pub fn var(n: usize, t_cap: usize, i: usize) -> Self {
        Self::from_poly(n, t_cap, Poly::var(n, i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_cap(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, s: usize) -> &Poly<C> {
        &self.slices[s]
    }

    pub fn slice_mut(&mut self, s: usize) -> &mut Poly<C> {
        &mut self.slices[s]
    }

    pub fn slices(&self) -> &[Poly<C>] {
        &self.slices
    }

    pub fn into_slices(self) -> Vec<Poly<C>> {
        self.slices
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(Poly::is_zero)
    }

    /// Lowest `s` with a nonzero slice.
    pub fn t_order(&self) -> Option<usize> {
        self.slices.iter().position(|p| !p.is_zero())
    }

    /// Highest `s` with a nonzero slice.
    pub fn t_degree(&self) -> Option<usize> {
        self.slices.iter().rposition(|p| !p.is_zero())
    }

    /// Drops slices above `t_cap` (or pads with zeros).
    pub fn truncate(&self, t_cap: usize) -> Self {
        let mut slices: Vec<_> = self.slices.iter().take(t_cap + 1).cloned().collect();
        slices.resize(t_cap + 1, Poly::zero());
        Self { n: self.n, slices }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.t_cap() != other.t_cap() {
            return Err(Error::CapMismatch {
                left: self.t_cap(),
                right: other.t_cap(),
            });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n: self.n,
            slices: self.slices.iter().zip(&other.slices).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            n: self.n,
            slices: self.slices.iter().zip(&other.slices).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.slices.iter_mut().zip(&other.slices) {
            a.add_assign(b);
        }
    }

    pub fn scale(&self, factor: &Q) -> Self {
        Self {
            n: self.n,
            slices: self.slices.iter().map(|p| p.scale(factor)).collect(),
        }
    }

    pub fn scale_c(&self, factor: &C) -> Self {
        Self {
            n: self.n,
            slices: self.slices.iter().map(|p| p.scale_c(factor)).collect(),
        }
    }

    pub fn map_slices<D: Coeff>(&self, f: impl Fn(&Poly<C>) -> Poly<D>) -> MultiSeries<D> {
        MultiSeries {
            n: self.n,
            slices: self.slices.iter().map(f).collect(),
        }
    }

    /// Product truncated at the common cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let cap = self.t_cap();
        let mut out = Self::zero(self.n, cap);
        for (i, a) in self.slices.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.slices.iter().enumerate().take(cap + 1 - i) {
                if !b.is_zero() {
                    out.slices[i + j].add_assign(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by `t^k`, dropping what falls past the cap.
    pub fn shift_t(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n, self.t_cap());
        for (s, p) in self.slices.iter().enumerate() {
            if s + k <= self.t_cap() {
                out.slices[s + k] = p.clone();
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        self.map_slices(|p| p.derivative(i))
    }

    /// `u(F)`: substitutes `z_i ← F_i` slice by slice.
    ///
    /// Every `F_i` must be `z_i` plus terms of `t`-order at least one.
    pub fn compose(&self, map: &[MultiSeries<C>]) -> Result<Self> {
        if map.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: map.len(),
            });
        }
        let cap = self.t_cap();
        for (i, f) in map.iter().enumerate() {
            if f.n != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: f.n,
                });
            }
            if f.t_cap() < cap || f.slices[0] != Poly::var(self.n, i) {
                return Err(Error::NotTAdicContraction { component: i });
            }
        }
        let map: Vec<_> = map.iter().map(|f| f.truncate(cap)).collect();
        let mut powers = PowerCache::new(&map);
        let mut out = Self::zero(self.n, cap);
        for (s, p) in self.slices.iter().enumerate() {
            for (m, c) in p.terms() {
                let value = powers.monomial(m)?;
                for (k, slice) in value.slices.iter().enumerate().take(cap + 1 - s) {
                    out.slices[s + k].add_scaled(slice, c);
                }
            }
        }
        Ok(out)
    }
}

impl MultiSeries<Q> {
    pub fn lift(&self) -> MultiSeries<UPoly> {
        self.map_slices(Poly::lift)
    }
}

impl MultiSeries<UPoly> {
    pub fn eval_u(&self, u: &Q) -> MultiSeries<Q> {
        self.map_slices(|p| p.eval_u(u))
    }
}

struct PowerCache<'a, C: Coeff> {
    map: &'a [MultiSeries<C>],
    powers: Vec<Vec<MultiSeries<C>>>,
}

impl<'a, C: Coeff> PowerCache<'a, C> {
    fn new(map: &'a [MultiSeries<C>]) -> Self {
        let n = map.len();
        let cap = map.first().map_or(0, MultiSeries::t_cap);
        let one = MultiSeries::from_poly(n, cap, Poly::one(n));
        Self {
            map,
            powers: vec![vec![one]; n],
        }
    }

    fn power(&mut self, i: usize, k: usize) -> Result<&MultiSeries<C>> {
        while self.powers[i].len() <= k {
            let next = self.powers[i].last().expect("seeded").mul(&self.map[i])?;
            self.powers[i].push(next);
        }
        Ok(&self.powers[i][k])
    }

    fn monomial(&mut self, m: &Monomial) -> Result<MultiSeries<C>> {
        let n = self.map.len();
        let mut acc: Option<MultiSeries<C>> = None;
        for i in 0..n {
            let e = m.get(i) as usize;
            if e == 0 {
                continue;
            }
            let p = self.power(i, e)?;
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => a.mul(p)?,
            });
        }
        Ok(acc.unwrap_or_else(|| {
            MultiSeries::from_poly(n, self.map[0].t_cap(), Poly::one(n))
        }))
    }
}

impl<C: Coeff> fmt::Debug for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> fmt::Display for MultiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .slices
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(s, p)| match s {
                0 => format!("{p}"),
                1 => format!("t*({p})"),
                _ => format!("t^{s}*({p})"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{} + O(t^{})", parts.join(" + "), self.t_cap() + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn compose_square_through_contraction() {
        let z = Poly::<Q>::var(1, 0);
        let z2 = z.mul(&z);
        let u = MultiSeries::from_poly(1, 2, z2.clone());
        let f = MultiSeries::from_slices(1, vec![z.clone(), z2.neg(), Poly::zero()]);
        let out = u.compose(&[f]).unwrap();
        assert_eq!(out.slice(0), &z2);
        assert_eq!(out.slice(1), &z2.mul(&z).scale(&qi(-2)));
        assert_eq!(out.slice(2), &z2.mul(&z2));
    }

    #[test]
    fn compose_rejects_constant_shift() {
        let u = MultiSeries::<Q>::var(1, 2, 0);
        let bad = MultiSeries::from_poly(1, 2, Poly::var(1, 0).add(&Poly::one(1)));
        assert_eq!(u.compose(&[bad]), Err(Error::NotTAdicContraction { component: 0 }));
    }
}
