use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector `z^β`, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 4]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, n),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Self {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn try_from_u64(exps: &[u64]) -> Result<Self> {
        let exps = exps
            .iter()
            .map(|&e| u16::try_from(e).map_err(|_| Error::ExponentOverflow(e)))
            .collect::<Result<SmallVec<_>>>()?;
        Ok(Self { exps })
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn get(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Self {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `z^β / z^α` when `α ≤ β` componentwise.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.n());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Self { exps })
    }

    pub fn with(&self, i: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = e;
        m
    }

    /// All monomials in `n` variables of total degree exactly `d`, graded-lex ascending.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u16; n];
        fill(&mut current, 0, d, &mut out);
        out.sort();
        out
    }

    /// All monomials of total degree `≤ d`.
    pub fn all_up_to(n: usize, d: usize) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }
}

fn fill(current: &mut Vec<u16>, i: usize, rest: usize, out: &mut Vec<Monomial>) {
    if i + 1 == current.len() {
        current[i] = rest as u16;
        out.push(Monomial::from_exps(current));
        return;
    }
    if current.is_empty() {
        if rest == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    for e in 0..=rest {
        current[i] = e as u16;
        fill(current, i + 1, rest - e, out);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_monomial(self).unwrap_or_else(|| "1".into()))
    }
}

/// `z1^2*z3`, or `z^2` in one variable; `None` for the unit monomial.
pub fn render_monomial(m: &Monomial) -> Option<String> {
    let factors: Vec<String> = m
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let var = if m.n() == 1 { "z".to_string() } else { format!("z{}", i + 1) };
            if e == 1 {
                var
            } else {
                format!("{var}^{e}")
            }
        })
        .collect();
    (!factors.is_empty()).then(|| factors.join("*"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let a = Monomial::from_exps(&[2, 0]);
        let b = Monomial::from_exps(&[0, 3]);
        let c = Monomial::from_exps(&[1, 1]);
        assert!(a < b);
        assert!(c < a);
        assert_eq!(Monomial::all_of_degree(2, 2).len(), 3);
        assert_eq!(Monomial::all_up_to(3, 8).len(), 165);
        assert_eq!(a.mul(&c), Monomial::from_exps(&[3, 1]));
        assert_eq!(a.div(&c), None);
        assert_eq!(format!("{c:?}"), "z1*z2");
    }
}
