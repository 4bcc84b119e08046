use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::{render_monomial, Monomial};
use crate::rational::{Coeff, Q, UPoly};

/// Sparse polynomial in commutative variables `z_1..z_n`.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Coeff = Q> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Monomial::var(n, i), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Variable count, if any term is present.
    pub fn n(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::n)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.neg_ref());
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &C) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.mul_ref(factor));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(C::neg_ref)
    }

    pub fn scale(&self, factor: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.scale(factor))))
    }

    pub fn scale_c(&self, factor: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(factor))))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.mul(m), v.mul_ref(c))))
    }

    pub fn pow(&self, n: usize, k: usize) -> Self {
        let mut acc = Self::one(n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂z_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e > 0 {
                out.add_term(m.with(i, e - 1), c.scale(&Q::from_integer(BigInt::from(e))));
            }
        }
        out
    }

    /// `∂^α`, with falling-factorial coefficients.
    pub fn derivative_multi(&self, alpha: &Monomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(rest) = m.div(alpha) {
                let mut f = BigInt::one();
                for (b, a) in m.exps().iter().zip(alpha.exps()) {
                    for j in 0..*a {
                        f *= BigInt::from(b - j);
                    }
                }
                out.add_term(rest, c.scale(&Q::from_integer(f)));
            }
        }
        out
    }

    /// Keeps terms whose total degree satisfies `keep`.
    pub fn filter_degree(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.degree()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Poly<Q> {
    pub fn lift(&self) -> Poly<UPoly> {
        self.map_coeffs(|c| UPoly::constant(c.clone()))
    }
}

impl Poly<UPoly> {
    pub fn eval_u(&self, u: &Q) -> Poly<Q> {
        self.map_coeffs(|c| c.eval(u))
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut coeff = c.render();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            match render_monomial(m) {
                None => write!(f, "{coeff}")?,
                Some(mono) if coeff == "1" => write!(f, "{mono}")?,
                Some(mono) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}
