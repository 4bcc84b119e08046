use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::rational::{binomial, q_big, Q};
use crate::series::{series_to_json, Monomial, MultiSeries, Poly};

/// `Σ_α c_α(z) ∂^α`, normal ordered (coefficients left of derivatives).
#[derive(Clone, PartialEq)]
pub struct DiffOperator {
    n: usize,
    terms: BTreeMap<Monomial, Poly<Q>>,
}

/// Multi-indices `γ ≤ α` componentwise.
pub(crate) fn sub_indices(alpha: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(alpha.n())];
    for i in 0..alpha.n() {
        let mut next = Vec::with_capacity(out.len() * (alpha.get(i) as usize + 1));
        for g in &out {
            for e in 0..=alpha.get(i) {
                next.push(g.with(i, e));
            }
        }
        out = next;
    }
    out
}

/// Multi-indices `γ ≤ α` with `|γ| = k`.
pub(crate) fn sub_indices_of_degree(alpha: &Monomial, k: usize) -> Vec<Monomial> {
    fn go(alpha: &Monomial, i: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == alpha.n() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let top = (alpha.get(i) as usize).min(left);
        for e in 0..=top {
            *cur = cur.with(i, e as u16);
            go(alpha, i + 1, left - e, cur, out);
        }
        *cur = cur.with(i, 0);
    }
    let mut out = Vec::new();
    go(alpha, 0, k, &mut Monomial::one(alpha.n()), &mut out);
    out
}

/// `∏_i binom(α_i, γ_i)`.
pub(crate) fn multi_binomial(alpha: &Monomial, gamma: &Monomial) -> BigInt {
    alpha
        .exps()
        .iter()
        .zip(gamma.exps())
        .map(|(&a, &g)| binomial(a as usize, g as usize))
        .product()
}

/// `α! = ∏_i α_i!`.
pub(crate) fn multi_factorial(alpha: &Monomial) -> BigInt {
    alpha
        .exps()
        .iter()
        .map(|&a| crate::rational::factorial(a as usize))
        .product()
}

impl DiffOperator {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::multiplication(Poly::one(n), n)
    }

    /// Multiplication by `c`.
    pub fn multiplication(c: Poly<Q>, n: usize) -> Self {
        let mut op = Self::zero(n);
        op.add_term(Monomial::one(n), c);
        op
    }

    /// `∂/∂z_i`.
    pub fn partial(n: usize, i: usize) -> Self {
        let mut op = Self::zero(n);
        op.add_term(Monomial::var(n, i), Poly::one(n));
        op
    }

    /// `[u ∂/∂z] = Σ_i u_i ∂/∂z_i`.
    pub fn derivation(field: &[Poly<Q>]) -> Self {
        let n = field.len();
        let mut op = Self::zero(n);
        for (i, u) in field.iter().enumerate() {
            op.add_term(Monomial::var(n, i), u.clone());
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Poly<Q>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, alpha: Monomial, c: Poly<Q>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(alpha.clone()).or_default();
        slot.add_assign(&c);
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, factor: &Q) -> Self {
        let mut out = Self::zero(self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c.scale(factor));
        }
        out
    }

    pub fn apply(&self, p: &Poly<Q>) -> Poly<Q> {
        let mut out = Poly::zero();
        for (alpha, c) in &self.terms {
            let d = p.derivative_multi(alpha);
            if !d.is_zero() {
                out.add_assign(&c.mul(&d));
            }
        }
        out
    }

    /// Normal-ordered product `self ∘ other`, by the Leibniz rule
    /// `∂^α c = Σ_{γ≤α} binom(α, γ) (∂^γ c) ∂^{α−γ}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (alpha, ca) in &self.terms {
            let gammas = sub_indices(alpha);
            for (beta, cb) in &other.terms {
                for gamma in &gammas {
                    let dc = cb.derivative_multi(gamma);
                    if dc.is_zero() {
                        continue;
                    }
                    let rest = alpha.div(gamma).expect("γ ≤ α");
                    let coeff = ca.mul(&dc).scale(&q_big(multi_binomial(alpha, gamma)));
                    out.add_term(rest.mul(beta), coeff);
                }
            }
        }
        out
    }

    /// First monomial of degree `≤ deg` on which the two actions differ.
    pub fn differs_on_testspace(&self, other: &Self, deg: usize) -> Option<Monomial> {
        Monomial::all_up_to(self.n, deg)
            .into_iter()
            .find(|m| self.apply(&Poly::monomial(m.clone())) != other.apply(&Poly::monomial(m.clone())))
    }

    pub fn equal_on_testspace(&self, other: &Self, deg: usize) -> bool {
        self.differs_on_testspace(other, deg).is_none()
    }

    /// JSON list of `{alpha, coeff}`, the coefficient as a `t`-free series.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(a, c)| {
                    json!({
                        "alpha": a.exps(),
                        "coeff": series_to_json(&MultiSeries::from_poly(self.n, 0, c.clone())),
                    })
                })
                .collect(),
        )
    }
}

impl std::fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let d: Vec<String> = a
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("d{}", i + 1) } else { format!("d{}^{e}", i + 1) })
                    .collect();
                if d.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", d.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn weyl_relation() {
        let n = 1;
        let d = DiffOperator::partial(n, 0);
        let z = DiffOperator::multiplication(Poly::var(n, 0), n);
        let prod = d.mul(&z);
        let expected = z.mul(&d).add(&DiffOperator::identity(n));
        assert!(prod == expected);
        assert!(d.mul(&DiffOperator::identity(n)) == d);
    }

    #[test]
    fn testspace_witness() {
        let a = DiffOperator::partial(2, 0);
        let b = DiffOperator::partial(2, 1);
        assert!(a.equal_on_testspace(&a, 3));
        assert_eq!(a.differs_on_testspace(&b, 1), Some(Monomial::var(2, 1)));
    }

    #[test]
    fn sub_index_enumeration() {
        let a = Monomial::from_exps(&[2, 1]);
        assert_eq!(sub_indices(&a).len(), 6);
        assert_eq!(sub_indices_of_degree(&a, 2).len(), 2);
        assert_eq!(multi_binomial(&a, &Monomial::from_exps(&[1, 1])), BigInt::from(2));
        assert_eq!(multi_factorial(&a), BigInt::from(2));
        let p = Poly::var(2, 0).mul(&Poly::var(2, 0));
        let op = DiffOperator::derivation(&[Poly::var(2, 1), Poly::zero()]);
        assert_eq!(op.apply(&p), Poly::var(2, 0).mul(&Poly::var(2, 1)).scale(&qi(2)));
    }
}
