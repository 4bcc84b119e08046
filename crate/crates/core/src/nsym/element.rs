use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::compositions::Composition;
use crate::error::{Error, Result};

use crate::rational::{Coeff, Q, UPoly};

/// Finite linear combination of words `Λ^I = Λ_{i_1}⋯Λ_{i_k}`, truncated
/// above `weight_cap`.
#[derive(Clone, PartialEq)]
pub struct NSymElement<C: Coeff = Q> {
    terms: BTreeMap<Composition, C>,
    weight_cap: usize,
}

impl<C: Coeff> NSymElement<C> {
    pub fn zero(weight_cap: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            weight_cap,
        }
    }

    pub fn one(weight_cap: usize) -> Self {
        Self::word(Composition::empty(), weight_cap)
    }

    /// The word `Λ^I`, or zero when `|I|` exceeds the cap.
    pub fn word(i: Composition, weight_cap: usize) -> Self {
        let mut e = Self::zero(weight_cap);
        e.add_term(i, C::one());
        e
    }

    /// The generator `Λ_m`.
    pub fn generator(m: usize, weight_cap: usize) -> Self {
        Self::word(Composition::single(m), weight_cap)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Composition, C)>, weight_cap: usize) -> Self {
        let mut e = Self::zero(weight_cap);
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn weight_cap(&self) -> usize {
        self.weight_cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: &Composition) -> C {
        self.terms.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: Composition, c: C) {
        if c.is_zero() || i.weight() > self.weight_cap {
            return;
        }
        match self.terms.entry(i) {
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

    fn check(&self, other: &Self) -> Result<()> {
        if self.weight_cap == other.weight_cap {
            Ok(())
        } else {
            Err(Error::CapMismatch {
                left: self.weight_cap,
                right: other.weight_cap,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &C::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &C::one().neg_ref());
        Ok(out)
    }

    /// `self += factor · other`.
    pub fn add_assign_scaled(&mut self, other: &Self, factor: &C) {
        for (i, c) in &other.terms {
            self.add_term(i.clone(), c.mul_ref(factor));
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(i, c)| (i.clone(), c.mul_ref(factor))),
            self.weight_cap,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg_ref())
    }

    /// Free-algebra product (concatenation of words), truncated at the cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.weight_cap);
        for (i, a) in &self.terms {
            let room = self.weight_cap - i.weight();
            for (j, b) in &other.terms {
                if j.weight() <= room {
                    out.add_term(i.concat(j), a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    /// Terms of word weight exactly `m`.
    pub fn homogeneous(&self, m: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(i, _)| i.weight() == m)
                .map(|(i, c)| (i.clone(), c.clone())),
            self.weight_cap,
        )
    }

    pub fn with_cap(&self, weight_cap: usize) -> Self {
        Self::from_terms(self.terms.clone(), weight_cap)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NSymElement<D> {
        NSymElement::from_terms(self.terms.iter().map(|(i, c)| (i.clone(), f(c))), self.weight_cap)
    }

    /// Reverses every word.
    pub fn omega(&self) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(i, c)| (i.mirror(), c.clone())),
            self.weight_cap,
        )
    }

    /// JSON list of `{word, coeff}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(i, c)| json!({"word": i.parts(), "coeff": c.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(value: &Value, weight_cap: usize) -> Result<Self> {
        let bad = |msg: &str| Error::BadDimensions(msg.to_string());
        let items = value.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut out = Self::zero(weight_cap);
        for item in items {
            let word: Vec<usize> = item
                .get("word")
                .cloned()
                .and_then(|w| serde_json::from_value(w).ok())
                .ok_or_else(|| bad("term without a valid `word`"))?;
            let word = Composition::try_from(word).map_err(Error::BadDimensions)?;
            let coeff = C::from_json(item.get("coeff").ok_or_else(|| bad("term without `coeff`"))?)?;
            out.add_term(word, coeff);
        }
        Ok(out)
    }
}

impl NSymElement<Q> {
    pub fn lift(&self) -> NSymElement<UPoly> {
        self.map_coeffs(|c| UPoly::constant(c.clone()))
    }
}

impl NSymElement<UPoly> {
    pub fn eval_u(&self, u: &Q) -> NSymElement<Q> {
        self.map_coeffs(|c| c.eval(u))
    }
}

impl<C: Coeff> fmt::Debug for NSymElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> fmt::Display for NSymElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in &self.terms {
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
            let word: Vec<String> = i.parts().iter().map(|p| format!("L{p}")).collect();
            match (word.is_empty(), coeff == "1") {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", word.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", word.join("*"))?,
            }
        }
        Ok(())
    }
}
