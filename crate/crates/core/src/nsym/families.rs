use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::element::NSymElement;
use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::rational::{qi, sign, Coeff, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    Lambda,
    S,
    Phi,
    Psi,
    Xi,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [Self::Lambda, Self::S, Self::Phi, Self::Psi, Self::Xi];

    pub fn name(self) -> &'static str {
        match self {
            Self::Lambda => "Lambda",
            Self::S => "S",
            Self::Phi => "Phi",
            Self::Psi => "Psi",
            Self::Xi => "Xi",
        }
    }

    /// Lower-case name of the matching operator family.
    pub fn operator_name(self) -> &'static str {
        match self {
            Self::Lambda => "lambda",
            Self::S => "s",
            Self::Phi => "phi",
            Self::Psi => "psi",
            Self::Xi => "xi",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "lambda" => Ok(Self::Lambda),
            "s" => Ok(Self::S),
            "phi" => Ok(Self::Phi),
            "psi" => Ok(Self::Psi),
            "xi" => Ok(Self::Xi),
            other => Err(format!("unknown family `{other}` (expected lambda, s, phi, psi or xi)")),
        }
    }
}

/// Members `1..=N` of one family, written in the `Λ`-word basis.
#[derive(Debug, Clone, PartialEq)]
pub struct NcsfFamily {
    pub kind: FamilyKind,
    pub elements: Vec<NSymElement<Q>>,
}

impl NcsfFamily {
    /// The member of weight `m` (1-based).
    pub fn member(&self, m: usize) -> &NSymElement<Q> {
        &self.elements[m - 1]
    }

    pub fn max_weight(&self) -> usize {
        self.elements.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.kind.name(),
            "members": self.elements.iter().enumerate().map(|(k, e)| json!({
                "m": k + 1,
                "element": e.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `log(1 + x)` for `x` without constant term, truncated at the cap.
pub fn log1p<C: Coeff>(x: &NSymElement<C>) -> NSymElement<C> {
    let cap = x.weight_cap();
    let mut out = NSymElement::zero(cap);
    let mut power = x.clone();
    for r in 1..=cap {
        if power.is_zero() {
            break;
        }
        out.add_assign_scaled(&power, &C::from_q(sign(r as i64 - 1) / qi(r as i64)));
        power = power.mul(x).expect("same cap");
    }
    out
}

/// `exp(x)` for `x` without constant term, truncated at the cap.
pub fn exp<C: Coeff>(x: &NSymElement<C>) -> NSymElement<C> {
    let cap = x.weight_cap();
    let mut out = NSymElement::one(cap);
    let mut term = NSymElement::one(cap);
    for k in 1..=cap {
        term = term.mul(x).expect("same cap").scale(&C::from_q(qi(k as i64).recip()));
        if term.is_zero() {
            break;
        }
        out.add_assign_scaled(&term, &C::one());
    }
    out
}

/// Solves the defining equations for a family up to weight `n`.
pub fn compute_family(kind: FamilyKind, n: usize) -> NcsfFamily {
    let lambda: Vec<NSymElement<Q>> = (1..=n).map(|m| NSymElement::generator(m, n)).collect();
    let elements = match kind {
        FamilyKind::Lambda => lambda,
        FamilyKind::S => complete(n),
        FamilyKind::Phi => {
            // Φ(t) = log σ(t) with Φ(t) = Σ t^m Φ_m / m.
            let s = complete(n);
            let mut x = NSymElement::zero(n);
            for e in &s {
                x.add_assign_scaled(e, &Q::one());
            }
            let log = log1p(&x);
            (1..=n).map(|m| log.homogeneous(m).scale(&qi(m as i64))).collect()
        }
        FamilyKind::Psi => {
            // m S_m = Σ_{k=1}^m S_{m−k} Ψ_k.
            let s = complete(n);
            let mut psi: Vec<NSymElement<Q>> = Vec::with_capacity(n);
            for m in 1..=n {
                let mut e = s[m - 1].scale(&qi(m as i64));
                for k in 1..m {
                    e = e.sub(&s[m - k - 1].mul(&psi[k - 1]).unwrap()).unwrap();
                }
                psi.push(e);
            }
            psi
        }
        FamilyKind::Xi => {
            // m S_m = Σ_{k=1}^m Ξ_k S_{m−k}.
            let s = complete(n);
            let mut xi: Vec<NSymElement<Q>> = Vec::with_capacity(n);
            for m in 1..=n {
                let mut e = s[m - 1].scale(&qi(m as i64));
                for k in 1..m {
                    e = e.sub(&xi[k - 1].mul(&s[m - k - 1]).unwrap()).unwrap();
                }
                xi.push(e);
            }
            xi
        }
    };
    NcsfFamily { kind, elements }
}

/// `S_m = Σ_{k=1}^m (−1)^{k−1} Λ_k S_{m−k}`, from `λ(−t) σ(t) = 1`.
fn complete(n: usize) -> Vec<NSymElement<Q>> {
    let mut s: Vec<NSymElement<Q>> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut e = NSymElement::zero(n);
        for k in 1..=m {
            let prev = if k == m { NSymElement::one(n) } else { s[m - k - 1].clone() };
            let term = NSymElement::generator(k, n).mul(&prev).unwrap();
            e.add_assign_scaled(&term, &sign(k as i64 - 1));
        }
        s.push(e);
    }
    s
}

/// `Σ_m X_m`: a generating series at `t = 1`, the weight recording the power of `t`.
fn series_sum(members: &[NSymElement<Q>], cap: usize, signed: bool) -> NSymElement<Q> {
    let mut out = NSymElement::one(cap);
    for (k, e) in members.iter().enumerate() {
        let c = if signed { sign(k as i64 + 1) } else { Q::one() };
        out.add_assign_scaled(e, &c);
    }
    out
}

/// `t d/dt` on a graded element: multiplies weight `m` by `m`.
fn euler(x: &NSymElement<Q>) -> NSymElement<Q> {
    let mut out = NSymElement::zero(x.weight_cap());
    for (i, c) in x.terms() {
        out.add_term(i.clone(), c * qi(i.weight() as i64));
    }
    out
}

/// The five generating-function relations, each as `lhs − rhs` through the cap.
#[derive(Debug, Clone)]
pub struct AxiomResiduals {
    pub entries: Vec<(&'static str, NSymElement<Q>)>,
}

impl AxiomResiduals {
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.is_zero())
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.entries.iter().filter(|(_, r)| !r.is_zero()).map(|(name, _)| *name).collect()
    }
}

type WordCache = Mutex<HashMap<(FamilyKind, Composition), Arc<NSymElement<Q>>>>;

/// All five families up to weight `N`, with a cache of expanded words `X^I`.
pub struct FamilyTable {
    cap: usize,
    families: Vec<NcsfFamily>,
    words: WordCache,
}

impl FamilyTable {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            families: FamilyKind::ALL.iter().map(|&k| compute_family(k, cap)).collect(),
            words: Mutex::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn family(&self, kind: FamilyKind) -> &NcsfFamily {
        &self.families[kind.index()]
    }

    pub fn member(&self, kind: FamilyKind, m: usize) -> &NSymElement<Q> {
        self.family(kind).member(m)
    }

    /// `X^I = X_{i_1} ⋯ X_{i_k}` expanded in `Λ`-words.
    pub fn word(&self, kind: FamilyKind, i: &Composition) -> Result<Arc<NSymElement<Q>>> {
        if i.weight() > self.cap {
            return Err(Error::OrderExceedsCap {
                order: i.weight(),
                cap: self.cap,
            });
        }
        let key = (kind, i.clone());
        if let Some(hit) = self.words.lock().expect("word cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let value = match i.parts() {
            [] => NSymElement::one(self.cap),
            [m] => self.member(kind, *m).clone(),
            parts => {
                let prefix = Composition::new(parts[..parts.len() - 1].to_vec());
                let last = parts[parts.len() - 1];
                self.word(kind, &prefix)?.mul(self.member(kind, last))?
            }
        };
        let value = Arc::new(value);
        self.words
            .lock()
            .expect("word cache poisoned")
            .insert(key, value.clone());
        Ok(value)
    }

    /// Expands `Σ c_I X^I` in the `Λ`-word basis.
    pub fn expand<C: Coeff>(&self, combo: &FamilyCombination<C>) -> Result<NSymElement<C>> {
        let mut out = NSymElement::zero(self.cap);
        for (i, c) in &combo.terms {
            let w = self.word(combo.kind, i)?;
            for (j, a) in w.terms() {
                out.add_term(j.clone(), c.scale(a));
            }
        }
        Ok(out)
    }

    /// The algebra involution with `τ(Λ_m) = (−1)^m S_m`.
    /// Residuals of `λ(−t)σ(t) = 1`, `σ(t)λ(−t) = 1`, `e^{Φ(t)} = σ(t)` with
    /// `Φ(t) = Σ t^m Φ_m/m`, `σ′ = σψ` and `σ′ = ξσ`.
    pub fn axiom_residuals(&self) -> AxiomResiduals {
        let cap = self.cap;
        let one = NSymElement::one(cap);
        let lambda_neg = series_sum(&self.family(FamilyKind::Lambda).elements, cap, true);
        let sigma = series_sum(&self.family(FamilyKind::S).elements, cap, false);
        let mut phi = NSymElement::zero(cap);
        for (k, e) in self.family(FamilyKind::Phi).elements.iter().enumerate() {
            phi.add_assign_scaled(e, &qi(k as i64 + 1).recip());
        }
        let mut psi = NSymElement::zero(cap);
        let mut xi = NSymElement::zero(cap);
        for m in 1..=cap {
            psi.add_assign_scaled(self.member(FamilyKind::Psi, m), &Q::one());
            xi.add_assign_scaled(self.member(FamilyKind::Xi, m), &Q::one());
        }
        let d_sigma = euler(&sigma);
        let r = |a: NSymElement<Q>, b: &NSymElement<Q>| a.sub(b).expect("same cap");
        AxiomResiduals {
            entries: vec![
                ("lambda(-t)sigma(t)=1", r(lambda_neg.mul(&sigma).expect("same cap"), &one)),
                ("sigma(t)lambda(-t)=1", r(sigma.mul(&lambda_neg).expect("same cap"), &one)),
                ("exp(Phi(t))=sigma(t)", r(exp(&phi), &sigma)),
                ("sigma'=sigma psi", r(d_sigma.clone(), &sigma.mul(&psi).expect("same cap"))),
                ("sigma'=xi sigma", r(d_sigma, &xi.mul(&sigma).expect("same cap"))),
            ],
        }
    }

    pub fn tau<C: Coeff>(&self, a: &NSymElement<C>) -> Result<NSymElement<C>> {
        let mut out = NSymElement::zero(self.cap);
        for (i, c) in a.terms() {
            let w = self.word(FamilyKind::S, i)?;
            let c = c.scale(&sign(i.weight() as i64));
            for (j, b) in w.terms() {
                out.add_term(j.clone(), c.scale(b));
            }
        }
        Ok(out)
    }
}

/// `Σ_I c_I X^I` for a fixed family `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyCombination<C: Coeff = Q> {
    pub kind: FamilyKind,
    pub terms: BTreeMap<Composition, C>,
}

impl<C: Coeff> FamilyCombination<C> {
    pub fn new(kind: FamilyKind) -> Self {
        Self {
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: Composition, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i.clone()).or_insert_with(C::zero);
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Composition::weight).max().unwrap_or(0)
    }

    pub fn extend(&mut self, other: &FamilyCombination<C>) {
        assert_eq!(self.kind, other.kind, "combinations of different families");
        for (i, c) in &other.terms {
            self.add(i.clone(), c.clone());
        }
    }
}
