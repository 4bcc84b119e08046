use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::monomial::Monomial;
use super::multiseries::MultiSeries;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::{Coeff, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapRole {
    /// `F_t = z − tH`.
    Map,
    /// `G_t = F_t^{-1}`.
    Inverse,
    /// A `t`-free vector field such as `H`.
    Field,
    /// `N_t` or any other correction term.
    Correction,
}

/// An `n`-tuple of series.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap<C: Coeff = Q> {
    pub role: MapRole,
    pub components: Vec<MultiSeries<C>>,
}

impl<C: Coeff> PolyMap<C> {
    pub fn new(role: MapRole, components: Vec<MultiSeries<C>>) -> Self {
        Self { role, components }
    }

    /// `t`-free field from polynomial components.
    pub fn field(h: Vec<Poly<C>>) -> Self {
        let n = h.len();
        Self {
            role: MapRole::Field,
            components: h.into_iter().map(|p| MultiSeries::from_poly(n, 0, p)).collect(),
        }
    }

    pub fn identity(n: usize, t_cap: usize) -> Self {
        Self {
            role: MapRole::Map,
            components: (0..n).map(|i| MultiSeries::var(n, t_cap, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn t_cap(&self) -> usize {
        self.components.first().map_or(0, MultiSeries::t_cap)
    }

    /// The `t^s` slice of every component.
    pub fn slice(&self, s: usize) -> Vec<Poly<C>> {
        self.components.iter().map(|c| c.slice(s).clone()).collect()
    }

    /// Components of a field; errors if any has `t`-dependence.
    pub fn field_polys(&self) -> Result<Vec<Poly<C>>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| match c.t_degree() {
                Some(s) if s > 0 => Err(Error::FieldDependsOnT {
                    component: i,
                    tpow: s,
                }),
                _ => Ok(c.slice(0).clone()),
            })
            .collect()
    }

    /// `self ∘ inner`: each component composed with `inner`.
    pub fn compose(&self, inner: &PolyMap<C>) -> Result<PolyMap<C>> {
        let components = self
            .components
            .iter()
            .map(|c| c.compose(&inner.components))
            .collect::<Result<_>>()?;
        Ok(PolyMap::new(self.role, components))
    }

    /// JSON wire form `{"n", "components": [[{"coeff","tpow","exps"}]]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "components": self.components.iter().map(series_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value, role: MapRole) -> Result<Self> {
        let bad = |msg: &str| Error::BadDimensions(msg.to_string());
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field `n`"))? as usize;
        let comps = value
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field `components`"))?;
        if comps.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: comps.len(),
            });
        }
        let parsed = comps
            .iter()
            .map(|c| series_terms_from_json(c, n))
            .collect::<Result<Vec<_>>>()?;
        let t_cap = parsed
            .iter()
            .flatten()
            .map(|(s, _, _)| *s)
            .max()
            .unwrap_or(0);
        let components = parsed
            .into_iter()
            .map(|terms| {
                let mut series = MultiSeries::zero(n, t_cap);
                for (s, m, c) in terms {
                    series.slice_mut(s).add_term(m, c);
                }
                series
            })
            .collect();
        Ok(Self { role, components })
    }
}

pub fn series_to_json<C: Coeff>(s: &MultiSeries<C>) -> Value {
    let mut terms = Vec::new();
    for (tpow, p) in s.slices().iter().enumerate() {
        for (m, c) in p.terms() {
            terms.push(json!({"coeff": c.to_json(), "tpow": tpow, "exps": m.exps()}));
        }
    }
    Value::Array(terms)
}

fn series_terms_from_json<C: Coeff>(value: &Value, n: usize) -> Result<Vec<(usize, Monomial, C)>> {
    let bad = |msg: String| Error::BadDimensions(msg);
    let terms = value
        .as_array()
        .ok_or_else(|| bad("each component must be an array of terms".into()))?;
    terms
        .iter()
        .map(|t| {
            let coeff = C::from_json(t.get("coeff").ok_or_else(|| bad("term without `coeff`".into()))?)?;
            let tpow = match t.get("tpow") {
                None | Some(Value::Null) => 0,
                Some(v) => v.as_u64().ok_or_else(|| bad(format!("bad `tpow` {v}")))? as usize,
            };
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without `exps` array".into()))?
                .iter()
                .map(|e| e.as_u64().ok_or_else(|| bad(format!("bad exponent {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: exps.len(),
                });
            }
            Ok((tpow, Monomial::try_from_u64(&exps)?, coeff))
        })
        .collect()
}

/// `F_t = z − tH`.
pub fn forward_map(h: &[Poly<Q>], t_cap: usize) -> PolyMap<Q> {
    let n = h.len();
    let components = h
        .iter()
        .enumerate()
        .map(|(i, hi)| {
            let mut s = MultiSeries::var(n, t_cap, i);
            if t_cap >= 1 {
                *s.slice_mut(1) = hi.neg();
            }
            s
        })
        .collect();
    PolyMap::new(MapRole::Map, components)
}

/// Fixed-point inverse `G ← z + tH(G)`; each pass fixes one more `t`-order.
pub fn invert_oracle(h: &[Poly<Q>], t_cap: usize) -> PolyMap<Q> {
    let n = h.len();
    let fields: Vec<MultiSeries<Q>> = h
        .iter()
        .map(|p| MultiSeries::from_poly(n, t_cap, p.clone()))
        .collect();
    let mut g = PolyMap::identity(n, t_cap);
    for _ in 0..t_cap {
        let next = fields
            .iter()
            .enumerate()
            .map(|(i, hi)| {
                let hg = hi.compose(&g.components).expect("G is a contraction of z");
                let mut gi = hg.shift_t(1);
                gi.slice_mut(0).add_assign(&Poly::var(n, i));
                gi
            })
            .collect();
        g.components = next;
    }
    g.role = MapRole::Inverse;
    g
}

/// Parses a field `H` from the wire form, rejecting `t`-dependence.
pub fn parse_field(value: &Value) -> Result<Vec<Poly<Q>>> {
    PolyMap::<Q>::from_json(value, MapRole::Field)?.field_polys()
}

pub fn field_to_json(h: &[Poly<Q>]) -> Value {
    PolyMap::field(h.to_vec()).to_json()
}
