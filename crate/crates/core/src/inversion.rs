//! Inverse maps, Taylor expansions, D-Logs, formal flows and `C_m`, each
//! computed from an NSym coefficient table realized in the operator system
//! and checked against the fixed-point oracle.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::compositions::{enumerate, qb};
use crate::diffops::{apply_derivation, apply_with_table, OperatorSystem};
use crate::error::{Error, Result};
use crate::nsym::formulas::{bch_combination, taylor_combination, Direction, MAX_BCH_DEPTH};
use crate::nsym::{CmBasis, DLogBasis, ExpForm, FamilyCombination, FamilyKind, InversionTable};
use crate::rational::{format_q, qi, Coeff, Q, UPoly};
use crate::series::{field_to_json, forward_map, series_to_json, MapRole, MultiSeries, Poly, PolyMap};

/// Realizes the weight-`m` tables `combo(m)` for `m = 1..=order` on `v`,
/// sharing one word table.
fn realize_graded<C: Coeff>(
    sys: &OperatorSystem,
    kind: FamilyKind,
    order: usize,
    v: &[Poly<Q>],
    combo: impl Fn(usize) -> Result<FamilyCombination<C>>,
) -> Result<Vec<Vec<Poly<C>>>> {
    let table = sys.word_table(kind, order, v)?;
    (1..=order)
        .map(|m| {
            let c = combo(m)?;
            if c.kind != kind {
                return Err(Error::BadDimensions(format!("table in the {} basis, expected {kind}", c.kind)));
            }
            Ok(apply_with_table(&table, &c, v.len()))
        })
        .collect()
}

/// `z + Σ_m t^m slices[m−1]` as series.
fn assemble<C: Coeff>(n: usize, base: &[Poly<C>], slices: &[Vec<Poly<C>>]) -> Vec<MultiSeries<C>> {
    (0..n)
        .map(|i| {
            let mut parts = vec![base[i].clone()];
            parts.extend(slices.iter().map(|s| s[i].clone()));
            MultiSeries::from_slices(n, parts)
        })
        .collect()
}

fn first_mismatch(a: &[Vec<Poly<Q>>], b: &[Vec<Poly<Q>>]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|k| k + 1)
}

// ---------------------------------------------------------------------------
// Inversion

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InversionMethod {
    Lambda,
    Psi,
    #[serde(rename = "ci")]
    CI,
    Recurrent,
    Oracle,
}

impl InversionMethod {
    pub const FORMULAS: [InversionMethod; 4] = [Self::Lambda, Self::Psi, Self::CI, Self::Recurrent];

    pub fn label(self) -> &'static str {
        match self {
            Self::Lambda => "lambda",
            Self::Psi => "psi",
            Self::CI => "ci",
            Self::Recurrent => "recurrent",
            Self::Oracle => "oracle",
        }
    }
}

impl fmt::Display for InversionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InversionMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "lambda" => Ok(Self::Lambda),
            "psi" => Ok(Self::Psi),
            "ci" => Ok(Self::CI),
            "recurrent" => Ok(Self::Recurrent),
            "oracle" => Ok(Self::Oracle),
            other => Err(format!("unknown method `{other}` (expected lambda, psi, ci, recurrent or oracle)")),
        }
    }
}

/// `N_{[m]}`, `m = 1..=order`, from one method.
pub fn inverse_slices(sys: &OperatorSystem, method: InversionMethod) -> Result<Vec<Vec<Poly<Q>>>> {
    let order = sys.order();
    let z = sys.coordinates();
    match method {
        InversionMethod::Oracle => Ok((1..=order).map(|m| sys.n_field(m)).collect()),
        InversionMethod::Lambda => {
            realize_graded(sys, FamilyKind::Lambda, order, &z, |m| InversionTable::Lambda.combination(m))
        }
        InversionMethod::Psi => realize_graded(sys, FamilyKind::Psi, order, &z, |m| InversionTable::Psi.combination(m)),
        InversionMethod::CI => realize_graded(sys, FamilyKind::Psi, order, &z, |m| InversionTable::CI.combination(m)),
        InversionMethod::Recurrent => Ok(invert_recurrent(sys.field(), order)),
    }
}

/// `N_{[1]} = H`, `N_{[m]} = m/(m−1) Σ_{|I|=m, ℓ(I)≥2} 1/π_u(Ī) [N_{[i_1]}∂]⋯[N_{[i_{k−1}]}∂] N_{[i_k]}`.
pub fn invert_recurrent(h: &[Poly<Q>], order: usize) -> Vec<Vec<Poly<Q>>> {
    let n = h.len();
    let mut slices: Vec<Vec<Poly<Q>>> = Vec::with_capacity(order);
    if order == 0 {
        return slices;
    }
    slices.push(h.to_vec());
    for m in 2..=order {
        let mut acc: Vec<Poly<Q>> = vec![Poly::zero(); n];
        for i in enumerate(m).into_iter().filter(|i| i.len() >= 2) {
            let parts = i.parts();
            let mut v = slices[parts[parts.len() - 1] - 1].clone();
            for &k in parts[..parts.len() - 1].iter().rev() {
                let field = &slices[k - 1];
                v = v.iter().map(|p| apply_derivation(field, p)).collect();
            }
            let w = qb(&i.mirror().pi_u()).recip();
            for (a, p) in acc.iter_mut().zip(&v) {
                a.add_scaled(p, &w);
            }
        }
        let scale = qi(m as i64) / qi(m as i64 - 1);
        slices.push(acc.iter().map(|p| p.scale(&scale)).collect());
    }
    slices
}

#[derive(Debug, Clone, Serialize)]
pub struct InversionReport {
    pub method: InversionMethod,
    pub order: usize,
    /// `N_{[m]}` as a field, `m = 1..=order`.
    pub slices: Vec<Value>,
    pub agrees_with_oracle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<usize>,
    /// Wall time; not serialized so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub elapsed_ms: f64,
}

pub fn invert(sys: &OperatorSystem, method: InversionMethod) -> Result<InversionReport> {
    let start = Instant::now();
    let slices = inverse_slices(sys, method)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let oracle = inverse_slices(sys, InversionMethod::Oracle)?;
    let mismatch = first_mismatch(&slices, &oracle);
    Ok(InversionReport {
        method,
        order: sys.order(),
        slices: slices.iter().map(|s| field_to_json(s)).collect(),
        agrees_with_oracle: mismatch.is_none(),
        first_mismatch: mismatch,
        elapsed_ms,
    })
}

/// The inverse `G_t = z + Σ t^m N_{[m]}` assembled from one method.
pub fn inverse_map(sys: &OperatorSystem, method: InversionMethod) -> Result<PolyMap<Q>> {
    let slices = inverse_slices(sys, method)?;
    Ok(PolyMap::new(MapRole::Inverse, assemble(sys.n(), &sys.coordinates(), &slices)))
}

// ---------------------------------------------------------------------------
// Taylor expansions

/// `u(F_t)` (forward) or `u(G_t)` (backward) for a `t`-free `u`, in the
/// `λ` or `ψ` basis.
pub fn taylor_expansion(sys: &OperatorSystem, u: &Poly<Q>, direction: Direction, basis: FamilyKind) -> Result<MultiSeries<Q>> {
    let order = sys.order();
    let v = std::slice::from_ref(u);
    let slices = realize_graded(sys, basis, order, v, |m| taylor_combination(direction, basis, m))?;
    let mut parts = vec![u.clone()];
    parts.extend(slices.into_iter().map(|mut s| s.remove(0)));
    Ok(MultiSeries::from_slices(sys.n(), parts))
}

// ---------------------------------------------------------------------------
// D-Log

#[derive(Debug, Clone, Serialize)]
pub struct DLogResult {
    pub basis: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bch_depth: Option<usize>,
    pub order: usize,
    /// `a_t(z)`; the `t^0` slice is zero.
    #[serde(serialize_with = "serialize_components")]
    pub a_t: Vec<MultiSeries<Q>>,
}

fn serialize_components<S: serde::Serializer, C: Coeff>(
    comps: &[MultiSeries<C>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let n = comps.len();
    json!({"n": n, "components": comps.iter().map(series_to_json).collect::<Vec<_>>()}).serialize(s)
}

impl DLogResult {
    /// `A_m`, the field in the `t^m` slice.
    pub fn slice(&self, m: usize) -> Vec<Poly<Q>> {
        self.a_t.iter().map(|c| c.slice(m).clone()).collect()
    }
}

fn dlog_from_slices(n: usize, basis: String, bch_depth: Option<usize>, order: usize, slices: Vec<Vec<Poly<Q>>>) -> DLogResult {
    let zero = vec![Poly::zero(); n];
    DLogResult {
        basis,
        bch_depth,
        order,
        a_t: assemble(n, &zero, &slices),
    }
}

/// `a_t(z)` from one of the four basis tables.
pub fn dlog(sys: &OperatorSystem, basis: DLogBasis) -> Result<DLogResult> {
    let order = sys.order();
    let slices = realize_graded(sys, basis.kind(), order, &sys.coordinates(), |m| basis.combination(m))?;
    Ok(dlog_from_slices(sys.n(), basis.to_string(), None, order, slices))
}

/// `a_t(z) = −d(t) z` with `d(t)` from the simplex-integral formula; valid
/// up to `t`-order `min(order, r_max)`.
pub fn dlog_bch(sys: &OperatorSystem, r_max: usize) -> Result<DLogResult> {
    if r_max > MAX_BCH_DEPTH {
        return Err(Error::DepthTooLarge(r_max));
    }
    let order = sys.order();
    let slices = realize_graded(sys, FamilyKind::Psi, order, &sys.coordinates(), |m| bch_combination(m, r_max))?;
    let slices = slices
        .into_iter()
        .map(|s| s.into_iter().map(|p| p.neg()).collect())
        .collect();
    Ok(dlog_from_slices(sys.n(), "bch".into(), Some(r_max), order, slices))
}

/// `e^{d(t)} v` with `d(t) = −[a_t ∂/∂z]`, as a series up to the D-Log's order.
pub fn exp_of_dlog(d: &DLogResult, v: &Poly<Q>) -> MultiSeries<Q> {
    let n = d.a_t.len();
    let order = d.order;
    let fields: Vec<Vec<Poly<Q>>> = (0..=order).map(|m| d.slice(m)).collect();
    let mut total = vec![Poly::zero(); order + 1];
    total[0] = v.clone();
    // power[s] = [t^s] d(t)^r v / r!
    let mut power = total.clone();
    for r in 1..=order {
        let mut next = vec![Poly::<Q>::zero(); order + 1];
        for s in 0..order {
            if power[s].is_zero() {
                continue;
            }
            for k in 1..=(order - s) {
                let image = apply_derivation(&fields[k], &power[s]);
                next[s + k].sub_assign(&image);
            }
        }
        let inv = qi(r as i64).recip();
        for s in 0..=order {
            next[s] = next[s].scale(&inv);
            total[s].add_assign(&next[s]);
        }
        power = next;
    }
    MultiSeries::from_slices(n, total)
}

/// Checks `e^{d(t)} z_i = (G_t)_i` for every coordinate.
pub fn dlog_exp_matches_inverse(sys: &OperatorSystem, d: &DLogResult) -> bool {
    let g = sys.inverse();
    (0..sys.n()).all(|i| {
        let e = exp_of_dlog(d, &Poly::var(sys.n(), i));
        e.slices().iter().zip(g.components[i].slices()).all(|(a, b)| a == b)
    })
}

// ---------------------------------------------------------------------------
// Flow

/// The closed form used for `F_t(z, u) = 𝒮(e^{−uΦ(t)}) z` in each basis.
pub fn flow_form(basis: FamilyKind) -> ExpForm {
    match basis {
        FamilyKind::Phi => ExpForm::Phi,
        FamilyKind::Lambda => ExpForm::LambdaBinomial,
        FamilyKind::S => ExpForm::SBinomial,
        FamilyKind::Psi => ExpForm::PsiBinomial,
        FamilyKind::Xi => ExpForm::XiBinomial,
    }
}

#[derive(Debug, Clone)]
pub struct FlowResult {
    pub basis: FamilyKind,
    pub order: usize,
    /// `F_t(z, u)` with `Q[u]` coefficients.
    pub components: Vec<MultiSeries<UPoly>>,
}

impl FlowResult {
    /// `F_t(z, v)` for a rational `v`.
    pub fn at(&self, u: &Q) -> PolyMap<Q> {
        PolyMap::new(MapRole::Map, self.components.iter().map(|c| c.eval_u(u)).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.operator_name(),
            "order": self.order,
            "flow": {
                "n": self.components.len(),
                "components": self.components.iter().map(series_to_json).collect::<Vec<_>>(),
            },
        })
    }
}

pub fn flow(sys: &OperatorSystem, basis: FamilyKind) -> Result<FlowResult> {
    let order = sys.order();
    let form = flow_form(basis);
    let z = sys.coordinates();
    let slices = realize_graded(sys, basis, order, &z, |m| form.combination(m))?;
    let base: Vec<Poly<UPoly>> = z.iter().map(Poly::lift).collect();
    Ok(FlowResult {
        basis,
        order,
        components: assemble(sys.n(), &base, &slices),
    })
}

/// `F^k` for an integer `k`, by composition (`F^{−1} = G`).
pub fn composition_power(sys: &OperatorSystem, k: i64) -> Result<PolyMap<Q>> {
    let n = sys.n();
    let order = sys.order();
    let step = if k >= 0 {
        forward_map(sys.field(), order)
    } else {
        sys.inverse().clone()
    };
    let mut acc = PolyMap::identity(n, order);
    for _ in 0..k.unsigned_abs() {
        acc = acc.compose(&step)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowChecks {
    pub at_zero_is_identity: bool,
    pub at_one_is_map: bool,
    pub at_minus_one_is_inverse: bool,
    pub group_law_on_grid: bool,
    pub grid: Vec<String>,
    pub integer_powers: Vec<(i64, bool)>,
}

impl FlowChecks {
    pub fn all(&self) -> bool {
        self.at_zero_is_identity
            && self.at_one_is_map
            && self.at_minus_one_is_inverse
            && self.group_law_on_grid
            && self.integer_powers.iter().all(|(_, ok)| *ok)
    }
}

/// `order + 1` distinct rationals: `−1, −1/2, 0, 1/2, …`.
pub fn flow_grid(order: usize) -> Vec<Q> {
    (0..=order).map(|k| Q::new((k as i64 - 2).into(), 2.into())).collect()
}

pub fn check_flow(sys: &OperatorSystem, f: &FlowResult, powers: &[i64]) -> Result<FlowChecks> {
    let n = sys.n();
    let order = sys.order();
    let id = PolyMap::identity(n, order);
    let at_zero = f.at(&Q::zero()).components == id.components;
    let at_one = f.at(&Q::one()).components == forward_map(sys.field(), order).components;
    let at_minus_one = f.at(&-Q::one()).components == sys.inverse().components;
    let grid = flow_grid(order);
    let maps: Vec<PolyMap<Q>> = grid.iter().map(|u| f.at(u)).collect();
    let pairs: Vec<(usize, usize)> = (0..grid.len()).flat_map(|a| (0..grid.len()).map(move |b| (a, b))).collect();
    let results = sys.exec().map_ref(&pairs, |&(a, b)| -> Result<bool> {
        let lhs = maps[a].compose(&maps[b])?;
        let rhs = f.at(&(&grid[a] + &grid[b]));
        Ok(lhs.components == rhs.components)
    });
    let mut group = true;
    for r in results {
        group &= r?;
    }
    let mut integer_powers = Vec::new();
    for &k in powers {
        let p = composition_power(sys, k)?;
        integer_powers.push((k, f.at(&qi(k)).components == p.components));
    }
    Ok(FlowChecks {
        at_zero_is_identity: at_zero,
        at_one_is_map: at_one,
        at_minus_one_is_inverse: at_minus_one,
        group_law_on_grid: group,
        grid: grid.iter().map(format_q).collect(),
        integer_powers,
    })
}

// ---------------------------------------------------------------------------
// C_m

/// `C_m` realized from one basis table on `z`.
pub fn cm_via_basis(sys: &OperatorSystem, m: usize, basis: CmBasis) -> Result<Vec<Poly<Q>>> {
    let combo = basis.combination(m)?;
    let mut out = sys.apply_combination(&combo, &sys.coordinates())?;
    out.truncate(sys.n());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> OperatorSystem {
        let z = Poly::<Q>::var(1, 0);
        OperatorSystem::new(vec![z.mul(&z)], 5).unwrap()
    }

    #[test]
    fn catalan_by_every_method() {
        let sys = square();
        let z = Poly::<Q>::var(1, 0);
        let catalan = [1, 2, 5, 14, 42];
        for method in InversionMethod::FORMULAS {
            let r = invert(&sys, method).unwrap();
            assert!(r.agrees_with_oracle, "{method}");
            let slices = inverse_slices(&sys, method).unwrap();
            for (m, c) in catalan.iter().enumerate() {
                assert_eq!(slices[m][0], z.pow(1, m + 2).scale(&qi(*c)));
            }
        }
    }

    #[test]
    fn dlog_bases_agree_and_exponentiate() {
        let sys = square();
        let d0 = dlog(&sys, DLogBasis::Lambda).unwrap();
        let minus_h: Vec<Poly<Q>> = sys.field().iter().map(|p| p.neg()).collect();
        assert_eq!(d0.slice(1), minus_h);
        for b in DLogBasis::ALL {
            let d = dlog(&sys, b).unwrap();
            assert_eq!(d.a_t, d0.a_t, "{b}");
        }
        assert!(dlog_exp_matches_inverse(&sys, &d0));
        let bch = dlog_bch(&sys, 3).unwrap();
        for m in 1..=3 {
            assert_eq!(bch.slice(m), d0.slice(m));
        }
    }

    #[test]
    fn flow_in_every_basis() {
        let sys = square();
        let f0 = flow(&sys, FamilyKind::Phi).unwrap();
        for b in FamilyKind::ALL {
            assert_eq!(flow(&sys, b).unwrap().components, f0.components, "{b}");
        }
        let checks = check_flow(&sys, &f0, &[-2, 2]).unwrap();
        assert!(checks.all(), "{checks:?}");
    }

    #[test]
    fn taylor_forward_square() {
        let sys = square();
        let z = Poly::<Q>::var(1, 0);
        let u = z.mul(&z);
        let s = taylor_expansion(&sys, &u, Direction::Forward, FamilyKind::Lambda).unwrap();
        assert_eq!(s.slice(1), &z.pow(1, 3).scale(&qi(-2)));
        assert_eq!(s.slice(2), &z.pow(1, 4));
        assert!(s.slice(3).is_zero());
    }

    #[test]
    fn cm_bases() {
        let sys = square();
        for b in CmBasis::ALL {
            for m in 1..=4 {
                assert_eq!(cm_via_basis(&sys, m, b).unwrap(), sys.c_field(m).to_vec(), "{b} {m}");
            }
        }
    }
}
