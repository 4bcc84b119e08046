//! Coefficient tables `Σ_I c_I X^I` for the exponential, D-Log, BCH, `C_m`,
//! inversion and Taylor formulas.
//!
//! The same tables drive both the NSym checks here and the operator
//! realizations in `inversion`, where `X^I` becomes a product of operators.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use super::element::NSymElement;
use super::families::{exp, FamilyCombination, FamilyKind, FamilyTable};
use crate::compositions::{
    c_single, coarsenings, enumerate, qb, relative_stats, Composition, RelativeStats,
};
use crate::error::{Error, Result};
use crate::rational::{factorial, q_big, qi, sign, Coeff, Q, UPoly};

fn rel(fine: &Composition, coarse: &Composition) -> Result<RelativeStats> {
    relative_stats(fine, coarse)
}

fn fact(n: usize) -> Q {
    q_big(factorial(n))
}

/// Builds `Σ_{|I|=m} c_I X^I`.
fn combination<C: Coeff>(
    kind: FamilyKind,
    m: usize,
    coeff: impl Fn(&Composition) -> Result<C>,
) -> Result<FamilyCombination<C>> {
    let mut out = FamilyCombination::new(kind);
    for i in enumerate(m) {
        let c = coeff(&i)?;
        out.add(i, c);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// e^{−uΦ(t)}

/// The nine expansions of the `t^m` coefficient of `e^{−uΦ(t)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExpForm {
    /// `(−u)^{ℓ(I)}/sp(I) Φ^I`.
    Phi,
    /// Refinement sums in each basis.
    LambdaSum,
    SSum,
    PsiSum,
    XiSum,
    /// Binomial closed forms.
    LambdaBinomial,
    SBinomial,
    PsiBinomial,
    XiBinomial,
}

impl ExpForm {
    pub const ALL: [ExpForm; 9] = [
        Self::Phi,
        Self::LambdaSum,
        Self::SSum,
        Self::PsiSum,
        Self::XiSum,
        Self::LambdaBinomial,
        Self::SBinomial,
        Self::PsiBinomial,
        Self::XiBinomial,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::LambdaSum => "lambda-sum",
            Self::SSum => "s-sum",
            Self::PsiSum => "psi-sum",
            Self::XiSum => "xi-sum",
            Self::LambdaBinomial => "lambda-binomial",
            Self::SBinomial => "s-binomial",
            Self::PsiBinomial => "psi-binomial",
            Self::XiBinomial => "xi-binomial",
        }
    }

    pub fn kind(self) -> FamilyKind {
        match self {
            Self::Phi => FamilyKind::Phi,
            Self::LambdaSum | Self::LambdaBinomial => FamilyKind::Lambda,
            Self::SSum | Self::SBinomial => FamilyKind::S,
            Self::PsiSum | Self::PsiBinomial => FamilyKind::Psi,
            Self::XiSum | Self::XiBinomial => FamilyKind::Xi,
        }
    }

    /// Coefficient of `X^I` as a polynomial in `u`.
    pub fn coefficient(self, i: &Composition) -> Result<UPoly> {
        let li = i.len();
        let wi = i.weight() as i64;
        let mut acc = UPoly::zero();
        match self {
            Self::Phi => {
                let c = sign(li as i64) / qb(&i.sp());
                acc = UPoly::monomial(c, li);
            }
            Self::LambdaSum | Self::SSum => {
                for j in coarsenings(i) {
                    let r = rel(i, &j)?;
                    let lj = j.len();
                    let s = if self == Self::LambdaSum { sign(lj as i64) } else { Q::one() };
                    acc.add_assign_ref(&UPoly::monomial(s / (fact(lj) * qb(&r.length)), lj));
                }
                let outer = if self == Self::LambdaSum { sign(wi - li as i64) } else { sign(li as i64) };
                acc = acc.scale(&outer);
            }
            Self::PsiSum | Self::XiSum => {
                for k in coarsenings(i) {
                    let rik = rel(i, &k)?;
                    let p = if self == Self::PsiSum { rik.pi_u } else { rik.pi_u_mirror };
                    let outer = sign(k.len() as i64) / qb(&p);
                    for j in coarsenings(&k) {
                        let rkj = rel(&k, &j)?;
                        let lj = j.len();
                        let c = &outer / (qb(&rkj.length) * fact(lj));
                        acc.add_assign_ref(&UPoly::monomial(c, lj));
                    }
                }
            }
            Self::LambdaBinomial => acc = UPoly::binom_u(li).scale(&sign(wi)),
            Self::SBinomial => acc = UPoly::binom_neg_u(li),
            Self::PsiBinomial => {
                for j in coarsenings(i) {
                    let r = rel(i, &j)?;
                    acc.add_assign_ref(&UPoly::binom_neg_u(j.len()).scale(&qb(&r.pi_u).recip()));
                }
            }
            Self::XiBinomial => {
                // τ applied to the Ψ form: the denominator is π_u(I, J), not
                // its mirrored counterpart.
                for j in coarsenings(i) {
                    let r = rel(i, &j)?;
                    acc.add_assign_ref(&UPoly::binom_u(j.len()).scale(&qb(&r.pi_u).recip()));
                }
                acc = acc.scale(&sign(li as i64));
            }
        }
        Ok(acc)
    }

    pub fn combination(self, m: usize) -> Result<FamilyCombination<UPoly>> {
        combination(self.kind(), m, |i| self.coefficient(i))
    }
}

/// The `Ξ` binomial form with `π_u(Ī, J̄)` in the denominator. It agrees
/// through weight 2 and fails from weight 3 on; kept for the tests.
pub fn xi_binomial_mirrored_coefficient(i: &Composition) -> Result<UPoly> {
    let mut acc = UPoly::zero();
    for j in coarsenings(i) {
        let r = rel(i, &j)?;
        acc.add_assign_ref(&UPoly::binom_u(j.len()).scale(&qb(&r.pi_u_mirror).recip()));
    }
    Ok(acc.scale(&sign(i.len() as i64)))
}

/// `e^{−uΦ(t)}` by exponentiating `−u Σ t^m Φ_m / m`; entry `m` is the
/// `t^m` coefficient.
pub fn exp_phi_direct(table: &FamilyTable) -> Vec<NSymElement<UPoly>> {
    let cap = table.cap();
    let mut x = NSymElement::<UPoly>::zero(cap);
    let minus_u = UPoly::u().neg_ref();
    for m in 1..=cap {
        let phi = table.member(FamilyKind::Phi, m).lift();
        x.add_assign_scaled(&phi, &minus_u.scale(&qi(m as i64).recip()));
    }
    let e = exp(&x);
    (0..=cap).map(|m| e.homogeneous(m)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FormAgreement {
    pub form: &'static str,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_bad_weight: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ExpPhiSeries {
    /// `t^m` coefficients, `m = 0..=N`.
    pub slices: Vec<NSymElement<UPoly>>,
    pub forms: Vec<FormAgreement>,
}

impl ExpPhiSeries {
    pub fn all_agree(&self) -> bool {
        self.forms.iter().all(|f| f.agrees)
    }

    pub fn eval(&self, u: &Q) -> Vec<NSymElement<Q>> {
        self.slices.iter().map(|s| s.eval_u(u)).collect()
    }
}

/// Direct exponential plus an agreement report against every closed form.
pub fn exp_phi_series(table: &FamilyTable) -> Result<ExpPhiSeries> {
    let slices = exp_phi_direct(table);
    let mut forms = Vec::new();
    for form in ExpForm::ALL {
        let mut bad = None;
        for (m, slice) in slices.iter().enumerate().skip(1) {
            let value = table.expand(&form.combination(m)?)?;
            if &value != slice {
                bad = Some(m);
                break;
            }
        }
        forms.push(FormAgreement {
            form: form.label(),
            agrees: bad.is_none(),
            first_bad_weight: bad,
        });
    }
    Ok(ExpPhiSeries { slices, forms })
}

/// `e^{−u₁Φ} e^{−u₂Φ} = e^{−(u₁+u₂)Φ}` on the grid `values × values`.
pub fn exp_phi_group_law(series: &ExpPhiSeries, values: &[Q]) -> bool {
    let cap = series.slices.len() - 1;
    let total = |u: &Q| -> NSymElement<Q> {
        let mut e = NSymElement::zero(cap);
        for s in series.eval(u) {
            e.add_assign_scaled(&s, &Q::one());
        }
        e
    };
    values.iter().all(|a| {
        values.iter().all(|b| {
            let lhs = total(a).mul(&total(b)).expect("same cap");
            lhs == total(&(a + b))
        })
    })
}

/// Both sides of `Σ_{I≽J} (−1)^{ℓ(J)} u^{ℓ(J)} / (ℓ(J)! ℓ(I,J)) = (−1)^{ℓ(I)} binom(u, ℓ(I))`.
pub fn binomial_identity_sides(i: &Composition) -> Result<(UPoly, UPoly)> {
    if i.is_empty() {
        return Err(Error::EmptyComposition);
    }
    let mut lhs = UPoly::zero();
    for j in coarsenings(i) {
        let r = rel(i, &j)?;
        let lj = j.len();
        lhs.add_assign_ref(&UPoly::monomial(sign(lj as i64) / (fact(lj) * qb(&r.length)), lj));
    }
    let rhs = UPoly::binom_u(i.len()).scale(&sign(i.len() as i64));
    Ok((lhs, rhs))
}

pub fn binomial_identity_check(i: &Composition) -> Result<bool> {
    let (lhs, rhs) = binomial_identity_sides(i)?;
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// D-Log

/// Bases in which `a_t(z)` is expanded; each weight-`m` table sums to
/// `−Φ_m/m` in NSym.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DLogBasis {
    Lambda,
    S,
    Psi,
    Xi,
}

impl DLogBasis {
    pub const ALL: [DLogBasis; 4] = [Self::Lambda, Self::S, Self::Psi, Self::Xi];

    pub fn kind(self) -> FamilyKind {
        match self {
            Self::Lambda => FamilyKind::Lambda,
            Self::S => FamilyKind::S,
            Self::Psi => FamilyKind::Psi,
            Self::Xi => FamilyKind::Xi,
        }
    }

    pub fn coefficient(self, i: &Composition) -> Result<Q> {
        let li = i.len() as i64;
        let inv_len = qi(li).recip();
        Ok(match self {
            Self::Lambda => sign(li - i.weight() as i64 + 1) * inv_len,
            Self::S => sign(li) * inv_len,
            Self::Psi | Self::Xi => {
                // The sign is (−1)^{ℓ(J)} inside the sum for both bases.
                let mut acc = Q::zero();
                for j in coarsenings(i) {
                    let r = rel(i, &j)?;
                    let p = if self == Self::Psi { r.pi_u } else { r.pi_u_mirror };
                    acc += sign(j.len() as i64) / (qb(&p) * qi(j.len() as i64));
                }
                acc
            }
        })
    }

    pub fn combination(self, m: usize) -> Result<FamilyCombination> {
        combination(self.kind(), m, |i| self.coefficient(i))
    }
}

impl fmt::Display for DLogBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().operator_name())
    }
}

impl FromStr for DLogBasis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.parse::<FamilyKind>()? {
            FamilyKind::Lambda => Ok(Self::Lambda),
            FamilyKind::S => Ok(Self::S),
            FamilyKind::Psi => Ok(Self::Psi),
            FamilyKind::Xi => Ok(Self::Xi),
            FamilyKind::Phi => Err("the D-Log has no phi-basis table".into()),
        }
    }
}

/// The `ψ`-table with the overall sign `(−1)^{ℓ(I)}` outside the sum over
/// coarsenings. Kept to document that this reading does not sum to
/// `−Φ_m/m`.
pub fn dlog_psi_outer_sign_coefficient(i: &Composition) -> Result<Q> {
    let mut acc = Q::zero();
    for j in coarsenings(i) {
        let r = rel(i, &j)?;
        acc += (qb(&r.pi_u) * qi(j.len() as i64)).recip();
    }
    Ok(acc * sign(i.len() as i64))
}

// ---------------------------------------------------------------------------
// Continuous BCH

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(r), &mut vec![false; r], &mut out);
    out
}

pub fn descents(sigma: &[usize]) -> usize {
    sigma.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Weight `(−1)^{d(σ)} / (r · binom(r−1, d(σ)))` of a permutation.
pub fn permutation_weight(sigma: &[usize]) -> Q {
    let r = sigma.len();
    let d = descents(sigma);
    sign(d as i64) / (qi(r as i64) * q_big(crate::rational::binomial(r - 1, d)))
}

pub const MAX_BCH_DEPTH: usize = 6;

/// `t^m` coefficient of `d(t)` from the simplex-integral formula, keeping
/// the summands `r ≤ r_max`, written in `Ψ`-words.
pub fn bch_combination(m: usize, r_max: usize) -> Result<FamilyCombination> {
    if r_max > MAX_BCH_DEPTH {
        return Err(Error::DepthTooLarge(r_max));
    }
    let mut out = FamilyCombination::new(FamilyKind::Psi);
    for r in 1..=r_max.min(m) {
        let perms: Vec<(Vec<usize>, Q)> = permutations(r)
            .into_iter()
            .map(|s| {
                let w = permutation_weight(&s);
                (s, w)
            })
            .collect();
        for k in enumerate(m).into_iter().filter(|k| k.len() == r) {
            // ∫ over t ≥ t₁ ≥ … ≥ t_r of ∏ t_j^{k_j−1} = t^{|k|} / ∏_j (k_j + … + k_r).
            let integral = qb(&k.mirror().pi_u()).recip();
            let parts = k.parts();
            for (sigma, w) in &perms {
                // h(t_{σ(r)}) ⋯ h(t_{σ(1)})
                let word: Vec<usize> = sigma.iter().rev().map(|&s| parts[s]).collect();
                out.add(Composition::new(word), w * &integral);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// C_m

/// Bases for the iterated field `C_m`; each weight-`m` table sums to `Ψ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CmBasis {
    Lambda,
    S,
    Phi,
    Psi,
    Xi,
}

impl CmBasis {
    pub const ALL: [CmBasis; 5] = [Self::Lambda, Self::S, Self::Phi, Self::Psi, Self::Xi];

    pub fn kind(self) -> FamilyKind {
        match self {
            Self::Lambda => FamilyKind::Lambda,
            Self::S => FamilyKind::S,
            Self::Phi => FamilyKind::Phi,
            Self::Psi => FamilyKind::Psi,
            Self::Xi => FamilyKind::Xi,
        }
    }

    pub fn coefficient(self, i: &Composition) -> Result<Q> {
        let m = i.weight() as i64;
        let li = i.len() as i64;
        Ok(match self {
            Self::Lambda => sign(m + li) * qi(i.first().ok_or(Error::EmptyComposition)? as i64),
            Self::S => -sign(li) * qi(i.last().ok_or(Error::EmptyComposition)? as i64),
            Self::Phi => {
                let mut acc = Q::zero();
                for j in coarsenings(i) {
                    let r = rel(i, &j)?;
                    let lp = j.last().ok_or(Error::EmptyComposition)?;
                    acc += sign(j.len() as i64) * qi(lp as i64) / qb(&r.sp);
                }
                -acc
            }
            Self::Psi => {
                if li == 1 {
                    Q::one()
                } else {
                    Q::zero()
                }
            }
            Self::Xi => {
                let mut acc = Q::zero();
                for j in coarsenings(i) {
                    let r = rel(i, &j)?;
                    let lp = j.last().ok_or(Error::EmptyComposition)?;
                    acc += sign(j.len() as i64 - 1) * qi(lp as i64) / qb(&r.pi_u_mirror);
                }
                acc
            }
        })
    }

    pub fn combination(self, m: usize) -> Result<FamilyCombination> {
        combination(self.kind(), m, |i| self.coefficient(i))
    }
}

impl fmt::Display for CmBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().operator_name())
    }
}

impl FromStr for CmBasis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.parse::<FamilyKind>()? {
            FamilyKind::Lambda => Self::Lambda,
            FamilyKind::S => Self::S,
            FamilyKind::Phi => Self::Phi,
            FamilyKind::Psi => Self::Psi,
            FamilyKind::Xi => Self::Xi,
        })
    }
}

// ---------------------------------------------------------------------------
// Inversion and Taylor tables

/// Word tables whose realization on `z` yields the inverse-map slice
/// `N_{[m]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InversionTable {
    /// `(−1)^m Σ (−1)^{ℓ(I)} λ^I`, equal to `S_m`.
    Lambda,
    /// `Σ ψ^I / π_u(I)`, equal to `S_m`.
    Psi,
    /// `Σ c_I ψ^I`, equal to `Ξ_m`.
    CI,
}

impl InversionTable {
    pub fn kind(self) -> FamilyKind {
        match self {
            Self::Lambda => FamilyKind::Lambda,
            Self::Psi | Self::CI => FamilyKind::Psi,
        }
    }

    /// The family member the table sums to in NSym.
    pub fn target(self) -> FamilyKind {
        match self {
            Self::Lambda | Self::Psi => FamilyKind::S,
            Self::CI => FamilyKind::Xi,
        }
    }

    pub fn coefficient(self, i: &Composition) -> Result<Q> {
        Ok(match self {
            Self::Lambda => sign((i.weight() + i.len()) as i64),
            Self::Psi => qb(&i.pi_u()).recip(),
            Self::CI => c_single(i)?,
        })
    }

    pub fn combination(self, m: usize) -> Result<FamilyCombination> {
        combination(self.kind(), m, |i| self.coefficient(i))
    }
}

/// `Σ_{|I|=m} (−1)^{ℓ(I)} / π_u(Ī) Ψ^I`, equal to `(−1)^m Λ_m`.
pub fn lambda_via_psi_combination(m: usize) -> Result<FamilyCombination> {
    combination(FamilyKind::Psi, m, |i| Ok(sign(i.len() as i64) / qb(&i.mirror().pi_u())))
}

/// Which side of `u(F_t)` / `u(G_t)` a Taylor table expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// `t^m` operator table for `u(F_t)` (forward) or `u(G_t)` (backward).
pub fn taylor_combination(direction: Direction, kind: FamilyKind, m: usize) -> Result<FamilyCombination> {
    match (direction, kind) {
        (Direction::Forward, FamilyKind::Lambda) => {
            let mut c = FamilyCombination::new(FamilyKind::Lambda);
            c.add(Composition::single(m), sign(m as i64));
            Ok(c)
        }
        (Direction::Forward, FamilyKind::Psi) => lambda_via_psi_combination(m),
        (Direction::Backward, FamilyKind::Lambda) => InversionTable::Lambda.combination(m),
        (Direction::Backward, FamilyKind::Psi) => InversionTable::Psi.combination(m),
        (_, other) => Err(Error::BadDimensions(format!(
            "no Taylor table in the {other} basis (expected lambda or psi)"
        ))),
    }
}

/// NSym check of the weight-`m` tables above against their targets.
#[derive(Debug, Clone, Serialize)]
pub struct TableCheck {
    pub table: String,
    pub m: usize,
    pub holds: bool,
}

/// Checks every table in this module up to the table's cap.
pub fn check_all_tables(table: &FamilyTable, bch_depth: usize) -> Result<Vec<TableCheck>> {
    let n = table.cap();
    let mut out = Vec::new();
    let mut push = |name: String, m: usize, combo: FamilyCombination, target: NSymElement<Q>| -> Result<()> {
        let holds = table.expand(&combo)? == target;
        out.push(TableCheck { table: name, m, holds });
        Ok(())
    };
    for m in 1..=n {
        let phi_m = table.member(FamilyKind::Phi, m);
        let dlog_target = phi_m.scale(&qi(-(m as i64)).recip());
        for b in DLogBasis::ALL {
            push(format!("dlog-{b}"), m, b.combination(m)?, dlog_target.clone())?;
        }
        for b in CmBasis::ALL {
            push(format!("cm-{b}"), m, b.combination(m)?, table.member(FamilyKind::Psi, m).clone())?;
        }
        for t in [InversionTable::Lambda, InversionTable::Psi, InversionTable::CI] {
            let name = format!("inverse-{}", serde_json::to_value(t).unwrap().as_str().unwrap());
            push(name, m, t.combination(m)?, table.member(t.target(), m).clone())?;
        }
        let lambda_m = NSymElement::generator(m, n).scale(&sign(m as i64));
        push("lambda-via-psi".into(), m, lambda_via_psi_combination(m)?, lambda_m)?;
        if m <= bch_depth {
            push("bch".into(), m, bch_combination(m, bch_depth)?, phi_m.scale(&qi(m as i64).recip()))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::rational::q;

    #[test]
    fn exp_forms_agree_with_direct_exponential() {
        let table = FamilyTable::new(5);
        let s = exp_phi_series(&table).unwrap();
        assert!(s.all_agree(), "{:?}", s.forms);
        let one = s.eval(&Q::one());
        let minus = s.eval(&qi(-1));
        for m in 1..=5 {
            assert_eq!(one[m], NSymElement::generator(m, 5).scale(&sign(m as i64)));
            assert_eq!(minus[m], *table.member(FamilyKind::S, m));
        }
        assert!(exp_phi_group_law(&s, &[qi(0), qi(1), q(-1, 2)]));
    }

    #[test]
    fn mirrored_xi_binomial_form_fails_at_weight_three() {
        let table = FamilyTable::new(3);
        let direct = exp_phi_direct(&table);
        for (m, slice) in direct.iter().enumerate().skip(1) {
            let combo = combination(FamilyKind::Xi, m, xi_binomial_mirrored_coefficient).unwrap();
            assert_eq!(&table.expand(&combo).unwrap() == slice, m < 3);
        }
    }

    #[test]
    fn binomial_corollary() {
        for i in crate::compositions::enumerate_up_to(6).into_iter().filter(|i| !i.is_empty()) {
            assert!(binomial_identity_check(&i).unwrap(), "{i}");
        }
        let (lhs, _) = binomial_identity_sides(&comp![1, 1]).unwrap();
        assert_eq!(lhs, UPoly::binom_u(2));
        assert!(binomial_identity_sides(&Composition::empty()).is_err());
    }

    #[test]
    fn tables_sum_to_their_targets() {
        let table = FamilyTable::new(5);
        for c in check_all_tables(&table, 4).unwrap() {
            assert!(c.holds, "{} fails at m = {}", c.table, c.m);
        }
    }

    #[test]
    fn outer_sign_psi_dlog_table_is_wrong_at_weight_two() {
        let table = FamilyTable::new(2);
        let combo = combination(FamilyKind::Psi, 2, dlog_psi_outer_sign_coefficient).unwrap();
        let target = table.member(FamilyKind::Phi, 2).scale(&q(-1, 2));
        assert_ne!(table.expand(&combo).unwrap(), target);
    }

    #[test]
    fn descent_weights_for_two_letters() {
        assert_eq!(permutation_weight(&[0, 1]), q(1, 2));
        assert_eq!(permutation_weight(&[1, 0]), q(-1, 2));
        assert_eq!(permutations(4).len(), 24);
        assert!(matches!(bch_combination(3, 7), Err(Error::DepthTooLarge(7))));
    }
}
