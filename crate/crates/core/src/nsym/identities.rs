//! The change-of-basis identities between the five families.
//!
//! Each identity writes a word `B^I` of one family as a combination of words
//! of another family `A`. It is named `A-B` and checked by expanding both
//! sides in the `Λ`-word basis.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;
use serde_json::Value;

use super::families::{FamilyCombination, FamilyKind, FamilyTable};
use crate::compositions::{
    c_coefficient, enumerate_up_to, qb, refinements, relative_stats, Composition, RelativeStats,
};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::{sign, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    LambdaS,
    SLambda,
    PsiLambda,
    LambdaPsi,
    PsiS,
    SPsi,
    PhiLambda,
    LambdaPhi,
    PhiS,
    SPhi,
    PsiPhi,
    PhiPsi,
    XiLambda,
    LambdaXi,
    XiS,
    SXi,
    XiPhi,
    PhiXi,
    PsiXi,
    XiPsi,
    XiPsi2,
}

use FamilyKind::{Lambda, Phi, Psi, Xi, S};

impl IdentityId {
    pub const ALL: [IdentityId; 21] = [
        Self::LambdaS,
        Self::SLambda,
        Self::PsiLambda,
        Self::LambdaPsi,
        Self::PsiS,
        Self::SPsi,
        Self::PhiLambda,
        Self::LambdaPhi,
        Self::PhiS,
        Self::SPhi,
        Self::PsiPhi,
        Self::PhiPsi,
        Self::XiLambda,
        Self::LambdaXi,
        Self::XiS,
        Self::SXi,
        Self::XiPhi,
        Self::PhiXi,
        Self::PsiXi,
        Self::XiPsi,
        Self::XiPsi2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::LambdaS => "Lambda-S",
            Self::SLambda => "S-Lambda",
            Self::PsiLambda => "Psi-Lambda",
            Self::LambdaPsi => "Lambda-Psi",
            Self::PsiS => "Psi-S",
            Self::SPsi => "S-Psi",
            Self::PhiLambda => "Phi-Lambda",
            Self::LambdaPhi => "Lambda-Phi",
            Self::PhiS => "Phi-S",
            Self::SPhi => "S-Phi",
            Self::PsiPhi => "Psi-Phi",
            Self::PhiPsi => "Phi-Psi",
            Self::XiLambda => "Xi-Lambda",
            Self::LambdaXi => "Lambda-Xi",
            Self::XiS => "Xi-S",
            Self::SXi => "S-Xi",
            Self::XiPhi => "Xi-Phi",
            Self::PhiXi => "Phi-Xi",
            Self::PsiXi => "Psi-Xi",
            Self::XiPsi => "Xi-Psi",
            Self::XiPsi2 => "Xi-Psi-2",
        }
    }

    /// Family whose words appear on the expanded side.
    pub fn source(self) -> FamilyKind {
        match self {
            Self::LambdaS | Self::LambdaPsi | Self::LambdaPhi | Self::LambdaXi => Lambda,
            Self::SLambda | Self::SPsi | Self::SPhi | Self::SXi => S,
            Self::PsiLambda | Self::PsiS | Self::PsiPhi | Self::PsiXi => Psi,
            Self::PhiLambda | Self::PhiS | Self::PhiPsi | Self::PhiXi => Phi,
            Self::XiLambda | Self::XiS | Self::XiPhi | Self::XiPsi | Self::XiPsi2 => Xi,
        }
    }

    /// Family of the single word `B^I` being expanded.
    pub fn target(self) -> FamilyKind {
        match self {
            Self::SLambda | Self::PsiLambda | Self::PhiLambda | Self::XiLambda => Lambda,
            Self::LambdaS | Self::PsiS | Self::PhiS | Self::XiS => S,
            Self::LambdaPsi | Self::SPsi | Self::PhiPsi | Self::XiPsi | Self::XiPsi2 => Psi,
            Self::LambdaPhi | Self::SPhi | Self::PsiPhi | Self::XiPhi => Phi,
            Self::LambdaXi | Self::SXi | Self::PhiXi | Self::PsiXi => Xi,
        }
    }

    /// Right-hand side for the word `B^I`, as a combination of `A`-words.
    pub fn expansion(self, i: &Composition) -> Result<FamilyCombination> {
        let mut out = FamilyCombination::new(self.source());
        let li = i.len() as i64;
        let wi = i.weight() as i64;
        let pi_i = qb(&i.pi());
        let single = |j: &Composition| -> Result<RelativeStats> { relative_stats(j, i) };
        match self {
            Self::LambdaS | Self::SLambda => {
                for j in refinements(i) {
                    out.add(j.clone(), sign(j.len() as i64 - wi));
                }
            }
            Self::PsiLambda => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(wi + j.len() as i64) / qb(&r.pi_u_mirror));
                }
            }
            Self::LambdaPsi => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(wi + j.len() as i64) * qb(&r.fp));
                }
            }
            Self::PsiS => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j, qb(&r.pi_u).recip());
                }
            }
            Self::SPsi => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(li + j.len() as i64) * qb(&r.lp));
                }
            }
            Self::PhiLambda => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(wi + j.len() as i64) / qb(&r.sp));
                }
            }
            Self::LambdaPhi => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(wi + j.len() as i64) * &pi_i / qb(&r.length));
                }
            }
            Self::PhiS => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j, qb(&r.sp).recip());
                }
            }
            Self::SPhi => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(li + j.len() as i64) * &pi_i / qb(&r.length));
                }
            }
            Self::PsiPhi | Self::XiPhi => {
                for k in refinements(i) {
                    let rk = single(&k)?;
                    let outer = sign(li + k.len() as i64) * &pi_i / qb(&rk.length);
                    for j in refinements(&k) {
                        let rj = relative_stats(&j, &k)?;
                        let denom = if self == Self::PsiPhi { rj.pi_u } else { rj.pi_u_mirror };
                        out.add(j, &outer / qb(&denom));
                    }
                }
            }
            Self::PhiPsi | Self::PhiXi => {
                for k in refinements(i) {
                    let rk = single(&k)?;
                    let numer = if self == Self::PhiPsi { rk.lp } else { rk.fp };
                    let outer = sign(li + k.len() as i64) * qb(&numer);
                    for j in refinements(&k) {
                        let rj = relative_stats(&j, &k)?;
                        out.add(j, &outer / qb(&rj.sp));
                    }
                }
            }
            Self::XiLambda => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(wi + j.len() as i64) / qb(&r.pi_u));
                }
            }
            Self::LambdaXi => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(wi + j.len() as i64) * qb(&r.lp));
                }
            }
            Self::XiS => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j, qb(&r.pi_u_mirror).recip());
                }
            }
            Self::SXi => {
                for j in refinements(i) {
                    let r = single(&j)?;
                    out.add(j.clone(), sign(li + j.len() as i64) * qb(&r.fp));
                }
            }
            Self::PsiXi => {
                for k in refinements(i) {
                    out.add(k.clone(), c_coefficient(i, &k)?);
                }
            }
            Self::XiPsi => {
                let im = i.mirror();
                for k in refinements(i) {
                    out.add(k.clone(), c_coefficient(&im, &k.mirror())?);
                }
            }
            Self::XiPsi2 => {
                for k in refinements(i) {
                    let c = c_coefficient(i, &k)? * sign(li - k.len() as i64);
                    out.add(k, c);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub composition: Composition,
    /// The target word `B^I` in the `Λ` basis.
    pub expected: Value,
    /// The expanded right-hand side in the `Λ` basis.
    pub found: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    #[serde(rename = "N")]
    pub max_weight: usize,
    pub status: &'static str,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks one composition; `None` when both sides agree.
pub fn check_identity_at(table: &FamilyTable, id: IdentityId, i: &Composition) -> Result<Option<Counterexample>> {
    let lhs = table.word(id.target(), i)?;
    let rhs = table.expand(&id.expansion(i)?)?;
    if *lhs == rhs {
        Ok(None)
    } else {
        Ok(Some(Counterexample {
            composition: i.clone(),
            expected: lhs.to_json(),
            found: rhs.to_json(),
        }))
    }
}

/// Checks an identity for every nonempty composition of weight at most the
/// table's cap.
pub fn verify_identity(table: &FamilyTable, id: IdentityId, exec: Exec) -> Result<IdentityReport> {
    let comps: Vec<Composition> = enumerate_up_to(table.cap()).into_iter().filter(|i| !i.is_empty()).collect();
    let results = exec.map_ref(&comps, |i| check_identity_at(table, id, i));
    let mut counterexample = None;
    for r in results {
        if let Some(c) = r? {
            counterexample = Some(c);
            break;
        }
    }
    Ok(IdentityReport {
        identity: id,
        max_weight: table.cap(),
        status: if counterexample.is_none() { "pass" } else { "fail" },
        checked: comps.len(),
        counterexample,
    })
}

/// Like [`verify_identity`] but builds its own table.
pub fn verify_identity_by_name(name: &str, max_weight: usize, exec: Exec) -> Result<IdentityReport> {
    let id: IdentityId = name.parse()?;
    verify_identity(&FamilyTable::new(max_weight), id, exec)
}

/// Coefficient of `Λ_m` in `X_m` as forced by the `Λ`-expansions with
/// `I = J = (m)`; used as a triangularity check.
pub fn leading_lambda_coefficient(kind: FamilyKind, m: usize) -> Result<Q> {
    let i = Composition::single(m);
    let id = match kind {
        Lambda => return Ok(Q::one()),
        S => IdentityId::LambdaS,
        Phi => IdentityId::LambdaPhi,
        Psi => IdentityId::LambdaPsi,
        Xi => IdentityId::LambdaXi,
    };
    Ok(id.expansion(&i)?.terms.get(&i).cloned().unwrap_or_default())
}
