//! Nilpotent-Jacobian experiments: ψ-vanishing (`C_m = 0`) as the hypothesis,
//! ξ-vanishing (`N_{[m]} = 0`) as the conclusion, and an exact check that the
//! truncated inverse is a polynomial inverse.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::diffops::system::{mat_mul, mat_vec};
use crate::diffops::{iterated_fields, jacobian};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::{qi, Q};
use crate::series::{field_to_json, invert_oracle, parse_field, Monomial, MultiSeries, Poly};

/// Homogeneous `H` of degree `d` with `H_i` depending only on `z_{i+1}, …, z_n`
/// (so `H_n = 0`). Coefficients are uniform in `[−3, 3]`; a component that
/// comes out zero is resampled.
pub fn generate_triangular_h(n: usize, d: usize, seed: u64) -> Result<Vec<Poly<Q>>> {
    if n < 2 || d < 2 {
        return Err(Error::BadDimensions(format!("triangular generator needs n ≥ 2 and d ≥ 2, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let later = n - i - 1;
        if later == 0 {
            h.push(Poly::zero());
            continue;
        }
        let monomials: Vec<Monomial> = Monomial::all_of_degree(later, d)
            .into_iter()
            .map(|m| {
                let mut exps = vec![0u16; i + 1];
                exps.extend_from_slice(m.exps());
                Monomial::from_exps(&exps)
            })
            .collect();
        loop {
            let p = Poly::from_terms(monomials.iter().map(|m| (m.clone(), qi(rng.gen_range(-3..=3)))));
            if !p.is_zero() {
                h.push(p);
                break;
            }
        }
    }
    Ok(h)
}

fn is_zero_matrix(a: &[Vec<Poly<Q>>]) -> bool {
    a.iter().flatten().all(Poly::is_zero)
}

/// Smallest `k ≤ n` with `(JH)^k = 0`.
pub fn check_nilpotency(h: &[Poly<Q>]) -> Option<usize> {
    let j = jacobian(h);
    let mut power = j.clone();
    for k in 1..=h.len() {
        if is_zero_matrix(&power) {
            return Some(k);
        }
        power = mat_mul(&power, &j);
    }
    None
}

/// `H = ∇P` for a homogeneous `P` on `n` variables.
pub fn gradient_field(p: &Poly<Q>, n: usize) -> Result<Vec<Poly<Q>>> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if let Some(found) = p.n() {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    Ok((0..n).map(|i| p.derivative(i)).collect())
}

/// Common degree of the nonzero components, if `H` is homogeneous.
pub fn homogeneous_degree(h: &[Poly<Q>]) -> Option<usize> {
    let mut degree = None;
    for p in h.iter().filter(|p| !p.is_zero()) {
        if !p.is_homogeneous() {
            return None;
        }
        let d = p.max_degree()?;
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    degree
}

/// Smallest `m ≤ order` with `slices[j−1] = 0` for every `j ∈ [m, order]`.
fn vanish_from(slices: &[Vec<Poly<Q>>]) -> Option<usize> {
    let order = slices.len();
    let zero = |s: &Vec<Poly<Q>>| s.iter().all(Poly::is_zero);
    if order == 0 || !zero(&slices[order - 1]) {
        return None;
    }
    let mut m = order;
    while m > 1 && zero(&slices[m - 2]) {
        m -= 1;
    }
    Some(m)
}

#[derive(Debug, Clone, Serialize)]
pub struct JcExperiment {
    #[serde(rename = "H")]
    pub h: Value,
    pub n: usize,
    pub degree: Option<usize>,
    pub nilpotency_index: Option<usize>,
    pub psi_vanish_from: Option<usize>,
    pub xi_vanish_from: Option<usize>,
    pub inverse_is_polynomial_up_to_t: bool,
    /// `F_t(G_t) = z` exactly for the truncated `G_t`, with no truncation in the check.
    pub polynomial_inverse_verified: Option<bool>,
    /// `d · C_m = (JH)^m z` for `m ≤ T` (homogeneous `H` only).
    pub euler_identity_holds: Option<bool>,
    /// `C_m = 0` for `m > k` and for `m ≥ n` (homogeneous nilpotent `H` only).
    pub euler_bound_holds: Option<bool>,
    #[serde(rename = "T")]
    pub order: usize,
}

impl JcExperiment {
    /// All checks that apply to this `H` passed.
    pub fn consistent(&self) -> bool {
        let bound = match (self.psi_vanish_from, self.nilpotency_index) {
            (Some(p), Some(k)) => p <= k + 1,
            (None, Some(k)) => k + 1 > self.order,
            _ => true,
        };
        bound
            && self.polynomial_inverse_verified != Some(false)
            && self.euler_identity_holds != Some(false)
            && self.euler_bound_holds != Some(false)
    }
}

/// Checks `F_t(G) = z` exactly, `G = z + Σ_{m<D} t^m N_{[m]}` read as a
/// polynomial in `t`.
fn verify_polynomial_inverse(h: &[Poly<Q>], slices: &[Vec<Poly<Q>>], t_degree: usize) -> bool {
    let n = h.len();
    let hdeg = h.iter().filter_map(Poly::max_degree).max().unwrap_or(0);
    let cap = 1 + hdeg * t_degree;
    let g: Vec<MultiSeries<Q>> = (0..n)
        .map(|i| {
            let mut parts = vec![Poly::var(n, i)];
            parts.extend(slices.iter().take(t_degree).map(|s| s[i].clone()));
            parts.resize(cap + 1, Poly::zero());
            MultiSeries::from_slices(n, parts)
        })
        .collect();
    (0..n).all(|i| {
        let hg = MultiSeries::from_poly(n, cap, h[i].clone())
            .compose(&g)
            .expect("G is z plus t-order ≥ 1 terms");
        let f = g[i].sub(&hg.shift_t(1)).expect("same cap");
        f.slice(0) == &Poly::var(n, i) && f.slices()[1..].iter().all(Poly::is_zero)
    })
}

pub fn run_jc_experiment(h: &[Poly<Q>], order: usize) -> JcExperiment {
    let n = h.len();
    let nilpotency_index = check_nilpotency(h);
    let c = iterated_fields(h, order);
    let psi_vanish_from = vanish_from(&c);
    let g = invert_oracle(h, order);
    let xi_slices: Vec<Vec<Poly<Q>>> = (1..=order).map(|m| g.slice(m)).collect();
    let xi_vanish_from = vanish_from(&xi_slices);
    let polynomial_inverse_verified = xi_vanish_from.map(|m| verify_polynomial_inverse(h, &xi_slices, m - 1));
    let degree = homogeneous_degree(h);
    let euler_identity_holds = degree.map(|d| {
        let j = jacobian(h);
        let mut v: Vec<Poly<Q>> = (0..n).map(|i| Poly::var(n, i)).collect();
        c.iter().all(|cm| {
            v = mat_vec(&j, &v);
            cm.iter().zip(&v).all(|(a, b)| a.scale(&qi(d as i64)) == *b)
        })
    });
    let euler_bound_holds = match (degree, nilpotency_index) {
        (Some(_), Some(k)) => Some(
            c.iter()
                .enumerate()
                .filter(|(i, _)| i + 1 > k || i + 1 >= n)
                .all(|(_, cm)| cm.iter().all(Poly::is_zero)),
        ),
        _ => None,
    };
    JcExperiment {
        h: field_to_json(h),
        n,
        degree,
        nilpotency_index,
        psi_vanish_from,
        xi_vanish_from,
        inverse_is_polynomial_up_to_t: xi_vanish_from.is_some(),
        polynomial_inverse_verified,
        euler_identity_holds,
        euler_bound_holds,
        order,
    }
}

/// One batch item: an explicit field or a triangular-generator descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum JcSpec {
    Field(Vec<Poly<Q>>),
    Generate { n: usize, d: usize, seed: u64 },
}

impl JcSpec {
    pub fn field(&self) -> Result<Vec<Poly<Q>>> {
        match self {
            JcSpec::Field(h) => Ok(h.clone()),
            JcSpec::Generate { n, d, seed } => generate_triangular_h(*n, *d, *seed),
        }
    }

    /// A field object (`n`, `components`) or a descriptor (`n`, `d`, `seed`).
    pub fn from_json(value: &Value) -> Result<Self> {
        if value.get("components").is_some() {
            return Ok(JcSpec::Field(parse_field(value)?));
        }
        let get = |k: &str| {
            value
                .get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::BadDimensions(format!("generator descriptor needs integer `{k}`")))
        };
        Ok(JcSpec::Generate {
            n: get("n")? as usize,
            d: get("d")? as usize,
            seed: get("seed")?,
        })
    }
}

/// Runs independent experiments; output order follows input order.
pub fn run_batch(specs: &[JcSpec], order: usize, exec: Exec) -> Result<Vec<JcExperiment>> {
    let fields = specs.iter().map(JcSpec::field).collect::<Result<Vec<_>>>()?;
    Ok(exec.map_ref(&fields, |h| run_jc_experiment(h, order)))
}

/// `true` if some `C_m` or `N_{[m]}` up to `order` is nonzero for every `m`,
/// i.e. neither sequence vanishes from any point on.
pub fn no_vanishing(e: &JcExperiment) -> bool {
    e.psi_vanish_from.is_none() && e.xi_vanish_from.is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, i: usize) -> Poly<Q> {
        Poly::var(n, i)
    }

    #[test]
    fn nilpotent_square() {
        let h = vec![z(2, 1).mul(&z(2, 1)), Poly::zero()];
        assert_eq!(check_nilpotency(&h), Some(2));
        let e = run_jc_experiment(&h, 6);
        assert_eq!(e.nilpotency_index, Some(2));
        assert_eq!(e.psi_vanish_from, Some(2));
        assert_eq!(e.xi_vanish_from, Some(2));
        assert_eq!(e.polynomial_inverse_verified, Some(true));
        assert!(e.consistent());
    }

    #[test]
    fn control_never_vanishes() {
        let h = vec![z(1, 0).mul(&z(1, 0))];
        assert_eq!(check_nilpotency(&h), None);
        let e = run_jc_experiment(&h, 6);
        assert!(no_vanishing(&e));
        assert_eq!(check_nilpotency(&[Poly::zero()]), Some(1));
    }

    #[test]
    fn triangular_generator() {
        let h = generate_triangular_h(3, 3, 42).unwrap();
        assert_eq!(h, generate_triangular_h(3, 3, 42).unwrap());
        assert!(h[2].is_zero());
        assert!(h[1].terms().all(|(m, _)| m.exps() == [0, 0, 3]));
        assert!(check_nilpotency(&h).unwrap() <= 3);
        let e = run_jc_experiment(&h, 10);
        assert!(e.psi_vanish_from.unwrap() <= 3);
        assert!(e.xi_vanish_from.is_some());
        assert!(e.consistent());
        assert!(generate_triangular_h(1, 2, 0).is_err());
    }

    #[test]
    fn gradients() {
        let p = z(2, 0).pow(2, 3).mul(&z(2, 1));
        let h = gradient_field(&p, 2).unwrap();
        assert_eq!(h[0], z(2, 0).pow(2, 2).mul(&z(2, 1)).scale(&qi(3)));
        assert_eq!(h[1], z(2, 0).pow(2, 3));
        let j = jacobian(&h);
        assert_eq!(j[0][1], j[1][0]);
        assert_eq!(gradient_field(&z(2, 0).add(&p), 2), Err(Error::NotHomogeneous));
    }
}
