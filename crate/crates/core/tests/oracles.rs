//! Cross-checks against oracles written independently of the library's
//! formula tables.

use num_bigint::BigInt;
use num_traits::One;

use ncsym::compositions::{enumerate, Composition};
use ncsym::diffops::OperatorSystem;
use ncsym::inversion::{cm_via_basis, dlog, dlog_bch, inverse_slices, InversionMethod};
use ncsym::nsym::{CmBasis, DLogBasis, FamilyKind, FamilyTable, NSymElement};
use ncsym::rational::{q, qi, Q};
use ncsym::series::{Monomial, Poly};

fn z1() -> Poly<Q> {
    Poly::var(1, 0)
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).map(qi).fold(Q::one(), |a, b| a * b)
}

/// Lagrange inversion for `G = z + t h(G)` in one variable:
/// `[t^m] G = (1/m!) (d/dz)^{m−1} h(z)^m`.
fn lagrange_slice(h: &Poly<Q>, m: usize) -> Poly<Q> {
    let mut p = h.pow(1, m);
    for _ in 1..m {
        p = p.derivative(0);
    }
    p.scale(&factorial(m).recip())
}

#[test]
fn lagrange_inversion_matches_every_method() {
    let z = z1();
    let fields = [
        z.mul(&z),
        z.mul(&z).add(&z.pow(1, 3).scale(&q(-1, 2))),
        z.pow(1, 3).scale(&qi(2)).sub(&z.pow(1, 4)),
    ];
    for h in fields {
        let sys = OperatorSystem::new(vec![h.clone()], 7).unwrap();
        for method in [InversionMethod::Oracle, InversionMethod::Lambda, InversionMethod::Psi, InversionMethod::CI, InversionMethod::Recurrent] {
            let slices = inverse_slices(&sys, method).unwrap();
            for m in 1..=7 {
                assert_eq!(slices[m - 1][0], lagrange_slice(&h, m), "{method} m={m}");
            }
        }
    }
}

#[test]
fn catalan_numbers_from_closed_form() {
    let sys = OperatorSystem::new(vec![z1().mul(&z1())], 8).unwrap();
    let slices = inverse_slices(&sys, InversionMethod::Recurrent).unwrap();
    for m in 1..=8usize {
        let catalan = factorial(2 * m) / (factorial(m) * factorial(m + 1));
        assert_eq!(slices[m - 1][0], z1().pow(1, m + 1).scale(&catalan));
    }
}

/// `C_m = (JH)^{m−1} H` by repeated matrix-vector products written out here.
fn cm_direct(h: &[Poly<Q>], m: usize) -> Vec<Poly<Q>> {
    let n = h.len();
    let mut v = h.to_vec();
    for _ in 1..m {
        v = (0..n)
            .map(|i| {
                let mut acc = Poly::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc.add_assign(&h[i].derivative(j).mul(vj));
                }
                acc
            })
            .collect();
    }
    v
}

#[test]
fn cm_bases_match_matrix_powers() {
    let (x, y) = (Poly::<Q>::var(2, 0), Poly::<Q>::var(2, 1));
    let h = vec![y.mul(&y).add(&x.mul(&y).scale(&qi(3))), x.mul(&x).mul(&y).scale(&q(1, 3))];
    let sys = OperatorSystem::new(h.clone(), 5).unwrap();
    for b in CmBasis::ALL {
        for m in 1..=5 {
            assert_eq!(cm_via_basis(&sys, m, b).unwrap(), cm_direct(&h, m), "{b} m={m}");
        }
    }
}

/// `e^{−a_t d/dz} z` summed by hand in one variable equals the Lagrange
/// inverse.
#[test]
fn dlog_exponentiates_to_inverse_independently() {
    let z = z1();
    let h = vec![z.mul(&z).add(&z.pow(1, 3))];
    let order = 6;
    let sys = OperatorSystem::new(h.clone(), order).unwrap();
    let d = dlog(&sys, DLogBasis::Xi).unwrap();
    let a: Vec<Poly<Q>> = (0..=order).map(|m| d.slice(m)[0].clone()).collect();
    let apply_d = |s: &[Poly<Q>]| -> Vec<Poly<Q>> {
        let mut out = vec![Poly::zero(); order + 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, sj) in s.iter().enumerate() {
                if i + j <= order {
                    out[i + j].sub_assign(&ai.mul(&sj.derivative(0)));
                }
            }
        }
        out
    };
    let mut term: Vec<Poly<Q>> = vec![Poly::zero(); order + 1];
    term[0] = z.clone();
    let mut total = term.clone();
    for r in 1..=order {
        term = apply_d(&term).into_iter().map(|p| p.scale(&qi(r as i64).recip())).collect();
        for (t, p) in total.iter_mut().zip(&term) {
            t.add_assign(p);
        }
    }
    for (m, slice) in total.iter().enumerate().skip(1) {
        assert_eq!(*slice, lagrange_slice(&h[0], m), "t^{m}");
    }
}

/// The depth-`r` BCH sum is exact through `t^r`. Depth 1 drops the
/// commutator `[ψ_1, ψ_2]` that first enters at `t^3`.
#[test]
fn bch_depth_limits_validity() {
    let z = z1();
    let sys = OperatorSystem::new(vec![z.mul(&z).add(&z.pow(1, 3))], 5).unwrap();
    let reference = dlog(&sys, DLogBasis::Lambda).unwrap();
    for r in 1..=5 {
        let bch = dlog_bch(&sys, r).unwrap();
        for m in 1..=r {
            assert_eq!(bch.slice(m), reference.slice(m), "r={r} m={m}");
        }
    }
    let shallow = dlog_bch(&sys, 1).unwrap();
    assert_eq!(shallow.slice(2), reference.slice(2));
    assert_ne!(shallow.slice(3), reference.slice(3));
}

/// Sending `Λ_k` to the elementary symmetric polynomial `e_k` in three
/// variables maps `S_m` to `h_m` and `Φ_m`, `Ψ_m`, `Ξ_m` to the power sum `p_m`.
#[test]
fn commutative_image_gives_power_sums() {
    let cap = 5;
    let table = FamilyTable::new(cap);
    let vars = 3;
    let x = |i: usize| Poly::<Q>::var(vars, i);
    // e_k in three variables
    let mut e = vec![Poly::one(vars)];
    for k in 1..=cap {
        let mut acc = Poly::zero();
        for m in Monomial::all_of_degree(vars, k) {
            if m.exps().iter().all(|&a| a <= 1) {
                acc.add_term(m, Q::one());
            }
        }
        e.push(acc);
    }
    let image = |a: &NSymElement<Q>| -> Poly<Q> {
        let mut out = Poly::zero();
        for (word, c) in a.terms() {
            let mut p = Poly::one(vars);
            for &k in word.parts() {
                p = p.mul(&e[k]);
            }
            out.add_scaled(&p, c);
        }
        out
    };
    for m in 1..=cap {
        let power_sum = (0..vars).fold(Poly::zero(), |acc: Poly<Q>, i| acc.add(&x(i).pow(vars, m)));
        assert_eq!(image(table.member(FamilyKind::Psi, m)), power_sum, "Psi_{m}");
        assert_eq!(image(table.member(FamilyKind::Phi, m)), power_sum, "Phi_{m}");
        assert_eq!(image(table.member(FamilyKind::Xi, m)), power_sum, "Xi_{m}");
        let complete = Poly::from_terms(Monomial::all_of_degree(vars, m).into_iter().map(|mono| (mono, Q::one())));
        assert_eq!(image(table.member(FamilyKind::S, m)), complete, "S_{m}");
    }
}

/// Number of compositions of `m` is `2^{m−1}`.
#[test]
fn composition_counts() {
    for m in 1..=10usize {
        assert_eq!(BigInt::from(enumerate(m).len()), BigInt::from(1u64 << (m - 1)));
    }
    assert!(enumerate(4).contains(&Composition::new(vec![1, 3])));
}
