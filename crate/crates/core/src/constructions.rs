//! The tree families `A_k`, `B_k`, `Y_{k,l}`, `Z_{k,l}` and the exact
//! identities relating their U-polynomials.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{CodeMode, RootedTree};
use crate::invariants::{u_rooted_tree, u_tree};
use crate::poly::{Monomial, Partition, UPolynomial};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("index {index} exceeds the cap of {cap}")]
    CapExceeded { index: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("identity violated: {0}")]
    ReportedFailure(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    /// Largest `m` with `U_m(Y) = U_m(Z)`.
    pub agree_upto: usize,
    /// Lowest-length terms of `U(Y) - U(Z)`.
    #[serde(serialize_with = "as_text")]
    pub first_diff: UPolynomial,
    pub iso_free: bool,
    pub iso_rooted: bool,
    pub identities_ok: bool,
}

fn as_text<S: serde::Serializer>(p: &UPolynomial, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl PairReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Whether the report matches the predicted agreement level and non-isomorphism.
    pub fn matches_prediction(&self) -> bool {
        self.agree_upto == self.k + self.l + 2
            && self.first_diff.min_length() == Some(self.k + self.l + 4)
            && !self.iso_free
    }
}

fn check_cap(index: usize, cap: usize) -> Result<(), ConstructionError> {
    if index > cap {
        Err(ConstructionError::CapExceeded { index, cap })
    } else {
        Ok(())
    }
}

/// Vertex count `n(k) = 3 * 2^k` of `A_k` and `B_k`.
pub fn family_size(k: usize) -> usize {
    3 << k
}

fn ab_sequence(k: usize) -> Vec<(RootedTree, RootedTree)> {
    let one = RootedTree::single();
    let edge = one.concat(&one);
    let mut out = vec![(edge.concat(&one), one.concat(&edge))];
    for _ in 0..k {
        let (a, b) = out.last().expect("seeded");
        out.push((a.concat(b), b.concat(a)));
    }
    out
}

pub fn build_ab(k: usize) -> Result<(RootedTree, RootedTree), ConstructionError> {
    build_ab_with(k, &Limits::default())
}

/// `A_0` is the 3-path rooted at its centre, `B_0` at a leaf, and
/// `A_k = A_{k-1} . B_{k-1}`, `B_k = B_{k-1} . A_{k-1}`.
pub fn build_ab_with(k: usize, limits: &Limits) -> Result<(RootedTree, RootedTree), ConstructionError> {
    check_cap(k, limits.family_index)?;
    Ok(ab_sequence(k).pop().expect("non-empty"))
}

pub fn build_yz(k: usize, l: usize) -> Result<(RootedTree, RootedTree), ConstructionError> {
    build_yz_with(k, l, &Limits::default())
}

/// `Y = (A_k ⊙ A_l) . (B_k ⊙ B_l)` and `Z = (A_l ⊙ B_k) . (B_l ⊙ A_k)`.
pub fn build_yz_with(k: usize, l: usize, limits: &Limits) -> Result<(RootedTree, RootedTree), ConstructionError> {
    check_cap(k.max(l), limits.pair_index)?;
    let seq = ab_sequence(k.max(l));
    let (ak, bk) = &seq[k];
    let (al, bl) = &seq[l];
    let y = ak.join(al).concat(&bk.join(bl));
    let z = al.join(bk).concat(&bl.join(ak));
    Ok((y, z))
}

/// `x1*z^2 - x2*z`.
pub fn delta0() -> UPolynomial {
    UPolynomial::x(1) * UPolynomial::z_pow(2) - UPolynomial::x(2) * UPolynomial::z()
}

pub fn p_cumulative(k: usize) -> Result<UPolynomial, ConstructionError> {
    p_cumulative_with(k, &Limits::default())
}

/// `P_k = U(A_0) U(A_1) ... U(A_{k-1})`.
pub fn p_cumulative_with(k: usize, limits: &Limits) -> Result<UPolynomial, ConstructionError> {
    check_cap(k, limits.family_index)?;
    Ok(p_from(&ab_sequence(k)[..k]))
}

fn p_from(seq: &[(RootedTree, RootedTree)]) -> UPolynomial {
    seq.iter().map(|(a, _)| u_tree(a)).product()
}

/// `D(T) = x1 * (z U^r(T))^* - x2 * U(T)`.
pub fn d_transform(t: &RootedTree) -> UPolynomial {
    let r = u_rooted_tree(t);
    let shifted = (&r * UPolynomial::z()).star_specialize();
    UPolynomial::x(1) * shifted - UPolynomial::x(2) * r.star_specialize()
}

/// Checks `U^r(A_k) - U^r(B_k) = Δ0 P_k`.
pub fn ab_difference_holds(k: usize) -> Result<bool, ConstructionError> {
    check_cap(k, Limits::default().family_index)?;
    let seq = ab_sequence(k);
    let (a, b) = &seq[k];
    Ok(u_rooted_tree(a) - u_rooted_tree(b) == delta0() * p_from(&seq[..k]))
}

/// Checks `U(A_i ⊙ T) - U(B_i ⊙ T) = P_i D(T)`.
pub fn d_identity_holds(i: usize, t: &RootedTree) -> Result<bool, ConstructionError> {
    check_cap(i, Limits::default().family_index)?;
    let seq = ab_sequence(i);
    let (a, b) = &seq[i];
    Ok(u_tree(&a.join(t)) - u_tree(&b.join(t)) == p_from(&seq[..i]) * d_transform(t))
}

/// `(x1^2 x3 - x1 x2^2)`.
fn cubic() -> UPolynomial {
    UPolynomial::x(1).pow(2) * UPolynomial::x(3) - UPolynomial::x(1) * UPolynomial::x(2).pow(2)
}

/// The bracket `(x1^2 x3 - x1 x2^2) U(B_l ⊙ A_k) - D(A_k) D(B_l)`.
fn pair_bracket(ak: &RootedTree, bl: &RootedTree) -> UPolynomial {
    cubic() * u_tree(&bl.join(ak)) - d_transform(ak) * d_transform(bl)
}

/// Checks `U(Y) - U(Z) = P_l P_k ((x1^2 x3 - x1 x2^2) U(B_l ⊙ A_k) - D(A_k) D(B_l))`.
pub fn pair_difference_holds(k: usize, l: usize) -> Result<bool, ConstructionError> {
    let (y, z) = build_yz(k, l)?;
    let seq = ab_sequence(k.max(l));
    let rhs = p_from(&seq[..l]) * p_from(&seq[..k]) * pair_bracket(&seq[k].0, &seq[l].1);
    Ok(u_tree(&y) - u_tree(&z) == rhs)
}

/// The predicted length-4 part of the bracket:
/// `(x1^2 x3 - x1 x2^2) x_{n(l)+n(k)-1} - (x1 x_{n(k)+1} - x2 x_{n(k)}) (x1 x_{n(l)+1} - x2 x_{n(l)})`.
pub fn closed_form(k: usize, l: usize) -> UPolynomial {
    let x = |i: usize| UPolynomial::x(i as u32);
    let (nk, nl) = (family_size(k), family_size(l));
    cubic() * x(nl + nk - 1) - (x(1) * x(nk + 1) - x(2) * x(nk)) * (x(1) * x(nl + 1) - x(2) * x(nl))
}

fn lowest_terms(p: &UPolynomial) -> UPolynomial {
    match p.min_length() {
        Some(len) => p.filter(|m| m.parts().len() == len),
        None => UPolynomial::zero(),
    }
}

/// `x_{n(0)} x_{n(1)} ... x_{n(k-1)}`, the single lowest-length term of `P_k`.
fn p_lowest(k: usize) -> Monomial {
    let parts = Partition::new((0..k).map(|i| family_size(i) as u32)).expect("positive parts");
    Monomial::new(parts, 0, 0)
}

pub fn verify_pair(k: usize, l: usize) -> Result<PairReport, ConstructionError> {
    verify_pair_with(k, l, &Limits::default())
}

/// Builds `Y_{k,l}` and `Z_{k,l}`, compares their U-polynomials, and checks
/// `Δ0`, the `A/B` difference identity at both indices, and the closed form of
/// the lowest-length difference. Any violated check is a `ReportedFailure`.
pub fn verify_pair_with(k: usize, l: usize, limits: &Limits) -> Result<PairReport, ConstructionError> {
    let (y, z) = build_yz_with(k, l, limits)?;
    let seq = ab_sequence(k.max(l));
    let fail = |what: &str| Err(ConstructionError::ReportedFailure(what.to_string()));

    let ((uy, uz), (ab_ok, delta_ok)) = rayon::join(
        || rayon::join(|| u_tree(&y), || u_tree(&z)),
        || {
            let ab_ok = [k, l].iter().all(|&i| {
                let (a, b) = &seq[i];
                u_rooted_tree(a) - u_rooted_tree(b) == delta0() * p_from(&seq[..i])
            });
            let delta_ok = delta0() == "x1*z^2 - x2*z".parse().expect("valid text");
            (ab_ok, delta_ok)
        },
    );
    if !delta_ok {
        return fail("delta0 differs from x1*z^2 - x2*z");
    }
    if !ab_ok {
        return fail("U^r(A_i) - U^r(B_i) differs from delta0 * P_i");
    }
    let diff = &uy - &uz;
    let Some(len) = diff.min_length() else {
        return fail("U(Y) equals U(Z)");
    };
    let Some(agree_upto) = len.checked_sub(2) else {
        return fail("U(Y) and U(Z) differ in a single-part term");
    };
    let first_diff = lowest_terms(&diff);
    let factor = p_lowest(k).mul(&p_lowest(l));
    if first_diff != closed_form(k, l).mul_monomial(&factor) {
        return fail("lowest-length difference differs from the closed form");
    }
    Ok(PairReport {
        k,
        l,
        n: y.vertex_count(),
        agree_upto,
        first_diff,
        iso_free: y.canonical_form(CodeMode::Free) == z.canonical_form(CodeMode::Free),
        iso_rooted: y.canonical_form(CodeMode::Rooted) == z.canonical_form(CodeMode::Rooted),
        identities_ok: true,
    })
}

/// Size of the smallest `Y_{k,l}` with `k + l + 2 = m`: `6 * 2^{m/2} - 2` for
/// even `m`, `18 * 2^{floor(m/2) - 1} - 2` for odd `m`.
pub fn phi_upper_bound(m: usize) -> Result<u64, ConstructionError> {
    if m < 2 {
        return Err(ConstructionError::InvalidArgument(format!("m = {m} is below 2")));
    }
    if m / 2 > 60 {
        return Err(ConstructionError::InvalidArgument(format!("m = {m} overflows")));
    }
    let half = (m / 2) as u32;
    Ok(if m.is_multiple_of(2) {
        6 * (1u64 << half) - 2
    } else {
        18 * (1u64 << (half - 1)) - 2
    })
}
