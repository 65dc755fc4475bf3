//! Closed-form numerical invariants of the Fano surface of lines on a
//! `q`-bic threefold, in exact integers.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf::{is_prime, prime_power};
use crate::reps::{closed_form_total, theorem_dims};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("identity `{0}` fails for q = {1}")]
    Identity(&'static str, u64),
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

// Big integers go to JSON as decimal strings.
fn dec<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn dec_opt<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Numerical invariants of the Fano surface `S`. The `h1`/`h2` fields are
/// only filled for prime `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub q: u64,
    #[serde(serialize_with = "dec")]
    pub deg_plucker: BigInt,
    #[serde(serialize_with = "dec")]
    pub c1_sq: BigInt,
    #[serde(serialize_with = "dec")]
    pub c2: BigInt,
    #[serde(serialize_with = "dec")]
    pub chi_o: BigInt,
    #[serde(serialize_with = "dec")]
    pub bmy_defect: BigInt,
    #[serde(serialize_with = "dec_opt")]
    pub h1_smooth: Option<BigInt>,
    #[serde(serialize_with = "dec_opt")]
    pub h2_smooth: Option<BigInt>,
    #[serde(serialize_with = "dec_opt")]
    pub h1_nodal: Option<BigInt>,
    #[serde(serialize_with = "dec_opt")]
    pub h2_nodal: Option<BigInt>,
    #[serde(serialize_with = "dec")]
    pub betti1_half: BigInt,
    #[serde(serialize_with = "dec")]
    pub hermitian_blowup_count: BigInt,
    #[serde(serialize_with = "dec")]
    pub conductor_delta: BigInt,
}

pub fn surface_invariants(q: u64) -> Result<SurfaceInvariants, InvariantsError> {
    prime_power(q).ok_or(InvariantsError::NotPrimePower(q))?;
    let qb = big(q as i64);
    let q1sq = (&qb + 1) * (&qb + 1);
    let q2 = &qb * &qb;
    let q3 = &q2 * &qb;
    let q4 = &q3 * &qb;
    let deg_plucker = &q1sq * (&q2 + 1);
    let two_q_3 = &qb * 2 - 3;
    let c1_sq = &deg_plucker * &two_q_3 * &two_q_3;
    let c2 = &q1sq * (&q4 - &q3 * 3 + &q2 * 4 - &qb * 4 + 3);
    let chi_num = &q1sq * (&q4 * 5 - &q3 * 15 + &q2 * 17 - &qb * 16 + 12);
    if &chi_num % 12 != big(0) {
        return Err(InvariantsError::Identity("12 | chi numerator", q));
    }
    let chi_o: BigInt = &chi_num / 12;
    let bmy_defect = &c1_sq - &c2 * 3;
    let betti1_half: BigInt = &qb * (&qb - 1) * (&q2 + 1) / 2;
    let (h1_smooth, h2_smooth, h1_nodal, h2_nodal) = if is_prime(q) {
        let h1 = betti1_half.clone();
        let h2: BigInt = &qb * (&qb - 1) * (&q4 * 5 - &q2 * 2 - &qb * 5 - 2) / 12;
        let corr: BigInt = &qb * (&qb - 1) * (&qb - 2) / 6;
        (Some(h1.clone()), Some(h2.clone()), Some(&h1 + &corr), Some(&h2 + &corr))
    } else {
        (None, None, None, None)
    };
    let inv = SurfaceInvariants {
        q,
        deg_plucker,
        c1_sq,
        c2,
        chi_o,
        bmy_defect,
        h1_smooth,
        h2_smooth,
        h1_nodal,
        h2_nodal,
        betti1_half,
        hermitian_blowup_count: q3 + 1,
        conductor_delta: &q2 * 2 - &qb - 2,
    };
    inv.check()?;
    Ok(inv)
}

impl SurfaceInvariants {
    /// The identities every record satisfies.
    pub fn check(&self) -> Result<(), InvariantsError> {
        let q = self.q;
        if &self.chi_o * 12 != &self.c1_sq + &self.c2 {
            return Err(InvariantsError::Identity("12 chi = c1^2 + c2", q));
        }
        let qb = big(q as i64);
        let expected_bmy = &qb * &qb * (&qb + 1) * (&qb + 1) * (&qb * &qb - &qb * 3 + 1);
        if self.bmy_defect != expected_bmy {
            return Err(InvariantsError::Identity("c1^2 - 3 c2 = q^2 (q+1)^2 (q^2 - 3q + 1)", q));
        }
        for (h1, h2) in [(&self.h1_smooth, &self.h2_smooth), (&self.h1_nodal, &self.h2_nodal)] {
            if let (Some(h1), Some(h2)) = (h1, h2) {
                if big(1) - h1 + h2 != self.chi_o {
                    return Err(InvariantsError::Identity("1 - h1 + h2 = chi", q));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodalConsistency {
    pub p: u64,
    #[serde(serialize_with = "dec")]
    pub h1_smooth: BigInt,
    #[serde(serialize_with = "dec")]
    pub h1_nodal: BigInt,
    #[serde(serialize_with = "dec")]
    pub h2_smooth: BigInt,
    #[serde(serialize_with = "dec")]
    pub h2_nodal: BigInt,
    #[serde(serialize_with = "dec")]
    pub correction: BigInt,
    /// Total of the graded table of `H^0(C, F)`.
    pub table_total: u64,
}

/// Ties the nodal `h^1` to the total of the representation-theoretic table.
pub fn nodal_consistency(p: u64) -> Result<NodalConsistency, InvariantsError> {
    if !is_prime(p) {
        return Err(InvariantsError::NotPrime(p));
    }
    let inv = surface_invariants(p)?;
    let table_total = theorem_dims(p).map_err(|_| InvariantsError::NotPrime(p))?.total();
    let pb = big(p as i64);
    let correction = &pb * (&pb - 1) * (&pb - 2) / 6;
    let report = NodalConsistency {
        p,
        h1_smooth: inv.h1_smooth.expect("prime"),
        h1_nodal: inv.h1_nodal.expect("prime"),
        h2_smooth: inv.h2_smooth.expect("prime"),
        h2_nodal: inv.h2_nodal.expect("prime"),
        correction,
        table_total,
    };
    if report.h1_nodal != big(table_total as i64) || table_total != closed_form_total(p) {
        return Err(InvariantsError::Identity("h1 of the nodal surface = dim H^0(C, F)", p));
    }
    if &report.h1_nodal - &report.h1_smooth != report.correction
        || &report.h2_nodal - &report.h2_smooth != report.correction
    {
        return Err(InvariantsError::Identity("nodal correction term", p));
    }
    Ok(report)
}
