//! Finite fields GF(p^e) with table-driven arithmetic.
//!
//! Elements are stored by their polynomial-basis code: the coefficient vector
//! `(c_0, ..., c_{e-1})` of `c_0 + c_1 t + ... + c_{e-1} t^{e-1}` packed as the
//! integer `sum c_i p^i`. Multiplication goes through log/antilog tables and
//! addition through a Zech logarithm table, so every field operation is a
//! handful of table lookups.
//!
//! The modulus is always the monic irreducible polynomial of degree `e` whose
//! low coefficients have the smallest code, so a given `(p, e)` always yields
//! the same encoding.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{e} exceeds the supported bound {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, e: u32 },
    #[error("modulus {0:?} is not monic irreducible of the declared degree")]
    BadModulus(Vec<u32>),
    #[error("coefficient vector {coeffs:?} is not an element of GF({p}^{e})")]
    BadCoefficients { coeffs: Vec<u32>, p: u32, e: u32 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` into `(p, e)`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial helpers over GF(p), coefficients little-endian.
mod fp_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let da = a.len() - 1;
            let c = (a[da] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let idx = da - dm + i;
                a[idx] = ((a[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        rem(&out, m, p)
    }

    pub fn pow_mod(base: &[u32], mut k: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1];
        let mut b = rem(base, m, p);
        while k > 0 {
            if k & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            k >>= 1;
        }
        rem(&result, m, p)
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut k = p as u64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    /// Ben-Or: a degree-e polynomial is irreducible iff it shares no factor
    /// with `x^(p^d) - x` for `1 <= d <= e/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let e = f.len() - 1;
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=e / 2 {
            xp = pow_mod(&xp, p as u64, &f, p);
            let g = gcd(&f, &sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

/// Serializable description of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, little-endian, length `e + 1`.
    pub modulus: Vec<u32>,
}

impl FieldParams {
    pub fn new(p: u64, e: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(FieldError::TooLarge { p, e });
        }
        let p32 = p as u32;
        let low_count = order as u32;
        for code in 0..low_count {
            let mut modulus = decode(code, p32, e);
            modulus.push(1);
            if fp_poly::is_irreducible(&modulus, p32) {
                return Ok(FieldParams { p: p32, e, modulus });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }

    fn validate(&self) -> Result<(), FieldError> {
        if !is_prime(self.p as u64) {
            return Err(FieldError::NotPrime(self.p as u64));
        }
        if self.e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if (self.p as u128).pow(self.e) > MAX_FIELD_ORDER as u128 {
            return Err(FieldError::TooLarge { p: self.p as u64, e: self.e });
        }
        let ok = self.modulus.len() == self.e as usize + 1
            && self.modulus.last() == Some(&1)
            && self.modulus.iter().all(|&c| c < self.p)
            && fp_poly::is_irreducible(&self.modulus, self.p);
        if ok {
            Ok(())
        } else {
            Err(FieldError::BadModulus(self.modulus.clone()))
        }
    }
}

fn decode(mut code: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// An element of some [`Field`], stored by its polynomial-basis code.
///
/// Elements carry no reference to their field; all arithmetic goes through
/// the owning `Field`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The element of a prime field GF(p) with residue `c < p`.
    pub fn from_prime(c: u32) -> FieldElement {
        FieldElement(c)
    }

    /// Element with a given code; the caller guarantees `code < order`.
    pub(crate) fn from_code_unchecked(code: u32) -> FieldElement {
        FieldElement(code)
    }

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    params: FieldParams,
    order: u32,
    /// Multiplicative group order `order - 1`.
    group: u32,
    /// `exp[k] = g^k`, doubled in length so sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NO_LOG` when `1 + g^k = 0`.
    zech: Vec<u32>,
    neg_one_log: u32,
    /// `p^j mod group` for `0 <= j < e`.
    frob_exp: Vec<u64>,
    generator: u32,
}

/// A finite field with precomputed tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || self.t.params == other.t.params
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.params.p, self.t.params.e)
    }
}

impl Field {
    pub fn new(p: u64, e: u32) -> Result<Field, FieldError> {
        Ok(Field::build(FieldParams::new(p, e)?))
    }

    /// The field of order `q`.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Field::new(p, e)
    }

    pub fn from_params(params: FieldParams) -> Result<Field, FieldError> {
        params.validate()?;
        Ok(Field::build(params))
    }

    fn build(params: FieldParams) -> Field {
        let p = params.p;
        let e = params.e;
        let order = params.order();
        let group = order - 1;
        let m = params.modulus.clone();

        let is_generator = |g: &[u32]| {
            if group == 1 {
                return true;
            }
            prime_factors(group as u64)
                .into_iter()
                .all(|r| fp_poly::pow_mod(g, group as u64 / r, &m, p) != vec![1])
        };
        let generator = (1..order)
            .find(|&c| is_generator(&fp_poly::trim(decode(c, p, e))))
            .expect("multiplicative group of a finite field is cyclic");

        let g = fp_poly::trim(decode(generator, p, e));
        let mut exp = vec![0u32; 2 * group as usize];
        let mut log = vec![NO_LOG; order as usize];
        let mut cur = vec![1u32];
        for k in 0..group as usize {
            let mut padded = cur.clone();
            padded.resize(e as usize, 0);
            let code = encode(&padded, p);
            exp[k] = code;
            exp[k + group as usize] = code;
            log[code as usize] = k as u32;
            cur = fp_poly::mul_mod(&cur, &g, &m, p);
        }

        let add_codes = |a: u32, b: u32| -> u32 {
            let (x, y) = (decode(a, p, e), decode(b, p, e));
            let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
            encode(&s, p)
        };
        let zech = (0..group as usize)
            .map(|k| {
                let s = add_codes(1, exp[k]);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let neg_one_log = if p == 2 { 0 } else { group / 2 };
        let frob_exp = (0..e)
            .map(|j| {
                let mut v = 1u64;
                for _ in 0..j {
                    v = v * p as u64 % group.max(1) as u64;
                }
                v
            })
            .collect();

        Field {
            t: Arc::new(Tables {
                params,
                order,
                group,
                exp,
                log,
                zech,
                neg_one_log,
                frob_exp,
                generator,
            }),
        }
    }

    pub fn params(&self) -> &FieldParams {
        &self.t.params
    }

    pub fn characteristic(&self) -> u32 {
        self.t.params.p
    }

    pub fn degree(&self) -> u32 {
        self.t.params.e
    }

    pub fn order(&self) -> u32 {
        self.t.order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.t.generator)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.t.params.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        let (p, e) = (self.t.params.p, self.t.params.e);
        if coeffs.len() > e as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::BadCoefficients { coeffs: coeffs.to_vec(), p, e });
        }
        let mut padded = coeffs.to_vec();
        padded.resize(e as usize, 0);
        Ok(FieldElement(encode(&padded, p)))
    }

    pub fn from_code(&self, code: u32) -> Option<FieldElement> {
        (code < self.t.order).then_some(FieldElement(code))
    }

    /// Little-endian coefficient vector of length `e`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        decode(x.0, self.t.params.p, self.t.params.e)
    }

    /// All elements, ordered by code.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.order).map(FieldElement)
    }

    /// Elements of the subfield GF(p^d), i.e. the fixed points of `x -> x^(p^d)`.
    pub fn subfield_elements(&self, d: u32) -> Vec<FieldElement> {
        self.elements().filter(|&x| self.frobenius(x, d as i64) == x).collect()
    }

    pub fn contains_subfield(&self, d: u32) -> bool {
        d > 0 && self.t.params.e.is_multiple_of(d)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.t.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.t.order))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let t = &*self.t;
        let la = t.log[a.0 as usize];
        let lb = t.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + t.group - la };
        let z = t.zech[d as usize];
        if z == NO_LOG {
            FieldElement::ZERO
        } else {
            FieldElement(t.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 || self.t.neg_one_log == 0 {
            return a;
        }
        let t = &*self.t;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.neg_one_log) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> FieldElement {
        self.add(self.mul(a, b), c)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize];
        Some(FieldElement(t.exp[((t.group - l) % t.group) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let l = t.log[a.0 as usize] as u64;
        let g = t.group as u64;
        FieldElement(t.exp[((l * (k % g)) % g) as usize])
    }

    /// `x^(p^k)`; negative `k` gives the inverse automorphisms.
    pub fn frobenius(&self, x: FieldElement, k: i64) -> FieldElement {
        if x.0 == 0 {
            return x;
        }
        let t = &*self.t;
        let j = k.rem_euclid(t.params.e as i64) as usize;
        let l = t.log[x.0 as usize] as u64;
        FieldElement(t.exp[((l * t.frob_exp[j]) % t.group as u64) as usize])
    }

    /// The unique `y` with `y^p = x`.
    pub fn inv_frobenius(&self, x: FieldElement) -> FieldElement {
        self.frobenius(x, -1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let g = self.t.group as u64;
        let l = self.t.log[x.0 as usize] as u64;
        Some(g / gcd(g, l))
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter()
            .zip(b)
            .fold(FieldElement::ZERO, |acc, (&x, &y)| self.mul_add(x, y, acc))
    }

    /// Human-readable form, e.g. `2t+1`.
    pub fn format(&self, x: FieldElement) -> String {
        if self.t.params.e == 1 {
            return x.0.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(x)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Trial division by every monic polynomial of degree at most e/2.
    fn irreducible_by_trial_division(f: &[u32], p: u32) -> bool {
        let e = f.len() - 1;
        for d in 1..=e / 2 {
            let count = (p as usize).pow(d as u32);
            for code in 0..count {
                let mut g = decode(code as u32, p, d as u32);
                g.push(1);
                if fp_poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn lex_least_by_trial_division(p: u32, e: u32) -> Vec<u32> {
        (0..p.pow(e))
            .map(|c| {
                let mut m = decode(c, p, e);
                m.push(1);
                m
            })
            .find(|m| irreducible_by_trial_division(m, p))
            .unwrap()
    }

    #[test]
    fn moduli_match_trial_division() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2), (3, 4), (5, 2), (7, 2), (2, 8)] {
            let params = FieldParams::new(p, e).unwrap();
            assert_eq!(params.modulus, lex_least_by_trial_division(p as u32, e), "GF({p}^{e})");
        }
    }

    #[test]
    fn gf9_modulus_and_frobenius() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.params().modulus, vec![1, 0, 1]);
        let t = f.from_coeffs(&[0, 1]).unwrap();
        let two_t = f.from_coeffs(&[0, 2]).unwrap();
        assert_eq!(f.frobenius(t, 1), two_t);
        assert_eq!(f.inv_frobenius(two_t), t);
        assert_eq!(f.frobenius(f.one(), 5), f.one());
        assert_eq!(f.inv_frobenius(f.zero()), f.zero());
    }

    #[test]
    fn gf2_and_gf64() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.params().modulus.len(), 2);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![FieldElement::ZERO, FieldElement::ONE]);
        let g = Field::new(2, 6).unwrap();
        assert_eq!(g.order(), 64);
        assert!(irreducible_by_trial_division(&g.params().modulus, 2));
    }

    #[test]
    fn prime_field_elements_fixed_by_frobenius() {
        let f = Field::new(3, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius(x, 1), x);
        }
    }

    #[test]
    fn enumeration_is_distinct() {
        for q in [4u64, 9, 16, 25] {
            let f = Field::of_order(q).unwrap();
            let els: std::collections::BTreeSet<_> = f.elements().collect();
            assert_eq!(els.len() as u64, q);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldParams::new(4, 1), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldParams::new(3, 0), Err(FieldError::ZeroDegree));
        assert!(matches!(FieldParams::new(2, 17), Err(FieldError::TooLarge { .. })));
        let bad = FieldParams { p: 2, e: 2, modulus: vec![1, 0, 1] };
        assert!(Field::from_params(bad).is_err());
    }

    #[test]
    fn generator_has_full_order() {
        for q in [2u64, 3, 4, 8, 9, 16, 27, 81, 256] {
            let f = Field::of_order(q).unwrap();
            assert_eq!(f.multiplicative_order(f.generator()), Some(q - 1));
            // independent check by repeated multiplication
            let mut x = f.generator();
            let mut k = 1;
            while x != f.one() {
                x = f.mul(x, f.generator());
                k += 1;
            }
            assert_eq!(k, q - 1);
        }
    }

    #[test]
    fn inverse_frobenius_roundtrip_exhaustive() {
        let mut q = 2u64;
        while q <= 1 << 12 {
            if let Some((p, e)) = prime_power(q) {
                let f = Field::new(p, e).unwrap();
                for x in f.elements() {
                    assert_eq!(f.frobenius(f.inv_frobenius(x), 1), x);
                    assert_eq!(f.inv_frobenius(f.frobenius(x, 1)), x);
                }
            }
            q += 1;
        }
    }

    #[test]
    fn addition_matches_coefficientwise() {
        let f = Field::new(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let expect: Vec<u32> =
                    f.coeffs(a).iter().zip(f.coeffs(b)).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.coeffs(f.add(a, b)), expect);
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop::sample::select(vec![2u64, 4, 8, 9, 16, 25, 27, 49, 64, 81, 125, 1024])
            .prop_map(|q| Field::of_order(q).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let n = f.order();
            let (a, b, c) = (FieldElement(a % n), FieldElement(b % n), FieldElement(c % n));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }

        #[test]
        fn frobenius_is_automorphism(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), k in 0i64..6) {
            let n = f.order();
            let (a, b) = (FieldElement(a % n), FieldElement(b % n));
            prop_assert_eq!(f.frobenius(f.add(a, b), k), f.add(f.frobenius(a, k), f.frobenius(b, k)));
            prop_assert_eq!(f.frobenius(f.mul(a, b), k), f.mul(f.frobenius(a, k), f.frobenius(b, k)));
            prop_assert_eq!(f.frobenius(a, k), f.pow(a, (f.characteristic() as u64).pow(k as u32)));
        }
    }
}
