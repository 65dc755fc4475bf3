//! Weights, Euler characters and the Jantzen sum formula for `SL_3` in
//! characteristic `p`, with the dimension tables built from them.
//!
//! A weight `(a, b)` means `a w_1 + b w_2` in the fundamental-weight basis.
//! Characters are tracked only as formal sums of Weyl characters, never as
//! modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohom::{binomial, monomials, GradedDimTable, TableMode};
use crate::gf::{is_prime, Field};
use crate::semilin::Mat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepsError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Weight {
    pub const RHO: Weight = Weight { a: 1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Weight {
        Weight { a, b }
    }

    pub fn is_dominant(&self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    pub fn plus(self, o: Weight) -> Weight {
        Weight::new(self.a + o.a, self.b + o.b)
    }

    pub fn minus(self, o: Weight) -> Weight {
        Weight::new(self.a - o.a, self.b - o.b)
    }

    pub fn scale(self, k: i64) -> Weight {
        Weight::new(self.a * k, self.b * k)
    }

    /// `<self, alpha^vee>`.
    pub fn pairing(&self, alpha: Root) -> i64 {
        match alpha {
            Root::Alpha1 => self.a,
            Root::Alpha2 => self.b,
            Root::Highest => self.a + self.b,
        }
    }

    /// Whether `self - other` is a nonnegative integer combination of the
    /// simple roots.
    pub fn dominates(&self, other: &Weight) -> bool {
        // lambda - mu = c1 alpha_1 + c2 alpha_2 with c1 = (2x + y)/3, c2 = (x + 2y)/3
        let d = self.minus(*other);
        let (n1, n2) = (2 * d.a + d.b, d.a + 2 * d.b);
        n1 % 3 == 0 && n2 % 3 == 0 && n1 >= 0 && n2 >= 0
    }
}

/// Positive roots of `SL_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    Alpha1,
    Alpha2,
    Highest,
}

impl Root {
    pub const ALL: [Root; 3] = [Root::Alpha1, Root::Alpha2, Root::Highest];

    pub fn weight(self) -> Weight {
        match self {
            Root::Alpha1 => Weight::new(2, -1),
            Root::Alpha2 => Weight::new(-1, 2),
            Root::Highest => Weight::new(1, 1),
        }
    }
}

/// `s_{alpha, n}(lambda) = lambda + (n - <lambda, alpha^vee>) alpha`.
pub fn affine_reflection(lambda: Weight, alpha: Root, n: i64) -> Weight {
    lambda.plus(alpha.weight().scale(n - lambda.pairing(alpha)))
}

/// `s_{alpha, n} . lambda = s_{alpha, n}(lambda + rho) - rho`.
pub fn dot_reflection(lambda: Weight, alpha: Root, n: i64) -> Weight {
    affine_reflection(lambda.plus(Weight::RHO), alpha, n).minus(Weight::RHO)
}

pub fn weyl_dim(a: i64, b: i64) -> Result<u64, RepsError> {
    if a < 0 || b < 0 {
        return Err(RepsError::NotDominant(Weight::new(a, b)));
    }
    Ok(((a + 1) * (b + 1) * (a + b + 2) / 2) as u64)
}

/// `chi(lambda) = sign * ch Delta(weight)`; sign 0 when `lambda + rho` is on a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub sign: i64,
    pub weight: Option<Weight>,
}

pub fn chi_dominant_reduce(lambda: Weight) -> Reduced {
    let (mut x, mut y) = (lambda.a + 1, lambda.b + 1);
    if x == 0 || y == 0 || x + y == 0 {
        return Reduced { sign: 0, weight: None };
    }
    let mut sign = 1;
    while x < 0 || y < 0 {
        if x < 0 {
            (x, y) = (-x, x + y);
        } else {
            (x, y) = (x + y, -y);
        }
        sign = -sign;
    }
    Reduced { sign, weight: Some(Weight::new(x - 1, y - 1)) }
}

/// Formal integer combination of Weyl characters `ch Delta(lambda)` (or of
/// simple characters, depending on context), zero coefficients removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalChar {
    terms: BTreeMap<Weight, i64>,
}

impl FormalChar {
    pub fn new() -> FormalChar {
        FormalChar::default()
    }

    pub fn single(w: Weight) -> FormalChar {
        let mut c = FormalChar::new();
        c.add(w, 1);
        c
    }

    pub fn add(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    /// Adds `c * chi(lambda)` after reducing to a dominant Weyl character.
    pub fn add_chi(&mut self, lambda: Weight, c: i64) {
        let r = chi_dominant_reduce(lambda);
        if let Some(w) = r.weight {
            self.add(w, r.sign * c);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Weight) -> i64 {
        self.terms.get(&w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Weight, i64)> + '_ {
        self.terms.iter().map(|(&w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }
}

fn p_adic_valuation(mut n: i64, p: i64) -> i64 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Right side of the sum formula, in the basis of Weyl characters.
pub fn jantzen_sum(lambda: Weight, p: u64) -> Result<FormalChar, RepsError> {
    if !is_prime(p) {
        return Err(RepsError::NotPrime(p));
    }
    if !lambda.is_dominant() {
        return Err(RepsError::NotDominant(lambda));
    }
    let p = p as i64;
    let shifted = lambda.plus(Weight::RHO);
    let mut out = FormalChar::new();
    for alpha in Root::ALL {
        let bound = shifted.pairing(alpha);
        let mut mp = p;
        while mp < bound {
            out.add_chi(dot_reflection(lambda, alpha, mp), p_adic_valuation(mp, p));
            mp += p;
        }
    }
    Ok(out)
}

/// Composition factors of `Delta(lambda)`, each with multiplicity, or `None`
/// when the sum formula does not pin them down.
///
/// A simple factor whose total coefficient in the sum formula is 1 occurs in
/// exactly one filtration layer, once; anything else is left undetermined.
pub fn weyl_composition(lambda: Weight, p: u64) -> Result<Option<FormalChar>, RepsError> {
    let sum = jantzen_sum(lambda, p)?;
    let mut in_simples = FormalChar::new();
    for (mu, c) in sum.terms() {
        match weyl_composition(mu, p)? {
            Some(factors) => {
                for (nu, k) in factors.terms() {
                    in_simples.add(nu, c * k);
                }
            }
            None => return Ok(None),
        }
    }
    if in_simples.terms().any(|(_, c)| c != 1) {
        return Ok(None);
    }
    in_simples.add(lambda, 1);
    Ok(Some(in_simples))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "dim")]
pub enum SimpleDim {
    Known(u64),
    Undetermined,
}

impl SimpleDim {
    pub fn known(self) -> Option<u64> {
        match self {
            SimpleDim::Known(d) => Some(d),
            SimpleDim::Undetermined => None,
        }
    }
}

/// `dim L(a, b)` from the Weyl dimension minus the other composition factors.
pub fn simple_dim(a: i64, b: i64, p: u64) -> Result<SimpleDim, RepsError> {
    let lambda = Weight::new(a, b);
    let Some(factors) = weyl_composition(lambda, p)? else {
        return Ok(SimpleDim::Undetermined);
    };
    let mut dim = weyl_dim(a, b)? as i64;
    for (mu, k) in factors.terms() {
        if mu == lambda {
            continue;
        }
        match simple_dim(mu.a, mu.b, p)? {
            SimpleDim::Known(d) => dim -= k * d as i64,
            SimpleDim::Undetermined => return Ok(SimpleDim::Undetermined),
        }
    }
    Ok(SimpleDim::Known(dim as u64))
}

/// `dim Sym^b(E)/(E^[1] (x) Sym^(b-q)(E))` for `dim E = 3`.
pub fn div_red_dim(b: u64, q: u64) -> u64 {
    if b < 2 * q {
        binomial(b as i64 + 2, 2) - 3 * binomial(b as i64 - q as i64 + 2, 2)
    } else {
        div_red_dim_matrix(b, q)
    }
}

/// The same dimension from the rank of `e_i (x) g -> x_i^q g` over `GF(p)`.
pub fn div_red_dim_matrix(b: u64, q: u64) -> u64 {
    let field = crate::gf::prime_power(q).and_then(|(p, _)| Field::new(p, 1).ok()).expect("prime power q");
    let target = monomials(b as u32, 3);
    if b < q {
        return target.len() as u64;
    }
    let index: std::collections::HashMap<&[u32], usize> =
        target.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let source = monomials((b - q) as u32, 3);
    let mut m = Mat::zeros(&field, target.len(), 3 * source.len());
    for i in 0..3 {
        for (j, g) in source.iter().enumerate() {
            let mut e = g.clone();
            e[i] += q as u32;
            m[(index[e.as_slice()], i * source.len() + j)] = field.one();
        }
    }
    target.len() as u64 - m.rank() as u64
}

/// Conductor bound `2q^2 - q - 2` on the degrees of the table.
pub fn delta(q: u64) -> u64 {
    2 * q * q - q - 2
}

/// Degrees and dimensions of the summands of `H^0(C, F)`: the summand at
/// `(a, b)` sits in degree `bp + p - 1 - a(p + 1)` with dimension
/// `div_red_dim(2p - 3 - b, p)`.
pub fn theorem_dims(p: u64) -> Result<GradedDimTable, RepsError> {
    if !is_prime(p) {
        return Err(RepsError::NotPrime(p));
    }
    let top = delta(p) as usize;
    let mut dims = vec![0u64; top + 1];
    for b in 0..=(2 * p).saturating_sub(3) {
        if 2 * p < 3 {
            break;
        }
        for a in 0..=b.min(p - 1) {
            let i = (b * p + p - 1 - a * (p + 1)) as usize;
            dims[i] += div_red_dim(2 * p - 3 - b, p);
        }
    }
    Ok(GradedDimTable { q: p, mode: TableMode::Formula, entries: dims.into_iter().enumerate().collect() })
}

/// `(dim Lambda_1, dim Lambda_2)` of the two summands of `H^0(C, F)`.
pub fn lambda_split(p: u64) -> Result<(u64, u64), RepsError> {
    if !is_prime(p) {
        return Err(RepsError::NotPrime(p));
    }
    let l1 = (0..p).map(|b| binomial((p - b) as i64, 2) * p).sum();
    let l2 = (0..p).map(|a| div_red_dim(p + a - 1, p) * (p - 1 - a)).sum();
    Ok((l1, l2))
}

/// `(p^2 + 1) C(p, 2) + C(p, 3)`.
pub fn closed_form_total(p: u64) -> u64 {
    (p * p + 1) * binomial(p as i64, 2) + binomial(p as i64, 3)
}
