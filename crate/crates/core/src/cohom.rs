//! Monomial-basis cohomology of line bundles on `P^n` and on plane q-bic
//! curves.
//!
//! `H^n(P^n, O(d))` has basis `1/(x_0^i_0 ... x_n^i_n)` with all `i_j >= 1` and
//! `sum i_j = -d`; polynomials act by contraction, subtracting exponents and
//! dropping classes with a nonpositive exponent.
//!
//! The cohomology curve is `f = x^q y + x y^q - z^(q+1)`. The nodal geometry
//! in [`crate::fano`] uses `+z^(q+1)`; the two agree after `z -> c z` with
//! `c^(q+1) = -1`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{prime_power, Field, FieldElement};
use crate::qbic::QBicForm;
use crate::semilin::{Mat, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomError {
    #[error("degree index i = {i} outside 0..={max} for q = {q}")]
    IndexOutOfRange { q: u64, i: usize, max: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("ambient dimension must be at least 2, got {0}")]
    AmbientTooSmall(usize),
    #[error("the image of the curve classes does not lie in the curve-level kernel (q = {q}, i = {i})")]
    NotWellDefined { q: u64, i: usize },
}

/// Basis class `1/(x_0^e_0 ... x_n^e_n)` of `H^n(P^n, O(-sum e))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CohClass {
    pub exps: Vec<u32>,
}

impl CohClass {
    pub fn new(exps: Vec<u32>) -> Option<CohClass> {
        exps.iter().all(|&e| e >= 1).then_some(CohClass { exps })
    }

    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn degree(&self) -> i64 {
        -(self.exps.iter().map(|&e| e as i64).sum::<i64>())
    }

    /// `xi^(p^k)` on a basis class: exponents scale by `p^k`.
    pub fn power(&self, m: u32) -> CohClass {
        CohClass { exps: self.exps.iter().map(|&e| e * m).collect() }
    }
}

/// Compositions of `total` into `parts` positive parts, in decreasing
/// lexicographic order.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            if total >= min {
                acc.push(total);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        let max = total.saturating_sub(min * (parts as u32 - 1));
        for first in (min..=max).rev() {
            acc.push(first);
            go(total - first, parts - 1, min, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Exponent vectors of degree-`deg` monomials in `nvars` variables, in
/// decreasing lexicographic order (`x_0 > x_1 > ...`).
pub fn monomials(deg: u32, nvars: usize) -> Vec<Vec<u32>> {
    compositions(deg + nvars as u32, nvars)
        .into_iter()
        .map(|v| v.into_iter().map(|e| e - 1).collect())
        .collect()
}

/// Basis of `H^n(P^n, O(d))`, of size `C(-d-1, n)`.
pub fn h_top_basis(n: usize, d: i64) -> Vec<CohClass> {
    if d > -(n as i64 + 1) {
        return Vec::new();
    }
    compositions((-d) as u32, n + 1).into_iter().map(|exps| CohClass { exps }).collect()
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Homogeneous polynomial with sparse coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    field: Field,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl SparsePoly {
    pub fn zero(field: &Field, nvars: usize, degree: u32) -> SparsePoly {
        SparsePoly { field: field.clone(), nvars, degree, terms: BTreeMap::new() }
    }

    pub fn one(field: &Field, nvars: usize) -> SparsePoly {
        SparsePoly::monomial(field, vec![0; nvars], field.one())
    }

    pub fn monomial(field: &Field, exps: Vec<u32>, c: FieldElement) -> SparsePoly {
        let mut p = SparsePoly::zero(field, exps.len(), exps.iter().sum());
        p.add_term(exps, c);
        p
    }

    /// Sum of `(coefficient, exponents)` terms, all of the same degree.
    pub fn from_terms(field: &Field, nvars: usize, terms: &[(i64, Vec<u32>)]) -> SparsePoly {
        let degree = terms.first().map_or(0, |(_, e)| e.iter().sum());
        let mut p = SparsePoly::zero(field, nvars, degree);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            assert_eq!(e.iter().sum::<u32>(), degree, "inhomogeneous term");
            p.add_term(e.clone(), field.from_int(*c));
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElement {
        self.terms.get(exps).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        assert!(self.is_zero() || other.is_zero() || self.degree == other.degree, "inhomogeneous sum");
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let f = &self.field;
        let mut acc: HashMap<Vec<u32>, FieldElement> = HashMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = acc.entry(e).or_insert(FieldElement::ZERO);
                *slot = f.mul_add(ca, cb, *slot);
            }
        }
        let mut out = SparsePoly::zero(f, self.nvars, self.degree + other.degree);
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut result = SparsePoly::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `g^(p^k)` computed termwise, valid in characteristic `p`.
    pub fn frobenius_power(&self, k: u32) -> SparsePoly {
        let m = self.field.characteristic().pow(k);
        let mut out = SparsePoly::zero(&self.field, self.nvars, self.degree * m);
        for (e, &c) in &self.terms {
            out.add_term(e.iter().map(|x| x * m).collect(), self.field.frobenius(c, k as i64));
        }
        out
    }

    pub fn evaluate(&self, x: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter().zip(x).fold(c, |acc, (&k, &xi)| f.mul(acc, f.pow(xi, k as u64)))
            })
            .fold(FieldElement::ZERO, |a, b| f.add(a, b))
    }

    /// Exact quotient by `d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &SparsePoly) -> Option<SparsePoly> {
        let f = &self.field;
        let (lead_e, lead_c) = d.terms.iter().next_back()?;
        let lead_inv = f.inv(*lead_c)?;
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(f, self.nvars, self.degree.checked_sub(d.degree)?);
        while let Some((e, &c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = f.mul(c, lead_inv);
            let step = SparsePoly::monomial(f, qe.clone(), qc).mul(d);
            rem = rem.add(&step.neg());
            quot.add_term(qe, qc);
        }
        Some(quot)
    }
}

/// Contraction of a polynomial with a basis class.
pub fn contract(p: &SparsePoly, xi: &CohClass) -> Vec<(CohClass, FieldElement)> {
    let mut out: BTreeMap<CohClass, FieldElement> = BTreeMap::new();
    let f = p.field();
    for (e, &c) in p.terms() {
        if e.iter().zip(&xi.exps).all(|(m, k)| m < k) {
            let cls = CohClass { exps: xi.exps.iter().zip(e).map(|(k, m)| k - m).collect() };
            let slot = out.entry(cls).or_insert(FieldElement::ZERO);
            *slot = f.add(*slot, c);
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn index_of(classes: &[CohClass]) -> HashMap<&[u32], usize> {
    classes.iter().enumerate().map(|(i, c)| (c.exps.as_slice(), i)).collect()
}

/// Matrix of contraction by `p` from `H^n(O(d))` to `H^n(O(d + deg p))`,
/// columns indexed by [`h_top_basis`] of the source.
pub fn contraction_matrix(p: &SparsePoly, d: i64) -> Mat {
    let n = p.nvars() - 1;
    let src = h_top_basis(n, d);
    let tgt = h_top_basis(n, d + p.degree() as i64);
    let idx = index_of(&tgt);
    let mut m = Mat::zeros(p.field(), tgt.len(), src.len());
    for (j, xi) in src.iter().enumerate() {
        for (cls, c) in contract(p, xi) {
            m[(idx[cls.exps.as_slice()], j)] = c;
        }
    }
    m
}

/// The q-bic polynomial `sum a_ij x_i^q x_j` of a form.
pub fn form_polynomial(form: &QBicForm) -> SparsePoly {
    let f = form.field();
    let n = form.dim();
    let q = form.q() as u32;
    let mut p = SparsePoly::zero(f, n, q + 1);
    for i in 0..n {
        for j in 0..n {
            let mut e = vec![0; n];
            e[i] += q;
            e[j] += 1;
            p.add_term(e, form.gram()[(i, j)]);
        }
    }
    p
}

/// Matrix of `xi -> f^(q-1) . xi^(q)` on `H^n(P^n, O(-q-1)) = H^(n-1)(X, O_X)`.
/// The map is q-semilinear; the matrix records the images of basis classes.
pub fn frobenius_action_on_x(form: &QBicForm) -> Result<Mat, CohomError> {
    let n = form.n();
    if n < 2 {
        return Err(CohomError::AmbientTooSmall(n));
    }
    let q = form.q();
    let fq1 = form_polynomial(form).pow(q as u32 - 1);
    let d = -(q as i64) - 1;
    let basis = h_top_basis(n, d);
    let idx = index_of(&basis);
    let mut m = Mat::zeros(form.field(), basis.len(), basis.len());
    for (j, xi) in basis.iter().enumerate() {
        for (cls, c) in contract(&fq1, &xi.power(q as u32)) {
            m[(idx[cls.exps.as_slice()], j)] = c;
        }
    }
    Ok(m)
}

/// `x^q y + x y^q - z^(q+1)` over the given field.
pub fn cohomology_curve(q: u64, field: &Field) -> SparsePoly {
    let q = q as u32;
    SparsePoly::from_terms(field, 3, &[(1, vec![q, 1, 0]), (1, vec![1, q, 0]), (-1, vec![0, 0, q + 1])])
}

/// `H^1(C, O_C(d))` as the kernel of contraction by the curve equation
/// `H^2(O(d - deg f)) -> H^2(O(d))`.
#[derive(Clone, Debug)]
pub struct CurveH1 {
    pub d: i64,
    /// Basis of the ambient `H^2(P^2, O(d - deg f))`.
    pub classes: Vec<CohClass>,
    pub f_matrix: Mat,
    pub kernel: Subspace,
}

impl CurveH1 {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }
}

/// The sequence `0 -> O(d - deg f) -> O(d) -> O_C(d) -> 0` identifies
/// `H^1(C, O_C(d))` with this kernel for every `d`, since `H^1(P^2, O(d)) = 0`.
pub fn curve_h1_basis(f: &SparsePoly, d: i64) -> CurveH1 {
    let src_d = d - f.degree() as i64;
    let f_matrix = contraction_matrix(f, src_d);
    let classes = h_top_basis(2, src_d);
    let kernel = if classes.is_empty() { Subspace::zero(f.field(), 0) } else { f_matrix.kernel() };
    CurveH1 { d, classes, f_matrix, kernel }
}

/// `h^0(C, O_C(d))` from the same sequence: multiplication by `f` is
/// injective on sections and `H^1(P^2, O(d - deg f)) = 0`.
pub fn curve_h0_dim(f: &SparsePoly, d: i64) -> u64 {
    let h0 = |k: i64| if k < 0 { 0 } else { binomial(k + 2, 2) };
    h0(d) - h0(d - f.degree() as i64)
}

/// `theta = z sum_{j=0}^{q} (-1)^j x^((q-j)(q-1)) y^(j(q-1))`, a lift of the
/// section cutting out the Hermitian points of the curve.
pub fn theta_poly(q: u64, field: &Field) -> SparsePoly {
    let q = q as u32;
    let terms: Vec<(i64, Vec<u32>)> = (0..=q)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            (sign, vec![(q - j) * (q - 1), j * (q - 1), 1])
        })
        .collect();
    SparsePoly::from_terms(field, 3, &terms)
}

/// Data of the map `nu_i: H^1(C, O_C(-i)) -> H^1(C, O_C(-i(q-1)))`.
#[derive(Clone, Debug)]
pub struct NuMap {
    pub q: u64,
    pub i: usize,
    pub source: CurveH1,
    /// Target basis of `H^2(P^2, O(-i(q-1) - q - 1))`.
    pub target: Vec<CohClass>,
    /// `xi -> contract(f^(q^2-1) theta^i, xi^(q^2))` on all source classes.
    pub matrix: Mat,
}

impl NuMap {
    /// Dimension of the kernel on curve classes, i.e. `dim ker [F; M]`.
    pub fn kernel_dim(&self) -> usize {
        let rows: Vec<_> = self
            .source
            .f_matrix
            .row_vectors()
            .into_iter()
            .chain(self.matrix.row_vectors())
            .collect();
        let cols = self.source.classes.len();
        if rows.is_empty() {
            return cols;
        }
        cols - Mat::from_rows(self.matrix.field(), &rows).expect("rectangular").rank()
    }

    /// Whether the map is nonzero on curve classes.
    pub fn is_nonzero(&self) -> bool {
        self.source
            .kernel
            .basis_vectors()
            .iter()
            .any(|v| self.matrix.mul_vec(v).expect("dimensions").iter().any(|x| !x.is_zero()))
    }

    /// Image of a single ambient class, as coefficients on [`NuMap::target`].
    pub fn image_of(&self, xi: &CohClass) -> Option<Vec<FieldElement>> {
        let j = self.source.classes.iter().position(|c| c == xi)?;
        Some(self.matrix.column(j))
    }
}

fn check_q(q: u64) -> Result<(u64, u32), CohomError> {
    prime_power(q).ok_or(CohomError::NotPrimePower(q))
}

/// `f^(q^2 - 1) theta^i`, using `f^(q^2-1) = (f^(q-1))^(q) f^(q-1)`.
pub fn nu_polynomial(q: u64, i: usize, field: &Field) -> SparsePoly {
    let (_, e) = prime_power(q).expect("prime power");
    let f = cohomology_curve(q, field);
    let g = f.pow(q as u32 - 1);
    let fq2 = g.frobenius_power(e).mul(&g);
    fq2.mul(&theta_poly(q, field).pow(i as u32))
}

/// Builds the `nu` map; `i` may range over `0..=q`.
pub fn nu_map(q: u64, i: usize) -> Result<NuMap, CohomError> {
    let (p, _) = check_q(q)?;
    if i > q as usize {
        return Err(CohomError::IndexOutOfRange { q, i, max: q as usize });
    }
    let field = Field::new(p, 1).expect("prime field");
    let f = cohomology_curve(q, &field);
    let source = curve_h1_basis(&f, -(i as i64));
    let big = nu_polynomial(q, i, &field);
    let lookup: HashMap<&[u32], FieldElement> = big.terms().map(|(e, &c)| (e.as_slice(), c)).collect();
    let target_d = -(i as i64) * (q as i64 - 1) - q as i64 - 1;
    let target = h_top_basis(2, target_d);
    let q2 = (q * q) as u32;
    // Entry (eta, xi) is the coefficient of x^(q^2 a - a') ... in P.
    let columns: Vec<Vec<FieldElement>> = source
        .classes
        .par_iter()
        .map(|xi| {
            let up = xi.power(q2);
            target
                .iter()
                .map(|eta| {
                    let need: Option<Vec<u32>> =
                        up.exps.iter().zip(&eta.exps).map(|(&k, &t)| k.checked_sub(t)).collect();
                    need.and_then(|e| lookup.get(e.as_slice()).copied()).unwrap_or(FieldElement::ZERO)
                })
                .collect()
        })
        .collect();
    let mut matrix = Mat::zeros(&field, target.len(), source.classes.len());
    for (j, col) in columns.iter().enumerate() {
        for (r, &c) in col.iter().enumerate() {
            matrix[(r, j)] = c;
        }
    }
    Ok(NuMap { q, i, source, target, matrix })
}

/// `dim H^0(C, F_i)` for `0 <= i <= q - 1` as the kernel dimension of `nu_i`,
/// after checking that `nu_i` maps curve classes to curve classes.
pub fn nu_kernel_dim(q: u64, i: usize) -> Result<usize, CohomError> {
    check_q(q)?;
    if i >= q as usize {
        return Err(CohomError::IndexOutOfRange { q, i, max: q as usize - 1 });
    }
    let nu = nu_map(q, i)?;
    let field = nu.matrix.field().clone();
    let f = cohomology_curve(q, &field);
    let target_f = contraction_matrix(&f, -(i as i64) * (q as i64 - 1) - q as i64 - 1);
    if target_f.rows() > 0 && !nu.target.is_empty() {
        for v in nu.source.kernel.basis_vectors() {
            let image = nu.matrix.mul_vec(&v).expect("dimensions");
            if target_f.mul_vec(&image).expect("dimensions").iter().any(|x| !x.is_zero()) {
                return Err(CohomError::NotWellDefined { q, i });
            }
        }
    }
    Ok(nu.kernel_dim())
}

/// The row `(dim H^0(C, F_i))_{0 <= i < q}`, computed in parallel.
pub fn nu_row(q: u64) -> Result<Vec<usize>, CohomError> {
    check_q(q)?;
    (0..q as usize).into_par_iter().map(|i| nu_kernel_dim(q, i)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMode {
    Direct,
    Formula,
}

/// Graded dimensions `dim H^0(C, F_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimTable {
    pub q: u64,
    pub mode: TableMode,
    pub entries: Vec<(usize, u64)>,
}

impl GradedDimTable {
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, d)| d).sum()
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.entries.iter().find(|(j, _)| *j == i).map(|(_, d)| *d)
    }
}

/// Direct computation of the table in degrees `0..q`.
pub fn direct_table(q: u64) -> Result<GradedDimTable, CohomError> {
    let row = nu_row(q)?;
    Ok(GradedDimTable {
        q,
        mode: TableMode::Direct,
        entries: row.into_iter().enumerate().map(|(i, d)| (i, d as u64)).collect(),
    })
}

/// Cohomology dimensions `(h^0, h^1, h^2)` of `Sym^b(T(-1))(a)` on `P^2`
/// over `field`, from the resolution
/// `0 -> Sym^(b-1) W (a-1) -> Sym^b W (a) -> Sym^b(T(-1))(a) -> 0`
/// whose first map is `s (x) g -> sum_i s e_i (x) x_i g`.
pub fn homog_bundle_cohomology(a: i64, b: u32, field: &Field) -> (usize, usize, usize) {
    let h0_map = euler_map_h0(a, b, field);
    let h2_map = euler_map_h2(a, b, field);
    let h0 = h0_map.rows() - h0_map.rank();
    let (h1, h2) = {
        let r = h2_map.rank();
        (h2_map.cols() - r, h2_map.rows() - r)
    };
    (h0, h1, h2)
}

fn sym_basis(b: i64) -> Vec<Vec<u32>> {
    if b < 0 {
        Vec::new()
    } else {
        monomials(b as u32, 3)
    }
}

fn poly_basis(d: i64) -> Vec<Vec<u32>> {
    sym_basis(d)
}

fn add_unit(e: &[u32], i: usize) -> Vec<u32> {
    let mut v = e.to_vec();
    v[i] += 1;
    v
}

/// Matrix of the Euler map on global sections.
fn euler_map_h0(a: i64, b: u32, field: &Field) -> Mat {
    let src_s = sym_basis(b as i64 - 1);
    let src_g = poly_basis(a - 1);
    let tgt_s = sym_basis(b as i64);
    let tgt_g = poly_basis(a);
    let tgt: HashMap<(Vec<u32>, Vec<u32>), usize> = tgt_s
        .iter()
        .flat_map(|s| tgt_g.iter().map(move |g| (s.clone(), g.clone())))
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut m = Mat::zeros(field, tgt.len(), src_s.len() * src_g.len());
    for (si, s) in src_s.iter().enumerate() {
        for (gi, g) in src_g.iter().enumerate() {
            let col = si * src_g.len() + gi;
            for i in 0..3 {
                let r = tgt[&(add_unit(s, i), add_unit(g, i))];
                m[(r, col)] = field.add(m[(r, col)], field.one());
            }
        }
    }
    m
}

/// Matrix of the Euler map on `H^2`.
fn euler_map_h2(a: i64, b: u32, field: &Field) -> Mat {
    let src_s = sym_basis(b as i64 - 1);
    let src_c = h_top_basis(2, a - 1);
    let tgt_s = sym_basis(b as i64);
    let tgt_c = h_top_basis(2, a);
    let tgt: HashMap<(Vec<u32>, Vec<u32>), usize> = tgt_s
        .iter()
        .flat_map(|s| tgt_c.iter().map(move |c| (s.clone(), c.exps.clone())))
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut m = Mat::zeros(field, tgt.len(), src_s.len() * src_c.len());
    for (si, s) in src_s.iter().enumerate() {
        for (ci, c) in src_c.iter().enumerate() {
            let col = si * src_c.len() + ci;
            for i in 0..3 {
                if c.exps[i] < 2 {
                    continue;
                }
                let mut e = c.exps.clone();
                e[i] -= 1;
                let r = tgt[&(add_unit(s, i), e)];
                m[(r, col)] = field.add(m[(r, col)], field.one());
            }
        }
    }
    m
}

/// `h^0(C, Sym^b(T(-1))(a)|_C)` for the cohomology curve of degree `q + 1`:
/// `h^0(E(a)) - h^0(E(a-q-1))` plus the kernel of `f` on
/// `H^1(E(a-q-1)) = ker(H^2(A) -> H^2(B))`.
pub fn curve_homog_h0(a: i64, b: u32, q: u64, field: &Field) -> usize {
    let deg = q as i64 + 1;
    let (h0_here, _, _) = homog_bundle_cohomology(a, b, field);
    let (h0_twist, _, _) = homog_bundle_cohomology(a - deg, b, field);
    let r1 = euler_map_h2(a - deg, b, field);
    // Multiplication by f on H^2(Sym^(b-1) W (x) O(a - deg - 1)).
    let f = cohomology_curve(q, field);
    let fm = contraction_matrix(&f, a - deg - 1);
    let sym = sym_basis(b as i64 - 1).len();
    let cols = r1.cols();
    if cols == 0 {
        return h0_here - h0_twist;
    }
    let mut fa = Mat::zeros(field, sym * fm.rows(), cols);
    for s in 0..sym {
        for r in 0..fm.rows() {
            for c in 0..fm.cols() {
                fa[(s * fm.rows() + r, s * fm.cols() + c)] = fm[(r, c)];
            }
        }
    }
    let stacked: Vec<_> = r1.row_vectors().into_iter().chain(fa.row_vectors()).collect();
    let ker = if stacked.is_empty() {
        cols
    } else {
        cols - Mat::from_rows(field, &stacked).expect("rectangular").rank()
    };
    h0_here - h0_twist + ker
}
