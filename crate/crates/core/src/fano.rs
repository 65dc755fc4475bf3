//! Points and lines over finite fields, lines on q-bic hypersurfaces, and
//! intersections of lines with plane q-bic curves.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{Field, FieldElement};
use crate::qbic::{QBicError, QBicForm};
use crate::semilin::{twist_vec, Mat, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanoError {
    #[error("enumeration of {items} items over GF({order}) in P^{n} exceeds the budget {budget:?}")]
    BudgetExceeded { items: u128, order: u32, n: usize, budget: Budget },
    #[error("the line is contained in the curve")]
    LineInCurve,
    #[error("expected a plane curve (3x3 Gram matrix), got size {0}")]
    NotPlaneCurve(usize),
    #[error("the line is not tangent to the curve")]
    NotTangent,
    #[error("the line passes through a cone point, where the projection is undefined")]
    Indeterminate,
    #[error("the line does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error(transparent)]
    QBic(#[from] QBicError),
}

/// Caps on enumeration jobs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_field_order: u32,
    pub max_n: usize,
    pub max_items: u128,
}

impl Budget {
    /// Default cap: fields up to 81 elements, `P^4`, two million candidates.
    pub fn small() -> Budget {
        Budget { max_field_order: 81, max_n: 4, max_items: 2_000_000 }
    }

    /// Opt-in cap large enough for all lines of `P^4(F_16)`.
    pub fn large() -> Budget {
        Budget { max_field_order: 1024, max_n: 4, max_items: 20_000_000 }
    }

    fn check(&self, field: &Field, n: usize, items: u128) -> Result<(), FanoError> {
        if field.order() > self.max_field_order || n > self.max_n || items > self.max_items {
            return Err(FanoError::BudgetExceeded { items, order: field.order(), n, budget: *self });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::small()
    }
}

/// A point of projective space, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vector,
}

impl ProjPoint {
    /// Normalizes `v`; `None` for the zero vector.
    pub fn new(field: &Field, mut v: Vector) -> Option<ProjPoint> {
        let lead = *v.iter().find(|x| !x.is_zero())?;
        let inv = field.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = field.mul(inv, *x);
        }
        Some(ProjPoint { coords: v })
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    /// All normalized nonzero tuples of length `len` with entries from
    /// `scalars` (which must contain 0 and 1).
    pub fn normalized_tuples(scalars: &[FieldElement], len: usize) -> Vec<Vector> {
        let mut out = Vec::new();
        for lead in 0..len {
            let free = len - lead - 1;
            let count = scalars.len().pow(free as u32);
            for mut code in 0..count {
                let mut v = vec![FieldElement::ZERO; len];
                v[lead] = FieldElement::ONE;
                for slot in v.iter_mut().skip(lead + 1) {
                    *slot = scalars[code % scalars.len()];
                    code /= scalars.len();
                }
                out.push(v);
            }
        }
        out
    }
}

/// A line of projective space as the reduced row echelon basis of a
/// 2-dimensional subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    rows: [Vector; 2],
}

impl Line {
    /// The line through two distinct points; `None` if they are dependent.
    pub fn through(field: &Field, u: &[FieldElement], w: &[FieldElement]) -> Option<Line> {
        let s = Subspace::span(field, u.len(), &[u.to_vec(), w.to_vec()]);
        Line::from_subspace(&s)
    }

    pub fn from_subspace(s: &Subspace) -> Option<Line> {
        if s.dim() != 2 {
            return None;
        }
        let b = s.basis();
        Some(Line { rows: [b.row(0).to_vec(), b.row(1).to_vec()] })
    }

    pub fn rows(&self) -> &[Vector; 2] {
        &self.rows
    }

    pub fn subspace(&self, field: &Field) -> Subspace {
        Subspace::span(field, self.rows[0].len(), &self.rows)
    }

    pub fn contains(&self, field: &Field, x: &[FieldElement]) -> bool {
        self.subspace(field).contains(x)
    }

    /// The point `s u + t w` for the echelon basis `(u, w)`.
    pub fn point_at(&self, field: &Field, s: FieldElement, t: FieldElement) -> Option<ProjPoint> {
        let v = self.rows[0]
            .iter()
            .zip(&self.rows[1])
            .map(|(&a, &b)| field.add(field.mul(s, a), field.mul(t, b)))
            .collect();
        ProjPoint::new(field, v)
    }
}

fn pow_u128(base: u128, e: usize) -> u128 {
    base.saturating_pow(e as u32)
}

pub fn point_count(n: usize, field: &Field) -> u128 {
    let q = field.order() as u128;
    (pow_u128(q, n + 1) - 1) / (q - 1)
}

/// Number of lines in `P^n`, the Gaussian binomial `[n+1 choose 2]_Q`.
pub fn line_count(n: usize, field: &Field) -> u128 {
    let q = field.order() as u128;
    (pow_u128(q, n + 1) - 1) * (pow_u128(q, n) - 1) / ((q * q - 1) * (q - 1))
}

pub fn enumerate_points(n: usize, field: &Field, budget: &Budget) -> Result<Vec<ProjPoint>, FanoError> {
    budget.check(field, n, point_count(n, field))?;
    let scalars: Vec<FieldElement> = field.elements().collect();
    let mut pts: Vec<ProjPoint> = ProjPoint::normalized_tuples(&scalars, n + 1)
        .into_iter()
        .map(|coords| ProjPoint { coords })
        .collect();
    pts.sort();
    Ok(pts)
}

/// One block of the echelon-form line space: pivot columns `i < j` and the
/// free entries of the first row given by a mixed-radix code.
#[derive(Clone, Copy)]
struct RowZeroTask {
    i: usize,
    j: usize,
    code: u64,
}

fn row_zero_tasks(n: usize, q: u64) -> Vec<RowZeroTask> {
    let mut tasks = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let free = n - i - 1;
            for code in 0..q.pow(free as u32) {
                tasks.push(RowZeroTask { i, j, code });
            }
        }
    }
    tasks
}

fn fill_digits(v: &mut [FieldElement], slots: impl Iterator<Item = usize>, mut code: u64, q: u64) {
    for s in slots {
        v[s] = FieldElement::from_code_unchecked((code % q) as u32);
        code /= q;
    }
}

fn row_zero(t: &RowZeroTask, n: usize, q: u64) -> Vector {
    let mut u = vec![FieldElement::ZERO; n + 1];
    u[t.i] = FieldElement::ONE;
    fill_digits(&mut u, (t.i + 1..=n).filter(|&c| c != t.j), t.code, q);
    u
}

fn row_one(j: usize, n: usize, code: u64, q: u64) -> Vector {
    let mut w = vec![FieldElement::ZERO; n + 1];
    w[j] = FieldElement::ONE;
    fill_digits(&mut w, j + 1..=n, code, q);
    w
}

/// Lines of `P^n` whose echelon rows satisfy `keep_row0` and then `keep`,
/// in canonical order.
fn sweep_lines<F0, F1>(n: usize, field: &Field, keep_row0: F0, keep: F1) -> Vec<Line>
where
    F0: Fn(&Vector) -> bool + Sync,
    F1: Fn(&Vector, &Vector) -> bool + Sync,
{
    let q = field.order() as u64;
    let tasks = row_zero_tasks(n, q);
    let chunks: Vec<Vec<Line>> = tasks
        .par_iter()
        .map(|t| {
            let u = row_zero(t, n, q);
            if !keep_row0(&u) {
                return Vec::new();
            }
            (0..q.pow((n - t.j) as u32))
                .filter_map(|code| {
                    let w = row_one(t.j, n, code, q);
                    keep(&u, &w).then(|| Line { rows: [u.clone(), w] })
                })
                .collect()
        })
        .collect();
    let mut lines: Vec<Line> = chunks.into_iter().flatten().collect();
    lines.sort();
    lines
}

pub fn enumerate_lines(n: usize, field: &Field, budget: &Budget) -> Result<Vec<Line>, FanoError> {
    budget.check(field, n, line_count(n, field))?;
    Ok(sweep_lines(n, field, |_| true, |_, _| true))
}

/// Rational points of the hypersurface `f = 0`.
pub fn points_on(form: &QBicForm, budget: &Budget) -> Result<Vec<ProjPoint>, FanoError> {
    let f = form.field();
    let pts = enumerate_points(form.n(), f, budget)?;
    Ok(pts
        .into_par_iter()
        .filter(|p| form.evaluate(p.coords()).map(|v| v.is_zero()).unwrap_or(false))
        .collect())
}

fn is_zero_beta(form: &QBicForm, u: &[FieldElement], w: &[FieldElement]) -> bool {
    form.beta(u, w).expect("lengths agree").is_zero()
}

/// Whether the line is totally isotropic, i.e. contained in the hypersurface.
pub fn is_fano_line(form: &QBicForm, line: &Line) -> bool {
    let [u, w] = &line.rows;
    is_zero_beta(form, u, u) && is_zero_beta(form, u, w) && is_zero_beta(form, w, u) && is_zero_beta(form, w, w)
}

/// All rational lines on the hypersurface, in canonical order.
pub fn fano_lines(form: &QBicForm, budget: &Budget) -> Result<Vec<Line>, FanoError> {
    let f = form.field();
    budget.check(f, form.n(), line_count(form.n(), f))?;
    Ok(sweep_lines(
        form.n(),
        f,
        |u| is_zero_beta(form, u, u),
        |u, w| is_zero_beta(form, w, w) && is_zero_beta(form, u, w) && is_zero_beta(form, w, u),
    ))
}

/// Rational lines on the hypersurface through the point `z`.
pub fn fano_lines_through(form: &QBicForm, z: &ProjPoint, budget: &Budget) -> Result<Vec<Line>, FanoError> {
    let f = form.field();
    if !form.evaluate(z.coords())?.is_zero() {
        return Err(QBicError::NotOnHypersurface.into());
    }
    let zs = Subspace::span(f, form.dim(), &[z.coords().to_vec()]);
    let k = form.right_orthogonal_of(&zs).intersection(&form.left_orthogonal_of(&zs));
    budget.check(f, k.dim().saturating_sub(1), point_count(k.dim().saturating_sub(1), f))?;
    let scalars: Vec<FieldElement> = f.elements().collect();
    let basis = k.basis_vectors();
    let mut lines = BTreeSet::new();
    for c in ProjPoint::normalized_tuples(&scalars, k.dim()) {
        let mut w = vec![FieldElement::ZERO; form.dim()];
        for (ci, b) in c.iter().zip(&basis) {
            for (x, &y) in w.iter_mut().zip(b) {
                *x = f.mul_add(*ci, y, *x);
            }
        }
        if form.evaluate(&w)?.is_zero() {
            if let Some(l) = Line::through(f, z.coords(), &w) {
                lines.insert(l);
            }
        }
    }
    Ok(lines.into_iter().collect())
}

/// Fano lines meeting the singular locus of the hypersurface.
pub fn singular_fano_locus(form: &QBicForm, budget: &Budget) -> Result<Vec<Line>, FanoError> {
    let sing = form.singular_support();
    if sing.dim() == 0 {
        return Ok(Vec::new());
    }
    let f = form.field();
    Ok(fano_lines(form, budget)?
        .into_iter()
        .filter(|l| l.subspace(f).intersection(&sing).dim() > 0)
        .collect())
}

/// Image of a line under `phi` of a nonsingular form.
pub fn phi_line(form: &QBicForm, line: &Line) -> Result<Line, FanoError> {
    let f = form.field();
    let sigma = form.sigma()?;
    let e2 = 2 * form.q_exponent() as i64;
    let img: Vec<Vector> = line
        .rows
        .iter()
        .map(|v| sigma.mul_vec(&twist_vec(f, v, e2)).expect("square"))
        .collect();
    Ok(Line::from_subspace(&Subspace::span(f, form.dim(), &img)).expect("sigma is invertible"))
}

/// Intersection of a line with a plane q-bic curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorOnLine {
    /// Rational points with multiplicities, sorted by point.
    pub points: Vec<(ProjPoint, usize)>,
    /// Degree carried by points not defined over the working field.
    pub residual_degree: usize,
}

impl DivisorOnLine {
    pub fn degree(&self) -> usize {
        self.points.iter().map(|(_, m)| m).sum::<usize>() + self.residual_degree
    }

    pub fn multiplicity(&self, x: &ProjPoint) -> usize {
        self.points.iter().find(|(p, _)| p == x).map_or(0, |(_, m)| *m)
    }
}

/// Tangency data `g = l^q m` of a binary q-bic form on a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangency {
    /// Zero of `l`, met with multiplicity at least `q`.
    pub tangency: ProjPoint,
    /// Zero of `m`.
    pub residual: ProjPoint,
}

/// Coefficients `(A, B, C, D)` of `g(s,t) = A s^(q+1) + B s^q t + C s t^q + D t^(q+1)`,
/// the restriction of `f` to `s u + t w`.
fn binary_form(form: &QBicForm, line: &Line) -> [FieldElement; 4] {
    let [u, w] = &line.rows;
    let b = |x: &Vector, y: &Vector| form.beta(x, y).expect("lengths agree");
    [b(u, u), b(u, w), b(w, u), b(w, w)]
}

fn check_plane(form: &QBicForm) -> Result<(), FanoError> {
    if form.dim() != 3 {
        return Err(FanoError::NotPlaneCurve(form.dim()));
    }
    Ok(())
}

/// Factors `g = l^q m` without root finding, from `g_s = A s^q + C t^q`,
/// `g_t = B s^q + D t^q`; the line is tangent exactly when these are
/// proportional, and then Euler's identity `g = s g_s + t g_t` gives `m`.
pub fn tangent_factorization(form: &QBicForm, line: &Line) -> Result<Tangency, FanoError> {
    let f = form.field();
    let [a, b, c, d] = binary_form(form, line);
    if [a, b, c, d].iter().all(|x| x.is_zero()) {
        return Err(FanoError::LineInCurve);
    }
    if f.sub(f.mul(a, d), f.mul(b, c)) != FieldElement::ZERO {
        return Err(FanoError::NotTangent);
    }
    let e = form.q_exponent() as i64;
    // (g_s, g_t) = (lambda, mu) * L with L = x s^q + y t^q.
    let (x, y, lambda, mu) = if !a.is_zero() || !c.is_zero() {
        let (lam, mu) = if !a.is_zero() { (f.one(), f.div(b, a).unwrap()) } else { (f.one(), f.div(d, c).unwrap()) };
        (a, c, lam, mu)
    } else {
        (b, d, f.zero(), f.one())
    };
    // l = x^(1/q) s + y^(1/q) t vanishes at (s:t) = (-y^(1/q) : x^(1/q)).
    let (xr, yr) = (f.frobenius(x, -e), f.frobenius(y, -e));
    let tangency = line.point_at(f, f.neg(yr), xr).expect("l is nonzero");
    let residual = line.point_at(f, f.neg(mu), lambda).expect("m is nonzero");
    Ok(Tangency { tangency, residual })
}

/// Divisor cut on the plane curve by a line; tangent lines use
/// [`tangent_factorization`], all others a root search over the working field.
pub fn line_curve_divisor(curve: &QBicForm, line: &Line) -> Result<DivisorOnLine, FanoError> {
    check_plane(curve)?;
    match tangent_factorization(curve, line) {
        Ok(t) => {
            let q = curve.q() as usize;
            let points = if t.tangency == t.residual {
                vec![(t.tangency, q + 1)]
            } else {
                let mut v = vec![(t.tangency, q), (t.residual, 1)];
                v.sort();
                v
            };
            Ok(DivisorOnLine { points, residual_degree: 0 })
        }
        Err(FanoError::NotTangent) => divisor_by_root_search(curve, line),
        Err(e) => Err(e),
    }
}

/// Divisor by exhaustive search over `P^1` of the working field with
/// multiplicities from repeated division by linear factors.
pub fn divisor_by_root_search(curve: &QBicForm, line: &Line) -> Result<DivisorOnLine, FanoError> {
    check_plane(curve)?;
    let f = curve.field();
    let q = curve.q() as usize;
    let [a, b, c, d] = binary_form(curve, line);
    // Dense homogeneous coefficients, index k is the coefficient of s^k t^(q+1-k).
    let mut g = vec![FieldElement::ZERO; q + 2];
    g[q + 1] = a;
    g[q] = f.add(g[q], b);
    g[1] = f.add(g[1], c);
    g[0] = f.add(g[0], d);
    if g.iter().all(|x| x.is_zero()) {
        return Err(FanoError::LineInCurve);
    }
    let mut roots = Vec::new();
    let mut candidates = vec![(f.one(), f.zero())];
    candidates.extend(f.elements().map(|t| (t, f.one())));
    for (s0, t0) in candidates {
        let mut m = 0;
        while let Some(quot) = divide_linear(f, &g, s0, t0) {
            g = quot;
            m += 1;
        }
        if m > 0 {
            roots.push((line.point_at(f, s0, t0).expect("nonzero parameter"), m));
        }
    }
    roots.sort();
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    Ok(DivisorOnLine { points: roots, residual_degree: q + 1 - found })
}

/// Divides the binary form `g` by `t0 s - s0 t` when it vanishes at `(s0:t0)`.
fn divide_linear(f: &Field, g: &[FieldElement], s0: FieldElement, t0: FieldElement) -> Option<Vec<FieldElement>> {
    if g.len() < 2 {
        return None;
    }
    let deg = g.len() - 1;
    if t0.is_zero() {
        // factor is s... up to scale the root (1:0) means divisibility by t.
        if !g[deg].is_zero() {
            return None;
        }
        // g = t * h, where h has coefficients g[0..deg] (shifted powers of t).
        return Some(g[..deg].to_vec());
    }
    // Dehomogenize at t = 1: h(x) = sum g[k] x^k, root x0 = s0 / t0.
    let x0 = f.div(s0, t0).expect("t0 nonzero");
    let mut quot = vec![FieldElement::ZERO; deg];
    let mut acc = FieldElement::ZERO;
    for k in (0..=deg).rev() {
        acc = f.add(f.mul(acc, x0), g[k]);
        if k > 0 {
            quot[k - 1] = acc;
        }
    }
    if !acc.is_zero() {
        return None;
    }
    // The quotient is a binary form of degree deg-1; an all-zero input never
    // reaches here because the caller rejects g = 0.
    Some(quot)
}

/// The q-bic curve `x0^q x1 + x0 x1^q + x2^(q+1)` used in nodal geometry.
pub fn nodal_curve_form(q: u64, field: &Field) -> Result<QBicForm, QBicError> {
    QBicForm::new(q, Mat::from_ints(field, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]))
}

/// The threefold `x0^q x1 + x0 x1^q + x2^(q+1) + x3^q x4` of type `1^3+N2`
/// with cone points `x- = e3` and `x+ = e4`.
pub fn nodal_threefold_form(q: u64, field: &Field) -> Result<QBicForm, QBicError> {
    let mut g = Mat::zeros(field, 5, 5);
    g[(0, 1)] = field.one();
    g[(1, 0)] = field.one();
    g[(2, 2)] = field.one();
    g[(3, 4)] = field.one();
    QBicForm::new(q, g)
}

fn unit(field: &Field, n: usize, i: usize) -> Vector {
    (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

/// Projection of a line of the nodal threefold from `P U = <x-, x+>` to
/// the plane `P W` of the curve.
pub fn nodal_projection(x0: &QBicForm, line: &Line) -> Result<Line, FanoError> {
    let f = x0.field();
    if !is_fano_line(x0, line) {
        return Err(FanoError::NotOnHypersurface);
    }
    if line.contains(f, &unit(f, 5, 3)) || line.contains(f, &unit(f, 5, 4)) {
        return Err(FanoError::Indeterminate);
    }
    let proj: Vec<Vector> = line.rows.iter().map(|r| r[..3].to_vec()).collect();
    Line::from_subspace(&Subspace::span(f, 3, &proj)).ok_or(FanoError::Indeterminate)
}

/// Point of tangency of the projected line with the curve.
pub fn nodal_phi_plus(x0: &QBicForm, line: &Line) -> Result<ProjPoint, FanoError> {
    let curve = nodal_curve_form(x0.q(), x0.field())?;
    let l0 = nodal_projection(x0, line)?;
    Ok(tangent_factorization(&curve, &l0)?.tangency)
}

/// Residual intersection point of the projected line with the curve.
pub fn nodal_phi_minus(x0: &QBicForm, line: &Line) -> Result<ProjPoint, FanoError> {
    let curve = nodal_curve_form(x0.q(), x0.field())?;
    let l0 = nodal_projection(x0, line)?;
    Ok(tangent_factorization(&curve, &l0)?.residual)
}

/// Residual point of the tangent line to a smooth plane curve at `y`.
pub fn phi_curve(curve: &QBicForm, y: &ProjPoint) -> Result<ProjPoint, FanoError> {
    check_plane(curve)?;
    let t = curve.tangent_space(y.coords())?;
    let line = Line::from_subspace(&t).ok_or(FanoError::NotTangent)?;
    let fac = tangent_factorization(curve, &line)?;
    debug_assert_eq!(&fac.tangency, y);
    Ok(fac.residual)
}

/// A random rational point of the hypersurface, found by intersecting random
/// lines with it. Used over fields too large to sweep.
pub fn random_point_on<R: rand::Rng + ?Sized>(form: &QBicForm, rng: &mut R, tries: usize) -> Option<ProjPoint> {
    let f = form.field();
    let n = form.dim();
    for _ in 0..tries {
        // Solve f(v) = 0 along a random line through a random point.
        let u: Vector = (0..n).map(|_| f.random(rng)).collect();
        let w: Vector = (0..n).map(|_| f.random(rng)).collect();
        let Some(l) = Line::through(f, &u, &w) else { continue };
        if is_fano_line(form, &l) {
            return l.point_at(f, f.one(), f.zero());
        }
        if let Ok(div) = general_divisor(form, &l) {
            if let Some((p, _)) = div.first() {
                return Some(p.clone());
            }
        }
    }
    None
}

/// Rational zeros of `f` on a line in any ambient dimension.
fn general_divisor(form: &QBicForm, line: &Line) -> Result<Vec<(ProjPoint, usize)>, FanoError> {
    let f = form.field();
    let mut out = Vec::new();
    let mut candidates = vec![(f.one(), f.zero())];
    candidates.extend(f.elements().map(|t| (t, f.one())));
    for (s, t) in candidates {
        let p = line.point_at(f, s, t).expect("nonzero");
        if form.evaluate(p.coords())?.is_zero() {
            out.push((p, 1));
        }
    }
    Ok(out)
}
