//! q-bic forms `beta(u^[1], v) = u^(q)T G v` and their invariants.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::fano::ProjPoint;
use crate::gf::{Field, FieldElement};
use crate::semilin::{semilinear_fixed_points, twist_vec, FixedPoints, LinAlgError, Mat, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QBicError {
    #[error("Gram matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is zero")]
    ZeroForm,
    #[error("q = {q} is not a power of the field characteristic {p}")]
    BadQ { q: u64, p: u32 },
    #[error("vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("point does not lie on the hypersurface")]
    NotOnHypersurface,
    #[error("form is singular")]
    Singular,
    #[error("no normal form of dimension {0} matches the fingerprint")]
    Unclassified(usize),
    #[error("malformed type {0:?}")]
    BadType(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Classification type `(a; b_1, b_2, ...)`: `a` blocks `1` and `b_m` nilpotent
/// Jordan blocks `N_m` of size `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QBicType {
    pub a: usize,
    /// Only nonzero multiplicities are stored.
    pub b: BTreeMap<usize, usize>,
}

impl QBicType {
    pub fn new(a: usize, b: impl IntoIterator<Item = (usize, usize)>) -> QBicType {
        let mut map = BTreeMap::new();
        for (m, c) in b {
            if m > 0 && c > 0 {
                *map.entry(m).or_insert(0) += c;
            }
        }
        QBicType { a, b: map }
    }

    pub fn smooth(n: usize) -> QBicType {
        QBicType::new(n, [])
    }

    /// Size of the Gram matrix.
    pub fn dim(&self) -> usize {
        self.a + self.b.iter().map(|(m, c)| m * c).sum::<usize>()
    }

    pub fn b_m(&self, m: usize) -> usize {
        self.b.get(&m).copied().unwrap_or(0)
    }

    pub fn corank(&self) -> usize {
        self.b.values().sum()
    }

    pub fn radical_dim(&self) -> usize {
        self.b_m(1)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.corank() == 0
    }

    pub fn is_cone(&self) -> bool {
        self.radical_dim() > 0
    }

    /// The zero form has no type.
    pub fn is_zero_form(&self) -> bool {
        self.a == 0 && self.b.keys().all(|&m| m == 1)
    }

    /// Every type of the given dimension except the zero form, in a
    /// deterministic order.
    pub fn all_of_dim(dim: usize) -> Vec<QBicType> {
        fn partitions(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(acc.clone());
                return;
            }
            for m in (1..=n.min(max)).rev() {
                acc.push(m);
                partitions(n - m, m, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        for a in (0..=dim).rev() {
            let mut parts = Vec::new();
            partitions(dim - a, dim - a, &mut Vec::new(), &mut parts);
            for part in parts {
                let t = QBicType::new(a, part.into_iter().map(|m| (m, 1)));
                if !t.is_zero_form() {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for QBicType {
    /// `1^3+N2`; the block `N_1` (a zero entry) prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let power = |base: String, c: usize| if c == 1 { base } else { format!("{base}^{c}") };
        if self.a > 0 {
            parts.push(power("1".into(), self.a));
        }
        for (&m, &c) in self.b.iter().rev() {
            let base = if m == 1 { "0".to_string() } else { format!("N{m}") };
            parts.push(power(base, c));
        }
        if parts.is_empty() {
            parts.push("empty".into());
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for QBicType {
    type Err = QBicError;

    /// Accepts sums of `1`, `0` and `N<m>` blocks with optional `^count`,
    /// separated by `+`, in any order: `1^3+N2`, `0+1^4`, `N2^2+1`.
    fn from_str(s: &str) -> Result<QBicType, QBicError> {
        let bad = || QBicError::BadType(s.to_string());
        let mut t = QBicType::default();
        for term in s.split('+').map(str::trim) {
            let (base, count) = match term.split_once('^') {
                Some((b, c)) => (b.trim(), c.trim().parse::<usize>().map_err(|_| bad())?),
                None => (term, 1),
            };
            match base {
                "1" => t.a += count,
                "0" => *t.b.entry(1).or_insert(0) += count,
                _ => {
                    let m = base
                        .strip_prefix('N')
                        .and_then(|m| m.parse::<usize>().ok())
                        .filter(|&m| m > 0)
                        .ok_or_else(bad)?;
                    *t.b.entry(m).or_insert(0) += count;
                }
            }
        }
        t.b.retain(|_, c| *c > 0);
        if t.dim() == 0 || t.is_zero_form() {
            return Err(bad());
        }
        Ok(t)
    }
}

/// The nilpotent Jordan block of size `m` with ones on the superdiagonal.
pub fn jordan_block(field: &Field, m: usize) -> Mat {
    let mut j = Mat::zeros(field, m, m);
    for i in 0..m.saturating_sub(1) {
        j[(i, i + 1)] = FieldElement::ONE;
    }
    j
}

/// A q-bic form on `V = F^(n+1)` given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBicForm {
    q: u64,
    /// `q = p^frob`.
    frob: u32,
    gram: Mat,
}

impl QBicForm {
    pub fn new(q: u64, gram: Mat) -> Result<QBicForm, QBicError> {
        if !gram.is_square() {
            return Err(QBicError::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if gram.is_zero() {
            return Err(QBicError::ZeroForm);
        }
        let p = gram.field().characteristic();
        let frob = log_base(q, p as u64).ok_or(QBicError::BadQ { q, p })?;
        Ok(QBicForm { q, frob, gram })
    }

    /// Block-diagonal normal form: `a` blocks `1`, then `N_m` blocks by
    /// decreasing `m`.
    pub fn normal_form(t: &QBicType, q: u64, field: &Field) -> Result<QBicForm, QBicError> {
        if t.is_zero_form() || t.dim() == 0 {
            return Err(QBicError::ZeroForm);
        }
        let mut blocks = vec![Mat::identity(field, 1); t.a];
        for (&m, &c) in t.b.iter().rev() {
            for _ in 0..c {
                blocks.push(jordan_block(field, m));
            }
        }
        QBicForm::new(q, Mat::block_diag(field, &blocks))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The exponent `e` with `q = p^e`.
    pub fn q_exponent(&self) -> u32 {
        self.frob
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn field(&self) -> &Field {
        self.gram.field()
    }

    /// `dim V`.
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// Projective dimension `n` of the ambient `P V`.
    pub fn n(&self) -> usize {
        self.dim() - 1
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<(), QBicError> {
        if v.len() != self.dim() {
            return Err(QBicError::Length { got: v.len(), expected: self.dim() });
        }
        Ok(())
    }

    /// `u^(q)T` as a row vector.
    fn qtwist(&self, v: &[FieldElement]) -> Vector {
        twist_vec(self.field(), v, self.frob as i64)
    }

    /// `beta(u^[1], v) = u^(q)T G v`.
    pub fn beta(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement, QBicError> {
        self.check_len(u)?;
        self.check_len(v)?;
        let gv = self.gram.mul_vec(v)?;
        Ok(self.field().dot(&self.qtwist(u), &gv))
    }

    /// `f(v) = v^(q)T G v`.
    pub fn evaluate(&self, v: &[FieldElement]) -> Result<FieldElement, QBicError> {
        self.beta(v, v)
    }

    /// `A^(q)T G A`.
    pub fn transform(&self, a: &Mat) -> Result<QBicForm, QBicError> {
        let at = a.twist(self.frob as i64).transpose();
        let g = at.mul(&self.gram)?.mul(a)?;
        QBicForm::new(self.q, g)
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn corank(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.corank() == 0
    }

    /// `{v : beta(u^[1], v) = 0 for all u in U}`.
    pub fn right_orthogonal_of(&self, u: &Subspace) -> Subspace {
        if u.dim() == 0 {
            return Subspace::full(self.field(), self.dim());
        }
        let rows: Vec<Vector> = u
            .basis_vectors()
            .iter()
            .map(|x| {
                let t = self.qtwist(x);
                (0..self.dim()).map(|j| self.field().dot(&t, &self.gram.column(j))).collect()
            })
            .collect();
        Mat::from_rows(self.field(), &rows).expect("rectangular").kernel()
    }

    /// `{v : beta(v^[1], u) = 0 for all u in U}`.
    pub fn left_orthogonal_of(&self, u: &Subspace) -> Subspace {
        if u.dim() == 0 {
            return Subspace::full(self.field(), self.dim());
        }
        let rows: Vec<Vector> =
            u.basis_vectors().iter().map(|x| self.gram.mul_vec(x).expect("square")).collect();
        let twisted = Mat::from_rows(self.field(), &rows).expect("rectangular").kernel();
        twisted.twist(-(self.frob as i64))
    }

    /// `ker G`: vectors right-orthogonal to all of `V`.
    pub fn right_orthogonal(&self) -> Subspace {
        self.gram.kernel()
    }

    /// The q-th root of `ker G^T`: vectors left-orthogonal to all of `V`.
    /// Its projectivization supports the singular locus.
    pub fn left_orthogonal_descent(&self) -> Subspace {
        self.gram.left_kernel().twist(-(self.frob as i64))
    }

    pub fn radical(&self) -> Subspace {
        self.right_orthogonal().intersection(&self.left_orthogonal_descent())
    }

    /// Support of the singular locus of the hypersurface, as a subspace.
    pub fn singular_support(&self) -> Subspace {
        self.left_orthogonal_descent()
    }

    /// `{w : x^(q)T G w = 0}` for a point `x` of the hypersurface.
    pub fn tangent_space(&self, x: &[FieldElement]) -> Result<Subspace, QBicError> {
        if !self.evaluate(x)?.is_zero() {
            return Err(QBicError::NotOnHypersurface);
        }
        let span = Subspace::span(self.field(), self.dim(), &[x.to_vec()]);
        Ok(self.right_orthogonal_of(&span))
    }

    /// Gram matrix `B^(q) G B^T` of the restriction to `U`, where the rows
    /// of `B` are the echelon basis of `U`. May be zero.
    pub fn restrict_gram(&self, u: &Subspace) -> Mat {
        let b = u.basis();
        b.twist(self.frob as i64)
            .mul(&self.gram)
            .and_then(|m| m.mul(&b.transpose()))
            .expect("dimensions agree")
    }

    pub fn restrict(&self, u: &Subspace) -> Result<QBicForm, QBicError> {
        QBicForm::new(self.q, self.restrict_gram(u))
    }

    /// Dimensions of `w(V)` for every word `w` in the right and left
    /// orthogonal operators of length `1..=depth`, breadth first with
    /// `R` before `L`.
    pub fn fingerprint(&self, depth: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut frontier = vec![Subspace::full(self.field(), self.dim())];
        let mut memo: HashMap<(bool, Vec<FieldElement>), Subspace> = HashMap::new();
        for _ in 0..depth {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for u in &frontier {
                for right in [true, false] {
                    let key = (right, u.basis().entries().to_vec());
                    let w = memo
                        .entry(key)
                        .or_insert_with(|| {
                            if right {
                                self.right_orthogonal_of(u)
                            } else {
                                self.left_orthogonal_of(u)
                            }
                        })
                        .clone();
                    out.push(w.dim());
                    next.push(w);
                }
            }
            frontier = next;
        }
        out
    }

    pub fn classify(&self) -> Result<QBicType, QBicError> {
        let dim = self.dim();
        let depth = fingerprint_depth(dim);
        let fp = self.fingerprint(depth);
        let table = normal_form_fingerprints(dim);
        let hits: Vec<&QBicType> =
            table.iter().filter(|(f, _)| *f == fp).map(|(_, t)| t).collect();
        match hits.as_slice() {
            [t] => Ok((*t).clone()),
            _ => Err(QBicError::Unclassified(dim)),
        }
    }

    /// `G v = G^(q)T v^(q^2)`, the defining identity of a Hermitian vector;
    /// valid for singular forms too.
    pub fn is_hermitian_vector(&self, v: &[FieldElement]) -> Result<bool, QBicError> {
        self.check_len(v)?;
        let lhs = self.gram.mul_vec(v)?;
        let rhs = self
            .gram
            .twist(self.frob as i64)
            .transpose()
            .mul_vec(&twist_vec(self.field(), v, 2 * self.frob as i64))?;
        Ok(lhs == rhs)
    }

    /// `sigma = G^-1 G^(q)T`, so that Hermitian vectors solve `v = sigma v^(q^2)`.
    pub fn sigma(&self) -> Result<Mat, QBicError> {
        let inv = self.gram.inverse().map_err(|_| QBicError::Singular)?;
        Ok(inv.mul(&self.gram.twist(self.frob as i64).transpose())?)
    }

    /// Hermitian vectors with coordinates in the working field.
    pub fn hermitian_vectors(&self) -> Result<FixedPoints, QBicError> {
        let sigma = self.sigma()?;
        Ok(semilinear_fixed_points(&sigma, 2 * self.frob)?)
    }

    /// Points of the hypersurface spanned by Hermitian vectors, i.e. the
    /// fixed points of `phi`, sorted.
    pub fn hermitian_points(&self) -> Result<Vec<ProjPoint>, QBicError> {
        let hv = self.hermitian_vectors()?;
        let f = self.field();
        let scalars = f.subfield_elements(hv.scalar_degree);
        let r = hv.basis.len();
        let mut out = BTreeSet::new();
        for coeffs in ProjPoint::normalized_tuples(&scalars, r) {
            let mut v = vec![FieldElement::ZERO; self.dim()];
            for (c, b) in coeffs.iter().zip(&hv.basis) {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.mul_add(*c, y, *x);
                }
            }
            if self.evaluate(&v)?.is_zero() {
                out.insert(ProjPoint::new(f, v).expect("independent combination is nonzero"));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `phi(x) = [G^-1 G^(q)T x^(q^2)]`.
    pub fn phi(&self, x: &ProjPoint) -> Result<ProjPoint, QBicError> {
        if !self.evaluate(x.coords())?.is_zero() {
            return Err(QBicError::NotOnHypersurface);
        }
        let sigma = self.sigma()?;
        let y = sigma.mul_vec(&twist_vec(self.field(), x.coords(), 2 * self.frob as i64))?;
        Ok(ProjPoint::new(self.field(), y).expect("sigma is invertible"))
    }
}

fn log_base(q: u64, p: u64) -> Option<u32> {
    let (mut x, mut e) = (q, 0);
    while x > 1 && x % p == 0 {
        x /= p;
        e += 1;
    }
    (x == 1 && e > 0).then_some(e)
}

/// Word length used by [`QBicForm::classify`]; the test suite checks that
/// normal forms of each dimension up to 6 are separated at this depth.
pub fn fingerprint_depth(dim: usize) -> usize {
    dim.max(1)
}

/// Fingerprints of every normal form of a dimension. They do not depend on
/// `q` or the field because normal forms have 0/1 entries.
pub fn normal_form_fingerprints(dim: usize) -> Vec<(Vec<usize>, QBicType)> {
    type Table = Vec<(Vec<usize>, QBicType)>;
    static CACHE: OnceLock<Mutex<HashMap<usize, Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache poisoned").get(&dim) {
        return v.clone();
    }
    let f = Field::new(2, 1).expect("GF(2)");
    let depth = fingerprint_depth(dim);
    let table: Vec<(Vec<usize>, QBicType)> = QBicType::all_of_dim(dim)
        .into_iter()
        .map(|t| {
            let form = QBicForm::normal_form(&t, 2, &f).expect("nonzero normal form");
            (form.fingerprint(depth), t)
        })
        .collect();
    cache.lock().expect("cache poisoned").insert(dim, table.clone());
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
        Mat::random_invertible(f, n, rng)
    }

    #[test]
    fn type_parsing_and_display() {
        let t: QBicType = "1^3+N2".parse().unwrap();
        assert_eq!(t, QBicType::new(3, [(2, 1)]));
        assert_eq!(t.to_string(), "1^3+N2");
        assert_eq!(t.corank(), 1);
        let c: QBicType = "0+1^4".parse().unwrap();
        assert_eq!(c.radical_dim(), 1);
        assert_eq!(c.to_string(), "1^4+0");
        let d: QBicType = "N2^2+1".parse().unwrap();
        assert_eq!(d.dim(), 5);
        for bad in ["", "x", "N0", "1^", "0", "0^3"] {
            assert!(bad.parse::<QBicType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn type_counts_per_dimension() {
        let counts: Vec<usize> = (1..=6).map(|d| QBicType::all_of_dim(d).len()).collect();
        assert_eq!(counts, vec![1, 3, 6, 11, 18, 29]);
    }

    #[test]
    fn normal_form_layout() {
        let f = Field::new(2, 2).unwrap();
        let g = QBicForm::normal_form(&"1^3+N2".parse().unwrap(), 2, &f).unwrap();
        let mut expect = Mat::identity(&f, 5);
        expect[(3, 3)] = f.zero();
        expect[(4, 4)] = f.zero();
        expect[(3, 4)] = f.one();
        assert_eq!(g.gram(), &expect);
        let pt = QBicForm::normal_form(&"1+0".parse().unwrap(), 2, &f).unwrap();
        assert_eq!(pt.gram(), &Mat::from_ints(&f, &[&[1, 0], &[0, 0]]));
        assert_eq!(QBicForm::normal_form(&QBicType::smooth(5), 2, &f).unwrap().gram(), &Mat::identity(&f, 5));
    }

    #[test]
    fn evaluate_examples() {
        let f = Field::new(2, 2).unwrap();
        let fermat = QBicForm::new(2, Mat::identity(&f, 5)).unwrap();
        let e0: Vector = (0..5).map(|i| if i == 0 { f.one() } else { f.zero() }).collect();
        assert_eq!(fermat.evaluate(&e0).unwrap(), f.one());
        let herm = QBicForm::new(2, Mat::from_ints(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])).unwrap();
        assert!(herm.evaluate(&[f.one(), f.zero(), f.zero()]).unwrap().is_zero());
        assert!(matches!(herm.evaluate(&[f.one()]), Err(QBicError::Length { .. })));
    }

    #[test]
    fn beta_is_biadditive_but_f_is_not() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let form = QBicForm::new(3, random_invertible(&f, 3, &mut rng)).unwrap();
        let mut nonadditive = false;
        for _ in 0..50 {
            let u: Vector = (0..3).map(|_| f.random(&mut rng)).collect();
            let v: Vector = (0..3).map(|_| f.random(&mut rng)).collect();
            let w: Vector = (0..3).map(|_| f.random(&mut rng)).collect();
            let uv: Vector = u.iter().zip(&v).map(|(&a, &b)| f.add(a, b)).collect();
            assert_eq!(
                form.beta(&uv, &w).unwrap(),
                f.add(form.beta(&u, &w).unwrap(), form.beta(&v, &w).unwrap())
            );
            assert_eq!(
                form.beta(&w, &uv).unwrap(),
                f.add(form.beta(&w, &u).unwrap(), form.beta(&w, &v).unwrap())
            );
            let sum = f.add(form.evaluate(&u).unwrap(), form.evaluate(&v).unwrap());
            nonadditive |= form.evaluate(&uv).unwrap() != sum;
        }
        assert!(nonadditive);
    }

    #[test]
    fn orthogonals_examples() {
        let f = Field::new(2, 2).unwrap();
        let n2 = QBicForm::new(2, jordan_block(&f, 2)).unwrap();
        assert_eq!(n2.radical().dim(), 0);
        assert_eq!(n2.right_orthogonal().dim(), 1);
        assert_eq!(n2.left_orthogonal_descent().dim(), 1);
        assert_ne!(n2.right_orthogonal(), n2.left_orthogonal_descent());
        let d = QBicForm::new(2, Mat::from_ints(&f, &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(d.radical().dim(), 1);
        let id = QBicForm::new(2, Mat::identity(&f, 4)).unwrap();
        assert_eq!(id.radical().dim() + id.right_orthogonal().dim() + id.left_orthogonal_descent().dim(), 0);
        assert!(id.is_nonsingular());
    }

    #[test]
    fn nodal_threefold_singular_point() {
        let f = Field::new(2, 2).unwrap();
        let x0 = QBicForm::normal_form(&"1^3+N2".parse().unwrap(), 2, &f).unwrap();
        assert!(!x0.is_nonsingular());
        let sing = x0.singular_support();
        assert_eq!(sing.dim(), 1);
        // In the normal form N2 = [[0,1],[0,0]] on coordinates 3,4 the
        // q-bic part is x3^q x4, singular along e4.
        assert!(sing.contains(&[f.zero(), f.zero(), f.zero(), f.zero(), f.one()]));
    }

    #[test]
    fn tangent_space_requires_point() {
        let f = Field::new(2, 2).unwrap();
        let form = QBicForm::new(2, Mat::identity(&f, 3)).unwrap();
        assert_eq!(form.tangent_space(&[f.one(), f.zero(), f.zero()]), Err(QBicError::NotOnHypersurface));
        let p = [f.one(), f.one(), f.zero()];
        assert_eq!(form.tangent_space(&p).unwrap().dim(), 2);
    }

    #[test]
    fn restriction_examples() {
        let f = Field::new(2, 2).unwrap();
        let form = QBicForm::new(2, Mat::identity(&f, 5)).unwrap();
        let hyper: Vec<Vector> = (0..4)
            .map(|i| (0..5).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        let u = Subspace::span(&f, 5, &hyper);
        assert_eq!(form.restrict(&u).unwrap().gram(), &Mat::identity(&f, 4));
        // (1,1,0,0,0) and (0,0,1,1,0) span an isotropic plane in characteristic 2
        let iso = Subspace::span(
            &f,
            5,
            &[
                vec![f.one(), f.one(), f.zero(), f.zero(), f.zero()],
                vec![f.zero(), f.zero(), f.one(), f.one(), f.zero()],
            ],
        );
        assert!(form.restrict_gram(&iso).is_zero());
        assert_eq!(form.restrict(&iso), Err(QBicError::ZeroForm));
        let x0 = QBicForm::normal_form(&"1^3+N2".parse().unwrap(), 2, &f).unwrap();
        let w = Subspace::span(&f, 5, &hyper[..3]);
        assert_eq!(x0.restrict(&w).unwrap().classify().unwrap(), QBicType::smooth(3));
    }

    #[test]
    fn classify_normal_forms_roundtrip() {
        let f = Field::new(2, 2).unwrap();
        for dim in 1..=6 {
            for t in QBicType::all_of_dim(dim) {
                let form = QBicForm::normal_form(&t, 2, &f).unwrap();
                assert_eq!(form.classify().unwrap(), t);
                assert_eq!(form.corank(), t.corank());
                assert_eq!(form.radical().dim(), t.radical_dim());
                assert_eq!(form.radical().dim() > 0, t.is_cone());
            }
        }
    }

    #[test]
    fn normal_form_fingerprints_are_distinct() {
        for dim in 1..=6 {
            let table = normal_form_fingerprints(dim);
            let distinct: BTreeSet<&Vec<usize>> = table.iter().map(|(f, _)| f).collect();
            assert_eq!(distinct.len(), table.len(), "dimension {dim}");
        }
    }

    #[test]
    fn classify_examples() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(QBicForm::new(3, Mat::identity(&f, 4)).unwrap().classify().unwrap(), QBicType::smooth(4));
        assert_eq!(
            QBicForm::new(3, jordan_block(&f, 2)).unwrap().classify().unwrap(),
            QBicType::new(0, [(2, 1)])
        );
        assert_eq!(QBicForm::new(3, Mat::zeros(&f, 2, 2)), Err(QBicError::ZeroForm));
    }

    #[test]
    fn classify_random_conjugates_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4] {
            let f = Field::of_order(q * q).unwrap();
            for dim in 2..=4 {
                for t in QBicType::all_of_dim(dim) {
                    let nf = QBicForm::normal_form(&t, q, &f).unwrap();
                    for _ in 0..5 {
                        let a = random_invertible(&f, dim, &mut rng);
                        assert_eq!(nf.transform(&a).unwrap().classify().unwrap(), t);
                    }
                }
            }
        }
    }

    #[test]
    fn hermitian_points_of_hermitian_curves() {
        for (q, count) in [(2u64, 9usize), (3, 28), (4, 65)] {
            let f = Field::of_order(q * q).unwrap();
            let form = QBicForm::new(q, Mat::identity(&f, 3)).unwrap();
            let hv = form.hermitian_vectors().unwrap();
            assert!(hv.complete);
            let pts = form.hermitian_points().unwrap();
            assert_eq!(pts.len(), count);
            for p in &pts {
                assert_eq!(&form.phi(p).unwrap(), p);
                assert!(form.is_hermitian_vector(p.coords()).unwrap());
            }
        }
    }

    #[test]
    fn hermitian_requires_nonsingular() {
        let f = Field::new(2, 2).unwrap();
        let form = QBicForm::new(2, jordan_block(&f, 3)).unwrap();
        assert!(matches!(form.hermitian_vectors(), Err(QBicError::Singular)));
        assert!(form.is_hermitian_vector(&[f.zero(), f.zero(), f.zero()]).unwrap());
    }

    #[test]
    fn standard_basis_hermitian_for_identity() {
        let f = Field::new(3, 2).unwrap();
        let form = QBicForm::new(3, Mat::identity(&f, 3)).unwrap();
        for i in 0..3 {
            let e: Vector = (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect();
            assert!(form.is_hermitian_vector(&e).unwrap());
        }
    }

    #[test]
    fn phi_is_q2_frobenius_for_hermitian_gram() {
        // G^T = G^(q): here G = [[0,1,0],[1,0,0],[0,0,1]] over the prime field.
        let q = 2u64;
        let f = Field::of_order(q.pow(4)).unwrap();
        let form = QBicForm::new(q, Mat::from_ints(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap();
        let mut checked = 0;
        for x in f.elements() {
            for z in f.elements() {
                let v = vec![f.one(), x, z];
                if form.evaluate(&v).unwrap().is_zero() {
                    let pt = ProjPoint::new(&f, v.clone()).unwrap();
                    let frob = ProjPoint::new(&f, twist_vec(&f, &v, 2)).unwrap();
                    assert_eq!(form.phi(&pt).unwrap(), frob);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}
