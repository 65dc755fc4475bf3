//! Dense linear and semilinear algebra over a [`Field`].

use std::fmt;

use thiserror::Error;

use crate::gf::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}

pub type Vector = Vec<FieldElement>;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    /// Uniformly random element of `GL_n`, by rejection.
    pub fn random_invertible<R: rand::Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Mat {
        loop {
            let mut m = Mat::zeros(field, n, n);
            for x in m.data.iter_mut() {
                *x = field.random(rng);
            }
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn from_rows(field: &Field, rows: &[Vector]) -> Result<Mat, LinAlgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinAlgError::Dimension("ragged rows".into()));
        }
        Ok(Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds a matrix from small integers, reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Mat {
        let rows: Vec<Vector> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Mat::from_rows(field, &rows).expect("rectangular input")
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: &Field, blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = f.mul_add(a, other[(k, j)], out[(i, j)]);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Dimension(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinAlgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinAlgError::Dimension("matrix sum".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: FieldElement) -> Mat {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    /// Entrywise `x -> x^(p^k)`.
    pub fn twist(&self, k: i64) -> Mat {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.frobenius(a, k)).collect(),
        }
    }

    /// Rows in reduced row echelon form (zero rows removed) and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = f.mul(inv, m[(r, j)]);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..m.cols {
                    let v = m[(r, j)];
                    m[(i, j)] = f.mul_add(neg, v, m[(i, j)]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vector> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::ZERO; self.cols];
                v[fc] = FieldElement::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r[(i, fc)]);
                }
                v
            })
            .collect();
        Subspace::span(f, self.cols, &basis)
    }

    /// Left kernel `{v : v^T M = 0}`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Some solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vector>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug = Mat::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![FieldElement::ZERO; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)];
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Mat, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Mat::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = FieldElement::ONE;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinAlgError::Singular);
        }
        let mut inv = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = FieldElement;
    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        &mut self.data[r * self.cols + c]
    }
}

/// Entrywise `x -> x^(p^k)` of a vector.
pub fn twist_vec(field: &Field, v: &[FieldElement], k: i64) -> Vector {
    v.iter().map(|&x| field.frobenius(x, k)).collect()
}

/// A linear subspace of `F^n`, stored as its reduced row echelon basis.
///
/// Two subspaces are equal exactly when their bases are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zeros(field, 0, ambient) }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(field, ambient) }
    }

    /// The span of the given vectors.
    pub fn span(field: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Mat::from_rows(field, vectors).expect("vectors of equal length");
        assert_eq!(m.cols, ambient, "vectors must live in the ambient space");
        Subspace { ambient, basis: m.rref().0 }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Echelon basis as a `dim x ambient` matrix.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        Subspace::span(self.field(), self.ambient, &rows).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient, &rows)
    }

    /// `{v : <w, v> = 0 for every w in self}` for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Image under the entrywise `p^k` power, which is again a subspace.
    pub fn twist(&self, k: i64) -> Subspace {
        Subspace { ambient: self.ambient, basis: self.basis.twist(k) }
    }

    /// Image of `self` under `v -> M v`.
    pub fn image_under(&self, m: &Mat) -> Subspace {
        let rows: Vec<Vector> =
            self.basis_vectors().iter().map(|v| m.mul_vec(v).expect("dimensions agree")).collect();
        Subspace::span(self.field(), m.rows(), &rows)
    }
}

/// Solutions of `A v^(p^k) = v` inside the working field of `A`.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    /// Solutions form a vector space over `GF(p^d)` with `d = gcd(k, e)`.
    pub scalar_degree: u32,
    /// A basis over `GF(p^scalar_degree)`.
    pub basis: Vec<Vector>,
    /// Dimension of the solution set over the prime field.
    pub prime_dim: usize,
    /// Whether the working field already holds every solution over the
    /// algebraic closure (only decidable for invertible `A`).
    pub complete: bool,
}

impl FixedPoints {
    pub fn count_log_p(&self) -> usize {
        self.prime_dim
    }
}

/// Solves the semilinear equation `A v^(p^k) = v` by rewriting it as a
/// linear system over the prime field.
pub fn semilinear_fixed_points(a: &Mat, k: u32) -> Result<FixedPoints, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare { rows: a.rows, cols: a.cols });
    }
    let big = a.field();
    let p = big.characteristic() as u64;
    let e = big.degree() as usize;
    let n = a.rows;
    let prime = Field::new(p, 1).expect("characteristic is prime");

    // Column (i, j) is the image of t^j e_i under v -> A v^(p^k) - v.
    let mut lin = Mat::zeros(&prime, n * e, n * e);
    for i in 0..n {
        for j in 0..e {
            let mut coeffs = vec![0u32; e];
            coeffs[j] = 1;
            let x = big.from_coeffs(&coeffs).expect("basis monomial");
            let mut v = vec![FieldElement::ZERO; n];
            v[i] = x;
            let mut img = a.mul_vec(&twist_vec(big, &v, k as i64))?;
            img[i] = big.sub(img[i], x);
            for (r, &y) in img.iter().enumerate() {
                for (s, c) in big.coeffs(y).into_iter().enumerate() {
                    lin[(r * e + s, i * e + j)] = FieldElement::from_prime(c);
                }
            }
        }
    }
    let ker = lin.kernel();
    let to_big = |w: &[FieldElement]| -> Vector {
        (0..n)
            .map(|r| {
                let cs: Vec<u32> = (0..e).map(|s| w[r * e + s].code()).collect();
                big.from_coeffs(&cs).expect("prime-field digits")
            })
            .collect()
    };
    let solutions: Vec<Vector> = ker.basis_vectors().iter().map(|w| to_big(w)).collect();

    let d = gcd(k, e as u32);
    let small = big.subfield_elements(d);
    let omega = small
        .iter()
        .copied()
        .find(|&x| !x.is_zero() && big.multiplicative_order(x) == Some(p.pow(d) - 1))
        .expect("subfield has a primitive element");
    let flatten = |v: &Vector| -> Vector {
        v.iter()
            .flat_map(|&x| big.coeffs(x).into_iter().map(FieldElement::from_prime))
            .collect()
    };
    // Keep a solution iff it enlarges the GF(p^d)-span of those already kept,
    // measured through the GF(p)-span of their omega-multiples.
    let mut basis: Vec<Vector> = Vec::new();
    let mut span_rows: Vec<Vector> = Vec::new();
    for s in &solutions {
        let mut trial = span_rows.clone();
        trial.push(flatten(s));
        if Subspace::span(&prime, n * e, &trial).dim() > span_rows.len() {
            for power in 0..d {
                let c = big.pow(omega, power as u64);
                span_rows.push(flatten(&s.iter().map(|&x| big.mul(c, x)).collect()));
            }
            basis.push(s.clone());
        }
    }
    let complete = d == k && basis.len() == n && a.is_invertible();
    Ok(FixedPoints { scalar_degree: d, basis, prime_dim: solutions.len(), complete })
}

/// Reference solver by exhaustive search over `F^n`; only for tiny sizes.
pub fn semilinear_fixed_points_bruteforce(a: &Mat, k: u32) -> Vec<Vector> {
    let f = a.field();
    let n = a.rows;
    let q = f.order() as u64;
    let total = q.pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let v: Vector = (0..n)
                .map(|_| {
                    let x = f.from_code((code % q) as u32).expect("code below order");
                    code /= q;
                    x
                })
                .collect();
            let img = a.mul_vec(&twist_vec(f, &v, k as i64)).expect("square");
            (img == v).then_some(v)
        })
        .collect()
}

fn gcd(a: u32, b: u32) -> u32 {
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
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_mat(f: &Field, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Mat {
        let rows: Vec<Vector> = (0..r).map(|_| (0..c).map(|_| f.random(rng)).collect()).collect();
        Mat::from_rows(f, &rows).unwrap()
    }

    fn jordan_block(f: &Field, m: usize) -> Mat {
        let mut j = Mat::zeros(f, m, m);
        for i in 0..m.saturating_sub(1) {
            j[(i, i + 1)] = f.one();
        }
        j
    }

    #[test]
    fn rank_examples() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(Mat::identity(&f, 3).rank(), 3);
        assert_eq!(Mat::identity(&f, 3).kernel().dim(), 0);
        for m in 1..7 {
            assert_eq!(jordan_block(&f, m).rank(), m - 1);
        }
        assert_eq!(Mat::zeros(&f, 4, 4).rank(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::new(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let m = random_mat(&f, 3, 6, &mut rng);
            let k = m.kernel();
            assert_eq!(k.dim() + m.rank(), 6);
            for v in k.basis_vectors() {
                assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
            }
            let again = Subspace::span(&f, 6, &k.basis_vectors());
            assert_eq!(again, k);
        }
    }

    #[test]
    fn solve_and_inverse() {
        let f = Field::new(5, 1).unwrap();
        let m = Mat::from_ints(&f, &[&[1, 2], &[3, 4]]);
        let b = vec![f.from_int(1), f.from_int(0)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(&f, 2));
        let sing = Mat::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(LinAlgError::Singular));
        assert_eq!(sing.solve(&b).unwrap(), None);
        assert!(matches!(sing.solve(&[f.one()]), Err(LinAlgError::Dimension(_))));
    }

    #[test]
    fn twist_over_prime_field_is_identity() {
        let f = Field::new(7, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_mat(&f, 3, 4, &mut rng);
        assert_eq!(m.twist(1), m);
    }

    #[test]
    fn intersection_and_sum() {
        let f = Field::new(3, 1).unwrap();
        let u = Subspace::span(&f, 3, &[vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.one(), f.zero()]]);
        let w = Subspace::span(&f, 3, &[vec![f.zero(), f.one(), f.zero()], vec![f.zero(), f.zero(), f.one()]]);
        assert_eq!(u.intersection(&w).dim(), 1);
        assert_eq!(u.sum(&w).dim(), 3);
        assert!(u.intersection(&w).contains(&[f.zero(), f.from_int(2), f.zero()]));
    }

    #[test]
    fn fixed_points_identity_over_fq2() {
        for q in [2u64, 3, 4] {
            let f = Field::of_order(q * q).unwrap();
            let e = f.degree();
            let fp = semilinear_fixed_points(&Mat::identity(&f, 3), e).unwrap();
            assert_eq!(fp.prime_dim as u32, 3 * e);
            assert!(fp.complete);
        }
    }

    #[test]
    fn fixed_points_hermitian_identity_q2() {
        let f = Field::new(2, 2).unwrap();
        let g = Mat::identity(&f, 3);
        let a = g.inverse().unwrap().mul(&g.twist(1).transpose()).unwrap();
        let brute = semilinear_fixed_points_bruteforce(&a, 2);
        assert_eq!(brute.len(), 64);
        let fp = semilinear_fixed_points(&a, 2).unwrap();
        assert_eq!(1usize << fp.prime_dim, 64);
    }

    #[test]
    fn fixed_points_nilpotent_is_zero() {
        let f = Field::new(3, 2).unwrap();
        let fp = semilinear_fixed_points(&jordan_block(&f, 3), 2).unwrap();
        assert_eq!(fp.prime_dim, 0);
        assert!(fp.basis.is_empty());
        assert!(!fp.complete);
    }

    #[test]
    fn fixed_points_match_bruteforce() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (q, n, k) in [(4u64, 2usize, 2u32), (4, 3, 2), (9, 2, 2), (9, 2, 1), (8, 2, 3), (16, 2, 2), (81, 2, 2), (27, 2, 3)] {
            let f = Field::of_order(q).unwrap();
            for _ in 0..4 {
                let a = random_mat(&f, n, n, &mut rng);
                let brute = semilinear_fixed_points_bruteforce(&a, k);
                let fp = semilinear_fixed_points(&a, k).unwrap();
                let p = f.characteristic() as usize;
                assert_eq!(p.pow(fp.prime_dim as u32), brute.len(), "q={q} n={n} k={k}");
                for v in &fp.basis {
                    assert!(brute.contains(v));
                }
                let d = fp.scalar_degree;
                assert_eq!(p.pow(d * fp.basis.len() as u32), brute.len());
            }
        }
    }

    #[test]
    fn non_square_rejected() {
        let f = Field::new(2, 1).unwrap();
        assert!(semilinear_fixed_points(&Mat::zeros(&f, 2, 3), 1).is_err());
    }

    fn small_field() -> impl Strategy<Value = Field> {
        prop::sample::select(vec![4u64, 9, 16, 25, 27]).prop_map(|q| Field::of_order(q).unwrap())
    }

    proptest! {
        #[test]
        fn twist_preserves_rank(f in small_field(), seed in any::<u64>(), k in -3i64..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_mat(&f, 4, 5, &mut rng);
            prop_assert_eq!(m.twist(k).rank(), m.rank());
            prop_assert_eq!(m.twist(1).twist(-1), m.clone());
            prop_assert_eq!(m.twist(0), m);
        }

        #[test]
        fn rank_of_product_bounded(f in small_field(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_mat(&f, 4, 3, &mut rng);
            let b = random_mat(&f, 3, 5, &mut rng);
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }
    }
}
