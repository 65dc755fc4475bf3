//! Brute-force orbit oracle: partitions every nonzero Gram matrix of small
//! dimension into GL_n(F_(q^2))-orbits and checks that `classify` is
//! constant on orbits and hits every normal-form type. Types are orbits over
//! the algebraic closure, so over F_(q^2) several orbits share a type.

use std::collections::{BTreeMap, BTreeSet};

use qbic_core::gf::Field;
use qbic_core::qbic::{QBicForm, QBicType};
use qbic_core::semilin::Mat;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn index(m: &Mat, order: usize) -> usize {
    m.entries().iter().fold(0, |acc, x| acc * order + x.code() as usize)
}

fn gram(field: &Field, n: usize, mut idx: usize) -> Mat {
    let order = field.order() as usize;
    let mut m = Mat::zeros(field, n, n);
    for k in (0..n * n).rev() {
        m[(k / n, k % n)] = field.from_code((idx % order) as u32).unwrap();
        idx /= order;
    }
    m
}

// Scalings by a generator in each coordinate and the unit transvections
// generate GL_n.
fn generators(field: &Field, n: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    for k in 0..n {
        let mut d = Mat::identity(field, n);
        d[(k, k)] = field.generator();
        gens.push(d);
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let mut e = Mat::identity(field, n);
            e[(i, j)] = field.one();
            gens.push(e);
        }
    }
    gens
}

fn check_orbits(q: u64, n: usize) {
    let field = Field::of_order(q * q).unwrap();
    let order = field.order() as usize;
    let total = order.pow((n * n) as u32);
    let gens = generators(&field, n);
    let mut parent: Vec<usize> = (0..total).collect();
    for idx in 1..total {
        let form = QBicForm::new(q, gram(&field, n, idx)).unwrap();
        for a in &gens {
            let image = index(form.transform(a).unwrap().gram(), order);
            let (r1, r2) = (find(&mut parent, idx), find(&mut parent, image));
            parent[r1] = r2;
        }
    }
    let mut type_of_orbit: BTreeMap<usize, QBicType> = BTreeMap::new();
    for idx in 1..total {
        let root = find(&mut parent, idx);
        let t = QBicForm::new(q, gram(&field, n, idx)).unwrap().classify().unwrap();
        match type_of_orbit.get(&root) {
            Some(prev) => assert_eq!(prev, &t, "orbit of {idx} mixes types"),
            None => {
                type_of_orbit.insert(root, t);
            }
        }
    }
    let types: BTreeSet<String> = type_of_orbit.values().map(|t| t.to_string()).collect();
    let expected: BTreeSet<String> = QBicType::all_of_dim(n).iter().map(|t| t.to_string()).collect();
    assert_eq!(types, expected);
}

#[test]
fn orbits_over_f4_dim2() {
    check_orbits(2, 2);
}

#[test]
fn orbits_over_f9_dim2() {
    check_orbits(3, 2);
}

#[test]
fn orbits_over_f4_dim3() {
    check_orbits(2, 3);
}
