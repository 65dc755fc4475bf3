//! JSON descriptors for fields, matrices and q-bic forms.
//!
//! A form file looks like
//! `{"q": {"p": 2, "e": 1}, "field": {"p": 2, "e": 2, "modulus": [1, 1, 1]}, "gram": [[1, 0], [0, 1]]}`.
//! Entries are element codes `sum c_i p^i` over the coefficient basis of the
//! field; `modulus` is the monic modulus, little-endian, and may be omitted
//! to get the default one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, FieldError, FieldParams};
use crate::qbic::{QBicError, QBicForm};
use crate::semilin::Mat;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Form(#[from] QBicError),
    #[error("entry {code} at ({row}, {col}) is not an element of a field of order {order}")]
    BadEntry { row: usize, col: usize, code: u64, order: u64 },
    #[error("gram matrix is empty or ragged")]
    Shape,
    #[error("q = {q} is not a power of the characteristic {p}")]
    QMismatch { q: u64, p: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QDescriptor {
    pub p: u64,
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDescriptor {
    pub q: QDescriptor,
    pub field: FieldDescriptor,
    pub gram: Vec<Vec<u64>>,
}

impl FieldDescriptor {
    pub fn of(field: &Field) -> FieldDescriptor {
        let params = field.params();
        FieldDescriptor { p: params.p as u64, e: params.e, modulus: Some(params.modulus.clone()) }
    }

    pub fn build(&self) -> Result<Field, IoError> {
        Ok(match &self.modulus {
            None => Field::new(self.p, self.e)?,
            Some(m) => Field::from_params(FieldParams { p: self.p as u32, e: self.e, modulus: m.clone() })?,
        })
    }
}

pub fn matrix_codes(m: &Mat) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].code() as u64).collect()).collect()
}

pub fn matrix_from_codes(field: &Field, rows: &[Vec<u64>]) -> Result<Mat, IoError> {
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(IoError::Shape);
    }
    let mut m = Mat::zeros(field, rows.len(), n);
    for (i, row) in rows.iter().enumerate() {
        for (j, &code) in row.iter().enumerate() {
            let bad = || IoError::BadEntry { row: i, col: j, code, order: field.order() as u64 };
            let code32 = u32::try_from(code).map_err(|_| bad())?;
            m[(i, j)] = field.from_code(code32).ok_or_else(bad)?;
        }
    }
    Ok(m)
}

impl FormDescriptor {
    pub fn of(form: &QBicForm) -> FormDescriptor {
        let p = form.field().characteristic() as u64;
        FormDescriptor {
            q: QDescriptor { p, e: form.q_exponent() },
            field: FieldDescriptor::of(form.field()),
            gram: matrix_codes(form.gram()),
        }
    }

    pub fn build(&self) -> Result<QBicForm, IoError> {
        let field = self.field.build()?;
        if self.q.p != field.characteristic() as u64 {
            return Err(IoError::QMismatch { q: self.q.p.pow(self.q.e), p: field.characteristic() });
        }
        let gram = matrix_from_codes(&field, &self.gram)?;
        Ok(QBicForm::new(self.q.p.pow(self.q.e), gram)?)
    }
}

pub fn parse_form(json: &str) -> Result<QBicForm, IoError> {
    serde_json::from_str::<FormDescriptor>(json)?.build()
}
