//! Bilinear forms on ℚⁿ and semiorthonormal Gram matrices.
//!
//! Forms are evaluated as `χ(v, w) = vᵗ·B·w`, so `χ(eᵢ, eⱼ) = B[i][j]`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Rational};

/// Upper-unitriangular integer Gram matrix of a pairing in a semiorthonormal
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeminormalGram {
    matrix: ExactMatrix,
}

impl SeminormalGram {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Shape(format!(
                "Gram matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_integral() {
            return Err(Error::Semiorthonormal("entries must be integers".into()));
        }
        if !is_semiorthonormal(&matrix) {
            return Err(Error::Semiorthonormal(format!(
                "{} is not upper unitriangular",
                matrix
            )));
        }
        Ok(SeminormalGram { matrix })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(ExactMatrix::from_i64_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Alternating,
    General,
}

/// A square Gram matrix tagged with its symmetry type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSpace {
    gram: ExactMatrix,
    kind: FormKind,
}

impl BilinearSpace {
    /// Wraps `gram`, inferring the tag. A matrix that is both symmetric and
    /// alternating (the zero form) is tagged symmetric.
    pub fn new(gram: ExactMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!(
                "form of shape {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let kind = if gram.is_symmetric() {
            FormKind::Symmetric
        } else if gram.is_antisymmetric() {
            FormKind::Alternating
        } else {
            FormKind::General
        };
        Ok(BilinearSpace { gram, kind })
    }

    /// Wraps `gram` under an explicit tag, checking that it matches.
    pub fn with_kind(gram: ExactMatrix, kind: FormKind) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape("form must be square".into()));
        }
        let ok = match kind {
            FormKind::Symmetric => gram.is_symmetric(),
            FormKind::Alternating => gram.is_antisymmetric(),
            FormKind::General => !gram.is_symmetric() && !gram.is_antisymmetric(),
        };
        if !ok {
            return Err(Error::FormKind(format!("{} is not {:?}", gram, kind)));
        }
        Ok(BilinearSpace { gram, kind })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(ExactMatrix::from_i64_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// `χ(v, w) = vᵗ·B·w`.
    pub fn pair(&self, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        let n = self.dim();
        if v.len() != n || w.len() != n {
            return Err(Error::Shape(format!(
                "vectors of length {} and {} in a {}-dimensional space",
                v.len(),
                w.len(),
                n
            )));
        }
        let mut acc = Rational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                acc += vi * self.gram.get(i, j) * wj;
            }
        }
        Ok(acc)
    }
}

/// True iff `m` is upper triangular with unit diagonal.
pub fn is_semiorthonormal(m: &ExactMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    (0..n).all(|i| {
        m.get(i, i).is_one() && (0..i).all(|j| m.get(i, j).is_zero())
    })
}

/// `X + Xᵗ`.
pub fn symmetrize(x: &SeminormalGram) -> BilinearSpace {
    let m = x.matrix();
    let gram = m.add(&m.transpose()).expect("square");
    BilinearSpace {
        gram,
        kind: FormKind::Symmetric,
    }
}

/// `X − Xᵗ`.
pub fn alternate(x: &SeminormalGram) -> BilinearSpace {
    let m = x.matrix();
    let gram = m.sub(&m.transpose()).expect("square");
    BilinearSpace {
        gram,
        kind: FormKind::Alternating,
    }
}

/// `A⁻¹Aᵗ`, the action of twisting by the shifted canonical class in the
/// exceptional basis.
pub fn canonical_operator(x: &SeminormalGram) -> ExactMatrix {
    let a = x.matrix();
    let inv = a.inverse().expect("unitriangular matrices are invertible");
    inv.mul(&a.transpose()).expect("square")
}

/// Quotient of a symmetric or alternating space by its radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalQuotient {
    /// `r × dim` matrix whose kernel is the radical.
    pub projection: ExactMatrix,
    /// Nondegenerate `r × r` form on the quotient.
    pub form: BilinearSpace,
}

/// Projects onto the quotient by the radical `Ker B`.
///
/// The quotient basis is the images of the lexicographically first maximal
/// independent set of coordinate vectors. The projection sends a vector to
/// its coordinates in that basis, modulo the radical.
pub fn radical_quotient(space: &BilinearSpace) -> Result<RadicalQuotient> {
    if space.kind() == FormKind::General {
        return Err(Error::FormKind(
            "radical quotient needs a symmetric or alternating form".into(),
        ));
    }
    let b = space.gram();
    let n = space.dim();
    // Pivot columns of B are the first independent set of coordinate images
    // modulo the radical: e_j is independent mod Ker B iff B·e_j is.
    let (_, basis) = b.rref();
    let r = basis.len();
    // Coordinates of every e_k in terms of {e_j : j in basis} mod Ker B are
    // found by solving B_S · c = B e_k, where B_S is the column restriction.
    let restricted = ExactMatrix::from_fn(n, r, |i, j| b.get(i, basis[j]).clone());
    let augmented = ExactMatrix::from_fn(n, r + n, |i, j| {
        if j < r {
            restricted.get(i, j).clone()
        } else {
            b.get(i, j - r).clone()
        }
    });
    let (reduced, _) = augmented.rref();
    let projection = ExactMatrix::from_fn(r, n, |i, k| reduced.get(i, r + k).clone());
    let form_gram = ExactMatrix::from_fn(r, r, |i, j| b.get(basis[i], basis[j]).clone());
    let form = BilinearSpace {
        gram: form_gram,
        kind: space.kind(),
    };
    Ok(RadicalQuotient { projection, form })
}

/// Gram matrix `(vᵢᵗ·B·vⱼ)` of the given vectors.
pub fn gram_matrix(vectors: &[Vec<Rational>], space: &BilinearSpace) -> Result<ExactMatrix> {
    let p = ExactMatrix::from_columns(space.dim(), vectors)?;
    p.transpose().mul(space.gram())?.mul(&p)
}
