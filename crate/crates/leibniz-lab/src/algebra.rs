//! Candidate brackets as structure tensors, the Leibniz-law checker, and
//! structural predicates (Lie/abelian/perfect, derived subalgebra, right
//! center, derivations).
//!
//! A [`StructureTensor`] is an arbitrary bilinear bracket given on a basis;
//! nothing is assumed about it. A [`LeibnizAlgebra`] can only be obtained by
//! running the law check, which keeps enumeration pipelines honest: filters
//! operate on tensors, downstream algebra operates on validated algebras.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{MatrixS, Subspace, VectorS};

/// Structure constants c[i][j][k] of a candidate bracket:
/// [e_i, e_j] = sum_k c[i][j][k] e_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureTensor {
    field: FieldSpec,
    dim: usize,
    /// Row-major rank-3 array, index (i*dim + j)*dim + k.
    c: Vec<Scalar>,
}

impl StructureTensor {
    pub fn zeros(field: FieldSpec, dim: usize) -> Self {
        StructureTensor { field, dim, c: vec![field.zero(); dim * dim * dim] }
    }

    pub fn from_entries(field: FieldSpec, dim: usize, c: Vec<Scalar>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor for dim {dim} needs {} entries, got {}",
                dim * dim * dim,
                c.len()
            )));
        }
        Ok(StructureTensor { field, dim, c })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.c
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.c[(i * self.dim + j) * self.dim + k] = v;
    }

    /// [e_i, e_j] as a vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> VectorS {
        let start = (i * self.dim + j) * self.dim;
        VectorS::from_entries(self.field, self.c[start..start + self.dim].to_vec())
    }

    /// [e_i, v] by linearity in the second slot.
    pub fn bracket_basis_vec(&self, i: usize, v: &VectorS) -> VectorS {
        let f = self.field;
        let mut out = VectorS::zeros(f, self.dim);
        for (l, cl) in v.entries().iter().enumerate() {
            if cl.is_zero() {
                continue;
            }
            for k in 0..self.dim {
                let t = f.mul(cl, self.get(i, l, k));
                out[k] = f.add(&out[k], &t);
            }
        }
        out
    }

    /// [v, e_j] by linearity in the first slot.
    pub fn bracket_vec_basis(&self, v: &VectorS, j: usize) -> VectorS {
        let f = self.field;
        let mut out = VectorS::zeros(f, self.dim);
        for (l, cl) in v.entries().iter().enumerate() {
            if cl.is_zero() {
                continue;
            }
            for k in 0..self.dim {
                let t = f.mul(cl, self.get(l, j, k));
                out[k] = f.add(&out[k], &t);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|e| e.is_zero())
    }
}

/// Bilinear extension of the bracket to arbitrary vectors.
pub fn evaluate_bracket(t: &StructureTensor, x: &VectorS, y: &VectorS) -> Result<VectorS> {
    if x.dim() != t.dim() || y.dim() != t.dim() {
        return Err(Error::DimensionMismatch(format!(
            "bracket on dim {} applied to vectors of dim {} and {}",
            t.dim(),
            x.dim(),
            y.dim()
        )));
    }
    let f = t.field();
    let mut out = VectorS::zeros(f, t.dim());
    for (i, xi) in x.entries().iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.entries().iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let cij = f.mul(xi, yj);
            for k in 0..t.dim() {
                let term = f.mul(&cij, t.get(i, j, k));
                out[k] = f.add(&out[k], &term);
            }
        }
    }
    Ok(out)
}

/// All basis triples where the Leibniz law fails, as
/// (i, j, k, [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]).
/// Empty output is exactly the law. Indices are 0-based.
pub fn leibniz_defect(t: &StructureTensor) -> Vec<(usize, usize, usize, VectorS)> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = t.bracket_basis_vec(i, &t.bracket_basis(j, k));
                let r1 = t.bracket_vec_basis(&t.bracket_basis(i, j), k);
                let r2 = t.bracket_vec_basis(&t.bracket_basis(i, k), j);
                let defect = lhs.sub(&r1).add(&r2);
                if !defect.is_zero() {
                    out.push((i, j, k, defect));
                }
            }
        }
    }
    out
}

/// A bracket that passed the Leibniz law on all basis triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    tensor: StructureTensor,
}

impl LeibnizAlgebra {
    /// The only constructor: validates the law.
    pub fn new(tensor: StructureTensor) -> Result<Self> {
        let defects = leibniz_defect(&tensor);
        if defects.is_empty() {
            Ok(LeibnizAlgebra { tensor })
        } else {
            Err(Error::NotLeibniz(defects.len()))
        }
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn field(&self) -> FieldSpec {
        self.tensor.field()
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn bracket(&self, x: &VectorS, y: &VectorS) -> Result<VectorS> {
        evaluate_bracket(&self.tensor, x, y)
    }
}

/// Structural predicates of a validated algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuralFlags {
    pub is_lie: bool,
    pub is_abelian: bool,
    pub is_perfect: bool,
}

pub fn structural_predicates(a: &LeibnizAlgebra) -> StructuralFlags {
    let t = a.tensor();
    let f = t.field();
    let n = t.dim();
    // [x,x] = 0 for all x <=> [e_i,e_i] = 0 and [e_i,e_j] + [e_j,e_i] = 0.
    let mut is_lie = true;
    'outer: for i in 0..n {
        if !t.bracket_basis(i, i).is_zero() {
            is_lie = false;
            break;
        }
        for j in 0..n {
            for k in 0..n {
                if !f.add(t.get(i, j, k), t.get(j, i, k)).is_zero() {
                    is_lie = false;
                    break 'outer;
                }
            }
        }
    }
    StructuralFlags {
        is_lie,
        is_abelian: t.is_zero(),
        is_perfect: derived_subalgebra(a).is_full(),
    }
}

/// Span of all basis brackets [e_i, e_j], echelonized.
pub fn derived_subalgebra(a: &LeibnizAlgebra) -> Subspace {
    let t = a.tensor();
    let n = t.dim();
    let spans = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| t.bracket_basis(i, j));
    Subspace::from_spanning(t.field(), n, spans)
}

/// The right center: elements that vanish as the right-hand bracket factor,
/// { w : [g, w] = 0 for all g }. Computed as the kernel of the stacked
/// left-multiplication matrices L_{e_i} = [e_i, -].
pub fn right_center(a: &LeibnizAlgebra) -> Subspace {
    let t = a.tensor();
    let f = t.field();
    let n = t.dim();
    // Stack: rows indexed by (i, k); column l carries c[i][l][k].
    let mut m = MatrixS::zeros(f, n * n, n);
    for i in 0..n {
        for k in 0..n {
            for l in 0..n {
                m[(i * n + k, l)] = t.get(i, l, k).clone();
            }
        }
    }
    Subspace::from_spanning(f, n, m.kernel_basis())
}

/// Does D satisfy D([x,y]) = [D(x),y] + [x,D(y)] on all basis pairs?
pub fn check_derivation(a: &LeibnizAlgebra, d: &MatrixS) -> Result<bool> {
    let t = a.tensor();
    let n = t.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "derivation candidate must be {n}x{n}, got {}x{}",
            d.rows(),
            d.cols()
        )));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(&t.bracket_basis(i, j));
            let rhs = t
                .bracket_vec_basis(&d.col(i), j)
                .add(&t.bracket_basis_vec(i, &d.col(j)));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Does D satisfy D([x,y]) = [D(x),y] - [D(y),x] on all basis pairs?
pub fn check_antiderivation(a: &LeibnizAlgebra, d: &MatrixS) -> Result<bool> {
    let t = a.tensor();
    let n = t.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "anti-derivation candidate must be {n}x{n}, got {}x{}",
            d.rows(),
            d.cols()
        )));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(&t.bracket_basis(i, j));
            let rhs = t
                .bracket_vec_basis(&d.col(i), j)
                .sub(&t.bracket_vec_basis(&d.col(j), i));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Block-diagonal product algebra; dims add, blocks do not interact.
pub fn direct_product(a: &LeibnizAlgebra, b: &LeibnizAlgebra) -> Result<LeibnizAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut t = StructureTensor::zeros(f, n);
    for i in 0..na {
        for j in 0..na {
            for k in 0..na {
                t.set(i, j, k, a.tensor().get(i, j, k).clone());
            }
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            for k in 0..nb {
                t.set(na + i, na + j, na + k, b.tensor().get(i, j, k).clone());
            }
        }
    }
    LeibnizAlgebra::new(t)
}

/// Stock algebras used across tests, presets, and the classification census.
pub mod samples {
    use super::*;

    /// The abelian algebra k^n_0.
    pub fn abelian(field: FieldSpec, dim: usize) -> LeibnizAlgebra {
        LeibnizAlgebra::new(StructureTensor::zeros(field, dim)).expect("zero bracket is Leibniz")
    }

    /// sl(2): [e1,e2] = e3, [e1,e3] = -2 e1, [e2,e3] = 2 e2 (antisymmetric).
    /// Requires characteristic != 2.
    pub fn sl2(field: FieldSpec) -> Result<LeibnizAlgebra> {
        if field.characteristic() == 2 {
            return Err(Error::Unsupported(
                "sl(2) needs a field of characteristic != 2".into(),
            ));
        }
        let mut t = StructureTensor::zeros(field, 3);
        let one = field.one();
        let m1 = field.neg(&one);
        let two = field.from_i64(2);
        let m2 = field.neg(&two);
        t.set(0, 1, 2, one.clone());
        t.set(1, 0, 2, m1);
        t.set(0, 2, 0, m2.clone());
        t.set(2, 0, 0, two.clone());
        t.set(1, 2, 1, two);
        t.set(2, 1, 1, m2);
        LeibnizAlgebra::new(t)
    }

    /// The 2-dimensional algebra {f1,f2} = a f1, {f2,f2} = c f1.
    pub fn dim2_metabelian(field: FieldSpec, a: i64, c: i64) -> LeibnizAlgebra {
        let mut t = StructureTensor::zeros(field, 2);
        t.set(0, 1, 0, field.from_i64(a));
        t.set(1, 1, 0, field.from_i64(c));
        LeibnizAlgebra::new(t).expect("the (a, c) family satisfies the law")
    }

    /// The 2-dimensional Lie algebra {f2,f1} = -{f1,f2} = b f1.
    pub fn dim2_lie(field: FieldSpec, b: i64) -> LeibnizAlgebra {
        let mut t = StructureTensor::zeros(field, 2);
        t.set(1, 0, 0, field.from_i64(b));
        t.set(0, 1, 0, field.from_i64(-b));
        LeibnizAlgebra::new(t).expect("the (b) family satisfies the law")
    }

    /// The 3-dimensional algebra [e1,e3] = e2, [e3,e3] = e1, the base of the
    /// dim-4 co-flag census.
    pub fn dim3_coflag_base(field: FieldSpec) -> LeibnizAlgebra {
        let mut t = StructureTensor::zeros(field, 3);
        t.set(0, 2, 1, field.one());
        t.set(2, 2, 0, field.one());
        LeibnizAlgebra::new(t).expect("base algebra satisfies the law")
    }
}
