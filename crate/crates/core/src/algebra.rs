//! Commutative non-associative algebras given by structure constants.
//!
//! The product of basis elements `b_i` and `b_j` is stored once, for
//! `i <= j`, so commutativity holds by construction. Vectors are coordinate
//! columns relative to the named basis.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactnum::{common_field, Matrix, NumError, QuadraticField, Scalar, Subspace, Vector};
use crate::forms::BilinearForm;

/// Subspaces of an algebra are plain echelonized subspaces of its
/// coordinate space.
pub type SubspaceBasis = Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("vector of length {found} used in an algebra of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("product of basis elements {0} and {1} is not defined")]
    MissingProduct(usize, usize),
    #[error("subspace is not closed under multiplication")]
    NotClosed,
    #[error("form has size {found}, algebra has dimension {expected}")]
    FormSize { expected: usize, found: usize },
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    names: Vec<String>,
    field: Option<Arc<QuadraticField>>,
    products: Vec<Vector>,
    form: Option<BilinearForm>,
}

fn tri(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    j * (j + 1) / 2 + i
}

impl Algebra {
    /// Builds an algebra from `product(i, j)` evaluated for every `i <= j`.
    pub fn new(
        names: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Vector,
    ) -> Result<Self, AlgebraError> {
        Self::try_new(names, |i, j| Ok(product(i, j)))
    }

    pub fn try_new(
        names: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Result<Vector, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(AlgebraError::DuplicateName(n.clone()));
            }
        }
        let dim = names.len();
        let mut products = Vec::with_capacity(dim * (dim + 1) / 2);
        for j in 0..dim {
            for i in 0..=j {
                let v = product(i, j)?;
                if v.len() != dim {
                    return Err(AlgebraError::DimensionMismatch { expected: dim, found: v.len() });
                }
                products.push(v);
            }
        }
        let field = common_field(products.iter().flat_map(|v| v.iter()))?;
        Ok(Algebra { names, field, products, form: None })
    }

    /// The zero-dimensional algebra.
    pub fn trivial() -> Self {
        Algebra { names: Vec::new(), field: None, products: Vec::new(), form: None }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The scalar field: `None` for the rationals.
    pub fn field(&self) -> Option<&Arc<QuadraticField>> {
        self.field.as_ref()
    }

    pub fn form(&self) -> Option<&BilinearForm> {
        self.form.as_ref()
    }

    pub fn with_form(mut self, form: BilinearForm) -> Result<Self, AlgebraError> {
        if form.dim() != self.dim() {
            return Err(AlgebraError::FormSize { expected: self.dim(), found: form.dim() });
        }
        if let (Some(a), Some(b)) = (&self.field, common_field(form.gram().entries())?) {
            if **a != *b {
                return Err(NumError::FieldMismatch.into());
            }
        }
        self.form = Some(form);
        Ok(self)
    }

    pub fn without_form(mut self) -> Self {
        self.form = None;
        self
    }

    /// Same structure constants, with scalars taken in the given quadratic
    /// extension.
    pub fn extend_scalars(mut self, field: Arc<QuadraticField>) -> Result<Self, AlgebraError> {
        if let Some(k) = &self.field {
            if **k != *field {
                return Err(NumError::FieldMismatch.into());
            }
        }
        self.field = Some(field);
        Ok(self)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zeros(self.dim())
    }

    /// `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.products[tri(i, j)]
    }

    fn check(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: v.len() })
        }
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    /// Product without the length check; panics on mismatched input.
    pub(crate) fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = Vector::zeros(n);
        for (i, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x * y;
                for (o, p) in out.iter_mut().zip(self.product(i, j).iter()) {
                    if !p.is_zero() {
                        *o += &(&c * p);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `u -> a u`.
    pub fn adjoint_matrix(&self, a: &[Scalar]) -> Result<Matrix, AlgebraError> {
        self.check(a)?;
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Ok(Matrix::from_columns(self.dim(), &cols))
    }

    /// `A_lambda(a)`; the zero subspace when `lambda` is not an eigenvalue.
    pub fn eigenspace(&self, a: &[Scalar], lambda: &Scalar) -> Result<SubspaceBasis, AlgebraError> {
        let ad = self.adjoint_matrix(a)?;
        Ok(eigenspace_of(&ad, lambda))
    }

    /// The two-sided identity, if one exists.
    pub fn identity_of(&self) -> Option<Vector> {
        let n = self.dim();
        if n == 0 {
            return Some(Vector::zeros(0));
        }
        // unknown e: sum_i e_i (b_i b_j) = b_j for all j
        let m = Matrix::from_fn(n * n, n, |r, i| self.product(i, r / n)[r % n].clone());
        let rhs: Vec<Scalar> = (0..n * n)
            .map(|r| if r / n == r % n { Scalar::one() } else { Scalar::zero() })
            .collect();
        m.solve(&rhs)
    }

    /// Smallest product-closed subspace containing `gens`, together with the
    /// least `k` such that products of at most `k` generators span it.
    pub fn subalgebra_generated(&self, gens: &[Vector]) -> Result<(SubspaceBasis, usize), AlgebraError> {
        for g in gens {
            self.check(g)?;
        }
        let n = self.dim();
        let mut span = Subspace::from_spanning(n, gens);
        if span.is_zero() {
            return Ok((span, 0));
        }
        // layers[k - 1] holds the vectors first reached with k factors
        let mut layers: Vec<Vec<Vector>> = alloc::vec![span.vectors().to_vec()];
        let mut k = 1;
        loop {
            if self.layers_closed(&layers, &span) {
                return Ok((span, k));
            }
            k += 1;
            let mut fresh = Vec::new();
            let mut grown = span.clone();
            for l in 1..k {
                let m = k - l;
                if l > m {
                    break;
                }
                for (ix, x) in layers[l - 1].iter().enumerate() {
                    let ys = &layers[m - 1];
                    let start = if l == m { ix } else { 0 };
                    for y in &ys[start..] {
                        let p = self.mul(x, y);
                        if !grown.contains(&p) {
                            grown = grown.sum(&Subspace::from_spanning(n, core::slice::from_ref(&p)));
                            fresh.push(p);
                        }
                    }
                }
            }
            layers.push(fresh);
            span = grown;
        }
    }

    fn layers_closed(&self, layers: &[Vec<Vector>], span: &Subspace) -> bool {
        let k = layers.len();
        for l in 1..=k {
            for m in l..=k {
                if l + m <= k {
                    continue;
                }
                for (ix, x) in layers[l - 1].iter().enumerate() {
                    let start = if l == m { ix } else { 0 };
                    for y in &layers[m - 1][start..] {
                        if !span.contains(&self.mul(x, y)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Whether the span of `sub` is closed under multiplication.
    pub fn is_closed(&self, sub: &SubspaceBasis) -> bool {
        let vs = sub.vectors();
        (0..vs.len()).all(|i| (i..vs.len()).all(|j| sub.contains(&self.mul(&vs[i], &vs[j]))))
    }

    /// First pair of basis vectors of `sub` whose product leaves `target`.
    pub fn product_escape(&self, sub: &SubspaceBasis, other: &SubspaceBasis, target: &SubspaceBasis) -> Option<(usize, usize)> {
        for (i, u) in sub.vectors().iter().enumerate() {
            for (j, w) in other.vectors().iter().enumerate() {
                if !target.contains(&self.mul(u, w)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The subalgebra on `sub` as a standalone algebra in the coordinates of
    /// `sub`'s echelon basis. Basis names are `s0, s1, ...`; an attached
    /// form is restricted along.
    pub fn restrict(&self, sub: &SubspaceBasis) -> Result<Algebra, AlgebraError> {
        self.check(&sub.vectors().first().cloned().unwrap_or_else(|| self.zero_vector()))?;
        let vs = sub.vectors();
        let names = (0..vs.len()).map(|i| format!("s{i}")).collect();
        let mut alg = Algebra::try_new(names, |i, j| {
            sub.coordinates(&self.mul(&vs[i], &vs[j]))
                .map(Vector)
                .ok_or(AlgebraError::NotClosed)
        })?;
        alg.field = self.field.clone();
        if let Some(f) = &self.form {
            let g = Matrix::from_fn(vs.len(), vs.len(), |i, j| f.eval(&vs[i], &vs[j]));
            alg.form = Some(BilinearForm::new(g)?);
        }
        Ok(alg)
    }

    /// Block direct sum. Clashing names on the right get primes appended.
    pub fn direct_sum(&self, other: &Algebra) -> Result<Algebra, AlgebraError> {
        let field = match (&self.field, &other.field) {
            (Some(a), Some(b)) if **a != **b => return Err(NumError::FieldMismatch.into()),
            (Some(a), _) => Some(a.clone()),
            (None, b) => b.clone(),
        };
        let (p, q) = (self.dim(), other.dim());
        let mut names = self.names.clone();
        for n in &other.names {
            let mut m = n.clone();
            while names.contains(&m) {
                m.push('\'');
            }
            names.push(m);
        }
        let mut alg = Algebra::new(names, |i, j| {
            let mut v = Vector::zeros(p + q);
            if j < p {
                v[..p].clone_from_slice(self.product(i, j));
            } else if i >= p {
                v[p..].clone_from_slice(other.product(i - p, j - p));
            }
            v
        })?;
        alg.field = field;
        if let (Some(f), Some(g)) = (&self.form, &other.form) {
            let m = Matrix::from_fn(p + q, p + q, |i, j| match (i < p, j < p) {
                (true, true) => f.gram()[(i, j)].clone(),
                (false, false) => g.gram()[(i - p, j - p)].clone(),
                _ => Scalar::zero(),
            });
            alg.form = Some(BilinearForm::new(m)?);
        }
        Ok(alg)
    }

    /// Image of `v` under a linear map of the algebra.
    pub fn apply(&self, m: &Matrix, v: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check(v)?;
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: m.rows() });
        }
        Ok(m.mul_vec(v))
    }

    /// Basis-vector text for a coordinate vector, e.g. `1/8*a0+-1/8*ar`.
    pub fn describe(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c}*{n}") })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

/// Kernel of `m - lambda I` as a subspace.
pub fn eigenspace_of(m: &Matrix, lambda: &Scalar) -> Subspace {
    let n = m.rows();
    let shifted = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            &m[(i, j)] - lambda
        } else {
            m[(i, j)].clone()
        }
    });
    Subspace::from_spanning(n, &shifted.kernel_basis())
}
