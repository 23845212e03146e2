//! Joint eigenspace decompositions, fixed subalgebras and extensions of
//! automorphisms across module summands.

use alloc::vec::Vec;

use crate::algebra::{eigenspace_of, Algebra, AlgebraError, SubspaceBasis};
use crate::exactnum::{Matrix, Scalar, Subspace, Vector};
use crate::forms::{orthogonal_complement, BilinearForm, FormError};
use crate::fusion::{check_axis, is_automorphism, Automorphism, FusionError, FusionLaw};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("member {0} of the axis set is not an axis for the law")]
    NotAxis(usize),
    #[error("map {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("subspace is not a subalgebra")]
    NotSubalgebra,
    #[error("base map is not an automorphism of the subalgebra")]
    BaseNotAutomorphism,
    #[error("module condition fails: u{0} * w{1} leaves the module")]
    NotModule(usize, usize),
    #[error("map of size {rows}x{cols} does not fit a subspace of dimension {dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
    #[error("pieces generate a subalgebra of dimension {found} < {expected}")]
    NotGenerating { expected: usize, found: usize },
    #[error("pieces disagree on their overlap")]
    InconsistentPieces,
    #[error("fixed subspace is not closed under multiplication")]
    NotClosed,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Joint eigenspaces `A_(l1, ..., lm)(Y)` of a list of axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDecomposition {
    pub axes: Vec<Vector>,
    /// Nonzero joint eigenspaces keyed by eigenvalue tuple, in law order.
    pub summands: Vec<(Vec<Scalar>, SubspaceBasis)>,
    /// Orthogonal complement of the sum of summands when that sum is proper
    /// and a form was supplied; zero otherwise.
    pub residual: SubspaceBasis,
}

impl JointDecomposition {
    pub fn get(&self, tuple: &[Scalar]) -> Option<&SubspaceBasis> {
        self.summands.iter().find(|(t, _)| t.as_slice() == tuple).map(|(_, s)| s)
    }

    /// The all-zero summand (the joint-zero subalgebra).
    pub fn zero_summand(&self) -> Option<&SubspaceBasis> {
        let zero = alloc::vec![Scalar::zero(); self.axes.len()];
        self.get(&zero)
    }

    pub fn sum(&self, ambient: usize) -> SubspaceBasis {
        self.summands.iter().fold(Subspace::zero(ambient), |acc, (_, s)| acc.sum(s))
    }

    /// `tuple: dim` lines, one per summand, then the residual if nonzero.
    pub fn report(&self) -> Vec<(alloc::string::String, usize)> {
        let mut out: Vec<_> = self
            .summands
            .iter()
            .map(|(t, s)| {
                let parts: Vec<_> = t.iter().map(|x| alloc::format!("{x}")).collect();
                (alloc::format!("({})", parts.join(", ")), s.dim())
            })
            .collect();
        if !self.residual.is_zero() {
            out.push(("residual".into(), self.residual.dim()));
        }
        out
    }
}

pub fn joint_decomposition(
    alg: &Algebra,
    axes: &[Vector],
    law: &FusionLaw,
    form: Option<&BilinearForm>,
) -> Result<JointDecomposition, DecomposeError> {
    let n = alg.dim();
    let mut spaces: Vec<Vec<Subspace>> = Vec::with_capacity(axes.len());
    for (k, a) in axes.iter().enumerate() {
        if !check_axis(alg, a, law)?.is_axis {
            return Err(DecomposeError::NotAxis(k));
        }
        let ad = alg.adjoint_matrix(a)?;
        spaces.push(law.eigenvalues().iter().map(|l| eigenspace_of(&ad, l)).collect());
    }
    let mut summands = Vec::new();
    // depth-first over eigenvalue tuples, pruning zero intersections
    let mut stack: Vec<(Vec<usize>, Subspace)> = alloc::vec![(Vec::new(), Subspace::full(n))];
    while let Some((tuple, space)) = stack.pop() {
        let depth = tuple.len();
        if depth == axes.len() {
            let t = tuple.iter().map(|&i| law.eigenvalues()[i].clone()).collect();
            summands.push((t, space));
            continue;
        }
        for i in (0..law.len()).rev() {
            let next = space.intersect(&spaces[depth][i]);
            if !next.is_zero() {
                let mut t = tuple.clone();
                t.push(i);
                stack.push((t, next));
            }
        }
    }
    let total = summands.iter().fold(Subspace::zero(n), |acc: Subspace, (_, s)| acc.sum(s));
    let residual = match form {
        Some(f) if total.dim() < n => orthogonal_complement(f, &total)?,
        _ => Subspace::zero(n),
    };
    Ok(JointDecomposition { axes: axes.to_vec(), summands, residual })
}

/// Common fixed points of a list of automorphisms.
pub fn fixed_subalgebra(alg: &Algebra, maps: &[Matrix]) -> Result<SubspaceBasis, DecomposeError> {
    let mut fixed = Subspace::full(alg.dim());
    for (k, m) in maps.iter().enumerate() {
        if !is_automorphism(alg, m)? {
            return Err(DecomposeError::NotAutomorphism(k));
        }
        fixed = fixed.intersect(&eigenspace_of(m, &Scalar::one()));
    }
    if !alg.is_closed(&fixed) {
        return Err(DecomposeError::NotClosed);
    }
    Ok(fixed)
}

/// Linear maps `phi` on a `U`-module `W` with `phi(u w) = psi(u) phi(w)`.
/// Matrices act on the echelon bases of `U` and `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpace {
    pub base_map: Matrix,
    pub module: SubspaceBasis,
    pub extensions: Vec<Matrix>,
}

impl ExtensionSpace {
    pub fn dim(&self) -> usize {
        self.extensions.len()
    }
}

/// Matrix of `w -> u w` on `W`, in `W`'s coordinates.
fn action_on(alg: &Algebra, u: &[Scalar], w: &Subspace) -> Option<Matrix> {
    let cols: Option<Vec<Vector>> = w.vectors().iter().map(|x| w.coordinates(&alg.mul(u, x)).map(Vector)).collect();
    Some(Matrix::from_columns(w.dim(), &cols?))
}

fn check_base(alg: &Algebra, u: &Subspace, psi: &Matrix) -> Result<(), DecomposeError> {
    let k = u.dim();
    if psi.rows() != k || psi.cols() != k {
        return Err(DecomposeError::Shape { rows: psi.rows(), cols: psi.cols(), dim: k });
    }
    if !alg.is_closed(u) {
        return Err(DecomposeError::NotSubalgebra);
    }
    if !is_automorphism(&alg.restrict(u)?, psi)? {
        return Err(DecomposeError::BaseNotAutomorphism);
    }
    Ok(())
}

/// Whether `phi` satisfies `phi(u w) = psi(u) phi(w)` on the bases of `U`
/// and `W`.
pub fn is_extension(alg: &Algebra, u: &Subspace, psi: &Matrix, w: &Subspace, phi: &Matrix) -> bool {
    let us = u.vectors();
    (0..us.len()).all(|i| {
        let pu = u.combine(&psi.column(i));
        w.vectors().iter().enumerate().all(|(j, x)| {
            let Some(lhs) = w.coordinates(&alg.mul(&us[i], x)) else {
                return false;
            };
            let phi_w = w.combine(&phi.column(j));
            let Some(rhs) = w.coordinates(&alg.mul(&pu, &phi_w)) else {
                return false;
            };
            phi.mul_vec(&lhs).0 == rhs
        })
    })
}

pub fn extension_space(
    alg: &Algebra,
    u: &SubspaceBasis,
    psi: &Matrix,
    w: &SubspaceBasis,
) -> Result<ExtensionSpace, DecomposeError> {
    check_base(alg, u, psi)?;
    if let Some((i, j)) = alg.product_escape(u, w, w) {
        return Err(DecomposeError::NotModule(i, j));
    }
    let k = u.dim();
    let d = w.dim();
    let acts: Vec<Matrix> = u.vectors().iter().map(|x| action_on(alg, x, w).expect("module checked")).collect();
    // Phi M_i = (sum_l Psi_li M_l) Phi, unknown Phi[r][s] at r * d + s
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..k {
        let mut twisted = Matrix::zeros(d, d);
        for (l, m) in acts.iter().enumerate() {
            if !psi[(l, i)].is_zero() {
                twisted = &twisted + &m.scaled(&psi[(l, i)]);
            }
        }
        for r in 0..d {
            for c in 0..d {
                let mut row = alloc::vec![Scalar::zero(); d * d];
                for s in 0..d {
                    row[r * d + s] += &acts[i][(s, c)];
                    row[s * d + c] -= &twisted[(r, s)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let solutions = if rows.is_empty() {
        (0..d * d).map(|t| Vector::unit(d * d, t)).collect()
    } else {
        Matrix::from_rows(rows).map_err(AlgebraError::from)?.kernel_basis()
    };
    let extensions = solutions.iter().map(|v| Matrix::from_fn(d, d, |r, s| v[r * d + s].clone())).collect();
    Ok(ExtensionSpace { base_map: psi.clone(), module: w.clone(), extensions })
}

/// A product whose image under the propagated map disagrees with the
/// product of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    pub factors: (Vector, Vector),
    /// Image of the product by linearity.
    pub predicted: Vector,
    /// Product of the images.
    pub found: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assembly {
    Automorphism(Automorphism),
    Inconsistent(Inconsistency),
    /// Multiplicative but not invertible.
    Singular(Matrix),
}

/// A partial linear map kept as reduced rows `[x | f(x)]` with pivots in
/// the domain part.
struct PartialMap {
    rows: Vec<(usize, Vector, Vector)>,
}

impl PartialMap {
    /// `Ok(true)` when `x` was new, `Ok(false)` when it was already
    /// determined and consistent, `Err(predicted)` otherwise.
    fn insert(&mut self, x: &Vector, y: &Vector) -> Result<bool, Vector> {
        let mut x = x.clone();
        let mut y = y.clone();
        let mut predicted = Vector::zeros(y.len());
        for (p, rx, ry) in &self.rows {
            if !x[*p].is_zero() {
                let c = x[*p].clone();
                x = x.add_scaled(&-&c, rx);
                y = y.add_scaled(&-&c, ry);
                predicted = predicted.add_scaled(&c, ry);
            }
        }
        match x.iter().position(|c| !c.is_zero()) {
            Some(p) => {
                let inv = x[p].inv().expect("nonzero pivot");
                self.rows.push((p, x.scale(&inv), y.scale(&inv)));
                Ok(true)
            }
            None if y.is_zero() => Ok(false),
            None => Err(predicted),
        }
    }

    fn matrix(&self, n: usize) -> Matrix {
        let mut out = Matrix::zeros(n, n);
        for j in 0..n {
            let mut x = Vector::unit(n, j);
            let mut img = Vector::zeros(n);
            for (p, rx, ry) in &self.rows {
                if !x[*p].is_zero() {
                    let c = x[*p].clone();
                    x = x.add_scaled(&-&c, rx);
                    img = img.add_scaled(&c, ry);
                }
            }
            for i in 0..n {
                out[(i, j)] = img[i].clone();
            }
        }
        out
    }
}

/// Extends a map given on pieces `(S, images)`, where column `j` of
/// `images` is the image of the `j`-th basis vector of `S`, to the whole
/// algebra through products.
pub fn assemble_automorphism(alg: &Algebra, pieces: &[(SubspaceBasis, Matrix)]) -> Result<Assembly, DecomposeError> {
    let n = alg.dim();
    let mut gens = Vec::new();
    for (s, m) in pieces {
        if m.rows() != n || m.cols() != s.dim() {
            return Err(DecomposeError::Shape { rows: m.rows(), cols: m.cols(), dim: s.dim() });
        }
        gens.extend(s.vectors().iter().cloned());
    }
    let (generated, _) = alg.subalgebra_generated(&gens)?;
    if generated.dim() < n {
        return Err(DecomposeError::NotGenerating { expected: n, found: generated.dim() });
    }
    let mut map = PartialMap { rows: Vec::new() };
    let mut known: Vec<(Vector, Vector)> = Vec::new();
    for (s, m) in pieces {
        for (j, x) in s.vectors().iter().enumerate() {
            let y = m.column(j);
            match map.insert(x, &y) {
                Ok(true) => known.push((x.clone(), y)),
                Ok(false) => {}
                Err(_) => return Err(DecomposeError::InconsistentPieces),
            }
        }
    }
    let mut j = 0;
    while j < known.len() {
        for i in 0..=j {
            let x = alg.mul(&known[i].0, &known[j].0);
            let y = alg.mul(&known[i].1, &known[j].1);
            match map.insert(&x, &y) {
                Ok(true) => known.push((x, y)),
                Ok(false) => {}
                Err(predicted) => {
                    let factors = (known[i].0.clone(), known[j].0.clone());
                    return Ok(Assembly::Inconsistent(Inconsistency { factors, predicted, found: y }));
                }
            }
        }
        j += 1;
    }
    let m = map.matrix(n);
    match Automorphism::new(alg, m.clone()) {
        Ok(a) => Ok(Assembly::Automorphism(a)),
        Err(FusionError::NotAutomorphism) => Ok(Assembly::Singular(m)),
        Err(e) => Err(e.into()),
    }
}
