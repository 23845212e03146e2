//! Fusion laws, axis verification and the automorphisms axes induce.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::algebra::{eigenspace_of, Algebra, AlgebraError};
use crate::exactnum::{Matrix, Scalar, Subspace, Vector};
use crate::groups::{GroupError, PermGroup, Permutation};

/// Default cap on the number of axes produced by [`axet_closure`].
pub const DEFAULT_AXET_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FusionError {
    #[error("fusion law must contain the eigenvalue 1")]
    NoUnit,
    #[error("eigenvalue {0} listed twice")]
    DuplicateEigenvalue(Scalar),
    #[error("eigenvalue index {0} out of range")]
    BadIndex(usize),
    #[error("1 * 1 must be contained in {{1}}")]
    UnitNotClosed,
    #[error("grading is not a morphism: {0} * {1} contains {2}")]
    GradingNotMorphism(Scalar, Scalar, Scalar),
    #[error("grading signs must be +1 or -1")]
    BadSign,
    #[error("law parameters must be distinct and differ from 0 and 1")]
    DegenerateParameters,
    #[error("fusion law has no grading")]
    NoGrading,
    #[error("vector is not an axis for this fusion law")]
    NotAxis,
    #[error("constructed map is not an automorphism")]
    NotAutomorphism,
    #[error("matrix is {rows}x{cols}, algebra has dimension {dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
    #[error("axet exceeds the cap of {0} axes")]
    CapExceeded(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A fusion law: eigenvalues, a symmetric subset-valued product on them,
/// and optionally a grading by `{+1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionLaw {
    eigenvalues: Vec<Scalar>,
    table: Vec<Vec<BTreeSet<usize>>>,
    grading: Option<Vec<i8>>,
}

impl FusionLaw {
    /// `rules` lists `(i, j, i*j)` by eigenvalue index; unlisted products
    /// are empty.
    pub fn new(
        eigenvalues: Vec<Scalar>,
        rules: &[(usize, usize, Vec<usize>)],
        grading: Option<Vec<i8>>,
    ) -> Result<Self, FusionError> {
        let n = eigenvalues.len();
        for (i, e) in eigenvalues.iter().enumerate() {
            if eigenvalues[..i].contains(e) {
                return Err(FusionError::DuplicateEigenvalue(e.clone()));
            }
        }
        let unit = eigenvalues.iter().position(Scalar::is_one).ok_or(FusionError::NoUnit)?;
        let mut table = alloc::vec![alloc::vec![BTreeSet::new(); n]; n];
        for (i, j, out) in rules {
            for &k in out.iter().chain([i, j]) {
                if k >= n {
                    return Err(FusionError::BadIndex(k));
                }
            }
            table[*i][*j].extend(out.iter().copied());
            table[*j][*i].extend(out.iter().copied());
        }
        if table[unit][unit].iter().any(|&k| k != unit) {
            return Err(FusionError::UnitNotClosed);
        }
        if let Some(g) = &grading {
            if g.len() != n || g.iter().any(|s| *s != 1 && *s != -1) {
                return Err(FusionError::BadSign);
            }
            for i in 0..n {
                for j in 0..n {
                    for &k in &table[i][j] {
                        if g[k] != g[i] * g[j] {
                            return Err(FusionError::GradingNotMorphism(
                                eigenvalues[i].clone(),
                                eigenvalues[j].clone(),
                                eigenvalues[k].clone(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(FusionLaw { eigenvalues, table, grading })
    }

    pub fn eigenvalues(&self) -> &[Scalar] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn index_of(&self, x: &Scalar) -> Option<usize> {
        self.eigenvalues.iter().position(|e| e == x)
    }

    /// `lambda_i * lambda_j` as eigenvalue indices.
    pub fn product(&self, i: usize, j: usize) -> &BTreeSet<usize> {
        &self.table[i][j]
    }

    pub fn grading(&self) -> Option<&[i8]> {
        self.grading.as_deref()
    }

    /// Eigenvalue indices of grade `-1`.
    pub fn negative(&self) -> Vec<usize> {
        match &self.grading {
            Some(g) => (0..g.len()).filter(|&i| g[i] < 0).collect(),
            None => Vec::new(),
        }
    }

    /// `0 * lambda` is contained in `{lambda}` for every eigenvalue (if 0 is
    /// present at all), so that 0 behaves like 1.
    pub fn is_seress(&self) -> bool {
        let Some(z) = self.eigenvalues.iter().position(Scalar::is_zero) else {
            return true;
        };
        (0..self.len()).all(|l| self.table[z][l].iter().all(|&k| k == l))
    }
}

/// Outcome of an axis check; never an error for non-axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisReport {
    pub is_idempotent: bool,
    pub is_axis: bool,
    pub is_primitive: bool,
    pub eigen_dims: Vec<(Scalar, usize)>,
    pub missing_dim: usize,
    pub fusion_violations: Vec<(Scalar, Scalar, Scalar)>,
}

/// An automorphism, as a matrix acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    matrix: Matrix,
}

impl Automorphism {
    /// Wraps `m` after checking that it is an automorphism of `alg`.
    pub fn new(alg: &Algebra, m: Matrix) -> Result<Self, FusionError> {
        if is_automorphism(alg, &m)? {
            Ok(Automorphism { matrix: m })
        } else {
            Err(FusionError::NotAutomorphism)
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }
}

/// Eigenspaces of an axis candidate for each eigenvalue of the law.
struct Spectrum {
    spaces: Vec<Subspace>,
    /// Inverse of the matrix of stacked eigenbases, when they fill the space.
    change: Option<Matrix>,
}

fn spectrum(alg: &Algebra, a: &[Scalar], law: &FusionLaw) -> Result<Spectrum, AlgebraError> {
    let ad = alg.adjoint_matrix(a)?;
    let spaces: Vec<Subspace> = law.eigenvalues.iter().map(|l| eigenspace_of(&ad, l)).collect();
    let total: usize = spaces.iter().map(Subspace::dim).sum();
    let change = (total == alg.dim()).then(|| {
        let cols: Vec<Vector> = spaces.iter().flat_map(|s| s.vectors().iter().cloned()).collect();
        Matrix::from_columns(alg.dim(), &cols).inverse().expect("eigenspaces are independent")
    });
    Ok(Spectrum { spaces, change })
}

impl Spectrum {
    /// Eigenvalue index of each coordinate in the eigenbasis.
    fn labels(&self) -> Vec<usize> {
        self.spaces.iter().enumerate().flat_map(|(i, s)| core::iter::repeat_n(i, s.dim())).collect()
    }

    /// The linear map acting as `weights[i]` on the `i`-th eigenspace.
    fn diagonal_map(&self, dim: usize, weights: &[Scalar]) -> Matrix {
        let change = self.change.as_ref().expect("diagonalisable");
        let cols: Vec<Vector> = self.spaces.iter().flat_map(|s| s.vectors().iter().cloned()).collect();
        let e = Matrix::from_columns(dim, &cols);
        let labels = self.labels();
        let d = Matrix::from_fn(dim, dim, |i, j| if i == j { weights[labels[i]].clone() } else { Scalar::zero() });
        &(&e * &d) * change
    }
}

pub fn check_axis(alg: &Algebra, a: &[Scalar], law: &FusionLaw) -> Result<AxisReport, FusionError> {
    let sq = alg.multiply(a, a)?;
    let is_idempotent = sq.0 == a && a.iter().any(|x| !x.is_zero());
    let spec = spectrum(alg, a, law)?;
    let eigen_dims: Vec<(Scalar, usize)> =
        law.eigenvalues.iter().cloned().zip(spec.spaces.iter().map(Subspace::dim)).collect();
    let total: usize = eigen_dims.iter().map(|(_, d)| d).sum();
    let missing_dim = alg.dim() - total;
    let mut fusion_violations = Vec::new();
    if let Some(change) = &spec.change {
        let labels = spec.labels();
        let n = law.len();
        for i in 0..n {
            for j in i..n {
                let allowed = law.product(i, j);
                let mut bad = BTreeSet::new();
                for u in spec.spaces[i].vectors() {
                    for v in spec.spaces[j].vectors() {
                        let coords = change.mul_vec(&alg.mul(u, v));
                        for (c, &l) in coords.iter().zip(&labels) {
                            if !c.is_zero() && !allowed.contains(&l) {
                                bad.insert(l);
                            }
                        }
                    }
                }
                for l in bad {
                    fusion_violations.push((
                        law.eigenvalues[i].clone(),
                        law.eigenvalues[j].clone(),
                        law.eigenvalues[l].clone(),
                    ));
                }
            }
        }
    }
    let is_axis = is_idempotent && missing_dim == 0 && fusion_violations.is_empty();
    let is_primitive = law.index_of(&Scalar::one()).is_some_and(|u| spec.spaces[u].dim() == 1);
    Ok(AxisReport { is_idempotent, is_axis, is_primitive, eigen_dims, missing_dim, fusion_violations })
}

fn require_axis(alg: &Algebra, a: &[Scalar], law: &FusionLaw) -> Result<Spectrum, FusionError> {
    if !check_axis(alg, a, law)?.is_axis {
        return Err(FusionError::NotAxis);
    }
    Ok(spectrum(alg, a, law)?)
}

/// The Miyamoto involution `tau_a`: `-1` on negatively graded eigenspaces,
/// `+1` elsewhere.
pub fn miyamoto_map(alg: &Algebra, a: &[Scalar], law: &FusionLaw) -> Result<Automorphism, FusionError> {
    let grading = law.grading().ok_or(FusionError::NoGrading)?;
    let spec = require_axis(alg, a, law)?;
    let weights: Vec<Scalar> = grading.iter().map(|&s| Scalar::from_int(s.into())).collect();
    Automorphism::new(alg, spec.diagonal_map(alg.dim(), &weights))
}

/// Eigenvalue indices other than 1 and 0 that carry grade `+1`.
fn positive_extra(law: &FusionLaw) -> Vec<usize> {
    let g = law.grading().unwrap_or(&[]);
    (0..law.len())
        .filter(|&i| g.get(i) == Some(&1) && !law.eigenvalues[i].is_one() && !law.eigenvalues[i].is_zero())
        .collect()
}

/// For an axis whose negatively graded eigenspaces vanish, the involution
/// `sigma_a` negating the remaining eigenspaces other than 1 and 0;
/// `None` when `a` is not a Jordan axis.
pub fn jordan_involution(alg: &Algebra, a: &[Scalar], law: &FusionLaw) -> Result<Option<Automorphism>, FusionError> {
    law.grading().ok_or(FusionError::NoGrading)?;
    let spec = require_axis(alg, a, law)?;
    if law.negative().iter().any(|&b| !spec.spaces[b].is_zero()) {
        return Ok(None);
    }
    let flip = positive_extra(law);
    let weights: Vec<Scalar> =
        (0..law.len()).map(|i| Scalar::from_int(if flip.contains(&i) { -1 } else { 1 })).collect();
    Automorphism::new(alg, spec.diagonal_map(alg.dim(), &weights)).map(Some)
}

pub fn is_jordan_axis(alg: &Algebra, a: &[Scalar], law: &FusionLaw) -> Result<bool, FusionError> {
    law.grading().ok_or(FusionError::NoGrading)?;
    let spec = require_axis(alg, a, law)?;
    Ok(law.negative().iter().all(|&b| spec.spaces[b].is_zero()))
}

/// Invertible and multiplicative on basis pairs.
pub fn is_automorphism(alg: &Algebra, m: &Matrix) -> Result<bool, FusionError> {
    let n = alg.dim();
    if m.rows() != n || m.cols() != n {
        return Err(FusionError::Shape { rows: m.rows(), cols: m.cols(), dim: n });
    }
    if m.rank() < n {
        return Ok(false);
    }
    let images: Vec<Vector> = (0..n).map(|j| m.column(j)).collect();
    for i in 0..n {
        for j in i..n {
            if alg.mul(&images[i], &images[j]) != m.mul_vec(alg.product(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A closed set of axes with the Miyamoto group acting on it.
#[derive(Clone, Debug)]
pub struct Axet {
    pub axes: Vec<Vector>,
    /// `tau` of each axis, in axet order.
    pub taus: Vec<Matrix>,
    pub miyamoto: PermGroup,
}

/// Closes `seeds` under the Miyamoto maps of every axis found. Axes appear
/// in discovery order; an axet larger than `cap` is an error.
pub fn axet_closure(alg: &Algebra, seeds: &[Vector], law: &FusionLaw, cap: usize) -> Result<Axet, FusionError> {
    let mut axes: Vec<Vector> = Vec::new();
    let mut index: BTreeMap<Vector, usize> = BTreeMap::new();
    let mut taus: Vec<Matrix> = Vec::new();
    let mut push = |v: Vector, axes: &mut Vec<Vector>, taus: &mut Vec<Matrix>| -> Result<(), FusionError> {
        if index.contains_key(&v) {
            return Ok(());
        }
        if axes.len() == cap {
            return Err(FusionError::CapExceeded(cap));
        }
        taus.push(miyamoto_map(alg, &v, law)?.into_matrix());
        index.insert(v.clone(), axes.len());
        axes.push(v);
        Ok(())
    };
    for s in seeds {
        push(s.clone(), &mut axes, &mut taus)?;
    }
    // done[i] counts how many taus have been applied to axis i
    let mut done: Vec<usize> = Vec::new();
    loop {
        let mut progressed = false;
        let mut i = 0;
        while i < axes.len() {
            if done.len() <= i {
                done.push(0);
            }
            while done[i] < taus.len() {
                let img = taus[done[i]].mul_vec(&axes[i]);
                done[i] += 1;
                push(img, &mut axes, &mut taus)?;
                progressed = true;
            }
            i += 1;
        }
        if !progressed {
            break;
        }
    }
    let lookup: BTreeMap<&Vector, usize> = axes.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut gens: Vec<Permutation> = Vec::new();
    for t in &taus {
        let images: Vec<usize> = axes.iter().map(|v| lookup[&t.mul_vec(v)]).collect();
        let p = Permutation::from_images(images)?;
        if !p.is_identity() && !gens.contains(&p) {
            gens.push(p);
        }
    }
    let miyamoto = PermGroup::new(axes.len(), gens)?;
    Ok(Axet { axes, taus, miyamoto })
}

/// Unordered pairs of distinct axes with equal Miyamoto involutions.
pub fn find_twins(alg: &Algebra, axet: &[Vector], law: &FusionLaw) -> Result<Vec<(usize, usize)>, FusionError> {
    let taus: Vec<Matrix> =
        axet.iter().map(|a| miyamoto_map(alg, a, law).map(Automorphism::into_matrix)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for i in 0..taus.len() {
        for j in i + 1..taus.len() {
            if taus[i] == taus[j] {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}
