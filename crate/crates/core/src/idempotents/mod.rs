//! Idempotents of prescribed length.
//!
//! Two backends. `ExactSmall` solves the polynomial system exactly through
//! a Groebner basis and the eigenvectors of the multiplication matrices of
//! the quotient ring; it certifies that the list is exhaustive when every
//! solution is rational. `NewtonReconstruct` runs Newton's method from a
//! deterministic set of starting points, refines exactly and reconstructs
//! rationals; it never claims completeness. Every returned vector is checked
//! exactly.

pub mod groebner;
mod newton;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{Algebra, AlgebraError};
use crate::exactnum::univariate::UniPoly;
use crate::exactnum::{Matrix, NumError, Scalar, Subspace, Vector};
use crate::forms::BilinearForm;
use groebner::{groebner, multiplication_matrix, standard_monomials, Mono, Poly};

pub use newton::MAX_DEN_BITS;

/// Largest dimension handled by [`Backend::ExactSmall`].
pub const EXACT_SMALL_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdempotentError {
    #[error("no form supplied and none attached to the algebra")]
    NoForm,
    #[error("form is not positive definite")]
    Indefinite,
    #[error("target length is negative")]
    NegativeLength,
    #[error("idempotent search needs rational structure constants")]
    NotRational,
    #[error("dimension {dim} exceeds the exact backend cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("view is not a subalgebra")]
    ViewNotClosed,
    #[error("symmetry {0} does not preserve the view")]
    SymmetryOutsideView(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    ExactSmall,
    NewtonReconstruct,
}

impl FromStr for Backend {
    type Err = alloc::string::String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact_small" | "exact-small" => Ok(Backend::ExactSmall),
            "newton_reconstruct" | "newton-reconstruct" | "newton" => Ok(Backend::NewtonReconstruct),
            _ => Err(alloc::format!("unknown backend `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Newton starting points.
    pub starts: usize,
    /// Newton iterations per start.
    pub iterations: usize,
    /// S-polynomial reductions in the exact backend.
    pub s_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { starts: 256, iterations: 80, s_pairs: 20_000 }
    }
}

#[derive(Clone, Debug)]
pub struct IdempotentQuery<'a> {
    pub algebra: &'a Algebra,
    /// Restrict the search to this subalgebra.
    pub view: Option<&'a Subspace>,
    /// Defaults to the form attached to the algebra.
    pub form: Option<&'a BilinearForm>,
    pub target_length: Scalar,
    pub backend: Backend,
    pub seed: u64,
    pub budget: Budget,
    /// Automorphisms of the algebra, used to propagate solutions.
    pub symmetries: Vec<Matrix>,
}

impl<'a> IdempotentQuery<'a> {
    pub fn new(algebra: &'a Algebra, target_length: Scalar, backend: Backend) -> Self {
        IdempotentQuery {
            algebra,
            view: None,
            form: None,
            target_length,
            backend,
            seed: 0,
            budget: Budget::default(),
            symmetries: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentResult {
    /// Exact idempotents of the target length, sorted.
    pub found: Vec<Vector>,
    pub complete: bool,
    /// Converged Newton solutions with no rational reconstruction.
    pub numeric_only: Vec<Vec<f64>>,
    /// Solutions of the exact system with irrational coordinates, counted
    /// with multiplicity; they keep `complete` false.
    pub irrational: usize,
    pub budget_exhausted: bool,
}

/// Exact check `v v = v`.
pub fn verify_idempotent(alg: &Algebra, v: &[Scalar]) -> bool {
    alg.multiply(v, v).is_ok_and(|sq| sq.0 == v)
}

/// Orbit of `v` under the group generated by `gens`.
pub(crate) fn orbit(v: &Vector, gens: &[Matrix]) -> Vec<Vector> {
    let mut seen: BTreeSet<Vector> = BTreeSet::new();
    let mut queue = alloc::vec![v.clone()];
    seen.insert(v.clone());
    let mut k = 0;
    while k < queue.len() {
        for g in gens {
            let w = g.mul_vec(&queue[k]);
            if seen.insert(w.clone()) {
                queue.push(w);
            }
        }
        k += 1;
    }
    queue
}

pub fn find_idempotents(q: &IdempotentQuery<'_>) -> Result<IdempotentResult, IdempotentError> {
    let (alg, sub) = match q.view {
        Some(v) => {
            if !q.algebra.is_closed(v) {
                return Err(IdempotentError::ViewNotClosed);
            }
            (q.algebra.restrict(v)?, Some(v))
        }
        None => (q.algebra.clone(), None),
    };
    if alg.field().is_some() || !q.target_length.is_rational() {
        return Err(IdempotentError::NotRational);
    }
    let form = match (q.form, sub) {
        (Some(f), Some(v)) => {
            let vs = v.vectors();
            BilinearForm::new(Matrix::from_fn(vs.len(), vs.len(), |i, j| f.eval(&vs[i], &vs[j])))?
        }
        (Some(f), None) => f.clone(),
        (None, _) => alg.form().cloned().ok_or(IdempotentError::NoForm)?,
    };
    if !form.is_positive_definite()? {
        return Err(IdempotentError::Indefinite);
    }
    if q.target_length.as_rational().is_some_and(|l| l.is_negative()) {
        return Err(IdempotentError::NegativeLength);
    }
    let mut symmetries = Vec::new();
    for (k, m) in q.symmetries.iter().enumerate() {
        symmetries.push(match sub {
            None => m.clone(),
            Some(v) => {
                let cols: Option<Vec<Vector>> =
                    v.vectors().iter().map(|x| v.coordinates(&m.mul_vec(x)).map(Vector)).collect();
                Matrix::from_columns(v.dim(), &cols.ok_or(IdempotentError::SymmetryOutsideView(k))?)
            }
        });
    }
    let mut result = if q.target_length.is_zero() {
        // a positive definite form leaves only the zero vector
        IdempotentResult {
            found: alloc::vec![alg.zero_vector()],
            complete: true,
            numeric_only: Vec::new(),
            irrational: 0,
            budget_exhausted: false,
        }
    } else {
        match q.backend {
            Backend::ExactSmall => exact_small(&alg, &form, &q.target_length, q.budget.s_pairs)?,
            Backend::NewtonReconstruct => {
                let out = newton::search(
                    &alg,
                    &form,
                    &q.target_length,
                    q.seed,
                    q.budget.starts,
                    q.budget.iterations,
                    &symmetries,
                );
                IdempotentResult {
                    found: out.exact,
                    complete: false,
                    numeric_only: out.numeric,
                    irrational: 0,
                    budget_exhausted: out.starts_used >= q.budget.starts,
                }
            }
        }
    };
    let mut all: BTreeSet<Vector> = BTreeSet::new();
    for v in &result.found {
        all.extend(orbit(v, &symmetries));
    }
    // soundness: everything reported is checked exactly
    all.retain(|v| verify_idempotent(&alg, v) && form.eval(v, v) == q.target_length);
    result.found = all.into_iter().map(|v| sub.map_or(v.clone(), |s| s.combine(&v))).collect();
    result.found.sort();
    Ok(result)
}

fn rat(s: &Scalar) -> BigRational {
    s.as_rational().expect("rational").clone()
}

/// The system `x x - x = 0`, `(x, x) = L`, and `(x, e) = L` when the
/// algebra has an identity `e` and the form is Frobenius (then
/// `(x, e) = (x x, e) = (x, x)` for idempotent `x`).
fn idempotent_system(alg: &Algebra, form: &BilinearForm, target: &Scalar) -> Vec<Poly> {
    let n = alg.dim();
    let quad = |i: usize, j: usize| {
        let mut m = Mono::one(n);
        m.0[i] += 1;
        m.0[j] += 1;
        m
    };
    let two = BigRational::from_integer(2.into());
    let mut eqs: Vec<Poly> = (0..n).map(|_| Poly::zero(n)).collect();
    for i in 0..n {
        for j in i..n {
            let p = alg.product(i, j);
            for (k, c) in p.iter().enumerate() {
                let c = if i == j { rat(c) } else { rat(c) * &two };
                eqs[k].add_term(quad(i, j), c);
            }
        }
    }
    for (k, e) in eqs.iter_mut().enumerate() {
        e.add_term(Mono::var(n, k), -BigRational::one());
    }
    let mut len = Poly::zero(n);
    for i in 0..n {
        for j in 0..n {
            len.add_term(quad(i, j), rat(&form.gram()[(i, j)]));
        }
    }
    len.add_term(Mono::one(n), -rat(target));
    eqs.push(len);
    if let Some(e) = alg.identity_of() {
        if form.is_frobenius(alg) {
            let ge = form.gram().mul_vec(&e);
            let mut lin = Poly::zero(n);
            for (i, c) in ge.iter().enumerate() {
                lin.add_term(Mono::var(n, i), rat(c));
            }
            lin.add_term(Mono::one(n), -rat(target));
            eqs.push(lin);
        }
    }
    eqs
}

fn exact_small(alg: &Algebra, form: &BilinearForm, target: &Scalar, s_pairs: usize) -> Result<IdempotentResult, IdempotentError> {
    let n = alg.dim();
    if n > EXACT_SMALL_CAP {
        return Err(IdempotentError::TooLarge { dim: n, cap: EXACT_SMALL_CAP });
    }
    let incomplete = |exhausted| IdempotentResult {
        found: Vec::new(),
        complete: false,
        numeric_only: Vec::new(),
        irrational: 0,
        budget_exhausted: exhausted,
    };
    let Some(gb) = groebner(&idempotent_system(alg, form, target), s_pairs) else {
        return Ok(incomplete(true));
    };
    let Some(std) = standard_monomials(&gb, n) else {
        return Ok(incomplete(false));
    };
    let ops: Vec<Matrix> = (0..n).map(|i| multiplication_matrix(&gb, &std, i).transpose()).collect();
    let mut points = Vec::new();
    let mut irrational = 0;
    joint_eigen(&ops, 0, Subspace::full(std.len()), &mut Vec::new(), &mut points, &mut irrational);
    let found = points.into_iter().map(|p| Vector(p.into_iter().map(Scalar::rational).collect())).collect();
    Ok(IdempotentResult { found, complete: irrational == 0, numeric_only: Vec::new(), irrational, budget_exhausted: false })
}

/// Rational joint eigenvalues of commuting operators, found by splitting
/// `space` along the eigenspaces of `ops[depth]`.
fn joint_eigen(
    ops: &[Matrix],
    depth: usize,
    space: Subspace,
    prefix: &mut Vec<BigRational>,
    out: &mut Vec<Vec<BigRational>>,
    irrational: &mut usize,
) {
    if space.is_zero() {
        return;
    }
    if depth == ops.len() {
        out.push(prefix.clone());
        return;
    }
    let vs = space.vectors();
    let cols: Vec<Vector> =
        vs.iter().map(|v| Vector(space.coordinates(&ops[depth].mul_vec(v)).expect("invariant subspace"))).collect();
    let restricted = Matrix::from_columns(vs.len(), &cols);
    let minpoly = UniPoly::new(restricted.minimal_polynomial().iter().map(rat).collect());
    let roots = minpoly.rational_roots();
    let square_free = minpoly.square_free().degree().unwrap_or(0);
    for r in &roots {
        let eig = crate::algebra::eigenspace_of(&restricted, &Scalar::rational(r.clone()));
        let lifted: Vec<Vector> = eig.vectors().iter().map(|c| space.combine(c)).collect();
        prefix.push(r.clone());
        joint_eigen(ops, depth + 1, Subspace::from_spanning(space.ambient_dim(), &lifted), prefix, out, irrational);
        prefix.pop();
    }
    if roots.len() < square_free {
        *irrational += square_free - roots.len();
    }
}
