//! Subcommands. Every command renders into a string so output is
//! reproducible byte for byte and easy to test.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};

use axial_core::decompose::{extension_space, joint_decomposition, DecomposeError};
use axial_core::exactnum::{Matrix, Scalar, Subspace, Vector};
use axial_core::forms::{frobenius_space, gram_from_shape};
use axial_core::fusion::{axet_closure, check_axis, DEFAULT_AXET_CAP};
use axial_core::groups::{
    enumerate_shapes, involution_classes, miyamoto_group, shape_diagram, shape_label, PermGroup, Permutation,
    ShapeDiagram,
};
use axial_core::idempotents::{find_idempotents, verify_idempotent, Backend, Budget, IdempotentQuery};
use axial_core::catalog::NsType;

use crate::algebra_file;
use crate::{args, group_file, CliError};

/// Overrides the idempotent search budget, e.g. `starts=64,iterations=40`.
pub const BUDGET_ENV: &str = "AXIAL_IDEMPOTENT_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "axial", version, about = "Exact computations with axial algebras and their groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit an algebra file for `ns:<type>` or `matsuo:<group>:<eta>`
    Build {
        source: String,
        /// Leave zero products out
        #[arg(long)]
        sparse: bool,
    },
    /// Check whether a vector is an axis for a fusion law
    AxisCheck {
        algebra: String,
        vector: String,
        #[arg(long, default_value = "monster")]
        law: String,
    },
    /// Close a set of axes under Miyamoto maps
    Miyamoto {
        algebra: String,
        /// Seed axes; defaults to every vector of the axes block
        #[arg(long)]
        seeds: Option<String>,
        #[arg(long, default_value = "monster")]
        law: String,
        #[arg(long, default_value_t = DEFAULT_AXET_CAP)]
        cap: usize,
    },
    /// Dimension and basis of the space of Frobenius forms
    Frobenius { algebra: String },
    /// Joint eigenspace decomposition for a set of axes
    Decompose {
        algebra: String,
        #[arg(long)]
        axes: String,
        #[arg(long, default_value = "monster")]
        law: String,
        /// Ignore the attached form (no orthogonal residual)
        #[arg(long)]
        no_form: bool,
    },
    /// Extensions of an automorphism of a subalgebra to a module
    Extend {
        algebra: String,
        /// Spanning vectors of the subalgebra
        #[arg(long)]
        sub: String,
        /// Square matrix of the map in the given subalgebra vectors (column k
        /// is the image of vector k)
        #[arg(long)]
        map: String,
        /// Spanning vectors of the module
        #[arg(long)]
        module: String,
    },
    /// Idempotents of a given length
    Idempotents {
        algebra: String,
        #[arg(long)]
        length: String,
        #[arg(long, default_value = "exact_small")]
        backend: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to the subalgebra spanned by these vectors
        #[arg(long)]
        view: Option<String>,
    },
    /// Folded shape diagram of the involutions of a group
    Shape {
        /// Group file or `fixture:<name>`
        group: String,
        /// Use only the involution classes of this size
        #[arg(long)]
        class: Option<usize>,
        /// List every consistent shape
        #[arg(long)]
        enumerate: bool,
        /// Identify shapes under this outer group (file or fixture)
        #[arg(long)]
        up_to: Option<String>,
    },
    /// Rank of the Gram matrix of an involution set with an assigned shape
    GramRank {
        group: String,
        /// One type per node, comma separated, e.g. `6A,5A,4B,3A,3A,2A`
        #[arg(long)]
        shape: String,
        #[arg(long)]
        class: Option<usize>,
    },
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Report { code: 2, stdout: String::new(), stderr: text }
            } else {
                Report { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(()) => Report { code: 0, stdout: out, stderr: String::new() },
        Err(e) => Report { code: e.exit_code(), stdout: out, stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<(), CliError> {
    match cmd {
        Command::Build { source, sparse } => {
            let file = args::load_algebra(&source)?;
            out.push_str(&algebra_file::serialize(&file, sparse));
            Ok(())
        }
        Command::AxisCheck { algebra, vector, law } => axis_check(&algebra, &vector, &law, out),
        Command::Miyamoto { algebra, seeds, law, cap } => miyamoto(&algebra, seeds.as_deref(), &law, cap, out),
        Command::Frobenius { algebra } => frobenius(&algebra, out),
        Command::Decompose { algebra, axes, law, no_form } => decompose(&algebra, &axes, &law, no_form, out),
        Command::Extend { algebra, sub, map, module } => extend(&algebra, &sub, &map, &module, out),
        Command::Idempotents { algebra, length, backend, seed, view } => {
            idempotents(&algebra, &length, &backend, seed, view.as_deref(), out)
        }
        Command::Shape { group, class, enumerate, up_to } => shape(&group, class, enumerate, up_to.as_deref(), out),
        Command::GramRank { group, shape, class } => gram_rank(&group, &shape, class, out),
    }
}

fn coords(v: &[Scalar]) -> String {
    v.iter().map(Scalar::to_text).collect::<Vec<_>>().join(" ")
}

fn axis_check(algebra: &str, vector: &str, law: &str, out: &mut String) -> Result<(), CliError> {
    let file = args::load_algebra(algebra)?;
    let v = args::vector(&file, vector)?;
    let law = args::law(law)?;
    let r = check_axis(&file.algebra, &v, &law)?;
    writeln!(out, "idempotent: {}", r.is_idempotent).unwrap();
    writeln!(out, "axis: {}", r.is_axis).unwrap();
    writeln!(out, "primitive: {}", r.is_primitive).unwrap();
    for (l, d) in &r.eigen_dims {
        writeln!(out, "eigenvalue {l}: {d}").unwrap();
    }
    writeln!(out, "missing: {}", r.missing_dim).unwrap();
    for (a, b, c) in &r.fusion_violations {
        writeln!(out, "violation: {a} * {b} has a component in {c}").unwrap();
    }
    if r.is_axis {
        Ok(())
    } else {
        Err(CliError::Verify("not an axis for this fusion law".into()))
    }
}

fn miyamoto(algebra: &str, seeds: Option<&str>, law: &str, cap: usize, out: &mut String) -> Result<(), CliError> {
    let file = args::load_algebra(algebra)?;
    let seeds = match seeds {
        Some(s) => args::vectors(&file, s)?,
        None => file.axes.iter().map(|(_, v)| v.clone()).collect(),
    };
    if seeds.is_empty() {
        return Err(CliError::Usage("no seed axes: pass --seeds or add an axes block".into()));
    }
    let law = args::law(law)?;
    let axet = axet_closure(&file.algebra, &seeds, &law, cap)?;
    writeln!(out, "axes: {}", axet.axes.len()).unwrap();
    writeln!(out, "group order: {}", axet.miyamoto.order()).unwrap();
    for a in &axet.axes {
        writeln!(out, "{}", file.algebra.describe(a)).unwrap();
    }
    Ok(())
}

fn frobenius(algebra: &str, out: &mut String) -> Result<(), CliError> {
    let file = args::load_algebra(algebra)?;
    let space = frobenius_space(&file.algebra);
    writeln!(out, "dimension: {}", space.len()).unwrap();
    for (k, f) in space.iter().enumerate() {
        writeln!(out, "form {k}:").unwrap();
        out.push_str(&f.to_string());
    }
    Ok(())
}

fn decompose(algebra: &str, axes: &str, law: &str, no_form: bool, out: &mut String) -> Result<(), CliError> {
    let file = args::load_algebra(algebra)?;
    let ys = args::vectors(&file, axes)?;
    let law = args::law(law)?;
    let form = if no_form { None } else { file.algebra.form() };
    let d = joint_decomposition(&file.algebra, &ys, &law, form)?;
    for (tuple, dim) in d.report() {
        writeln!(out, "{tuple}: {dim}").unwrap();
    }
    Ok(())
}

/// The map given on `vs` (column k is the image of `vs[k]` in those
/// coordinates), rewritten in the echelon basis of their span.
fn in_echelon_basis(vs: &[Vector], psi: &Matrix, span: &Subspace) -> Result<Matrix, CliError> {
    let k = vs.len();
    if psi.rows() != k || psi.cols() != k {
        return Err(CliError::Usage(format!("--map must be {k}x{k} to match --sub")));
    }
    if span.dim() != k {
        return Err(CliError::Usage("--sub vectors are linearly dependent".into()));
    }
    let n = span.ambient_dim();
    let b = Matrix::from_columns(n, vs);
    let images: Vec<Vector> = (0..k)
        .map(|j| (0..k).fold(Vector::zeros(n), |acc, r| acc.add_scaled(&psi[(r, j)], &vs[r])))
        .collect();
    let cols: Vec<Vector> = span
        .vectors()
        .iter()
        .map(|e| {
            let t = b.solve(e).expect("echelon vector lies in the span");
            let img = (0..k).fold(Vector::zeros(n), |acc, j| acc.add_scaled(&t[j], &images[j]));
            let c = span.coordinates(&img).ok_or_else(|| CliError::Usage("--map leaves the subalgebra".into()))?;
            Ok(Vector(c))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(Matrix::from_columns(k, &cols))
}

fn extend(algebra: &str, sub: &str, map: &str, module: &str, out: &mut String) -> Result<(), CliError> {
    let file = args::load_algebra(algebra)?;
    let n = file.algebra.dim();
    let us = args::vectors(&file, sub)?;
    let u = Subspace::from_spanning(n, &us);
    let psi = in_echelon_basis(&us, &args::matrix(&file, map)?, &u)?;
    let w = Subspace::from_spanning(n, &args::vectors(&file, module)?);
    let ext = match extension_space(&file.algebra, &u, &psi, &w) {
        Ok(e) => e,
        Err(
            e @ (DecomposeError::NotSubalgebra | DecomposeError::BaseNotAutomorphism | DecomposeError::NotModule(..)),
        ) => return Err(CliError::Verify(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "dimension: {}", ext.dim()).unwrap();
    writeln!(out, "module basis:").unwrap();
    for v in w.vectors() {
        writeln!(out, "  {}", file.algebra.describe(v)).unwrap();
    }
    for (k, phi) in ext.extensions.iter().enumerate() {
        writeln!(out, "extension {k}:").unwrap();
        for r in 0..phi.rows() {
            writeln!(out, "  {}", coords(phi.row(r))).unwrap();
        }
    }
    Ok(())
}

fn budget_from_env() -> Result<Budget, CliError> {
    let mut b = Budget::default();
    let Ok(spec) = std::env::var(BUDGET_ENV) else {
        return Ok(b);
    };
    for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let bad = || CliError::Usage(format!("bad {BUDGET_ENV} entry `{item}`"));
        let (key, val) = item.split_once('=').ok_or_else(bad)?;
        let val: usize = val.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "starts" => b.starts = val,
            "iterations" => b.iterations = val,
            "s_pairs" => b.s_pairs = val,
            _ => return Err(bad()),
        }
    }
    Ok(b)
}

fn idempotents(
    algebra: &str,
    length: &str,
    backend: &str,
    seed: u64,
    view: Option<&str>,
    out: &mut String,
) -> Result<(), CliError> {
    let file = args::load_algebra(algebra)?;
    let alg = &file.algebra;
    let length = Scalar::parse(length, alg.field()).map_err(|e| CliError::Usage(format!("bad length: {e}")))?;
    let backend: Backend = backend.parse().map_err(CliError::Usage)?;
    let view = view.map(|s| args::vectors(&file, s).map(|vs| Subspace::from_spanning(alg.dim(), &vs))).transpose()?;
    let mut q = IdempotentQuery::new(alg, length.clone(), backend);
    q.view = view.as_ref();
    q.seed = seed;
    q.budget = budget_from_env()?;
    let r = find_idempotents(&q)?;
    writeln!(out, "found: {}", r.found.len()).unwrap();
    for v in &r.found {
        writeln!(out, "{}  [{}]", alg.describe(v), coords(v)).unwrap();
    }
    writeln!(out, "complete: {}", r.complete).unwrap();
    if r.irrational > 0 {
        writeln!(out, "irrational solutions: {}", r.irrational).unwrap();
    }
    if !r.numeric_only.is_empty() {
        writeln!(out, "unreconstructed numeric solutions: {}", r.numeric_only.len()).unwrap();
    }
    if r.budget_exhausted {
        writeln!(out, "budget exhausted").unwrap();
    }
    let form = q.form.or(alg.form());
    let bad = r.found.iter().any(|v| !verify_idempotent(alg, v) || form.is_some_and(|f| f.eval(v, v) != length));
    if bad {
        return Err(CliError::Verify("a reported solution fails exact verification".into()));
    }
    Ok(())
}

/// The selected involutions and the group they generate.
fn involutions(group: &str, class: Option<usize>) -> Result<(PermGroup, Vec<Permutation>), CliError> {
    let g = group_file::load(group)?;
    let set: Vec<Permutation> = involution_classes(&g)
        .into_iter()
        .filter(|c| class.is_none_or(|s| c.len() == s))
        .flatten()
        .collect();
    if set.is_empty() {
        return Err(CliError::Usage("no involutions selected".into()));
    }
    let miy = miyamoto_group(g.degree(), &set)?;
    Ok((miy, set))
}

fn write_diagram(d: &ShapeDiagram, out: &mut String) {
    for (k, n) in d.nodes.iter().enumerate() {
        let opts: Vec<&str> = n.options.iter().map(|t| t.name()).collect();
        writeln!(out, "node {k}: order {}, size {}, types {}", n.order, n.size, opts.join(" ")).unwrap();
    }
    for e in &d.edges {
        writeln!(out, "edge {} -> {}", e.contained, e.container).unwrap();
    }
    for (a, b) in &d.links {
        writeln!(out, "link {a} {b}").unwrap();
    }
}

fn shape(group: &str, class: Option<usize>, enumerate: bool, up_to: Option<&str>, out: &mut String) -> Result<(), CliError> {
    let (miy, set) = involutions(group, class)?;
    let d = shape_diagram(&miy, &set)?;
    writeln!(out, "involutions: {}", set.len()).unwrap();
    writeln!(out, "folding group order: {}", miy.order()).unwrap();
    writeln!(out, "nodes: {}", d.nodes.len()).unwrap();
    let sizes: Vec<String> = d.nodes.iter().map(|n| n.size.to_string()).collect();
    writeln!(out, "sizes: {}", sizes.join(" ")).unwrap();
    write_diagram(&d, out);
    if enumerate || up_to.is_some() {
        let all = enumerate_shapes(&d, None)?;
        let shapes = match up_to {
            Some(spec) => enumerate_shapes(&d, Some(&group_file::load(spec)?))?,
            None => all.clone(),
        };
        writeln!(out, "shapes: {}", shapes.len()).unwrap();
        for s in &shapes {
            let types: Vec<&str> = s.iter().map(|t| t.name()).collect();
            writeln!(out, "{}  [{}]", shape_label(&d, s, &all), types.join(" ")).unwrap();
        }
    }
    Ok(())
}

fn gram_rank(group: &str, shape: &str, class: Option<usize>, out: &mut String) -> Result<(), CliError> {
    let (miy, set) = involutions(group, class)?;
    let d = shape_diagram(&miy, &set)?;
    let types: Vec<NsType> = shape.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>()?;
    if types.len() != d.nodes.len() {
        return Err(CliError::Usage(format!("--shape needs {} types, one per node", d.nodes.len())));
    }
    for (k, (t, n)) in types.iter().zip(&d.nodes).enumerate() {
        if t.number() != n.order {
            return Err(CliError::Usage(format!("node {k} has order {}, type {t} does not fit", n.order)));
        }
    }
    let gram = gram_from_shape(set.len(), |i, j| Some(types[d.node_of(i, j)]))?;
    writeln!(out, "size: {}", set.len()).unwrap();
    writeln!(out, "rank: {}", gram.rank()).unwrap();
    Ok(())
}
