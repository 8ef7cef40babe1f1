use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::{binom, ExteriorBasis};
use crate::lie::{find_weight_frame, CoefficientModule, LieAlgebra, WeightFrame};
use crate::linalg::{kernel_basis_reduced, Echelon, Field, Gaussian, Matrix, Scalar, SparseVec};

use super::cochain::{differential_column, Cochain};
use super::structure::{Action, Structure};

/// Default bound on the summed dimension of the cochain spaces a computation
/// may touch.
pub const DEFAULT_MAX_EXTERIOR_DIM: u128 = 1 << 22;

/// Environment variable overriding [`DEFAULT_MAX_EXTERIOR_DIM`].
pub const MAX_EXTERIOR_DIM_ENV: &str = "SYMCOH_MAX_EXTERIOR_DIM";

/// Which cocycles become representatives when several are possible.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RepresentativeOrder {
    /// Earliest free column in exterior-basis order first.
    #[default]
    Lexicographic,
    /// Latest free column first.
    Reverse,
}

/// How a full complex is reduced before elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    /// Weight-zero reduction for large complexes with trivial scalar coefficients.
    #[default]
    Auto,
    Plain,
    Weight,
}

#[derive(Clone, Debug)]
pub struct ComputeConfig {
    pub max_exterior_dim: u128,
    pub route: Route,
    pub order: RepresentativeOrder,
    /// `Auto` switches to the weight route above this many cochains.
    pub weight_threshold: u128,
}

impl Default for ComputeConfig {
    fn default() -> Self {
        Self {
            max_exterior_dim: DEFAULT_MAX_EXTERIOR_DIM,
            route: Route::Auto,
            order: RepresentativeOrder::Lexicographic,
            weight_threshold: 4096,
        }
    }
}

impl ComputeConfig {
    /// Defaults, with the size guard taken from the environment when set.
    pub fn from_env() -> Self {
        let mut c = Self::default();
        if let Some(v) = std::env::var(MAX_EXTERIOR_DIM_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            c.max_exterior_dim = v;
        }
        c
    }

    pub fn with_order(mut self, order: RepresentativeOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    /// Fails with `SizeLimit` unless `Σ_{n ≤ top} C(dim, n) · module_dim` fits.
    pub fn guard(&self, dim: usize, module_dim: usize, top: usize) -> Result<()> {
        let required = total_cochains(dim, module_dim, top);
        if required > self.max_exterior_dim {
            return Err(Error::SizeLimit { required, limit: self.max_exterior_dim });
        }
        Ok(())
    }
}

pub(crate) fn total_cochains(dim: usize, module_dim: usize, top: usize) -> u128 {
    (0..=top.min(dim)).map(|n| binom(dim, n) as u128).sum::<u128>() * module_dim as u128
}

/// How compact coordinates of a degree sit inside the cochain space.
#[derive(Debug)]
pub(crate) enum Compact<F: Field> {
    Identity(usize),
    /// Subset of coordinates (the weight-zero ones).
    Units { full: Vec<usize>, lookup: HashMap<usize, usize> },
    /// Span of explicit cochains (the relative subcomplex).
    Basis { vectors: Vec<SparseVec<F>>, solver: Mutex<Echelon<F>> },
}

impl<F: Field> Compact<F> {
    fn units(full: Vec<usize>) -> Self {
        let lookup = full.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        Compact::Units { full, lookup }
    }

    pub(crate) fn basis(width: usize, vectors: Vec<SparseVec<F>>) -> Self {
        let mut ech = Echelon::with_tracking(width, true);
        for v in &vectors {
            ech.insert(v);
        }
        Compact::Basis { vectors, solver: Mutex::new(ech) }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Compact::Identity(n) => *n,
            Compact::Units { full, .. } => full.len(),
            Compact::Basis { vectors, .. } => vectors.len(),
        }
    }

    fn embed(&self, v: &SparseVec<F>) -> SparseVec<F> {
        match self {
            Compact::Identity(_) => v.clone(),
            Compact::Units { full, .. } => SparseVec::from_pairs(v.iter().map(|(i, x)| (full[*i], x.clone())).collect()),
            Compact::Basis { vectors, .. } => {
                let mut acc = SparseVec::new();
                for (i, x) in v.iter() {
                    acc = acc.axpy(x, &vectors[*i]);
                }
                acc
            }
        }
    }

    /// Compact coordinates of a cochain. Units drop the coordinates outside
    /// the subset; Basis returns `None` outside the span.
    pub(crate) fn project(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        match self {
            Compact::Identity(_) => Some(v.clone()),
            Compact::Units { lookup, .. } => Some(SparseVec::from_pairs(
                v.iter().filter_map(|(i, x)| lookup.get(i).map(|c| (*c, x.clone()))).collect(),
            )),
            Compact::Basis { solver, .. } => solver.lock().unwrap().solve(v),
        }
    }
}

/// Cohomology in one degree.
#[derive(Debug)]
pub struct DegreeCohomology<F: Field> {
    pub degree: usize,
    pub betti: usize,
    /// Dimension of the (possibly reduced) cochain space.
    pub cochain_dim: usize,
    /// `rank d_{n-1}`.
    pub rank_in: usize,
    /// `rank d_n`.
    pub rank_out: usize,
    representatives: Vec<SparseVec<F>>,
    /// Insertion index of each representative in `solver`.
    rep_slots: Vec<usize>,
    coboundaries: Vec<SparseVec<F>>,
    /// Coboundaries then representatives, with combination tracking.
    solver: Mutex<Echelon<F>>,
}

/// Betti numbers, representatives and coboundary spans of a cochain complex
/// given in compact coordinates.
#[derive(Debug)]
pub struct CohomologyTable<F: Field> {
    dim: usize,
    module_dim: usize,
    compact: Vec<Compact<F>>,
    degrees: Vec<DegreeCohomology<F>>,
}

impl<F: Field> CohomologyTable<F> {
    /// `diffs[n]` is `d_n` in compact coordinates for `n = 0..=max_degree`.
    pub(crate) fn solve(
        dim: usize,
        module_dim: usize,
        compact: Vec<Compact<F>>,
        diffs: Vec<Matrix<F>>,
        order: RepresentativeOrder,
    ) -> Result<Self> {
        let degrees = (0..diffs.len())
            .into_par_iter()
            .map(|n| {
                let width = compact[n].len();
                let mut ech = Echelon::with_tracking(width, true);
                let mut coboundaries = Vec::new();
                if n > 0 {
                    for col in diffs[n - 1].columns() {
                        if !col.is_zero() && ech.insert(&col).is_some() {
                            coboundaries.push(col);
                        }
                    }
                }
                let rank_in = coboundaries.len();
                let mut kernel = kernel_basis_reduced(&diffs[n]);
                let rank_out = width - kernel.len();
                if order == RepresentativeOrder::Reverse {
                    kernel.reverse();
                }
                let mut representatives = Vec::new();
                let mut rep_slots = Vec::new();
                for z in kernel {
                    let slot = ech.inserted();
                    if ech.insert(&z).is_some() {
                        representatives.push(z);
                        rep_slots.push(slot);
                    }
                }
                let betti = representatives.len();
                if betti + rank_in + rank_out != width {
                    return Err(Error::Internal(format!(
                        "degree {n}: betti {betti} + rank {rank_in} + rank {rank_out} != {width}"
                    )));
                }
                Ok(DegreeCohomology {
                    degree: n,
                    betti,
                    cochain_dim: width,
                    rank_in,
                    rank_out,
                    representatives,
                    rep_slots,
                    coboundaries,
                    solver: Mutex::new(ech),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dim, module_dim, compact, degrees })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn degree(&self, n: usize) -> &DegreeCohomology<F> {
        &self.degrees[n]
    }

    /// `rank d_n` for `n = 0..=max_degree`.
    pub fn differential_ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank_out).collect()
    }

    pub fn cochain_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.cochain_dim).collect()
    }

    fn cochain(&self, n: usize, v: &SparseVec<F>) -> Cochain<F> {
        Cochain::from_coords(self.dim, self.module_dim, n, self.compact[n].embed(v))
    }

    pub fn representatives(&self, n: usize) -> Vec<Cochain<F>> {
        self.degrees[n].representatives.iter().map(|v| self.cochain(n, v)).collect()
    }

    pub fn coboundaries(&self, n: usize) -> Vec<Cochain<F>> {
        self.degrees[n].coboundaries.iter().map(|v| self.cochain(n, v)).collect()
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    ///
    /// Fails if the cochain is not a cocycle of this complex.
    pub fn class_of(&self, omega: &Cochain<F>) -> Result<Vec<F>> {
        let n = omega.degree();
        if n > self.max_degree() {
            return Err(Error::Internal(format!("degree {n} beyond computed range {}", self.max_degree())));
        }
        let c = self.compact[n]
            .project(omega.coords())
            .ok_or_else(|| Error::Internal(format!("degree-{n} cochain is outside the complex")))?;
        let deg = &self.degrees[n];
        let red = deg.solver.lock().unwrap().reduce(&c);
        if !red.residual.is_zero() {
            return Err(Error::Internal(format!("degree-{n} cochain is not a cocycle")));
        }
        Ok(deg.rep_slots.iter().map(|&s| red.combination.get(s)).collect())
    }

    pub fn is_exact(&self, omega: &Cochain<F>) -> Result<bool> {
        Ok(self.class_of(omega)?.iter().all(Field::is_zero))
    }
}

/// The Chevalley–Eilenberg complex `C^*(g; a)`.
#[derive(Clone, Debug)]
pub struct FullComplex {
    g: LieAlgebra,
    module: CoefficientModule,
    config: ComputeConfig,
}

impl FullComplex {
    pub fn new(g: &LieAlgebra, module: &CoefficientModule) -> Self {
        Self::with_config(g, module, ComputeConfig::from_env())
    }

    pub fn with_config(g: &LieAlgebra, module: &CoefficientModule, config: ComputeConfig) -> Self {
        Self { g: g.clone(), module: module.clone(), config }
    }

    pub fn trivial(g: &LieAlgebra) -> Self {
        Self::new(g, &CoefficientModule::trivial(g, 1))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    /// Matrix of `d: C^n → C^{n+1}`.
    pub fn differential(&self, n: usize) -> Matrix<Scalar> {
        super::cochain::differential_matrix(&Structure::of(&self.g), &Action::of(&self.module), n)
    }

    pub fn apply_d(&self, omega: &Cochain<Scalar>) -> Cochain<Scalar> {
        omega.differential(&Structure::of(&self.g), &Action::of(&self.module))
    }

    /// Cohomology in degrees `0..=max_degree`.
    pub fn cohomology(&self, max_degree: usize) -> Result<FullCohomology> {
        let dim = self.g.dim();
        let max_degree = max_degree.min(dim);
        let top = (max_degree + 1).min(dim);
        self.config.guard(dim, self.module.dim(), top)?;
        let weight_ok = self.module.is_trivial() && self.module.dim() == 1;
        let use_weight = match self.config.route {
            Route::Plain => false,
            Route::Weight => weight_ok,
            Route::Auto => weight_ok && total_cochains(dim, 1, top) > self.config.weight_threshold,
        };
        if use_weight {
            if let Some(frame) = find_weight_frame(&self.g) {
                return self.weight_cohomology(frame, max_degree);
            }
        }
        let structure = Structure::of(&self.g);
        let action = Action::of(&self.module);
        let m = self.module.dim();
        let diffs: Vec<Matrix<Scalar>> = (0..=max_degree)
            .into_par_iter()
            .map(|n| super::cochain::differential_matrix(&structure, &action, n))
            .collect();
        let compact = (0..=max_degree).map(|n| Compact::Identity(Cochain::<Scalar>::space_dim(dim, m, n))).collect();
        let table = CohomologyTable::solve(dim, m, compact, diffs, self.config.order)?;
        Ok(FullCohomology::Plain(table))
    }

    fn weight_cohomology(&self, frame: WeightFrame, max_degree: usize) -> Result<FullCohomology> {
        let dim = self.g.dim();
        let structure = Structure::from_table(frame.table.clone());
        let action = Action::<Gaussian>::trivial(1);
        let zero_subsets: Vec<Vec<usize>> = (0..=max_degree + 1)
            .into_par_iter()
            .map(|n| {
                if n > dim {
                    return Vec::new();
                }
                let basis = ExteriorBasis::new(dim, n);
                basis
                    .subsets()
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| frame.is_weight_zero(**m))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let compact: Vec<Compact<Gaussian>> = zero_subsets.iter().map(|s| Compact::units(s.clone())).collect();
        let diffs: Vec<Matrix<Gaussian>> = (0..=max_degree)
            .into_par_iter()
            .map(|n| {
                let source = ExteriorBasis::new(dim, n);
                let rows = compact[n + 1].len();
                let columns: Vec<SparseVec<Gaussian>> = zero_subsets[n]
                    .iter()
                    .map(|&i| {
                        let col = differential_column(&structure, &action, n, source.subset(i), 0);
                        let projected = compact[n + 1].project(&col).expect("units projection");
                        debug_assert_eq!(projected.nnz(), col.nnz(), "differential leaves weight zero");
                        projected
                    })
                    .collect();
                Matrix::from_columns(rows, &columns)
            })
            .collect();
        let mut compact = compact;
        compact.truncate(max_degree + 1);
        let table = CohomologyTable::solve(dim, 1, compact, diffs, self.config.order)?;
        Ok(FullCohomology::Weight { table, frame })
    }
}

/// Cohomology of a full complex, computed either directly or on the
/// weight-zero part for a torus (cochains then live in the eigenbasis).
#[derive(Debug)]
pub enum FullCohomology {
    Plain(CohomologyTable<Scalar>),
    Weight { table: CohomologyTable<Gaussian>, frame: WeightFrame },
}

impl FullCohomology {
    pub fn betti(&self) -> Vec<usize> {
        match self {
            FullCohomology::Plain(t) => t.betti(),
            FullCohomology::Weight { table, .. } => table.betti(),
        }
    }

    pub fn differential_ranks(&self) -> Vec<usize> {
        match self {
            FullCohomology::Plain(t) => t.differential_ranks(),
            FullCohomology::Weight { table, .. } => table.differential_ranks(),
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            FullCohomology::Plain(t) => t.max_degree(),
            FullCohomology::Weight { table, .. } => table.max_degree(),
        }
    }

    pub fn route(&self) -> &'static str {
        match self {
            FullCohomology::Plain(_) => "plain",
            FullCohomology::Weight { .. } => "weight-zero",
        }
    }

    /// The plain table, when the plain route was used.
    pub fn plain(&self) -> Option<&CohomologyTable<Scalar>> {
        match self {
            FullCohomology::Plain(t) => Some(t),
            FullCohomology::Weight { .. } => None,
        }
    }

    /// A rational cochain in the coordinates this result works in.
    pub fn to_frame(&self, omega: &Cochain<Scalar>) -> Cochain<Gaussian> {
        let g = omega.map(|x| Gaussian::real(x.clone()));
        match self {
            FullCohomology::Plain(_) => g,
            FullCohomology::Weight { frame, .. } => g.pullback(&frame.basis, |m| frame.is_weight_zero(m)),
        }
    }

    /// Class coordinates of a rational cocycle; entries are real on the plain route.
    pub fn class_of(&self, omega: &Cochain<Scalar>) -> Result<Vec<Gaussian>> {
        match self {
            FullCohomology::Plain(t) => Ok(t.class_of(omega)?.into_iter().map(Gaussian::real).collect()),
            FullCohomology::Weight { table, .. } => table.class_of(&self.to_frame(omega)),
        }
    }

    pub fn is_exact(&self, omega: &Cochain<Scalar>) -> Result<bool> {
        Ok(self.class_of(omega)?.iter().all(Field::is_zero))
    }

    /// Representatives in frame coordinates.
    pub fn representatives(&self, n: usize) -> Vec<Cochain<Gaussian>> {
        match self {
            FullCohomology::Plain(t) => t.representatives(n).iter().map(|c| c.map(|x| Gaussian::real(x.clone()))).collect(),
            FullCohomology::Weight { table, .. } => table.representatives(n),
        }
    }

    /// Class coordinates of a cocycle already in frame coordinates.
    pub fn class_of_frame(&self, omega: &Cochain<Gaussian>) -> Result<Vec<Gaussian>> {
        match self {
            FullCohomology::Plain(t) => {
                let real = to_real_cochain(omega)?;
                Ok(t.class_of(&real)?.into_iter().map(Gaussian::real).collect())
            }
            FullCohomology::Weight { table, .. } => table.class_of(omega),
        }
    }
}

pub(crate) fn to_real_cochain(omega: &Cochain<Gaussian>) -> Result<Cochain<Scalar>> {
    if let Some((_, bad)) = omega.coords().iter().find(|(_, x)| !x.is_real()) {
        return Err(Error::NotReal(bad.to_string()));
    }
    Ok(omega.map(|x| x.re.clone()))
}
