mod cochain;
mod cohomology;
mod ncz;
mod relative;
mod structure;

pub use cochain::{differential_column, differential_matrix, Cochain};
pub use cohomology::{
    CohomologyTable, ComputeConfig, DegreeCohomology, FullCohomology, FullComplex, RepresentativeOrder, Route,
    DEFAULT_MAX_EXTERIOR_DIM, MAX_EXTERIOR_DIM_ENV,
};
pub use ncz::{
    is_ncz, kappa, mu_transport, ncz_from_relative, ncz_from_results, odd_generation_check, Kappa, NczDegree, NczReport,
    RepresentedCohomology,
};
pub use relative::{RelativeCohomology, RelativeComplex};
pub use structure::{Action, Structure};

#[cfg(test)]
mod tests;
