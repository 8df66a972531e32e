//! Several particles: two identical electrons in the original checkers model,
//! many sources and sinks on the torus, and two species coupled on common
//! edges with a first-order expansion in the coupling.

mod electrons;
mod fermi;
mod sources;

pub use electrons::{
    antisymmetrized_amplitude, path_sum, probability, total_probability, two_electron_amplitude,
    FinalMove, LastMove, TwoElectronQuery, MAX_TWO_ELECTRON_STEPS,
};
pub use fermi::{
    fermi_arrow, fermi_denominator, first_order_terms, perturbation_check, perturbation_expansion,
    FermiEdges, FermiParams, PerturbationReport,
};
pub use sources::{det_arrow, pass_arrow, pass_arrow_bruteforce, pass_arrow_loop_form};
