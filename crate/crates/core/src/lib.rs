//! Spectral invariants of squared distance matrices of complete multipartite
//! graphs `K_{n_1,...,n_t}`.
//!
//! The squared distance matrix has 0 on the diagonal, 4 between vertices of
//! the same part and 1 across parts. Its spectrum is `-4` with multiplicity
//! `n - t`, `3m - 4` with multiplicity `k - 1` for every part size `m`
//! occurring `k` times, and the simple roots of a secular polynomial with one
//! root between consecutive poles and one above the largest. Those simple
//! roots are isolated by bisection with exact sign evaluation, so every
//! comparison between two partitions is either exact or backed by disjoint
//! brackets.
//!
//! ```
//! use sqdist::{energy, inertia, Partition};
//!
//! let p: Partition = "3,2".parse().unwrap();
//! assert_eq!(energy(&p).unwrap().value, 24.0);
//! assert_eq!(inertia(&p).counts(), (2, 0, 3));
//! ```

pub mod charpoly;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod matrices;
pub mod oracle;
pub mod partitions;
pub mod spectrum;

pub use charpoly::{
    char_poly_factored, det_b_charpoly, det_delta_exact, lambda_s1_sign, reduced_matrix_b,
    reduced_poly_p, FactoredCharPoly, IntPolynomial, RootSign, SecularForm,
};
pub use error::{Error, Result};
pub use extremal::{
    scan_energy, scan_energy_h, scan_radius, verify_chain_monotone, verify_listed_chain,
    ChainReport, ScanEntry, ScanReport,
};
pub use matrices::{
    multipartite_graph, sqdist_from_graph, sqdist_from_partition, DenseSymMatrix, SimpleGraph,
};
pub use oracle::{sweep, symmetric_eigenvalues, verify_partition, SweepSummary};
pub use partitions::{
    complete_split, elementary_chain, enumerate_partitions, enumerate_with_singletons, majorizes,
    split_h, turan, turan_h, validate_chain, ElementaryChain, Majorization, MajorizationStep,
    Partition,
};
pub use spectrum::{
    compare_energy, energy, full_spectrum, inertia, radius_bipartite_closed, spectral_radius,
    EnergyReport, InertiaTriple, IsolatedRoot, SpectrumReport,
};
