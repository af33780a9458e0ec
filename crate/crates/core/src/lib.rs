//! Compile SAT-family instances into equivalent lattice CVP/SVP instances,
//! build the isolating-parallelepiped gadgets those reductions use, and check
//! every construction against brute-force oracles.
//!
//! The exact path never materializes p-th roots: lattice instances are kept as
//! weighted row groups whose costs are `weight * sum |<row, z> - t|^p`.

pub mod digest;
pub mod exactnum;
pub mod latticekit;
pub mod parallelepiped;
pub mod reductions;
pub mod rng;
pub mod satkit;
pub mod verify;
