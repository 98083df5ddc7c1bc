//! Finite groups with operations and the structures built from them:
//! derived actions and semidirect products, internal groupoids, crossed
//! modules, the constructions passing between the last two, and covers with
//! lifted operations.
//!
//! Every structure is a set of integer tables on `0..n`, with `0` the zero
//! element. Constructors validate shapes and index ranges only; axioms are
//! decided by the `check_*` functions, which test every instance and return a
//! [`Report`] with counts and witnesses for each failed law.
//!
//! ```
//! use grpops::io::generators::gen_cyclic_ring;
//! use grpops::omega::check_omega_group;
//!
//! let z6 = gen_cyclic_ring(6);
//! assert!(check_omega_group(&z6).is_ok());
//!
//! // break one product and the distributive laws notice
//! let broken = z6.with_binary_entry(0, 2, 3, 1);
//! let report = check_omega_group(&broken);
//! assert!(report.find("mul.left_distrib").is_some());
//! ```

pub mod actions;
pub mod cli;
pub mod covering;
pub mod equivalence;
pub mod error;
pub mod groupoid;
pub mod internal;
pub mod io;
pub mod omega;
pub mod report;
pub mod table;
pub mod xmod;

pub use error::{Error, Result};
pub use report::{Report, Violation, Witness};
pub use table::Table;

// The guide's code samples run as doctests.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(omega_groups, "omega-groups.md");
    chapter!(actions, "actions.md");
    chapter!(internal_groupoids, "internal-groupoids.md");
    chapter!(crossed_modules, "crossed-modules.md");
    chapter!(equivalence, "equivalence.md");
    chapter!(covers, "covers.md");
    chapter!(file_format, "file-format.md");
    chapter!(cli, "cli.md");
}
