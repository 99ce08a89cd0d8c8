//! Cutting schedules for jumbo paper reels.
//!
//! A paper machine produces reels of a fixed width (the deckle). Customer
//! orders ask for a number of rolls of given widths, and each reel is slit
//! into rolls side by side. Whatever width is left over on a reel is trim
//! loss. This crate provides:
//!
//! * [`model`]: orders, pools, cutting patterns and schedules, with the
//!   demand width, the reel lower bound, trim loss and a constraint validator;
//! * [`heuristics`]: the wide/narrow coupling heuristic, first-fit and
//!   best-fit baselines, and an exact search for tiny instances;
//! * [`io`]: CSV and JSON pool parsing plus table, JSON and CSV reports;
//! * [`cli`]: the `reelcut` command-line front-end.
//!
//! ```
//! use reelcut::model::{DeckleSpec, Order, OrderPool, Unit};
//! use reelcut::heuristics::couple_orders;
//!
//! let deckle = DeckleSpec::new(201, 1, Unit::Cm)?;
//! let pool = OrderPool::new(
//!     vec![Order::new("A", 150, 2), Order::new("B", 50, 2)],
//!     deckle,
//! )?;
//! let result = couple_orders(&pool)?;
//! assert_eq!(result.used_reels(), 2);
//! assert_eq!(result.trim_loss(), 0);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod error;
pub mod heuristics;
pub mod io;
pub mod model;

pub use error::{ModelError, SolveError};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/coupling.md")]
    mod coupling {}
    #[doc = include_str!("../../../book/src/baselines.md")]
    mod baselines {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
