//! Finite-blocklength performance toolkit for short-packet wireless links.
//!
//! The crate evaluates the normal approximation of the maximum coding rate
//! over the AWGN channel, quasi-static fading metrics (outage probability,
//! outage capacity, finite-blocklength error approximation, MIMO outage by
//! Monte-Carlo), diversity-multiplexing tradeoff curves, and uses the
//! packet-error approximation to optimize three short-packet protocols:
//!
//! - a two-way data/ACK exchange ([`protocols::twoway_optimize`]),
//! - downlink TDMA versus packet concatenation ([`protocols::downlink_compare`]),
//! - framed ALOHA slot-count selection ([`protocols::aloha_optimize`]).
//!
//! Each protocol formula has a packet-level Monte-Carlo counterpart in
//! [`mcsim`] that serves as an independent check.
//!
//! ```
//! use shortpacket::awgn::{eps_star, Channel, CodeSpec, Convention};
//!
//! let ch = Channel::new(10.0, Convention::Real).unwrap();
//! let eps = eps_star(&ch, &CodeSpec::new(194.0, 125.0).unwrap()).unwrap();
//! assert!((eps.get() - 0.0118).abs() < 3e-4);
//! ```
//!
//! All rates are in bits per channel use and all logarithms are base 2.

pub mod awgn;
pub mod cli;
mod error;
pub mod fading;
pub mod mcsim;
pub mod protocols;
mod quad;
pub mod reproduce;
pub mod specfun;

pub use error::{Error, Result};
pub use specfun::Probability;
