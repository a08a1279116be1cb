//! Negative curves on blowups of toric surfaces.
//!
//! A rational triangle with a horizontal base and edge slopes `0 < s < t`
//! defines a toric surface; blowing it up at the identity `e = (1,1)` of the
//! torus gives a surface whose Mori cone is governed by one negative curve.
//! This crate finds such curves exactly (vanishing linear systems over the
//! rationals), reproduces the known infinite families, maps the `(s,t)`
//! parameter space and certifies the Mori Dream Space property where the
//! diamond picture allows it.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```text
//! cargo run --release --example parameter_space
//! cargo run --release --example families
//! cargo run --release --example special_curves
//! cargo run --release --example detect_curve
//! cargo run --release --example cox_degrees
//! cargo run --release --example mds_certificates
//! cargo run --release --example render_map
//! ```

pub mod cli;
pub mod exactmath;
pub mod families;
pub mod laurent;
pub mod lattice;
pub mod mds;
pub mod negcurve;
pub mod trispace;
