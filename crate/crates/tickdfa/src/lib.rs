//! Scaling analysis of intertrade-duration series.
//!
//! The crate covers the full pipeline from raw trade timestamps to
//! multifractal spectra:
//!
//! - [`ingest`]: tick-file parsing, session-window filtering,
//!   simultaneous-trade collapsing, and duration construction.
//! - [`intraday`]: the 240-bin intraday duration pattern and the
//!   seasonality adjustment that divides each duration by its bin mean.
//! - [`dfa`]: profile construction, both-ends box partitioning, polynomial
//!   detrending, the order-2 fluctuation function, and Hurst-index fitting.
//! - [`mfdfa`]: q-order fluctuation functions, generalized Hurst exponents,
//!   mass exponents, and Legendre singularity spectra.
//! - [`crossover`]: two-regime breakpoint detection in log-log fluctuation
//!   curves and regime-resolved multifractal fitting.
//! - [`synth`]: seed-deterministic synthetic generators (fractional Gaussian
//!   noise, binomial cascades, piecewise power-law curves, exponential
//!   arrivals) with closed-form scaling oracles for validation.
//! - [`export`]: CSV writers for curves, patterns, and spectra.
//!
//! All analysis routines are pure functions of their inputs and produce
//! bit-identical results for identical inputs; summations run in a fixed
//! left-to-right order (per box, then per box size) regardless of how the
//! per-size work is scheduled across threads.

pub mod crossover;
pub mod dfa;
pub mod error;
pub mod export;
pub mod fit;
pub mod ingest;
pub mod intraday;
pub mod mfdfa;
pub mod synth;

pub use crossover::{detect_crossover, regime_mfdfa, CrossoverConfig, CrossoverFit, RegimeSpectra};
pub use dfa::{
    fit_hurst, fluctuation_f2, local_fluctuation, log_grid, partition, BoxPartition, Coverage,
    FluctuationCurve, Profile, ScalingFit,
};
pub use error::Error;
pub use ingest::{
    collapse_simultaneous, compute_durations, parse_durations_csv, parse_ticks,
    serialize_durations_csv, serialize_ticks, DurationEntry, DurationSeries, DurationUnit,
    Session, Tick, TickSeries,
};
pub use intraday::{
    adjust, bin_mean_durations, intraday_pattern, pattern_polyfit, BinnedDurations,
    IntradayPattern, PatternPolyFit,
};
pub use mfdfa::{
    fluctuation_q, generalized_hurst, legendre_spectrum, mass_exponents, multifractal,
    GeneralizedHurst, MassExponents, MultifractalResult, QGrid, SingularitySpectrum,
    SpectrumPoint,
};

pub type Result<T> = std::result::Result<T, Error>;
