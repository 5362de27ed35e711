//! Fairness constrained channel allocation (FCCA) for multi-operator TV
//! white space middle-mile networks, with a slotted LBT simulator to score
//! allocations against two coexistence baselines.

pub mod config;
pub mod conflict;
pub mod error;
pub mod experiment;
pub mod fcca;
pub mod macsim;
pub mod model;
pub mod plot;
pub mod propagation;

pub use error::{Error, Result};
pub use model::{
    Allocation, ChannelMode, ChannelPlan, InterferenceMatrix, Point, RadioParams, SubAlgorithm,
    ThroughputReport, Topology,
};
