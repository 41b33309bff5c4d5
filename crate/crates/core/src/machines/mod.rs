//! Machine models whose computations are encoded into words over `{0, #}`.

pub mod counter;
pub mod utm;

use thiserror::Error;

pub use counter::{
    ca_decode, ca_encode, ca_encode_config, ca_find_accepting_run, ca_step, ca_succeeds,
    ca_validate, CaConfiguration, EncodingParams, Transition, TwoCounterAutomaton,
};
pub use utm::{
    utm_decode_computation, utm_decode_config, utm_delta, utm_encode_computation,
    utm_encode_config, utm_run, utm_step, utm_validate, ExplicitTape, Move, UtmAction,
    UtmConfiguration,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("{0}")]
    Invalid(String),
}
