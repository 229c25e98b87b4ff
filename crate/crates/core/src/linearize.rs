//! Linearization format selection shared by encoders, decoders, and reports.
//!
//! The six model variants are `Penman_{O|X}_var_O_invrole` and
//! `Triple_{O|X}_var_{O|X}_invrole` (`O` = retained, `X` = removed).

use alloc::string::String;

use thiserror::Error;

use crate::graph::AmrGraph;
use crate::penman::{self, PenmanConfig, PenmanError};
use crate::triple::{self, TripleConfig, TripleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearizationConfig {
    Penman(PenmanConfig),
    Triple(TripleConfig),
}

impl LinearizationConfig {
    pub fn penman(keep_variables: bool) -> Self {
        LinearizationConfig::Penman(PenmanConfig { keep_variables })
    }

    pub fn triple(keep_variables: bool, keep_inverse_roles: bool) -> Self {
        LinearizationConfig::Triple(TripleConfig {
            keep_variables,
            keep_inverse_roles,
        })
    }

    /// The source-side task token: `penman` or `triple`.
    pub fn task_tag(&self) -> &'static str {
        match self {
            LinearizationConfig::Penman(_) => "penman",
            LinearizationConfig::Triple(_) => "triple",
        }
    }

    pub fn model_name(&self) -> String {
        match self {
            LinearizationConfig::Penman(c) => alloc::format!(
                "Penman_{}_var_O_invrole",
                if c.keep_variables { "O" } else { "X" }
            ),
            LinearizationConfig::Triple(c) => c.model_name(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Penman(#[from] PenmanError),
    #[error(transparent)]
    Triple(#[from] TripleError),
}

pub fn encode(graph: &AmrGraph, config: &LinearizationConfig) -> String {
    match config {
        LinearizationConfig::Penman(c) => penman::serialize(graph, c),
        LinearizationConfig::Triple(c) => triple::encode(graph, c),
    }
}

pub fn decode(text: &str, config: &LinearizationConfig) -> Result<AmrGraph, DecodeError> {
    let graph = match config {
        LinearizationConfig::Penman(c) if c.keep_variables => penman::parse(text)?,
        LinearizationConfig::Penman(_) => penman::parse_variable_free(text)?,
        LinearizationConfig::Triple(c) => triple::decode(text, c)?,
    };
    Ok(graph)
}
