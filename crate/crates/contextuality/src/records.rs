//! Versioned JSON records of solver runs.
//!
//! A record stores everything needed to rebuild the solved configuration
//! and re-check the result: the geometry selector, the solver parameters,
//! and the best assignment as parallel arrays of ±1 values and observable
//! words in canonical point order. Records round-trip losslessly through
//! JSON and are validated on load and on rebuild.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{Assignment, Configuration, UnsatisfiedConfiguration};
use crate::error::{Error, Result};
use crate::pauli::Observable;
use crate::solver::{SolveResult, SolverParams, TracePoint};
use crate::space::{QuadricKind, SymplecticSpace};

pub const SCHEMA_VERSION: u32 = 1;

/// The ordering contract recorded in every file: how point indices map to
/// observables.
pub const POINT_ORDER_RULE: &str = "observables are ordered by the integer (mu << qubits) | nu, \
     where the leftmost letter occupies the highest bit of mu and of nu; \
     the full space lists all nonidentity observables in this order \
     (point index = integer - 1), and a sub-configuration keeps the \
     ascending order of its member points";

/// Which configuration a record describes.
#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Full,
    Hyperbolic,
    Elliptic,
    Custom,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Geometry::Full => "full",
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Elliptic => "elliptic",
            Geometry::Custom => "custom",
        };
        f.write_str(name)
    }
}

/// Result payload of a record: the solver outcome with the assignment
/// expanded into parallel value and observable arrays.
#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct RecordedResult {
    pub best_distance: u64,
    pub iterations_to_best: u64,
    pub restart_index_of_best: u32,
    pub runtime_ms: u64,
    pub unsatisfied_context_ids: Vec<u32>,
    pub assignment_values: Vec<i8>,
    pub assignment_observables: Vec<String>,
    pub trajectory: Vec<TracePoint>,
}

/// One solver run, self-describing and JSON-serializable.
#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct RunRecord {
    pub schema_version: u32,
    pub command: String,
    pub qubits: u32,
    pub geometry: Geometry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_observable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_contexts: Option<Vec<[String; 3]>>,
    pub point_order: String,
    pub params: SolverParams,
    pub result: RecordedResult,
}

impl RunRecord {
    /// Packages a solver result obtained on `config`.
    pub fn new(
        command: &str,
        qubits: u32,
        geometry: Geometry,
        index_observable: Option<String>,
        custom_contexts: Option<Vec<[String; 3]>>,
        config: &Configuration,
        result: &SolveResult,
    ) -> Self {
        let assignment_observables = (0..config.point_count() as u32)
            .map(|p| config.observable(p).to_string())
            .collect();
        RunRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            qubits,
            geometry,
            index_observable,
            custom_contexts,
            point_order: POINT_ORDER_RULE.to_string(),
            params: result.params,
            result: RecordedResult {
                best_distance: result.best_distance,
                iterations_to_best: result.iterations_to_best,
                restart_index_of_best: result.restart_index_of_best,
                runtime_ms: result.runtime_ms,
                unsatisfied_context_ids: result.unsatisfied_context_ids.clone(),
                assignment_values: result.best_assignment.values().to_vec(),
                assignment_observables,
                trajectory: result.trajectory.clone(),
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: RunRecord = serde_json::from_str(text)?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersion(record.schema_version, SCHEMA_VERSION));
        }
        Ok(record)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Reconstructs the configuration this record describes.
    pub fn configuration(&self) -> Result<Configuration> {
        match self.geometry {
            Geometry::Full => {
                let space = SymplecticSpace::build(self.qubits)?;
                Ok(Configuration::from_space(&space))
            }
            Geometry::Hyperbolic | Geometry::Elliptic => {
                let space = SymplecticSpace::build(self.qubits)?;
                let word = self.index_observable.as_deref().ok_or_else(|| {
                    Error::RecordMismatch("quadric geometry without an index observable".into())
                })?;
                let index: Observable = word.parse()?;
                let expected_kind = match self.geometry {
                    Geometry::Hyperbolic => QuadricKind::Hyperbolic,
                    _ => QuadricKind::Elliptic,
                };
                let quadric = if index.is_identity() {
                    space.identity_quadric()
                } else {
                    space.quadric(&index)?
                };
                if quadric.kind() != expected_kind {
                    return Err(Error::WrongIndexSymmetry {
                        expected: expected_kind,
                        expected_symmetry: match expected_kind {
                            QuadricKind::Hyperbolic => "symmetric",
                            QuadricKind::Elliptic => "skew-symmetric",
                        },
                        index: word.to_string(),
                    });
                }
                Ok(Configuration::from_quadric(&space, &quadric))
            }
            Geometry::Custom => {
                let words = self.custom_contexts.as_ref().ok_or_else(|| {
                    Error::RecordMismatch("custom geometry without context words".into())
                })?;
                let mut lines = Vec::with_capacity(words.len());
                for triple in words {
                    let mut line = [Observable::identity(self.qubits)?; 3];
                    for (slot, word) in line.iter_mut().zip(triple) {
                        *slot = word.parse()?;
                    }
                    lines.push(line);
                }
                Configuration::from_observable_lines(&lines)
            }
        }
    }

    /// Rebuilds the configuration, assignment and unsatisfied
    /// sub-configuration, verifying the record against all of them.
    pub fn rebuild(&self) -> Result<(Configuration, Assignment, UnsatisfiedConfiguration)> {
        let config = self.configuration()?;
        if self.result.assignment_observables.len() != config.point_count() {
            return Err(Error::RecordMismatch(format!(
                "{} observables recorded for {} points",
                self.result.assignment_observables.len(),
                config.point_count()
            )));
        }
        for (p, word) in self.result.assignment_observables.iter().enumerate() {
            let expected = config.observable(p as u32).to_string();
            if *word != expected {
                return Err(Error::RecordMismatch(format!(
                    "observable at point {p} is {word}, expected {expected}"
                )));
            }
        }
        let assignment = Assignment::from_values(self.result.assignment_values.clone())?;
        let distance = config.hamming_distance(&assignment)?;
        if distance != self.result.best_distance {
            return Err(Error::RecordMismatch(format!(
                "recorded distance {} but the assignment yields {distance}",
                self.result.best_distance
            )));
        }
        let unsatisfied = config.unsatisfied(&assignment)?;
        if unsatisfied.context_ids() != self.result.unsatisfied_context_ids {
            return Err(Error::RecordMismatch(
                "recorded unsatisfied context ids do not match the assignment".into(),
            ));
        }
        Ok((config, assignment, unsatisfied))
    }
}
