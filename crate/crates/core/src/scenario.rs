//! Problem instances: the network plus every economic actor, and the JSON
//! file format they are loaded from.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{ValidationError, ValidationErrors};
use crate::money::Money;
use crate::network::{Edge, Network};
use crate::scalar::Scalar;

/// The 30-vertex, 50-edge worked example shipped with the crate.
pub const BUNDLED_JSON: &str = include_str!("../examples/paper30.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductionHub<T> {
    pub vertex: usize,
    pub unit_price: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Storage<T> {
    pub vertex: usize,
    pub unit_fee: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Buyer {
    pub vertex: usize,
    pub demand: u64,
}

/// How an actor's margin is added on top of the base cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarginPolicy<T> {
    /// `w = mu * base`.
    FractionOfBase { mu: Ratio<i64> },
    /// A fixed amount per candidate location.
    PerLocation(BTreeMap<usize, T>),
}

impl<T: Scalar> MarginPolicy<T> {
    pub fn map_costs<U: Scalar>(&self, f: impl Fn(T) -> U) -> MarginPolicy<U> {
        match self {
            MarginPolicy::FractionOfBase { mu } => MarginPolicy::FractionOfBase { mu: *mu },
            MarginPolicy::PerLocation(w) => {
                MarginPolicy::PerLocation(w.iter().map(|(&g, &x)| (g, f(x))).collect())
            }
        }
    }
}

/// A validated problem instance. Immutable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario<T> {
    network: Network<T>,
    production_hubs: Vec<ProductionHub<T>>,
    storages: Vec<Storage<T>>,
    buyers: Vec<Buyer>,
    candidate_locations: Vec<usize>,
    actor_count: usize,
    batch_heavy: u64,
    batch_light: u64,
    margin: MarginPolicy<T>,
}

impl<T: Scalar> Scenario<T> {
    pub fn network(&self) -> &Network<T> {
        &self.network
    }

    pub fn production_hubs(&self) -> &[ProductionHub<T>] {
        &self.production_hubs
    }

    pub fn storages(&self) -> &[Storage<T>] {
        &self.storages
    }

    pub fn buyers(&self) -> &[Buyer] {
        &self.buyers
    }

    pub fn candidate_locations(&self) -> &[usize] {
        &self.candidate_locations
    }

    pub fn actor_count(&self) -> usize {
        self.actor_count
    }

    pub fn batch_heavy(&self) -> u64 {
        self.batch_heavy
    }

    pub fn batch_light(&self) -> u64 {
        self.batch_light
    }

    pub fn margin(&self) -> &MarginPolicy<T> {
        &self.margin
    }

    /// The same instance over another scalar type.
    pub fn map_costs<U: Scalar>(&self, f: impl Fn(T) -> U) -> Scenario<U> {
        Scenario {
            network: self.network.map_costs(&f),
            production_hubs: self
                .production_hubs
                .iter()
                .map(|p| ProductionHub {
                    vertex: p.vertex,
                    unit_price: f(p.unit_price),
                })
                .collect(),
            storages: self
                .storages
                .iter()
                .map(|s| Storage {
                    vertex: s.vertex,
                    unit_fee: f(s.unit_fee),
                })
                .collect(),
            buyers: self.buyers.clone(),
            candidate_locations: self.candidate_locations.clone(),
            actor_count: self.actor_count,
            batch_heavy: self.batch_heavy,
            batch_light: self.batch_light,
            margin: self.margin.map_costs(&f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub u: i64,
    pub v: i64,
    pub heavy: Money,
    pub light: Money,
    pub buyer: Money,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductionHubRecord {
    pub vertex: i64,
    pub unit_price: Money,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StorageRecord {
    pub vertex: i64,
    pub unit_fee: Money,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuyerRecord {
    pub vertex: i64,
    pub demand: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MarginRecord {
    FractionOfBase(Money),
    PerLocation(BTreeMap<String, Money>),
}

/// Unvalidated scenario data, exactly as it appears in a scenario file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub vertices: i64,
    pub edges: Vec<EdgeRecord>,
    pub production_hubs: Vec<ProductionHubRecord>,
    pub storages: Vec<StorageRecord>,
    pub buyers: Vec<BuyerRecord>,
    pub candidate_locations: Vec<i64>,
    pub actor_count: i64,
    pub batch_heavy: i64,
    pub batch_light: i64,
    pub margin: MarginRecord,
}

#[derive(Debug, Error)]
pub enum ScenarioLoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed scenario: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid scenario:\n{0}")]
    Invalid(ValidationErrors),
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }

    /// Checks every invariant and either builds the scenario or reports all
    /// violations found.
    pub fn validate(&self) -> Result<Scenario<Money>, ValidationErrors> {
        let mut errors = Vec::new();
        let n = match usize::try_from(self.vertices) {
            Ok(n) if n > 0 => n,
            _ => {
                errors.push(ValidationError::NonPositive {
                    field: "vertices".into(),
                    value: self.vertices,
                });
                0
            }
        };
        let vertex =
            |errors: &mut Vec<ValidationError>, role: &'static str, raw: i64| -> Option<usize> {
                match usize::try_from(raw) {
                    Ok(v) if v < n => Some(v),
                    _ => {
                        errors.push(ValidationError::UnknownVertex {
                            role,
                            vertex: raw,
                            vertex_count: n,
                        });
                        None
                    }
                }
            };

        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let u = vertex(&mut errors, "edges", e.u);
            let v = vertex(&mut errors, "edges", e.v);
            if let (Some(u), Some(v)) = (u, v) {
                edges.push(Edge::new(u, v, e.heavy, e.light, e.buyer));
            }
        }
        let edges_complete = edges.len() == self.edges.len();
        let network = if n > 0 {
            match Network::new(n, edges.clone()) {
                Ok(net) => Some(net),
                Err(errs) => {
                    for err in errs {
                        // Connectivity of a partially parsed edge list is meaningless.
                        if edges_complete || err.code() != "DisconnectedNetwork" {
                            errors.push(err);
                        }
                    }
                    None
                }
            }
        } else {
            None
        };

        let role_vertices = |errors: &mut Vec<ValidationError>,
                             role: &'static str,
                             raw: &[i64]|
         -> Vec<Option<usize>> {
            if raw.is_empty() {
                errors.push(ValidationError::EmptyRole { role });
            }
            let mut seen = HashSet::new();
            raw.iter()
                .map(|&r| {
                    let v = vertex(errors, role, r)?;
                    if !seen.insert(v) {
                        errors.push(ValidationError::DuplicateVertex { role, vertex: v });
                    }
                    Some(v)
                })
                .collect()
        };
        let negative = |errors: &mut Vec<ValidationError>, field: String, value: Money| {
            if value.is_negative() {
                errors.push(ValidationError::NegativeCost {
                    field,
                    value: value.to_string(),
                });
            }
        };

        let raw: Vec<i64> = self.production_hubs.iter().map(|p| p.vertex).collect();
        let ids = role_vertices(&mut errors, "production_hubs", &raw);
        let mut production_hubs = Vec::new();
        for (p, id) in self.production_hubs.iter().zip(ids) {
            negative(
                &mut errors,
                format!("production_hubs[{}].unit_price", p.vertex),
                p.unit_price,
            );
            if let Some(vertex) = id {
                production_hubs.push(ProductionHub {
                    vertex,
                    unit_price: p.unit_price,
                });
            }
        }

        let raw: Vec<i64> = self.storages.iter().map(|s| s.vertex).collect();
        let ids = role_vertices(&mut errors, "storages", &raw);
        let mut storages = Vec::new();
        for (s, id) in self.storages.iter().zip(ids) {
            negative(
                &mut errors,
                format!("storages[{}].unit_fee", s.vertex),
                s.unit_fee,
            );
            if let Some(vertex) = id {
                storages.push(Storage {
                    vertex,
                    unit_fee: s.unit_fee,
                });
            }
        }

        let raw: Vec<i64> = self.buyers.iter().map(|b| b.vertex).collect();
        let ids = role_vertices(&mut errors, "buyers", &raw);
        let mut buyers = Vec::new();
        for (b, id) in self.buyers.iter().zip(ids) {
            let demand = match u64::try_from(b.demand) {
                Ok(d) if d > 0 => Some(d),
                _ => {
                    errors.push(ValidationError::NonPositive {
                        field: format!("buyers[{}].demand", b.vertex),
                        value: b.demand,
                    });
                    None
                }
            };
            if let (Some(vertex), Some(demand)) = (id, demand) {
                buyers.push(Buyer { vertex, demand });
            }
        }

        let ids = role_vertices(
            &mut errors,
            "candidate_locations",
            &self.candidate_locations,
        );
        let candidate_locations: Vec<usize> = ids.into_iter().flatten().collect();

        let positive =
            |errors: &mut Vec<ValidationError>, field: &str, value: i64| -> Option<u64> {
                match u64::try_from(value) {
                    Ok(x) if x > 0 => Some(x),
                    _ => {
                        errors.push(ValidationError::NonPositive {
                            field: field.into(),
                            value,
                        });
                        None
                    }
                }
            };
        let actor_count = positive(&mut errors, "actor_count", self.actor_count);
        let batch_heavy = positive(&mut errors, "batch_heavy", self.batch_heavy);
        let batch_light = positive(&mut errors, "batch_light", self.batch_light);
        if let Some(m) = actor_count {
            if (self.candidate_locations.len() as u64) < m {
                errors.push(ValidationError::TooFewCandidates {
                    candidates: self.candidate_locations.len(),
                    actors: m as usize,
                });
            }
        }

        let margin = match &self.margin {
            MarginRecord::FractionOfBase(mu) => {
                negative(&mut errors, "margin.fraction_of_base".into(), *mu);
                MarginPolicy::FractionOfBase {
                    mu: Ratio::new(mu.minor(), Money::SCALE),
                }
            }
            MarginRecord::PerLocation(entries) => {
                let mut w = BTreeMap::new();
                for (key, &amount) in entries {
                    negative(&mut errors, format!("margin.per_location[{key}]"), amount);
                    match key.trim().parse::<usize>() {
                        Ok(g) if self.candidate_locations.contains(&(g as i64)) => {
                            w.insert(g, amount);
                        }
                        _ => {
                            errors.push(ValidationError::UnknownMarginLocation { key: key.clone() })
                        }
                    }
                }
                MarginPolicy::PerLocation(w)
            }
        };

        if let Some(errs) = ValidationErrors::from_vec(errors) {
            return Err(errs);
        }
        Ok(Scenario {
            network: network.expect("network valid when no errors"),
            production_hubs,
            storages,
            buyers,
            candidate_locations,
            actor_count: actor_count.expect("validated") as usize,
            batch_heavy: batch_heavy.expect("validated"),
            batch_light: batch_light.expect("validated"),
            margin,
        })
    }
}

impl Scenario<Money> {
    /// Parses and validates a scenario document.
    pub fn from_json(text: &str) -> Result<Self, ScenarioLoadError> {
        ScenarioFile::from_json(text)?
            .validate()
            .map_err(ScenarioLoadError::Invalid)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioLoadError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioLoadError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// The bundled worked example.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_JSON).expect("bundled scenario is valid")
    }

    pub fn to_file(&self) -> ScenarioFile {
        let id = |v: usize| v as i64;
        ScenarioFile {
            vertices: id(self.network.vertex_count()),
            edges: self
                .network
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    u: id(e.u),
                    v: id(e.v),
                    heavy: e.heavy,
                    light: e.light,
                    buyer: e.buyer,
                })
                .collect(),
            production_hubs: self
                .production_hubs
                .iter()
                .map(|p| ProductionHubRecord {
                    vertex: id(p.vertex),
                    unit_price: p.unit_price,
                })
                .collect(),
            storages: self
                .storages
                .iter()
                .map(|s| StorageRecord {
                    vertex: id(s.vertex),
                    unit_fee: s.unit_fee,
                })
                .collect(),
            buyers: self
                .buyers
                .iter()
                .map(|b| BuyerRecord {
                    vertex: id(b.vertex),
                    demand: b.demand as i64,
                })
                .collect(),
            candidate_locations: self.candidate_locations.iter().map(|&g| id(g)).collect(),
            actor_count: self.actor_count as i64,
            batch_heavy: self.batch_heavy as i64,
            batch_light: self.batch_light as i64,
            margin: match &self.margin {
                MarginPolicy::FractionOfBase { mu } => {
                    MarginRecord::FractionOfBase(Money::from_ratio(&Ratio::new(
                        i128::from(*mu.numer()),
                        i128::from(*mu.denom()),
                    )))
                }
                MarginPolicy::PerLocation(w) => {
                    MarginRecord::PerLocation(w.iter().map(|(g, &x)| (g.to_string(), x)).collect())
                }
            },
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }
}
