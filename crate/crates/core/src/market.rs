//! Placement profiles, buyer hub choice and the actors × profiles payoff
//! matrix.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::network::CostMatrix;
use crate::scalar::Scalar;
use crate::scenario::{Buyer, Scenario};
use crate::supply::SupplyPlan;

/// One placement of every actor's hub. Actor `k` owns `hubs()[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    hubs: Vec<usize>,
}

impl Profile {
    /// `None` unless the hubs are nonempty and strictly ascending.
    pub fn new(hubs: Vec<usize>) -> Option<Self> {
        (!hubs.is_empty() && hubs.windows(2).all(|w| w[0] < w[1])).then_some(Profile { hubs })
    }

    pub fn hubs(&self) -> &[usize] {
        &self.hubs
    }

    pub fn owner(&self, hub: usize) -> Option<usize> {
        self.hubs.iter().position(|&h| h == hub)
    }
}

impl fmt::Display for Profile {
    /// `(9,17)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("({})", self.hubs.iter().join(",")))
    }
}

/// All `C(|candidates|, actors)` profiles in lexicographic order.
pub fn enumerate_profiles(candidates: &[usize], actors: usize) -> Vec<Profile> {
    if actors == 0 {
        return Vec::new();
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted
        .into_iter()
        .combinations(actors)
        .map(|hubs| Profile { hubs })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarketError {
    #[error("no price for hub {0}")]
    MissingPrice(usize),
    #[error("buyer at {buyer} cannot reach any hub")]
    NoReachableHub { buyer: usize },
}

/// Where one buyer shops within one profile, and what it costs them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuyerAssignment<T> {
    pub buyer_vertex: usize,
    pub demand: u64,
    pub chosen_hub: usize,
    /// Index of the actor owning `chosen_hub`.
    pub actor: usize,
    /// `demand * P(chosen_hub)`; this is the actor's revenue.
    pub purchase_cost: T,
    pub travel_cost: T,
    /// `purchase_cost + travel_cost`.
    pub total: T,
}

/// What shopping at one hub would cost a buyer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HubCost<T> {
    pub hub: usize,
    /// `demand * P(hub)`.
    pub purchase_cost: T,
    /// `None` when the buyer cannot reach the hub.
    pub travel_cost: Option<T>,
    pub total: Option<T>,
}

/// A buyer's cumulative cost at each of `hubs`, in the given order.
pub fn hub_costs<T: Scalar>(
    buyer: &Buyer,
    hubs: &[usize],
    plan: &SupplyPlan<T>,
    apsp_buyer: &CostMatrix<T>,
) -> Result<Vec<HubCost<T>>, MarketError> {
    hubs.iter()
        .map(|&hub| {
            let price = plan.price_at(hub).ok_or(MarketError::MissingPrice(hub))?;
            let purchase_cost = price.times(buyer.demand);
            let travel_cost = apsp_buyer.get(buyer.vertex, hub).finite();
            Ok(HubCost {
                hub,
                purchase_cost,
                travel_cost,
                total: travel_cost.map(|t| purchase_cost + t),
            })
        })
        .collect()
}

/// The hub minimizing `demand * price + travel`; ties go to the smaller vertex id.
pub fn buyer_choice<T: Scalar>(
    buyer: &Buyer,
    profile: &Profile,
    plan: &SupplyPlan<T>,
    apsp_buyer: &CostMatrix<T>,
) -> Result<BuyerAssignment<T>, MarketError> {
    let costs = hub_costs(buyer, profile.hubs(), plan, apsp_buyer)?;
    let mut best: Option<BuyerAssignment<T>> = None;
    // hubs are ascending, so strict improvement keeps the smallest id on ties
    for (actor, c) in costs.into_iter().enumerate() {
        let (Some(travel_cost), Some(total)) = (c.travel_cost, c.total) else {
            continue;
        };
        if best.as_ref().is_none_or(|b| total < b.total) {
            best = Some(BuyerAssignment {
                buyer_vertex: buyer.vertex,
                demand: buyer.demand,
                chosen_hub: c.hub,
                actor,
                purchase_cost: c.purchase_cost,
                travel_cost,
                total,
            });
        }
    }
    best.ok_or(MarketError::NoReachableHub {
        buyer: buyer.vertex,
    })
}

/// Revenue of every actor in every profile.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix<T> {
    profiles: Vec<Profile>,
    payoffs: Matrix<T>,
    assignments: Vec<Vec<BuyerAssignment<T>>>,
}

impl<T: Scalar> PayoffMatrix<T> {
    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    /// Rows are actors, columns follow [`Self::profiles`].
    pub fn payoffs(&self) -> &Matrix<T> {
        &self.payoffs
    }

    /// Per profile, one assignment per buyer in scenario order.
    pub fn assignments(&self) -> &[Vec<BuyerAssignment<T>>] {
        &self.assignments
    }

    pub fn actor_count(&self) -> usize {
        self.payoffs.rows()
    }
}

/// Builds the payoff matrix over every profile of the scenario.
pub fn build_payoff_matrix<T: Scalar>(
    scn: &Scenario<T>,
    plan: &SupplyPlan<T>,
    apsp_buyer: &CostMatrix<T>,
) -> Result<PayoffMatrix<T>, MarketError> {
    let profiles = enumerate_profiles(scn.candidate_locations(), scn.actor_count());
    payoff_matrix(profiles, scn.buyers(), scn.actor_count(), plan, apsp_buyer)
}

/// Payoff matrix over explicit profiles and buyers.
pub fn payoff_matrix<T: Scalar>(
    profiles: Vec<Profile>,
    buyers: &[Buyer],
    actor_count: usize,
    plan: &SupplyPlan<T>,
    apsp_buyer: &CostMatrix<T>,
) -> Result<PayoffMatrix<T>, MarketError> {
    assert!(
        profiles.iter().all(|p| p.hubs().len() == actor_count),
        "one hub per actor"
    );
    let mut payoffs = Matrix::filled(actor_count, profiles.len(), T::zero());
    let mut assignments = Vec::with_capacity(profiles.len());
    for (q, profile) in profiles.iter().enumerate() {
        let chosen = buyers
            .iter()
            .map(|b| buyer_choice(b, profile, plan, apsp_buyer))
            .collect::<Result<Vec<_>, _>>()?;
        for a in &chosen {
            payoffs.set(a.actor, q, payoffs.get(a.actor, q) + a.purchase_cost);
        }
        assignments.push(chosen);
    }
    Ok(PayoffMatrix {
        profiles,
        payoffs,
        assignments,
    })
}
