use thiserror::Error;

use crate::compromise::{compromise, CompromiseResult};
use crate::market::{build_payoff_matrix, hub_costs, HubCost, MarketError, PayoffMatrix};
use crate::network::{CostClass, CostMatrix, NegativeCycle};
use crate::scalar::Scalar;
use crate::scenario::Scenario;
use crate::supply::{build_supply_plan, SupplyError, SupplyPlan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{} costs: {source}", class.name())]
    NegativeCycle {
        class: CostClass,
        source: NegativeCycle,
    },
    #[error(transparent)]
    Supply(#[from] SupplyError),
    #[error(transparent)]
    Market(#[from] MarketError),
}

/// Every intermediate result of one solve, in pipeline order.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub apsp_heavy: CostMatrix<T>,
    pub apsp_light: CostMatrix<T>,
    pub apsp_buyer: CostMatrix<T>,
    pub plan: SupplyPlan<T>,
    /// Per buyer (scenario order), the cost at every candidate location.
    pub buyer_costs: Vec<Vec<HubCost<T>>>,
    pub payoffs: PayoffMatrix<T>,
    pub compromise: CompromiseResult<T>,
}

/// Shortest paths for all three cost classes, then supply plan, payoff
/// matrix and compromise selection.
pub fn solve<T: Scalar>(scn: &Scenario<T>) -> Result<Solution<T>, SolveError> {
    let apsp = |class| {
        scn.network()
            .shortest_paths(class)
            .map_err(|source| SolveError::NegativeCycle { class, source })
    };
    let apsp_heavy = apsp(CostClass::ActorHeavy)?;
    let apsp_light = apsp(CostClass::ActorLight)?;
    let apsp_buyer = apsp(CostClass::Buyer)?;
    let plan = build_supply_plan(scn, &apsp_heavy, &apsp_light)?;
    let buyer_costs = scn
        .buyers()
        .iter()
        .map(|b| hub_costs(b, scn.candidate_locations(), &plan, &apsp_buyer))
        .collect::<Result<Vec<_>, _>>()?;
    let payoffs = build_payoff_matrix(scn, &plan, &apsp_buyer)?;
    let compromise = compromise(payoffs.payoffs());
    Ok(Solution {
        apsp_heavy,
        apsp_light,
        apsp_buyer,
        plan,
        buyer_costs,
        payoffs,
        compromise,
    })
}
