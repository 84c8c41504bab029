//! Cost-minimal supply chains and unit prices at every candidate location.
//!
//! A chain is a production hub `d`, a storage `k` and a trading-hub location
//! `g`. Its per-unit base cost is
//!
//! ```text
//! base = l_d + s_k + heavy(d, k) / Q1 + light(k, g) / Q2
//! ```
//!
//! and the unit price adds the margin. All of this is evaluated in the
//! scalar's wide type and narrowed once per reported figure.

use thiserror::Error;

use crate::network::{CostMatrix, Distance};
use crate::scalar::Scalar;
use crate::scenario::{MarginPolicy, Scenario};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupplyError {
    #[error("leg has no path")]
    UnreachableLeg,
    #[error("batch size must be positive")]
    ZeroBatch,
    #[error("no margin given for location {0}")]
    MissingMargin(usize),
    #[error("no production hub and storage can supply location {0}")]
    NoFeasibleChain(usize),
}

/// `path_weight / batch`, the per-unit share of one leg.
pub fn amortized_leg_cost<T: Scalar>(
    path_weight: Distance<T>,
    batch: u64,
) -> Result<T, SupplyError> {
    let w = path_weight.finite().ok_or(SupplyError::UnreachableLeg)?;
    if batch == 0 {
        return Err(SupplyError::ZeroBatch);
    }
    Ok(T::narrow(&(w.widen() / T::wide_from_int(batch))))
}

/// The raw cost inputs of one chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainCosts<T> {
    /// Purchase price at the production hub.
    pub purchase: T,
    /// Per-unit storage fee.
    pub storage_fee: T,
    /// Heavy-vehicle path weight, production hub to storage.
    pub heavy_path: T,
    /// Light-vehicle path weight, storage to location.
    pub light_path: T,
}

/// Every figure of a chain's price, each narrowed from the exact value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceBreakdown<T> {
    pub amortized_heavy: T,
    pub amortized_light: T,
    /// `amortized_heavy + amortized_light` before rounding.
    pub transport_per_unit: T,
    pub base_cost: T,
    /// `unit_price - base_cost`, so the two always add up.
    pub margin: T,
    pub unit_price: T,
}

struct ExactPrice<W> {
    amortized_heavy: W,
    amortized_light: W,
    base: W,
    price: W,
}

fn exact_price<T: Scalar>(
    costs: &ChainCosts<T>,
    batch_heavy: u64,
    batch_light: u64,
    margin: &MarginPolicy<T>,
    location: usize,
) -> Result<ExactPrice<T::Wide>, SupplyError> {
    if batch_heavy == 0 || batch_light == 0 {
        return Err(SupplyError::ZeroBatch);
    }
    let amortized_heavy = costs.heavy_path.widen() / T::wide_from_int(batch_heavy);
    let amortized_light = costs.light_path.widen() / T::wide_from_int(batch_light);
    let base = costs.purchase.widen()
        + costs.storage_fee.widen()
        + amortized_heavy.clone()
        + amortized_light.clone();
    let w = match margin {
        MarginPolicy::FractionOfBase { mu } => T::wide_from_ratio(*mu) * base.clone(),
        MarginPolicy::PerLocation(table) => table
            .get(&location)
            .ok_or(SupplyError::MissingMargin(location))?
            .widen(),
    };
    let price = base.clone() + w;
    Ok(ExactPrice {
        amortized_heavy,
        amortized_light,
        base,
        price,
    })
}

fn breakdown<T: Scalar>(exact: &ExactPrice<T::Wide>) -> PriceBreakdown<T> {
    let base_cost = T::narrow(&exact.base);
    let unit_price = T::narrow(&exact.price);
    PriceBreakdown {
        amortized_heavy: T::narrow(&exact.amortized_heavy),
        amortized_light: T::narrow(&exact.amortized_light),
        transport_per_unit: T::narrow(
            &(exact.amortized_heavy.clone() + exact.amortized_light.clone()),
        ),
        base_cost,
        margin: unit_price - base_cost,
        unit_price,
    }
}

/// Unit price of one chain delivered to `location`.
pub fn unit_price<T: Scalar>(
    costs: &ChainCosts<T>,
    batch_heavy: u64,
    batch_light: u64,
    margin: &MarginPolicy<T>,
    location: usize,
) -> Result<PriceBreakdown<T>, SupplyError> {
    exact_price(costs, batch_heavy, batch_light, margin, location).map(|e| breakdown::<T>(&e))
}

/// One (production hub, storage, location) triple with its price, if feasible.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainQuote<T> {
    pub production_index: usize,
    pub storage_index: usize,
    pub production_vertex: usize,
    pub storage_vertex: usize,
    pub location: usize,
    pub heavy_path: Distance<T>,
    pub light_path: Distance<T>,
    /// `None` when a leg is unreachable.
    pub price: Option<PriceBreakdown<T>>,
}

/// The chain chosen for one candidate location.
#[derive(Debug, Clone, PartialEq)]
pub struct LocationSupply<T> {
    pub location: usize,
    pub production_index: usize,
    pub storage_index: usize,
    pub production_vertex: usize,
    pub storage_vertex: usize,
    /// Heavy-path weight, production hub to storage.
    pub c1: T,
    /// Light-path weight, storage to location.
    pub c2: T,
    pub price: PriceBreakdown<T>,
}

impl<T: Scalar> LocationSupply<T> {
    pub fn unit_price(&self) -> T {
        self.price.unit_price
    }
}

/// Chosen chain and price for every candidate location, plus the full quote
/// table the choice was made from.
#[derive(Debug, Clone, PartialEq)]
pub struct SupplyPlan<T> {
    locations: Vec<LocationSupply<T>>,
    quotes: Vec<ChainQuote<T>>,
}

impl<T: Scalar> SupplyPlan<T> {
    /// In candidate-location order.
    pub fn locations(&self) -> &[LocationSupply<T>] {
        &self.locations
    }

    /// Ordered by production hub, then storage, then location.
    pub fn quotes(&self) -> &[ChainQuote<T>] {
        &self.quotes
    }

    pub fn at(&self, location: usize) -> Option<&LocationSupply<T>> {
        self.locations.iter().find(|s| s.location == location)
    }

    pub fn price_at(&self, location: usize) -> Option<T> {
        self.at(location).map(LocationSupply::unit_price)
    }
}

/// Picks, for every candidate location, the chain with the least base cost.
///
/// Ties go to the smallest (production hub index, storage index) pair.
pub fn build_supply_plan<T: Scalar>(
    scn: &Scenario<T>,
    apsp_heavy: &CostMatrix<T>,
    apsp_light: &CostMatrix<T>,
) -> Result<SupplyPlan<T>, SupplyError> {
    let (q1, q2) = (scn.batch_heavy(), scn.batch_light());
    let mut quotes = Vec::new();
    let mut best: Vec<Option<(T::Wide, LocationSupply<T>)>> =
        vec![None; scn.candidate_locations().len()];

    for (pi, hub) in scn.production_hubs().iter().enumerate() {
        for (si, storage) in scn.storages().iter().enumerate() {
            let heavy_path = apsp_heavy.get(hub.vertex, storage.vertex);
            for (gi, &g) in scn.candidate_locations().iter().enumerate() {
                let light_path = apsp_light.get(storage.vertex, g);
                let mut price = None;
                if let (Some(c1), Some(c2)) = (heavy_path.finite(), light_path.finite()) {
                    let costs = ChainCosts {
                        purchase: hub.unit_price,
                        storage_fee: storage.unit_fee,
                        heavy_path: c1,
                        light_path: c2,
                    };
                    let exact = exact_price(&costs, q1, q2, scn.margin(), g)?;
                    let figures = breakdown::<T>(&exact);
                    let better = best[gi].as_ref().is_none_or(|(b, _)| exact.base < *b);
                    if better {
                        let supply = LocationSupply {
                            location: g,
                            production_index: pi,
                            storage_index: si,
                            production_vertex: hub.vertex,
                            storage_vertex: storage.vertex,
                            c1,
                            c2,
                            price: figures,
                        };
                        best[gi] = Some((exact.base, supply));
                    }
                    price = Some(figures);
                }
                quotes.push(ChainQuote {
                    production_index: pi,
                    storage_index: si,
                    production_vertex: hub.vertex,
                    storage_vertex: storage.vertex,
                    location: g,
                    heavy_path,
                    light_path,
                    price,
                });
            }
        }
    }

    let locations = best
        .into_iter()
        .zip(scn.candidate_locations())
        .map(|(b, &g)| b.map(|(_, s)| s).ok_or(SupplyError::NoFeasibleChain(g)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SupplyPlan { locations, quotes })
}
