//! Seeded random instances shared by the property tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hubnet_core::scenario::{
    BuyerRecord, EdgeRecord, MarginRecord, ProductionHubRecord, ScenarioFile, StorageRecord,
};
use hubnet_core::{Money, Scenario};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A cost with at most two decimals, in `[0, max]`.
pub fn cost(rng: &mut impl Rng, max: i64) -> Money {
    Money::from_minor(rng.random_range(0..=max * 100) * 100)
}

/// Random spanning tree plus a few extra edges; light ≤ heavy on every edge.
pub fn connected_edges(rng: &mut impl Rng, n: usize, extra: usize) -> Vec<EdgeRecord> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        pairs.push((parent.min(order[i]), parent.max(order[i])));
    }
    for _ in 0..extra {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        let key = (u.min(v), u.max(v));
        if u != v && !pairs.contains(&key) {
            pairs.push(key);
        }
    }
    pairs
        .into_iter()
        .map(|(u, v)| {
            let heavy = cost(rng, 20);
            let light = Money::from_minor(rng.random_range(0..=heavy.minor() / 100) * 100);
            EdgeRecord {
                u: u as i64,
                v: v as i64,
                heavy,
                light,
                buyer: cost(rng, 20),
            }
        })
        .collect()
}

fn distinct(rng: &mut impl Rng, n: usize, k: usize) -> Vec<i64> {
    let all: Vec<i64> = (0..n as i64).collect();
    all.choose_multiple(rng, k).copied().collect()
}

/// A valid scenario file with 4–12 vertices.
pub fn scenario_file(seed: u64) -> ScenarioFile {
    let mut rng = rng(seed);
    let n = rng.random_range(4..=12);
    let extra = rng.random_range(0..=n);
    let edges = connected_edges(&mut rng, n, extra);
    let production_hubs = {
        let k = rng.random_range(1..=3);
        distinct(&mut rng, n, k)
    }
    .into_iter()
    .map(|vertex| ProductionHubRecord {
        vertex,
        unit_price: cost(&mut rng, 10),
    })
    .collect();
    let storages = {
        let k = rng.random_range(1..=3);
        distinct(&mut rng, n, k)
    }
    .into_iter()
    .map(|vertex| StorageRecord {
        vertex,
        unit_fee: cost(&mut rng, 3),
    })
    .collect();
    let buyers = {
        let k = rng.random_range(1..=4);
        distinct(&mut rng, n, k)
    }
    .into_iter()
    .map(|vertex| BuyerRecord {
        vertex,
        demand: rng.random_range(1..=10),
    })
    .collect();
    let candidate_locations = {
        let k = rng.random_range(2..=n.min(5));
        distinct(&mut rng, n, k)
    };
    let actor_count = rng.random_range(1..=candidate_locations.len().min(3)) as i64;
    let margin = if rng.random_bool(0.7) {
        MarginRecord::FractionOfBase(Money::from_minor(rng.random_range(0..=4) * 2500))
    } else {
        let per: BTreeMap<String, Money> = candidate_locations
            .iter()
            .map(|g| (g.to_string(), cost(&mut rng, 5)))
            .collect();
        MarginRecord::PerLocation(per)
    };
    ScenarioFile {
        vertices: n as i64,
        edges,
        production_hubs,
        storages,
        buyers,
        candidate_locations,
        actor_count,
        batch_heavy: rng.random_range(1..=10),
        batch_light: rng.random_range(1..=5),
        margin,
    }
}

pub fn scenario(seed: u64) -> Scenario {
    scenario_file(seed)
        .validate()
        .expect("generator produces valid scenarios")
}
