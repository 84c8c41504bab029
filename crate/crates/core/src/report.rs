//! Human-readable and JSON renderings of a solve.
//!
//! Everything here formats values already computed by the pipeline; nothing
//! is recomputed.

use std::fmt::Write as _;

use itertools::Itertools;
use serde_json::{json, Map, Value};

use crate::compromise::DecisionLevel;
use crate::market::HubCost;
use crate::matrix::Matrix;
use crate::money::Money;
use crate::network::{CostMatrix, Distance};
use crate::pipeline::Solution;
use crate::scenario::Scenario;
use crate::supply::{amortized_leg_cost, ChainQuote, PriceBreakdown};

pub const SCHEMA_VERSION: u32 = 1;

/// Terminal styling for text output.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn heading(&self, text: &str) -> String {
        if self.color {
            format!("\x1b[1m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

/// A solved scenario, ready to print.
#[derive(Debug, Clone, Copy)]
pub struct SolveReport<'a> {
    pub scenario: &'a Scenario<Money>,
    pub solution: &'a Solution<Money>,
}

fn vx(v: usize) -> String {
    format!("x{v}")
}

fn render_table(
    out: &mut String,
    style: Style,
    title: &str,
    corner: &str,
    header: &[String],
    rows: &[(String, Vec<String>)],
) {
    let label_width = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .chain([corner.chars().count()])
        .max()
        .unwrap_or(0);
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|(_, cells)| cells[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let _ = writeln!(out, "{}", style.heading(title));
    let mut line = format!("  {corner:<label_width$}");
    for (h, w) in header.iter().zip(&widths) {
        let _ = write!(line, "  {h:>w$}");
    }
    let _ = writeln!(out, "{}", line.trim_end());
    for (label, cells) in rows {
        let mut line = format!("  {label:<label_width$}");
        for (cell, w) in cells.iter().zip(&widths) {
            let _ = write!(line, "  {cell:>w$}");
        }
        let _ = writeln!(out, "{line}");
    }
    out.push('\n');
}

fn distance_rows(
    m: &CostMatrix<Money>,
    from: &[usize],
    to: &[usize],
) -> Vec<(String, Vec<String>)> {
    m.select(from, to)
        .into_iter()
        .zip(from)
        .map(|(row, &f)| (vx(f), row.iter().map(Distance::to_string).collect()))
        .collect()
}

fn json_distances(m: &CostMatrix<Money>, from: &[usize], to: &[usize]) -> Value {
    json!({ "from": from, "to": to, "weights": m.select(from, to) })
}

fn semi_list(values: &[Money]) -> String {
    format!("({})", values.iter().join("; "))
}

impl<'a> SolveReport<'a> {
    pub fn new(scenario: &'a Scenario<Money>, solution: &'a Solution<Money>) -> Self {
        SolveReport { scenario, solution }
    }

    fn production(&self) -> Vec<usize> {
        self.scenario
            .production_hubs()
            .iter()
            .map(|p| p.vertex)
            .collect()
    }

    fn storages(&self) -> Vec<usize> {
        self.scenario.storages().iter().map(|s| s.vertex).collect()
    }

    fn buyers(&self) -> Vec<usize> {
        self.scenario.buyers().iter().map(|b| b.vertex).collect()
    }

    fn candidates(&self) -> &[usize] {
        self.scenario.candidate_locations()
    }

    /// The sentence naming the selected profile. Always the last line of the
    /// text report.
    pub fn conclusion(&self) -> String {
        let c = &self.solution.compromise;
        let profiles = self.solution.payoffs.profiles();
        let mut line = format!(
            "Compromise solution: profile {}, payoffs {}",
            profiles[c.selection.chosen()],
            semi_list(&c.selected_payoffs)
        );
        if c.selection.selected.len() > 1 {
            let others = c.selection.selected[1..]
                .iter()
                .map(|&q| profiles[q].to_string())
                .join(", ");
            let _ = write!(line, " (tied with {others})");
        }
        line
    }

    pub fn to_text(&self, style: Style) -> String {
        let scn = self.scenario;
        let sol = self.solution;
        let production = self.production();
        let storages = self.storages();
        let buyers = self.buyers();
        let candidates = self.candidates();
        let cand_header: Vec<String> = candidates.iter().map(|&g| vx(g)).collect();
        let mut out = String::new();

        let _ = writeln!(
            out,
            "Scenario: {} vertices, {} edges, {} actors, {} candidate locations, {} profiles\n",
            scn.network().vertex_count(),
            scn.network().edge_count(),
            scn.actor_count(),
            candidates.len(),
            sol.payoffs.profiles().len()
        );

        let storage_header: Vec<String> = storages.iter().map(|&k| vx(k)).collect();
        render_table(
            &mut out,
            style,
            "Heavy-vehicle path weights, production hubs to storages",
            "",
            &storage_header,
            &distance_rows(&sol.apsp_heavy, &production, &storages),
        );

        let amortized = |d: Distance<Money>, batch: u64| {
            amortized_leg_cost(d, batch).map_or("-".to_string(), |c| c.to_string())
        };
        let heavy_rows: Vec<(String, Vec<String>)> = production
            .iter()
            .map(|&d| {
                (
                    vx(d),
                    storages
                        .iter()
                        .map(|&k| amortized(sol.apsp_heavy.get(d, k), scn.batch_heavy()))
                        .collect(),
                )
            })
            .collect();
        render_table(
            &mut out,
            style,
            &format!("Heavy leg per unit (batch {})", scn.batch_heavy()),
            "",
            &storage_header,
            &heavy_rows,
        );

        render_table(
            &mut out,
            style,
            "Light-vehicle path weights, storages to candidate locations",
            "",
            &cand_header,
            &distance_rows(&sol.apsp_light, &storages, candidates),
        );

        let light_rows: Vec<(String, Vec<String>)> = storages
            .iter()
            .map(|&k| {
                (
                    vx(k),
                    candidates
                        .iter()
                        .map(|&g| amortized(sol.apsp_light.get(k, g), scn.batch_light()))
                        .collect(),
                )
            })
            .collect();
        render_table(
            &mut out,
            style,
            &format!("Light leg per unit (batch {})", scn.batch_light()),
            "",
            &cand_header,
            &light_rows,
        );

        // Quotes are ordered (production, storage, location).
        let per_chain = candidates.len().max(1);
        let chain_label = |q: &ChainQuote<Money>| {
            format!("{} -> {}", vx(q.production_vertex), vx(q.storage_vertex))
        };
        let chains: Vec<&[ChainQuote<Money>]> = sol.plan.quotes().chunks(per_chain).collect();
        let chain_rows =
            |f: &dyn Fn(&PriceBreakdown<Money>) -> Money| -> Vec<(String, Vec<String>)> {
                chains
                    .iter()
                    .map(|qs| {
                        (
                            chain_label(&qs[0]),
                            qs.iter()
                                .map(|q| q.price.map_or("-".to_string(), |p| f(&p).to_string()))
                                .collect(),
                        )
                    })
                    .collect()
            };
        render_table(
            &mut out,
            style,
            "Transport cost per unit",
            "",
            &cand_header,
            &chain_rows(&|p| p.transport_per_unit),
        );
        render_table(
            &mut out,
            style,
            "Unit price by supply chain",
            "",
            &cand_header,
            &chain_rows(&|p| p.unit_price),
        );

        let plan_rows: Vec<(String, Vec<String>)> = sol
            .plan
            .locations()
            .iter()
            .map(|s| {
                (
                    vx(s.location),
                    vec![
                        format!("{} -> {}", vx(s.production_vertex), vx(s.storage_vertex)),
                        s.price.base_cost.to_string(),
                        s.price.margin.to_string(),
                        s.price.unit_price.to_string(),
                    ],
                )
            })
            .collect();
        let plan_header = ["chain", "base", "margin", "price"].map(String::from);
        render_table(
            &mut out,
            style,
            "Final unit price",
            "",
            &plan_header,
            &plan_rows,
        );

        let buyer_rows = |f: &dyn Fn(&HubCost<Money>) -> String| -> Vec<(String, Vec<String>)> {
            buyers
                .iter()
                .zip(&sol.buyer_costs)
                .map(|(&b, costs)| (vx(b), costs.iter().map(f).collect()))
                .collect()
        };
        render_table(
            &mut out,
            style,
            "Purchase cost by buyer",
            "",
            &cand_header,
            &buyer_rows(&|c| c.purchase_cost.to_string()),
        );
        render_table(
            &mut out,
            style,
            "Buyer path weights, buyers to candidate locations",
            "",
            &cand_header,
            &distance_rows(&sol.apsp_buyer, &buyers, candidates),
        );
        render_table(
            &mut out,
            style,
            "Buyer cumulative cost",
            "",
            &cand_header,
            &buyer_rows(&|c| c.total.map_or("inf".to_string(), |t| t.to_string())),
        );

        let profile_header: Vec<String> = sol
            .payoffs
            .profiles()
            .iter()
            .map(ToString::to_string)
            .collect();
        let actor_rows = |m: &Matrix<Money>| -> Vec<(String, Vec<String>)> {
            (0..m.rows())
                .map(|r| {
                    (
                        format!("{}", r + 1),
                        m.row(r).iter().map(ToString::to_string).collect(),
                    )
                })
                .collect()
        };
        render_table(
            &mut out,
            style,
            "Payoff matrix",
            "actor",
            &profile_header,
            &actor_rows(sol.payoffs.payoffs()),
        );

        let _ = writeln!(out, "{}", style.heading("Buyer assignments"));
        for (profile, assignments) in sol.payoffs.profiles().iter().zip(sol.payoffs.assignments()) {
            let parts = assignments
                .iter()
                .map(|a| {
                    format!(
                        "{} -> {} ({})",
                        vx(a.buyer_vertex),
                        vx(a.chosen_hub),
                        a.total
                    )
                })
                .join(", ");
            let _ = writeln!(out, "  {profile}: {parts}");
        }
        out.push('\n');

        let c = &sol.compromise;
        let _ = writeln!(
            out,
            "{} {}\n",
            style.heading("Perfect vector:"),
            semi_list(&c.perfect_vector)
        );
        render_table(
            &mut out,
            style,
            "Residual matrix",
            "actor",
            &profile_header,
            &actor_rows(&c.residuals),
        );
        render_table(
            &mut out,
            style,
            "Sorted residual matrix",
            "row",
            &profile_header,
            &actor_rows(&c.selection.sorted_residuals),
        );
        let level = match c.selection.decision_level {
            DecisionLevel::Unique(l) => format!("decided at level {l}"),
            DecisionLevel::TiedThroughAllLevels => "tied through all levels".to_string(),
        };
        let _ = writeln!(
            out,
            "Min-max residual: {} ({level})",
            c.selection.min_max_residual
        );
        let _ = writeln!(out, "{}", self.conclusion());
        out
    }

    pub fn to_json(&self) -> Value {
        let scn = self.scenario;
        let sol = self.solution;
        let production = self.production();
        let storages = self.storages();
        let buyers = self.buyers();
        let candidates = self.candidates();
        let profiles = sol.payoffs.profiles();

        let chains: Vec<Value> = sol
            .plan
            .quotes()
            .iter()
            .map(|q| {
                let mut entry = json!({
                    "production": q.production_vertex,
                    "storage": q.storage_vertex,
                    "location": q.location,
                    "heavy_path": q.heavy_path,
                    "light_path": q.light_path,
                });
                if let Some(p) = q.price {
                    let obj = entry.as_object_mut().expect("object");
                    obj.insert("amortized_heavy".into(), json!(p.amortized_heavy));
                    obj.insert("amortized_light".into(), json!(p.amortized_light));
                    obj.insert("transport_per_unit".into(), json!(p.transport_per_unit));
                    obj.insert("base_cost".into(), json!(p.base_cost));
                    obj.insert("margin".into(), json!(p.margin));
                    obj.insert("unit_price".into(), json!(p.unit_price));
                }
                entry
            })
            .collect();

        let plan: Vec<Value> = sol
            .plan
            .locations()
            .iter()
            .map(|s| {
                json!({
                    "location": s.location,
                    "production": s.production_vertex,
                    "storage": s.storage_vertex,
                    "c1": s.c1,
                    "c2": s.c2,
                    "base_cost": s.price.base_cost,
                    "margin": s.price.margin,
                    "unit_price": s.price.unit_price,
                })
            })
            .collect();

        let mut prices = Map::new();
        for s in sol.plan.locations() {
            prices.insert(s.location.to_string(), json!(s.price.unit_price));
        }

        let buyer_costs: Vec<Value> = scn
            .buyers()
            .iter()
            .zip(&sol.buyer_costs)
            .map(|(b, costs)| {
                json!({
                    "buyer": b.vertex,
                    "demand": b.demand,
                    "hubs": costs.iter().map(|c| json!({
                        "hub": c.hub,
                        "purchase_cost": c.purchase_cost,
                        "travel_cost": c.travel_cost,
                        "total": c.total,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();

        let assignments: Vec<Value> = sol
            .payoffs
            .assignments()
            .iter()
            .map(|per_profile| {
                Value::Array(
                    per_profile
                        .iter()
                        .map(|a| {
                            json!({
                                "buyer": a.buyer_vertex,
                                "hub": a.chosen_hub,
                                "actor": a.actor,
                                "purchase_cost": a.purchase_cost,
                                "travel_cost": a.travel_cost,
                                "total": a.total,
                            })
                        })
                        .collect(),
                )
            })
            .collect();

        let c = &sol.compromise;
        let decision_level = match c.selection.decision_level {
            DecisionLevel::Unique(l) => json!(l),
            DecisionLevel::TiedThroughAllLevels => json!("tied-through-all-levels"),
        };

        json!({
            "schema_version": SCHEMA_VERSION,
            "scenario": {
                "vertices": scn.network().vertex_count(),
                "edges": scn.network().edge_count(),
                "actors": scn.actor_count(),
                "candidate_locations": candidates,
                "profiles": profiles.len(),
            },
            "apsp": {
                "production_to_storage": json_distances(&sol.apsp_heavy, &production, &storages),
                "storage_to_candidate": json_distances(&sol.apsp_light, &storages, candidates),
                "buyer_to_candidate": json_distances(&sol.apsp_buyer, &buyers, candidates),
            },
            "chains": chains,
            "supply_plan": plan,
            "prices": prices,
            "buyer_costs": buyer_costs,
            "payoffs": {
                "profiles": profiles.iter().map(|p| p.hubs()).collect::<Vec<_>>(),
                "matrix": sol.payoffs.payoffs().to_rows(),
                "assignments": assignments,
            },
            "compromise": {
                "perfect_vector": c.perfect_vector,
                "residuals": c.residuals.to_rows(),
                "sorted_residuals": c.selection.sorted_residuals.to_rows(),
                "min_max_residual": c.selection.min_max_residual,
                "decision_level": decision_level,
                "selected": c.selection.selected.iter().map(|&q| profiles[q].hubs()).collect::<Vec<_>>(),
                "profile": profiles[c.selection.chosen()].hubs(),
                "payoffs": c.selected_payoffs,
            },
        })
    }
}
