//! Weighted transport network and Floyd–Warshall all-pairs shortest paths.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::error::{ValidationError, ValidationErrors};
use crate::scalar::Scalar;

/// Which per-edge weight a computation reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostClass {
    /// Higher-capacity vehicles, production hub to storage.
    ActorHeavy,
    /// Lower-capacity vehicles, storage to trading hub.
    ActorLight,
    /// Buyers commuting to a trading hub.
    Buyer,
}

impl CostClass {
    pub const ALL: [CostClass; 3] = [
        CostClass::ActorHeavy,
        CostClass::ActorLight,
        CostClass::Buyer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CostClass::ActorHeavy => "heavy",
            CostClass::ActorLight => "light",
            CostClass::Buyer => "buyer",
        }
    }
}

/// An undirected edge with its three cost weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge<T> {
    pub u: usize,
    pub v: usize,
    pub heavy: T,
    pub light: T,
    pub buyer: T,
}

impl<T: Copy> Edge<T> {
    pub fn new(u: usize, v: usize, heavy: T, light: T, buyer: T) -> Self {
        Edge {
            u,
            v,
            heavy,
            light,
            buyer,
        }
    }

    pub fn cost(&self, class: CostClass) -> T {
        match class {
            CostClass::ActorHeavy => self.heavy,
            CostClass::ActorLight => self.light,
            CostClass::Buyer => self.buyer,
        }
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> Edge<U> {
        Edge {
            u: self.u,
            v: self.v,
            heavy: f(self.heavy),
            light: f(self.light),
            buyer: f(self.buyer),
        }
    }
}

/// A validated, immutable network.
///
/// Edges are undirected; every vertex id is below `vertex_count`; there are
/// no self-loops or repeated pairs. Networks built with [`Network::new`] are
/// also connected, have nonnegative costs, and `heavy >= light` on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network<T> {
    vertex_count: usize,
    edges: Vec<Edge<T>>,
}

impl<T: Scalar> Network<T> {
    pub fn new(vertex_count: usize, edges: Vec<Edge<T>>) -> Result<Self, ValidationErrors> {
        let mut errors = structural_errors(vertex_count, &edges);
        let zero = T::zero();
        for e in &edges {
            for class in CostClass::ALL {
                let c = e.cost(class);
                if c < zero {
                    errors.push(ValidationError::NegativeCost {
                        field: format!("edge ({},{}).{}", e.u, e.v, class.name()),
                        value: c.to_string(),
                    });
                }
            }
            if e.light > e.heavy {
                errors.push(ValidationError::LightExceedsHeavy {
                    u: e.u,
                    v: e.v,
                    heavy: e.heavy.to_string(),
                    light: e.light.to_string(),
                });
            }
        }
        if errors.is_empty() {
            let components = component_count(vertex_count, &edges);
            if components > 1 {
                errors.push(ValidationError::DisconnectedNetwork { components });
            }
        }
        match ValidationErrors::from_vec(errors) {
            Some(errs) => Err(errs),
            None => Ok(Network {
                vertex_count,
                edges,
            }),
        }
    }

    /// Checks only the structural invariants (ids, self-loops, duplicates).
    ///
    /// Cost signs, the heavy/light ordering and connectivity are not checked.
    /// Exists so negative weights can reach the negative-cycle detector.
    pub fn with_unchecked_costs(
        vertex_count: usize,
        edges: Vec<Edge<T>>,
    ) -> Result<Self, ValidationErrors> {
        match ValidationErrors::from_vec(structural_errors(vertex_count, &edges)) {
            Some(errs) => Err(errs),
            None => Ok(Network {
                vertex_count,
                edges,
            }),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All-pairs shortest paths for one cost class.
    pub fn shortest_paths(&self, class: CostClass) -> Result<CostMatrix<T>, NegativeCycle> {
        all_pairs_shortest_paths(&build_weight_matrix(self, class))
    }

    pub fn map_costs<U: Scalar>(&self, f: impl Fn(T) -> U) -> Network<U> {
        Network {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|e| e.map(&f)).collect(),
        }
    }
}

fn structural_errors<T>(vertex_count: usize, edges: &[Edge<T>]) -> Vec<ValidationError> {
    let mut errors = Vec::new();
    if vertex_count == 0 {
        errors.push(ValidationError::NonPositive {
            field: "vertices".into(),
            value: 0,
        });
    }
    let mut seen = HashSet::new();
    for e in edges {
        let mut in_range = true;
        for x in [e.u, e.v] {
            if x >= vertex_count {
                in_range = false;
                errors.push(ValidationError::UnknownVertex {
                    role: "edges",
                    vertex: i64::try_from(x).unwrap_or(i64::MAX),
                    vertex_count,
                });
            }
        }
        if e.u == e.v {
            errors.push(ValidationError::SelfLoop { vertex: e.u });
        } else if in_range && !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
            errors.push(ValidationError::DuplicateEdge { u: e.u, v: e.v });
        }
    }
    errors
}

fn component_count<T>(vertex_count: usize, edges: &[Edge<T>]) -> usize {
    let mut adjacency = vec![Vec::new(); vertex_count];
    for e in edges {
        adjacency[e.u].push(e.v);
        adjacency[e.v].push(e.u);
    }
    let mut visited = vec![false; vertex_count];
    let mut components = 0;
    for start in 0..vertex_count {
        if visited[start] {
            continue;
        }
        components += 1;
        visited[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if !visited[y] {
                    visited[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    components
}

/// A path weight, or the absence of any path.
///
/// `Unreachable` is greater than every finite value and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance<T> {
    Finite(T),
    Unreachable,
}

impl<T: Copy> Distance<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Unreachable => None,
        }
    }

    pub fn is_reachable(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl<T: Add<Output = T>> Add for Distance<T> {
    type Output = Distance<T>;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Unreachable,
        }
    }
}

impl<T: PartialOrd> PartialOrd for Distance<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.partial_cmp(b),
            (Distance::Finite(_), Distance::Unreachable) => Some(Ordering::Less),
            (Distance::Unreachable, Distance::Finite(_)) => Some(Ordering::Greater),
            (Distance::Unreachable, Distance::Unreachable) => Some(Ordering::Equal),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Distance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(x) => x.fmt(f),
            Distance::Unreachable => f.pad("inf"),
        }
    }
}

/// `null` for unreachable.
impl<T: Serialize> Serialize for Distance<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(x) => x.serialize(serializer),
            Distance::Unreachable => serializer.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostMatrixError {
    #[error("matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("diagonal entry ({0},{0}) is not zero")]
    NonZeroDiagonal(usize),
}

/// A dense `n × n` matrix of distances for one cost class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix<T> {
    n: usize,
    entries: Vec<Distance<T>>,
}

impl<T: Scalar> CostMatrix<T> {
    /// Zero diagonal, everything else unreachable.
    pub fn disconnected(n: usize) -> Self {
        let mut entries = vec![Distance::Unreachable; n * n];
        for i in 0..n {
            entries[i * n + i] = Distance::Finite(T::zero());
        }
        CostMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Distance<T>>>) -> Result<Self, CostMatrixError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CostMatrixError::NotSquare {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
            if row[i] != Distance::Finite(T::zero()) {
                return Err(CostMatrixError::NonZeroDiagonal(i));
            }
        }
        Ok(CostMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Distance<T> {
        self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, d: Distance<T>) {
        self.entries[i * self.n + j] = d;
    }

    pub fn row(&self, i: usize) -> &[Distance<T>] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Sub-matrix with the given row and column vertices, in order.
    pub fn select(&self, from: &[usize], to: &[usize]) -> Vec<Vec<Distance<T>>> {
        from.iter()
            .map(|&i| to.iter().map(|&j| self.get(i, j)).collect())
            .collect()
    }
}

/// Initial matrix: zero diagonal, edge weights, `Unreachable` elsewhere.
pub fn build_weight_matrix<T: Scalar>(net: &Network<T>, class: CostClass) -> CostMatrix<T> {
    let mut m = CostMatrix::disconnected(net.vertex_count());
    for e in net.edges() {
        let w = Distance::Finite(e.cost(class));
        m.set(e.u, e.v, w);
        m.set(e.v, e.u, w);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("negative cycle through vertex {vertex}")]
pub struct NegativeCycle {
    pub vertex: usize,
}

/// Floyd–Warshall over a weight matrix.
///
/// After relaxing through each intermediate vertex the diagonal is checked;
/// the first vertex whose self-distance would drop below zero is reported.
pub fn all_pairs_shortest_paths<T: Scalar>(
    d0: &CostMatrix<T>,
) -> Result<CostMatrix<T>, NegativeCycle> {
    let n = d0.size();
    let mut d = d0.clone();
    let zero = Distance::Finite(T::zero());
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            if !dik.is_reachable() {
                continue;
            }
            for j in 0..n {
                let through = dik + d.get(k, j);
                if through < d.get(i, j) {
                    d.set(i, j, through);
                }
            }
        }
        if let Some(vertex) = (0..n).find(|&i| d.get(i, i) < zero) {
            return Err(NegativeCycle { vertex });
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::money::Money;
    use proptest::prelude::*;

    fn edge(u: usize, v: usize, w: i64) -> Edge<Money> {
        let w = Money::from_int(w);
        Edge::new(u, v, w, w, w)
    }

    fn fin(w: i64) -> Distance<Money> {
        Distance::Finite(Money::from_int(w))
    }

    #[test]
    fn weight_matrix_has_edges_zero_diagonal_and_sentinel() {
        let net = Network::new(3, vec![edge(0, 1, 5), edge(1, 2, 1)]).unwrap();
        let m = build_weight_matrix(&net, CostClass::ActorHeavy);
        assert_eq!(m.get(0, 1), fin(5));
        assert_eq!(m.get(1, 0), fin(5));
        assert_eq!(m.get(0, 2), Distance::Unreachable);
        for i in 0..3 {
            assert_eq!(m.get(i, i), fin(0));
        }
        assert!(m.is_symmetric());
    }

    #[test]
    fn weight_matrix_reads_selected_class() {
        let e = Edge::new(
            0,
            1,
            Money::from_int(6),
            Money::from_int(4),
            Money::from_int(7),
        );
        let net = Network::new(2, vec![e]).unwrap();
        assert_eq!(
            build_weight_matrix(&net, CostClass::ActorHeavy).get(0, 1),
            fin(6)
        );
        assert_eq!(
            build_weight_matrix(&net, CostClass::ActorLight).get(1, 0),
            fin(4)
        );
        assert_eq!(
            build_weight_matrix(&net, CostClass::Buyer).get(0, 1),
            fin(7)
        );
    }

    #[test]
    fn unreachable_preserved_without_a_path() {
        let net = Network::with_unchecked_costs(3, vec![edge(0, 1, 2)]).unwrap();
        let d = net.shortest_paths(CostClass::Buyer).unwrap();
        assert_eq!(d.get(0, 2), Distance::Unreachable);
        assert_eq!(d.get(2, 2), fin(0));
        assert_eq!(d.get(1, 0), fin(2));
    }

    #[test]
    fn shortest_path_beats_direct_edge() {
        let net = Network::new(3, vec![edge(0, 1, 1), edge(1, 2, 1), edge(0, 2, 5)]).unwrap();
        let d = net.shortest_paths(CostClass::ActorHeavy).unwrap();
        assert_eq!(d.get(0, 2), fin(2));
        assert_eq!(d.get(2, 0), fin(2));
    }

    #[test]
    fn input_matrix_is_not_mutated() {
        let net = Network::new(3, vec![edge(0, 1, 1), edge(1, 2, 1)]).unwrap();
        let d0 = build_weight_matrix(&net, CostClass::ActorHeavy);
        let before = d0.clone();
        let _ = all_pairs_shortest_paths(&d0).unwrap();
        assert_eq!(d0, before);
    }

    #[test]
    fn metric_matrix_is_a_fixed_point() {
        let rows = vec![
            vec![fin(0), fin(2), fin(3)],
            vec![fin(2), fin(0), fin(1)],
            vec![fin(3), fin(1), fin(0)],
        ];
        let m = CostMatrix::from_rows(rows).unwrap();
        assert_eq!(all_pairs_shortest_paths(&m).unwrap(), m);
    }

    #[test]
    fn negative_edge_is_a_negative_cycle() {
        let net = Network::with_unchecked_costs(
            3,
            vec![
                edge(0, 1, 2),
                Edge::new(
                    1,
                    2,
                    Money::from_int(-3),
                    Money::from_int(-3),
                    Money::from_int(-3),
                ),
            ],
        )
        .unwrap();
        let err = net.shortest_paths(CostClass::ActorHeavy).unwrap_err();
        assert!(err.vertex == 1 || err.vertex == 2, "{err:?}");
    }

    #[test]
    fn matrix_shape_is_checked() {
        assert_eq!(
            CostMatrix::<Money>::from_rows(vec![vec![fin(0), fin(1)], vec![fin(1)]]),
            Err(CostMatrixError::NotSquare {
                row: 1,
                found: 1,
                expected: 2
            })
        );
        assert_eq!(
            CostMatrix::from_rows(vec![vec![fin(1)]]),
            Err(CostMatrixError::NonZeroDiagonal(0))
        );
    }

    #[test]
    fn network_validation_reports_every_problem() {
        let bad = vec![
            edge(0, 0, 1),
            edge(0, 1, 1),
            edge(1, 0, 1),
            edge(1, 7, 1),
            Edge::new(
                1,
                2,
                Money::from_int(1),
                Money::from_int(2),
                Money::from_int(-1),
            ),
        ];
        let errs = Network::new(3, bad).unwrap_err();
        let codes = errs.codes();
        for code in [
            "SelfLoop",
            "DuplicateEdge",
            "UnknownVertex",
            "LightExceedsHeavy",
            "NegativeCost",
        ] {
            assert!(codes.contains(&code), "{code} missing from {codes:?}");
        }
        let errs = Network::new(4, vec![edge(0, 1, 1), edge(2, 3, 1)]).unwrap_err();
        assert_eq!(
            errs.errors(),
            &[ValidationError::DisconnectedNetwork { components: 2 }]
        );
    }

    #[test]
    fn distance_ordering_and_absorption() {
        assert!(fin(1_000_000) < Distance::Unreachable);
        assert_eq!(fin(1) + Distance::Unreachable, Distance::Unreachable);
        assert_eq!(Distance::<Money>::Unreachable.to_string(), "inf");
    }

    #[test]
    fn generic_over_float_scalars() {
        let net = Network::new(
            3,
            vec![
                Edge::new(0, 1, 1.5f64, 1.0, 1.0),
                Edge::new(1, 2, 2.25, 2.0, 2.0),
            ],
        )
        .unwrap();
        assert_eq!(
            net.shortest_paths(CostClass::ActorHeavy).unwrap().get(0, 2),
            Distance::Finite(3.75)
        );
        let net32 = net.map_costs(|c| c as f32);
        assert_eq!(
            net32
                .shortest_paths(CostClass::ActorLight)
                .unwrap()
                .get(2, 0),
            Distance::Finite(3.0f32)
        );
    }

    /// Exhaustive simple-path enumeration, independent of Floyd–Warshall.
    fn brute_force(n: usize, edges: &[(usize, usize, i64)]) -> Vec<Vec<Option<i64>>> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        let mut best = vec![vec![None; n]; n];
        fn walk(
            at: usize,
            cost: i64,
            src: usize,
            adj: &[Vec<(usize, i64)>],
            on_path: &mut Vec<bool>,
            best: &mut [Vec<Option<i64>>],
        ) {
            let slot = &mut best[src][at];
            if slot.is_none_or(|b| cost < b) {
                *slot = Some(cost);
            }
            for &(next, w) in &adj[at] {
                if !on_path[next] {
                    on_path[next] = true;
                    walk(next, cost + w, src, adj, on_path, best);
                    on_path[next] = false;
                }
            }
        }
        for src in 0..n {
            let mut on_path = vec![false; n];
            on_path[src] = true;
            walk(src, 0, src, &adj, &mut on_path, &mut best);
        }
        best
    }

    fn arb_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize, i64)>)> {
        (1usize..=7)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                let k = pairs.len();
                (
                    Just(n),
                    Just(pairs),
                    proptest::collection::vec((any::<bool>(), 0i64..=20), k),
                )
            })
            .prop_map(|(n, pairs, picks)| {
                let edges = pairs
                    .into_iter()
                    .zip(picks)
                    .filter(|(_, (keep, _))| *keep)
                    .map(|((u, v), (_, w))| (u, v, w))
                    .collect();
                (n, edges)
            })
    }

    proptest! {
        #[test]
        fn matches_simple_path_enumeration((n, edges) in arb_graph()) {
            let net = Network::with_unchecked_costs(n, edges.iter().map(|&(u, v, w)| edge(u, v, w)).collect()).unwrap();
            let d = net.shortest_paths(CostClass::ActorHeavy).unwrap();
            let oracle = brute_force(n, &edges);
            for (i, row) in oracle.iter().enumerate() {
                for (j, &want) in row.iter().enumerate() {
                    let expected = want.map_or(Distance::Unreachable, fin);
                    prop_assert_eq!(d.get(i, j), expected);
                }
            }
        }

        #[test]
        fn output_is_a_metric_and_idempotent((n, edges) in arb_graph()) {
            let net = Network::with_unchecked_costs(n, edges.iter().map(|&(u, v, w)| edge(u, v, w)).collect()).unwrap();
            let d = net.shortest_paths(CostClass::Buyer).unwrap();
            prop_assert!(d.is_symmetric());
            for i in 0..n {
                prop_assert_eq!(d.get(i, i), fin(0));
                for j in 0..n {
                    for k in 0..n {
                        if d.get(i, k).is_reachable() && d.get(k, j).is_reachable() {
                            prop_assert!(d.get(i, j) <= d.get(i, k) + d.get(k, j));
                        }
                    }
                }
            }
            prop_assert_eq!(all_pairs_shortest_paths(&d).unwrap(), d);
        }
    }
}
