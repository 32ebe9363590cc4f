//! The quantum Bruhat graph: a labeled directed graph on the finite Weyl
//! group with upward edges along Bruhat covers and downward edges whose
//! length drop is `⟨2ρ, α∨⟩ - 1`.
//!
//! The builder precomputes all-pairs breadth-first distances and the coroot
//! weight of minimal paths. Minimal paths between a fixed ordered pair all
//! carry the same weight; the builder verifies this exhaustively while
//! filling the tables and refuses to hand out a graph if any pair disagrees,
//! so every query runs against validated data.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::rootsys::Coroot;
use crate::weyl::{WeylElement, WeylGroup};

#[derive(Debug, Error)]
pub enum QbgError {
    #[error(
        "minimal paths from {from} to {to} disagree in weight; \
         the distance/weight tables cannot be trusted"
    )]
    WeightMismatch { from: String, to: String },
    #[error("graph is not strongly connected: {to} unreachable from {from}")]
    NotStronglyConnected { from: String, to: String },
    #[error("unknown export format `{0}` (expected `dot` or `json`)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeDirection {
    Up,
    Down,
}

/// Compact adjacency entry; see [`QbgEdgeView`] for the public form.
#[derive(Debug, Clone, Copy)]
struct CompactEdge {
    target: u32,
    root: u16,
    down: bool,
}

/// One edge `w → w·s_α` with its label and weight.
#[derive(Debug, Clone)]
pub struct QbgEdgeView {
    pub source: WeylElement,
    pub target: WeylElement,
    /// Canonical index of the labelling positive root α.
    pub root_index: usize,
    pub direction: EdgeDirection,
    /// `α∨` for down edges, zero for up edges.
    pub weight: Coroot,
}

const MAX_RANK: usize = 6;
type WeightVec = [i16; MAX_RANK];

/// The quantum Bruhat graph of a finite Weyl group, with validated all-pairs
/// distance and minimal-path-weight tables. Immutable after construction.
pub struct QuantumBruhatGraph {
    group: Arc<WeylGroup>,
    size: usize,
    rank: usize,
    adjacency: Vec<Vec<CompactEdge>>,
    dist: Vec<u16>,
    weights: Vec<WeightVec>,
    down_dist: Vec<u32>,
    num_edges: usize,
}

impl QuantumBruhatGraph {
    /// Build and validate the graph. Fails if minimal paths between some
    /// ordered pair carry different weights (they cannot, unless the group
    /// tables are corrupt) or if the graph is not strongly connected.
    pub fn build(group: Arc<WeylGroup>) -> Result<QuantumBruhatGraph, QbgError> {
        let size = group.order();
        let rank = group.rank();
        let rs = group.root_system();
        let nroots = rs.num_positive_roots();

        // Edge set straight from the two length conditions.
        let mut adjacency: Vec<Vec<CompactEdge>> = vec![Vec::new(); size];
        let mut num_edges = 0;
        for w in group.elements() {
            let wi = group.element_index(w);
            let lw = group.length(w) as i64;
            for k in 0..nroots {
                let t = group.multiply(w, group.reflection(k));
                let lt = group.length(t) as i64;
                let drop = rs.two_rho_pair_coroot(&rs.positive_coroots()[k]) - 1;
                let edge = if lt == lw + 1 {
                    Some(false)
                } else if lt == lw - drop {
                    Some(true)
                } else {
                    None
                };
                if let Some(down) = edge {
                    adjacency[wi].push(CompactEdge {
                        target: group.element_index(t) as u32,
                        root: k as u16,
                        down,
                    });
                    num_edges += 1;
                }
            }
            // Deterministic edge order: by target's canonical index, then
            // label.
            adjacency[wi].sort_by_key(|e| (e.target, e.root));
        }

        // Per-source BFS; the weight of a vertex is proposed by every
        // incoming shortest-path edge, and any disagreement is a hard error.
        let mut dist = vec![u16::MAX; size * size];
        let mut weights = vec![[0i16; MAX_RANK]; size * size];
        let coroots = rs.positive_coroots();
        for src in 0..size {
            let row = src * size;
            dist[row + src] = 0;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(src as u32);
            while let Some(p) = queue.pop_front() {
                let dp = dist[row + p as usize];
                let wp = weights[row + p as usize];
                for e in &adjacency[p as usize] {
                    let q = e.target as usize;
                    let mut cand = wp;
                    if e.down {
                        for (c, co) in cand.iter_mut().zip(&coroots[e.root as usize].0) {
                            *c += *co as i16;
                        }
                    }
                    if dist[row + q] == u16::MAX {
                        dist[row + q] = dp + 1;
                        weights[row + q] = cand;
                        queue.push_back(e.target);
                    } else if dist[row + q] == dp + 1 && weights[row + q] != cand {
                        return Err(QbgError::WeightMismatch {
                            from: group.format_element(group.element_at(src)),
                            to: group.format_element(group.element_at(q)),
                        });
                    }
                }
            }
            if let Some(un) = (0..size).find(|&v| dist[row + v] == u16::MAX) {
                return Err(QbgError::NotStronglyConnected {
                    from: group.format_element(group.element_at(src)),
                    to: group.format_element(group.element_at(un)),
                });
            }
        }

        // All-downward distance to the identity: BFS over reversed down
        // edges from the identity.
        let mut rev_down: Vec<Vec<u32>> = vec![Vec::new(); size];
        for (src, edges) in adjacency.iter().enumerate() {
            for e in edges {
                if e.down {
                    rev_down[e.target as usize].push(src as u32);
                }
            }
        }
        let mut down_dist = vec![u32::MAX; size];
        down_dist[0] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(0u32);
        while let Some(v) = queue.pop_front() {
            for &p in &rev_down[v as usize] {
                if down_dist[p as usize] == u32::MAX {
                    down_dist[p as usize] = down_dist[v as usize] + 1;
                    queue.push_back(p);
                }
            }
        }
        // A reduced word gives an all-downward path, so this is always
        // finite.
        debug_assert!(down_dist.iter().all(|&d| d != u32::MAX));

        Ok(QuantumBruhatGraph {
            group,
            size,
            rank,
            adjacency,
            dist,
            weights,
            down_dist,
            num_edges,
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn num_vertices(&self) -> usize {
        self.size
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn edges_from(&self, w: WeylElement) -> Vec<QbgEdgeView> {
        let wi = self.group.element_index(w);
        self.adjacency[wi]
            .iter()
            .map(|e| self.view(wi, e))
            .collect()
    }

    pub fn all_edges(&self) -> impl Iterator<Item = QbgEdgeView> + '_ {
        (0..self.size).flat_map(move |wi| self.adjacency[wi].iter().map(move |e| self.view(wi, e)))
    }

    fn view(&self, source: usize, e: &CompactEdge) -> QbgEdgeView {
        let rs = self.group.root_system();
        let weight = if e.down {
            rs.positive_coroots()[e.root as usize].clone()
        } else {
            Coroot::zero(self.rank)
        };
        QbgEdgeView {
            source: self.group.element_at(source),
            target: self.group.element_at(e.target as usize),
            root_index: e.root as usize,
            direction: if e.down {
                EdgeDirection::Down
            } else {
                EdgeDirection::Up
            },
            weight,
        }
    }

    /// Minimal number of edges on a path `u → v`.
    pub fn distance(&self, u: WeylElement, v: WeylElement) -> u32 {
        let ui = self.group.element_index(u);
        let vi = self.group.element_index(v);
        self.dist[ui * self.size + vi] as u32
    }

    /// Coroot weight of any minimal path `u → v`; well defined because the
    /// builder validated that all minimal paths agree.
    pub fn min_path_weight(&self, u: WeylElement, v: WeylElement) -> Coroot {
        let ui = self.group.element_index(u);
        let vi = self.group.element_index(v);
        let w = &self.weights[ui * self.size + vi];
        Coroot(w[..self.rank].iter().map(|&c| c as i64).collect())
    }

    /// Minimal number of edges on an all-downward path `w → e`.
    pub fn downward_distance(&self, w: WeylElement) -> u32 {
        let wi = self.group.element_index(w);
        self.down_dist[wi]
    }

    /// Number of distinct minimal paths `u → v`.
    pub fn count_minimal_paths(&self, u: WeylElement, v: WeylElement) -> u128 {
        let ui = self.group.element_index(u);
        let vi = self.group.element_index(v);
        let row = ui * self.size;
        let d = self.dist[row + vi];
        let mut order: Vec<u32> = (0..self.size as u32)
            .filter(|&x| self.dist[row + x as usize] <= d)
            .collect();
        order.sort_by_key(|&x| self.dist[row + x as usize]);
        let mut count = vec![0u128; self.size];
        count[ui] = 1;
        for &p in &order {
            if count[p as usize] == 0 {
                continue;
            }
            let dp = self.dist[row + p as usize];
            for e in &self.adjacency[p as usize] {
                if self.dist[row + e.target as usize] == dp + 1 {
                    count[e.target as usize] += count[p as usize];
                }
            }
        }
        count[vi]
    }

    /// Weights of every minimal path `u → v`, one entry per path, by
    /// explicit depth-first enumeration. Exponential in the worst case; used
    /// as an independent oracle for the validated tables on small groups.
    pub fn enumerate_minimal_path_weights(&self, u: WeylElement, v: WeylElement) -> Vec<Coroot> {
        let ui = self.group.element_index(u);
        let vi = self.group.element_index(v);
        let mut out = Vec::new();
        let mut acc = vec![0i64; self.rank];
        self.dfs_paths(ui, vi, &mut acc, &mut out);
        out
    }

    fn dfs_paths(&self, p: usize, target: usize, acc: &mut Vec<i64>, out: &mut Vec<Coroot>) {
        if p == target && self.dist[p * self.size + target] == 0 {
            out.push(Coroot(acc.clone()));
            return;
        }
        let remaining = self.dist[p * self.size + target];
        for e in &self.adjacency[p] {
            let q = e.target as usize;
            if self.dist[q * self.size + target] + 1 == remaining {
                if e.down {
                    let co = &self.group.root_system().positive_coroots()[e.root as usize];
                    for (a, c) in acc.iter_mut().zip(&co.0) {
                        *a += c;
                    }
                }
                self.dfs_paths(q, target, acc, out);
                if e.down {
                    let co = &self.group.root_system().positive_coroots()[e.root as usize];
                    for (a, c) in acc.iter_mut().zip(&co.0) {
                        *a -= c;
                    }
                }
            }
        }
    }

    /// DOT export: vertices ranked by length (increasing upward), up edges
    /// blue, down edges red, every edge labeled by its root coefficients.
    pub fn export_dot(&self) -> String {
        let g = &self.group;
        let rs = g.root_system();
        let mut s = String::new();
        s.push_str("digraph quantum_bruhat_graph {\n");
        s.push_str("  rankdir=\"BT\";\n");
        s.push_str("  node [shape=plaintext];\n");
        for w in 0..self.size {
            let e = g.element_at(w);
            s.push_str(&format!("  n{} [label=\"{}\"];\n", w, g.format_element(e)));
        }
        let max_len = g.length(g.longest_element());
        for l in 0..=max_len {
            let layer: Vec<String> = (0..self.size)
                .filter(|&w| g.length(g.element_at(w)) == l)
                .map(|w| format!("n{w}"))
                .collect();
            s.push_str(&format!("  {{ rank=same; {}; }}\n", layer.join("; ")));
        }
        for (src, edges) in self.adjacency.iter().enumerate() {
            for e in edges {
                let root = &rs.positive_roots()[e.root as usize];
                let coeffs: Vec<String> = root.0.iter().map(|c| c.to_string()).collect();
                let (color, dir) = if e.down {
                    ("red", "down")
                } else {
                    ("blue", "up")
                };
                s.push_str(&format!(
                    "  n{} -> n{} [label=\"{}\", color=\"{}\", dir=\"{}\"];\n",
                    src,
                    e.target,
                    coeffs.join(","),
                    color,
                    dir
                ));
            }
        }
        s.push_str("}\n");
        s
    }

    /// JSON export with indices into the vertex list.
    pub fn export_json(&self) -> serde_json::Value {
        let g = &self.group;
        let rs = g.root_system();
        let vertices: Vec<serde_json::Value> = (0..self.size)
            .map(|w| g.element_to_json(g.element_at(w)))
            .collect();
        let mut edges = Vec::with_capacity(self.num_edges);
        for (src, adj) in self.adjacency.iter().enumerate() {
            for e in adj {
                let root = &rs.positive_roots()[e.root as usize];
                let weight = if e.down {
                    rs.positive_coroots()[e.root as usize].0.clone()
                } else {
                    vec![0; self.rank]
                };
                edges.push(serde_json::json!({
                    "src": src,
                    "dst": e.target,
                    "root": root.0,
                    "direction": if e.down { "down" } else { "up" },
                    "weight": weight,
                }));
            }
        }
        serde_json::json!({ "vertices": vertices, "edges": edges })
    }

    pub fn export_graph(&self, format: &str) -> Result<String, QbgError> {
        match format {
            "dot" => Ok(self.export_dot()),
            "json" => Ok(serde_json::to_string_pretty(&self.export_json()).unwrap()),
            other => Err(QbgError::UnknownFormat(other.to_string())),
        }
    }
}
