//! Finite acyclic quivers and the Euler form.
//!
//! Vertices are `0..n` internally; the JSON interchange format is 1-indexed.
//! The engine only accepts quivers whose underlying graph is a disjoint union
//! of simply-laced Dynkin diagrams (types A, D, E), which is exactly the
//! representation-finite simply-laced case.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum QuiverError {
    #[error("arrow {arrow} references vertex {vertex} outside 1..={n}")]
    VertexOutOfRange {
        arrow: usize,
        vertex: usize,
        n: usize,
    },
    #[error("loop at vertex {0}")]
    LoopAt(usize),
    #[error("directed cycle through vertices {0:?}")]
    DirectedCycle(Vec<usize>),
    #[error("vertices {0} and {1} are joined by more than one edge")]
    MultipleEdge(usize, usize),
    #[error("underlying graph has a cycle through component {0:?}")]
    UnderlyingCycle(Vec<usize>),
    #[error("vertex {vertex} has degree {degree} > 3")]
    DegreeTooLarge { vertex: usize, degree: usize },
    #[error("component {0:?} has more than one branch vertex")]
    MultipleBranchVertices(Vec<usize>),
    #[error("branch vertex {vertex} has arm lengths {arms:?}, not a Dynkin shape")]
    BadBranchArms { vertex: usize, arms: Vec<usize> },
    #[error("malformed quiver JSON: {0}")]
    Malformed(String),
}

impl QuiverError {
    /// Machine-readable form: `{"error": ..., "witness": ...}`.
    pub fn to_diagnostic(&self) -> serde_json::Value {
        let (code, witness) = match self {
            QuiverError::VertexOutOfRange { arrow, vertex, n } => (
                "vertex out of range",
                serde_json::json!({"arrow": arrow, "vertex": vertex, "vertices": n}),
            ),
            QuiverError::LoopAt(v) => ("loop", serde_json::json!(v)),
            QuiverError::DirectedCycle(vs) => ("cycle", serde_json::json!(vs)),
            QuiverError::MultipleEdge(a, b) => ("multiple edge", serde_json::json!([a, b])),
            QuiverError::UnderlyingCycle(vs) => {
                ("non-Dynkin: underlying cycle", serde_json::json!(vs))
            }
            QuiverError::DegreeTooLarge { vertex, degree } => (
                "non-Dynkin: degree too large",
                serde_json::json!({"vertex": vertex, "degree": degree}),
            ),
            QuiverError::MultipleBranchVertices(vs) => {
                ("non-Dynkin: several branch vertices", serde_json::json!(vs))
            }
            QuiverError::BadBranchArms { vertex, arms } => (
                "non-Dynkin: branch arms",
                serde_json::json!({"vertex": vertex, "arms": arms}),
            ),
            QuiverError::Malformed(msg) => ("malformed input", serde_json::json!(msg)),
        };
        serde_json::json!({"error": code, "witness": witness})
    }
}

/// Simply-laced Dynkin types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    /// Largest coefficient appearing in the highest root, which bounds the
    /// coordinates of every positive root.
    pub fn max_root_coefficient(self) -> i64 {
        match self {
            DynkinType::A(_) => 1,
            DynkinType::D(_) => 2,
            DynkinType::E(6) => 3,
            DynkinType::E(7) => 4,
            DynkinType::E(8) => 6,
            DynkinType::E(n) => unreachable!("E{n} is not a Dynkin type"),
        }
    }

    pub fn positive_root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(n) => unreachable!("E{n} is not a Dynkin type"),
        }
    }
}

impl std::fmt::Display for DynkinType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// One connected component of the underlying Dynkin diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinComponent {
    pub kind: DynkinType,
    /// Vertices of the component, ascending.
    pub vertices: Vec<usize>,
}

/// Dimension vector, in simple-root coordinates. Signed entries so that
/// reflections and differences stay in one type; representations require
/// all entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> DimVector {
        DimVector(vec![0; n])
    }

    pub fn simple(n: usize, v: usize) -> DimVector {
        let mut d = vec![0; n];
        d[v] = 1;
        DimVector(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise order: `self <= other` iff the difference is nonnegative.
    pub fn leq(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn as_dims(&self) -> Vec<usize> {
        assert!(self.is_nonneg(), "dimension vector with negative entry");
        self.0.iter().map(|&x| x as usize).collect()
    }
}

/// A finite quiver: `n` vertices and a list of arrows. Acyclicity and the
/// Dynkin restriction are enforced by [`Quiver::validate`], not at
/// construction, so that diagnostics can name the offending structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl Quiver {
    /// `arrows` use 0-based vertex ids. Only range errors are caught here.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Quiver, QuiverError> {
        for (idx, &(s, t)) in arrows.iter().enumerate() {
            for v in [s, t] {
                if v >= n {
                    return Err(QuiverError::VertexOutOfRange {
                        arrow: idx + 1,
                        vertex: v + 1,
                        n,
                    });
                }
            }
        }
        Ok(Quiver { n, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Arrow indices ending at `v`.
    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].1 == v)
            .collect()
    }

    /// Arrow indices starting at `v`.
    pub fn arrows_out_of(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].0 == v)
            .collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    /// Same vertices, every arrow reversed, arrow order preserved.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Reverse exactly the arrows incident to `v`, keeping arrow order.
    pub fn reflect_at(&self, v: usize) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
                .collect(),
        }
    }

    /// Euler form `<d, e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j`.
    /// On a hereditary algebra this computes `dim Hom - dim Ext`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> i64 {
        assert_eq!(d.len(), self.n, "dimension vector length mismatch");
        assert_eq!(e.len(), self.n, "dimension vector length mismatch");
        let mut acc: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
        for &(s, t) in &self.arrows {
            acc -= d.0[s] * e.0[t];
        }
        acc
    }

    /// The Tits form `q(d) = <d, d>`; positive roots are its value-1 vectors.
    pub fn quadratic_form(&self, d: &DimVector) -> i64 {
        self.euler_form(d, d)
    }

    /// Connected components of the underlying graph, each ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(s, t) in &self.arrows {
            adj[s].push(t);
            adj[t].push(s);
        }
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Accept iff loop-free, acyclic as a directed graph, and the underlying
    /// graph is a disjoint union of simply-laced Dynkin diagrams. Returns the
    /// component classification used for root generation.
    pub fn validate(&self) -> Result<Vec<DynkinComponent>, QuiverError> {
        for &(s, t) in &self.arrows {
            if s == t {
                return Err(QuiverError::LoopAt(s + 1));
            }
        }
        if let Some(cycle) = self.find_directed_cycle() {
            return Err(QuiverError::DirectedCycle(
                cycle.into_iter().map(|v| v + 1).collect(),
            ));
        }
        // simple underlying graph
        let mut edges: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|&(s, t)| (s.min(t), s.max(t)))
            .collect();
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(QuiverError::MultipleEdge(w[0].0 + 1, w[0].1 + 1));
            }
        }
        let mut degree = vec![0usize; self.n];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut out = Vec::new();
        for comp in self.components() {
            let comp_edges: Vec<(usize, usize)> = edges
                .iter()
                .copied()
                .filter(|&(a, _)| comp.contains(&a))
                .collect();
            let display: Vec<usize> = comp.iter().map(|&v| v + 1).collect();
            if comp_edges.len() + 1 != comp.len() {
                // connected with too many edges: contains a cycle
                return Err(QuiverError::UnderlyingCycle(display));
            }
            for &v in &comp {
                if degree[v] > 3 {
                    return Err(QuiverError::DegreeTooLarge {
                        vertex: v + 1,
                        degree: degree[v],
                    });
                }
            }
            let branches: Vec<usize> = comp.iter().copied().filter(|&v| degree[v] == 3).collect();
            let kind = match branches.len() {
                0 => DynkinType::A(comp.len()),
                1 => {
                    let b = branches[0];
                    let mut arms = arm_lengths(&comp_edges, b);
                    arms.sort_unstable();
                    match arms.as_slice() {
                        [1, 1, m] => DynkinType::D(m + 3),
                        [1, 2, 2] => DynkinType::E(6),
                        [1, 2, 3] => DynkinType::E(7),
                        [1, 2, 4] => DynkinType::E(8),
                        _ => {
                            return Err(QuiverError::BadBranchArms {
                                vertex: b + 1,
                                arms,
                            })
                        }
                    }
                }
                _ => return Err(QuiverError::MultipleBranchVertices(display)),
            };
            out.push(DynkinComponent {
                kind,
                vertices: comp,
            });
        }
        Ok(out)
    }

    fn find_directed_cycle(&self) -> Option<Vec<usize>> {
        // iterative DFS with colors; reconstructs the cycle from the stack
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Grey,
            Black,
        }
        let mut out_adj = vec![Vec::new(); self.n];
        for &(s, t) in &self.arrows {
            out_adj[s].push(t);
        }
        let mut color = vec![Color::White; self.n];
        for root in 0..self.n {
            if color[root] != Color::White {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            color[root] = Color::Grey;
            while let Some(&(v, i)) = stack.last() {
                if i < out_adj[v].len() {
                    stack.last_mut().unwrap().1 += 1;
                    let w = out_adj[v][i];
                    match color[w] {
                        Color::White => {
                            color[w] = Color::Grey;
                            stack.push((w, 0));
                        }
                        Color::Grey => {
                            let pos = stack.iter().position(|&(u, _)| u == w).unwrap();
                            return Some(stack[pos..].iter().map(|&(u, _)| u).collect());
                        }
                        Color::Black => {}
                    }
                } else {
                    color[v] = Color::Black;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Parse the 1-indexed interchange format
    /// `{"vertices": n, "arrows": [[s, t], ...]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Quiver, QuiverError> {
        let parsed: QuiverJson = serde_json::from_value(value.clone())
            .map_err(|e| QuiverError::Malformed(e.to_string()))?;
        let mut arrows = Vec::with_capacity(parsed.arrows.len());
        for (idx, &[s, t]) in parsed.arrows.iter().enumerate() {
            for v in [s, t] {
                if v < 1 || v > parsed.vertices {
                    return Err(QuiverError::VertexOutOfRange {
                        arrow: idx + 1,
                        vertex: v,
                        n: parsed.vertices,
                    });
                }
            }
            arrows.push((s - 1, t - 1));
        }
        Ok(Quiver {
            n: parsed.vertices,
            arrows,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.n,
            "arrows": self.arrows.iter().map(|&(s, t)| [s + 1, t + 1]).collect::<Vec<_>>(),
        })
    }
}

/// Lengths of the three paths hanging off a degree-3 vertex in a tree.
fn arm_lengths(edges: &[(usize, usize)], branch: usize) -> Vec<usize> {
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut arms = Vec::new();
    for &start in adj.get(&branch).map(|v| v.as_slice()).unwrap_or(&[]) {
        let mut len = 1;
        let mut prev = branch;
        let mut cur = start;
        loop {
            let next: Vec<usize> = adj
                .get(&cur)
                .map(|ns| ns.iter().copied().filter(|&w| w != prev).collect())
                .unwrap_or_default();
            match next.as_slice() {
                [] => break,
                [w] => {
                    len += 1;
                    prev = cur;
                    cur = *w;
                }
                // a second branch vertex on this arm; caller reports it
                _ => break,
            }
        }
        arms.push(len);
    }
    arms
}
