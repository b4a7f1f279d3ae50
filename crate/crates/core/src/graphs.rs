//! The finite ADE and affine ADE graphs as rooted bipartite multigraphs,
//! and root-based loop counting.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{family} requires parameter {requirement}, got {got}")]
    ParameterOutOfRange {
        family: FamilyTag,
        requirement: &'static str,
        got: usize,
    },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("adjacency matrix is not symmetric with zero diagonal")]
    NotSymmetric,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("root index {0} out of range")]
    BadRoot(usize),
}

/// The ten series of finite ADE and affine ADE diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    A,
    Atilde,
    D,
    Dtilde,
    E6,
    E7,
    E8,
    E6tilde,
    E7tilde,
    E8tilde,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 10] = [
        FamilyTag::A,
        FamilyTag::Atilde,
        FamilyTag::D,
        FamilyTag::Dtilde,
        FamilyTag::E6,
        FamilyTag::E7,
        FamilyTag::E8,
        FamilyTag::E6tilde,
        FamilyTag::E7tilde,
        FamilyTag::E8tilde,
    ];

    pub fn is_exceptional(self) -> bool {
        !matches!(
            self,
            FamilyTag::A | FamilyTag::Atilde | FamilyTag::D | FamilyTag::Dtilde
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::A => "A",
            FamilyTag::Atilde => "Atilde",
            FamilyTag::D => "D",
            FamilyTag::Dtilde => "Dtilde",
            FamilyTag::E6 => "E6",
            FamilyTag::E7 => "E7",
            FamilyTag::E8 => "E8",
            FamilyTag::E6tilde => "E6tilde",
            FamilyTag::E7tilde => "E7tilde",
            FamilyTag::E8tilde => "E8tilde",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))
    }
}

/// A concrete member of one of the ten series.
///
/// The parameter is the vertex count for `A`, `D` and `Atilde` (which
/// must be even), and the diagram index `n` of `D̃_n` (`n + 1` vertices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GraphFamily {
    A(usize),
    Atilde(usize),
    D(usize),
    Dtilde(usize),
    E6,
    E7,
    E8,
    E6tilde,
    E7tilde,
    E8tilde,
}

impl GraphFamily {
    /// Validated constructor; the parameter is ignored for the six
    /// exceptional tags.
    pub fn new(tag: FamilyTag, param: usize) -> Result<Self, GraphError> {
        let check = |ok: bool, requirement| {
            if ok {
                Ok(())
            } else {
                Err(GraphError::ParameterOutOfRange {
                    family: tag,
                    requirement,
                    got: param,
                })
            }
        };
        Ok(match tag {
            FamilyTag::A => {
                check(param >= 2, ">= 2")?;
                GraphFamily::A(param)
            }
            FamilyTag::Atilde => {
                check(param >= 2 && param % 2 == 0, "even and >= 2")?;
                GraphFamily::Atilde(param)
            }
            FamilyTag::D => {
                check(param >= 3, ">= 3")?;
                GraphFamily::D(param)
            }
            FamilyTag::Dtilde => {
                check(param >= 4, ">= 4")?;
                GraphFamily::Dtilde(param)
            }
            FamilyTag::E6 => GraphFamily::E6,
            FamilyTag::E7 => GraphFamily::E7,
            FamilyTag::E8 => GraphFamily::E8,
            FamilyTag::E6tilde => GraphFamily::E6tilde,
            FamilyTag::E7tilde => GraphFamily::E7tilde,
            FamilyTag::E8tilde => GraphFamily::E8tilde,
        })
    }

    pub fn tag(self) -> FamilyTag {
        match self {
            GraphFamily::A(_) => FamilyTag::A,
            GraphFamily::Atilde(_) => FamilyTag::Atilde,
            GraphFamily::D(_) => FamilyTag::D,
            GraphFamily::Dtilde(_) => FamilyTag::Dtilde,
            GraphFamily::E6 => FamilyTag::E6,
            GraphFamily::E7 => FamilyTag::E7,
            GraphFamily::E8 => FamilyTag::E8,
            GraphFamily::E6tilde => FamilyTag::E6tilde,
            GraphFamily::E7tilde => FamilyTag::E7tilde,
            GraphFamily::E8tilde => FamilyTag::E8tilde,
        }
    }

    pub fn param(self) -> Option<usize> {
        match self {
            GraphFamily::A(n)
            | GraphFamily::Atilde(n)
            | GraphFamily::D(n)
            | GraphFamily::Dtilde(n) => Some(n),
            _ => None,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            GraphFamily::A(n) | GraphFamily::Atilde(n) | GraphFamily::D(n) => n,
            GraphFamily::Dtilde(n) => n + 1,
            GraphFamily::E6 => 6,
            GraphFamily::E7 | GraphFamily::E6tilde => 7,
            GraphFamily::E8 | GraphFamily::E7tilde => 8,
            GraphFamily::E8tilde => 9,
        }
    }
}

/// Short label such as `A4`, `Dtilde6` or `E7`.
impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(n) => write!(f, "{}{}", self.tag(), n),
            None => write!(f, "{}", self.tag()),
        }
    }
}

/// Inverse of `Display`: `E7`, `A4`, `dtilde6`. `Etilde7` is accepted
/// for `E7tilde`.
impl FromStr for GraphFamily {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if let Some(k) = lower.strip_prefix("etilde") {
            if let Ok(tag) = format!("E{k}tilde").parse::<FamilyTag>() {
                return GraphFamily::new(tag, 0);
            }
        }
        if let Ok(tag) = s.parse::<FamilyTag>() {
            if tag.is_exceptional() {
                return GraphFamily::new(tag, 0);
            }
        }
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))?;
        let tag: FamilyTag = s[..split].parse()?;
        let param = s[split..]
            .parse()
            .map_err(|_| GraphError::UnknownFamily(s.to_string()))?;
        if tag.is_exceptional() {
            return Err(GraphError::UnknownFamily(s.to_string()));
        }
        GraphFamily::new(tag, param)
    }
}

/// Connected bipartite multigraph with a distinguished root of parity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBipartiteGraph {
    adjacency: Vec<Vec<u32>>,
    root: usize,
    parity: Vec<u8>,
}

impl RootedBipartiteGraph {
    /// Builds a graph from an edge list; repeated edges raise multiplicity.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(usize, usize)],
        root: usize,
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![vec![0u32; vertex_count]; vertex_count];
        for &(a, b) in edges {
            if a == b || a >= vertex_count || b >= vertex_count {
                return Err(GraphError::NotSymmetric);
            }
            adjacency[a][b] += 1;
            adjacency[b][a] += 1;
        }
        Self::from_adjacency(adjacency, root)
    }

    pub fn from_adjacency(adjacency: Vec<Vec<u32>>, root: usize) -> Result<Self, GraphError> {
        let n = adjacency.len();
        if root >= n {
            return Err(GraphError::BadRoot(root));
        }
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n || row[i] != 0 || (0..n).any(|j| row[j] != adjacency[j][i]) {
                return Err(GraphError::NotSymmetric);
            }
        }
        let mut parity = vec![u8::MAX; n];
        parity[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (w, &m) in adjacency[v].iter().enumerate() {
                if m == 0 {
                    continue;
                }
                if parity[w] == u8::MAX {
                    parity[w] = 1 - parity[v];
                    queue.push_back(w);
                } else if parity[w] == parity[v] {
                    return Err(GraphError::NotBipartite);
                }
            }
        }
        if parity.contains(&u8::MAX) {
            return Err(GraphError::Disconnected);
        }
        Ok(RootedBipartiteGraph {
            adjacency,
            root,
            parity,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    /// Degree counted with multiplicity.
    pub fn degree(&self, v: usize) -> u32 {
        self.adjacency[v].iter().sum()
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.adjacency
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(&m, x)| m != 0 && !x.is_zero())
                    .map(|(&m, x)| x * m)
                    .sum()
            })
            .collect()
    }

    /// `c_k = (L^k)_{root,root}` for `k = 0..=order`, with `L = M M^T`.
    ///
    /// Iterates the full adjacency matrix twice per step from the root
    /// indicator, which equals applying `L` on the root's parity class.
    pub fn loop_counts(&self, order: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.vertex_count()];
        v[self.root] = BigInt::one();
        let mut out = Vec::with_capacity(order + 1);
        out.push(BigInt::one());
        for _ in 0..order {
            v = self.apply(&self.apply(&v));
            out.push(v[self.root].clone());
        }
        out
    }

    /// Closed walks of length `len` at the root in the full graph.
    pub fn closed_walks(&self, len: usize) -> BigInt {
        let mut v = vec![BigInt::zero(); self.vertex_count()];
        v[self.root] = BigInt::one();
        for _ in 0..len {
            v = self.apply(&v);
        }
        v[self.root].clone()
    }
}

/// Appends a path of `len` new vertices hanging from `from`; returns the
/// far end.
fn arm(edges: &mut Vec<(usize, usize)>, next: &mut usize, from: usize, len: usize) -> usize {
    let mut prev = from;
    for _ in 0..len {
        edges.push((prev, *next));
        prev = *next;
        *next += 1;
    }
    prev
}

/// Star-shaped tree: a branch vertex with arms of the given lengths,
/// rooted at the far end of the first arm.
fn star(arms: &[usize]) -> RootedBipartiteGraph {
    let mut edges = Vec::new();
    let mut next = 1;
    let ends: Vec<usize> = arms
        .iter()
        .map(|&len| arm(&mut edges, &mut next, 0, len))
        .collect();
    RootedBipartiteGraph::from_edges(next, &edges, ends[0]).expect("star is a tree")
}

/// Builds the diagram for `family`, rooted at the marked vertex.
pub fn build_ade(family: GraphFamily) -> Result<RootedBipartiteGraph, GraphError> {
    let family = GraphFamily::new(family.tag(), family.param().unwrap_or(0))?;
    let g = match family {
        GraphFamily::A(n) => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            RootedBipartiteGraph::from_edges(n, &edges, 0)?
        }
        GraphFamily::Atilde(n) => {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            // for n = 2 the two cycle edges coincide into a double edge
            RootedBipartiteGraph::from_edges(n, &edges, 0)?
        }
        GraphFamily::D(n) => {
            // path 0..n-3, two tips on vertex n-3
            let spine = n - 2;
            let mut edges: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
            edges.push((spine - 1, spine));
            edges.push((spine - 1, spine + 1));
            RootedBipartiteGraph::from_edges(n, &edges, 0)?
        }
        GraphFamily::Dtilde(n) => {
            // central path 0..n-4 with a two-tip fork at each end
            let spine = n - 3;
            let mut edges: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
            edges.push((0, spine));
            edges.push((0, spine + 1));
            edges.push((spine - 1, spine + 2));
            edges.push((spine - 1, spine + 3));
            RootedBipartiteGraph::from_edges(n + 1, &edges, spine)?
        }
        GraphFamily::E6 => star(&[2, 2, 1]),
        GraphFamily::E7 => star(&[3, 2, 1]),
        GraphFamily::E8 => star(&[4, 2, 1]),
        GraphFamily::E6tilde => star(&[2, 2, 2]),
        GraphFamily::E7tilde => star(&[3, 3, 1]),
        GraphFamily::E8tilde => star(&[5, 2, 1]),
    };
    Ok(g)
}

/// Convenience wrapper: loop counts of a family's diagram.
pub fn loop_counts(g: &RootedBipartiteGraph, order: usize) -> Vec<BigInt> {
    g.loop_counts(order)
}
