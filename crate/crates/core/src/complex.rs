//! Pure simplicial 2-complexes.
//!
//! A [`SimplicialComplex`] is given by its triangles; the edge set is always the
//! closure of the triangle set and is never stored independently. Triangles and
//! edges are kept in lexicographic order, which fixes the layout of every
//! boundary matrix and the vertex order used by cup products downstream.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::union_find::UnionFind;

pub type Edge = [usize; 2];
pub type Triangle = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("triangle {0:?} repeats a vertex")]
    DegenerateTriangle([usize; 3]),
    #[error("triangle {0:?} appears more than once")]
    DuplicateTriangle([usize; 3]),
    #[error("vertex index {index} out of range for {vertex_count} vertices")]
    IndexOutOfRange { index: usize, vertex_count: usize },
    #[error("vertex {0} lies in no triangle")]
    NonPure(usize),
}

/// Sorts a vertex pair.
pub fn edge(a: usize, b: usize) -> Edge {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Sorts a vertex triple.
pub fn triangle(a: usize, b: usize, c: usize) -> Triangle {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// A finite, pure 2-dimensional simplicial complex.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    triangles: Vec<Triangle>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<Edge, usize>,
    edge_triangles: Vec<Vec<usize>>,
    vertex_triangles: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.triangles == other.triangles
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertex_count", &self.vertex_count)
            .field("triangles", &self.triangles)
            .finish()
    }
}

impl SimplicialComplex {
    /// Validates raw vertex triples and builds the canonical complex.
    pub fn new<I>(vertex_count: usize, raw: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut triangles = Vec::new();
        for t in raw {
            for &index in &t {
                if index >= vertex_count {
                    return Err(ComplexError::IndexOutOfRange { index, vertex_count });
                }
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(ComplexError::DegenerateTriangle(t));
            }
            triangles.push(triangle(t[0], t[1], t[2]));
        }
        triangles.sort_unstable();
        if let Some(w) = triangles.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateTriangle(w[0]));
        }

        let mut vertex_triangles = vec![Vec::new(); vertex_count];
        let mut edge_set = BTreeSet::new();
        for (ti, t) in triangles.iter().enumerate() {
            for &v in t {
                vertex_triangles[v].push(ti);
            }
            edge_set.insert([t[0], t[1]]);
            edge_set.insert([t[0], t[2]]);
            edge_set.insert([t[1], t[2]]);
        }
        if let Some(v) = vertex_triangles.iter().position(Vec::is_empty) {
            return Err(ComplexError::NonPure(v));
        }
        let edges: Vec<Edge> = edge_set.into_iter().collect();
        let edge_lookup: HashMap<Edge, usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut edge_triangles = vec![Vec::new(); edges.len()];
        for (ti, t) in triangles.iter().enumerate() {
            for e in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
                edge_triangles[edge_lookup[&e]].push(ti);
            }
        }
        Ok(Self {
            vertex_count,
            triangles,
            edges,
            edge_lookup,
            edge_triangles,
            vertex_triangles,
        })
    }

    pub fn empty() -> Self {
        Self::new(0, []).expect("empty complex is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    /// Index of the edge `{a, b}` in the canonical edge order.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_lookup.get(&edge(a, b)).copied()
    }

    pub fn triangle_index(&self, t: Triangle) -> Option<usize> {
        self.triangles.binary_search(&triangle(t[0], t[1], t[2])).ok()
    }

    /// Indices of the triangles containing edge `e` (by edge index).
    pub fn triangles_on_edge(&self, e: usize) -> &[usize] {
        &self.edge_triangles[e]
    }

    /// Number of triangles containing each edge, in edge order.
    pub fn edge_degrees(&self) -> Vec<usize> {
        self.edge_triangles.iter().map(Vec::len).collect()
    }

    pub fn triangles_at_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    /// Sorted vertices adjacent to `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.vertex_triangles[v]
            .iter()
            .flat_map(|&t| self.triangles[t])
            .filter(|&w| w != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Link of `v`: one arc per triangle containing `v`.
    pub fn link(&self, v: usize) -> LinkGraph {
        let arcs: Vec<[usize; 2]> = self.vertex_triangles[v]
            .iter()
            .map(|&t| {
                let tri = self.triangles[t];
                let mut rest = tri.iter().copied().filter(|&w| w != v);
                let a = rest.next().unwrap();
                let b = rest.next().unwrap();
                [a, b]
            })
            .collect();
        LinkGraph {
            center: v,
            nodes: self.neighbors(v),
            arcs,
        }
    }

    pub fn classify_link(&self, v: usize) -> LinkType {
        self.link(v).classify()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e[0], e[1]);
        }
        uf.groups()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// True when every edge lies in exactly two triangles and every link is a cycle.
    pub fn is_closed_surface(&self) -> bool {
        self.edge_triangles.iter().all(|t| t.len() == 2)
            && (0..self.vertex_count).all(|v| self.classify_link(v) == LinkType::Cycle)
    }

    /// True when every vertex link is a cycle or a path.
    pub fn is_surface(&self) -> bool {
        (0..self.vertex_count)
            .all(|v| matches!(self.classify_link(v), LinkType::Cycle | LinkType::Path))
    }

    /// Standard barycentric subdivision.
    ///
    /// Vertex numbering: original vertices keep their index, the barycenter of
    /// edge `e` is `V + e`, and the barycenter of triangle `t` is `V + E + t`.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let v = self.vertex_count;
        let e = self.edges.len();
        let mut out = Vec::with_capacity(6 * self.triangles.len());
        for (ti, t) in self.triangles.iter().enumerate() {
            let center = v + e + ti;
            for (i, &corner) in t.iter().enumerate() {
                for (j, &other) in t.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let mid = v + self.edge_lookup[&edge(corner, other)];
                    out.push([corner, mid, center]);
                }
            }
        }
        SimplicialComplex::new(v + e + self.triangles.len(), out)
            .expect("barycentric subdivision of a valid complex is valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let off = self.vertex_count;
        let tris = self
            .triangles
            .iter()
            .copied()
            .chain(other.triangles.iter().map(|t| [t[0] + off, t[1] + off, t[2] + off]));
        SimplicialComplex::new(off + other.vertex_count, tris).expect("disjoint union is valid")
    }
}

/// Link of a vertex as a graph on its neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGraph {
    pub center: usize,
    pub nodes: Vec<usize>,
    pub arcs: Vec<[usize; 2]>,
}

/// Shape of a vertex link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkType {
    /// Interior point of a surface.
    Cycle,
    /// Boundary or collar-circle point.
    Path,
    /// Two degree-3 nodes joined by three internally disjoint paths: a tripod-circle point.
    Theta,
    Other,
}

impl fmt::Display for LinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LinkType::Cycle => "cycle",
            LinkType::Path => "path",
            LinkType::Theta => "theta",
            LinkType::Other => "other",
        };
        f.write_str(s)
    }
}

impl LinkGraph {
    fn adjacency(&self) -> HashMap<usize, Vec<usize>> {
        let mut adj: HashMap<usize, Vec<usize>> =
            self.nodes.iter().map(|&n| (n, Vec::new())).collect();
        for a in &self.arcs {
            adj.get_mut(&a[0]).unwrap().push(a[1]);
            adj.get_mut(&a[1]).unwrap().push(a[0]);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    fn is_connected(&self, adj: &HashMap<usize, Vec<usize>>) -> bool {
        let Some(&start) = self.nodes.first() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            for &m in &adj[&n] {
                if seen.insert(m) {
                    stack.push(m);
                }
            }
        }
        seen.len() == self.nodes.len()
    }

    pub fn classify(&self) -> LinkType {
        if self.arcs.is_empty() {
            return LinkType::Other;
        }
        let adj = self.adjacency();
        if !self.is_connected(&adj) {
            return LinkType::Other;
        }
        let degree = |n: &usize| adj[n].len();
        let count = |d: usize| self.nodes.iter().filter(|n| degree(n) == d).count();
        let (d1, d2, d3) = (count(1), count(2), count(3));
        let n = self.nodes.len();
        if d2 == n {
            return LinkType::Cycle;
        }
        if d1 == 2 && d1 + d2 == n {
            return LinkType::Path;
        }
        if d3 == 2 && d2 + d3 == n {
            // Either a theta or a dumbbell; walk the three branches out of one
            // degree-3 node and require all of them to end at the other one.
            let hubs: Vec<usize> = self.nodes.iter().copied().filter(|n| degree(n) == 3).collect();
            let (a, b) = (hubs[0], hubs[1]);
            let all_reach_b = adj[&a].iter().all(|&first| {
                let (mut prev, mut cur) = (a, first);
                while degree(&cur) == 2 {
                    let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
                    prev = cur;
                    cur = next;
                }
                cur == b
            });
            if all_reach_b {
                return LinkType::Theta;
            }
        }
        LinkType::Other
    }

    /// For a theta link with hubs `a` and `b`, the three arc-paths from `a` to `b`,
    /// each given as its node sequence starting at `a`.
    pub fn theta_paths(&self, a: usize, b: usize) -> Option<Vec<Vec<usize>>> {
        let adj = self.adjacency();
        if adj.get(&a)?.len() != 3 || adj.get(&b)?.len() != 3 {
            return None;
        }
        let mut paths = Vec::new();
        for &first in &adj[&a] {
            let mut path = vec![a, first];
            let (mut prev, mut cur) = (a, first);
            while cur != b {
                let nbrs = &adj[&cur];
                if nbrs.len() != 2 {
                    return None;
                }
                let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                prev = cur;
                cur = next;
                path.push(cur);
            }
            paths.push(path);
        }
        Some(paths)
    }
}
