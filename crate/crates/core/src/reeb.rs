//! Reeb graphs of PL functions on closed triangulated surfaces.
//!
//! [`reeb_graph`] sweeps the vertices upward and follows contours through the
//! triangles crossing each level. [`midlevel_reeb_graph`] is the brute-force
//! construction from level sets at midpoints between consecutive values.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReebError {
    #[error("complex is not a closed surface (vertex {0} has a non-cycle link)")]
    NotClosedSurface(usize),
    #[error("vertices {0} and {1} have the same value")]
    DuplicateValues(usize, usize),
    #[error("{found} values for {expected} vertices")]
    ValueCount { expected: usize, found: usize },
    #[error("value at vertex {0} is not finite")]
    NonFinite(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReebNode {
    pub vertex: usize,
    pub value: f64,
    /// Components of the lower and upper link of the vertex.
    pub lower: usize,
    pub upper: usize,
}

/// Arc between two nodes, `lower` below `upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReebEdge {
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReebGraph {
    pub nodes: Vec<ReebNode>,
    pub edges: Vec<ReebEdge>,
}

impl ReebGraph {
    pub fn value_interval(&self, e: ReebEdge) -> (f64, f64) {
        (self.nodes[e.lower].value, self.nodes[e.upper].value)
    }

    pub fn degree(&self, node: usize) -> (usize, usize) {
        let down = self.edges.iter().filter(|e| e.upper == node).count();
        let up = self.edges.iter().filter(|e| e.lower == node).count();
        (down, up)
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.nodes.len());
        for e in &self.edges {
            uf.union(e.lower, e.upper);
        }
        uf.groups().len()
    }

    /// Nodes with one arc below and one above are merged into their arcs.
    pub fn suppress_regular(&self) -> ReebGraph {
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.edges.iter().enumerate() {
            up[e.lower].push(i);
            down[e.upper].push(i);
        }
        let keep: Vec<bool> = (0..self.nodes.len())
            .map(|n| !(down[n].len() == 1 && up[n].len() == 1))
            .collect();
        let mut index = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (n, node) in self.nodes.iter().enumerate() {
            if keep[n] {
                index[n] = nodes.len();
                nodes.push(*node);
            }
        }
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !keep[e.lower] {
                continue;
            }
            let mut cur = i;
            while !keep[self.edges[cur].upper] {
                cur = up[self.edges[cur].upper][0];
            }
            edges.push(ReebEdge {
                lower: index[e.lower],
                upper: index[self.edges[cur].upper],
            });
        }
        // chains of regular nodes closing into a loop have no kept node; a closed
        // surface never produces one
        edges.sort();
        ReebGraph { nodes, edges }
    }

    /// Sorted node vertices and sorted arcs as vertex pairs: equal keys mean
    /// isomorphic value-labeled graphs.
    pub fn canonical_key(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut vs: Vec<usize> = self.nodes.iter().map(|n| n.vertex).collect();
        vs.sort_unstable();
        let mut es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (self.nodes[e.lower].vertex, self.nodes[e.upper].vertex))
            .collect();
        es.sort_unstable();
        (vs, es)
    }

    /// Same graph after suppressing regular nodes on both sides.
    pub fn equivalent(&self, other: &ReebGraph) -> bool {
        self.suppress_regular().canonical_key() == other.suppress_regular().canonical_key()
    }
}

impl fmt::Display for ReebGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes {}", self.nodes.len())?;
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(
                f,
                "node {i} vertex {} value {:?} lower {} upper {}",
                n.vertex, n.value, n.lower, n.upper
            )?;
        }
        writeln!(f, "edges {}", self.edges.len())?;
        for e in &self.edges {
            writeln!(f, "edge {} {}", e.lower, e.upper)?;
        }
        write!(f, "betti1 {}", reeb_betti1(self))
    }
}

/// Cycle rank `E - V + C`.
pub fn reeb_betti1(g: &ReebGraph) -> usize {
    g.edges.len() + g.component_count() - g.nodes.len()
}

fn check_input(k: &SimplicialComplex, values: &[f64]) -> Result<Vec<usize>, ReebError> {
    if values.len() != k.vertex_count() {
        return Err(ReebError::ValueCount {
            expected: k.vertex_count(),
            found: values.len(),
        });
    }
    if let Some(v) = values.iter().position(|x| !x.is_finite()) {
        return Err(ReebError::NonFinite(v));
    }
    if let Some(v) = (0..k.vertex_count()).find(|&v| k.classify_link(v) != crate::LinkType::Cycle) {
        return Err(ReebError::NotClosedSurface(v));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    for w in order.windows(2) {
        if values[w[0]] == values[w[1]] {
            return Err(ReebError::DuplicateValues(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(order)
}

/// Components of the lower and upper link of `v`.
pub fn link_components(k: &SimplicialComplex, values: &[f64], v: usize) -> (usize, usize) {
    let link = k.link(v);
    let pos: HashMap<usize, usize> = link.nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let count = |lower: bool| {
        let side = |n: usize| (values[n] < values[v]) == lower;
        let mut uf = UnionFind::new(link.nodes.len());
        for a in &link.arcs {
            if side(a[0]) && side(a[1]) {
                uf.union(pos[&a[0]], pos[&a[1]]);
            }
        }
        let mut roots: Vec<usize> = link
            .nodes
            .iter()
            .filter(|&&n| side(n))
            .map(|&n| uf.find(pos[&n]))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };
    (count(true), count(false))
}

pub fn reeb_graph(k: &SimplicialComplex, values: &[f64]) -> Result<ReebGraph, ReebError> {
    let order = check_input(k, values)?;
    let mut rank = vec![0; values.len()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    // Arc carried by each crossing edge of the current level.
    let mut arc_of_edge: HashMap<usize, usize> = HashMap::new();
    // Arcs are open until an upper node closes them.
    let mut arc_start: Vec<usize> = Vec::new();
    let mut graph = ReebGraph::default();
    let edge_id = |a: usize, b: usize| k.edge_index(a, b).unwrap();
    for &v in &order {
        let (lower, upper) = link_components(k, values, v);
        let nbrs = k.neighbors(v);
        let mut incoming: Vec<usize> = Vec::new();
        for &u in nbrs.iter().filter(|&&u| rank[u] < rank[v]) {
            if let Some(a) = arc_of_edge.remove(&edge_id(u, v)) {
                incoming.push(a);
            }
        }
        incoming.sort_unstable();
        incoming.dedup();
        let new_edges: Vec<usize> = nbrs
            .iter()
            .filter(|&&w| rank[w] > rank[v])
            .map(|&w| edge_id(v, w))
            .collect();
        for &e in &new_edges {
            arc_of_edge.insert(e, usize::MAX);
        }
        // contours just above v that contain a new edge
        let contours = follow_contours(k, &rank, rank[v], &new_edges);
        if lower == 1 && upper == 1 && incoming.len() == 1 && contours.len() == 1 {
            for &e in &contours[0] {
                arc_of_edge.insert(e, incoming[0]);
            }
            continue;
        }
        let node = graph.nodes.len();
        graph.nodes.push(ReebNode {
            vertex: v,
            value: values[v],
            lower,
            upper,
        });
        for a in incoming {
            graph.edges.push(ReebEdge {
                lower: arc_start[a],
                upper: node,
            });
        }
        for contour in contours {
            let a = arc_start.len();
            arc_start.push(node);
            for e in contour {
                arc_of_edge.insert(e, a);
            }
        }
    }
    graph.edges.sort();
    Ok(graph)
}

/// Crossing edges just above the vertex of rank `level`, grouped into the level-set
/// components reachable from `seeds`.
fn follow_contours(k: &SimplicialComplex, rank: &[usize], level: usize, seeds: &[usize]) -> Vec<Vec<usize>> {
    let crossing = |e: usize| {
        let [a, b] = k.edges()[e];
        (rank[a] <= level) != (rank[b] <= level)
    };
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &s in seeds {
        if label.contains_key(&s) {
            continue;
        }
        let id = out.len();
        let mut comp = vec![s];
        label.insert(s, id);
        let mut queue = VecDeque::from([s]);
        while let Some(e) = queue.pop_front() {
            for &t in k.triangles_on_edge(e) {
                let tri = k.triangles()[t];
                for (a, b) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
                    let f = k.edge_index(a, b).unwrap();
                    if f != e && crossing(f) && !label.contains_key(&f) {
                        label.insert(f, id);
                        comp.push(f);
                        queue.push_back(f);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Brute-force construction: level-set components at every midpoint between
/// consecutive values, linked through the vertex levels between them. Every vertex
/// becomes a node; compare after [`ReebGraph::suppress_regular`].
pub fn midlevel_reeb_graph(k: &SimplicialComplex, values: &[f64]) -> Result<ReebGraph, ReebError> {
    let order = check_input(k, values)?;
    let n = order.len();
    // slice s lies between the values of order[s] and order[s + 1]
    let slices: Vec<(Vec<usize>, usize)> = (0..n.saturating_sub(1))
        .map(|s| {
            let t = (values[order[s]] + values[order[s + 1]]) / 2.0;
            level_components(k, values, t)
        })
        .collect();
    let mut graph = ReebGraph::default();
    for &v in &order {
        let (lower, upper) = link_components(k, values, v);
        graph.nodes.push(ReebNode {
            vertex: v,
            value: values[v],
            lower,
            upper,
        });
    }
    // component (slice, id) -> node it started from
    let mut start: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for r in 0..n {
        let v = order[r];
        let touches = |slice: &(Vec<usize>, usize)| -> Vec<usize> {
            let mut ids: Vec<usize> = k
                .neighbors(v)
                .into_iter()
                .map(|w| slice.0[k.edge_index(v, w).unwrap()])
                .filter(|&c| c != usize::MAX)
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        };
        if r > 0 {
            let below = &slices[r - 1];
            let hit = touches(below);
            for &c in &hit {
                graph.edges.push(ReebEdge {
                    lower: start[&(r - 1, c)],
                    upper: r,
                });
            }
            if r < n - 1 {
                // untouched components continue with the same crossing edges
                let above = &slices[r];
                for c in 0..below.1 {
                    if hit.contains(&c) {
                        continue;
                    }
                    let e = below.0.iter().position(|&x| x == c).unwrap();
                    start.insert((r, above.0[e]), start[&(r - 1, c)]);
                }
            }
        }
        if r < n - 1 {
            for c in touches(&slices[r]) {
                start.insert((r, c), r);
            }
        }
    }
    graph.edges.sort();
    Ok(graph)
}

/// Component id of each edge crossing the level `t` (`usize::MAX` if not crossing),
/// and the number of components.
fn level_components(k: &SimplicialComplex, values: &[f64], t: f64) -> (Vec<usize>, usize) {
    let crosses = |e: usize| {
        let [a, b] = k.edges()[e];
        (values[a] < t) != (values[b] < t)
    };
    let mut uf = UnionFind::new(k.edges().len());
    for tri in k.triangles() {
        let es: Vec<usize> = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
            .iter()
            .map(|&(a, b)| k.edge_index(a, b).unwrap())
            .filter(|&e| crosses(e))
            .collect();
        if es.len() == 2 {
            uf.union(es[0], es[1]);
        }
    }
    let mut id = vec![usize::MAX; k.edges().len()];
    let mut roots: HashMap<usize, usize> = HashMap::new();
    for (e, slot) in id.iter_mut().enumerate() {
        if crosses(e) {
            let r = uf.find(e);
            let next = roots.len();
            *slot = *roots.entry(r).or_insert(next);
        }
    }
    (id, roots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use itertools::Itertools;

    fn critical_count(k: &SimplicialComplex, values: &[f64]) -> usize {
        (0..k.vertex_count())
            .filter(|&v| link_components(k, values, v) != (1, 1))
            .count()
    }

    #[test]
    fn octahedron_height_is_a_path() {
        let g = reeb_graph(&fixtures::octahedron(), &fixtures::octahedron_heights()).unwrap();
        assert_eq!(reeb_betti1(&g), 0);
        let s = g.suppress_regular();
        assert_eq!(s.nodes.len(), 2);
        assert_eq!(s.edges.len(), 1);
    }

    #[test]
    fn torus_perfect_heights() {
        let k = fixtures::torus7();
        let values = fixtures::torus7_heights();
        let g = reeb_graph(&k, &values).unwrap();
        assert_eq!(reeb_betti1(&g), 1);
        assert_eq!(g.suppress_regular().nodes.len(), 4);
        assert!(g.equivalent(&midlevel_reeb_graph(&k, &values).unwrap()));
    }

    #[test]
    fn perfect_torus_permutation_is_first_in_order() {
        let k = fixtures::torus7();
        let first = (0..7usize)
            .permutations(7)
            .find(|p| {
                let values: Vec<f64> = p.iter().map(|&r| r as f64).collect();
                critical_count(&k, &values) == 4
            })
            .unwrap();
        let expected: Vec<usize> = fixtures::torus7_heights().iter().map(|&x| x as usize).collect();
        assert_eq!(first, expected);
    }

    #[test]
    fn two_spheres_two_components() {
        let oct = fixtures::octahedron();
        let two = oct.disjoint_union(&oct);
        let mut values = fixtures::octahedron_heights();
        values.extend(fixtures::octahedron_heights().iter().map(|x| x + 10.0));
        let g = reeb_graph(&two, &values).unwrap();
        assert_eq!(g.component_count(), 2);
        assert_eq!(reeb_betti1(&g), 0);
        assert!(g.equivalent(&midlevel_reeb_graph(&two, &values).unwrap()));
    }

    #[test]
    fn input_errors() {
        let oct = fixtures::octahedron();
        assert_eq!(
            reeb_graph(&oct, &[0.0, 1.0, 2.0, 3.0, 4.0, 0.0]),
            Err(ReebError::DuplicateValues(0, 5))
        );
        assert!(matches!(reeb_graph(&oct, &[0.0]), Err(ReebError::ValueCount { .. })));
        let disk = fixtures::grid_disk(2, 2);
        let values: Vec<f64> = (0..disk.vertex_count()).map(|v| v as f64).collect();
        assert!(matches!(reeb_graph(&disk, &values), Err(ReebError::NotClosedSurface(_))));
    }

    #[test]
    fn upright_grid_torus() {
        let (w, h) = (6, 8);
        let k = fixtures::grid_torus(w, h);
        let values = fixtures::upright_torus_heights(w, h);
        let g = reeb_graph(&k, &values).unwrap();
        assert_eq!(reeb_betti1(&g), 1);
        assert!(g.equivalent(&midlevel_reeb_graph(&k, &values).unwrap()));
    }

    #[test]
    fn leaves_are_extrema() {
        let k = fixtures::genus2();
        let values: Vec<f64> = (0..k.vertex_count()).map(|v| ((v * 37) % 101) as f64).collect();
        let g = reeb_graph(&k, &values).unwrap();
        for (i, node) in g.nodes.iter().enumerate() {
            let (down, up) = g.degree(i);
            let leaf = down + up == 1;
            let extremum = node.lower == 0 || node.upper == 0;
            assert_eq!(leaf, extremum, "node {i}");
        }
        assert!(reeb_betti1(&g) <= 2);
    }
}
