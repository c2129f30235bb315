//! Structural analysis of unsatisfied configurations: degree and line-type
//! profiles, skeleton graphs of line classes, connectivity, and exact
//! recognition of small named graphs by isomorphism against internally
//! constructed references.
//!
//! All functions take lines as triples of global point ids, so they apply
//! equally to whole unsatisfied configurations, to line-class subsets, and
//! to connected components.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::space::PointSet;

/// Vertex cap for [`SimpleGraph`]. Everything recognized here is far
/// smaller; the cap keeps isomorphism checks tractable by construction.
pub const MAX_GRAPH_VERTICES: usize = 256;

type Row = [u64; 4];

fn row_contains(row: &Row, v: u32) -> bool {
    row[v as usize / 64] >> (v % 64) & 1 == 1
}

fn row_insert(row: &mut Row, v: u32) {
    row[v as usize / 64] |= 1u64 << (v % 64);
}

fn row_remove(row: &mut Row, v: u32) {
    row[v as usize / 64] &= !(1u64 << (v % 64));
}

/// Undirected graph without loops or multi-edges, at most
/// [`MAX_GRAPH_VERTICES`] vertices.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    vertex_count: usize,
    rows: Vec<Row>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count > MAX_GRAPH_VERTICES {
            return Err(Error::GraphTooLarge(vertex_count, MAX_GRAPH_VERTICES));
        }
        Ok(SimpleGraph {
            vertex_count,
            rows: vec![[0u64; 4]; vertex_count],
        })
    }

    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        let mut graph = SimpleGraph::new(vertex_count)?;
        for (u, v) in edges {
            graph.add_edge(u, v);
        }
        Ok(graph)
    }

    /// Inserts an undirected edge. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert!(u != v, "loops are not allowed");
        assert!((u as usize) < self.vertex_count && (v as usize) < self.vertex_count);
        row_insert(&mut self.rows[u as usize], v);
        row_insert(&mut self.rows[v as usize], u);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self
            .rows
            .iter()
            .flat_map(|row| row.iter().map(|w| w.count_ones()))
            .sum();
        total as usize / 2
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        row_contains(&self.rows[u as usize], v)
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.rows[v as usize].iter().map(|w| w.count_ones()).sum()
    }

    pub fn neighbors(&self, v: u32) -> Neighbors<'_> {
        let row = &self.rows[v as usize];
        Neighbors {
            row,
            word: 0,
            bits: row[0],
        }
    }

    /// Degrees in ascending order.
    pub fn degree_sequence(&self) -> Vec<u32> {
        let mut degrees: Vec<u32> = (0..self.vertex_count as u32).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        degrees
    }

    /// BFS distances from a vertex; unreachable vertices get `u32::MAX`.
    pub fn distances_from(&self, start: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count];
        dist[start as usize] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest cycle, or None for a forest. Found as the
    /// minimum over all BFS roots of dist(u) + dist(w) + 1 across non-tree
    /// edges (u, w); the minimum over roots is exact.
    pub fn girth(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for root in 0..self.vertex_count as u32 {
            let mut dist = vec![u32::MAX; self.vertex_count];
            let mut parent = vec![u32::MAX; self.vertex_count];
            dist[root as usize] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // Any cycle still discoverable from u has length
                    // at least 2 dist(u) + 1.
                    if 2 * dist[u as usize] + 1 >= b {
                        continue;
                    }
                }
                for w in self.neighbors(u) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[u as usize] + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else if parent[u as usize] != w {
                        let cycle = dist[u as usize] + dist[w as usize] + 1;
                        best = Some(best.map_or(cycle, |b| b.min(cycle)));
                    }
                }
            }
        }
        best
    }
}

/// Iterator over the neighbors of one vertex, ascending.
pub struct Neighbors<'a> {
    row: &'a Row,
    word: usize,
    bits: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.bits != 0 {
                let bit = self.bits.trailing_zeros();
                self.bits &= self.bits - 1;
                return Some((self.word * 64) as u32 + bit);
            }
            if self.word + 1 == self.row.len() {
                return None;
            }
            self.word += 1;
            self.bits = self.row[self.word];
        }
    }
}

/// Bipartite graph on 2k vertices encoded by the binary expansion of n
/// (k = bit length): left vertex i is joined to right vertex (i + j) mod k
/// for every set bit j of n.
pub fn haar_graph(n: u64) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "haar_index",
            value: 0.0,
        });
    }
    let k = (64 - n.leading_zeros()) as u32;
    let mut graph = SimpleGraph::new(2 * k as usize)?;
    for i in 0..k {
        for j in 0..k {
            if n >> j & 1 == 1 {
                graph.add_edge(i, k + (i + j) % k);
            }
        }
    }
    Ok(graph)
}

/// Incidence graph of nonzero vectors versus nonzero functionals of
/// F₂^{d+1}, joined when the functional vanishes on the vector. It is
/// (2^d − 1)-regular bipartite on 2 (2^{d+1} − 1) vertices.
pub fn point_hyperplane_graph(d: u32) -> Result<SimpleGraph> {
    if d == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "dimension",
            value: 0.0,
        });
    }
    let size = if d <= 31 {
        2 * ((1u64 << (d + 1)) - 1)
    } else {
        u64::MAX
    };
    if size > MAX_GRAPH_VERTICES as u64 {
        return Err(Error::GraphTooLarge(
            size.min(usize::MAX as u64) as usize,
            MAX_GRAPH_VERTICES,
        ));
    }
    let m = (1u32 << (d + 1)) - 1;
    let mut graph = SimpleGraph::new(2 * m as usize)?;
    for x in 1..=m {
        for f in 1..=m {
            if (x & f).count_ones() % 2 == 0 {
                graph.add_edge(x - 1, m + f - 1);
            }
        }
    }
    Ok(graph)
}

pub fn complete_bipartite(left: u32, right: u32) -> Result<SimpleGraph> {
    let mut graph = SimpleGraph::new(left as usize + right as usize)?;
    for i in 0..left {
        for j in 0..right {
            graph.add_edge(i, left + j);
        }
    }
    Ok(graph)
}

/// The 28-vertex cubic graph of girth 7: three heptagonal rings with
/// steps 1, 2 and 3 (ring r occupies vertices 7r..7r+6) plus seven hubs,
/// hub i joined to vertex i of each ring.
pub fn coxeter_graph() -> SimpleGraph {
    let mut graph = SimpleGraph::new(28).expect("fits the vertex cap");
    for (ring, step) in [1u32, 2, 3].into_iter().enumerate() {
        let base = 7 * ring as u32;
        for i in 0..7 {
            graph.add_edge(base + i, base + (i + step) % 7);
        }
    }
    for i in 0..7 {
        for ring in 0..3 {
            graph.add_edge(21 + i, 7 * ring + i);
        }
    }
    graph
}

/// The 14-vertex cubic graph of girth 6: a 14-cycle with chords from each
/// even vertex i to i + 5.
pub fn heawood_graph() -> SimpleGraph {
    let mut graph = SimpleGraph::new(14).expect("fits the vertex cap");
    for i in 0..14 {
        graph.add_edge(i, (i + 1) % 14);
    }
    for i in (0..14).step_by(2) {
        graph.add_edge(i as u32, ((i + 5) % 14) as u32);
    }
    graph
}

/// Number of lines through each covered point.
pub fn point_degrees(lines: &[[u32; 3]]) -> BTreeMap<u32, u32> {
    let mut degrees = BTreeMap::new();
    for line in lines {
        for &p in line {
            *degrees.entry(p).or_insert(0) += 1;
        }
    }
    degrees
}

/// Distribution of point degrees within a line set.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DegreeProfile {
    /// degree -> number of covered points with that degree
    pub histogram: BTreeMap<u32, u32>,
    pub covered_point_count: u32,
    pub total_context_count: u32,
}

pub fn degree_profile(lines: &[[u32; 3]]) -> DegreeProfile {
    let degrees = point_degrees(lines);
    let mut histogram: BTreeMap<u32, u32> = BTreeMap::new();
    for &d in degrees.values() {
        *histogram.entry(d).or_insert(0) += 1;
    }
    DegreeProfile {
        histogram,
        covered_point_count: degrees.len() as u32,
        total_context_count: lines.len() as u32,
    }
}

/// Distribution of lines over the sorted degree triples of their points.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LineTypeProfile {
    /// sorted degree triple -> number of lines in that class
    pub classes: BTreeMap<[u32; 3], u32>,
}

pub fn line_type_profile(lines: &[[u32; 3]]) -> LineTypeProfile {
    let degrees = point_degrees(lines);
    let mut classes: BTreeMap<[u32; 3], u32> = BTreeMap::new();
    for line in lines {
        *classes.entry(line_class(line, &degrees)).or_insert(0) += 1;
    }
    LineTypeProfile { classes }
}

fn line_class(line: &[u32; 3], degrees: &BTreeMap<u32, u32>) -> [u32; 3] {
    let mut class = line.map(|p| degrees[&p]);
    class.sort_unstable();
    class
}

/// The lines whose sorted degree triple equals `class`, with degrees taken
/// from the supplied map (normally the degrees of the enclosing
/// configuration, so that class membership survives taking subsets).
pub fn lines_in_class(
    lines: &[[u32; 3]],
    degrees: &BTreeMap<u32, u32>,
    class: [u32; 3],
) -> Vec<[u32; 3]> {
    lines
        .iter()
        .filter(|line| line_class(line, degrees) == class)
        .copied()
        .collect()
}

/// Graph on the points of degree `vertex_degree`: every line must contain
/// exactly two such points, which become an edge, and one point of another
/// degree, the edge's midpoint. Returns the graph together with the global
/// point id of each vertex.
pub fn skeleton_graph(
    class_lines: &[[u32; 3]],
    degrees: &BTreeMap<u32, u32>,
    vertex_degree: u32,
) -> Result<(SimpleGraph, Vec<u32>)> {
    let mut vertex_ids: Vec<u32> = Vec::new();
    for line in class_lines {
        for &p in line {
            if degrees[&p] == vertex_degree {
                vertex_ids.push(p);
            }
        }
    }
    vertex_ids.sort_unstable();
    vertex_ids.dedup();

    let mut graph = SimpleGraph::new(vertex_ids.len())?;
    for line in class_lines {
        let mut endpoints = [0u32; 2];
        let mut found = 0;
        for &p in line {
            if degrees[&p] == vertex_degree {
                if found == 2 {
                    found = 3;
                    break;
                }
                endpoints[found] = p;
                found += 1;
            }
        }
        if found != 2 {
            return Err(Error::SkeletonRoles(line_class(line, degrees)));
        }
        let u = vertex_ids.binary_search(&endpoints[0]).expect("collected") as u32;
        let v = vertex_ids.binary_search(&endpoints[1]).expect("collected") as u32;
        graph.add_edge(u, v);
    }
    Ok((graph, vertex_ids))
}

/// True when the line set is a (63₃, 63₃) configuration whose bipartite
/// incidence graph has girth 12: the profile of the generalized hexagon
/// of order two. The hexagon and its point-line dual both pass.
pub fn recognize_hexagon(lines: &[[u32; 3]]) -> bool {
    if lines.len() != 63 {
        return false;
    }
    let degrees = point_degrees(lines);
    if degrees.len() != 63 || degrees.values().any(|&d| d != 3) {
        return false;
    }
    for line in lines {
        if line[0] == line[1] || line[1] == line[2] || line[0] == line[2] {
            return false;
        }
    }
    let point_index: BTreeMap<u32, u32> = degrees
        .keys()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let mut incidence = SimpleGraph::new(126).expect("fits the vertex cap");
    for (line_idx, line) in lines.iter().enumerate() {
        for &p in line {
            incidence.add_edge(point_index[&p], 63 + line_idx as u32);
        }
    }
    incidence.girth() == Some(12)
}

/// True when the line set is a (135₇, 315₃) configuration: 135 covered
/// points, 315 lines, every point on exactly 7 lines.
pub fn dw52_profile(lines: &[[u32; 3]]) -> bool {
    if lines.len() != 315 {
        return false;
    }
    let degrees = point_degrees(lines);
    degrees.len() == 135 && degrees.values().all(|&d| d == 7)
}

/// Connected components of a line set, two lines being adjacent when they
/// share a point. With `through` set, only shared points inside that set
/// connect. Components are returned as ascending line indices, ordered by
/// their smallest index.
pub fn connected_line_components(
    lines: &[[u32; 3]],
    through: Option<&PointSet>,
) -> Vec<Vec<usize>> {
    let mut by_point: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, line) in lines.iter().enumerate() {
        for &p in line {
            if through.is_none_or(|set| set.contains(p)) {
                by_point.entry(p).or_default().push(i);
            }
        }
    }
    let mut component_of = vec![usize::MAX; lines.len()];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..lines.len() {
        if component_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut member_lines = vec![start];
        component_of[start] = id;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(line_idx) = queue.pop_front() {
            for &p in &lines[line_idx] {
                if through.is_none_or(|set| set.contains(p)) {
                    for &other in &by_point[&p] {
                        if component_of[other] == usize::MAX {
                            component_of[other] = id;
                            member_lines.push(other);
                            queue.push_back(other);
                        }
                    }
                }
            }
        }
        member_lines.sort_unstable();
        components.push(member_lines);
    }
    components
}

/// Exact isomorphism test: joint color refinement for pruning, then
/// backtracking that maps one vertex at a time, requiring candidates to
/// reproduce the adjacency pattern on the already-mapped set exactly.
pub fn graphs_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let n = g1.vertex_count();
    if n == 0 {
        return true;
    }
    let Some((c1, c2)) = joint_refinement(g1, g2) else {
        return false;
    };
    let mut mapping = vec![u32::MAX; n];
    let mut used: Row = [0; 4];
    backtrack(g1, g2, &c1, &c2, &mut mapping, &mut used, 0)
}

/// Color refinement run jointly on both graphs so color ids are
/// comparable. None when per-color vertex counts diverge.
fn joint_refinement(g1: &SimpleGraph, g2: &SimpleGraph) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = g1.vertex_count();
    let mut c1 = vec![0u32; n];
    let mut c2 = vec![0u32; n];
    let mut distinct = 1usize;
    loop {
        let mut table: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let next = |colors: &[u32], graph: &SimpleGraph, table: &mut BTreeMap<(u32, Vec<u32>), u32>| {
            (0..n as u32)
                .map(|v| {
                    let mut around: Vec<u32> =
                        graph.neighbors(v).map(|w| colors[w as usize]).collect();
                    around.sort_unstable();
                    let key = (colors[v as usize], around);
                    let fresh = table.len() as u32;
                    *table.entry(key).or_insert(fresh)
                })
                .collect::<Vec<u32>>()
        };
        let n1 = next(&c1, g1, &mut table);
        let n2 = next(&c2, g2, &mut table);
        let now_distinct = table.len();
        c1 = n1;
        c2 = n2;
        if now_distinct == distinct {
            break;
        }
        distinct = now_distinct;
    }
    let mut counts1 = vec![0u32; distinct];
    let mut counts2 = vec![0u32; distinct];
    for &c in &c1 {
        counts1[c as usize] += 1;
    }
    for &c in &c2 {
        counts2[c as usize] += 1;
    }
    (counts1 == counts2).then_some((c1, c2))
}

fn backtrack(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    c1: &[u32],
    c2: &[u32],
    mapping: &mut [u32],
    used: &mut Row,
    depth: usize,
) -> bool {
    let n = g1.vertex_count();
    if depth == n {
        return true;
    }
    // Most constrained next vertex: the unmapped one with the most mapped
    // neighbors.
    let u = (0..n as u32)
        .filter(|&v| mapping[v as usize] == u32::MAX)
        .max_by_key(|&v| {
            g1.neighbors(v)
                .filter(|&w| mapping[w as usize] != u32::MAX)
                .count()
        })
        .expect("depth below n leaves unmapped vertices");

    let mut required: Row = [0; 4];
    for w in g1.neighbors(u) {
        if mapping[w as usize] != u32::MAX {
            row_insert(&mut required, mapping[w as usize]);
        }
    }
    for candidate in 0..n as u32 {
        if row_contains(used, candidate) || c2[candidate as usize] != c1[u as usize] {
            continue;
        }
        let masked: Vec<u64> = g2.rows[candidate as usize]
            .iter()
            .zip(used.iter())
            .map(|(r, u)| r & u)
            .collect();
        if masked[..] != required[..] {
            continue;
        }
        mapping[u as usize] = candidate;
        row_insert(used, candidate);
        if backtrack(g1, g2, c1, c2, mapping, used, depth + 1) {
            return true;
        }
        mapping[u as usize] = u32::MAX;
        row_remove(used, candidate);
    }
    false
}
