//! Finite multigraphs with a fixed reference orientation.
//!
//! Every edge stores a (source, target) pair. Oriented edges are indexed as
//! `2e` (forward) and `2e + 1` (backward).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::Int;
use crate::error::{Error, Result};
use crate::homology::Chain1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl OrientedEdge {
    pub fn forward(edge: usize) -> Self {
        OrientedEdge { edge, forward: true }
    }

    pub fn backward(edge: usize) -> Self {
        OrientedEdge { edge, forward: false }
    }

    /// The involution swapping the two orientations of an edge.
    pub fn reverse(self) -> Self {
        OrientedEdge { edge: self.edge, forward: !self.forward }
    }

    /// Position in oriented-chain coordinates.
    pub fn index(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }

    pub fn from_index(i: usize) -> Self {
        OrientedEdge { edge: i / 2, forward: i % 2 == 0 }
    }
}

/// One chosen oriented edge per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    choice: Vec<OrientedEdge>,
}

impl Orientation {
    /// The reference orientation of `g`.
    pub fn reference(g: &Graph) -> Self {
        Orientation { choice: (0..g.num_edges()).map(OrientedEdge::forward).collect() }
    }

    pub fn from_flags(forward: &[bool]) -> Self {
        Orientation {
            choice: forward
                .iter()
                .enumerate()
                .map(|(e, &f)| OrientedEdge { edge: e, forward: f })
                .collect(),
        }
    }

    pub fn get(&self, e: usize) -> OrientedEdge {
        self.choice[e]
    }

    pub fn len(&self) -> usize {
        self.choice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choice.is_empty()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.choice.len() != g.num_edges()
            || self.choice.iter().enumerate().any(|(e, o)| o.edge != e)
        {
            return Err(Error::invalid("orientation does not match the graph's edges"));
        }
        Ok(())
    }
}

impl Graph {
    /// Build a graph from vertex names and `(id, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, v) in names.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, s, t) in edges {
            let id = id.as_ref().to_string();
            if !seen.insert(id.clone()) {
                return Err(Error::invalid(format!("duplicate edge id {id}")));
            }
            let look = |v: &S| {
                index
                    .get(v.as_ref())
                    .copied()
                    .ok_or_else(|| Error::invalid(format!("edge {id}: unknown vertex {}", v.as_ref())))
            };
            out.push(Edge { source: look(s)?, target: look(t)?, id });
        }
        Ok(Graph { vertices: names, edges: out })
    }

    /// Graph on vertices `0..n` named by their index, edges named `1..`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let vertices = (0..n).map(|i| format!("v{i}")).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| {
                assert!(s < n && t < n, "endpoint out of range");
                Edge { id: (i + 1).to_string(), source: s, target: t }
            })
            .collect();
        Graph { vertices, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].is_loop()
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.num_edges()).filter(|&e| self.is_loop(e)).collect()
    }

    /// Source of an oriented edge.
    pub fn source(&self, o: OrientedEdge) -> usize {
        let e = &self.edges[o.edge];
        if o.forward {
            e.source
        } else {
            e.target
        }
    }

    pub fn target(&self, o: OrientedEdge) -> usize {
        self.source(o.reverse())
    }

    /// Component label per vertex (labels are the smallest vertex index in the component).
    pub fn components(&self) -> Vec<usize> {
        self.components_without(None)
    }

    fn components_without(&self, skip: Option<usize>) -> Vec<usize> {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    pub fn num_components(&self) -> usize {
        self.components().iter().collect::<BTreeSet<_>>().len()
    }

    /// The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.num_vertices() > 0 && self.num_components() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// First Betti number |E| - |V| + #components.
    pub fn b1(&self) -> usize {
        self.num_edges() + self.num_components() - self.num_vertices()
    }

    /// Bridges, as sorted edge indices.
    pub fn separating_edges(&self) -> Result<Vec<usize>> {
        self.require_connected()?;
        Ok((0..self.num_edges())
            .filter(|&e| {
                !self.is_loop(e) && {
                    let c = self.components_without(Some(e));
                    c[self.edges[e].source] != c[self.edges[e].target]
                }
            })
            .collect())
    }

    /// True iff deleting all loops leaves a tree.
    pub fn is_tree_like(&self) -> Result<bool> {
        self.require_connected()?;
        Ok(self.num_edges() - self.loops().len() + 1 == self.num_vertices())
    }

    /// Contract the edges in `contract` and delete those in `delete`.
    ///
    /// A merged vertex keeps the name of its smallest-index member.
    pub fn contract_and_delete(&self, contract: &[usize], delete: &[usize]) -> Result<Graph> {
        let cset: BTreeSet<usize> = contract.iter().copied().collect();
        let dset: BTreeSet<usize> = delete.iter().copied().collect();
        if let Some(&e) = cset.iter().chain(&dset).find(|&&e| e >= self.num_edges()) {
            return Err(Error::invalid(format!("edge index {e} out of range")));
        }
        if cset.intersection(&dset).next().is_some() {
            return Err(Error::invalid("contracted and deleted edge sets overlap"));
        }
        if let Some(&e) = cset.iter().find(|&&e| self.is_loop(e)) {
            return Err(Error::invalid(format!("cannot contract loop {}", self.edges[e].id)));
        }
        let keep: Vec<usize> = (0..self.num_edges()).filter(|e| !cset.contains(e)).collect();
        let mut sub = self.clone();
        sub.edges = cset.iter().map(|&e| self.edges[e].clone()).collect();
        let label = sub.components();
        let reps: Vec<usize> = label.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let new_index: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let vertices = reps.iter().map(|&r| self.vertices[r].clone()).collect();
        let edges = keep
            .into_iter()
            .filter(|e| !dset.contains(e))
            .map(|e| {
                let old = &self.edges[e];
                Edge {
                    id: old.id.clone(),
                    source: new_index[&label[old.source]],
                    target: new_index[&label[old.target]],
                }
            })
            .collect();
        Ok(Graph { vertices, edges })
    }

    /// Delete edges, keeping all vertices.
    pub fn delete_edges(&self, delete: &[usize]) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !delete.contains(i))
            .map(|(_, e)| e.clone())
            .collect();
        Graph { vertices: self.vertices.clone(), edges }
    }

    /// Induced subgraph on a vertex subset (edges with both ends inside).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| pos.contains_key(&e.source) && pos.contains_key(&e.target))
            .map(|e| Edge { id: e.id.clone(), source: pos[&e.source], target: pos[&e.target] })
            .collect();
        Graph { vertices, edges }
    }

    /// Replace each edge `e` by parallel edges `e'` and `e''`; the returned
    /// orientation points `e'` along `phi(e)` and `e''` against it.
    pub fn doubled_graph(&self, phi: &Orientation) -> Result<(Graph, Orientation)> {
        phi.check(self)?;
        let mut edges = Vec::with_capacity(2 * self.num_edges());
        let mut flags = Vec::with_capacity(2 * self.num_edges());
        for (i, e) in self.edges.iter().enumerate() {
            edges.push(Edge { id: format!("{}'", e.id), source: e.source, target: e.target });
            edges.push(Edge { id: format!("{}''", e.id), source: e.source, target: e.target });
            flags.push(phi.get(i).forward);
            flags.push(!phi.get(i).forward);
        }
        Ok((Graph { vertices: self.vertices.clone(), edges }, Orientation::from_flags(&flags)))
    }

    /// Every component is strongly connected along `phi`.
    pub fn is_totally_cyclic(&self, phi: &Orientation) -> Result<bool> {
        phi.check(self)?;
        let n = self.num_vertices();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for e in 0..self.num_edges() {
            let o = phi.get(e);
            let (s, t) = (self.source(o), self.target(o));
            out[s].push(t);
            inc[t].push(s);
        }
        let reach = |adj: &Vec<Vec<usize>>, root: usize| {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([root]);
            seen[root] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            seen
        };
        let label = self.components();
        for root in 0..n {
            if label[root] != root {
                continue;
            }
            let (f, b) = (reach(&out, root), reach(&inc, root));
            if (0..n).any(|v| label[v] == root && !(f[v] && b[v])) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All circuits, one per unoriented circuit, as edge-sign vectors.
    ///
    /// Loops come first (in edge order), then the remaining circuits ordered
    /// by their smallest vertex and discovery order.
    pub fn circuits(&self) -> Result<Vec<Chain1>> {
        self.require_connected()?;
        let m = self.num_edges();
        let mut out: Vec<Chain1> = self
            .loops()
            .into_iter()
            .map(|e| {
                let mut c = vec![0; m];
                c[e] = 1;
                Chain1(c)
            })
            .collect();
        let n = self.num_vertices();
        let mut adj: Vec<Vec<(usize, usize, Int)>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.source].push((i, e.target, 1));
                adj[e.target].push((i, e.source, -1));
            }
        }
        struct Walk<'a> {
            adj: &'a [Vec<(usize, usize, Int)>],
            start: usize,
            on_path: Vec<bool>,
            path: Vec<(usize, Int)>,
            m: usize,
            found: Vec<Chain1>,
        }
        impl Walk<'_> {
            fn go(&mut self, v: usize) {
                for &(e, w, sign) in &self.adj[v] {
                    if self.path.last().map(|p| p.0) == Some(e) {
                        continue;
                    }
                    if w == self.start {
                        if !self.path.is_empty() && self.path[0].0 < e {
                            let mut c = vec![0; self.m];
                            for &(pe, ps) in &self.path {
                                c[pe] = ps;
                            }
                            c[e] = sign;
                            self.found.push(Chain1(c));
                        }
                    } else if w > self.start && !self.on_path[w] {
                        self.on_path[w] = true;
                        self.path.push((e, sign));
                        self.go(w);
                        self.path.pop();
                        self.on_path[w] = false;
                    }
                }
            }
        }
        for s in 0..n {
            let mut walk = Walk {
                adj: &adj,
                start: s,
                on_path: vec![false; n],
                path: Vec::new(),
                m,
                found: Vec::new(),
            };
            walk.go(s);
            out.extend(walk.found);
        }
        Ok(out)
    }

    /// Text encoding: a `vertices:` header then one `id: source target` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\n", self.vertices.join(" "));
        for e in &self.edges {
            s.push_str(&format!("{}: {} {}\n", e.id, self.vertices[e.source], self.vertices[e.target]));
        }
        s
    }

    /// Parse the text encoding; lines whose key is in `reserved` are handed
    /// back unparsed as `(line number, key, fields)`.
    pub fn parse_with_extras(
        text: &str,
        reserved: &[&str],
    ) -> Result<(Graph, Vec<(usize, String, Vec<String>)>)> {
        let mut vertices: Option<(usize, Vec<String>)> = None;
        let mut edges: Vec<(usize, String, String, String)> = Vec::new();
        let mut extras = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let Some((key, rest)) = line.split_once(':') else {
                return Err(err(format!("expected `key: ...`, found `{line}`")));
            };
            let key = key.trim();
            let fields: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if key == "vertices" {
                if vertices.is_some() {
                    return Err(err("second `vertices:` line".into()));
                }
                vertices = Some((line_no, fields));
            } else if reserved.contains(&key) {
                extras.push((line_no, key.to_string(), fields));
            } else {
                if vertices.is_none() {
                    return Err(err("edge line before the `vertices:` header".into()));
                }
                if key.is_empty() || key.contains(char::is_whitespace) {
                    return Err(err(format!("bad edge id `{key}`")));
                }
                if fields.len() != 2 {
                    return Err(err(format!("edge {key} needs exactly two endpoints")));
                }
                edges.push((line_no, key.to_string(), fields[0].clone(), fields[1].clone()));
            }
        }
        let Some((vline, names)) = vertices else {
            return Err(Error::Parse { line: 1, msg: "missing `vertices:` header".into() });
        };
        let mut index = HashMap::new();
        for v in &names {
            if index.insert(v.clone(), index.len()).is_some() {
                return Err(Error::Parse { line: vline, msg: format!("duplicate vertex {v}") });
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (line, id, s, t) in edges {
            if !seen.insert(id.clone()) {
                return Err(Error::Parse { line, msg: format!("duplicate edge id {id}") });
            }
            let look = |v: &str| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Parse { line, msg: format!("unknown vertex {v}") })
            };
            out.push(Edge { source: look(&s)?, target: look(&t)?, id });
        }
        Ok((Graph { vertices: names, edges: out }, extras))
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_with_extras(s, &[]).map(|(g, _)| g)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct E<'a> {
            id: &'a str,
            source: &'a str,
            target: &'a str,
        }
        let edges: Vec<E> = self
            .edges
            .iter()
            .map(|e| E {
                id: &e.id,
                source: &self.vertices[e.source],
                target: &self.vertices[e.target],
            })
            .collect();
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// Standard graph families.
pub mod families {
    use super::Graph;

    /// Cycle of length `n` (n = 1 is a loop, n = 2 a pair of parallel edges).
    pub fn cycle(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_pairs(n, &pairs)
    }

    /// Two vertices joined by `n` parallel edges.
    pub fn thick_edge(n: usize) -> Graph {
        Graph::from_pairs(2, &vec![(0, 1); n])
    }

    /// One vertex with `m` loops.
    pub fn bouquet(m: usize) -> Graph {
        Graph::from_pairs(1, &vec![(0, 0); m])
    }

    /// Path with `n` edges.
    pub fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        Graph::from_pairs(n + 1, &pairs)
    }

    /// All connected multigraphs (loops allowed) with at most `max_edges`
    /// edges, one per isomorphism class. Vertex count is at most `max_edges + 1`.
    pub fn connected_multigraphs(max_edges: usize) -> Vec<Graph> {
        let mut out = Vec::new();
        for m in 0..=max_edges {
            for n in 1..=m + 1 {
                let slots: Vec<(usize, usize)> =
                    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
                let mut seen = std::collections::BTreeSet::new();
                let mut counts = vec![0usize; slots.len()];
                enumerate_multisets(&mut counts, 0, m, &mut |c| {
                    let pairs: Vec<(usize, usize)> = slots
                        .iter()
                        .zip(c)
                        .flat_map(|(&p, &k)| std::iter::repeat(p).take(k))
                        .collect();
                    let g = Graph::from_pairs(n, &pairs);
                    if g.is_connected() {
                        let key = canonical_key(n, &pairs);
                        if seen.insert(key) {
                            out.push(g);
                        }
                    }
                });
            }
        }
        out
    }

    fn enumerate_multisets(counts: &mut Vec<usize>, pos: usize, left: usize, f: &mut dyn FnMut(&[usize])) {
        if pos + 1 == counts.len() {
            counts[pos] = left;
            f(counts);
            counts[pos] = 0;
            return;
        }
        for k in 0..=left {
            counts[pos] = k;
            enumerate_multisets(counts, pos + 1, left - k, f);
        }
        counts[pos] = 0;
    }

    /// Lexicographically smallest sorted edge list over all vertex relabelings.
    fn canonical_key(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        loop {
            let mut relabeled: Vec<(usize, usize)> = pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (perm[a], perm[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            relabeled.sort();
            if best.as_ref().map_or(true, |b| relabeled < *b) {
                best = Some(relabeled);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        if p.len() < 2 {
            return false;
        }
        let mut i = p.len() - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = p.len() - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn connectivity() {
        assert!(Graph::from_pairs(1, &[]).is_connected());
        assert!(!Graph::from_pairs(2, &[]).is_connected());
        assert!(!Graph::from_pairs(0, &[]).is_connected());
        assert!(cycle(3).is_connected());
    }

    #[test]
    fn bridges() {
        assert_eq!(path(2).separating_edges().unwrap(), vec![0, 1]);
        assert!(cycle(5).separating_edges().unwrap().is_empty());
        assert!(thick_edge(3).separating_edges().unwrap().is_empty());
        assert!(bouquet(2).separating_edges().unwrap().is_empty());
        assert_eq!(Graph::from_pairs(2, &[]).separating_edges(), Err(Error::Disconnected));
    }

    #[test]
    fn tree_like() {
        assert!(bouquet(3).is_tree_like().unwrap());
        assert!(!thick_edge(2).is_tree_like().unwrap());
        let g = Graph::from_pairs(3, &[(0, 1), (1, 2), (0, 0), (1, 1), (2, 2)]);
        assert!(g.is_tree_like().unwrap());
    }

    #[test]
    fn contraction() {
        let g = cycle(3).contract_and_delete(&[0], &[]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.loops().len()), (2, 2, 0));
        let g = path(2).contract_and_delete(&[0, 1], &[]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
        let g = thick_edge(2).contract_and_delete(&[0], &[]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.loops().len(), g.b1()), (1, 1, 1, 1));
        assert!(bouquet(1).contract_and_delete(&[0], &[]).is_err());
    }

    #[test]
    fn doubling() {
        let (d, phi) = bouquet(1).doubled_graph(&Orientation::reference(&bouquet(1))).unwrap();
        assert_eq!((d.num_vertices(), d.loops().len()), (1, 2));
        assert!(d.is_totally_cyclic(&phi).unwrap());
        let g = path(1);
        let (d, phi) = g.doubled_graph(&Orientation::reference(&g)).unwrap();
        assert_eq!(d.num_edges(), 2);
        assert_ne!(phi.get(0).forward, phi.get(1).forward);
        assert!(d.is_totally_cyclic(&phi).unwrap());
        assert!(!g.is_totally_cyclic(&Orientation::reference(&g)).unwrap());
        assert!(cycle(3).is_totally_cyclic(&Orientation::reference(&cycle(3))).unwrap());
    }

    #[test]
    fn circuit_counts() {
        for n in 1..7 {
            assert_eq!(cycle(n).circuits().unwrap().len(), 1);
            assert_eq!(thick_edge(n).circuits().unwrap().len(), n * (n - 1) / 2);
            assert_eq!(bouquet(n).circuits().unwrap().len(), n);
        }
        assert!(path(3).circuits().unwrap().is_empty());
        // K4 has 7 circuits.
        let k4 = Graph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(k4.circuits().unwrap().len(), 7);
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_pairs(3, &[(0, 1), (1, 2), (2, 2), (2, 0)]);
        let back: Graph = g.to_text().parse().unwrap();
        assert_eq!(back, g);
        let bad = "vertices: a b\ne1: a c\n".parse::<Graph>();
        assert!(matches!(bad, Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn family_size() {
        let all = connected_multigraphs(4);
        assert!(all.len() >= 30, "{}", all.len());
    }
}
