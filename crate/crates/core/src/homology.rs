//! Ordinary and oriented chains of a graph, boundary maps and cycle lattices.

use std::collections::VecDeque;
use std::ops::{Add, Neg, Sub};

use crate::arith::{self, Int};
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, OrientedEdge};

/// Integer chain over edges, read against the reference orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain1(pub Vec<Int>);

/// Integer chain over oriented edges; coordinate `2e` is the forward
/// orientation of edge `e`, `2e + 1` the backward one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrChain1(pub Vec<Int>);

pub type Cycle = Chain1;
pub type OrCycle = OrChain1;

impl Chain1 {
    pub fn zero(num_edges: usize) -> Self {
        Chain1(vec![0; num_edges])
    }

    /// The class `[o]` of an oriented edge: `+1` or `-1` on its edge.
    pub fn of_oriented(num_edges: usize, o: OrientedEdge) -> Self {
        let mut c = vec![0; num_edges];
        c[o.edge] = if o.forward { 1 } else { -1 };
        Chain1(c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        arith::is_zero(&self.0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&e| self.0[e] != 0).collect()
    }

    /// Scalar product with `([e], [e]) = 1`.
    pub fn dot(&self, other: &Chain1) -> Int {
        arith::dot(&self.0, &other.0)
    }

    pub fn scale(&self, k: Int) -> Chain1 {
        Chain1(self.0.iter().map(|x| k * x).collect())
    }

    /// L1 norm.
    pub fn weight(&self) -> Int {
        self.0.iter().map(|x| x.abs()).sum()
    }
}

impl OrChain1 {
    pub fn zero(num_edges: usize) -> Self {
        OrChain1(vec![0; 2 * num_edges])
    }

    pub fn of_oriented(num_edges: usize, o: OrientedEdge) -> Self {
        let mut c = vec![0; 2 * num_edges];
        c[o.index()] = 1;
        OrChain1(c)
    }

    /// `e-> + e<-`.
    pub fn diagonal(num_edges: usize, e: usize) -> Self {
        let mut c = vec![0; 2 * num_edges];
        c[2 * e] = 1;
        c[2 * e + 1] = 1;
        OrChain1(c)
    }

    pub fn num_edges(&self) -> usize {
        self.0.len() / 2
    }

    pub fn forward(&self, e: usize) -> Int {
        self.0[2 * e]
    }

    pub fn backward(&self, e: usize) -> Int {
        self.0[2 * e + 1]
    }

    pub fn dot(&self, other: &OrChain1) -> Int {
        arith::dot(&self.0, &other.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Total degree (sum of coefficients).
    pub fn degree(&self) -> Int {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: Int) -> OrChain1 {
        OrChain1(self.0.iter().map(|x| k * x).collect())
    }
}

macro_rules! linear_ops {
    ($t:ident) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                assert_eq!(self.0.len(), o.0.len(), "chains of different graphs");
                $t(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                assert_eq!(self.0.len(), o.0.len(), "chains of different graphs");
                $t(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(self.0.iter().map(|a| -a).collect())
            }
        }
    };
}
linear_ops!(Chain1);
linear_ops!(OrChain1);

fn check_len(g: &Graph, len: usize, per_edge: usize) -> Result<()> {
    if len != per_edge * g.num_edges() {
        return Err(Error::Dimension(format!(
            "chain of length {len} on a graph with {} edges",
            g.num_edges()
        )));
    }
    Ok(())
}

/// `[e] -> t(e) - s(e)`.
pub fn boundary_ordinary(g: &Graph, c: &Chain1) -> Result<Vec<Int>> {
    check_len(g, c.len(), 1)?;
    let mut b = vec![0; g.num_vertices()];
    for (i, e) in g.edges().iter().enumerate() {
        b[e.target] += c.0[i];
        b[e.source] -= c.0[i];
    }
    Ok(b)
}

/// `e-> -> t(e->) - s(e->)` on oriented chains.
pub fn boundary_oriented(g: &Graph, c: &OrChain1) -> Result<Vec<Int>> {
    check_len(g, c.0.len(), 2)?;
    let mut b = vec![0; g.num_vertices()];
    for (i, &x) in c.0.iter().enumerate() {
        let o = OrientedEdge::from_index(i);
        b[g.target(o)] += x;
        b[g.source(o)] -= x;
    }
    Ok(b)
}

/// Fundamental cycles of a breadth-first spanning tree, one per non-tree edge
/// (in edge order), each with coefficient `+1` on its non-tree edge.
pub fn cycle_basis(g: &Graph) -> Result<Vec<Cycle>> {
    g.require_connected()?;
    let n = g.num_vertices();
    let m = g.num_edges();
    let mut adj: Vec<Vec<(usize, usize, Int)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if !e.is_loop() {
            adj[e.source].push((i, e.target, 1));
            adj[e.target].push((i, e.source, -1));
        }
    }
    // to_root[v] is the tree chain from the root to v.
    let mut to_root: Vec<Option<Vec<Int>>> = vec![None; n];
    let mut tree = vec![false; m];
    to_root[0] = Some(vec![0; m]);
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(e, w, sign) in &adj[v] {
            if to_root[w].is_none() {
                let mut p = to_root[v].clone().unwrap_or_default();
                p[e] += sign;
                to_root[w] = Some(p);
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let path = |v: usize| to_root[v].as_ref().expect("connected graph");
    Ok((0..m)
        .filter(|&e| !tree[e])
        .map(|e| {
            let ed = g.edge(e);
            let mut z: Vec<Int> = path(ed.source).iter().zip(path(ed.target)).map(|(a, b)| a - b).collect();
            z[e] += 1;
            Chain1(z)
        })
        .collect())
}

/// Oriented chain with `|a_e|` on the orientation of `e` matching the sign of `a_e`.
pub fn lift(z: &Chain1) -> OrChain1 {
    let mut c = vec![0; 2 * z.len()];
    for (e, &a) in z.0.iter().enumerate() {
        if a > 0 {
            c[2 * e] = a;
        } else {
            c[2 * e + 1] = -a;
        }
    }
    OrChain1(c)
}

/// Basis of the oriented cycle lattice: `e-> + e<-` for every edge, followed by
/// the lifts of the fundamental cycles.
pub fn oriented_cycle_lattice(g: &Graph) -> Result<Vec<OrCycle>> {
    let m = g.num_edges();
    let mut basis: Vec<OrCycle> = (0..m).map(|e| OrChain1::diagonal(m, e)).collect();
    basis.extend(cycle_basis(g)?.iter().map(lift));
    Ok(basis)
}

/// `e-> -> [e]`, `e<- -> -[e]`.
pub fn kernel_to_ordinary(oc: &OrChain1) -> Cycle {
    Chain1((0..oc.num_edges()).map(|e| oc.forward(e) - oc.backward(e)).collect())
}

/// Integer coordinates of `v` in the given basis, if it lies in its span over Z.
pub fn coordinates(basis: &[Vec<Int>], v: &[Int]) -> Option<Vec<Int>> {
    let cols = arith::transpose(basis);
    let x = arith::solve_int(&cols, v)?;
    if !arith::is_integral(&x) {
        return None;
    }
    Some(x.iter().map(|r| r.to_integer()).collect())
}

/// The identification of the doubled graph's homology with oriented homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledIso {
    /// Chain map: column `j` is the oriented chain of the doubled graph's edge `j`.
    pub chain_map: Vec<Vec<Int>>,
    /// Column `j` is the image of the `j`-th fundamental cycle of the doubled
    /// graph, in coordinates of `oriented_cycle_lattice`.
    pub matrix: Vec<Vec<Int>>,
}

/// Sends `[phi_d(e')]` to `phi(e)` and `[phi_d(e'')]` to its reverse.
pub fn doubled_homology_iso(g: &Graph, phi: &Orientation) -> Result<DoubledIso> {
    g.require_connected()?;
    let (d, _) = g.doubled_graph(phi)?;
    let m = g.num_edges();
    let mut chain_map = vec![vec![0; 2 * m]; 2 * m];
    for e in 0..m {
        let o = phi.get(e);
        // Reference class of e' equals +-[phi_d(e')], with + iff phi(e) is forward.
        if o.forward {
            chain_map[o.index()][2 * e] = 1;
            chain_map[o.reverse().index()][2 * e + 1] = -1;
        } else {
            chain_map[o.index()][2 * e] = -1;
            chain_map[o.reverse().index()][2 * e + 1] = 1;
        }
    }
    let target: Vec<Vec<Int>> = oriented_cycle_lattice(g)?.into_iter().map(|c| c.0).collect();
    let mut columns = Vec::new();
    for z in cycle_basis(&d)? {
        let image = arith::mat_vec(&chain_map, &z.0);
        let coords = coordinates(&target, &image)
            .ok_or_else(|| Error::Consistency("doubled cycle maps outside the oriented cycle lattice".into()))?;
        columns.push(coords);
    }
    Ok(DoubledIso { chain_map, matrix: arith::transpose(&columns) })
}
