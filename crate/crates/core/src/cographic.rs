//! The cographic semigroup of a graph, its ring presentation and the
//! singularity dossier of the associated affine toric variety.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith::{self, Int};
use crate::cones::{self, Cone, Lattice};
use crate::error::{Error, Result};
use crate::graph::{Graph, OrientedEdge};
use crate::homology::{self, Chain1, Cycle, OrChain1, OrCycle};

/// A nonnegative oriented cycle.
pub type SemigroupElem = OrChain1;

/// A cycle together with a nonnegative marker per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairElem {
    pub z: Cycle,
    pub n: Vec<Int>,
}

impl PairElem {
    pub fn zero(num_edges: usize) -> Self {
        PairElem { z: Chain1::zero(num_edges), n: vec![0; num_edges] }
    }
}

fn same_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension(format!("chains of lengths {a} and {b} come from different graphs")));
    }
    Ok(())
}

/// Edgewise `min(|a|, |b|)` where the two cycles have opposite signs, else 0.
pub fn psi(z1: &Cycle, z2: &Cycle) -> Result<Vec<Int>> {
    same_len(z1.len(), z2.len())?;
    Ok(z1
        .0
        .iter()
        .zip(&z2.0)
        .map(|(&a, &b)| if a * b < 0 { a.abs().min(b.abs()) } else { 0 })
        .collect())
}

/// `sum |a_e|` placed on the orientation of `e` that makes the coefficient positive.
pub fn section(z: &Cycle) -> SemigroupElem {
    homology::lift(z)
}

/// `(z1, n1) + (z2, n2) = (z1 + z2, psi(z1, z2) + n1 + n2)`.
pub fn semigroup_add(p1: &PairElem, p2: &PairElem) -> Result<PairElem> {
    same_len(p1.n.len(), p2.n.len())?;
    let p = psi(&p1.z, &p2.z)?;
    Ok(PairElem {
        z: &p1.z + &p2.z,
        n: (0..p.len()).map(|e| p[e] + p1.n[e] + p2.n[e]).collect(),
    })
}

pub fn pair_to_semigroup(p: &PairElem) -> SemigroupElem {
    let mut s = section(&p.z);
    for (e, &k) in p.n.iter().enumerate() {
        s.0[2 * e] += k;
        s.0[2 * e + 1] += k;
    }
    s
}

/// Inverse of [`pair_to_semigroup`]; rejects chains with negative coefficients.
pub fn semigroup_to_pair(s: &SemigroupElem) -> Result<PairElem> {
    if !s.is_nonnegative() {
        return Err(Error::invalid("semigroup elements have nonnegative coefficients"));
    }
    let m = s.num_edges();
    Ok(PairElem {
        z: homology::kernel_to_ordinary(s),
        n: (0..m).map(|e| s.forward(e).min(s.backward(e))).collect(),
    })
}

/// The cone of nonnegative oriented cycles and its dual, both written in
/// coordinates of the basis returned by `oriented_cycle_lattice`.
#[derive(Clone, Debug)]
pub struct CographicCones {
    pub basis: Vec<OrCycle>,
    /// Cone in the oriented cycle lattice.
    pub sigma: Cone,
    /// Dual cone, generated by the functionals `(., o)` for oriented edges `o`.
    pub sigma_dual: Cone,
}

impl CographicCones {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Oriented chain with the given lattice coordinates.
    pub fn to_chain(&self, coords: &[Int]) -> OrChain1 {
        let len = self.basis.first().map_or(0, |b| b.0.len());
        let mut out = vec![0; len];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(&b.0) {
                *o += c * x;
            }
        }
        OrChain1(out)
    }

    pub fn to_coords(&self, s: &OrChain1) -> Option<Vec<Int>> {
        let rows: Vec<Vec<Int>> = self.basis.iter().map(|b| b.0.clone()).collect();
        homology::coordinates(&rows, &s.0)
    }

    /// The functional `(., o)` in dual coordinates.
    pub fn functional(&self, o: OrientedEdge) -> Vec<Int> {
        self.basis.iter().map(|b| b.0[o.index()]).collect()
    }

    /// Coordinates of the sum of all oriented edges.
    pub fn m_gamma(&self) -> Vec<Int> {
        let len = self.basis.first().map_or(0, |b| b.0.len());
        self.to_coords(&OrChain1(vec![1; len])).expect("sum of all oriented edges is a cycle")
    }
}

pub fn cographic_cone(g: &Graph) -> Result<CographicCones> {
    let basis = homology::oriented_cycle_lattice(g)?;
    let d = basis.len();
    let functionals: Vec<Vec<Int>> = (0..2 * g.num_edges())
        .map(|i| basis.iter().map(|b| b.0[i]).collect())
        .collect();
    if d == 0 {
        // Single vertex without edges: everything is the zero lattice.
        let zero = Cone::new(Lattice::standard(0), Vec::new())?;
        return Ok(CographicCones { basis, sigma: zero.clone(), sigma_dual: zero });
    }
    let sigma = Cone::from_inequalities(Lattice::standard(d), &functionals)?;
    let sigma_dual = Cone::from_int_generators(&functionals)?;
    Ok(CographicCones { basis, sigma, sigma_dual })
}

/// Hilbert basis of the cographic cone, as oriented chains (sorted).
pub fn hilbert_basis_chains(c: &CographicCones) -> Result<Vec<OrChain1>> {
    let mut out: Vec<OrChain1> = cones::hilbert_basis(&c.sigma)?
        .iter()
        .map(|x| c.to_chain(&x.iter().map(|r| r.to_integer()).collect::<Vec<_>>()))
        .collect();
    out.sort();
    Ok(out)
}

/// `section(+-gamma)` for circuits `gamma` and `e-> + e<-` for non-loop edges.
pub fn explicit_generators(g: &Graph) -> Result<Vec<OrChain1>> {
    let m = g.num_edges();
    let mut out = Vec::new();
    for c in g.circuits()? {
        out.push(section(&c));
        out.push(section(&-&c));
    }
    for e in 0..m {
        if !g.is_loop(e) {
            out.push(OrChain1::diagonal(m, e));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    /// `X^z` for the signed circuit `z` (stored as its edge-sign vector).
    Circuit(Vec<Int>),
    /// `T_e` for an edge index.
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
}

/// A monomial as sorted `(generator index, exponent)` pairs.
pub type Monomial = Vec<(usize, u32)>;

/// The binomial `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub lhs: Monomial,
    pub rhs: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    /// Generators `T_e` of loops, each equal to a product of two circuit
    /// variables by a relation with a linear term.
    pub eliminated: Vec<usize>,
}

fn monomial_string(gens: &[Generator], m: &Monomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|&(i, k)| if k == 1 { gens[i].name.clone() } else { format!("{}^{}", gens[i].name, k) })
        .collect::<Vec<_>>()
        .join("*")
}

impl RingPresentation {
    pub fn relation_string(&self, r: &Relation) -> String {
        format!("{} - {}", monomial_string(&self.generators, &r.lhs), monomial_string(&self.generators, &r.rhs))
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.relation_string(r)).collect()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    fn is_linear_marker(&self, r: &Relation) -> bool {
        r.rhs.len() == 1 && r.rhs[0].1 == 1 && self.eliminated.contains(&r.rhs[0].0)
    }

    /// Generators left after eliminating loop variables.
    pub fn minimal_generators(&self) -> Vec<String> {
        (0..self.generators.len())
            .filter(|i| !self.eliminated.contains(i))
            .map(|i| self.generators[i].name.clone())
            .collect()
    }

    /// The `T_e` generators, which vanish under the face-ring specialization `T_e -> 0`.
    pub fn vanishing_at_face_ring(&self) -> Vec<String> {
        self.generators
            .iter()
            .filter(|g| matches!(g.kind, GeneratorKind::Edge(_)))
            .map(|g| g.name.clone())
            .collect()
    }

    /// Relations without the linear loop markers (loop variables occur nowhere else).
    pub fn minimal_relations(&self) -> Vec<String> {
        self.relations
            .iter()
            .filter(|r| !self.is_linear_marker(r))
            .map(|r| self.relation_string(r))
            .collect()
    }
}

/// Name of a signed circuit: its edges in traversal order starting from the
/// smallest edge index, each prefixed by `+` (traversed along the reference
/// orientation) or `-`.
fn circuit_name(g: &Graph, z: &Chain1) -> String {
    let support = z.support();
    let mut used = BTreeSet::new();
    let mut parts = Vec::new();
    let Some(&first) = support.first() else {
        return "X{}".into();
    };
    let mut e = first;
    let head = |e: usize| {
        let o = if z.0[e] > 0 { OrientedEdge::forward(e) } else { OrientedEdge::backward(e) };
        g.target(o)
    };
    loop {
        used.insert(e);
        let sign = if z.0[e] > 0 { '+' } else { '-' };
        parts.push(format!("{sign}{}", g.edge(e).id));
        let v = head(e);
        let next = support.iter().copied().find(|&f| {
            !used.contains(&f) && {
                let o = if z.0[f] > 0 { OrientedEdge::forward(f) } else { OrientedEdge::backward(f) };
                g.source(o) == v
            }
        });
        match next {
            Some(f) => e = f,
            None => break,
        }
    }
    format!("X{{{}}}", parts.concat())
}

/// Split a cycle into signed circuits whose signs agree with it.
fn conformal_decomposition(g: &Graph, w: &Chain1) -> Vec<Chain1> {
    let m = g.num_edges();
    let mut rest = w.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        // Walk along arcs of the support until a vertex repeats.
        let start_edge = rest.support()[0];
        let arc = |e: usize, r: &Chain1| if r.0[e] > 0 { OrientedEdge::forward(e) } else { OrientedEdge::backward(e) };
        let mut seen_at: BTreeMap<usize, usize> = BTreeMap::new();
        let mut walk: Vec<usize> = Vec::new();
        let mut e = start_edge;
        seen_at.insert(g.source(arc(e, &rest)), 0);
        let (cut, closing_len) = loop {
            walk.push(e);
            let v = g.target(arc(e, &rest));
            if let Some(&i) = seen_at.get(&v) {
                break (i, walk.len());
            }
            seen_at.insert(v, walk.len());
            e = (0..m)
                .find(|&f| rest.0[f] != 0 && !walk.contains(&f) && g.source(arc(f, &rest)) == v)
                .expect("cycles have no sinks");
        };
        let mut c = vec![0; m];
        for &f in &walk[cut..closing_len] {
            c[f] = rest.0[f].signum();
        }
        let c = Chain1(c);
        rest = &rest - &c;
        out.push(c);
    }
    out
}

/// The generators `X^{+-gamma}` (circuits in order, `+` before `-`) and `T_e`,
/// with the binomials `X^z X^z' - X^{z+z'} T^psi(z,z')` for pairs whose sum is
/// zero or a signed circuit, or whose twist `psi` is nonzero.
pub fn presentation(g: &Graph) -> Result<RingPresentation> {
    let circuits = g.circuits()?;
    let m = g.num_edges();
    let mut signed: Vec<Chain1> = Vec::new();
    let mut generators = Vec::new();
    for c in &circuits {
        for z in [c.clone(), -c] {
            generators.push(Generator { name: circuit_name(g, &z), kind: GeneratorKind::Circuit(z.0.clone()) });
            signed.push(z);
        }
    }
    let t0 = generators.len();
    for e in 0..m {
        generators.push(Generator { name: format!("T{}", g.edge(e).id), kind: GeneratorKind::Edge(e) });
    }
    let index_of: BTreeMap<&Chain1, usize> = signed.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let to_monomial = |idx: &[usize]| -> Monomial {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &i in idx {
            *counts.entry(i).or_default() += 1;
        }
        counts.into_iter().collect()
    };
    let mut relations = Vec::new();
    for a in 0..signed.len() {
        for b in a + 1..signed.len() {
            let w = &signed[a] + &signed[b];
            let p = psi(&signed[a], &signed[b])?;
            let twist = p.iter().any(|&x| x != 0);
            let x_part: Vec<usize> = if w.is_zero() {
                Vec::new()
            } else if let Some(&i) = index_of.get(&w) {
                vec![i]
            } else if twist {
                conformal_decomposition(g, &w).iter().map(|c| index_of[c]).collect()
            } else {
                continue;
            };
            let mut rhs = x_part;
            for (e, &k) in p.iter().enumerate() {
                rhs.extend(std::iter::repeat(t0 + e).take(k as usize));
            }
            let lhs = to_monomial(&[a, b]);
            let rhs = to_monomial(&rhs);
            if lhs != rhs {
                relations.push(Relation { lhs, rhs });
            }
        }
    }
    let eliminated = g.loops().into_iter().map(|e| t0 + e).collect();
    Ok(RingPresentation { generators, relations, eliminated })
}

/// Exponent vectors `c >= 0` over oriented edges with total degree at most
/// `bound` and vanishing oriented boundary: the torus-invariant monomials.
pub fn invariant_ring_oracle(g: &Graph, bound: usize) -> Result<Vec<Vec<Int>>> {
    g.require_connected()?;
    let k = 2 * g.num_edges();
    let mut out = Vec::new();
    let mut c = vec![0 as Int; k];
    fn rec(g: &Graph, c: &mut Vec<Int>, pos: usize, left: Int, out: &mut Vec<Vec<Int>>) {
        if pos == c.len() {
            let b = homology::boundary_oriented(g, &OrChain1(c.clone())).expect("length matches");
            if b.iter().all(|&x| x == 0) {
                out.push(c.clone());
            }
            return;
        }
        for v in 0..=left {
            c[pos] = v;
            rec(g, c, pos + 1, left - v, out);
        }
        c[pos] = 0;
    }
    rec(g, &mut c, 0, bound as Int, &mut out);
    out.sort();
    Ok(out)
}

/// Elements of the cographic semigroup of degree at most `bound`, produced
/// as images of pairs `(z, n)`.
pub fn semigroup_up_to_degree(g: &Graph, bound: usize) -> Result<Vec<Vec<Int>>> {
    let basis = homology::cycle_basis(g)?;
    let m = g.num_edges();
    let bound = bound as Int;
    let mut out = BTreeSet::new();
    let mut coef = vec![-bound; basis.len()];
    loop {
        let z = basis
            .iter()
            .zip(&coef)
            .fold(Chain1::zero(m), |acc, (b, &k)| &acc + &b.scale(k));
        let wz = z.weight();
        if wz <= bound {
            // Markers n with 2 |n| <= bound - |z|.
            let budget = (bound - wz) / 2;
            let mut n = vec![0 as Int; m];
            markers(&mut n, 0, budget, &mut |n| {
                out.insert(pair_to_semigroup(&PairElem { z: z.clone(), n: n.to_vec() }).0);
            });
        }
        let mut i = 0;
        loop {
            if i == coef.len() {
                return Ok(out.into_iter().collect());
            }
            coef[i] += 1;
            if coef[i] <= bound {
                break;
            }
            coef[i] = -bound;
            i += 1;
        }
    }
}

fn markers(n: &mut Vec<Int>, pos: usize, left: Int, f: &mut dyn FnMut(&[Int])) {
    if pos == n.len() {
        f(n);
        return;
    }
    for v in 0..=left {
        n[pos] = v;
        markers(n, pos + 1, left - v, f);
    }
    n[pos] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub dimension: usize,
    pub tangent_dimension: usize,
    pub multiplicity: Int,
    pub extremal_ray_count: usize,
    pub smooth: bool,
    pub finite_quotient: bool,
    pub q_gorenstein: bool,
    pub gorenstein: bool,
    pub canonical: bool,
    pub terminal: bool,
    /// Normal toric varieties always have rational singularities; not computed.
    pub rational: bool,
    pub separating_edge_count: usize,
    pub loop_count: usize,
    /// `separating edges + 2 * loops`: the affine factor split off.
    pub affine_factor_exponent: usize,
    pub reduced_graph: Graph,
}

impl fmt::Display for SingularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension:              {}", self.dimension)?;
        writeln!(f, "tangent dimension:      {}", self.tangent_dimension)?;
        writeln!(f, "multiplicity:           {}", self.multiplicity)?;
        writeln!(f, "extremal rays (dual):   {}", self.extremal_ray_count)?;
        writeln!(f, "smooth:                 {}", self.smooth)?;
        writeln!(f, "finite quotient:        {}", self.finite_quotient)?;
        writeln!(f, "Q-Gorenstein:           {}", self.q_gorenstein)?;
        writeln!(f, "Gorenstein:             {}", self.gorenstein)?;
        writeln!(f, "canonical:              {}", self.canonical)?;
        writeln!(f, "terminal:               {}", self.terminal)?;
        writeln!(f, "rational:               {} (toric, not computed)", self.rational)?;
        writeln!(
            f,
            "affine factor:          A^{} ({} separating edges, {} loops)",
            self.affine_factor_exponent, self.separating_edge_count, self.loop_count
        )?;
        write!(f, "reduced graph:\n{}", self.reduced_graph.to_text())
    }
}

fn consistency(what: &str, got: impl fmt::Debug, want: impl fmt::Debug) -> Error {
    Error::Consistency(format!("{what}: computed {got:?}, expected {want:?}"))
}

/// Invariants and singularity verdicts computed from the cone, with the
/// closed-form values checked as postconditions.
pub fn analyze(g: &Graph) -> Result<SingularityReport> {
    g.require_connected()?;
    let seps = g.separating_edges()?;
    let loops = g.loops();
    let reduced_graph = g.contract_and_delete(&seps, &loops)?;
    if g.num_edges() == 0 {
        // A point: the zero cone.
        return Ok(SingularityReport {
            dimension: 0,
            tangent_dimension: 0,
            multiplicity: 1,
            extremal_ray_count: 0,
            smooth: true,
            finite_quotient: true,
            q_gorenstein: true,
            gorenstein: true,
            canonical: true,
            terminal: true,
            rational: true,
            separating_edge_count: 0,
            loop_count: 0,
            affine_factor_exponent: 0,
            reduced_graph,
        });
    }
    let cones = cographic_cone(g)?;
    let dimension = cones.sigma.dim();

    let (hb, (multiplicity, class)) = rayon::join(
        || hilbert_basis_chains(&cones),
        || {
            rayon::join(
                || cones::subdiagram_volume(&cones.sigma),
                || cones::classify_cone(&cones.sigma_dual),
            )
        },
    );
    let (hb, multiplicity, class) = (hb?, multiplicity?, class?);
    let rays = cones.sigma_dual.ray_coords()?;
    let extremal_ray_count = rays.len();

    // Postconditions against the combinatorial descriptions.
    let explicit = explicit_generators(g)?;
    if hb != explicit {
        return Err(consistency("Hilbert basis", hb.len(), explicit.len()));
    }
    let m = g.num_edges();
    if dimension != g.b1() + m {
        return Err(consistency("dimension", dimension, g.b1() + m));
    }
    let want_rays = 2 * m - seps.len();
    if extremal_ray_count != want_rays {
        return Err(consistency("extremal rays", extremal_ray_count, want_rays));
    }
    let m_gamma: Vec<arith::Rat> = arith::to_rat(&cones.m_gamma());
    if !class.gorenstein || class.m_sigma.as_ref() != Some(&m_gamma) {
        return Err(consistency("Gorenstein form", &class.m_sigma, m_gamma));
    }
    let terminal = class.terminal.unwrap_or(false);
    if !terminal {
        return Err(consistency("terminal", false, true));
    }
    let finite_quotient = extremal_ray_count == dimension;
    let unimodular = finite_quotient && arith::det(rays).abs() == 1;
    let smooth = multiplicity == 1 && terminal && unimodular;
    let tree_like = g.is_tree_like()?;
    if smooth != tree_like {
        return Err(consistency("smooth", smooth, tree_like));
    }
    Ok(SingularityReport {
        dimension,
        tangent_dimension: hb.len(),
        multiplicity,
        extremal_ray_count,
        smooth,
        finite_quotient,
        q_gorenstein: class.q_gorenstein,
        gorenstein: class.gorenstein,
        canonical: class.canonical.unwrap_or(false),
        terminal,
        rational: true,
        separating_edge_count: seps.len(),
        loop_count: loops.len(),
        affine_factor_exponent: seps.len() + 2 * loops.len(),
        reduced_graph,
    })
}
