//! Local structure of the universal compactified Jacobian at a boundary
//! point `(C, I)`: the graph of non-free nodes, its toric factor, the
//! splitting across an elliptic tail and the tail automorphism ages.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::arith::{Int, Rat};
use crate::cographic::{analyze, SingularityReport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reid_tai::{age, GroupElementSpec};

/// Dual graph of a stable curve with a geometric genus on each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableDualGraph {
    pub graph: Graph,
    pub genus: Vec<usize>,
}

impl StableDualGraph {
    pub fn new(graph: Graph, genus: Vec<usize>) -> Result<Self> {
        if genus.len() != graph.num_vertices() {
            return Err(Error::Dimension(format!(
                "{} genus labels for {} vertices",
                genus.len(),
                graph.num_vertices()
            )));
        }
        Ok(StableDualGraph { graph, genus })
    }

    /// `b1 + sum of vertex genera`.
    pub fn total_genus(&self) -> usize {
        self.graph.b1() + self.genus.iter().sum::<usize>()
    }

    /// Valence with loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.graph
            .edges()
            .iter()
            .map(|e| usize::from(e.source == v) + usize::from(e.target == v))
            .sum()
    }

    pub fn check_stable(&self) -> Result<()> {
        self.graph.require_connected()?;
        if self.total_genus() < 2 {
            return Err(Error::invalid(format!("total genus {} is below 2", self.total_genus())));
        }
        for v in 0..self.graph.num_vertices() {
            if self.genus[v] == 0 && self.valence(v) < 3 {
                return Err(Error::invalid(format!(
                    "unstable: vertex {} has genus 0 and valence {}",
                    self.graph.vertices()[v],
                    self.valence(v)
                )));
            }
        }
        Ok(())
    }

    /// Parse the graph text format extended by `genus: v g` lines (default 0),
    /// an optional `sigma: e1 e2 ...` line and an optional
    /// `stab: trivial|nontrivial` line.
    pub fn parse(text: &str) -> Result<(StableDualGraph, SheafDatum)> {
        let (graph, extras) = Graph::parse_with_extras(text, &["genus", "sigma", "stab"])?;
        let mut genus = vec![0; graph.num_vertices()];
        let mut sigma: Option<Vec<usize>> = None;
        let mut stab_trivial = None;
        for (line, key, fields) in extras {
            let err = |msg: String| Error::Parse { line, msg };
            match key.as_str() {
                "genus" => {
                    let [v, gv] = fields.as_slice() else {
                        return Err(err("expected `genus: vertex value`".into()));
                    };
                    let i = graph.vertex_index(v).ok_or_else(|| err(format!("unknown vertex {v}")))?;
                    genus[i] = gv.parse().map_err(|_| err(format!("bad genus `{gv}`")))?;
                }
                "sigma" => {
                    if sigma.is_some() {
                        return Err(err("second `sigma:` line".into()));
                    }
                    let ids = fields
                        .iter()
                        .map(|id| graph.edge_index(id).ok_or_else(|| err(format!("unknown edge {id}"))))
                        .collect::<Result<Vec<_>>>()?;
                    sigma = Some(ids);
                }
                _ => {
                    stab_trivial = Some(match fields.as_slice() {
                        [s] if s == "trivial" => true,
                        [s] if s == "nontrivial" => false,
                        _ => return Err(err("expected `stab: trivial` or `stab: nontrivial`".into())),
                    });
                }
            }
        }
        let datum = StableDualGraph::new(graph, genus)?;
        let sheaf = SheafDatum::new(&datum, sigma.unwrap_or_default(), stab_trivial)?;
        Ok((datum, sheaf))
    }
}

/// The nodes where the sheaf fails to be locally free, and whether its
/// stabilizer in `Aut(C)` is trivial (when known).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafDatum {
    /// Edge indices, sorted.
    pub sigma: Vec<usize>,
    pub stab_trivial: Option<bool>,
}

impl SheafDatum {
    pub fn new(datum: &StableDualGraph, sigma: Vec<usize>, stab_trivial: Option<bool>) -> Result<Self> {
        let set: BTreeSet<usize> = sigma.into_iter().collect();
        if let Some(&e) = set.iter().find(|&&e| e >= datum.graph.num_edges()) {
            return Err(Error::invalid(format!("edge index {e} out of range")));
        }
        Ok(SheafDatum { sigma: set.into_iter().collect(), stab_trivial })
    }
}

/// Contract the non-loop edges outside `sigma` and delete the loops outside
/// it, adding the lost first Betti number to the vertex genera.
pub fn gamma_of(datum: &StableDualGraph, sheaf: &SheafDatum) -> Result<StableDualGraph> {
    let g = &datum.graph;
    g.require_connected()?;
    let sigma: BTreeSet<usize> = sheaf.sigma.iter().copied().collect();
    let outside: Vec<usize> = (0..g.num_edges()).filter(|e| !sigma.contains(e)).collect();
    let (loops, contract): (Vec<usize>, Vec<usize>) = outside.iter().partition(|&&e| g.is_loop(e));
    let gamma = g.contract_and_delete(&contract, &loops)?;
    let smoothed = g.delete_edges(&sheaf.sigma);
    let label = smoothed.components();
    let classes: Vec<usize> = label.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let genus = classes
        .iter()
        .map(|&c| {
            let verts = (0..g.num_vertices()).filter(|&v| label[v] == c);
            let nv = verts.clone().count();
            let base: usize = verts.map(|v| datum.genus[v]).sum();
            let ne = outside.iter().filter(|&&e| label[g.edge(e).source] == c).count();
            base + ne + 1 - nv
        })
        .collect();
    StableDualGraph::new(gamma, genus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalStructureReport {
    pub total_genus: usize,
    pub gamma: StableDualGraph,
    pub toric_factor: SingularityReport,
    /// Whether the point lies in the locus of finite quotient singularities.
    pub finite_quotient_locus: bool,
    /// Present only for genus at least 4 with a known stabilizer.
    pub smooth: Option<bool>,
    pub splitting: Option<TailSplitting>,
}

pub fn local_report(datum: &StableDualGraph, sheaf: &SheafDatum, tail: Option<&[usize]>) -> Result<LocalStructureReport> {
    datum.check_stable()?;
    let gamma = gamma_of(datum, sheaf)?;
    let toric_factor = analyze(&gamma.graph)?;
    let tree_like = gamma.graph.is_tree_like()?;
    let g = datum.total_genus();
    let smooth = match sheaf.stab_trivial {
        Some(trivial) if g >= 4 => Some(tree_like && trivial),
        _ => None,
    };
    let splitting = tail.map(|t| tail_splitting(datum, sheaf, t)).transpose()?;
    Ok(LocalStructureReport { total_genus: g, gamma, toric_factor, finite_quotient_locus: tree_like, smooth, splitting })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitFactor {
    pub name: String,
    pub dimension: usize,
}

/// `U(Gamma)` split along the edge joining a tail to the rest of the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailSplitting {
    /// `2-I` when the joining node is in `sigma`, `2-II` otherwise.
    pub case: String,
    pub p_in_sigma: bool,
    pub factors: Vec<SplitFactor>,
    /// `k[X_q, Y_q]` when the tail keeps a loop of `sigma`, `k` when it has no edges.
    pub tail_factor: String,
    pub dimension: usize,
}

fn sub_datum(datum: &StableDualGraph, sheaf: &SheafDatum, keep: &[usize]) -> Result<Graph> {
    let g = datum.graph.induced(keep);
    let genus = keep.iter().map(|&v| datum.genus[v]).collect();
    let sub = StableDualGraph::new(g, genus)?;
    let sigma: Vec<usize> = sheaf
        .sigma
        .iter()
        .filter_map(|&e| sub.graph.edge_index(&datum.graph.edge(e).id))
        .collect();
    let sheaf = SheafDatum { sigma, stab_trivial: None };
    Ok(gamma_of(&sub, &sheaf)?.graph)
}

/// Splits `U(Gamma_(C,I))` across the node `p` joining the tail vertices to
/// the rest; the dimensions of the factors must add up to the whole.
pub fn tail_splitting(datum: &StableDualGraph, sheaf: &SheafDatum, tail: &[usize]) -> Result<TailSplitting> {
    let g = &datum.graph;
    let tail: BTreeSet<usize> = tail.iter().copied().collect();
    if tail.is_empty() || tail.len() >= g.num_vertices() || tail.iter().any(|&v| v >= g.num_vertices()) {
        return Err(Error::invalid("tail must be a proper nonempty vertex subset"));
    }
    let crossing: Vec<usize> = (0..g.num_edges())
        .filter(|&e| tail.contains(&g.edge(e).source) != tail.contains(&g.edge(e).target))
        .collect();
    let [p] = crossing.as_slice() else {
        return Err(Error::invalid(format!("tail meets the rest of the curve in {} edges, expected 1", crossing.len())));
    };
    let p_in_sigma = sheaf.sigma.contains(p);
    let inside: Vec<usize> = tail.iter().copied().collect();
    let outside: Vec<usize> = (0..g.num_vertices()).filter(|v| !tail.contains(v)).collect();
    let gamma_tail = sub_datum(datum, sheaf, &inside)?;
    let gamma_rest = sub_datum(datum, sheaf, &outside)?;
    let dim_tail = analyze(&gamma_tail)?.dimension;
    let dim_rest = analyze(&gamma_rest)?.dimension;
    let tail_factor = match (gamma_tail.num_edges(), gamma_tail.loops().len()) {
        (0, _) => "k".to_string(),
        (1, 1) => format!("k[X_{q}, Y_{q}]", q = gamma_tail.edge(0).id),
        _ => "U(tail)".to_string(),
    };
    let mut factors = vec![
        SplitFactor { name: "U(rest)".into(), dimension: dim_rest },
        SplitFactor { name: tail_factor.clone(), dimension: dim_tail },
    ];
    if p_in_sigma {
        factors.push(SplitFactor { name: format!("k[T_{}]", g.edge(*p).id), dimension: 1 });
    }
    let dimension = analyze(&gamma_of(datum, sheaf)?.graph)?.dimension;
    let sum: usize = factors.iter().map(|f| f.dimension).sum();
    if sum != dimension {
        return Err(Error::Consistency(format!("tail factors have total dimension {sum}, expected {dimension}")));
    }
    Ok(TailSplitting {
        case: if p_in_sigma { "2-I" } else { "2-II" }.into(),
        p_in_sigma,
        factors,
        tail_factor,
        dimension,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MVariant {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailCase {
    SmoothTail,
    NodalLocallyFree,
    NodalNotLocallyFree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticTailAges {
    pub order: Int,
    pub exponents: Vec<Int>,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub min_age: Rat,
    pub satisfies_rt: bool,
}

/// Eigenvalue exponents of an automorphism of order `n` of an elliptic tail
/// on the tangent directions `(M block)` and on the node smoothing `(N block)`.
fn tail_blocks(n: Int, variant: MVariant) -> Option<(Vec<Int>, Int)> {
    use MVariant::*;
    Some(match (n, variant) {
        (2, First) => (vec![1, 0], 1),
        (3, First) => (vec![1, 2], 2),
        (3, Second) => (vec![2, 1], 1),
        (4, First) => (vec![1, 2], 3),
        (4, Second) => (vec![3, 2], 1),
        (6, First) => (vec![5, 4], 1),
        (6, Second) => (vec![1, 2], 5),
        _ => return None,
    })
}

/// Minimal age of the block-diagonal tail automorphism over all primitive roots.
pub fn elliptic_tail_ages(n: Int, variant: MVariant, case: TailCase) -> Result<EllipticTailAges> {
    let (m, nblock) =
        tail_blocks(n, variant).ok_or_else(|| Error::invalid(format!("no tail automorphism of order {n} ({variant:?})")))?;
    if case != TailCase::SmoothTail && n != 2 {
        return Err(Error::invalid("nodal tails only carry automorphisms of order 2"));
    }
    let mut exponents = m;
    match case {
        TailCase::SmoothTail | TailCase::NodalLocallyFree => exponents.push(nblock),
        TailCase::NodalNotLocallyFree => exponents.extend([1, 0]),
    }
    let spec = GroupElementSpec::new(n, &exponents)?;
    let min_age = (1..n)
        .filter(|&k| crate::arith::gcd(k, n) == 1)
        .map(|k| age(&spec, k))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("at least one unit");
    Ok(EllipticTailAges { order: n, exponents: spec.exponents, satisfies_rt: min_age >= Rat::one(), min_age })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(n: usize, pairs: &[(usize, usize)], genus: &[usize]) -> StableDualGraph {
        StableDualGraph::new(Graph::from_pairs(n, pairs), genus.to_vec()).unwrap()
    }

    #[test]
    fn contraction() {
        // Two vertices joined by three edges (genus 2).
        let d = datum(2, &[(0, 1), (0, 1), (0, 1)], &[0, 0]);
        d.check_stable().unwrap();
        let all = SheafDatum::new(&d, vec![0, 1, 2], None).unwrap();
        assert_eq!(gamma_of(&d, &all).unwrap(), d);
        let two = SheafDatum::new(&d, vec![0, 1], None).unwrap();
        let g = gamma_of(&d, &two).unwrap();
        assert_eq!((g.graph.num_vertices(), g.graph.num_edges(), g.genus.clone()), (1, 2, vec![0]));
        let none = SheafDatum::new(&d, vec![], None).unwrap();
        let g = gamma_of(&d, &none).unwrap();
        assert_eq!((g.graph.num_edges(), g.genus.clone()), (0, vec![2]));
        assert_eq!(g.total_genus(), 2);
    }

    #[test]
    fn loop_outside_sigma_raises_genus() {
        let d = datum(1, &[(0, 0), (0, 0)], &[0]);
        let s = SheafDatum::new(&d, vec![1], None).unwrap();
        let g = gamma_of(&d, &s).unwrap();
        assert_eq!((g.graph.num_edges(), g.genus.clone()), (1, vec![1]));
    }

    #[test]
    fn instability_detected() {
        let d = datum(2, &[(0, 1), (0, 1)], &[0, 1]);
        assert!(d.check_stable().is_err());
    }

    #[test]
    fn reports() {
        let d = datum(1, &[], &[4]);
        let r = local_report(&d, &SheafDatum::new(&d, vec![], Some(true)).unwrap(), None).unwrap();
        assert_eq!(r.smooth, Some(true));
        let d = datum(2, &[(0, 1), (0, 1)], &[1, 1]);
        let r = local_report(&d, &SheafDatum::new(&d, vec![0, 1], None).unwrap(), None).unwrap();
        assert!(!r.finite_quotient_locus);
        assert_eq!(r.smooth, None);
        let d = datum(1, &[(0, 0), (0, 0)], &[0]);
        let r = local_report(&d, &SheafDatum::new(&d, vec![0, 1], None).unwrap(), None).unwrap();
        assert!(r.finite_quotient_locus);
        assert_eq!((r.toric_factor.dimension, r.toric_factor.smooth), (4, true));
    }

    #[test]
    fn splitting_along_a_tail() {
        // Genus 2 vertex, node p to a genus 0 vertex carrying loop q.
        let d = datum(2, &[(0, 1), (1, 1)], &[2, 0]);
        let s = SheafDatum::new(&d, vec![0, 1], None).unwrap();
        let t = tail_splitting(&d, &s, &[1]).unwrap();
        assert_eq!(t.case, "2-I");
        assert_eq!(t.tail_factor, "k[X_2, Y_2]");
        assert_eq!(t.dimension, 3);
        let d = datum(2, &[(0, 1)], &[2, 1]);
        let s = SheafDatum::new(&d, vec![], None).unwrap();
        let t = tail_splitting(&d, &s, &[1]).unwrap();
        assert_eq!((t.case.as_str(), t.tail_factor.as_str(), t.dimension), ("2-II", "k", 0));
    }

    #[test]
    fn tail_ages() {
        let a = elliptic_tail_ages(2, MVariant::First, TailCase::SmoothTail).unwrap();
        assert_eq!((a.exponents.clone(), a.min_age), (vec![1, 0, 1], Rat::one()));
        let a = elliptic_tail_ages(3, MVariant::First, TailCase::SmoothTail).unwrap();
        assert_eq!(a.min_age, Rat::new(4, 3));
        let a = elliptic_tail_ages(2, MVariant::First, TailCase::NodalNotLocallyFree).unwrap();
        assert_eq!((a.exponents.clone(), a.min_age), (vec![1, 0, 1, 0], Rat::one()));
        assert!(elliptic_tail_ages(3, MVariant::First, TailCase::NodalLocallyFree).is_err());
        assert!(elliptic_tail_ages(5, MVariant::First, TailCase::SmoothTail).is_err());
    }

    #[test]
    fn parse_dual_graph() {
        let text = "vertices: a b\n1: a b\n2: a b\n3: a b\ngenus: a 1\nsigma: 1 2\nstab: trivial\n";
        let (d, s) = StableDualGraph::parse(text).unwrap();
        assert_eq!(d.genus, vec![1, 0]);
        assert_eq!(s.sigma, vec![0, 1]);
        assert_eq!(s.stab_trivial, Some(true));
        assert!(matches!(StableDualGraph::parse("vertices: a\ngenus: b 1\n"), Err(Error::Parse { line: 2, .. })));
    }
}
