use std::collections::BTreeSet;

use proptest::prelude::*;

use cographic::arith::{self, Int, Rat};
use cographic::cographic::{
    analyze, cographic_cone, explicit_generators, pair_to_semigroup, psi, semigroup_add, semigroup_to_pair, PairElem,
};
use cographic::cones::{classify_cone, hilbert_basis, subdiagram_volume, Cone, Lattice};
use cographic::graph::families::{connected_multigraphs, cycle, thick_edge};
use cographic::homology::{cycle_basis, Chain1, OrChain1};
use cographic::reid_tai::{
    acts_without_pseudo_reflections, age, classify_cyclic_toric_quotient, cyclic_group, cyclic_reduction,
    expected_index, extend_lattice, orthant_classifier, CyclicAction, GroupElementSpec,
};
use cographic::Graph;

fn combination(basis: &[Chain1], coeffs: &[Int]) -> Chain1 {
    let mut z = vec![0; basis[0].len()];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (zi, bi) in z.iter_mut().zip(&b.0) {
            *zi += c * bi;
        }
    }
    Chain1(z)
}

/// Pairs over `I_3`: cycles from small combinations of a cycle basis, markers in 0..3.
fn pair_elem() -> impl Strategy<Value = PairElem> {
    (prop::collection::vec(-2 as Int..=2, 2), prop::collection::vec(0 as Int..3, 3)).prop_map(|(c, n)| {
        let basis = cycle_basis(&thick_edge(3)).unwrap();
        PairElem { z: combination(&basis, &c), n }
    })
}

fn add_or(a: &OrChain1, b: &OrChain1) -> OrChain1 {
    OrChain1(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
}

proptest! {
    #[test]
    fn pair_addition_is_a_commutative_monoid(p in pair_elem(), q in pair_elem(), r in pair_elem()) {
        let pq = semigroup_add(&p, &q).unwrap();
        prop_assert_eq!(&pq, &semigroup_add(&q, &p).unwrap());
        let left = semigroup_add(&pq, &r).unwrap();
        let right = semigroup_add(&p, &semigroup_add(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(semigroup_add(&p, &PairElem::zero(3)).unwrap(), p);
    }

    #[test]
    fn pairs_and_semigroup_correspond(p in pair_elem(), q in pair_elem()) {
        let s = pair_to_semigroup(&p);
        prop_assert!(s.is_nonnegative());
        prop_assert_eq!(semigroup_to_pair(&s).unwrap(), p.clone());
        let sum = pair_to_semigroup(&semigroup_add(&p, &q).unwrap());
        prop_assert_eq!(sum, add_or(&s, &pair_to_semigroup(&q)));
    }

    #[test]
    fn pairing_is_symmetric_and_nonnegative(p in pair_elem(), q in pair_elem()) {
        let a = psi(&p.z, &q.z).unwrap();
        prop_assert_eq!(&a, &psi(&q.z, &p.z).unwrap());
        prop_assert!(a.iter().all(|&x| x >= 0));
        prop_assert!(psi(&p.z, &p.z).unwrap().iter().all(|&x| x == 0));
    }

    #[test]
    fn ages_of_inverse_elements_sum_to_moved_coordinates(r in 2 as Int..9, a in prop::collection::vec(0 as Int..9, 1..4)) {
        let g = GroupElementSpec::new(r, &a).unwrap();
        prop_assume!(!g.is_identity());
        let moved = g.exponents.iter().filter(|&&x| x != 0).count() as Int;
        let total = age(&g, 1).unwrap() + age(&g.inverse(), 1).unwrap();
        prop_assert_eq!(total, Rat::from_integer(moved));
    }

    #[test]
    fn extended_lattice_has_expected_index(r in 1 as Int..10, a in prop::collection::vec(0 as Int..10, 1..4)) {
        let act = CyclicAction::new(r, &a).unwrap();
        let l = extend_lattice(a.len(), &act).unwrap();
        prop_assert_eq!(l.index_over_standard(), Rat::from_integer(expected_index(&act)));
    }

    #[test]
    fn trivial_action_changes_nothing(gens in prop::collection::vec(prop::collection::vec(-2 as Int..=2, 3), 3..6)) {
        let c = Cone::from_int_generators(&gens);
        prop_assume!(c.as_ref().is_ok_and(|c| c.is_pointed() && c.is_full_dimensional()));
        let c = c.unwrap();
        let base = classify_cone(&c).unwrap();
        let q = classify_cyclic_toric_quotient(&c, &CyclicAction::trivial(3)).unwrap();
        prop_assert_eq!((q.q_gorenstein, q.gorenstein, q.canonical, q.terminal),
            (base.q_gorenstein, base.gorenstein, base.canonical, base.terminal));
    }

    #[test]
    fn cyclic_reduction_matches_direct_quotient(r in 2 as Int..8, a in prop::collection::vec(0 as Int..8, 2..4)) {
        let gen = GroupElementSpec::new(r, &a).unwrap();
        prop_assume!(acts_without_pseudo_reflections(&gen));
        let (elements, table) = cyclic_group(&gen);
        let v = cyclic_reduction(&elements, &table, orthant_classifier).unwrap();
        let direct = orthant_classifier(&whole_group(), &gen).unwrap();
        prop_assert_eq!((v.canonical, v.terminal), direct);
    }

    #[test]
    fn volume_matches_ehrhart_count(gens in (2usize..=3).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-2 as Int..=2, d), d..5))) {
        let c = Cone::from_int_generators(&gens);
        prop_assume!(c.as_ref().is_ok_and(|c| c.is_pointed() && c.is_full_dimensional()));
        let c = c.unwrap();
        let irreducible = brute_force_hilbert_basis(&c);
        prop_assert_eq!(subdiagram_volume(&c).unwrap(), ehrhart_volume(&c, &irreducible));
    }
}

fn whole_group() -> cographic::reid_tai::CyclicSubgroup {
    cographic::reid_tai::CyclicSubgroup { generator: 0, members: vec![0] }
}

fn lattice_box(bound: &[Int]) -> Vec<Vec<Int>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out.into_iter().flat_map(|p: Vec<Int>| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Irreducible nonzero lattice points, searched in the box spanned by the
/// zonotope of the primitive rays.
fn brute_force_hilbert_basis(c: &Cone) -> Vec<Vec<Int>> {
    let rays = c.ray_coords().unwrap();
    let bound: Vec<Int> = (0..c.ambient_dim()).map(|i| rays.iter().map(|r| r[i].abs()).sum()).collect();
    let pts: BTreeSet<Vec<Int>> =
        lattice_box(&bound).into_iter().filter(|x| !arith::is_zero(x) && c.contains_coords(x)).collect();
    pts.iter()
        .filter(|x| {
            !pts.iter().any(|y| {
                let diff: Vec<Int> = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                !arith::is_zero(&diff) && pts.contains(&diff)
            })
        })
        .cloned()
        .collect()
}

fn binom(n: usize, k: usize) -> Int {
    (0..k).fold(1, |acc, i| acc * (n - i) as Int / (i + 1) as Int)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
        s.push(last);
        s
    })).collect()
}

/// Normalized volume of the region between the origin and the compact faces
/// of the convex hull of nonzero lattice points, as the top finite difference
/// of its lattice point count.
fn ehrhart_volume(c: &Cone, irreducible: &[Vec<Int>]) -> Int {
    let d = c.ambient_dim();
    let rays = c.ray_coords().unwrap();
    let mut facets: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for s in subsets(irreducible.len(), d) {
        let rows: Vec<Vec<Int>> = s.iter().map(|&i| irreducible[i].clone()).collect();
        if arith::rank(&rows) < d {
            continue;
        }
        let u = arith::solve_int(&rows, &vec![1; d]).unwrap();
        let positive = rays.iter().all(|r| arith::rdot(&u, &arith::to_rat(r)) > Rat::from_integer(0));
        let supporting = irreducible.iter().all(|p| arith::rdot(&u, &arith::to_rat(p)) >= Rat::from_integer(1));
        if positive && supporting {
            facets.insert(u);
        }
    }
    assert!(!facets.is_empty());
    let reach: Vec<Int> = (0..d).map(|i| irreducible.iter().map(|p| p[i].abs()).max().unwrap()).collect();
    let count = |k: Int| -> Int {
        let bound: Vec<Int> = reach.iter().map(|b| b * k).collect();
        lattice_box(&bound)
            .into_iter()
            .filter(|x| {
                c.contains_coords(x)
                    && (arith::is_zero(x)
                        || facets.iter().any(|u| arith::rdot(u, &arith::to_rat(x)) <= Rat::from_integer(k)))
            })
            .count() as Int
    };
    (0..=d).map(|k| if (d - k) % 2 == 0 { 1 } else { -1 } * binom(d, k) * count(k as Int)).sum()
}

fn brute_force_circuit_count(g: &Graph) -> usize {
    let m = g.num_edges();
    (1u32..1 << m)
        .filter(|mask| {
            let mut deg = vec![0; g.num_vertices()];
            let mut pairs = Vec::new();
            for e in (0..m).filter(|e| mask >> e & 1 == 1) {
                deg[g.edge(e).source] += 1;
                deg[g.edge(e).target] += 1;
                pairs.push((g.edge(e).source, g.edge(e).target));
            }
            if deg.iter().any(|&d| d != 0 && d != 2) {
                return false;
            }
            let used: Vec<usize> = (0..g.num_vertices()).filter(|&v| deg[v] > 0).collect();
            let relabel = |v: usize| used.iter().position(|&u| u == v).unwrap();
            let pairs: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
            Graph::from_pairs(used.len(), &pairs).is_connected()
        })
        .count()
}

#[test]
fn cographic_volumes_match_ehrhart_count() {
    let mut checked = 0;
    for g in connected_multigraphs(4) {
        let c = cographic_cone(&g).unwrap();
        if c.rank() == 0 || c.rank() > 4 {
            continue;
        }
        let hb: Vec<Vec<Int>> =
            explicit_generators(&g).unwrap().iter().map(|s| c.to_coords(s).unwrap()).collect();
        assert_eq!(subdiagram_volume(&c.sigma).unwrap(), ehrhart_volume(&c.sigma, &hb), "{}", g.to_text());
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn counts_for_graphs_up_to_five_edges() {
    for g in connected_multigraphs(5).iter().filter(|g| g.num_edges() > 0) {
        let r = analyze(g).unwrap();
        let c = cographic_cone(g).unwrap();
        let circuits = brute_force_circuit_count(g);
        let tangent = 2 * circuits + g.num_edges() - g.loops().len();
        assert_eq!(r.dimension, g.b1() + g.num_edges(), "{}", g.to_text());
        assert_eq!(r.tangent_dimension, tangent, "{}", g.to_text());
        assert_eq!(hilbert_basis(&c.sigma).unwrap().len(), tangent, "{}", g.to_text());
        assert_eq!(g.circuits().unwrap().len(), circuits, "{}", g.to_text());
    }
}

#[test]
fn reduction_to_core_graph() {
    for core in connected_multigraphs(3) {
        for (n, m) in [(1, 0), (0, 1), (2, 1)] {
            let k = core.num_vertices();
            let mut pairs: Vec<(usize, usize)> = core.edges().iter().map(|e| (e.source, e.target)).collect();
            for i in 0..n {
                pairs.push((if i == 0 { 0 } else { k + i - 1 }, k + i));
            }
            let last = if n == 0 { 0 } else { k + n - 1 };
            pairs.extend(std::iter::repeat((last, last)).take(m));
            let g = Graph::from_pairs(k + n, &pairs);
            let (a, b) = (analyze(&g).unwrap(), analyze(&core).unwrap());
            assert_eq!(a.dimension, b.dimension + n + 2 * m);
            assert_eq!(a.tangent_dimension, b.tangent_dimension + n + 2 * m);
            assert_eq!(a.multiplicity, b.multiplicity);
            assert_eq!(a.separating_edge_count, n + core.separating_edges().unwrap().len());
        }
    }
}

#[test]
fn orthant_lattice_is_standard_for_identity() {
    let l = extend_lattice(3, &CyclicAction::trivial(3)).unwrap();
    assert_eq!(l, Lattice::standard(3));
    let c = cycle(3);
    assert!(analyze(&c).unwrap().gorenstein);
}
