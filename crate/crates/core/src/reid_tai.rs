//! Cyclic quotient singularities: ages for quotients of affine space, the
//! lattice-extension criterion for quotients of affine toric varieties,
//! descent along equivariant toric maps and reduction to cyclic subgroups.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, Int, Rat};
use crate::cones::{classify_cone, Cone, Lattice};
use crate::error::{Error, Result};

/// `Z_r` acting on a toric variety through a weight vector, reduced mod `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicAction {
    pub order: Int,
    pub weights: Vec<Int>,
}

impl CyclicAction {
    pub fn new(order: Int, weights: &[Int]) -> Result<Self> {
        if order < 1 {
            return Err(Error::invalid("group order must be positive"));
        }
        Ok(CyclicAction { order, weights: weights.iter().map(|w| w.rem_euclid(order)).collect() })
    }

    pub fn trivial(n: usize) -> Self {
        CyclicAction { order: 1, weights: vec![0; n] }
    }
}

/// A diagonalized group element: eigenvalues `zeta^a_i` for a primitive `r`-th root `zeta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElementSpec {
    pub order: Int,
    pub exponents: Vec<Int>,
}

impl GroupElementSpec {
    pub fn new(order: Int, exponents: &[Int]) -> Result<Self> {
        if order < 1 {
            return Err(Error::invalid("element order must be positive"));
        }
        Ok(GroupElementSpec { order, exponents: exponents.iter().map(|a| a.rem_euclid(order)).collect() })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    pub fn inverse(&self) -> Self {
        GroupElementSpec {
            order: self.order,
            exponents: self.exponents.iter().map(|a| (-a).rem_euclid(self.order)).collect(),
        }
    }

    /// `g^j`, rewritten relative to a primitive root of its own order.
    pub fn power(&self, j: Int) -> Self {
        let r = self.order;
        let g = arith::gcd(j.rem_euclid(r), r);
        let order = r / g;
        GroupElementSpec {
            order,
            exponents: self.exponents.iter().map(|a| (j * a).rem_euclid(r) / g).collect(),
        }
    }
}

/// `(1/r) sum ((k a_i) mod r)`: the age with respect to the root `zeta^k`.
pub fn age(spec: &GroupElementSpec, k: Int) -> Result<Rat> {
    let r = spec.order;
    if arith::gcd(k, r) != 1 {
        return Err(Error::invalid(format!("{k} is not a unit mod {r}")));
    }
    let s: Int = spec.exponents.iter().map(|a| (k * a).rem_euclid(r)).sum();
    Ok(Rat::new(s, r))
}

fn units(r: Int) -> impl Iterator<Item = Int> {
    (1..=r.max(1)).filter(move |&k| arith::gcd(k, r) == 1)
}

/// One eigenvalue different from 1, the others equal to 1.
pub fn is_pseudo_reflection(spec: &GroupElementSpec) -> Result<bool> {
    if spec.is_identity() {
        return Err(Error::invalid("the identity is not a pseudo-reflection candidate"));
    }
    Ok(spec.exponents.iter().filter(|&&a| a == 0).count() + 1 == spec.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothQuotientClass {
    pub gorenstein: bool,
    pub canonical: bool,
    pub terminal: bool,
    /// Set when pseudo-reflections were not ruled out: a true canonical or
    /// terminal verdict is then only sufficient, and a false one says nothing.
    pub sufficient_only: bool,
}

/// Age criteria over all nontrivial elements and all primitive roots.
pub fn classify_smooth_quotient(elements: &[GroupElementSpec], no_pseudo_reflections: bool) -> SmoothQuotientClass {
    let mut out =
        SmoothQuotientClass { gorenstein: true, canonical: true, terminal: true, sufficient_only: !no_pseudo_reflections };
    for g in elements.iter().filter(|g| !g.is_identity()) {
        for k in units(g.order) {
            let a = age(g, k).expect("k is a unit");
            out.gorenstein &= a.is_integer();
            out.canonical &= a >= Rat::one();
            out.terminal &= a > Rat::one();
        }
    }
    out
}

/// `Z^n + Z (lambda / r)`, with a Hermite-reduced basis.
pub fn extend_lattice(n: usize, act: &CyclicAction) -> Result<Lattice> {
    if act.weights.len() != n {
        return Err(Error::Dimension(format!("weight vector has length {}, expected {n}", act.weights.len())));
    }
    let mut gens: Vec<Vec<Rat>> = Lattice::standard(n).basis().to_vec();
    gens.push(act.weights.iter().map(|&w| Rat::new(w, act.order)).collect());
    Lattice::generated_by(&gens)
}

/// Outcome of the sufficient Gorenstein test `lambda(m_sigma) / r in Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GorensteinVerdict {
    Yes,
    Unknown,
    /// The cone itself is not Gorenstein.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricQuotientClass {
    pub q_gorenstein: bool,
    /// Exact verdict, read off the cone in the extended lattice.
    pub gorenstein: bool,
    pub canonical: Option<bool>,
    pub terminal: Option<bool>,
    pub gorenstein_sufficient: GorensteinVerdict,
    /// Basis of the extended lattice (rows).
    #[serde(serialize_with = "crate::report::ser_rat_vecs")]
    pub lattice_basis: Vec<Vec<Rat>>,
}

fn require_standard(c: &Cone) -> Result<()> {
    if !c.lattice().is_standard() {
        return Err(Error::invalid("cone must live in the standard lattice"));
    }
    Ok(())
}

fn require_solid(c: &Cone) -> Result<()> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    Ok(())
}

/// Quotient of the toric variety of `c` (in `Z^n`) by `Z_r`, as the same
/// cone in the extended lattice.
pub fn classify_cyclic_toric_quotient(c: &Cone, act: &CyclicAction) -> Result<ToricQuotientClass> {
    require_standard(c)?;
    require_solid(c)?;
    let n = c.ambient_dim();
    let lattice = extend_lattice(n, act)?;
    let extended = Cone::new(lattice.clone(), c.generators().to_vec())?;
    let k = classify_cone(&extended)?;
    let base = classify_cone(c)?;
    let gorenstein_sufficient = match (&base.gorenstein, &base.m_sigma) {
        (true, Some(m)) => {
            let v = arith::rdot(m, &arith::to_rat(&act.weights)) / Rat::from_integer(act.order);
            if v.is_integer() {
                GorensteinVerdict::Yes
            } else {
                GorensteinVerdict::Unknown
            }
        }
        _ => GorensteinVerdict::NotApplicable,
    };
    Ok(ToricQuotientClass {
        q_gorenstein: k.q_gorenstein,
        gorenstein: k.gorenstein,
        canonical: k.canonical,
        terminal: k.terminal,
        gorenstein_sufficient,
        lattice_basis: lattice.basis().to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DescentConclusion {
    pub q_gorenstein: bool,
    /// True when canonicity of the source quotient follows; false leaves it open.
    pub canonical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    /// Every ray of the source maps onto a ray of the target.
    pub ray_images: bool,
    /// Primitive ray generators map to primitive ray generators.
    pub primitive_images: bool,
    pub equivariant: bool,
    pub target_smooth: bool,
    pub no_pseudo_reflections: bool,
    pub hypotheses_hold: bool,
    pub conclusion: Option<DescentConclusion>,
}

/// Checks the hypotheses for descending canonicity along the toric map
/// `map : N1 -> N2` (rows indexed by `N2`) and states the conclusion.
pub fn check_descent(
    c1: &Cone,
    c2: &Cone,
    map: &[Vec<Int>],
    act1: &CyclicAction,
    act2: &CyclicAction,
) -> Result<DescentReport> {
    require_standard(c1)?;
    require_standard(c2)?;
    let (n1, n2) = (c1.ambient_dim(), c2.ambient_dim());
    if map.len() != n2 || map.iter().any(|r| r.len() != n1) {
        return Err(Error::Dimension(format!("map must be a {n2} x {n1} matrix")));
    }
    if act1.weights.len() != n1 || act2.weights.len() != n2 {
        return Err(Error::Dimension("weight vectors do not match the lattices".into()));
    }
    let rays1 = c1.ray_coords()?;
    let rays2: BTreeSet<&Vec<Int>> = c2.ray_coords()?.iter().collect();
    let images: Vec<Vec<Int>> = rays1.iter().map(|u| arith::mat_vec(map, u)).collect();
    let ray_images = images.iter().all(|v| !arith::is_zero(v) && rays2.contains(&arith::primitive(v)));
    let primitive_images = ray_images && images.iter().all(|v| rays2.contains(v));

    let equivariant = act1.order == act2.order && {
        let img = arith::mat_vec(map, &act1.weights);
        img.iter().zip(&act2.weights).all(|(a, b)| (a - b).rem_euclid(act2.order) == 0)
    };

    let smooth_rays: Option<Vec<Vec<Int>>> = {
        let r: Vec<Vec<Int>> = c2.ray_coords()?.to_vec();
        (c2.is_full_dimensional() && r.len() == n2 && arith::det(&r).abs() == 1).then_some(r)
    };
    let target_smooth = smooth_rays.is_some();
    let no_pseudo_reflections = match &smooth_rays {
        Some(r) => {
            // Weights of the coordinate functions dual to the rays.
            let w = arith::solve_int(&arith::transpose(r), &act2.weights).expect("unimodular");
            let w: Vec<Int> = w.iter().map(|x| x.to_integer()).collect();
            let gen = GroupElementSpec::new(act2.order, &w)?;
            (1..act2.order).map(|j| gen.power(j)).filter(|g| !g.is_identity()).all(|g| {
                !is_pseudo_reflection(&g).expect("nontrivial")
            })
        }
        None => false,
    };
    let hypotheses_hold = ray_images && primitive_images && equivariant && target_smooth && no_pseudo_reflections;
    let conclusion = if hypotheses_hold {
        let q = classify_cyclic_toric_quotient(c2, act2)?;
        Some(DescentConclusion { q_gorenstein: true, canonical: q.canonical == Some(true) })
    } else {
        None
    };
    Ok(DescentReport {
        ray_images,
        primitive_images,
        equivariant,
        target_smooth,
        no_pseudo_reflections,
        hypotheses_hold,
        conclusion,
    })
}

/// A cyclic subgroup handed to the per-subgroup classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubgroup {
    pub generator: usize,
    /// Element indices, sorted.
    pub members: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionVerdict {
    pub canonical: bool,
    pub terminal: bool,
    pub subgroups: usize,
}

fn validate_table(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::invalid("empty group"));
    }
    if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(Error::invalid("composition table is not closed"));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::invalid("no identity element"))?;
    for x in 0..n {
        if !(0..n).any(|y| table[x][y] == identity && table[y][x] == identity) {
            return Err(Error::invalid(format!("element {x} has no inverse")));
        }
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Err(Error::invalid("composition is not associative"));
                }
            }
        }
    }
    Ok(identity)
}

/// Enumerates the cyclic subgroups of the group given by `table` and
/// conjoins the `(canonical, terminal)` verdicts of `classify` on each.
pub fn cyclic_reduction<F>(elements: &[GroupElementSpec], table: &[Vec<usize>], classify: F) -> Result<ReductionVerdict>
where
    F: Fn(&CyclicSubgroup, &GroupElementSpec) -> Result<(bool, bool)> + Sync,
{
    if elements.len() != table.len() {
        return Err(Error::Dimension("one table row per element".into()));
    }
    let identity = validate_table(table)?;
    let mut seen = BTreeSet::new();
    let mut subgroups = Vec::new();
    for g in 0..elements.len() {
        let mut members = vec![identity];
        let mut x = g;
        while x != identity {
            members.push(x);
            x = table[x][g];
        }
        members.sort_unstable();
        if seen.insert(members.clone()) {
            subgroups.push(CyclicSubgroup { generator: g, members });
        }
    }
    let verdicts: Vec<(bool, bool)> = subgroups
        .par_iter()
        .map(|s| classify(s, &elements[s.generator]))
        .collect::<Result<_>>()?;
    Ok(ReductionVerdict {
        canonical: verdicts.iter().all(|v| v.0),
        terminal: verdicts.iter().all(|v| v.1),
        subgroups: subgroups.len(),
    })
}

/// Classifier for [`cyclic_reduction`] that quotients the first orthant by the
/// subgroup's generator through the lattice-extension criterion.
pub fn orthant_classifier(_: &CyclicSubgroup, g: &GroupElementSpec) -> Result<(bool, bool)> {
    let n = g.dim();
    if n == 0 {
        return Ok((true, true));
    }
    let orthant = Cone::new(Lattice::standard(n), Lattice::standard(n).basis().to_vec())?;
    let k = classify_cyclic_toric_quotient(&orthant, &CyclicAction::new(g.order, &g.exponents)?)?;
    Ok((k.canonical == Some(true), k.terminal == Some(true)))
}

/// `Z_r` generated by `diag(zeta^a_1, ..., zeta^a_n)`: elements `g^j` and the
/// composition table `j + k mod r`.
pub fn cyclic_group(gen: &GroupElementSpec) -> (Vec<GroupElementSpec>, Vec<Vec<usize>>) {
    let r = gen.order as usize;
    let elements = (0..r).map(|j| gen.power(j as Int)).collect();
    let table = (0..r).map(|j| (0..r).map(|k| (j + k) % r).collect()).collect();
    (elements, table)
}

/// Whether `Z_r` with weights `a` on `A^n` has no pseudo-reflections among
/// its nontrivial elements.
pub fn acts_without_pseudo_reflections(gen: &GroupElementSpec) -> bool {
    (1..gen.order)
        .map(|j| gen.power(j))
        .filter(|g| !g.is_identity())
        .all(|g| !is_pseudo_reflection(&g).expect("nontrivial"))
}

/// `[N' : N] = r / gcd(r, lambda)`.
pub fn expected_index(act: &CyclicAction) -> Int {
    let g = act.weights.iter().fold(act.order, |g, &w| g.gcd(&w));
    act.order / g
}
