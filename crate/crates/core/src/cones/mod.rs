//! Rational polyhedral cones over explicit lattices.
//!
//! A [`Lattice`] is a full-rank lattice in `Q^n` given by a basis; a [`Cone`]
//! keeps its generators in ambient coordinates and caches rays and facets in
//! lattice coordinates (integers w.r.t. the basis and its dual basis).

mod bits;
mod classify;
pub(crate) mod dd;
mod hilbert;
mod polytope;
pub(crate) mod triangulate;
mod volume;

pub use classify::{classify_cone, pi_polytope, ConeClass, PiPolytope};
pub use hilbert::hilbert_basis;
pub use polytope::lattice_points_in_polytope;
pub use volume::subdiagram_volume;

use num_traits::{One, Zero};

use crate::arith::{self, Int, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<Vec<Rat>>,
    inverse: Vec<Vec<Rat>>,
}

impl Lattice {
    pub fn standard(n: usize) -> Self {
        let id: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        Lattice { basis: id.clone(), inverse: id }
    }

    /// Lattice with the given basis vectors (rows); they must be independent and span `Q^n`.
    pub fn from_basis(basis: Vec<Vec<Rat>>) -> Result<Self> {
        let n = basis.len();
        if basis.iter().any(|b| b.len() != n) {
            return Err(Error::Dimension("lattice basis must be square".into()));
        }
        let inverse = arith::inverse(&basis).ok_or_else(|| Error::invalid("lattice basis is dependent"))?;
        Ok(Lattice { basis, inverse })
    }

    /// Lattice generated by rational vectors spanning `Q^n`, with a Hermite-reduced basis.
    pub fn generated_by(gens: &[Vec<Rat>]) -> Result<Self> {
        let n = gens.first().map_or(0, |g| g.len());
        let den = gens.iter().flatten().fold(1 as Int, |l, x| num_integer::lcm(l, *x.denom()));
        let scaled: Vec<Vec<Int>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * Rat::from_integer(den)).to_integer()).collect())
            .collect();
        let h = arith::hnf(&scaled);
        if h.len() != n {
            return Err(Error::invalid("generators do not span the ambient space"));
        }
        let basis = h
            .iter()
            .map(|r| r.iter().map(|&x| Rat::new(x, den)).collect())
            .collect();
        Lattice::from_basis(basis)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_standard(&self) -> bool {
        *self == Lattice::standard(self.rank())
    }

    /// Coordinates of an ambient vector w.r.t. the basis.
    pub fn coordinates(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rank())
            .map(|j| (0..self.rank()).fold(Rat::zero(), |s, i| s + v[i] * self.inverse[i][j]))
            .collect()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        arith::is_integral(&self.coordinates(v))
    }

    /// Ambient vector with the given integer coordinates.
    pub fn point(&self, coords: &[Int]) -> Vec<Rat> {
        self.point_rat(&arith::to_rat(coords))
    }

    pub fn point_rat(&self, coords: &[Rat]) -> Vec<Rat> {
        let n = self.rank();
        (0..n)
            .map(|k| (0..n).fold(Rat::zero(), |s, i| s + coords[i] * self.basis[i][k]))
            .collect()
    }

    /// The dual lattice `{y : y . x in Z for all x in L}` under the standard pairing.
    pub fn dual(&self) -> Lattice {
        let t = arith::transpose(&self.inverse);
        Lattice { basis: t, inverse: arith::transpose(&self.basis) }
    }

    /// Primitive lattice vector on the ray through `v` (which must be nonzero).
    pub fn primitive(&self, v: &[Rat]) -> Vec<Rat> {
        self.point(&arith::clear_denominators(&self.coordinates(v)))
    }

    /// Index of the sublattice `Z^n` in this lattice (for super-lattices of `Z^n`).
    pub fn index_over_standard(&self) -> Rat {
        let inv_det = arith::det(
            &self
                .inverse
                .iter()
                .map(|r| r.iter().map(|x| (x * Rat::from_integer(den_lcm(&self.inverse))).to_integer()).collect())
                .collect::<Vec<Vec<Int>>>(),
        );
        let n = self.rank() as u32;
        let d = den_lcm(&self.inverse);
        Rat::new(inv_det.abs(), d.pow(n))
    }
}

fn den_lcm(m: &[Vec<Rat>]) -> Int {
    m.iter().flatten().fold(1, |l, x| num_integer::lcm(l, *x.denom()))
}

#[derive(Clone, Debug)]
pub struct Cone {
    lattice: Lattice,
    generators: Vec<Vec<Rat>>,
    /// Generators in lattice coordinates, primitive.
    gens: Vec<Vec<Int>>,
    /// Primitive extremal rays in lattice coordinates (empty if not pointed).
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    /// Facet normals in dual-basis coordinates: `f . x >= 0`.
    facets: Vec<Vec<Int>>,
    /// `e . x = 0` on the whole cone.
    equations: Vec<Vec<Int>>,
}

impl PartialEq for Cone {
    fn eq(&self, o: &Cone) -> bool {
        let mut a = self.facets.clone();
        let mut b = o.facets.clone();
        a.sort();
        b.sort();
        self.lattice == o.lattice
            && a == b
            && arith::rank(&self.equations) == arith::rank(&o.equations)
            && self.equations.iter().all(|e| o.gens.iter().all(|g| arith::dot(e, g) == 0))
    }
}

impl Cone {
    /// Cone generated by ambient vectors in the given lattice.
    pub fn new(lattice: Lattice, generators: Vec<Vec<Rat>>) -> Result<Self> {
        let n = lattice.rank();
        if generators.iter().any(|g| g.len() != n) {
            return Err(Error::Dimension(format!("generators must have length {n}")));
        }
        if generators.iter().any(|g| g.iter().all(|x| x.is_zero())) {
            return Err(Error::invalid("zero generator"));
        }
        let gens: Vec<Vec<Int>> = generators
            .iter()
            .map(|g| arith::clear_denominators(&lattice.coordinates(g)))
            .collect();
        let (facets, equations) = dd::facets_of(&gens, n);
        let (rays, lineality) = dd::rays_of(&facets, &equations, n);
        let cone = Cone { lattice, generators, gens, rays, lineality, facets, equations };
        cone.self_check()?;
        Ok(cone)
    }

    /// Cone generated by integer vectors in the standard lattice.
    pub fn from_int_generators(generators: &[Vec<Int>]) -> Result<Self> {
        let n = generators.first().map_or(0, |g| g.len());
        Cone::new(Lattice::standard(n), generators.iter().map(|g| arith::to_rat(g)).collect())
    }

    /// Cone `{x : f . x >= 0}` for functionals given in dual-basis coordinates.
    pub fn from_inequalities(lattice: Lattice, normals: &[Vec<Int>]) -> Result<Self> {
        let n = lattice.rank();
        if normals.iter().any(|f| f.len() != n) {
            return Err(Error::Dimension(format!("normals must have length {n}")));
        }
        let (rays, lineality) = dd::rays_of(normals, &[], n);
        let mut gens = rays;
        for l in &lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        let generators = gens.iter().map(|g| lattice.point(g)).collect();
        let cone = Cone::new(lattice, generators)?;
        if normals.iter().any(|f| cone.gens.iter().any(|g| arith::dot(f, g) < 0)) {
            return Err(Error::Consistency("inequality cone conversion failed".into()));
        }
        Ok(cone)
    }

    fn self_check(&self) -> Result<()> {
        let ok = self.gens.iter().all(|g| {
            self.facets.iter().all(|f| arith::dot(f, g) >= 0) && self.equations.iter().all(|e| arith::dot(e, g) == 0)
        });
        if ok {
            Ok(())
        } else {
            Err(Error::Consistency("facet description disagrees with generators".into()))
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.rank()
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    /// Facet normals in dual-basis coordinates.
    pub fn facet_coords(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn equation_coords(&self) -> &[Vec<Int>] {
        &self.equations
    }

    /// Primitive extremal rays in lattice coordinates.
    pub fn ray_coords(&self) -> Result<&[Vec<Int>]> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(&self.rays)
    }

    /// Primitive generators of the extremal rays, as ambient vectors.
    pub fn extremal_rays(&self) -> Result<Vec<Vec<Rat>>> {
        Ok(self.ray_coords()?.iter().map(|r| self.lattice.point(r)).collect())
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let c = self.lattice.coordinates(v);
        let f = |a: &Vec<Int>| arith::rdot(&arith::to_rat(a), &c);
        self.facets.iter().all(|a| f(a) >= Rat::zero()) && self.equations.iter().all(|e| f(e).is_zero())
    }

    pub fn contains_coords(&self, x: &[Int]) -> bool {
        self.facets.iter().all(|a| arith::dot(a, x) >= 0) && self.equations.iter().all(|e| arith::dot(e, x) == 0)
    }

    /// The dual cone, in the dual lattice.
    pub fn dual(&self) -> Cone {
        let dual = self.lattice.dual();
        let mut gens: Vec<Vec<Rat>> = self.facets.iter().map(|f| dual.point(f)).collect();
        for e in &self.equations {
            gens.push(dual.point(e));
            gens.push(dual.point(&e.iter().map(|x| -x).collect::<Vec<_>>()));
        }
        if gens.is_empty() {
            // Dual of the whole space is the origin; represent it with no generators.
            return Cone {
                lattice: dual,
                generators: Vec::new(),
                gens: Vec::new(),
                rays: Vec::new(),
                lineality: Vec::new(),
                facets: Vec::new(),
                equations: (0..self.ambient_dim())
                    .map(|i| (0..self.ambient_dim()).map(|j| Int::from(i == j)).collect())
                    .collect(),
            };
        }
        Cone::new(dual, gens).expect("dual generators are consistent")
    }

    /// Integer coordinates of the cone inside the saturated lattice of its span.
    pub(crate) fn reduced(&self) -> Result<Reduced> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        let n = self.ambient_dim();
        let basis = arith::integer_kernel(&self.equations, n);
        let k = basis.len();
        let coords = |x: &Vec<Int>| -> Vec<Int> {
            crate::homology::coordinates(&basis, x).expect("vector in the span lattice")
        };
        let rays: Vec<Vec<Int>> = self.rays.iter().map(coords).collect();
        let (facets, eqs) = dd::facets_of(&rays, k);
        debug_assert!(eqs.is_empty());
        Ok(Reduced { basis, rays, facets })
    }
}

/// A pointed cone written as a full-dimensional cone in `Z^k`, with `basis`
/// (rows, in lattice coordinates of the original cone) embedding `Z^k`.
#[derive(Clone, Debug)]
pub(crate) struct Reduced {
    pub basis: Vec<Vec<Int>>,
    pub rays: Vec<Vec<Int>>,
    pub facets: Vec<Vec<Int>>,
}

impl Reduced {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Back to lattice coordinates of the original cone.
    pub fn lift(&self, x: &[Int]) -> Vec<Int> {
        let n = self.basis.first().map_or(0, |b| b.len());
        (0..n).map(|j| (0..x.len()).map(|i| x[i] * self.basis[i][j]).sum()).collect()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.facets.iter().all(|f| arith::dot(f, x) >= 0)
    }

    /// A grading functional strictly positive on the cone minus the origin.
    pub fn grading(&self) -> Vec<Int> {
        let k = self.dim();
        self.facets.iter().fold(vec![0; k], |acc, f| acc.iter().zip(f).map(|(a, b)| a + b).collect())
    }
}
