//! Normalized volume of the region between a cone and the convex hull of its
//! nonzero lattice points.

use crate::arith::{self, Int};
use crate::error::Result;

use super::bits::Bits;
use super::hilbert::reduced_hilbert_basis;
use super::triangulate::{incidence, Pulling};
use super::{dd, Cone, Reduced};

pub(crate) fn reduced_volume(r: &Reduced) -> Int {
    let k = r.dim();
    if k == 0 {
        return 1;
    }
    let hb = reduced_hilbert_basis(r);
    let mut gens: Vec<Vec<Int>> = hb
        .iter()
        .map(|h| std::iter::once(1).chain(h.iter().copied()).collect())
        .collect();
    gens.extend(r.rays.iter().map(|u| std::iter::once(0).chain(u.iter().copied()).collect()));
    let (facets, _) = dd::facets_of(&gens, k + 1);
    let bounded: Vec<&Vec<Int>> = facets
        .iter()
        .filter(|f| r.rays.iter().all(|u| arith::dot(&f[1..], u) > 0))
        .collect();
    let inc = incidence(&gens, &facets);
    let mut pulling = Pulling::new(&gens, &inc);
    let mut total = 0;
    for f in bounded {
        let face = Bits::from_indices(gens.len(), (0..hb.len()).filter(|&i| arith::dot(f, &gens[i]) == 0));
        for s in pulling.run(&face, k) {
            let rows: Vec<Vec<Int>> = s.iter().map(|&i| hb[i].clone()).collect();
            total += arith::det(&rows).abs();
        }
    }
    total
}

/// Normalized lattice volume of `closure(cone - conv(nonzero lattice points))`,
/// measured in the lattice of the cone's span (a unimodular simplex has volume 1).
pub fn subdiagram_volume(c: &Cone) -> Result<Int> {
    Ok(reduced_volume(&c.reduced()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_and_a1() {
        let c = Cone::from_int_generators(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(subdiagram_volume(&c).unwrap(), 1);
        let c = Cone::from_int_generators(&[vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(subdiagram_volume(&c).unwrap(), 2);
        // Semigroup of x^a y^b with a >= 0 and a + 5b >= 0: the A_4 surface, multiplicity 2.
        let c = Cone::from_int_generators(&[vec![0, 1], vec![5, -1]]).unwrap();
        assert_eq!(subdiagram_volume(&c).unwrap(), 2);
        // Cone over a rational normal curve of degree 5.
        let c = Cone::from_int_generators(&[vec![1, 0], vec![1, 5]]).unwrap();
        assert_eq!(subdiagram_volume(&c).unwrap(), 5);
        // Cone over a unit square (conifold): multiplicity 2.
        let c = Cone::from_int_generators(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(subdiagram_volume(&c).unwrap(), 2);
    }
}
