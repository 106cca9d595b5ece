//! Pulling dissections of cones into simplicial cones.

use std::collections::{BTreeSet, HashMap};

use crate::arith::{self, Int};

use super::bits::Bits;

/// Dissects the face `face` (a set of generator indices spanning a cone of
/// dimension `dim`) into simplicial cones with pairwise disjoint interiors.
///
/// `incidence[j]` lists the generators on the `j`-th facet of the ambient cone.
/// Every generator must lie on an extremal ray or in the relative interior of
/// some face; the result uses generators as simplex vertices.
pub struct Pulling<'a> {
    gens: &'a [Vec<Int>],
    incidence: &'a [Bits],
    memo: HashMap<Bits, Vec<Vec<usize>>>,
}

impl<'a> Pulling<'a> {
    pub fn new(gens: &'a [Vec<Int>], incidence: &'a [Bits]) -> Self {
        Pulling { gens, incidence, memo: HashMap::new() }
    }

    fn rank(&self, face: &Bits) -> usize {
        let rows: Vec<Vec<Int>> = face.iter().map(|i| self.gens[i].clone()).collect();
        arith::rank(&rows)
    }

    pub fn run(&mut self, face: &Bits, dim: usize) -> Vec<Vec<usize>> {
        if let Some(r) = self.memo.get(face) {
            return r.clone();
        }
        let members: Vec<usize> = face.iter().collect();
        let out = if members.len() == dim {
            vec![members]
        } else if dim == 0 {
            vec![Vec::new()]
        } else {
            let apex = members[0];
            let mut subfaces = BTreeSet::new();
            for inc in self.incidence {
                let g = face.and(inc);
                if g == *face || g.get(apex) || g.count() < dim - 1 {
                    continue;
                }
                if subfaces.contains(&g) {
                    continue;
                }
                if self.rank(&g) == dim - 1 {
                    subfaces.insert(g);
                }
            }
            let mut out = Vec::new();
            for g in subfaces {
                for mut s in self.run(&g, dim - 1) {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
            out
        };
        self.memo.insert(face.clone(), out.clone());
        out
    }
}

/// Incidence sets: for each facet normal, the generators it vanishes on.
pub fn incidence(gens: &[Vec<Int>], facets: &[Vec<Int>]) -> Vec<Bits> {
    facets
        .iter()
        .map(|f| Bits::from_indices(gens.len(), (0..gens.len()).filter(|&i| arith::dot(f, &gens[i]) == 0)))
        .collect()
}

/// Simplicial dissection of a full-dimensional pointed cone given by its rays and facets.
pub fn dissect(rays: &[Vec<Int>], facets: &[Vec<Int>]) -> Vec<Vec<usize>> {
    let dim = rays.first().map_or(0, |r| r.len());
    let inc = incidence(rays, facets);
    let all = Bits::from_indices(rays.len(), 0..rays.len());
    Pulling::new(rays, &inc).run(&all, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::dd;

    #[test]
    fn square_cone_splits_in_two() {
        let rays = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
        let (f, _) = dd::facets_of(&rays, 3);
        let simplices = dissect(&rays, &f);
        assert_eq!(simplices.len(), 2);
        let vol: Int = simplices
            .iter()
            .map(|s| arith::det(&s.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>()).abs())
            .sum();
        assert_eq!(vol, 4);
    }
}
