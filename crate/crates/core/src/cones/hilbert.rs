//! Hilbert bases via fundamental parallelotopes of a simplicial dissection.

use rayon::prelude::*;

use crate::arith::{self, Int, Rat};
use crate::error::Result;

use super::{triangulate, Cone, Reduced};

/// A simplicial cone in `Z^d` spanned by `d` independent integer rays.
pub(crate) struct Simplex<'a> {
    rays: Vec<&'a [Int]>,
    /// `det * R^{-1}` where `R` has the rays as columns.
    adj: Vec<Vec<Int>>,
    det: Int,
    /// Diagonal of the Hermite form of the ray lattice.
    radix: Vec<Int>,
}

impl<'a> Simplex<'a> {
    pub fn new(rays: Vec<&'a [Int]>) -> Self {
        let rows: Vec<Vec<Int>> = rays.iter().map(|r| r.to_vec()).collect();
        let det = arith::det(&rows).abs();
        assert!(det != 0, "degenerate simplex");
        let r = arith::transpose(&rows);
        let inv = arith::inverse(&r.iter().map(|x| arith::to_rat(x)).collect::<Vec<_>>()).expect("invertible");
        let adj = inv
            .iter()
            .map(|row| row.iter().map(|x| (x * Rat::from_integer(det)).to_integer()).collect())
            .collect();
        let h = arith::hnf(&rows);
        let radix = (0..h.len()).map(|i| h[i][i]).collect();
        Simplex { rays, adj, det, radix }
    }

    pub fn det(&self) -> Int {
        self.det
    }

    /// All lattice points `sum lambda_i r_i` with `0 <= lambda_i < 1`, as
    /// `(point, numerators of lambda over det)`; the origin included.
    pub fn parallelotope(&self) -> Vec<(Vec<Int>, Vec<Int>)> {
        let d = self.radix.len();
        let mut out = Vec::with_capacity(self.det as usize);
        let mut v = vec![0 as Int; d];
        loop {
            let num: Vec<Int> = self.adj.iter().map(|row| arith::dot(row, &v).rem_euclid(self.det)).collect();
            let mut x = vec![0 as Int; d];
            for (i, r) in self.rays.iter().enumerate() {
                for k in 0..d {
                    x[k] += num[i] * r[k];
                }
            }
            for xk in x.iter_mut() {
                *xk /= self.det;
            }
            out.push((x, num));
            // Mixed-radix increment.
            let mut k = 0;
            loop {
                if k == d {
                    return out;
                }
                v[k] += 1;
                if v[k] < self.radix[k] {
                    break;
                }
                v[k] = 0;
                k += 1;
            }
        }
    }
}

pub(crate) fn simplices(r: &Reduced) -> Vec<Vec<usize>> {
    triangulate::dissect(&r.rays, &r.facets)
}

/// Hilbert basis of a full-dimensional pointed cone in `Z^k`, sorted.
pub(crate) fn reduced_hilbert_basis(r: &Reduced) -> Vec<Vec<Int>> {
    let simplices = simplices(r);
    let mut cand: Vec<Vec<Int>> = simplices
        .par_iter()
        .flat_map_iter(|s| {
            let sx = Simplex::new(s.iter().map(|&i| r.rays[i].as_slice()).collect());
            sx.parallelotope().into_iter().map(|(x, _)| x).filter(|x| !arith::is_zero(x))
        })
        .collect();
    cand.extend(r.rays.iter().cloned());
    cand.sort();
    cand.dedup();
    let w = r.grading();
    cand.sort_by_key(|x| (arith::dot(&w, x), x.clone()));
    let mut basis: Vec<Vec<Int>> = Vec::new();
    for x in cand {
        let reducible = basis.iter().any(|h| {
            let diff: Vec<Int> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            r.contains(&diff)
        });
        if !reducible {
            basis.push(x);
        }
    }
    basis.sort();
    basis
}

/// Hilbert basis in lattice coordinates of the cone's lattice.
pub(crate) fn hilbert_basis_coords(c: &Cone) -> Result<Vec<Vec<Int>>> {
    let r = c.reduced()?;
    let mut out: Vec<Vec<Int>> = reduced_hilbert_basis(&r).iter().map(|x| r.lift(x)).collect();
    out.sort();
    Ok(out)
}

/// Minimal generating set of the semigroup of lattice points in a pointed cone,
/// as ambient vectors.
pub fn hilbert_basis(c: &Cone) -> Result<Vec<Vec<Rat>>> {
    Ok(hilbert_basis_coords(c)?.iter().map(|x| c.lattice().point(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn small_examples() {
        let c = Cone::from_int_generators(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(hilbert_basis_coords(&c).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        let c = Cone::from_int_generators(&[vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(hilbert_basis_coords(&c).unwrap(), vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        // Classic: cone((0,1),(3,-2)) in Z^2 has a basis of size 4 ((0,1),(1,0),(2,-1),(3,-2)).
        let c = Cone::from_int_generators(&[vec![0, 1], vec![3, -2]]).unwrap();
        assert_eq!(hilbert_basis_coords(&c).unwrap().len(), 4);
    }

    #[test]
    fn non_full_dimensional_cone() {
        let c = Cone::from_int_generators(&[vec![1, 0, 0], vec![1, 2, 0]]).unwrap();
        assert_eq!(
            hilbert_basis_coords(&c).unwrap(),
            vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 2, 0]]
        );
    }

    #[test]
    fn non_pointed_rejected() {
        let c = Cone::from_int_generators(&[vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap();
        assert_eq!(hilbert_basis(&c), Err(Error::NotPointed));
    }
}
