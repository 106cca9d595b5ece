//! Lattice points of polytopes by bounding-box enumeration.

use num_integer::Integer;

use crate::arith::{self, Int, Rat};

use super::{dd, Lattice};

/// All points of `l` in the convex hull of `vertices` (ambient vectors),
/// sorted by lattice coordinates.
pub fn lattice_points_in_polytope(vertices: &[Vec<Rat>], l: &Lattice) -> Vec<Vec<Rat>> {
    if vertices.is_empty() {
        return Vec::new();
    }
    let n = l.rank();
    let coords: Vec<Vec<Rat>> = vertices.iter().map(|v| l.coordinates(v)).collect();
    // Homogenize to (1, x) and scale to integers.
    let homog: Vec<Vec<Int>> = coords
        .iter()
        .map(|c| {
            let den = c.iter().fold(1 as Int, |a, x| a.lcm(x.denom()));
            let mut h = vec![den];
            h.extend(c.iter().map(|x| (x * Rat::from_integer(den)).to_integer()));
            h
        })
        .collect();
    let (facets, equations) = dd::facets_of(&homog, n + 1);
    let lo: Vec<Int> = (0..n).map(|k| coords.iter().map(|c| c[k].floor().to_integer()).min().unwrap_or(0)).collect();
    let hi: Vec<Int> = (0..n).map(|k| coords.iter().map(|c| c[k].ceil().to_integer()).max().unwrap_or(0)).collect();
    let inside = |x: &[Int]| {
        let mut h = vec![1];
        h.extend_from_slice(x);
        facets.iter().all(|f| arith::dot(f, &h) >= 0) && equations.iter().all(|e| arith::dot(e, &h) == 0)
    };
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        if inside(&x) {
            out.push(l.point(&x));
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}
