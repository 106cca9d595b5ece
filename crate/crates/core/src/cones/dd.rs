//! Double description: conversion between generator and inequality forms of
//! rational cones, with exact integer arithmetic.

use crate::arith::{self, Int};

use super::bits::Bits;

/// Extreme rays of the pointed cone `{z : a z >= 0}`; `a` must have rank `k`
/// (the number of columns).
pub fn pointed_rays(a: &[Vec<Int>], k: usize) -> Vec<Vec<Int>> {
    if k == 0 {
        return Vec::new();
    }
    let a: Vec<Vec<Int>> = a.iter().map(|r| arith::primitive(r)).filter(|r| !arith::is_zero(r)).collect();
    // Initial simplicial cone from k independent rows.
    let mut basis_rows: Vec<usize> = Vec::new();
    let mut chosen: Vec<Vec<Int>> = Vec::new();
    for (i, r) in a.iter().enumerate() {
        chosen.push(r.clone());
        if arith::rank(&chosen) == chosen.len() {
            basis_rows.push(i);
            if basis_rows.len() == k {
                break;
            }
        } else {
            chosen.pop();
        }
    }
    assert_eq!(basis_rows.len(), k, "inequality system does not define a pointed cone");
    let m = a.len();
    let a0: Vec<Vec<_>> = basis_rows.iter().map(|&i| arith::to_rat(&a[i])).collect();
    let inv = arith::inverse(&a0).expect("independent rows");
    let mut rays: Vec<(Vec<Int>, Bits)> = (0..k)
        .map(|j| {
            let col: Vec<_> = (0..k).map(|i| inv[i][j]).collect();
            let r = arith::clear_denominators(&col);
            let zeros = Bits::from_indices(m, basis_rows.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &i)| i));
            (r, zeros)
        })
        .collect();
    let mut processed = Bits::from_indices(m, basis_rows.iter().copied());
    for (i, row) in a.iter().enumerate() {
        if processed.get(i) {
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|(r, _)| arith::dot(row, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j] < 0).collect();
        processed.set(i);
        if neg.is_empty() {
            for j in 0..rays.len() {
                if vals[j] == 0 {
                    rays[j].1.set(i);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < k {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|t| t == p || t == q || !common.is_subset(&rays[t].1));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], vals[q]);
                let g = arith::gcd(vp, vq);
                let r: Vec<Int> = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(x, y)| (vp / g) * x - (vq / g) * y)
                    .collect();
                let mut z = common;
                z.set(i);
                fresh.push((arith::primitive(&r), z));
            }
        }
        let mut next: Vec<(Vec<Int>, Bits)> = Vec::new();
        for (j, r) in rays.into_iter().enumerate() {
            if vals[j] > 0 {
                next.push(r);
            } else if vals[j] == 0 {
                let (v, mut z) = r;
                z.set(i);
                next.push((v, z));
            }
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    out
}

/// Independent rows spanning the row space of `m`.
pub fn row_basis(m: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = Vec::new();
    for r in m {
        out.push(r.clone());
        if arith::rank(&out) < out.len() {
            out.pop();
        }
    }
    out
}

/// Inequality description of the cone generated by `gens` in `Q^n`:
/// returns `(facets, equations)` with the cone equal to
/// `{x : f x >= 0 for f in facets, e x = 0 for e in equations}`.
/// Facets are irredundant and primitive.
pub fn facets_of(gens: &[Vec<Int>], n: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let span = row_basis(gens);
    let equations = arith::nullspace(&span, n);
    if span.is_empty() {
        return (Vec::new(), equations);
    }
    // Work in coordinates of the span: y = span^T z.
    let st = arith::transpose(&span);
    let ineq: Vec<Vec<Int>> = gens.iter().map(|g| arith::primitive(&arith::mat_vec(&span, g))).collect();
    // ineq[i] . z = g_i . (span^T z)
    let rays = pointed_rays(&ineq, span.len());
    let mut facets: Vec<Vec<Int>> = rays.iter().map(|z| arith::primitive(&arith::mat_vec(&st, z))).collect();
    facets.sort();
    facets.dedup();
    (facets, equations)
}

/// Generator description of `{x : a x >= 0, e x = 0}` in `Q^n`:
/// returns `(rays, lineality)`; the cone is `cone(rays) + span(lineality)`.
pub fn rays_of(a: &[Vec<Int>], e: &[Vec<Int>], n: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let mut all: Vec<Vec<Int>> = a.to_vec();
    all.extend(e.iter().cloned());
    let lineality = arith::nullspace(&all, n);
    let mut constraints: Vec<Vec<Int>> = e.to_vec();
    constraints.extend(lineality.iter().cloned());
    // w: columns span ker(e) intersected with the complement of the lineality space.
    let w = arith::nullspace(&constraints, n);
    if w.is_empty() {
        return (Vec::new(), lineality);
    }
    let wt = arith::transpose(&w);
    let reduced: Vec<Vec<Int>> = a.iter().map(|r| arith::mat_vec(&w, r)).collect();
    let zs = pointed_rays(&reduced, w.len());
    let mut rays: Vec<Vec<Int>> = zs.iter().map(|z| arith::primitive(&arith::mat_vec(&wt, z))).collect();
    rays.sort();
    rays.dedup();
    (rays, lineality)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_pyramid() {
        // Cone over a square: 4 rays, 4 facets.
        let gens = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
        let (f, e) = facets_of(&gens, 3);
        assert!(e.is_empty());
        assert_eq!(f.len(), 4);
        let (r, l) = rays_of(&f, &[], 3);
        assert!(l.is_empty());
        let mut g = gens.clone();
        g.sort();
        assert_eq!(r, g);
    }

    #[test]
    fn non_full_dimensional() {
        let (f, e) = facets_of(&[vec![1, 0]], 2);
        assert_eq!(e.len(), 1);
        assert_eq!(f, vec![vec![1, 0]]);
        let (r, l) = rays_of(&[vec![1, 0]], &[], 2);
        assert_eq!(r, vec![vec![1, 0]]);
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn redundant_generators_dropped() {
        let gens = vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![0, 1]];
        let (f, _) = facets_of(&gens, 2);
        assert_eq!(f, vec![vec![0, 1], vec![1, 0]]);
    }
}
