//! Gorenstein, Q-Gorenstein, canonical and terminal verdicts for a pointed cone.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::arith::{self, Int, Rat};
use crate::error::Result;

use super::hilbert::{simplices, Simplex};
use super::{lattice_points_in_polytope, Cone, Lattice, Reduced};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeClass {
    pub q_gorenstein: bool,
    pub gorenstein: bool,
    /// Only decided for Q-Gorenstein cones.
    pub canonical: Option<bool>,
    pub terminal: Option<bool>,
    /// Functional pairing to 1 with every primitive ray generator (ambient dual coordinates).
    #[serde(serialize_with = "crate::report::ser_opt_rat_vec")]
    pub m_sigma: Option<Vec<Rat>>,
}

/// Nonzero lattice points `x` of the cone with `m . x <= 1`, assuming
/// `m . u = 1` on every primitive ray generator `u`.
pub(crate) fn pi_points(r: &Reduced) -> Vec<Vec<Int>> {
    let mut out = BTreeSet::new();
    for s in simplices(r) {
        let sx = Simplex::new(s.iter().map(|&i| r.rays[i].as_slice()).collect());
        for (x, num) in sx.parallelotope() {
            if !arith::is_zero(&x) && num.iter().sum::<Int>() <= sx.det() {
                out.insert(x);
            }
        }
    }
    out.extend(r.rays.iter().cloned());
    out.into_iter().collect()
}

/// Solve `m . u = 1` over all primitive rays.
pub(crate) fn gorenstein_form(r: &Reduced) -> Option<Vec<Rat>> {
    arith::solve_int(&r.rays, &vec![1; r.rays.len()])
}

pub fn classify_cone(c: &Cone) -> Result<ConeClass> {
    let r = c.reduced()?;
    let Some(m) = gorenstein_form(&r) else {
        return Ok(ConeClass { q_gorenstein: false, gorenstein: false, canonical: None, terminal: None, m_sigma: None });
    };
    let gorenstein = arith::is_integral(&m);
    let pts = pi_points(&r);
    let rays: BTreeSet<&Vec<Int>> = r.rays.iter().collect();
    let mr = |x: &Vec<Int>| arith::rdot(&m, &arith::to_rat(x));
    let canonical = pts.iter().all(|x| mr(x) == Rat::one());
    let terminal = pts.iter().all(|x| rays.contains(x));
    // Express m as a functional on the ambient space: basis_i . y = m_i.
    let basis_rat: Vec<Vec<Rat>> = r.basis.iter().map(|b| arith::to_rat(b)).collect();
    let y = arith::solve(&basis_rat, &m).expect("basis rows are independent");
    let m_sigma = c.lattice().dual().point_rat(&y);
    Ok(ConeClass {
        q_gorenstein: true,
        gorenstein,
        canonical: Some(canonical),
        terminal: Some(terminal),
        m_sigma: Some(m_sigma),
    })
}

/// `conv(0, primitive ray generators)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiPolytope {
    pub lattice: Lattice,
    pub vertices: Vec<Vec<Rat>>,
}

impl PiPolytope {
    pub fn lattice_points(&self) -> Vec<Vec<Rat>> {
        lattice_points_in_polytope(&self.vertices, &self.lattice)
    }
}

pub fn pi_polytope(c: &Cone) -> Result<PiPolytope> {
    let mut vertices = vec![vec![Rat::from_integer(0); c.ambient_dim()]];
    vertices.extend(c.extremal_rays()?);
    Ok(PiPolytope { lattice: c.lattice().clone(), vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant_is_smooth() {
        let c = Cone::from_int_generators(&[vec![1, 0], vec![0, 1]]).unwrap();
        let k = classify_cone(&c).unwrap();
        assert!(k.q_gorenstein && k.gorenstein);
        assert_eq!((k.canonical, k.terminal), (Some(true), Some(true)));
    }

    #[test]
    fn a1_is_canonical_not_terminal() {
        let c = Cone::from_int_generators(&[vec![1, 0], vec![1, 2]]).unwrap();
        let k = classify_cone(&c).unwrap();
        assert!(k.gorenstein);
        assert_eq!((k.canonical, k.terminal), (Some(true), Some(false)));
        assert_eq!(k.m_sigma, Some(arith::to_rat(&[1, 0])));
    }

    #[test]
    fn conifold() {
        let c = Cone::from_int_generators(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]]).unwrap();
        let k = classify_cone(&c).unwrap();
        assert!(k.gorenstein);
        assert_eq!((k.canonical, k.terminal), (Some(true), Some(true)));
        assert_eq!(k.m_sigma, Some(arith::to_rat(&[1, 1, 1])));
    }

    #[test]
    fn not_q_gorenstein() {
        // Cone over a quadrilateral whose primitive generators are not coplanar.
        let c = Cone::from_int_generators(&[vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 2]]).unwrap();
        let k = classify_cone(&c).unwrap();
        assert!(!k.q_gorenstein && !k.gorenstein);
        assert_eq!(k.canonical, None);
    }
}
