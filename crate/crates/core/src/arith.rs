//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Integer vectors use `i128`; rational work goes through `Ratio<i128>`.
//! Matrices are row-major `Vec<Vec<_>>`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Int = i128;
pub type Rat = Ratio<i128>;

pub fn gcd(a: Int, b: Int) -> Int {
    a.gcd(&b)
}

/// Gcd of all entries (0 for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(0, |g, &x| if g == 1 { 1 } else { gcd(g, x) })
}

/// Divide out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rdot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y)
}

pub fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}

/// Scale a rational vector to the primitive integer vector on the same ray.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let l = v.iter().fold(1, |l: Int, x| l.lcm(x.denom()));
    let w: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(l)).to_integer()).collect();
    primitive(&w)
}

pub fn is_zero(v: &[Int]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Matrix times column vector.
pub fn mat_vec(m: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let bt = transpose(b);
    a.iter()
        .map(|r| bt.iter().map(|c| dot(r, c)).collect())
        .collect()
}

/// Reduced row echelon form over the rationals. Returns the pivot columns.
fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in c..cols {
                    let d = m[r][j] * f;
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an integer matrix (fraction-free elimination).
pub fn rank(m: &[Vec<Int>]) -> usize {
    let mut a: Vec<Vec<Int>> = m.iter().map(|r| primitive(r)).collect();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                let g = gcd(x, y);
                let (x, y) = (x / g, y / g);
                let row: Vec<Int> = (0..cols).map(|j| x * a[i][j] - y * a[r][j]).collect();
                a[i] = primitive(&row);
            }
        }
        r += 1;
    }
    r
}

pub fn rank_rat(m: &[Vec<Rat>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Some solution of `m x = b` over the rationals, if one exists.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(r, &x)| {
            let mut r = r.clone();
            r.push(x);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols];
    }
    Some(x)
}

pub fn solve_int(m: &[Vec<Int>], b: &[Int]) -> Option<Vec<Rat>> {
    let mr: Vec<Vec<Rat>> = m.iter().map(|r| to_rat(r)).collect();
    solve(&mr, &to_rat(b))
}

/// Inverse of a square rational matrix.
pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the rational null space `{x : m x = 0}`, scaled to primitive integer vectors.
pub fn nullspace(m: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Rat>> = m.iter().map(|r| to_rat(r)).collect();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -a[i][f];
            }
            clear_denominators(&x)
        })
        .collect()
}

/// Row-style Hermite normal form: returns a basis (echelon, positive pivots,
/// reduced above-pivot entries) of the integer row span.
pub fn hnf(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    hnf_with_transform(rows).0
}

/// Hermite form together with a unimodular `u` such that `u * rows` equals the
/// form followed by zero rows.
pub fn hnf_with_transform(rows: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let m = rows.len();
    let n = if m == 0 { 0 } else { rows[0].len() };
    let mut a = rows.to_vec();
    let mut u: Vec<Vec<Int>> = (0..m)
        .map(|i| (0..m).map(|j| Int::from(i == j)).collect())
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            // Smallest nonzero entry in column c among rows r.. moves to row r.
            let mut best: Option<usize> = None;
            for i in r..m {
                if a[i][c] != 0 && best.map_or(true, |b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c] != 0 {
                    let q = Integer::div_floor(&a[i][c], &a[r][c]);
                    for j in 0..n {
                        a[i][j] -= q * a[r][j];
                    }
                    for j in 0..m {
                        u[i][j] -= q * u[r][j];
                    }
                    if a[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m && a[r][c] != 0 {
            if a[r][c] < 0 {
                a[r].iter_mut().for_each(|x| *x = -*x);
                u[r].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    for &(pr, pc) in &pivots {
        for i in 0..pr {
            let q = Integer::div_floor(&a[i][pc], &a[pr][pc]);
            if q != 0 {
                for j in 0..n {
                    a[i][j] -= q * a[pr][j];
                }
                for j in 0..m {
                    u[i][j] -= q * u[pr][j];
                }
            }
        }
    }
    a.truncate(r);
    (a, u)
}

/// Saturated integer basis of `{x in Z^cols : m x = 0}`.
pub fn integer_kernel(m: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    if m.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| Int::from(i == j)).collect())
            .collect();
    }
    let (h, u) = hnf_with_transform(&transpose(m));
    u[h.len()..].to_vec()
}

/// Diagonal of the Smith normal form (nonzero invariant factors only).
pub fn elementary_divisors(m: &[Vec<Int>]) -> Vec<Int> {
    let mut a = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Find a nonzero pivot of minimal absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = Integer::div_floor(&a[i][t], &p);
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = Integer::div_floor(&a[t][j], &p);
            if q != 0 {
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any entry not divisible by p into row t.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in t..cols {
                let v = a[i][j];
                a[t][j] += v;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_rank() {
        let m = vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]];
        assert_eq!(det(&m), 2 * (6 - 2) + (1 - 3));
        assert_eq!(rank(&m), 3);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
    }

    #[test]
    fn hermite_basis_of_super_lattice() {
        // Scaled generators of Z^2 + Z(1/2,1/2).
        let h = hnf(&[vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn kernel_is_saturated() {
        let k = integer_kernel(&[vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[2, 4, 6]), 0);
        }
        assert_eq!(elementary_divisors(&k), vec![1, 1]);
    }

    #[test]
    fn smith_divisors() {
        assert_eq!(elementary_divisors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(elementary_divisors(&[vec![2, 4], vec![4, 8]]), vec![2]);
    }

    #[test]
    fn linear_solve() {
        let x = solve_int(&[vec![1, 1], vec![1, -1]], &[2, 0]).unwrap();
        assert_eq!(x, vec![Rat::one(), Rat::one()]);
        assert!(solve_int(&[vec![1, 1], vec![2, 2]], &[1, 3]).is_none());
    }
}
