//! Exact Gaussian elimination over `RatFunc`.

use crate::coeff::{ParamSpace, RatFunc};

/// Basis of `{x : M x = 0}` for the `rows × ncols` matrix `m`.
///
/// Each basis vector has a 1 in its free column and zeros in the other free columns.
pub fn nullspace(space: &ParamSpace, mut m: Vec<Vec<RatFunc>>, ncols: usize) -> Vec<Vec<RatFunc>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..ncols {
                if !m[r][k].is_zero() {
                    let v = &m[i][k] - &(&f * &m[r][k]);
                    m[i][k] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RatFunc::zero(space); ncols];
            v[f] = RatFunc::one(space);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][f];
            }
            v
        })
        .collect()
}
