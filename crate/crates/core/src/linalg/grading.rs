use super::PolyMatrix;
use num_traits::{One, Signed};
use std::collections::VecDeque;

/// A Z^n-grading of rows and columns for which every nonzero entry is a
/// single term of degree `col_deg[j] - row_deg[i]`. Every minor of such a
/// matrix is then a single term (or zero).
#[derive(Clone, Debug)]
pub struct Multigrading {
    pub row_deg: Vec<Vec<i64>>,
    pub col_deg: Vec<Vec<i64>>,
    /// All entry coefficients are +1 or -1.
    pub unit_coeffs: bool,
}

impl Multigrading {
    pub fn detect(m: &PolyMatrix) -> Option<Self> {
        let (r, c, n) = (m.rows(), m.cols(), m.nvars());
        let mut unit_coeffs = true;
        for i in 0..r {
            for p in m.row(i) {
                if p.is_zero() {
                    continue;
                }
                if !p.is_term() {
                    return None;
                }
                let a = p.terms()[0].1.abs();
                if !a.is_one() {
                    unit_coeffs = false;
                }
            }
        }
        // Nodes 0..r are rows, r..r+c are columns.
        let mut deg: Vec<Option<Vec<i64>>> = vec![None; r + c];
        for root in 0..r + c {
            if deg[root].is_some() {
                continue;
            }
            deg[root] = Some(vec![0; n]);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let du = deg[u].clone().expect("visited");
                let neighbours: Vec<(usize, Vec<i64>, bool)> = if u < r {
                    (0..c)
                        .filter(|&j| !m.get(u, j).is_zero())
                        .map(|j| (r + j, exponent(m, u, j), true))
                        .collect()
                } else {
                    let j = u - r;
                    (0..r)
                        .filter(|&i| !m.get(i, j).is_zero())
                        .map(|i| (i, exponent(m, i, j), false))
                        .collect()
                };
                for (v, e, forward) in neighbours {
                    let want: Vec<i64> = du
                        .iter()
                        .zip(&e)
                        .map(|(a, b)| if forward { a + b } else { a - b })
                        .collect();
                    match &deg[v] {
                        Some(d) if *d != want => return None,
                        Some(_) => {}
                        None => {
                            deg[v] = Some(want);
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        let mut deg: Vec<Vec<i64>> = deg.into_iter().map(|d| d.expect("all visited")).collect();
        let col_deg = deg.split_off(r);
        Some(Multigrading { row_deg: deg, col_deg, unit_coeffs })
    }
}

fn exponent(m: &PolyMatrix, i: usize, j: usize) -> Vec<i64> {
    m.get(i, j).terms()[0].0.exponents().iter().map(|&e| e as i64).collect()
}
