use super::PolyMatrix;
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Fraction of nonzero entries at or below which cofactor expansion is used.
const SPARSE_DENSITY: f64 = 0.35;

pub fn det(m: &PolyMatrix) -> Result<Polynomial> {
    check_square(m)?;
    let size = m.rows() * m.cols();
    if size > 0 && m.cols() < 64 && (m.nonzero_count() as f64) <= SPARSE_DENSITY * size as f64 {
        laplace(m)
    } else {
        bareiss(m)
    }
}

fn check_square(m: &PolyMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Fraction-free elimination; every division is exact because each
/// intermediate entry is a minor of the input.
pub fn bareiss(m: &PolyMatrix) -> Result<Polynomial> {
    check_square(m)?;
    let k = m.rows();
    let nv = m.nvars();
    if k == 0 {
        return Ok(Polynomial::one(nv));
    }
    let mut a: Vec<Vec<Polynomial>> = (0..k).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = Polynomial::one(nv);
    for s in 0..k - 1 {
        let piv = (s..k)
            .filter(|&r| !a[r][s].is_zero())
            .min_by_key(|&r| a[r][s].num_terms());
        let Some(p) = piv else {
            return Ok(Polynomial::zero(nv));
        };
        if p != s {
            a.swap(p, s);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(s + 1);
        let pr = &top[s];
        for row in bottom.iter_mut() {
            let lead = row[s].clone();
            for j in s + 1..k {
                let t = &(&row[j] * &pr[s]) - &(&lead * &pr[j]);
                row[j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[s] = Polynomial::zero(nv);
        }
        prev = a[s][s].clone();
    }
    let d = a[k - 1][k - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Cofactor expansion along rows, memoized on the set of used columns.
/// Rows are processed sparsest first.
pub fn laplace(m: &PolyMatrix) -> Result<Polynomial> {
    check_square(m)?;
    let k = m.rows();
    if k >= 64 {
        return bareiss(m);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| m.row(i).iter().filter(|p| !p.is_zero()).count());
    let rows: Vec<Vec<(usize, &Polynomial)>> = order
        .iter()
        .map(|&i| m.row(i).iter().enumerate().filter(|(_, p)| !p.is_zero()).collect())
        .collect();
    let mut memo = HashMap::new();
    let d = expand(&rows, 0, 0, m.nvars(), &mut memo);
    Ok(if permutation_is_odd(&order) { -d } else { d })
}

fn expand(
    rows: &[Vec<(usize, &Polynomial)>],
    k: usize,
    used: u64,
    nv: usize,
    memo: &mut HashMap<u64, Polynomial>,
) -> Polynomial {
    if k == rows.len() {
        return Polynomial::one(nv);
    }
    if let Some(p) = memo.get(&used) {
        return p.clone();
    }
    let mut sum = Polynomial::zero(nv);
    for &(c, e) in &rows[k] {
        let bit = 1u64 << c;
        if used & bit != 0 {
            continue;
        }
        let sub = expand(rows, k + 1, used | bit, nv, memo);
        if sub.is_zero() {
            continue;
        }
        // Position of column c among the columns still free.
        let pos = c - (used & (bit - 1)).count_ones() as usize;
        let t = e * &sub;
        sum = if pos.is_multiple_of(2) { &sum + &t } else { &sum - &t };
    }
    memo.insert(used, sum.clone());
    sum
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Exact rank over the fraction field by fraction-free elimination with
/// full pivoting.
pub fn fraction_free_rank(m: &PolyMatrix) -> usize {
    let (r, c) = (m.rows(), m.cols());
    let nv = m.nvars();
    let mut a: Vec<Vec<Polynomial>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    let mut prev = Polynomial::one(nv);
    let mut rank = 0;
    for s in 0..r.min(c) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(s) {
            for (j, p) in row.iter().enumerate().skip(s) {
                if !p.is_zero() && best.is_none_or(|b| p.num_terms() < b.2) {
                    best = Some((i, j, p.num_terms()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(s, pi);
        for row in a.iter_mut() {
            row.swap(s, pj);
        }
        let (top, bottom) = a.split_at_mut(s + 1);
        let pr = &top[s];
        for row in bottom.iter_mut() {
            let lead = row[s].clone();
            for j in s + 1..c {
                let t = &(&row[j] * &pr[s]) - &(&lead * &pr[j]);
                row[j] = t.div_exact(&prev).expect("fraction-free division is exact");
            }
            row[s] = Polynomial::zero(nv);
        }
        prev = a[s][s].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(n: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::parse_rows(n, rows).unwrap()
    }

    #[test]
    fn small_determinants() {
        let m = mat(2, &[&["x1", "x2"], &["x2", "x1"]]);
        let want = Polynomial::parse(2, "x1^2 - x2^2").unwrap();
        assert_eq!(bareiss(&m).unwrap(), want);
        assert_eq!(laplace(&m).unwrap(), want);
        assert!(det(&mat(1, &[&["x1", "0"]])).is_err());
        assert!(det(&PolyMatrix::zeros(2, 0, 0)).unwrap().is_one());
    }

    #[test]
    fn needs_pivoting() {
        let m = mat(3, &[&["0", "x1", "0"], &["x2", "0", "0"], &["0", "0", "x3"]]);
        let want = Polynomial::parse(3, "-x1*x2*x3").unwrap();
        assert_eq!(bareiss(&m).unwrap(), want);
        assert_eq!(laplace(&m).unwrap(), want);
    }

    #[test]
    fn rank_exact() {
        // Koszul-type 3x3 of rank 2 whose entries are all structurally present.
        let m = mat(3, &[&["-x2", "-x3", "0"], &["x1", "0", "-x3"], &["0", "x1", "x2"]]);
        assert_eq!(fraction_free_rank(&m), 2);
        assert!(det(&m).unwrap().is_zero());
    }
}
