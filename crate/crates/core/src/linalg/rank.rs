use super::PolyMatrix;
use crate::algebra::{modp, Polynomial};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Evaluation coordinates are drawn from `[-BOUND, BOUND]`.
const BOUND: i64 = 1_000_000;
const MAX_RETRIES: usize = 5;

/// Rank over the fraction field together with a nonzero minor of that size.
#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: Polynomial,
}

fn integer_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..n).map(|_| modp::from_i64(rng.gen_range(-BOUND..=BOUND))).collect()
}

/// Rank via evaluation at random integer points: two evaluations must agree
/// (up to five retries, keeping the best), and the claimed rank is then
/// confirmed by an exact nonzero determinant.
pub fn rank_over_fraction_field(m: &PolyMatrix) -> Result<RankCertificate> {
    let n = m.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7261_6e6b);
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut previous: Option<usize> = None;
    for _ in 0..=MAX_RETRIES + 1 {
        let point = integer_point(n, &mut rng);
        let Some(ev) = m.eval_modp(&point) else { continue };
        let pv = modp::pivots(&ev);
        let r = pv.len();
        if best.as_ref().is_none_or(|b| r > b.len()) {
            best = Some(pv);
        }
        if previous == Some(r) && best.as_ref().map(|b| b.len()) == Some(r) {
            break;
        }
        previous = Some(r);
    }
    let pv = best.ok_or(Error::RankUncertified(MAX_RETRIES))?;
    let mut rows: Vec<usize> = pv.iter().map(|p| p.0).collect();
    let mut cols: Vec<usize> = pv.iter().map(|p| p.1).collect();
    rows.sort_unstable();
    cols.sort_unstable();
    let minor = m.submatrix(&rows, &cols).det()?;
    if minor.is_zero() {
        return Err(Error::RankUncertified(MAX_RETRIES));
    }
    Ok(RankCertificate { rank: pv.len(), rows, cols, minor })
}

/// Colexicographically first set of `s` columns of rank `s`, found greedily
/// (for a matroid the greedy prefix is colex-minimal). Independence is
/// certified by a nonzero `s`-minor.
pub fn select_full_rank_submatrix(m: &PolyMatrix, s: usize) -> Result<(PolyMatrix, Vec<usize>)> {
    if s > m.cols() || s > m.rows() {
        return Err(Error::NoFullRankSubmatrix);
    }
    let n = m.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x636f_6c73);
    let point = integer_point(n, &mut rng);
    let ev = m.eval_modp(&point).ok_or(Error::NoFullRankSubmatrix)?;
    let mut ech = modp::Echelon::new();
    let mut chosen = Vec::with_capacity(s);
    for j in 0..m.cols() {
        if chosen.len() == s {
            break;
        }
        let col: Vec<u64> = ev.iter().map(|r| r[j]).collect();
        if ech.insert(&col) {
            chosen.push(j);
        }
    }
    if chosen.len() < s {
        // The evaluation may be unlucky; fall back to the exact rank.
        if m.exact_rank() < s {
            return Err(Error::NoFullRankSubmatrix);
        }
        return select_exact(m, s);
    }
    let sub = m.select_columns(&chosen);
    let cert = rank_over_fraction_field(&sub)?;
    if cert.rank < s {
        return select_exact(m, s);
    }
    Ok((sub, chosen))
}

fn select_exact(m: &PolyMatrix, s: usize) -> Result<(PolyMatrix, Vec<usize>)> {
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..m.cols() {
        let mut trial = chosen.clone();
        trial.push(j);
        if m.select_columns(&trial).exact_rank() == trial.len() {
            chosen = trial;
            if chosen.len() == s {
                return Ok((m.select_columns(&chosen), chosen));
            }
        }
    }
    Err(Error::NoFullRankSubmatrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(n: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::parse_rows(n, rows).unwrap()
    }

    #[test]
    fn rank_certificates() {
        let m = mat(3, &[&["-x2", "-x3", "0"], &["x1", "0", "-x3"], &["0", "x1", "x2"]]);
        let c = rank_over_fraction_field(&m).unwrap();
        assert_eq!(c.rank, 2);
        assert!(!c.minor.is_zero());
        let z = PolyMatrix::zeros(2, 3, 3);
        assert_eq!(rank_over_fraction_field(&z).unwrap().rank, 0);
    }

    #[test]
    fn colex_first_selection() {
        // Column 1 is a multiple of column 0, so {0, 2} is selected.
        let m = mat(2, &[&["x1", "x1*x2", "0"], &["x2", "x2^2", "x1"]]);
        let (sub, cols) = select_full_rank_submatrix(&m, 2).unwrap();
        assert_eq!(cols, vec![0, 2]);
        assert_eq!(sub.cols(), 2);
        let bad = mat(2, &[&["x1", "x1"], &["x2", "x2"]]);
        assert_eq!(select_full_rank_submatrix(&bad, 2), Err(Error::NoFullRankSubmatrix));
    }
}
