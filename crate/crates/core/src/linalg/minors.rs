use super::grading::Multigrading;
use super::{random_point, PolyMatrix};
use crate::algebra::{gcd, modp, Monomial, Polynomial};
use crate::combin::ColexIter;
use crate::error::{Error, Result};

/// `f_i = (-1)^(i+1) det(C with row i deleted)` (1-based `i`) for a
/// `(s+1) x s` matrix `C`; the vector `f` satisfies `C^T f = 0`.
pub fn signed_maximal_minors(c: &PolyMatrix) -> Result<Vec<Polynomial>> {
    if c.rows() != c.cols() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "signed maximal minors need (s+1) x s, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    (0..c.rows())
        .map(|i| {
            let d = c.delete_row(i).det()?;
            Ok(if i % 2 == 1 { -d } else { d })
        })
        .collect()
}

/// Normalized gcd of all `t x t` minors; `0` when they all vanish (or no
/// such minor exists) and `1` for `t = 0`.
///
/// The value does not depend on the evaluation strategy. Matrices whose
/// entries are single terms compatible with a Z^n-grading are handled
/// exactly by a matroid argument; otherwise a few minors chosen by random
/// evaluation seed the gcd before a colexicographic sweep (columns, then
/// rows, skipping structurally singular row sets) that stops once the gcd
/// reaches 1.
pub fn minors_gcd(m: &PolyMatrix, t: usize) -> Polynomial {
    let n = m.nvars();
    if t == 0 {
        return Polynomial::one(n);
    }
    if t > m.rows() || t > m.cols() {
        return Polynomial::zero(n);
    }
    if let Some(g) = m.multigrading() {
        if g.unit_coeffs && t <= 19 {
            if t == m.cols() {
                return graded_full_gcd(m, &g, t, false);
            }
            if t == m.rows() {
                return graded_full_gcd(m, &g, t, true);
            }
        }
    }
    general_gcd(m, t)
}

/// Reference implementation: every `t`-minor, colex columns then colex rows.
pub fn minors_gcd_by_enumeration(m: &PolyMatrix, t: usize) -> Polynomial {
    let n = m.nvars();
    if t == 0 {
        return Polynomial::one(n);
    }
    let mut g = Polynomial::zero(n);
    for cols in crate::combin::colex_subsets(m.cols(), t) {
        for rows in crate::combin::colex_subsets(m.rows(), t) {
            let d = m.submatrix(&rows, &cols).det().expect("square");
            g = gcd(&g, &d);
        }
    }
    g
}

/// For graded matrices each maximal minor is `c * x^(sum col_deg - sum row_deg)`
/// with `0 < |c| <= t!`, so its image mod P at a point with nonzero
/// coordinates vanishes exactly when the minor does. The minimal exponent of
/// `x_k` is then attained by a maximum-weight basis of the row matroid,
/// which the greedy algorithm finds.
fn graded_full_gcd(m: &PolyMatrix, g: &Multigrading, t: usize, transpose: bool) -> Polynomial {
    let n = m.nvars();
    let (rows_deg, cols_deg) = if transpose { (&g.col_deg, &g.row_deg) } else { (&g.row_deg, &g.col_deg) };
    let point = random_point(n, 0x6d61_7472);
    let ev = m.eval_modp(&point).expect("integral entries");
    let vectors: Vec<Vec<u64>> = if transpose {
        (0..m.cols()).map(|j| ev.iter().map(|r| r[j]).collect()).collect()
    } else {
        ev
    };
    // Rows (of the possibly transposed matrix) carry `-row_deg` for the
    // original orientation and `+col_deg` after transposing.
    let sign: i64 = if transpose { -1 } else { 1 };
    let mut full = modp::Echelon::new();
    for v in &vectors {
        full.insert(v);
    }
    if full.rank() < t {
        return Polynomial::zero(n);
    }
    let mut exps = vec![0u32; n];
    for (k, e) in exps.iter_mut().enumerate() {
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(sign * rows_deg[i][k]));
        let mut ech = modp::Echelon::new();
        let mut best = 0i64;
        for i in order {
            if ech.insert(&vectors[i]) {
                best += sign * rows_deg[i][k];
                if ech.rank() == t {
                    break;
                }
            }
        }
        let total: i64 = cols_deg.iter().map(|d| d[k]).sum::<i64>() * sign;
        let ek = total - best;
        assert!(ek >= 0, "graded minor exponent is negative");
        *e = ek as u32;
    }
    Polynomial::monomial(Monomial::from_exponents(&exps))
}

fn general_gcd(m: &PolyMatrix, t: usize) -> Polynomial {
    let n = m.nvars();
    let mut g = Polynomial::zero(n);
    let mut found_generic = false;
    // Seeds: a nonzero minor of M, and for each x_k one whose image at x_k = 0
    // is nonzero (so it is not divisible by x_k).
    for k in std::iter::once(None).chain((0..n).map(Some)) {
        let mk = match k {
            Some(k) => m.map(|p| p.vanish_var(k)),
            None => m.clone(),
        };
        let point = random_point(n, 0x5eed ^ k.map_or(u64::MAX, |k| k as u64));
        let Some(ev) = mk.eval_modp(&point) else { continue };
        let pv = modp::pivots(&ev);
        if pv.len() < t {
            continue;
        }
        if k.is_none() {
            found_generic = true;
        }
        let rows: Vec<usize> = pv[..t].iter().map(|p| p.0).collect();
        let mut cols: Vec<usize> = pv[..t].iter().map(|p| p.1).collect();
        cols.sort_unstable();
        let d = m.submatrix(&rows, &cols).det().expect("square");
        g = gcd(&g, &d);
        if g.is_one() {
            return g;
        }
    }
    if !found_generic && m.exact_rank() < t {
        return Polynomial::zero(n);
    }
    let mut colit = ColexIter::new(m.cols(), t);
    while let Some(cols) = colit.next_subset() {
        let cols = cols.to_vec();
        let support: Vec<u64> = (0..m.rows())
            .map(|i| {
                cols.iter()
                    .enumerate()
                    .filter(|(_, &j)| !m.get(i, j).is_zero())
                    .fold(0u64, |acc, (b, _)| acc | (1 << b))
            })
            .collect();
        let mut stop = false;
        let mut chosen = Vec::with_capacity(t);
        sweep_rows(&support, t, m.rows(), &mut chosen, &mut |rows| {
            let mut rows = rows.to_vec();
            rows.sort_unstable();
            let d = m.submatrix(&rows, &cols).det().expect("square");
            g = gcd(&g, &d);
            stop = g.is_one();
            stop
        });
        if stop {
            break;
        }
    }
    g
}

/// Visits `t`-subsets of rows in colex order, skipping every subtree in
/// which no row set can be matched onto all `t` columns. `visit` returns
/// `true` to stop. `chosen` holds the fixed largest elements, descending.
fn sweep_rows(
    support: &[u64],
    t: usize,
    bound: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let need = t - chosen.len();
    if need == 0 {
        return visit(chosen);
    }
    for top in need - 1..bound {
        chosen.push(top);
        let fixed: Vec<u64> = chosen.iter().map(|&i| support[i]).collect();
        let feasible = matching_size(&fixed, t) == fixed.len() && {
            let mut all = fixed.clone();
            all.extend(support[..top].iter().copied());
            matching_size(&all, t) == t
        };
        if feasible && sweep_rows(support, t, top, chosen, visit) {
            chosen.pop();
            return true;
        }
        chosen.pop();
    }
    false
}

/// Maximum bipartite matching between rows (given by column bitmasks) and `t` columns.
fn matching_size(rows: &[u64], t: usize) -> usize {
    let mut owner: Vec<Option<usize>> = vec![None; t];
    let mut size = 0;
    for r in 0..rows.len() {
        let mut seen = 0u64;
        if augment(rows, r, &mut owner, &mut seen) {
            size += 1;
            if size == t {
                break;
            }
        }
    }
    size
}

fn augment(rows: &[u64], r: usize, owner: &mut [Option<usize>], seen: &mut u64) -> bool {
    let mut mask = rows[r] & !*seen;
    while mask != 0 {
        let c = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        *seen |= 1 << c;
        let ok = match owner[c] {
            None => true,
            Some(o) => augment(rows, o, owner, seen),
        };
        if ok {
            owner[c] = Some(r);
            return true;
        }
    }
    false
}
