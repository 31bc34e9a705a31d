//! Explicit Bourbaki sequences of Koszul cycles `Z_i` and the multigraded
//! non-existence checks.

use crate::algebra::{modp, Monomial, Polynomial};
use crate::bourbaki::{
    bourbaki_number, check_bourbaki_map, e1_from_resolution, extract_bourbaki_ideal,
    extract_with_columns, BourbakiCertificate, ExtractedIdeal, IdealGens,
};
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::koszul::{
    basis_lex, cycle_rank, differential, hat_index, quotient_presentation, restrict_map,
    truncated_resolution, Combination, WedgeIndex,
};
use crate::linalg::{random_point, signed_maximal_minors, PolyMatrix};
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// A sequence `0 -> F -> Z_i -> Z_i/∂(F) -> 0` with its certificate and the
/// recovered ideal.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogBundle {
    pub name: String,
    pub n: usize,
    pub i: usize,
    #[serde(serialize_with = "display_all")]
    pub generators: Vec<Combination>,
    /// `ι∘φ : F -> K_(i-1)`.
    pub map_matrix: PolyMatrix,
    pub certificate: BourbakiCertificate,
    /// Presentation `K_(i+1) -> K_i/F` of the cokernel.
    pub presentation: PolyMatrix,
    pub extraction: ExtractedIdeal,
    pub ideal: IdealGens,
    pub expected_ideal: Option<IdealGens>,
    pub expected_divisor: Option<Polynomial>,
    pub witness: Option<WitnessMinor>,
}

/// A distinguished maximal minor of `ι∘φ`.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessMinor {
    pub rows: Vec<WedgeIndex>,
    pub cols: Vec<WedgeIndex>,
    pub value: Polynomial,
}

fn display_all<S: serde::Serializer>(
    v: &[Combination],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl CatalogBundle {
    /// `None` when there is no fixture to compare with.
    pub fn ideal_matches(&self) -> Option<bool> {
        self.expected_ideal.as_ref().map(|e| e.same_generators(&self.ideal))
    }

    pub fn divisor_matches(&self) -> Option<bool> {
        self.expected_divisor.as_ref().map(|d| d == &self.extraction.divisor)
    }

    /// Certificate holds and every available fixture agrees.
    pub fn all_checks_pass(&self) -> bool {
        self.certificate.verdict
            && self.ideal_matches().unwrap_or(true)
            && self.divisor_matches().unwrap_or(true)
    }
}

/// `m_i = i·C(n-1,i-1) - e1(Z_i)`, computed from the truncated Koszul resolution.
pub fn cycle_twist(n: usize, i: usize) -> Result<i64> {
    let res = truncated_resolution(n, i)?;
    Ok(bourbaki_number(i as i64, cycle_rank(n, i) as i64, e1_from_resolution(&res)))
}

fn var(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i - 1)
}

fn assemble(
    name: &str,
    n: usize,
    i: usize,
    generators: Vec<Combination>,
    columns: Vec<WedgeIndex>,
    chosen: Option<Vec<usize>>,
) -> Result<(CatalogBundle, Vec<WedgeIndex>)> {
    let d = differential(n, i)?;
    let map_matrix = restrict_map(&d, &generators)?;
    let certificate = check_bourbaki_map(&map_matrix, generators.len())?;
    let q = quotient_presentation(n, i, &generators, columns)?;
    let extraction = match chosen {
        Some(c) => extract_with_columns(&q.matrix, &c)?,
        None => extract_bourbaki_ideal(&q.matrix)?,
    };
    let ideal = extraction.ideal.clone().with_twist(cycle_twist(n, i)?);
    Ok((
        CatalogBundle {
            name: name.to_string(),
            n,
            i,
            generators,
            map_matrix,
            certificate,
            presentation: q.matrix,
            extraction,
            ideal,
            expected_ideal: None,
            expected_divisor: None,
            witness: None,
        },
        q.basis,
    ))
}

/// `F = <ê_k : k ∉ {i, j}> ⊂ K_(n-1)`; the ideal is `(x_i, x_j)` with twist `2 - n`.
pub fn z_top(n: usize, i: usize, j: usize) -> Result<CatalogBundle> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 3")));
    }
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidArgument(format!("need 1 <= i < j <= n, got ({i}, {j})")));
    }
    let gens: Vec<Combination> = (1..=n)
        .filter(|&k| k != i && k != j)
        .map(|k| Combination::hat(&WedgeIndex::of(&[k]), n))
        .collect();
    let (mut b, _) = assemble("ztop", n, n - 1, gens, basis_lex(n, n), None)?;
    b.expected_ideal = Some(IdealGens::new(n, [var(n, i), var(n, j)]).with_twist(2 - n as i64));
    Ok(b)
}

/// Circular pairs `(1,2), .., (n-1,n), (1,n)`.
pub fn circular_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut a: Vec<(usize, usize)> = (1..n).map(|k| (k, k + 1)).collect();
    a.push((1, n));
    a
}

/// `x1^C(n-1,2) · x2 ⋯ x_(n-2)`, as displayed for the block minor of the `Z_(n-2)` map.
pub fn z_nminus2_stated_witness(n: usize) -> Polynomial {
    let mut e = vec![0u32; n];
    e[0] = binomial(n as i64 - 1, 2) as u32;
    for x in e.iter_mut().take(n.saturating_sub(2)).skip(1) {
        *x += 1;
    }
    Polynomial::monomial(Monomial::from_exponents(&e))
}

/// `F = <ê_ij : (i,j) not circular> ⊂ K_(n-2)`; the ideal is generated by
/// `x/(x_i x_j)` over circular pairs, `x = x1 ⋯ xn`. The presentation rows
/// follow the circular order, its columns are `ê_1, .., ê_n`.
pub fn z_nminus2(n: usize) -> Result<CatalogBundle> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 3")));
    }
    let a = circular_pairs(n);
    let hat = |s: &[usize]| hat_index(&WedgeIndex::of(s), n);
    let mut gens = Vec::new();
    for s in basis_lex(n, 2) {
        let p = (s.as_slice()[0], s.as_slice()[1]);
        if !a.contains(&p) {
            gens.push(Combination::hat(&s, n));
        }
    }
    let columns: Vec<WedgeIndex> = (1..=n).map(|k| hat(&[k]).0).collect();
    let (mut b, qbasis) = assemble("zn2", n, n - 2, gens, columns, None)?;

    // Reorder the presentation rows along the circle.
    let order: Vec<usize> = a
        .iter()
        .map(|&(i, j)| {
            let w = hat(&[i, j]).0;
            qbasis.iter().position(|q| *q == w).expect("circular pair survives")
        })
        .collect();
    let h = &b.presentation;
    let rows: Vec<Vec<Polynomial>> = order.iter().map(|&r| h.row(r).to_vec()).collect();
    let labels = order.iter().map(|&r| h.row_labels().expect("labelled")[r].clone()).collect();
    b.presentation = PolyMatrix::from_rows(n, rows)?
        .with_labels(Some(labels), h.col_labels().map(|c| c.to_vec()));

    let x: Polynomial = (1..=n).fold(Polynomial::one(n), |acc, k| acc * var(n, k));
    let expected = a.iter().map(|&(i, j)| x.div_exact(&(var(n, i) * var(n, j))).expect("divides"));
    b.expected_ideal = Some(IdealGens::new(n, expected));
    b.witness = Some(z_nminus2_block_minor(n, &b.map_matrix)?);
    Ok(b)
}

/// Determinant of the block submatrix with columns `ê_1j` (3 <= j <= n-1)
/// then `ê_ij` (2 <= i < j, j - i > 1), and rows `ê_1,i,i+1` (2 <= i <= n-2)
/// then `ê_1ij` (same pairs as the columns).
fn z_nminus2_block_minor(n: usize, map: &PolyMatrix) -> Result<WitnessMinor> {
    let far: Vec<(usize, usize)> = (2..=n)
        .flat_map(|i| (i + 2..=n).map(move |j| (i, j)))
        .collect();
    let mut col_sets: Vec<Vec<usize>> = (3..n).map(|j| vec![1, j]).collect();
    col_sets.extend(far.iter().map(|&(i, j)| vec![i, j]));
    let mut row_sets: Vec<Vec<usize>> = (2..n.saturating_sub(1)).map(|i| vec![1, i, i + 1]).collect();
    row_sets.extend(far.iter().map(|&(i, j)| vec![1, i, j]));
    let comp = |s: &Vec<usize>| hat_index(&WedgeIndex::of(s), n).0;
    let cols: Vec<WedgeIndex> = col_sets.iter().map(comp).collect();
    let rows: Vec<WedgeIndex> = row_sets.iter().map(comp).collect();
    let find = |ls: Option<&[crate::linalg::Label]>, w: &WedgeIndex| {
        ls.and_then(|ls| ls.iter().position(|l| WedgeIndex::from_label(l).as_ref() == Some(w)))
            .ok_or_else(|| Error::InvalidArgument(format!("{w} missing from the map")))
    };
    let ri = rows.iter().map(|w| find(map.row_labels(), w)).collect::<Result<Vec<_>>>()?;
    // Columns of the map are labelled by the hat combinations, in generator order.
    let gen_order: Vec<WedgeIndex> = basis_lex(n, 2)
        .into_iter()
        .filter(|s| {
            let p = (s.as_slice()[0], s.as_slice()[1]);
            !circular_pairs(n).contains(&p)
        })
        .map(|s| hat_index(&s, n).0)
        .collect();
    let ci = cols
        .iter()
        .map(|w| gen_order.iter().position(|g| g == w).ok_or(Error::NoFullRankSubmatrix))
        .collect::<Result<Vec<_>>>()?;
    let value = map.submatrix(&ri, &ci).det()?.normalized();
    Ok(WitnessMinor { rows, cols, value })
}

/// `x1^C(n-2,2) · x2 ⋯ x_(n-2)`: the block minor has size `C(n-1,2) - 1`.
pub fn z_nminus2_block_witness(n: usize) -> Polynomial {
    let mut e = vec![0u32; n];
    e[0] = binomial(n as i64 - 2, 2) as u32;
    for x in e.iter_mut().take(n.saturating_sub(2)).skip(1) {
        *x += 1;
    }
    Polynomial::monomial(Monomial::from_exponents(&e))
}

/// `a = ∏_(i=2)^(n-2) x_i^(n-1-i)`.
pub fn z2_divisor(n: usize) -> Polynomial {
    let mut e = vec![0u32; n];
    for i in 2..n.saturating_sub(1) {
        e[i - 1] = (n - 1 - i) as u32;
    }
    Polynomial::monomial(Monomial::from_exponents(&e))
}

/// The matrix `A_n` of `f_i = e_(i,i+1) - e_(i+1,i+2)` in the basis `e_1..e_n`.
pub fn z2_map_matrix(n: usize) -> Result<PolyMatrix> {
    Ok(z2_generators_map(n)?.0)
}

fn z2_generators(n: usize) -> Vec<Combination> {
    (1..=n - 2)
        .map(|i| Combination::difference(WedgeIndex::of(&[i, i + 1]), WedgeIndex::of(&[i + 1, i + 2])))
        .collect()
}

fn z2_generators_map(n: usize) -> Result<(PolyMatrix, Vec<Combination>)> {
    let gens = z2_generators(n);
    let d = differential(n, 2)?;
    Ok((restrict_map(&d, &gens)?, gens))
}

/// Columns `e_(j,j+1,q)` (`1 <= j <= n-2`, `q >= j+2`) of the lex-ordered `K_3` basis.
pub fn z2_columns(n: usize) -> Vec<usize> {
    let cols = basis_lex(n, 3);
    cols.iter()
        .enumerate()
        .filter(|(_, w)| w.as_slice()[1] == w.as_slice()[0] + 1)
        .map(|(k, _)| k)
        .collect()
}

/// `F = <e_(i,i+1) - e_(i+1,i+2)>` in `K_2`. The cokernel is presented with
/// rows `e12, e13, .., e(n-2)n` and `C` is built from the columns `e_(j,j+1,q)`.
pub fn z2(n: usize) -> Result<CatalogBundle> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 3")));
    }
    let gens = z2_generators(n);
    let (mut b, _) = assemble("z2", n, 2, gens, basis_lex(n, 3), Some(z2_columns(n)))?;
    b.expected_divisor = Some(z2_divisor(n));
    if n == 5 {
        b.expected_ideal = Some(IdealGens::parse(
            5,
            &[
                "x2x3x4",
                "x1x3x4 + x3^2x4",
                "x1x2x4 + x1x4^2 + x3x4^2",
                "x1x2x3 + x1x2x5 + x1x4x5 + x3x4x5",
                "x2^2x4 + x2x4^2",
                "x2^2x3 + x2^2x5 + x2x4x5",
                "x2x3^2 + x2x3x5",
            ],
        )?);
    }
    Ok(b)
}

/// Every generator of the `Z_2` ideal is homogeneous of degree `n - 2`.
pub fn z2_degree_check(n: usize) -> Result<bool> {
    let b = z2(n)?;
    Ok(b.ideal.gens.iter().all(|g| g.is_homogeneous() && g.total_degree() == Some(n as u64 - 2)))
}

/// Block view of `C` for the `Z_2` construction.
#[derive(Clone, Debug)]
pub struct Z2Blocks {
    /// `D_j`, the `e12` row restricted to the columns `e_(j,j+1,*)`.
    pub d: Vec<Vec<Polynomial>>,
    /// `c[i][j] = C_(i+1,j+1)`, rows `e_(i,i+2..n)` and columns `e_(j,j+1,j+2..n)`.
    pub c: Vec<Vec<PolyMatrix>>,
}

pub fn z2_blocks(bundle: &CatalogBundle) -> Z2Blocks {
    let n = bundle.n;
    let cm = &bundle.extraction.submatrix;
    // Row offsets: row 0 is e12, then block i has n-i-1 rows.
    let mut row_start = vec![0usize; n - 1];
    let mut col_start = vec![0usize; n - 1];
    let mut r = 1;
    let mut c = 0;
    for i in 1..=n - 2 {
        row_start[i] = r;
        col_start[i] = c;
        r += n - i - 1;
        c += n - i - 1;
    }
    let size = |i: usize| n - i - 1;
    let d = (1..=n - 2)
        .map(|j| (0..size(j)).map(|q| cm.get(0, col_start[j] + q).clone()).collect())
        .collect();
    let blocks = (1..=n - 2)
        .map(|i| {
            (1..=n - 2)
                .map(|j| {
                    let rows: Vec<usize> = (0..size(i)).map(|q| row_start[i] + q).collect();
                    let cols: Vec<usize> = (0..size(j)).map(|q| col_start[j] + q).collect();
                    cm.submatrix(&rows, &cols)
                })
                .collect()
        })
        .collect();
    Z2Blocks { d, c: blocks }
}

/// The nine differences spanning `F` in the explicit `n = 6`, `Z_3` sequence.
pub fn n6_z3_generators() -> Vec<Combination> {
    let chain = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 4],
        [1, 3, 5],
        [1, 5, 6],
        [2, 3, 5],
        [2, 3, 6],
        [2, 4, 5],
        [3, 4, 6],
        [4, 5, 6],
    ];
    chain
        .windows(2)
        .map(|w| Combination::difference(WedgeIndex::of(&w[0]), WedgeIndex::of(&w[1])))
        .collect()
}

/// The displayed `10 x 11` matrix `C^T`.
pub fn n6_z3_displayed_ct() -> PolyMatrix {
    let rows: [[&str; 11]; 10] = [
        ["-x2 + x3", "-x4", "0", "0", "0", "0", "x1", "0", "0", "0", "0"],
        ["x1 - x2", "-x5", "x3", "0", "0", "0", "0", "0", "0", "0", "0"],
        ["x1 + x3", "-x6", "0", "-x2", "0", "0", "0", "0", "0", "0", "0"],
        ["x1 - x5", "0", "x4", "0", "-x2", "0", "0", "0", "0", "0", "0"],
        ["x4 - x6", "0", "0", "0", "0", "-x2", "0", "x1", "0", "0", "0"],
        ["-x2 + x5", "0", "-x6", "0", "0", "0", "0", "0", "x1", "0", "0"],
        ["x4 - x5", "0", "0", "0", "-x3", "0", "0", "0", "0", "x1", "0"],
        ["x1 - x6", "0", "0", "x4", "0", "-x3", "0", "0", "0", "0", "0"],
        ["-x3 - x6", "0", "0", "x5", "0", "0", "0", "0", "0", "0", "x1"],
        ["x1 - x4", "0", "0", "0", "-x6", "x5", "0", "0", "0", "0", "0"],
    ];
    let r: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
    PolyMatrix::parse_rows(6, &r).expect("fixture parses")
}

/// `n = 6`, `i = 3`: the cokernel is `(1/x1^4) I_10(C)(3)` with `C` the
/// first ten columns (lex `K_4` order) of the presentation.
pub fn n6_z3_explicit() -> Result<CatalogBundle> {
    let cols: Vec<usize> = (0..10).collect();
    let (mut b, _) = assemble("n6z3", 6, 3, n6_z3_generators(), basis_lex(6, 4), Some(cols))?;
    b.expected_divisor = Some(Polynomial::parse(6, "x1^4")?);
    Ok(b)
}

/// `F` spanned by nine canonical basis elements of `K_3`, `n = 6`; the
/// certificate fails with a witness divisible by `x2 x4 x6`.
pub fn n6_z3_bad_configuration() -> Result<BourbakiCertificate> {
    let sets = [
        [1, 2, 6],
        [2, 3, 6],
        [3, 4, 6],
        [4, 5, 6],
        [1, 5, 6],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
    ];
    let gens: Vec<Combination> = sets.iter().map(|s| Combination::basis(WedgeIndex::of(s))).collect();
    let d = differential(6, 3)?;
    check_bourbaki_map(&restrict_map(&d, &gens)?, gens.len())
}

/// `i ≥ max(i·C(n-1,i-1) - n·C(n-1,i-2), (n-i)·C(n-1,i) - n·C(n-1,i+1))`;
/// `false` rules out every multigraded Bourbaki sequence of `Z_i`.
pub fn multigraded_obstruction(n: usize, i: usize) -> Result<bool> {
    if i < 2 || i + 1 > n {
        return Err(Error::InvalidArgument(format!("need 2 <= i <= n-1, got i = {i}, n = {n}")));
    }
    let (n, i) = (n as i128, i as i128);
    let b = |a: i128, k: i128| binomial(a as i64, k as i64) as i128;
    let left = i * b(n - 1, i - 1) - n * b(n - 1, i - 2);
    let right = (n - i) * b(n - 1, i) - n * b(n - 1, i + 1);
    Ok(i >= left.max(right))
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub i: usize,
    /// `r - 1`, the size of the candidate subsets.
    pub subset_size: usize,
    pub basis_size: usize,
    pub total: u128,
    pub passing: u128,
    pub failing: u128,
    pub pruned: u128,
    pub unexplored: u128,
    pub complete: bool,
    pub budget: u64,
    pub sibling_pruning: bool,
    /// Whether the numerical bound allows a multigraded sequence.
    pub bound_holds: bool,
    /// Up to 20 passing subsets, in search order.
    pub examples: Vec<Vec<WedgeIndex>>,
}

const EXAMPLE_LIMIT: usize = 20;
const BATCH: usize = 1 << 14;

/// All `(r-1)`-subsets of the canonical basis of `K_i`, searched in lex
/// order. A subset containing `i` of the `i+1` faces of some `(i+1)`-set is
/// skipped: with all faces `φ` is not injective, with all but one the
/// cokernel has torsion. Each remaining subset is tested exactly by ranks
/// modulo a prime (all minors are monomials).
pub fn multigraded_exhaustive_search(n: usize, i: usize, budget: u64) -> Result<SearchReport> {
    multigraded_search_with(n, i, budget, true)
}

pub fn multigraded_search_with(
    n: usize,
    i: usize,
    budget: u64,
    sibling_pruning: bool,
) -> Result<SearchReport> {
    let bound_holds = multigraded_obstruction(n, i)?;
    let s = cycle_rank(n, i) as usize - 1;
    let labels = basis_lex(n, i);
    let m = labels.len();
    let d = differential(n, i)?;
    // The columns of ∂_i, reordered to lex, evaluated at a generic point
    // and at the point with x_k = 0 for each k.
    let col_pos: Vec<usize> =
        labels.iter().map(|w| d.cols.iter().position(|c| c == w).expect("basis")).collect();
    let base = random_point(n, 0x6d67_7365);
    let variants: Vec<Vec<Vec<u64>>> = std::iter::once(None)
        .chain((0..n).map(Some))
        .map(|k| {
            let mut p = base.clone();
            if let Some(k) = k {
                p[k] = 0;
            }
            let ev = d.matrix.eval_modp(&p).expect("integral");
            col_pos.iter().map(|&c| ev.iter().map(|r| r[c]).collect()).collect()
        })
        .collect();
    let index_of = |w: &WedgeIndex| labels.iter().position(|l| l == w);
    // For each basis element, the (i+1)-sets containing it, as lists of face indices.
    let cofaces: Vec<Vec<Vec<usize>>> = labels
        .iter()
        .map(|w| {
            (1..=n)
                .filter(|&v| !w.contains(v))
                .map(|v| {
                    let mut big = w.as_slice().to_vec();
                    big.push(v);
                    big.sort_unstable();
                    (0..big.len())
                        .map(|r| {
                            let mut f = big.clone();
                            f.remove(r);
                            index_of(&WedgeIndex::of(&f)).expect("face")
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let test = |subset: &[usize]| -> bool {
        variants.iter().all(|cols| {
            let mut e = modp::Echelon::new();
            subset.iter().all(|&c| e.insert(&cols[c]))
        })
    };

    let total = binomial(m as i64, s as i64);
    let mut st = SearchState {
        pruned: 0,
        evaluated: 0,
        passing: 0,
        examples: Vec::new(),
        batch: Vec::new(),
        exhausted: false,
    };
    let mut chosen = Vec::with_capacity(s);
    let mut inside = vec![false; m];
    dfs(
        &DfsCtx { m, s, i, budget, pruning: sibling_pruning, cofaces: &cofaces, test: &test },
        0,
        &mut chosen,
        &mut inside,
        &mut st,
    );
    st.flush(&test);
    let failing = st.evaluated - st.passing;
    let unexplored = total - st.passing - failing - st.pruned;
    Ok(SearchReport {
        n,
        i,
        subset_size: s,
        basis_size: m,
        total,
        passing: st.passing,
        failing,
        pruned: st.pruned,
        unexplored,
        complete: unexplored == 0,
        budget,
        sibling_pruning,
        bound_holds,
        examples: st
            .examples
            .iter()
            .map(|sub| sub.iter().map(|&k| labels[k].clone()).collect())
            .collect(),
    })
}

struct DfsCtx<'a, F: Fn(&[usize]) -> bool + Sync> {
    m: usize,
    s: usize,
    i: usize,
    budget: u64,
    pruning: bool,
    cofaces: &'a [Vec<Vec<usize>>],
    test: &'a F,
}

struct SearchState {
    pruned: u128,
    evaluated: u128,
    passing: u128,
    examples: Vec<Vec<usize>>,
    batch: Vec<Vec<usize>>,
    exhausted: bool,
}

impl SearchState {
    fn flush<F: Fn(&[usize]) -> bool + Sync>(&mut self, test: &F) {
        let results: Vec<bool> = self.batch.par_iter().map(|b| test(b)).collect();
        for (b, ok) in self.batch.drain(..).zip(results) {
            self.evaluated += 1;
            if ok {
                self.passing += 1;
                if self.examples.len() < EXAMPLE_LIMIT {
                    self.examples.push(b);
                }
            }
        }
    }
}

fn dfs<F: Fn(&[usize]) -> bool + Sync>(
    ctx: &DfsCtx<'_, F>,
    start: usize,
    chosen: &mut Vec<usize>,
    inside: &mut [bool],
    st: &mut SearchState,
) {
    if st.exhausted {
        return;
    }
    if chosen.len() == ctx.s {
        if st.evaluated + st.batch.len() as u128 >= ctx.budget as u128 {
            st.exhausted = true;
            return;
        }
        st.batch.push(chosen.clone());
        if st.batch.len() >= BATCH {
            st.flush(ctx.test);
        }
        return;
    }
    let need = ctx.s - chosen.len();
    for x in start..=ctx.m - need {
        if ctx.pruning
            && ctx.cofaces[x]
                .iter()
                .any(|faces| faces.iter().filter(|&&f| f == x || inside[f]).count() >= ctx.i)
        {
            st.pruned += binomial((ctx.m - x - 1) as i64, need as i64 - 1);
            continue;
        }
        chosen.push(x);
        inside[x] = true;
        dfs(ctx, x + 1, chosen, inside, st);
        inside[x] = false;
        chosen.pop();
        if st.exhausted {
            return;
        }
    }
}

/// Signed cofactor minors of the `C` chosen for a bundle.
pub fn cofactor_minors(bundle: &CatalogBundle) -> Result<Vec<Polynomial>> {
    signed_maximal_minors(&bundle.extraction.submatrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(n, s).unwrap()
    }

    #[test]
    fn z_top_small() {
        let b = z_top(4, 1, 2).unwrap();
        assert!(b.certificate.verdict);
        assert_eq!(b.ideal_matches(), Some(true));
        assert_eq!(b.ideal.twist, Some(-2));
        let b = z_top(3, 1, 3).unwrap();
        assert!(b.all_checks_pass());
        assert!(z_top(4, 2, 2).is_err());
        assert!(z_top(4, 0, 2).is_err());
    }

    #[test]
    fn z_nminus2_small() {
        for n in 3..=5 {
            let b = z_nminus2(n).unwrap();
            assert!(b.certificate.verdict, "n = {n}");
            assert_eq!(b.ideal_matches(), Some(true), "n = {n}");
            assert_eq!(b.witness.as_ref().unwrap().value, z_nminus2_block_witness(n));
        }
        assert_eq!(z_nminus2_block_witness(5), p(5, "x1^3*x2*x3"));
        assert_eq!(z_nminus2_stated_witness(5), p(5, "x1^6*x2*x3"));
        let b = z_nminus2(4).unwrap();
        let want = IdealGens::parse(4, &["x3*x4", "x1*x4", "x1*x2", "x2*x3"]).unwrap();
        assert!(b.ideal.same_generators(&want));
    }

    #[test]
    fn z_nminus2_presentation_support() {
        let n = 5;
        let b = z_nminus2(n).unwrap();
        let h = &b.presentation;
        assert_eq!((h.rows(), h.cols()), (n, n));
        for (r, &(i, j)) in circular_pairs(n).iter().enumerate() {
            for c in 0..n {
                let e = h.get(r, c);
                let k = c + 1;
                if k == i {
                    assert_eq!(e.clone().normalized(), var(n, j));
                } else if k == j {
                    assert_eq!(e.clone().normalized(), var(n, i));
                } else {
                    assert!(e.is_zero());
                }
            }
        }
    }

    #[test]
    fn z2_five() {
        let b = z2(5).unwrap();
        assert!(b.certificate.verdict);
        assert_eq!(b.extraction.divisor, p(5, "x2^2*x3"));
        assert_eq!(b.ideal_matches(), Some(true));
        assert_eq!(b.ideal.gens.len(), 7);
        let a3 = z2_map_matrix(3).unwrap();
        assert_eq!(a3.cols(), 1);
        let entries: Vec<Polynomial> = (0..3).map(|r| a3.get(r, 0).clone()).collect();
        assert_eq!(entries, vec![p(3, "-x2"), p(3, "x1 + x3"), p(3, "-x2")]);
    }

    #[test]
    fn z2_block_structure() {
        for n in 3..=6 {
            let b = z2(n).unwrap();
            let bl = z2_blocks(&b);
            for i in 1..=n - 2 {
                let mut want = vec![var(n, i) + var(n, i + 2)];
                want.extend((i + 3..=n).map(|q| var(n, q)));
                assert_eq!(bl.d[i - 1], want);
                for j in 1..=n - 2 {
                    let c = &bl.c[i - 1][j - 1];
                    if i == j {
                        for r in 0..c.rows() {
                            for q in 0..c.cols() {
                                let e = if r == q { -var(n, i + 1) } else { Polynomial::zero(n) };
                                assert_eq!(c.get(r, q), &e);
                            }
                        }
                    } else {
                        assert!((0..c.rows()).all(|r| c.get(r, 0).is_zero()));
                        if i < j {
                            assert!(c.is_zero());
                        }
                    }
                }
            }
            assert!(z2_degree_check(n).unwrap());
        }
    }

    #[test]
    fn n6_explicit() {
        let b = n6_z3_explicit().unwrap();
        assert!(b.certificate.verdict);
        assert_eq!(b.map_matrix.rows(), 15);
        assert_eq!(b.extraction.divisor, p(6, "x1^4"));
        let ct = b.extraction.submatrix.transpose();
        let want = n6_z3_displayed_ct();
        assert_eq!((ct.rows(), ct.cols()), (10, 11));
        for r in 0..10 {
            assert_eq!(ct.row(r), want.row(r), "row {r}");
        }
        assert!(b.ideal.gens.iter().all(|g| g.total_degree() == Some(6)));
        assert_eq!(b.ideal.twist, Some(3));
    }

    #[test]
    fn n6_bad() {
        let c = n6_z3_bad_configuration().unwrap();
        assert!(!c.verdict);
        assert!(c.gcd_witness.div_exact(&p(6, "x2*x4*x6")).is_ok());
    }

    #[test]
    fn obstruction_values() {
        assert!(!multigraded_obstruction(5, 2).unwrap());
        assert!(!multigraded_obstruction(8, 5).unwrap());
        assert!(multigraded_obstruction(4, 2).unwrap());
        for n in 3..=30 {
            assert!(multigraded_obstruction(n, n - 1).unwrap());
            if n >= 4 {
                assert!(multigraded_obstruction(n, n - 2).unwrap());
            }
        }
        assert!(multigraded_obstruction(5, 1).is_err());
        assert!(multigraded_obstruction(5, 5).is_err());
    }

    #[test]
    fn search_small() {
        let r = multigraded_exhaustive_search(4, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.complete);
        assert_eq!(r.total, 15);
        assert!(r.passing > 0);
        let raw = multigraded_search_with(4, 2, DEFAULT_BUDGET, false).unwrap();
        assert_eq!(raw.passing, r.passing);
        assert_eq!(raw.pruned, 0);
        let r = multigraded_exhaustive_search(5, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.complete);
        assert_eq!(r.passing, 0);
        let r = multigraded_search_with(5, 2, 3, false).unwrap();
        assert!(!r.complete);
        assert_eq!(r.passing + r.failing + r.pruned + r.unexplored, r.total);
    }

    #[test]
    fn catalog_minors_are_monomials() {
        let b = z_nminus2(5).unwrap();
        let m = &b.map_matrix;
        let s = m.cols();
        for cols in crate::combin::colex_subsets(m.rows(), s).into_iter().take(200) {
            let d = m.submatrix(&cols, &(0..s).collect::<Vec<_>>()).det().unwrap();
            assert!(d.is_zero() || d.is_term());
        }
    }
}
