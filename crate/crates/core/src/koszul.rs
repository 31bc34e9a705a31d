//! The Koszul complex on `x_1..x_n`: wedge bases, differentials, restriction
//! to submodules spanned by basis combinations, and presentations of the
//! quotients `K_i / F`.

use crate::algebra::{rat, Polynomial, Rational};
use crate::combin::{binomial, colex_subsets, lex_subsets};
use crate::error::{Error, Result};
use crate::linalg::{Label, PolyMatrix};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Strictly increasing subset of `{1..n}` naming the basis element
/// `e_{i1} ∧ .. ∧ e_{ik}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WedgeIndex(Vec<usize>);

impl WedgeIndex {
    pub fn new(mut s: Vec<usize>) -> Result<Self> {
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) || s.first() == Some(&0) {
            return Err(Error::InvalidArgument(format!("bad wedge index {s:?}")));
        }
        Ok(WedgeIndex(s))
    }

    pub fn of(s: &[usize]) -> Self {
        Self::new(s.to_vec()).expect("valid wedge index")
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Indicator vector in Z^n: the multidegree of the basis element.
    pub fn multidegree(&self, n: usize) -> Vec<u32> {
        let mut d = vec![0; n];
        for &i in &self.0 {
            d[i - 1] = 1;
        }
        d
    }

    pub fn label(&self) -> Label {
        Label::Index(self.0.clone())
    }

    pub fn from_label(l: &Label) -> Option<Self> {
        match l {
            Label::Index(s) => Self::new(s.clone()).ok(),
            Label::Name(_) => None,
        }
    }

    /// Digits juxtaposed when all indices are single digits, as in `e124`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('e');
        let parts: Vec<usize> = if t.contains(',') {
            t.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(s.into()))).collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(s.into())))
                .collect::<Result<_>>()?
        };
        Self::new(parts)
    }
}

impl fmt::Display for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label().fmt(f)
    }
}

/// Basis of `K_k` in colex order.
pub fn basis(n: usize, k: usize) -> Vec<WedgeIndex> {
    colex_subsets(n, k)
        .into_iter()
        .map(|s| WedgeIndex(s.into_iter().map(|i| i + 1).collect()))
        .collect()
}

/// Basis of `K_k` in lex order.
pub fn basis_lex(n: usize, k: usize) -> Vec<WedgeIndex> {
    lex_subsets(n, k)
        .into_iter()
        .map(|s| WedgeIndex(s.into_iter().map(|i| i + 1).collect()))
        .collect()
}

/// Complementary index `ŝ` and the sign with `e_s ∧ (sign · e_ŝ) = e_1 ∧ .. ∧ e_n`,
/// i.e. the parity of the shuffle `s ++ ŝ`.
pub fn hat_index(s: &WedgeIndex, n: usize) -> (WedgeIndex, i32) {
    let comp: Vec<usize> = (1..=n).filter(|i| !s.contains(*i)).collect();
    let mut inversions = 0usize;
    for &a in s.as_slice() {
        inversions += comp.iter().filter(|&&b| b < a).count();
    }
    (WedgeIndex(comp), if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// A differential `∂_k : K_k -> K_(k-1)` with its labelled bases.
#[derive(Clone, Debug)]
pub struct KoszulMap {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<WedgeIndex>,
    pub cols: Vec<WedgeIndex>,
    pub matrix: PolyMatrix,
}

/// `∂_k(e_{i1..ik}) = Σ_j (-1)^(j+1) x_{ij} e_{i1..îj..ik}`, bases in colex order.
pub fn differential(n: usize, k: usize) -> Result<KoszulMap> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("differential index {k} outside 1..={n}")));
    }
    differential_ordered(n, k, basis(n, k - 1), basis(n, k))
}

/// The differential with caller-chosen row and column bases (each a
/// permutation of the corresponding wedge basis).
pub fn differential_ordered(
    n: usize,
    k: usize,
    rows: Vec<WedgeIndex>,
    cols: Vec<WedgeIndex>,
) -> Result<KoszulMap> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("differential index {k} outside 1..={n}")));
    }
    if rows.len() as u128 != binomial(n as i64, k as i64 - 1)
        || cols.len() as u128 != binomial(n as i64, k as i64)
    {
        return Err(Error::DimensionMismatch("basis sizes".into()));
    }
    let row_pos: HashMap<&WedgeIndex, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = PolyMatrix::zeros(n, rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (pos, &x) in s.as_slice().iter().enumerate() {
            let mut face = s.0.clone();
            face.remove(pos);
            let i = *row_pos
                .get(&WedgeIndex(face))
                .ok_or_else(|| Error::InvalidArgument("row basis incomplete".into()))?;
            let v = Polynomial::var(n, x - 1);
            m.set(i, j, if pos % 2 == 0 { v } else { -v });
        }
    }
    let m = m.with_labels(
        Some(rows.iter().map(|w| w.label()).collect()),
        Some(cols.iter().map(|w| w.label()).collect()),
    );
    Ok(KoszulMap { n, k, rows, cols, matrix: m })
}

/// `rank Z_i = C(n-1, i-1)`.
pub fn cycle_rank(n: usize, i: usize) -> u128 {
    binomial(n as i64 - 1, i as i64 - 1)
}

/// First Chern number of `Z_i` from its truncated Koszul resolution: `n · C(n-2, i-2)`.
pub fn e1_of_cycle(n: usize, i: usize) -> u128 {
    n as u128 * binomial(n as i64 - 2, i as i64 - 2)
}

/// Twists of a graded free resolution: `modules[p]` maps `a` to the
/// multiplicity of `S(-a)` in `F_p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedTwists {
    pub modules: Vec<BTreeMap<i64, u64>>,
}

impl GradedTwists {
    /// One module per slice, each slice listing the twist of every summand.
    pub fn from_lists(lists: &[&[i64]]) -> Self {
        let mut modules = Vec::with_capacity(lists.len());
        for l in lists {
            let mut m = BTreeMap::new();
            for &a in *l {
                *m.entry(a).or_insert(0) += 1;
            }
            modules.push(m);
        }
        GradedTwists { modules }
    }

    pub fn rank(&self, p: usize) -> u64 {
        self.modules.get(p).map_or(0, |m| m.values().sum())
    }
}

/// `0 -> K_n -> .. -> K_(i+1) -> K_i -> Z_i -> 0` with `K_j = S(-j)^C(n,j)`.
pub fn truncated_resolution(n: usize, i: usize) -> Result<GradedTwists> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("cycle index {i} outside 1..={n}")));
    }
    let modules = (i..=n)
        .map(|j| BTreeMap::from([(j as i64, binomial(n as i64, j as i64) as u64)]))
        .collect();
    Ok(GradedTwists { modules })
}

/// A formal Q-linear combination of wedge basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination(pub Vec<(WedgeIndex, Rational)>);

impl Combination {
    pub fn basis(w: WedgeIndex) -> Self {
        Combination(vec![(w, Rational::one())])
    }

    pub fn signed(w: WedgeIndex, sign: i32) -> Self {
        Combination(vec![(w, rat(sign as i64))])
    }

    pub fn difference(a: WedgeIndex, b: WedgeIndex) -> Self {
        Combination(vec![(a, Rational::one()), (b, -Rational::one())])
    }

    /// `ê_s` written as `± e_complement`.
    pub fn hat(s: &WedgeIndex, n: usize) -> Self {
        let (c, sign) = hat_index(s, n);
        Self::signed(c, sign)
    }

    pub fn coefficients(&self) -> BTreeMap<WedgeIndex, Rational> {
        let mut m: BTreeMap<WedgeIndex, Rational> = BTreeMap::new();
        for (w, c) in &self.0 {
            *m.entry(w.clone()).or_insert_with(Rational::zero) += c;
        }
        m.retain(|_, c| !c.is_zero());
        m
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (w, c)) in self.coefficients().iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let sep = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => "-",
                (_, false) => "+",
            };
            if a.is_one() {
                write!(f, "{sep}{w}")?;
            } else {
                write!(f, "{sep}{a}{w}")?;
            }
        }
        Ok(())
    }
}

/// The composite `S^m -> K_k -> K_(k-1)` sending the j-th basis vector to
/// `∂_k(generators[j])`.
pub fn restrict_map(d: &KoszulMap, generators: &[Combination]) -> Result<PolyMatrix> {
    let col_pos: HashMap<&WedgeIndex, usize> = d.cols.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = d.n;
    let mut m = PolyMatrix::zeros(n, d.rows.len(), generators.len());
    for (j, g) in generators.iter().enumerate() {
        for (w, c) in g.coefficients() {
            let src = *col_pos.get(&w).ok_or_else(|| {
                Error::InvalidArgument(format!("{w} is not a basis element of K_{}", d.k))
            })?;
            for i in 0..d.rows.len() {
                let e = d.matrix.get(i, src);
                if !e.is_zero() {
                    let v = m.get(i, j) + &e.scale(&c);
                    m.set(i, j, v);
                }
            }
        }
    }
    let cols = generators.iter().map(|g| Label::Name(g.to_string())).collect();
    Ok(m.with_labels(Some(d.rows.iter().map(|w| w.label()).collect()), Some(cols)))
}

/// Presentation `K_(i+1) -> K_i / F` of the quotient by the span of
/// constant combinations, in the basis of the labels surviving elimination.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    /// Representatives of the quotient basis, in row order.
    pub basis: Vec<WedgeIndex>,
    /// Labels eliminated by the relations, each with its expression in the basis.
    pub eliminated: Vec<(WedgeIndex, Vec<(usize, Rational)>)>,
    pub matrix: PolyMatrix,
}

/// Builds the presentation of `K_i / F` (`F` spanned by `relations`).
///
/// Relations are reduced in order; each eliminates its largest surviving
/// label in lex order. The surviving labels that occur in some relation come
/// first (lex), followed by the untouched labels (lex). `columns` fixes the
/// order of the `K_(i+1)` basis.
pub fn quotient_presentation(
    n: usize,
    i: usize,
    relations: &[Combination],
    columns: Vec<WedgeIndex>,
) -> Result<QuotientPresentation> {
    let labels = basis_lex(n, i);
    let pos: HashMap<&WedgeIndex, usize> = labels.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let width = labels.len();
    // Reduced echelon rows, keyed by pivot position.
    let mut pivots: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut touched = vec![false; width];
    for r in relations {
        let mut v = vec![Rational::zero(); width];
        for (w, c) in r.coefficients() {
            let k = *pos.get(&w).ok_or_else(|| {
                Error::InvalidArgument(format!("{w} is not a basis element of K_{i}"))
            })?;
            v[k] = c;
            touched[k] = true;
        }
        for (p, row) in &pivots {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &c * y;
                }
            }
        }
        let p = (0..width)
            .rev()
            .find(|&k| !v[k].is_zero())
            .ok_or_else(|| Error::InvalidArgument("relations are linearly dependent".into()))?;
        let s = v[p].recip();
        for x in v.iter_mut() {
            *x *= &s;
        }
        for (_, row) in pivots.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &c * y;
                }
            }
        }
        pivots.push((p, v));
    }
    let is_pivot: Vec<bool> = {
        let mut b = vec![false; width];
        for (p, _) in &pivots {
            b[*p] = true;
        }
        b
    };
    let mut order: Vec<usize> = (0..width).filter(|&k| !is_pivot[k] && touched[k]).collect();
    order.extend((0..width).filter(|&k| !is_pivot[k] && !touched[k]));
    let row_of: HashMap<usize, usize> = order.iter().enumerate().map(|(r, &k)| (k, r)).collect();
    // Projection of each label onto the quotient basis.
    let mut proj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); width];
    for (k, p) in proj.iter_mut().enumerate() {
        if let Some(&r) = row_of.get(&k) {
            p.push((r, Rational::one()));
        }
    }
    let mut eliminated = Vec::new();
    for (p, row) in &pivots {
        // label_p + Σ row[k] label_k ∈ F, so label_p ≡ -Σ row[k] label_k.
        let expr: Vec<(usize, Rational)> = (0..width)
            .filter(|&k| k != *p && !row[k].is_zero())
            .map(|k| (row_of[&k], -row[k].clone()))
            .collect();
        proj[*p] = expr.clone();
        eliminated.push((labels[*p].clone(), expr));
    }
    let d = differential_ordered(n, i + 1, basis(n, i), columns)?;
    let src_row: HashMap<&WedgeIndex, usize> = d.rows.iter().enumerate().map(|(r, w)| (w, r)).collect();
    let mut m = PolyMatrix::zeros(n, order.len(), d.cols.len());
    for (k, w) in labels.iter().enumerate() {
        let r0 = src_row[w];
        for j in 0..d.cols.len() {
            let e = d.matrix.get(r0, j);
            if e.is_zero() {
                continue;
            }
            for (r, c) in &proj[k] {
                let v = m.get(*r, j) + &e.scale(c);
                m.set(*r, j, v);
            }
        }
    }
    let basis_reps: Vec<WedgeIndex> = order.iter().map(|&k| labels[k].clone()).collect();
    let m = m.with_labels(
        Some(basis_reps.iter().map(|w| w.label()).collect()),
        Some(d.cols.iter().map(|w| w.label()).collect()),
    );
    Ok(QuotientPresentation { basis: basis_reps, eliminated, matrix: m })
}
