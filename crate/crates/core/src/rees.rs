//! The affine semigroup `C ⊂ Z^(n+1)` of the Rees algebra of
//! `I = (x/(x_i x_(i+1)))` (circular pairs): membership, the cone `D`,
//! bounded normality checks and the interior points generating the
//! canonical module.

use crate::combin::binomial;
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const DEFAULT_TMAX: i64 = 3;
/// Counterexample listings are truncated after this many entries (counts are exact).
pub const LISTING_LIMIT: usize = 1000;

/// An exponent vector `(a_1, .., a_n, a_(n+1))`; the last coordinate is the
/// power of `t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `a = Σ r_i e_i + Σ s_j f_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDecomposition {
    pub r: Vec<i64>,
    pub s: Vec<i64>,
}

impl SemigroupDecomposition {
    pub fn reconstruct(&self, n: usize) -> LatticeVector {
        let (e, f) = semigroup_generators_unchecked(n);
        let mut v = vec![0i64; n + 1];
        for (k, g) in e.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&g.0) {
                *x += self.r[k] * y;
            }
        }
        for (k, g) in f.iter().enumerate() {
            for (x, y) in v.iter_mut().zip(&g.0) {
                *x += self.s[k] * y;
            }
        }
        LatticeVector(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeStatus {
    Outside,
    Boundary,
    Interior,
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 3")));
    }
    Ok(())
}

/// `e_i` is the i-th unit vector; `f_j` has ones on `1..n` except at `j`
/// and its circular successor, and last coordinate 1.
pub fn semigroup_generators(n: usize) -> Result<(Vec<LatticeVector>, Vec<LatticeVector>)> {
    check_n(n)?;
    Ok(semigroup_generators_unchecked(n))
}

fn semigroup_generators_unchecked(n: usize) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let e = (0..n)
        .map(|i| {
            let mut v = vec![0; n + 1];
            v[i] = 1;
            LatticeVector(v)
        })
        .collect();
    let f = (0..n)
        .map(|j| {
            let mut v = vec![1; n + 1];
            v[j] = 0;
            v[(j + 1) % n] = 0;
            LatticeVector(v)
        })
        .collect();
    (e, f)
}

/// Size-`l` subsets of `[n]` (1-based, increasing) with consecutive gaps at
/// least 2 and `i_l - i_1 <= n - 2`, i.e. no two circularly adjacent.
pub fn cycle_independent_sets(n: usize, l: usize) -> Result<Vec<Vec<usize>>> {
    if l < 2 || l > n / 2 {
        return Err(Error::InvalidArgument(format!("l = {l} outside 2..={}", n / 2)));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(n: usize, l: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            if cur[l - 1] - cur[0] <= n - 2 {
                out.push(cur.clone());
            }
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(n, l, x + 2, cur, out);
            cur.pop();
        }
    }
    rec(n, l, 1, &mut cur, &mut out);
    Ok(out)
}

/// The inequalities of `D` other than nonnegativity: `(0-based indices, l - 1)`,
/// where the last entry is the full sum with coefficient `n - 2`.
#[derive(Clone, Debug)]
struct Inequalities {
    n: usize,
    rows: Vec<(Vec<usize>, i64)>,
}

impl Inequalities {
    fn new(n: usize) -> Self {
        let mut rows = Vec::new();
        for l in 2..=n / 2 {
            for s in cycle_independent_sets(n, l).expect("range") {
                rows.push((s.iter().map(|i| i - 1).collect(), l as i64 - 1));
            }
        }
        rows.push(((0..n).collect(), n as i64 - 2));
        Inequalities { n, rows }
    }

    fn status(&self, a: &[i64]) -> ConeStatus {
        let t = a[self.n];
        let mut strict = true;
        for &x in a {
            if x < 0 {
                return ConeStatus::Outside;
            }
            if x == 0 {
                strict = false;
            }
        }
        for (idx, c) in &self.rows {
            let s: i64 = idx.iter().map(|&i| a[i]).sum::<i64>() - c * t;
            if s < 0 {
                return ConeStatus::Outside;
            }
            if s == 0 {
                strict = false;
            }
        }
        if strict {
            ConeStatus::Interior
        } else {
            ConeStatus::Boundary
        }
    }
}

/// Position relative to `D`: nonnegativity, the independent-set inequalities
/// `Σ_(i∈I) a_i >= (|I|-1) a_(n+1)` and `Σ a_i >= (n-2) a_(n+1)`.
pub fn cone_membership(a: &LatticeVector, n: usize) -> Result<ConeStatus> {
    check_n(n)?;
    if a.0.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for n = {n}",
            a.0.len()
        )));
    }
    Ok(Inequalities::new(n).status(&a.0))
}

/// Search for `s >= 0` with `Σ s = a_(n+1)` and `s_pred(i) + s_i >= Σ s - a_i`
/// for every `i`; `r` is then forced. Among all solutions the
/// lexicographically greatest `s` is returned.
pub fn semigroup_membership(a: &LatticeVector, n: usize) -> Option<SemigroupDecomposition> {
    if n < 3 || a.0.len() != n + 1 {
        return None;
    }
    let s = greatest_s(&a.0, n)?;
    let t = a.0[n];
    let r = (0..n)
        .map(|i| a.0[i] - (t - s[(i + n - 1) % n] - s[i]))
        .collect();
    Some(SemigroupDecomposition { r, s })
}

fn greatest_s(a: &[i64], n: usize) -> Option<Vec<i64>> {
    let t = a[n];
    if t < 0 || a[..n].iter().any(|&x| x < 0) {
        return None;
    }
    let tu = t as usize;
    let need = |i: usize| t - a[i]; // s_pred(i) + s_i must reach this
    for s1 in (0..=tu).rev() {
        // ok[i][prev][rem]: positions i..n-1 (0-based) can be filled, where
        // prev = s_(i-1) and rem is what is left of the total.
        let w = tu + 1;
        let mut ok = vec![vec![false; w * w]; n + 1];
        for prev in 0..=tu {
            ok[n][prev * w] = prev as i64 + s1 as i64 >= need(0);
        }
        for i in (1..n).rev() {
            for prev in 0..=tu {
                for rem in 0..=tu {
                    ok[i][prev * w + rem] = (0..=rem).any(|v| {
                        prev as i64 + v as i64 >= need(i) && ok[i + 1][v * w + rem - v]
                    });
                }
            }
        }
        if !ok[1][s1 * w + (tu - s1)] {
            continue;
        }
        let mut s = vec![s1 as i64];
        let (mut prev, mut rem) = (s1, tu - s1);
        for i in 1..n {
            let v = (0..=rem)
                .rev()
                .find(|&v| prev as i64 + v as i64 >= need(i) && ok[i + 1][v * w + rem - v])
                .expect("feasible");
            s.push(v as i64);
            prev = v;
            rem -= v;
        }
        return Some(s);
    }
    None
}

/// Membership tables for `a_(n+1) = t`, indexed by `min(a_i, t)`; a
/// coordinate at least `t` never constrains the search.
struct MembershipTables {
    n: usize,
    tables: Vec<Vec<bool>>,
}

impl MembershipTables {
    fn new(n: usize, t_max: i64) -> Self {
        let tables = (0..=t_max.max(0))
            .map(|t| {
                let base = (t + 1) as usize;
                let size = base.pow(n as u32);
                (0..size)
                    .map(|mut code| {
                        let mut a = vec![0i64; n + 1];
                        for x in a.iter_mut().take(n) {
                            *x = (code % base) as i64;
                            code /= base;
                        }
                        a[n] = t;
                        greatest_s(&a, n).is_some()
                    })
                    .collect()
            })
            .collect();
        MembershipTables { n, tables }
    }

    fn contains(&self, a: &[i64]) -> bool {
        let t = a[self.n];
        if t < 0 || a[..self.n].iter().any(|&x| x < 0) {
            return false;
        }
        let Some(table) = self.tables.get(t as usize) else {
            return greatest_s(a, self.n).is_some();
        };
        let base = t + 1;
        let mut code = 0i64;
        for &x in a[..self.n].iter().rev() {
            code = code * base + x.min(t);
        }
        table[code as usize]
    }
}

/// The bounded region `0 <= a_i <= box`, `0 <= a_(n+1) <= t_max`, scanned
/// in rows along the last x-coordinate.
struct Region {
    n: usize,
    t_max: i64,
    bx: i64,
    ineq: Inequalities,
}

/// Thresholds along a row: the point with last x-coordinate `v` lies in `D`
/// iff `v >= lo` (and the fixed part holds), and is interior iff `v >= lo_strict`.
struct RowProfile {
    in_d: bool,
    lo: i64,
    interior: bool,
    lo_strict: i64,
}

impl Region {
    fn new(n: usize, t_max: i64, bx: i64) -> Self {
        Region { n, t_max, bx, ineq: Inequalities::new(n) }
    }

    /// Shards `(t, a_1)` in lexicographic order.
    fn shards(&self) -> Vec<(i64, i64)> {
        (0..=self.t_max).flat_map(|t| (0..=self.bx).map(move |a| (t, a))).collect()
    }

    /// Calls `row` for every assignment of `a_1..a_(n-1)` in the shard, with
    /// `a[n-1]` left at 0.
    fn for_rows(&self, (t, a1): (i64, i64), row: &mut dyn FnMut(&mut Vec<i64>, &RowProfile)) {
        let n = self.n;
        let mut a = vec![0i64; n + 1];
        a[n] = t;
        a[0] = a1;
        loop {
            let p = self.profile(&a);
            row(&mut a, &p);
            // Odometer over a_2..a_(n-1).
            let mut k = n - 2;
            loop {
                if k == 0 {
                    return;
                }
                if a[k] < self.bx {
                    a[k] += 1;
                    break;
                }
                a[k] = 0;
                k -= 1;
            }
        }
    }

    fn profile(&self, a: &[i64]) -> RowProfile {
        let n = self.n;
        let last = n - 1;
        let t = a[n];
        let mut in_d = true;
        let mut interior = true;
        let mut lo = 0i64;
        let mut lo_strict = 1i64;
        for &x in &a[..last] {
            if x == 0 {
                interior = false;
            }
        }
        if t == 0 {
            interior = false;
        }
        for (idx, c) in &self.ineq.rows {
            let mut s = -c * t;
            let mut has_last = false;
            for &i in idx {
                if i == last {
                    has_last = true;
                } else {
                    s += a[i];
                }
            }
            if has_last {
                lo = lo.max(-s);
                lo_strict = lo_strict.max(1 - s);
            } else {
                if s < 0 {
                    in_d = false;
                }
                if s <= 0 {
                    interior = false;
                }
            }
        }
        RowProfile { in_d, lo, interior: interior && in_d, lo_strict }
    }
}

fn count_range(from: i64, to: i64) -> u64 {
    if to < from {
        0
    } else {
        (to - from + 1) as u64
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub n: usize,
    pub t_max: i64,
    #[serde(rename = "box")]
    pub box_bound: i64,
    pub enumerated: u64,
    pub outside: u64,
    pub boundary: u64,
    pub interior: u64,
    /// Points of `D` found in `C`.
    pub decomposed: u64,
    /// Points of `D` not in `C`.
    pub counterexample_count: u64,
    pub counterexamples: Vec<LatticeVector>,
    /// Points of `C` outside `D`.
    pub semigroup_outside_count: u64,
    pub semigroup_outside: Vec<LatticeVector>,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0 && self.semigroup_outside_count == 0
    }

    fn merge(&mut self, o: NormalityReport) {
        self.enumerated += o.enumerated;
        self.outside += o.outside;
        self.boundary += o.boundary;
        self.interior += o.interior;
        self.decomposed += o.decomposed;
        self.counterexample_count += o.counterexample_count;
        self.semigroup_outside_count += o.semigroup_outside_count;
        extend_capped(&mut self.counterexamples, o.counterexamples);
        extend_capped(&mut self.semigroup_outside, o.semigroup_outside);
    }
}

fn extend_capped(v: &mut Vec<LatticeVector>, more: Vec<LatticeVector>) {
    let room = LISTING_LIMIT.saturating_sub(v.len());
    v.extend(more.into_iter().take(room));
}

fn default_box(n: usize, t_max: i64) -> i64 {
    n as i64 * t_max
}

/// Box used when none is given: `n · t_max`.
pub fn default_box_for(n: usize, t_max: i64) -> i64 {
    default_box(n, t_max)
}

fn check_bounds(n: usize, t_max: i64, bx: i64) -> Result<()> {
    check_n(n)?;
    if t_max < 0 || bx < 0 {
        return Err(Error::InvalidArgument("bounds must be nonnegative".into()));
    }
    Ok(())
}

/// Every lattice point of the box lying in `D` is checked for a
/// decomposition (`D ⊆ C`), and every decomposable one for lying in `D`.
pub fn normality_check(n: usize, t_max: i64, bx: i64) -> Result<NormalityReport> {
    check_bounds(n, t_max, bx)?;
    let region = Region::new(n, t_max, bx);
    let mem = MembershipTables::new(n, t_max);
    let parts: Vec<NormalityReport> = region
        .shards()
        .into_par_iter()
        .map(|shard| {
            let mut rep = NormalityReport::default();
            let t = shard.0;
            region.for_rows(shard, &mut |a, p| {
                let last = n - 1;
                let width = (bx + 1) as u64;
                rep.enumerated += width;
                let (d_count, int_count) = if p.in_d {
                    let d = count_range(p.lo, bx);
                    let i = if p.interior { count_range(p.lo_strict, bx) } else { 0 };
                    (d, i)
                } else {
                    (0, 0)
                };
                rep.outside += width - d_count;
                rep.interior += int_count;
                rep.boundary += d_count - int_count;
                for v in 0..=bx.min(t - 1) {
                    a[last] = v;
                    let inside = p.in_d && v >= p.lo;
                    let m = mem.contains(a);
                    if inside && m {
                        rep.decomposed += 1;
                    } else if inside {
                        rep.counterexample_count += 1;
                        push_capped(&mut rep.counterexamples, LatticeVector(a.clone()));
                    } else if m {
                        rep.semigroup_outside_count += 1;
                        push_capped(&mut rep.semigroup_outside, LatticeVector(a.clone()));
                    }
                }
                // Membership is constant for a_last >= t.
                if bx >= t {
                    a[last] = t;
                    let m = mem.contains(a);
                    let first_inside = if p.in_d { t.max(p.lo) } else { bx + 1 };
                    let inside = count_range(first_inside, bx);
                    if m {
                        rep.decomposed += inside;
                        for w in t..first_inside.min(bx + 1) {
                            a[last] = w;
                            rep.semigroup_outside_count += 1;
                            push_capped(&mut rep.semigroup_outside, LatticeVector(a.clone()));
                        }
                    } else {
                        for w in first_inside..=bx {
                            a[last] = w;
                            rep.counterexample_count += 1;
                            push_capped(&mut rep.counterexamples, LatticeVector(a.clone()));
                        }
                    }
                }
                a[last] = 0;
            });
            rep
        })
        .collect();
    let mut out = NormalityReport { n, t_max, box_bound: bx, ..Default::default() };
    for p in parts {
        out.merge(p);
    }
    Ok(out)
}

fn push_capped(v: &mut Vec<LatticeVector>, x: LatticeVector) {
    if v.len() < LISTING_LIMIT {
        v.push(x);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Gorenstein,
    TypeTwo,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalReport {
    pub n: usize,
    pub t_max: i64,
    #[serde(rename = "box")]
    pub box_bound: i64,
    pub interior_points: u64,
    /// Interior points `F` with no generator `g` making `F - g` interior,
    /// sorted by total degree then lexicographically.
    pub generators: Vec<LatticeVector>,
    pub classification: Classification,
    /// Some generator has an x-coordinate equal to the box bound.
    pub touches_box: bool,
    /// No difference of two generators lies in `C`.
    pub pairwise_incomparable: bool,
}

/// `F_1 = (1, .., 1)`.
pub fn f1(n: usize) -> LatticeVector {
    LatticeVector(vec![1; n + 1])
}

/// `F_2 = (k, .., k, k + 1)` for `n = 2k + 1`.
pub fn f2(n: usize) -> Option<LatticeVector> {
    if n.is_multiple_of(2) {
        return None;
    }
    let k = (n as i64 - 1) / 2;
    let mut v = vec![k; n + 1];
    v[n] = k + 1;
    Some(LatticeVector(v))
}

/// Minimal interior lattice points of the box, which generate the
/// canonical module as far as the box can see.
pub fn canonical_generators(n: usize, t_max: i64, bx: i64) -> Result<CanonicalReport> {
    check_bounds(n, t_max, bx)?;
    let region = Region::new(n, t_max, bx);
    let (e, f) = semigroup_generators_unchecked(n);
    let gens: Vec<LatticeVector> = e.into_iter().chain(f).collect();
    let ineq = &region.ineq;
    let parts: Vec<(u64, Vec<LatticeVector>)> = region
        .shards()
        .into_par_iter()
        .map(|shard| {
            let mut count = 0u64;
            let mut found = Vec::new();
            region.for_rows(shard, &mut |a, p| {
                if !p.interior || p.lo_strict > bx {
                    return;
                }
                count += count_range(p.lo_strict, bx);
                // Along the row only the first interior point can be minimal.
                let last = n - 1;
                a[last] = p.lo_strict;
                let minimal = gens.iter().all(|g| {
                    let d: Vec<i64> = a.iter().zip(&g.0).map(|(x, y)| x - y).collect();
                    ineq.status(&d) != ConeStatus::Interior
                });
                if minimal {
                    found.push(LatticeVector(a.clone()));
                }
                a[last] = 0;
            });
            (count, found)
        })
        .collect();
    let mut interior_points = 0;
    let mut generators = Vec::new();
    for (c, g) in parts {
        interior_points += c;
        generators.extend(g);
    }
    generators.sort_by_key(|v| (v.0.iter().sum::<i64>(), v.clone()));
    let touches_box = generators.iter().any(|g| g.0[..n].contains(&bx));
    let pairwise_incomparable = generators.iter().all(|p| {
        generators.iter().all(|q| p == q || semigroup_membership(&p.sub(q), n).is_none())
    });
    // With F_2 above the window a lone F_1 says nothing about the type.
    let f2_hidden = f2(n).is_some_and(|f| f.0[n] > t_max);
    let classification = if touches_box {
        Classification::Inconclusive
    } else if generators == [f1(n)] && !f2_hidden {
        Classification::Gorenstein
    } else if f2(n).is_some_and(|f2| generators == [f1(n), f2]) {
        Classification::TypeTwo
    } else {
        Classification::Inconclusive
    };
    Ok(CanonicalReport {
        n,
        t_max,
        box_bound: bx,
        interior_points,
        generators,
        classification,
        touches_box,
        pairwise_incomparable,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub n: usize,
    pub t_max: i64,
    #[serde(rename = "box")]
    pub box_bound: i64,
    pub interior_checked: u64,
    pub via_f1: u64,
    /// Reduced by `F_2` only (odd `n`).
    pub via_f2: u64,
    pub violation_count: u64,
    pub violations: Vec<LatticeVector>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Every interior point `F` of the box satisfies `F - F_1 ∈ C`, or (odd `n`)
/// `F - F_2 ∈ C`.
pub fn interior_reduction_check(n: usize, t_max: i64, bx: i64) -> Result<ReductionReport> {
    check_bounds(n, t_max, bx)?;
    let region = Region::new(n, t_max, bx);
    let mem = MembershipTables::new(n, t_max);
    let f1v = f1(n);
    let f2v = f2(n);
    let parts: Vec<ReductionReport> = region
        .shards()
        .into_par_iter()
        .map(|shard| {
            let mut rep = ReductionReport::default();
            let t = shard.0;
            region.for_rows(shard, &mut |a, p| {
                if !p.interior || p.lo_strict > bx {
                    return;
                }
                let last = n - 1;
                // F - F_1 (resp. F - F_2) has last x-coordinate v - 1 and t - 1
                // (resp. v - k and t - k - 1), so both memberships are
                // constant from v = t on.
                let stable = t.max(p.lo_strict);
                let mut v = p.lo_strict;
                while v <= bx {
                    let reps = if v == stable { (bx - v + 1) as u64 } else { 1 };
                    a[last] = v;
                    let d1: Vec<i64> = a.iter().zip(&f1v.0).map(|(x, y)| x - y).collect();
                    let by1 = mem.contains(&d1);
                    let by2 = !by1
                        && f2v.as_ref().is_some_and(|f| {
                            let d2: Vec<i64> = a.iter().zip(&f.0).map(|(x, y)| x - y).collect();
                            mem.contains(&d2)
                        });
                    rep.interior_checked += reps;
                    if by1 {
                        rep.via_f1 += reps;
                    } else if by2 {
                        rep.via_f2 += reps;
                    } else {
                        rep.violation_count += reps;
                        for w in v..v + reps as i64 {
                            let mut pt = a.clone();
                            pt[last] = w;
                            push_capped(&mut rep.violations, LatticeVector(pt));
                        }
                    }
                    if reps > 1 {
                        break;
                    }
                    v += 1;
                }
                a[last] = 0;
            });
            rep
        })
        .collect();
    let mut out = ReductionReport { n, t_max, box_bound: bx, ..Default::default() };
    for p in parts {
        out.interior_checked += p.interior_checked;
        out.via_f1 += p.via_f1;
        out.via_f2 += p.via_f2;
        out.violation_count += p.violation_count;
        extend_capped(&mut out.violations, p.violations);
    }
    Ok(out)
}

/// `|cycle_independent_sets(n, l)| = n/(n-l) · C(n-l, l)`.
pub fn independent_set_count(n: usize, l: usize) -> u128 {
    n as u128 * binomial(n as i64 - l as i64, l as i64) / (n - l) as u128
}
