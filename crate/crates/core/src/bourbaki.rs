//! Bourbaki sequences `0 -> S^(r-1) -> M -> I(m) -> 0`: determinantal
//! certificates, extraction of the ideal from a presentation, Bourbaki
//! numbers and the generic construction.

use crate::algebra::{gcd_of_list, rat, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::koszul::GradedTwists;
use crate::linalg::{minors_gcd, select_full_rank_submatrix, signed_maximal_minors, PolyMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_ATTEMPTS: usize = 20;
/// Entries of the random coefficient matrix are drawn from `[-LAMBDA_BOUND, LAMBDA_BOUND]`.
pub const LAMBDA_BOUND: i64 = 100;

/// Generators of an ideal, each normalized (primitive, positive leading
/// coefficient), zeros dropped, deduplicated and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealGens {
    pub n: usize,
    pub gens: Vec<Polynomial>,
    /// The `m` in `I(m)`, when known.
    #[serde(default)]
    pub twist: Option<i64>,
    /// Common degree of homogeneous generators.
    #[serde(default)]
    pub generated_degree: Option<u64>,
}

impl IdealGens {
    pub fn new(n: usize, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut g: Vec<Polynomial> =
            gens.into_iter().filter(|p| !p.is_zero()).map(|p| p.normalized()).collect();
        g.sort();
        g.dedup();
        let generated_degree = common_degree(&g);
        IdealGens { n, gens: g, twist: None, generated_degree }
    }

    pub fn parse(n: usize, gens: &[&str]) -> Result<Self> {
        let g = gens.iter().map(|s| Polynomial::parse(n, s)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(n, g))
    }

    pub fn with_twist(mut self, m: i64) -> Self {
        self.twist = Some(m);
        self
    }

    /// Same generator set, ignoring twist metadata.
    pub fn same_generators(&self, other: &IdealGens) -> bool {
        self.n == other.n && self.gens == other.gens
    }
}

fn common_degree(g: &[Polynomial]) -> Option<u64> {
    let d = g.first()?.total_degree()?;
    g.iter().all(|p| p.is_homogeneous() && p.total_degree() == Some(d)).then_some(d)
}

/// Outcome of a determinantal torsion-freeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BourbakiCertificate {
    pub matrix_used: PolyMatrix,
    pub minor_size: usize,
    /// Normalized gcd of the `minor_size`-minors.
    pub gcd_witness: Polynomial,
    pub verdict: bool,
    pub code: &'static str,
}

pub const CODE_OK: &str = "ok";
pub const CODE_COMMON_FACTOR: &str = "common factor";
pub const CODE_VANISHING: &str = "all minors vanish";
pub const CODE_RANK_DEFICIENT: &str = "rank-deficient presentation";

impl Serialize for BourbakiCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BourbakiCertificate", 6)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("code", self.code)?;
        st.serialize_field("minor_size", &self.minor_size)?;
        st.serialize_field("gcd_witness", &self.gcd_witness)?;
        st.serialize_field("matrix_fingerprint", &self.matrix_used.fingerprint())?;
        st.serialize_field("matrix", &self.matrix_used)?;
        st.end()
    }
}

fn certify(m: &PolyMatrix, t: usize) -> BourbakiCertificate {
    let g = minors_gcd(m, t);
    let (verdict, code) = if g.is_zero() {
        (false, CODE_VANISHING)
    } else if g.is_one() {
        (true, CODE_OK)
    } else {
        (false, CODE_COMMON_FACTOR)
    };
    BourbakiCertificate { matrix_used: m.clone(), minor_size: t, gcd_witness: g, verdict, code }
}

/// An ideal has height at least two iff it is nonzero and its generators
/// have no common factor.
pub fn height_ge_two(gens: &[Polynomial]) -> Result<bool> {
    let g = gcd_of_list(gens)?;
    Ok(g.is_one())
}

/// Torsion-freeness of the cokernel of `ι∘φ : S^s -> F` (into a free
/// module, with torsion-free cokernel of `ι`): holds iff the `s`-minors
/// have no common factor and do not all vanish.
pub fn check_bourbaki_map(iota_phi: &PolyMatrix, s: usize) -> Result<BourbakiCertificate> {
    if s > iota_phi.cols() {
        return Err(Error::DimensionMismatch(format!(
            "minor size {s} exceeds the {} columns",
            iota_phi.cols()
        )));
    }
    Ok(certify(iota_phi, s))
}

/// Torsion-freeness of `Coker φ` from a presentation `ψ` with `beta0`
/// generators: tests the `(beta0 - r + 1)`-minors of `ψ`. For the
/// presentation of a rank-one cokernel (a Bourbaki ideal) pass `r = 2`.
/// When that size exceeds the matrix the verdict is negative.
pub fn check_presentation_criterion(
    psi: &PolyMatrix,
    beta0: usize,
    r: usize,
) -> Result<BourbakiCertificate> {
    if beta0 != psi.rows() {
        return Err(Error::DimensionMismatch(format!(
            "beta0 = {beta0} but the presentation has {} rows",
            psi.rows()
        )));
    }
    if r == 0 || r > beta0 + 1 {
        return Err(Error::InvalidArgument(format!("rank {r} outside 1..={}", beta0 + 1)));
    }
    let t = beta0 + 1 - r;
    if t > psi.cols() || t > psi.rows() {
        return Ok(BourbakiCertificate {
            matrix_used: psi.clone(),
            minor_size: t,
            gcd_witness: Polynomial::zero(psi.nvars()),
            verdict: false,
            code: CODE_RANK_DEFICIENT,
        });
    }
    Ok(certify(psi, t))
}

/// Result of recovering a Bourbaki ideal from a presentation matrix.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractedIdeal {
    pub ideal: IdealGens,
    /// The common factor `g` of the signed maximal minors.
    pub divisor: Polynomial,
    /// Columns of the presentation forming the full-rank submatrix `C`.
    pub columns: Vec<usize>,
    pub submatrix: PolyMatrix,
    pub signed_minors: Vec<Polynomial>,
}

/// For a presentation `B` (`alpha` rows) of a rank-one torsion-free module
/// `I(m)`: `I = (1/g) I_(alpha-1)(C)` for any `alpha x (alpha-1)` submatrix
/// `C` of full rank, with `g` the gcd of its signed maximal minors.
pub fn extract_bourbaki_ideal(b: &PolyMatrix) -> Result<ExtractedIdeal> {
    let alpha = b.rows();
    if alpha == 0 {
        return Err(Error::InvalidArgument("presentation with no generators".into()));
    }
    let (_, columns) = select_full_rank_submatrix(b, alpha - 1)?;
    extract_with_columns(b, &columns)
}

/// Extraction through a prescribed `alpha x (alpha-1)` submatrix.
pub fn extract_with_columns(b: &PolyMatrix, columns: &[usize]) -> Result<ExtractedIdeal> {
    if columns.len() + 1 != b.rows() || columns.iter().any(|&j| j >= b.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "{} columns do not select a {}x{} submatrix",
            columns.len(),
            b.rows(),
            b.rows().saturating_sub(1)
        )));
    }
    let c = b.select_columns(columns);
    let f = signed_maximal_minors(&c)?;
    let g = gcd_of_list(&f)?;
    if g.is_zero() {
        return Err(Error::NoFullRankSubmatrix);
    }
    let quotients = f.iter().map(|fi| fi.div_exact(&g)).collect::<Result<Vec<_>>>()?;
    Ok(ExtractedIdeal {
        ideal: IdealGens::new(b.nvars(), quotients),
        divisor: g,
        columns: columns.to_vec(),
        submatrix: c,
        signed_minors: f,
    })
}

/// Taylor (pairwise) syzygies of monomials: for `i < j` the column
/// `(lcm/m_i) e_i - (lcm/m_j) e_j`.
pub fn taylor_presentation(gens: &[Polynomial]) -> Result<PolyMatrix> {
    let first = gens.first().ok_or(Error::EmptyGeneratorList)?;
    let n = first.nvars();
    let mut monos: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.is_term() {
            return Err(Error::NotMonomial(g.to_string()));
        }
        monos.push(g.terms()[0].0.clone());
    }
    let a = monos.len();
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (i + 1..a).map(move |j| (i, j))).collect();
    let mut m = PolyMatrix::zeros(n, a, pairs.len());
    for (c, &(i, j)) in pairs.iter().enumerate() {
        let l = monos[i].lcm(&monos[j]);
        m.set(i, c, Polynomial::monomial(l.div(&monos[i]).expect("lcm")));
        m.set(j, c, -Polynomial::monomial(l.div(&monos[j]).expect("lcm")));
    }
    Ok(m)
}

/// `m = k(r - 1) - e1`.
pub fn bourbaki_number(k: i64, r: i64, e1: i64) -> i64 {
    k * (r - 1) - e1
}

/// `e1 = Σ_i Σ_j (-1)^i · j · b_ij` over the graded Betti numbers.
pub fn e1_from_resolution(t: &GradedTwists) -> i64 {
    t.modules
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let s: i64 = m.iter().map(|(&j, &b)| j * b as i64).sum();
            if i % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBurchShape {
    pub m: i64,
    /// `F1 ⊕ S(-k)^(alpha-beta-1) -> F0`.
    pub presentation: GradedTwists,
}

/// For `0 -> F1 -> F0 -> M -> 0` with `F0 = ⊕ S(-a_i)` (`alpha` summands)
/// and `F1 = ⊕ S(-b_j)` (`beta` summands), and a Bourbaki sequence with
/// free part generated in degree `k`: `m = Σb - Σa + k(alpha - beta - 1)`.
pub fn hilbert_burch(a: &[i64], b: &[i64], k: i64) -> Result<HilbertBurchShape> {
    let (alpha, beta) = (a.len() as i64, b.len() as i64);
    if alpha - beta < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank alpha - beta = {} must be at least 2",
            alpha - beta
        )));
    }
    let m = b.iter().sum::<i64>() - a.iter().sum::<i64>() + k * (alpha - beta - 1);
    let mut f1 = b.to_vec();
    f1.extend(std::iter::repeat_n(k, (alpha - beta - 1) as usize));
    Ok(HilbertBurchShape { m, presentation: GradedTwists::from_lists(&[a, &f1]) })
}

#[derive(Clone, Debug, Serialize)]
pub struct AttemptRecord {
    pub attempt: usize,
    pub lambda: Vec<Vec<i64>>,
    pub verdict: bool,
    pub gcd_witness: Polynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericSearchReport {
    pub success: bool,
    pub seed: u64,
    pub attempts: usize,
    pub lambda: Option<Vec<Vec<i64>>>,
    pub certificate: Option<BourbakiCertificate>,
    pub log: Vec<AttemptRecord>,
}

/// Random integral `φ = λ : S^(r-1) -> S^alpha`, tested through `A·λ` where
/// `A` is the matrix of `G -> M -> F` (alpha columns). Reproducible from
/// `seed`.
pub fn generic_bourbaki_search(
    a: &PolyMatrix,
    alpha: usize,
    r: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<GenericSearchReport> {
    if a.cols() != alpha {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} columns, expected alpha = {alpha}",
            a.cols()
        )));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let s = r - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = Vec::new();
    for attempt in 1..=max_attempts.max(1) {
        let lambda: Vec<Vec<i64>> = (0..alpha)
            .map(|_| (0..s).map(|_| rng.gen_range(-LAMBDA_BOUND..=LAMBDA_BOUND)).collect())
            .collect();
        let lq: Vec<Vec<_>> = lambda.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let prod = if s == 0 {
            PolyMatrix::zeros(a.nvars(), a.rows(), 0)
        } else {
            a.mul_constant(&lq)?
        };
        let cert = check_bourbaki_map(&prod, s)?;
        log.push(AttemptRecord {
            attempt,
            lambda: lambda.clone(),
            verdict: cert.verdict,
            gcd_witness: cert.gcd_witness.clone(),
        });
        if cert.verdict {
            return Ok(GenericSearchReport {
                success: true,
                seed,
                attempts: attempt,
                lambda: Some(lambda),
                certificate: Some(cert),
                log,
            });
        }
    }
    Ok(GenericSearchReport {
        success: false,
        seed,
        attempts: log.len(),
        lambda: None,
        certificate: None,
        log,
    })
}

/// Graded Betti table summary used by reports.
pub fn twist_sums(t: &GradedTwists) -> BTreeMap<usize, i64> {
    t.modules
        .iter()
        .enumerate()
        .map(|(i, m)| (i, m.iter().map(|(&j, &b)| j * b as i64).sum()))
        .collect()
}
