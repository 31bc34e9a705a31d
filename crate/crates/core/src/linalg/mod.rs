//! Matrices over Q[x_1..x_n]: determinants, minors, rank over the fraction
//! field and full-rank column selection.

mod det;
mod grading;
mod minors;
mod rank;

pub use det::{bareiss, laplace};
pub use grading::Multigrading;
pub use minors::{minors_gcd, minors_gcd_by_enumeration, signed_maximal_minors};
pub use rank::{rank_over_fraction_field, select_full_rank_submatrix, RankCertificate};

use crate::algebra::{modp, Polynomial, Rational};
use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use std::fmt;

/// Row or column label: a wedge index (1-based subset) or a free name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Index(Vec<usize>),
    Name(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Index(s) => {
                write!(f, "e")?;
                for (k, i) in s.iter().enumerate() {
                    if k > 0 && s.iter().any(|&j| j >= 10) {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                Ok(())
            }
            Label::Name(s) => write!(f, "{s}"),
        }
    }
}

/// Dense row-major matrix of polynomials in a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    row_labels: Option<Vec<Label>>,
    col_labels: Option<Vec<Label>>,
}

impl PolyMatrix {
    pub fn zeros(n: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            n,
            rows,
            cols,
            entries: vec![Polynomial::zero(n); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_fn(
        n: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut m = Self::zeros(n, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for p in row {
                if p.nvars() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "entry in {} variables, expected {n}",
                        p.nvars()
                    )));
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { n, rows: r, cols: c, entries, row_labels: None, col_labels: None })
    }

    /// Parses rows of text polynomials, e.g. `[["x1", "0"], ["x2", "x1+x2"]]`.
    pub fn parse_rows(n: usize, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse(n, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n, rows)
    }

    pub fn with_labels(mut self, rows: Option<Vec<Label>>, cols: Option<Vec<Label>>) -> Self {
        if let Some(r) = &rows {
            assert_eq!(r.len(), self.rows, "row label count");
        }
        if let Some(c) = &cols {
            assert_eq!(c.len(), self.cols, "column label count");
        }
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> Option<&[Label]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Label]> {
        self.col_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.nvars(), self.n, "entry arity");
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.n, self.cols, self.rows, |i, j| self.get(j, i).clone());
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Submatrix on the given row and column positions, labels carried along.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m =
            Self::from_fn(self.n, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone());
        m.row_labels = self.row_labels.as_ref().map(|l| rows.iter().map(|&i| l[i].clone()).collect());
        m.col_labels = self.col_labels.as_ref().map(|l| cols.iter().map(|&j| l[j].clone()).collect());
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    pub fn delete_row(&self, r: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn row_index_of(&self, l: &Label) -> Option<usize> {
        self.row_labels.as_ref()?.iter().position(|x| x == l)
    }

    pub fn col_index_of(&self, l: &Label) -> Option<usize> {
        self.col_labels.as_ref()?.iter().position(|x| x == l)
    }

    /// Matrix product; row labels from `self`, column labels from `rhs`.
    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows || self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.n, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = rhs.col_labels.clone();
        Ok(out)
    }

    /// Product with a matrix of rational constants (`cols x k`).
    pub fn mul_constant(&self, lambda: &[Vec<Rational>]) -> Result<PolyMatrix> {
        let k = lambda.first().map_or(0, |r| r.len());
        if lambda.len() != self.cols || lambda.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch("constant factor shape".into()));
        }
        let l = Self::from_fn(self.n, self.cols, k, |i, j| {
            Polynomial::constant(self.n, lambda[i][j].clone())
        });
        let mut out = self.mul(&l)?;
        out.col_labels = None;
        Ok(out)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = f(e);
        }
        m
    }

    /// Entrywise image mod P at `point`; `None` if a denominator vanishes.
    pub fn eval_modp(&self, point: &[u64]) -> Option<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval_modp(point)).collect())
            .collect()
    }

    /// SHA-256 of the canonical JSON serialization, hex encoded.
    pub fn fingerprint(&self) -> String {
        let s = serde_json::to_string(self).expect("matrix serializes");
        hex::encode(Sha256::digest(s.as_bytes()))
    }

    pub fn det(&self) -> Result<Polynomial> {
        det::det(self)
    }

    pub fn det_bareiss(&self) -> Result<Polynomial> {
        det::bareiss(self)
    }

    pub fn det_laplace(&self) -> Result<Polynomial> {
        det::laplace(self)
    }

    /// Exact rank over the fraction field by fraction-free elimination.
    pub fn exact_rank(&self) -> usize {
        det::fraction_free_rank(self)
    }

    pub fn multigrading(&self) -> Option<Multigrading> {
        Multigrading::detect(self)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect();
        let mut width = vec![1; self.cols];
        for r in &cells {
            for (j, c) in r.iter().enumerate() {
                width[j] = width[j].max(c.len());
            }
        }
        if let Some(cl) = &self.col_labels {
            for (j, l) in cl.iter().enumerate() {
                width[j] = width[j].max(l.to_string().len());
            }
        }
        let rl: Vec<String> = match &self.row_labels {
            Some(l) => l.iter().map(|x| x.to_string()).collect(),
            None => vec![String::new(); self.rows],
        };
        let lw = rl.iter().map(|s| s.len()).max().unwrap_or(0);
        if let Some(cl) = &self.col_labels {
            write!(f, "{:lw$}  ", "")?;
            for (j, l) in cl.iter().enumerate() {
                write!(f, " {:>w$}", l.to_string(), w = width[j])?;
            }
            writeln!(f)?;
        }
        for (i, r) in cells.iter().enumerate() {
            write!(f, "{:lw$} [", rl[i])?;
            for (j, c) in r.iter().enumerate() {
                write!(f, " {:>w$}", c, w = width[j])?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// A matrix entry: structured JSON, or text such as `"x1^2 - 3/2*x3"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Poly(Polynomial),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Entry>>,
    #[serde(default)]
    row_labels: Option<Vec<Label>>,
    #[serde(default)]
    col_labels: Option<Vec<Label>>,
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            n: Some(self.n),
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().cloned().map(Entry::Poly).collect())
                .collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MatrixJson::deserialize(d)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(D::Error::custom(format!(
                "entries do not form a {}x{} array",
                j.rows, j.cols
            )));
        }
        let structured = j.entries.iter().flatten().find_map(|e| match e {
            Entry::Poly(p) => Some(p.nvars()),
            Entry::Text(_) => None,
        });
        let n = match (j.n, structured) {
            (Some(n), _) => n,
            (None, Some(n)) => n,
            (None, None) if j.entries.iter().flatten().next().is_some() => {
                return Err(D::Error::custom("text entries need the field \"n\""));
            }
            (None, None) => 0,
        };
        let entries = j
            .entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        Entry::Poly(p) => Ok(p),
                        Entry::Text(t) => Polynomial::parse(n, &t),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let mut m = PolyMatrix::from_rows(n, entries).map_err(D::Error::custom)?;
        m.rows = j.rows;
        m.cols = j.cols;
        if j.row_labels.as_ref().is_some_and(|l| l.len() != j.rows)
            || j.col_labels.as_ref().is_some_and(|l| l.len() != j.cols)
        {
            return Err(D::Error::custom("label count does not match matrix shape"));
        }
        m.row_labels = j.row_labels;
        m.col_labels = j.col_labels;
        Ok(m)
    }
}

/// Deterministic random evaluation point with coordinates in `1..P`.
pub(crate) fn random_point(n: usize, seed: u64) -> Vec<u64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(1..modp::P)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_with_labels() {
        let m = PolyMatrix::parse_rows(2, &[&["x1", "0"], &["x2", "x1 + x2"]])
            .unwrap()
            .with_labels(
                Some(vec![Label::Index(vec![1]), Label::Index(vec![2])]),
                Some(vec![Label::Name("a".into()), Label::Name("b".into())]),
            );
        let s = serde_json::to_string(&m).unwrap();
        let back: PolyMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.fingerprint(), m.fingerprint());
        let bad = r#"{"rows":2,"cols":1,"entries":[[{"n":1,"terms":[]}]]}"#;
        assert!(serde_json::from_str::<PolyMatrix>(bad).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = PolyMatrix::parse_rows(2, &[&["x1", "x2"]]).unwrap();
        let b = a.transpose();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.get(0, 0), &Polynomial::parse(2, "x1^2 + x2^2").unwrap());
        assert!(b.mul(&b).is_err());
    }
}
