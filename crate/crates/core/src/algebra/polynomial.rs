use super::{format_rational, modp, parse_rational, Monomial, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial in `n` variables over Q.
///
/// Terms are kept strictly decreasing in degrevlex order with nonzero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: Vec::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn from_i64(n: usize, c: i64) -> Self {
        Self::constant(n, super::rat(c))
    }

    /// `x_i` with a 0-based index.
    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Monomial::var(n, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let n = m.nvars();
        if c.is_zero() {
            return Self::zero(n);
        }
        Polynomial { n, terms: vec![(m, c)] }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    /// Builds a polynomial from arbitrary terms; like terms are combined.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial arity mismatch");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(n, acc)
    }

    fn from_map(n: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    /// A single term `c * x^a`.
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|t| t.0.degree() == d)
            }
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(i)).max().unwrap_or(0)
    }

    /// Which variables occur with positive exponent.
    pub fn support_vars(&self) -> Vec<bool> {
        let mut v = vec![false; self.n];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v[i] = true;
                }
            }
        }
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        // Multiplying by a monomial preserves the monomial order.
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, c) in &self.terms {
            terms.push((a.div(m).ok_or(Error::NotDivisible)?, c.clone()));
        }
        Ok(Polynomial { n: self.n, terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Componentwise minimum of the exponent vectors (the largest monomial
    /// dividing every term). The zero polynomial gives `1`.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.n),
            Some((m, _)) => it.fold(m.clone(), |acc, (a, _)| acc.gcd(a)),
        }
    }

    /// Exact quotient `self / d`; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_term() {
            let (m, c) = &d.terms[0];
            return Ok(self.div_monomial(m)?.scale(&c.recip()));
        }
        let (lm, lc) = (&d.terms[0].0, &d.terms[0].1);
        let lc_inv = lc.recip();
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.terms.first().cloned() {
            let qm = m.div(lm).ok_or(Error::NotDivisible)?;
            let qc = &c * &lc_inv;
            r = &r - &d.mul_term(&qm, &qc);
            q.push((qm, qc));
        }
        // Quotient terms are produced in decreasing order.
        Ok(Polynomial { n: self.n, terms: q })
    }

    /// Positive rational `q` with `self / q` primitive integral and with the
    /// sign of the leading coefficient folded in, so that `self / content`
    /// is the normal form.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        let q = Rational::new(g, l);
        if self.terms[0].1.is_negative() {
            -q
        } else {
            q
        }
    }

    /// Primitive integral representative with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.content().recip())
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || self.content().is_one()
    }

    /// Sets `x_i = 0`.
    pub fn vanish_var(&self, i: usize) -> Self {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().filter(|t| t.0.exp(i) == 0).cloned().collect(),
        }
    }

    /// Image under evaluation at `point` mod P; `None` if a denominator vanishes.
    pub fn eval_modp(&self, point: &[u64]) -> Option<u64> {
        let mut s = 0;
        for (m, c) in &self.terms {
            let mut t = modp::from_rational(c)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = modp::mul(t, modp::pow(point[i], e as u64));
                }
            }
            s = modp::add(s, t);
        }
        Some(s)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            s += t;
        }
        s
    }

    /// Coefficients with respect to `x_v`, indexed by degree.
    pub fn to_univariate(&self, v: usize) -> Vec<Polynomial> {
        let d = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut m2 = m.clone();
            m2.set_exp(v, 0);
            parts[e].push((m2, c.clone()));
        }
        parts
            .into_iter()
            .map(|mut t| {
                // Removing x_v can reorder terms.
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Polynomial { n: self.n, terms: t }
            })
            .collect()
    }

    pub fn from_univariate(n: usize, v: usize, coeffs: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.set_exp(v, m.exp(v) + e as u32);
                terms.push((m2, c.clone()));
            }
        }
        Self::from_terms(n, terms)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Self {
        assert_eq!(self.n, other.n, "polynomial arity mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { n: self.n, terms: out }
    }

    fn mul_poly(&self, other: &Polynomial) -> Self {
        assert_eq!(self.n, other.n, "polynomial arity mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Self::from_map(self.n, acc)
    }
}

impl Ord for Polynomial {
    /// Canonical order: compare term lists from the leading term down,
    /// monomial first, then coefficient; a proper prefix is smaller.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len()).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_poly(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Polynomial {
    fn to_json_repr(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { c: format_rational(c), e: m.exponents().to_vec() })
                .collect(),
        }
    }

    fn from_json_repr(j: PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            if t.e.len() != j.n {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} in a polynomial with n = {}",
                    t.e.len(),
                    j.n
                )));
            }
            terms.push((Monomial::from_exponents(&t.e), parse_rational(&t.c)?));
        }
        Ok(Self::from_terms(j.n, terms))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Self::from_json_repr(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(3, s).unwrap()
    }

    #[test]
    fn arithmetic() {
        let f = p("x1 + x2");
        let g = p("x1 - x2");
        assert_eq!(&f * &g, p("x1^2 - x2^2"));
        assert_eq!(&f + &g, p("2*x1"));
        assert!((&f - &f).is_zero());
        assert_eq!(f.pow(2), p("x1^2 + 2*x1*x2 + x2^2"));
    }

    #[test]
    fn exact_division() {
        let f = p("x1^3 - x2^3");
        let g = p("x1 - x2");
        assert_eq!(f.div_exact(&g).unwrap(), p("x1^2 + x1*x2 + x2^2"));
        assert_eq!(p("x1 + 1").div_exact(&p("x2")), Err(Error::NotDivisible));
        assert_eq!(p("x1^2 + x3").div_exact(&p("x1 + x2")), Err(Error::NotDivisible));
    }

    #[test]
    fn normalization() {
        let f = p("-4/3*x1 + 2*x2");
        assert_eq!(f.normalized(), p("2*x1 - 3*x2"));
        assert_eq!(f.content(), Rational::new((-2).into(), 3.into()));
        assert_eq!(Polynomial::from_i64(3, -5).normalized(), Polynomial::one(3));
    }

    #[test]
    fn json_canonical_and_order_insensitive() {
        let f = p("3*x1^2*x3 - 1/2*x2 + 7");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"terms":[{"c":"3/1","e":[2,0,1]},{"c":"-1/2","e":[0,1,0]},{"c":"7/1","e":[0,0,0]}]}"#
        );
        let shuffled = r#"{"n":3,"terms":[{"c":"7","e":[0,0,0]},{"c":"3/1","e":[2,0,1]},{"c":"-2/4","e":[0,1,0]}]}"#;
        let g: Polynomial = serde_json::from_str(shuffled).unwrap();
        assert_eq!(f, g);
        assert!(serde_json::from_str::<Polynomial>(r#"{"n":2,"terms":[{"c":"1","e":[1]}]}"#).is_err());
    }

    #[test]
    fn univariate_roundtrip() {
        let f = p("x1^2*x3 + x2*x3^2 - x1 + 4");
        let u = f.to_univariate(2);
        assert_eq!(u.len(), 3);
        assert_eq!(u[0], p("-x1 + 4"));
        assert_eq!(Polynomial::from_univariate(3, 2, &u), f);
    }

    #[test]
    fn evaluation() {
        let f = p("x1^2 - 3*x2*x3");
        assert_eq!(f.eval(&[rat(2), rat(1), rat(5)]), rat(-11));
        assert_eq!(f.eval_modp(&[2, 1, 5]), Some(modp::from_i64(-11)));
    }
}
