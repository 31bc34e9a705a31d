//! Multivariate gcd over Q.
//!
//! The monomial content is split off first; the rest is handled by a
//! recursive primitive pseudo-remainder sequence on one main variable at a
//! time. Before running the PRS a modular test is tried: if for every shared
//! variable the univariate images at a random point are coprime (and the
//! leading coefficients survive), the gcd is provably 1.

use super::{modp, Polynomial};
use crate::error::{Error, Result};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Normalized gcd: primitive integral with positive leading coefficient.
/// `gcd(f, 0)` is `f` normalized and `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars(), g.nvars(), "polynomial arity mismatch");
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let m = mf.gcd(&mg);
    let f1 = f.div_monomial(&mf).expect("content divides").normalized();
    let g1 = g.div_monomial(&mg).expect("content divides").normalized();
    let h = content_free_gcd(&f1, &g1);
    h.mul_term(&m, &num_traits::One::one()).normalized()
}

/// Gcd of a list with early exit once the running gcd is 1.
pub fn gcd_of_list(polys: &[Polynomial]) -> Result<Polynomial> {
    let first = polys.first().ok_or(Error::EmptyGeneratorList)?;
    let mut g = first.normalized();
    for p in &polys[1..] {
        if g.is_one() {
            break;
        }
        g = gcd(&g, p);
    }
    Ok(g)
}

/// Both inputs nonzero, normalized, and not divisible by any variable.
fn content_free_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = f.nvars();
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(n);
    }
    if f == g {
        return f.clone();
    }
    let vf = f.support_vars();
    let vg = g.support_vars();
    // A variable in only one argument cannot occur in the gcd: replace that
    // argument by its content with respect to the variable.
    for v in (0..n).rev() {
        if vf[v] && !vg[v] {
            return gcd(&content_in(f, v), g);
        }
        if vg[v] && !vf[v] {
            return gcd(f, &content_in(g, v));
        }
    }
    let shared: Vec<usize> = (0..n).filter(|&v| vf[v]).collect();
    let mut all_coprime = true;
    for &v in &shared {
        if !coprime_in(f, g, v) {
            all_coprime = false;
        } else if shared.len() > 1 {
            // The gcd is free of x_v, so it divides both contents in x_v.
            return gcd(&content_in(f, v), &content_in(g, v));
        }
    }
    if all_coprime {
        return Polynomial::one(n);
    }
    let v = *shared.last().expect("nonconstant inputs share a variable");
    prs_gcd(f, g, v)
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `x_v`.
fn content_in(f: &Polynomial, v: usize) -> Polynomial {
    gcd_of_list(&f.to_univariate(v)).expect("nonempty")
}

/// One-sided modular test: `true` proves `deg_v gcd(f, g) = 0`.
///
/// Inputs are primitive integral, so by Gauss's lemma a common factor `h`
/// can be taken integral and its leading coefficient in `x_v` divides those
/// of `f` and `g`; if those survive the evaluation, `h` keeps its degree.
fn coprime_in(f: &Polynomial, g: &Polynomial, v: usize) -> bool {
    let n = f.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ v as u64);
    let point: Vec<u64> = (0..n).map(|_| rng.gen_range(1..modp::P)).collect();
    let image = |p: &Polynomial| -> Option<Vec<u64>> {
        p.to_univariate(v).iter().map(|c| c.eval_modp(&point)).collect()
    };
    let (Some(a), Some(b)) = (image(f), image(g)) else {
        return false;
    };
    if a.last() == Some(&0) || b.last() == Some(&0) {
        return false;
    }
    modp::univariate_gcd_degree(&a, &b) == 0
}

/// Primitive PRS with main variable `x_v`.
fn prs_gcd(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let n = f.nvars();
    let mut a = f.to_univariate(v);
    let mut b = g.to_univariate(v);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let ca = gcd_of_list(&a).expect("nonempty");
    let cb = gcd_of_list(&b).expect("nonempty");
    let c = gcd(&ca, &cb);
    let mut a = primitive_part(&a, &ca);
    let mut b = primitive_part(&b, &cb);
    loop {
        if b.len() == 1 {
            // b is a nonzero element of the coefficient ring and primitive, i.e. a unit.
            return c;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            let h = Polynomial::from_univariate(n, v, &b);
            return (&h * &c).normalized();
        }
        let cr = gcd_of_list(&r).expect("nonempty");
        a = b;
        b = primitive_part(&r, &cr);
    }
}

fn primitive_part(coeffs: &[Polynomial], content: &Polynomial) -> Vec<Polynomial> {
    let out: Vec<Polynomial> = coeffs
        .iter()
        .map(|c| c.div_exact(content).expect("content divides coefficients"))
        .collect();
    // Strip the remaining rational content too, to keep coefficients small.
    let q = joint_content(&out);
    out.iter().map(|c| c.scale(&q)).collect()
}

/// Reciprocal of the rational content shared by all coefficient polynomials.
fn joint_content(coeffs: &[Polynomial]) -> super::Rational {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut l = BigInt::from(1);
    let mut g = BigInt::zero();
    for c in coeffs {
        for (_, q) in c.terms() {
            l = l.lcm(q.denom());
        }
    }
    for c in coeffs {
        for (_, q) in c.terms() {
            g = g.gcd(&(q.numer() * (&l / q.denom())));
        }
    }
    if g.is_zero() {
        return num_traits::One::one();
    }
    super::Rational::new(l, g)
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients;
/// the result is trimmed (empty means zero).
fn prem(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<Polynomial> = a.to_vec();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bi) in b.iter().enumerate() {
            let t = &lr * bi;
            r[shift + i] = &r[shift + i] - &t;
        }
        trim(&mut r);
    }
    r
}

fn trim(r: &mut Vec<Polynomial>) {
    while r.last().is_some_and(|p| p.is_zero()) {
        r.pop();
    }
}
