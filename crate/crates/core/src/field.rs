//! Arithmetic over GF(p) and GF(p^m), plus the number-theoretic scaffolding
//! (multiplicative orders, totients, primitive roots of unity) everything else
//! in this crate is built on.
//!
//! Values stay small by design: p is a prime below a few hundred and extension
//! fields are enumerable (p^m below ~2^24), so all arithmetic is exact u64
//! work with no modular tricks beyond the obvious.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd(p, L) must be 1, got p = {p}, l = {l}")]
    NotCoprime { p: u64, l: u64 },
    #[error("L = {l} does not divide p^m - 1 = {order}")]
    NoRootOfUnity { l: u64, order: u64 },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A prime p, verified by trial division at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 2 {
            return Err(FieldError::NotPrime(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return Err(FieldError::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeModulus(p))
    }

    pub fn value(&self) -> u64 {
        self.0
    }
}

/// Scalar arithmetic mod p. Elements are plain `u64` in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gfp {
    p: u64,
}

impl Gfp {
    pub fn new(p: PrimeModulus) -> Self {
        Gfp { p: p.value() }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat: a^(p-2). Zero is rejected.
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a % self.p == 0 {
            return Err(FieldError::DivisionByZero(self.p));
        }
        Ok(self.pow(a, self.p - 2))
    }
}

/// Smallest m >= 1 with p^m = 1 (mod L). Requires gcd(p, L) = 1.
pub fn mult_order(p: PrimeModulus, l: u64) -> Result<u32, FieldError> {
    let p = p.value();
    if gcd(p, l) != 1 {
        return Err(FieldError::NotCoprime { p, l });
    }
    let one = 1 % l;
    let mut acc = p % l;
    let mut m = 1;
    while acc != one {
        acc = acc * (p % l) % l;
        m += 1;
    }
    Ok(m)
}

/// Count of 1 <= j <= L with gcd(j, L) = 1.
pub fn euler_totient(l: u64) -> u64 {
    (1..=l).filter(|&j| gcd(j, l) == 1).count() as u64
}

/// L reduced into GF(p) together with its inverse. Rejects p | L.
pub fn scalar_l_in_gfp(p: PrimeModulus, l: u64) -> Result<(u64, u64), FieldError> {
    let gf = Gfp::new(p);
    let lp = l % p.value();
    if lp == 0 {
        return Err(FieldError::NotCoprime { p: p.value(), l });
    }
    Ok((lp, gf.inv(lp)?))
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of GF(p^m) in the polynomial basis of its field:
/// `coeffs[i]` is the coefficient of x^i, length exactly m.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtElem {
    pub coeffs: Vec<u64>,
}

/// GF(p^m) as GF(p)[x] modulo a monic irreducible polynomial of degree m.
///
/// The modulus is pinned deterministically (see [`ExtField::new`]), so every
/// run of the crate realizes the same field and the same elements bit for bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    p: u64,
    m: u32,
    /// Length m+1, monic, irreducible over GF(p).
    modulus: Vec<u64>,
    gf: Gfp,
}

impl ExtField {
    /// Builds GF(p^m) with the smallest monic irreducible modulus of degree m,
    /// where coefficient vectors are compared low-degree-first as base-p digits.
    pub fn new(p: PrimeModulus, m: u32) -> Self {
        assert!(m >= 1, "extension degree must be at least 1");
        let gf = Gfp::new(p);
        let pv = p.value();
        let count = pv.pow(m);
        for idx in 0..count {
            let mut modulus = digits_base_p(idx, pv, m as usize);
            modulus.push(1); // monic leading term
            if modulus[0] == 0 {
                // divisible by x (and for m = 1 the degenerate modulus x)
                continue;
            }
            if is_irreducible(&gf, &modulus) {
                return ExtField {
                    p: pv,
                    m,
                    modulus,
                    gf,
                };
            }
        }
        unreachable!("an irreducible polynomial of every degree exists");
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// p^m, the number of field elements.
    pub fn order(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn base(&self) -> Gfp {
        self.gf
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            coeffs: vec![0; self.m as usize],
        }
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u64) -> ExtElem {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = c % self.p;
        ExtElem { coeffs }
    }

    /// Element number `idx` in coefficient-vector order (base-p digits,
    /// low-degree digit first).
    pub fn from_index(&self, idx: u64) -> ExtElem {
        ExtElem {
            coeffs: digits_base_p(idx, self.p, self.m as usize),
        }
    }

    pub fn to_index(&self, a: &ExtElem) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| self.gf.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| self.gf.sub(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem {
            coeffs: a.coeffs.iter().map(|&x| self.gf.neg(x)).collect(),
        }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let m = self.m as usize;
        if m == 1 {
            return ExtElem {
                coeffs: vec![self.gf.mul(a.coeffs[0], b.coeffs[0])],
            };
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = self.gf.add(prod[i + j], self.gf.mul(x, y));
            }
        }
        // reduce by x^m = -(low part of modulus)
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let t = self.gf.mul(c, self.modulus[j]);
                prod[i - m + j] = self.gf.sub(prod[i - m + j], t);
            }
        }
        prod.truncate(m);
        ExtElem { coeffs: prod }
    }

    pub fn scale(&self, a: &ExtElem, c: u64) -> ExtElem {
        ExtElem {
            coeffs: a.coeffs.iter().map(|&x| self.gf.mul(x, c)).collect(),
        }
    }

    pub fn pow(&self, a: &ExtElem, mut exp: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero(self.p));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Whether an element lies in the prime subfield GF(p).
    pub fn in_prime_field(&self, a: &ExtElem) -> bool {
        a.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The GF(p) value of a prime-subfield element.
    pub fn base_value(&self, a: &ExtElem) -> Option<u64> {
        self.in_prime_field(a).then(|| a.coeffs[0])
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: &ExtElem) -> u64 {
        assert!(!self.is_zero(a));
        let group = self.order() - 1;
        let mut ord = group;
        for q in prime_factors(group) {
            while ord % q == 0 && self.pow(a, ord / q) == self.one() {
                ord /= q;
            }
        }
        ord
    }

    /// The first element in coefficient-vector order whose multiplicative
    /// order is p^m - 1.
    pub fn generator(&self) -> ExtElem {
        let group = self.order() - 1;
        for idx in 1..self.order() {
            let g = self.from_index(idx);
            if self.elem_order(&g) == group {
                return g;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }
}

/// beta = g^((p^m - 1)/L) for the deterministic generator g, with exact
/// order L checked. Rejects L not dividing p^m - 1.
pub fn primitive_root_of_unity(field: &ExtField, l: u64) -> Result<ExtElem, FieldError> {
    let group = field.order() - 1;
    if l == 0 || group % l != 0 {
        return Err(FieldError::NoRootOfUnity { l, order: group });
    }
    if l == 1 {
        return Ok(field.one());
    }
    let g = field.generator();
    let beta = field.pow(&g, group / l);
    assert_eq!(field.pow(&beta, l), field.one());
    for q in prime_factors(l) {
        assert_ne!(field.pow(&beta, l / q), field.one());
    }
    Ok(beta)
}

fn digits_base_p(mut n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = n % p;
        n /= p;
        if n == 0 {
            break;
        }
    }
    out
}

// Dense univariate polynomials over GF(p) (index = degree), used only by the
// irreducibility machinery below. Leading zeros are trimmed.
fn poly_trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

fn poly_is_zero(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

fn poly_rem(gf: &Gfp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = gf.inv(b[db]).expect("nonzero divisor");
    let mut r = poly_trim(a.to_vec());
    while r.len() - 1 >= db && !poly_is_zero(&r) {
        let dr = r.len() - 1;
        if dr < db {
            break;
        }
        let c = gf.mul(r[dr], lead_inv);
        for j in 0..=db {
            let t = gf.mul(c, b[j]);
            r[dr - db + j] = gf.sub(r[dr - db + j], t);
        }
        r = poly_trim(r);
        if r.len() - 1 < db || (r.len() == 1 && r[0] == 0) {
            break;
        }
    }
    r
}

fn poly_mulmod(gf: &Gfp, a: &[u64], b: &[u64], modulus: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = gf.add(prod[i + j], gf.mul(x, y));
        }
    }
    poly_rem(gf, &prod, modulus)
}

fn poly_gcd(gf: &Gfp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !poly_is_zero(&b) {
        let r = poly_rem(gf, &a, &b);
        a = b;
        b = poly_trim(r);
    }
    a
}

/// x^(p^e) mod f, by e Frobenius steps.
fn x_pow_p_iter(gf: &Gfp, f: &[u64], e: u32, p: u64) -> Vec<u64> {
    let mut cur = vec![0, 1]; // x
    for _ in 0..e {
        let mut acc = vec![1];
        let mut base = cur.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = poly_mulmod(gf, &acc, &base, f);
            }
            base = poly_mulmod(gf, &base, &base, f);
            exp >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Monic f of degree m is irreducible iff it has no root in GF(p) and shares
/// no factor with x^(p^i) - x for 1 <= i <= m/2.
fn is_irreducible(gf: &Gfp, f: &[u64]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    for a in 0..gf.modulus() {
        let mut acc = 0;
        for &c in f.iter().rev() {
            acc = gf.add(gf.mul(acc, a), c);
        }
        if acc == 0 {
            return false;
        }
    }
    for i in 1..=(m as u32 / 2) {
        let mut xp = x_pow_p_iter(gf, f, i, gf.modulus());
        if xp.len() < 2 {
            xp.resize(2, 0);
        }
        xp[1] = gf.sub(xp[1], 1); // xp - x
        let g = poly_gcd(gf, f, &xp);
        if poly_trim(g).len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    #[test]
    fn prime_check_by_trial_division() {
        assert!(PrimeModulus::new(2).is_ok());
        assert!(PrimeModulus::new(97).is_ok());
        assert_eq!(PrimeModulus::new(1), Err(FieldError::NotPrime(1)));
        assert_eq!(PrimeModulus::new(91), Err(FieldError::NotPrime(91)));
    }

    // Independent oracle: repeated modular multiplication.
    fn order_oracle(p: u64, l: u64) -> u32 {
        let mut acc = p % l;
        let mut m = 1;
        while acc != 1 % l {
            acc = acc * (p % l) % l;
            m += 1;
        }
        m
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(p(2), 5).unwrap(), 4);
        assert_eq!(order_oracle(2, 5), 4);
        assert_eq!(mult_order(p(2), 1).unwrap(), 1);
        assert_eq!(mult_order(p(2), 9).unwrap(), order_oracle(2, 9));
        assert_eq!(mult_order(p(2), 9).unwrap(), 6);
        assert!(mult_order(p(3), 9).is_err());
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_totient(9), 6);
        assert_eq!(euler_totient(1), 1);
        assert_eq!(euler_totient(15), 8);
    }

    #[test]
    fn scalar_l_examples() {
        assert_eq!(scalar_l_in_gfp(p(2), 5).unwrap(), (1, 1));
        assert_eq!(scalar_l_in_gfp(p(3), 5).unwrap(), (2, 2));
        assert_eq!(scalar_l_in_gfp(p(5), 7).unwrap(), (2, 3));
        assert!(scalar_l_in_gfp(p(5), 10).is_err());
    }

    // Exhaustive irreducibility scan: reducibility decided by trying every
    // monic divisor of smaller degree.
    fn irreducible_scan(pv: u64, m: usize) -> Vec<u64> {
        let gf = Gfp::new(p(pv));
        let total = pv.pow(m as u32);
        'outer: for idx in 0..total {
            let mut f = digits_base_p(idx, pv, m);
            f.push(1);
            if f[0] == 0 {
                continue;
            }
            for d in 1..m {
                for di in 0..pv.pow(d as u32) {
                    let mut g = digits_base_p(di, pv, d);
                    g.push(1);
                    if poly_is_zero(&poly_rem(&gf, &f, &g)) {
                        continue 'outer;
                    }
                }
            }
            return f;
        }
        unreachable!()
    }

    #[test]
    fn ext_field_modulus_is_smallest_irreducible() {
        let f = ExtField::new(p(2), 1);
        assert_eq!(f.modulus(), &[1, 1]); // x + 1

        let f = ExtField::new(p(2), 4);
        assert_eq!(f.modulus(), irreducible_scan(2, 4).as_slice());

        let f = ExtField::new(p(3), 2);
        assert_eq!(f.modulus(), irreducible_scan(3, 2).as_slice());
    }

    #[test]
    fn field_axioms_on_sampled_triples() {
        for (pv, m) in [(2u64, 4u32), (3, 2), (5, 2)] {
            let f = ExtField::new(p(pv), m);
            let n = f.order();
            let pick = |i: u64| f.from_index(i * 2654435761 % n);
            for i in 0..60 {
                let (a, b, c) = (pick(i), pick(i + 7), pick(i + 13));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.add(&a, &b), f.add(&b, &a));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                if !f.is_zero(&a) {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for (pv, m) in [(2u64, 4u32), (3, 2), (5, 2)] {
            let f = ExtField::new(p(pv), m);
            let n = f.order();
            for i in 0..40 {
                let a = f.from_index(i * 40503 % n);
                let b = f.from_index((i * 9176 + 3) % n);
                assert_eq!(
                    f.pow(&f.add(&a, &b), pv),
                    f.add(&f.pow(&a, pv), &f.pow(&b, pv))
                );
            }
        }
    }

    #[test]
    fn primitive_root_examples() {
        let f = ExtField::new(p(2), 1);
        assert_eq!(primitive_root_of_unity(&f, 1).unwrap(), f.one());

        let f = ExtField::new(p(2), 4);
        let beta = primitive_root_of_unity(&f, 5).unwrap();
        assert_eq!(f.elem_order(&beta), 5);

        let f = ExtField::new(p(2), 6);
        let beta = primitive_root_of_unity(&f, 9).unwrap();
        assert_eq!(f.elem_order(&beta), 9);

        assert!(primitive_root_of_unity(&f, 5).is_err());
    }

    #[test]
    fn root_powers_distinct_and_solve_unity() {
        let f = ExtField::new(p(2), 4);
        let beta = primitive_root_of_unity(&f, 5).unwrap();
        let mut seen = Vec::new();
        for j in 0..5 {
            let bj = f.pow(&beta, j);
            assert_eq!(f.pow(&bj, 5), f.one());
            assert!(!seen.contains(&bj));
            seen.push(bj);
        }
    }

    #[test]
    fn mult_order_is_minimal_field_degree() {
        for (pv, l) in [(2u64, 5u64), (2, 9), (3, 5), (5, 7), (2, 15)] {
            let m = mult_order(p(pv), l).unwrap();
            assert_eq!(pv.pow(m) % l, 1 % l);
            for d in 1..m {
                if m % d == 0 {
                    assert_ne!(pv.pow(d) % l, 1 % l, "proper subfield contains L-th roots");
                }
            }
        }
    }
}
