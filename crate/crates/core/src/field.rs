//! Coefficient fields: the rationals, prime fields F_p and extensions F_{p^k}.
//!
//! Algorithms are generic over [`Field`]; the public, non-generic entry points
//! take a [`FieldSpec`] and dispatch with [`with_field!`](crate::with_field).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u64", try_from = "u64")]
pub enum FieldSpec {
    Rationals,
    /// F_p with p prime and p < 2^31.
    Prime(u32),
}

impl FieldSpec {
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            return Ok(FieldSpec::Rationals);
        }
        if c >= 1 << 31 {
            return Err(Error::InvalidInput(format!(
                "characteristic {c} exceeds the supported range (< 2^31)"
            )));
        }
        if !is_prime(c) {
            return Err(Error::InvalidInput(format!("characteristic {c} is not prime")));
        }
        Ok(FieldSpec::Prime(c as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p as u64,
        }
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.characteristic()
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;
    fn try_from(c: u64) -> Result<Self> {
        FieldSpec::from_characteristic(c)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "ZZ/{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. Elements are plain values; the field object carries
/// whatever context (modulus, defining polynomial) the operations need.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u128>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// The element as a least residue, for prime fields only.
    fn residue(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    /// Size of the set [`Field::random`] samples from.
    fn sample_size(&self) -> u128;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn render(&self, a: &Self::Elem) -> String;
}

/// Span of the integer range used to sample rational evaluation points.
pub const RATIONAL_SAMPLE_SPAN: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u128> {
        None
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn sample_size(&self) -> u128 {
        RATIONAL_SAMPLE_SPAN as u128
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let v = rng.gen_range(0..RATIONAL_SAMPLE_SPAN);
        BigRational::from_integer(BigInt::from(v))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// F_p for a prime p < 2^31; elements are least residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        debug_assert!(is_prime(p as u64));
        PrimeField { p: p as u64 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u128> {
        Some(self.p as u128)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn sample_size(&self) -> u128 {
        self.p as u128
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// F_{p^k} = F_p[t]/(f) for a fixed monic irreducible f of degree k.
/// Elements are coefficient vectors of length k, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionField {
    base: PrimeField,
    /// Monic modulus, lowest degree first, length k+1.
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub fn new(p: u32, degree: usize) -> Self {
        assert!(degree >= 1);
        ExtensionField {
            base: PrimeField::new(p),
            modulus: irreducible_polynomial(p as u64, degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn embed(&self, residue: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = residue % self.base.p;
        v
    }

    fn size(&self) -> u128 {
        (self.base.p as u128).pow(self.degree() as u32)
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn order(&self) -> Option<u128> {
        Some(self.size())
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        self.embed(self.base.from_i64(v))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let prod = fp_poly::mul(a, b, self.base.p);
        let mut r = fp_poly::rem(&prod, &self.modulus, self.base.p);
        r.resize(self.degree(), 0);
        r
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        assert!(!self.is_zero(a), "inverse of zero");
        // a^(q-2)
        let mut e = self.size() - 2;
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    fn sample_size(&self) -> u128 {
        self.size()
    }
    fn random(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.degree()).map(|_| rng.gen_range(0..self.base.p)).collect()
    }
    fn render(&self, a: &Vec<u64>) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Defining polynomials for F_{2^k}, k = 2..=24, as bit masks (bit i is the
/// coefficient of t^i). Low-weight trinomials/pentanomials.
pub const GF2_MODULI: [(usize, u32); 23] = [
    (2, 0b111),
    (3, 0b1011),
    (4, 0b10011),
    (5, 0b100101),
    (6, 0b1000011),
    (7, 0b10000011),
    (8, 0b100011101),
    (9, (1 << 9) | (1 << 4) | 1),
    (10, (1 << 10) | (1 << 3) | 1),
    (11, (1 << 11) | (1 << 2) | 1),
    (12, (1 << 12) | (1 << 6) | (1 << 4) | (1 << 1) | 1),
    (13, (1 << 13) | (1 << 4) | (1 << 3) | (1 << 1) | 1),
    (14, (1 << 14) | (1 << 10) | (1 << 6) | (1 << 1) | 1),
    (15, (1 << 15) | (1 << 1) | 1),
    (16, (1 << 16) | (1 << 12) | (1 << 3) | (1 << 1) | 1),
    (17, (1 << 17) | (1 << 3) | 1),
    (18, (1 << 18) | (1 << 7) | 1),
    (19, (1 << 19) | (1 << 5) | (1 << 2) | (1 << 1) | 1),
    (20, (1 << 20) | (1 << 3) | 1),
    (21, (1 << 21) | (1 << 2) | 1),
    (22, (1 << 22) | (1 << 1) | 1),
    (23, (1 << 23) | (1 << 5) | 1),
    (24, (1 << 24) | (1 << 7) | (1 << 2) | (1 << 1) | 1),
];

/// A monic irreducible polynomial of degree `k` over F_p, lowest degree first.
///
/// For p = 2 the polynomial comes from [`GF2_MODULI`]; otherwise it is the
/// lexicographically smallest monic irreducible (constant term varying
/// fastest), found by Rabin's test.
pub fn irreducible_polynomial(p: u64, k: usize) -> Vec<u64> {
    if p == 2 {
        if let Some(&(_, mask)) = GF2_MODULI.iter().find(|(d, _)| *d == k) {
            return (0..=k).map(|i| ((mask >> i) & 1) as u64).collect();
        }
    }
    if k == 1 {
        return vec![0, 1];
    }
    let mut coeffs = vec![0u64; k];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if f[0] != 0 && fp_poly::is_irreducible(&f, p) {
            return f;
        }
        // next coefficient vector, odometer order
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial found");
        }
    }
}

/// Dense polynomials over F_p, lowest degree first.
pub mod fp_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    /// Remainder of `a` modulo `f` (f nonzero).
    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut f = f.to_vec();
        trim(&mut f);
        assert!(!f.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        trim(&mut r);
        let lead_inv = inv_mod(*f.last().unwrap(), p);
        let df = f.len() - 1;
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            let shift = top - df;
            for (i, &fc) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * fc % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `base^e mod f`.
    pub fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), f, p);
            }
            b = rem(&mul(&b, &b, p), f, p);
            e >>= 1;
        }
        acc
    }

    /// `t^(p^j) mod f`.
    fn frobenius_power(j: usize, f: &[u64], p: u64) -> Vec<u64> {
        let mut h = rem(&[0, 1], f, p);
        for _ in 0..j {
            h = powmod(&h, p, f, p);
        }
        h
    }

    fn sub_t(mut h: Vec<u64>, p: u64) -> Vec<u64> {
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        h
    }

    /// Rabin's irreducibility test for a monic `f` over F_p.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = f.len() - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        if !sub_t(frobenius_power(k, f, p), p).is_empty() {
            return false;
        }
        let mut m = k;
        let mut q = 2;
        let mut prime_divisors = vec![];
        while m > 1 {
            if m % q == 0 {
                prime_divisors.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        prime_divisors.into_iter().all(|q| {
            let h = sub_t(frobenius_power(k / q, f, p), p);
            let g = gcd(f, &h, p);
            g.len() == 1
        })
    }
}

/// Convert a small rational to `i64` when it is an integer in range.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn rational_abs_is_one(q: &BigRational) -> bool {
    q.abs().is_one()
}

/// Run `$body` with `$f` bound to the concrete field named by a [`FieldSpec`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Rationals => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldSpec::Prime(p) => {
                let $f = $crate::field::PrimeField::new(p);
                $body
            }
        }
    };
}
