//! Local quadratic arithmetic over `R` and `Q_p`: square classes, Legendre
//! and Hilbert symbols, and Weil indices.
//!
//! Additive characters: `psi(x) = e^{2 pi i x}` on `R` and
//! `psi(x) = e^{2 pi i {x}_p}` on `Q_p`, with `{x}_p` the `p`-adic fractional
//! part. `u * psi` is `x -> psi(u x)`. The unnormalized Weil index
//! `gamma(psi_c)` of `x -> psi(c x^2)` is the phase of a large Gauss
//! integral, and the normalized index is
//! `w(a, psi) = gamma(psi_a) / gamma(psi)`, which satisfies
//! `w(ab, psi) = Hilb(a, b) w(a, psi) w(b, psi)`.
//!
//! On `R` this gives `gamma(psi_c) = e^{i pi sgn(c) / 4}`, so
//! `w(-1, psi) = -i`. The conjugate convention would give `+i`; nothing
//! downstream depends on the choice.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("zero has no square class")]
    Zero,
    #[error("square classes belong to different places ({0} and {1})")]
    PlaceMismatch(Place, Place),
    #[error("cannot parse place {0:?}")]
    BadPlace(String),
    #[error("Gauss sum did not stabilize: {0}")]
    Precision(String),
    #[error("value {0} exceeds 64 bits")]
    Overflow(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Place, ArithError> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    /// All square classes in normal form.
    pub fn square_classes(self) -> Vec<SquareClass> {
        let reps: Vec<i64> = match self {
            Place::Real => vec![1, -1],
            Place::Prime(2) => vec![1, -1, 5, -5, 2, -2, 10, -10],
            Place::Prime(p) => {
                let u = least_nonresidue(p) as i64;
                let p = p as i64;
                vec![1, u, p, u * p]
            }
        };
        reps.into_iter().map(|rep| SquareClass { place: self, rep }).collect()
    }

    /// Square classes of units (all classes over `R`).
    pub fn unit_classes(self) -> Vec<SquareClass> {
        self.square_classes().into_iter().filter(|c| c.is_unit()).collect()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "r" | "inf" | "infinity" => Ok(Place::Real),
            t => t.parse::<u64>().map_err(|_| ArithError::BadPlace(s.to_string())).and_then(Place::prime),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let s = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("bad place {other}"))),
        };
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    r as u64
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i8, ArithError> {
    if p < 3 || !is_prime(p as u64) {
        return Err(ArithError::NotOddPrime(p));
    }
    let a = a.rem_euclid(p) as u64;
    if a == 0 {
        return Ok(0);
    }
    let p = p as u64;
    Ok(if pow_mod(a, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Least positive quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a as i64, p as i64) == Ok(-1)).expect("odd prime has a nonresidue")
}

/// `a = p^v u` with `p` not dividing `u`.
fn split_valuation(mut a: i64, p: i64) -> (u32, i64) {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    (v, a)
}

/// An element of `F^x / (F^x)^2`, stored by its normal-form representative:
/// `+-1` over `R`; `1, u, p, up` over `Q_p` for odd `p` with `u` the least
/// positive nonresidue; `+-1, +-5, +-2, +-10` over `Q_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareClass {
    pub place: Place,
    pub rep: i64,
}

impl SquareClass {
    pub fn new(place: Place, a: i64) -> Result<SquareClass, ArithError> {
        if a == 0 {
            return Err(ArithError::Zero);
        }
        let rep = match place {
            Place::Real => a.signum(),
            Place::Prime(2) => {
                let (v, u) = split_valuation(a, 2);
                let unit = match u.rem_euclid(8) {
                    1 => 1,
                    3 => -5,
                    5 => 5,
                    _ => -1,
                };
                if v % 2 == 1 {
                    2 * unit
                } else {
                    unit
                }
            }
            Place::Prime(p) => {
                let pi = p as i64;
                let (v, u) = split_valuation(a, pi);
                let unit = if legendre(u, pi)? == 1 { 1 } else { least_nonresidue(p) as i64 };
                if v % 2 == 1 {
                    pi * unit
                } else {
                    unit
                }
            }
        };
        Ok(SquareClass { place, rep })
    }

    pub fn one(place: Place) -> SquareClass {
        SquareClass { place, rep: 1 }
    }

    pub fn from_rational(place: Place, x: Rational64) -> Result<SquareClass, ArithError> {
        SquareClass::new(place, *x.numer())?.mul(&SquareClass::new(place, *x.denom())?)
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass, ArithError> {
        if self.place != other.place {
            return Err(ArithError::PlaceMismatch(self.place, other.place));
        }
        SquareClass::new(self.place, self.rep * other.rep)
    }

    pub fn is_unit(&self) -> bool {
        match self.place {
            Place::Real => true,
            Place::Prime(p) => self.rep % p as i64 != 0,
        }
    }

    /// Position in `place.square_classes()`.
    pub fn index(&self) -> usize {
        self.place.square_classes().iter().position(|c| c == self).expect("normal form")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

fn sign_bit(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

/// Quadratic Hilbert symbol of two nonzero integers at `place`.
pub fn hilbert_symbol(place: Place, a: i64, b: i64) -> Result<i8, ArithError> {
    if a == 0 || b == 0 {
        return Err(ArithError::Zero);
    }
    Ok(match place {
        Place::Real => sign_bit(a < 0 && b < 0),
        Place::Prime(2) => {
            let (al, u) = split_valuation(a, 2);
            let (be, v) = split_valuation(b, 2);
            let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
            let omega = |x: i64| {
                let r = x.rem_euclid(8);
                ((r * r - 1) / 8).rem_euclid(2)
            };
            let e = eps(u) * eps(v) + al as i64 * omega(v) + be as i64 * omega(u);
            sign_bit(e % 2 == 1)
        }
        Place::Prime(p) => {
            let pi = p as i64;
            let (al, u) = split_valuation(a, pi);
            let (be, v) = split_valuation(b, pi);
            let mut s = sign_bit((al * be) % 2 == 1 && (p - 1) / 2 % 2 == 1);
            if be % 2 == 1 {
                s *= legendre(u, pi)?;
            }
            if al % 2 == 1 {
                s *= legendre(v, pi)?;
            }
            s
        }
    })
}

pub fn hilbert(a: &SquareClass, b: &SquareClass) -> Result<i8, ArithError> {
    if a.place != b.place {
        return Err(ArithError::PlaceMismatch(a.place, b.place));
    }
    hilbert_symbol(a.place, a.rep, b.rep)
}

/// The quadratic character `a -> Hilb(u, a)`.
pub fn chi(u: &SquareClass, a: &SquareClass) -> Result<i8, ArithError> {
    hilbert(u, a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSymbol {
    pub place: Place,
    pub value: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProduct {
    pub local: Vec<LocalSymbol>,
    pub product: i8,
}

fn prime_factors(mut n: u64, out: &mut Vec<u64>) {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
}

/// Hilbert symbols of two nonzero rationals at `R`, `2` and every prime
/// dividing a numerator or denominator; all other places give `+1`.
pub fn hilbert_product(a: Rational64, b: Rational64) -> Result<HilbertProduct, ArithError> {
    if a == Rational64::from_integer(0) || b == Rational64::from_integer(0) {
        return Err(ArithError::Zero);
    }
    let mut primes = vec![2];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        prime_factors(x.unsigned_abs(), &mut primes);
    }
    primes.sort_unstable();
    primes.dedup();
    let places = std::iter::once(Place::Real).chain(primes.into_iter().map(Place::Prime));
    // (n1/d1, n2/d2) = (n1 d1, n2 d2) since d^2 is a square
    let big = |x: Rational64| -> Result<i64, ArithError> {
        x.numer().checked_mul(*x.denom()).ok_or_else(|| ArithError::Overflow(x.to_string()))
    };
    let (ai, bi) = (big(a)?, big(b)?);
    let mut local = Vec::new();
    let mut product = 1;
    for place in places {
        let value = hilbert_symbol(place, ai, bi)?;
        product *= value;
        local.push(LocalSymbol { place, value });
    }
    Ok(HilbertProduct { local, product })
}

/// `e^{2 pi i k / 8}`, stored exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity8 {
    pub k: u8,
}

impl RootOfUnity8 {
    pub const ONE: RootOfUnity8 = RootOfUnity8 { k: 0 };
    pub const I: RootOfUnity8 = RootOfUnity8 { k: 2 };
    pub const MINUS_ONE: RootOfUnity8 = RootOfUnity8 { k: 4 };
    pub const MINUS_I: RootOfUnity8 = RootOfUnity8 { k: 6 };

    pub fn new(k: i64) -> Self {
        RootOfUnity8 { k: k.rem_euclid(8) as u8 }
    }

    pub fn from_sign(s: i8) -> Self {
        if s < 0 {
            Self::MINUS_ONE
        } else {
            Self::ONE
        }
    }

    pub fn mul(self, o: Self) -> Self {
        Self::new(self.k as i64 + o.k as i64)
    }

    pub fn inv(self) -> Self {
        Self::new(-(self.k as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        Self::new(self.k as i64 * e)
    }

    pub fn is_mu4(self) -> bool {
        self.k.is_multiple_of(2)
    }

    /// Exponent `j` with `self = i^j`, when in `mu_4`.
    pub fn mu4_exponent(self) -> Option<u8> {
        self.is_mu4().then_some(self.k / 2)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * self.k as f64 / 4.0)
    }
}

impl fmt::Display for RootOfUnity8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "1"),
            2 => write!(f, "i"),
            4 => write!(f, "-1"),
            6 => write!(f, "-i"),
            k => write!(f, "zeta8^{k}"),
        }
    }
}

/// Recognizes `z / |z|` among the eighth roots of unity. `err` bounds the
/// absolute error of `z`; recognition fails unless the bound is well
/// inside half the gap between candidates.
fn recognize(z: Complex64, err: f64) -> Result<RootOfUnity8, ArithError> {
    let r = z.norm();
    let rel = err / r.max(f64::MIN_POSITIVE);
    // neighbours in mu_8 are 2 sin(pi/8) > 0.76 apart
    if !(rel < 0.1) {
        return Err(ArithError::Precision(format!("|sum| = {r}, error bound {err}")));
    }
    let phase = z / r;
    let (k, d) = (0..8)
        .map(|k| (k, (phase - RootOfUnity8::new(k).to_complex()).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("eight candidates");
    if d > 2.0 * rel + 1e-9 {
        return Err(ArithError::Precision(format!("phase off by {d}")));
    }
    Ok(RootOfUnity8::new(k))
}

/// `sum_{y mod p^k} e^{2 pi i (u y^2 mod p^k) / p^k}` with an error bound.
fn gauss_sum(p: u64, k: u32, u: i64) -> (Complex64, f64) {
    let m = p.pow(k);
    let mut s = Complex64::new(0.0, 0.0);
    for y in 0..m {
        let y2 = (y as u128 * y as u128 % m as u128) as i128;
        let t = (u as i128 * y2).rem_euclid(m as i128) as f64 / m as f64;
        s += Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t);
    }
    (s, m as f64 * 1e-13)
}

/// Unnormalized Weil index `gamma(psi_c)` of `x -> psi(c x^2)`.
pub fn weil_gamma(place: Place, c: i64) -> Result<RootOfUnity8, ArithError> {
    if c == 0 {
        return Err(ArithError::Zero);
    }
    match place {
        Place::Real => Ok(RootOfUnity8::new(c.signum())),
        Place::Prime(p) => {
            // integral over p^{-m} Z_p becomes a Gauss sum mod p^K, K = 2m - v
            let (v, u) = split_valuation(c, p as i64);
            let min_k = if p == 2 { 4 } else { 1 };
            let mut k = min_k + (min_k + v) % 2;
            let mut prev: Option<RootOfUnity8> = None;
            let budget: u64 = 1 << 16;
            loop {
                if p.checked_pow(k).is_none_or(|m| m > budget) {
                    return Err(ArithError::Precision(format!("no stable value at p = {p}")));
                }
                let (s, err) = gauss_sum(p, k, u);
                let g = recognize(s, err)?;
                if prev == Some(g) {
                    return Ok(g);
                }
                prev = Some(g);
                k += 2;
            }
        }
    }
}

/// Normalized Weil index `w(u, a * psi) = gamma(psi_{ua}) / gamma(psi_a)`,
/// with `a = psi_scale`. Always in `mu_4`.
pub fn weil_index(u: &SquareClass, psi_scale: &SquareClass) -> Result<RootOfUnity8, ArithError> {
    let prod = u.mul(psi_scale)?;
    let w = weil_gamma(u.place, prod.rep)?.mul(weil_gamma(u.place, psi_scale.rep)?.inv());
    if !w.is_mu4() {
        return Err(ArithError::Precision(format!("Weil index {w} is not in mu_4")));
    }
    Ok(w)
}
