//! Exact arithmetic in small finite fields `GF(p^m)`.
//!
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` are the coordinates in the power basis of the reduction
//! polynomial. Multiplication goes through discrete log/antilog tables, so
//! the field size is capped at [`MAX_FIELD_SIZE`].

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported `p^m`.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Wire description of the coefficient field `k = GF(p^m)` together with the
/// residue field size `q = p^f` of the underlying p-adic group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    pub m: u32,
    /// Monic reduction polynomial, coefficients low-to-high (length `m + 1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            f: 1,
            m: 1,
            poly: None,
        }
    }

    pub fn new(p: u32, f: u32, m: u32) -> Self {
        FieldSpec {
            p,
            f,
            m,
            poly: None,
        }
    }

    /// `q = p^f`.
    pub fn q(&self) -> Result<u32> {
        checked_pow(self.p, self.f).ok_or(Error::Overflow("q = p^f"))
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidField(format!("{} is not prime", self.p)));
        }
        if self.f == 0 || self.m == 0 {
            return Err(Error::InvalidField("f and m must be positive".into()));
        }
        if self.m % self.f != 0 {
            return Err(Error::InvalidField(format!(
                "f = {} does not divide m = {}",
                self.f, self.m
            )));
        }
        Ok(())
    }
}

/// A field element; meaningless without the [`Field`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElt(u32);

impl FieldElt {
    pub const ZERO: FieldElt = FieldElt(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Integer encoding `sum c_i p^i`.
    pub fn raw(self) -> u32 {
        self.0
    }
}

struct Tables {
    p: u32,
    m: u32,
    size: u32,
    poly: Vec<u32>,
    default_poly: bool,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The coefficient field. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.m, self.0.poly)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.poly == other.0.poly
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `GF(p^m)` from a spec. The `f` entry is only validated here; it
    /// matters to the group, not to the field.
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        spec.validate()?;
        Field::with_degree(spec.p, spec.m, spec.poly.clone())
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(&FieldSpec::prime(p))
    }

    fn with_degree(p: u32, m: u32, poly: Option<Vec<u32>>) -> Result<Field> {
        let size = (p as u64)
            .checked_pow(m)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{m} exceeds the supported size")))?
            as u32;
        let (poly, default_poly) = match poly {
            Some(poly) => {
                if poly.len() != m as usize + 1 || poly[m as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "reduction polynomial must be monic of degree {m}, got {poly:?}"
                    )));
                }
                if poly.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!(
                        "coefficients of {poly:?} must be reduced mod {p}"
                    )));
                }
                if !poly::is_irreducible(&poly, p) {
                    return Err(Error::ReduciblePolynomial(poly, p));
                }
                (poly, false)
            }
            None => (poly::smallest_irreducible(p, m), true),
        };

        let order = size - 1;
        let prime_factors = prime_divisors(order);
        let slow_mul = |a: u32, b: u32| {
            poly::encode(
                &poly::mul_mod(&poly::decode(a, p, m), &poly::decode(b, p, m), &poly, p),
                p,
            )
        };
        let slow_pow = |a: u32, mut e: u32| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..size)
            .find(|&a| prime_factors.iter().all(|&r| slow_pow(a, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; size as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, generator);
        }

        Ok(Field(Arc::new(Tables {
            p,
            m,
            size,
            poly,
            default_poly,
            generator,
            exp,
            log,
        })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Reduction polynomial, low-to-high, and whether it was chosen by default.
    pub fn reduction_poly(&self) -> (&[u32], bool) {
        (&self.0.poly, self.0.default_poly)
    }

    pub fn generator(&self) -> FieldElt {
        FieldElt(self.0.generator)
    }

    pub fn zero(&self) -> FieldElt {
        FieldElt(0)
    }

    pub fn one(&self) -> FieldElt {
        FieldElt(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElt {
        FieldElt(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElt> {
        if coeffs.len() != self.0.m as usize {
            return Err(Error::Mismatch(format!(
                "field element needs {} coefficients, got {}",
                self.0.m,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::Mismatch(format!(
                "coefficient {c} is not reduced mod {}",
                self.0.p
            )));
        }
        Ok(FieldElt(poly::encode(coeffs, self.0.p)))
    }

    pub fn coeffs(&self, a: FieldElt) -> Vec<u32> {
        poly::decode(a.0, self.0.p, self.0.m)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElt> {
        (0..self.0.size).map(FieldElt)
    }

    pub fn add(&self, a: FieldElt, b: FieldElt) -> FieldElt {
        let p = self.0.p;
        if self.0.m == 1 {
            return FieldElt((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElt(out)
    }

    pub fn neg(&self, a: FieldElt) -> FieldElt {
        let p = self.0.p;
        if self.0.m == 1 {
            return FieldElt((p - a.0) % p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElt(out)
    }

    pub fn sub(&self, a: FieldElt, b: FieldElt) -> FieldElt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElt, b: FieldElt) -> FieldElt {
        if a.0 == 0 || b.0 == 0 {
            return FieldElt(0);
        }
        let n = self.0.size - 1;
        let e = (self.0.log[a.0 as usize] + self.0.log[b.0 as usize]) % n;
        FieldElt(self.0.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElt) -> Result<FieldElt> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.0.size - 1;
        let e = (n - self.0.log[a.0 as usize]) % n;
        Ok(FieldElt(self.0.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElt, b: FieldElt) -> Result<FieldElt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`; negative exponents need `a != 0`.
    pub fn pow(&self, a: FieldElt, e: i64) -> Result<FieldElt> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(self.one()),
                std::cmp::Ordering::Greater => Ok(self.zero()),
            };
        }
        let n = (self.0.size - 1) as i64;
        let l = self.0.log[a.0 as usize] as i64;
        let idx = (l * e.rem_euclid(n)).rem_euclid(n);
        Ok(FieldElt(self.0.exp[idx as usize]))
    }

    /// Whether `F_q` embeds, i.e. `q - 1` divides `p^m - 1` and `q` is a power of `p`.
    pub fn contains_fq(&self, q: u32) -> bool {
        let mut r = q;
        while r > 1 && r % self.0.p == 0 {
            r /= self.0.p;
        }
        r == 1 && q > 1 && (self.0.size - 1) % (q - 1) == 0
    }

    /// The fixed element of exact order `q - 1`: `g^{(p^m-1)/(q-1)}` for the
    /// generator `g` of `k^x`.
    pub fn zeta(&self, q: u32) -> Result<FieldElt> {
        if !self.contains_fq(q) {
            return Err(Error::UnsupportedCoefficientField {
                q,
                field: self.0.size,
            });
        }
        let step = (self.0.size - 1) / (q - 1);
        Ok(FieldElt(self.0.exp[step as usize % self.0.exp.len()]))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElt) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.0.size - 1;
        let l = self.0.log[a.0 as usize];
        Ok(n / gcd(n, l))
    }

    pub fn sum<I: IntoIterator<Item = FieldElt>>(&self, it: I) -> FieldElt {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
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

fn checked_pow(base: u32, exp: u32) -> Option<u32> {
    base.checked_pow(exp)
}

/// Dense polynomials over `GF(p)`, coefficients low-to-high.
mod poly {
    pub(super) fn decode(mut x: u32, p: u32, m: u32) -> Vec<u32> {
        (0..m)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    pub(super) fn encode(coeffs: &[u32], p: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// Remainder of `a` modulo the monic polynomial `modulus`.
    pub(super) fn rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let d = modulus.len() - 1;
        let mut r = a.to_vec();
        while r.len() > d {
            let lead = r.pop().unwrap();
            if lead != 0 {
                let shift = r.len() - d;
                for (i, &c) in modulus[..d].iter().enumerate() {
                    r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
                }
            }
        }
        r.resize(d, 0);
        r
    }

    pub(super) fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, modulus, p)
    }

    /// Exhaustive search for a monic factor of degree `1..=deg/2`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for n in 0..count {
                let mut g = decode(n as u32, p, d as u32);
                g.push(1);
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// The smallest monic irreducible polynomial of degree `m`, comparing the
    /// low-to-high coefficient lists lexicographically.
    pub(super) fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
        let count = (p as u64).pow(m);
        for n in 0..count {
            // c_0 is the most significant digit of n
            let mut coeffs = decode(n as u32, p, m);
            coeffs.reverse();
            coeffs.push(1);
            if is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_two_times_two() {
        let k = Field::prime(3).unwrap();
        assert_eq!(k.mul(k.from_int(2), k.from_int(2)), k.one());
    }

    #[test]
    fn x_squared_plus_one() {
        // over GF(3) there is no root, so the polynomial is irreducible
        let k3 = Field::new(&FieldSpec {
            p: 3,
            f: 1,
            m: 2,
            poly: Some(vec![1, 0, 1]),
        });
        assert!(k3.is_ok());
        // over GF(5) it has the roots 2 and 3
        let k5 = Field::new(&FieldSpec {
            p: 5,
            f: 1,
            m: 2,
            poly: Some(vec![1, 0, 1]),
        });
        assert_eq!(
            k5.unwrap_err(),
            Error::ReduciblePolynomial(vec![1, 0, 1], 5)
        );
    }

    #[test]
    fn default_polys() {
        let k9 = Field::new(&FieldSpec::new(3, 2, 2)).unwrap();
        assert_eq!(k9.reduction_poly(), (&[1, 0, 1][..], true));
        let k4 = Field::new(&FieldSpec::new(2, 2, 2)).unwrap();
        assert_eq!(k4.reduction_poly().0, &[1, 1, 1]);
        let k8 = Field::new(&FieldSpec::new(2, 1, 3)).unwrap();
        assert_eq!(k8.reduction_poly().0, &[1, 0, 1, 1]);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(
            Field::new(&FieldSpec::new(4, 1, 1)),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            Field::new(&FieldSpec::new(3, 2, 3)),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            Field::new(&FieldSpec {
                p: 3,
                f: 1,
                m: 2,
                poly: Some(vec![1, 0, 2])
            }),
            Err(Error::InvalidField(_))
        ));
    }

    #[test]
    fn division_by_zero() {
        let k = Field::prime(5).unwrap();
        assert_eq!(k.div(k.one(), k.zero()), Err(Error::DivisionByZero));
        assert_eq!(k.pow(k.zero(), -1), Err(Error::DivisionByZero));
    }

    #[test]
    fn zeta_examples() {
        let k3 = Field::prime(3).unwrap();
        assert_eq!(k3.zeta(3).unwrap(), k3.from_int(2));
        let k5 = Field::prime(5).unwrap();
        let z = k5.zeta(5).unwrap();
        assert_eq!(k5.pow(z, 4).unwrap(), k5.one());
        assert_ne!(k5.pow(z, 2).unwrap(), k5.one());
        let k9 = Field::new(&FieldSpec::new(3, 1, 2)).unwrap();
        assert_eq!(k9.zeta(3).unwrap(), k9.from_int(-1));
        assert!(matches!(
            k3.zeta(9),
            Err(Error::UnsupportedCoefficientField { .. })
        ));
    }

    #[test]
    fn characteristic_kills() {
        for spec in [
            FieldSpec::new(2, 1, 3),
            FieldSpec::new(3, 1, 2),
            FieldSpec::new(5, 1, 1),
        ] {
            let k = Field::new(&spec).unwrap();
            for x in k.elements() {
                let px = (0..spec.p).fold(k.zero(), |acc, _| k.add(acc, x));
                assert!(px.is_zero());
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for spec in [
            FieldSpec::new(2, 1, 1),
            FieldSpec::new(3, 1, 1),
            FieldSpec::new(5, 1, 1),
            FieldSpec::new(2, 1, 2),
            FieldSpec::new(3, 1, 2),
            FieldSpec::new(2, 1, 3),
            FieldSpec::new(3, 1, 3),
        ] {
            let k = Field::new(&spec).unwrap();
            let els: Vec<_> = k.elements().collect();
            for &a in &els {
                assert_eq!(k.add(a, k.zero()), a);
                assert_eq!(k.add(a, k.neg(a)), k.zero());
                if !a.is_zero() {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
                }
                for &b in &els {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for &c in &els {
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn zeta_has_exact_order() {
        for (p, f, m) in [
            (3, 1, 1),
            (5, 1, 1),
            (3, 2, 2),
            (3, 1, 2),
            (2, 2, 4),
            (7, 1, 2),
        ] {
            let k = Field::new(&FieldSpec::new(p, f, m)).unwrap();
            let q = p.pow(f);
            let z = k.zeta(q).unwrap();
            assert_eq!(k.order(z).unwrap(), q - 1, "p={p} f={f} m={m}");
        }
    }
}
