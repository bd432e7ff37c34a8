//! Small finite fields `F_q`, `q = p^r` with `r <= 4`.
//!
//! Elements are encoded as integers in `0..q`: the base-`p` digits of the
//! encoding are the coefficients of the polynomial representative, constant
//! term first. The prime subfield is therefore `0..p`. All arithmetic goes
//! through precomputed tables, which is what the brute-force enumerations
//! want: the fields involved never exceed a few hundred elements.

use std::fmt;

use crate::error::{Error, Result};

/// Encoded field element.
pub type Elem = u16;

/// Largest field order we are willing to tabulate.
pub const MAX_ORDER: u32 = 1024;

/// Version tag of the modulus table below. Bump whenever an entry changes,
/// since element encodings (and therefore golden outputs) depend on it.
pub const MODULUS_TABLE_VERSION: u32 = 1;

/// Monic irreducible (Conway) polynomials, coefficients constant term first,
/// leading 1 omitted.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (11, 2, &[2, 7]),
    (13, 2, &[2, 12]),
];

/// Identifies a field up to the fixed choice of modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct FieldId {
    pub p: u32,
    pub degree: u32,
}

impl FieldId {
    pub fn order(&self) -> u32 {
        self.p.pow(self.degree)
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.degree)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
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

#[derive(Clone)]
pub struct FiniteField {
    id: FieldId,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    generator: Elem,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("id", &self.id)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if degree == 0 || degree > 4 {
            return Err(Error::InvalidField(format!(
                "extension degree {degree} unsupported (1..=4)"
            )));
        }
        let q = p
            .checked_pow(degree)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("field of order {p}^{degree} too large")))?;
        let modulus = if degree == 1 {
            vec![0]
        } else {
            MODULI
                .iter()
                .find(|(mp, md, _)| *mp == p && *md == degree)
                .map(|(_, _, m)| m.to_vec())
                .ok_or_else(|| {
                    Error::InvalidField(format!("no modulus tabulated for F_{p}^{degree}"))
                })?
        };
        let q = q as usize;
        let d = degree as usize;
        let digits = |x: usize| -> Vec<u32> {
            let mut v = vec![0u32; d];
            let mut x = x;
            for slot in v.iter_mut() {
                *slot = (x % p as usize) as u32;
                x /= p as usize;
            }
            v
        };
        let encode = |v: &[u32]| -> Elem {
            v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize) as Elem
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s);
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * d - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (d..prod.len()).rev() {
                    let c = prod[k];
                    if c != 0 {
                        prod[k] = 0;
                        for (i, m) in modulus.iter().enumerate() {
                            prod[k - d + i] = (prod[k - d + i] + (p - c) * m) % p;
                        }
                    }
                }
                mul[a * q + b] = encode(&prod[..d]);
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as Elem;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as Elem;
                }
            }
        }
        let mut field = FiniteField {
            id: FieldId { p, degree },
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            generator: 0,
        };
        if d > 1 && (0..q).any(|a| (1..q).all(|b| field.mul[a * q + b] != 1) && a != 0) {
            return Err(Error::InvalidField(format!(
                "tabulated modulus for F_{p}^{degree} is reducible"
            )));
        }
        field.generator = (1..q as Elem)
            .find(|&g| field.multiplicative_order(g) == q - 1)
            .expect("multiplicative group of a finite field is cyclic");
        Ok(field)
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn p(&self) -> u32 {
        self.id.p
    }

    pub fn degree(&self) -> u32 {
        self.id.degree
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Coefficients of the modulus, constant term first, without the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let mut result = 1;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `a^e` for a possibly negative exponent; `None` if `a = 0` and `e < 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Option<Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(ai, (-e) as u64))
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    #[inline]
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.id.p as i64) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.q as Elem
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// An additive basis of `F_q` over `F_p` (the powers of the adjoined root).
    pub fn additive_basis(&self) -> Vec<Elem> {
        (0..self.id.degree).map(|i| self.id.p.pow(i) as Elem).collect()
    }

    pub fn multiplicative_order(&self, a: Elem) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// All `x` with `x^k = a`.
    pub fn roots_of_power(&self, a: Elem, k: u64) -> Vec<Elem> {
        self.elements().filter(|&x| self.pow(x, k) == a).collect()
    }

    pub fn format(&self, a: Elem) -> String {
        if self.id.degree == 1 {
            return a.to_string();
        }
        let p = self.id.p as usize;
        let mut terms = Vec::new();
        let mut x = a as usize;
        for i in 0..self.id.degree {
            let c = x % p;
            x /= p;
            if c != 0 {
                terms.push(match i {
                    0 => c.to_string(),
                    1 if c == 1 => "z".to_string(),
                    1 => format!("{c}z"),
                    _ if c == 1 => format!("z^{i}"),
                    _ => format!("{c}z^{i}"),
                });
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
