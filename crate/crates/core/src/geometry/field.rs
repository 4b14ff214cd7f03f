use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::GeometryError;

/// Largest prime order for which arithmetic tables are built.
pub const MAX_PRIME_ORDER: u32 = 251;

/// Built-in reduction polynomials for the supported extension fields,
/// coefficients listed from the constant term upward.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (4, 2, &[1, 1, 1]),    // x^2 + x + 1 over F_2
    (8, 2, &[1, 1, 0, 1]), // x^3 + x + 1 over F_2
    (9, 3, &[1, 0, 1]),    // x^2 + 1 over F_3
];

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The finite field `F_q`, `q = p^d`.
///
/// Elements are the integers `0..q`; for `d > 1` an element encodes the
/// polynomial whose base-`p` digits are its coefficients. Arithmetic goes
/// through precomputed tables shared between clones.
#[derive(Clone)]
pub struct FieldSpec {
    order: u32,
    characteristic: u32,
    degree: u32,
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

impl FieldSpec {
    /// Field of order `q`: any prime up to [`MAX_PRIME_ORDER`], or 4, 8, 9.
    pub fn new(q: u32) -> Result<Self, GeometryError> {
        if is_prime(q) {
            if q > MAX_PRIME_ORDER {
                return Err(GeometryError::UnsupportedField(q));
            }
            return Self::with_modulus(q, &[0, 1]);
        }
        match BUILTIN_MODULI.iter().find(|(order, _, _)| *order == q) {
            Some((_, p, poly)) => Self::with_modulus(*p, poly),
            None => Err(GeometryError::UnsupportedField(q)),
        }
    }

    /// Extension of `F_p` by a monic irreducible polynomial (low-order
    /// coefficient first). Irreducibility is checked by trial division.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self, GeometryError> {
        if !is_prime(p) || p > MAX_PRIME_ORDER {
            return Err(GeometryError::UnsupportedField(p));
        }
        let degree = modulus.len().saturating_sub(1) as u32;
        if degree == 0 || modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(GeometryError::BadModulus(format!(
                "{modulus:?} is not a monic polynomial over F_{p}"
            )));
        }
        let order = p
            .checked_pow(degree)
            .filter(|&q| q == p || q <= 9)
            .ok_or(GeometryError::UnsupportedField(p.saturating_pow(degree)))?;
        if degree > 1 && !is_irreducible(p, modulus) {
            return Err(GeometryError::BadModulus(format!(
                "{modulus:?} is reducible over F_{p}"
            )));
        }
        let modulus = if degree == 1 { Vec::new() } else { modulus.to_vec() };
        let tables = Arc::new(build_tables(order, p, degree, &modulus));
        Ok(Self {
            order,
            characteristic: p,
            degree,
            modulus,
            tables,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Reduction polynomial, empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    fn idx(&self, a: u32, b: u32) -> usize {
        a as usize * self.order as usize + b as usize
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.tables.add[self.idx(a, b)]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.tables.mul[self.idx(a, b)]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.tables.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.tables.inv[a as usize])
    }

    /// All field elements in integer order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.order)
        } else {
            write!(f, "F_{}[{:?}]", self.order, self.modulus)
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

/// `Some((p, d))` when `n = p^d` with `p` prime.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut d = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

fn digits(mut a: u32, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let c = a % p;
            a /= p;
            c
        })
        .collect()
}

fn from_digits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `num` modulo the monic `den` over F_p (coefficients low first).
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let degree = modulus.len() - 1;
    // every monic divisor candidate of degree 1..=degree/2
    for d in 1..=degree / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(modulus, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn build_tables(order: u32, p: u32, degree: u32, modulus: &[u32]) -> Tables {
    let q = order as usize;
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    let d = degree as usize;
    for a in 0..order {
        let da = digits(a, p, d);
        for b in 0..order {
            let db = digits(b, p, d);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            let product = if degree == 1 {
                (a * b) % p
            } else {
                let mut full = vec![0u32; 2 * d - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        full[i + j] = (full[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&full, modulus, p);
                r.resize(d, 0);
                from_digits(&r, p)
            };
            add[a as usize * q + b as usize] = from_digits(&sum, p);
            mul[a as usize * q + b as usize] = product;
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u32)
        .collect();
    let inv = (0..q)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u32
            }
        })
        .collect();
    Tables { add, mul, neg, inv }
}
