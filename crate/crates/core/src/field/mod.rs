//! Arithmetic in F_{p^m} with a designated base subfield F_q, q = p^e.
//!
//! A field is a single extension F_p[x]/(f) of degree m; the base subfield is
//! never materialised and is recovered as the fixed points of a -> a^q.
//! Elements are stored by their canonical index `c0 + c1 p + ... + c_{m-1} p^{m-1}`
//! and multiplied, added and exponentiated through discrete-log, antilog and
//! Zech tables built once at construction.

mod modulus;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::numtheory;

/// Upper bound on p^m; every verifier downstream scans the whole field.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// Structural identity of a field: a hash of p and the modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(u32);

/// An element of some [`Field`]. Plain value; equality is equality of coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: FieldId,
    index: u32,
}

impl FieldElement {
    /// Canonical index `sum c_i p^i`; 0 is zero and 1 is one.
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }

    pub fn is_one(self) -> bool {
        self.index == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(i64),
    Neg,
    Inv,
}

struct Inner {
    id: FieldId,
    p: u32,
    degree: u32,
    base_power: u32,
    modulus: Vec<u32>,
    size: u32,
    base_order: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    norm_subgroup: OnceLock<Vec<FieldElement>>,
}

/// Shared handle to an immutable finite field.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

/// `p^m/e:c0,...,cm`, the modulus coefficients low to high.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "{}^{}/{}:{}",
            self.0.p,
            self.0.degree,
            self.0.base_power,
            coeffs.join(",")
        )
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "field spec `{s}` is not of the form p^m/e[:c0,...,cm]"
            ))
        };
        let s = s.trim();
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (pm, e) = head.split_once('/').ok_or_else(bad)?;
        let (p, m) = pm.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let e: u32 = e.trim().parse().map_err(|_| bad())?;
        let modulus = modulus
            .map(|list| {
                list.split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        if p > u32::MAX as u64 {
            return Err(Error::TooLarge(format!("characteristic {p}")));
        }
        Field::new(p as u32, m, e, modulus.as_deref())
    }
}

fn fnv1a(words: impl IntoIterator<Item = u32>) -> u32 {
    let mut h: u32 = 0x811c_9dc5;
    for w in words {
        for byte in w.to_le_bytes() {
            h ^= byte as u32;
            h = h.wrapping_mul(0x0100_0193);
        }
    }
    h
}

impl Field {
    /// Builds F_{p^m} with base subfield F_{p^e}.
    ///
    /// Without an explicit modulus the lexicographically smallest monic
    /// irreducible (coefficients compared from the constant term upward) is used.
    pub fn new(p: u32, degree: u32, base_power: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !numtheory::is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if degree == 0 || base_power == 0 || !degree.is_multiple_of(base_power) {
            return Err(Error::BadTower { degree, base_power });
        }
        let size = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::TooLarge(format!(
                "{p}^{degree} exceeds 2^20 elements"
            )));
        }
        let modulus = match modulus {
            Some(f) => {
                if f.len() != degree as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        degree + 1,
                        f.len()
                    )));
                }
                if f[degree as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(format!(
                        "coefficients must lie in [0, {p})"
                    )));
                }
                if !modulus::is_irreducible(f, p) {
                    return Err(Error::ReducibleModulus);
                }
                f.to_vec()
            }
            None => modulus::default_modulus(p, degree),
        };
        Ok(Field(Arc::new(Inner::build(
            p,
            degree,
            base_power,
            modulus,
            size as u32,
        ))))
    }

    pub fn id(&self) -> FieldId {
        self.0.id
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree m over F_p.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// The e in q = p^e.
    pub fn base_power(&self) -> u32 {
        self.0.base_power
    }

    /// m / e: 2 for F_{q^2}, 3 for F_{q^3}.
    pub fn ext_ratio(&self) -> u32 {
        self.0.degree / self.0.base_power
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Number of elements p^m.
    pub fn size(&self) -> u64 {
        self.0.size as u64
    }

    /// Order q of the designated base subfield.
    pub fn q(&self) -> u64 {
        self.0.base_order as u64
    }

    /// (p^m - 1)/(q - 1), the order of the kernel of the norm to F_q.
    pub fn norm_order(&self) -> u64 {
        (self.size() - 1) / (self.q() - 1)
    }

    /// Smallest primitive element in canonical order.
    pub fn generator(&self) -> FieldElement {
        self.wrap(self.0.generator)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element with canonical index `index`.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.0.size {
            return Err(Error::Parse(format!(
                "index {index} out of range for {self}"
            )));
        }
        Ok(self.wrap(index))
    }

    /// Element from base-p coordinates, low to high; missing high coordinates are zero.
    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() > self.0.degree as usize {
            return Err(Error::Parse(format!(
                "{} coordinates given for a degree-{} field",
                coords.len(),
                self.0.degree
            )));
        }
        let mut index = 0u32;
        for &c in coords.iter().rev() {
            if c >= self.0.p {
                return Err(Error::Parse(format!(
                    "coordinate {c} not below {}",
                    self.0.p
                )));
            }
            index = index * self.0.p + c;
        }
        Ok(self.wrap(index))
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let mut rest = a.index;
        (0..self.0.degree)
            .map(|_| {
                let c = rest % self.0.p;
                rest /= self.0.p;
                c
            })
            .collect()
    }

    /// Comma-joined base-p coordinates, low to high (`"0,1"` is the class of x).
    pub fn format_element(&self, a: FieldElement) -> String {
        self.coords(a)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let coords = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad element literal `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coords(&coords)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.size).map(move |i| self.wrap(i))
    }

    /// Elements of the base subfield F_q in canonical order.
    pub fn base_elements(&self) -> Vec<FieldElement> {
        self.elements()
            .filter(|&a| self.in_base_subfield(a))
            .collect()
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.field == self.0.id
    }

    pub fn check(&self, a: FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    #[inline]
    fn wrap(&self, index: u32) -> FieldElement {
        FieldElement {
            field: self.0.id,
            index,
        }
    }

    #[inline]
    fn group_order(&self) -> u32 {
        self.0.size - 1
    }

    /// Discrete log base [`Field::generator`]; `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        debug_assert!(self.contains(a));
        let l = self.0.log[a.index as usize];
        (l != NO_LOG).then_some(l)
    }

    /// generator^k.
    #[inline]
    pub fn exp(&self, k: u64) -> FieldElement {
        self.wrap(self.0.exp[(k % self.group_order() as u64) as usize])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        match (self.log(a), self.log(b)) {
            (None, _) => b,
            (_, None) => a,
            (Some(la), Some(lb)) => self.wrap_log_sum(la, lb),
        }
    }

    /// g^la + g^lb, with zero returned as index 0.
    #[inline]
    fn wrap_log_sum(&self, la: u32, lb: u32) -> FieldElement {
        match self.log_sum(la, lb) {
            Some(l) => self.wrap(self.0.exp[l as usize]),
            None => self.zero(),
        }
    }

    /// log(g^la + g^lb), `None` when the sum is zero.
    #[inline]
    pub(crate) fn log_sum(&self, la: u32, lb: u32) -> Option<u32> {
        let n = self.group_order();
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.0.zech[d as usize];
        if z == NO_LOG {
            return None;
        }
        let s = la as u64 + z as u64;
        Some((s % n as u64) as u32)
    }

    /// Order of the multiplicative group, p^m - 1.
    pub(crate) fn log_modulus(&self) -> u32 {
        self.group_order()
    }

    #[inline]
    pub(crate) fn exp_log(&self, l: u32) -> FieldElement {
        self.wrap(self.0.exp[l as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match self.log(a) {
            None => a,
            Some(_) if self.0.p == 2 => a,
            Some(la) => {
                let n = self.group_order();
                self.wrap(self.0.exp[((la + n / 2) % n) as usize])
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        match (self.log(a), self.log(b)) {
            (Some(la), Some(lb)) => {
                let s = la as u64 + lb as u64;
                self.wrap(self.0.exp[(s % self.group_order() as u64) as usize])
            }
            _ => self.zero(),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let la = self.log(a).ok_or(Error::DivisionByZero)?;
        let n = self.group_order();
        Ok(self.wrap(self.0.exp[((n - la) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e for a nonnegative exponent; 0^0 = 1.
    #[inline]
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        match self.log(a) {
            None => self.zero(),
            Some(la) => {
                let n = self.group_order() as u64;
                self.wrap(self.0.exp[((la as u64 * (e % n)) % n) as usize])
            }
        }
    }

    /// a^e for any integer exponent; negative exponents go through the inverse.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        self.check(a)?;
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Checked arithmetic entry point: verifies ownership of every operand.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
            ArithOp::Pow(e) => self.pow_signed(a, e),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
        }
    }

    /// a^q for the designated base field order q.
    #[inline]
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.q())
    }

    pub fn in_base_subfield(&self, a: FieldElement) -> bool {
        self.frobenius(a) == a
    }

    /// Whether a lies in the kernel of the norm to F_q (μ_{q+1} for F_{q^2}).
    pub fn in_norm_subgroup(&self, a: FieldElement) -> bool {
        match self.log(a) {
            None => false,
            Some(l) => (l as u64).is_multiple_of(self.q() - 1),
        }
    }

    /// x with x^d = 1, listed as g^{j (p^m - 1)/d} for j = 0..d.
    pub fn mu_subgroup(&self, d: u64) -> Result<Vec<FieldElement>> {
        let order = self.group_order() as u64;
        if d == 0 || !order.is_multiple_of(d) {
            return Err(Error::NotADivisor { d, order });
        }
        let step = order / d;
        Ok((0..d)
            .map(|j| self.wrap(self.0.exp[(j * step) as usize]))
            .collect())
    }

    /// μ_D for D = [`Field::norm_order`], cached.
    pub fn norm_subgroup(&self) -> &[FieldElement] {
        self.0.norm_subgroup.get_or_init(|| {
            self.mu_subgroup(self.norm_order())
                .expect("norm order divides the group order")
        })
    }

    /// Schoolbook product of coordinate vectors reduced by the modulus, as an
    /// independent check on the tables.
    #[cfg(test)]
    pub(crate) fn reference_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let prod = modulus::mul_mod(&self.coords(a), &self.coords(b), &self.0.modulus, self.0.p);
        self.from_coords(&prod)
            .expect("reduced product has at most m coordinates")
    }
}

impl Inner {
    fn build(p: u32, degree: u32, base_power: u32, modulus: Vec<u32>, size: u32) -> Inner {
        let id = FieldId(fnv1a(std::iter::once(p).chain(modulus.iter().copied())));
        let to_index = |coords: &[u32]| coords.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let to_coords = |mut index: u32| -> Vec<u32> {
            (0..degree)
                .map(|_| {
                    let c = index % p;
                    index /= p;
                    c
                })
                .collect()
        };
        let mul_idx = |a: u32, b: u32| -> u32 {
            to_index(&modulus::mul_mod(&to_coords(a), &to_coords(b), &modulus, p))
        };
        let pow_idx = |a: u32, mut e: u64| -> u32 {
            let mut result = 1u32;
            let mut base = a;
            while e > 0 {
                if e & 1 == 1 {
                    result = mul_idx(result, base);
                }
                base = mul_idx(base, base);
                e >>= 1;
            }
            result
        };

        let order = size as u64 - 1;
        let factors = numtheory::prime_factors(order);
        let generator = (1..size)
            .find(|&g| factors.iter().all(|&r| pow_idx(g, order / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = 1u32;
        for k in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = k;
            cur = mul_idx(cur, generator);
        }
        debug_assert_eq!(cur, 1);

        // zech[k] = log(1 + g^k); only the constant coordinate changes.
        let zech = exp
            .iter()
            .map(|&v| {
                let c0 = v % p;
                let w = if c0 + 1 == p { v - c0 } else { v + 1 };
                log[w as usize]
            })
            .collect();

        Inner {
            id,
            p,
            degree,
            base_power,
            modulus,
            size,
            base_order: p.pow(base_power),
            generator,
            exp,
            log,
            zech,
            norm_subgroup: OnceLock::new(),
        }
    }
}
