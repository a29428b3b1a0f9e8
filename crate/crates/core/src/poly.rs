//! Dense univariate polynomials and rational maps over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    /// index = exponent, no trailing zeros
    coeffs: Vec<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Compose,
    Rem,
}

impl Polynomial {
    pub fn zero(field: &Field) -> Self {
        Polynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    /// The polynomial x.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn constant(field: &Field, c: FieldElement) -> Self {
        Self::monomial(field, c, 0)
    }

    /// c * x^e.
    pub fn monomial(field: &Field, c: FieldElement, e: usize) -> Self {
        debug_assert!(field.contains(c));
        let mut coeffs = vec![field.zero(); e + 1];
        coeffs[e] = c;
        Self::from_trusted(field, coeffs)
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_trusted(field, coeffs))
    }

    /// Builds from (exponent, coefficient) terms; repeated exponents are summed.
    pub fn from_terms(field: &Field, terms: &[(usize, FieldElement)]) -> Result<Self> {
        let top = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
        let mut coeffs = vec![field.zero(); top + 1];
        for &(e, c) in terms {
            field.check(c)?;
            coeffs[e] = field.add(coeffs[e], c);
        }
        Ok(Self::from_trusted(field, coeffs))
    }

    pub(crate) fn from_trusted(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with -1 standing in for the zero polynomial.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn same_field(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        self.field.check(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Checked binary ring operation.
    pub fn ring_op(&self, other: &Polynomial, op: RingOp) -> Result<Polynomial> {
        self.same_field(other)?;
        match op {
            RingOp::Add => Ok(self.add_impl(other)),
            RingOp::Sub => Ok(self.sub_impl(other)),
            RingOp::Mul => Ok(self.mul_impl(other)),
            RingOp::Compose => Ok(self.compose_impl(other)),
            RingOp::Rem => self.rem_impl(other),
        }
    }

    /// P(Q(x)).
    pub fn compose(&self, inner: &Polynomial) -> Result<Polynomial> {
        self.ring_op(inner, RingOp::Compose)
    }

    /// Remainder of division by `divisor`.
    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.ring_op(divisor, RingOp::Rem)
    }

    fn add_impl(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_trusted(f, coeffs)
    }

    fn sub_impl(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_trusted(f, coeffs)
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Self::from_trusted(f, out)
    }

    fn compose_impl(&self, inner: &Polynomial) -> Polynomial {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Self::zero(f), |acc, &c| {
            acc.mul_impl(inner).add_impl(&Self::constant(f, c))
        })
    }

    fn rem_impl(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::ModByZero)?;
        let lead_inv = f.inv(divisor.coeffs[db])?;
        let mut r = self.coeffs.clone();
        while r.len() > db {
            let top = r.len() - 1;
            let factor = f.mul(r[top], lead_inv);
            if !factor.is_zero() {
                let shift = top - db;
                for (i, &b) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(r[shift + i], f.mul(factor, b));
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok(Self::from_trusted(f, r))
    }

    pub fn pow(&self, mut n: u64) -> Polynomial {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_impl(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_impl(&base);
            }
        }
        result
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = &self.field;
        Self::from_trusted(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// x^e * P.
    pub fn shift(&self, e: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); e];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// P(x^k) for k >= 1.
    pub fn substitute_power(&self, k: usize) -> Polynomial {
        assert!(k >= 1, "substitute_power needs a positive exponent");
        let f = &self.field;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![f.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Self::from_trusted(f, coeffs)
    }

    /// Frobenius applied to every coefficient.
    pub fn sigma_conjugate(&self) -> Polynomial {
        let f = &self.field;
        Self::from_trusted(f, self.coeffs.iter().map(|&a| f.frobenius(a)).collect())
    }

    /// Whether every coefficient lies in the base subfield F_q.
    pub fn over_base_subfield(&self) -> bool {
        self.coeffs.iter().all(|&c| self.field.in_base_subfield(c))
    }

    /// Reduction modulo x^n - 1: exponents folded mod n.
    pub fn reduce_cyclic(&self, n: usize) -> Polynomial {
        let f = &self.field;
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut out = vec![f.zero(); n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = f.add(out[i % n], c);
        }
        Self::from_trusted(f, out)
    }

    /// The reduced polynomial R of degree < D with R(x) = x^t * L(x)^q on μ_D,
    /// D = `field.norm_order()`.
    ///
    /// On μ_D we have x^{qi} = x^{(qi) mod D}, so the coefficient a_i^q lands at
    /// exponent (t + q i) mod D. For F_{q^2}, D = q + 1 and q i ≡ -i, which makes
    /// R the reversal x^t L^σ(1/x) reduced modulo x^{q+1} - 1.
    pub fn mu_reverse(&self, t: u64) -> Polynomial {
        let f = &self.field;
        let d = f.norm_order();
        let q_mod = f.q() % d;
        let mut out = vec![f.zero(); d as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = ((t % d) + (q_mod * (i as u64 % d)) % d) % d;
            out[e as usize] = f.add(out[e as usize], f.frobenius(a));
        }
        Self::from_trusted(f, out)
    }

    /// N • L/M = M^{deg N} N(L/M) = sum n_i L^i M^{deg N - i}.
    pub fn bullet(n: &Polynomial, l: &Polynomial, m: &Polynomial) -> Result<Polynomial> {
        n.same_field(l)?;
        n.same_field(m)?;
        let deg = n.degree().ok_or(Error::ZeroPolynomial)?;
        let f = &n.field;
        let mut l_pows = vec![Self::one(f)];
        let mut m_pows = vec![Self::one(f)];
        for i in 1..=deg {
            l_pows.push(l_pows[i - 1].mul_impl(l));
            m_pows.push(m_pows[i - 1].mul_impl(m));
        }
        let mut acc = Self::zero(f);
        for (i, &c) in n.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add_impl(&l_pows[i].mul_impl(&m_pows[deg - i]).scale(c));
            }
        }
        Ok(acc)
    }

    /// Evaluator over the nonzero terms in the log domain, for exhaustive scans.
    pub fn evaluator(&self) -> Evaluator<'_> {
        let f = &self.field;
        let n = f.log_modulus() as u64;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(e, &c)| f.log(c).map(|lc| (e as u64 % n, lc)))
            .collect();
        Evaluator {
            poly: self,
            terms,
            modulus: n,
        }
    }

    /// Dense form: coordinates of every coefficient, low degree first, comma-joined.
    pub fn to_dense_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|&c| self.field.format_element(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Sparse form "e:coeff;e:coeff" listing nonzero terms by increasing exponent.
    pub fn to_sparse_string(&self) -> String {
        if self.is_zero() {
            return "0:0".to_string();
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, &c)| format!("{e}:{}", self.field.format_element(c)))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses either the dense form (flat comma list, m coordinates per
    /// coefficient, low degree first) or the sparse form "e:coeff;e:coeff".
    pub fn parse(field: &Field, s: &str) -> Result<Polynomial> {
        let s = s.trim();
        if s.contains(':') {
            let terms = s
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|term| {
                    let (e, c) = term
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("bad sparse term `{term}`")))?;
                    let e: usize = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
                    Ok((e, field.parse_element(c)?))
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_terms(field, &terms);
        }
        if s.is_empty() {
            return Ok(Self::zero(field));
        }
        let digits: Vec<&str> = s.split(',').collect();
        let m = field.degree() as usize;
        if !digits.len().is_multiple_of(m) {
            return Err(Error::Parse(format!(
                "dense polynomial needs a multiple of {m} coordinates, got {}",
                digits.len()
            )));
        }
        let coeffs = digits
            .chunks(m)
            .map(|chunk| field.parse_element(&chunk.join(",")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(field, coeffs))
    }
}

/// Sparse log-domain evaluator borrowed from a [`Polynomial`].
pub struct Evaluator<'a> {
    poly: &'a Polynomial,
    terms: Vec<(u64, u32)>,
    modulus: u64,
}

impl Evaluator<'_> {
    #[inline]
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.poly.field;
        let Some(lx) = f.log(x) else {
            return self.poly.coeff(0);
        };
        let lx = lx as u64;
        let mut acc: Option<u32> = None;
        for &(e, lc) in &self.terms {
            let lt = ((lc as u64 + e * lx) % self.modulus) as u32;
            // None is the zero partial sum
            acc = match acc {
                None => Some(lt),
                Some(la) => f.log_sum(la, lt),
            };
        }
        match acc {
            None => f.zero(),
            Some(l) => f.exp_log(l),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.field, self.to_sparse_string())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sparse_string())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        /// Panics if the operands live in different fields; use [`Polynomial::ring_op`]
        /// for a checked version.
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                assert!(self.field == rhs.field, "polynomials over different fields");
                self.$impl(rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = &self.field;
        Polynomial::from_trusted(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }
}

/// Value of a rational map on the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjValue {
    Finite(FieldElement),
    Infinity,
}

/// L/M, interpreted pointwise with poles sent to ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

impl RationalMap {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.same_field(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(RationalMap { num, den })
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> &Field {
        &self.num.field
    }

    pub fn eval(&self, x: FieldElement) -> Result<ProjValue> {
        self.field().check(x)?;
        self.eval_unchecked(x)
    }

    pub(crate) fn eval_unchecked(&self, x: FieldElement) -> Result<ProjValue> {
        let l = self.num.eval_unchecked(x);
        let m = self.den.eval_unchecked(x);
        match (l.is_zero(), m.is_zero()) {
            (true, true) => Err(Error::IndeterminatePoint),
            (_, true) => Ok(ProjValue::Infinity),
            _ => Ok(ProjValue::Finite(self.field().div(l, m)?)),
        }
    }
}
