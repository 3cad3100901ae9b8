//! Arithmetic in GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)`: the residue polynomial
//! `a_0 + a_1 x + ... + a_{e-1} x^{e-1}` is stored as `a_0 + a_1 p + ...`.
//! The defining modulus is the lexicographically smallest monic irreducible
//! polynomial of degree `e`, so every run builds the same field model.
//!
//! Fields with `q <= 256` carry full addition and multiplication tables;
//! larger fields fall back to digit-wise polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

const TABLE_LIMIT: u32 = 256;

/// An element of some [`Field`], stored by its integer encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(u16);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    /// Integer encoding of the element.
    #[inline]
    pub fn value(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn raw(v: u32) -> Felt {
        Felt(v as u16)
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Box<[u16]>,
    mul: Box<[u16]>,
    neg: Box<[u16]>,
    inv: Box<[u16]>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// A finite field GF(p^e). Cheap to clone; clones share their tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.e)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, e: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::FieldOutOfRange { p, e });
    }
    let mut q: u64 = 1;
    for _ in 0..e {
        q *= p as u64;
        if q > MAX_ORDER {
            return Err(Error::FieldOutOfRange { p, e });
        }
    }
    Ok(q as u32)
}

/// Builds GF(p^e) with the canonical modulus.
pub fn make_field(p: u32, e: u32) -> Result<Field> {
    checked_order(p, e)?;
    let modulus = smallest_irreducible(p, e);
    Field::build(p, e, modulus)
}

impl Field {
    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q).ok_or_else(|| {
            Error::InvalidArgument(format!("{q} is not a prime power supported by GF(q)"))
        })?;
        make_field(p, e)
    }

    /// GF(p^e) defined by an explicit modulus (constant term first, monic).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if modulus.len() < 2 {
            return Err(Error::InvalidArgument("modulus must have degree >= 1".into()));
        }
        let e = (modulus.len() - 1) as u32;
        checked_order(p, e)?;
        if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidArgument(format!(
                "modulus {modulus:?} is not a monic polynomial over GF({p})"
            )));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidArgument(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Field::build(p, e, modulus.to_vec())
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Result<Field> {
        let q = checked_order(p, e)?;
        let mut inner = Inner {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = inner.slow_add(a, b) as u16;
                    mul[a as usize * n + b as usize] = inner.slow_mul(a, b) as u16;
                }
            }
            let neg: Vec<u16> = (0..q).map(|a| inner.slow_neg(a) as u16).collect();
            let mut inv = vec![0u16; n];
            for a in 1..n {
                inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).expect("field has inverses") as u16;
            }
            inner.tables = Some(Tables {
                add: add.into(),
                mul: mul.into(),
                neg: neg.into(),
                inv: inv.into(),
            });
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.inner.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Validates an integer encoding.
    pub fn elem(&self, value: u32) -> Result<Felt> {
        if value < self.inner.q {
            Ok(Felt::raw(value))
        } else {
            Err(Error::ElementOutOfRange {
                value,
                q: self.inner.q,
            })
        }
    }

    /// The `q` elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.inner.q).map(Felt::raw)
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        match &self.inner.tables {
            Some(t) => Felt(t.add[a.0 as usize * self.inner.q as usize + b.0 as usize]),
            None => Felt::raw(self.inner.slow_add(a.value(), b.value())),
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        match &self.inner.tables {
            Some(t) => Felt(t.neg[a.0 as usize]),
            None => Felt::raw(self.inner.slow_neg(a.value())),
        }
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        match &self.inner.tables {
            Some(t) => Felt(t.mul[a.0 as usize * self.inner.q as usize + b.0 as usize]),
            None => Felt::raw(self.inner.slow_mul(a.value(), b.value())),
        }
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        Ok(match &self.inner.tables {
            Some(t) => Felt(t.inv[a.0 as usize]),
            None => self.pow(a, (self.inner.q - 2) as u64),
        })
    }

    pub fn pow(&self, a: Felt, mut n: u64) -> Felt {
        let mut base = a;
        let mut acc = Felt::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Felt) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let mut x = a;
        let mut k = 1;
        while x != Felt::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    /// `# gf p=<p> e=<e> modulus=<c0,...,ce>`
    pub fn header(&self) -> String {
        let m: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
        format!("# gf p={} e={} modulus={}", self.inner.p, self.inner.e, m.join(","))
    }

    pub fn parse_header(line: &str) -> Result<Field> {
        let rest = line
            .trim()
            .strip_prefix("# gf ")
            .ok_or_else(|| Error::parse(format!("expected field header, got {line:?}")))?;
        let (mut p, mut e, mut modulus) = (None, None, None);
        for tok in rest.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("bad header token {tok:?}")))?;
            match key {
                "p" => p = Some(parse_u32(val)?),
                "e" => e = Some(parse_u32(val)?),
                "modulus" => {
                    modulus = Some(
                        val.split(',')
                            .map(parse_u32)
                            .collect::<Result<Vec<u32>>>()?,
                    )
                }
                _ => return Err(Error::parse(format!("unknown header key {key:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::parse("header lacks p"))?;
        let e = e.ok_or_else(|| Error::parse("header lacks e"))?;
        match modulus {
            Some(m) if m.len() as u32 != e + 1 => Err(Error::parse(format!(
                "modulus has degree {} but e={e}",
                m.len() as i64 - 1
            ))),
            Some(m) => Field::with_modulus(p, &m),
            None => make_field(p, e),
        }
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(format!("expected an integer, got {s:?}")))
}

/// Splits `q` into `(p, e)` with `q = p^e`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl Inner {
    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut d = vec![0; self.e as usize];
        for slot in d.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    fn slow_neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let x: Vec<u32> = self.digits(a).iter().map(|u| (self.p - u) % self.p).collect();
        self.encode(&x)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.e == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let e = self.e as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        // x^e = -(c_0 + ... + c_{e-1} x^{e-1})
        for deg in (e..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &c) in self.modulus[..e].iter().enumerate() {
                let t = deg - e + i;
                prod[t] = (prod[t] + (p - lead) * c as u64) % p;
            }
        }
        let out: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.encode(&out)
    }
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p).
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    let p64 = p as u64;
    while r.len() > dd {
        let lead = *r.last().unwrap() % p64;
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p64 - lead) * c as u64) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for code in 0..count {
        let mut poly = Vec::with_capacity(e as usize + 1);
        let mut c = code;
        for _ in 0..e {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element bundled with its field, for callers that want mixed-field
/// operands rejected instead of silently reinterpreted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: Field,
    value: Felt,
}

/// Binary operations accepted by [`Element::apply`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
}

impl Element {
    pub fn new(field: &Field, value: u32) -> Result<Element> {
        Ok(Element {
            value: field.elem(value)?,
            field: field.clone(),
        })
    }

    pub fn value(&self) -> Felt {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn apply(&self, op: Op, other: &Element) -> Result<Element> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let value = match op {
            Op::Add => f.add(self.value, other.value),
            Op::Sub => f.sub(self.value, other.value),
            Op::Mul => f.mul(self.value, other.value),
        };
        Ok(Element {
            field: f.clone(),
            value,
        })
    }

    pub fn neg(&self) -> Element {
        Element {
            field: self.field.clone(),
            value: self.field.neg(self.value),
        }
    }

    pub fn inv(&self) -> Result<Element> {
        Ok(Element {
            field: self.field.clone(),
            value: self.field.inv(self.value)?,
        })
    }

    pub fn pow(&self, n: u64) -> Element {
        Element {
            field: self.field.clone(),
            value: self.field.pow(self.value, n),
        }
    }
}
